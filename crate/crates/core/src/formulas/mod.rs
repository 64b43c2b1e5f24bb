//! Constraint formulas, knowledge bases, assignments and model enumeration.

mod cnf;
mod table;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::relations::{BooleanRelation, ConstraintLanguage};

pub use cnf::{is_redundant, CnfFormula, Literal};
pub use table::{ModelSet, VarIndex};
pub use text::{parse_cnf, parse_formula, Document, Vocabulary};

/// Prefix reserved for generated variables.
pub const FRESH_PREFIX: &str = "_g";

/// A variable identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var::new(s)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Hands out variables `_g0, _g1, ...` that avoid a set of taken names.
#[derive(Clone, Debug, Default)]
pub struct FreshVars {
    next: usize,
    taken: BTreeSet<Var>,
}

impl FreshVars {
    pub fn avoiding(taken: impl IntoIterator<Item = Var>) -> Self {
        FreshVars {
            next: 0,
            taken: taken.into_iter().collect(),
        }
    }

    pub fn fresh(&mut self) -> Var {
        loop {
            let v = Var::new(format!("{FRESH_PREFIX}{}", self.next));
            self.next += 1;
            if self.taken.insert(v.clone()) {
                return v;
            }
        }
    }
}

/// `R(x1, ..., xk)`; arguments may repeat.
#[derive(Clone)]
pub struct Constraint {
    relation: Arc<BooleanRelation>,
    args: Vec<Var>,
}

impl PartialEq for Constraint {
    fn eq(&self, other: &Self) -> bool {
        self.relation.name() == other.relation.name()
            && *self.relation == *other.relation
            && self.args == other.args
    }
}

impl Eq for Constraint {}

impl Constraint {
    pub fn new(relation: impl Into<Arc<BooleanRelation>>, args: impl IntoIterator<Item = impl Into<Var>>) -> Result<Self> {
        let relation = relation.into();
        let args: Vec<Var> = args.into_iter().map(Into::into).collect();
        if args.len() != relation.arity() {
            return Err(Error::Domain(format!(
                "{} takes {} arguments, got {}",
                relation.name(),
                relation.arity(),
                args.len()
            )));
        }
        if let Some(bad) = args.iter().find(|v| !is_identifier(v.as_str())) {
            return Err(Error::Domain(format!("invalid variable name {bad:?}")));
        }
        Ok(Constraint { relation, args })
    }

    pub fn relation(&self) -> &Arc<BooleanRelation> {
        &self.relation
    }

    pub fn args(&self) -> &[Var] {
        &self.args
    }

    /// Whether the argument values form a member tuple.
    pub fn holds(&self, value: impl Fn(&Var) -> bool) -> bool {
        let idx = self
            .args
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, v)| if value(v) { acc | 1 << j } else { acc });
        self.relation.contains_index(idx)
    }

    /// Renames variables through `f`.
    pub fn map_vars(&self, mut f: impl FnMut(&Var) -> Var) -> Constraint {
        Constraint {
            relation: self.relation.clone(),
            args: self.args.iter().map(&mut f).collect(),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.args.iter().map(Var::as_str).collect();
        write!(f, "{}({})", self.relation.name(), args.join(","))
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Replaces every occurrence of a variable of `group` by `u`.
pub fn substitute(c: &Constraint, group: &BTreeSet<Var>, u: &Var) -> Constraint {
    c.map_vars(|v| if group.contains(v) { u.clone() } else { v.clone() })
}

/// A conjunction of constraints. The empty conjunction is true.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GammaFormula {
    constraints: Vec<Constraint>,
}

impl GammaFormula {
    pub fn new(constraints: impl IntoIterator<Item = Constraint>) -> Self {
        GammaFormula {
            constraints: constraints.into_iter().collect(),
        }
    }

    /// The empty, trivially true formula.
    pub fn top() -> Self {
        GammaFormula::default()
    }

    pub fn single(c: Constraint) -> Self {
        GammaFormula { constraints: vec![c] }
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.constraints
            .iter()
            .flat_map(|c| c.args.iter().cloned())
            .collect()
    }

    pub fn and(mut self, other: &GammaFormula) -> Self {
        self.constraints.extend(other.constraints.iter().cloned());
        self
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn map_vars(&self, mut f: impl FnMut(&Var) -> Var) -> GammaFormula {
        GammaFormula {
            constraints: self.constraints.iter().map(|c| c.map_vars(&mut f)).collect(),
        }
    }

    /// Distinct relations used, in order of first occurrence.
    pub fn relations(&self) -> Vec<Arc<BooleanRelation>> {
        let mut out: Vec<Arc<BooleanRelation>> = Vec::new();
        for c in &self.constraints {
            if !out.iter().any(|r| r.name() == c.relation.name() && **r == *c.relation) {
                out.push(c.relation.clone());
            }
        }
        out
    }
}

impl fmt::Display for GammaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return write!(f, "true");
        }
        let parts: Vec<String> = self.constraints.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

impl fmt::Debug for GammaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The language made of the relations occurring in some formulas.
///
/// Fails on an empty collection or on two different relations sharing a name.
pub fn language_of<'a>(formulas: impl IntoIterator<Item = &'a GammaFormula>) -> Result<ConstraintLanguage> {
    let mut rels: Vec<Arc<BooleanRelation>> = Vec::new();
    for phi in formulas {
        for r in phi.relations() {
            match rels.iter().find(|q| q.name() == r.name()) {
                Some(q) if **q != *r => {
                    return Err(Error::Domain(format!("two relations are named {}", r.name())))
                }
                Some(_) => {}
                None => rels.push(r),
            }
        }
    }
    ConstraintLanguage::new(rels)
}

/// A finite, duplicate-free collection of formulas, kept in insertion order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    formulas: Vec<GammaFormula>,
}

impl KnowledgeBase {
    /// Collects formulas, dropping syntactic duplicates.
    pub fn new(formulas: impl IntoIterator<Item = GammaFormula>) -> Self {
        let mut kb = KnowledgeBase::default();
        for f in formulas {
            kb.insert(f);
        }
        kb
    }

    /// Adds a formula; returns false if it was already present.
    pub fn insert(&mut self, f: GammaFormula) -> bool {
        if self.formulas.contains(&f) {
            return false;
        }
        self.formulas.push(f);
        true
    }

    pub fn formulas(&self) -> &[GammaFormula] {
        &self.formulas
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GammaFormula> {
        self.formulas.iter()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&GammaFormula> {
        self.formulas.get(i)
    }

    pub fn position(&self, f: &GammaFormula) -> Option<usize> {
        self.formulas.iter().position(|g| g == f)
    }

    pub fn contains(&self, f: &GammaFormula) -> bool {
        self.position(f).is_some()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.formulas.iter().flat_map(|f| f.vars()).collect()
    }

    /// The sub-base made of the formulas at the given positions.
    pub fn subset(&self, indices: &[usize]) -> KnowledgeBase {
        KnowledgeBase {
            formulas: indices.iter().map(|&i| self.formulas[i].clone()).collect(),
        }
    }

    /// All formulas conjoined.
    pub fn conjunction(&self) -> GammaFormula {
        self.formulas
            .iter()
            .fold(GammaFormula::top(), |acc, f| acc.and(f))
    }
}

impl fmt::Debug for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.formulas.iter()).finish()
    }
}

impl FromIterator<GammaFormula> for KnowledgeBase {
    fn from_iter<I: IntoIterator<Item = GammaFormula>>(iter: I) -> Self {
        KnowledgeBase::new(iter)
    }
}

/// A map from variables to truth values.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn set(&mut self, v: Var, value: bool) -> Option<bool> {
        self.0.insert(v, value)
    }

    pub fn with(mut self, v: impl Into<Var>, value: bool) -> Self {
        self.0.insert(v.into(), value);
        self
    }

    /// The value of `v`; querying outside the domain is an error.
    pub fn get(&self, v: &Var) -> Result<bool> {
        self.0
            .get(v)
            .copied()
            .ok_or_else(|| Error::Domain(format!("assignment does not define {v}")))
    }

    pub fn value(&self, v: &Var) -> Option<bool> {
        self.0.get(v).copied()
    }

    pub fn weight(&self) -> usize {
        self.0.values().filter(|b| **b).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, bool)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    /// Restriction to a set of variables.
    pub fn restrict(&self, vars: &BTreeSet<Var>) -> Assignment {
        Assignment(
            self.0
                .iter()
                .filter(|(k, _)| vars.contains(*k))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        )
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| format!("{k}:{}", *v as u8))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Truth value of `phi` under `sigma`.
pub fn evaluate(phi: &GammaFormula, sigma: &Assignment) -> Result<bool> {
    for c in phi.constraints() {
        for v in c.args() {
            sigma.get(v)?;
        }
        if !c.holds(|v| sigma.value(v).unwrap_or(false)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All models of `phi` over `over_vars`, in lexicographic order of the values
/// with variables sorted by name.
pub fn models(phi: &GammaFormula, over_vars: &BTreeSet<Var>) -> Result<Vec<Assignment>> {
    if let Some(v) = phi.vars().iter().find(|v| !over_vars.contains(*v)) {
        return Err(Error::Domain(format!("{v} occurs in the formula but not in the variable set")));
    }
    let index = VarIndex::new(over_vars.iter().cloned(), Limits::current().max_vars)?;
    let table = index.table(phi)?;
    Ok(table.iter_ones().map(|a| index.assignment(a)).collect())
}
