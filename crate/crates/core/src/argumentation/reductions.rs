//! Instance generators from positive 1-in-3 satisfiability and the
//! translation of ARG instances between languages through pp-definitions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::coclone::{pp_define, Closure, PpDefinition, PpOutcome, DEFAULT_MAX_CONSTRAINTS};
use crate::error::{Error, Result};
use crate::formulas::{CnfFormula, Constraint, FreshVars, GammaFormula, KnowledgeBase, Var};
use crate::relations::{BooleanRelation, ConstraintLanguage};

/// Largest number of variables [`solve_pos_1in3`] enumerates.
pub const MAX_1IN3_VARS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OneInThreeVariant {
    /// Formulas over `{T, F, EQ}`, claim `(c1 = c_{k+1}) & t & ~f`.
    EqTf,
    /// Formulas over `{EQ, NEQ}`, claim `(c1 != d) & (d != c_{k+1})`.
    Neq,
    /// The same instance as [`OneInThreeVariant::EqTf`].
    Ess,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub delta: KnowledgeBase,
    pub alpha: GammaFormula,
    /// Set when the source formula has no clauses.
    pub degenerate: bool,
}

/// Whether some assignment makes exactly one literal occurrence per clause true.
pub fn solve_pos_1in3(phi: &CnfFormula) -> Result<bool> {
    check_positive(phi)?;
    let vars: Vec<Var> = phi.vars().into_iter().collect();
    if vars.len() > MAX_1IN3_VARS {
        return Err(Error::Capacity(format!(
            "{} variables exceed the limit of {MAX_1IN3_VARS}",
            vars.len()
        )));
    }
    let clauses: Vec<Vec<usize>> = phi
        .clauses
        .iter()
        .map(|c| c.iter().map(|l| vars.binary_search(&l.var).unwrap()).collect())
        .collect();
    Ok((0u32..1 << vars.len()).any(|a| {
        clauses
            .iter()
            .all(|c| c.iter().filter(|&&v| a >> v & 1 == 1).count() == 1)
    }))
}

fn check_positive(phi: &CnfFormula) -> Result<()> {
    if phi.is_positive_3cnf() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{phi} is not a positive 3-CNF")))
    }
}

fn constraint(rel: &Arc<BooleanRelation>, args: &[&Var]) -> Constraint {
    Constraint::new(rel.clone(), args.iter().map(|v| (*v).clone())).expect("arity matches")
}

/// Builds an ARG instance that has an argument iff `phi` is 1-in-3 satisfiable.
///
/// Per clause `i` and choice `j` there is one formula setting the `j`-th
/// literal to true, the other two to false, and linking `c_i` to `c_{i+1}`.
/// In the disequality variant the clause-1 formulas also carry `c1 != d`,
/// so that a consistent chain entails both conjuncts of the claim. With no
/// clauses the single formula of the knowledge base is the claim's
/// fixed part and the instance is flagged degenerate.
pub fn generate_from_1in3(phi: &CnfFormula, variant: OneInThreeVariant) -> Result<ReductionInstance> {
    check_positive(phi)?;
    let taken: BTreeSet<String> = phi.vars().iter().map(|v| v.as_str().to_string()).collect();
    let k = phi.len();
    let mut prefix = String::new();
    let base = |p: &str| -> Vec<String> {
        let mut names = vec![format!("{p}t"), format!("{p}f"), format!("{p}d")];
        names.extend((1..=k + 1).map(|i| format!("{p}c{i}")));
        names
    };
    while base(&prefix).iter().any(|n| taken.contains(n)) {
        prefix.push('_');
    }
    let t = Var::new(format!("{prefix}t"));
    let f = Var::new(format!("{prefix}f"));
    let d = Var::new(format!("{prefix}d"));
    let c: Vec<Var> = (1..=k + 1).map(|i| Var::new(format!("{prefix}c{i}"))).collect();

    let tr = Arc::new(BooleanRelation::truth());
    let fa = Arc::new(BooleanRelation::falsity());
    let eq = Arc::new(BooleanRelation::equality());
    let neq = Arc::new(BooleanRelation::disequality());

    let mut delta = KnowledgeBase::default();
    let alpha = match variant {
        OneInThreeVariant::EqTf | OneInThreeVariant::Ess => {
            for j in 0..3 {
                for (i, clause) in phi.clauses.iter().enumerate() {
                    let mut phi_ij = GammaFormula::top();
                    for (p, lit) in clause.iter().enumerate() {
                        let rel = if p == j { &tr } else { &fa };
                        phi_ij.push(constraint(rel, &[&lit.var]));
                    }
                    phi_ij.push(constraint(&eq, &[&c[i], &c[i + 1]]));
                    phi_ij.push(constraint(&tr, &[&t]));
                    phi_ij.push(constraint(&fa, &[&f]));
                    delta.insert(phi_ij);
                }
            }
            if k == 0 {
                delta.insert(GammaFormula::new([constraint(&tr, &[&t]), constraint(&fa, &[&f])]));
            }
            GammaFormula::single(constraint(&Arc::new(BooleanRelation::eq_tf()), &[&c[0], &c[k], &t, &f]))
        }
        OneInThreeVariant::Neq => {
            for j in 0..3 {
                for (i, clause) in phi.clauses.iter().enumerate() {
                    let mut phi_ij = GammaFormula::top();
                    for (p, lit) in clause.iter().enumerate() {
                        let rel = if p == j { &eq } else { &neq };
                        phi_ij.push(constraint(rel, &[&lit.var, &t]));
                    }
                    phi_ij.push(constraint(&eq, &[&c[i], &c[i + 1]]));
                    if i == 0 {
                        phi_ij.push(constraint(&neq, &[&c[0], &d]));
                    }
                    delta.insert(phi_ij);
                }
            }
            if k == 0 {
                delta.insert(GammaFormula::single(constraint(&neq, &[&c[0], &d])));
            }
            GammaFormula::new([constraint(&neq, &[&c[0], &d]), constraint(&neq, &[&d, &c[k]])])
        }
    };
    Ok(ReductionInstance {
        delta,
        alpha,
        degenerate: k == 0,
    })
}

/// Verified pp-definitions keyed by the defined relation's tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Definitions {
    defs: BTreeMap<(usize, u64), PpDefinition>,
}

impl Definitions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Verifies and stores `def`, replacing any definition of the same relation.
    pub fn insert(&mut self, def: PpDefinition) -> Result<()> {
        def.verify().map_err(|e| Error::Domain(format!("invalid definition: {e}")))?;
        self.defs.insert((def.target.arity(), def.target.mask()), def);
        Ok(())
    }

    pub fn get(&self, rel: &BooleanRelation) -> Option<&PpDefinition> {
        self.defs.get(&(rel.arity(), rel.mask()))
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PpDefinition> {
        self.defs.values()
    }
}

/// Searches definitions for every source relation outside `target` (with
/// quantifiers, without equality) and for every claim relation outside
/// `target` (without quantifiers or equality).
pub fn derive_defs(
    source: &ConstraintLanguage,
    claim_relations: &[BooleanRelation],
    target: &ConstraintLanguage,
) -> Result<Definitions> {
    let mut defs = Definitions::new();
    let wanted = source
        .iter()
        .map(|r| (r, Closure::NoEq))
        .chain(claim_relations.iter().map(|r| (r, Closure::NoExistsNoEq)));
    for (rel, closure) in wanted {
        if target.contains(rel) {
            continue;
        }
        if let Some(d) = defs.get(rel) {
            if closure == Closure::NoEq || d.aux.is_empty() {
                continue;
            }
        }
        match pp_define(target, rel, closure, 2, DEFAULT_MAX_CONSTRAINTS)? {
            PpOutcome::Found(d) => defs.insert(d)?,
            other => {
                return Err(Error::Domain(format!(
                    "no definition of {} over the target language: {}",
                    rel.name(),
                    other.tag()
                )))
            }
        }
    }
    Ok(defs)
}

/// Rewrites every constraint through its definition. Auxiliary variables get
/// fresh names per rewritten constraint and are left free, which drops the
/// quantifiers. Members of `target` are kept, renamed to the member's name.
/// Claim constraints must have quantifier-free definitions.
pub fn reduce_arg_instance(
    target: &ConstraintLanguage,
    delta: &KnowledgeBase,
    alpha: &GammaFormula,
    defs: &Definitions,
) -> Result<(KnowledgeBase, GammaFormula)> {
    let mut taken = delta.vars();
    taken.extend(alpha.vars());
    let mut fresh = FreshVars::avoiding(taken);

    let mut rewrite = |phi: &GammaFormula, claim: bool| -> Result<GammaFormula> {
        let mut out = GammaFormula::top();
        for c in phi.constraints() {
            if let Some(member) = target.relations().iter().find(|r| r.as_ref() == c.relation().as_ref()) {
                out.push(Constraint::new(member.clone(), c.args().iter().cloned())?);
                continue;
            }
            let def = defs
                .get(c.relation())
                .ok_or_else(|| Error::Domain(format!("no definition for {}", c.relation().name())))?;
            def.verify().map_err(|e| Error::Domain(format!("invalid definition: {e}")))?;
            if def.uses_equality {
                return Err(Error::Domain(format!("definition of {} uses equality", def.target.name())));
            }
            if claim && !def.aux.is_empty() {
                return Err(Error::Domain(format!(
                    "claim relation {} needs a quantifier-free definition",
                    def.target.name()
                )));
            }
            if let Some(r) = def.body.relations().iter().find(|r| !target.contains(r)) {
                return Err(Error::Domain(format!("definition body uses {} outside the target language", r.name())));
            }
            let mut map: BTreeMap<Var, Var> = def.vars.iter().cloned().zip(c.args().iter().cloned()).collect();
            for y in &def.aux {
                map.insert(y.clone(), fresh.fresh());
            }
            for b in def.body.constraints() {
                let member = target
                    .relations()
                    .iter()
                    .find(|r| r.as_ref() == b.relation().as_ref())
                    .expect("checked above");
                out.push(Constraint::new(member.clone(), b.args().iter().map(|v| map[v].clone()))?);
            }
        }
        Ok(out)
    };

    let mut out = KnowledgeBase::default();
    for phi in delta.iter() {
        out.insert(rewrite(phi, false)?);
    }
    let alpha = rewrite(alpha, true)?;
    Ok((out, alpha))
}
