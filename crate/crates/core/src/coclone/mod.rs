//! Primitive positive definitions: bounded search and the constructive
//! implementations of equality, disequality and constants.

mod constructions;
mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::formulas::{parse_formula, GammaFormula, ModelSet, Var, VarIndex, Vocabulary};
use crate::relations::BooleanRelation;

pub use constructions::{
    construct_eq_tf, equality_available, implement_eps_valid, implement_folklore, EpsValidItem,
    FolkloreTarget,
};
pub use search::{pp_define, pp_define_with_budget, SearchBudget, DEFAULT_MAX_CONSTRAINTS};

/// Which closure of a language a definition may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Existential quantification and equality allowed.
    Full,
    /// Existential quantification, no equality.
    NoEq,
    /// Neither quantifiers nor equality.
    NoExistsNoEq,
}

/// `target(vars) ≡ ∃ aux . body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpDefinition {
    pub target: BooleanRelation,
    /// Target coordinates, in order.
    pub vars: Vec<Var>,
    pub aux: Vec<Var>,
    pub body: GammaFormula,
    /// Whether the body uses an equality constraint that is not a member of the language.
    pub uses_equality: bool,
}

fn target_table(target: &BooleanRelation) -> ModelSet {
    let k = target.arity();
    let bits: Vec<usize> = (0..k).map(|j| k - 1 - j).collect();
    ModelSet::of_constraint(k, target, &bits)
}

impl PpDefinition {
    /// Checks the definition against the target on every assignment.
    ///
    /// A mismatch is reported as [`Error::Internal`]: definitions are only
    /// built by code that claims to have verified them.
    pub fn verify(&self) -> Result<()> {
        if self.vars.len() != self.target.arity() {
            return Err(Error::Internal(format!(
                "definition of {} lists {} variables",
                self.target.name(),
                self.vars.len()
            )));
        }
        if let Some(v) = self
            .body
            .vars()
            .into_iter()
            .find(|v| !self.vars.contains(v) && !self.aux.contains(v))
        {
            return Err(Error::Internal(format!("body variable {v} is neither a coordinate nor auxiliary")));
        }
        let order: Vec<Var> = self.vars.iter().chain(&self.aux).cloned().collect();
        let index = VarIndex::ordered(order, usize::MAX).map_err(|e| Error::Internal(e.to_string()))?;
        let projected = index.table(&self.body)?.project_prefix(self.vars.len());
        if projected != target_table(&self.target) {
            return Err(Error::Internal(format!(
                "body {} does not define {}",
                self.body,
                self.target.name()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PpDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.aux.is_empty() {
            write!(f, "{}", self.body)
        } else {
            let aux: Vec<&str> = self.aux.iter().map(Var::as_str).collect();
            write!(f, "exists {} : {}", aux.join(","), self.body)
        }
    }
}

/// Parses `exists y1,y2 : body` or a bare body into `(aux, body)`.
pub fn parse_pp_body(text: &str, vocab: &Vocabulary) -> Result<(Vec<Var>, GammaFormula)> {
    let text = text.trim();
    let Some(rest) = text.strip_prefix("exists ") else {
        return Ok((Vec::new(), parse_formula(text, vocab)?));
    };
    let (vars, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(1, "expected ':' after the quantified variables"))?;
    let aux = vars
        .split(',')
        .map(|v| {
            let v = v.trim();
            if crate::formulas::is_identifier(v) {
                Ok(Var::new(v))
            } else {
                Err(Error::parse(1, format!("invalid variable {v:?}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((aux, parse_formula(body, vocab)?))
}

/// Result of a bounded definability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PpOutcome {
    Found(PpDefinition),
    /// The whole search space within the size bounds was explored.
    NotFound,
    /// The node budget ran out before the search space was covered.
    BudgetExhausted,
}

impl PpOutcome {
    pub fn found(&self) -> Option<&PpDefinition> {
        match self {
            PpOutcome::Found(d) => Some(d),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            PpOutcome::Found(_) => "found",
            PpOutcome::NotFound => "not_found_under_budget",
            PpOutcome::BudgetExhausted => "budget_exhausted",
        }
    }
}
