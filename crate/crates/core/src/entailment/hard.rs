//! Implication instances that encode unsatisfiability of a non-Schaefer formula.

use crate::error::{Error, Result};
use crate::formulas::{language_of, Constraint, FreshVars, GammaFormula, KnowledgeBase};
use crate::relations::BooleanRelation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HardCase {
    /// 1-valid and not 0-valid: the claim is `T(x)` for a fresh `x`.
    OneValid,
    /// 0-valid and not 1-valid: the claim is `F(x)` for a fresh `x`.
    ZeroValid,
    /// Complementive and neither 0- nor 1-valid: the claim is `NEQ(x,x)`.
    Complementive,
    /// Any non-Schaefer formula, with disequality available to the claim.
    BothValid,
}

/// Builds `({phi}, alpha)` such that `phi ⊨ alpha` iff `phi` is unsatisfiable.
///
/// The language of `phi` must be non-Schaefer and must match `case`.
pub fn generate_imp_hard(phi: &GammaFormula, case: HardCase) -> Result<(KnowledgeBase, GammaFormula)> {
    let props = language_of([phi])?.properties();
    if props.schaefer {
        return Err(Error::Domain("the formula's language is Schaefer".into()));
    }
    let (ok, claim) = match case {
        HardCase::OneValid => (props.one_valid && !props.zero_valid, BooleanRelation::truth()),
        HardCase::ZeroValid => (props.zero_valid && !props.one_valid, BooleanRelation::falsity()),
        HardCase::Complementive => (props.complementive && !props.eps_valid, BooleanRelation::disequality()),
        HardCase::BothValid => (true, BooleanRelation::disequality()),
    };
    if !ok {
        return Err(Error::Domain(format!("the formula's language does not fit case {case:?}")));
    }
    let x = FreshVars::avoiding(phi.vars()).fresh();
    let args = vec![x; claim.arity()];
    let alpha = GammaFormula::single(Constraint::new(claim, args)?);
    Ok((KnowledgeBase::new([phi.clone()]), alpha))
}
