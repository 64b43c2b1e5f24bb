//! Constructive implementations of equality, disequality and constants.

use std::collections::BTreeMap;

use serde::Serialize;

use super::search::{pp_define, DEFAULT_MAX_CONSTRAINTS};
use super::{Closure, PpDefinition, PpOutcome};
use crate::error::{Error, Result};
use crate::formulas::{Constraint, GammaFormula, Var};
use crate::relations::{BooleanRelation, ConstraintLanguage};

/// Auxiliary variables allowed when searching for equality without it.
const EQ_SEARCH_AUX: usize = 2;

fn entails_unit(rel: &BooleanRelation, i: usize, value: bool) -> bool {
    rel.tuple_indices().all(|t| (t >> i & 1 == 1) == value)
}

fn entails_equal(rel: &BooleanRelation, i: usize, j: usize) -> bool {
    rel.tuple_indices().all(|t| (t >> i & 1) == (t >> j & 1))
}

/// Builds `M(x1,x2,t,f) ≡ (x1 = x2) ∧ t ∧ ¬f` from one constraint over `rel`,
/// which must be essentially positive (or negative) but not strictly so, and
/// neither 0- nor 1-valid.
///
/// Coordinates equal to the chosen coordinate `x_a` become `x2`, coordinates
/// forced to 0 become `f` and the rest become `t` (dually for the negative
/// case). When that single constraint still admits `t = 0`, a second
/// constraint pinning `t` and `f` is added.
pub fn construct_eq_tf(rel: &BooleanRelation) -> Result<PpDefinition> {
    let props = rel.properties();
    let pos_case = props.ess_pos && !props.strictly_ess_pos;
    let neg_case = props.ess_neg && !props.strictly_ess_neg;
    if props.eps_valid || !(pos_case || neg_case) {
        return Err(Error::Domain(format!(
            "{} must be essentially positive or negative but not strictly, and not 0- or 1-valid",
            rel.name()
        )));
    }
    let k = rel.arity();
    let (a, _) = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .find(|&(a, b)| entails_equal(rel, a, b) && !entails_unit(rel, a, true) && !entails_unit(rel, a, false))
        .ok_or_else(|| Error::Construction(format!("no suitable equal coordinate pair in {}", rel.name())))?;
    // In the positive case the forced coordinates are the negative units.
    let forced_value = !pos_case;
    let [x1, x2, t, f] = ["x1", "x2", "t", "f"].map(Var::new);
    let (forced, free) = if pos_case { (&f, &t) } else { (&t, &f) };
    let args: Vec<Var> = (0..k)
        .map(|i| {
            if i == a {
                x1.clone()
            } else if entails_equal(rel, a, i) {
                x2.clone()
            } else if entails_unit(rel, i, forced_value) {
                forced.clone()
            } else {
                free.clone()
            }
        })
        .collect();
    let rel = std::sync::Arc::new(rel.clone());
    let mut def = PpDefinition {
        target: BooleanRelation::eq_tf(),
        vars: vec![x1, x2, t.clone(), f.clone()],
        aux: Vec::new(),
        body: GammaFormula::single(Constraint::new(rel.clone(), args)?),
        uses_equality: false,
    };
    if def.verify().is_ok() {
        return Ok(def);
    }
    let pin: Vec<Var> = (0..k)
        .map(|i| if entails_unit(rel.as_ref(), i, forced_value) { forced.clone() } else { free.clone() })
        .collect();
    def.body.push(Constraint::new(rel, pin)?);
    def.verify()
        .map_err(|e| Error::Construction(format!("equality construction failed: {e}")))?;
    Ok(def)
}

/// The implementations that hold for a language by folklore case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FolkloreTarget {
    /// Complementive and neither 0- nor 1-valid.
    Neq,
    /// Neither complementive nor 0- or 1-valid.
    TAndNotF,
    /// 1-valid and not 0-valid.
    T,
    /// 0-valid and not 1-valid.
    F,
    /// 0-valid and 1-valid.
    Eq,
}

impl FolkloreTarget {
    pub fn relation(self) -> BooleanRelation {
        match self {
            FolkloreTarget::Neq => BooleanRelation::disequality(),
            FolkloreTarget::TAndNotF => BooleanRelation::t_not_f(),
            FolkloreTarget::T => BooleanRelation::truth(),
            FolkloreTarget::F => BooleanRelation::falsity(),
            FolkloreTarget::Eq => BooleanRelation::equality(),
        }
    }
}

/// Quantifier-free, equality-free definitions of every target whose
/// hypothesis `gamma` meets. A met hypothesis does not guarantee a
/// definition: a language made of the full binary relation is 0- and 1-valid
/// yet cannot express equality, so each entry carries its search outcome.
pub fn implement_folklore(gamma: &ConstraintLanguage) -> Result<BTreeMap<FolkloreTarget, PpOutcome>> {
    let p = gamma.properties();
    let applicable = [
        (FolkloreTarget::Neq, p.complementive && !p.eps_valid),
        (FolkloreTarget::TAndNotF, !p.complementive && !p.eps_valid),
        (FolkloreTarget::T, p.one_valid && !p.zero_valid),
        (FolkloreTarget::F, p.zero_valid && !p.one_valid),
        (FolkloreTarget::Eq, p.zero_valid && p.one_valid),
    ];
    let mut out = BTreeMap::new();
    for (target, ok) in applicable {
        if ok {
            let outcome = pp_define(gamma, &target.relation(), Closure::NoExistsNoEq, 0, DEFAULT_MAX_CONSTRAINTS)?;
            out.insert(target, outcome);
        }
    }
    Ok(out)
}

/// Cases for languages that are neither 0-/1-valid nor essentially positive or negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsValidItem {
    /// Not Horn, not dual-Horn, not complementive: `(x ≠ y) ∧ t ∧ ¬f`.
    NeqTf,
    /// Not Horn, not dual-Horn, complementive: `x ≠ y`.
    Neq,
    /// Horn or dual-Horn: `(x = y) ∧ t ∧ ¬f`.
    EqTf,
}

impl EpsValidItem {
    pub fn relation(self) -> BooleanRelation {
        match self {
            EpsValidItem::NeqTf => BooleanRelation::neq_tf(),
            EpsValidItem::Neq => BooleanRelation::disequality(),
            EpsValidItem::EqTf => BooleanRelation::eq_tf(),
        }
    }
}

/// Quantifier-free, equality-free implementation of the relation that the
/// case analysis promises for `gamma`.
pub fn implement_eps_valid(gamma: &ConstraintLanguage) -> Result<(EpsValidItem, PpOutcome)> {
    let p = gamma.properties();
    if p.eps_valid || p.ess_pos || p.ess_neg {
        return Err(Error::Domain(
            "the language must be neither 0-/1-valid nor essentially positive or negative".into(),
        ));
    }
    let item = if p.horn || p.dual_horn {
        EpsValidItem::EqTf
    } else if p.complementive {
        EpsValidItem::Neq
    } else {
        EpsValidItem::NeqTf
    };
    let outcome = pp_define(gamma, &item.relation(), Closure::NoExistsNoEq, 0, DEFAULT_MAX_CONSTRAINTS)?;
    Ok((item, outcome))
}

/// A definition of equality that does not use the equality relation, for a
/// language that is neither strictly essentially positive nor strictly
/// essentially negative.
///
/// When some member meets the hypotheses of [`construct_eq_tf`], equality is
/// `∃t∃f M(x1,x2,t,f)`; otherwise a bounded search is run.
pub fn equality_available(gamma: &ConstraintLanguage) -> Result<PpOutcome> {
    let p = gamma.properties();
    if p.strictly_ess_pos || p.strictly_ess_neg {
        return Err(Error::Domain(
            "the language is strictly essentially positive or negative".into(),
        ));
    }
    if let Some(m) = gamma.iter().find_map(|r| construct_eq_tf(r).ok()) {
        let def = PpDefinition {
            target: BooleanRelation::equality(),
            vars: m.vars[..2].to_vec(),
            aux: m.vars[2..].to_vec(),
            body: m.body,
            uses_equality: false,
        };
        def.verify()?;
        return Ok(PpOutcome::Found(def));
    }
    pp_define(gamma, &BooleanRelation::equality(), Closure::NoEq, EQ_SEARCH_AUX, DEFAULT_MAX_CONSTRAINTS)
}
