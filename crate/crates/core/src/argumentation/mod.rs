//! Deciders for the argumentation problems: ARG (is there an argument for a
//! claim), ARG-Check (is a given support an argument) and ARG-Rel (is there an
//! argument whose support contains a given formula).
//!
//! An argument for a claim `α` is a set `Φ` of formulas that is consistent,
//! entails `α`, and has no proper subset that entails `α`.

mod clique;
mod reductions;
mod wsat;

use std::fmt;

use serde::Serialize;

use crate::entailment::{formula_properties, implies, satisfiable, Assumptions, Engine, ImpEngine};
use crate::error::{Error, Result};
use crate::formulas::{GammaFormula, KnowledgeBase, ModelSet, VarIndex};
use crate::limits::Limits;

pub use clique::{arg_via_clique, decide_terms, find_clique, formula_term, support_graph, SupportGraph, Term};
pub use reductions::{
    derive_defs, generate_from_1in3, reduce_arg_instance, solve_pos_1in3, Definitions, OneInThreeVariant,
    ReductionInstance,
};
pub use wsat::{arg_via_wsat, WsatEncoding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    Brute,
    Clique,
    Wsat,
    SubsetFpt,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Certificate::Brute => "BRUTE",
            Certificate::Clique => "CLIQUE",
            Certificate::Wsat => "WSAT",
            Certificate::SubsetFpt => "SUBSET_FPT",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgVerdict {
    pub decision: bool,
    /// Positions in the knowledge base of a minimal support, for positive
    /// answers to existence questions.
    pub support: Option<Vec<usize>>,
    pub certificate: Certificate,
}

impl ArgVerdict {
    fn no(certificate: Certificate) -> Self {
        ArgVerdict {
            decision: false,
            support: None,
            certificate,
        }
    }

    fn yes(support: Vec<usize>, certificate: Certificate) -> Self {
        ArgVerdict {
            decision: true,
            support: Some(support),
            certificate,
        }
    }

    /// The support as a knowledge base.
    pub fn support_kb(&self, delta: &KnowledgeBase) -> Option<KnowledgeBase> {
        self.support.as_ref().map(|s| delta.subset(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArgEngine {
    /// Clique for term languages, subset enumeration for other Schaefer
    /// languages, brute force otherwise.
    Auto,
    Brute,
    /// Enumerates subsets of the knowledge base with polynomial checks.
    Subset,
    Clique,
    Wsat { r: usize },
}

fn check_kb_size(n: usize) -> Result<()> {
    let max = Limits::current().max_kb;
    if n > max {
        return Err(Error::Capacity(format!(
            "{n} formulas exceed the knowledge-base limit of {max}"
        )));
    }
    Ok(())
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Truth tables of every formula of a knowledge base and of the claim.
pub(crate) struct Tables {
    formulas: Vec<ModelSet>,
    alpha: ModelSet,
    n: usize,
}

impl Tables {
    pub fn new(delta: &KnowledgeBase, alpha: &GammaFormula) -> Result<Self> {
        check_kb_size(delta.len())?;
        let mut vars = delta.vars();
        vars.extend(alpha.vars());
        let index = VarIndex::new(vars, Limits::current().max_vars)?;
        Ok(Tables {
            formulas: delta.iter().map(|f| index.table(f)).collect::<Result<_>>()?,
            alpha: index.table(alpha)?,
            n: index.len(),
        })
    }

    pub fn conj(&self, mask: u64) -> ModelSet {
        let mut acc = ModelSet::full(self.n);
        for i in mask_indices(mask) {
            acc.intersect_with(&self.formulas[i]);
        }
        acc
    }

    pub fn entails(&self, mask: u64) -> bool {
        self.conj(mask).is_subset(&self.alpha)
    }

    pub fn is_argument(&self, mask: u64) -> bool {
        let all = self.conj(mask);
        !all.is_empty()
            && all.is_subset(&self.alpha)
            && mask_indices(mask).iter().all(|&i| !self.entails(mask & !(1 << i)))
    }

    /// First consistent entailing set in include-first depth-first order.
    fn search(&self, start: usize, mask: u64, acc: &ModelSet) -> Option<u64> {
        if acc.is_subset(&self.alpha) {
            return Some(mask);
        }
        for j in start..self.formulas.len() {
            let mut next = acc.clone();
            next.intersect_with(&self.formulas[j]);
            if next.is_empty() {
                continue;
            }
            if let Some(hit) = self.search(j + 1, mask | 1 << j, &next) {
                return Some(hit);
            }
        }
        None
    }
}

/// Drops members in input order while the rest still entails, until no
/// single member can be dropped. The input must be consistent.
pub(crate) fn minimize(mut support: Vec<usize>, mut entails: impl FnMut(&[usize]) -> Result<bool>) -> Result<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < support.len() {
            let mut rest = support.clone();
            rest.remove(i);
            if entails(&rest)? {
                support = rest;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            return Ok(support);
        }
    }
}

fn to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

/// Whether `phi` is an argument for `alpha`: consistent, entailing, and no
/// set obtained by dropping one formula entails `alpha`.
pub fn check_argument(phi: &KnowledgeBase, alpha: &GammaFormula) -> Result<ArgVerdict> {
    let tables = Tables::new(phi, alpha)?;
    let all = (1u64 << phi.len()) - 1;
    Ok(ArgVerdict {
        decision: tables.is_argument(all),
        support: None,
        certificate: Certificate::Brute,
    })
}

/// Whether some subset of `delta` is an argument for `alpha`.
pub fn exists_argument(delta: &KnowledgeBase, alpha: &GammaFormula, engine: ArgEngine) -> Result<ArgVerdict> {
    match engine {
        ArgEngine::Auto => {
            let mut all = delta.formulas().to_vec();
            all.push(alpha.clone());
            let props = formula_properties(&all);
            if props.strictly_ess_pos && props.strictly_ess_neg {
                match arg_via_clique(delta, alpha) {
                    Err(Error::Capacity(_)) => exists_by_subsets(delta, alpha),
                    other => other,
                }
            } else if props.schaefer {
                exists_by_subsets(delta, alpha)
            } else {
                exists_brute(delta, alpha)
            }
        }
        ArgEngine::Brute => exists_brute(delta, alpha),
        ArgEngine::Subset => exists_by_subsets(delta, alpha),
        ArgEngine::Clique => arg_via_clique(delta, alpha),
        ArgEngine::Wsat { r } => arg_via_wsat(delta, alpha, r),
    }
}

fn exists_brute(delta: &KnowledgeBase, alpha: &GammaFormula) -> Result<ArgVerdict> {
    let tables = Tables::new(delta, alpha)?;
    match tables.search(0, 0, &ModelSet::full(tables.n)) {
        None => Ok(ArgVerdict::no(Certificate::Brute)),
        Some(mask) => {
            let support = minimize(mask_indices(mask), |s| Ok(tables.entails(to_mask(s))))?;
            Ok(ArgVerdict::yes(support, Certificate::Brute))
        }
    }
}

/// Consistency and entailment of a sub-base through the polynomial engines
/// when the language allows it.
pub(crate) fn subset_consistent(sub: &KnowledgeBase) -> Result<bool> {
    Ok(satisfiable(sub.formulas(), &Assumptions::new(), Engine::Auto)?.is_sat())
}

/// Checks every subset of `delta` by increasing size. Each check is
/// polynomial for Schaefer languages, so the search is exponential only in
/// the size of the knowledge base. The first hit is minimal because all
/// smaller sets were rejected before it.
fn exists_by_subsets(delta: &KnowledgeBase, alpha: &GammaFormula) -> Result<ArgVerdict> {
    check_kb_size(delta.len())?;
    let n = delta.len();
    for size in 0..=n {
        for combo in combinations(n, size) {
            let sub = delta.subset(&combo);
            if subset_consistent(&sub)? && implies(&sub, alpha, ImpEngine::Auto)? {
                return Ok(ArgVerdict::yes(combo, Certificate::SubsetFpt));
            }
        }
    }
    Ok(ArgVerdict::no(Certificate::SubsetFpt))
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (size <= n).then(|| (0..size).collect::<Vec<usize>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut c = current.clone();
        let mut i = size;
        while i > 0 {
            i -= 1;
            if c[i] < n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                next = Some(c);
                break;
            }
        }
        Some(current)
    })
}

/// Whether some argument for `alpha` in `delta` has `psi` in its support.
///
/// Unlike [`exists_argument`], minimality matters here, so every subset
/// containing `psi` is checked for being an argument.
pub fn exists_argument_rel(delta: &KnowledgeBase, psi: &GammaFormula, alpha: &GammaFormula) -> Result<ArgVerdict> {
    let p = delta
        .position(psi)
        .ok_or_else(|| Error::Domain(format!("{psi} is not in the knowledge base")))?;
    let tables = Tables::new(delta, alpha)?;
    let n = delta.len();
    let others: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    for size in 0..n {
        for combo in combinations(others.len(), size) {
            let mask = combo.iter().fold(1u64 << p, |m, &i| m | 1 << others[i]);
            if tables.is_argument(mask) {
                return Ok(ArgVerdict::yes(mask_indices(mask), Certificate::Brute));
            }
        }
    }
    Ok(ArgVerdict::no(Certificate::Brute))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_formula, Vocabulary};
    use crate::relations::BooleanRelation;
    use std::sync::Arc;

    fn vocab() -> Vocabulary {
        let mut v = Vocabulary::new();
        v.define(Arc::new(BooleanRelation::from_fn("IMP", 2, |x| !x[0] || x[1]).unwrap()))
            .unwrap();
        v.define(Arc::new(BooleanRelation::from_fn("ALL", 2, |_| true).unwrap()))
            .unwrap();
        v
    }

    fn f(text: &str) -> GammaFormula {
        parse_formula(text, &vocab()).unwrap()
    }

    fn kb(items: &[&str]) -> KnowledgeBase {
        KnowledgeBase::new(items.iter().map(|s| f(s)))
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn check_argument_examples() {
        let phi1 = kb(&["IMP(pd,dg)", "T(pd)"]);
        assert!(check_argument(&phi1, &f("T(dg)")).unwrap().decision);
        assert!(!check_argument(&kb(&["T(x)", "T(y)"]), &f("T(x)")).unwrap().decision);
        assert!(!check_argument(&kb(&["T(x)", "F(x)"]), &f("T(y)")).unwrap().decision);
    }

    #[test]
    fn exists_argument_examples() {
        let engines = [ArgEngine::Auto, ArgEngine::Brute, ArgEngine::Subset];
        for e in engines {
            let v = exists_argument(&KnowledgeBase::default(), &f("ALL(x,y)"), e).unwrap();
            assert!(v.decision);
            assert_eq!(v.support, Some(vec![]));

            let v = exists_argument(&kb(&["T(x)", "F(x)"]), &f("T(x)"), e).unwrap();
            assert_eq!(v.support, Some(vec![0]));
        }
        let delta = kb(&["IMP(pd,dg)", "T(pd)", "IMP(rd,ndg)", "T(rd)"]);
        let v = exists_argument(&delta, &f("T(dg)"), ArgEngine::Brute).unwrap();
        assert_eq!(v.support, Some(vec![0, 1]));
    }

    #[test]
    fn brute_support_is_minimized() {
        let delta = kb(&["T(y)", "T(x)", "IMP(y,x)"]);
        let v = exists_argument(&delta, &f("T(x)"), ArgEngine::Brute).unwrap();
        assert_eq!(v.support, Some(vec![1]));
    }

    #[test]
    fn exists_argument_rel_examples() {
        let delta = kb(&["T(x)", "T(y)"]);
        assert!(!exists_argument_rel(&delta, &f("T(y)"), &f("T(x)")).unwrap().decision);
        assert!(exists_argument_rel(&kb(&["T(x)"]), &f("T(x)"), &f("T(x)")).unwrap().decision);
        assert!(matches!(
            exists_argument_rel(&delta, &f("F(y)"), &f("T(x)")),
            Err(Error::Domain(_))
        ));
    }
}
