//! ARG for strictly essentially positive (or negative) languages through a
//! weighted satisfiability encoding over indicator variables for small
//! subsets of the knowledge base.

use std::collections::{BTreeSet, HashMap};

use super::{check_kb_size, combinations, minimize, subset_consistent, ArgVerdict, Certificate};
use crate::entailment::{formula_properties, implies, satisfiable, Assumptions, Engine, ImpEngine};
use crate::error::{Error, Result};
use crate::formulas::{Constraint, GammaFormula, KnowledgeBase, Var};
use crate::limits::Limits;
use crate::relations::Clause;

/// Inconsistency checks allowed while building the negative clauses.
const MAX_NEGATIVE_CANDIDATES: usize = 1 << 22;

type GroundClause = BTreeSet<(Var, bool)>;

fn ground(c: &Constraint, clause: &Clause) -> Option<GroundClause> {
    let mut out = GroundClause::new();
    for (j, v) in c.args().iter().enumerate() {
        if clause.pos >> j & 1 == 1 {
            out.insert((v.clone(), true));
        }
        if clause.neg >> j & 1 == 1 {
            out.insert((v.clone(), false));
        }
    }
    let tautology = out.iter().any(|(v, p)| out.contains(&(v.clone(), !p)));
    (!tautology).then_some(out)
}

fn clauses_of(phi: &GammaFormula, dual: bool) -> Vec<GroundClause> {
    let mut out = Vec::new();
    for c in phi.constraints() {
        let reps = c.relation().representations();
        let rep = if dual { &reps.strict_neg } else { &reps.strict_pos };
        for cl in rep.as_ref().expect("relation in the strict class") {
            if let Some(g) = ground(c, cl) {
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// The weighted satisfiability instance for one ARG instance.
#[derive(Clone, Debug)]
pub struct WsatEncoding {
    pub r: usize,
    /// Whether the language is handled as strictly essentially negative.
    pub dual: bool,
    /// `S(u_j)`: the knowledge-base positions each indicator stands for.
    pub indicators: Vec<Vec<usize>>,
    /// `L_i`: indicators whose subset entails the `i`-th claim conjunct.
    pub positive_clauses: Vec<Vec<usize>>,
    /// Sets of at most `r + 1` indicators whose subsets are jointly inconsistent.
    pub negative_clauses: Vec<Vec<usize>>,
    /// Number of claim conjuncts.
    pub weight_bound: usize,
}

impl WsatEncoding {
    pub fn build(delta: &KnowledgeBase, alpha: &GammaFormula, r: usize) -> Result<Self> {
        check_kb_size(delta.len())?;
        if r == 0 {
            return Err(Error::Domain("clause width bound must be positive".into()));
        }
        let mut all = delta.formulas().to_vec();
        all.push(alpha.clone());
        let props = formula_properties(&all);
        let dual = match (props.strictly_ess_pos, props.strictly_ess_neg) {
            (true, _) => false,
            (false, true) => true,
            (false, false) => {
                return Err(Error::Dispatch(
                    "the weighted-SAT engine needs a strictly essentially positive or negative language".into(),
                ))
            }
        };
        for phi in &all {
            if let Some(c) = clauses_of(phi, dual).iter().find(|c| c.len() > r) {
                return Err(Error::Domain(format!("{phi} has a clause of width {} above {r}", c.len())));
            }
        }
        let conjuncts = clauses_of(alpha, dual);

        let n = delta.len();
        let indicators: Vec<Vec<usize>> = (1..=r.min(n)).flat_map(|size| combinations(n, size)).collect();
        let max = Limits::current().max_indicators;
        if indicators.len() > max {
            return Err(Error::Capacity(format!(
                "{} indicators exceed the limit of {max}",
                indicators.len()
            )));
        }
        let masks: Vec<u64> = indicators.iter().map(|s| s.iter().fold(0, |m, &i| m | 1 << i)).collect();

        let mut consistent: HashMap<u64, bool> = HashMap::new();
        let mut is_consistent = |mask: u64| -> Result<bool> {
            if let Some(&b) = consistent.get(&mask) {
                return Ok(b);
            }
            let b = subset_consistent(&delta.subset(&super::mask_indices(mask)))?;
            consistent.insert(mask, b);
            Ok(b)
        };

        let mut positive_clauses = Vec::with_capacity(conjuncts.len());
        for a in &conjuncts {
            let falsified: Assumptions = a.iter().map(|(v, p)| (v.clone(), !p)).collect();
            let mut members = Vec::new();
            for (j, s) in indicators.iter().enumerate() {
                let sub = delta.subset(s);
                if !satisfiable(sub.formulas(), &falsified, Engine::Auto)?.is_sat() {
                    members.push(j);
                }
            }
            positive_clauses.push(members);
        }

        let m = indicators.len();
        let candidates: usize = (1..=(r + 1).min(m)).map(|j| binomial(m, j)).sum();
        if candidates > MAX_NEGATIVE_CANDIDATES {
            return Err(Error::Capacity(format!(
                "{candidates} indicator sets to check for consistency exceed {MAX_NEGATIVE_CANDIDATES}"
            )));
        }
        let mut negative_clauses = Vec::new();
        for size in 1..=(r + 1).min(m) {
            for v in combinations(m, size) {
                let mask = v.iter().fold(0u64, |acc, &j| acc | masks[j]);
                if !is_consistent(mask)? {
                    negative_clauses.push(v);
                }
            }
        }
        Ok(WsatEncoding {
            r,
            dual,
            indicators,
            positive_clauses,
            negative_clauses,
            weight_bound: conjuncts.len(),
        })
    }

    /// `r · |Δ|^r`, the bound on the number of indicators.
    pub fn indicator_bound(&self, kb_size: usize) -> usize {
        self.r.saturating_mul(kb_size.saturating_pow(self.r as u32))
    }

    /// A model of weight at most the bound, as a sorted list of true indicators.
    ///
    /// Weights are tried in increasing order; each level picks one true
    /// indicator for the first positive clause not yet satisfied, rejecting
    /// choices that complete a negative clause.
    pub fn solve(&self) -> Option<Vec<usize>> {
        let mut by_member: Vec<Vec<usize>> = vec![Vec::new(); self.indicators.len()];
        for (ci, c) in self.negative_clauses.iter().enumerate() {
            for &u in c {
                by_member[u].push(ci);
            }
        }
        let mut chosen = vec![false; self.indicators.len()];
        for w in 0..=self.weight_bound {
            let mut picked = Vec::new();
            if self.pick(w, &by_member, &mut chosen, &mut picked) {
                picked.sort_unstable();
                return Some(picked);
            }
        }
        None
    }

    fn pick(&self, budget: usize, by_member: &[Vec<usize>], chosen: &mut [bool], picked: &mut Vec<usize>) -> bool {
        let open = self
            .positive_clauses
            .iter()
            .find(|l| !l.iter().any(|&u| chosen[u]));
        let Some(open) = open else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &u in open {
            chosen[u] = true;
            let conflict = by_member[u]
                .iter()
                .any(|&ci| self.negative_clauses[ci].iter().all(|&x| chosen[x]));
            if !conflict {
                picked.push(u);
                if self.pick(budget - 1, by_member, chosen, picked) {
                    return true;
                }
                picked.pop();
            }
            chosen[u] = false;
        }
        false
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// ARG through the weighted-SAT encoding with clause width bound `r`.
pub fn arg_via_wsat(delta: &KnowledgeBase, alpha: &GammaFormula, r: usize) -> Result<ArgVerdict> {
    let enc = WsatEncoding::build(delta, alpha, r)?;
    let Some(model) = enc.solve() else {
        return Ok(ArgVerdict::no(Certificate::Wsat));
    };
    let support: BTreeSet<usize> = model.iter().flat_map(|&u| enc.indicators[u].iter().copied()).collect();
    let support = minimize(support.into_iter().collect(), |s| implies(&delta.subset(s), alpha, ImpEngine::Auto))?;
    Ok(ArgVerdict::yes(support, Certificate::Wsat))
}
