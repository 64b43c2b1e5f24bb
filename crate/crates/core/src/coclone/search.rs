//! Bounded search for primitive positive definitions.
//!
//! Stages run in order of auxiliary count; for each count the equality-free
//! stage comes first, then (for [`Closure::Full`]) the stage that may also use
//! equality. Inside a stage, bodies are tried by increasing size and then in
//! lexicographic order of candidate constraints. A body found for a smaller
//! closure is therefore found again, unchanged, for every larger closure.

use std::collections::HashSet;
use std::sync::Arc;

use super::{target_table, Closure, PpDefinition, PpOutcome};
use crate::error::{Error, Result};
use crate::formulas::{Constraint, GammaFormula, ModelSet, Var};
use crate::limits::Limits;
use crate::relations::{BooleanRelation, ConstraintLanguage};

pub const DEFAULT_MAX_CONSTRAINTS: usize = 3;
const MAX_VARS: usize = 10;
const MAX_CONSTRAINTS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_aux: usize,
    pub max_constraints: usize,
    /// Search nodes allowed before giving up.
    pub nodes: u64,
}

struct Candidate {
    rel: Arc<BooleanRelation>,
    args: Vec<usize>,
    is_extra_eq: bool,
    table: ModelSet,
}

struct Stage<'a> {
    k: usize,
    target: &'a ModelSet,
    candidates: Vec<Candidate>,
    nodes_left: &'a mut u64,
}

enum Step {
    Hit(Vec<usize>),
    Miss,
    OutOfBudget,
}

impl Stage<'_> {
    fn covers(&self, table: &ModelSet) -> bool {
        self.target.is_subset(&table.project_prefix(self.k))
    }

    fn dfs(&mut self, start: usize, depth: usize, acc: &ModelSet, chosen: &mut Vec<usize>) -> Step {
        if depth == 0 {
            return if acc.project_prefix(self.k) == *self.target {
                Step::Hit(chosen.clone())
            } else {
                Step::Miss
            };
        }
        for i in start..self.candidates.len() {
            if *self.nodes_left == 0 {
                return Step::OutOfBudget;
            }
            *self.nodes_left -= 1;
            let mut next = acc.clone();
            next.intersect_with(&self.candidates[i].table);
            if !self.covers(&next) {
                continue;
            }
            chosen.push(i);
            let step = self.dfs(i + 1, depth - 1, &next, chosen);
            chosen.pop();
            if !matches!(step, Step::Miss) {
                return step;
            }
        }
        Step::Miss
    }
}

fn var_name(k: usize, p: usize) -> Var {
    if p < k {
        Var::new(format!("x{}", p + 1))
    } else {
        Var::new(format!("y{}", p - k + 1))
    }
}

/// All argument tuples over `0..n` in lexicographic order.
fn arg_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut code| {
        let mut args = vec![0; arity];
        for slot in args.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        args
    })
}

fn candidates(rels: &[(Arc<BooleanRelation>, bool)], k: usize, n: usize, target: &ModelSet) -> Vec<Candidate> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for (rel, is_extra_eq) in rels {
        for args in arg_tuples(n, rel.arity()) {
            let bits: Vec<usize> = args.iter().map(|p| n - 1 - p).collect();
            let table = ModelSet::of_constraint(n, rel, &bits);
            if table.is_full() || !target.is_subset(&table.project_prefix(k)) {
                continue;
            }
            if seen.insert(table.words().to_vec()) {
                out.push(Candidate {
                    rel: rel.clone(),
                    args,
                    is_extra_eq: *is_extra_eq,
                    table,
                });
            }
        }
    }
    out
}

/// [`pp_define_with_budget`] with the node budget from [`Limits`].
pub fn pp_define(
    gamma: &ConstraintLanguage,
    target: &BooleanRelation,
    closure: Closure,
    max_aux: usize,
    max_constraints: usize,
) -> Result<PpOutcome> {
    let budget = SearchBudget {
        max_aux,
        max_constraints,
        nodes: Limits::current().search_nodes,
    };
    pp_define_with_budget(gamma, target, closure, budget)
}

/// Searches for `target(x1..xk) ≡ ∃ y1..ya . body` with `a ≤ max_aux` and at
/// most `max_constraints` constraints over the members of `gamma`.
///
/// The body variables are `x1..xk` for the target coordinates and `y1..ya`
/// for auxiliaries. Every returned definition has been verified.
pub fn pp_define_with_budget(
    gamma: &ConstraintLanguage,
    target: &BooleanRelation,
    closure: Closure,
    budget: SearchBudget,
) -> Result<PpOutcome> {
    let k = target.arity();
    let max_aux = if closure == Closure::NoExistsNoEq { 0 } else { budget.max_aux };
    if k + max_aux > MAX_VARS {
        return Err(Error::Domain(format!(
            "target arity plus auxiliaries exceeds {MAX_VARS}"
        )));
    }
    if budget.max_constraints > MAX_CONSTRAINTS {
        return Err(Error::Domain(format!("at most {MAX_CONSTRAINTS} constraints can be searched")));
    }
    let target_set = target_table(target);
    let members: Vec<(Arc<BooleanRelation>, bool)> = gamma.relations().iter().map(|r| (r.clone(), false)).collect();
    let eq = BooleanRelation::equality();
    let extra_eq = closure == Closure::Full && !gamma.contains(&eq);
    let mut with_eq = members.clone();
    with_eq.push((Arc::new(eq), true));

    let mut nodes_left = budget.nodes;
    let mut exhausted = false;
    for a in 0..=max_aux {
        let n = k + a;
        let stages: &[&[(Arc<BooleanRelation>, bool)]] = if extra_eq { &[&members, &with_eq] } else { &[&members] };
        for rels in stages {
            let mut stage = Stage {
                k,
                target: &target_set,
                candidates: candidates(rels, k, n, &target_set),
                nodes_left: &mut nodes_left,
            };
            for size in 0..=budget.max_constraints {
                match stage.dfs(0, size, &ModelSet::full(n), &mut Vec::new()) {
                    Step::Hit(chosen) => {
                        let body = GammaFormula::new(chosen.iter().map(|&i| {
                            let c = &stage.candidates[i];
                            Constraint::new(c.rel.clone(), c.args.iter().map(|&p| var_name(k, p)))
                                .expect("candidate arity matches")
                        }));
                        let def = PpDefinition {
                            target: target.clone(),
                            vars: (0..k).map(|p| var_name(k, p)).collect(),
                            aux: (k..n).map(|p| var_name(k, p)).collect(),
                            body,
                            uses_equality: chosen.iter().any(|&i| stage.candidates[i].is_extra_eq),
                        };
                        def.verify()?;
                        return Ok(PpOutcome::Found(def));
                    }
                    Step::Miss => {}
                    Step::OutOfBudget => {
                        exhausted = true;
                        break;
                    }
                }
            }
            if exhausted {
                break;
            }
        }
        if exhausted {
            break;
        }
    }
    Ok(if exhausted { PpOutcome::BudgetExhausted } else { PpOutcome::NotFound })
}
