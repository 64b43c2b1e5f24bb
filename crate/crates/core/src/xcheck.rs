//! Seeded random instance generators and oracle-agreement sweeps.
//!
//! Every sweep compares a specialized decider against the truth-table
//! engine on instances drawn from a ChaCha generator, so a run is fully
//! determined by the suite name and the seed.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::argumentation::{
    arg_via_clique, arg_via_wsat, check_argument, exists_argument, generate_from_1in3, solve_pos_1in3, ArgEngine,
    OneInThreeVariant,
};
use crate::entailment::{implies, satisfiable, Assumptions, Engine, ImpEngine};
use crate::error::{Error, Result};
use crate::formulas::{evaluate, CnfFormula, Constraint, GammaFormula, KnowledgeBase, Literal, Var};
use crate::relations::{closure_test, representable_by, BooleanRelation, ClassTag, Polymorphism};

pub const SUITES: [&str; 7] = ["properties", "sat", "imp", "clique", "wsat", "reduction", "arg-check"];

/// The four tractable clause shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchaeferClass {
    Horn,
    DualHorn,
    Bijunctive,
    Affine,
}

impl SchaeferClass {
    pub const ALL: [SchaeferClass; 4] = [
        SchaeferClass::Horn,
        SchaeferClass::DualHorn,
        SchaeferClass::Bijunctive,
        SchaeferClass::Affine,
    ];

    pub fn engine(self) -> Engine {
        match self {
            SchaeferClass::Horn => Engine::Horn,
            SchaeferClass::DualHorn => Engine::DualHorn,
            SchaeferClass::Bijunctive => Engine::TwoSat,
            SchaeferClass::Affine => Engine::Affine,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A relation of the given arity defined by one to three random clauses
/// (or equations) of the class's shape.
pub fn random_relation(rng: &mut impl Rng, class: SchaeferClass, arity: usize, name: &str) -> BooleanRelation {
    let parts: Vec<(u64, u64)> = (0..rng.random_range(1..=3))
        .map(|_| {
            let mut pos = 0u64;
            let mut neg = 0u64;
            let width = match class {
                SchaeferClass::Bijunctive => rng.random_range(1..=2.min(arity)),
                _ => rng.random_range(1..=arity),
            };
            let mut coords: Vec<usize> = (0..arity).collect();
            for i in 0..width {
                let j = rng.random_range(i..arity);
                coords.swap(i, j);
            }
            let chosen = &coords[..width];
            match class {
                SchaeferClass::Horn | SchaeferClass::DualHorn => {
                    let special = rng.random_bool(0.5).then(|| chosen[0]);
                    for &c in chosen {
                        let odd = Some(c) == special;
                        if (class == SchaeferClass::Horn) == odd {
                            pos |= 1 << c;
                        } else {
                            neg |= 1 << c;
                        }
                    }
                }
                SchaeferClass::Bijunctive => {
                    for &c in chosen {
                        if rng.random_bool(0.5) {
                            pos |= 1 << c;
                        } else {
                            neg |= 1 << c;
                        }
                    }
                }
                SchaeferClass::Affine => {
                    for &c in chosen {
                        pos |= 1 << c;
                    }
                    neg = rng.random_bool(0.5) as u64;
                }
            }
            (pos, neg)
        })
        .collect();
    BooleanRelation::from_fn(name, arity, |t| {
        let idx: u64 = t.iter().enumerate().map(|(j, &b)| (b as u64) << j).sum();
        parts.iter().all(|&(pos, neg)| {
            if class == SchaeferClass::Affine {
                ((idx & pos).count_ones() as u64 & 1) == neg
            } else {
                idx & pos != 0 || !idx & neg != 0
            }
        })
    })
    .expect("arity within bounds")
}

/// A small language of random relations of one class.
pub fn random_language(rng: &mut impl Rng, class: SchaeferClass, size: usize) -> Vec<Arc<BooleanRelation>> {
    (0..size)
        .map(|i| {
            let arity = rng.random_range(1..=3);
            Arc::new(random_relation(rng, class, arity, &format!("R{i}")))
        })
        .collect()
}

/// `x0 .. x{n-1}`.
pub fn var_pool(n: usize) -> Vec<Var> {
    (0..n).map(|i| Var::new(format!("x{i}"))).collect()
}

/// A conjunction of `size` constraints with arguments drawn from `vars`.
pub fn random_formula(rng: &mut impl Rng, lang: &[Arc<BooleanRelation>], vars: &[Var], size: usize) -> GammaFormula {
    GammaFormula::new((0..size).map(|_| {
        let rel = lang[rng.random_range(0..lang.len())].clone();
        let args: Vec<Var> = (0..rel.arity()).map(|_| vars[rng.random_range(0..vars.len())].clone()).collect();
        Constraint::new(rel, args).expect("arity matches")
    }))
}

/// A conjunction of up to `max_lits` literals over `vars`, as T/F constraints.
pub fn random_term(rng: &mut impl Rng, vars: &[Var], max_lits: usize) -> GammaFormula {
    let t = Arc::new(BooleanRelation::truth());
    let f = Arc::new(BooleanRelation::falsity());
    let len = rng.random_range(1..=max_lits);
    GammaFormula::new((0..len).map(|_| {
        let v = vars[rng.random_range(0..vars.len())].clone();
        let rel = if rng.random_bool(0.5) { t.clone() } else { f.clone() };
        Constraint::new(rel, [v]).expect("unary")
    }))
}

/// The language of strictly essentially positive instances used by the
/// weighted-SAT sweep: a positive 2-clause, both constants, and a positive
/// 2-clause with a negative unit.
pub fn strict_pos_language() -> Vec<Arc<BooleanRelation>> {
    vec![
        Arc::new(BooleanRelation::from_fn("OR2", 2, |t| t[0] || t[1]).unwrap()),
        Arc::new(BooleanRelation::truth()),
        Arc::new(BooleanRelation::falsity()),
        Arc::new(BooleanRelation::from_fn("ORN", 3, |t| (t[0] || t[1]) && !t[2]).unwrap()),
    ]
}

/// A positive 3-CNF with `clauses` clauses over `vars`.
pub fn random_pos_3cnf(rng: &mut impl Rng, vars: &[Var], clauses: usize) -> CnfFormula {
    CnfFormula::new(
        (0..clauses)
            .map(|_| (0..3).map(|_| Literal::pos(vars[rng.random_range(0..vars.len())].clone())).collect())
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XcheckReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub disagreements: Vec<String>,
}

impl XcheckReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs one named sweep.
pub fn run_suite(suite: &str, seed: u64) -> Result<XcheckReport> {
    let mut rng = rng(seed);
    let mut report = XcheckReport {
        suite: suite.to_string(),
        seed,
        cases: 0,
        disagreements: Vec::new(),
    };
    let check = |report: &mut XcheckReport, ok: bool, what: String| {
        report.cases += 1;
        if !ok {
            report.disagreements.push(what);
        }
    };
    match suite {
        "properties" => {
            for _ in 0..200 {
                let arity = rng.random_range(1..=4);
                let mask = rng.random::<u64>() & ((1u64 << (1 << arity)) - 1).max(1);
                let rel = BooleanRelation::from_mask("R", arity, mask)?;
                let pairs = [
                    (ClassTag::Horn, Polymorphism::And),
                    (ClassTag::DualHorn, Polymorphism::Or),
                    (ClassTag::Bijunctive, Polymorphism::Majority),
                    (ClassTag::AffineEquation, Polymorphism::Xor3),
                ];
                for (tag, op) in pairs {
                    let ok = representable_by(&rel, tag.into()) == closure_test(&rel, op);
                    check(&mut report, ok, format!("{tag:?} on {}", rel.to_line()));
                }
            }
        }
        "sat" => {
            for class in SchaeferClass::ALL {
                for _ in 0..100 {
                    let lang = random_language(&mut rng, class, 3);
                    let vars = var_pool(rng.random_range(1..=8));
                    let size = rng.random_range(1..=8);
                    let phi = random_formula(&mut rng, &lang, &vars, size);
                    let none = Assumptions::new();
                    let fast = satisfiable(std::slice::from_ref(&phi), &none, class.engine())?;
                    let brute = satisfiable(std::slice::from_ref(&phi), &none, Engine::Brute)?;
                    let witness_ok = match &fast.witness {
                        Some(w) => evaluate(&phi, w)?,
                        None => true,
                    };
                    check(&mut report, fast.is_sat() == brute.is_sat() && witness_ok, format!("{class:?}: {phi}"));
                }
            }
        }
        "imp" => {
            for class in SchaeferClass::ALL {
                for _ in 0..100 {
                    let lang = random_language(&mut rng, class, 3);
                    let vars = var_pool(6);
                    let kb = KnowledgeBase::new((0..rng.random_range(1..=3)).map(|_| {
                        let size = rng.random_range(1..=3);
                        random_formula(&mut rng, &lang, &vars[..4], size)
                    }));
                    let alpha_vars = if rng.random_bool(0.25) { &vars[4..] } else { &vars[..] };
                    let size = rng.random_range(1..=2);
                    let alpha = random_formula(&mut rng, &lang, alpha_vars, size);
                    let fast = implies(&kb, &alpha, ImpEngine::Schaefer)?;
                    let brute = implies(&kb, &alpha, ImpEngine::Brute)?;
                    check(&mut report, fast == brute, format!("{class:?}: {kb:?} |= {alpha}"));
                }
            }
        }
        "clique" => {
            for _ in 0..300 {
                let vars = var_pool(4);
                let kb = KnowledgeBase::new((0..rng.random_range(0..=5)).map(|_| random_term(&mut rng, &vars, 3)));
                let alpha = random_term(&mut rng, &vars, 3);
                let fast = arg_via_clique(&kb, &alpha)?;
                let brute = exists_argument(&kb, &alpha, ArgEngine::Brute)?;
                check(&mut report, fast.decision == brute.decision, format!("{kb:?} / {alpha}"));
            }
        }
        "wsat" => {
            let lang = strict_pos_language();
            for _ in 0..150 {
                let vars = var_pool(5);
                let kb = KnowledgeBase::new((0..rng.random_range(1..=5)).map(|_| {
                    let size = rng.random_range(1..=2);
                    random_formula(&mut rng, &lang, &vars, size)
                }));
                let size = rng.random_range(1..=2);
                let alpha = random_formula(&mut rng, &lang, &vars, size);
                let fast = arg_via_wsat(&kb, &alpha, 2)?;
                let brute = exists_argument(&kb, &alpha, ArgEngine::Brute)?;
                check(&mut report, fast.decision == brute.decision, format!("{kb:?} / {alpha}"));
            }
        }
        "reduction" => {
            for _ in 0..40 {
                let vars = var_pool(rng.random_range(1..=5));
                let clauses = rng.random_range(0..=2);
                let phi = random_pos_3cnf(&mut rng, &vars, clauses);
                let expected = solve_pos_1in3(&phi)?;
                for v in [OneInThreeVariant::EqTf, OneInThreeVariant::Neq] {
                    let inst = generate_from_1in3(&phi, v)?;
                    let got = exists_argument(&inst.delta, &inst.alpha, ArgEngine::Brute)?.decision;
                    check(&mut report, got == expected, format!("{v:?}: {phi}"));
                }
            }
        }
        "arg-check" => {
            for _ in 0..200 {
                let class = SchaeferClass::ALL[rng.random_range(0..4)];
                let lang = random_language(&mut rng, class, 2);
                let vars = var_pool(4);
                let phi = KnowledgeBase::new((0..rng.random_range(1..=4)).map(|_| random_formula(&mut rng, &lang, &vars, 1)));
                let alpha = random_formula(&mut rng, &lang, &vars, 1);
                let fast = check_argument(&phi, &alpha)?.decision;
                let slow = argument_by_all_subsets(&phi, &alpha)?;
                check(&mut report, fast == slow, format!("{phi:?} / {alpha}"));
            }
        }
        other => return Err(Error::Domain(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
    Ok(report)
}

/// Argument check with minimality tested on every proper subset.
fn argument_by_all_subsets(phi: &KnowledgeBase, alpha: &GammaFormula) -> Result<bool> {
    let all: Vec<usize> = (0..phi.len()).collect();
    let entails = |s: &[usize]| implies(&phi.subset(s), alpha, ImpEngine::Brute);
    let consistent = satisfiable(phi.formulas(), &Assumptions::new(), Engine::Brute)?.is_sat();
    if !consistent || !entails(&all)? {
        return Ok(false);
    }
    for mask in 0..(1u64 << phi.len()) - 1 {
        let s: Vec<usize> = all.iter().copied().filter(|i| mask >> i & 1 == 1).collect();
        if entails(&s)? {
            return Ok(false);
        }
    }
    Ok(true)
}
