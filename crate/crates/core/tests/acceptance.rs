//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Every expected value is computed here by truth-table enumeration or by a
//! direct restatement of the definition, never by the library routine under
//! test.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use argclass_core::argumentation::{
    arg_via_clique, arg_via_wsat, check_argument, decide_terms, exists_argument, generate_from_1in3,
    solve_pos_1in3, ArgEngine, OneInThreeVariant, Term, WsatEncoding,
};
use argclass_core::classify::{cell, complexity_table, predicted_complexity, ClassTag, Parameter, Problem, Query};
use argclass_core::coclone::{construct_eq_tf, implement_folklore, FolkloreTarget, PpDefinition};
use argclass_core::entailment::{implies, satisfiable, Assumptions, Engine, ImpEngine};
use argclass_core::formulas::{CnfFormula, Constraint, GammaFormula, KnowledgeBase, Literal, Var};
use argclass_core::relations::{
    classify_language, representable_by, BooleanRelation, ClassTag as Shape, ConstraintLanguage,
};
use argclass_core::xcheck::{
    random_formula, random_language, rng, strict_pos_language, var_pool, SchaeferClass,
};

// ---------------------------------------------------------------------------
// Oracles

/// Truth table of a conjunction over `vars`; entry `a` is the value under
/// the assignment giving `vars[i]` bit `i` of `a`.
fn table(formulas: &[&GammaFormula], vars: &[Var]) -> Vec<bool> {
    (0..1usize << vars.len())
        .map(|a| {
            formulas.iter().all(|f| {
                f.constraints().iter().all(|c| {
                    let tuple: Vec<bool> = c
                        .args()
                        .iter()
                        .map(|v| a >> vars.iter().position(|w| w == v).unwrap() & 1 == 1)
                        .collect();
                    c.relation().contains(&tuple)
                })
            })
        })
        .collect()
}

fn vars_of<'a>(formulas: impl IntoIterator<Item = &'a GammaFormula>) -> Vec<Var> {
    let set: BTreeSet<Var> = formulas.into_iter().flat_map(|f| f.vars()).collect();
    set.into_iter().collect()
}

fn oracle_sat(phi: &GammaFormula) -> bool {
    table(&[phi], &vars_of([phi])).into_iter().any(|b| b)
}

fn oracle_implies(kb: &[&GammaFormula], alpha: &GammaFormula) -> bool {
    let vars = vars_of(kb.iter().copied().chain([alpha]));
    let lhs = table(kb, &vars);
    let rhs = table(&[alpha], &vars);
    lhs.iter().zip(&rhs).all(|(l, r)| !l || *r)
}

/// Per-subset consistency and entailment over one shared variable order.
struct SubsetOracle {
    consistent: Vec<bool>,
    entails: Vec<bool>,
}

impl SubsetOracle {
    fn new(delta: &[GammaFormula], alpha: &GammaFormula) -> Self {
        let vars = vars_of(delta.iter().chain([alpha]));
        let tables: Vec<Vec<bool>> = delta.iter().map(|f| table(&[f], &vars)).collect();
        let claim = table(&[alpha], &vars);
        let n = delta.len();
        let mut consistent = vec![false; 1 << n];
        let mut entails = vec![false; 1 << n];
        for mask in 0..1usize << n {
            let mut any = false;
            let mut all = true;
            for a in 0..claim.len() {
                if (0..n).all(|i| mask >> i & 1 == 0 || tables[i][a]) {
                    any = true;
                    all &= claim[a];
                }
            }
            consistent[mask] = any;
            entails[mask] = all;
        }
        SubsetOracle { consistent, entails }
    }

    fn exists(&self) -> bool {
        (0..self.consistent.len()).any(|m| self.consistent[m] && self.entails[m])
    }

    fn is_argument(&self, mask: usize) -> bool {
        self.consistent[mask]
            && self.entails[mask]
            && (0..mask).all(|sub| sub & !mask != 0 || sub == mask || !self.entails[sub])
    }
}

// ---------------------------------------------------------------------------
// Reporting

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, name: &str, limit: Option<Duration>, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = outcome.pass && in_time;
    let time = match limit {
        Some(l) => format!("{:.2}s (limit {}s)", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", elapsed.as_secs_f64()),
    };
    println!(
        "criterion {n:>2} {name}: {} ; {} ; {time}",
        if pass { "PASS" } else { "FAIL" },
        outcome.detail
    );
    pass
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

// ---------------------------------------------------------------------------
// Criterion 1

fn closed(rel: &BooleanRelation, op: impl Fn(&[bool], &[bool], &[bool]) -> Vec<bool>) -> bool {
    let tuples = rel.tuples();
    tuples
        .iter()
        .all(|a| tuples.iter().all(|b| tuples.iter().all(|c| rel.contains(&op(a, b, c)))))
}

fn criterion_1() -> Outcome {
    let mut disagreements = 0;
    let mut checks = 0;
    for mask in 0..256u64 {
        let rel = BooleanRelation::from_mask("R", 3, mask).unwrap();
        let and = closed(&rel, |a, b, _| a.iter().zip(b).map(|(x, y)| *x && *y).collect());
        let or = closed(&rel, |a, b, _| a.iter().zip(b).map(|(x, y)| *x || *y).collect());
        let maj = closed(&rel, |a, b, c| (0..3).map(|i| (a[i] as u8 + b[i] as u8 + c[i] as u8) >= 2).collect());
        let xor = closed(&rel, |a, b, c| (0..3).map(|i| a[i] ^ b[i] ^ c[i]).collect());
        let props = rel.properties();
        let pairs = [
            (representable_by(&rel, Shape::Horn.into()), props.horn, and),
            (representable_by(&rel, Shape::DualHorn.into()), props.dual_horn, or),
            (representable_by(&rel, Shape::Bijunctive.into()), props.bijunctive, maj),
            (representable_by(&rel, Shape::AffineEquation.into()), props.affine, xor),
        ];
        for (syntactic, flag, semantic) in pairs {
            checks += 1;
            if syntactic != semantic || flag != semantic {
                disagreements += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0,
        detail: format!("256 relations, {checks} class checks, {disagreements} disagreements"),
    }
}

// ---------------------------------------------------------------------------
// Criterion 2

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut disagreements = 0;
    let mut sat = 0;
    let mut total = 0;
    for class in SchaeferClass::ALL {
        for _ in 0..1000 {
            let lang = random_language(&mut r, class, 3);
            let n = r.random_range(1..=12);
            let size = r.random_range(1..=14);
            let phi = random_formula(&mut r, &lang, &var_pool(n), size);
            let expected = oracle_sat(&phi);
            let none = Assumptions::new();
            let fast = satisfiable(std::slice::from_ref(&phi), &none, class.engine()).unwrap();
            let auto = satisfiable(std::slice::from_ref(&phi), &none, Engine::Auto).unwrap();
            let witness_ok = fast.witness.as_ref().is_none_or(|w| {
                phi.constraints().iter().all(|c| {
                    let t: Vec<bool> = c.args().iter().map(|v| w.value(v).unwrap()).collect();
                    c.relation().contains(&t)
                })
            });
            total += 1;
            sat += expected as usize;
            if fast.is_sat() != expected || auto.is_sat() != expected || !witness_ok {
                disagreements += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0,
        detail: format!("{total} formulas ({sat} satisfiable), agreement {}/{total}", total - disagreements),
    }
}

// ---------------------------------------------------------------------------
// Criterion 3

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut disagreements = 0;
    let mut disjoint = 0;
    let mut case1 = 0;
    let mut case1_bad = 0;
    let mut total = 0;
    let t = Arc::new(BooleanRelation::truth());
    for class in SchaeferClass::ALL {
        for i in 0..500 {
            let lang = random_language(&mut r, class, 3);
            let vars = var_pool(8);
            let kb_formulas: Vec<GammaFormula> = (0..r.random_range(1..=3))
                .map(|_| {
                    let size = r.random_range(1..=4);
                    random_formula(&mut r, &lang, &vars[..5], size)
                })
                .collect();
            let kb = KnowledgeBase::new(kb_formulas.iter().cloned());
            let alpha = match i % 5 {
                0 => GammaFormula::single(Constraint::new(t.clone(), [vars[7].clone()]).unwrap()),
                1 => {
                    let size = r.random_range(1..=2);
                    random_formula(&mut r, &lang, &vars[5..], size)
                }
                _ => {
                    let size = r.random_range(1..=2);
                    random_formula(&mut r, &lang, &vars, size)
                }
            };
            let refs: Vec<&GammaFormula> = kb.iter().collect();
            let expected = oracle_implies(&refs, &alpha);
            let got = implies(&kb, &alpha, ImpEngine::Schaefer).unwrap();
            let brute = implies(&kb, &alpha, ImpEngine::Brute).unwrap();
            total += 1;
            if got != expected || brute != expected {
                disagreements += 1;
            }
            if alpha.vars().is_disjoint(&kb.vars()) {
                disjoint += 1;
            }
            if i % 5 == 0 {
                case1 += 1;
                let satisfiable = oracle_sat(&kb.conjunction());
                if satisfiable && got {
                    case1_bad += 1;
                }
            }
        }
    }
    Outcome {
        pass: disagreements == 0 && disjoint >= 50 && case1_bad == 0,
        detail: format!(
            "{total} pairs, {disagreements} disagreements, {disjoint} with disjoint claim variables, \
             {case1} fresh T(x) claims with {case1_bad} wrong answers on satisfiable premises"
        ),
    }
}

// ---------------------------------------------------------------------------
// Criterion 4

/// `(x_a = x_b) & ~x_n.. & clauses`, or the dual with polarities swapped.
fn grammar_relation(r: &mut impl Rng, dual: bool) -> BooleanRelation {
    let k = r.random_range(4..=5);
    let mut coords: Vec<usize> = (0..k).collect();
    for i in 0..k {
        let j = r.random_range(i..k);
        coords.swap(i, j);
    }
    let (a, b) = (coords[0], coords[1]);
    let rest = &coords[2..];
    let n_units = r.random_range(1..rest.len());
    let units: Vec<usize> = rest[..n_units].to_vec();
    let free: Vec<usize> = rest[n_units..].to_vec();
    let mut clauses: Vec<Vec<usize>> = Vec::new();
    for _ in 0..r.random_range(1..=2) {
        let mut c = vec![free[r.random_range(0..free.len())]];
        for &x in [a, b].iter().chain(&free) {
            if !c.contains(&x) && r.random_bool(0.4) {
                c.push(x);
            }
        }
        clauses.push(c);
    }
    BooleanRelation::from_fn("M", k, |t| {
        let lit = |x: usize| t[x] != dual;
        t[a] == t[b] && units.iter().all(|&u| !lit(u)) && clauses.iter().all(|c| c.iter().any(|&x| lit(x)))
    })
    .unwrap()
}

/// Whether `def` defines `(x1 = x2) & t & ~f`, by enumeration over its variables.
fn defines_eq_tf(def: &PpDefinition) -> bool {
    if def.vars.len() != 4 {
        return false;
    }
    let all: Vec<Var> = def.vars.iter().chain(&def.aux).cloned().collect();
    let body = table(&[&def.body], &all);
    (0..16usize).all(|a| {
        let projected = (0..1usize << def.aux.len()).any(|y| body[a | y << 4]);
        let b = |i: usize| a >> i & 1 == 1;
        projected == (b(0) == b(1) && b(2) && !b(3))
    })
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut built = 0;
    let mut built_ok = 0;
    for dual in [false, true] {
        for _ in 0..150 {
            let rel = grammar_relation(&mut r, dual);
            built += 1;
            if construct_eq_tf(&rel).is_ok_and(|d| defines_eq_tf(&d)) {
                built_ok += 1;
            }
        }
    }
    // Hypothesis violations: 0-valid, 1-valid, no equality needed, and
    // containing a disequality (so neither essentially positive nor negative).
    let mut violating = 0;
    let mut rejected = 0;
    for kind in 0..4 {
        for _ in 0..40 {
            let dual = r.random_bool(0.5);
            let mut base = grammar_relation(&mut r, dual);
            // Two extra coordinates must fit under the arity cap.
            while kind == 3 && base.arity() > 4 {
                base = grammar_relation(&mut r, dual);
            }
            let k = base.arity();
            let rel = match kind {
                0 => BooleanRelation::from_fn("V", k, |t| base.contains(t) || t.iter().all(|x| !x)).unwrap(),
                1 => BooleanRelation::from_fn("V", k, |t| base.contains(t) || t.iter().all(|x| *x)).unwrap(),
                2 => {
                    let unit = r.random_range(0..k);
                    let clause: Vec<usize> = (0..k).filter(|&i| i != unit && r.random_bool(0.5)).collect();
                    let clause = if clause.is_empty() { vec![(unit + 1) % k] } else { clause };
                    BooleanRelation::from_fn("V", k, |t| !t[unit] && clause.iter().any(|&i| t[i])).unwrap()
                }
                _ => BooleanRelation::from_fn("V", k + 2, |t| base.contains(&t[..k]) && t[k] != t[k + 1]).unwrap(),
            };
            violating += 1;
            if construct_eq_tf(&rel).is_err() {
                rejected += 1;
            }
        }
    }
    Outcome {
        pass: built_ok == built && rejected == violating && built >= 200,
        detail: format!("{built_ok}/{built} grammar relations equivalent, {rejected}/{violating} violations rejected"),
    }
}

// ---------------------------------------------------------------------------
// Criterion 5

fn criterion_5() -> Outcome {
    let or2 = BooleanRelation::from_fn("OR2", 2, |t| t[0] || t[1]).unwrap();
    let nand2 = BooleanRelation::from_fn("NAND2", 2, |t| !t[0] || !t[1]).unwrap();
    let tnf_src = BooleanRelation::from_fn("ORNOT", 3, |t| (t[0] || t[1]) && !t[2]).unwrap();
    type Semantics = fn(&[bool]) -> bool;
    let cases: [(&str, BooleanRelation, FolkloreTarget, Semantics); 5] = [
        ("item 1", BooleanRelation::nae3(), FolkloreTarget::Neq, |a: &[bool]| a[0] != a[1]),
        ("item 2", tnf_src, FolkloreTarget::TAndNotF, |a: &[bool]| a[0] && !a[1]),
        ("item 3", or2, FolkloreTarget::T, |a: &[bool]| a[0]),
        ("item 4", nand2, FolkloreTarget::F, |a: &[bool]| !a[0]),
        ("item 5", BooleanRelation::equality(), FolkloreTarget::Eq, |a: &[bool]| a[0] == a[1]),
    ];
    let mut ok = 0;
    let mut notes = Vec::new();
    for (item, rel, target, semantics) in cases {
        let lang = ConstraintLanguage::new([rel]).unwrap();
        let outcomes = implement_folklore(&lang).unwrap();
        let verified = outcomes.get(&target).and_then(|o| o.found()).is_some_and(|d| {
            let all: Vec<Var> = d.vars.iter().chain(&d.aux).cloned().collect();
            let body = table(&[&d.body], &all);
            let k = d.vars.len();
            d.aux.is_empty()
                && (0..1usize << k).all(|a| {
                    let bits: Vec<bool> = (0..k).map(|i| a >> i & 1 == 1).collect();
                    body[a] == semantics(&bits)
                })
        });
        if verified {
            ok += 1;
        } else {
            notes.push(item);
        }
    }
    Outcome {
        pass: ok == 5,
        detail: if notes.is_empty() {
            "5/5 witness languages yield verified quantifier-free definitions".into()
        } else {
            format!("{ok}/5 verified, failing: {}", notes.join(", "))
        },
    }
}

// ---------------------------------------------------------------------------
// Criterion 6

fn term_oracle(terms: &[Term], claim: Term) -> bool {
    if claim.pos & claim.neg != 0 {
        return false;
    }
    (0..1usize << terms.len()).any(|mask| {
        let mut pos = 0;
        let mut neg = 0;
        for (i, t) in terms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                pos |= t.pos;
                neg |= t.neg;
            }
        }
        pos & neg == 0 && pos & claim.pos == claim.pos && neg & claim.neg == claim.neg
    })
}

fn term_formula(t: Term, vars: &[Var]) -> GammaFormula {
    let tr = Arc::new(BooleanRelation::truth());
    let fa = Arc::new(BooleanRelation::falsity());
    let mut f = GammaFormula::top();
    for (v, var) in vars.iter().enumerate() {
        if t.pos >> v & 1 == 1 {
            f.push(Constraint::new(tr.clone(), [var.clone()]).unwrap());
        }
        if t.neg >> v & 1 == 1 {
            f.push(Constraint::new(fa.clone(), [var.clone()]).unwrap());
        }
    }
    f
}

fn criterion_6() -> Outcome {
    // All 81 consistent terms over 4 variables, the empty term included.
    let terms: Vec<Term> = (0..81u32)
        .map(|mut code| {
            let mut t = Term::default();
            for v in 0..4 {
                match code % 3 {
                    1 => t.pos |= 1 << v,
                    2 => t.neg |= 1 << v,
                    _ => {}
                }
                code /= 3;
            }
            t
        })
        .collect();
    // Claims up to renaming variables and flipping polarities, which map
    // the set of all knowledge bases onto itself.
    let claims = [
        Term { pos: 0, neg: 0 },
        Term { pos: 0b1, neg: 0 },
        Term { pos: 0b11, neg: 0 },
        Term { pos: 0b111, neg: 0 },
        Term { pos: 0b1, neg: 0b1 },
        Term { pos: 0b11, neg: 0b1 },
    ];
    let mut instances = 0u64;
    let mut disagreements = 0u64;
    let mut oversized = 0u64;
    let mut kb = Vec::with_capacity(5);
    let mut idx = [0usize; 5];
    for size in 0..=5usize {
        for (i, slot) in idx.iter_mut().enumerate().take(size) {
            *slot = i;
        }
        loop {
            kb.clear();
            kb.extend(idx[..size].iter().map(|&i| terms[i]));
            for &claim in &claims {
                instances += 1;
                let got = decide_terms(&kb, claim).unwrap();
                if got.is_some() != term_oracle(&kb, claim) {
                    disagreements += 1;
                }
                if let Some(s) = got {
                    if s.len() > (claim.pos | claim.neg).count_ones() as usize {
                        oversized += 1;
                    }
                }
            }
            // Next combination of `size` indices out of 81.
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < 81 - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if size == 0 || i == usize::MAX {
                break;
            }
        }
    }
    // Formula level, inconsistent terms included: all sets of at most
    // three terms over two variables against every claim of at most three
    // literals.
    let vars = var_pool(2);
    let all16: Vec<Term> = (0..16u64).map(|c| Term { pos: c & 3, neg: c >> 2 }).collect();
    let small_claims: Vec<Term> = all16.iter().copied().filter(|t| (t.pos.count_ones() + t.neg.count_ones()) <= 3).collect();
    let mut formula_level = 0u64;
    let mut formula_bad = 0u64;
    for mask in 0u32..1 << 16 {
        if mask.count_ones() > 3 {
            continue;
        }
        let members: Vec<Term> = (0..16).filter(|i| mask >> i & 1 == 1).map(|i| all16[i]).collect();
        let delta: Vec<GammaFormula> = members.iter().map(|&t| term_formula(t, &vars)).collect();
        let kb = KnowledgeBase::new(delta.iter().cloned());
        for &claim in &small_claims {
            let alpha = term_formula(claim, &vars);
            formula_level += 1;
            let expected = SubsetOracle::new(kb.formulas(), &alpha).exists();
            let got = arg_via_clique(&kb, &alpha).unwrap();
            let support_ok = got.support.as_ref().is_none_or(|s| {
                let oracle = SubsetOracle::new(kb.subset(s).formulas(), &alpha);
                oracle.is_argument((1 << s.len()) - 1)
            });
            if got.decision != expected || !support_ok {
                formula_bad += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0 && oversized == 0 && formula_bad == 0,
        detail: format!(
            "{instances} term instances ({disagreements} disagreements, {oversized} supports above k), \
             {formula_level} formula-level instances ({formula_bad} disagreements)"
        ),
    }
}

// ---------------------------------------------------------------------------
// Criterion 7

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let lang = strict_pos_language();
    let mut disagreements = 0;
    let mut bound_violations = 0;
    let mut yes = 0;
    for _ in 0..300 {
        let vars = var_pool(r.random_range(2..=6));
        let n = r.random_range(1..=6);
        let delta: Vec<GammaFormula> = (0..n)
            .map(|_| {
                let size = r.random_range(1..=2);
                random_formula(&mut r, &lang, &vars, size)
            })
            .collect();
        let kb = KnowledgeBase::new(delta);
        let size = r.random_range(1..=3);
        let alpha = random_formula(&mut r, &lang, &vars, size);
        let expected = SubsetOracle::new(kb.formulas(), &alpha).exists();
        let got = arg_via_wsat(&kb, &alpha, 2).unwrap();
        yes += expected as usize;
        if got.decision != expected {
            disagreements += 1;
        }
        let enc = WsatEncoding::build(&kb, &alpha, 2).unwrap();
        if enc.indicators.len() > 2 * kb.len().pow(2) {
            bound_violations += 1;
        }
    }
    Outcome {
        pass: disagreements == 0 && bound_violations == 0,
        detail: format!(
            "300 instances ({yes} with an argument), {disagreements} disagreements, \
             {bound_violations} encodings above r*|D|^r"
        ),
    }
}

// ---------------------------------------------------------------------------
// Criterion 8

/// Positive 3-CNFs with up to three clauses over up to six variables, one
/// per labelling of the literal slots in first-occurrence order.
fn canonical_cnfs() -> Vec<CnfFormula> {
    fn grow(slots: usize, labels: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == slots {
            out.push(labels.clone());
            return;
        }
        for l in 0..=next.min(5) {
            if l == next && next == 6 {
                continue;
            }
            labels.push(l);
            grow(slots, labels, next.max(l + 1), out);
            labels.pop();
        }
    }
    let vars = var_pool(6);
    let mut out = Vec::new();
    for k in 0..=3 {
        let mut labellings = Vec::new();
        grow(3 * k, &mut Vec::new(), 0, &mut labellings);
        for l in labellings {
            out.push(CnfFormula::new(
                l.chunks(3)
                    .map(|c| c.iter().map(|&v| Literal::pos(vars[v].clone())).collect())
                    .collect(),
            ));
        }
    }
    out
}

fn one_in_three_oracle(phi: &CnfFormula) -> bool {
    let vars: Vec<Var> = phi.vars().into_iter().collect();
    (0..1usize << vars.len()).any(|a| {
        phi.clauses.iter().all(|c| {
            c.iter()
                .filter(|l| a >> vars.iter().position(|v| *v == l.var).unwrap() & 1 == 1)
                .count()
                == 1
        })
    })
}

fn criterion_8() -> Outcome {
    let cnfs = canonical_cnfs();
    let mut disagreements = 0;
    let mut satisfiable_count = 0;
    for phi in &cnfs {
        let expected = one_in_three_oracle(phi);
        satisfiable_count += expected as usize;
        if solve_pos_1in3(phi).unwrap() != expected {
            disagreements += 1;
        }
        for v in [OneInThreeVariant::EqTf, OneInThreeVariant::Neq] {
            let inst = generate_from_1in3(phi, v).unwrap();
            if exists_argument(&inst.delta, &inst.alpha, ArgEngine::Brute).unwrap().decision != expected {
                disagreements += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0,
        detail: format!(
            "{} formulas ({satisfiable_count} 1-in-3 satisfiable) x 2 variants, {disagreements} disagreements",
            cnfs.len()
        ),
    }
}

// ---------------------------------------------------------------------------
// Criterion 9

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut disagreements = 0;
    let mut positives = 0;
    for i in 0..500 {
        let class = SchaeferClass::ALL[i % 4];
        let mut lang = random_language(&mut r, class, 2);
        if i % 3 == 0 {
            lang.push(Arc::new(BooleanRelation::nae3()));
        }
        let vars = var_pool(4);
        let n = r.random_range(1..=6);
        let phi: Vec<GammaFormula> = (0..n)
            .map(|_| {
                let size = r.random_range(1..=2);
                random_formula(&mut r, &lang, &vars, size)
            })
            .collect();
        let kb = KnowledgeBase::new(phi);
        // Half of the claims are conjuncts taken from the premises.
        let alpha = if r.random_bool(0.5) {
            let pool: Vec<&Constraint> = kb.iter().flat_map(|f| f.constraints()).collect();
            GammaFormula::single(pool[r.random_range(0..pool.len())].clone())
        } else {
            random_formula(&mut r, &lang, &vars, 1)
        };
        let oracle = SubsetOracle::new(kb.formulas(), &alpha);
        let expected = oracle.is_argument((1 << kb.len()) - 1);
        positives += expected as usize;
        if check_argument(&kb, &alpha).unwrap().decision != expected {
            disagreements += 1;
        }
    }
    Outcome {
        pass: disagreements == 0,
        detail: format!("500 pairs ({positives} arguments), {disagreements} disagreements"),
    }
}

// ---------------------------------------------------------------------------
// Criterion 10

fn rel(name: &str, arity: usize, f: impl Fn(&[bool]) -> bool) -> BooleanRelation {
    BooleanRelation::from_fn(name, arity, f).unwrap()
}

fn criterion_10() -> Outcome {
    use ClassTag::*;
    use Parameter::{Alpha, Delta, Phi};
    use Problem::{Arg, ArgCheck, ArgRel, Imp};
    type Cell = (Problem, Parameter, ClassTag, bool);
    let spots: Vec<(&str, Vec<BooleanRelation>, Vec<Cell>)> = vec![
        (
            "{T,F}",
            vec![BooleanRelation::truth(), BooleanRelation::falsity()],
            vec![(Arg, Alpha, W1Member, false), (ArgRel, Alpha, Unknown, false), (Arg, Delta, Fpt, true)],
        ),
        (
            "{NAE3}",
            vec![BooleanRelation::nae3()],
            vec![
                (Arg, Alpha, ParaSigma2pC, true),
                (ArgCheck, Alpha, ParaDpC, true),
                (ArgRel, Alpha, ParaSigma2pC, true),
                (Arg, Delta, ParaConpMemberImpHard, false),
                (ArgRel, Delta, ParaConpMemberImpHard, false),
                (ArgCheck, Phi, ParaDpMemberImpHard, false),
                (Imp, Alpha, ParaConpC, true),
                (Imp, Phi, ParaConpMemberImpHard, false),
            ],
        ),
        (
            "{EQ}",
            vec![BooleanRelation::equality()],
            vec![(ArgCheck, Alpha, Fpt, true), (Arg, Alpha, Fpt, true), (ArgCheck, Phi, Fpt, true)],
        ),
        (
            "{x|y}",
            vec![rel("OR2", 2, |t| t[0] || t[1])],
            vec![(Arg, Alpha, Fpt, true), (ArgRel, Alpha, Fpt, true)],
        ),
        (
            "{~x|~y}",
            vec![rel("NAND2", 2, |t| !t[0] || !t[1])],
            vec![(Arg, Alpha, Fpt, true), (ArgRel, Alpha, Fpt, true)],
        ),
        (
            "{x|y, F}",
            vec![rel("OR2", 2, |t| t[0] || t[1]), BooleanRelation::falsity()],
            vec![(Arg, Alpha, W2Member, false), (ArgRel, Alpha, Unknown, false)],
        ),
        (
            "{~x|~y, T}",
            vec![rel("NAND2", 2, |t| !t[0] || !t[1]), BooleanRelation::truth()],
            vec![(Arg, Alpha, W2Member, false), (ArgRel, Alpha, Unknown, false)],
        ),
        (
            "{T,F,EQ}",
            vec![BooleanRelation::truth(), BooleanRelation::falsity(), BooleanRelation::equality()],
            vec![(Arg, Alpha, ParaNpC, true), (ArgRel, Alpha, ParaNpC, true), (Imp, Alpha, Fpt, true)],
        ),
        (
            "{EQ,NEQ}",
            vec![BooleanRelation::equality(), BooleanRelation::disequality()],
            vec![(Arg, Alpha, ParaNpC, true), (ArgRel, Alpha, ParaNpC, true)],
        ),
        (
            "{~x|y, T, F}",
            vec![rel("IMP", 2, |t| !t[0] || t[1]), BooleanRelation::truth(), BooleanRelation::falsity()],
            vec![(Arg, Alpha, ParaNpC, true), (ArgCheck, Alpha, Fpt, true), (Imp, Phi, Fpt, true)],
        ),
        (
            "{EVEN4}",
            vec![BooleanRelation::even4()],
            vec![(Arg, Alpha, Fpt, true), (ArgRel, Alpha, ParaNpC, true)],
        ),
        (
            "{x^y^z^w=1}",
            vec![rel("ODD4", 4, |t| t[0] ^ t[1] ^ t[2] ^ t[3])],
            vec![(Arg, Alpha, ParaNpC, true), (Arg, Delta, Fpt, true)],
        ),
        (
            "{(x|y|z)&(~x|~y|z)}",
            vec![rel("S1", 3, |t| (t[0] || t[1] || t[2]) && (!t[0] || !t[1] || t[2]))],
            vec![
                (Arg, Alpha, ParaConpC, true),
                (ArgCheck, Alpha, ParaDpC, true),
                (Arg, Delta, ParaConpMemberImpHard, false),
                (Imp, Alpha, ParaConpC, true),
            ],
        ),
    ];
    let mut mismatches = Vec::new();
    let mut rules = BTreeSet::new();
    let mut checked = 0;
    for (name, rels, cells) in &spots {
        let lang = ConstraintLanguage::new(rels.clone()).unwrap();
        for &(problem, parameter, tag, complete) in cells {
            let q = Query::new(problem, parameter, lang.clone()).unwrap();
            let got = predicted_complexity(&q).unwrap();
            checked += 1;
            rules.insert(got.rule);
            if got.tag != tag || got.complete != complete {
                mismatches.push(format!("{name} {problem}/{parameter}: {} not {tag}", got.tag));
            }
        }
    }
    let all_rules = [
        "arg.alpha.schaefer-eps-valid",
        "arg.alpha.strict-pos-and-neg",
        "arg.alpha.strict-pos-or-neg",
        "arg.alpha.schaefer",
        "arg.alpha.eps-valid",
        "arg.alpha.general",
        "arg-check.alpha.schaefer",
        "arg-check.alpha.general",
        "arg-rel.alpha.positive-or-negative",
        "arg-rel.alpha.general",
        "arg-rel.alpha.open-strict-pos",
        "arg-rel.alpha.open-strict-neg",
        "arg-rel.alpha.schaefer",
        "delta.schaefer",
        "delta.general",
        "arg-check.phi.schaefer",
        "arg-check.phi.general",
        "imp.schaefer",
        "imp.alpha.general",
        "imp.phi.general",
    ];
    let uncovered: Vec<&str> = all_rules.iter().copied().filter(|r| !rules.contains(r)).collect();

    // Totality over every arity-3 singleton language, and stable output.
    let mut total_errors = 0;
    for mask in 0..256u64 {
        let lang = ConstraintLanguage::new([BooleanRelation::from_mask("R", 3, mask).unwrap()]).unwrap();
        let props = classify_language(&lang).unwrap();
        for problem in Problem::ALL {
            for parameter in Parameter::ALL {
                let legal = Query::new(problem, parameter, lang.clone()).is_ok();
                if legal && cell(problem, parameter, &props).is_err() {
                    total_errors += 1;
                }
            }
        }
    }
    let nae = ConstraintLanguage::new([BooleanRelation::nae3()]).unwrap();
    let stable = format!("{:?}", complexity_table(&nae).unwrap()) == format!("{:?}", complexity_table(&nae).unwrap());

    Outcome {
        pass: mismatches.is_empty() && uncovered.is_empty() && total_errors == 0 && stable && spots.len() >= 12,
        detail: format!(
            "{} languages, {checked} cells, {} mismatches{}, {} rules uncovered, {total_errors} totality errors, output {}",
            spots.len(),
            mismatches.len(),
            if mismatches.is_empty() { String::new() } else { format!(" [{}]", mismatches.join("; ")) },
            uncovered.len(),
            if stable { "stable" } else { "unstable" }
        ),
    }
}

fn main() {
    let results = [
        report(1, "property detection vs closure tests", secs(10), criterion_1),
        report(2, "Schaefer engines vs brute force", secs(60), criterion_2),
        report(3, "implication fast path", None, criterion_3),
        report(4, "equality construction", None, criterion_4),
        report(5, "folklore implementations", None, criterion_5),
        report(6, "clique algorithm equivalence", secs(120), criterion_6),
        report(7, "weighted-SAT encoding equivalence", None, criterion_7),
        report(8, "1-in-3 reduction round trip", secs(300), criterion_8),
        report(9, "argument check minimality", None, criterion_9),
        report(10, "classification table", None, criterion_10),
    ];
    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
