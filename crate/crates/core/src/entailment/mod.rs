//! Satisfiability and implication for conjunctions of constraints.

mod engines;
mod hard;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{Assignment, GammaFormula, KnowledgeBase, Var, VarIndex};
use crate::limits::Limits;
use crate::relations::{BooleanRelation, PropertySet};

pub use hard::{generate_imp_hard, HardCase};

use engines::{ClauseDb, Row};

/// A partial map from variables to truth values.
pub type Assumptions = Assignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Auto,
    Brute,
    Horn,
    DualHorn,
    TwoSat,
    Affine,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Engine::Auto => "auto",
            Engine::Brute => "brute",
            Engine::Horn => "horn",
            Engine::DualHorn => "dual_horn",
            Engine::TwoSat => "two_sat",
            Engine::Affine => "affine",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SatStatus {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatResult {
    pub status: SatStatus,
    /// A model over the formula and assumption variables, present iff SAT.
    pub witness: Option<Assignment>,
    /// The engine that produced the answer; never `Auto`.
    pub engine: Engine,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        self.status == SatStatus::Sat
    }

    fn from_model(engine: Engine, model: Option<Assignment>) -> Self {
        SatResult {
            status: if model.is_some() { SatStatus::Sat } else { SatStatus::Unsat },
            witness: model,
            engine,
        }
    }
}

/// Properties of the language used by some formulas; all flags hold when no
/// constraint occurs.
pub fn formula_properties(formulas: &[GammaFormula]) -> PropertySet {
    let mut seen: Vec<&BooleanRelation> = Vec::new();
    for c in formulas.iter().flat_map(|f| f.constraints()) {
        if !seen.contains(&&**c.relation()) {
            seen.push(c.relation());
        }
    }
    PropertySet::conjunction(seen.iter().map(|r| *r.properties()))
}

/// The engine `Auto` picks for a language.
pub fn dispatch(props: &PropertySet) -> Engine {
    if props.horn {
        Engine::Horn
    } else if props.dual_horn {
        Engine::DualHorn
    } else if props.bijunctive {
        Engine::TwoSat
    } else if props.affine {
        Engine::Affine
    } else {
        Engine::Brute
    }
}

fn check_engine(engine: Engine, props: &PropertySet) -> Result<()> {
    let (ok, what) = match engine {
        Engine::Horn => (props.horn, "Horn"),
        Engine::DualHorn => (props.dual_horn, "dual-Horn"),
        Engine::TwoSat => (props.bijunctive, "bijunctive"),
        Engine::Affine => (props.affine, "affine"),
        Engine::Auto | Engine::Brute => (true, ""),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Dispatch(format!("engine {engine} needs a {what} language")))
    }
}

/// Decides whether the conjunction of `formulas` has a model extending `assume`.
pub fn satisfiable(formulas: &[GammaFormula], assume: &Assumptions, engine: Engine) -> Result<SatResult> {
    let props = formula_properties(formulas);
    check_engine(engine, &props)?;
    let engine = match engine {
        Engine::Auto => dispatch(&props),
        e => e,
    };
    let mut vars: BTreeSet<Var> = formulas.iter().flat_map(|f| f.vars()).collect();
    vars.extend(assume.iter().map(|(v, _)| v.clone()));
    match engine {
        Engine::Brute => brute(formulas, assume, vars),
        e => Ok(polynomial(formulas, assume, vars.into_iter().collect(), e)),
    }
}

fn brute(formulas: &[GammaFormula], assume: &Assumptions, vars: BTreeSet<Var>) -> Result<SatResult> {
    let index = VarIndex::new(vars, Limits::current().max_vars)?;
    let mut table = index.table(&formulas.iter().fold(GammaFormula::top(), |acc, f| acc.and(f)))?;
    let n = index.len();
    let (mut care, mut want) = (0usize, 0usize);
    for (v, b) in assume.iter() {
        let bit = index.bit(v).expect("assumption variables are indexed");
        care |= 1 << bit;
        if b {
            want |= 1 << bit;
        }
    }
    if care != 0 {
        let mut filtered = crate::formulas::ModelSet::empty(n);
        for a in table.iter_ones().filter(|a| a & care == want) {
            filtered.insert(a);
        }
        table = filtered;
    }
    Ok(SatResult::from_model(Engine::Brute, table.first().map(|a| index.assignment(a))))
}

fn polynomial(formulas: &[GammaFormula], assume: &Assumptions, vars: Vec<Var>, engine: Engine) -> SatResult {
    let pos: BTreeMap<&Var, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let n = vars.len();
    let args_of = |c: &crate::formulas::Constraint| -> Vec<usize> { c.args().iter().map(|v| pos[v]).collect() };
    let model = if engine == Engine::Affine {
        let mut rows = Vec::new();
        for c in formulas.iter().flat_map(|f| f.constraints()) {
            let basis = c.relation().representations().affine.as_ref().expect("affine relation");
            let args = args_of(c);
            rows.extend(basis.iter().map(|eq| Row::instance(n, eq, &args)));
        }
        for (v, b) in assume.iter() {
            let mut row = Row::zero(n);
            row.toggle(pos[v]);
            row.rhs = b;
            rows.push(row);
        }
        engines::gauss_jordan(n, rows)
    } else {
        let mut db = ClauseDb::new(n);
        for c in formulas.iter().flat_map(|f| f.constraints()) {
            let reps = c.relation().representations();
            let clauses = match engine {
                Engine::Horn => &reps.horn,
                Engine::DualHorn => &reps.dual_horn,
                _ => &reps.bijunctive,
            };
            let args = args_of(c);
            for cl in clauses.as_ref().expect("relation in the engine's class") {
                db.add_instance(cl, &args);
            }
        }
        for (v, b) in assume.iter() {
            db.add(vec![engines::lit(pos[v], b)]);
        }
        match engine {
            Engine::Horn => engines::horn_minimal_model(&db),
            Engine::DualHorn => engines::dual_horn_maximal_model(&db),
            _ => engines::two_sat(&db),
        }
    };
    let model = model.map(|vals| vars.into_iter().zip(vals).collect());
    SatResult::from_model(engine, model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImpEngine {
    Auto,
    Brute,
    Schaefer,
}

/// Whether every model of the knowledge base over `Vars(kb) ∪ Vars(alpha)`
/// satisfies `alpha`.
pub fn implies(kb: &KnowledgeBase, alpha: &GammaFormula, engine: ImpEngine) -> Result<bool> {
    let props = formula_properties(kb.formulas());
    let engine = match engine {
        ImpEngine::Auto if props.schaefer => ImpEngine::Schaefer,
        ImpEngine::Auto => ImpEngine::Brute,
        ImpEngine::Schaefer if !props.schaefer => {
            return Err(Error::Dispatch("the Schaefer engine needs a Schaefer language".into()))
        }
        e => e,
    };
    if engine == ImpEngine::Brute {
        let mut vars = kb.vars();
        vars.extend(alpha.vars());
        let index = VarIndex::new(vars, Limits::current().max_vars)?;
        let premises = index.table(&kb.conjunction())?;
        return Ok(premises.is_subset(&index.table(alpha)?));
    }
    let sat_engine = dispatch(&props);
    for c in alpha.constraints() {
        let rel = c.relation();
        'tuples: for t in (0..1usize << rel.arity()).filter(|&t| !rel.contains_index(t)) {
            let mut assume = Assumptions::new();
            for (j, v) in c.args().iter().enumerate() {
                let b = t >> j & 1 == 1;
                if assume.set(v.clone(), b).is_some_and(|old| old != b) {
                    continue 'tuples;
                }
            }
            if satisfiable(kb.formulas(), &assume, sat_engine)?.is_sat() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{evaluate, parse_formula, Vocabulary};

    fn f(text: &str) -> GammaFormula {
        parse_formula(text, &Vocabulary::new()).unwrap()
    }

    #[test]
    fn satisfiable_examples() {
        let r = satisfiable(&[f("T(x)"), f("F(x)")], &Assumptions::new(), Engine::Auto).unwrap();
        assert_eq!(r.status, SatStatus::Unsat);
        assert!(r.witness.is_none());

        let assume = Assumptions::new().with("x", true).with("z", false);
        let r = satisfiable(&[f("EQ(x,y)"), f("EQ(y,z)")], &assume, Engine::Auto).unwrap();
        assert_eq!(r.status, SatStatus::Unsat);

        let assume = Assumptions::new().with("a", true).with("b", true).with("c", true);
        let r = satisfiable(&[f("EVEN4(a,b,c,d)")], &assume, Engine::Affine).unwrap();
        assert_eq!(r.engine, Engine::Affine);
        assert!(r.witness.unwrap().get(&Var::new("d")).unwrap());
    }

    #[test]
    fn engine_mismatch_is_a_dispatch_error() {
        let nae = BooleanRelation::nae3();
        let mut vocab = Vocabulary::new();
        vocab.define(std::sync::Arc::new(nae)).unwrap();
        let phi = parse_formula("NAE3(x,y,z)", &vocab).unwrap();
        for e in [Engine::Horn, Engine::DualHorn, Engine::TwoSat, Engine::Affine] {
            assert!(matches!(satisfiable(std::slice::from_ref(&phi), &Assumptions::new(), e), Err(Error::Dispatch(_))));
        }
        let r = satisfiable(std::slice::from_ref(&phi), &Assumptions::new(), Engine::Auto).unwrap();
        assert_eq!(r.engine, Engine::Brute);
        assert!(matches!(
            implies(&KnowledgeBase::new([phi]), &f("T(x)"), ImpEngine::Schaefer),
            Err(Error::Dispatch(_))
        ));
    }

    #[test]
    fn witnesses_cover_assumption_variables() {
        let assume = Assumptions::new().with("q", true);
        for e in [Engine::Brute, Engine::Horn, Engine::TwoSat, Engine::Affine, Engine::DualHorn] {
            let r = satisfiable(&[f("EQ(x,y)")], &assume, e).unwrap();
            let w = r.witness.unwrap();
            assert_eq!(w.len(), 3);
            assert!(w.get(&Var::new("q")).unwrap());
            assert!(evaluate(&f("EQ(x,y)"), &w).unwrap());
        }
    }

    #[test]
    fn brute_witness_is_lexicographically_least() {
        let r = satisfiable(&[f("NEQ(a,b)")], &Assumptions::new(), Engine::Brute).unwrap();
        assert_eq!(r.witness.unwrap(), Assignment::new().with("a", false).with("b", true));
    }

    #[test]
    fn implies_examples() {
        let kb = KnowledgeBase::new([f("T(x)")]);
        assert!(implies(&kb, &f("T(x)"), ImpEngine::Auto).unwrap());
        assert!(implies(&kb, &f("T(x)"), ImpEngine::Brute).unwrap());
        assert!(!implies(&kb, &f("T(y)"), ImpEngine::Schaefer).unwrap());
        assert!(!implies(&kb, &f("T(y)"), ImpEngine::Brute).unwrap());
        let bad = KnowledgeBase::new([f("T(x)"), f("F(x)")]);
        for e in [ImpEngine::Auto, ImpEngine::Brute, ImpEngine::Schaefer] {
            assert!(implies(&bad, &f("F(y)"), e).unwrap());
        }
        let empty = KnowledgeBase::default();
        assert!(implies(&empty, &GammaFormula::top(), ImpEngine::Schaefer).unwrap());
        assert!(!implies(&empty, &f("EQ(x,y)"), ImpEngine::Schaefer).unwrap());
        assert!(implies(&empty, &f("EQ(x,x)"), ImpEngine::Schaefer).unwrap());
        assert!(implies(&empty, &f("EQ(x,x)"), ImpEngine::Brute).unwrap());
    }
}
