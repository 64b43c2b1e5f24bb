//! Plain CNF formulas, used for redundancy checks and as reduction sources.

use std::collections::BTreeSet;
use std::fmt;

use super::Var;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: Var,
    pub positive: bool,
}

impl Literal {
    pub fn pos(v: impl Into<Var>) -> Self {
        Literal { var: v.into(), positive: true }
    }

    pub fn neg(v: impl Into<Var>) -> Self {
        Literal { var: v.into(), positive: false }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "~{}", self.var)
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A conjunction of clauses. Clauses keep their written literals, repeats included.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(clauses: Vec<Vec<Literal>>) -> Self {
        CnfFormula { clauses }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses
            .iter()
            .flatten()
            .map(|l| l.var.clone())
            .collect()
    }

    /// Whether every literal is positive and every clause has exactly three literals.
    pub fn is_positive_3cnf(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.len() == 3 && c.iter().all(|l| l.positive))
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("|"))
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

impl fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// True iff two distinct clauses have the same set of literals.
pub fn is_redundant(cnf: &CnfFormula) -> bool {
    let sets: Vec<BTreeSet<&Literal>> = cnf.clauses.iter().map(|c| c.iter().collect()).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i] == sets[j] {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse_cnf;
    use proptest::prelude::*;

    #[test]
    fn redundancy_examples() {
        assert!(is_redundant(&parse_cnf("x & x").unwrap()));
        assert!(is_redundant(&parse_cnf("x|x|y & x|y").unwrap()));
        assert!(!is_redundant(&parse_cnf("x|y & x").unwrap()));
        assert!(!is_redundant(&parse_cnf("x & y").unwrap()));
    }

    fn arb_cnf() -> impl Strategy<Value = CnfFormula> {
        let lit = (0..3usize, any::<bool>()).prop_map(|(v, p)| Literal {
            var: Var::new(["a", "b", "c"][v]),
            positive: p,
        });
        proptest::collection::vec(proptest::collection::vec(lit, 1..4), 0..5).prop_map(CnfFormula::new)
    }

    proptest! {
        #[test]
        fn redundancy_ignores_order(cnf in arb_cnf(), seed in any::<u64>()) {
            let mut shuffled = cnf.clone();
            shuffled.clauses.reverse();
            let k = seed as usize;
            for c in shuffled.clauses.iter_mut() {
                if !c.is_empty() {
                    let len = c.len();
                    c.rotate_left(k % len);
                }
            }
            prop_assert_eq!(is_redundant(&cnf), is_redundant(&shuffled));
        }
    }
}
