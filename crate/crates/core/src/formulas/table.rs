//! Truth tables over a fixed variable order, packed into 64-bit words.

use std::collections::BTreeMap;

use super::{Assignment, Constraint, GammaFormula, Var};
use crate::error::{Error, Result};
use crate::relations::BooleanRelation;

/// A dense set of assignments to `n` variables.
///
/// Assignment `a` gives the variable at position `p` the value of bit
/// `n - 1 - p`, so numeric order on `a` is lexicographic order with the first
/// variable most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelSet {
    n: usize,
    words: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl ModelSet {
    pub fn empty(n: usize) -> Self {
        ModelSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = ModelSet {
            n,
            words: vec![!0; words_for(n)],
        };
        s.words[0] &= tail_mask(n);
        s
    }

    /// Models of one constraint whose `j`-th argument reads bit `bits[j]`.
    pub fn of_constraint(n: usize, rel: &BooleanRelation, bits: &[usize]) -> Self {
        debug_assert_eq!(bits.len(), rel.arity());
        debug_assert!(bits.iter().all(|&b| b < n));
        let mut low = [0usize; 64];
        for (t, slot) in low.iter_mut().enumerate() {
            for (j, &b) in bits.iter().enumerate() {
                if b < 6 && (t >> b) & 1 == 1 {
                    *slot |= 1 << j;
                }
            }
        }
        let high: Vec<(usize, usize)> = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= 6)
            .map(|(j, &b)| (j, b - 6))
            .collect();
        let mut by_high: BTreeMap<usize, u64> = BTreeMap::new();
        let mut word_for = |hi: usize| -> u64 {
            *by_high.entry(hi).or_insert_with(|| {
                (0..64).fold(0u64, |w, t| {
                    if rel.contains_index(hi | low[t]) {
                        w | 1 << t
                    } else {
                        w
                    }
                })
            })
        };
        let mut out = ModelSet::empty(n);
        for (w, slot) in out.words.iter_mut().enumerate() {
            let hi = high
                .iter()
                .fold(0usize, |acc, &(j, b)| if (w >> b) & 1 == 1 { acc | 1 << j } else { acc });
            *slot = word_for(hi);
        }
        out.words[0] &= tail_mask(n);
        out
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: usize) -> bool {
        (self.words[a >> 6] >> (a & 63)) & 1 == 1
    }

    pub fn insert(&mut self, a: usize) {
        self.words[a >> 6] |= 1 << (a & 63);
    }

    pub fn intersect_with(&mut self, other: &ModelSet) {
        debug_assert_eq!(self.n, other.n);
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x &= *y;
        }
    }

    pub fn union_with(&mut self, other: &ModelSet) {
        debug_assert_eq!(self.n, other.n);
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x |= *y;
        }
    }

    pub fn complement(&self) -> ModelSet {
        let mut s = ModelSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.words[0] &= tail_mask(self.n);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == ModelSet::full(self.n)
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.words.iter().zip(&other.words).all(|(x, y)| x & !y == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }

    /// Existential projection onto the first `k` variables.
    pub fn project_prefix(&self, k: usize) -> ModelSet {
        assert!(k <= self.n);
        let drop = self.n - k;
        let mut out = ModelSet::empty(k);
        for a in self.iter_ones() {
            out.insert(a >> drop);
        }
        out
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// A sorted variable order that maps formulas to [`ModelSet`]s.
#[derive(Clone, Debug)]
pub struct VarIndex {
    vars: Vec<Var>,
    pos: BTreeMap<Var, usize>,
}

impl VarIndex {
    /// Sorts and deduplicates; more than `max_vars` variables is a capacity error.
    pub fn new(vars: impl IntoIterator<Item = Var>, max_vars: usize) -> Result<Self> {
        let mut vars: Vec<Var> = vars.into_iter().collect();
        vars.sort();
        vars.dedup();
        Self::ordered(vars, max_vars)
    }

    /// Keeps the given order, which must be duplicate-free.
    pub fn ordered(vars: Vec<Var>, max_vars: usize) -> Result<Self> {
        if vars.len() > max_vars {
            return Err(Error::Capacity(format!(
                "{} variables exceed the limit of {max_vars}",
                vars.len()
            )));
        }
        let pos: BTreeMap<Var, usize> = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        if pos.len() != vars.len() {
            return Err(Error::Domain("duplicate variable in order".into()));
        }
        Ok(VarIndex { vars, pos })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Table bit that carries `v`.
    pub fn bit(&self, v: &Var) -> Option<usize> {
        self.pos.get(v).map(|p| self.vars.len() - 1 - p)
    }

    pub fn constraint_table(&self, c: &Constraint) -> Result<ModelSet> {
        let bits = c
            .args()
            .iter()
            .map(|v| {
                self.bit(v)
                    .ok_or_else(|| Error::Domain(format!("{v} is outside the variable order")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModelSet::of_constraint(self.len(), c.relation(), &bits))
    }

    pub fn table(&self, phi: &GammaFormula) -> Result<ModelSet> {
        let mut out = ModelSet::full(self.len());
        for c in phi.constraints() {
            out.intersect_with(&self.constraint_table(c)?);
        }
        Ok(out)
    }

    pub fn assignment(&self, a: usize) -> Assignment {
        let n = self.vars.len();
        self.vars
            .iter()
            .enumerate()
            .map(|(p, v)| (v.clone(), (a >> (n - 1 - p)) & 1 == 1))
            .collect()
    }

    /// Table index of an assignment; variables it does not define read as 0.
    pub fn index_of(&self, sigma: &Assignment) -> usize {
        let n = self.vars.len();
        self.vars.iter().enumerate().fold(0, |acc, (p, v)| {
            if sigma.value(v).unwrap_or(false) {
                acc | 1 << (n - 1 - p)
            } else {
                acc
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::evaluate;
    use proptest::prelude::*;

    fn arb_formula(nvars: usize) -> impl Strategy<Value = GammaFormula> {
        let constraint = (1usize..=4).prop_flat_map(move |arity| {
            (
                any::<u64>(),
                proptest::collection::vec(0..nvars, arity),
            )
                .prop_map(move |(mask, args)| {
                    let mask = if arity == 6 { mask } else { mask & ((1u64 << (1 << arity)) - 1) };
                    let rel = BooleanRelation::from_mask("R", arity, mask).unwrap();
                    Constraint::new(rel, args.iter().map(|i| format!("v{i:02}"))).unwrap()
                })
        });
        proptest::collection::vec(constraint, 0..4).prop_map(GammaFormula::new)
    }

    proptest! {
        #[test]
        fn table_agrees_with_evaluation(phi in arb_formula(8)) {
            let index = VarIndex::new((0..8).map(|i| Var::new(format!("v{i:02}"))), 24).unwrap();
            let table = index.table(&phi).unwrap();
            for a in 0..256 {
                let sigma = index.assignment(a);
                prop_assert_eq!(index.index_of(&sigma), a);
                prop_assert_eq!(table.contains(a), evaluate(&phi, &sigma).unwrap());
            }
        }

        #[test]
        fn small_tables_agree_with_evaluation(phi in arb_formula(3)) {
            let index = VarIndex::new((0..3).map(|i| Var::new(format!("v{i:02}"))), 24).unwrap();
            let table = index.table(&phi).unwrap();
            prop_assert!(table.iter_ones().all(|a| a < 8));
            for a in 0..8 {
                prop_assert_eq!(table.contains(a), evaluate(&phi, &index.assignment(a)).unwrap());
            }
        }
    }

    #[test]
    fn projection_and_order() {
        let index = VarIndex::new(["x", "y"].map(Var::new), 24).unwrap();
        assert_eq!(index.bit(&Var::new("x")), Some(1));
        let t = ModelSet::of_constraint(2, &BooleanRelation::truth(), &[1]);
        assert_eq!(t.iter_ones().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(t.project_prefix(1).iter_ones().collect::<Vec<_>>(), vec![1]);
        assert!(ModelSet::full(0).contains(0));
        assert_eq!(ModelSet::full(0).count(), 1);
    }
}
