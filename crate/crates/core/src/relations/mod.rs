//! Boolean relations, constraint languages and structural property detection.
//!
//! A relation of arity `k` is stored as a 64-bit membership mask over tuple
//! indices: bit `i` is set iff the tuple whose coordinate `j` equals bit `j`
//! of `i` belongs to the relation. Coordinate `j` is printed as `x{j+1}`.

mod implicates;
mod properties;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::limits::MAX_ARITY;

pub use implicates::{entailed_units, representable_by, ClassTag, Clause, ClauseClass, Equation, Implicate};
pub use properties::{classify_language, closure_test, detect_properties, Polymorphism, PropertySet};

pub(crate) use implicates::{Representations, UnitForm};

/// Names that always resolve to the predefined relations.
pub const RESERVED_NAMES: [&str; 5] = ["T", "F", "EQ", "NEQ", "EVEN4"];

#[derive(Clone)]
pub struct BooleanRelation {
    name: String,
    arity: usize,
    mask: u64,
    properties: OnceLock<PropertySet>,
    representations: OnceLock<Arc<Representations>>,
}

impl fmt::Debug for BooleanRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_line())
    }
}

/// Equality ignores the name.
impl PartialEq for BooleanRelation {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.mask == other.mask
    }
}

impl Eq for BooleanRelation {}

impl std::hash::Hash for BooleanRelation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.arity.hash(state);
        self.mask.hash(state);
    }
}

fn full_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1usize << arity)) - 1
    }
}

impl BooleanRelation {
    /// Builds a relation from its membership mask over tuple indices.
    pub fn from_mask(name: impl Into<String>, arity: usize, mask: u64) -> Result<Self> {
        let name = name.into();
        if arity == 0 {
            return Err(Error::Domain(format!("relation {name} must have positive arity")));
        }
        if arity > MAX_ARITY {
            return Err(Error::Capacity(format!(
                "relation {name} has arity {arity}, the cap is {MAX_ARITY}"
            )));
        }
        if mask & !full_mask(arity) != 0 {
            return Err(Error::Domain(format!("mask of {name} has bits beyond arity {arity}")));
        }
        Ok(BooleanRelation {
            name,
            arity,
            mask,
            properties: OnceLock::new(),
            representations: OnceLock::new(),
        })
    }

    /// Builds a relation from a predicate over coordinate values.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        mut member: impl FnMut(&[bool]) -> bool,
    ) -> Result<Self> {
        let name = name.into();
        if arity == 0 || arity > MAX_ARITY {
            return Self::from_mask(name, arity, 0);
        }
        let mut mask = 0u64;
        let mut buf = vec![false; arity];
        for idx in 0..(1usize << arity) {
            for (j, b) in buf.iter_mut().enumerate() {
                *b = idx >> j & 1 == 1;
            }
            if member(&buf) {
                mask |= 1 << idx;
            }
        }
        Self::from_mask(name, arity, mask)
    }

    /// Builds a relation from bitstrings such as `"001"`; character `j` is coordinate `j`.
    pub fn from_bitstrings<S: AsRef<str>>(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        if arity == 0 || arity > MAX_ARITY {
            return Self::from_mask(name, arity, 0);
        }
        let mut mask = 0u64;
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::Domain(format!(
                    "tuple {t:?} of {name} does not have {arity} bits"
                )));
            }
            let mut idx = 0usize;
            for (j, c) in t.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => idx |= 1 << j,
                    _ => return Err(Error::Domain(format!("tuple {t:?} of {name} is not a bitstring"))),
                }
            }
            if mask >> idx & 1 == 1 {
                return Err(Error::Domain(format!("tuple {t} listed twice in {name}")));
            }
            mask |= 1 << idx;
        }
        Self::from_mask(name, arity, mask)
    }

    /// `T = {(1)}`.
    pub fn truth() -> Self {
        Self::from_mask("T", 1, 0b10).unwrap()
    }

    /// `F = {(0)}`.
    pub fn falsity() -> Self {
        Self::from_mask("F", 1, 0b01).unwrap()
    }

    /// `EQ = {(0,0),(1,1)}`.
    pub fn equality() -> Self {
        Self::from_mask("EQ", 2, 0b1001).unwrap()
    }

    /// `NEQ = {(0,1),(1,0)}`.
    pub fn disequality() -> Self {
        Self::from_mask("NEQ", 2, 0b0110).unwrap()
    }

    /// Four-ary even parity: tuples with an even number of ones.
    pub fn even4() -> Self {
        Self::from_fn("EVEN4", 4, |t| t.iter().filter(|b| **b).count() % 2 == 0).unwrap()
    }

    /// `(x1 = x2) & x3 & ~x4` over `(x1, x2, t, f)`.
    pub fn eq_tf() -> Self {
        Self::from_bitstrings("EQTF", 4, ["0010", "1110"]).unwrap()
    }

    /// `(x1 != x2) & x3 & ~x4` over `(x1, x2, t, f)`.
    pub fn neq_tf() -> Self {
        Self::from_bitstrings("NEQTF", 4, ["0110", "1010"]).unwrap()
    }

    /// `t & ~f` over `(t, f)`.
    pub fn t_not_f() -> Self {
        Self::from_bitstrings("TNF", 2, ["10"]).unwrap()
    }

    /// Not-all-equal on three coordinates.
    pub fn nae3() -> Self {
        Self::from_fn("NAE3", 3, |t| !(t[0] == t[1] && t[1] == t[2])).unwrap()
    }

    /// Resolves one of [`RESERVED_NAMES`].
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "T" => Some(Self::truth()),
            "F" => Some(Self::falsity()),
            "EQ" => Some(Self::equality()),
            "NEQ" => Some(Self::disequality()),
            "EVEN4" => Some(Self::even4()),
            _ => None,
        }
    }

    pub fn is_reserved_name(name: &str) -> bool {
        RESERVED_NAMES.contains(&name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same tuples under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut r = self.clone();
        r.name = name.into();
        r
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        idx < 1 << self.arity && self.mask >> idx & 1 == 1
    }

    pub fn contains(&self, tuple: &[bool]) -> bool {
        tuple.len() == self.arity && self.contains_index(tuple_index(tuple))
    }

    /// Member tuple indices in increasing order.
    pub fn tuple_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..(1usize << self.arity)).filter(move |i| self.mask >> i & 1 == 1)
    }

    /// Member tuples as coordinate vectors.
    pub fn tuples(&self) -> Vec<Vec<bool>> {
        self.tuple_indices()
            .map(|i| (0..self.arity).map(|j| i >> j & 1 == 1).collect())
            .collect()
    }

    pub fn bitstring(&self, idx: usize) -> String {
        (0..self.arity)
            .map(|j| if idx >> j & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// The `rel NAME ARITY tuples` line for this relation.
    pub fn to_line(&self) -> String {
        let mut tuples: Vec<String> = self.tuple_indices().map(|i| self.bitstring(i)).collect();
        tuples.sort();
        if tuples.is_empty() {
            format!("rel {} {}", self.name, self.arity)
        } else {
            format!("rel {} {} {}", self.name, self.arity, tuples.join(","))
        }
    }

    /// Cached structural properties.
    pub fn properties(&self) -> &PropertySet {
        self.properties.get_or_init(|| detect_properties(self))
    }

    pub(crate) fn representations(&self) -> &Representations {
        self.representations
            .get_or_init(|| Arc::new(Representations::compute(self)))
    }
}

pub(crate) fn tuple_index(tuple: &[bool]) -> usize {
    tuple
        .iter()
        .enumerate()
        .fold(0, |acc, (j, b)| if *b { acc | 1 << j } else { acc })
}

/// A finite, non-empty set of relations with unique names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintLanguage {
    relations: Vec<Arc<BooleanRelation>>,
}

impl ConstraintLanguage {
    pub fn new<R>(relations: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: Into<Arc<BooleanRelation>>,
    {
        let relations: Vec<Arc<BooleanRelation>> = relations.into_iter().map(Into::into).collect();
        if relations.is_empty() {
            return Err(Error::Domain("constraint language must be non-empty".into()));
        }
        let mut names = BTreeSet::new();
        for r in &relations {
            if !names.insert(r.name()) {
                return Err(Error::Domain(format!("relation name {} is not unique", r.name())));
            }
        }
        Ok(ConstraintLanguage { relations })
    }

    pub fn relations(&self) -> &[Arc<BooleanRelation>] {
        &self.relations
    }

    pub fn iter(&self) -> impl Iterator<Item = &BooleanRelation> {
        self.relations.iter().map(|r| r.as_ref())
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Arc<BooleanRelation>> {
        self.relations.iter().find(|r| r.name() == name)
    }

    /// True if some member has the same tuples as `rel`.
    pub fn contains(&self, rel: &BooleanRelation) -> bool {
        self.relations.iter().any(|r| r.as_ref() == rel)
    }

    pub fn properties(&self) -> PropertySet {
        PropertySet::conjunction(self.iter().map(|r| *r.properties()))
    }

    pub fn max_arity(&self) -> usize {
        self.iter().map(|r| r.arity()).max().unwrap_or(0)
    }
}
