//! Enumeration of class-shaped implicates and the representability oracle.
//!
//! A relation is representable in a class iff the conjunction of all its
//! class-shaped implicates is equivalent to it: any representation in the
//! class lies between the relation and that maximal conjunction.

use std::fmt;

use serde::Serialize;

use super::BooleanRelation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassTag {
    /// At most one positive literal.
    Horn,
    /// At most one negative literal.
    DualHorn,
    /// At most two literals.
    Bijunctive,
    /// Negative clauses and positive units.
    NegativeOrUnitPos,
    /// Positive clauses and negative units.
    PositiveOrUnitNeg,
    /// Negative clauses only.
    Negative,
    /// Positive clauses only.
    Positive,
    /// Linear equations over GF(2).
    AffineEquation,
}

impl ClassTag {
    pub const ALL: [ClassTag; 8] = [
        ClassTag::Horn,
        ClassTag::DualHorn,
        ClassTag::Bijunctive,
        ClassTag::NegativeOrUnitPos,
        ClassTag::PositiveOrUnitNeg,
        ClassTag::Negative,
        ClassTag::Positive,
        ClassTag::AffineEquation,
    ];
}

/// A syntactic family of clauses or equations.
///
/// `allow_equality` adds entailed coordinate equalities as conjuncts; it is
/// only honoured for the two essentially-positive/negative tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClauseClass {
    pub tag: ClassTag,
    pub allow_equality: bool,
}

impl ClauseClass {
    pub const fn new(tag: ClassTag) -> Self {
        ClauseClass {
            tag,
            allow_equality: false,
        }
    }

    pub const fn with_equality(tag: ClassTag) -> Self {
        ClauseClass {
            tag,
            allow_equality: true,
        }
    }

    fn equality_honoured(&self) -> bool {
        self.allow_equality
            && matches!(self.tag, ClassTag::NegativeOrUnitPos | ClassTag::PositiveOrUnitNeg)
    }

    /// Whether a clause has the shape of this class. The empty clause belongs to every class.
    pub fn admits(&self, clause: &Clause) -> bool {
        let p = clause.pos.count_ones();
        let n = clause.neg.count_ones();
        match self.tag {
            ClassTag::Horn => p <= 1,
            ClassTag::DualHorn => n <= 1,
            ClassTag::Bijunctive => p + n <= 2,
            ClassTag::NegativeOrUnitPos => p == 0 || (p == 1 && n == 0),
            ClassTag::PositiveOrUnitNeg => n == 0 || (n == 1 && p == 0),
            ClassTag::Negative => p == 0,
            ClassTag::Positive => n == 0,
            ClassTag::AffineEquation => false,
        }
    }
}

impl From<ClassTag> for ClauseClass {
    fn from(tag: ClassTag) -> Self {
        ClauseClass::new(tag)
    }
}

/// A clause over relation coordinates, as masks of positive and negative coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub pos: u8,
    pub neg: u8,
}

impl Clause {
    pub fn len(&self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn satisfied_by(&self, idx: usize) -> bool {
        let idx = idx as u8;
        idx & self.pos != 0 || !idx & self.neg != 0
    }

    /// `self` subsumes `other` when its literals are a subset of `other`'s.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }
}

/// `XOR of the coordinates in vars = rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub vars: u8,
    pub rhs: bool,
}

impl Equation {
    pub fn satisfied_by(&self, idx: usize) -> bool {
        ((idx as u8 & self.vars).count_ones() % 2 == 1) == self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Implicate {
    Clause(Clause),
    Equation(Equation),
    /// Coordinates `i < j` are equal in every tuple.
    Equality(usize, usize),
}

impl Implicate {
    pub fn holds(&self, idx: usize) -> bool {
        match self {
            Implicate::Clause(c) => c.satisfied_by(idx),
            Implicate::Equation(e) => e.satisfied_by(idx),
            Implicate::Equality(i, j) => (idx >> i & 1) == (idx >> j & 1),
        }
    }
}

fn coords(mask: u8) -> impl Iterator<Item = usize> {
    (0..8).filter(move |j| mask >> j & 1 == 1)
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "false");
        }
        let mut lits: Vec<(usize, bool)> = coords(self.pos).map(|j| (j, true)).collect();
        lits.extend(coords(self.neg).map(|j| (j, false)));
        lits.sort();
        let text: Vec<String> = lits
            .into_iter()
            .map(|(j, p)| format!("{}x{}", if p { "" } else { "~" }, j + 1))
            .collect();
        write!(f, "{}", text.join(" | "))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = coords(self.vars).map(|j| format!("x{}", j + 1)).collect();
        let lhs = if vars.is_empty() { "0".to_string() } else { vars.join(" ^ ") };
        write!(f, "{lhs} = {}", self.rhs as u8)
    }
}

impl fmt::Display for Implicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Implicate::Clause(c) => write!(f, "{c}"),
            Implicate::Equation(e) => write!(f, "{e}"),
            Implicate::Equality(i, j) => write!(f, "x{} = x{}", i + 1, j + 1),
        }
    }
}

fn all_clauses(arity: usize) -> Vec<Clause> {
    let shapes = 3usize.pow(arity as u32);
    let mut out = Vec::with_capacity(shapes);
    for mut code in 0..shapes {
        let mut c = Clause { pos: 0, neg: 0 };
        for j in 0..arity {
            match code % 3 {
                1 => c.pos |= 1 << j,
                2 => c.neg |= 1 << j,
                _ => {}
            }
            code /= 3;
        }
        out.push(c);
    }
    out.sort_by_key(|c| (c.len(), c.pos | c.neg, c.neg));
    out
}

fn entailed(rel: &BooleanRelation, imp: &Implicate) -> bool {
    rel.tuple_indices().all(|t| imp.holds(t))
}

/// All implicates of `rel` with the shape of `class`, in a fixed order:
/// clauses by length then coordinates, then equalities, then equations by size.
pub fn entailed_units(rel: &BooleanRelation, class: ClauseClass) -> Vec<Implicate> {
    let k = rel.arity();
    let mut out = Vec::new();
    if class.tag == ClassTag::AffineEquation {
        let mut eqs: Vec<Equation> = (0u16..(1 << k))
            .flat_map(|v| {
                [false, true].map(|rhs| Equation {
                    vars: v as u8,
                    rhs,
                })
            })
            .filter(|e| e.vars != 0 || e.rhs)
            .collect();
        eqs.sort_by_key(|e| (e.vars.count_ones(), e.vars, e.rhs));
        out.extend(
            eqs.into_iter()
                .map(Implicate::Equation)
                .filter(|i| entailed(rel, i)),
        );
        return out;
    }
    out.extend(
        all_clauses(k)
            .into_iter()
            .filter(|c| class.admits(c))
            .map(Implicate::Clause)
            .filter(|i| entailed(rel, i)),
    );
    if class.equality_honoured() {
        for i in 0..k {
            for j in i + 1..k {
                let eq = Implicate::Equality(i, j);
                if entailed(rel, &eq) {
                    out.push(eq);
                }
            }
        }
    }
    out
}

/// Tuple indices satisfying every implicate.
fn closure_mask(arity: usize, implicates: &[Implicate]) -> u64 {
    (0..(1usize << arity))
        .filter(|&t| implicates.iter().all(|i| i.holds(t)))
        .fold(0u64, |m, t| m | 1 << t)
}

/// Whether `rel` is expressible by a conjunction of implicates of the class.
pub fn representable_by(rel: &BooleanRelation, class: ClauseClass) -> bool {
    closure_mask(rel.arity(), &entailed_units(rel, class)) == rel.mask()
}

/// Shape of a relation seen as a conjunction of literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum UnitForm {
    /// Coordinates forced to 1 and to 0; their conjunction is the relation.
    Term { pos: u8, neg: u8 },
    /// The empty relation.
    Contradiction,
    NotATerm,
}

/// Subsumption-minimal representations used by the polynomial engines.
#[derive(Clone, Debug)]
pub(crate) struct Representations {
    pub horn: Option<Vec<Clause>>,
    pub dual_horn: Option<Vec<Clause>>,
    pub bijunctive: Option<Vec<Clause>>,
    pub strict_pos: Option<Vec<Clause>>,
    pub strict_neg: Option<Vec<Clause>>,
    pub affine: Option<Vec<Equation>>,
    pub units: UnitForm,
}

fn minimal_clauses(rel: &BooleanRelation, tag: ClassTag) -> Option<Vec<Clause>> {
    let imps = entailed_units(rel, ClauseClass::new(tag));
    if closure_mask(rel.arity(), &imps) != rel.mask() {
        return None;
    }
    let clauses: Vec<Clause> = imps
        .iter()
        .filter_map(|i| match i {
            Implicate::Clause(c) => Some(*c),
            _ => None,
        })
        .collect();
    Some(
        clauses
            .iter()
            .filter(|c| !clauses.iter().any(|d| d != *c && d.subsumes(c)))
            .copied()
            .collect(),
    )
}

/// Reduces entailed equations to an independent set.
fn affine_basis(rel: &BooleanRelation) -> Option<Vec<Equation>> {
    let imps = entailed_units(rel, ClauseClass::new(ClassTag::AffineEquation));
    if closure_mask(rel.arity(), &imps) != rel.mask() {
        return None;
    }
    if rel.is_empty() {
        return Some(vec![Equation { vars: 0, rhs: true }]);
    }
    let mut basis: Vec<Equation> = Vec::new();
    for imp in imps {
        let Implicate::Equation(mut e) = imp else { continue };
        for b in &basis {
            let pivot = 1u8 << b.vars.trailing_zeros();
            if e.vars & pivot != 0 {
                e.vars ^= b.vars;
                e.rhs ^= b.rhs;
            }
        }
        if e.vars != 0 {
            let pivot = 1u8 << e.vars.trailing_zeros();
            for b in basis.iter_mut() {
                if b.vars & pivot != 0 {
                    b.vars ^= e.vars;
                    b.rhs ^= e.rhs;
                }
            }
            basis.push(e);
        }
    }
    Some(basis)
}

fn unit_form(rel: &BooleanRelation) -> UnitForm {
    if rel.is_empty() {
        return UnitForm::Contradiction;
    }
    let k = rel.arity();
    let (mut pos, mut neg) = (0u8, 0u8);
    for j in 0..k {
        if rel.tuple_indices().all(|t| t >> j & 1 == 1) {
            pos |= 1 << j;
        }
        if rel.tuple_indices().all(|t| t >> j & 1 == 0) {
            neg |= 1 << j;
        }
    }
    let units: Vec<Implicate> = coords(pos)
        .map(|j| Implicate::Clause(Clause { pos: 1 << j, neg: 0 }))
        .chain(coords(neg).map(|j| Implicate::Clause(Clause { pos: 0, neg: 1 << j })))
        .collect();
    if closure_mask(k, &units) == rel.mask() {
        UnitForm::Term { pos, neg }
    } else {
        UnitForm::NotATerm
    }
}

impl Representations {
    pub fn compute(rel: &BooleanRelation) -> Self {
        Representations {
            horn: minimal_clauses(rel, ClassTag::Horn),
            dual_horn: minimal_clauses(rel, ClassTag::DualHorn),
            bijunctive: minimal_clauses(rel, ClassTag::Bijunctive),
            strict_pos: minimal_clauses(rel, ClassTag::PositiveOrUnitNeg),
            strict_neg: minimal_clauses(rel, ClassTag::NegativeOrUnitPos),
            affine: affine_basis(rel),
            units: unit_form(rel),
        }
    }
}
