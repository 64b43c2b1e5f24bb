use serde::Serialize;

use super::implicates::{representable_by, ClassTag, ClauseClass};
use super::{BooleanRelation, ConstraintLanguage};
use crate::error::{Error, Result};

/// Componentwise operations used as closure (polymorphism) tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polymorphism {
    And,
    Or,
    Majority,
    /// `x ^ y ^ z`
    Xor3,
    Complement,
}

/// Whether applying `op` componentwise to member tuples always yields a member.
pub fn closure_test(rel: &BooleanRelation, op: Polymorphism) -> bool {
    let width = (1usize << rel.arity()) - 1;
    let tuples: Vec<usize> = rel.tuple_indices().collect();
    match op {
        Polymorphism::Complement => tuples.iter().all(|&t| rel.contains_index(!t & width)),
        Polymorphism::And | Polymorphism::Or => tuples.iter().all(|&a| {
            tuples.iter().all(|&b| {
                let r = if op == Polymorphism::And { a & b } else { a | b };
                rel.contains_index(r)
            })
        }),
        Polymorphism::Majority | Polymorphism::Xor3 => tuples.iter().all(|&a| {
            tuples.iter().all(|&b| {
                tuples.iter().all(|&c| {
                    let r = if op == Polymorphism::Majority {
                        (a & b) | (a & c) | (b & c)
                    } else {
                        a ^ b ^ c
                    };
                    rel.contains_index(r)
                })
            })
        }),
    }
}

/// Structural flags of a relation or a language.
///
/// `schaefer` and `eps_valid` are derived from the base flags and are
/// recomputed, not conjoined, when combining relations into a language.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PropertySet {
    pub horn: bool,
    pub dual_horn: bool,
    pub bijunctive: bool,
    pub affine: bool,
    pub zero_valid: bool,
    pub one_valid: bool,
    pub complementive: bool,
    pub ess_pos: bool,
    pub ess_neg: bool,
    pub strictly_ess_pos: bool,
    pub strictly_ess_neg: bool,
    pub positive: bool,
    pub negative: bool,
    pub schaefer: bool,
    pub eps_valid: bool,
    /// Some member relation is empty.
    pub degenerate: bool,
}

impl PropertySet {
    fn with_derived(mut self) -> Self {
        self.schaefer = self.horn || self.dual_horn || self.bijunctive || self.affine;
        self.eps_valid = self.zero_valid || self.one_valid;
        self
    }

    /// Flags of a language whose members have the given flags.
    pub fn conjunction(members: impl IntoIterator<Item = PropertySet>) -> Self {
        let mut acc = PropertySet {
            horn: true,
            dual_horn: true,
            bijunctive: true,
            affine: true,
            zero_valid: true,
            one_valid: true,
            complementive: true,
            ess_pos: true,
            ess_neg: true,
            strictly_ess_pos: true,
            strictly_ess_neg: true,
            positive: true,
            negative: true,
            schaefer: false,
            eps_valid: false,
            degenerate: false,
        };
        for p in members {
            acc.horn &= p.horn;
            acc.dual_horn &= p.dual_horn;
            acc.bijunctive &= p.bijunctive;
            acc.affine &= p.affine;
            acc.zero_valid &= p.zero_valid;
            acc.one_valid &= p.one_valid;
            acc.complementive &= p.complementive;
            acc.ess_pos &= p.ess_pos;
            acc.ess_neg &= p.ess_neg;
            acc.strictly_ess_pos &= p.strictly_ess_pos;
            acc.strictly_ess_neg &= p.strictly_ess_neg;
            acc.positive &= p.positive;
            acc.negative &= p.negative;
            acc.degenerate |= p.degenerate;
        }
        acc.with_derived()
    }

    /// Names of the flags that are set, in declaration order.
    pub fn set_flags(&self) -> Vec<&'static str> {
        let all = [
            ("horn", self.horn),
            ("dual_horn", self.dual_horn),
            ("bijunctive", self.bijunctive),
            ("affine", self.affine),
            ("zero_valid", self.zero_valid),
            ("one_valid", self.one_valid),
            ("complementive", self.complementive),
            ("ess_pos", self.ess_pos),
            ("ess_neg", self.ess_neg),
            ("strictly_ess_pos", self.strictly_ess_pos),
            ("strictly_ess_neg", self.strictly_ess_neg),
            ("positive", self.positive),
            ("negative", self.negative),
            ("schaefer", self.schaefer),
            ("eps_valid", self.eps_valid),
            ("degenerate", self.degenerate),
        ];
        all.into_iter().filter(|(_, v)| *v).map(|(n, _)| n).collect()
    }
}

/// Computes every flag of a relation.
///
/// # Panics
///
/// If the syntactic affine test and the ternary-XOR closure test disagree,
/// which would mean one of the two detection paths is broken.
pub fn detect_properties(rel: &BooleanRelation) -> PropertySet {
    let repr = |tag| representable_by(rel, ClauseClass::new(tag));
    let repr_eq = |tag| representable_by(rel, ClauseClass::with_equality(tag));
    let all_ones = (1usize << rel.arity()) - 1;
    let props = PropertySet {
        horn: repr(ClassTag::Horn),
        dual_horn: repr(ClassTag::DualHorn),
        bijunctive: repr(ClassTag::Bijunctive),
        affine: repr(ClassTag::AffineEquation),
        zero_valid: rel.contains_index(0),
        one_valid: rel.contains_index(all_ones),
        complementive: closure_test(rel, Polymorphism::Complement),
        ess_pos: repr_eq(ClassTag::PositiveOrUnitNeg),
        ess_neg: repr_eq(ClassTag::NegativeOrUnitPos),
        strictly_ess_pos: repr(ClassTag::PositiveOrUnitNeg),
        strictly_ess_neg: repr(ClassTag::NegativeOrUnitPos),
        positive: repr(ClassTag::Positive),
        negative: repr(ClassTag::Negative),
        schaefer: false,
        eps_valid: false,
        degenerate: rel.is_empty(),
    }
    .with_derived();
    assert_eq!(
        props.affine,
        closure_test(rel, Polymorphism::Xor3),
        "affine detection disagrees with XOR closure on {rel:?}"
    );
    props
}

/// Flags of a language: conjunction of its members' flags.
pub fn classify_language(gamma: &ConstraintLanguage) -> Result<PropertySet> {
    if gamma.is_empty() {
        return Err(Error::Domain("empty constraint language".into()));
    }
    Ok(gamma.properties())
}
