//! Parameterized complexity of the argumentation and implication problems
//! as a function of the structural flags of the constraint language.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relations::{classify_language, ConstraintLanguage, PropertySet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Problem {
    Arg,
    ArgCheck,
    ArgRel,
    Imp,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::Arg, Problem::ArgCheck, Problem::ArgRel, Problem::Imp];
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Arg => "ARG",
            Problem::ArgCheck => "ARG_CHECK",
            Problem::ArgRel => "ARG_REL",
            Problem::Imp => "IMP",
        })
    }
}

/// The parameter: size of the claim, of the knowledge base, or of the support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Parameter {
    Alpha,
    Delta,
    Phi,
}

impl Parameter {
    pub const ALL: [Parameter; 3] = [Parameter::Alpha, Parameter::Delta, Parameter::Phi];
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameter::Alpha => "ALPHA",
            Parameter::Delta => "DELTA",
            Parameter::Phi => "PHI",
        })
    }
}

/// Whether `parameter` is meaningful for `problem`.
pub fn is_legal(problem: Problem, parameter: Parameter) -> bool {
    match parameter {
        Parameter::Alpha => true,
        Parameter::Delta => matches!(problem, Problem::Arg | Problem::ArgRel),
        Parameter::Phi => matches!(problem, Problem::ArgCheck | Problem::Imp),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    problem: Problem,
    parameter: Parameter,
    language: ConstraintLanguage,
}

impl Query {
    pub fn new(problem: Problem, parameter: Parameter, language: ConstraintLanguage) -> Result<Self> {
        if !is_legal(problem, parameter) {
            return Err(Error::Domain(format!("{problem} is not parameterized by {parameter}")));
        }
        Ok(Query {
            problem,
            parameter,
            language,
        })
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn parameter(&self) -> Parameter {
        self.parameter
    }

    pub fn language(&self) -> &ConstraintLanguage {
        &self.language
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassTag {
    Fpt,
    W1Member,
    W2Member,
    ParaNpC,
    ParaConpC,
    ParaDpC,
    ParaSigma2pC,
    /// In para-coNP and at least as hard as IMP parameterized by the support size.
    ParaConpMemberImpHard,
    /// In para-DP and at least as hard as IMP parameterized by the support size.
    ParaDpMemberImpHard,
    Unknown,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::Fpt => "FPT",
            ClassTag::W1Member => "W1_MEMBER",
            ClassTag::W2Member => "W2_MEMBER",
            ClassTag::ParaNpC => "PARA_NP_C",
            ClassTag::ParaConpC => "PARA_CONP_C",
            ClassTag::ParaDpC => "PARA_DP_C",
            ClassTag::ParaSigma2pC => "PARA_SIGMA2P_C",
            ClassTag::ParaConpMemberImpHard => "PARA_CONP_MEMBER_IMP_HARD",
            ClassTag::ParaDpMemberImpHard => "PARA_DP_MEMBER_IMP_HARD",
            ClassTag::Unknown => "UNKNOWN",
        })
    }
}

/// One cell of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ComplexityClass {
    pub tag: ClassTag,
    /// True when the bound is tight, false for membership-only or open cells.
    pub complete: bool,
    /// Identifier of the case that produced the cell.
    pub rule: &'static str,
}

const fn tight(tag: ClassTag, rule: &'static str) -> ComplexityClass {
    ComplexityClass {
        tag,
        complete: true,
        rule,
    }
}

const fn upper(tag: ClassTag, rule: &'static str) -> ComplexityClass {
    ComplexityClass {
        tag,
        complete: false,
        rule,
    }
}

pub fn predicted_complexity(q: &Query) -> Result<ComplexityClass> {
    let props = classify_language(&q.language)?;
    cell(q.problem, q.parameter, &props)
}

/// The classification cell for a language with flags `p`.
pub fn cell(problem: Problem, parameter: Parameter, p: &PropertySet) -> Result<ComplexityClass> {
    use ClassTag::*;
    if !is_legal(problem, parameter) {
        return Err(Error::Domain(format!("{problem} is not parameterized by {parameter}")));
    }
    let sep = p.strictly_ess_pos;
    let sen = p.strictly_ess_neg;
    Ok(match (problem, parameter) {
        (Problem::Arg, Parameter::Alpha) => {
            if p.schaefer && p.eps_valid {
                tight(Fpt, "arg.alpha.schaefer-eps-valid")
            } else if sep && sen {
                upper(W1Member, "arg.alpha.strict-pos-and-neg")
            } else if sep || sen {
                upper(W2Member, "arg.alpha.strict-pos-or-neg")
            } else if p.schaefer {
                tight(ParaNpC, "arg.alpha.schaefer")
            } else if p.eps_valid {
                tight(ParaConpC, "arg.alpha.eps-valid")
            } else {
                tight(ParaSigma2pC, "arg.alpha.general")
            }
        }
        (Problem::ArgCheck, Parameter::Alpha) => {
            if p.schaefer {
                tight(Fpt, "arg-check.alpha.schaefer")
            } else {
                tight(ParaDpC, "arg-check.alpha.general")
            }
        }
        (Problem::ArgRel, Parameter::Alpha) => {
            if p.positive || p.negative {
                tight(Fpt, "arg-rel.alpha.positive-or-negative")
            } else if !p.schaefer {
                tight(ParaSigma2pC, "arg-rel.alpha.general")
            } else if sep {
                upper(Unknown, "arg-rel.alpha.open-strict-pos")
            } else if sen {
                upper(Unknown, "arg-rel.alpha.open-strict-neg")
            } else {
                tight(ParaNpC, "arg-rel.alpha.schaefer")
            }
        }
        (Problem::Arg | Problem::ArgRel, Parameter::Delta) => {
            if p.schaefer {
                tight(Fpt, "delta.schaefer")
            } else {
                upper(ParaConpMemberImpHard, "delta.general")
            }
        }
        (Problem::ArgCheck, Parameter::Phi) => {
            if p.schaefer {
                tight(Fpt, "arg-check.phi.schaefer")
            } else {
                upper(ParaDpMemberImpHard, "arg-check.phi.general")
            }
        }
        (Problem::Imp, Parameter::Alpha) => {
            if p.schaefer {
                tight(Fpt, "imp.schaefer")
            } else {
                tight(ParaConpC, "imp.alpha.general")
            }
        }
        (Problem::Imp, Parameter::Phi) => {
            if p.schaefer {
                tight(Fpt, "imp.schaefer")
            } else {
                upper(ParaConpMemberImpHard, "imp.phi.general")
            }
        }
        _ => unreachable!("illegal combinations are rejected above"),
    })
}

/// Every legal `(problem, parameter)` pair in a fixed order.
pub fn legal_queries() -> impl Iterator<Item = (Problem, Parameter)> {
    Problem::ALL
        .into_iter()
        .flat_map(|pr| Parameter::ALL.into_iter().map(move |pa| (pr, pa)))
        .filter(|&(pr, pa)| is_legal(pr, pa))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub problem: Problem,
    pub parameter: Parameter,
    #[serde(flatten)]
    pub class: ComplexityClass,
}

/// The cell of every legal query for `gamma`.
pub fn complexity_table(gamma: &ConstraintLanguage) -> Result<Vec<TableRow>> {
    let props = classify_language(gamma)?;
    legal_queries()
        .map(|(problem, parameter)| {
            Ok(TableRow {
                problem,
                parameter,
                class: cell(problem, parameter, &props)?,
            })
        })
        .collect()
}
