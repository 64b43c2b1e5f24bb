//! Text formats for formulas, CNFs, languages and instance files.
//!
//! ```text
//! # comment
//! rel R 3 100,010,001      relation definition
//! use T,EQ                 built-in relations that belong to the language
//! R(x,y,z) & T(x)          one knowledge-base formula per line
//! claim: EQ(x,y)
//! rel: T(z)
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use super::cnf::{CnfFormula, Literal};
use super::{is_identifier, Constraint, GammaFormula, KnowledgeBase, Var};
use crate::error::{Error, Result};
use crate::relations::{BooleanRelation, ConstraintLanguage};

/// Relation names available to the formula parser.
#[derive(Clone, Debug)]
pub struct Vocabulary {
    rels: BTreeMap<String, Arc<BooleanRelation>>,
}

impl Default for Vocabulary {
    fn default() -> Self {
        let mut rels = BTreeMap::new();
        for r in [
            BooleanRelation::truth(),
            BooleanRelation::falsity(),
            BooleanRelation::equality(),
            BooleanRelation::disequality(),
            BooleanRelation::even4(),
        ] {
            rels.insert(r.name().to_string(), Arc::new(r));
        }
        Vocabulary { rels }
    }
}

impl Vocabulary {
    /// The built-in relations T, F, EQ, NEQ and EVEN4.
    pub fn new() -> Self {
        Vocabulary::default()
    }

    /// Adds a relation. Redefining a name with different tuples is an error.
    pub fn define(&mut self, rel: Arc<BooleanRelation>) -> Result<()> {
        match self.rels.get(rel.name()) {
            Some(old) if **old != *rel => Err(Error::Domain(format!(
                "relation {} is already defined differently",
                rel.name()
            ))),
            Some(_) => Ok(()),
            None => {
                self.rels.insert(rel.name().to_string(), rel);
                Ok(())
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&Arc<BooleanRelation>> {
        self.rels.get(name)
    }
}

fn parse_constraint(text: &str, vocab: &Vocabulary, line: usize) -> Result<Constraint> {
    let text = text.trim();
    let open = text
        .find('(')
        .ok_or_else(|| Error::parse(line, format!("expected NAME(args) in {text:?}")))?;
    if !text.ends_with(')') {
        return Err(Error::parse(line, format!("missing ')' in {text:?}")));
    }
    let name = text[..open].trim();
    let rel = vocab
        .get(name)
        .ok_or_else(|| Error::parse(line, format!("unknown relation {name:?}")))?;
    let args: Vec<&str> = text[open + 1..text.len() - 1].split(',').map(str::trim).collect();
    if let Some(bad) = args.iter().find(|a| !is_identifier(a)) {
        return Err(Error::parse(line, format!("invalid variable {bad:?}")));
    }
    Constraint::new(rel.clone(), args).map_err(|e| Error::parse(line, e.to_string()))
}

fn parse_formula_at(text: &str, vocab: &Vocabulary, line: usize) -> Result<GammaFormula> {
    let text = text.trim();
    if text == "true" {
        return Ok(GammaFormula::top());
    }
    text.split('&')
        .map(|part| parse_constraint(part, vocab, line))
        .collect::<Result<Vec<_>>>()
        .map(GammaFormula::new)
}

/// Parses `NAME(x,y) & NAME(z)`; the word `true` is the empty formula.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<GammaFormula> {
    parse_formula_at(text, vocab, 1)
}

/// Parses `a|~b & c`. Blank lines and `#` comments are skipped; several
/// lines are conjoined.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for clause in line.split('&') {
            let clause = clause.trim();
            let clause = clause
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(clause);
            let mut lits = Vec::new();
            for lit in clause.split('|') {
                let lit = lit.trim();
                let (positive, name) = match lit.strip_prefix('~') {
                    Some(rest) => (false, rest.trim()),
                    None => (true, lit),
                };
                if !is_identifier(name) {
                    return Err(Error::parse(i + 1, format!("invalid literal {lit:?}")));
                }
                lits.push(Literal { var: Var::new(name), positive });
            }
            clauses.push(lits);
        }
    }
    Ok(CnfFormula::new(clauses))
}

/// `rel NAME ARITY t1,t2,...`
fn parse_relation_line(rest: &str, line: usize) -> Result<BooleanRelation> {
    let mut fields = rest.split_whitespace();
    let name = fields
        .next()
        .ok_or_else(|| Error::parse(line, "missing relation name"))?;
    if !is_identifier(name) {
        return Err(Error::parse(line, format!("invalid relation name {name:?}")));
    }
    if BooleanRelation::is_reserved_name(name) {
        return Err(Error::parse(line, format!("{name} is a built-in relation")));
    }
    let arity: usize = fields
        .next()
        .ok_or_else(|| Error::parse(line, "missing arity"))?
        .parse()
        .map_err(|_| Error::parse(line, "arity is not a number"))?;
    let tuples: Vec<&str> = match fields.next() {
        Some(t) => t.split(',').collect(),
        None => Vec::new(),
    };
    if fields.next().is_some() {
        return Err(Error::parse(line, "trailing input after tuples"));
    }
    BooleanRelation::from_bitstrings(name, arity, &tuples).map_err(|e| match e {
        Error::Capacity(m) => Error::Capacity(m),
        other => Error::parse(line, other.to_string()),
    })
}

/// A parsed language or instance file.
#[derive(Clone, Debug, Default)]
pub struct Document {
    /// Leading comment lines, without the `#`.
    pub header: Vec<String>,
    /// Relations introduced by `rel` or `use` lines, in order.
    pub relations: Vec<Arc<BooleanRelation>>,
    pub formulas: Vec<GammaFormula>,
    pub claim: Option<GammaFormula>,
    pub psi: Option<GammaFormula>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let mut vocab = Vocabulary::new();
        let mut doc = Document::default();
        let mut in_header = true;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if in_header {
                    doc.header.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
                }
                continue;
            }
            in_header = false;
            if let Some(rest) = line.strip_prefix("claim:") {
                if doc.claim.is_some() {
                    return Err(Error::parse(line_no, "second claim line"));
                }
                doc.claim = Some(parse_formula_at(rest, &vocab, line_no)?);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                if doc.psi.is_some() {
                    return Err(Error::parse(line_no, "second rel: line"));
                }
                doc.psi = Some(parse_formula_at(rest, &vocab, line_no)?);
            } else if let Some(rest) = line.strip_prefix("rel ") {
                let rel = Arc::new(parse_relation_line(rest, line_no)?);
                if doc.relations.iter().any(|r| r.name() == rel.name()) {
                    return Err(Error::parse(line_no, format!("relation {} declared twice", rel.name())));
                }
                vocab.define(rel.clone()).map_err(|e| Error::parse(line_no, e.to_string()))?;
                doc.relations.push(rel);
            } else if let Some(rest) = line.strip_prefix("use ") {
                for name in rest.split(',').map(str::trim) {
                    let rel = BooleanRelation::builtin(name)
                        .ok_or_else(|| Error::parse(line_no, format!("{name:?} is not a built-in relation")))?;
                    if doc.relations.iter().any(|r| r.name() == name) {
                        return Err(Error::parse(line_no, format!("relation {name} declared twice")));
                    }
                    doc.relations.push(Arc::new(rel));
                }
            } else {
                doc.formulas.push(parse_formula_at(line, &vocab, line_no)?);
            }
        }
        Ok(doc)
    }

    /// An instance document declaring every non-built-in relation it uses.
    pub fn instance(kb: &KnowledgeBase, claim: &GammaFormula, psi: Option<&GammaFormula>) -> Document {
        let mut doc = Document {
            header: Vec::new(),
            relations: Vec::new(),
            formulas: kb.formulas().to_vec(),
            claim: Some(claim.clone()),
            psi: psi.cloned(),
        };
        let all = kb.iter().chain(std::iter::once(claim)).chain(psi);
        for f in all {
            for r in f.relations() {
                if !BooleanRelation::is_reserved_name(r.name())
                    && !doc.relations.iter().any(|q| q.name() == r.name())
                {
                    doc.relations.push(r);
                }
            }
        }
        doc
    }

    /// A language document listing every relation of `lang`.
    pub fn language(lang: &ConstraintLanguage) -> Document {
        Document {
            relations: lang.relations().to_vec(),
            ..Document::default()
        }
    }

    pub fn knowledge_base(&self) -> KnowledgeBase {
        KnowledgeBase::new(self.formulas.iter().cloned())
    }

    /// The declared relations as a language; errors when none are declared.
    pub fn declared_language(&self) -> Result<ConstraintLanguage> {
        ConstraintLanguage::new(self.relations.iter().cloned())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(&format!("# {h}\n"));
        }
        let builtins: Vec<&str> = self
            .relations
            .iter()
            .filter(|r| BooleanRelation::is_reserved_name(r.name()))
            .map(|r| r.name())
            .collect();
        if !builtins.is_empty() {
            out.push_str(&format!("use {}\n", builtins.join(",")));
        }
        for r in self.relations.iter().filter(|r| !BooleanRelation::is_reserved_name(r.name())) {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        for f in &self.formulas {
            out.push_str(&format!("{f}\n"));
        }
        if let Some(c) = &self.claim {
            out.push_str(&format!("claim: {c}\n"));
        }
        if let Some(p) = &self.psi {
            out.push_str(&format!("rel: {p}\n"));
        }
        out
    }
}
