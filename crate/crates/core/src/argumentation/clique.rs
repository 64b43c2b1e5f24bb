//! ARG for languages whose formulas are conjunctions of literals, through
//! cliques in a graph of pairwise consistent candidate terms.

use std::collections::BTreeMap;

use super::{check_kb_size, ArgVerdict, Certificate};
use crate::error::{Error, Result};
use crate::formulas::{GammaFormula, KnowledgeBase, Var};
use crate::relations::UnitForm;

const MAX_NODES: usize = 1 << 12;
const MAX_CLIQUE: usize = 64;

/// A conjunction of literals over variables `0..64`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u64,
    pub neg: u64,
}

impl Term {
    pub fn is_consistent(self) -> bool {
        self.pos & self.neg == 0
    }

    pub fn and(self, other: Term) -> Term {
        Term {
            pos: self.pos | other.pos,
            neg: self.neg | other.neg,
        }
    }

    /// Literals as `(variable, polarity)`, by variable then positive first.
    pub fn literals(self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        let mut rest = self.pos | self.neg;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.pos >> v & 1 == 1 {
                out.push((v, true));
            }
            if self.neg >> v & 1 == 1 {
                out.push((v, false));
            }
        }
        out
    }

    fn has(self, (v, positive): (usize, bool)) -> bool {
        let set = if positive { self.pos } else { self.neg };
        set >> v & 1 == 1
    }
}

/// The term a formula denotes, numbering variables through `index`; `None`
/// when some relation is not a conjunction of literals.
pub fn formula_term(phi: &GammaFormula, index: &mut BTreeMap<Var, usize>) -> Result<Option<Term>> {
    let mut term = Term::default();
    for c in phi.constraints() {
        let mut ids = Vec::with_capacity(c.args().len());
        for v in c.args() {
            let next = index.len();
            let id = *index.entry(v.clone()).or_insert(next);
            if id >= 64 {
                return Err(Error::Capacity("term engine handles at most 64 variables".into()));
            }
            ids.push(id);
        }
        match c.relation().representations().units {
            UnitForm::Term { pos, neg } => {
                for (j, &id) in ids.iter().enumerate() {
                    if pos >> j & 1 == 1 {
                        term.pos |= 1 << id;
                    }
                    if neg >> j & 1 == 1 {
                        term.neg |= 1 << id;
                    }
                }
            }
            // The empty relation behaves as x ∧ ¬x.
            UnitForm::Contradiction => {
                term.pos |= 1 << ids[0];
                term.neg |= 1 << ids[0];
            }
            UnitForm::NotATerm => return Ok(None),
        }
    }
    Ok(Some(term))
}

/// Nodes are pairs (term, claim literal); edges join pairwise consistent
/// terms attached to different literals.
#[derive(Clone, Debug)]
pub struct SupportGraph {
    /// `(term position, literal index)`.
    pub nodes: Vec<(usize, usize)>,
    words: usize,
    adj: Vec<u64>,
}

impl SupportGraph {
    /// A graph from explicit nodes and an edge predicate.
    pub fn new(nodes: Vec<(usize, usize)>, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if nodes.len() > MAX_NODES {
            return Err(Error::Capacity(format!("support graph exceeds {MAX_NODES} nodes")));
        }
        let words = nodes.len().div_ceil(64).max(1);
        let mut adj = vec![0u64; words * nodes.len()];
        for u in 0..nodes.len() {
            for v in u + 1..nodes.len() {
                if edge(u, v) {
                    adj[u * words + v / 64] |= 1 << (v % 64);
                    adj[v * words + u / 64] |= 1 << (u % 64);
                }
            }
        }
        Ok(SupportGraph { nodes, words, adj })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.nodes.len();
        (0..n).flat_map(move |u| (u + 1..n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }
}

fn extend(g: &SupportGraph, k: usize, clique: &mut Vec<usize>, mut cand: Vec<u64>) -> bool {
    if clique.len() == k {
        return true;
    }
    let mut left: usize = cand.iter().map(|w| w.count_ones() as usize).sum();
    for wi in 0..g.words {
        while cand[wi] != 0 {
            if clique.len() + left < k {
                return false;
            }
            let v = wi * 64 + cand[wi].trailing_zeros() as usize;
            cand[wi] &= cand[wi] - 1;
            left -= 1;
            let next: Vec<u64> = cand.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
            clique.push(v);
            if extend(g, k, clique, next) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// A clique of `k` nodes, searched by backtracking over nodes in index order
/// with a candidate-count bound.
pub fn find_clique(g: &SupportGraph, k: usize) -> Result<Option<Vec<usize>>> {
    if k > MAX_CLIQUE {
        return Err(Error::Capacity(format!("clique size {k} exceeds {MAX_CLIQUE}")));
    }
    let n = g.nodes.len();
    let mut cand = vec![0u64; g.words];
    for v in 0..n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut clique = Vec::new();
    Ok(extend(g, k, &mut clique, cand).then_some(clique))
}

/// Builds the support graph, or `None` when some claim literal has no candidate term.
pub fn support_graph(terms: &[Term], claim: Term) -> Result<Option<SupportGraph>> {
    let lits = claim.literals();
    let mut excluded = 0u64;
    for (j, t) in terms.iter().enumerate() {
        if !t.is_consistent() || lits.iter().any(|&(v, p)| t.has((v, !p))) {
            excluded |= 1 << j;
        }
    }
    let mut nodes = Vec::new();
    for (i, &lit) in lits.iter().enumerate() {
        let before = nodes.len();
        nodes.extend(
            terms
                .iter()
                .enumerate()
                .filter(|&(j, t)| excluded >> j & 1 == 0 && t.has(lit))
                .map(|(j, _)| (j, i)),
        );
        if nodes.len() == before {
            return Ok(None);
        }
    }
    let graph = SupportGraph::new(nodes.clone(), |u, v| {
        let ((a, i), (b, j)) = (nodes[u], nodes[v]);
        i != j && terms[a].and(terms[b]).is_consistent()
    })?;
    Ok(Some(graph))
}

/// Positions of a support for `claim` among `terms`, if one exists.
pub fn decide_terms(terms: &[Term], claim: Term) -> Result<Option<Vec<usize>>> {
    if terms.len() > 64 {
        return Err(Error::Capacity("term engine handles at most 64 formulas".into()));
    }
    if !claim.is_consistent() {
        return Ok(None);
    }
    let k = claim.literals().len();
    let Some(graph) = support_graph(terms, claim)? else {
        return Ok(None);
    };
    Ok(find_clique(&graph, k)?.map(|c| {
        let mut support: Vec<usize> = c.iter().map(|&u| graph.nodes[u].0).collect();
        support.sort_unstable();
        support.dedup();
        support
    }))
}

fn covers(terms: &[Term], support: &[usize], claim: Term) -> bool {
    let t = support.iter().fold(Term::default(), |acc, &i| acc.and(terms[i]));
    t.pos & claim.pos == claim.pos && t.neg & claim.neg == claim.neg
}

/// ARG for knowledge bases and claims made of conjunctions of literals.
pub fn arg_via_clique(delta: &KnowledgeBase, alpha: &GammaFormula) -> Result<ArgVerdict> {
    check_kb_size(delta.len())?;
    let mut index = BTreeMap::new();
    let not_term = || Error::Dispatch("the clique engine needs formulas that are conjunctions of literals".into());
    let claim = formula_term(alpha, &mut index)?.ok_or_else(not_term)?;
    let terms = delta
        .iter()
        .map(|f| formula_term(f, &mut index)?.ok_or_else(not_term))
        .collect::<Result<Vec<_>>>()?;
    Ok(match decide_terms(&terms, claim)? {
        None => ArgVerdict::no(Certificate::Clique),
        Some(support) => {
            let support = super::minimize(support, |s| Ok(covers(&terms, s, claim)))?;
            ArgVerdict::yes(support, Certificate::Clique)
        }
    })
}
