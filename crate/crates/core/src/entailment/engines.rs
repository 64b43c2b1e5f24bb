//! Polynomial satisfiability engines for the Schaefer classes, and brute force.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::relations::{Clause, Equation};

/// Literal `2v` is `v`, literal `2v + 1` is `~v`.
pub(crate) type Lit = u32;

pub(crate) fn lit(var: usize, positive: bool) -> Lit {
    (2 * var + usize::from(!positive)) as Lit
}

fn var_of(l: Lit) -> usize {
    (l / 2) as usize
}

fn is_pos(l: Lit) -> bool {
    l.is_multiple_of(2)
}

/// Ground clauses over variables `0..n`.
#[derive(Clone, Debug, Default)]
pub(crate) struct ClauseDb {
    pub n: usize,
    pub clauses: Vec<Vec<Lit>>,
    /// Set once an empty clause has been added.
    pub contradiction: bool,
}

impl ClauseDb {
    pub fn new(n: usize) -> Self {
        ClauseDb {
            n,
            ..ClauseDb::default()
        }
    }

    /// Adds a clause, dropping repeated literals and tautologies.
    pub fn add(&mut self, mut lits: Vec<Lit>) {
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] / 2 == w[1] / 2) {
            return;
        }
        if lits.is_empty() {
            self.contradiction = true;
        }
        self.clauses.push(lits);
    }

    /// Instantiates a coordinate clause with the variables in `args`.
    pub fn add_instance(&mut self, clause: &Clause, args: &[usize]) {
        let lits = args
            .iter()
            .enumerate()
            .filter_map(|(j, &v)| {
                if clause.pos >> j & 1 == 1 {
                    Some(lit(v, true))
                } else if clause.neg >> j & 1 == 1 {
                    Some(lit(v, false))
                } else {
                    None
                }
            })
            .collect();
        self.add(lits);
    }

    fn flipped(&self) -> ClauseDb {
        ClauseDb {
            n: self.n,
            clauses: self
                .clauses
                .iter()
                .map(|c| c.iter().map(|l| l ^ 1).collect())
                .collect(),
            contradiction: self.contradiction,
        }
    }
}

/// Minimal model of a Horn clause set by unit propagation.
pub(crate) fn horn_minimal_model(db: &ClauseDb) -> Option<Vec<bool>> {
    if db.contradiction {
        return None;
    }
    debug_assert!(db.clauses.iter().all(|c| c.iter().filter(|l| is_pos(**l)).count() <= 1));
    let mut value = vec![false; db.n];
    // Number of negative literals whose variable is not yet true.
    let mut pending: Vec<usize> = Vec::with_capacity(db.clauses.len());
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); db.n];
    let mut queue: Vec<usize> = Vec::new();
    for (ci, c) in db.clauses.iter().enumerate() {
        let negs = c.iter().filter(|l| !is_pos(**l)).count();
        pending.push(negs);
        for &l in c.iter().filter(|l| !is_pos(**l)) {
            watchers[var_of(l)].push(ci);
        }
        if negs == 0 {
            queue.push(ci);
        }
    }
    while let Some(ci) = queue.pop() {
        match db.clauses[ci].iter().find(|l| is_pos(**l)) {
            None => return None,
            Some(&head) => {
                let v = var_of(head);
                if value[v] {
                    continue;
                }
                value[v] = true;
                for &w in &watchers[v] {
                    pending[w] -= 1;
                    if pending[w] == 0 {
                        queue.push(w);
                    }
                }
            }
        }
    }
    Some(value)
}

/// Maximal model of a dual-Horn clause set.
pub(crate) fn dual_horn_maximal_model(db: &ClauseDb) -> Option<Vec<bool>> {
    horn_minimal_model(&db.flipped()).map(|m| m.into_iter().map(|b| !b).collect())
}

/// 2-SAT through strongly connected components of the implication graph.
pub(crate) fn two_sat(db: &ClauseDb) -> Option<Vec<bool>> {
    if db.contradiction {
        return None;
    }
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(2 * db.n, 2 * db.clauses.len());
    for _ in 0..2 * db.n {
        g.add_node(());
    }
    let node = |l: Lit| NodeIndex::new(l as usize);
    for c in &db.clauses {
        match *c.as_slice() {
            [a] => {
                g.add_edge(node(a ^ 1), node(a), ());
            }
            [a, b] => {
                g.add_edge(node(a ^ 1), node(b), ());
                g.add_edge(node(b ^ 1), node(a), ());
            }
            _ => unreachable!("clause with more than two literals in a 2-SAT instance"),
        }
    }
    // Tarjan lists components in reverse topological order.
    let mut comp = vec![0usize; 2 * db.n];
    for (i, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for v in scc {
            comp[v.index()] = i;
        }
    }
    (0..db.n)
        .map(|v| {
            let (p, n) = (comp[lit(v, true) as usize], comp[lit(v, false) as usize]);
            (p != n).then_some(p < n)
        })
        .collect()
}

/// A GF(2) equation over variables `0..n`: XOR of the set bits equals `rhs`.
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub bits: Vec<u64>,
    pub rhs: bool,
}

impl Row {
    pub fn zero(n: usize) -> Self {
        Row {
            bits: vec![0; n.div_ceil(64).max(1)],
            rhs: false,
        }
    }

    pub fn toggle(&mut self, v: usize) {
        self.bits[v / 64] ^= 1 << (v % 64);
    }

    fn get(&self, v: usize) -> bool {
        self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    fn xor_assign(&mut self, other: &Row) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= *b;
        }
        self.rhs ^= other.rhs;
    }

    pub fn instance(n: usize, eq: &Equation, args: &[usize]) -> Self {
        let mut row = Row::zero(n);
        for (j, &v) in args.iter().enumerate() {
            if eq.vars >> j & 1 == 1 {
                row.toggle(v);
            }
        }
        row.rhs = eq.rhs;
        row
    }
}

/// Gauss-Jordan elimination; free variables are set to 0.
pub(crate) fn gauss_jordan(n: usize, mut rows: Vec<Row>) -> Option<Vec<bool>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|row| row.rhs) {
        return None;
    }
    let mut value = vec![false; n];
    for (row, col) in pivots {
        value[col] = rows[row].rhs;
    }
    Some(value)
}
