//! Polynomial satisfiability engines for the Schaefer fragments.
//!
//! Clauses here range over network variable indices, contain each variable
//! at most once and are never tautological.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::cnf::Literal;

/// Unit propagation from the all-false assignment; clauses have at most one
/// positive literal.
pub(crate) fn horn_sat(n: usize, clauses: &[Vec<Literal>]) -> bool {
    let mut value = vec![false; n];
    let mut missing: Vec<usize> = Vec::with_capacity(clauses.len());
    let mut head: Vec<Option<usize>> = Vec::with_capacity(clauses.len());
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue: Vec<usize> = Vec::new();
    for (ci, c) in clauses.iter().enumerate() {
        debug_assert!(c.iter().filter(|l| l.positive).count() <= 1);
        let negs = c.iter().filter(|l| !l.positive).count();
        for l in c.iter().filter(|l| !l.positive) {
            watchers[l.var].push(ci);
        }
        missing.push(negs);
        head.push(c.iter().find(|l| l.positive).map(|l| l.var));
        if negs == 0 {
            queue.push(ci);
        }
    }
    let mut forced: Vec<usize> = Vec::new();
    loop {
        while let Some(ci) = queue.pop() {
            match head[ci] {
                None => return false,
                Some(h) if !value[h] => {
                    value[h] = true;
                    forced.push(h);
                }
                Some(_) => {}
            }
        }
        let Some(v) = forced.pop() else {
            return true;
        };
        for &ci in &watchers[v] {
            missing[ci] -= 1;
            if missing[ci] == 0 {
                queue.push(ci);
            }
        }
    }
}

/// Clauses of width at most two, via strongly connected components of the
/// implication graph.
pub(crate) fn two_sat(n: usize, clauses: &[Vec<Literal>]) -> bool {
    let node = |l: Literal| NodeIndex::new(2 * l.var + usize::from(!l.positive));
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(2 * n, 2 * clauses.len());
    for _ in 0..2 * n {
        g.add_node(());
    }
    for c in clauses {
        match c.as_slice() {
            [] => return false,
            [a] => {
                g.add_edge(node(a.negated()), node(*a), ());
            }
            [a, b] => {
                g.add_edge(node(a.negated()), node(*b), ());
                g.add_edge(node(b.negated()), node(*a), ());
            }
            _ => unreachable!("clause wider than two"),
        }
    }
    let mut component = vec![0usize; 2 * n];
    for (i, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for v in scc {
            component[v.index()] = i;
        }
    }
    (0..n).all(|v| component[2 * v] != component[2 * v + 1])
}

/// A GF(2) equation: the variables whose bits are set sum to `rhs`.
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

    pub fn toggle(&mut self, var: usize) {
        self.bits[var / 64] ^= 1 << (var % 64);
    }

    fn lowest(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn has(&self, var: usize) -> bool {
        (self.bits[var / 64] >> (var % 64)) & 1 == 1
    }

    fn add(&mut self, other: &Row) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }
}

/// Gaussian elimination; false iff the system derives `0 = 1`.
pub(crate) fn xor_sat(rows: Vec<Row>) -> bool {
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for mut row in rows {
        for (p, prow) in &pivots {
            if row.has(*p) {
                row.add(prow);
            }
        }
        match row.lowest() {
            None if row.rhs => return false,
            None => {}
            Some(p) => {
                for (_, prow) in pivots.iter_mut() {
                    if prow.has(p) {
                        prow.add(&row);
                    }
                }
                pivots.push((p, row));
            }
        }
    }
    true
}
