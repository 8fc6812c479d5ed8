//! Clause and linear-equation views of a relation, over its coordinates.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relations::{tuple_bit, Relation};

/// A literal over coordinate `var` (0-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn negated(self) -> Literal {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    fn sort_key(&self) -> (usize, bool) {
        (self.var, !self.positive)
    }
}

/// A disjunction of literals over distinct coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause(pub Vec<Literal>);

impl Clause {
    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn positives(&self) -> usize {
        self.0.iter().filter(|l| l.positive).count()
    }

    /// Whether the clause holds on `tuple` of the given arity.
    pub fn holds(&self, tuple: u32, arity: usize) -> bool {
        self.0
            .iter()
            .any(|l| tuple_bit(tuple, l.var, arity) == l.positive)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if !l.positive {
                f.write_str("!")?;
            }
            write!(f, "x{}", l.var + 1)?;
        }
        f.write_str(")")
    }
}

/// Prime implicates of `r`, shortest first, then by literal list.
///
/// Computed as the maximal cubes of non-members (prime implicants of `¬R`):
/// a cube `(mask, val)` of fixed coordinates yields the clause falsified
/// exactly on it.
pub fn cnf_of(r: &Relation) -> Vec<Clause> {
    let k = r.arity();
    let full = r.full_tuple();
    // cubes as (fixed-coordinate mask, values on the mask)
    let mut level: HashSet<(u32, u32)> = r.non_members().map(|t| (full, t)).collect();
    let mut primes: Vec<(u32, u32)> = Vec::new();
    while !level.is_empty() {
        let mut next: HashSet<(u32, u32)> = HashSet::new();
        let mut merged: HashSet<(u32, u32)> = HashSet::new();
        for &(mask, val) in &level {
            let mut m = mask;
            while m != 0 {
                let bit = m & m.wrapping_neg();
                m &= m - 1;
                let partner = (mask, val ^ bit);
                if level.contains(&partner) {
                    merged.insert((mask, val));
                    next.insert((mask & !bit, val & !bit));
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged.contains(c)).copied());
        level = next;
    }
    let mut clauses: Vec<Clause> = primes
        .into_iter()
        .map(|(mask, val)| {
            Clause(
                (0..k)
                    .filter(|&i| tuple_bit(mask, i, k))
                    .map(|i| Literal {
                        var: i,
                        positive: !tuple_bit(val, i, k),
                    })
                    .collect(),
            )
        })
        .collect();
    clauses.sort_by_key(|c| {
        (
            c.0.len(),
            c.0.iter().map(Literal::sort_key).collect::<Vec<_>>(),
        )
    });
    clauses
}

/// The positive CNF of an upward-closed relation: one clause
/// `{x_i : m_i = 0}` per maximal non-member `m`.
pub fn positive_cnf_of(r: &Relation) -> Result<Vec<Clause>> {
    if !r.properties().positive {
        return Err(Error::Precondition(format!(
            "relation `{}` is not positive",
            r.name()
        )));
    }
    let k = r.arity();
    let mut non: Vec<u32> = r.non_members().collect();
    non.reverse();
    Ok(non
        .into_iter()
        .filter(|&m| (0..k).all(|i| tuple_bit(m, i, k) || r.contains(m | (1 << (k - 1 - i)))))
        .map(|m| {
            Clause(
                (0..k)
                    .filter(|&i| !tuple_bit(m, i, k))
                    .map(|i| Literal {
                        var: i,
                        positive: true,
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Linear equations `w·x = b` over GF(2) whose solution set is `r`, as
/// `(w, b)` with `w` in tuple encoding; `None` unless `r` is affine.
pub fn affine_equations(r: &Relation) -> Option<Vec<(u32, bool)>> {
    if !r.properties().affine {
        return None;
    }
    let k = r.arity();
    let m0 = r.tuples().next().expect("nonempty");
    // reduced basis of the direction space L = {m ⊕ m0}
    let mut basis: Vec<u32> = Vec::new();
    for t in r.tuples() {
        let mut v = t ^ m0;
        for &b in &basis {
            let top = 31 - b.leading_zeros();
            if (v >> top) & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let top = 31 - v.leading_zeros();
            for b in basis.iter_mut() {
                if (*b >> top) & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    // L^⊥: free coordinates are those not pivots of the reduced basis
    let pivots: Vec<u32> = basis.iter().map(|b| 31 - b.leading_zeros()).collect();
    let mut eqs = Vec::new();
    for j in 0..k as u32 {
        if pivots.contains(&j) {
            continue;
        }
        let mut w = 1u32 << j;
        for (b, &p) in basis.iter().zip(&pivots) {
            if (b >> j) & 1 == 1 {
                w |= 1 << p;
            }
        }
        eqs.push((w, (w & m0).count_ones() % 2 == 1));
    }
    Some(eqs)
}
