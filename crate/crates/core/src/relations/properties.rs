//! Closure-based tests for the relation classes that drive classification.
//!
//! Each class is recognised through a polymorphism: a coordinate-wise
//! operation under which the relation must be closed. Positivity and
//! negativity are monotonicity tests (a nontrivial relation has a positive CNF
//! definition iff it is upward closed).

use super::{ConstraintLanguage, Relation};

/// Algebraic flags of a relation or a constraint language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PropertyReport {
    pub horn: bool,
    pub dual_horn: bool,
    pub bijunctive: bool,
    pub affine: bool,
    pub zero_valid: bool,
    pub one_valid: bool,
    pub eps_valid: bool,
    pub complementive: bool,
    pub positive: bool,
    pub negative: bool,
    pub in_is0: bool,
    pub in_is1: bool,
    pub schaefer: bool,
}

impl PropertyReport {
    pub fn of_relation(r: &Relation) -> Self {
        let tuples: Vec<u32> = r.tuples().collect();
        let full = r.full_tuple();
        let k = r.arity();

        let closed2 = |op: &dyn Fn(u32, u32) -> u32, symmetric: bool| {
            tuples.iter().enumerate().all(|(i, &a)| {
                let rest = if symmetric { &tuples[i..] } else { &tuples[..] };
                rest.iter().all(|&b| r.contains(op(a, b) & full))
            })
        };
        let closed3 = |op: &dyn Fn(u32, u32, u32) -> u32| {
            let n = tuples.len();
            (0..n).all(|i| {
                (i..n).all(|j| {
                    (j..n).all(|l| r.contains(op(tuples[i], tuples[j], tuples[l]) & full))
                })
            })
        };

        let horn = closed2(&|a, b| a & b, true);
        let dual_horn = closed2(&|a, b| a | b, true);
        let bijunctive = closed3(&|a, b, c| (a & b) | (b & c) | (a & c));
        let affine = closed3(&|a, b, c| a ^ b ^ c);
        let positive = tuples
            .iter()
            .all(|&t| (0..k).all(|i| r.contains(t | (1 << i))));
        let negative = tuples
            .iter()
            .all(|&t| (0..k).all(|i| r.contains(t & !(1 << i))));

        PropertyReport {
            horn,
            dual_horn,
            bijunctive,
            affine,
            zero_valid: r.contains(0),
            one_valid: r.contains(full),
            eps_valid: false,
            complementive: tuples.iter().all(|&t| r.contains(t ^ full)),
            positive,
            negative,
            in_is0: closed2(&|a, b| !a | b, false),
            in_is1: closed2(&|a, b| a & !b, false),
            schaefer: false,
        }
        .with_derived_flags()
    }

    /// Per-relation conjunction of every flag; `eps_valid` and `schaefer`
    /// are then derived from the conjoined flags.
    pub fn of_language(language: &ConstraintLanguage) -> Self {
        let mut acc = PropertyReport {
            horn: true,
            dual_horn: true,
            bijunctive: true,
            affine: true,
            zero_valid: true,
            one_valid: true,
            eps_valid: true,
            complementive: true,
            positive: true,
            negative: true,
            in_is0: true,
            in_is1: true,
            schaefer: true,
        };
        for r in language.relations() {
            let p = r.properties();
            acc.horn &= p.horn;
            acc.dual_horn &= p.dual_horn;
            acc.bijunctive &= p.bijunctive;
            acc.affine &= p.affine;
            acc.zero_valid &= p.zero_valid;
            acc.one_valid &= p.one_valid;
            acc.complementive &= p.complementive;
            acc.positive &= p.positive;
            acc.negative &= p.negative;
            acc.in_is0 &= p.in_is0;
            acc.in_is1 &= p.in_is1;
        }
        acc.with_derived_flags()
    }

    /// Recomputes `eps_valid` and `schaefer` from the primary flags.
    pub fn with_derived_flags(mut self) -> Self {
        self.eps_valid = self.zero_valid || self.one_valid;
        self.schaefer = self.horn || self.dual_horn || self.bijunctive || self.affine;
        self
    }

    /// `(name, value)` pairs in a fixed order, for reporting.
    pub fn flags(&self) -> [(&'static str, bool); 13] {
        [
            ("horn", self.horn),
            ("dual_horn", self.dual_horn),
            ("bijunctive", self.bijunctive),
            ("affine", self.affine),
            ("zero_valid", self.zero_valid),
            ("one_valid", self.one_valid),
            ("eps_valid", self.eps_valid),
            ("complementive", self.complementive),
            ("positive", self.positive),
            ("negative", self.negative),
            ("in_is0", self.in_is0),
            ("in_is1", self.in_is1),
            ("schaefer", self.schaefer),
        ]
    }
}
