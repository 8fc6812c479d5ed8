//! Extensional Boolean relations and constraint languages.
//!
//! A tuple of a `k`-ary relation is encoded as a `u32` whose most significant
//! of the `k` low bits holds the first coordinate, so numeric order on tuples
//! is the lexicographic order of their `0`/`1` strings.

pub mod catalog;
mod properties;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use properties::PropertyReport;
pub use text::{parse_language, serialize_language};

/// Largest supported relation arity.
pub const MAX_ARITY: usize = 16;

/// Value of coordinate `pos` (0-based, first coordinate = most significant) of `tuple`.
#[inline]
pub fn tuple_bit(tuple: u32, pos: usize, arity: usize) -> bool {
    (tuple >> (arity - 1 - pos)) & 1 == 1
}

/// Builds a tuple from coordinate values, first value most significant.
pub fn tuple_from_bits(bits: impl IntoIterator<Item = bool>) -> u32 {
    bits.into_iter().fold(0, |acc, b| (acc << 1) | u32::from(b))
}

/// Renders a tuple as a string of `0`/`1` characters.
pub fn format_tuple(tuple: u32, arity: usize) -> String {
    (0..arity)
        .map(|i| if tuple_bit(tuple, i, arity) { '1' } else { '0' })
        .collect()
}

/// Whether `s` matches `[a-zA-Z_][a-zA-Z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A nontrivial `k`-ary Boolean relation given by its set of tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    name: String,
    arity: usize,
    members: Vec<u64>,
    len: usize,
}

impl Relation {
    /// Creates a relation from its tuples. Duplicates are ignored.
    ///
    /// Fails if the arity is outside `1..=MAX_ARITY`, a tuple does not fit the
    /// arity, or the resulting relation is empty or full.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = u32>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidRelation {
            name: name.clone(),
            reason,
        };
        if arity == 0 || arity > MAX_ARITY {
            return Err(invalid(format!("arity {arity} outside 1..={MAX_ARITY}")));
        }
        let size = 1usize << arity;
        let mut members = vec![0u64; size.div_ceil(64)];
        for t in tuples {
            if (t as usize) >= size {
                return Err(invalid(format!("tuple {t} does not fit arity {arity}")));
            }
            members[t as usize / 64] |= 1 << (t % 64);
        }
        let len = members.iter().map(|w| w.count_ones() as usize).sum();
        if len == 0 {
            return Err(invalid("relation is empty".into()));
        }
        if len == size {
            return Err(invalid("relation contains every tuple".into()));
        }
        Ok(Relation {
            name,
            arity,
            members,
            len,
        })
    }

    /// Creates the relation `{t : pred(t)}`.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        pred: impl Fn(u32) -> bool,
    ) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Relation::new(name, arity, []);
        }
        Relation::new(name, arity, (0..1u32 << arity).filter(|&t| pred(t)))
    }

    /// Creates a relation from `0`/`1` strings, first coordinate first.
    pub fn from_strs<'a>(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let name = name.into();
        let mut parsed = Vec::new();
        for s in tuples {
            if s.len() != arity || !s.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::InvalidRelation {
                    name,
                    reason: format!("`{s}` is not a {arity}-bit tuple"),
                });
            }
            parsed.push(tuple_from_bits(s.chars().map(|c| c == '1')));
        }
        Relation::new(name, arity, parsed)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of tuples.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: relations are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The all-ones tuple `1^k`.
    pub fn full_tuple(&self) -> u32 {
        ((1u64 << self.arity) - 1) as u32
    }

    #[inline]
    pub fn contains(&self, tuple: u32) -> bool {
        let t = tuple as usize;
        t < (1usize << self.arity) && (self.members[t / 64] >> (t % 64)) & 1 == 1
    }

    /// Tuples in canonical (ascending) order.
    pub fn tuples(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.arity).filter(move |&t| self.contains(t))
    }

    /// Assignments of `{0,1}^k` outside the relation, in canonical order.
    pub fn non_members(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.arity).filter(move |&t| !self.contains(t))
    }

    /// The same tuple set under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Relation {
        Relation {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Set complement `{0,1}^k \ R`, i.e. the relation of `¬R(x)`.
    pub fn negation(&self, name: impl Into<String>) -> Relation {
        Relation::new(name, self.arity, self.non_members())
            .expect("complement of a nontrivial relation is nontrivial")
    }

    /// Coordinate-wise dual `{m̄ : m ∈ R}`.
    pub fn dual(&self, name: impl Into<String>) -> Relation {
        let full = self.full_tuple();
        Relation::new(name, self.arity, self.tuples().map(|t| t ^ full))
            .expect("dual of a nontrivial relation is nontrivial")
    }

    /// Extensional equality, ignoring names.
    pub fn same_tuples(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.members == other.members
    }

    pub fn properties(&self) -> PropertyReport {
        PropertyReport::of_relation(self)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders the relation-file declaration `relation NAME k { t1 t2 ... }`.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {} {} {{", self.name, self.arity)?;
        for t in self.tuples() {
            write!(f, " {}", format_tuple(t, self.arity))?;
        }
        write!(f, " }}")
    }
}

/// A finite, nonempty set of relations with unique names.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ConstraintLanguage {
    relations: BTreeMap<String, Arc<Relation>>,
}

impl ConstraintLanguage {
    pub fn new(relations: impl IntoIterator<Item = Relation>) -> Result<Self> {
        Self::from_shared(relations.into_iter().map(Arc::new))
    }

    pub fn from_shared(relations: impl IntoIterator<Item = Arc<Relation>>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for r in relations {
            if !is_identifier(r.name()) {
                return Err(Error::InvalidLanguage(format!(
                    "`{}` is not a valid relation name",
                    r.name()
                )));
            }
            if map.insert(r.name().to_string(), r.clone()).is_some() {
                return Err(Error::InvalidLanguage(format!(
                    "duplicate relation name `{}`",
                    r.name()
                )));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidLanguage("no relations".into()));
        }
        Ok(ConstraintLanguage { relations: map })
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Relation>> {
        self.relations.get(name)
    }

    /// Whether `relation` is a member (same name and same tuples).
    pub fn contains(&self, relation: &Relation) -> bool {
        self.get(relation.name())
            .is_some_and(|r| r.as_ref() == relation)
    }

    /// Relations in canonical (name) order.
    pub fn relations(&self) -> impl Iterator<Item = &Arc<Relation>> {
        self.relations.values()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn properties(&self) -> PropertyReport {
        PropertyReport::of_language(self)
    }

    /// The union of two languages; relations present in both must agree.
    pub fn union(&self, other: &ConstraintLanguage) -> Result<ConstraintLanguage> {
        let mut map = self.relations.clone();
        for (name, r) in &other.relations {
            match map.get(name) {
                Some(existing) if existing != r => {
                    return Err(Error::InvalidLanguage(format!(
                        "relation `{name}` declared twice with different tuples"
                    )))
                }
                _ => {
                    map.insert(name.clone(), r.clone());
                }
            }
        }
        Ok(ConstraintLanguage { relations: map })
    }
}

impl fmt::Debug for ConstraintLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.relations.values()).finish()
    }
}
