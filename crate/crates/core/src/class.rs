//! Permutation classes given by a finite basis.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::perm::{occurs_in, Permutation, Symmetry};

/// The class `Av(basis)`: permutations containing no basis element.
///
/// The basis is kept sorted by length then lexicographically, and is always an
/// antichain. An empty basis is the class of all permutations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSpec {
    basis: Vec<Permutation>,
}

impl ClassSpec {
    /// Builds `Av(basis)`. Non-minimal basis elements are dropped with a
    /// warning. The empty permutation is rejected, since it belongs to every
    /// class.
    pub fn new(basis: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut sorted: Vec<Permutation> = basis.into_iter().collect();
        if sorted.iter().any(Permutation::is_empty) {
            return Err(Error::Input(
                "the empty permutation cannot be a basis element".into(),
            ));
        }
        sorted.sort();
        sorted.dedup();
        let mut minimal: Vec<Permutation> = Vec::with_capacity(sorted.len());
        for b in sorted {
            if let Some(smaller) = minimal.iter().find(|m| b.contains(m)) {
                log::warn!("dropping basis element {b}: it contains {smaller}");
                continue;
            }
            minimal.push(b);
        }
        Ok(ClassSpec { basis: minimal })
    }

    fn single(ranks: &[u8]) -> Self {
        ClassSpec {
            basis: vec![Permutation::from_vec_unchecked(ranks.to_vec())],
        }
    }

    /// `Av(21)`.
    pub fn inc() -> Self {
        Self::single(&[2, 1])
    }

    /// `Av(12)`.
    pub fn dec() -> Self {
        Self::single(&[1, 2])
    }

    /// `Av(1)`: only the empty permutation.
    pub fn empty() -> Self {
        Self::single(&[1])
    }

    pub fn all() -> Self {
        ClassSpec { basis: Vec::new() }
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn is_monotone(&self) -> bool {
        *self == Self::inc() || *self == Self::dec()
    }

    /// Membership of a permutation.
    pub fn contains(&self, p: &Permutation) -> bool {
        self.admits(p.ranks())
    }

    /// Membership of the pattern formed by an arbitrary sequence of distinct
    /// values.
    pub fn admits(&self, values: &[u8]) -> bool {
        !self.basis.iter().any(|b| occurs_in(b.ranks(), values))
    }

    /// The image of the class under a symmetry.
    pub fn apply(&self, sym: Symmetry) -> ClassSpec {
        let mut basis: Vec<Permutation> = self.basis.iter().map(|b| b.apply(sym)).collect();
        basis.sort();
        ClassSpec { basis }
    }
}

/// `member_av(c, p)`.
pub fn member_av(class: &ClassSpec, p: &Permutation) -> bool {
    class.contains(p)
}

/// Renders in the class DSL, using the shorthands where they apply.
impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return f.write_str("all");
        }
        if *self == Self::inc() {
            return f.write_str("inc");
        }
        if *self == Self::dec() {
            return f.write_str("dec");
        }
        if *self == Self::empty() {
            return f.write_str("empty");
        }
        f.write_str("Av(")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if b.len() <= 9 {
                write!(f, "{b}")?;
            } else {
                write!(f, "[{b}]")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassSpec({self})")
    }
}

impl FromStr for ClassSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        crate::dsl::parse_class(s)
    }
}
