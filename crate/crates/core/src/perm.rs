//! Permutations in one-line notation and the pattern-containment order.
//!
//! A [`Permutation`] of length `n` stores the ranks `1..=n` in position order.
//! The empty permutation is valid and is rendered as `e`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

/// Default upper bound on exhaustive generation lengths.
pub const DEFAULT_HARD_CAP: usize = 12;

/// Longest permutation the library will store.
pub const MAX_PERM_LEN: usize = u8::MAX as usize;

/// Longest permutation that fits the packed `u64` key (4 bits per rank).
pub(crate) const MAX_KEY_LEN: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    ranks: Vec<u8>,
}

impl Permutation {
    /// The empty permutation.
    pub fn empty() -> Self {
        Permutation { ranks: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_PERM_LEN);
        Permutation {
            ranks: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based ranks, checking that they form a
    /// bijection on `1..=n`.
    pub fn new(ranks: Vec<u8>) -> Result<Self> {
        if ranks.len() > MAX_PERM_LEN {
            return Err(Error::Input(format!(
                "permutation of length {} exceeds the maximum length {MAX_PERM_LEN}",
                ranks.len()
            )));
        }
        let n = ranks.len();
        let mut seen = vec![false; n + 1];
        for (i, &r) in ranks.iter().enumerate() {
            let r = r as usize;
            if r == 0 || r > n {
                return Err(Error::Input(format!(
                    "rank {r} at index {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::Input(format!("rank {r} is repeated")));
            }
        }
        Ok(Permutation { ranks })
    }

    pub(crate) fn from_vec_unchecked(ranks: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(ranks.clone()).is_ok());
        Permutation { ranks }
    }

    /// The order-isomorphic reduction of a sequence of distinct values.
    pub fn standardize(values: &[u8]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_unstable_by_key(|&i| values[i]);
        let mut ranks = vec![0u8; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            ranks[i] = rank as u8 + 1;
        }
        Permutation { ranks }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    /// Whether `pattern` occurs in `self`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        occurs_in(&pattern.ranks, &self.ranks)
    }

    /// The pattern formed by the points at the given 1-based positions.
    pub fn pattern_of(&self, positions: &[usize]) -> Result<Permutation> {
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        positions.dedup();
        if let Some(&bad) = positions.iter().find(|&&i| i == 0 || i > self.len()) {
            return Err(Error::Input(format!(
                "position {bad} is outside 1..={}",
                self.len()
            )));
        }
        let values: Vec<u8> = positions.iter().map(|&i| self.ranks[i - 1]).collect();
        Ok(Permutation::standardize(&values))
    }

    /// Removes the point at 0-based `index` and reduces.
    pub fn delete_at(&self, index: usize) -> Permutation {
        let removed = self.ranks[index];
        let ranks = self
            .ranks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &r)| if r > removed { r - 1 } else { r })
            .collect();
        Permutation { ranks }
    }

    /// Inserts a new point at 0-based `position` with rank `value`, shifting
    /// existing ranks `>= value` up by one.
    pub fn insert(&self, position: usize, value: u8) -> Permutation {
        debug_assert!(position <= self.len() && value >= 1 && value as usize <= self.len() + 1);
        let mut ranks = Vec::with_capacity(self.len() + 1);
        for (i, &r) in self.ranks.iter().enumerate() {
            if i == position {
                ranks.push(value);
            }
            ranks.push(if r >= value { r + 1 } else { r });
        }
        if position == self.len() {
            ranks.push(value);
        }
        Permutation { ranks }
    }

    /// Distinct patterns obtained by deleting one point.
    pub fn deletions(&self) -> Result<BTreeSet<Permutation>> {
        if self.is_empty() {
            return Err(Error::Input("the empty permutation has no deletions".into()));
        }
        Ok((0..self.len()).map(|i| self.delete_at(i)).collect())
    }

    /// Distinct permutations of length `n + 1` that have `self` as a one-point
    /// deletion.
    pub fn extensions(&self) -> BTreeSet<Permutation> {
        let n = self.len();
        (0..=n)
            .flat_map(|pos| (1..=n as u8 + 1).map(move |val| (pos, val)))
            .map(|(pos, val)| self.insert(pos, val))
            .collect()
    }

    pub fn reverse(&self) -> Permutation {
        let mut ranks = self.ranks.clone();
        ranks.reverse();
        Permutation { ranks }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation {
            ranks: self.ranks.iter().map(|&r| n + 1 - r).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut ranks = vec![0u8; self.len()];
        for (i, &r) in self.ranks.iter().enumerate() {
            ranks[r as usize - 1] = i as u8 + 1;
        }
        Permutation { ranks }
    }

    pub fn apply(&self, sym: Symmetry) -> Permutation {
        match sym {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
            Symmetry::Rotate180 => self.reverse().complement(),
        }
    }

    /// Packs the ranks into a `u64`, first position in the most significant
    /// nibble, so that keys of equal-length permutations sort lexicographically.
    pub(crate) fn key(&self) -> u64 {
        debug_assert!(self.len() <= MAX_KEY_LEN);
        self.ranks
            .iter()
            .fold(0u64, |acc, &r| (acc << 4) | (r as u64 - 1))
    }

    pub(crate) fn from_key(key: u64, n: usize) -> Permutation {
        debug_assert!(n <= MAX_KEY_LEN);
        let ranks = (0..n)
            .map(|i| ((key >> (4 * (n - 1 - i))) & 0xf) as u8 + 1)
            .collect();
        Permutation::from_vec_unchecked(ranks)
    }
}

/// Orders by length first, then lexicographically.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.ranks.cmp(&other.ranks))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        if self.len() <= 9 {
            for r in &self.ranks {
                write!(f, "{r}")?;
            }
        } else {
            for (i, r) in self.ranks.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{r}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.ranks.iter())
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_at(s, 0)
    }
}

/// Parses the permutation text format, reporting error positions relative to
/// `offset`.
pub(crate) fn parse_at(text: &str, offset: usize) -> Result<Permutation, ParseError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let base = offset + lead;
    if body.is_empty() {
        return Err(ParseError::new(base, text, "expected a permutation"));
    }
    if body == "e" {
        return Ok(Permutation::empty());
    }
    let mut ranks = Vec::new();
    let mut starts = Vec::new();
    if body.contains(',') {
        let mut at = 0;
        for piece in body.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let token = piece.trim();
            let pos = base + at + lead;
            let value: usize = token
                .parse()
                .map_err(|_| ParseError::new(pos, token, "expected a positive integer rank"))?;
            if value == 0 || value > MAX_PERM_LEN {
                return Err(ParseError::new(pos, token, "rank out of range"));
            }
            ranks.push(value as u8);
            starts.push((pos, token.to_string()));
            at += piece.len() + 1;
        }
    } else {
        for (i, ch) in body.char_indices() {
            let digit = ch
                .to_digit(10)
                .filter(|&d| d > 0)
                .ok_or_else(|| ParseError::new(base + i, ch.to_string(), "expected a digit 1-9"))?;
            ranks.push(digit as u8);
            starts.push((base + i, ch.to_string()));
        }
    }
    let n = ranks.len();
    let mut seen = vec![false; n + 1];
    for (&r, (pos, token)) in ranks.iter().zip(&starts) {
        let r = r as usize;
        if r > n {
            return Err(ParseError::new(*pos, token.as_str(), format!("rank exceeds length {n}")));
        }
        if std::mem::replace(&mut seen[r], true) {
            return Err(ParseError::new(*pos, token.as_str(), "repeated rank"));
        }
    }
    Ok(Permutation::from_vec_unchecked(ranks))
}

/// Whether `pattern` is order-isomorphic to a subsequence of `host`.
///
/// Both arguments may be arbitrary sequences of distinct values. Positions are
/// matched left to right; each pattern entry must land strictly between the
/// host values already chosen for its nearest lower and upper pattern values.
pub fn occurs_in(pattern: &[u8], host: &[u8]) -> bool {
    let k = pattern.len();
    let n = host.len();
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    match k {
        1 => return true,
        2 => {
            return if pattern[0] < pattern[1] {
                host.windows(2).any(|w| w[0] < w[1])
            } else {
                host.windows(2).any(|w| w[0] > w[1])
            }
        }
        _ => {}
    }

    // window[i] = (index of the largest earlier pattern value below pattern[i],
    //              index of the smallest earlier pattern value above it)
    let window: Vec<(Option<usize>, Option<usize>)> = (0..k)
        .map(|i| {
            let below = (0..i)
                .filter(|&j| pattern[j] < pattern[i])
                .max_by_key(|&j| pattern[j]);
            let above = (0..i)
                .filter(|&j| pattern[j] > pattern[i])
                .min_by_key(|&j| pattern[j]);
            (below, above)
        })
        .collect();

    fn search(
        i: usize,
        start: usize,
        host: &[u8],
        window: &[(Option<usize>, Option<usize>)],
        chosen: &mut [u8],
    ) -> bool {
        let k = window.len();
        if i == k {
            return true;
        }
        let (below, above) = window[i];
        let lo = below.map(|j| chosen[j]);
        let hi = above.map(|j| chosen[j]);
        for pos in start..=host.len() - (k - i) {
            let x = host[pos];
            if lo.is_some_and(|l| x <= l) || hi.is_some_and(|h| x >= h) {
                continue;
            }
            chosen[i] = x;
            if search(i + 1, pos + 1, host, window, chosen) {
                return true;
            }
        }
        false
    }

    let mut chosen = vec![0u8; k];
    search(0, 0, host, &window, &mut chosen)
}

/// `contains(pattern, host)`: whether `host` contains `pattern`.
pub fn contains(pattern: &Permutation, host: &Permutation) -> bool {
    host.contains(pattern)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    /// Flips positions.
    Reverse,
    /// Flips values.
    Complement,
    /// Transposes the point set.
    Inverse,
    /// Reverse followed by complement.
    Rotate180,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::Inverse,
        Symmetry::Rotate180,
    ];
}

/// Rearranges `values` into the next permutation in lexicographic order.
/// Returns `false` (leaving `values` sorted ascending) after the last one.
pub fn next_permutation(values: &mut [u8]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| values[i] < values[i + 1]) else {
        values.reverse();
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| values[j] > values[i]).unwrap();
    values.swap(i, j);
    values[i + 1..].reverse();
    true
}

/// Lexicographic stream of permutations sharing a fixed prefix.
#[derive(Clone, Debug)]
pub struct LexPermutations {
    current: Vec<u8>,
    prefix_len: usize,
    done: bool,
}

impl LexPermutations {
    /// Permutations of length `n` whose first entry is `first`, in
    /// lexicographic order.
    pub fn with_first(n: usize, first: u8) -> Self {
        assert!(first >= 1 && first as usize <= n);
        let mut current = vec![first];
        current.extend((1..=n as u8).filter(|&r| r != first));
        LexPermutations {
            current,
            prefix_len: 1,
            done: false,
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation::from_vec_unchecked(self.current.clone());
        self.done = !next_permutation(&mut self.current[self.prefix_len..]);
        Some(out)
    }
}

/// All permutations of length `n` in lexicographic order, subject to the
/// default hard cap.
pub fn all_permutations(n: usize) -> Result<LexPermutations> {
    all_permutations_capped(n, DEFAULT_HARD_CAP)
}

pub fn all_permutations_capped(n: usize, hard_cap: usize) -> Result<LexPermutations> {
    if n > hard_cap {
        return Err(Error::Resource(format!(
            "length {n} exceeds the hard cap of {hard_cap}"
        )));
    }
    Ok(LexPermutations {
        current: (1..=n as u8).collect(),
        prefix_len: 0,
        done: false,
    })
}
