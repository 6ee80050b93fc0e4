//! Level-wise enumeration of minimal forbidden permutations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::grid::{Grid2x2, GridSpec, Side};
use crate::perm::{Permutation, DEFAULT_HARD_CAP, MAX_KEY_LEN};

/// A decidable, downward-closed set of permutations.
pub trait Membership: Sync {
    fn is_member(&self, p: &Permutation) -> bool;
    fn describe(&self) -> String;
}

impl Membership for ClassSpec {
    fn is_member(&self, p: &Permutation) -> bool {
        self.contains(p)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Membership for GridSpec {
    fn is_member(&self, p: &Permutation) -> bool {
        self.contains(p)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Membership for Grid2x2 {
    fn is_member(&self, p: &Permutation) -> bool {
        self.contains(p)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// The superclass `F` of a 2×2 grid: a horizontal juxtaposition of the two
/// column-wise vertical juxtapositions.
#[derive(Clone, Debug)]
pub struct Superclass<'a>(pub &'a Grid2x2);

impl Membership for Superclass<'_> {
    fn is_member(&self, p: &Permutation) -> bool {
        self.0.f_contains(p)
    }

    fn describe(&self) -> String {
        format!("F{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Squint<'a> {
    pub grid: &'a Grid2x2,
    pub side: Side,
}

impl Membership for Squint<'_> {
    fn is_member(&self, p: &Permutation) -> bool {
        self.grid.squint_contains(p, self.side)
    }

    fn describe(&self) -> String {
        format!("squint{}{}", self.side, self.grid)
    }
}

/// Adapts a closure.
pub struct FnMembership<F> {
    pub name: String,
    pub f: F,
}

impl<F: Fn(&Permutation) -> bool + Sync> Membership for FnMembership<F> {
    fn is_member(&self, p: &Permutation) -> bool {
        (self.f)(p)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// Default frontier memory budget: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// Rough per-candidate cost used to estimate a level's footprint.
const BYTES_PER_CANDIDATE: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_len: usize,
    /// Lengths without new basis elements needed to call a basis stable.
    pub lookahead: usize,
    pub workers: usize,
    pub memory_budget: u64,
    pub hard_cap: usize,
}

impl EnumConfig {
    pub fn new(max_len: usize) -> Self {
        EnumConfig {
            max_len,
            ..Default::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_lookahead(mut self, lookahead: usize) -> Self {
        self.lookahead = lookahead;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Input("workers must be at least 1".into()));
        }
        let cap = self.hard_cap.min(MAX_KEY_LEN);
        if self.max_len > cap {
            return Err(Error::Resource(format!(
                "max length {} exceeds the hard cap of {cap}",
                self.max_len
            )));
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))
    }
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_len: 0,
            lookahead: 2,
            workers: 1,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            hard_cap: DEFAULT_HARD_CAP,
        }
    }
}

/// The basis of a class restricted to lengths `<= max_len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    #[serde(rename = "class")]
    pub class_description: String,
    pub max_len: usize,
    /// Sorted by length, then lexicographically.
    pub basis: Vec<Permutation>,
    pub members_by_length: BTreeMap<usize, u64>,
    pub stabilized_at: Option<usize>,
    pub lookahead: usize,
}

impl BasisReport {
    pub fn elements_by_length(&self) -> BTreeMap<usize, Vec<Permutation>> {
        let mut out: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
        for b in &self.basis {
            out.entry(b.len()).or_default().push(b.clone());
        }
        out
    }

    /// Membership of `p` as implied by the basis; exact when
    /// `p.len() <= max_len`.
    pub fn implies_member(&self, p: &Permutation) -> bool {
        !self.basis.iter().any(|b| b.len() <= p.len() && p.contains(b))
    }

    pub fn longest(&self) -> usize {
        self.basis.last().map_or(0, Permutation::len)
    }
}

/// The length of the longest basis element (0 when there is none), provided
/// at least `lookahead` further lengths were searched without finding more.
pub fn stabilization(basis: &[Permutation], max_len: usize, lookahead: usize) -> Option<usize> {
    let longest = basis.iter().map(Permutation::len).max().unwrap_or(0);
    (max_len >= longest + lookahead).then_some(longest)
}

impl fmt::Display for BasisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# class {}", self.class_description)?;
        write!(f, "# max_len {}, lookahead {}, ", self.max_len, self.lookahead)?;
        match self.stabilized_at {
            Some(len) => writeln!(f, "stabilized at {len}")?,
            None => writeln!(f, "not stabilized")?,
        }
        write!(f, "# members by length:")?;
        for (len, count) in &self.members_by_length {
            write!(f, " {len}:{count}")?;
        }
        writeln!(f)?;
        writeln!(f, "# {} basis element(s)", self.basis.len())?;
        for (len, elems) in self.elements_by_length() {
            writeln!(f, "## length {len}")?;
            for e in elems {
                writeln!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// Enumerates the minimal non-members of `class` up to `cfg.max_len`.
///
/// Level `k` is built from the sealed members of length `k - 1`. Each member
/// is extended by inserting a new maximum at every position; every member or
/// basis element of length `k` arises this way exactly once, since deleting
/// its maximum leaves a member. A candidate is kept as a basis element when it
/// is not a member and all its deletions are.
pub fn enumerate_basis<M: Membership + ?Sized>(class: &M, cfg: &EnumConfig) -> Result<BasisReport> {
    cfg.validate()?;
    let pool = cfg.pool()?;
    let mut frontier: Vec<u64> = vec![Permutation::empty().key()];
    let mut basis: Vec<Permutation> = Vec::new();
    let mut members_by_length = BTreeMap::new();

    for k in 1..=cfg.max_len {
        let needed = frontier.len() as u64 * k as u64 * BYTES_PER_CANDIDATE;
        if needed > cfg.memory_budget {
            return Err(Error::Resource(format!(
                "frontier for length {k} needs about {needed} bytes, over the budget of {} \
                 (completed through length {})",
                cfg.memory_budget,
                k - 1
            )));
        }
        let (members, found) = pool.install(|| expand_level(class, &frontier, k))?;
        log::debug!(
            "{}: length {k}: {} members, {} basis elements",
            class.describe(),
            members.len(),
            found.len()
        );
        members_by_length.insert(k, members.len() as u64);
        basis.extend(found.into_iter().map(|key| Permutation::from_key(key, k)));
        frontier = members;
    }

    check_emitted(class, &basis)?;
    Ok(BasisReport {
        class_description: class.describe(),
        max_len: cfg.max_len,
        stabilized_at: stabilization(&basis, cfg.max_len, cfg.lookahead),
        basis,
        members_by_length,
        lookahead: cfg.lookahead,
    })
}

enum Outcome {
    Member(u64),
    Basis(u64),
}

fn expand_level<M: Membership + ?Sized>(
    class: &M,
    frontier: &[u64],
    k: usize,
) -> Result<(Vec<u64>, Vec<u64>)> {
    let is_sealed = |p: &Permutation| frontier.binary_search(&p.key()).is_ok();
    let outcomes: Vec<Outcome> = frontier
        .par_iter()
        .map(|&key| -> Result<Vec<Outcome>> {
            let parent = Permutation::from_key(key, k - 1);
            let mut out = Vec::new();
            for pos in 0..k {
                let child = parent.insert(pos, k as u8);
                if class.is_member(&child) {
                    // every member's deletions must already be sealed members
                    if let Some(d) = (0..k).map(|i| child.delete_at(i)).find(|d| !is_sealed(d)) {
                        return Err(Error::NotDownwardClosed {
                            member: child,
                            deletion: d,
                        });
                    }
                    out.push(Outcome::Member(child.key()));
                } else if (0..k).all(|i| is_sealed(&child.delete_at(i))) {
                    out.push(Outcome::Basis(child.key()));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut members = Vec::new();
    let mut found = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Member(key) => members.push(key),
            Outcome::Basis(key) => found.push(key),
        }
    }
    members.sort_unstable();
    found.sort_unstable();
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    Ok((members, found))
}

/// Re-checks minimality and the antichain property of emitted elements.
fn check_emitted<M: Membership + ?Sized>(class: &M, basis: &[Permutation]) -> Result<()> {
    for b in basis {
        if class.is_member(b) {
            return Err(Error::Invariant(format!("basis element {b} is a member")));
        }
        if let Some(d) = b.deletions()?.into_iter().find(|d| !class.is_member(d)) {
            return Err(Error::Invariant(format!(
                "basis element {b} is not minimal: its deletion {d} is not a member"
            )));
        }
    }
    for (i, a) in basis.iter().enumerate() {
        if let Some(b) = basis[i + 1..].iter().find(|b| b.contains(a)) {
            return Err(Error::Invariant(format!("basis elements {a} and {b} are comparable")));
        }
    }
    Ok(())
}
