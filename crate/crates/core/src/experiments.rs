//! Relative bases, exhaustive checks of the squint decomposition, and basis
//! surveys over families of 2×2 grids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{enumerate_basis, BasisReport, EnumConfig, Superclass};
use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::grid::{Classification, Grid2x2, Side};
use crate::perm::{LexPermutations, Permutation, Symmetry};

/// Basis elements of `Grid(g)` split by membership in the superclass `F`.
#[derive(Clone, Debug)]
pub struct RelativeBasisReport {
    pub grid: Grid2x2,
    pub max_len: usize,
    /// Basis of the grid class itself.
    pub grid_basis: BasisReport,
    /// Basis elements lying in `F`: the relative basis.
    pub in_f: Vec<Permutation>,
    pub side_tags: BTreeMap<Permutation, Side>,
    pub outside_f: Vec<Permutation>,
    /// Whether every element outside `F` was found in the basis of `F`; only
    /// computed on request.
    pub outside_f_in_basis_of_f: Option<bool>,
}

/// The single squint side containing a relative basis element.
fn squint_side(grid: &Grid2x2, p: &Permutation) -> Result<Side> {
    match (grid.squint_contains(p, Side::A), grid.squint_contains(p, Side::B)) {
        (true, false) => Ok(Side::A),
        (false, true) => Ok(Side::B),
        (a, b) => Err(Error::Invariant(format!(
            "{p} lies in F but squint membership is A={a}, B={b} for {grid}"
        ))),
    }
}

/// Computes the relative basis of `Grid(grid)` in `F` and tags each element
/// with its squint side. With `confirm_outside`, also enumerates the basis of
/// `F` and checks that the remaining elements belong to it.
pub fn relative_basis(grid: &Grid2x2, cfg: &EnumConfig, confirm_outside: bool) -> Result<RelativeBasisReport> {
    let grid_basis = enumerate_basis(grid, cfg)?;
    let mut in_f = Vec::new();
    let mut outside_f = Vec::new();
    let mut side_tags = BTreeMap::new();
    for b in &grid_basis.basis {
        if grid.f_contains(b) {
            side_tags.insert(b.clone(), squint_side(grid, b)?);
            in_f.push(b.clone());
        } else {
            outside_f.push(b.clone());
        }
    }
    let outside_f_in_basis_of_f = if confirm_outside {
        let f_basis = enumerate_basis(&Superclass(grid), cfg)?;
        let f_set: BTreeSet<&Permutation> = f_basis.basis.iter().collect();
        Some(outside_f.iter().all(|b| f_set.contains(b)))
    } else {
        None
    };
    Ok(RelativeBasisReport {
        grid: grid.clone(),
        max_len: cfg.max_len,
        grid_basis,
        in_f,
        side_tags,
        outside_f,
        outside_f_in_basis_of_f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum Lemma3Verdict {
    Pass,
    Fail {
        counterexample: Permutation,
        in_grid: bool,
        squint_a: bool,
        squint_b: bool,
    },
}

impl Lemma3Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Lemma3Verdict::Pass)
    }
}

impl fmt::Display for Lemma3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lemma3Verdict::Pass => f.write_str("PASS"),
            Lemma3Verdict::Fail {
                counterexample,
                in_grid,
                squint_a,
                squint_b,
            } => write!(
                f,
                "FAIL {counterexample} (grid={in_grid}, squintA={squint_a}, squintB={squint_b})"
            ),
        }
    }
}

/// Permutations of length `n` in lexicographic order, split by first entry so
/// workers can scan prefixes independently.
fn prefix_streams(n: usize) -> Vec<Box<dyn Iterator<Item = Permutation> + Send>> {
    if n == 0 {
        return vec![Box::new(std::iter::once(Permutation::empty()))];
    }
    (1..=n as u8)
        .map(|first| Box::new(LexPermutations::with_first(n, first)) as Box<dyn Iterator<Item = _> + Send>)
        .collect()
}

/// Checks `Grid(g) = squintA ∩ squintB` on every permutation of length at
/// most `cfg.max_len`, returning the shortest, lexicographically least
/// counterexample if there is one.
pub fn verify_lemma3(grid: &Grid2x2, cfg: &EnumConfig) -> Result<Lemma3Verdict> {
    cfg.validate()?;
    let pool = cfg.pool()?;
    for n in 0..=cfg.max_len {
        let bad = pool.install(|| {
            prefix_streams(n)
                .into_par_iter()
                .map(|stream| {
                    stream
                        .map(|p| (grid.classify(&p), p))
                        .find(|(c, _)| c.grid != (c.squint_a && c.squint_b))
                })
                .collect::<Vec<_>>()
        });
        if let Some((c, p)) = bad.into_iter().flatten().next() {
            let Classification {
                grid: in_grid,
                squint_a,
                squint_b,
                ..
            } = c;
            return Ok(Lemma3Verdict::Fail {
                counterexample: p,
                in_grid,
                squint_a,
                squint_b,
            });
        }
    }
    Ok(Lemma3Verdict::Pass)
}

/// Outcome of checking that every basis element of `Grid(g)` lies in `F`
/// (in exactly one squint class) or in the basis of `F`.
#[derive(Clone, Debug)]
pub struct Observation2Check {
    pub grid: Grid2x2,
    pub grid_basis: BasisReport,
    pub f_basis: BasisReport,
    pub relative: BTreeMap<Permutation, Side>,
    pub outside_f: Vec<Permutation>,
    /// Elements outside `F` that are missing from the basis of `F`.
    pub missing_from_f_basis: Vec<Permutation>,
    /// Elements of `F` lying in both or neither squint class.
    pub bad_tags: Vec<Permutation>,
}

impl Observation2Check {
    pub fn passed(&self) -> bool {
        self.missing_from_f_basis.is_empty() && self.bad_tags.is_empty()
    }
}

impl fmt::Display for Observation2Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })?;
        writeln!(f, "# grid {} to length {}", self.grid, self.grid_basis.max_len)?;
        writeln!(f, "# relative basis (in F): {}", self.relative.len())?;
        for (p, side) in &self.relative {
            writeln!(f, "{p} {side}")?;
        }
        writeln!(f, "# outside F (basis elements of F): {}", self.outside_f.len())?;
        for p in &self.outside_f {
            writeln!(f, "{p}")?;
        }
        for p in &self.missing_from_f_basis {
            writeln!(f, "! {p} is outside F but not a basis element of F")?;
        }
        for p in &self.bad_tags {
            writeln!(f, "! {p} is in F but not in exactly one squint class")?;
        }
        Ok(())
    }
}

pub fn verify_observation2(grid: &Grid2x2, cfg: &EnumConfig) -> Result<Observation2Check> {
    let grid_basis = enumerate_basis(grid, cfg)?;
    let f_basis = enumerate_basis(&Superclass(grid), cfg)?;
    let f_set: BTreeSet<&Permutation> = f_basis.basis.iter().collect();
    let mut relative = BTreeMap::new();
    let mut outside_f = Vec::new();
    let mut missing_from_f_basis = Vec::new();
    let mut bad_tags = Vec::new();
    for b in &grid_basis.basis {
        if grid.f_contains(b) {
            match squint_side(grid, b) {
                Ok(side) => {
                    relative.insert(b.clone(), side);
                }
                Err(_) => bad_tags.push(b.clone()),
            }
        } else {
            if !f_set.contains(b) {
                missing_from_f_basis.push(b.clone());
            }
            outside_f.push(b.clone());
        }
    }
    Ok(Observation2Check {
        grid: grid.clone(),
        grid_basis,
        f_basis,
        relative,
        outside_f,
        missing_from_f_basis,
        bad_tags,
    })
}

/// The 16 grids whose four cells are each `inc` or `dec`.
pub fn monotone_grids() -> Vec<Grid2x2> {
    let cells = [ClassSpec::inc(), ClassSpec::dec()];
    let mut out = Vec::with_capacity(16);
    for a in &cells {
        for b in &cells {
            for c in &cells {
                for d in &cells {
                    out.push(Grid2x2::new(a.clone(), b.clone(), c.clone(), d.clone()));
                }
            }
        }
    }
    out
}

/// The orbit of a grid under reverse, complement and inverse, sorted by
/// rendered form.
pub fn symmetry_orbit(grid: &Grid2x2) -> Vec<Grid2x2> {
    let mut seen: BTreeMap<String, Grid2x2> = BTreeMap::new();
    let mut stack = vec![grid.clone()];
    while let Some(g) = stack.pop() {
        if seen.insert(g.to_string(), g.clone()).is_some() {
            continue;
        }
        for sym in [Symmetry::Reverse, Symmetry::Complement, Symmetry::Inverse] {
            stack.push(g.apply(sym));
        }
    }
    seen.into_values().collect()
}

/// Which symmetry maps one grid onto another: a word over the generators.
pub fn symmetry_path(from: &Grid2x2, to: &Grid2x2) -> Option<Vec<Symmetry>> {
    let mut seen: BTreeMap<String, Vec<Symmetry>> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([(from.clone(), Vec::new())]);
    while let Some((g, path)) = queue.pop_front() {
        if &g == to {
            return Some(path);
        }
        if seen.insert(g.to_string(), path.clone()).is_some() {
            continue;
        }
        for sym in [Symmetry::Reverse, Symmetry::Complement, Symmetry::Inverse] {
            let mut next = path.clone();
            next.push(sym);
            queue.push_back((g.apply(sym), next));
        }
    }
    None
}

/// One symmetry class of monotone 2×2 grids with the basis of its
/// representative (the first orbit member in rendered order).
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub representative: Grid2x2,
    pub orbit: Vec<Grid2x2>,
    pub report: BasisReport,
}

pub fn survey_monotone(cfg: &EnumConfig) -> Result<Vec<OrbitReport>> {
    cfg.validate()?;
    let mut orbits: BTreeMap<String, Vec<Grid2x2>> = BTreeMap::new();
    for g in monotone_grids() {
        let orbit = symmetry_orbit(&g);
        orbits.entry(orbit[0].to_string()).or_insert(orbit);
    }
    orbits
        .into_values()
        .map(|orbit| {
            let representative = orbit[0].clone();
            let report = enumerate_basis(&representative, cfg)?;
            Ok(OrbitReport {
                representative,
                orbit,
                report,
            })
        })
        .collect()
}

/// The monotone bottom row paired with an arbitrary top row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Theorem2Form {
    /// Bottom row `inc inc`.
    IncInc = 1,
    /// Bottom row `inc dec`.
    IncDec = 2,
    /// Bottom row `dec inc`.
    DecInc = 3,
}

impl Theorem2Form {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Theorem2Form::IncInc),
            2 => Some(Theorem2Form::IncDec),
            3 => Some(Theorem2Form::DecInc),
            _ => None,
        }
    }

    pub fn grid(self, top_left: ClassSpec, top_right: ClassSpec) -> Grid2x2 {
        let (bl, br) = match self {
            Theorem2Form::IncInc => (ClassSpec::inc(), ClassSpec::inc()),
            Theorem2Form::IncDec => (ClassSpec::inc(), ClassSpec::dec()),
            Theorem2Form::DecInc => (ClassSpec::dec(), ClassSpec::inc()),
        };
        Grid2x2::new(top_left, top_right, bl, br)
    }
}

/// Basis of the grid with top row `Av(c) Av(d)` over the form's monotone row.
pub fn theorem2_check(c: &ClassSpec, d: &ClassSpec, form: Theorem2Form, cfg: &EnumConfig) -> Result<BasisReport> {
    enumerate_basis(&form.grid(c.clone(), d.clone()), cfg)
}

/// `[empty Av(321654); Av(321654) empty]`, the direct sum of `Av(321654)`
/// with itself.
pub fn nonfb_grid() -> Grid2x2 {
    let c = ClassSpec::new([Permutation::from_vec_unchecked(vec![3, 2, 1, 6, 5, 4])])
        .expect("single-element basis");
    Grid2x2::new(ClassSpec::empty(), c.clone(), c, ClassSpec::empty())
}

pub fn nonfb_demo(cfg: &EnumConfig) -> Result<BasisReport> {
    enumerate_basis(&nonfb_grid(), cfg)
}
