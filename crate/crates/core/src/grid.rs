//! Grid classes, juxtapositions, the juxtaposition superclass `F` and its two
//! squint subclasses.
//!
//! Line coordinates are integers. A vertical line `v` in `0..=n` puts the
//! first `v` positions on the left; a horizontal line `h` in `0..=n` puts
//! ranks `> h` above it. Heights are always measured in the rank space of the
//! whole permutation, so left and right heights compare directly.

use std::fmt;
use std::str::FromStr;

use crate::class::ClassSpec;
use crate::error::ParseError;
use crate::perm::{Permutation, Symmetry};

/// A 2×2 matrix of classes, top row first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid2x2 {
    pub top_left: ClassSpec,
    pub top_right: ClassSpec,
    pub bottom_left: ClassSpec,
    pub bottom_right: ClassSpec,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridSpec {
    /// `[left|right]`
    Horizontal { left: ClassSpec, right: ClassSpec },
    /// `[top/bottom]`
    Vertical { top: ClassSpec, bottom: ClassSpec },
    Square(Grid2x2),
}

/// Witness lines for membership in a grid class. For a horizontal
/// juxtaposition `h` is `n`; for a vertical one `v` is `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Gridding {
    pub v: usize,
    pub h: usize,
}

/// A v-line with a right h-line `r` and a left h-line `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DivisionTriple {
    pub v: usize,
    pub r: usize,
    pub l: usize,
}

/// Which squint class: `A` allows `l <= r`, `B` allows `l >= r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl FromStr for Side {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.trim() {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(ParseError::new(0, other, "expected A or B")),
        }
    }
}

/// A set of heights in `0..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeightSet {
    valid: Vec<bool>,
}

impl HeightSet {
    fn none(n: usize) -> Self {
        HeightSet {
            valid: vec![false; n + 1],
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.valid.iter().any(|&b| b)
    }

    pub fn contains(&self, h: usize) -> bool {
        self.valid.get(h).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.valid
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b)
            .map(|(h, _)| h)
    }

    pub fn min(&self) -> Option<usize> {
        self.valid.iter().position(|&b| b)
    }

    pub fn max(&self) -> Option<usize> {
        self.valid.iter().rposition(|&b| b)
    }

    /// Least height in both sets.
    pub fn first_common(&self, other: &HeightSet) -> Option<usize> {
        self.valid
            .iter()
            .zip(&other.valid)
            .position(|(&a, &b)| a && b)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for HeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Heights `h` in `0..=n` at which the points of one side (given by their
/// ranks in the full permutation, in position order) split into a member of
/// `top` above `h` and a member of `bottom` at or below it.
pub fn valid_heights(points: &[u8], n: usize, top: &ClassSpec, bottom: &ClassSpec) -> HeightSet {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    debug_assert!(sorted.last().is_none_or(|&r| r as usize <= n));
    let mut set = HeightSet::none(n);
    let mut above = Vec::with_capacity(points.len());
    let mut below = Vec::with_capacity(points.len());
    // Every h with exactly k of the side's points at or below it gives the
    // same split.
    for k in 0..=sorted.len() {
        let lo = if k == 0 { 0 } else { sorted[k - 1] as usize };
        let hi = if k == sorted.len() { n } else { sorted[k] as usize - 1 };
        above.clear();
        below.clear();
        for &r in points {
            if r as usize > lo {
                above.push(r);
            } else {
                below.push(r);
            }
        }
        if top.admits(&above) && bottom.admits(&below) {
            set.valid[lo..=hi].iter_mut().for_each(|b| *b = true);
        }
    }
    set
}

/// Valid left and right h-line heights for one v-line.
#[derive(Clone, Debug)]
pub struct Division {
    pub v: usize,
    pub left: HeightSet,
    pub right: HeightSet,
}

impl Division {
    fn squint_triple(&self, side: Side) -> Option<DivisionTriple> {
        let (lmin, lmax) = (self.left.min()?, self.left.max()?);
        let (rmin, rmax) = (self.right.min()?, self.right.max()?);
        match side {
            Side::A if lmin <= rmax => {
                let r = self.right.iter().find(|&r| r >= lmin)?;
                Some(DivisionTriple { v: self.v, r, l: lmin })
            }
            Side::B if lmax >= rmin => {
                let l = self.left.iter().find(|&l| l >= rmin)?;
                Some(DivisionTriple { v: self.v, r: rmin, l })
            }
            _ => None,
        }
    }
}

/// Memberships of one permutation in `Grid(g)`, `F` and both squint classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub grid: bool,
    pub f: bool,
    pub squint_a: bool,
    pub squint_b: bool,
}

impl Grid2x2 {
    pub fn new(
        top_left: ClassSpec,
        top_right: ClassSpec,
        bottom_left: ClassSpec,
        bottom_right: ClassSpec,
    ) -> Self {
        Grid2x2 {
            top_left,
            top_right,
            bottom_left,
            bottom_right,
        }
    }

    /// Valid heights on each side of the v-line `v`.
    pub fn division(&self, p: &Permutation, v: usize) -> Division {
        let n = p.len();
        let (left, right) = p.ranks().split_at(v);
        Division {
            v,
            left: valid_heights(left, n, &self.top_left, &self.bottom_left),
            right: valid_heights(right, n, &self.top_right, &self.bottom_right),
        }
    }

    pub fn divisions<'a>(&'a self, p: &'a Permutation) -> impl Iterator<Item = Division> + 'a {
        (0..=p.len()).map(move |v| self.division(p, v))
    }

    /// Membership in `Grid(self)`: some v-line has a height valid on both
    /// sides.
    pub fn contains(&self, p: &Permutation) -> bool {
        self.gridding(p).is_some()
    }

    /// The lexicographically least gridding `(v, h)`, if any.
    pub fn gridding(&self, p: &Permutation) -> Option<Gridding> {
        self.divisions(p)
            .find_map(|d| d.left.first_common(&d.right).map(|h| Gridding { v: d.v, h }))
    }

    /// Membership in the horizontal juxtaposition of the two vertical
    /// juxtapositions; left and right h-lines need not align.
    pub fn f_contains(&self, p: &Permutation) -> bool {
        self.f_triple(p).is_some()
    }

    /// Lexicographically least division triple `(v, r, l)` witnessing `F`.
    pub fn f_triple(&self, p: &Permutation) -> Option<DivisionTriple> {
        self.divisions(p).find_map(|d| {
            Some(DivisionTriple {
                v: d.v,
                r: d.right.min()?,
                l: d.left.min()?,
            })
        })
    }

    pub fn squint_contains(&self, p: &Permutation, side: Side) -> bool {
        self.squint_triple(p, side).is_some()
    }

    /// Lexicographically least division triple `(v, r, l)` with `l <= r`
    /// (side A) or `l >= r` (side B).
    pub fn squint_triple(&self, p: &Permutation, side: Side) -> Option<DivisionTriple> {
        self.divisions(p).find_map(|d| d.squint_triple(side))
    }

    /// All four memberships from a single pass over the v-lines.
    pub fn classify(&self, p: &Permutation) -> Classification {
        let mut out = Classification {
            grid: false,
            f: false,
            squint_a: false,
            squint_b: false,
        };
        for d in self.divisions(p) {
            if d.left.is_empty() || d.right.is_empty() {
                continue;
            }
            out.f = true;
            out.grid |= d.left.first_common(&d.right).is_some();
            out.squint_a |= d.squint_triple(Side::A).is_some();
            out.squint_b |= d.squint_triple(Side::B).is_some();
            if out.grid {
                // the grid class lies inside both squint classes
                debug_assert!(out.squint_a && out.squint_b);
                break;
            }
        }
        out
    }

    /// The image of `Grid(self)` under a symmetry.
    pub fn apply(&self, sym: Symmetry) -> Grid2x2 {
        let t = |c: &ClassSpec| c.apply(sym);
        match sym {
            Symmetry::Reverse => Grid2x2::new(
                t(&self.top_right),
                t(&self.top_left),
                t(&self.bottom_right),
                t(&self.bottom_left),
            ),
            Symmetry::Complement => Grid2x2::new(
                t(&self.bottom_left),
                t(&self.bottom_right),
                t(&self.top_left),
                t(&self.top_right),
            ),
            Symmetry::Inverse => Grid2x2::new(
                t(&self.bottom_right),
                t(&self.top_right),
                t(&self.bottom_left),
                t(&self.top_left),
            ),
            Symmetry::Rotate180 => self.apply(Symmetry::Reverse).apply(Symmetry::Complement),
        }
    }

    pub fn cells(&self) -> [&ClassSpec; 4] {
        [
            &self.top_left,
            &self.top_right,
            &self.bottom_left,
            &self.bottom_right,
        ]
    }
}

impl fmt::Display for Grid2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {}; {} {}]",
            self.top_left, self.top_right, self.bottom_left, self.bottom_right
        )
    }
}

impl fmt::Debug for Grid2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid2x2{self}")
    }
}

impl GridSpec {
    pub fn contains(&self, p: &Permutation) -> bool {
        self.gridding(p).is_some()
    }

    /// The lexicographically least witness, if `p` is a member.
    pub fn gridding(&self, p: &Permutation) -> Option<Gridding> {
        let n = p.len();
        let ranks = p.ranks();
        match self {
            GridSpec::Horizontal { left, right } => (0..=n)
                .find(|&v| left.admits(&ranks[..v]) && right.admits(&ranks[v..]))
                .map(|v| Gridding { v, h: n }),
            GridSpec::Vertical { top, bottom } => valid_heights(ranks, n, top, bottom)
                .min()
                .map(|h| Gridding { v: n, h }),
            GridSpec::Square(g) => g.gridding(p),
        }
    }

    pub fn as_square(&self) -> Option<&Grid2x2> {
        match self {
            GridSpec::Square(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_juxtaposition(&self) -> bool {
        !matches!(self, GridSpec::Square(_))
    }

    pub fn apply(&self, sym: Symmetry) -> GridSpec {
        let t = |c: &ClassSpec| c.apply(sym);
        match (self, sym) {
            (GridSpec::Square(g), _) => GridSpec::Square(g.apply(sym)),
            (_, Symmetry::Rotate180) => self.apply(Symmetry::Reverse).apply(Symmetry::Complement),
            (GridSpec::Horizontal { left, right }, Symmetry::Reverse) => GridSpec::Horizontal {
                left: t(right),
                right: t(left),
            },
            (GridSpec::Horizontal { left, right }, Symmetry::Complement) => GridSpec::Horizontal {
                left: t(left),
                right: t(right),
            },
            (GridSpec::Horizontal { left, right }, Symmetry::Inverse) => GridSpec::Vertical {
                top: t(right),
                bottom: t(left),
            },
            (GridSpec::Vertical { top, bottom }, Symmetry::Reverse) => GridSpec::Vertical {
                top: t(top),
                bottom: t(bottom),
            },
            (GridSpec::Vertical { top, bottom }, Symmetry::Complement) => GridSpec::Vertical {
                top: t(bottom),
                bottom: t(top),
            },
            (GridSpec::Vertical { top, bottom }, Symmetry::Inverse) => GridSpec::Horizontal {
                left: t(bottom),
                right: t(top),
            },
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Horizontal { left, right } => write!(f, "[{left}|{right}]"),
            GridSpec::Vertical { top, bottom } => write!(f, "[{top}/{bottom}]"),
            GridSpec::Square(g) => g.fmt(f),
        }
    }
}

impl fmt::Debug for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridSpec{self}")
    }
}

impl FromStr for GridSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        crate::dsl::parse_grid(s)
    }
}

impl FromStr for Grid2x2 {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match crate::dsl::parse_grid(s)? {
            GridSpec::Square(g) => Ok(g),
            _ => Err(ParseError::new(0, s, "expected a 2x2 grid")),
        }
    }
}

/// `member_grid(g, p)`.
pub fn member_grid(g: &GridSpec, p: &Permutation) -> bool {
    g.contains(p)
}

/// `member_F(g, p)`.
pub fn member_f(g: &Grid2x2, p: &Permutation) -> bool {
    g.f_contains(p)
}

/// `member_squint(g, p, side)`.
pub fn member_squint(g: &Grid2x2, p: &Permutation, side: Side) -> bool {
    g.squint_contains(p, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn g(s: &str) -> Grid2x2 {
        s.parse().unwrap()
    }

    #[test]
    fn valid_height_examples() {
        let inc = ClassSpec::inc();
        assert_eq!(valid_heights(&[4], 4, &inc, &inc).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(valid_heights(&[4, 3], 4, &inc, &inc).to_vec(), vec![3]);
        let any = ClassSpec::new(["132".parse().unwrap()]).unwrap();
        assert_eq!(valid_heights(&[], 5, &any, &ClassSpec::empty()).to_vec(), vec![0, 1, 2, 3, 4, 5]);
        // empty top cell forces every point below
        assert_eq!(valid_heights(&[2, 5], 6, &ClassSpec::empty(), &inc).to_vec(), vec![5, 6]);
    }

    #[test]
    fn grid_membership_examples() {
        let skew = g("[dec inc; inc dec]");
        assert_eq!(skew.gridding(&p("3142")), Some(Gridding { v: 2, h: 2 }));
        assert!(!skew.contains(&p("2143")));
        assert!(!skew.contains(&p("3412")));
        assert!(skew.contains(&Permutation::empty()));
        let juxt: GridSpec = "[inc|inc]".parse().unwrap();
        assert!(juxt.contains(&Permutation::empty()));
        assert_eq!(juxt.gridding(&p("2413")), Some(Gridding { v: 2, h: 4 }));
        assert!(!juxt.contains(&p("321")));
        let vert: GridSpec = "[inc/inc]".parse().unwrap();
        assert_eq!(vert.gridding(&p("3412")), Some(Gridding { v: 4, h: 2 }));
        assert!(!vert.contains(&p("123").reverse()));
    }

    #[test]
    fn superclass_examples() {
        let all_inc = g("[inc inc; inc inc]");
        // 43 | 21 with l = 3 and r = 1
        assert!(member_f(&all_inc, &p("4321")));
        assert_eq!(all_inc.f_triple(&p("4321")), Some(DivisionTriple { v: 2, r: 1, l: 3 }));
        assert!(!all_inc.contains(&p("4321")));
        // some side always holds three decreasing points
        assert!(!member_f(&all_inc, &p("54321")));
        let skew = g("[dec inc; inc dec]");
        assert!(member_f(&skew, &p("2143")));
        // 21 | 43, each side one point over another
        assert_eq!(skew.f_triple(&p("2143")), Some(DivisionTriple { v: 2, r: 3, l: 0 }));
        assert!(member_f(&skew, &p("3142")));
    }

    #[test]
    fn squint_examples() {
        let all_inc = g("[inc inc; inc inc]");
        assert!(member_squint(&all_inc, &p("21"), Side::A));
        assert!(!member_squint(&all_inc, &p("4321"), Side::A));
        assert!(member_squint(&all_inc, &p("4321"), Side::B));
        let skew = g("[dec inc; inc dec]");
        let a = member_squint(&skew, &p("2143"), Side::A);
        let b = member_squint(&skew, &p("2143"), Side::B);
        assert!(a ^ b);
    }

    #[test]
    fn squint_witnesses_respect_their_side() {
        let grid = g("[inc inc; inc inc]");
        for q in ["21", "312", "2143", "3142", "4132"] {
            let q = p(q);
            if let Some(t) = grid.squint_triple(&q, Side::A) {
                assert!(t.l <= t.r);
            }
            if let Some(t) = grid.squint_triple(&q, Side::B) {
                assert!(t.l >= t.r);
            }
        }
    }

    #[test]
    fn grid_symmetries_are_group_actions() {
        let grid = g("[Av(231) Av(312); inc dec]");
        for sym in [Symmetry::Reverse, Symmetry::Complement, Symmetry::Inverse, Symmetry::Rotate180] {
            assert_eq!(grid.apply(sym).apply(sym), grid);
        }
        assert_eq!(g("[dec inc; inc dec]").apply(Symmetry::Reverse), g("[dec inc; inc dec]"));
        assert_eq!(g("[inc inc; dec dec]").apply(Symmetry::Inverse), g("[dec inc; dec inc]"));
    }
}
