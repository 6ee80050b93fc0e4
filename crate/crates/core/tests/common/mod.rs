//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here calls into the engine's containment search, height sets or
//! level-wise enumeration: containment tries every subset, grid membership
//! tries every set of lines, and bases are found by filtering every
//! permutation of each length.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use gridbasis::{ClassSpec, Grid2x2, GridSpec, Permutation};
use serde_json::Value;

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn grid(s: &str) -> Grid2x2 {
    s.parse().unwrap()
}

/// Ranks of a subsequence, reduced.
pub fn reduce(values: &[u8]) -> Vec<u8> {
    values
        .iter()
        .map(|&x| values.iter().filter(|&&y| y <= x).count() as u8)
        .collect()
}

/// Tries every `k`-subset of `host` by bitmask.
pub fn naive_contains(pattern: &[u8], host: &[u8]) -> bool {
    let k = pattern.len();
    let n = host.len();
    if k > n {
        return false;
    }
    let target = reduce(pattern);
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .any(|mask| {
            let sub: Vec<u8> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| host[i]).collect();
            reduce(&sub) == target
        })
}

pub fn naive_in_class(class: &ClassSpec, values: &[u8]) -> bool {
    class.basis().iter().all(|b| !naive_contains(b.ranks(), values))
}

fn split(values: &[u8], h: usize) -> (Vec<u8>, Vec<u8>) {
    let above = values.iter().copied().filter(|&x| x as usize > h).collect();
    let below = values.iter().copied().filter(|&x| x as usize <= h).collect();
    (above, below)
}

/// For each v-line, which left and right h-lines are valid.
fn line_table(g: &Grid2x2, q: &Permutation) -> Vec<(Vec<bool>, Vec<bool>)> {
    let n = q.len();
    let ranks = q.ranks();
    (0..=n)
        .map(|v| {
            let (left, right) = ranks.split_at(v);
            let ok = |side: &[u8], top: &ClassSpec, bottom: &ClassSpec| -> Vec<bool> {
                (0..=n)
                    .map(|h| {
                        let (above, below) = split(side, h);
                        naive_in_class(top, &above) && naive_in_class(bottom, &below)
                    })
                    .collect()
            };
            (
                ok(left, &g.top_left, &g.bottom_left),
                ok(right, &g.top_right, &g.bottom_right),
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaiveMembership {
    pub grid: bool,
    pub f: bool,
    pub squint_a: bool,
    pub squint_b: bool,
}

/// Searches every triple `(v, r, l)`.
pub fn naive_membership(g: &Grid2x2, q: &Permutation) -> NaiveMembership {
    let n = q.len();
    let mut out = NaiveMembership {
        grid: false,
        f: false,
        squint_a: false,
        squint_b: false,
    };
    for (left_ok, right_ok) in line_table(g, q) {
        for l in 0..=n {
            for r in 0..=n {
                if left_ok[l] && right_ok[r] {
                    out.f = true;
                    out.grid |= l == r;
                    out.squint_a |= l <= r;
                    out.squint_b |= l >= r;
                }
            }
        }
    }
    out
}

pub fn naive_grid_member(g: &GridSpec, q: &Permutation) -> bool {
    let n = q.len();
    let ranks = q.ranks();
    match g {
        GridSpec::Horizontal { left, right } => {
            (0..=n).any(|v| naive_in_class(left, &ranks[..v]) && naive_in_class(right, &ranks[v..]))
        }
        GridSpec::Vertical { top, bottom } => (0..=n).any(|h| {
            let (above, below) = split(ranks, h);
            naive_in_class(top, &above) && naive_in_class(bottom, &below)
        }),
        GridSpec::Square(sq) => naive_membership(sq, q).grid,
    }
}

/// Every permutation of length `n`, by recursive insertion, sorted.
pub fn naive_all(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for r in 1..=n {
            if !used[r - 1] {
                used[r - 1] = true;
                prefix.push(r as u8);
                go(prefix, used, out);
                prefix.pop();
                used[r - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn naive_deletions(q: &Permutation) -> Vec<Permutation> {
    (0..q.len())
        .map(|i| {
            let rest: Vec<u8> = q
                .ranks()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            Permutation::new(reduce(&rest)).unwrap()
        })
        .collect()
}

pub struct NaiveBasis {
    pub basis: Vec<Permutation>,
    pub members_by_length: BTreeMap<usize, u64>,
}

/// Filters every permutation up to `max_len`: non-members whose deletions
/// are all members.
pub fn naive_basis(member: impl Fn(&Permutation) -> bool, max_len: usize) -> NaiveBasis {
    let mut cache: HashMap<Permutation, bool> = HashMap::from([(Permutation::empty(), true)]);
    let mut basis = Vec::new();
    let mut members_by_length = BTreeMap::new();
    for n in 1..=max_len {
        let mut count = 0;
        for q in naive_all(n) {
            let is_member = member(&q);
            if is_member {
                count += 1;
            } else if naive_deletions(&q).iter().all(|d| cache[d]) {
                basis.push(q.clone());
            }
            cache.insert(q, is_member);
        }
        members_by_length.insert(n, count);
    }
    NaiveBasis {
        basis,
        members_by_length,
    }
}

/// Cells drawn from `Av(321)`, `Av(231)`, `Av(3142)`, `inc` and `dec`.
pub const MIXED_GRIDS: [&str; 5] = [
    "[Av(321) inc; inc dec]",
    "[dec Av(231); inc dec]",
    "[inc Av(3142); dec inc]",
    "[Av(321) Av(231); inc inc]",
    "[Av(3142) dec; dec inc]",
];

pub const EXTRA_GRIDS: [&str; 2] = ["[inc inc; Av(321) Av(231)]", "[Av(231) Av(312); inc dec]"];

pub fn monotone_grids() -> Vec<Grid2x2> {
    let mut out = Vec::new();
    for a in ["inc", "dec"] {
        for b in ["inc", "dec"] {
            for c in ["inc", "dec"] {
                for d in ["inc", "dec"] {
                    out.push(grid(&format!("[{a} {b}; {c} {d}]")));
                }
            }
        }
    }
    out
}

/// The 16 monotone grids, the mixed battery and the extra examples.
pub fn battery() -> Vec<Grid2x2> {
    let mut out = monotone_grids();
    out.extend(MIXED_GRIDS.iter().chain(&EXTRA_GRIDS).map(|s| grid(s)));
    out
}

pub fn juxtapositions() -> Vec<GridSpec> {
    ["[inc|inc]", "[inc|dec]", "[dec/inc]", "[Av(231)|inc]", "[Av(321)/dec]"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

pub fn fixture(name: &str) -> Value {
    // resolves from either crate of the workspace
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "fixtures", name]
        .iter()
        .collect();
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

/// Decodes a fixture entry `{"basis": [[..]], "members_by_length": {..}}`.
pub fn fixture_basis(entry: &Value) -> (Vec<Permutation>, BTreeMap<usize, u64>) {
    let basis = entry["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            let ranks = b.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u8).collect();
            Permutation::new(ranks).unwrap()
        })
        .collect();
    let counts = entry["members_by_length"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, v)| (k.parse().unwrap(), v.as_u64().unwrap()))
        .collect();
    (basis, counts)
}
