//! Partitions of fixed length, their diagrams and orders, saturated chains,
//! and the reverse-tableau families built on them.

mod tableaux;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use tableaux::{
    distinguished_rt, enumerate_molev, enumerate_rt, for_each_rt, is_horizontal_strip,
    molev_exists, strip_sets, BarredTableau, ReverseTableau, StripSets,
};

/// A weakly decreasing tuple of non-negative integers with explicit length `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A box `(row, col)` of a diagram, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Cell {
        Cell { row, col }
    }
}

/// Arm, coarm, leg and coleg of a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArmLeg {
    pub arm: u32,
    pub coarm: u32,
    pub leg: u32,
    pub coleg: u32,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "parts {:?} are not weakly decreasing",
                parts
            )));
        }
        if parts.is_empty() {
            return Err(Error::Invalid("a partition needs at least one part".into()));
        }
        Ok(Partition { parts })
    }

    /// Pads (or validates) `parts` to exactly `n` entries.
    pub fn padded(mut parts: Vec<u32>, n: usize) -> Result<Partition> {
        while parts.len() > n && parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.len() > n {
            return Err(Error::TooManyRows {
                rows: parts.len(),
                n,
            });
        }
        parts.resize(n, 0);
        Partition::new(parts)
    }

    pub fn zero(n: usize) -> Partition {
        Partition { parts: vec![0; n] }
    }

    /// Parses `"[2,1]"` and pads with zeros to length `n`.
    pub fn parse(s: &str, n: usize) -> Result<Partition> {
        let parts = parse_parts(s)?;
        Partition::padded(parts, n)
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` for 1-based `i`; zero beyond the stored length.
    pub fn row(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// The conjugate `λ'`, as a variable-length list of nonzero parts.
    pub fn conjugate(&self) -> Vec<u32> {
        let first = self.row(1);
        (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect()
    }

    /// `λ'_j` for 1-based `j`.
    pub fn col(&self, j: usize) -> u32 {
        self.parts.iter().filter(|&&p| p as usize >= j).count() as u32
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col as u32 <= self.row(c.row)
    }

    /// Boxes in row-major (English) reading order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| Cell::new(i + 1, j)))
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u32 * p)
            .sum()
    }

    /// `n(λ') = Σ C(λ_i, 2)`.
    pub fn n_stat_conj(&self) -> u32 {
        self.parts
            .iter()
            .map(|&p| p * p.saturating_sub(1) / 2)
            .sum()
    }

    fn same_n(&self, other: &Partition) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::LengthMismatch(self.n(), other.n()))
        }
    }

    /// Containment `self ⊇ other`.
    pub fn contains(&self, other: &Partition) -> Result<bool> {
        self.same_n(other)?;
        Ok(self.contains_unchecked(other))
    }

    pub(crate) fn contains_unchecked(&self, other: &Partition) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a >= b)
    }

    /// Dominance by prefix sums; with `weak = false` the sizes must also agree.
    pub fn dominates(&self, other: &Partition, weak: bool) -> Result<bool> {
        self.same_n(other)?;
        if !weak && self.size() != other.size() {
            return Ok(false);
        }
        let (mut a, mut b) = (0u32, 0u32);
        for (x, y) in self.parts.iter().zip(&other.parts) {
            a += x;
            b += y;
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn arm_leg(&self, s: Cell) -> Result<ArmLeg> {
        if !self.contains_cell(s) {
            return Err(Error::BoxOutsideShape {
                row: s.row,
                col: s.col,
            });
        }
        Ok(ArmLeg {
            arm: self.row(s.row) - s.col as u32,
            coarm: s.col as u32 - 1,
            leg: self.col(s.col) - s.row as u32,
            coleg: s.row as u32 - 1,
        })
    }

    /// `self ⋗ other`: containment with sizes differing by one.
    pub fn covers(&self, other: &Partition) -> Result<bool> {
        self.same_n(other)?;
        Ok(self.size() == other.size() + 1 && self.contains_unchecked(other))
    }

    /// The unique box of `self / other` when `self ⋗ other`.
    pub fn cover_box(&self, other: &Partition) -> Option<Cell> {
        if self.n() != other.n()
            || self.size() != other.size() + 1
            || !self.contains_unchecked(other)
        {
            return None;
        }
        let i = (0..self.n()).find(|&i| self.parts[i] != other.parts[i])?;
        Some(Cell::new(i + 1, self.parts[i] as usize))
    }

    /// Partitions obtained by removing one box, ordered by the row of the box.
    pub fn lower_covers(&self) -> Vec<Partition> {
        (0..self.n())
            .filter(|&i| {
                self.parts[i] > 0 && (i + 1 == self.n() || self.parts[i + 1] < self.parts[i])
            })
            .map(|i| {
                let mut p = self.parts.clone();
                p[i] -= 1;
                Partition { parts: p }
            })
            .collect()
    }

    /// Partitions of length at most `n` obtained by adding one box, ordered by row.
    pub fn upper_covers(&self) -> Vec<Partition> {
        (0..self.n())
            .filter(|&i| i == 0 || self.parts[i - 1] > self.parts[i])
            .map(|i| {
                let mut p = self.parts.clone();
                p[i] += 1;
                Partition { parts: p }
            })
            .collect()
    }

    /// First `m` boxes of the diagram read row by row.
    pub fn truncate_english(&self, m: u32) -> Result<Partition> {
        let size = self.size();
        if m > size {
            return Err(Error::SizeOutOfRange {
                size: m as usize,
                max: size as usize,
            });
        }
        let mut left = m;
        let parts = self
            .parts
            .iter()
            .map(|&p| {
                let take = p.min(left);
                left -= take;
                take
            })
            .collect();
        Ok(Partition { parts })
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let err = || Error::Parse {
        what: "partition",
        input: s.to_string(),
    };
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(err)?;
    if inner.trim().is_empty() {
        return Ok(vec![0]);
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| err()))
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Parses without padding; the length is the number of listed parts.
    fn from_str(s: &str) -> Result<Partition> {
        Partition::new(parse_parts(s)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Partition, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A descending sequence `ζ_0 ⋗ ζ_1 ⋗ … ⋗ ζ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaturatedChain {
    pub steps: Vec<Partition>,
}

impl SaturatedChain {
    /// Number of covering steps `k`.
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Boxes removed at each step, top first.
    pub fn removed_boxes(&self) -> Vec<Cell> {
        self.steps
            .windows(2)
            .map(|w| w[0].cover_box(&w[1]).expect("chain steps are covers"))
            .collect()
    }

    /// Yamanouchi word `r_1 … r_k`: `r_i` is the row of `ζ_{k-i} / ζ_{k-i+1}`.
    pub fn yamanouchi(&self) -> Vec<u32> {
        self.removed_boxes()
            .iter()
            .rev()
            .map(|c| c.row as u32)
            .collect()
    }
}

/// All saturated chains from `λ` down to `μ`, ordered lexicographically by the
/// sequence of removed boxes; empty when `λ ⊉ μ`.
pub fn enumerate_chains(lambda: &Partition, mu: &Partition) -> Result<Vec<SaturatedChain>> {
    lambda.same_n(mu)?;
    let mut out = Vec::new();
    if !lambda.contains_unchecked(mu) {
        return Ok(out);
    }
    let mut path = vec![lambda.clone()];
    fn rec(path: &mut Vec<Partition>, mu: &Partition, out: &mut Vec<SaturatedChain>) {
        let cur = path.last().unwrap();
        if cur == mu {
            out.push(SaturatedChain {
                steps: path.clone(),
            });
            return;
        }
        for next in cur.lower_covers() {
            if next.contains_unchecked(mu) {
                path.push(next);
                rec(path, mu, out);
                path.pop();
            }
        }
    }
    rec(&mut path, mu, &mut out);
    Ok(out)
}

/// Number of saturated chains from `λ` to `μ` (without materializing them).
pub fn count_chains(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.n() != mu.n() || !lambda.contains_unchecked(mu) {
        return 0;
    }
    if lambda == mu {
        return 1;
    }
    lambda
        .lower_covers()
        .iter()
        .filter(|z| z.contains_unchecked(mu))
        .map(|z| count_chains(z, mu))
        .sum()
}

/// Partitions of `d` with at most `n` parts, lexicographically decreasing.
pub fn partitions_of(n: usize, d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if cur.len() == n {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
            }
            return;
        }
        let slots = (n - cur.len()) as u32;
        let lo = left.div_ceil(slots);
        for p in (lo..=max.min(left)).rev() {
            cur.push(p);
            rec(n, left - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, d, d, &mut cur, &mut out);
    out
}

/// `𝒫_n^d`: all partitions of size at most `d`, graded by size and then
/// lexicographically decreasing.
pub fn partitions_up_to(n: usize, d: u32) -> Vec<Partition> {
    (0..=d).flat_map(|k| partitions_of(n, k)).collect()
}

/// Partitions `ζ` with `λ ⊇ ζ ⊇ μ`, in graded order.
pub fn interval(lambda: &Partition, mu: &Partition) -> Vec<Partition> {
    if lambda.n() != mu.n() || !lambda.contains_unchecked(mu) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.n());
    fn rec(i: usize, lam: &[u32], mu: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == lam.len() {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let hi = if i == 0 {
            lam[0]
        } else {
            lam[i].min(cur[i - 1])
        };
        for p in (mu[i]..=hi).rev() {
            cur.push(p);
            rec(i + 1, lam, mu, cur, out);
            cur.pop();
        }
    }
    rec(0, &lambda.parts, &mu.parts, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Partition {
        Partition::parse(s, n).unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(p("[2,2]", 2).contains(&p("[2,1]", 2)).unwrap());
        assert!(!p("[3,0]", 2).contains(&p("[2,2]", 2)).unwrap());
        let l = p("[4,2,1]", 3);
        assert!(l.contains(&l).unwrap());
        assert_eq!(
            p("[1]", 2).contains(&p("[1]", 3)),
            Err(Error::LengthMismatch(2, 3))
        );
    }

    #[test]
    fn dominance_examples() {
        assert!(p("[2,0]", 2).dominates(&p("[1,1]", 2), false).unwrap());
        assert!(p("[2,2]", 2).dominates(&p("[2,1]", 2), true).unwrap());
        assert!(!p("[2,2]", 2).dominates(&p("[2,1]", 2), false).unwrap());
        assert!(!p("[1,1,1]", 3).dominates(&p("[2,1,0]", 3), false).unwrap());
    }

    #[test]
    fn arm_leg_examples() {
        let l = p("[5,5,3,1,1]", 5);
        assert_eq!(
            l.arm_leg(Cell::new(1, 1)).unwrap(),
            ArmLeg {
                arm: 4,
                coarm: 0,
                leg: 4,
                coleg: 0
            }
        );
        assert_eq!(
            p("[1]", 1).arm_leg(Cell::new(1, 1)).unwrap(),
            ArmLeg {
                arm: 0,
                coarm: 0,
                leg: 0,
                coleg: 0
            }
        );
        assert_eq!(
            p("[3,2]", 2).arm_leg(Cell::new(1, 2)).unwrap(),
            ArmLeg {
                arm: 1,
                coarm: 1,
                leg: 1,
                coleg: 0
            }
        );
        assert!(matches!(
            p("[3,2]", 2).arm_leg(Cell::new(2, 3)),
            Err(Error::BoxOutsideShape { .. })
        ));
    }

    #[test]
    fn chain_examples() {
        assert!(p("[2,2]", 2).covers(&p("[2,1]", 2)).unwrap());
        assert_eq!(
            enumerate_chains(&p("[2,1]", 2), &p("[0]", 2))
                .unwrap()
                .len(),
            2
        );
        assert!(enumerate_chains(&p("[1,1]", 2), &p("[2,0]", 2))
            .unwrap()
            .is_empty());
        let chains = enumerate_chains(&p("[2,2]", 2), &p("[1]", 2)).unwrap();
        let removed: Vec<Vec<Cell>> = chains.iter().map(|c| c.removed_boxes()).collect();
        let mut sorted = removed.clone();
        sorted.sort();
        assert_eq!(removed, sorted);
    }

    #[test]
    fn yamanouchi_examples() {
        let chain = SaturatedChain {
            steps: vec![p("[3,2]", 2), p("[2,2]", 2), p("[2,1]", 2)],
        };
        assert_eq!(chain.yamanouchi(), vec![2, 1]);
        let single = SaturatedChain {
            steps: vec![p("[3,2]", 2)],
        };
        assert!(single.yamanouchi().is_empty());
        let long = SaturatedChain {
            steps: ["[4,3,1]", "[3,3,1]", "[3,2,1]", "[3,2]", "[3,1]"]
                .iter()
                .map(|s| p(s, 3))
                .collect(),
        };
        assert_eq!(long.yamanouchi(), vec![2, 3, 2, 1]);
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(p("[3,2]", 2).truncate_english(4).unwrap(), p("[3,1]", 2));
        assert_eq!(p("[3,2]", 2).truncate_english(5).unwrap(), p("[3,2]", 2));
        assert_eq!(
            p("[3,2]", 2).truncate_english(0).unwrap(),
            Partition::zero(2)
        );
        assert!(matches!(
            p("[3,2]", 2).truncate_english(6),
            Err(Error::SizeOutOfRange { .. })
        ));
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("[0]", 3).parts(), &[0, 0, 0]);
        assert_eq!(p(" [2, 1] ", 3).to_string(), "[2,1,0]");
        assert!(Partition::parse("[1,2]", 2).is_err());
        assert!(matches!(
            Partition::parse("[1,1,1]", 2),
            Err(Error::TooManyRows { .. })
        ));
        assert!(Partition::parse("2,1", 2).is_err());
    }

    #[test]
    fn conjugate_and_statistics() {
        let l = p("[5,5,3,1,1]", 5);
        assert_eq!(l.conjugate(), vec![5, 3, 3, 2, 2]);
        assert_eq!(p("[2,2]", 2).n_stat(), 2);
        assert_eq!(p("[2,2]", 2).n_stat_conj(), 2);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(3, 4).len(), 4);
        assert_eq!(partitions_up_to(2, 4).len(), 1 + 1 + 2 + 2 + 3);
        assert_eq!(interval(&p("[2,1]", 2), &p("[0]", 2)).len(), 5);
    }
}
