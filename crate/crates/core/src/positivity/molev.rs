//! Support of Littlewood-Richardson coefficients against Molev tableaux.

use serde::Serialize;

use super::evidence::EvidenceRecord;
use crate::coefficients::Engine;
use crate::error::Result;
use crate::exactalg::{RationalFunction, Status};
use crate::partitions::{molev_exists, partitions_of, Partition};

/// The three sets on one size slice `|λ| = size`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceComparison {
    pub size: u32,
    /// `size ≤ |μ|+1`, where the three sets are proved equal.
    pub theorem: bool,
    pub lr_support: Vec<String>,
    pub molev: Vec<String>,
    pub containing: Vec<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MolevReport {
    pub family: String,
    pub n: usize,
    pub mu: String,
    pub nu: String,
    pub max_size: u32,
    pub slices: Vec<SliceComparison>,
    /// Every theorem slice agrees.
    pub holds: bool,
    /// One `lr-S` record per slice beyond the theorem range.
    pub records: Vec<EvidenceRecord>,
}

fn names(ps: &[Partition]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// Compares `{λ : c^λ_{μν} ≠ 0}`, `{λ : a Molev tableau exists}` and
/// `{λ ⊇ μ, ν}` on every size up to `d`, with `c` supplied by `lr`.
pub fn molev_set_compare_with<F>(
    family: &str,
    n: usize,
    mu: &Partition,
    nu: &Partition,
    d: u32,
    lr: F,
) -> Result<MolevReport>
where
    F: Fn(&Partition, &Partition, &Partition) -> Result<RationalFunction>,
{
    let mut slices = Vec::new();
    let mut records = Vec::new();
    for size in mu.size().max(nu.size())..=d {
        let theorem = size <= mu.size() + 1;
        let (mut s, mut m, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for l in partitions_of(n, size) {
            if !lr(&l, mu, nu)?.is_zero() {
                s.push(l.clone());
            }
            if l.contains(mu)? && molev_exists(&l, mu, nu, n)? {
                m.push(l.clone());
            }
            if l.contains(mu)? && l.contains(nu)? {
                c.push(l);
            }
        }
        let agree = if theorem { s == m && m == c } else { s == m };
        if !theorem {
            let status = if agree {
                Status::Certified
            } else {
                Status::Refuted
            };
            let mut r =
                EvidenceRecord::new("lr-S", family, n, &Partition::zero(n), mu, Some(nu), status);
            r.lambda = format!("|lambda|={}", size);
            r = if agree {
                r.certificate(format!("{} partitions in both sets", s.len()))
            } else {
                r.witness(format!(
                    "lr support {:?} vs molev {:?}",
                    names(&s),
                    names(&m)
                ))
            };
            records.push(r);
        }
        slices.push(SliceComparison {
            size,
            theorem,
            lr_support: names(&s),
            molev: names(&m),
            containing: names(&c),
            agree,
        });
    }
    Ok(MolevReport {
        family: family.to_string(),
        n,
        mu: mu.to_string(),
        nu: nu.to_string(),
        max_size: d,
        holds: slices.iter().filter(|s| s.theorem).all(|s| s.agree),
        slices,
        records,
    })
}

pub fn molev_set_compare(
    engine: &Engine,
    mu: &Partition,
    nu: &Partition,
    d: u32,
) -> Result<MolevReport> {
    let cfg = engine.config();
    molev_set_compare_with(&cfg.family.to_string(), cfg.n, mu, nu, d, |l, m, v| {
        engine.lr_weighted(l, m, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family, FamilyConfig};

    #[test]
    fn theorem_slice_for_a_small_pair() {
        let e = Engine::new(FamilyConfig::new(Family::AJ, 2).unwrap());
        let mu = Partition::parse("[1]", 2).unwrap();
        let r = molev_set_compare(&e, &mu, &mu, 3).unwrap();
        assert!(r.holds);
        let slice2 = r.slices.iter().find(|s| s.size == 2).unwrap();
        assert_eq!(slice2.containing, vec!["[2,0]", "[1,1]"]);
        assert_eq!(r.records.len(), 1);
    }
}
