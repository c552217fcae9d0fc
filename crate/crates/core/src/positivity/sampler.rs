//! Exploratory evaluation of normalized Jack differences on exact grids.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::duality::TauPoint;
use crate::error::{Error, Result};
use crate::exactalg::{Status, Var};
use crate::families::{Family, FamilyConfig};
use crate::interpolation::{elementary_conj, jack_macdonald, SymPoly};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SamplerClaim {
    /// Unshifted difference, predicted non-negative iff `λ` dominates `μ` (equal sizes).
    CgsJack,
    /// Difference at `x + 1`, predicted non-negative iff `λ` weakly dominates `μ`.
    KtJack,
}

impl fmt::Display for SamplerClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerClaim::CgsJack => "CGS-Jack",
            SamplerClaim::KtJack => "KT-Jack",
        })
    }
}

impl FromStr for SamplerClaim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cgs-jack" | "cgs" => Ok(SamplerClaim::CgsJack),
            "kt-jack" | "kt" => Ok(SamplerClaim::KtJack),
            _ => Err(Error::Parse {
                what: "sampler claim",
                input: s.into(),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleValue {
    pub tau: String,
    pub x: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplerReport {
    pub claim: SamplerClaim,
    pub lambda: String,
    pub mu: String,
    /// Whether the order relation predicting non-negativity holds.
    pub relation: bool,
    pub evaluations: usize,
    pub min_value: Option<String>,
    pub negatives: Vec<SampleValue>,
    /// Certified only when a predicted sign change is exhibited; a negative
    /// value under the predicted relation is Refuted; everything else is
    /// Inconclusive, since sampling never proves non-negativity.
    pub verdict: Status,
    pub label: &'static str,
}

/// Coefficients of `P_λ(·;τ0)` with `τ0` substituted, normalized at `x = 1`.
fn normalized_at(n: usize, l: &Partition, tau: &TauPoint) -> Result<Vec<(Vec<i32>, BigRational)>> {
    let p: SymPoly = match tau {
        TauPoint::Infinity => elementary_conj(l),
        TauPoint::Finite(_) => jack_macdonald(&FamilyConfig::new(Family::AJ, n)?, l)?,
    };
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let v = match tau {
            TauPoint::Finite(x) => c.eval_at(&[(Var::Tau, x.clone())])?,
            TauPoint::Infinity => c.constant_value().ok_or(Error::UnassignedVariable)?,
        };
        terms.push((e.clone(), v));
    }
    let at_one: BigRational = terms.iter().map(|(_, c)| c.clone()).sum();
    if at_one.is_zero() {
        return Err(Error::DegenerateNorm(format!("P_{} vanishes at 1", l)));
    }
    Ok(terms.into_iter().map(|(e, c)| (e, c / &at_one)).collect())
}

fn eval(terms: &[(Vec<i32>, BigRational)], x: &[BigRational]) -> BigRational {
    terms
        .iter()
        .map(|(e, c)| {
            e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                acc * num_traits::pow(xi.clone(), k as usize)
            })
        })
        .sum()
}

/// `k` points of `[0, ∞)^n` with small-denominator coordinates, fixed by `seed`,
/// preceded by the all-zero point and the unit vectors scaled by 2.
pub fn sample_grid(n: usize, k: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut pts = vec![vec![BigRational::zero(); n]];
    for i in 0..n {
        let mut p = vec![BigRational::zero(); n];
        p[i] = BigRational::from_integer(2.into());
        pts.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..k {
        pts.push(
            (0..n)
                .map(|_| {
                    BigRational::new(rng.gen_range(0..=40).into(), rng.gen_range(1..=8).into())
                })
                .collect(),
        );
    }
    pts
}

/// Evaluates the normalized difference exactly at every `(τ0, x)` pair.
pub fn evaluation_sampler(
    claim: SamplerClaim,
    n: usize,
    l: &Partition,
    mu: &Partition,
    taus: &[TauPoint],
    xs: &[Vec<BigRational>],
) -> Result<SamplerReport> {
    let relation = match claim {
        SamplerClaim::CgsJack => {
            if l.size() != mu.size() {
                return Err(Error::Invalid(
                    "the CGS comparison needs |lambda| = |mu|".into(),
                ));
            }
            l.dominates(mu, false)?
        }
        SamplerClaim::KtJack => l.dominates(mu, true)?,
    };
    let shift = if claim == SamplerClaim::KtJack {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    let mut min: Option<BigRational> = None;
    let mut negatives = Vec::new();
    let mut evaluations = 0;
    for tau in taus {
        let pl = normalized_at(n, l, tau)?;
        let pm = normalized_at(n, mu, tau)?;
        for x in xs {
            let y: Vec<BigRational> = x.iter().map(|v| v + &shift).collect();
            let v = eval(&pl, &y) - eval(&pm, &y);
            evaluations += 1;
            if v.is_negative() {
                negatives.push(SampleValue {
                    tau: tau.to_string(),
                    x: x.iter().map(|c| c.to_string()).collect(),
                    value: v.to_string(),
                });
            }
            if min.as_ref().is_none_or(|m| &v < m) {
                min = Some(v);
            }
        }
    }
    let verdict = match (relation, negatives.is_empty()) {
        (true, false) => Status::Refuted,
        (false, false) => Status::Certified,
        _ => Status::Inconclusive,
    };
    Ok(SamplerReport {
        claim,
        lambda: l.to_string(),
        mu: mu.to_string(),
        relation,
        evaluations,
        min_value: min.map(|m| m.to_string()),
        negatives,
        verdict,
        label: "exploratory",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s, 2).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn schur_case_at_a_fixed_point() {
        let one = [TauPoint::Finite(r(1))];
        let rep = evaluation_sampler(
            SamplerClaim::CgsJack,
            2,
            &p("[2]"),
            &p("[1,1]"),
            &one,
            &[vec![r(4), r(1)]],
        )
        .unwrap();
        assert_eq!(rep.min_value.as_deref(), Some("3"));
        assert_eq!(rep.verdict, Status::Inconclusive);
    }

    #[test]
    fn equal_partitions_give_zero() {
        let taus = super::super::duality::classical_taus();
        let rep = evaluation_sampler(
            SamplerClaim::KtJack,
            2,
            &p("[2,1]"),
            &p("[2,1]"),
            &taus,
            &sample_grid(2, 5, 1),
        )
        .unwrap();
        assert_eq!(rep.min_value.as_deref(), Some("0"));
        assert!(rep.negatives.is_empty());
    }

    #[test]
    fn reversed_dominance_exhibits_a_negative_value() {
        let taus = super::super::duality::classical_taus();
        let rep = evaluation_sampler(
            SamplerClaim::CgsJack,
            2,
            &p("[1,1]"),
            &p("[2]"),
            &taus,
            &sample_grid(2, 5, 1),
        )
        .unwrap();
        assert!(!rep.relation);
        assert_eq!(rep.verdict, Status::Certified);
    }
}
