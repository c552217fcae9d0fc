//! Expansion positivity of normalized differences, dual to containment.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::evidence::{EvidenceRecord, Summary};
use crate::coefficients::Engine;
use crate::error::{Error, Result};
use crate::exactalg::{cone_check, CertBudget, Cone, RationalFunction, Status, Var};
use crate::families::Family;
use crate::interpolation::{
    elementary_binomial_expansion, jack_binomial_expansion, macdonald_binomial_expansion,
    power_sum, SymPoly, VarKind,
};
use crate::partitions::Partition;

type Expansion = BTreeMap<Partition, RationalFunction>;

/// A value of the Jack parameter at which a difference is specialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauPoint {
    Finite(BigRational),
    Infinity,
}

impl std::fmt::Display for TauPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TauPoint::Finite(x) => write!(f, "{}", x),
            TauPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `τ ∈ {0, 1, ∞}`: the monomial, Schur and elementary cases.
pub fn classical_taus() -> Vec<TauPoint> {
    vec![
        TauPoint::Finite(BigRational::zero()),
        TauPoint::Finite(BigRational::one()),
        TauPoint::Infinity,
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationCheck {
    pub tau: String,
    pub nu: String,
    pub value: String,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub claim: String,
    pub family: String,
    pub n: usize,
    pub lambda: String,
    pub mu: String,
    /// Whether `λ ⊇ μ`; decides which direction of the duality is checked.
    pub contains: bool,
    pub coefficients: Vec<(String, String)>,
    pub records: Vec<EvidenceRecord>,
    pub specializations: Vec<SpecializationCheck>,
    pub summary: Summary,
    pub notes: Vec<String>,
    pub holds: bool,
}

fn difference(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out = Expansion::new();
    for nu in a.keys().chain(b.keys()) {
        if out.contains_key(nu) {
            continue;
        }
        let zero = RationalFunction::zero();
        let d = a.get(nu).unwrap_or(&zero) - b.get(nu).unwrap_or(&zero);
        if !d.is_zero() {
            out.insert(nu.clone(), d);
        }
    }
    out
}

/// Shared core of the three dualities: cone checks when `λ ⊇ μ`, the forced
/// `-1` at `μ` otherwise.
fn assemble(
    claim: &str,
    family: &str,
    n: usize,
    l: &Partition,
    mu: &Partition,
    diff: &Expansion,
    cone: Cone,
    budget: &CertBudget,
) -> Result<DualityReport> {
    let contains = l.contains(mu)?;
    let mut records = Vec::new();
    let holds;
    if contains {
        for (nu, d) in diff {
            let v = cone_check(d, cone, budget)?;
            records.push(EvidenceRecord::from_verdict(
                claim,
                family,
                n,
                (l, mu),
                Some(nu),
                &v,
            ));
        }
        holds = records.iter().all(|r| r.verdict != Status::Refuted);
    } else {
        let at_mu = diff.get(mu).cloned().unwrap_or_else(RationalFunction::zero);
        let minus_one = RationalFunction::from_int(-1);
        holds = at_mu == minus_one;
        let status = if holds {
            Status::Refuted
        } else {
            Status::Inconclusive
        };
        records.push(
            EvidenceRecord::new(
                &format!("{}-converse", claim),
                family,
                n,
                l,
                mu,
                Some(mu),
                status,
            )
            .witness(format!("coefficient at mu = {}", at_mu)),
        );
    }
    Ok(DualityReport {
        claim: claim.to_string(),
        family: family.to_string(),
        n,
        lambda: l.to_string(),
        mu: mu.to_string(),
        contains,
        coefficients: diff
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        summary: Summary::of(&records),
        records,
        specializations: Vec::new(),
        notes: Vec::new(),
        holds,
    })
}

/// Duality checker for one family, caching basis expansions per partition.
pub struct DualityChecker<'a> {
    engine: &'a Engine,
    expansions: Mutex<HashMap<Partition, Expansion>>,
    elementary: Mutex<HashMap<Partition, Expansion>>,
}

impl<'a> DualityChecker<'a> {
    pub fn new(engine: &'a Engine) -> Self {
        DualityChecker {
            engine,
            expansions: Mutex::new(HashMap::new()),
            elementary: Mutex::new(HashMap::new()),
        }
    }

    fn cached<F>(
        map: &Mutex<HashMap<Partition, Expansion>>,
        l: &Partition,
        f: F,
    ) -> Result<Expansion>
    where
        F: FnOnce() -> Result<Expansion>,
    {
        if let Some(e) = map.lock().expect("cache poisoned").get(l) {
            return Ok(e.clone());
        }
        let e = f()?;
        map.lock()
            .expect("cache poisoned")
            .insert(l.clone(), e.clone());
        Ok(e)
    }

    fn expansion(&self, l: &Partition) -> Result<Expansion> {
        let cfg = self.engine.config();
        Self::cached(&self.expansions, l, || match cfg.family {
            Family::AJ => jack_binomial_expansion(cfg, l),
            Family::AM => macdonald_binomial_expansion(cfg, l),
            f => Err(Error::Invalid(format!("no binomial expansion for {}", f))),
        })
    }

    /// Symbolic difference, cross-checked coefficient by coefficient against
    /// `b_{λν} - b_{μν}` from the coefficient engine.
    fn checked_difference(&self, l: &Partition, mu: &Partition) -> Result<Expansion> {
        let diff = difference(&self.expansion(l)?, &self.expansion(mu)?);
        let mut support: Vec<Partition> = self.expansion(l)?.into_keys().collect();
        support.extend(self.expansion(mu)?.into_keys());
        for nu in support {
            let table = &self.engine.b_direct(l, &nu)? - &self.engine.b_direct(mu, &nu)?;
            let symbolic = diff
                .get(&nu)
                .cloned()
                .unwrap_or_else(RationalFunction::zero);
            if table != symbolic {
                return Err(Error::RouteMismatch(format!(
                    "difference {} - {} at {}: expansion {} vs table {}",
                    l, mu, nu, symbolic, table
                )));
            }
        }
        Ok(diff)
    }

    /// Containment duality for Jack polynomials, with specializations of every
    /// coefficient at the given values of `τ`.
    pub fn containment(
        &self,
        l: &Partition,
        mu: &Partition,
        taus: &[TauPoint],
        budget: &CertBudget,
    ) -> Result<DualityReport> {
        let cfg = self.engine.config();
        if cfg.family != Family::AJ {
            return Err(Error::Invalid(
                "containment duality is stated for AJ".into(),
            ));
        }
        let diff = self.checked_difference(l, mu)?;
        let mut report = assemble(
            "containment-duality",
            "AJ",
            cfg.n,
            l,
            mu,
            &diff,
            Cone::AJ,
            budget,
        )?;
        if !report.contains {
            return Ok(report);
        }
        for tau in taus {
            let values: Vec<(Partition, BigRational)> = match tau {
                TauPoint::Finite(x) => diff
                    .iter()
                    .map(|(nu, d)| Ok((nu.clone(), d.eval_at(&[(Var::Tau, x.clone())])?)))
                    .collect::<Result<_>>()?,
                TauPoint::Infinity => self.elementary_difference(l, mu, &diff)?,
            };
            for (nu, v) in values {
                report.specializations.push(SpecializationCheck {
                    tau: tau.to_string(),
                    nu: nu.to_string(),
                    value: v.to_string(),
                    nonnegative: !v.is_negative(),
                });
            }
        }
        report.holds &= report.specializations.iter().all(|s| s.nonnegative);
        report.notes.push(
            "specializations use rational tau values and the elementary basis at infinity".into(),
        );
        Ok(report)
    }

    /// Coefficients of the elementary-basis difference, cross-checked against
    /// the limits of the Jack coefficients as `τ → ∞`.
    fn elementary_difference(
        &self,
        l: &Partition,
        mu: &Partition,
        diff: &Expansion,
    ) -> Result<Vec<(Partition, BigRational)>> {
        let el = Self::cached(&self.elementary, l, || elementary_binomial_expansion(l))?;
        let em = Self::cached(&self.elementary, mu, || elementary_binomial_expansion(mu))?;
        let ediff = difference(&el, &em);
        let support: BTreeSet<&Partition> = diff.keys().chain(ediff.keys()).collect();
        let mut out = Vec::new();
        for nu in support {
            let limit = match diff.get(nu) {
                Some(d) => d.limit_at_infinity(Var::Tau).ok_or_else(|| {
                    Error::RouteMismatch(format!("coefficient at {} diverges as tau grows", nu))
                })?,
                None => RationalFunction::zero(),
            };
            let e = ediff
                .get(nu)
                .cloned()
                .unwrap_or_else(RationalFunction::zero);
            if e != limit {
                return Err(Error::RouteMismatch(format!(
                    "elementary coefficient at {} is {} but the limit is {}",
                    nu, e, limit
                )));
            }
            let v = e.constant_value().ok_or_else(|| {
                Error::Invalid(format!("elementary coefficient {} is not a number", e))
            })?;
            out.push((nu.clone(), v));
        }
        Ok(out)
    }

    /// Macdonald duality: expansion over monic interpolation polynomials.
    pub fn macdonald(
        &self,
        l: &Partition,
        mu: &Partition,
        budget: &CertBudget,
    ) -> Result<DualityReport> {
        let cfg = self.engine.config();
        if cfg.family != Family::AM {
            return Err(Error::Invalid("Macdonald duality is stated for AM".into()));
        }
        let diff = self.checked_difference(l, mu)?;
        assemble(
            "macdonald-duality",
            "AM",
            cfg.n,
            l,
            mu,
            &diff,
            Cone::AM,
            budget,
        )
    }
}

/// `P_λ(x+1)` in the basis `P_ν = p_ν / n^{ℓ(ν)}`, from
/// `P_r(x+1) = Σ_t C(r,t) P_t(x)`.
pub fn powersum_expansion(n: usize, l: &Partition) -> Result<BTreeMap<Partition, BigInt>> {
    if let Some(&part) = l.parts().iter().find(|&&p| p as usize > n) {
        return Err(Error::PartTooLarge { part, n });
    }
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    acc.insert(Vec::new(), BigInt::one());
    for &r in l.parts().iter().filter(|&&r| r > 0) {
        let mut next = BTreeMap::new();
        for (parts, c) in &acc {
            for t in 0..=r {
                let mut p = parts.clone();
                if t > 0 {
                    p.push(t);
                    p.sort_unstable_by(|a, b| b.cmp(a));
                }
                let b = num_integer::binomial(BigInt::from(r), BigInt::from(t));
                *next.entry(p).or_insert_with(BigInt::zero) += c * b;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(p, c)| Ok((Partition::padded(p, n)?, c)))
        .collect()
}

/// Normalized power sum product `∏ p_{ν_i}/n`.
fn normalized_power(n: usize, nu: &Partition) -> SymPoly {
    let scale = RationalFunction::from_ints(1, n as i64);
    nu.parts()
        .iter()
        .filter(|&&r| r > 0)
        .fold(SymPoly::one(n, VarKind::Plain), |acc, &r| {
            acc.mul(&power_sum(n, r).scale(&scale))
        })
}

/// Power-sum duality, with the product-of-binomials expansion re-checked as
/// a polynomial identity.
pub fn powersum_duality(
    n: usize,
    l: &Partition,
    mu: &Partition,
    budget: &CertBudget,
) -> Result<DualityReport> {
    let mut exps = Vec::new();
    for p in [l, mu] {
        let e = powersum_expansion(n, p)?;
        let lhs = normalized_power(n, p).shift_by_one()?;
        let rhs = e
            .iter()
            .fold(SymPoly::zero(n, VarKind::Plain), |acc, (nu, c)| {
                acc.add(&normalized_power(n, nu).scale(&RationalFunction::from_int(c.clone())))
            });
        if lhs != rhs {
            return Err(Error::RouteMismatch(format!(
                "power-sum expansion of {}",
                p
            )));
        }
        exps.push(
            e.into_iter()
                .map(|(k, c)| (k, RationalFunction::from_int(c)))
                .collect::<Expansion>(),
        );
    }
    let diff = difference(&exps[0], &exps[1]);
    assemble("powersum-duality", "p", n, l, mu, &diff, Cone::AJ, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyConfig;

    fn p(s: &str, n: usize) -> Partition {
        Partition::parse(s, n).unwrap()
    }

    #[test]
    fn containment_examples() {
        let e = Engine::new(FamilyConfig::new(Family::AJ, 2).unwrap());
        let d = DualityChecker::new(&e);
        let b = CertBudget::default();
        let r = d
            .containment(&p("[2,1]", 2), &p("[1,1]", 2), &classical_taus(), &b)
            .unwrap();
        assert!(r.holds && r.contains && r.summary.refuted == 0);
        let r = d
            .containment(&p("[2]", 2), &p("[1,1]", 2), &classical_taus(), &b)
            .unwrap();
        assert!(r.holds && !r.contains);
        assert_eq!(
            r.records[0].witness.as_deref(),
            Some("coefficient at mu = -1")
        );
        let r = d
            .containment(&p("[2,1]", 2), &p("[2,1]", 2), &classical_taus(), &b)
            .unwrap();
        assert!(r.holds && r.records.is_empty());
    }

    #[test]
    fn powersum_examples() {
        let b = CertBudget::default();
        let e = powersum_expansion(1, &p("[1]", 1)).unwrap();
        assert_eq!(e.len(), 2);
        let r = powersum_duality(1, &p("[4]", 1), &p("[2]", 1), &b);
        assert!(matches!(r, Err(Error::PartTooLarge { part: 4, n: 1 })));
        let r = powersum_duality(2, &p("[2,1]", 2), &p("[1,1]", 2), &b).unwrap();
        assert!(r.holds && r.summary.refuted == 0);
        let r = powersum_duality(2, &p("[2]", 2), &p("[1,1]", 2), &b).unwrap();
        assert!(r.holds && !r.contains);
    }
}
