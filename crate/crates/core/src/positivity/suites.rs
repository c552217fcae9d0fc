//! Verification suites for proved identities and harnesses for open conjectures.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::duality::{classical_taus, powersum_duality, DualityChecker, TauPoint};
use super::evidence::{EvidenceRecord, Summary};
use super::integrality::{check_int_j, check_int_m, IntegralityVerdict};
use super::molev::molev_set_compare_with;
use super::sampler::{evaluation_sampler, sample_grid, SamplerClaim};
use crate::coefficients::Engine;
use crate::error::{Error, Result};
use crate::exactalg::{cone_check, CertBudget, RationalFunction, Status};
use crate::families::{Family, FamilyConfig};
use crate::interpolation::{interp_poly, pieri_check, Normalization};
use crate::partitions::{partitions_up_to, Partition};

/// Partitions with at most `n` parts and size at most `max_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub n: usize,
    pub max_size: u32,
}

impl Grid {
    pub fn partitions(&self) -> Vec<Partition> {
        partitions_up_to(self.n, self.max_size)
    }

    /// Pairs `λ ⊇ μ`, including `λ = μ`.
    pub fn containing_pairs(&self) -> Vec<(Partition, Partition)> {
        let ps = self.partitions();
        let mut out = Vec::new();
        for l in &ps {
            for mu in &ps {
                if l.contains_unchecked(mu) {
                    out.push((l.clone(), mu.clone()));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub families: Vec<Family>,
    pub grid: Grid,
    pub budget: CertBudget,
    /// Largest total degree of unit multipliers tried by the int-M test.
    pub unit_budget: u32,
    pub seed: u64,
}

impl RunOptions {
    pub fn new(families: Vec<Family>, grid: Grid) -> Self {
        RunOptions {
            families,
            grid,
            budget: CertBudget::default(),
            unit_budget: 4,
            seed: 0,
        }
    }
}

/// Records of one run plus the theorem-level failures (for suites) or
/// refuted findings (for conjectures).
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub name: String,
    pub records: Vec<EvidenceRecord>,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> Summary {
        Summary::of(&self.records)
    }
}

type LrKey = (Family, usize, Partition, Partition, Partition);

/// Engines and Littlewood-Richardson values shared between runs.
#[derive(Default)]
pub struct Session {
    engines: Mutex<HashMap<(Family, usize), Arc<Engine>>>,
    lr: Mutex<HashMap<LrKey, RationalFunction>>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn engine(&self, f: Family, n: usize) -> Result<Arc<Engine>> {
        let mut map = self.engines.lock().expect("engine map poisoned");
        if let Some(e) = map.get(&(f, n)) {
            return Ok(e.clone());
        }
        let e = Arc::new(Engine::new(FamilyConfig::new(f, n)?));
        map.insert((f, n), e.clone());
        Ok(e)
    }

    /// `c^λ_{μν}` by the weighted route, memoized up to the symmetry in `μ, ν`.
    pub fn lr(
        &self,
        e: &Engine,
        l: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<RationalFunction> {
        let (a, b) = if mu >= nu { (mu, nu) } else { (nu, mu) };
        let key = (
            e.config().family,
            e.config().n,
            l.clone(),
            a.clone(),
            b.clone(),
        );
        if let Some(v) = self.lr.lock().expect("lr cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = if l.contains(a)? {
            e.lr_weighted(l, a, b)?
        } else {
            e.lr_weighted(l, b, a)?
        };
        self.lr
            .lock()
            .expect("lr cache poisoned")
            .insert(key, v.clone());
        Ok(v)
    }
}

macro_rules! named_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($name::$variant => $text),+ })
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|v| v.to_string().eq_ignore_ascii_case(s))
                    .ok_or_else(|| Error::Parse { what: stringify!($name), input: s.to_string() })
            }
        }
    };
}

named_enum!(Suite {
    Pieri => "pieri",
    ThreeRoute => "three-route",
    Monotonicity => "monotonicity",
    Duality => "duality",
    Molev => "molev",
    Integrality => "integrality",
    Commutation => "commutation",
});

named_enum!(Conjecture {
    IntJ => "int-J",
    IntM => "int-M",
    LrPositivity => "lr-positivity",
    LrS => "lr-S",
    JackPositivity => "jack-positivity",
});

fn collect<T, F>(items: &[T], f: F) -> Result<Vec<EvidenceRecord>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<EvidenceRecord>> + Sync + Send,
{
    let nested: Vec<Vec<EvidenceRecord>> = items.par_iter().map(f).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn integrality_record(
    claim: &str,
    e: &Engine,
    l: &Partition,
    mu: &Partition,
    v: IntegralityVerdict,
) -> EvidenceRecord {
    let cfg = e.config();
    let mut r = EvidenceRecord::new(claim, cfg.family, cfg.n, l, mu, None, v.status);
    r.certificate = v.certificate;
    r.witness = v.witness;
    r
}

fn integral_check(e: &Engine, f: &RationalFunction, unit_budget: u32) -> IntegralityVerdict {
    if e.config().family.is_jack() {
        check_int_j(f)
    } else {
        check_int_m(f, unit_budget)
    }
}

fn theorem_failures(records: &[EvidenceRecord], required: Status) -> Vec<String> {
    records
        .iter()
        .filter(|r| match required {
            Status::Certified => r.verdict != Status::Certified,
            _ => r.verdict == Status::Refuted,
        })
        .map(|r| r.to_json())
        .collect()
}

/// Runs one verification suite; `failures` lists every theorem-level violation.
pub fn run_suite(session: &Session, suite: Suite, opts: &RunOptions) -> Result<Outcome> {
    let grid = opts.grid;
    let n = grid.n;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for &f in &opts.families {
        let e = session.engine(f, n)?;
        let fam = f.to_string();
        match suite {
            Suite::Pieri => {
                let rs = collect(&grid.partitions(), |mu| {
                    let ok = pieri_check(e.config(), mu)?;
                    let status = if ok {
                        Status::Certified
                    } else {
                        Status::Refuted
                    };
                    Ok(vec![EvidenceRecord::new(
                        "pieri", &fam, n, mu, mu, None, status,
                    )
                    .certificate("symbolic identity")])
                })?;
                failures.extend(theorem_failures(&rs, Status::Certified));
                records.extend(rs);
            }
            Suite::ThreeRoute => {
                let rs = collect(&grid.containing_pairs(), |(l, mu)| {
                    let d = e.b_direct(l, mu)?;
                    let w = e.b_weighted(l, mu)?;
                    let r = e.b_recursive(l, mu)?;
                    let rec =
                        EvidenceRecord::new("three-route", &fam, n, l, mu, None, Status::Certified);
                    Ok(vec![if d == w && w == r {
                        rec.certificate("direct = weighted = recursive")
                    } else {
                        let mut rec =
                            rec.witness(format!("direct {} weighted {} recursive {}", d, w, r));
                        rec.verdict = Status::Refuted;
                        rec
                    }])
                })?;
                failures.extend(theorem_failures(&rs, Status::Certified));
                records.extend(rs);
            }
            Suite::Monotonicity => {
                let (rs, fs) = monotonicity(&e, grid, opts)?;
                failures.extend(fs);
                records.extend(rs);
            }
            Suite::Duality => {
                let pairs: Vec<(Partition, Partition)> = grid
                    .partitions()
                    .iter()
                    .flat_map(|l| grid.partitions().into_iter().map(move |m| (l.clone(), m)))
                    .collect();
                let reports = match f {
                    Family::AJ => {
                        let d = DualityChecker::new(&e);
                        pairs
                            .par_iter()
                            .map(|(l, m)| d.containment(l, m, &classical_taus(), &opts.budget))
                            .collect::<Result<Vec<_>>>()?
                    }
                    Family::AM => {
                        let d = DualityChecker::new(&e);
                        pairs
                            .par_iter()
                            .map(|(l, m)| d.macdonald(l, m, &opts.budget))
                            .collect::<Result<Vec<_>>>()?
                    }
                    _ => Vec::new(),
                };
                for r in reports {
                    if !r.holds {
                        failures.push(format!("{} {} vs {}", r.claim, r.lambda, r.mu));
                    }
                    records.extend(r.records);
                }
            }
            Suite::Molev => {
                let ps = grid.partitions();
                let pairs: Vec<(&Partition, &Partition)> = ps
                    .iter()
                    .flat_map(|m| ps.iter().map(move |v| (m, v)))
                    .collect();
                let reports = pairs
                    .par_iter()
                    .map(|&(mu, nu)| {
                        molev_set_compare_with(&fam, n, mu, nu, mu.size() + 1, |l, m, v| {
                            session.lr(&e, l, m, v)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (r, &(mu, nu)) in reports.iter().zip(&pairs) {
                    let status = if r.holds {
                        Status::Certified
                    } else {
                        Status::Refuted
                    };
                    let rec = EvidenceRecord::new(
                        "molev-slice",
                        &fam,
                        n,
                        &Partition::zero(n),
                        mu,
                        Some(nu),
                        status,
                    );
                    let mut rec = rec.certificate("lr support = molev = containing on the slice");
                    rec.lambda = format!("|lambda|<={}", mu.size() + 1);
                    if !r.holds {
                        rec.certificate = None;
                        rec.witness =
                            Some(serde_json::to_string(&r.slices).expect("slices serialize"));
                        failures.push(rec.to_json());
                    }
                    records.push(rec);
                }
            }
            Suite::Integrality => {
                let covers: Vec<(Partition, Partition)> = grid
                    .containing_pairs()
                    .into_iter()
                    .filter(|(l, m)| l.covers(m).unwrap_or(false))
                    .collect();
                let rs = collect(&covers, |(l, mu)| {
                    let a = e.integral_forms(l, mu)?.a;
                    Ok(vec![integrality_record(
                        "a-int",
                        &e,
                        l,
                        mu,
                        integral_check(&e, &a, opts.unit_budget),
                    )])
                })?;
                failures.extend(theorem_failures(&rs, Status::Certified));
                records.extend(rs);
            }
            Suite::Commutation => {
                let z = Partition::zero(n);
                let ok = e.check_commutation(grid.max_size)?;
                let status = if ok {
                    Status::Certified
                } else {
                    Status::Refuted
                };
                let mut rec = EvidenceRecord::new("commutation", &fam, n, &z, &z, None, status)
                    .certificate(format!("[Z,B] = B[Z,A] on sizes <= {}", grid.max_size));
                rec.lambda = format!("|lambda|<={}", grid.max_size);
                records.push(rec);
                for nu in partitions_up_to(n, 2) {
                    let h = interp_poly(e.config(), &nu, Normalization::Unital)?;
                    let ok = e.check_structure_conjugation(&h, grid.max_size)?;
                    let status = if ok {
                        Status::Certified
                    } else {
                        Status::Refuted
                    };
                    let mut rec = EvidenceRecord::new(
                        "structure-conjugation",
                        &fam,
                        n,
                        &z,
                        &z,
                        Some(&nu),
                        status,
                    )
                    .certificate("C = B^-1 D B");
                    rec.lambda = format!("|lambda|<={}", grid.max_size);
                    records.push(rec);
                }
                failures.extend(theorem_failures(&records, Status::Certified));
            }
        }
    }
    if suite == Suite::Duality && opts.families.contains(&Family::AJ) {
        let ps: Vec<Partition> = grid
            .partitions()
            .into_iter()
            .filter(|p| p.parts().iter().all(|&x| x as usize <= n))
            .collect();
        let pairs: Vec<(&Partition, &Partition)> = ps
            .iter()
            .flat_map(|l| ps.iter().map(move |m| (l, m)))
            .collect();
        let reports = pairs
            .par_iter()
            .map(|&(l, m)| powersum_duality(n, l, m, &opts.budget))
            .collect::<Result<Vec<_>>>()?;
        for r in reports {
            if !r.holds {
                failures.push(format!("{} {} vs {}", r.claim, r.lambda, r.mu));
            }
            records.extend(r.records);
        }
    }
    failures.dedup();
    Ok(Outcome {
        name: suite.to_string(),
        records,
        failures,
    })
}

/// Positivity of `b` on containment (zero elsewhere), monotonicity of
/// differences, adjacent LR positivity, and certified adjacent quantities for
/// the Jack families.
fn monotonicity(
    e: &Engine,
    grid: Grid,
    opts: &RunOptions,
) -> Result<(Vec<EvidenceRecord>, Vec<String>)> {
    let cfg = e.config();
    let (fam, n, cone, budget) = (cfg.family.to_string(), cfg.n, cfg.cone(), &opts.budget);
    let ps = grid.partitions();
    let pairs: Vec<(&Partition, &Partition)> = ps
        .iter()
        .flat_map(|l| ps.iter().map(move |m| (l, m)))
        .collect();
    let mut failures = Vec::new();
    let per_pair: Vec<(Vec<EvidenceRecord>, Vec<String>)> = pairs
        .par_iter()
        .map(|&(l, mu)| -> Result<_> {
            let mut rs = Vec::new();
            let mut fs = Vec::new();
            let b = e.b_direct(l, mu)?;
            if !l.contains(mu)? {
                if !b.is_zero() {
                    fs.push(format!("{} b_{}_{} = {} off containment", fam, l, mu, b));
                }
                return Ok((rs, fs));
            }
            let v = cone_check(&b, cone, budget)?;
            if b.is_zero() {
                fs.push(format!("{} b_{}_{} vanishes on containment", fam, l, mu));
            }
            rs.push(EvidenceRecord::from_verdict(
                "positivity",
                &fam,
                n,
                (l, mu),
                None,
                &v,
            ));
            if l == mu {
                return Ok((rs, fs));
            }
            for nu in ps.iter().filter(|nu| mu.contains_unchecked(nu)) {
                let d = &e.b_direct(l, nu)? - &e.b_direct(mu, nu)?;
                let v = cone_check(&d, cone, budget)?;
                rs.push(EvidenceRecord::from_verdict(
                    "monotonicity",
                    &fam,
                    n,
                    (l, mu),
                    Some(nu),
                    &v,
                ));
            }
            if l.covers(mu)? {
                let a = e.adjacent(l, mu)?;
                let v = cone_check(&a, cone, budget)?;
                if cfg.family.is_jack() && v.status != Status::Certified {
                    fs.push(format!("{} adjacent a_{}_{} not certified", fam, l, mu));
                }
                rs.push(EvidenceRecord::from_verdict(
                    "adjacent",
                    &fam,
                    n,
                    (l, mu),
                    None,
                    &v,
                ));
                if cfg.family.is_jack() {
                    let big_a = e.integral_forms(l, mu)?.a;
                    let iv = check_int_j(&big_a);
                    if iv.status != Status::Certified {
                        fs.push(format!("{} A_{}_{} not certified", fam, l, mu));
                    }
                    rs.push(integrality_record("a-int", e, l, mu, iv));
                }
                for nu in ps.iter().filter(|nu| l.contains_unchecked(nu)) {
                    let c = e.lr_weighted(l, mu, nu)?;
                    let v = cone_check(&c, cone, budget)?;
                    rs.push(EvidenceRecord::from_verdict(
                        "adjacent-lr",
                        &fam,
                        n,
                        (l, mu),
                        Some(nu),
                        &v,
                    ));
                }
            }
            Ok((rs, fs))
        })
        .collect::<Result<_>>()?;
    let mut records = Vec::new();
    for (rs, fs) in per_pair {
        failures.extend(fs);
        records.extend(rs);
    }
    failures.extend(theorem_failures(&records, Status::Inconclusive));
    Ok((records, failures))
}

/// Runs one conjecture harness; `failures` lists refuted findings, which
/// are reportable results rather than errors.
pub fn run_conjecture(session: &Session, c: Conjecture, opts: &RunOptions) -> Result<Outcome> {
    let grid = opts.grid;
    let n = grid.n;
    let mut records = Vec::new();
    for &f in &opts.families {
        let e = session.engine(f, n)?;
        let fam = f.to_string();
        match c {
            Conjecture::IntJ | Conjecture::IntM => {
                let wanted = if c == Conjecture::IntJ {
                    f.is_jack()
                } else {
                    !f.is_jack()
                };
                if !wanted {
                    continue;
                }
                let pairs: Vec<(Partition, Partition)> = grid
                    .containing_pairs()
                    .into_iter()
                    .filter(|(l, m)| l != m)
                    .collect();
                let claim = c.to_string();
                records.extend(collect(&pairs, |(l, mu)| {
                    let big_b = e.integral_forms(l, mu)?.b;
                    Ok(vec![integrality_record(
                        &claim,
                        &e,
                        l,
                        mu,
                        integral_check(&e, &big_b, opts.unit_budget),
                    )])
                })?);
            }
            Conjecture::LrPositivity => {
                let ps = grid.partitions();
                let mut triples = Vec::new();
                for (l, mu) in grid.containing_pairs() {
                    for nu in ps
                        .iter()
                        .filter(|nu| **nu <= mu && l.contains_unchecked(nu))
                    {
                        if l.size() <= mu.size() + nu.size() && l != mu && &l != nu {
                            triples.push((l.clone(), mu.clone(), nu.clone()));
                        }
                    }
                }
                records.extend(collect(&triples, |(l, mu, nu)| {
                    let c = session.lr(&e, l, mu, nu)?;
                    let v = cone_check(&c, e.config().cone(), &opts.budget)?;
                    Ok(vec![EvidenceRecord::from_verdict(
                        "lr-positivity",
                        &fam,
                        n,
                        (l, mu),
                        Some(nu),
                        &v,
                    )])
                })?);
            }
            Conjecture::LrS => {
                let ps = grid.partitions();
                let pairs: Vec<(&Partition, &Partition)> = ps
                    .iter()
                    .flat_map(|m| ps.iter().map(move |v| (m, v)))
                    .collect();
                let reports = pairs
                    .par_iter()
                    .map(|&(mu, nu)| {
                        molev_set_compare_with(&fam, n, mu, nu, grid.max_size, |l, m, v| {
                            session.lr(&e, l, m, v)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                for r in reports {
                    records.extend(r.records);
                }
            }
            Conjecture::JackPositivity => {
                if f != Family::AJ {
                    continue;
                }
                let mut taus = classical_taus();
                taus.insert(1, TauPoint::Finite(BigRational::new(1.into(), 2.into())));
                taus.insert(3, TauPoint::Finite(BigRational::from_integer(2.into())));
                let xs = sample_grid(n, 8, opts.seed);
                let ps = grid.partitions();
                let mut work = Vec::new();
                for l in &ps {
                    for mu in ps.iter().filter(|m| *m != l) {
                        if l.size() == mu.size() {
                            work.push((SamplerClaim::CgsJack, l, mu));
                        }
                        work.push((SamplerClaim::KtJack, l, mu));
                    }
                }
                records.extend(collect(&work, |&(claim, l, mu)| {
                    let r = evaluation_sampler(claim, n, l, mu, &taus, &xs)?;
                    let mut rec =
                        EvidenceRecord::new(&claim.to_string(), &fam, n, l, mu, None, r.verdict);
                    rec.witness = r
                        .negatives
                        .first()
                        .map(|s| format!("tau={} x={:?} -> {}", s.tau, s.x, s.value));
                    if rec.witness.is_none() {
                        rec.certificate = Some(format!(
                            "exploratory: {} evaluations, minimum {}",
                            r.evaluations,
                            r.min_value.unwrap_or_default()
                        ));
                    }
                    Ok(vec![rec])
                })?);
            }
        }
    }
    let failures = records
        .iter()
        .filter(|r| r.verdict == Status::Refuted)
        .map(|r| r.to_json())
        .collect();
    Ok(Outcome {
        name: c.to_string(),
        records,
        failures,
    })
}
