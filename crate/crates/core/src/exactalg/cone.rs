//! Tri-state membership tests for the positivity cones.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mpoly::{MPoly, Monomial, Var, NVARS};
use super::ratfunc::RationalFunction;
use crate::error::Error;

/// Positivity cone of one family's parameter field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cone {
    AJ,
    BJ,
    AM,
    BM,
}

impl Cone {
    pub fn params(self) -> &'static [Var] {
        match self {
            Cone::AJ => &[Var::Tau],
            Cone::BJ => &[Var::Tau, Var::Alpha],
            Cone::AM => &[Var::Q, Var::T],
            Cone::BM => &[Var::Q, Var::T, Var::A],
        }
    }

    pub fn is_jack(self) -> bool {
        matches!(self, Cone::AJ | Cone::BJ)
    }

    fn grid(self) -> Vec<BigRational> {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        if self.is_jack() {
            vec![r(1, 4), r(1, 2), r(1, 1), r(2, 1), r(4, 1)]
        } else {
            vec![r(1, 5), r(1, 2), r(4, 5)]
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertBudget {
    pub n_max: u32,
    pub random_points: usize,
    pub seed: u64,
    /// Upper bound on trial divisions spent searching for atom factorizations.
    pub atom_divisions: usize,
}

impl Default for CertBudget {
    fn default() -> Self {
        CertBudget {
            n_max: 50,
            random_points: 64,
            seed: 0,
            atom_divisions: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Certified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyaMultiplier {
    /// `prod (1 + v)` over the cone parameters.
    PerVariable,
    /// `1 + sum v` over the cone parameters.
    Simplex,
}

impl PolyaMultiplier {
    fn poly(self, cone: Cone) -> MPoly {
        match self {
            PolyaMultiplier::PerVariable => cone.params().iter().fold(MPoly::one(), |acc, &v| {
                &acc * &(&MPoly::one() + &MPoly::var(v))
            }),
            PolyaMultiplier::Simplex => cone
                .params()
                .iter()
                .fold(MPoly::one(), |acc, &v| &acc + &MPoly::var(v)),
        }
    }
}

/// `constant * monomial * prod (1 - x^e)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomProduct {
    pub constant: BigInt,
    pub monomial: Monomial,
    pub atoms: Vec<(Monomial, u32)>,
}

impl AtomProduct {
    pub fn expand(&self) -> MPoly {
        let mut p = MPoly::term(self.monomial, self.constant.clone());
        for (e, k) in &self.atoms {
            p = &p * &MPoly::one_minus(*e).pow(*k);
        }
        p
    }
}

impl fmt::Display for AtomProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MPoly::term(self.monomial, self.constant.clone()))?;
        for (e, k) in &self.atoms {
            write!(f, "*(1 - {:?})", e)?;
            if *k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Numerator and denominator times `multiplier^exponent` have sign-uniform coefficients.
    Polya {
        multiplier: PolyaMultiplier,
        exponent: u32,
    },
    Atoms {
        num: AtomProduct,
        den: AtomProduct,
    },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Polya {
                multiplier,
                exponent,
            } => {
                let m = match multiplier {
                    PolyaMultiplier::PerVariable => "per-variable",
                    PolyaMultiplier::Simplex => "simplex",
                };
                write!(f, "polya N={} ({})", exponent, m)
            }
            Certificate::Atoms { num, den } => write!(f, "atoms ({}) / ({})", num, den),
        }
    }
}

impl Certificate {
    /// Independently re-checks the certificate against `f`.
    pub fn verify(&self, f: &RationalFunction, cone: Cone) -> bool {
        match self {
            Certificate::Polya {
                multiplier,
                exponent,
            } => {
                let m = multiplier.poly(cone).pow(*exponent);
                let big_f = f.numer() * &m;
                let big_g = f.denom() * &m;
                let uniform = |p: &MPoly| p.all_coeffs_nonneg() || p.all_coeffs_nonpos();
                let same_sign =
                    big_f.is_zero() || (big_f.all_coeffs_nonneg() == big_g.all_coeffs_nonneg());
                uniform(&big_f)
                    && uniform(&big_g)
                    && same_sign
                    && RationalFunction::new(big_f, big_g)
                        .map(|r| &r == f)
                        .unwrap_or(false)
            }
            Certificate::Atoms { num, den } => {
                if num.constant.is_zero() {
                    return f.is_zero();
                }
                let positive = num.constant.is_positive() == den.constant.is_positive();
                positive
                    && RationalFunction::new(num.expand(), den.expand())
                        .map(|r| &r == f)
                        .unwrap_or(false)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: Vec<(Var, BigRational)>,
    pub value: BigRational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .point
            .iter()
            .map(|(v, x)| format!("{}={}", v.name(), x))
            .collect();
        write!(f, "{} -> {}", pts.join(","), self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
}

impl PositivityVerdict {
    fn certified(c: Certificate) -> Self {
        PositivityVerdict {
            status: Status::Certified,
            certificate: Some(c),
            witness: None,
        }
    }
}

/// Decides membership of `f` in the cone as far as the sufficient tests allow.
pub fn cone_check(
    f: &RationalFunction,
    cone: Cone,
    budget: &CertBudget,
) -> Result<PositivityVerdict, Error> {
    let params = cone.params();
    let stray: Vec<&str> = f
        .vars()
        .into_iter()
        .filter(|v| !params.contains(v))
        .map(|v| v.name())
        .collect();
    if !stray.is_empty() {
        return Err(Error::WrongParameterSet(stray.join(",")));
    }
    let cert = if cone.is_jack() {
        polya_certificate(f, cone, budget.n_max)
    } else {
        atom_certificate(f, budget)
    };
    if let Some(c) = cert {
        return Ok(PositivityVerdict::certified(c));
    }
    if let Some(w) = find_negative(f, cone, budget) {
        return Ok(PositivityVerdict {
            status: Status::Refuted,
            certificate: None,
            witness: Some(w),
        });
    }
    Ok(PositivityVerdict {
        status: Status::Inconclusive,
        certificate: None,
        witness: None,
    })
}

fn polya_exponent(p: &MPoly, m: &MPoly, n_max: u32) -> Option<(u32, bool)> {
    let mut cur = p.clone();
    for n in 0..=n_max {
        if cur.all_coeffs_nonneg() {
            return Some((n, true));
        }
        if cur.all_coeffs_nonpos() {
            return Some((n, false));
        }
        cur = &cur * m;
    }
    None
}

fn polya_certificate(f: &RationalFunction, cone: Cone, n_max: u32) -> Option<Certificate> {
    let multipliers: &[PolyaMultiplier] = match cone {
        Cone::AJ => &[PolyaMultiplier::PerVariable],
        _ => &[PolyaMultiplier::PerVariable, PolyaMultiplier::Simplex],
    };
    for &mult in multipliers {
        let m = mult.poly(cone);
        let Some((nn, sn)) = polya_exponent(f.numer(), &m, n_max) else {
            continue;
        };
        let Some((nd, sd)) = polya_exponent(f.denom(), &m, n_max) else {
            continue;
        };
        if f.is_zero() || sn == sd {
            return Some(Certificate::Polya {
                multiplier: mult,
                exponent: nn.max(nd),
            });
        }
    }
    None
}

fn atom_certificate(f: &RationalFunction, budget: &CertBudget) -> Option<Certificate> {
    if f.is_zero() {
        let z = AtomProduct {
            constant: BigInt::zero(),
            monomial: Monomial::ONE,
            atoms: vec![],
        };
        let one = AtomProduct {
            constant: BigInt::one(),
            monomial: Monomial::ONE,
            atoms: vec![],
        };
        return Some(Certificate::Atoms { num: z, den: one });
    }
    let mut spent = 0usize;
    let mut net: HashMap<Monomial, i64> = HashMap::new();
    let (cn, mn) = cyclotomic_split(f.numer(), 1, &mut net, budget.atom_divisions, &mut spent)?;
    let (cd, md) = cyclotomic_split(f.denom(), -1, &mut net, budget.atom_divisions, &mut spent)?;
    if cn.is_positive() != cd.is_positive() {
        return None;
    }
    let mut num_atoms = Vec::new();
    let mut den_atoms = Vec::new();
    for (e, k) in net {
        match k.cmp(&0) {
            std::cmp::Ordering::Greater => num_atoms.push((e, k as u32)),
            std::cmp::Ordering::Less => den_atoms.push((e, (-k) as u32)),
            std::cmp::Ordering::Equal => {}
        }
    }
    num_atoms.sort();
    den_atoms.sort();
    let common = mn.gcd(&md);
    Some(Certificate::Atoms {
        num: AtomProduct {
            constant: cn,
            monomial: common.quotient_of(&mn),
            atoms: num_atoms,
        },
        den: AtomProduct {
            constant: cd,
            monomial: common.quotient_of(&md),
            atoms: den_atoms,
        },
    })
}

/// True iff `1 - x^e` divides `p`: every coset of `Z e` has zero coefficient sum.
fn divisible_by_atom(p: &MPoly, e: &Monomial) -> bool {
    let i0 = match e.0.iter().position(|&x| x > 0) {
        Some(i) => i,
        None => return false,
    };
    let mut sums: HashMap<[i32; NVARS], BigInt> = HashMap::new();
    for (m, c) in p.terms() {
        let k = (m.0[i0] / e.0[i0]) as i32;
        let mut key = [0i32; NVARS];
        for i in 0..NVARS {
            key[i] = m.0[i] as i32 - k * e.0[i] as i32;
        }
        *sums.entry(key).or_insert_with(BigInt::zero) += c;
    }
    sums.values().all(|s| s.is_zero())
}

fn mobius(mut k: u32) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            k /= p;
            if k.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

fn euler_phi(k: u32) -> u32 {
    (1..=k)
        .filter(|&j| num_integer::Integer::gcd(&j, &k) == 1)
        .count() as u32
}

/// `Phi_k(m)` normalized to constant term 1, with `Phi_1(m) = 1 - m`.
fn cyclotomic_in(m: &Monomial, k: u32) -> MPoly {
    let mut num = MPoly::one();
    let mut den = MPoly::one();
    for j in (1..=k).filter(|j| k.is_multiple_of(*j)) {
        let atom = MPoly::one_minus(m.pow(j as u16));
        match mobius(k / j) {
            1 => num = &num * &atom,
            -1 => den = &den * &atom,
            _ => {}
        }
    }
    let phi = num.div_exact(&den).expect("cyclotomic quotient is exact");
    if phi.coeff(&Monomial::ONE).is_one() {
        phi
    } else {
        -phi
    }
}

fn primitive_directions(bound: &Monomial) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = [0u16; NVARS];
    fn rec(i: usize, e: &mut [u16; NVARS], bound: &[u16; NVARS], out: &mut Vec<Monomial>) {
        if i == NVARS {
            let g = e
                .iter()
                .fold(0u16, |g, &x| num_integer::Integer::gcd(&g, &x));
            if g == 1 {
                out.push(Monomial(*e));
            }
            return;
        }
        for k in 0..=bound[i] {
            e[i] = k;
            rec(i + 1, e, bound, out);
        }
        e[i] = 0;
    }
    rec(0, &mut e, &bound.0, &mut out);
    out.sort();
    out
}

/// Writes `p` as `constant * monomial * prod Phi_k(x^d)` and accumulates the
/// equivalent atom exponents (scaled by `side`) into `net`.
fn cyclotomic_split(
    p: &MPoly,
    side: i64,
    net: &mut HashMap<Monomial, i64>,
    max_divisions: usize,
    spent: &mut usize,
) -> Option<(BigInt, Monomial)> {
    let monomial = p.min_monomial();
    let mut r = p.div_monomial(&monomial);
    'outer: while !r.is_constant() {
        let lead = r.leading()?.0;
        for d in primitive_directions(&lead) {
            let mut k = 1u32;
            loop {
                let ph = euler_phi(k) as u16;
                if !d.pow(ph).divides(&lead) {
                    break;
                }
                if k == 1 && !divisible_by_atom(&r, &d) {
                    k += 1;
                    continue;
                }
                if *spent >= max_divisions {
                    return None;
                }
                *spent += 1;
                if let Some(q) = r.div_exact(&cyclotomic_in(&d, k)) {
                    for j in (1..=k).filter(|j| k.is_multiple_of(*j)) {
                        let mu = mobius(k / j);
                        if mu != 0 {
                            *net.entry(d.pow(j as u16)).or_insert(0) += side * mu;
                        }
                    }
                    r = q;
                    continue 'outer;
                }
                k += 1;
            }
        }
        return None;
    }
    Some((r.constant_value()?, monomial))
}

fn sample_points(cone: Cone, budget: &CertBudget) -> Vec<Vec<BigRational>> {
    let dim = cone.params().len();
    let grid = cone.grid();
    let mut pts: Vec<Vec<BigRational>> = vec![vec![]];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                grid.iter().map(move |g| {
                    let mut q = p.clone();
                    q.push(g.clone());
                    q
                })
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_points {
        let p = (0..dim)
            .map(|_| {
                if cone.is_jack() {
                    BigRational::new(
                        rng.gen_range(1..=64i64).into(),
                        rng.gen_range(1..=64i64).into(),
                    )
                } else {
                    let d: i64 = rng.gen_range(2..=64);
                    BigRational::new(rng.gen_range(1..d).into(), d.into())
                }
            })
            .collect();
        pts.push(p);
    }
    pts
}

/// Exact sampling falsifier: first point (grid, then seeded random) where `f < 0`.
pub fn find_negative(f: &RationalFunction, cone: Cone, budget: &CertBudget) -> Option<Witness> {
    let params = cone.params();
    for p in sample_points(cone, budget) {
        let assignment: Vec<(Var, BigRational)> = params.iter().cloned().zip(p).collect();
        if let Ok(v) = f.eval_at(&assignment) {
            if v.is_negative() {
                return Some(Witness {
                    point: assignment,
                    value: v,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> MPoly {
        MPoly::var(Var::Tau)
    }

    #[test]
    fn quadratic_without_real_roots_certified_with_one_multiplier() {
        let f = RationalFunction::from_poly(&(&tau() * &tau()) - &tau() + MPoly::one());
        let v = cone_check(&f, Cone::AJ, &CertBudget::default()).unwrap();
        assert_eq!(v.status, Status::Certified);
        let c = v.certificate.unwrap();
        assert_eq!(
            c,
            Certificate::Polya {
                multiplier: PolyaMultiplier::PerVariable,
                exponent: 1
            }
        );
        assert!(c.verify(&f, Cone::AJ));
    }

    #[test]
    fn negative_constant_refuted_at_tau_one() {
        let f = RationalFunction::from_int(-1);
        let v = cone_check(&f, Cone::AJ, &CertBudget::default()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        let w = v.witness.unwrap();
        assert!(w.value.is_negative());
        assert!(w
            .point
            .iter()
            .any(|(var, x)| *var == Var::Tau && x.is_positive()));
    }

    #[test]
    fn reduced_atom_ratio_certified() {
        let t = MPoly::var(Var::T);
        let num =
            MPoly::one_minus(Monomial::var(Var::T, 2)) * MPoly::one_minus(Monomial::var(Var::Q, 2));
        let den = MPoly::one_minus(Monomial::var(Var::T, 1))
            * MPoly::one_minus(Monomial::var(Var::Q, 1))
            * t;
        let f = RationalFunction::new(num, den).unwrap();
        let v = cone_check(&f, Cone::AM, &CertBudget::default()).unwrap();
        assert_eq!(v.status, Status::Certified);
        assert!(v.certificate.unwrap().verify(&f, Cone::AM));
    }

    #[test]
    fn stray_variable_rejected() {
        let f = RationalFunction::var(Var::Q);
        assert!(matches!(
            cone_check(&f, Cone::AJ, &CertBudget::default()),
            Err(Error::WrongParameterSet(_))
        ));
    }

    #[test]
    fn atom_divisibility_matches_trial_division() {
        let p = MPoly::one_minus(Monomial([0, 0, 0, 2, 1, 0]))
            * (MPoly::var(Var::Q) + MPoly::constant(3));
        assert!(divisible_by_atom(&p, &Monomial([0, 0, 0, 2, 1, 0])));
        assert!(!divisible_by_atom(&p, &Monomial([0, 0, 0, 1, 1, 0])));
    }

    #[test]
    fn sign_mixed_macdonald_value_refuted_or_inconclusive() {
        let q = MPoly::var(Var::Q);
        let f = RationalFunction::from_poly(&q - &MPoly::one());
        let v = cone_check(&f, Cone::AM, &CertBudget::default()).unwrap();
        // q - 1 = -(1 - q) is negative on (0,1)
        assert_eq!(v.status, Status::Refuted);
    }
}
