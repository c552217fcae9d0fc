use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of parameter variables in the universe.
pub const NVARS: usize = 6;

/// Parameter variables, listed in the fixed order used for term ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Gamma = 0,
    Tau = 1,
    Alpha = 2,
    Q = 3,
    T = 4,
    A = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Gamma, Var::Tau, Var::Alpha, Var::Q, Var::T, Var::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Gamma => "g",
            Var::Tau => "tau",
            Var::Alpha => "alpha",
            Var::Q => "q",
            Var::T => "t",
            Var::A => "a",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector over the parameter variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u16) -> Monomial {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a *= k;
        }
        Monomial(m)
    }

    fn fmt_factors(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            self.fmt_factors(f)
        }
    }
}

/// Sparse polynomial in the parameter variables with integer coefficients.
///
/// Terms are kept sorted ascending in graded-lex order, so the last term is
/// the leading one. Rational scalars live one level up, in
/// [`RationalFunction`](super::RationalFunction).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> MPoly {
        MPoly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> MPoly {
        let c = c.into();
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(Monomial::var(v, 1), 1)
    }

    pub fn monomial(m: Monomial) -> MPoly {
        MPoly::term(m, 1)
    }

    /// `1 - x^m`.
    pub fn one_minus(m: Monomial) -> MPoly {
        &MPoly::one() - &MPoly::monomial(m)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> MPoly {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in it {
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        MPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .last()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> [u16; NVARS] {
        let mut d = [0u16; NVARS];
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                d[i] = d[i].max(m.0[i]);
            }
        }
        d
    }

    pub fn vars(&self) -> Vec<Var> {
        let d = self.degrees();
        Var::ALL.into_iter().filter(|v| d[v.index()] > 0).collect()
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.gcd(m)),
        }
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_scalar(&self, c: &BigInt) -> MPoly {
        if c.is_one() {
            return self.clone();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| {
                    debug_assert!((k % c).is_zero());
                    (*m, k / c)
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> MPoly {
        if m.is_one() {
            return self.clone();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.quotient_of(k), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Primitive part with positive leading coefficient, and the signed
    /// content so that `self = content * primitive`.
    pub fn primitive(&self) -> (BigInt, MPoly) {
        if self.is_zero() {
            return (BigInt::zero(), MPoly::zero());
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        (c.clone(), self.div_scalar(&c))
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((dm.quotient_of(m), q));
            }
            return Some(MPoly { terms: out });
        }
        let (ldm, ldc) = d.terms.last().unwrap();
        if self.total_degree() < ldm.degree() {
            return None;
        }
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !ldm.divides(&m) {
                return None;
            }
            let (qc, r) = c.div_rem(ldc);
            if !r.is_zero() {
                return None;
            }
            let qm = ldm.quotient_of(&m);
            for (dm, dc) in d.terms.iter().rev().skip(1) {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        Some(MPoly { terms: quot })
    }

    /// Evaluates at a rational point; `None` if an occurring variable is unassigned.
    pub fn eval(&self, point: &[Option<BigRational>; NVARS]) -> Option<BigRational> {
        // Clear denominators so the inner loop is integer-only.
        let degs = self.degrees();
        let mut num_pows: Vec<Vec<BigInt>> = Vec::with_capacity(NVARS);
        let mut den_pows: Vec<Vec<BigInt>> = Vec::with_capacity(NVARS);
        let mut scale = BigInt::one();
        for i in 0..NVARS {
            let d = degs[i] as usize;
            if d == 0 {
                num_pows.push(vec![BigInt::one()]);
                den_pows.push(vec![BigInt::one()]);
                continue;
            }
            let x = point[i].as_ref()?;
            let mut np = vec![BigInt::one()];
            let mut dp = vec![BigInt::one()];
            for _ in 0..d {
                np.push(np.last().unwrap() * x.numer());
                dp.push(dp.last().unwrap() * x.denom());
            }
            scale *= &dp[d];
            num_pows.push(np);
            den_pows.push(dp);
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                let e = m.0[i] as usize;
                let d = degs[i] as usize;
                if d == 0 {
                    continue;
                }
                if e > 0 {
                    t *= &num_pows[i][e];
                }
                if e < d {
                    t *= &den_pows[i][d - e];
                }
            }
            acc += t;
        }
        Some(BigRational::new(acc, scale))
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let deg = self.degree_in(v) as usize;
        if deg == 0 {
            return self.clone();
        }
        let mut powers = vec![MPoly::one()];
        for _ in 0..deg {
            let next = powers.last().unwrap() * value;
            powers.push(next);
        }
        let mut groups: BTreeMap<u16, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = *m;
            rest.0[v.index()] = 0;
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        let mut acc = MPoly::zero();
        for (e, ts) in groups {
            let part = MPoly::from_terms(ts);
            acc = &acc + &(&part * &powers[e as usize]);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn all_coeffs_nonneg(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    pub fn all_coeffs_nonpos(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_positive())
    }

    pub fn coeff_sum(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }
}

fn merge(
    a: &[(Monomial, BigInt)],
    b: &[(Monomial, BigInt)],
    negate_b: bool,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((*m, if negate_b { -c } else { c.clone() }));
    }
    out
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        MPoly {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        MPoly {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return MPoly {
                terms: big.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
            };
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let p = c1 * c2;
                match acc.get_mut(&m1.mul(m2)) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(m1.mul(m2), p);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        MPoly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> MPoly {
        MPoly::constant(c)
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> MPoly {
        MPoly::var(v)
    }
}

impl fmt::Display for MPoly {
    /// Terms in descending graded-lex order, e.g. `tau^2 - tau + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                m.fmt_factors(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> MPoly {
        MPoly::var(Var::Tau)
    }
    fn q() -> MPoly {
        MPoly::var(Var::Q)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&tau() + &MPoly::one()) * &(&tau() - &MPoly::one());
        assert_eq!(p, &(&tau() * &tau()) - &MPoly::one());
        assert_eq!(p.to_string(), "tau^2 - 1");
    }

    #[test]
    fn additive_identity() {
        let p = &tau() * &q() + MPoly::constant(3);
        assert_eq!(&p + &MPoly::zero(), p);
    }

    #[test]
    fn geometric_product_expands_termwise() {
        let lhs = &(&MPoly::one() - &q()) * &(&(&MPoly::one() + &q()) + &q().pow(2));
        // term-by-term: coefficient of q^k is [k=0] - [k=3]
        let oracle = MPoly::from_terms((0..=3u16).map(|k| {
            let c: i64 = match k {
                0 => 1,
                3 => -1,
                _ => 0,
            };
            (Monomial::var(Var::Q, k), BigInt::from(c))
        }));
        assert_eq!(lhs, oracle);
        assert_eq!(lhs.to_string(), "-q^3 + 1");
    }

    #[test]
    fn graded_lex_order_puts_a_above_gamma() {
        let a = Monomial::var(Var::A, 1);
        let g = Monomial::var(Var::Gamma, 1);
        assert!(a > g);
        assert!(Monomial::var(Var::Gamma, 2) > a);
    }

    #[test]
    fn exact_division_roundtrip() {
        let d = &MPoly::one() - &(&q() * &MPoly::var(Var::T));
        let p = &(&tau() + &q()) * &d;
        assert_eq!(p.div_exact(&d), Some(&tau() + &q()));
        assert_eq!(p.div_exact(&(&q() + &MPoly::constant(2))), None);
    }

    #[test]
    fn substitution_shifts_variable() {
        let p = q().pow(2);
        let s = p.substitute(Var::Q, &(&MPoly::one() + &MPoly::var(Var::Gamma)));
        assert_eq!(s.to_string(), "g^2 + 2*g + 1");
    }
}
