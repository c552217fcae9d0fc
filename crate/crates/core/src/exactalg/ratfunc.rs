use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd_cofactors, int_gcd};
use super::mpoly::{MPoly, Monomial, Var, NVARS};
use crate::error::Error;

/// Reduced quotient of two integer polynomials in the parameters.
///
/// Canonical form: numerator and denominator share no non-unit factor, their
/// integer contents are coprime, and the denominator's leading coefficient
/// is positive. Zero is `0/1`. Structural equality is therefore value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MPoly,
    den: MPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        RationalFunction {
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::from_ints(r.numer().clone(), r.denom().clone())
    }

    pub fn from_ints(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        let (n, d) = (n.into(), d.into());
        assert!(!d.is_zero(), "zero denominator");
        let g = n.gcd(&d);
        let (mut n, mut d) = if g.is_zero() {
            (n, d)
        } else {
            (n / &g, d / &g)
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        RationalFunction {
            num: MPoly::constant(n),
            den: MPoly::constant(d),
        }
    }

    pub fn var(v: Var) -> Self {
        RationalFunction {
            num: MPoly::var(v),
            den: MPoly::one(),
        }
    }

    /// Laurent monomial `prod v^e` with possibly negative exponents.
    pub fn laurent(exps: [i32; NVARS]) -> Self {
        let mut up = [0u16; NVARS];
        let mut down = [0u16; NVARS];
        for i in 0..NVARS {
            if exps[i] >= 0 {
                up[i] = exps[i] as u16;
            } else {
                down[i] = (-exps[i]) as u16;
            }
        }
        RationalFunction {
            num: MPoly::monomial(Monomial(up)),
            den: MPoly::monomial(Monomial(down)),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RationalFunction {
            num: p,
            den: MPoly::one(),
        }
    }

    /// Canonical form of `num/den`.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (n, d) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let (_, n, d) = gcd_cofactors(&num, &den);
            (n, d)
        };
        let (n, d) = if n.is_monomial_term() || d.is_monomial_term() {
            let m = n.min_monomial().gcd(&d.min_monomial());
            (n.div_monomial(&m), d.div_monomial(&m))
        } else {
            (n, d)
        };
        Self::fix_scalars(n, d)
    }

    /// Assumes `n` and `d` coprime as polynomials over the rationals.
    fn fix_scalars(n: MPoly, d: MPoly) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let g = int_gcd(&n.content(), &d.content());
        let (mut n, mut d) = if g.is_one() {
            (n, d)
        } else {
            (n.div_scalar(&g), d.div_scalar(&g))
        };
        if d.leading_coeff().is_negative() {
            n = -n;
            d = -d;
        }
        RationalFunction { num: n, den: d }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        Some(BigRational::new(
            self.num.constant_value()?,
            self.den.constant_value()?,
        ))
    }

    pub fn vars(&self) -> Vec<Var> {
        let dn = self.num.degrees();
        let dd = self.den.degrees();
        Var::ALL
            .into_iter()
            .filter(|v| dn[v.index()] > 0 || dd[v.index()] > 0)
            .collect()
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::fix_scalars(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        RationalFunction {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        }
    }

    pub fn eval(&self, point: &[Option<BigRational>; NVARS]) -> Result<BigRational, Error> {
        let d = self.den.eval(point).ok_or(Error::UnassignedVariable)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.eval(point).ok_or(Error::UnassignedVariable)?;
        Ok(n / d)
    }

    /// Evaluates with variables given as `(var, value)` pairs.
    pub fn eval_at(&self, assignment: &[(Var, BigRational)]) -> Result<BigRational, Error> {
        let mut point: [Option<BigRational>; NVARS] = Default::default();
        for (v, x) in assignment {
            point[v.index()] = Some(x.clone());
        }
        self.eval(&point)
    }

    /// Substitutes a variable by a polynomial.
    pub fn substitute(&self, v: Var, value: &MPoly) -> Self {
        Self::reduce(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    /// Limit as `v` tends to infinity, or `None` when it diverges.
    pub fn limit_at_infinity(&self, v: Var) -> Option<Self> {
        let dn = self.num.degree_in(v);
        let dd = self.den.degree_in(v);
        if self.num.is_zero() || dn < dd {
            return Some(Self::zero());
        }
        if dn > dd {
            return None;
        }
        let top = |p: &MPoly, d: u16| {
            MPoly::from_terms(
                p.terms()
                    .iter()
                    .filter(|(m, _)| m.exp(v) == d)
                    .map(|(m, c)| {
                        let mut e = m.0;
                        e[v.index()] = 0;
                        (Monomial(e), c.clone())
                    }),
            )
        };
        Some(Self::reduce(top(&self.num, dn), top(&self.den, dd)))
    }

    /// Sums many values. Terms whose denominators agree up to a monomial and
    /// an integer are first combined over a common denominator, so only one
    /// reduction per group is needed.
    pub fn sum<I: IntoIterator<Item = RationalFunction>>(it: I) -> Self {
        let mut groups: HashMap<MPoly, Vec<(MPoly, Monomial, BigInt)>> = HashMap::new();
        let mut order: Vec<MPoly> = Vec::new();
        for x in it.into_iter().filter(|x| !x.is_zero()) {
            let m = x.den.min_monomial();
            let (c, rest) = x.den.div_monomial(&m).primitive();
            let entry = groups.entry(rest.clone()).or_insert_with(|| {
                order.push(rest);
                Vec::new()
            });
            entry.push((x.num, m, c));
        }
        let mut layer: Vec<RationalFunction> = Vec::with_capacity(order.len());
        for key in order {
            let items = groups.remove(&key).expect("group recorded");
            if items.len() == 1 {
                let (num, m, c) = items.into_iter().next().unwrap();
                layer.push(RationalFunction {
                    num,
                    den: key.mul_monomial(&m).scale(&c),
                });
                continue;
            }
            let mut big_m = Monomial::ONE;
            let mut big_c = BigInt::one();
            for (_, m, c) in &items {
                for (a, b) in big_m.0.iter_mut().zip(m.0.iter()) {
                    *a = (*a).max(*b);
                }
                big_c = big_c.lcm(c);
            }
            let mut num = MPoly::zero();
            for (n, m, c) in &items {
                num = &num + &n.mul_monomial(&m.quotient_of(&big_m)).scale(&(&big_c / c));
            }
            let den = key.mul_monomial(&big_m).scale(&big_c);
            layer.push(RationalFunction::reduce(num, den));
        }
        if layer.is_empty() {
            return Self::zero();
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut iter = layer.into_iter();
            while let Some(a) = iter.next() {
                match iter.next() {
                    Some(b) => next.push(&a + &b),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        layer.pop().unwrap()
    }

    pub fn product<I: IntoIterator<Item = RationalFunction>>(it: I) -> Self {
        let mut acc = Self::one();
        for x in it {
            if x.is_zero() {
                return Self::zero();
            }
            acc = &acc * &x;
        }
        acc
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_constant() {
                return RationalFunction::fix_scalars(&self.num + &rhs.num, self.den.clone());
            }
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            let n = &self.num.scale(&rhs.den.leading_coeff())
                + &rhs.num.scale(&self.den.leading_coeff());
            let d = &self.den * &rhs.den;
            return RationalFunction::fix_scalars(n, d);
        }
        let (g, b1, d1) = gcd_cofactors(&self.den, &rhs.den);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let den = &self.den * &d1;
        if g.is_constant() {
            return RationalFunction::fix_scalars(num, den);
        }
        let (_, n, gq) = gcd_cofactors(&num, &g);
        let den = if gq == g { den } else { (&b1 * &d1) * &gq };
        RationalFunction::reduce_scalars_only(n, den)
    }
}

impl RationalFunction {
    fn reduce_scalars_only(n: MPoly, d: MPoly) -> Self {
        let (n, d) = if n.is_monomial_term() || d.is_monomial_term() {
            let m = n.min_monomial().gcd(&d.min_monomial());
            (n.div_monomial(&m), d.div_monomial(&m))
        } else {
            (n, d)
        };
        Self::fix_scalars(n, d)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let cross = |n: &MPoly, d: &MPoly| -> (MPoly, MPoly) {
            if d.is_constant() || n.is_constant() {
                (n.clone(), d.clone())
            } else if d.is_monomial_term() || n.is_monomial_term() {
                let m = n.min_monomial().gcd(&d.min_monomial());
                (n.div_monomial(&m), d.div_monomial(&m))
            } else {
                let (_, a, b) = gcd_cofactors(n, d);
                (a, b)
            }
        };
        let (n1, d2) = cross(&self.num, &rhs.den);
        let (n2, d1) = cross(&rhs.num, &self.den);
        RationalFunction::fix_scalars(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$f(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::from_int(c)
    }
}

impl From<MPoly> for RationalFunction {
    fn from(p: MPoly) -> Self {
        RationalFunction {
            num: p,
            den: MPoly::one(),
        }
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

impl serde::Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let part = |p: &MPoly| {
            if p.len() == 1 {
                p.to_string()
            } else {
                format!("({})", p)
            }
        };
        let den = self.den.to_string();
        if self.den.len() == 1 && !den.contains('*') {
            write!(f, "{}/{}", part(&self.num), den)
        } else {
            write!(f, "{}/({})", part(&self.num), den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF[{}]", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> MPoly {
        MPoly::var(Var::Tau)
    }

    fn rf(n: MPoly, d: MPoly) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let r = rf(&tau() * &tau() - MPoly::one(), tau() - MPoly::one());
        assert_eq!(r, RationalFunction::from_poly(tau() + MPoly::one()));
    }

    #[test]
    fn reduces_content() {
        let r = rf(tau().scale(&BigInt::from(2)), MPoly::constant(4));
        assert_eq!(r.numer(), &tau());
        assert_eq!(r.denom(), &MPoly::constant(2));
        assert_eq!(r.to_string(), "tau/2");
    }

    #[test]
    fn cube_over_linear_difference() {
        let r = rf(tau().pow(3) + MPoly::one(), tau() + MPoly::one());
        assert_eq!(r.to_string(), "tau^2 - tau + 1");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(tau(), MPoly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn evaluation_examples() {
        let half = BigRational::new(1.into(), 2.into());
        let r = rf(tau() + MPoly::one(), MPoly::one());
        assert_eq!(
            r.eval_at(&[(Var::Tau, BigRational::from_integer(2.into()))])
                .unwrap(),
            BigRational::from_integer(3.into())
        );
        let q = MPoly::var(Var::Q);
        let g = rf(MPoly::one() - &q * &q, MPoly::one() - q.clone());
        assert_eq!(
            g.eval_at(&[(Var::Q, half.clone())]).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        let p = rf(&tau() * &tau() - tau() + MPoly::one(), MPoly::one());
        assert_eq!(
            p.eval_at(&[(Var::Tau, half)]).unwrap(),
            BigRational::new(3.into(), 4.into())
        );
    }

    #[test]
    fn pole_is_reported() {
        let q = MPoly::var(Var::Q);
        let r = rf(MPoly::one(), MPoly::one() - q);
        assert!(matches!(
            r.eval_at(&[(Var::Q, BigRational::one())]),
            Err(Error::PoleAtPoint)
        ));
    }

    #[test]
    fn denominator_sign_is_positive() {
        let r = rf(MPoly::one(), MPoly::one() - MPoly::var(Var::Q));
        assert!(r.denom().leading_coeff().is_positive());
        assert_eq!(r.to_string(), "-1/(q - 1)");
    }

    #[test]
    fn laurent_monomials_combine() {
        let x = RationalFunction::laurent([0, 0, 0, -2, 1, 0]);
        let y = RationalFunction::laurent([0, 0, 0, 3, -1, 0]);
        assert_eq!(&x * &y, RationalFunction::var(Var::Q));
    }
}
