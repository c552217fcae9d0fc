//! Integrality-and-positivity tests for integral binomial coefficients.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::coefficients::reparametrize;
use crate::exactalg::{MPoly, Monomial, RationalFunction, Status, Var};

/// Outcome of an integrality test, with a human-readable certificate or witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityVerdict {
    pub status: Status,
    pub certificate: Option<String>,
    pub witness: Option<String>,
}

impl IntegralityVerdict {
    fn certified(c: String) -> Self {
        IntegralityVerdict {
            status: Status::Certified,
            certificate: Some(c),
            witness: None,
        }
    }

    fn refuted(w: String) -> Self {
        IntegralityVerdict {
            status: Status::Refuted,
            certificate: None,
            witness: Some(w),
        }
    }

    fn inconclusive(w: String) -> Self {
        IntegralityVerdict {
            status: Status::Inconclusive,
            certificate: None,
            witness: Some(w),
        }
    }
}

/// Splits a rational function with constant denominator into an integer
/// polynomial, or reports why that is impossible.
fn integer_polynomial(f: &RationalFunction) -> Result<MPoly, String> {
    let Some(c) = f.denom().constant_value() else {
        return Err(format!("denominator {} is not constant", f.denom()));
    };
    for (m, a) in f.numer().terms() {
        if !a.is_multiple_of(&c) {
            return Err(format!(
                "coefficient {}/{} of {} is not an integer",
                a,
                c,
                MPoly::monomial(*m)
            ));
        }
    }
    Ok(f.numer().div_scalar(&c))
}

/// Membership in `Z_{≥0}[params]`, checked coefficient by coefficient.
pub fn check_int_j(f: &RationalFunction) -> IntegralityVerdict {
    let p = match integer_polynomial(f) {
        Ok(p) => p,
        Err(w) => return IntegralityVerdict::refuted(w),
    };
    if let Some((m, c)) = p.terms().iter().find(|(_, c)| c.is_negative()) {
        return IntegralityVerdict::refuted(format!(
            "coefficient {} of {}",
            c,
            MPoly::monomial(*m)
        ));
    }
    IntegralityVerdict::certified(format!(
        "polynomial with {} non-negative integer coefficients",
        p.len()
    ))
}

/// The factors `q`, `t`, `a` after reparametrization.
fn units() -> [(Var, MPoly); 3] {
    let g = MPoly::var(Var::Gamma);
    let one = MPoly::one();
    [
        (Var::Q, &one + &g),
        (Var::T, &one + &(&g * &MPoly::var(Var::Tau))),
        (Var::A, &one + &(&g * &MPoly::var(Var::Alpha))),
    ]
}

/// Sign and exponents of `q, t, a` pulled out of a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Prefactor {
    negative: bool,
    exps: [i64; 3],
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for (name, e) in ["q", "t", "a"].iter().zip(self.exps) {
            if e != 0 {
                write!(f, " {}^{}", name, e)?;
            }
        }
        Ok(())
    }
}

/// Membership of `f(q,t,a)` in `± q^i t^j a^k · Z_{≥0}[γ,τ,α]`.
///
/// Monomials in `q,t,a` are cleared first; after reparametrization, factors
/// `1+γ`, `1+γτ`, `1+γα` are moved between numerator and denominator.  A
/// denominator with any other factor, or a polynomial with non-integer
/// content, is refuted.  Mixed signs trigger a search over extra powers of
/// the three units whose total degree is at most `budget`.
pub fn check_int_m(f: &RationalFunction, budget: u32) -> IntegralityVerdict {
    if f.is_zero() {
        return IntegralityVerdict::certified("zero".into());
    }
    let mn = f.numer().min_monomial();
    let md = f.denom().min_monomial();
    let exp = |m: &Monomial, v: Var| m.exp(v) as i64;
    let mut pre = Prefactor {
        negative: false,
        exps: [Var::Q, Var::T, Var::A].map(|v| exp(&mn, v) - exp(&md, v)),
    };
    let stripped = RationalFunction::new(f.numer().div_monomial(&mn), f.denom().div_monomial(&md))
        .expect("denominator stays nonzero");
    let r = reparametrize(&stripped);
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    for (k, (_, u)) in units().iter().enumerate() {
        while let Some(d) = den.div_exact(u) {
            den = d;
            pre.exps[k] -= 1;
        }
        while let Some(d) = num.div_exact(u) {
            num = d;
            pre.exps[k] += 1;
        }
    }
    let g = match RationalFunction::new(num, den)
        .map_err(|e| e.to_string())
        .and_then(|g| integer_polynomial(&g))
    {
        Ok(g) => g,
        Err(w) => return IntegralityVerdict::refuted(format!("after reparametrization: {}", w)),
    };
    let [uq, ut, ua] = units().map(|(_, u)| u);
    for total in 0..=budget {
        for i in 0..=total {
            for j in 0..=total - i {
                let k = total - i - j;
                let m = &(&uq.pow(i) * &ut.pow(j)) * &ua.pow(k);
                let h = &g * &m;
                let uniform = if h.all_coeffs_nonneg() {
                    Some(false)
                } else if h.all_coeffs_nonpos() {
                    Some(true)
                } else {
                    None
                };
                if let Some(negative) = uniform {
                    let p = Prefactor {
                        negative,
                        exps: [
                            pre.exps[0] - i as i64,
                            pre.exps[1] - j as i64,
                            pre.exps[2] - k as i64,
                        ],
                    };
                    return IntegralityVerdict::certified(format!(
                        "{} * polynomial in (g,tau,alpha) with {} non-negative integer coefficients",
                        p,
                        h.len()
                    ));
                }
            }
        }
    }
    let neg = g.terms().iter().filter(|(_, c)| c.is_negative()).count();
    IntegralityVerdict::inconclusive(format!(
        "integer polynomial with mixed signs ({} negative of {} terms) up to unit degree {}",
        neg,
        g.len(),
        budget
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: MPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn jack_integrality() {
        let tau = MPoly::var(Var::Tau);
        let ok = rf(&(&tau * &tau) + &MPoly::constant(3));
        assert_eq!(check_int_j(&ok).status, Status::Certified);
        let half = RationalFunction::from_ints(1, 2);
        assert_eq!(check_int_j(&half).status, Status::Refuted);
        let neg = rf(&tau - &MPoly::one());
        assert_eq!(check_int_j(&neg).status, Status::Refuted);
        let frac = RationalFunction::new(MPoly::one(), &tau + &MPoly::one()).unwrap();
        assert_eq!(check_int_j(&frac).status, Status::Refuted);
    }

    #[test]
    fn macdonald_integrality_up_to_sign_and_powers() {
        let q = MPoly::var(Var::Q);
        let t = MPoly::var(Var::T);
        let one = MPoly::one();
        // -(1-q)(1-t)/q^2 becomes -(γ)(γτ)/(1+γ)^2 up to a power of q
        let f = RationalFunction::new(-(&(&one - &q) * &(&one - &t)), &q * &q).unwrap();
        let v = check_int_m(&f, 2);
        assert_eq!(v.status, Status::Certified, "{:?}", v);
        // (t-1)/(q-1) = τ
        let tau = RationalFunction::new(&t - &one, &q - &one).unwrap();
        assert_eq!(check_int_m(&tau, 0).status, Status::Certified);
        // 1/(1+q) has a non-unit denominator
        let bad = RationalFunction::new(one.clone(), &one + &q).unwrap();
        assert_eq!(check_int_m(&bad, 2).status, Status::Refuted);
    }
}
