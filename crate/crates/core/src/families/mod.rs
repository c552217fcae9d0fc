//! Family configuration: shifted points, norms, hooklengths, the tableau
//! coefficients `ψ`, normalization factors `H`, and adjacent binomial
//! coefficients `a_{λμ}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Cone, MPoly, Monomial, RationalFunction, Var};
use crate::partitions::{strip_sets, Cell, Partition, ReverseTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    AJ,
    BJ,
    AM,
    BM,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::AJ, Family::BJ, Family::AM, Family::BM];

    pub fn is_jack(self) -> bool {
        matches!(self, Family::AJ | Family::BJ)
    }

    pub fn is_type_bc(self) -> bool {
        matches!(self, Family::BJ | Family::BM)
    }

    pub fn cone(self) -> Cone {
        match self {
            Family::AJ => Cone::AJ,
            Family::BJ => Cone::BJ,
            Family::AM => Cone::AM,
            Family::BM => Cone::BM,
        }
    }

    pub fn params(self) -> &'static [Var] {
        self.cone().params()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AJ" => Ok(Family::AJ),
            "BJ" => Ok(Family::BJ),
            "AM" => Ok(Family::AM),
            "BM" => Ok(Family::BM),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

/// A family together with the number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub family: Family,
    pub n: usize,
}

/// The point `λ̄` at which interpolation conditions are imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoint {
    pub coords: Vec<RationalFunction>,
}

/// `c`, `c'` and, for type BC only, `d` at a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hooklengths {
    pub c: RationalFunction,
    pub c_prime: RationalFunction,
    pub d: Option<RationalFunction>,
}

fn mono(q: u16, t: u16, a: u16) -> Monomial {
    Monomial([0, 0, 0, q, t, a])
}

/// `c0 + c1·τ + c2·α` as a polynomial.
pub(crate) fn linear(c0: i64, tau: i64, alpha: i64) -> MPoly {
    MPoly::from_terms([
        (Monomial::ONE, BigInt::from(c0)),
        (Monomial::var(Var::Tau, 1), BigInt::from(tau)),
        (Monomial::var(Var::Alpha, 1), BigInt::from(alpha)),
    ])
}

/// Polynomial hooklength data, kept unreduced so products can be formed
/// before a single normalization.
#[derive(Clone, Debug)]
pub(crate) struct RawHook {
    pub c: MPoly,
    pub c_prime: MPoly,
    pub d: Option<MPoly>,
}

impl FamilyConfig {
    pub fn new(family: Family, n: usize) -> Result<FamilyConfig> {
        if n == 0 {
            return Err(Error::Invalid(
                "the number of variables must be positive".into(),
            ));
        }
        Ok(FamilyConfig { family, n })
    }

    pub fn cone(&self) -> Cone {
        self.family.cone()
    }

    fn check(&self, l: &Partition) -> Result<()> {
        if l.n() != self.n {
            Err(Error::LengthMismatch(self.n, l.n()))
        } else {
            Ok(())
        }
    }

    /// Coordinate `i` (1-based) of `λ̄`.
    pub fn shift_coord(&self, part: u32, i: usize) -> RationalFunction {
        let n = self.n as i64;
        let i = i as i64;
        let lam = part as i64;
        match self.family {
            Family::AJ => RationalFunction::from_poly(linear(lam, n - i, 0)),
            Family::BJ => RationalFunction::from_poly(linear(lam, n - i, 1)),
            Family::AM => {
                RationalFunction::from_poly(MPoly::monomial(mono(part as u16, (n - i) as u16, 0)))
            }
            Family::BM => {
                RationalFunction::from_poly(MPoly::monomial(mono(part as u16, (n - i) as u16, 1)))
            }
        }
    }

    pub fn shift(&self, l: &Partition) -> Result<ShiftedPoint> {
        self.check(l)?;
        Ok(ShiftedPoint {
            coords: (1..=self.n)
                .map(|i| self.shift_coord(l.row(i), i))
                .collect(),
        })
    }

    pub fn norm_at(&self, p: &ShiftedPoint) -> Result<RationalFunction> {
        if p.coords.len() != self.n {
            return Err(Error::LengthMismatch(self.n, p.coords.len()));
        }
        let terms = p.coords.iter().map(|x| match self.family {
            Family::AJ | Family::AM => Ok(x.clone()),
            Family::BJ => Ok(x * x),
            Family::BM => Ok(x + &x.inv()?),
        });
        Ok(RationalFunction::sum(terms.collect::<Result<Vec<_>>>()?))
    }

    /// `‖λ̄‖`, built directly as a polynomial (or Laurent polynomial for BM).
    pub fn norm(&self, l: &Partition) -> Result<RationalFunction> {
        self.check(l)?;
        let n = self.n as i32;
        Ok(match self.family {
            Family::AJ | Family::BJ | Family::AM => {
                let p = self.shift(l)?;
                return self.norm_at(&p);
            }
            Family::BM => RationalFunction::sum(
                (1..=self.n)
                    .flat_map(|i| {
                        let lam = l.row(i) as i32;
                        let e = n - i as i32;
                        [
                            RationalFunction::laurent([0, 0, 0, lam, e, 1]),
                            RationalFunction::laurent([0, 0, 0, -lam, -e, -1]),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
        })
    }

    pub(crate) fn raw_hook(&self, l: &Partition, s: Cell) -> Result<RawHook> {
        let al = l.arm_leg(s)?;
        let (a, ac, lg, lc) = (
            al.arm as i64,
            al.coarm as i64,
            al.leg as i64,
            al.coleg as i64,
        );
        let n = self.n as i64;
        let d_tau = 2 * n - (lg + 2 * lc + 2);
        Ok(match self.family {
            Family::AJ | Family::BJ => RawHook {
                c: linear(a, lg + 1, 0),
                c_prime: linear(a + 1, lg, 0),
                d: (self.family == Family::BJ).then(|| linear(a + 2 * ac + 1, d_tau, 2)),
            },
            Family::AM | Family::BM => RawHook {
                c: MPoly::one_minus(mono(a as u16, (lg + 1) as u16, 0)),
                c_prime: MPoly::one_minus(mono((a + 1) as u16, lg as u16, 0)),
                d: (self.family == Family::BM)
                    .then(|| MPoly::one_minus(mono((a + 2 * ac + 1) as u16, d_tau as u16, 2))),
            },
        })
    }

    pub fn hooklengths(&self, l: &Partition, s: Cell) -> Result<Hooklengths> {
        self.check(l)?;
        let r = self.raw_hook(l, s)?;
        Ok(Hooklengths {
            c: RationalFunction::from_poly(r.c),
            c_prime: RationalFunction::from_poly(r.c_prime),
            d: r.d.map(RationalFunction::from_poly),
        })
    }

    /// `ψ_{μ/ν} = ∏_{s ∈ R∖C} b_ν(s) / b_μ(s)` for a horizontal strip `μ/ν`.
    pub fn psi_strip(&self, mu: &Partition, nu: &Partition) -> Result<RationalFunction> {
        let sets = strip_sets(mu, nu)?;
        let mut num = MPoly::one();
        let mut den = MPoly::one();
        for &s in &sets.r_minus_c {
            let hn = self.raw_hook(nu, s)?;
            let hm = self.raw_hook(mu, s)?;
            num = &num * &(&hn.c * &hm.c_prime);
            den = &den * &(&hn.c_prime * &hm.c);
        }
        RationalFunction::new(num, den)
    }

    /// `ψ_T`, the product of strip coefficients along the levels of `T`.
    pub fn psi(&self, t: &ReverseTableau) -> Result<RationalFunction> {
        let levels = t.strip_chain(self.n);
        let factors = levels
            .windows(2)
            .map(|w| self.psi_strip(&w[0], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalFunction::product(factors))
    }

    /// `c'_λ = ∏ c'(s)` and, for type BC, `d_λ = ∏ d(s)`.
    fn hook_products(&self, l: &Partition) -> Result<(MPoly, MPoly)> {
        let mut cp = MPoly::one();
        let mut d = MPoly::one();
        for s in l.cells() {
            let h = self.raw_hook(l, s)?;
            cp = &cp * &h.c_prime;
            if let Some(x) = h.d {
                d = &d * &x;
            }
        }
        Ok((cp, d))
    }

    /// `c_λ = ∏ c(s)`, the integral-form scalar.
    pub fn c_product(&self, l: &Partition) -> Result<RationalFunction> {
        self.check(l)?;
        let mut c = MPoly::one();
        for s in l.cells() {
            c = &c * &self.raw_hook(l, s)?.c;
        }
        Ok(RationalFunction::from_poly(c))
    }

    /// Closed form of `H(λ) = h^monic_λ(λ̄)`.
    pub fn h_factor(&self, l: &Partition) -> Result<RationalFunction> {
        self.check(l)?;
        let (cp, d) = self.hook_products(l)?;
        let size = l.size() as i32;
        let nl = l.n_stat() as i32;
        let nlc = l.n_stat_conj() as i32;
        let n = self.n as i32;
        Ok(match self.family {
            Family::AJ => RationalFunction::from_poly(cp),
            Family::BJ => RationalFunction::from_poly(&cp * &d),
            Family::AM => {
                let sign = if size % 2 == 0 { 1 } else { -1 };
                let m = RationalFunction::laurent([0, 0, 0, nlc, (n - 1) * size - 2 * nl, 0]);
                &(&m * &RationalFunction::from_poly(cp)) * &RationalFunction::from_int(sign)
            }
            Family::BM => {
                let m = RationalFunction::laurent([
                    0,
                    0,
                    0,
                    -size - 2 * nlc,
                    -(n - 1) * size + nl,
                    -size,
                ]);
                &m * &RationalFunction::from_poly(&cp * &d)
            }
        })
    }

    /// The adjacent binomial coefficient for a covering pair `λ ⋗ μ`.
    pub fn adjacent_b(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        self.check(l)?;
        self.check(mu)?;
        let s0 = l
            .cover_box(mu)
            .ok_or_else(|| Error::NotACover(l.to_string(), mu.to_string()))?;
        let mut num = MPoly::one();
        let mut den = MPoly::one();
        let mut absorb = |s: Cell, in_column: bool| -> Result<()> {
            let hl = self.raw_hook(l, s)?;
            let hm = self.raw_hook(mu, s)?;
            let (xl, xm) = if in_column {
                (hl.c, hm.c)
            } else {
                (hl.c_prime, hm.c_prime)
            };
            num = &num * &xl;
            den = &den * &xm;
            if let (Some(dl), Some(dm)) = (hl.d, hm.d) {
                num = &num * &dl;
                den = &den * &dm;
            }
            Ok(())
        };
        for i in 1..s0.row {
            absorb(Cell::new(i, s0.col), true)?;
        }
        for j in 1..s0.col {
            absorb(Cell::new(s0.row, j), false)?;
        }
        let base = RationalFunction::new(num, den)?;
        Ok(match self.family {
            Family::AJ | Family::BJ => base,
            Family::AM => &base * &RationalFunction::laurent([0, 0, 0, 0, -(s0.row as i32 - 1), 0]),
            Family::BM => &base * &RationalFunction::laurent([0, 0, 0, -(s0.col as i32 - 1), 0, 0]),
        })
    }
}
