use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, RationalFunction};

/// How stored exponents relate to the variables `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VarKind {
    /// Exponents of `x_i`.
    Plain,
    /// Exponents of `y_i = x_i^2`.
    Squared,
    /// Exponents of `x_i`, possibly negative.
    Laurent,
}

/// A polynomial in `x_1..x_n` with rational-function coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    n: usize,
    kind: VarKind,
    terms: BTreeMap<Vec<i32>, RationalFunction>,
}

pub(crate) type ParamPoly = HashMap<Vec<i32>, MPoly>;

impl SymPoly {
    pub fn zero(n: usize, kind: VarKind) -> SymPoly {
        SymPoly {
            n,
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, kind: VarKind, c: RationalFunction) -> SymPoly {
        let mut p = SymPoly::zero(n, kind);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize, kind: VarKind) -> SymPoly {
        SymPoly::constant(n, kind, RationalFunction::one())
    }

    /// The single term `c · x^e` (in the stored variables).
    pub fn monomial(n: usize, kind: VarKind, e: Vec<i32>, c: RationalFunction) -> SymPoly {
        let mut p = SymPoly::zero(n, kind);
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, RationalFunction)>>(
        n: usize,
        kind: VarKind,
        it: I,
    ) -> SymPoly {
        let mut p = SymPoly::zero(n, kind);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> RationalFunction {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn add_term(&mut self, e: Vec<i32>, c: RationalFunction) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &SymPoly) {
        assert_eq!(self.n, other.n, "variable counts differ");
        assert_eq!(self.kind, other.kind, "variable kinds differ");
    }

    pub fn scale(&self, c: &RationalFunction) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.n, self.kind);
        }
        SymPoly {
            n: self.n,
            kind: self.kind,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        self.compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(&RationalFunction::from_int(-1)))
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        self.compatible(other);
        let mut acc: BTreeMap<Vec<i32>, Vec<RationalFunction>> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                acc.entry(e).or_default().push(c1 * c2);
            }
        }
        SymPoly::from_terms(
            self.n,
            self.kind,
            acc.into_iter()
                .map(|(e, cs)| (e, RationalFunction::sum(cs))),
        )
    }

    /// Total degree in `x` (so a `Squared` exponent counts twice).
    pub fn degree(&self) -> i32 {
        let w = if self.kind == VarKind::Squared { 2 } else { 1 };
        self.terms
            .keys()
            .map(|e| w * e.iter().map(|x| x.abs()).sum::<i32>())
            .max()
            .unwrap_or(0)
    }

    /// Terms of maximal degree in the stored exponents (positive part only for Laurent).
    pub fn top_terms(&self) -> SymPoly {
        let deg = |e: &Vec<i32>| e.iter().map(|x| x.abs()).sum::<i32>();
        let top = self.terms.keys().map(deg).max().unwrap_or(0);
        SymPoly::from_terms(
            self.n,
            self.kind,
            self.terms
                .iter()
                .filter(|(e, _)| deg(e) == top)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Leading term in the graded-lex order on stored exponents.
    pub fn leading(&self) -> Option<(&Vec<i32>, &RationalFunction)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let da: i32 = a.iter().sum();
            let db: i32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
    }

    /// Evaluates at `x = point`.
    pub fn eval(&self, point: &[RationalFunction]) -> Result<RationalFunction> {
        if point.len() != self.n {
            return Err(Error::LengthMismatch(self.n, point.len()));
        }
        let base: Vec<RationalFunction> = point
            .iter()
            .map(|x| {
                if self.kind == VarKind::Squared {
                    x * x
                } else {
                    x.clone()
                }
            })
            .collect();
        let mut cache: Vec<HashMap<i32, RationalFunction>> = vec![HashMap::new(); self.n];
        let mut pw = |i: usize, e: i32| -> Result<RationalFunction> {
            if let Some(v) = cache[i].get(&e) {
                return Ok(v.clone());
            }
            let v = if e >= 0 {
                base[i].pow(e)
            } else {
                base[i].inv().map_err(|_| Error::PoleAtPoint)?.pow(-e)
            };
            cache[i].insert(e, v.clone());
            Ok(v)
        };
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    v = &v * &pw(i, k)?;
                }
            }
            parts.push(v);
        }
        Ok(RationalFunction::sum(parts))
    }

    /// Applies a permutation of the variables: `x_i ↦ x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> SymPoly {
        SymPoly::from_terms(
            self.n,
            self.kind,
            self.terms.iter().map(|(e, c)| {
                let mut f = vec![0; self.n];
                for (i, &k) in e.iter().enumerate() {
                    f[perm[i]] = k;
                }
                (f, c.clone())
            }),
        )
    }

    /// `x_i ↦ x_i^{-1}` for a single index.
    pub fn invert_var(&self, i: usize) -> SymPoly {
        SymPoly::from_terms(
            self.n,
            self.kind,
            self.terms.iter().map(|(e, c)| {
                let mut f = e.clone();
                f[i] = -f[i];
                (f, c.clone())
            }),
        )
    }

    /// Invariance under the Weyl group generators of the representation.
    pub fn is_weyl_invariant(&self) -> bool {
        let n = self.n;
        for i in 0..n.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            if self.permute(&perm) != *self {
                return false;
            }
        }
        if self.kind == VarKind::Laurent && n > 0 && self.invert_var(0) != *self {
            return false;
        }
        true
    }

    /// `p(x + 1)` by binomial expansion of every monomial (plain variables only).
    pub fn shift_by_one(&self) -> Result<SymPoly> {
        if self.kind != VarKind::Plain {
            return Err(Error::Invalid("x+1 shift needs plain variables".into()));
        }
        let mut out: BTreeMap<Vec<i32>, Vec<RationalFunction>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut partial: Vec<(Vec<i32>, BigInt)> = vec![(Vec::new(), BigInt::one())];
            for &k in e {
                let mut next = Vec::new();
                for (f, m) in &partial {
                    let mut binom = BigInt::one();
                    for j in 0..=k {
                        let mut g = f.clone();
                        g.push(j);
                        next.push((g, m * &binom));
                        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                    }
                }
                partial = next;
            }
            for (f, m) in partial {
                out.entry(f)
                    .or_default()
                    .push(c * &RationalFunction::from_int(m));
            }
        }
        Ok(SymPoly::from_terms(
            self.n,
            self.kind,
            out.into_iter()
                .map(|(e, cs)| (e, RationalFunction::sum(cs))),
        ))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: FnMut(&RationalFunction) -> RationalFunction>(&self, mut f: F) -> SymPoly {
        SymPoly::from_terms(
            self.n,
            self.kind,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }

    /// Rendering used for JSON output: `(exponents in x, coefficient text)` in canonical order.
    pub fn to_json_terms(&self) -> Vec<(Vec<i32>, String)> {
        self.display_order()
            .into_iter()
            .map(|(e, c)| (self.x_exponents(e), c.to_string()))
            .collect()
    }

    fn x_exponents(&self, e: &[i32]) -> Vec<i32> {
        let w = if self.kind == VarKind::Squared { 2 } else { 1 };
        e.iter().map(|k| w * k).collect()
    }

    fn display_order(&self) -> Vec<(&Vec<i32>, &RationalFunction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: i32 = a.iter().map(|x| x.abs()).sum();
            let db: i32 = b.iter().map(|x| x.abs()).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }
}

fn coefficient_is_negative_atom(c: &RationalFunction) -> bool {
    c.numer().len() == 1 && c.numer().leading_coeff().is_negative()
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.display_order().into_iter().enumerate() {
            let xs: Vec<String> = self
                .x_exponents(e)
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            let neg = coefficient_is_negative_atom(c);
            let c = if neg { -c.clone() } else { c.clone() };
            let body = if xs.is_empty() {
                c.to_string()
            } else if c.is_one() {
                xs.join("*")
            } else {
                let cs = c.to_string();
                let cs = if c.numer().len() > 1 && c.denom().is_one() {
                    format!("({})", cs)
                } else {
                    cs
                };
                format!("{}*{}", cs, xs.join("*"))
            };
            match (k, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiplies parameter-coefficient polynomials in the stored variables.
pub(crate) fn param_mul(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let mut out: ParamPoly = HashMap::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            let prod = c1 * c2;
            match out.get_mut(&e) {
                Some(v) => *v = &*v + &prod,
                None => {
                    out.insert(e, prod);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub(crate) fn param_add_into(acc: &mut ParamPoly, p: ParamPoly) {
    for (e, c) in p {
        match acc.get_mut(&e) {
            Some(v) => *v = &*v + &c,
            None => {
                acc.insert(e, c);
            }
        }
    }
}
