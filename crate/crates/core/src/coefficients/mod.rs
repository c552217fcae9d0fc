//! Binomial, inverse binomial, Littlewood-Richardson and structure
//! coefficients, each available through several independent routes.

mod integral;
mod tables;

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Monomial, RationalFunction};
use crate::families::{linear, Family, FamilyConfig};
use crate::interpolation::{var_kind, Normalization, PolyCache, SymPoly};
use crate::partitions::{
    enumerate_chains, for_each_rt, interval, partitions_up_to, Partition, SaturatedChain,
};

pub use integral::{reparametrize, IntegralForms};
pub use tables::{CoefficientTable, TableKind};

/// A pure-function cache: concurrent readers, serialized writers, and no
/// lock held while a value is being computed.
struct Memo<K, V>(Mutex<HashMap<K, V>>);

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }

    fn get_or<F: FnOnce() -> Result<V>>(&self, key: &K, f: F) -> Result<V> {
        if let Some(v) = self.0.lock().expect("cache poisoned").get(key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.0
            .lock()
            .expect("cache poisoned")
            .insert(key.clone(), v.clone());
        Ok(v)
    }
}

type Pair = (Partition, Partition);

/// Coefficient engine for one family and number of variables.
pub struct Engine {
    cfg: FamilyConfig,
    norms: Memo<Partition, RationalFunction>,
    adjacent: Memo<Pair, RationalFunction>,
    psi: Memo<Pair, RationalFunction>,
    direct: Memo<Pair, RationalFunction>,
    recursive: Memo<Pair, RationalFunction>,
    inverse: Memo<Pair, RationalFunction>,
}

fn qta(q: u32, t: u32, a: u32) -> MPoly {
    MPoly::monomial(Monomial([0, 0, 0, q as u16, t as u16, a as u16]))
}

impl Engine {
    pub fn new(cfg: FamilyConfig) -> Engine {
        Engine {
            cfg,
            norms: Memo::new(),
            adjacent: Memo::new(),
            psi: Memo::new(),
            direct: Memo::new(),
            recursive: Memo::new(),
            inverse: Memo::new(),
        }
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.cfg
    }

    fn check(&self, p: &Partition) -> Result<()> {
        if p.n() != self.cfg.n {
            Err(Error::LengthMismatch(self.cfg.n, p.n()))
        } else {
            Ok(())
        }
    }

    /// `‖λ̄‖`.
    pub fn norm(&self, l: &Partition) -> Result<RationalFunction> {
        self.norms.get_or(l, || self.cfg.norm(l))
    }

    /// `‖λ̄‖ - ‖μ̄‖`, refusing to return zero since every caller divides by it.
    pub fn norm_gap(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        let g = &self.norm(l)? - &self.norm(mu)?;
        if g.is_zero() && l != mu {
            return Err(Error::DegenerateNorm(format!(
                "{} and {} have equal norms",
                l, mu
            )));
        }
        Ok(g)
    }

    /// `a_{λμ}` for a cover; `NotACover` otherwise.
    pub fn adjacent(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        self.adjacent
            .get_or(&(l.clone(), mu.clone()), || self.cfg.adjacent_b(l, mu))
    }

    /// Matrix entry of `A`: `a_{λμ}` on covers, zero elsewhere.
    pub fn a_entry(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        if l.covers(mu)? {
            self.adjacent(l, mu)
        } else {
            Ok(RationalFunction::zero())
        }
    }

    fn psi_strip(&self, mu: &Partition, nu: &Partition) -> Result<RationalFunction> {
        self.psi
            .get_or(&(mu.clone(), nu.clone()), || self.cfg.psi_strip(mu, nu))
    }

    /// Factor of one box (coarm `ac`, coleg `lc`, entry `k`) evaluated at
    /// `x_k = λ̄_k`, with a monomial divisor `[q, t, a]`.
    fn point_factor(&self, lk: u32, ac: u32, lc: u32, k: usize) -> (MPoly, [i32; 3]) {
        let nk = (self.cfg.n - k) as u32;
        let (lk_i, ac_i, lc_i, nk_i) = (lk as i64, ac as i64, lc as i64, nk as i64);
        match self.cfg.family {
            Family::AJ => (linear(lk_i - ac_i, lc_i, 0), [0; 3]),
            Family::BJ => (
                &linear(lk_i - ac_i, lc_i, 0) * &linear(lk_i + ac_i, 2 * nk_i - lc_i, 2),
                [0; 3],
            ),
            Family::AM => (&qta(lk, nk, 0) - &qta(ac, nk - lc, 0), [0; 3]),
            Family::BM => {
                let x = qta(lk, nk, 1);
                let c = qta(ac, nk - lc, 1);
                let xc = qta(lk + ac, 2 * nk - lc, 2);
                (
                    &(&x - &c) * &(&xc - &MPoly::one()),
                    [(lk + ac) as i32, (2 * nk - lc) as i32, 2],
                )
            }
        }
    }

    /// `h^monic_μ(λ̄)`, summed tableau by tableau without building `h_μ`.
    pub fn monic_value(&self, mu: &Partition, l: &Partition) -> Result<RationalFunction> {
        self.check(mu)?;
        self.check(l)?;
        let n = self.cfg.n;
        let mut groups: HashMap<RationalFunction, MPoly> = HashMap::new();
        let mut failure = None;
        for_each_rt(mu, n, |t| {
            if failure.is_some() {
                return;
            }
            let mut prod = MPoly::one();
            let mut div = [0i32; 3];
            for s in mu.cells() {
                let k = t.get(s) as usize;
                let (f, d) = self.point_factor(l.row(k), s.col as u32 - 1, s.row as u32 - 1, k);
                if f.is_zero() {
                    return;
                }
                prod = &prod * &f;
                for (x, y) in div.iter_mut().zip(d) {
                    *x += y;
                }
            }
            let mut psi = RationalFunction::one();
            for w in t.strip_chain(n).windows(2) {
                match self.psi_strip(&w[0], &w[1]) {
                    Ok(f) => psi = &psi * &f,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                }
            }
            let scalar = &psi * &RationalFunction::laurent([0, 0, 0, -div[0], -div[1], -div[2]]);
            let slot = groups.entry(scalar).or_insert_with(MPoly::zero);
            *slot = &*slot + &prod;
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        let mut terms: Vec<(RationalFunction, MPoly)> = groups.into_iter().collect();
        terms.sort_by_cached_key(|(s, _)| s.to_string());
        Ok(RationalFunction::sum(
            terms
                .into_iter()
                .map(|(s, p)| &s * &RationalFunction::from_poly(p)),
        ))
    }

    /// `b_{λμ} = h^monic_μ(λ̄) / H(μ)` by direct tableau evaluation.
    pub fn b_direct(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        self.direct.get_or(&(l.clone(), mu.clone()), || {
            let v = self.monic_value(mu, l)?;
            if v.is_zero() {
                return Ok(v);
            }
            v.checked_div(&self.cfg.h_factor(mu)?)
        })
    }

    fn chain_adjacent_product(&self, chain: &SaturatedChain) -> Result<RationalFunction> {
        let mut p = RationalFunction::one();
        for w in chain.steps.windows(2) {
            p = &p * &self.adjacent(&w[0], &w[1])?;
        }
        Ok(p)
    }

    /// Weighted sum over saturated chains from `λ` to `μ`.
    pub fn b_weighted(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        self.chain_sum(l, mu, |chain| {
            let z = &chain.steps;
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for i in 0..chain.len() {
                num = &num * &self.norm_gap(&z[i], &z[i + 1])?;
                den = &den * &self.norm_gap(&z[0], &z[i + 1])?;
            }
            num.checked_div(&den)
        })
    }

    /// Inverse binomial coefficient `b'_{λμ}` by its weighted chain sum.
    pub fn b_inverse(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        self.inverse.get_or(&(l.clone(), mu.clone()), || {
            self.chain_sum(l, mu, |chain| {
                let z = &chain.steps;
                let k = chain.len();
                let mut num = RationalFunction::one();
                let mut den = RationalFunction::one();
                for i in 0..k {
                    num = &num * &self.norm_gap(&z[i + 1], &z[i])?;
                    den = &den * &self.norm_gap(&z[k], &z[i])?;
                }
                let w = num.checked_div(&den)?;
                Ok(if k % 2 == 1 { -w } else { w })
            })
        })
    }

    fn chain_sum<W>(&self, l: &Partition, mu: &Partition, weight: W) -> Result<RationalFunction>
    where
        W: Fn(&SaturatedChain) -> Result<RationalFunction>,
    {
        self.check(l)?;
        self.check(mu)?;
        let mut terms = Vec::new();
        for chain in enumerate_chains(l, mu)? {
            let w = weight(&chain)?;
            if !w.is_zero() {
                terms.push(&w * &self.chain_adjacent_product(&chain)?);
            }
        }
        Ok(RationalFunction::sum(terms))
    }

    /// `b_{λμ}` from the recursion on `|λ| - |μ|` through upper covers of `μ`.
    pub fn b_recursive(&self, l: &Partition, mu: &Partition) -> Result<RationalFunction> {
        self.check(l)?;
        self.check(mu)?;
        if l.size() <= mu.size() {
            return Ok(if l == mu {
                RationalFunction::one()
            } else {
                RationalFunction::zero()
            });
        }
        self.recursive.get_or(&(l.clone(), mu.clone()), || {
            let mut terms = Vec::new();
            for nu in mu.upper_covers() {
                let b = self.b_recursive(l, &nu)?;
                if !b.is_zero() {
                    terms.push(&(&b * &self.norm_gap(&nu, mu)?) * &self.adjacent(&nu, mu)?);
                }
            }
            RationalFunction::sum(terms).checked_div(&self.norm_gap(l, mu)?)
        })
    }

    /// `Σ_j [∏_{i<k}(N_i - N_{i+1})] / [∏_{i≠j}(N_j - N_i)] · value(ζ_j)`.
    fn lagrange_weight<V>(&self, chain: &SaturatedChain, mut value: V) -> Result<RationalFunction>
    where
        V: FnMut(&Partition) -> Result<RationalFunction>,
    {
        let z = &chain.steps;
        let k = chain.len();
        let mut top = RationalFunction::one();
        for i in 0..k {
            top = &top * &self.norm_gap(&z[i], &z[i + 1])?;
        }
        let mut terms = Vec::new();
        for j in 0..=k {
            let v = value(&z[j])?;
            if v.is_zero() {
                continue;
            }
            let mut den = RationalFunction::one();
            for i in (0..=k).filter(|&i| i != j) {
                den = &den * &self.norm_gap(&z[j], &z[i])?;
            }
            terms.push(&top.checked_div(&den)? * &v);
        }
        Ok(RationalFunction::sum(terms))
    }

    /// `c^λ_{μν}` by the weighted chain sum.
    pub fn lr_weighted(
        &self,
        l: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<RationalFunction> {
        self.check(nu)?;
        self.chain_sum(l, mu, |chain| {
            self.lagrange_weight(chain, |z| self.b_direct(z, nu))
        })
    }

    /// `c^λ_{μν} = Σ_{λ⊇ζ⊇μ,ν} b'_{λζ} b_{ζμ} b_{ζν}`.
    pub fn lr_via_bbb(
        &self,
        l: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<RationalFunction> {
        self.check(l)?;
        self.check(mu)?;
        self.check(nu)?;
        let mut terms = Vec::new();
        for z in interval(l, mu) {
            if !z.contains(nu)? {
                continue;
            }
            let t =
                &(&self.b_inverse(l, &z)? * &self.b_direct(&z, mu)?) * &self.b_direct(&z, nu)?;
            if !t.is_zero() {
                terms.push(t);
            }
        }
        Ok(RationalFunction::sum(terms))
    }

    fn check_kind(&self, p: &SymPoly) -> Result<()> {
        if p.kind() != var_kind(self.cfg.family) || p.n() != self.cfg.n {
            return Err(Error::Invalid(format!(
                "polynomial does not live in the ring of {}",
                self.cfg.family
            )));
        }
        Ok(())
    }

    /// `c^λ_μ(p)` by the weighted chain sum.
    pub fn structure_weighted(
        &self,
        p: &SymPoly,
        l: &Partition,
        mu: &Partition,
    ) -> Result<RationalFunction> {
        self.check_kind(p)?;
        self.chain_sum(l, mu, |chain| {
            self.lagrange_weight(chain, |z| p.eval(&self.cfg.shift(z)?.coords))
        })
    }

    /// `c^λ_μ(p) = Σ_{λ⊇ζ⊇μ} b'_{λζ} b_{ζμ} p(ζ̄)`.
    pub fn structure_bbp(
        &self,
        p: &SymPoly,
        l: &Partition,
        mu: &Partition,
    ) -> Result<RationalFunction> {
        self.check_kind(p)?;
        let mut terms = Vec::new();
        for z in interval(l, mu) {
            let t = &self.b_inverse(l, &z)? * &self.b_direct(&z, mu)?;
            if !t.is_zero() {
                terms.push(&t * &p.eval(&self.cfg.shift(&z)?.coords)?);
            }
        }
        Ok(RationalFunction::sum(terms))
    }

    /// Structure coefficient of multiplication by `p`, computed by both
    /// routes and cross-checked.
    pub fn structure_constants(
        &self,
        p: &SymPoly,
        l: &Partition,
        mu: &Partition,
    ) -> Result<RationalFunction> {
        let w = self.structure_weighted(p, l, mu)?;
        let b = self.structure_bbp(p, l, mu)?;
        if w != b {
            return Err(Error::RouteMismatch(format!(
                "c^{}_{}(p): weighted {} vs b'bp {}",
                l, mu, w, b
            )));
        }
        Ok(w)
    }

    /// Integral forms `B_{λμ} = c_μ H(μ) b_{λμ}` and `A_{λμ}` (equal to `B` on covers).
    pub fn integral_forms(&self, l: &Partition, mu: &Partition) -> Result<IntegralForms> {
        let b = self.b_direct(l, mu)?;
        let big_b = &(&self.cfg.c_product(mu)? * &self.cfg.h_factor(mu)?) * &b;
        let big_a = if l.covers(mu)? {
            big_b.clone()
        } else {
            RationalFunction::zero()
        };
        Ok(IntegralForms { b: big_b, a: big_a })
    }

    /// Square matrix over `𝒫_n^d` (graded, then lexicographically decreasing).
    pub fn matrix<F>(&self, d: u32, mut entry: F) -> Result<Vec<Vec<RationalFunction>>>
    where
        F: FnMut(&Partition, &Partition) -> Result<RationalFunction>,
    {
        let ps = partitions_up_to(self.cfg.n, d);
        ps.iter()
            .map(|l| ps.iter().map(|m| entry(l, m)).collect())
            .collect()
    }
}

/// Expansion of `h_μ h_ν` in the interpolation basis from the symbolic
/// polynomials alone: the product's values at shifted points are peeled off
/// triangularly against `h_κ(κ̄')`.
pub fn lr_product_expansion(
    polys: &PolyCache,
    mu: &Partition,
    nu: &Partition,
) -> Result<BTreeMap<Partition, RationalFunction>> {
    let cfg = polys.config();
    let h_mu = polys.get(mu, Normalization::Unital)?;
    let h_nu = polys.get(nu, Normalization::Unital)?;
    let mut basis: Vec<(Partition, SymPoly, RationalFunction)> = Vec::new();
    for k in partitions_up_to(cfg.n, mu.size() + nu.size()) {
        let pt = cfg.shift(&k)?;
        let mut terms = vec![&h_mu.eval(&pt.coords)? * &h_nu.eval(&pt.coords)?];
        for (_, h, c) in &basis {
            terms.push(-(c * &h.eval(&pt.coords)?));
        }
        let v = RationalFunction::sum(terms);
        if !v.is_zero() {
            basis.push((k.clone(), polys.get(&k, Normalization::Unital)?, v));
        }
    }
    Ok(basis.into_iter().map(|(k, _, c)| (k, c)).collect())
}

/// Matrix product over the field.
pub fn mat_mul(
    a: &[Vec<RationalFunction>],
    b: &[Vec<RationalFunction>],
) -> Vec<Vec<RationalFunction>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    RationalFunction::sum(
                        row.iter()
                            .zip(b)
                            .filter(|(x, r)| !x.is_zero() && !r[j].is_zero())
                            .map(|(x, r)| x * &r[j]),
                    )
                })
                .collect()
        })
        .collect()
}

/// `xy - yx`.
pub fn commutator(
    x: &[Vec<RationalFunction>],
    y: &[Vec<RationalFunction>],
) -> Vec<Vec<RationalFunction>> {
    let p = mat_mul(x, y);
    let q = mat_mul(y, x);
    p.iter()
        .zip(&q)
        .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
        .collect()
}

impl Engine {
    /// Diagonal matrix `Z = diag(‖μ̄‖)` over `𝒫_n^d`.
    pub fn z_matrix(&self, d: u32) -> Result<Vec<Vec<RationalFunction>>> {
        self.matrix(d, |l, m| {
            if l == m {
                self.norm(l)
            } else {
                Ok(RationalFunction::zero())
            }
        })
    }

    /// `[Z,B] = B[Z,A]` on `𝒫_n^d`.
    pub fn check_commutation(&self, d: u32) -> Result<bool> {
        let z = self.z_matrix(d)?;
        let b = self.matrix(d, |l, m| self.b_direct(l, m))?;
        let a = self.matrix(d, |l, m| self.a_entry(l, m))?;
        Ok(commutator(&z, &b) == mat_mul(&b, &commutator(&z, &a)))
    }

    /// `C(p) = B^{-1} D(p) B` on `𝒫_n^d`, with `C` from the weighted route.
    pub fn check_structure_conjugation(&self, p: &SymPoly, d: u32) -> Result<bool> {
        let b = self.matrix(d, |l, m| self.b_direct(l, m))?;
        let b_inv = self.matrix(d, |l, m| self.b_inverse(l, m))?;
        let dm = self.matrix(d, |l, m| {
            if l == m {
                p.eval(&self.cfg.shift(l)?.coords)
            } else {
                Ok(RationalFunction::zero())
            }
        })?;
        let c = self.matrix(d, |l, m| self.structure_weighted(p, l, m))?;
        Ok(c == mat_mul(&mat_mul(&b_inv, &dm), &b))
    }
}
