//! Symmetric polynomials: ordinary Jack and Macdonald polynomials, the four
//! families of interpolation polynomials, and a linear-algebra interpolation
//! solver used as an independent oracle.

mod binomial;
mod sympoly;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Monomial, RationalFunction};
use crate::families::{linear, Family, FamilyConfig, ShiftedPoint};
use crate::partitions::{for_each_rt, partitions_up_to, Partition};

pub use binomial::{
    at_ones, elementary, elementary_binomial_expansion, elementary_conj, jack_binomial_expansion,
    macdonald_binomial_expansion, power_sum,
};
use sympoly::{param_add_into, param_mul, ParamPoly};
pub use sympoly::{SymPoly, VarKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Normalization {
    Monic,
    Unital,
    Integral,
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Normalization> {
        match s.trim().to_ascii_lowercase().as_str() {
            "monic" => Ok(Normalization::Monic),
            "unital" => Ok(Normalization::Unital),
            "integral" | "int" => Ok(Normalization::Integral),
            _ => Err(Error::Parse {
                what: "normalization",
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Monic => "monic",
            Normalization::Unital => "unital",
            Normalization::Integral => "integral",
        })
    }
}

/// Representation used for the interpolation polynomials of a family.
pub fn var_kind(family: Family) -> VarKind {
    match family {
        Family::AJ | Family::AM => VarKind::Plain,
        Family::BJ => VarKind::Squared,
        Family::BM => VarKind::Laurent,
    }
}

/// Univariate factor in `x_k` attached to one box, and a Laurent monomial
/// divisor for the whole term.
type BoxFactor = (Vec<(i32, MPoly)>, [i32; 6]);

fn mono(q: i32, t: i32, a: i32) -> Monomial {
    Monomial([0, 0, 0, q as u16, t as u16, a as u16])
}

/// `Σ_T ψ_T ∏_s factor(s, T(s))` over reverse tableaux of `shape`.
fn tableau_sum<F>(
    cfg: &FamilyConfig,
    shape: &Partition,
    kind: VarKind,
    factor: F,
) -> Result<SymPoly>
where
    F: Fn(u32, u32, usize) -> BoxFactor,
{
    let n = cfg.n;
    let mut psi_cache: HashMap<(Partition, Partition), RationalFunction> = HashMap::new();
    let mut groups: HashMap<RationalFunction, ParamPoly> = HashMap::new();
    let mut failure: Option<Error> = None;
    for_each_rt(shape, n, |t| {
        if failure.is_some() {
            return;
        }
        let levels = t.strip_chain(n);
        let mut psi = RationalFunction::one();
        for w in levels.windows(2) {
            let key = (w[0].clone(), w[1].clone());
            let f = match psi_cache.get(&key) {
                Some(f) => f.clone(),
                None => match cfg.psi_strip(&w[0], &w[1]) {
                    Ok(f) => {
                        psi_cache.insert(key, f.clone());
                        f
                    }
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                },
            };
            psi = &psi * &f;
        }
        let mut per_var: Vec<Vec<(i32, MPoly)>> = vec![vec![(0, MPoly::one())]; n];
        let mut divisor = [0i32; 6];
        for s in shape.cells() {
            let k = t.get(s) as usize;
            let (f, d) = factor(s.col as u32 - 1, s.row as u32 - 1, k);
            for (x, y) in divisor.iter_mut().zip(d) {
                *x += y;
            }
            let mut next: HashMap<i32, MPoly> = HashMap::new();
            for (e1, c1) in &per_var[k - 1] {
                for (e2, c2) in &f {
                    let p = c1 * c2;
                    let slot = next.entry(e1 + e2).or_insert_with(MPoly::zero);
                    *slot = &*slot + &p;
                }
            }
            per_var[k - 1] = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let mut poly: ParamPoly = HashMap::from([(vec![0; n], MPoly::one())]);
        for (i, u) in per_var.iter().enumerate() {
            let ui: ParamPoly = u
                .iter()
                .map(|(e, c)| {
                    let mut v = vec![0; n];
                    v[i] = *e;
                    (v, c.clone())
                })
                .collect();
            poly = param_mul(&poly, &ui);
        }
        let neg: [i32; 6] = divisor.map(|x| -x);
        let scalar = &psi * &RationalFunction::laurent(neg);
        param_add_into(groups.entry(scalar).or_default(), poly);
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut coeffs: BTreeMap<Vec<i32>, Vec<RationalFunction>> = BTreeMap::new();
    let mut ordered: Vec<(RationalFunction, ParamPoly)> = groups.into_iter().collect();
    ordered.sort_by_key(|(s, _)| s.to_string());
    for (scalar, poly) in ordered {
        for (e, c) in poly {
            if !c.is_zero() {
                coeffs
                    .entry(e)
                    .or_default()
                    .push(&RationalFunction::from_poly(c) * &scalar);
            }
        }
    }
    Ok(SymPoly::from_terms(
        n,
        kind,
        coeffs
            .into_iter()
            .map(|(e, cs)| (e, RationalFunction::sum(cs))),
    ))
}

fn check_n(cfg: &FamilyConfig, p: &Partition) -> Result<()> {
    if p.n() != cfg.n {
        Err(Error::LengthMismatch(cfg.n, p.n()))
    } else {
        Ok(())
    }
}

/// The monic Jack (`AJ`, `BJ`) or Macdonald (`AM`, `BM`) polynomial `P_λ(x)`.
pub fn jack_macdonald(cfg: &FamilyConfig, l: &Partition) -> Result<SymPoly> {
    check_n(cfg, l)?;
    tableau_sum(cfg, l, VarKind::Plain, |_, _, _| {
        (vec![(1, MPoly::one())], [0; 6])
    })
}

fn monic_interp(cfg: &FamilyConfig, mu: &Partition) -> Result<SymPoly> {
    check_n(cfg, mu)?;
    let n = cfg.n as i64;
    let kind = var_kind(cfg.family);
    match cfg.family {
        Family::AJ => tableau_sum(cfg, mu, kind, |ac, lc, k| {
            let c = linear(ac as i64, n - k as i64 - lc as i64, 0);
            (vec![(1, MPoly::one()), (0, -c)], [0; 6])
        }),
        Family::BJ => tableau_sum(cfg, mu, kind, |ac, lc, k| {
            let c = linear(ac as i64, n - k as i64 - lc as i64, 1);
            (vec![(1, MPoly::one()), (0, -(&c * &c))], [0; 6])
        }),
        Family::AM => tableau_sum(cfg, mu, kind, |ac, lc, k| {
            let c = MPoly::monomial(mono(ac as i32, n as i32 - k as i32 - lc as i32, 0));
            (vec![(1, MPoly::one()), (0, -c)], [0; 6])
        }),
        Family::BM => tableau_sum(cfg, mu, kind, |ac, lc, k| {
            let m = mono(ac as i32, n as i32 - k as i32 - lc as i32, 1);
            let c = MPoly::monomial(m);
            let c2 = MPoly::monomial(m.pow(2));
            (
                vec![(1, c.clone()), (-1, c), (0, -(&c2 + &MPoly::one()))],
                [0, 0, 0, ac as i32, n as i32 - k as i32 - lc as i32, 1],
            )
        }),
    }
}

/// The interpolation polynomial `h_μ` in the requested normalization.
pub fn interp_poly(cfg: &FamilyConfig, mu: &Partition, norm: Normalization) -> Result<SymPoly> {
    let monic = monic_interp(cfg, mu)?;
    Ok(match norm {
        Normalization::Monic => monic,
        Normalization::Unital => monic.scale(&cfg.h_factor(mu)?.inv()?),
        Normalization::Integral => monic.scale(&cfg.c_product(mu)?),
    })
}

/// Memoized symbolic interpolation polynomials for one family.
pub struct PolyCache {
    cfg: FamilyConfig,
    polys: Mutex<HashMap<(Partition, Normalization), SymPoly>>,
}

impl PolyCache {
    pub fn new(cfg: FamilyConfig) -> PolyCache {
        PolyCache {
            cfg,
            polys: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.cfg
    }

    pub fn get(&self, mu: &Partition, norm: Normalization) -> Result<SymPoly> {
        let key = (mu.clone(), norm);
        if let Some(p) = self.polys.lock().expect("cache poisoned").get(&key) {
            return Ok(p.clone());
        }
        let p = interp_poly(&self.cfg, mu, norm)?;
        self.polys
            .lock()
            .expect("cache poisoned")
            .insert(key, p.clone());
        Ok(p)
    }
}

/// Exact value of `p` at a shifted point.
pub fn eval_at(p: &SymPoly, point: &ShiftedPoint) -> Result<RationalFunction> {
    p.eval(&point.coords)
}

/// Orbit of an exponent vector under the family's Weyl group.
fn orbit(nu: &Partition, kind: VarKind) -> BTreeSet<Vec<i32>> {
    let base: Vec<i32> = nu.parts().iter().map(|&p| p as i32).collect();
    let mut perms = BTreeSet::new();
    permutations(&base, &mut perms);
    if kind != VarKind::Laurent {
        return perms;
    }
    let mut out = BTreeSet::new();
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0..(1u32 << nz.len()) {
            let mut q = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    q[i] = -q[i];
                }
            }
            out.insert(q);
        }
    }
    out
}

fn permutations(v: &[i32], out: &mut BTreeSet<Vec<i32>>) {
    let mut cur = v.to_vec();
    cur.sort();
    loop {
        out.insert(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Monomial symmetric function of `ν` for the family's symmetry group.
pub fn orbit_sum(n: usize, kind: VarKind, nu: &Partition) -> SymPoly {
    SymPoly::from_terms(
        n,
        kind,
        orbit(nu, kind)
            .into_iter()
            .map(|e| (e, RationalFunction::one())),
    )
}

/// Solves for the unique element of degree at most `d` (in the family's
/// grading) taking the prescribed values at `λ̄` for every `λ ∈ 𝒫_n^d`.
pub fn interp_solver_oracle(
    cfg: &FamilyConfig,
    d: u32,
    values: &BTreeMap<Partition, RationalFunction>,
) -> Result<SymPoly> {
    let kind = var_kind(cfg.family);
    let pts = partitions_up_to(cfg.n, d);
    let basis: Vec<SymPoly> = pts.iter().map(|nu| orbit_sum(cfg.n, kind, nu)).collect();
    let mut rows: Vec<Vec<RationalFunction>> = Vec::with_capacity(pts.len());
    for l in &pts {
        let v = values
            .get(l)
            .ok_or_else(|| Error::Invalid(format!("no value given at {}", l)))?;
        let point = cfg.shift(l)?;
        let mut row = basis
            .iter()
            .map(|m| m.eval(&point.coords))
            .collect::<Result<Vec<_>>>()?;
        row.push(v.clone());
        rows.push(row);
    }
    let sol = solve(rows)?;
    let mut out = SymPoly::zero(cfg.n, kind);
    for (c, m) in sol.iter().zip(&basis) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    Ok(out)
}

/// Gaussian elimination on an augmented square system.
pub(crate) fn solve(mut rows: Vec<Vec<RationalFunction>>) -> Result<Vec<RationalFunction>> {
    let m = rows.len();
    for col in 0..m {
        let piv = (col..m)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        rows.swap(col, piv);
        let inv = rows[col][col].inv()?;
        let pivot_row: Vec<RationalFunction> = rows[col].iter().map(|x| x * &inv).collect();
        rows[col] = pivot_row;
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (x, p) in rows[r].iter_mut().zip(pivot_row.iter()).skip(col) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Ok(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// `‖x‖` as a symmetric polynomial in the family's representation.
pub fn norm_poly(cfg: &FamilyConfig) -> SymPoly {
    let n = cfg.n;
    let kind = var_kind(cfg.family);
    let mut p = SymPoly::zero(n, kind);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        p.add_term(e.clone(), RationalFunction::one());
        if cfg.family == Family::BM {
            e[i] = -1;
            p.add_term(e, RationalFunction::one());
        }
    }
    p
}

/// Checks `(‖x‖ - ‖μ̄‖) h_μ = Σ_{λ⋗μ} (‖λ̄‖ - ‖μ̄‖) a_{λμ} h_λ` symbolically.
pub fn pieri_check(cfg: &FamilyConfig, mu: &Partition) -> Result<bool> {
    let h_mu = interp_poly(cfg, mu, Normalization::Unital)?;
    let nm = cfg.norm(mu)?;
    let kind = var_kind(cfg.family);
    let lhs = norm_poly(cfg)
        .sub(&SymPoly::constant(cfg.n, kind, nm.clone()))
        .mul(&h_mu);
    let mut rhs = SymPoly::zero(cfg.n, kind);
    for l in mu.upper_covers() {
        let coeff = &(&cfg.norm(&l)? - &nm) * &cfg.adjacent_b(&l, mu)?;
        rhs = rhs.add(&interp_poly(cfg, &l, Normalization::Unital)?.scale(&coeff));
    }
    Ok(lhs == rhs)
}

/// Expands `p` greedily in a basis whose element for `ν` has leading term
/// `x^ν` (graded-lex, stored exponents) with nonzero coefficient.
pub fn expand_in_basis<F>(
    p: &SymPoly,
    mut basis: F,
) -> Result<BTreeMap<Partition, RationalFunction>>
where
    F: FnMut(&Partition) -> Result<SymPoly>,
{
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    let mut guard = 0usize;
    while let Some((e, c)) = rest.leading() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Invalid("basis expansion did not terminate".into()));
        }
        let parts: Vec<u32> = e.iter().map(|&x| x.max(0) as u32).collect();
        let nu = Partition::new(parts)
            .map_err(|_| Error::Invalid(format!("non-symmetric leading term {:?}", e)))?;
        let c = c.clone();
        let b = basis(&nu)?;
        let lead = b.coeff(e);
        if lead.is_zero() {
            return Err(Error::Invalid(format!(
                "basis element {} lacks its leading term",
                nu
            )));
        }
        let k = &c / &lead;
        rest = rest.sub(&b.scale(&k));
        out.insert(nu, k);
    }
    Ok(out)
}
