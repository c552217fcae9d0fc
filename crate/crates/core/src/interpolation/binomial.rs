//! Classical symmetric-function bases and the two binomial formulas that
//! expand shifted or normalized ordinary polynomials in interpolation data.

use std::collections::{BTreeMap, HashMap};

use super::{expand_in_basis, interp_poly, jack_macdonald, Normalization, SymPoly, VarKind};
use crate::error::{Error, Result};
use crate::exactalg::RationalFunction;
use crate::families::{Family, FamilyConfig};
use crate::partitions::Partition;

/// Elementary symmetric polynomial `e_k(x_1..x_n)`.
pub fn elementary(n: usize, k: usize) -> SymPoly {
    let mut p = SymPoly::zero(n, VarKind::Plain);
    if k > n {
        return p;
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            let e: Vec<i32> = (0..n).map(|i| (mask >> i & 1) as i32).collect();
            p.add_term(e, RationalFunction::one());
        }
    }
    p
}

/// `e_{λ'} = ∏_j e_{λ'_j}`.
pub fn elementary_conj(l: &Partition) -> SymPoly {
    l.conjugate()
        .iter()
        .fold(SymPoly::one(l.n(), VarKind::Plain), |acc, &c| {
            acc.mul(&elementary(l.n(), c as usize))
        })
}

/// Power sum `p_k`, with `p_0 = n`.
pub fn power_sum(n: usize, k: u32) -> SymPoly {
    let mut p = SymPoly::zero(n, VarKind::Plain);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = k as i32;
        p.add_term(e, RationalFunction::one());
    }
    p
}

/// Value at `x = (1, …, 1)`.
pub fn at_ones(p: &SymPoly) -> Result<RationalFunction> {
    p.eval(&vec![RationalFunction::one(); p.n()])
}

fn unital(p: SymPoly, value: RationalFunction) -> Result<SymPoly> {
    if value.is_zero() {
        return Err(Error::DegenerateNorm("normalizing value is zero".into()));
    }
    Ok(p.scale(&value.inv()?))
}

/// Coefficients of `P_λ(x+1)/P_λ(1)` in the basis `P_ν(x)/P_ν(1)` (Jack, type A).
pub fn jack_binomial_expansion(
    cfg: &FamilyConfig,
    l: &Partition,
) -> Result<BTreeMap<Partition, RationalFunction>> {
    if cfg.family != Family::AJ {
        return Err(Error::Invalid(
            "the shifted Jack expansion is defined for AJ".into(),
        ));
    }
    let pl = jack_macdonald(cfg, l)?;
    let lhs = unital(pl.shift_by_one()?, at_ones(&pl)?)?;
    let mut cache: HashMap<Partition, SymPoly> = HashMap::new();
    expand_in_basis(&lhs, |nu| {
        if let Some(b) = cache.get(nu) {
            return Ok(b.clone());
        }
        let p = jack_macdonald(cfg, nu)?;
        let b = unital(p.clone(), at_ones(&p)?)?;
        cache.insert(nu.clone(), b.clone());
        Ok(b)
    })
}

/// Coefficients of `P_λ(x)/P_λ(t^δ)` in the basis `h^monic_ν(x)/P_ν(t^δ)` (Macdonald, type A).
pub fn macdonald_binomial_expansion(
    cfg: &FamilyConfig,
    l: &Partition,
) -> Result<BTreeMap<Partition, RationalFunction>> {
    if cfg.family != Family::AM {
        return Err(Error::Invalid(
            "the Macdonald binomial expansion is defined for AM".into(),
        ));
    }
    let t_delta = cfg.shift(&Partition::zero(cfg.n))?.coords;
    let pl = jack_macdonald(cfg, l)?;
    let lhs = unital(pl.clone(), pl.eval(&t_delta)?)?;
    let mut cache: HashMap<Partition, SymPoly> = HashMap::new();
    expand_in_basis(&lhs, |nu| {
        if let Some(b) = cache.get(nu) {
            return Ok(b.clone());
        }
        let denom = jack_macdonald(cfg, nu)?.eval(&t_delta)?;
        let b = unital(interp_poly(cfg, nu, Normalization::Monic)?, denom)?;
        cache.insert(nu.clone(), b.clone());
        Ok(b)
    })
}

/// Coefficients of `E_λ(x+1)` in the basis `E_ν(x)`, where `E_λ = e_{λ'}/e_{λ'}(1)`.
pub fn elementary_binomial_expansion(
    l: &Partition,
) -> Result<BTreeMap<Partition, RationalFunction>> {
    let el = elementary_conj(l);
    let lhs = unital(el.shift_by_one()?, at_ones(&el)?)?;
    expand_in_basis(&lhs, |nu| {
        let e = elementary_conj(nu);
        unital(e.clone(), at_ones(&e)?)
    })
}
