use serde::Serialize;

use crate::exactalg::{MPoly, RationalFunction, Var};

/// Integral binomial coefficient `B_{λμ}` and its adjacent restriction `A_{λμ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralForms {
    pub b: RationalFunction,
    pub a: RationalFunction,
}

/// Substitutes `q = 1+γ`, `t = 1+γτ`, `a = 1+γα`.
pub fn reparametrize(f: &RationalFunction) -> RationalFunction {
    let g = MPoly::var(Var::Gamma);
    let one = MPoly::one();
    let q = &one + &g;
    let t = &one + &(&g * &MPoly::var(Var::Tau));
    let a = &one + &(&g * &MPoly::var(Var::Alpha));
    f.substitute(Var::Q, &q)
        .substitute(Var::T, &t)
        .substitute(Var::A, &a)
}
