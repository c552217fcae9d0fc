use std::collections::BTreeMap;

use interpolatia_core::interpolation::{
    eval_at, interp_poly, interp_solver_oracle, jack_macdonald, var_kind, Normalization, SymPoly,
    VarKind,
};
use interpolatia_core::partitions::{partitions_up_to, Partition};
use interpolatia_core::{Family, FamilyConfig, MPoly, RationalFunction, Var};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn cfg(f: Family, n: usize) -> FamilyConfig {
    FamilyConfig::new(f, n).unwrap()
}

fn delta_values(n: usize, d: u32, mu: &Partition) -> BTreeMap<Partition, RationalFunction> {
    partitions_up_to(n, d)
        .into_iter()
        .map(|l| {
            let v = if &l == mu {
                RationalFunction::one()
            } else {
                RationalFunction::zero()
            };
            (l, v)
        })
        .collect()
}

#[test]
fn tableau_formula_matches_linear_solve() {
    for f in Family::ALL {
        for n in 1..=2 {
            let c = cfg(f, n);
            for mu in partitions_up_to(n, 4) {
                let h = interp_poly(&c, &mu, Normalization::Unital).unwrap();
                let solved =
                    interp_solver_oracle(&c, mu.size(), &delta_values(n, mu.size(), &mu)).unwrap();
                assert_eq!(h, solved, "{} n={} mu={}", f, n, mu);
            }
        }
    }
}

#[test]
fn vanishing_and_extra_vanishing() {
    for f in Family::ALL {
        let c = cfg(f, 2);
        for mu in partitions_up_to(2, 4) {
            let h = interp_poly(&c, &mu, Normalization::Unital).unwrap();
            for l in partitions_up_to(2, mu.size() + 2) {
                let v = eval_at(&h, &c.shift(&l).unwrap()).unwrap();
                if l.size() <= mu.size() {
                    assert_eq!(v.is_one(), l == mu, "{} {} at {}", f, mu, l);
                    assert_eq!(v.is_zero(), l != mu, "{} {} at {}", f, mu, l);
                }
                if !l.contains(&mu).unwrap() {
                    assert!(v.is_zero(), "{} {} at {}", f, mu, l);
                }
            }
        }
    }
}

#[test]
fn weyl_invariance_degree_and_leading_coefficient() {
    for f in Family::ALL {
        for n in 1..=3 {
            let c = cfg(f, n);
            let cap = if n == 3 { 3 } else { 4 };
            for mu in partitions_up_to(n, cap) {
                let h = interp_poly(&c, &mu, Normalization::Monic).unwrap();
                assert!(h.is_weyl_invariant(), "{} {}", f, mu);
                let stored: Vec<i32> = mu.parts().iter().map(|&p| p as i32).collect();
                let expected_degree = if f == Family::BJ {
                    2 * mu.size()
                } else {
                    mu.size()
                } as i32;
                assert_eq!(h.degree(), expected_degree, "{} {}", f, mu);
                assert!(h.coeff(&stored).is_one(), "{} {}", f, mu);
            }
        }
    }
}

#[test]
fn top_degree_part_is_the_ordinary_polynomial() {
    for f in [Family::AJ, Family::AM] {
        let c = cfg(f, 2);
        for mu in partitions_up_to(2, 4) {
            let h = interp_poly(&c, &mu, Normalization::Monic).unwrap();
            assert_eq!(
                h.top_terms(),
                jack_macdonald(&c, &mu).unwrap(),
                "{} {}",
                f,
                mu
            );
        }
    }
    let c = cfg(Family::BJ, 2);
    for mu in partitions_up_to(2, 3) {
        let top = interp_poly(&c, &mu, Normalization::Monic)
            .unwrap()
            .top_terms();
        let p = jack_macdonald(&cfg(Family::AJ, 2), &mu).unwrap();
        let relabeled = SymPoly::from_terms(
            2,
            VarKind::Squared,
            p.terms().iter().map(|(e, c)| (e.clone(), c.clone())),
        );
        assert_eq!(top, relabeled, "{}", mu);
    }
}

#[test]
fn normalizing_factor_equals_direct_evaluation() {
    for f in Family::ALL {
        for n in 1..=2 {
            let c = cfg(f, n);
            for l in partitions_up_to(n, 4) {
                let h = interp_poly(&c, &l, Normalization::Monic).unwrap();
                let direct = eval_at(&h, &c.shift(&l).unwrap()).unwrap();
                assert_eq!(direct, c.h_factor(&l).unwrap(), "{} n={} {}", f, n, l);
            }
        }
    }
}

#[test]
fn integral_form_scales_by_c_product() {
    for f in Family::ALL {
        let c = cfg(f, 2);
        for mu in partitions_up_to(2, 3) {
            let monic = interp_poly(&c, &mu, Normalization::Monic).unwrap();
            let int = interp_poly(&c, &mu, Normalization::Integral).unwrap();
            assert_eq!(int, monic.scale(&c.c_product(&mu).unwrap()));
        }
    }
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
fn falling(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, r| {
        acc * (x - BigRational::from_integer(r.into()))
    })
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let k = m.len();
    let mut d = BigRational::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= m[col][col].clone();
        for r in col + 1..k {
            let f = &m[r][col] / &m[col][col];
            for j in col..k {
                let v = &f * &m[col][j];
                m[r][j] -= v;
            }
        }
    }
    d
}

/// Factorial Schur function with falling-factorial powers, as a ratio of alternants.
fn factorial_schur(mu: &Partition, x: &[BigRational]) -> BigRational {
    let n = x.len();
    let alt = |shift: &dyn Fn(usize) -> u32| {
        det((0..n)
            .map(|i| (0..n).map(|j| falling(&x[i], shift(j))).collect())
            .collect())
    };
    let num = alt(&|j| mu.row(j + 1) + (n - 1 - j) as u32);
    let den = alt(&|j| (n - 1 - j) as u32);
    num / den
}

#[test]
fn schur_specialization_matches_factorial_schur() {
    for n in 1..=3 {
        let c = cfg(Family::AJ, n);
        let cap = if n == 3 { 3 } else { 4 };
        for mu in partitions_up_to(n, cap) {
            let h = interp_poly(&c, &mu, Normalization::Monic).unwrap();
            let at_one = h.map_coeffs(|r| r.substitute(Var::Tau, &MPoly::one()));
            for l in partitions_up_to(n, cap + 1) {
                let x: Vec<BigRational> = (1..=n)
                    .map(|i| BigRational::from_integer((l.row(i) + (n - i) as u32).into()))
                    .collect();
                let point: Vec<RationalFunction> =
                    x.iter().map(RationalFunction::from_ratio).collect();
                let got = at_one.eval(&point).unwrap().constant_value().unwrap();
                assert_eq!(
                    got,
                    factorial_schur(&mu, &x),
                    "n={} mu={} lambda={}",
                    n,
                    mu,
                    l
                );
            }
        }
    }
}

#[test]
fn representation_matches_family() {
    assert_eq!(var_kind(Family::BJ), VarKind::Squared);
    let h = interp_poly(
        &cfg(Family::BM, 1),
        &Partition::parse("[1]", 1).unwrap(),
        Normalization::Monic,
    )
    .unwrap();
    assert_eq!(h.terms().len(), 3);
    assert!(h.coeff(&[-1]).is_one());
}
