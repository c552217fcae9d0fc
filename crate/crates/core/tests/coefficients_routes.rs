use std::time::Instant;

use interpolatia_core::coefficients::{lr_product_expansion, mat_mul, reparametrize, Engine};
use interpolatia_core::interpolation::{interp_poly, Normalization, PolyCache};
use interpolatia_core::partitions::{enumerate_chains, partitions_up_to, Partition};
use interpolatia_core::{Family, FamilyConfig, MPoly, RationalFunction};
use num_bigint::BigInt;
use rayon::prelude::*;

fn engine(f: Family, n: usize) -> Engine {
    Engine::new(FamilyConfig::new(f, n).unwrap())
}

fn p(s: &str, n: usize) -> Partition {
    Partition::parse(s, n).unwrap()
}

fn grid() -> Vec<(usize, u32)> {
    vec![(1, 6), (2, 6), (3, 5)]
}

#[test]
fn three_routes_agree() {
    for f in Family::ALL {
        for (n, d) in grid() {
            let start = Instant::now();
            let e = engine(f, n);
            let ps = partitions_up_to(n, d);
            let mut pairs = 0;
            for l in &ps {
                for mu in ps.iter().filter(|m| l.contains(m).unwrap()) {
                    let direct = e.b_direct(l, mu).unwrap();
                    assert_eq!(direct, e.b_weighted(l, mu).unwrap(), "{} {} {}", f, l, mu);
                    assert_eq!(direct, e.b_recursive(l, mu).unwrap(), "{} {} {}", f, l, mu);
                    pairs += 1;
                }
            }
            eprintln!(
                "{} n={} d={}: {} pairs in {:?}",
                f,
                n,
                d,
                pairs,
                start.elapsed()
            );
        }
    }
}

#[test]
fn normalizing_factor_matches_distinguished_evaluation_in_three_variables() {
    for f in Family::ALL {
        let e = engine(f, 3);
        for l in partitions_up_to(3, 5) {
            assert_eq!(
                e.monic_value(&l, &l).unwrap(),
                e.config().h_factor(&l).unwrap(),
                "{} {}",
                f,
                l
            );
        }
    }
}

#[test]
fn direct_evaluation_matches_symbolic_polynomial() {
    for f in Family::ALL {
        let e = engine(f, 2);
        for mu in partitions_up_to(2, 3) {
            let h = interp_poly(e.config(), &mu, Normalization::Unital).unwrap();
            for l in partitions_up_to(2, 5) {
                let v = h.eval(&e.config().shift(&l).unwrap().coords).unwrap();
                assert_eq!(v, e.b_direct(&l, &mu).unwrap(), "{} {} {}", f, l, mu);
            }
        }
    }
}

#[test]
fn inverse_table_inverts_b() {
    for f in Family::ALL {
        let e = engine(f, 2);
        let b = e.matrix(5, |l, m| e.b_direct(l, m)).unwrap();
        let bi = e.matrix(5, |l, m| e.b_inverse(l, m)).unwrap();
        let prod = mat_mul(&bi, &b);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x.is_one(), i == j, "{} ({},{})", f, i, j);
                assert_eq!(x.is_zero(), i != j, "{} ({},{})", f, i, j);
            }
        }
    }
}

#[test]
fn jack_weights_and_inverse_sign() {
    let e = engine(Family::AJ, 3);
    for l in partitions_up_to(3, 4) {
        for mu in partitions_up_to(3, 4)
            .iter()
            .filter(|m| l.contains(m).unwrap())
        {
            let k = l.size() - mu.size();
            let sign = if k % 2 == 0 {
                RationalFunction::one()
            } else {
                RationalFunction::from_int(-1)
            };
            assert_eq!(
                e.b_inverse(&l, mu).unwrap(),
                &sign * &e.b_direct(&l, mu).unwrap()
            );
            assert_eq!(
                e.norm_gap(&l, mu).unwrap(),
                RationalFunction::from_int(k as i64)
            );
        }
    }
}

#[test]
fn classical_degeneration() {
    let e = engine(Family::AJ, 1);
    for l in 0..=10u32 {
        for m in 0..=l {
            let expected = num_integer::binomial(BigInt::from(l), BigInt::from(m));
            let v = e
                .b_direct(&p(&format!("[{}]", l), 1), &p(&format!("[{}]", m), 1))
                .unwrap();
            assert_eq!(v.constant_value().unwrap(), expected.into());
        }
    }
}

#[test]
fn lr_routes_and_product_oracle() {
    for f in Family::ALL {
        let e = engine(f, 2);
        let polys = PolyCache::new(*e.config());
        let small = partitions_up_to(2, 3);
        let pairs: Vec<(&Partition, &Partition)> = small
            .iter()
            .flat_map(|m| small.iter().map(move |v| (m, v)))
            .collect();
        pairs.par_iter().for_each(|&(mu, nu)| {
            let oracle = lr_product_expansion(&polys, mu, nu).unwrap();
            for l in partitions_up_to(2, mu.size() + nu.size() + 1) {
                let w = e.lr_weighted(&l, mu, nu).unwrap();
                let expected = oracle
                    .get(&l)
                    .cloned()
                    .unwrap_or_else(RationalFunction::zero);
                assert_eq!(w, expected, "{} c^{}_{}{}", f, l, mu, nu);
                assert_eq!(
                    w,
                    e.lr_via_bbb(&l, mu, nu).unwrap(),
                    "{} c^{}_{}{}",
                    f,
                    l,
                    mu,
                    nu
                );
                assert_eq!(w, e.lr_weighted(&l, nu, mu).unwrap(), "{} symmetry", f);
            }
        });
    }
}

#[test]
fn lr_special_cases() {
    for f in Family::ALL {
        let e = engine(f, 2);
        for l in partitions_up_to(2, 4) {
            for nu in partitions_up_to(2, 3) {
                assert_eq!(
                    e.lr_weighted(&l, &l, &nu).unwrap(),
                    e.b_direct(&l, &nu).unwrap()
                );
                for mu in l.lower_covers() {
                    let abc = &e.adjacent(&l, &mu).unwrap()
                        * &(&e.b_direct(&l, &nu).unwrap() - &e.b_direct(&mu, &nu).unwrap());
                    assert_eq!(
                        e.lr_weighted(&l, &mu, &nu).unwrap(),
                        abc,
                        "{} {} {} {}",
                        f,
                        l,
                        mu,
                        nu
                    );
                }
            }
        }
    }
}

#[test]
fn telescoping_along_every_chain() {
    for f in Family::ALL {
        let e = engine(f, 2);
        let ps = partitions_up_to(2, 4);
        for l in &ps {
            for mu in ps.iter().filter(|m| l.contains(m).unwrap()) {
                for nu in partitions_up_to(2, 2) {
                    let lhs = &e.b_direct(l, &nu).unwrap() - &e.b_direct(mu, &nu).unwrap();
                    for chain in enumerate_chains(l, mu).unwrap() {
                        let rhs = RationalFunction::sum(chain.steps.windows(2).map(|w| {
                            &e.lr_weighted(&w[0], &w[1], &nu).unwrap()
                                / &e.adjacent(&w[0], &w[1]).unwrap()
                        }));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn structure_constants_special_cases() {
    for f in Family::ALL {
        let e = engine(f, 2);
        let cfg = *e.config();
        let one = interp_poly(&cfg, &Partition::zero(2), Normalization::Unital).unwrap();
        let p_nu = interp_poly(&cfg, &p("[1,0]", 2), Normalization::Unital).unwrap();
        let sq = p_nu.mul(&p_nu);
        for l in partitions_up_to(2, 3) {
            for mu in partitions_up_to(2, 3) {
                let c1 = e.structure_constants(&one, &l, &mu).unwrap();
                assert_eq!(c1.is_one(), l == mu);
                assert_eq!(c1.is_zero(), l != mu);
                assert_eq!(
                    e.structure_constants(&p_nu, &l, &mu).unwrap(),
                    e.lr_weighted(&l, &mu, &p("[1,0]", 2)).unwrap()
                );
            }
        }
        let mut rebuilt = interpolatia_core::interpolation::SymPoly::zero(2, sq.kind());
        for l in partitions_up_to(2, 2) {
            let c = e.structure_constants(&sq, &l, &Partition::zero(2)).unwrap();
            rebuilt = rebuilt.add(
                &interp_poly(&cfg, &l, Normalization::Unital)
                    .unwrap()
                    .scale(&c),
            );
        }
        assert_eq!(rebuilt, sq, "{}", f);
    }
}

#[test]
fn commutation_identities_on_the_size_four_block() {
    for f in Family::ALL {
        let e = engine(f, 2);
        assert!(e.check_commutation(4).unwrap(), "{}", f);
        for nu in partitions_up_to(2, 2) {
            let h = interp_poly(e.config(), &nu, Normalization::Unital).unwrap();
            assert!(
                e.check_structure_conjugation(&h, 4).unwrap(),
                "{} {}",
                f,
                nu
            );
        }
    }
}

#[test]
fn reparametrization_substitutes_all_three_parameters() {
    let q = RationalFunction::var(interpolatia_core::Var::Q);
    let r = reparametrize(&(&RationalFunction::one() - &q));
    assert_eq!(r, -RationalFunction::var(interpolatia_core::Var::Gamma));
    let t = RationalFunction::from_poly(MPoly::var(interpolatia_core::Var::T));
    assert_eq!(reparametrize(&t).to_string(), "g*tau + 1");
}
