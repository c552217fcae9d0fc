use interpolatia_core::exactalg::{
    cone_check, gcd, CertBudget, Cone, MPoly, Monomial, RationalFunction, Status, Var,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn small_poly(vars: &'static [Var]) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, vars.len()), -4i64..5), 0..5).prop_map(
        move |ts| {
            MPoly::from_terms(ts.into_iter().map(|(es, c)| {
                let mut m = [0u16; 6];
                for (v, e) in vars.iter().zip(es) {
                    m[v.index()] = e;
                }
                (Monomial(m), BigInt::from(c))
            }))
        },
    )
}

const QT: &[Var] = &[Var::Q, Var::T];
const TAU: &[Var] = &[Var::Tau];

fn nonzero(vars: &'static [Var]) -> impl Strategy<Value = MPoly> {
    small_poly(vars).prop_filter("nonzero", |p| !p.is_zero())
}

fn point(q: i64, t: i64) -> Vec<(Var, BigRational)> {
    vec![
        (Var::Q, BigRational::new(q.into(), 7.into())),
        (Var::T, BigRational::new(t.into(), 11.into())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in small_poly(QT), b in small_poly(QT), c in small_poly(QT)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn gcd_recovers_planted_factor(g in nonzero(QT), x in nonzero(QT), y in nonzero(QT)) {
        // Make the cofactors coprime by perturbing one with a fresh variable-free shift.
        let a = &g * &x;
        let b = &g * &(&y * &MPoly::var(Var::A) + &MPoly::one());
        let d = gcd(&a, &b);
        prop_assert!(a.div_exact(&d).is_some());
        prop_assert!(b.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&g.primitive().1).is_some());
    }

    #[test]
    fn canonical_form_is_idempotent(n in small_poly(QT), d in nonzero(QT)) {
        let f = RationalFunction::new(n, d).unwrap();
        let g = RationalFunction::new(f.numer().clone(), f.denom().clone()).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert!(f.denom().leading_coeff() > BigInt::zero());
    }

    #[test]
    fn field_operations_commute_with_evaluation(
        n1 in small_poly(QT), d1 in nonzero(QT), n2 in small_poly(QT), d2 in nonzero(QT),
        pq in 1i64..7, pt in 1i64..11,
    ) {
        let f = RationalFunction::new(n1, d1).unwrap();
        let g = RationalFunction::new(n2, d2).unwrap();
        let p = point(pq, pt);
        if let (Ok(fv), Ok(gv)) = (f.eval_at(&p), g.eval_at(&p)) {
            prop_assert_eq!((&f + &g).eval_at(&p).unwrap(), &fv + &gv);
            prop_assert_eq!((&f * &g).eval_at(&p).unwrap(), &fv * &gv);
            prop_assert_eq!((&f - &g).eval_at(&p).unwrap(), &fv - &gv);
        }
    }

    #[test]
    fn division_inverts_multiplication(n1 in nonzero(QT), d1 in nonzero(QT), n2 in nonzero(QT), d2 in nonzero(QT)) {
        let f = RationalFunction::new(n1, d1).unwrap();
        let g = RationalFunction::new(n2, d2).unwrap();
        prop_assert_eq!(&(&f * &g) / &g, f);
    }

    #[test]
    fn jack_verdicts_are_self_consistent(n in nonzero(TAU), d in nonzero(TAU)) {
        let f = RationalFunction::new(n, d).unwrap();
        let v = cone_check(&f, Cone::AJ, &CertBudget { n_max: 12, ..CertBudget::default() }).unwrap();
        match v.status {
            Status::Certified => prop_assert!(v.certificate.unwrap().verify(&f, Cone::AJ)),
            Status::Refuted => {
                let w = v.witness.unwrap();
                prop_assert!(w.value < BigRational::zero());
                prop_assert_eq!(f.eval_at(&w.point).unwrap(), w.value);
            }
            Status::Inconclusive => {}
        }
    }

    #[test]
    fn atom_products_certify(es in prop::collection::vec((0u16..3, 0u16..3, 1u32..3), 1..4), flip in any::<bool>()) {
        let mut p = MPoly::one();
        for (a, b, k) in &es {
            if a + b == 0 { continue; }
            let m = Monomial([0, 0, 0, *a, *b, 0]);
            p = &p * &MPoly::one_minus(m).pow(*k);
        }
        let q = MPoly::one_minus(Monomial([0, 0, 0, 1, 1, 0]));
        let f = if flip { RationalFunction::new(q, p).unwrap() } else { RationalFunction::new(p, q).unwrap() };
        let v = cone_check(&f, Cone::AM, &CertBudget::default()).unwrap();
        prop_assert_eq!(v.status, Status::Certified);
        prop_assert!(v.certificate.unwrap().verify(&f, Cone::AM));
    }
}
