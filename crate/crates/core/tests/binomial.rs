use interpolatia_core::coefficients::Engine;
use interpolatia_core::interpolation::{
    elementary_binomial_expansion, jack_binomial_expansion, macdonald_binomial_expansion,
};
use std::collections::BTreeMap;

use interpolatia_core::partitions::{partitions_up_to, Partition};
use interpolatia_core::{Family, FamilyConfig, RationalFunction, Result, Var};

type Expansion = fn(&FamilyConfig, &Partition) -> Result<BTreeMap<Partition, RationalFunction>>;

fn check(f: Family, expand: Expansion) {
    let e = Engine::new(FamilyConfig::new(f, 2).unwrap());
    let ps = partitions_up_to(2, 4);
    for l in &ps {
        let ex = expand(e.config(), l).unwrap();
        for mu in &ps {
            let got = ex.get(mu).cloned().unwrap_or_else(RationalFunction::zero);
            assert_eq!(got, e.b_direct(l, mu).unwrap(), "{} {} {}", f, l, mu);
        }
        assert!(ex.keys().all(|k| l.contains(k).unwrap()), "{} {}", f, l);
    }
}

#[test]
fn shifted_jack_expansion_reproduces_b_table() {
    check(Family::AJ, jack_binomial_expansion);
}

#[test]
fn macdonald_expansion_reproduces_b_table() {
    check(Family::AM, macdonald_binomial_expansion);
}

#[test]
fn elementary_expansion_is_the_tau_infinity_limit() {
    let e = Engine::new(FamilyConfig::new(Family::AJ, 2).unwrap());
    for l in partitions_up_to(2, 4) {
        let ex = elementary_binomial_expansion(&l).unwrap();
        for (mu, c) in &ex {
            let b = e.b_direct(&l, mu).unwrap();
            assert_eq!(&b.limit_at_infinity(Var::Tau).unwrap(), c, "{} {}", l, mu);
        }
    }
}
