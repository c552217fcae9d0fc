use interpolatia_core::coefficients::Engine;
use interpolatia_core::exactalg::{CertBudget, Status};
use interpolatia_core::partitions::{partitions_up_to, Partition};
use interpolatia_core::positivity::{
    check_int_j, check_int_m, classical_taus, molev_set_compare, powersum_duality, run_conjecture,
    run_suite, sample_grid, write_json_lines, Conjecture, DualityChecker, EvidenceRecord, Grid,
    RunOptions, Session, Suite, Summary,
};
use interpolatia_core::{Family, FamilyConfig};
use proptest::prelude::*;

fn engine(f: Family, n: usize) -> Engine {
    Engine::new(FamilyConfig::new(f, n).unwrap())
}

#[test]
fn containment_duality_in_two_variables() {
    let e = engine(Family::AJ, 2);
    let d = DualityChecker::new(&e);
    let budget = CertBudget::default();
    let ps = partitions_up_to(2, 4);
    for l in &ps {
        for mu in &ps {
            let r = d.containment(l, mu, &classical_taus(), &budget).unwrap();
            assert_eq!(r.contains, l.contains(mu).unwrap(), "{} {}", l, mu);
            assert!(r.holds, "{} {}", l, mu);
            assert_eq!(r.summary.refuted, usize::from(!r.contains), "{} {}", l, mu);
        }
    }
}

#[test]
fn macdonald_duality_in_two_variables() {
    let e = engine(Family::AM, 2);
    let d = DualityChecker::new(&e);
    let budget = CertBudget::default();
    let ps = partitions_up_to(2, 3);
    for l in &ps {
        for mu in &ps {
            let r = d.macdonald(l, mu, &budget).unwrap();
            assert!(r.holds, "{} {}", l, mu);
        }
    }
}

#[test]
fn power_sum_duality_with_enough_variables() {
    let budget = CertBudget::default();
    for r in 1..=3u32 {
        let n = r as usize;
        let l = Partition::parse(&format!("[{}]", r), n).unwrap();
        for s in 0..=r {
            let mu = Partition::parse(&format!("[{}]", s), n).unwrap();
            let rep = powersum_duality(n, &l, &mu, &budget).unwrap();
            assert!(rep.holds && rep.contains, "{} {}", l, mu);
        }
    }
}

#[test]
fn integral_adjacent_forms_are_certified() {
    for f in Family::ALL {
        let e = engine(f, 2);
        for l in partitions_up_to(2, 4) {
            for mu in l.lower_covers() {
                let a = e.integral_forms(&l, &mu).unwrap().a;
                let v = if f.is_jack() {
                    check_int_j(&a)
                } else {
                    check_int_m(&a, 4)
                };
                assert_eq!(v.status, Status::Certified, "{} {} {}", f, l, mu);
                assert!(v.certificate.is_some());
            }
        }
    }
}

#[test]
fn slice_theorem_with_a_nonempty_second_partition() {
    for f in Family::ALL {
        let e = engine(f, 2);
        let ps = partitions_up_to(2, 4);
        for mu in &ps {
            for nu in ps.iter().filter(|nu| nu.size() > 0) {
                let r = molev_set_compare(&e, mu, nu, mu.size() + 1).unwrap();
                assert!(r.holds, "{} {} {}", f, mu, nu);
            }
        }
    }
}

#[test]
fn empty_second_partition_breaks_the_slice_above_mu() {
    let e = engine(Family::AJ, 2);
    let mu = Partition::parse("[1]", 2).unwrap();
    let r = molev_set_compare(&e, &mu, &Partition::zero(2), 2).unwrap();
    assert!(!r.holds);
    let top = r.slices.iter().find(|s| s.size == 2).unwrap();
    assert!(top.lr_support.is_empty() && top.molev.is_empty());
    assert_eq!(top.containing, vec!["[2,0]", "[1,1]"]);
}

#[test]
fn suites_pass_on_a_small_grid() {
    let session = Session::new();
    let opts = RunOptions::new(Family::ALL.to_vec(), Grid { n: 2, max_size: 3 });
    for &suite in Suite::ALL {
        if suite == Suite::Molev {
            continue;
        }
        let out = run_suite(&session, suite, &opts).unwrap();
        assert!(out.passed(), "{}: {:?}", suite, out.failures);
        assert!(!out.records.is_empty(), "{}", suite);
    }
}

#[test]
fn conjecture_harnesses_are_deterministic() {
    let opts = RunOptions::new(Family::ALL.to_vec(), Grid { n: 2, max_size: 3 });
    for &c in Conjecture::ALL {
        let render = || {
            let out = run_conjecture(&Session::new(), c, &opts).unwrap();
            let mut buf = Vec::new();
            write_json_lines(&out.records, &mut buf).unwrap();
            buf
        };
        let first = render();
        assert!(!first.is_empty(), "{}", c);
        assert_eq!(first, render(), "{}", c);
    }
}

#[test]
fn evidence_lines_parse_back() {
    let l = Partition::parse("[2,1]", 2).unwrap();
    let mu = Partition::parse("[1]", 2).unwrap();
    let records = vec![
        EvidenceRecord::new(
            "positivity",
            Family::AJ,
            2,
            &l,
            &mu,
            None,
            Status::Certified,
        )
        .certificate("polya N=0"),
        EvidenceRecord::new("lr-S", Family::BM, 2, &l, &mu, Some(&mu), Status::Refuted)
            .witness("slice 3"),
    ];
    let mut buf = Vec::new();
    write_json_lines(&records, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let parsed: Vec<serde_json::Value> = text
        .lines()
        .map(|x| serde_json::from_str(x).unwrap())
        .collect();
    assert_eq!(parsed[0]["verdict"], "Certified");
    assert!(parsed[0].get("nu").is_none());
    assert_eq!(parsed[1]["nu"], "[1,0]");
    let s = Summary::of(&records);
    assert_eq!((s.certified, s.refuted, s.total()), (1, 1, 2));
}

proptest! {
    #[test]
    fn sample_grids_depend_only_on_the_seed(n in 1usize..4, k in 0usize..12, seed in any::<u64>()) {
        let a = sample_grid(n, k, seed);
        prop_assert_eq!(&a, &sample_grid(n, k, seed));
        prop_assert!(a.iter().all(|x| x.len() == n));
    }
}
