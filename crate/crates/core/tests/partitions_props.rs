use interpolatia_core::partitions::{
    count_chains, distinguished_rt, enumerate_chains, enumerate_rt, is_horizontal_strip,
    partitions_of, partitions_up_to, Partition, ReverseTableau,
};
use proptest::prelude::*;

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// Standard tableaux count from hook lengths.
fn hook_length_count(l: &Partition) -> u64 {
    let hooks: u64 = l
        .cells()
        .map(|c| {
            let arm = l.row(c.row) as u64 - c.col as u64;
            let leg = l.col(c.col) as u64 - c.row as u64;
            arm + leg + 1
        })
        .product();
    factorial(l.size() as u64) / hooks
}

/// Every filling of the shape by `[n]`, kept when the monotonicity predicate holds.
fn brute_force_rts(shape: &Partition, n: usize) -> Vec<Vec<Vec<u32>>> {
    let cells: Vec<_> = shape.cells().collect();
    let total = (n as u64).pow(cells.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut rows: Vec<Vec<u32>> = (1..=shape.length())
            .map(|i| vec![0; shape.row(i) as usize])
            .collect();
        for cell in &cells {
            rows[cell.row - 1][cell.col - 1] = (c % n as u64) as u32 + 1;
            c /= n as u64;
        }
        let t = ReverseTableau {
            shape: shape.clone(),
            rows,
        };
        if t.is_valid(n) {
            out.push(t.rows);
        }
    }
    out.sort();
    out
}

#[test]
fn chain_counts_match_hook_length_formula() {
    for n in 1..=4 {
        for l in partitions_up_to(n, 8) {
            let zero = Partition::zero(n);
            assert_eq!(count_chains(&l, &zero), hook_length_count(&l), "{}", l);
            if l.size() <= 6 {
                assert_eq!(
                    enumerate_chains(&l, &zero).unwrap().len() as u64,
                    hook_length_count(&l)
                );
            }
        }
    }
}

#[test]
fn chains_are_saturated_and_sorted() {
    for l in partitions_up_to(3, 6) {
        for m in partitions_up_to(3, l.size()) {
            let chains = enumerate_chains(&l, &m).unwrap();
            if !l.contains(&m).unwrap() {
                assert!(chains.is_empty());
                continue;
            }
            assert!(!chains.is_empty());
            for ch in &chains {
                assert_eq!(ch.steps.first(), Some(&l));
                assert_eq!(ch.steps.last(), Some(&m));
                for w in ch.steps.windows(2) {
                    assert!(w[0].covers(&w[1]).unwrap());
                    assert!(w[0].contains(&w[1]).unwrap());
                }
            }
            let keys: Vec<_> = chains.iter().map(|c| c.removed_boxes()).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn reverse_tableaux_match_brute_force() {
    for n in 1..=3 {
        for shape in partitions_up_to(n, 5) {
            let fast: Vec<Vec<Vec<u32>>> = {
                let mut v: Vec<_> = enumerate_rt(&shape, n)
                    .unwrap()
                    .into_iter()
                    .map(|t| t.rows)
                    .collect();
                v.sort();
                v
            };
            assert_eq!(fast, brute_force_rts(&shape, n), "{}", shape);
        }
    }
}

#[test]
fn reverse_tableaux_have_horizontal_strip_levels() {
    for n in 1..=3 {
        for shape in partitions_up_to(n, 6) {
            let all = enumerate_rt(&shape, n).unwrap();
            let d = distinguished_rt(&shape);
            assert_eq!(all.iter().filter(|t| **t == d).count(), 1);
            for t in &all {
                assert!(t.is_valid(n));
                let levels = t.strip_chain(n);
                assert_eq!(levels[0], shape);
                assert!(levels[n].is_zero());
                for w in levels.windows(2) {
                    assert!(is_horizontal_strip(&w[0], &w[1]));
                }
            }
        }
    }
}

#[test]
fn english_truncation_dominates_dominated_partitions() {
    for n in 1..=3 {
        for l in partitions_up_to(n, 8) {
            for m in partitions_up_to(n, l.size()) {
                if l.dominates(&m, true).unwrap() {
                    let nu = l.truncate_english(m.size()).unwrap();
                    assert!(l.contains(&nu).unwrap());
                    assert_eq!(nu.size(), m.size());
                    assert!(nu.dominates(&m, false).unwrap(), "{} {} {}", l, m, nu);
                }
            }
        }
    }
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    (1usize..5)
        .prop_flat_map(|n| (Just(n), 0u32..9))
        .prop_flat_map(|(n, d)| {
            let all = partitions_of(n, d);
            prop::sample::select(all)
        })
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in partition_strategy()) {
        let c = l.conjugate();
        let width = c.len().max(1);
        let back = Partition::padded(c.clone(), width).unwrap();
        let orig: Vec<u32> = l.parts().iter().copied().filter(|&p| p > 0).collect();
        prop_assert_eq!(back.conjugate(), orig);
        prop_assert_eq!(c.iter().sum::<u32>(), l.size());
    }

    #[test]
    fn covers_move_one_box(l in partition_strategy()) {
        for z in l.lower_covers() {
            prop_assert!(l.covers(&z).unwrap());
        }
        for z in l.upper_covers() {
            prop_assert!(z.covers(&l).unwrap());
            prop_assert!(l.cover_box(&z).is_none());
        }
    }

    #[test]
    fn parse_roundtrip(l in partition_strategy()) {
        prop_assert_eq!(Partition::parse(&l.to_string(), l.n()).unwrap(), l);
    }
}
