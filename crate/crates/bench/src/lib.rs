//! Workloads shared by the criterion benches in `benches/kernels.rs`.

use interpolatia_core::coefficients::Engine;
use interpolatia_core::partitions::{partitions_up_to, Partition};
use interpolatia_core::{Family, FamilyConfig, RationalFunction};

pub fn engine(family: Family, n: usize) -> Engine {
    Engine::new(FamilyConfig::new(family, n).expect("valid family configuration"))
}

/// Every pair `lambda ⊇ mu` with `|lambda| <= max_size`.
pub fn containing_pairs(n: usize, max_size: u32) -> Vec<(Partition, Partition)> {
    let ps = partitions_up_to(n, max_size);
    ps.iter()
        .flat_map(|l| {
            ps.iter()
                .filter(|m| l.contains(m).unwrap_or(false))
                .map(move |m| (l.clone(), m.clone()))
        })
        .collect()
}

/// Full table of `b_direct` values over `pairs` on a fresh engine.
pub fn b_table(
    family: Family,
    n: usize,
    pairs: &[(Partition, Partition)],
) -> Vec<RationalFunction> {
    let e = engine(family, n);
    pairs
        .iter()
        .map(|(l, m)| e.b_direct(l, m).expect("b_direct"))
        .collect()
}
