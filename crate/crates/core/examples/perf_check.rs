use std::time::Instant;
use repcx_core::lattice::RedundancyLattice;
use repcx_core::random::{random_joint, RandomJointSpec};
use repcx_core::distribution::MarginalCache;
use repcx_core::pid::{analyze, PidOptions};

fn main() {
    let t0 = Instant::now();
    let lattice = RedundancyLattice::build(5).unwrap();
    println!("n=5 lattice: {} nodes, {} comparable pairs, {:?}",
        lattice.len(), lattice.comparable_pairs(), t0.elapsed());

    // empirical joint shaped like criterion 11: 10^4 records, 8 levels, 10 labels
    let t1 = Instant::now();
    let dist = random_joint::<f64>(RandomJointSpec::new(5, 8, 10).with_density(0.03), 1);
    println!("dist: {} patterns, {} support cells, build {:?}",
        dist.pattern_count(), dist.support_len(), t1.elapsed());
    let t2 = Instant::now();
    let cache = MarginalCache::build(&dist);
    println!("cache: {:?}", t2.elapsed());
    let _ = &cache;
    let t3 = Instant::now();
    let result = analyze(&dist, &PidOptions { parallel: false, ..Default::default() }).unwrap();
    println!("analyze n=5 sequential: C={:.4} M={:.4} I={:.4} in {:?}",
        result.complexity, result.multiplicity, result.total_mi, t3.elapsed());
}
