mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use tenshull::classify::{Property, SearchBudget};
use tenshull::interval::{vertex_reduction, IntervalHull};

fn hull(seed: u64, m: usize, n: usize) -> IntervalHull {
    let mut r = rng(seed);
    let a = random_tensor(&mut r, m, n, -1.0, 1.0, 0.0);
    let b = a.add(&random_tensor(&mut r, m, n, 0.0, 1.0, 0.3)).unwrap();
    IntervalHull::new(a, b).unwrap()
}

#[test]
fn every_vertex_lies_in_the_hull() {
    for n in 1..=8 {
        for m in [2, 3] {
            if n > 5 && m == 3 {
                continue;
            }
            let h = hull(n as u64 * 10 + m as u64, m, n);
            let vertices = h.vertices();
            assert_eq!(vertices.len(), 1 << n);
            for (z, t) in &vertices {
                assert!(h.contains(t, false).unwrap(), "vertex {z:?} outside the hull");
                assert_eq!(&h.vertex_tensor(z).unwrap(), t);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn even_order_vertices_pair_up(seed in any::<u64>(), n in 1usize..=5) {
        let h = hull(seed, 2, n);
        let vertices = h.vertices();
        let signs: BTreeSet<Vec<i8>> = vertices.iter().map(|(z, _)| z.as_slice().to_vec()).collect();
        prop_assert_eq!(signs.len(), 1 << n);
        for (z, t) in &vertices {
            prop_assert_eq!(&h.vertex_tensor(&z.negated()).unwrap(), t);
        }
    }

    #[test]
    fn reduction_records_one_verdict_per_vertex(seed in any::<u64>(), n in 1usize..=4, m in 2usize..=3) {
        let h = hull(seed, m, n);
        let v = vertex_reduction(&h, &SearchBudget::default(), Property::P0).unwrap();
        prop_assert_eq!(v.vertices.len(), 1 << n);
        let ranks: Vec<u64> = v.vertices.iter().map(|r| r.z.rank()).collect();
        prop_assert!(ranks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn samples_stay_in_the_hull(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=4, k in any::<u64>()) {
        let h = hull(seed, m, n);
        prop_assert!(h.contains(&h.sample(k, false), false).unwrap());
        prop_assert!(h.contains(&h.sample(k, true), true).unwrap());
    }
}
