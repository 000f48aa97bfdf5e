use partspread::count::{bell, count_profiled, stirling2, tilde_bell};
use partspread::partition::{
    count_derangements, enumerate_into_blocks, enumerate_partitions, enumerate_profiled,
    max_block_overlap, partially_t_intersect, shared_blocks, t_intersect, Partition, Profile,
};
use partspread::BigCount;
use proptest::prelude::*;
use std::collections::HashSet;

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n))
        .prop_map(|labels| Partition::from_rgs(&labels))
}

fn pair_strategy(max_n: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n, n),
            proptest::collection::vec(0..n, n),
        )
            .prop_map(|(a, b)| (Partition::from_rgs(&a), Partition::from_rgs(&b)))
    })
}

#[test]
fn enumeration_agrees_with_counts() {
    for n in 0..=10 {
        let all = enumerate_partitions(n).unwrap();
        assert_eq!(BigCount::from(all.len()), bell(n), "n={n}");
        let distinct: HashSet<&Partition> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for l in 0..=n {
            let by_filter = all.iter().filter(|p| p.num_blocks() == l).count();
            assert_eq!(BigCount::from(by_filter), stirling2(n, l), "n={n} l={l}");
            if l >= 1 {
                assert_eq!(enumerate_into_blocks(n, l).unwrap().len(), by_filter);
            }
        }
        let no_singleton = all.iter().filter(|p| p.blocks().iter().all(|b| b.len() >= 2)).count();
        assert_eq!(BigCount::from(no_singleton), tilde_bell(n), "n={n}");
    }
}

#[test]
fn profiled_enumeration_agrees_with_filter() {
    let all = enumerate_partitions(9).unwrap();
    for sizes in [vec![3, 3, 3], vec![2, 2, 2, 2, 1], vec![4, 3, 2], vec![5, 2, 1, 1], vec![9]] {
        let profile = Profile::new(sizes.clone()).unwrap();
        let filtered: HashSet<&Partition> = all.iter().filter(|p| p.profile() == profile).collect();
        let listed = enumerate_profiled(&profile).unwrap();
        assert_eq!(BigCount::from(filtered.len()), count_profiled(&profile), "{sizes:?}");
        assert_eq!(listed.len(), filtered.len());
        assert!(listed.iter().all(|p| filtered.contains(p)));
    }
}

#[test]
fn almost_full_intersection_forces_equality() {
    for n in 2..=7 {
        for l in 2..=n {
            let fam = enumerate_into_blocks(n, l).unwrap();
            for p in &fam {
                for q in &fam {
                    if t_intersect(p, q, l - 1).unwrap() {
                        assert_eq!(p, q);
                    }
                }
            }
        }
    }
}

fn splits(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for (i, b) in p.blocks().iter().enumerate() {
        if b.len() < 2 {
            continue;
        }
        // masks containing the first element, excluding the whole block
        for mask in 0..(1u32 << (b.len() - 1)) - 1 {
            let mut left = vec![b[0]];
            let mut right = Vec::new();
            for (j, &x) in b[1..].iter().enumerate() {
                if mask >> j & 1 == 1 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
            blocks.remove(i);
            blocks.push(left);
            blocks.push(right);
            out.push(Partition::new(p.n(), blocks).unwrap());
        }
    }
    out
}

#[test]
fn splitting_does_not_increase_derangements() {
    for n in 2..=6 {
        for p in enumerate_partitions(n).unwrap() {
            let d = count_derangements(&p).unwrap();
            for q in splits(&p) {
                assert!(count_derangements(&q).unwrap() <= d, "{p} -> {q}");
            }
        }
    }
}

proptest! {
    #[test]
    fn rgs_round_trip(p in partition_strategy(12)) {
        prop_assert_eq!(Partition::from_rgs(&p.rgs()), p.clone());
        let text = p.to_string();
        if p.n() < 10 {
            prop_assert_eq!(text.parse::<Partition>().unwrap(), p.clone());
        }
        let mut seen: Vec<usize> = p.blocks().iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (1..=p.n()).collect::<Vec<_>>());
        prop_assert!(p.blocks().windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn block_predicates_symmetric_and_monotone((p, q) in pair_strategy(9)) {
        prop_assert_eq!(shared_blocks(&p, &q).unwrap(), shared_blocks(&q, &p).unwrap());
        prop_assert_eq!(max_block_overlap(&p, &q).unwrap(), max_block_overlap(&q, &p).unwrap());
        for t in 1..=p.n() {
            let full = t_intersect(&p, &q, t).unwrap();
            let part = partially_t_intersect(&p, &q, t).unwrap();
            prop_assert_eq!(full, t_intersect(&q, &p, t).unwrap());
            prop_assert_eq!(part, partially_t_intersect(&q, &p, t).unwrap());
            if full {
                prop_assert!(t_intersect(&p, &q, t - 1).unwrap());
            }
            if part && t > 1 {
                prop_assert!(partially_t_intersect(&p, &q, t - 1).unwrap());
            }
        }
    }
}
