use partspread::bitset::ElementSet;
use partspread::count::{binomial, u_kl};
use partspread::encoding::{
    count_extensions, edges_to_subpartition, encode_edges, encode_parts, EdgeUniverse,
    PartsUniverse, SubPartition,
};
use partspread::partition::{enumerate_uniform, max_block_overlap, partially_t_intersect, Partition};
use partspread::scalar::count_to_ratio;
use partspread::{BigCount, Ratio};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n))
        .prop_map(|labels| Partition::from_rgs(&labels))
}

/// Disjoint blocks cut from a shuffled `[k l]`, each of size in `[2, k]`.
fn subpartition_strategy(k: usize, l: usize) -> impl Strategy<Value = SubPartition> {
    let n = k * l;
    (
        Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
        proptest::collection::vec(2..=k, 0..=l),
    )
        .prop_map(move |(elems, sizes)| {
            let mut blocks = Vec::new();
            let mut at = 0;
            for s in sizes {
                if at + s > n {
                    break;
                }
                blocks.push(elems[at..at + s].to_vec());
                at += s;
            }
            SubPartition::new(blocks, Some(k)).unwrap()
        })
}

type Cache = Mutex<HashMap<(usize, usize), &'static [Partition]>>;

fn uniform(k: usize, l: usize) -> &'static [Partition] {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry((k, l))
        .or_insert_with(|| Box::leak(enumerate_uniform(k, l).unwrap().into_boxed_slice()))
}

fn extends(p: &Partition, x: &SubPartition) -> bool {
    x.blocks().iter().all(|b| p.block_contains(b))
}

fn choose2(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

/// Calls `f` with every subset of `items` of size `size`.
fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let need = size - cur.len();
        for i in 0..=items.len().saturating_sub(need) {
            if items.len() < need {
                return;
            }
            cur.push(items[i]);
            go(&items[i + 1..], size, cur, f);
            cur.pop();
        }
    }
    go(items, size, &mut Vec::new(), f);
}

#[test]
fn partial_intersection_implies_shared_edges() {
    for (k, l) in [(2, 4), (3, 3), (4, 2), (2, 5), (5, 2)] {
        let fam = uniform(k, l);
        let u = EdgeUniverse::new(k * l);
        let enc: Vec<ElementSet> = fam.iter().map(|p| encode_edges(p, &u).unwrap()).collect();
        for i in 0..fam.len() {
            for j in 0..fam.len() {
                let overlap = max_block_overlap(&fam[i], &fam[j]).unwrap();
                let shared = enc[i].intersection_len(&enc[j]);
                for t in 1..=k {
                    if partially_t_intersect(&fam[i], &fam[j], t).unwrap() {
                        assert!(shared >= choose2(t), "k={k} l={l} t={t} {} {}", fam[i], fam[j]);
                    }
                }
                assert!(overlap >= 1);
            }
        }
    }
}

#[test]
fn shared_edges_do_not_imply_partial_intersection() {
    let (k, l, t) = (3, 3, 3);
    let fam = uniform(k, l);
    let u = EdgeUniverse::new(k * l);
    let enc: Vec<ElementSet> = fam.iter().map(|p| encode_edges(p, &u).unwrap()).collect();
    let found = (0..fam.len()).find_map(|i| {
        (0..fam.len()).find(|&j| {
            enc[i].intersection_len(&enc[j]) >= choose2(t)
                && !partially_t_intersect(&fam[i], &fam[j], t).unwrap()
        })
        .map(|j| (i, j))
    });
    let (i, j) = found.expect("a counterexample pair exists in U_{3,3}");
    assert!(max_block_overlap(&fam[i], &fam[j]).unwrap() < t);
    let p: Partition = "123|456|789".parse().unwrap();
    let q: Partition = "129|345|678".parse().unwrap();
    assert_eq!(encode_edges(&p, &u).unwrap().intersection_len(&encode_edges(&q, &u).unwrap()), 3);
    assert_eq!(max_block_overlap(&p, &q).unwrap(), 2);
}

#[test]
fn clique_edge_sets_have_minimal_weight_only_as_one_block() {
    for (k, l) in [(3, 2), (3, 3), (4, 2), (2, 4)] {
        let u = EdgeUniverse::new(k * l);
        for t in 2..=k {
            let mut checked = 0usize;
            let mut minimal = 0usize;
            for p in uniform(k, l) {
                let edges: Vec<usize> = encode_edges(p, &u).unwrap().iter().collect();
                for_each_subset(&edges, choose2(t), &mut |e| {
                    let x = edges_to_subpartition(&ElementSet::from_indices(e.iter().copied()), &u);
                    let single = x.num_blocks() == 1 && x.blocks()[0].len() == t;
                    assert!(x.weight() >= t - 1, "k={k} l={l} t={t} {e:?}");
                    assert_eq!(x.weight() == t - 1, single, "k={k} l={l} t={t} {e:?}");
                    checked += 1;
                    minimal += single as usize;
                });
            }
            assert!(checked > 0 && minimal > 0);
        }
    }
}

#[test]
fn extra_edges_raise_weight() {
    for (k, l) in [(3, 2), (4, 2), (2, 4), (3, 3)] {
        let u = EdgeUniverse::new(k * l);
        for p in uniform(k, l) {
            let edges: Vec<usize> = encode_edges(p, &u).unwrap().iter().collect();
            for mask in 0u32..1 << edges.len() {
                let e = ElementSet::from_indices((0..edges.len()).filter(|b| mask >> b & 1 == 1).map(|b| edges[b]));
                let m = edges_to_subpartition(&e, &u).weight();
                for t in 2..=k {
                    let Some(s) = e.len().checked_sub(choose2(t)) else { continue };
                    // m >= t - 1 + s / k, cleared of the denominator
                    assert!(k * m >= k * (t - 1) + s, "k={k} l={l} t={t} E={e}");
                }
            }
        }
    }
}

#[test]
fn extension_bound_for_many_blocks() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for l in 10..=16 {
        for k in 2..=5 {
            let u = count_to_ratio(&u_kl(k, l));
            let strat = subpartition_strategy(k, l);
            for _ in 0..40 {
                let x = strat.new_tree(&mut runner).unwrap().current();
                let m = x.weight();
                if 3 * m > k * l {
                    continue;
                }
                let c = count_to_ratio(&count_extensions(k, l, &x).unwrap());
                let bound = num_traits::pow(Ratio::new(9.into(), (l as i64).into()), m) * &u;
                assert!(c <= bound, "k={k} l={l} x={:?}", x.blocks());
            }
        }
    }
}

proptest! {
    #[test]
    fn parts_round_trip(p in partition_strategy(12)) {
        let mut u = PartsUniverse::new(p.n());
        let s = encode_parts(&p, &mut u).unwrap();
        prop_assert_eq!(s.len(), p.num_blocks());
        prop_assert_eq!(u.decode(&s).unwrap(), p);
    }

    #[test]
    fn edges_round_trip(p in partition_strategy(12)) {
        let u = EdgeUniverse::new(p.n());
        let e = encode_edges(&p, &u).unwrap();
        let expected: usize = p.blocks().iter().map(|b| choose2(b.len())).sum();
        prop_assert_eq!(e.len(), expected);
        let x = edges_to_subpartition(&e, &u);
        let big: Vec<Vec<usize>> = p.blocks().iter().filter(|b| b.len() >= 2).cloned().collect();
        prop_assert_eq!(x.blocks(), &big[..]);
        prop_assert!(x.weight() >= x.num_blocks());
    }

    #[test]
    fn extension_count_matches_enumeration_small(
        (k, l, x) in prop_oneof![
            Just((2usize, 4usize)), Just((3, 3)), Just((4, 2)), Just((2, 5)), Just((3, 4)), Just((4, 3))
        ].prop_flat_map(|(k, l)| subpartition_strategy(k, l).prop_map(move |x| (k, l, x)))
    ) {
        let direct = uniform(k, l).iter().filter(|p| extends(p, &x)).count();
        prop_assert_eq!(count_extensions(k, l, &x).unwrap(), BigCount::from(direct));
    }
}

#[test]
fn edge_counts_of_uniform_partitions() {
    for (k, l) in [(2, 3), (3, 3), (4, 2)] {
        let u = EdgeUniverse::new(k * l);
        assert_eq!(u.size(), choose2(k * l));
        for p in uniform(k, l) {
            assert_eq!(BigCount::from(encode_edges(p, &u).unwrap().len()), binomial(k, 2) * BigCount::from(l));
        }
    }
}
