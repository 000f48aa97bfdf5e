use partspread::count::u_kl;
use partspread::extremal::{
    canonical_family, check_conjecture_instance, max_compatible_family, shuffled_max_sizes,
    CanonicalSpec, Comparison, Predicate,
};
use partspread::guards::Guards;
use partspread::partition::{enumerate_into_blocks, Profile};
use partspread::BigCount;

fn specs() -> Vec<CanonicalSpec> {
    let mut v = vec![
        CanonicalSpec::Bell { n: 5, t: 1 },
        CanonicalSpec::Bell { n: 6, t: 2 },
        CanonicalSpec::Blocks { n: 6, l: 3, t: 1 },
        CanonicalSpec::Blocks { n: 7, l: 4, t: 2 },
        CanonicalSpec::Profiled {
            profile: Profile::new(vec![2, 2, 2]).unwrap(),
            anchors: vec![vec![1, 2]],
        },
        CanonicalSpec::Profiled {
            profile: Profile::new(vec![3, 2, 1, 1]).unwrap(),
            anchors: vec![vec![1], vec![2, 3]],
        },
    ];
    for (k, l, t) in [(2, 3, 2), (3, 2, 2), (3, 3, 2), (3, 3, 3), (2, 4, 2)] {
        v.push(CanonicalSpec::partial_kl(k, l, (1..=t).collect()).unwrap());
    }
    v
}

#[test]
fn canonical_families_are_cliques_and_oracle_dominates() {
    let g = Guards::default();
    for spec in specs() {
        let (fam, size) = canonical_family(&spec).unwrap();
        assert_eq!(BigCount::from(fam.len()), size, "{spec}");
        assert_eq!(spec.closed_form_size().unwrap(), size);
        let pred = spec.predicate();
        assert!(pred.is_clique(&fam), "{spec}");
        let universe = spec.universe(&g).unwrap();
        assert!(fam.iter().all(|p| spec.contains(p) && universe.contains(p)));
        let oracle = max_compatible_family(&universe, pred, &g).unwrap();
        assert!(pred.is_clique(&oracle.witness));
        assert!(oracle.max_size >= fam.len(), "{spec}");
        let sizes = shuffled_max_sizes(&universe, pred, &[1, 2, 3], &g).unwrap();
        assert!(sizes.iter().all(|&s| s == oracle.max_size), "{spec}: {sizes:?}");
    }
}

#[test]
fn almost_full_block_intersection_is_trivial() {
    let g = Guards::default();
    for n in 3..=7 {
        for l in 2..=n.min(5) {
            let universe = enumerate_into_blocks(n, l).unwrap();
            let r = max_compatible_family(&universe, Predicate::TIntersect(l - 1), &g).unwrap();
            assert_eq!(r.max_size, 1, "n={n} l={l}");
        }
    }
}

#[test]
fn conjecture_instances_small() {
    let g = Guards::default();
    for (k, l, t, expected) in [(2, 2, 2, 1u32), (2, 3, 2, 3), (2, 4, 2, 15)] {
        let out = check_conjecture_instance(k, l, t, &g).unwrap();
        assert_eq!(out.oracle, expected as usize, "k={k} l={l} t={t}");
        assert_eq!(out.comparison, Comparison::Equal);
        assert_eq!(out.canonical, BigCount::from(expected));
    }
    let all = check_conjecture_instance(2, 3, 1, &g).unwrap();
    assert_eq!(BigCount::from(all.oracle), u_kl(2, 3));
    assert_eq!(all.comparison, Comparison::Skipped);
}
