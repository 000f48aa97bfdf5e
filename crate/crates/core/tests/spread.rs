use partspread::approx::{
    is_minimal_t_intersecting, minimize_t_intersecting, spread_approximate, verify_approx,
};
use partspread::bitset::ElementSet;
use partspread::guards::Guards;
use partspread::report::Verdict;
use partspread::setfam::SetFamily;
use partspread::spread::{
    find_max_violating, find_sunflower, is_r_spread, spread_factor, weak_spread,
};
use partspread::Ratio;
use proptest::prelude::*;
use std::cmp::Ordering;

const N: usize = 10;

fn set_strategy(max: usize) -> impl Strategy<Value = ElementSet> {
    proptest::collection::btree_set(0..N, 1..=max).prop_map(ElementSet::from_indices)
}

fn family_strategy() -> impl Strategy<Value = SetFamily> {
    proptest::collection::vec(set_strategy(5), 1..25).prop_map(|ms| SetFamily::new(N, ms).unwrap())
}

/// Rationals in `(1, 6]`.
fn r_strategy() -> impl Strategy<Value = Ratio> {
    (1i64..=40, 1i64..=8).prop_map(|(a, b)| Ratio::new((b + a).into(), b.into()))
        .prop_filter("r <= 6", |r| *r <= Ratio::from_integer(6.into()))
}

/// Families whose members all contain `{0, .., t-1}`.
fn t_intersecting_strategy() -> impl Strategy<Value = (usize, SetFamily)> {
    (1usize..=2).prop_flat_map(|t| {
        proptest::collection::vec(proptest::collection::btree_set(t..N, 0..4), 1..8).prop_map(move |extras| {
            let ms = extras.into_iter().map(|e| ElementSet::from_indices((0..t).chain(e)));
            (t, SetFamily::new(N, ms).unwrap())
        })
    })
}

fn brute_minimal(s: &SetFamily, t: usize) -> bool {
    s.members().iter().all(|m| {
        let elems = m.to_vec();
        (0u32..(1 << elems.len()) - 1).all(|mask| {
            let x = ElementSet::from_indices((0..elems.len()).filter(|b| mask >> b & 1 == 1).map(|b| elems[b]));
            s.members().iter().any(|o| x.intersection_len(o) < t)
        })
    })
}

proptest! {
    #[test]
    fn maximal_violator_leaves_spread_restriction(f in family_strategy(), r in r_strategy()) {
        let x = find_max_violating(&f, &r).unwrap();
        let g = f.restrict(&x).unwrap();
        prop_assert!(!g.is_empty());
        prop_assert!(is_r_spread(&g, &r).unwrap().0);
        if let Some(rs) = spread_factor(&g).unwrap().r_star {
            prop_assert!(rs.admits(&r), "r*={} r={}", rs, r);
        }
    }

    #[test]
    fn weak_spread_at_zero_is_spread_factor(f in family_strategy()) {
        let w = weak_spread(&f, 0).unwrap();
        let s = spread_factor(&f).unwrap();
        match (w.r, s.r_star) {
            (Some(a), Some(b)) => prop_assert_eq!(a.cmp(&b), Ordering::Equal),
            (a, b) => prop_assert_eq!(a.is_none(), b.is_none()),
        }
    }

    #[test]
    fn spread_factor_is_certified_by_full_scan(f in family_strategy()) {
        if let Some(rs) = spread_factor(&f).unwrap().r_star {
            // every nonempty subset of a member passes rs^|X| |F(X)| <= |F|
            for m in f.members() {
                for x in m.subsets().filter(|x| !x.is_empty()) {
                    let c = f.count_containing(&x);
                    let lhs = num_traits::pow(rs.base.clone(), x.len()) * Ratio::from_integer((c as i64).pow(rs.root as u32).into());
                    let rhs = Ratio::from_integer((f.len() as i64).pow(rs.root as u32).into());
                    prop_assert!(lhs <= rhs);
                }
            }
        }
    }

    #[test]
    fn peeling_conserves_and_covers(f in family_strategy(), extra in family_strategy(), r in r_strategy(), q in 1usize..4) {
        let mut all = f.members().to_vec();
        all.extend(extra.members().iter().cloned());
        let a = SetFamily::new(N, all).unwrap();
        let res = spread_approximate(&f, &r, q).unwrap();
        let peeled: usize = res.core_families.iter().map(SetFamily::len).sum();
        prop_assert_eq!(peeled + res.remainder.len(), f.len());
        prop_assert!(f.without(&res.remainder).is_subfamily_of(&a.stars(&res.cores).unwrap()));
        for (s, fb) in res.cores.iter().zip(&res.core_families) {
            prop_assert!(s.len() <= q);
            prop_assert!(is_r_spread(&fb.restrict(s).unwrap(), &r).unwrap().0);
        }
        let r0 = &r + Ratio::from_integer(1.into());
        let (rep, gates) = verify_approx(&res, &f, &a, &r, &r0, q, 1, &Guards::default()).unwrap();
        prop_assert!(!gates.all());
        prop_assert!(rep.count(Verdict::Fail) == 0, "{}", rep.render_records());
        for name in ["conservation", "coverage", "core-spread"] {
            prop_assert!(rep.records.iter().filter(|x| x.name == name).all(|x| x.verdict == Verdict::Pass));
        }
    }

    #[test]
    fn minimization_is_minimal_and_covering((t, s) in t_intersecting_strategy()) {
        let p = s.max_size();
        let m = minimize_t_intersecting(&s, t, p).unwrap();
        prop_assert!(m.is_t_intersecting(t));
        prop_assert!(m.max_size() <= p);
        prop_assert!(brute_minimal(&m, t));
        prop_assert!(is_minimal_t_intersecting(&m, t));
        for a in s.members() {
            prop_assert!(m.members().iter().any(|x| x.is_subset(a)));
        }
    }

    #[test]
    fn nine_pairs_hold_a_three_petal_sunflower(pairs in proptest::collection::btree_set((0usize..12, 0usize..12), 9..20)) {
        let ms: Vec<ElementSet> = pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| ElementSet::from_indices([a, b])).collect();
        let f = SetFamily::new(12, ms).unwrap();
        prop_assume!(f.len() > 8);
        let sf = find_sunflower(&f, 3).unwrap().expect("more than 2! 2^2 pairs");
        prop_assert_eq!(sf.petals.len(), 3);
        for (i, p) in sf.petals.iter().enumerate() {
            prop_assert!(f.contains(p));
            for q in &sf.petals[i + 1..] {
                prop_assert_eq!(&p.intersection(q), &sf.core);
            }
        }
    }
}
