use partspread::bitset::ElementSet;
use partspread::setfam::SetFamily;
use proptest::prelude::*;

const N: usize = 8;

fn set_strategy() -> impl Strategy<Value = ElementSet> {
    (0u32..1 << N).prop_map(|m| ElementSet::from_indices((0..N).filter(|b| m >> b & 1 == 1)))
}

fn family_strategy() -> impl Strategy<Value = SetFamily> {
    proptest::collection::vec(set_strategy(), 0..20).prop_map(|ms| SetFamily::new(N, ms).unwrap())
}

proptest! {
    #[test]
    fn restriction_laws(f in family_strategy(), x in set_strategy(), y in set_strategy()) {
        let r = f.restrict(&x).unwrap();
        prop_assert!(r.len() <= f.star(&x).unwrap().len());
        prop_assert_eq!(r.len(), f.count_containing(&x));
        let y = y.difference(&x);
        prop_assert_eq!(r.restrict(&y).unwrap(), f.restrict(&x.union(&y)).unwrap());
    }

    #[test]
    fn star_and_avoid_split_on_an_element(f in family_strategy(), e in 0..N) {
        let x = ElementSet::singleton(e);
        prop_assert_eq!(f.len(), f.star(&x).unwrap().len() + f.avoid(&x).unwrap().len());
    }

    #[test]
    fn avoid_union_bound(f in family_strategy(), x in set_strategy()) {
        let lost: usize = x.iter().map(|e| f.star(&ElementSet::singleton(e)).unwrap().len()).sum();
        prop_assert!(f.avoid(&x).unwrap().len() + lost >= f.len());
    }

    #[test]
    fn average_size_at_most_max(f in family_strategy()) {
        if !f.is_empty() {
            prop_assert!(f.avg_size() <= partspread::scalar::ratio_from_int(f.max_size() as u64));
        }
    }

    #[test]
    fn covering_number_is_monotone(f in family_strategy(), extra in set_strategy()) {
        let f = SetFamily::new(N, f.members().iter().filter(|m| !m.is_empty()).cloned()).unwrap();
        prop_assume!(!f.is_empty() && !extra.is_empty());
        let (tau, cover) = f.covering_number().unwrap();
        prop_assert!(f.members().iter().all(|m| !m.is_disjoint(&cover)));
        prop_assert_eq!(cover.len(), tau);
        let mut ms = f.members().to_vec();
        ms.push(extra);
        let bigger = SetFamily::new(N, ms).unwrap();
        prop_assert!(bigger.covering_number().unwrap().0 >= tau);
    }

    #[test]
    fn text_round_trip(f in family_strategy()) {
        prop_assert_eq!(SetFamily::parse(&f.to_text()).unwrap(), f);
    }
}
