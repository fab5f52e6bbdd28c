use mvbessel_core::{enumerate_partitions, partitions_of, Partition};
use proptest::prelude::*;

fn partition(max_weight: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_weight, 0..=max_len).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in partition(9, 6)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().weight(), l.weight());
    }

    #[test]
    fn complement_is_an_involution(l in partition(6, 4), extra in 0u32..3, n_extra in 0usize..2) {
        let n = l.len() + n_extra;
        let big_n = l.part(1) + extra;
        let hat = l.complement_in_box(big_n, n).unwrap();
        prop_assert_eq!(hat.complement_in_box(big_n, n).unwrap(), l.clone());
        prop_assert_eq!(hat.weight() + l.weight(), big_n * n as u32);
    }

    #[test]
    fn containment_bounds_weight(l in partition(6, 4), m in partition(6, 4)) {
        if l.contains(&m) {
            prop_assert!(m.weight() <= l.weight());
            prop_assert!(l.subpartitions().contains(&m));
        }
    }

    #[test]
    fn shifting_by_a_column(l in partition(5, 3)) {
        let n = 3;
        let s = l.add_column(n).unwrap();
        prop_assert_eq!(s.weight(), l.weight() + n as u32);
        prop_assert_eq!(s.len(), n);
    }
}

#[test]
fn dominance_is_a_partial_order() {
    for w in 0..=8 {
        let ps = partitions_of(w, w as usize);
        let leq = |a: &Partition, b: &Partition| a.dominance_leq(b).unwrap();
        for a in &ps {
            assert!(leq(a, a));
            for b in &ps {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &ps {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "{a} {b} {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn dominance_rejects_unequal_weights() {
    let a = Partition::new(vec![2]).unwrap();
    let b = Partition::new(vec![1]).unwrap();
    assert!(a.dominance_leq(&b).is_err());
}

#[test]
fn enumeration_counts() {
    // p(6) = 11, and partitions of weight <= 4 with at most 2 parts number 9
    assert_eq!(partitions_of(6, 6).len(), 11);
    assert_eq!(enumerate_partitions(4, 2).len(), 9);
    assert!(Partition::new(vec![1, 2]).is_err());
}
