mod common;

use std::cmp::Ordering;

use common::model_set;
use merge_forge::logic::Interpretation;
use merge_forge::metric::{aggregate, check_aggregation_axioms, check_distance_axioms, dist_to_models, distance, Aggregator, Distance};
use proptest::prelude::*;

fn w(i: u32) -> Interpretation {
    Interpretation::new(i, 3)
}

#[test]
fn triangle_inequality_is_exhaustive_at_three_vars() {
    for d in Distance::ALL {
        for n in 1..=3 {
            assert!(check_distance_axioms(&d, n).unwrap(), "{}", d.id());
        }
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let ab = distance(&d, w(a), w(b)).unwrap();
                    assert!(ab <= distance(&d, w(a), w(c)).unwrap() + distance(&d, w(c), w(b)).unwrap());
                }
            }
        }
    }
}

#[test]
fn aggregation_axioms_hold() {
    for f in Aggregator::ALL {
        check_aggregation_axioms(&f, 3, 3).unwrap();
    }
}

#[test]
fn gmax_keeps_zeros() {
    assert_eq!(aggregate(&Aggregator::GMax, &[0, 1, 0]).unwrap().to_string(), "(1, 0, 0)");
    assert!(aggregate(&Aggregator::Sum, &[]).is_err());
}

#[test]
fn width_mismatch_is_an_error() {
    assert!(distance(&Distance::Hamming, w(0), Interpretation::new(0, 2)).is_err());
}

proptest! {
    #[test]
    fn distance_to_a_base_is_its_closest_model(i in 0u32..8, k in model_set(3)) {
        for d in Distance::ALL {
            let dk = dist_to_models(&d, w(i), &k);
            prop_assert!(k.iter().all(|m| dk <= distance(&d, w(i), m).unwrap()));
            prop_assert!(k.iter().any(|m| dk == distance(&d, w(i), m).unwrap()));
        }
    }

    #[test]
    fn aggregation_is_anonymous(xs in prop::collection::vec(0u32..5, 1..5), r in 0usize..5) {
        let mut ys = xs.clone();
        ys.rotate_left(r % xs.len());
        ys.reverse();
        for f in Aggregator::ALL {
            prop_assert_eq!(aggregate(&f, &xs).unwrap(), aggregate(&f, &ys).unwrap());
        }
    }

    #[test]
    fn compare_is_a_total_order(
        a in prop::collection::vec(0u32..4, 3),
        b in prop::collection::vec(0u32..4, 3),
        c in prop::collection::vec(0u32..4, 3),
    ) {
        for f in Aggregator::ALL {
            let (x, y, z) = (aggregate(&f, &a).unwrap(), aggregate(&f, &b).unwrap(), aggregate(&f, &c).unwrap());
            let xy = x.compare(&y).unwrap();
            prop_assert_eq!(xy, y.compare(&x).unwrap().reverse());
            prop_assert_eq!(xy == Ordering::Equal, x == y);
            if xy != Ordering::Greater && y.compare(&z).unwrap() != Ordering::Greater {
                prop_assert_ne!(x.compare(&z).unwrap(), Ordering::Greater);
            }
        }
    }

    #[test]
    fn raising_an_input_never_lowers_the_aggregate(
        xs in prop::collection::vec(0u32..5, 1..5),
        at in 0usize..5,
        by in 0u32..4,
    ) {
        let mut ys = xs.clone();
        let i = at % xs.len();
        ys[i] += by;
        for f in Aggregator::ALL {
            let o = aggregate(&f, &xs).unwrap().compare(&aggregate(&f, &ys).unwrap()).unwrap();
            prop_assert_ne!(o, Ordering::Greater);
        }
    }
}
