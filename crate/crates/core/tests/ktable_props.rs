//! Periodicity and consistency of the classification groups and maps.

use nhtopo::ktable::{f_i, f_r, intrinsic, k_group, Gap};
use nhtopo::symmetry::SymmetryClassId;
use proptest::prelude::*;

fn class_strategy() -> impl Strategy<Value = SymmetryClassId> {
    let all = SymmetryClassId::all();
    (0..all.len()).prop_map(move |i| all[i])
}

fn period(class: SymmetryClassId) -> i64 {
    if class.family().is_complex() {
        2
    } else {
        8
    }
}

const GAPS: [Gap; 3] = [Gap::P, Gap::Lr, Gap::Li];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn groups_repeat_with_the_bott_period(class in class_strategy(), delta in 0i64..8) {
        let p = period(class);
        for gap in GAPS {
            prop_assert_eq!(k_group(class, gap, delta), k_group(class, gap, delta + p), "{} {}", class, gap);
        }
        prop_assert_eq!(f_r(class, delta).unwrap(), f_r(class, delta + p).unwrap());
        prop_assert_eq!(f_i(class, delta).unwrap(), f_i(class, delta + p).unwrap());
        prop_assert_eq!(intrinsic(class, delta).unwrap(), intrinsic(class, delta + p).unwrap());
    }

    #[test]
    fn dimension_shifts_the_class(class in class_strategy(), delta in 0i64..8) {
        for gap in [Gap::P, Gap::Lr] {
            prop_assert!(k_group(class, gap, delta).is_isomorphic(&k_group(class.shifted(delta), gap, 0)), "{} {}", class, gap);
        }
        // The i-map does not commute with the shift; the imaginary gap follows the partner.
        let li = k_group(class.i_map().shifted(delta), Gap::Lr, 0);
        prop_assert!(k_group(class, Gap::Li, delta).is_isomorphic(&li), "{}", class);
    }

    #[test]
    fn multiplying_by_i_swaps_the_line_gaps(class in class_strategy(), delta in 0i64..8) {
        let partner = class.i_map();
        prop_assert_eq!(partner.i_map(), class);
        prop_assert!(k_group(class, Gap::Li, delta).is_isomorphic(&k_group(partner, Gap::Lr, delta)));
        prop_assert!(k_group(class, Gap::Lr, delta).is_isomorphic(&k_group(partner, Gap::Li, delta)));
        prop_assert!(k_group(class, Gap::P, delta).is_isomorphic(&k_group(partner, Gap::P, delta)));
    }

    #[test]
    fn maps_land_in_the_point_gap_group(class in class_strategy(), delta in 0i64..8) {
        let kp = k_group(class, Gap::P, delta);
        let fr = f_r(class, delta).unwrap();
        let fi = f_i(class, delta).unwrap();
        prop_assert_eq!(fr.domain(), &k_group(class, Gap::Lr, delta));
        prop_assert_eq!(fi.domain(), &k_group(class, Gap::Li, delta));
        prop_assert_eq!(fr.codomain(), &kp);
        prop_assert_eq!(fi.codomain(), &kp);
        let q = intrinsic(class, delta).unwrap();
        prop_assert!(q.rank() <= kp.rank());
        prop_assert!(q.free_rank() <= kp.free_rank());
    }
}
