use proptest::prelude::*;

use vaisman_core::engine::{bott_chern_dims, de_rham_dims, dolbeault_dims};
use vaisman_core::formulas::{primitive_from_bc, primitive_from_dolbeault};
use vaisman_core::lefschetz::lefschetz_data;
use vaisman_core::model::{build_model, verify_cbba};
use vaisman_core::{assemble_report, build_ring, ManifoldSpec, Transversal};

fn leaf() -> impl Strategy<Value = Transversal> {
    prop_oneof![(0usize..4).prop_map(Transversal::curve), (1usize..4).prop_map(Transversal::projective)]
}

fn leaf_dim(t: &Transversal) -> usize {
    match t {
        Transversal::Curve { .. } => 1,
        Transversal::ProjectiveSpace { dim } => *dim,
        _ => unreachable!(),
    }
}

/// Products of up to three leaves with transverse dimension at most 3.
fn transversal() -> impl Strategy<Value = Transversal> {
    prop::collection::vec(leaf(), 1..4)
        .prop_filter("transverse dimension ≤ 3", |v| v.iter().map(leaf_dim).sum::<usize>() <= 3)
        .prop_map(|v| if v.len() == 1 { v.into_iter().next().unwrap() } else { Transversal::product(v) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn model_matches_closed_forms(t in transversal()) {
        let spec = ManifoldSpec::new("random", t);
        let r = assemble_report(&spec).unwrap();
        prop_assert!(r.flags.cross_checks_passed, "{:?}", r.first_mismatch());
        prop_assert!(r.flags.froelicher_equality);
        prop_assert!(r.flags.serre_duality);
        prop_assert!(r.flags.printed_table_discrepancies.iter().all(|d| d.p + d.q > r.n));
    }

    #[test]
    fn duality_and_symmetry(t in transversal()) {
        let ring = build_ring(&ManifoldSpec::new("random", t)).unwrap();
        let a = build_model(&ring).unwrap();
        prop_assert!(verify_cbba(&a).is_empty());
        let n = a.n() as isize;
        let h = dolbeault_dims(&a);
        let bc = bott_chern_dims(&a);
        let b = de_rham_dims(&a);
        for k in 0..=2 * n as usize {
            prop_assert_eq!(b[k], b[2 * n as usize - k]);
        }
        for p in 0..=n {
            for q in 0..=n {
                prop_assert_eq!(bc.at(p, q), bc.at(q, p));
                prop_assert_eq!(h.at(p, q), h.at(n - p, n - q));
            }
        }
        prop_assert_eq!(h.at(0, 1), h.at(1, 0) + 1);
        prop_assert_eq!(h.at(n, n - 1), h.at(n - 1, n) + 1);
    }

    #[test]
    fn primitive_round_trips(t in transversal()) {
        let ring = build_ring(&ManifoldSpec::new("random", t)).unwrap();
        let ld = lefschetz_data(&ring);
        let a = build_model(&ring).unwrap();
        let n = a.n();
        let from_h = primitive_from_dolbeault(&dolbeault_dims(&a), n);
        let from_bc = primitive_from_bc(&bott_chern_dims(&a), n);
        for (bd, v) in from_h.iter().chain(&from_bc) {
            prop_assert_eq!(*v, ld.h0(bd.p as isize, bd.q as isize) as i64);
        }
    }

    #[test]
    fn deltas(t in transversal()) {
        let r = assemble_report(&ManifoldSpec::new("random", t)).unwrap();
        let n = r.n;
        prop_assert!(r.delta.iter().all(|&d| d >= 0));
        prop_assert_eq!(r.delta[0], 0);
        prop_assert_eq!(r.delta[1], 0);
        prop_assert_eq!(r.delta[2 * n - 1], 0);
        prop_assert_eq!(r.delta[2 * n], 0);
        let total: i64 = r.delta.iter().sum();
        let n_i = n as isize;
        let expected = 2 * (r.lefschetz.b_basic(n_i - 3) + r.lefschetz.b_basic(n_i - 2)) as i64;
        prop_assert_eq!(total, expected);
    }
}
