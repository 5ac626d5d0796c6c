use proptest::prelude::*;
use tmoebius::canonical::canonical_form;
use tmoebius::diagram::{BoundedEdge, End, FloorDiagram, HomologyClass, SurfaceKind};
use tmoebius::enumerate::enumerate_diagrams;
use tmoebius::half_int::HalfInt;
use tmoebius::multiplicity::{invariant, Convention};
use tmoebius::partition::Partition;

fn surface_strategy() -> impl Strategy<Value = SurfaceKind> {
    prop_oneof![Just(SurfaceKind::M0), Just(SurfaceKind::M1)]
}

/// A class and profile satisfying both the tangency-sum and the
/// parity constraint, so enumeration never rejects the request.
fn request_strategy() -> impl Strategy<Value = (SurfaceKind, usize, HomologyClass, Partition)> {
    (
        surface_strategy(),
        1usize..=2,
        1i64..=4,
        proptest::collection::vec(1u32..=2, 0..=3),
    )
        .prop_map(|(surface, genus, two_a, mut parts)| {
            let norm: i64 = parts.iter().map(|&p| p as i64).sum();
            if (norm - surface.delta() * two_a) % 2 != 0 {
                parts.push(1);
            }
            let profile = Partition::new(parts).expect("positive parts");
            let class = HomologyClass::new(
                HalfInt::from_doubled(two_a),
                HalfInt::from_doubled(profile.norm() as i64),
            );
            (surface, genus, class, profile)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumerated_diagrams_validate_and_match_the_request(
        (surface, genus, class, profile) in request_strategy()
    ) {
        let diagrams = enumerate_diagrams(surface, genus, class, &profile)
            .expect("request is consistent");
        for d in &diagrams {
            prop_assert!(d.validate(surface).is_ok());
            prop_assert_eq!(d.genus(), genus);
            prop_assert_eq!(d.homology_class(), class);
            prop_assert_eq!(d.tangency_profile(), profile.clone());
        }
    }

    #[test]
    fn relabeling_does_not_change_the_canonical_form(
        pick in 0usize..13,
        seed in 0u64..10_000,
        edge_shift in 0usize..4,
        end_shift in 0usize..4,
    ) {
        let class = HomologyClass::new(HalfInt::from_doubled(4), HalfInt::from_doubled(2));
        let profile: Partition = "1,1".parse().expect("profile");
        let diagrams = enumerate_diagrams(SurfaceKind::M1, 2, class, &profile)
            .expect("request is consistent");
        let d = &diagrams[pick % diagrams.len()];

        let n = d.vertices().len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed.wrapping_add(1);
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }

        let mut vertices = d.vertices().to_vec();
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = d.vertices()[old].clone();
        }
        let mut edges: Vec<BoundedEdge> = d
            .edges()
            .iter()
            .map(|e| BoundedEdge { tail: perm[e.tail], head: perm[e.head], weight: e.weight })
            .collect();
        if !edges.is_empty() {
            let shift = edge_shift % edges.len();
            edges.rotate_left(shift);
        }
        let mut ends: Vec<End> = d
            .ends()
            .iter()
            .map(|e| End { vertex: perm[e.vertex], weight: e.weight })
            .collect();
        if !ends.is_empty() {
            let shift = end_shift % ends.len();
            ends.rotate_left(shift);
        }

        let relabeled = FloorDiagram::new(vertices, edges, ends).expect("still valid");
        prop_assert_eq!(canonical_form(&relabeled), canonical_form(d));
    }

    #[test]
    fn refined_counts_specialize_and_are_palindromic(
        (surface, genus, class, profile) in request_strategy(),
        split_mask in 0u32..8,
    ) {
        let mut fixed_parts = Vec::new();
        let mut free_parts = Vec::new();
        for (i, &part) in profile.parts().iter().enumerate() {
            if split_mask & (1 << (i % 3)) != 0 {
                fixed_parts.push(part);
            } else {
                free_parts.push(part);
            }
        }
        let fixed = Partition::new(fixed_parts).expect("positive parts");
        let free = Partition::new(free_parts).expect("positive parts");
        let inv = invariant(surface, genus, class.a, &fixed, &free, Convention::ValMinusOne)
            .expect("request is consistent");
        prop_assert!(inv.refined.is_palindromic());
        prop_assert_eq!(inv.refined.eval_at_one(), inv.classical);
    }

    #[test]
    fn half_integer_text_roundtrips(doubled in -200i64..200) {
        let h = HalfInt::from_doubled(doubled);
        let back: HalfInt = h.to_string().parse().expect("parses");
        prop_assert_eq!(back, h);
        prop_assert_eq!(h.doubled(), doubled);
    }
}
