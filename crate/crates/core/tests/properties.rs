use std::collections::BTreeMap;

use blockwise_core::eulerian::{gamma_expand, two_sided_poly, BivarPoly, GammaExpansion};
use blockwise_core::polygon::{
    dissection_to_poset, enumerate_valid_dissections, poset_to_dissection, DISSECTION_CAP,
};
use blockwise_core::{
    build_interval_poset, decomp_tree, is_blockwise_simple, DecompTree, NodeKind, Permutation,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn perm(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    n.prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn gammas(d: usize) -> impl Strategy<Value = GammaExpansion> {
    let keys: Vec<(usize, usize)> = (0..=d / 2)
        .flat_map(|i| (0..=d - 2 * i).map(move |j| (i, j)))
        .collect();
    proptest::collection::vec(-20i64..20, keys.len()).prop_map(move |cs| GammaExpansion {
        darga: d,
        gammas: keys
            .iter()
            .zip(cs)
            .filter(|(_, c)| *c != 0)
            .map(|(&k, c)| (k, BigInt::from(c)))
            .collect::<BTreeMap<_, _>>(),
    })
}

proptest! {
    #[test]
    fn gamma_expansion_inverts_reconstruction(g in (0usize..9).prop_flat_map(gammas)) {
        let poly: BivarPoly = g.reconstruct();
        prop_assert_eq!(gamma_expand(&poly, g.darga).unwrap(), g);
    }

    #[test]
    fn inverting_transposes_the_tally(ps in proptest::collection::vec(perm(6..=6), 1..30)) {
        let inv: Vec<Permutation> = ps.iter().map(Permutation::inverse).collect();
        let a = two_sided_poly(&ps).unwrap();
        let swapped = BivarPoly::from_terms(a.terms().iter().map(|(&(i, j), c)| ((j, i), c.clone())));
        prop_assert_eq!(two_sided_poly(&inv).unwrap(), swapped);
    }

    #[test]
    fn blockwise_simple_iff_every_node_simple(p in perm(1..=13)) {
        let ok = decomp_tree(&p).internal_nodes().iter().all(|t| match t {
            DecompTree::Node { kind, skeleton, .. } => *kind == NodeKind::Simple && skeleton.len() >= 4,
            DecompTree::Leaf { .. } => true,
        });
        prop_assert_eq!(is_blockwise_simple(&p), ok);
    }

    #[test]
    fn claw_of_claws_posets_reach_the_polygon(p in perm(4..=11)) {
        if is_blockwise_simple(&p) {
            let q = build_interval_poset(&p);
            let d = poset_to_dissection(&q).unwrap();
            prop_assert!(d.is_valid());
            prop_assert_eq!(dissection_to_poset(&d).unwrap(), q);
        }
    }
}

#[test]
fn every_dissection_returns_from_its_poset() {
    for m in 5..=DISSECTION_CAP {
        for d in enumerate_valid_dissections(m, DISSECTION_CAP).unwrap() {
            let q = dissection_to_poset(&d).unwrap();
            assert!(q.is_claw_of_claws());
            assert_eq!(poset_to_dissection(&q).unwrap(), d);
        }
    }
}
