//! Property tests: spec round-trip, ring and grading invariants, witnesses.

use grlab_core::classify::{check_witness, graded_nr_clean_witness, witness_for, Property};
use grlab_core::constructions::{group_ring_graded, matrix_graded, triangular_graded, Shape};
use grlab_core::ring::validate::{validate_ring, Validation};
use grlab_core::spec::{
    parse_syntax, render_statements, Decl, GradedExpr, GroupExpr, Ident, Key, Module, QuotientBy, RingExpr, Statement,
};
use grlab_core::{Elem, FiniteGroup, FiniteRing, GradedRing, GroupElem};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = Ident> {
    (0u32..40).prop_map(|i| Ident::new(&format!("R{i}")))
}

fn key() -> impl Strategy<Value = Key> {
    prop_oneof![(0u32..6).prop_map(Key::Index), (0u32..4).prop_map(|i| Key::Label(format!("g{i}")))]
}

fn indices() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..300, 0..4)
}

fn graded_expr() -> impl Strategy<Value = GradedExpr> {
    let leaf = prop_oneof![
        name().prop_map(GradedExpr::Name),
        (name(), name()).prop_map(|(ring, group)| GradedExpr::Trivial { ring, group }),
        (name(), name(), prop::collection::vec((key(), indices()), 1..3))
            .prop_map(|(ring, group, components)| GradedExpr::Explicit { ring, group, components }),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        let boxed = inner.clone().prop_map(Box::new);
        prop_oneof![
            (boxed.clone(), 1usize..4, prop::collection::vec(key(), 1..4), any::<bool>()).prop_map(
                |(inner, n, sigma, full)| GradedExpr::Matrix {
                    inner,
                    n,
                    sigma,
                    shape: if full { Shape::Full } else { Shape::Upper }
                }
            ),
            boxed.clone().prop_map(GradedExpr::GroupRing),
            (boxed.clone(), prop::collection::vec(key(), 1..3)).prop_map(|(i, h)| GradedExpr::SubgroupRing(i, h)),
            (boxed.clone(), prop::collection::vec(key(), 1..3)).prop_map(|(i, h)| GradedExpr::Regrade(i, h)),
            (boxed.clone(), prop_oneof![Just(Module::Regular), indices().prop_map(Module::Quotient)])
                .prop_map(|(i, m)| GradedExpr::TrivExt(i, m)),
            (boxed.clone(), 0u32..50).prop_map(|(i, f)| GradedExpr::Corner(i, f)),
            prop::collection::vec(inner, 1..3).prop_map(GradedExpr::Product),
            (boxed, prop_oneof![indices().prop_map(QuotientBy::Generators), name().prop_map(QuotientBy::Ideal)])
                .prop_map(|(i, by)| GradedExpr::Quotient(i, by)),
        ]
    })
}

fn statement() -> impl Strategy<Value = Statement> {
    let decl = prop_oneof![
        (1usize..12).prop_map(|n| Decl::Group(GroupExpr::Cyclic(n))),
        (1usize..6).prop_map(|n| Decl::Group(GroupExpr::Dihedral(n))),
        (name(), name()).prop_map(|(a, b)| Decl::Group(GroupExpr::Product(a, b))),
        (name(), prop::collection::vec(key(), 1..3)).prop_map(|(g, h)| Decl::Group(GroupExpr::Quotient(g, h))),
        (2u64..100).prop_map(|n| Decl::Ring(RingExpr::Modular(n))),
        prop::collection::vec(name(), 1..4).prop_map(|v| Decl::Ring(RingExpr::Product(v))),
        graded_expr().prop_map(Decl::Graded),
        (name(), indices()).prop_map(|(graded, generators)| Decl::Ideal { graded, generators }),
    ];
    (name(), decl, any::<bool>()).prop_map(|(name, decl, bare)| match decl {
        // bare statements are named after their ring
        Decl::Graded(e @ (GradedExpr::Trivial { .. } | GradedExpr::Explicit { .. })) if bare => {
            let (GradedExpr::Trivial { ring, .. } | GradedExpr::Explicit { ring, .. }) = &e else { unreachable!() };
            Statement { name: ring.clone(), decl: Decl::Graded(e), bare: true }
        }
        decl => Statement { name, decl, bare: false },
    })
}

proptest! {
    #[test]
    fn spec_render_parse_round_trip(stmts in prop::collection::vec(statement(), 0..8)) {
        let text = render_statements(&stmts);
        let parsed = parse_syntax(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &stmts);
        prop_assert_eq!(render_statements(&parsed), text);
    }
}

fn z(n: u64) -> FiniteRing {
    FiniteRing::modular(n).unwrap()
}

/// A small graded ring: a σ-graded matrix or triangular ring or a group ring
/// over `Z_n` graded by a cyclic group.
fn small_graded() -> impl Strategy<Value = GradedRing> {
    (2u64..=5, 1usize..=3, 0usize..3, 0usize..9).prop_map(|(n, k, kind, s)| {
        let base = GradedRing::trivial(z(n), FiniteGroup::cyclic(k).unwrap());
        let sigma = [GroupElem((s % k) as u32), GroupElem(((s / 3) % k) as u32)];
        match kind {
            0 if n <= 3 => matrix_graded(&base, 2, &sigma).unwrap(),
            1 | 0 => triangular_graded(&base, 2, &sigma).unwrap(),
            _ => group_ring_graded(&base, base.group()).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn constructed_rings_satisfy_ring_axioms(r in small_graded()) {
        prop_assert_eq!(validate_ring(r.ring(), 4096).unwrap(), Validation::Complete);
    }

    #[test]
    fn decomposition_is_additive(r in small_graded(), a in any::<u32>(), b in any::<u32>()) {
        let ring = r.ring();
        let (x, y) = (Elem(a % r.order() as u32), Elem(b % r.order() as u32));
        let (dx, dy, dxy) = (r.decompose(x), r.decompose(y), r.decompose(ring.add(x, y)));
        for g in r.group().elements() {
            let i = g.0 as usize;
            prop_assert_eq!(dxy[i], ring.add(dx[i], dy[i]));
            prop_assert!(r.component(g).contains(dx[i]));
        }
    }

    #[test]
    fn witnesses_satisfy_invariants(r in small_graded(), a in any::<u32>()) {
        let h = r.homogeneous_elements().to_vec();
        let x = h[a as usize % h.len()];
        if let Some(w) = graded_nr_clean_witness(&r, x).unwrap() {
            prop_assert_eq!(check_witness(&r, &w), Ok(()));
        }
    }

    #[test]
    fn unit_regular_decompositions_are_regular_decompositions(r in small_graded(), a in any::<u32>()) {
        let h = r.homogeneous_elements().to_vec();
        let x = h[a as usize % h.len()];
        let g = r.degree(x).unwrap();
        if witness_for(&r, Property::UNilClean, g, x).is_some() {
            prop_assert!(witness_for(&r, Property::NrClean, g, x).is_some());
        }
        if witness_for(&r, Property::NilGood, g, x).is_some() {
            prop_assert!(witness_for(&r, Property::UNilClean, g, x).is_some());
        }
    }
}
