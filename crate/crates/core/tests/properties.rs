use std::sync::Arc;

use framing_core::fixtures::{random_form, random_general_diagram, random_space};
use framing_core::heegaard::{random_diagram_with, scramble, standard_orientable};
use framing_core::mapping_class::{pullback, twist_functional, Twist, TwistWord};
use framing_core::oracle::{brute_force_twists, eval_by_law, exhaustive_form_check, transvect};
use framing_core::rng::Lcg;
use framing_core::solver::{
    certificate_word, reglue, solve_twists, transcript_for_word, verify_certificate,
};
use framing_core::{BitVector, HValue, InnerSpace, Policy, SolveOutcome};
use proptest::prelude::*;

fn isotropic_nonzero(rng: &mut Lcg, space: &InnerSpace) -> BitVector {
    loop {
        let x = rng.nonzero_vector(space.dimension());
        if !space.intersection(&x, &x).unwrap() {
            return x;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_forms_satisfy_the_refinement_law(seed: u64, d in 1usize..=8, alt: bool) {
        let mut rng = Lcg::new(seed);
        let d = if alt { 2 * d.div_ceil(2) } else { d };
        let space = Arc::new(random_space(&mut rng, d, alt));
        let g = random_form(&mut rng, space);
        prop_assert!(g.validate().passed());
        prop_assert!(exhaustive_form_check(&g).unwrap().passed());
    }

    #[test]
    fn closed_form_matches_sequential_law(seed: u64, d in 1usize..=40) {
        let mut rng = Lcg::new(seed);
        let space = Arc::new(random_space(&mut rng, d, false));
        let g = random_form(&mut rng, space);
        for _ in 0..16 {
            let x = rng.vector(d);
            prop_assert_eq!(g.eval(&x).unwrap(), eval_by_law(&g, &x));
        }
    }

    #[test]
    fn twists_are_involutions_preserving_the_pairing(seed: u64, d in 2usize..=48) {
        let mut rng = Lcg::new(seed);
        let space = Arc::new(random_space(&mut rng, d, false));
        let a = isotropic_nonzero(&mut rng, &space);
        let t = Twist::new(space.clone(), a.clone()).unwrap();
        for _ in 0..8 {
            let x = rng.vector(d);
            let y = rng.vector(d);
            let tx = t.apply(&x).unwrap();
            prop_assert_eq!(&tx, &transvect(&space, &x, &a));
            prop_assert_eq!(t.apply(&tx).unwrap(), x.clone());
            prop_assert_eq!(
                space.intersection(&tx, &t.apply(&y).unwrap()).unwrap(),
                space.intersection(&x, &y).unwrap()
            );
        }
    }

    #[test]
    fn pullback_is_a_refinement_and_changes_by_the_functional(seed: u64, d in 2usize..=24) {
        let mut rng = Lcg::new(seed);
        let space = Arc::new(random_space(&mut rng, d, false));
        let g = random_form(&mut rng, space.clone());
        let a = isotropic_nonzero(&mut rng, &space);
        let word = TwistWord::from_classes(space.clone(), [&a]).unwrap();
        let h = pullback(&g, &word).unwrap();
        prop_assert!(h.validate_with(0).passed());
        for _ in 0..16 {
            let x = rng.vector(d);
            prop_assert_eq!(h.eval(&x).unwrap(), g.eval(&word.apply(&x).unwrap()).unwrap());
        }
        if g.eval(&a).unwrap() == HValue::ZERO {
            let phi = twist_functional(&g, &a).unwrap();
            for _ in 0..16 {
                let x = rng.vector(d);
                let diff = h.eval(&x).unwrap() - g.eval(&x).unwrap();
                prop_assert_eq!(diff, HValue::embed(x.dot(&phi).unwrap()));
            }
        } else {
            prop_assert!(twist_functional(&g, &a).is_err());
        }
    }

    #[test]
    fn functional_is_additive_on_orthogonal_isotropic_classes(seed: u64, genus in 2usize..=6) {
        let mut rng = Lcg::new(seed);
        let values: Vec<HValue> = (0..genus).map(|_| HValue::embed(rng.next_bool())).collect();
        let diagram = standard_orientable(genus, &values).unwrap();
        let g = diagram.form();
        let (i, j) = (rng.below(genus), rng.below(genus));
        let ai = &diagram.a_curves()[i];
        let aj = &diagram.a_curves()[j];
        let word = TwistWord::from_classes(diagram.space().clone(), [ai, aj]).unwrap();
        let h = pullback(g, &word).unwrap();
        let mut phi = twist_functional(g, ai).unwrap();
        if i != j {
            phi.add_assign(&twist_functional(g, aj).unwrap()).unwrap();
        } else {
            phi = BitVector::zeros(2 * genus);
        }
        for _ in 0..16 {
            let x = rng.vector(2 * genus);
            prop_assert_eq!(h.eval(&x).unwrap() - g.eval(&x).unwrap(), HValue::embed(x.dot(&phi).unwrap()));
        }
    }

    #[test]
    fn scrambling_preserves_validity_solvability_and_invariant(seed: u64, genus in 1usize..=5, k in 0usize..=20) {
        let mut rng = Lcg::new(seed);
        let base = random_diagram_with(seed, genus, 0, rng.next_bool()).unwrap();
        let classes: Vec<BitVector> = (0..k).map(|_| isotropic_nonzero(&mut rng, base.space())).collect();
        let word = TwistWord::from_classes(base.space().clone(), &classes).unwrap();
        let mixed = scramble(&base, &word).unwrap();
        prop_assert!(mixed.validate().passed());
        prop_assert!(mixed.is_lagrangian());
        prop_assert_eq!(
            mixed.form().gauss_invariant().unwrap(),
            base.form().gauss_invariant().unwrap()
        );
        prop_assert!(matches!(solve_twists(&mixed, Policy::First).unwrap(), SolveOutcome::Solved(_)));
    }

    #[test]
    fn certificate_order_does_not_matter(seed: u64, genus in 1usize..=6) {
        let diagram = random_diagram_with(seed, genus, 3 * genus, true).unwrap();
        let SolveOutcome::Solved(cert) = solve_twists(&diagram, Policy::First).unwrap() else {
            return Err(TestCaseError::fail("lagrangian diagram reported unsolvable"));
        };
        let forward = certificate_word(&diagram, &cert.epsilon).unwrap();
        let backward = forward.reversed();
        prop_assert_eq!(
            transcript_for_word(&diagram, &forward).unwrap(),
            transcript_for_word(&diagram, &backward).unwrap()
        );
        prop_assert!(verify_certificate(&diagram, &cert).unwrap().passed());
        let glued = reglue(&diagram, &cert).unwrap();
        let SolveOutcome::Solved(again) = solve_twists(&glued, Policy::First).unwrap() else {
            return Err(TestCaseError::fail("reglued diagram reported unsolvable"));
        };
        prop_assert!(again.epsilon.is_zero());
    }

    #[test]
    fn solver_agrees_with_brute_force(seed: u64, d in 1usize..=8, n in 1usize..=4, alt: bool) {
        let mut rng = Lcg::new(seed);
        let d = if alt { 2 * d.div_ceil(2) } else { d };
        let Some(diagram) = random_general_diagram(&mut rng, d, n, alt) else {
            return Ok(());
        };
        let all = brute_force_twists(&diagram).unwrap();
        match solve_twists(&diagram, Policy::First).unwrap() {
            SolveOutcome::Solved(cert) => {
                prop_assert!(all.contains(&cert.epsilon));
                prop_assert_eq!(all.len(), 1usize << cert.solution_family.len());
                let minimal = match solve_twists(&diagram, Policy::MinimalWeight).unwrap() {
                    SolveOutcome::Solved(c) => c.epsilon,
                    SolveOutcome::Unsolvable(_) => unreachable!(),
                };
                let best = all.iter().map(|e| e.count_ones()).min().unwrap();
                prop_assert_eq!(minimal.count_ones(), best);
                prop_assert_eq!(
                    &minimal,
                    all.iter().find(|e| e.count_ones() == best).unwrap()
                );
            }
            SolveOutcome::Unsolvable(_) => prop_assert!(all.is_empty()),
        }
    }
}

#[test]
fn one_sided_classes_are_not_twists() {
    let space = Arc::new(InnerSpace::diagonal(3));
    let x = BitVector::unit(3, 1);
    assert!(Twist::new(space.clone(), x).is_err());
    assert!(Twist::new(space, BitVector::zeros(3)).is_err());
}

#[test]
fn one_sided_transvection_is_not_an_involution() {
    let space = InnerSpace::diagonal(2);
    let a = BitVector::unit(2, 0);
    let x = BitVector::unit(2, 0);
    let once = transvect(&space, &x, &a);
    assert!(once.is_zero());
    assert_eq!(transvect(&space, &once, &a), once);
    assert_ne!(transvect(&space, &once, &a), x);
}
