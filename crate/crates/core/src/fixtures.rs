//! Pinned example diagrams and a generator of general small diagrams, shared
//! by the test suites.

use std::sync::Arc;

use crate::gf2::{BitMatrix, BitVector};
use crate::heegaard::{diagonal_diagram, standard_orientable, HeegaardDiagram};
use crate::quad_form::{HValue, InnerSpace, QuadraticRefinement};
use crate::rng::Lcg;

/// Genus 1 with `g(b_1) = 1`; solved by the single twist along `a_1`.
pub fn genus1_target() -> HeegaardDiagram {
    standard_orientable(1, &[HValue::ONE]).expect("valid fixture")
}

/// Genus 2 with every target zero.
pub fn genus2_zero() -> HeegaardDiagram {
    standard_orientable(2, &[HValue::ZERO; 2]).expect("valid fixture")
}

/// Genus-2 space with `a_1 = e1`, `b_1 = e4` and `g(b_1) = 1`. The system
/// is `[0] epsilon = [1]`.
pub fn non_lagrangian() -> HeegaardDiagram {
    let space = Arc::new(InnerSpace::standard_symplectic(2));
    let form = QuadraticRefinement::new(
        space,
        vec![HValue::ZERO, HValue::ZERO, HValue::ZERO, HValue::ONE],
    )
    .expect("valid fixture");
    let e = |i| BitVector::unit(4, i);
    HeegaardDiagram::new(form, vec![e(0)], vec![e(3)]).expect("valid fixture")
}

/// Identity pairing on `(Z/2)^2`, values `(1/2, 3/2)`, `a = b = e1 + e2`.
pub fn diagonal_13() -> HeegaardDiagram {
    let both = BitVector::from_bools(&[true, true]);
    diagonal_diagram(
        &[HValue::HALF, HValue::THREE_HALVES],
        vec![both.clone()],
        vec![both],
    )
    .expect("valid fixture")
}

pub fn golden_set() -> Vec<(&'static str, HeegaardDiagram)> {
    vec![
        ("genus1_target", genus1_target()),
        ("genus2_zero", genus2_zero()),
        ("non_lagrangian", non_lagrangian()),
        ("diagonal_13", diagonal_13()),
    ]
}

/// A random non-degenerate symmetric pairing on `(Z/2)^d`. With `alternating`
/// the diagonal is zero (orientable surfaces); `d` must then be even.
pub fn random_space(rng: &mut Lcg, d: usize, alternating: bool) -> InnerSpace {
    assert!(
        !alternating || d.is_multiple_of(2),
        "alternating pairings need even d"
    );
    loop {
        let mut q = BitMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let bit = if i == j {
                    !alternating && rng.next_bool()
                } else {
                    rng.next_bool()
                };
                q.set(i, j, bit);
                q.set(j, i, bit);
            }
        }
        if q.rank() == d {
            return InnerSpace::new(q).expect("square");
        }
    }
}

/// A random refinement respecting the parity constraint.
pub fn random_form(rng: &mut Lcg, space: Arc<InnerSpace>) -> QuadraticRefinement {
    let values = (0..space.dimension())
        .map(|i| {
            let odd = u8::from(space.pairing().get(i, i));
            HValue::try_from(odd + 2 * u8::from(rng.next_bool())).expect("q < 4")
        })
        .collect();
    QuadraticRefinement::new(space, values).expect("dimension matches")
}

/// A random valid diagram with `n` curves per system over a random space, or
/// `None` if rejection sampling gives up. The `a`-system is Lagrangian only
/// by chance, so both solvable and unsolvable instances occur.
pub fn random_general_diagram(
    rng: &mut Lcg,
    d: usize,
    n: usize,
    alternating: bool,
) -> Option<HeegaardDiagram> {
    let space = Arc::new(random_space(rng, d, alternating));
    let form = random_form(rng, space.clone());
    let pairs = |x: &BitVector, y: &BitVector| space.intersection(x, y).expect("lengths match");

    let pick = |rng: &mut Lcg, chosen: &[BitVector], need_zero_form: bool| {
        (0..400).find_map(|_| {
            let x = rng.vector(d);
            let ok = !pairs(&x, &x)
                && chosen.iter().all(|c| !pairs(&x, c))
                && (!need_zero_form || form.eval(&x).expect("length") == HValue::ZERO);
            ok.then_some(x)
        })
    };
    let mut a = Vec::with_capacity(n);
    for _ in 0..n {
        let x = pick(rng, &a, true)?;
        a.push(x);
    }
    let mut b = Vec::with_capacity(n);
    for _ in 0..n {
        let x = pick(rng, &b, false)?;
        b.push(x);
    }
    let diagram = HeegaardDiagram::new(form, a, b).ok()?;
    diagram.validate().passed().then_some(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_fixtures_validate() {
        for (name, d) in golden_set() {
            assert!(d.validate().passed(), "{name}");
        }
        assert!(!non_lagrangian().is_lagrangian());
        assert!(genus1_target().is_lagrangian());
    }

    #[test]
    fn general_generator_produces_valid_diagrams() {
        let mut rng = Lcg::new(5);
        let mut produced = 0;
        for i in 0..200 {
            let alternating = i % 2 == 0;
            let d = 2 + 2 * (i % 4);
            if let Some(diag) = random_general_diagram(&mut rng, d, 1 + i % 3, alternating) {
                assert!(diag.validate().passed());
                produced += 1;
            }
        }
        assert!(produced > 150, "only {produced} diagrams produced");
    }
}
