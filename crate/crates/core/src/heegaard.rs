//! Heegaard diagrams as homological data: an inner-product space, a
//! quadratic refinement, and two curve systems (`a`-curves bounding discs in
//! one handlebody, `b`-curves in the other).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::mapping_class::{pullback, Twist, TwistWord};
use crate::quad_form::{HValue, InnerSpace, QuadraticRefinement};
use crate::report::ValidationReport;
use crate::rng::Lcg;

/// Free-form labels attached to a diagram. They never affect computation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(flatten)]
    pub labels: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeegaardDiagram {
    form: QuadraticRefinement,
    a_curves: Vec<BitVector>,
    b_curves: Vec<BitVector>,
    pub metadata: Metadata,
}

impl HeegaardDiagram {
    /// Assembles a diagram. Only shapes are checked here (equal curve counts,
    /// every class of length `d`); see [`HeegaardDiagram::validate`].
    pub fn new(
        form: QuadraticRefinement,
        a_curves: Vec<BitVector>,
        b_curves: Vec<BitVector>,
    ) -> Result<Self> {
        check_len(a_curves.len(), b_curves.len())?;
        let d = form.dimension();
        for c in a_curves.iter().chain(&b_curves) {
            check_len(d, c.len())?;
        }
        Ok(Self {
            form,
            a_curves,
            b_curves,
            metadata: Metadata::default(),
        })
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn space(&self) -> &Arc<InnerSpace> {
        self.form.space()
    }

    pub fn form(&self) -> &QuadraticRefinement {
        &self.form
    }

    pub fn dimension(&self) -> usize {
        self.form.dimension()
    }

    /// Number of curves in each system.
    pub fn curve_count(&self) -> usize {
        self.a_curves.len()
    }

    pub fn a_curves(&self) -> &[BitVector] {
        &self.a_curves
    }

    pub fn b_curves(&self) -> &[BitVector] {
        &self.b_curves
    }

    /// Checks the hypotheses the twist solver consumes: a valid space and
    /// form, isotropic `a`- and `b`-systems, and `g(a_k) = 0` for all `k`.
    /// Whether the `a`-system spans a Lagrangian is recorded as a note.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.space().validate();
        let space_ok = report.passed();
        report.merge(self.form.validate_with(0));
        let space = self.space();

        check_isotropic(&mut report, space, &self.a_curves, "a-isotropy", 'a');
        check_isotropic(&mut report, space, &self.b_curves, "b-isotropy", 'b');

        let bad: Vec<usize> = (0..self.a_curves.len())
            .filter(|&k| self.form.eval_unchecked(&self.a_curves[k]) != HValue::ZERO)
            .collect();
        if let Some(&k) = bad.first() {
            let value = self.form.eval_unchecked(&self.a_curves[k]);
            report.violation(
                "a-form-vanishes",
                format!(
                    "g(a{k}) = {value} (q = {}); {} a-curve(s) with g != 0",
                    value.half_units(),
                    bad.len()
                ),
                vec![self.a_curves[k].clone()],
            );
        }

        report.note(format!(
            "a-system lagrangian: {}",
            if space_ok && self.spans_lagrangian() {
                "yes"
            } else {
                "no"
            }
        ));
        report
    }

    /// Whether `span(a_curves)` is isotropic of dimension `d/2`, hence equal
    /// to its own orthogonal complement. Always false on an invalid space.
    pub fn is_lagrangian(&self) -> bool {
        self.space().validate().passed() && self.spans_lagrangian()
    }

    fn spans_lagrangian(&self) -> bool {
        let d = self.dimension();
        if !d.is_multiple_of(2) {
            return false;
        }
        let span = BitMatrix::from_rows(d, self.a_curves.clone()).expect("lengths checked");
        span.rank() == d / 2 && first_non_isotropic_pair(self.space(), &self.a_curves).is_none()
    }
}

fn first_non_isotropic_pair(space: &InnerSpace, curves: &[BitVector]) -> Option<(usize, usize)> {
    let duals: Vec<BitVector> = curves
        .iter()
        .map(|c| space.pairing().apply_unchecked(c))
        .collect();
    (0..curves.len())
        .flat_map(|i| (i..curves.len()).map(move |j| (i, j)))
        .find(|&(i, j)| curves[i].dot_unchecked(&duals[j]))
}

fn check_isotropic(
    report: &mut ValidationReport,
    space: &InnerSpace,
    curves: &[BitVector],
    invariant: &str,
    label: char,
) {
    if let Some((i, j)) = first_non_isotropic_pair(space, curves) {
        report.violation(
            invariant,
            format!("{label}{i}.{label}{j} = 1"),
            vec![curves[i].clone(), curves[j].clone()],
        );
    }
}

/// Genus-`n` surface with the block-symplectic pairing, `a_k = e_{2k}`,
/// `b_k = e_{2k+1}` (0-based), and `g` equal to 0 on the `a`-basis and to
/// `b_values` on the `b`-basis.
pub fn standard_orientable(genus: usize, b_values: &[HValue]) -> Result<HeegaardDiagram> {
    check_len(genus, b_values.len())?;
    if let Some((k, v)) = b_values.iter().enumerate().find(|(_, v)| !v.is_integral()) {
        return Err(Error::Parity(format!(
            "b-value {k} is {v}; annulus classes need an integral value"
        )));
    }
    let d = 2 * genus;
    let space = Arc::new(InnerSpace::standard_symplectic(genus));
    let values = b_values.iter().flat_map(|&b| [HValue::ZERO, b]).collect();
    let form = QuadraticRefinement::new(space, values)?;
    let a = (0..genus).map(|k| BitVector::unit(d, 2 * k)).collect();
    let b = (0..genus).map(|k| BitVector::unit(d, 2 * k + 1)).collect();
    Ok(HeegaardDiagram::new(form, a, b)?.with_metadata(Metadata {
        orientable: Some(true),
        genus: Some(genus),
        description: Some("standard orientable".into()),
        labels: BTreeMap::new(),
    }))
}

/// A diagram over the identity pairing on `(Z/2)^k`, the mod-2 homology of
/// a connected sum of `k` projective planes. Every basis value must be odd
/// (a Moebius class); the result must pass validation.
pub fn diagonal_diagram(
    form_values: &[HValue],
    a_curves: Vec<BitVector>,
    b_curves: Vec<BitVector>,
) -> Result<HeegaardDiagram> {
    let k = form_values.len();
    if let Some((i, v)) = form_values
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_integral())
    {
        return Err(Error::Parity(format!(
            "basis value {i} is {v}; diagonal classes need 1/2 or 3/2"
        )));
    }
    let space = Arc::new(InnerSpace::diagonal(k));
    let form = QuadraticRefinement::new(space, form_values.to_vec())?;
    let diagram = HeegaardDiagram::new(form, a_curves, b_curves)?.with_metadata(Metadata {
        orientable: Some(false),
        genus: Some(k),
        description: Some("diagonal pairing".into()),
        labels: BTreeMap::new(),
    });
    let report = diagram.validate();
    if report.passed() {
        Ok(diagram)
    } else {
        Err(Error::Validation(report))
    }
}

/// Transports a diagram along a word `h`: curves become `h(c)` and the form
/// becomes `g o h^{-1}`. Twists are involutions on homology, so `h^{-1}` is
/// the reversed word.
pub fn scramble(diagram: &HeegaardDiagram, word: &TwistWord) -> Result<HeegaardDiagram> {
    check_len(diagram.dimension(), word.space().dimension())?;
    let map = |cs: &[BitVector]| cs.iter().map(|c| word.apply(c)).collect::<Result<Vec<_>>>();
    let form = pullback(&diagram.form, &word.reversed())?;
    Ok(
        HeegaardDiagram::new(form, map(&diagram.a_curves)?, map(&diagram.b_curves)?)?
            .with_metadata(diagram.metadata.clone()),
    )
}

/// [`random_diagram_with`] using a scramble word of length `4 * genus`.
pub fn random_diagram(seed: u64, genus: usize, targets_nonzero: bool) -> Result<HeegaardDiagram> {
    random_diagram_with(seed, genus, 4 * genus, targets_nonzero)
}

/// A standard orientable diagram with random integral `b`-values, scrambled
/// by `scramble_len` random twists. Deterministic in its arguments.
///
/// With `targets_nonzero`, at least one `b`-value is 1.
pub fn random_diagram_with(
    seed: u64,
    genus: usize,
    scramble_len: usize,
    targets_nonzero: bool,
) -> Result<HeegaardDiagram> {
    if genus == 0 {
        return Err(Error::Precondition("genus must be at least 1".into()));
    }
    let mut rng = Lcg::new(seed);
    let mut b_values: Vec<HValue> = (0..genus).map(|_| HValue::embed(rng.next_bool())).collect();
    if targets_nonzero && b_values.iter().all(|&v| v == HValue::ZERO) {
        b_values[rng.below(genus)] = HValue::ONE;
    }
    let base = standard_orientable(genus, &b_values)?;
    let space = base.space().clone();
    let mut word = TwistWord::empty(space.clone());
    for _ in 0..scramble_len {
        // Every class is two-sided for the symplectic pairing.
        word.push(Twist::new(space.clone(), rng.nonzero_vector(2 * genus))?)?;
    }
    let mut out = scramble(&base, &word)?;
    out.metadata.description = Some(format!(
        "random seed={seed} scramble={scramble_len}{}",
        if targets_nonzero {
            " nonzero-targets"
        } else {
            ""
        }
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn h(q: u8) -> HValue {
        HValue::try_from(q).unwrap()
    }

    #[test]
    fn standard_orientable_examples() {
        let d = standard_orientable(1, &[h(0)]).unwrap();
        assert_eq!(d.dimension(), 2);
        assert_eq!(d.a_curves(), &[v("10")]);
        assert_eq!(d.b_curves(), &[v("01")]);
        assert!(d.form().basis_values().iter().all(|&x| x == HValue::ZERO));
        let report = d.validate();
        assert!(report.passed());
        assert!(d.is_lagrangian());
        assert!(report.notes.iter().any(|n| n.ends_with("yes")));

        let d = standard_orientable(1, &[h(2)]).unwrap();
        assert_eq!(d.form().eval(&v("01")).unwrap(), HValue::ONE);

        let d = standard_orientable(2, &[h(0), h(2)]).unwrap();
        assert_eq!(d.dimension(), 4);
        assert_eq!(d.a_curves(), &[v("1000"), v("0010")]);
        assert!(d.validate().passed());

        assert!(matches!(
            standard_orientable(1, &[h(1)]),
            Err(Error::Parity(_))
        ));
        assert!(standard_orientable(2, &[h(0)]).is_err());
    }

    #[test]
    fn standard_orientable_valid_up_to_genus_16() {
        for n in 0..=16 {
            for pattern in [0u32, 0xffff, 0xa5a5] {
                let vals: Vec<_> = (0..n)
                    .map(|k| HValue::embed(pattern >> k & 1 == 1))
                    .collect();
                assert!(standard_orientable(n, &vals).unwrap().validate().passed());
            }
        }
    }

    #[test]
    fn validate_diagram_failures() {
        // b_1 = e2, b_2 = e1 in genus 2: e2.e1 = 1
        let base = standard_orientable(2, &[h(0), h(0)]).unwrap();
        let swapped = HeegaardDiagram::new(
            base.form().clone(),
            vec![v("1000"), v("0010")],
            vec![v("0100"), v("1000")],
        )
        .unwrap();
        assert!(swapped.validate().has_violation("b-isotropy"));

        let space = Arc::new(InnerSpace::standard_symplectic(1));
        let form = QuadraticRefinement::new(space, vec![h(2), h(0)]).unwrap();
        let d = HeegaardDiagram::new(form, vec![v("10")], vec![v("01")]).unwrap();
        let report = d.validate();
        assert!(report.has_violation("a-form-vanishes"));
        assert!(!report.has_violation("a-isotropy"));

        // e1 + e2 is isotropic in the genus-1 space
        let ok = HeegaardDiagram::new(base_form(1), vec![v("10")], vec![v("11")]).unwrap();
        assert!(!ok.validate().has_violation("b-isotropy"));
    }

    fn base_form(genus: usize) -> QuadraticRefinement {
        standard_orientable(genus, &vec![h(0); genus])
            .unwrap()
            .form()
            .clone()
    }

    #[test]
    fn mismatched_counts_are_rejected() {
        assert!(HeegaardDiagram::new(base_form(1), vec![v("10")], vec![]).is_err());
        assert!(HeegaardDiagram::new(base_form(1), vec![v("100")], vec![v("01")]).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let d = diagonal_diagram(&[h(1), h(3)], vec![v("11")], vec![v("11")]).unwrap();
        assert_eq!(d.form().eval(&v("11")).unwrap(), HValue::ZERO);
        assert!(d.validate().passed());

        let err = diagonal_diagram(&[h(1), h(1)], vec![v("11")], vec![v("11")]).unwrap_err();
        let Error::Validation(report) = err else {
            panic!()
        };
        assert!(report.has_violation("a-form-vanishes"));

        let err = diagonal_diagram(&[h(1), h(3)], vec![v("11")], vec![v("10")]).unwrap_err();
        let Error::Validation(report) = err else {
            panic!()
        };
        assert!(report.has_violation("b-isotropy"));

        assert!(matches!(
            diagonal_diagram(&[h(2), h(3)], vec![], vec![]),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn scramble_examples() {
        let d = standard_orientable(1, &[h(2)]).unwrap();
        let empty = TwistWord::empty(d.space().clone());
        assert_eq!(scramble(&d, &empty).unwrap(), d);

        let w = TwistWord::from_classes(d.space().clone(), [&v("01")]).unwrap();
        let s = scramble(&d, &w).unwrap();
        assert_eq!(s.a_curves(), &[v("11")]);
        assert_eq!(s.form().eval(&s.a_curves()[0]).unwrap(), HValue::ZERO);
        assert!(s.validate().passed());

        let d2 = standard_orientable(2, &[h(0), h(2)]).unwrap();
        let w = TwistWord::from_classes(d2.space().clone(), [&v("1000")]).unwrap();
        let s = scramble(&d2, &w).unwrap();
        assert_eq!(s.a_curves(), d2.a_curves());
    }

    #[test]
    fn random_diagrams_are_valid_and_deterministic() {
        for seed in 0..50 {
            for genus in 1..=4 {
                let d = random_diagram(seed, genus, seed % 2 == 0).unwrap();
                assert!(d.validate().passed(), "seed {seed} genus {genus}");
                assert!(d.is_lagrangian());
                assert_eq!(d, random_diagram(seed, genus, seed % 2 == 0).unwrap());
                if seed % 2 == 0 {
                    assert!(d
                        .b_curves()
                        .iter()
                        .any(|b| d.form().eval(b).unwrap() != HValue::ZERO));
                }
            }
        }
        assert!(random_diagram(0, 0, false).is_err());
    }
}
