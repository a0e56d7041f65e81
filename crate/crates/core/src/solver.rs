//! Twist-subset solver.
//!
//! For a valid diagram the functional `x -> g(T_a x) - g(x)` of a twist
//! along an `a`-curve is `x -> x . a`. Twisting along the `a_j` with
//! `epsilon_j = 1` changes `g(b_k)` by `sum_j epsilon_j (b_k . a_j)`, so
//! the subsets killing every `g(b_k)` are exactly the solutions of
//! `M epsilon = t` with `M[k][j] = b_k . a_j` and `t[k] = g(b_k)`.
//!
//! Certificates are checked by rebuilding the twist word and evaluating the
//! form on the transformed curves; that path never touches the system.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector, Inconsistency, SystemOutcome};
use crate::heegaard::HeegaardDiagram;
use crate::mapping_class::TwistWord;
use crate::quad_form::HValue;
use crate::report::ValidationReport;

/// Largest kernel dimension for which [`Policy::MinimalWeight`] enumerates
/// the solution coset.
pub const MINIMAL_WEIGHT_KERNEL_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// The elimination solution with every free variable set to 0.
    #[default]
    First,
    /// A minimum-weight solution; ties go to the lexicographically smallest.
    MinimalWeight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistSystem {
    /// `n x n`, entry `[k][j] = b_k . a_j`.
    pub matrix: BitMatrix,
    /// `t[k] = g(b_k)` read in `Z/2`.
    pub target: BitVector,
}

/// Form values after applying a twist word, `g(h(b_k))` and `g(h(a_k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub b_values: Vec<HValue>,
    pub a_values: Vec<HValue>,
}

impl Transcript {
    pub fn all_zero(&self) -> bool {
        self.b_values
            .iter()
            .chain(&self.a_values)
            .all(|&v| v == HValue::ZERO)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistCertificate {
    /// `epsilon[j] = 1` iff the twist along `a_j` is used.
    pub epsilon: BitVector,
    /// Kernel basis of the system; every solution is `epsilon` plus a
    /// combination of these.
    pub solution_family: Vec<BitVector>,
    pub transcript: Transcript,
}

impl TwistCertificate {
    /// Indices of the chosen `a`-curves, ascending.
    pub fn twist_indices(&self) -> Vec<usize> {
        self.epsilon.iter_ones().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(TwistCertificate),
    /// The system is inconsistent; the witness combines rows of the system.
    Unsolvable(Inconsistency),
}

impl fmt::Display for TwistSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.matrix.row_vectors().iter().enumerate() {
            writeln!(f, "{row} | {}", u8::from(self.target.get(k)))?;
        }
        Ok(())
    }
}

pub fn build_system(diagram: &HeegaardDiagram) -> Result<TwistSystem> {
    let report = diagram.validate();
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    let space = diagram.space();
    let n = diagram.curve_count();
    let a_duals = diagram
        .a_curves()
        .iter()
        .map(|a| space.dual(a))
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = BitMatrix::zeros(n, n);
    let mut target = BitVector::zeros(n);
    for (k, b) in diagram.b_curves().iter().enumerate() {
        for (j, dual) in a_duals.iter().enumerate() {
            if b.dot_unchecked(dual) {
                matrix.set(k, j, true);
            }
        }
        let value = diagram.form().eval(b)?;
        // Isotropy of b_k forces 2 g(b_k) = 0.
        let bit = value
            .to_bit()
            .expect("validated b-curves have integral values");
        target.set(k, bit);
    }
    Ok(TwistSystem { matrix, target })
}

pub fn solve_twists(diagram: &HeegaardDiagram, policy: Policy) -> Result<SolveOutcome> {
    let system = build_system(diagram)?;
    let solution = match system.matrix.solve(&system.target)? {
        SystemOutcome::Solved(s) => s,
        SystemOutcome::Unsolvable(inc) => return Ok(SolveOutcome::Unsolvable(inc)),
    };
    let epsilon = match policy {
        Policy::First => solution.particular.clone(),
        Policy::MinimalWeight => minimal_weight(&solution.particular, &solution.kernel_basis)?,
    };
    let transcript = transcript(diagram, &epsilon)?;
    Ok(SolveOutcome::Solved(TwistCertificate {
        epsilon,
        solution_family: solution.kernel_basis,
        transcript,
    }))
}

fn minimal_weight(particular: &BitVector, kernel: &[BitVector]) -> Result<BitVector> {
    if kernel.len() > MINIMAL_WEIGHT_KERNEL_LIMIT {
        return Err(Error::Capacity {
            what: "kernel dimension",
            value: kernel.len(),
            limit: MINIMAL_WEIGHT_KERNEL_LIMIT,
        });
    }
    let mut current = particular.clone();
    let mut best = particular.clone();
    let mut best_weight = best.count_ones();
    // Gray-code walk over the coset.
    for step in 1u64..(1u64 << kernel.len()) {
        current ^= &kernel[step.trailing_zeros() as usize];
        let w = current.count_ones();
        if w < best_weight || (w == best_weight && current < best) {
            best.clone_from(&current);
            best_weight = w;
        }
    }
    Ok(best)
}

/// The word `prod_{epsilon_j = 1} T_{a_j}`, in ascending index order.
pub fn certificate_word(diagram: &HeegaardDiagram, epsilon: &BitVector) -> Result<TwistWord> {
    check_len(diagram.curve_count(), epsilon.len())?;
    TwistWord::from_classes(
        diagram.space().clone(),
        epsilon.iter_ones().map(|j| &diagram.a_curves()[j]),
    )
}

/// Applies the word for `epsilon` to every curve and evaluates the form.
pub fn transcript(diagram: &HeegaardDiagram, epsilon: &BitVector) -> Result<Transcript> {
    transcript_for_word(diagram, &certificate_word(diagram, epsilon)?)
}

pub fn transcript_for_word(diagram: &HeegaardDiagram, word: &TwistWord) -> Result<Transcript> {
    let eval_all = |curves: &[BitVector]| {
        curves
            .iter()
            .map(|c| diagram.form().eval(&word.apply(c)?))
            .collect::<Result<Vec<_>>>()
    };
    Ok(Transcript {
        b_values: eval_all(diagram.b_curves())?,
        a_values: eval_all(diagram.a_curves())?,
    })
}

/// Re-derives the transcript from `epsilon` alone and passes iff every
/// value is 0 and matches the recorded transcript.
pub fn verify_certificate(
    diagram: &HeegaardDiagram,
    certificate: &TwistCertificate,
) -> Result<ValidationReport> {
    let n = diagram.curve_count();
    check_len(n, certificate.epsilon.len())?;
    let word = certificate_word(diagram, &certificate.epsilon)?;
    let mut report = ValidationReport::new();
    for (label, curves) in [('b', diagram.b_curves()), ('a', diagram.a_curves())] {
        for (k, c) in curves.iter().enumerate() {
            let image = word.apply(c)?;
            let value = diagram.form().eval(&image)?;
            if value != HValue::ZERO {
                report.violation(
                    format!("{label}-form-vanishes"),
                    format!("g(h({label}{k})) = {value} (q = {})", value.half_units()),
                    vec![image],
                );
            }
        }
    }
    let recomputed = transcript_for_word(diagram, &word)?;
    if recomputed != certificate.transcript {
        report.violation(
            "transcript",
            "recorded transcript differs from recomputation",
            vec![],
        );
    }
    report.note(format!("twists applied: {}", word.len()));
    Ok(report)
}

/// Changes the gluing by the certificate's word: `b_k -> h(b_k)`, with the
/// `a`-curves and the form unchanged.
pub fn reglue(
    diagram: &HeegaardDiagram,
    certificate: &TwistCertificate,
) -> Result<HeegaardDiagram> {
    let report = verify_certificate(diagram, certificate)?;
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "certificate does not verify:\n{report}"
        )));
    }
    let word = certificate_word(diagram, &certificate.epsilon)?;
    let b = diagram
        .b_curves()
        .iter()
        .map(|c| word.apply(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(
        HeegaardDiagram::new(diagram.form().clone(), diagram.a_curves().to_vec(), b)?
            .with_metadata(diagram.metadata.clone()),
    )
}
