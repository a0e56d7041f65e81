//! JSON documents for diagrams and twist certificates.
//!
//! Vectors are bit strings, character `i` being the coefficient of the
//! `i`-th basis vector. Form values are integers `0..=3` in half units.
//! Parsing checks shapes only (lengths, characters, ranges); semantic
//! validation of a parsed diagram is [`HeegaardDiagram::validate`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::heegaard::{HeegaardDiagram, Metadata};
use crate::quad_form::{HValue, InnerSpace, QuadraticRefinement};
use crate::solver::{Transcript, TwistCertificate};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub dimension: usize,
    /// Row `i` lists `e_i . e_j` for `j = 0..d`.
    pub intersection: Vec<String>,
    pub form: Vec<u8>,
    pub a_curves: Vec<String>,
    pub b_curves: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub epsilon: String,
    /// Ascending indices of the `1` positions of `epsilon`.
    pub twists: Vec<usize>,
    /// `g(h(b_k))` for every `k`, then `g(h(a_k))`, in half units.
    pub transcript: Vec<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solution_family: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn parse_bits(field: String, s: &str, len: usize) -> Result<BitVector, DocumentError> {
    let found = s.chars().count();
    if found != len {
        return Err(field_err(
            field,
            format!("expected {len} characters, found {found}"),
        ));
    }
    s.parse().map_err(|e| field_err(field, format!("{e}")))
}

fn parse_values(field: &str, values: &[u8], len: usize) -> Result<Vec<HValue>, DocumentError> {
    if values.len() != len {
        return Err(field_err(
            field,
            format!("expected {len} entries, found {}", values.len()),
        ));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, &q)| HValue::try_from(q).map_err(|e| field_err(format!("{field}[{i}]"), e)))
        .collect()
}

impl DiagramDocument {
    pub fn into_diagram(self) -> Result<HeegaardDiagram, DocumentError> {
        let d = self.dimension;
        if self.intersection.len() != d {
            return Err(field_err(
                "intersection",
                format!("expected {d} rows, found {}", self.intersection.len()),
            ));
        }
        let rows = self
            .intersection
            .iter()
            .enumerate()
            .map(|(i, r)| parse_bits(format!("intersection[{i}]"), r, d))
            .collect::<Result<Vec<_>, _>>()?;
        let values = parse_values("form", &self.form, d)?;
        if self.a_curves.len() != self.b_curves.len() {
            return Err(field_err(
                "b_curves",
                format!(
                    "expected {} curves to match a_curves, found {}",
                    self.a_curves.len(),
                    self.b_curves.len()
                ),
            ));
        }
        let curves = |name: &str, list: &[String]| {
            list.iter()
                .enumerate()
                .map(|(i, c)| parse_bits(format!("{name}[{i}]"), c, d))
                .collect::<Result<Vec<_>, _>>()
        };
        let a = curves("a_curves", &self.a_curves)?;
        let b = curves("b_curves", &self.b_curves)?;

        let shape = |e: crate::Error| field_err("document", e.to_string());
        let space =
            InnerSpace::new(BitMatrix::from_rows(d, rows).map_err(shape)?).map_err(shape)?;
        let form = QuadraticRefinement::new(Arc::new(space), values).map_err(shape)?;
        Ok(HeegaardDiagram::new(form, a, b)
            .map_err(shape)?
            .with_metadata(self.metadata.unwrap_or_default()))
    }

    pub fn from_diagram(diagram: &HeegaardDiagram) -> Self {
        let strings = |vs: &[BitVector]| vs.iter().map(|v| v.to_string()).collect();
        let metadata = (diagram.metadata != Metadata::default()).then(|| diagram.metadata.clone());
        Self {
            dimension: diagram.dimension(),
            intersection: strings(diagram.space().pairing().row_vectors()),
            form: diagram
                .form()
                .basis_values()
                .iter()
                .map(|v| v.half_units())
                .collect(),
            a_curves: strings(diagram.a_curves()),
            b_curves: strings(diagram.b_curves()),
            metadata,
        }
    }
}

impl CertificateDocument {
    pub fn into_certificate(self) -> Result<TwistCertificate, DocumentError> {
        let epsilon: BitVector = self
            .epsilon
            .parse()
            .map_err(|e| field_err("epsilon", format!("{e}")))?;
        let n = epsilon.len();
        let ones: Vec<usize> = epsilon.iter_ones().collect();
        if self.twists != ones {
            return Err(field_err(
                "twists",
                format!(
                    "expected {ones:?} to match epsilon, found {:?}",
                    self.twists
                ),
            ));
        }
        let values = parse_values("transcript", &self.transcript, 2 * n)?;
        let (b_values, a_values) = values.split_at(n);
        let solution_family = self
            .solution_family
            .iter()
            .enumerate()
            .map(|(i, s)| parse_bits(format!("solution_family[{i}]"), s, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwistCertificate {
            epsilon,
            solution_family,
            transcript: Transcript {
                b_values: b_values.to_vec(),
                a_values: a_values.to_vec(),
            },
        })
    }

    pub fn from_certificate(c: &TwistCertificate) -> Self {
        Self {
            epsilon: c.epsilon.to_string(),
            twists: c.twist_indices(),
            transcript: c
                .transcript
                .b_values
                .iter()
                .chain(&c.transcript.a_values)
                .map(|v| v.half_units())
                .collect(),
            solution_family: c.solution_family.iter().map(|v| v.to_string()).collect(),
        }
    }
}

pub fn parse_diagram(bytes: &[u8]) -> Result<HeegaardDiagram, DocumentError> {
    serde_json::from_slice::<DiagramDocument>(bytes)?.into_diagram()
}

pub fn parse_certificate(bytes: &[u8]) -> Result<TwistCertificate, DocumentError> {
    serde_json::from_slice::<CertificateDocument>(bytes)?.into_certificate()
}

/// Pretty-printed JSON with a trailing newline. Output is a deterministic
/// function of the diagram.
pub fn render_diagram(diagram: &HeegaardDiagram) -> String {
    let mut s = serde_json::to_string_pretty(&DiagramDocument::from_diagram(diagram))
        .expect("document serializes");
    s.push('\n');
    s
}

pub fn render_certificate(certificate: &TwistCertificate) -> String {
    let mut s = serde_json::to_string_pretty(&CertificateDocument::from_certificate(certificate))
        .expect("document serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const GENUS1: &str = r#"{
        "dimension": 2,
        "intersection": ["01", "10"],
        "form": [0, 2],
        "a_curves": ["10"],
        "b_curves": ["01"]
    }"#;

    #[test]
    fn parses_a_minimal_document() {
        let d = parse_diagram(GENUS1.as_bytes()).unwrap();
        assert_eq!(
            d.space().pairing(),
            fixtures::genus1_target().space().pairing()
        );
        assert_eq!(d.form().basis_values(), &[HValue::ZERO, HValue::ONE]);
        assert!(d.validate().passed());
    }

    #[test]
    fn render_then_parse_is_identity_on_fixtures() {
        for (name, d) in fixtures::golden_set() {
            let text = render_diagram(&d);
            let back = parse_diagram(text.as_bytes()).unwrap();
            assert_eq!(back, d, "{name}");
            assert_eq!(render_diagram(&back), text);
        }
    }

    #[test]
    fn shape_errors_name_the_field() {
        let cases = [
            (
                GENUS1.replace(r#"["01", "10"]"#, r#"["01", "1"]"#),
                "intersection[1]",
            ),
            (
                GENUS1.replace(r#"["01", "10"]"#, r#"["01"]"#),
                "intersection",
            ),
            (GENUS1.replace("[0, 2]", "[0, 4]"), "form[1]"),
            (GENUS1.replace("[0, 2]", "[0]"), "form"),
            (GENUS1.replace(r#"["10"]"#, r#"["1x"]"#), "a_curves[0]"),
            (GENUS1.replace(r#"["01"]"#, "[]"), "b_curves"),
        ];
        for (text, field) in cases {
            match parse_diagram(text.as_bytes()) {
                Err(DocumentError::Field { field: f, .. }) => assert_eq!(f, field),
                other => panic!("{field}: {other:?}"),
            }
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let truncated = &GENUS1[..40];
        assert!(matches!(
            parse_diagram(truncated.as_bytes()),
            Err(DocumentError::Syntax { .. })
        ));
        let unknown = GENUS1.replace("\"dimension\"", "\"dimensions\"");
        assert!(parse_diagram(unknown.as_bytes()).is_err());
        assert!(parse_diagram(&[0xff, 0xfe]).is_err());
    }

    #[test]
    fn huge_dimension_is_rejected_without_allocation() {
        let text = GENUS1.replace("\"dimension\": 2", "\"dimension\": 18446744073709551615");
        assert!(matches!(
            parse_diagram(text.as_bytes()),
            Err(DocumentError::Field { .. })
        ));
    }

    #[test]
    fn metadata_round_trips_free_form_labels() {
        let text = GENUS1.replace(
            "\"b_curves\": [\"01\"]",
            r#""b_curves": ["01"], "metadata": {"genus": 1, "source": "hand", "tags": [1, 2]}"#,
        );
        let d = parse_diagram(text.as_bytes()).unwrap();
        assert_eq!(d.metadata.genus, Some(1));
        assert_eq!(d.metadata.labels["source"], "hand");
        let back = parse_diagram(render_diagram(&d).as_bytes()).unwrap();
        assert_eq!(back.metadata, d.metadata);
    }

    #[test]
    fn certificate_documents() {
        let text = r#"{"epsilon": "101", "twists": [0, 2], "transcript": [0, 0, 0, 0, 0, 0]}"#;
        let c = parse_certificate(text.as_bytes()).unwrap();
        assert_eq!(c.twist_indices(), vec![0, 2]);
        assert!(c.transcript.all_zero());
        let back = parse_certificate(render_certificate(&c).as_bytes()).unwrap();
        assert_eq!(back, c);

        let bad_twists = r#"{"epsilon": "101", "twists": [0], "transcript": [0, 0, 0, 0, 0, 0]}"#;
        assert!(matches!(
            parse_certificate(bad_twists.as_bytes()),
            Err(DocumentError::Field { ref field, .. }) if field == "twists"
        ));
        let short = r#"{"epsilon": "1", "twists": [0], "transcript": [0]}"#;
        assert!(parse_certificate(short.as_bytes()).is_err());
        let family =
            r#"{"epsilon": "1", "twists": [0], "transcript": [0, 0], "solution_family": ["11"]}"#;
        assert!(parse_certificate(family.as_bytes()).is_err());
    }
}
