//! Replays the checked-in fuzz corpus through the same checks the fuzz
//! targets make.

use std::fs;
use std::path::{Path, PathBuf};

use framing_core::document::{
    parse_certificate, parse_diagram, render_certificate, render_diagram,
};
use framing_core::solver::{solve_twists, verify_certificate};
use framing_core::{Policy, SolveOutcome};

fn corpus(target: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "empty corpus for {target}");
    files
}

#[test]
fn diagram_corpus() {
    let mut parsed = 0;
    for path in corpus("diagram_document") {
        let Ok(diagram) = parse_diagram(&fs::read(&path).unwrap()) else {
            continue;
        };
        parsed += 1;
        let text = render_diagram(&diagram);
        assert_eq!(
            render_diagram(&parse_diagram(text.as_bytes()).unwrap()),
            text
        );
        if diagram.dimension() > 64 || !diagram.validate().passed() {
            continue;
        }
        match solve_twists(&diagram, Policy::First).unwrap() {
            SolveOutcome::Solved(cert) => {
                assert!(
                    verify_certificate(&diagram, &cert).unwrap().passed(),
                    "{path:?}"
                );
            }
            SolveOutcome::Unsolvable(_) => assert!(!diagram.is_lagrangian(), "{path:?}"),
        }
    }
    assert!(parsed > 0);
}

#[test]
fn certificate_corpus() {
    for path in corpus("certificate_document") {
        if let Ok(cert) = parse_certificate(&fs::read(&path).unwrap()) {
            let back = parse_certificate(render_certificate(&cert).as_bytes()).unwrap();
            assert_eq!(back, cert, "{path:?}");
        }
    }
}
