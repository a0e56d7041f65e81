#![no_main]

use framing_core::document::{parse_diagram, render_diagram};
use framing_core::{Policy, SolveOutcome};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(diagram) = parse_diagram(data) else {
        return;
    };
    let text = render_diagram(&diagram);
    let back = parse_diagram(text.as_bytes()).expect("rendered document parses");
    assert_eq!(render_diagram(&back), text);

    if diagram.dimension() > 64 || !diagram.validate().passed() {
        return;
    }
    match framing_core::solver::solve_twists(&diagram, Policy::First) {
        Ok(SolveOutcome::Solved(cert)) => {
            let report = framing_core::solver::verify_certificate(&diagram, &cert).unwrap();
            assert!(report.passed(), "{report}");
        }
        Ok(SolveOutcome::Unsolvable(_)) => assert!(!diagram.is_lagrangian()),
        Err(e) => panic!("valid diagram failed to solve: {e}"),
    }
});
