//! Validates the bundled 2-categories, then breaks one composition entry and
//! prints the violations.

use morph_equiv::kernel::{Finite2Category, FiniteCategory, TwoCategorySpec};
use morph_equiv::samples;

fn report(name: &str, violations: &[morph_equiv::kernel::Violation]) {
    if violations.is_empty() {
        println!("{name}: lawful");
    }
    for v in violations {
        println!("{name}: {:?}: {}", v.axiom, v.detail);
    }
}

fn main() {
    for (name, spec) in [("terminal", samples::terminal_two_category()), ("two-cell chain", samples::two_cell_chain())] {
        let d = Finite2Category::from_spec_unchecked(&spec).expect("well-formed tables");
        report(name, &d.validate().violations);
    }

    let iso: TwoCategorySpec = serde_json::from_str(include_str!("../data/parallel_iso_2cat.json")).unwrap();
    report("parallel arrows with α ⇄ α⁻¹", &Finite2Category::from_spec_unchecked(&iso).unwrap().validate().violations);

    let mut chain = samples::chain_category();
    let last = chain.compose.len() - 1;
    chain.compose[last][2] = "f".into();
    let broken = FiniteCategory::from_spec_unchecked(&chain).unwrap();
    report("chain with g∘f = f", &broken.validate().violations);
    assert!(FiniteCategory::from_spec(&chain).is_err());
}
