//! Exhaustive witness search, witness derivation and class enumeration on a
//! small instance where `e` and `f` are related by an invertible 2-cell.

use morph_equiv::equiv::{Derivation, EquivSpec};
use morph_equiv::kernel::{CategorySpec, Category, MapSpec, TwoCategorySpec};

fn main() {
    let c: CategorySpec = serde_json::from_str(include_str!("../data/parallel_arrows.json")).unwrap();
    let d: TwoCategorySpec = serde_json::from_str(include_str!("../data/parallel_iso_2cat.json")).unwrap();
    let id = MapSpec {
        objects: c.objects.iter().map(|x| (x.clone(), x.clone())).collect(),
        morphisms: c.morphisms.iter().map(|m| (m.id.clone(), m.id.clone())).collect(),
    };
    let spec = EquivSpec { c, d, sigma: id.clone(), tau1: id.clone(), tau2: id };
    let data = spec.load().expect("lawful instance");

    let by_name = |n: &str| data.c().morphisms().into_iter().find(|&m| data.c().morphism_name(m) == n).unwrap();
    let (e, f, g) = (by_name("e"), by_name("f"), by_name("g"));

    let w = data.are_equivalent(e, f).expect("e ≃ f");
    println!("e ≃ f with {:?}", data.describe(&w));
    println!("e ≃ g: {}", data.are_equivalent(e, g).is_some());

    let back = data.derive_witness(Derivation::Symmetry { m: e, m_tilde: f, witness: w }).unwrap();
    assert!(data.verify_witness(f, e, &back).is_ok());
    let round = data
        .derive_witness(Derivation::Transitivity { m: e, m_bar: f, m_bar_bar: e, first: w, second: back })
        .unwrap();
    println!("e ≃ f ≃ e composes to {:?}", data.describe(&round));

    for block in data.equivalence_classes().blocks {
        let names: Vec<String> = block.into_iter().map(|m| data.c().morphism_name(m)).collect();
        println!("class {{{}}}", names.join(", "));
    }
}
