use proptest::prelude::*;

use super::*;
use crate::samples::{self, chain_category, terminal_two_category, two_cell_chain, InstanceBounds, RandomTwoCategory};

/// `ℤ/3` as 2-cells on the single 1-cell of one object.
fn labelled_monoid() -> TwoCategorySpec {
    let name = |a: usize| format!("c{a}");
    let mut spec = TwoCategorySpec {
        objects: vec!["*".into()],
        one_cells: vec![MorphismSpec { id: "1".into(), dom: "*".into(), cod: "*".into() }],
        identity: [("*".to_string(), "1".to_string())].into(),
        compose: vec![["1".into(), "1".into(), "1".into()]],
        identity2: [("1".to_string(), name(0))].into(),
        ..Default::default()
    };
    for a in 0..3 {
        spec.two_cells.push(CellSpec { id: name(a), src: "1".into(), tgt: "1".into() });
        spec.whisker_left.push(["1".into(), name(a), name(a)]);
        spec.whisker_right.push([name(a), "1".into(), name(a)]);
        for b in 0..3 {
            spec.vcomp.push([name(b), name(a), name((a + b) % 3)]);
        }
    }
    spec
}

#[test]
fn chain_category_composes() {
    let c = FiniteCategory::from_spec(&chain_category()).unwrap();
    assert_eq!(c.compose_named("g", "f").unwrap(), "gf");
    assert_eq!(c.compose_named("id_B", "f").unwrap(), "f");
    let err = c.compose_named("f", "g").unwrap_err();
    assert!(matches!(err, KernelError::NotComposable(_)), "{err}");
    assert!(matches!(c.compose_named("f", "h"), Err(KernelError::UnknownId { .. })));
    let (a, cc) = (c.object("A").unwrap(), c.object("C").unwrap());
    assert_eq!(c.hom(a, cc), vec![c.morphism("gf").unwrap()]);
}

#[test]
fn missing_and_wrong_compositions_are_reported() {
    let mut spec = chain_category();
    spec.compose.retain(|t| t[0] != "g" || t[1] != "f");
    let err = FiniteCategory::from_spec(&spec).unwrap_err();
    let KernelError::Invalid(report) = err else { panic!("expected report") };
    assert_eq!(report.count(Axiom::ComposeTotality), 1);

    let mut spec = chain_category();
    spec.compose.push(["f".into(), "g".into(), "gf".into()]);
    let report = FiniteCategory::from_spec_unchecked(&spec).unwrap().validate();
    assert_eq!(report.count(Axiom::StrayEntry), 1);
}

#[test]
fn duplicate_ids_are_rejected() {
    let mut spec = chain_category();
    spec.objects.push("A".into());
    assert!(matches!(FiniteCategory::from_spec(&spec), Err(KernelError::DuplicateId { .. })));
}

#[test]
fn terminal_instance_is_lawful() {
    let d = Finite2Category::from_spec(&terminal_two_category()).unwrap();
    assert!(d.validate().is_lawful());
    let i = d.cell("i").unwrap();
    assert_eq!(d.hcomp(i, i).unwrap(), i);
}

#[test]
fn vertical_composition_on_cell_chain() {
    let d = Finite2Category::from_spec(&two_cell_chain()).unwrap();
    let (alpha, beta) = (d.cell("alpha").unwrap(), d.cell("beta").unwrap());
    assert_eq!(d.cell_name(d.vcomp(beta, alpha).unwrap()), "beta.alpha");
    let f = d.one_cell("f").unwrap();
    assert_eq!(d.vcomp(d.identity2(f), alpha).unwrap(), alpha);
    assert!(matches!(d.vcomp(alpha, beta), Err(KernelError::NotComposable(_))));
}

#[test]
fn whiskering_identities_and_identity_cells() {
    let d = Finite2Category::from_spec(&two_cell_chain()).unwrap();
    let alpha = d.cell("alpha").unwrap();
    let id_y = d.one_cell("id_Y").unwrap();
    let id_x = d.one_cell("id_X").unwrap();
    assert_eq!(d.whisker(Side::Left, id_y, alpha).unwrap(), alpha);
    assert_eq!(d.whisker(Side::Right, id_x, alpha).unwrap(), alpha);
    let f = d.one_cell("f").unwrap();
    let one_x = d.identity2(id_x);
    assert_eq!(d.whisker_left(f, one_x).unwrap(), d.identity2(f));
    assert!(d.whisker_left(f, alpha).is_err());
    let g = d.one_cell("g").unwrap();
    assert_eq!(d.hcomp(d.identity2(id_y), d.identity2(g)).unwrap(), d.identity2(g));
    assert_eq!(d.hcomp(d.identity2(id_y), alpha).unwrap(), d.whisker_left(id_y, alpha).unwrap());
}

#[test]
fn corrupted_vcomp_associativity_is_named() {
    let spec = labelled_monoid();
    assert!(Finite2Category::from_spec(&spec).is_ok());
    let mut bad = spec.clone();
    for t in &mut bad.vcomp {
        if t[0] == "c1" && t[1] == "c1" {
            t[2] = "c0".into();
        }
    }
    let report = Finite2Category::from_spec_unchecked(&bad).unwrap().validate();
    assert!(report.count(Axiom::VcompAssociativity) > 0);
    assert!(report
        .violations
        .iter()
        .any(|v| v.axiom == Axiom::VcompAssociativity
            && (v.detail.starts_with("(c2, c1, c1)") || v.detail.starts_with("(c1, c1, c2)"))));
    assert!(matches!(Finite2Category::from_spec(&bad), Err(KernelError::Invalid(_))));
}

#[test]
fn label_forgetting_whiskers_are_rejected() {
    // Whiskering that forgets labels on the left only still satisfies the
    // one-sided laws but makes the two hcomp orders disagree.
    let mut bad = labelled_monoid();
    for t in &mut bad.whisker_left {
        t[2] = "c0".into();
    }
    let report = Finite2Category::from_spec_unchecked(&bad).unwrap().validate();
    assert!(!report.is_lawful());
    assert!(report.count(Axiom::WhiskerPreservesVcomp) + report.count(Axiom::WhiskerByIdentity) > 0);
}

#[test]
fn functor_checks_and_morphism_functions() {
    let c = FiniteCategory::from_spec(&chain_category()).unwrap();
    let ids: MapSpec = MapSpec {
        objects: ["A", "B", "C"].iter().map(|x| (x.to_string(), x.to_string())).collect(),
        morphisms: ["id_A", "id_B", "id_C", "f", "g", "gf"].iter().map(|x| (x.to_string(), x.to_string())).collect(),
    };
    assert!(Functor::from_spec(&c, &c, &ids).is_ok());
    let mut broken = ids.clone();
    broken.morphisms.insert("f".into(), "id_B".into());
    assert!(matches!(Functor::from_spec(&c, &c, &broken), Err(KernelError::BoundaryMismatch(_))));
    // A → X, B → X, C → Y with g ↦ e and gf ↦ f breaks composition.
    let d = Finite2Category::from_spec(&two_cell_chain()).unwrap();
    let mut squash = MapSpec::default();
    for (x, y) in [("A", "X"), ("B", "X"), ("C", "Y")] {
        squash.objects.insert(x.into(), y.into());
    }
    for (m, n) in [("id_A", "id_X"), ("id_B", "id_X"), ("id_C", "id_Y"), ("f", "id_X"), ("g", "e"), ("gf", "f")] {
        squash.morphisms.insert(m.into(), n.into());
    }
    assert!(matches!(Functor::from_spec(&c, &d, &squash), Err(KernelError::NotAFunctor(_))));
    let sigma = MorphismFunction::from_spec(&c, &d, &squash).unwrap();
    assert!(sigma.map().functoriality_defect(&c, &d).is_some());
}

#[test]
fn materialized_tables_round_trip() {
    let d = Finite2Category::from_spec(&two_cell_chain()).unwrap();
    let spec = materialize(&d).unwrap();
    let again = Finite2Category::from_spec(&spec).unwrap();
    assert_eq!(materialize(&again).unwrap(), spec);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_two_categories_are_lawful(seed in any::<u64>()) {
        let d = RandomTwoCategory::generate(&mut samples::rng(seed), InstanceBounds::default());
        let spec = d.spec();
        prop_assert!(spec.one_cells.len() <= 12 && spec.two_cells.len() <= 24);
        let table = Finite2Category::from_spec_unchecked(&spec).unwrap();
        let report = table.validate();
        prop_assert!(report.is_lawful(), "{}", report.first_message());
        for a in table.cells() {
            for b in table.cells() {
                if table.dom(table.src(b)) == table.cod(table.src(a)) {
                    prop_assert_eq!(table.hcomp(b, a).unwrap(), table.hcomp_opposite(b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn whiskering_by_composites_is_iterated(seed in any::<u64>()) {
        let d = RandomTwoCategory::generate(&mut samples::rng(seed), InstanceBounds::default());
        let t = Finite2Category::from_spec(&d.spec()).unwrap();
        for a in t.cells() {
            for k in t.morphisms().into_iter().filter(|&k| t.dom(k) == t.cod(t.src(a))) {
                for k2 in t.morphisms().into_iter().filter(|&k2| t.dom(k2) == t.cod(k)) {
                    let kk = t.compose(k2, k).unwrap();
                    prop_assert_eq!(t.whisker_left(kk, a).unwrap(), t.whisker_left(k2, t.whisker_left(k, a).unwrap()).unwrap());
                }
            }
        }
    }
}
