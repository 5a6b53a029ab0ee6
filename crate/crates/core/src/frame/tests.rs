use num_complex::Complex64;
use proptest::prelude::*;

use super::linalg::{max_abs_diff, real_matrix, real_vector};
use super::*;
use crate::samples::{self, PairKind};

const TOL: Tolerances = Tolerances { rank: 1e-10, psd: 1e-9 };

fn real_family(rows: usize, cols: usize, data: &[f64]) -> BesselFamily {
    BesselFamily::unweighted(Field::Real, real_matrix(rows, cols, data)).unwrap()
}

fn three_vectors() -> BesselFamily {
    // (1,0), (0,1), (1,1) as columns.
    real_family(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0])
}

fn mercedes() -> BesselFamily {
    let h = 3f64.sqrt() / 2.0;
    real_family(2, 3, &[1.0, -0.5, -0.5, 0.0, h, -h])
}

fn form(rows: usize, data: &[f64]) -> RhoForm {
    RhoForm::new(real_matrix(rows, rows, data), TOL).unwrap()
}

/// `Σ μᵢ |⟨x, fᵢ⟩|²` by explicit loops.
fn summed(f: &BesselFamily, x: &CVector) -> f64 {
    let v = f.vectors();
    (0..f.len())
        .map(|i| {
            let mut ip = Complex64::new(0.0, 0.0);
            for k in 0..f.dim() {
                ip += x[k] * v[(k, i)].conj();
            }
            f.weights()[i] * ip.norm_sqr()
        })
        .sum()
}

#[test]
fn frame_operators_of_small_families() {
    let p = three_vectors().frame_operator();
    assert!(max_abs_diff(p.matrix(), &real_matrix(2, 2, &[2.0, 1.0, 1.0, 2.0])) < 1e-15);
    let p = mercedes().frame_operator();
    assert!(max_abs_diff(p.matrix(), &real_matrix(2, 2, &[1.5, 0.0, 0.0, 1.5])) < 1e-14);
    let e = BesselFamily::standard_basis(Field::Real, 2).frame_operator();
    let x = real_vector(&[3.0, 4.0]);
    assert!((e.eval(&x).unwrap() - 5.0).abs() < 1e-15);
}

#[test]
fn rho_eval_examples() {
    let p = form(2, &[2.0, 1.0, 1.0, 2.0]);
    let x = real_vector(&[1.0, 0.0]);
    assert!((p.eval(&x).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert!((summed(&three_vectors(), &x) - 2.0).abs() < 1e-15);
    assert_eq!(p.eval(&real_vector(&[0.0, 0.0])).unwrap(), 0.0);
    assert!(matches!(p.eval(&real_vector(&[1.0])), Err(FrameError::DimensionMismatch(_))));
}

#[test]
fn forms_reject_bad_matrices() {
    assert!(matches!(RhoForm::new(real_matrix(2, 2, &[1.0, 0.5, 0.0, 1.0]), TOL), Err(FrameError::Invalid(_))));
    assert!(matches!(RhoForm::new(real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0]), TOL), Err(FrameError::Invalid(_))));
    assert!(RhoForm::new(real_matrix(2, 2, &[1.0, 0.0, 0.0, -1e-12]), TOL).is_ok());
    assert!(BesselFamily::new(Field::Real, vec![0.0], real_matrix(1, 1, &[1.0])).is_err());
    let complex = CMatrix::from_element(1, 1, Complex64::new(0.0, 1.0));
    assert!(BesselFamily::new(Field::Real, vec![1.0], complex).is_err());
}

#[test]
fn comparison_examples() {
    let p = form(2, &[2.0, 1.0, 1.0, 2.0]);
    let c = asymp_compare(&p, &p, TOL).unwrap();
    let (k1, k2) = c.constants().unwrap();
    assert!((k1 - 1.0).abs() < 1e-12 && (k2 - 1.0).abs() < 1e-12);

    let a = form(2, &[1.0, 0.0, 0.0, 0.0]);
    let b = form(2, &[2.0, 0.0, 0.0, 0.0]);
    let (k1, k2) = asymp_compare(&a, &b, TOL).unwrap().constants().unwrap();
    assert!((k1 - 2f64.sqrt()).abs() < 1e-12 && (k2 - 2f64.sqrt()).abs() < 1e-12);

    let id = form(2, &[1.0, 0.0, 0.0, 1.0]);
    match asymp_compare(&a, &id, TOL).unwrap() {
        Comparison::KernelMismatch { witness, a: va, b: vb } => {
            assert!(va < 1e-12 && vb > 0.99);
            assert!(witness[0].norm() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
    let zero = form(2, &[0.0; 4]);
    assert!(asymp_compare(&zero, &zero, TOL).unwrap().is_equivalent());
    assert!(!asymp_compare(&zero, &id, TOL).unwrap().is_equivalent());
    assert!(!asymp_compare(&id, &zero, TOL).unwrap().is_equivalent());
}

#[test]
fn def_equivalence_examples() {
    let e = BesselFamily::standard_basis(Field::Real, 2);
    let id = OperatorMatrix::identity(2);
    let v = def_equivalent_with_witness(&e, &e, &id, &id, OperatorClass::Isometry, TOL).unwrap();
    for k in v.constants().unwrap() {
        assert!((k - 1.0).abs() < 1e-12);
    }

    let f = three_vectors();
    let (u, ut) = onb_witness(&f, TOL).unwrap();
    let p = real_matrix(2, 2, &[2.0, 1.0, 1.0, 2.0]);
    assert!(max_abs_diff(&(u.matrix() * &p * u.matrix().adjoint()), &CMatrix::identity(2, 2)) < 1e-10);
    let v = def_equivalent_with_witness(&f, &e, &u, &ut, OperatorClass::Injective, TOL).unwrap();
    for k in v.constants().unwrap() {
        assert!((k - 1.0).abs() < 1e-9);
    }

    let single = real_family(2, 1, &[1.0, 0.0]);
    let rot = OperatorMatrix::new(real_matrix(2, 2, &[1.0, 2.0, 0.0, 1.0]), OperatorClass::Injective, TOL).unwrap();
    let v = def_equivalent_with_witness(&single, &e, &rot, &rot, OperatorClass::Injective, TOL).unwrap();
    assert!(!v.equivalent());

    let singular = OperatorMatrix::any(real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0]));
    assert!(matches!(
        def_equivalent_with_witness(&e, &e, &singular, &id, OperatorClass::Injective, TOL),
        Err(FrameError::ClassViolation(_))
    ));
    assert!(matches!(
        def_equivalent_with_witness(&e, &single, &OperatorMatrix::identity(3), &id, OperatorClass::Any, TOL),
        Err(FrameError::DimensionMismatch(_))
    ));
}

#[test]
fn frame_detection() {
    let b = is_frame(&BesselFamily::standard_basis(Field::Real, 2), TOL);
    assert!(b.is_frame && b.tight && (b.lower - 1.0).abs() < 1e-15);
    let b = is_frame(&mercedes(), TOL);
    assert!(b.is_frame && b.tight);
    assert!((b.lower - 1.5).abs() < 1e-12 && (b.upper - 1.5).abs() < 1e-12);
    assert!(!is_frame(&real_family(2, 1, &[1.0, 0.0]), TOL).is_frame);
    assert_eq!(onb_witness(&real_family(2, 1, &[1.0, 0.0]), TOL), Err(FrameError::NotAFrame));
    let empty = BesselFamily::unweighted(Field::Real, CMatrix::zeros(2, 0)).unwrap();
    assert!(!is_frame(&empty, TOL).is_frame);

    let (u, ut) = onb_witness(&mercedes(), TOL).unwrap();
    let c = 1.5f64;
    assert!(max_abs_diff(u.matrix(), &CMatrix::identity(2, 2).scale(c.powf(-0.5))) < 1e-12);
    assert!(max_abs_diff(ut.matrix(), &CMatrix::identity(2, 2).scale(c.sqrt())) < 1e-12);
    let (u, _) = onb_witness(&BesselFamily::standard_basis(Field::Complex, 3), TOL).unwrap();
    assert!(max_abs_diff(u.matrix(), &CMatrix::identity(3, 3)) < 1e-12);
}

#[test]
fn adjoint_identity_examples() {
    let mut rng = samples::rng(3);
    let f = mercedes();
    let probes = probe_vectors(&mut rng, 2, 20, Field::Real);
    let d = adjoint_identity_check(&f, &OperatorMatrix::identity(2), &probes).unwrap();
    assert_eq!(d.absolute, 0.0);
    let alpha = OperatorMatrix::any(samples::random_matrix(&mut rng, 2, 2, Field::Real));
    assert!(adjoint_identity_check(&f, &alpha, &probes).unwrap().relative <= 1e-12);

    let g = samples::random_family(&mut rng, Field::Complex, 3, 4);
    let alpha = OperatorMatrix::any(samples::random_unitary(&mut rng, 3, Field::Complex));
    let probes = probe_vectors(&mut rng, 3, 20, Field::Complex);
    assert!(adjoint_identity_check(&g, &alpha, &probes).unwrap().relative <= 1e-12);
}

#[test]
fn phase_unitary_examples() {
    let f = samples::random_family(&mut samples::rng(5), Field::Real, 2, 3);
    let same = phase_unitary_act(&f, &OperatorMatrix::identity(2), &[Complex64::new(1.0, 0.0); 3]).unwrap();
    assert_eq!(same, f);

    let rot = OperatorMatrix::any(real_matrix(2, 2, &[0.0, -1.0, 1.0, 0.0]));
    let e = BesselFamily::standard_basis(Field::Real, 2);
    let ft = phase_unitary_act(&e, &rot, &[Complex64::new(1.0, 0.0); 2]).unwrap();
    assert!(max_abs_diff(ft.frame_operator().matrix(), &CMatrix::identity(2, 2)) < 1e-15);

    let not_unitary = OperatorMatrix::any(real_matrix(2, 2, &[2.0, 0.0, 0.0, 1.0]));
    assert_eq!(phase_unitary_act(&e, &not_unitary, &[Complex64::new(1.0, 0.0); 2]), Err(FrameError::NotUnitary));
    assert!(matches!(
        phase_unitary_act(&e, &rot, &[Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]),
        Err(FrameError::BadPhase(_))
    ));
}

#[test]
fn frame_file_round_trip() {
    let json = r#"{
        "families": {
            "mercedes": {"field": "real", "dim": 2, "vectors": [[1, 0], [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386]]},
            "line": {"field": "complex", "dim": 2, "weights": [2], "vectors": [[[0, 1], 0]]}
        },
        "queries": [
            {"f": "mercedes", "f_tilde": "mercedes", "u": [[1, 0], [0, 1]], "u_tilde": {"matrix": [[1, 0], [0, 1]], "class": "isometry"}}
        ]
    }"#;
    let file: FrameFile = serde_json::from_str(json).unwrap();
    let report = check_frame_file(&file, TOL).unwrap();
    let m = &report.families["mercedes"];
    assert!(m.bounds.is_frame && m.bounds.tight && m.onb_witness.as_ref().unwrap().verdict.equivalent);
    assert!(report.families["line"].onb_witness.is_none());
    assert!(report.queries[0].verdict.equivalent);
    assert!(!report.ok);

    let spec = FamilySpec::from_family(&mercedes());
    assert_eq!(spec.build().unwrap(), mercedes());
    let bad = r#"{"families": {"x": {"field": "real", "dim": 2, "vectors": [[1]]}}}"#;
    let file: FrameFile = serde_json::from_str(bad).unwrap();
    assert!(matches!(check_frame_file(&file, TOL), Err(FrameError::Schema(_))));
}

/// Sample points in the span of `k`'s columns.
fn in_span(rng: &mut impl rand::Rng, k: &CMatrix, field: Field) -> CVector {
    k * samples::random_matrix(rng, k.ncols(), 1, field).column(0)
}

fn check_against_oracle(pair: &samples::PsdPair, field: Field, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = samples::rng(seed);
    let n = pair.a.dim();
    let verdict = asymp_compare(&pair.a, &pair.b, TOL).unwrap();
    let mut xs = probe_vectors(&mut rng, n, 300, field);
    for k in [&pair.kernel_a, &pair.kernel_b] {
        if k.ncols() > 0 {
            for _ in 0..50 {
                xs.push(in_span(&mut rng, k, field));
            }
        }
    }
    let mut one_sided = false;
    let mut ratios = Vec::new();
    for x in &xs {
        let scale = x.norm();
        let (a, b) = (pair.a.eval(x).unwrap(), pair.b.eval(x).unwrap());
        let (ta, tb) = (
            1e-6 * scale * super::linalg::spectral_norm(pair.a.matrix()).sqrt(),
            1e-6 * scale * super::linalg::spectral_norm(pair.b.matrix()).sqrt(),
        );
        if (a <= ta) != (b <= tb) {
            one_sided = true;
        } else if a > 1e4 * ta && b > 1e4 * tb {
            ratios.push(b / a);
        }
    }
    prop_assert_eq!(verdict.is_equivalent(), !one_sided, "{:?}", pair.kind);
    if let Comparison::Equivalent { k1, k2, lower_probe, upper_probe } = verdict {
        for r in ratios {
            prop_assert!(r >= k1 * (1.0 - 1e-9) && r <= k2 * (1.0 + 1e-9));
        }
        let at = |x: &CVector| pair.b.eval(x).unwrap() / pair.a.eval(x).unwrap();
        prop_assert!((at(&lower_probe) - k1).abs() <= 1e-6 * k1.max(1.0));
        prop_assert!((at(&upper_probe) - k2).abs() <= 1e-6 * k2.max(1.0));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rho_matches_direct_summation(seed in any::<u64>(), dim in 2usize..=4, count in 0usize..=6, complex in any::<bool>()) {
        let field = if complex { Field::Complex } else { Field::Real };
        let mut rng = samples::rng(seed);
        let f = samples::random_family(&mut rng, field, dim, count);
        let p = f.frame_operator();
        for x in probe_vectors(&mut rng, dim, 20, field) {
            let direct = summed(&f, &x);
            let via = p.eval(&x).unwrap().powi(2);
            prop_assert!((direct - via).abs() <= 1e-10 * direct.max(1e-300));
            prop_assert!((f.analysis_norm(&x).unwrap().powi(2) - direct).abs() <= 1e-10 * direct.max(1e-300));
        }
    }

    #[test]
    fn comparison_agrees_with_sampling(seed in any::<u64>(), dim in 2usize..=4, kind in 0u8..3, complex in any::<bool>()) {
        let field = if complex { Field::Complex } else { Field::Real };
        let kind = [PairKind::FullRank, PairKind::EqualKernel, PairKind::KernelMismatch][kind as usize];
        let pair = samples::random_psd_pair(&mut samples::rng(seed), dim, field, kind);
        check_against_oracle(&pair, field, seed ^ 0x5eed)?;
    }

    #[test]
    fn comparison_is_symmetric_and_transitive(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = samples::rng(seed);
        let field = samples::random_field(&mut rng);
        let q = samples::random_unitary(&mut rng, dim, field);
        let mk = |rng: &mut _| {
            let g = samples::random_matrix(rng, dim, dim, field) + CMatrix::identity(dim, dim).scale(0.5);
            RhoForm::new(super::linalg::hermitian_part(&(&q * &g * g.adjoint() * q.adjoint())), TOL).unwrap()
        };
        let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        // Forward error of the extreme eigenvalues grows with conditioning.
        let cond = |f: &RhoForm| {
            let e = f.matrix().symmetric_eigenvalues();
            e.max() / e.min()
        };
        let slack = 1e-9f64.max(1e3 * f64::EPSILON * (cond(&a) + cond(&b) + cond(&c)));
        let (k1, k2) = asymp_compare(&a, &b, TOL).unwrap().constants().unwrap();
        let (j1, j2) = asymp_compare(&b, &a, TOL).unwrap().constants().unwrap();
        prop_assert!((j1 - 1.0 / k2).abs() <= slack * j1 && (j2 - 1.0 / k1).abs() <= slack * j2);
        let (l1, l2) = asymp_compare(&b, &c, TOL).unwrap().constants().unwrap();
        let (m1, m2) = asymp_compare(&a, &c, TOL).unwrap().constants().unwrap();
        prop_assert!(m1 >= k1 * l1 * (1.0 - slack) && m2 <= k2 * l2 * (1.0 + slack));
        let (r1, r2) = asymp_compare(&a, &a, TOL).unwrap().constants().unwrap();
        prop_assert!((r1 - 1.0).abs() < 1e-9 && (r2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn frames_are_exactly_those_with_an_onb_witness(seed in any::<u64>(), dim in 2usize..=4, count in 0usize..=6) {
        let mut rng = samples::rng(seed);
        let field = samples::random_field(&mut rng);
        let f = samples::random_family_maybe_degenerate(&mut rng, field, dim, count);
        let onb = BesselFamily::standard_basis(field, dim);
        let frame = is_frame(&f, TOL).is_frame;
        match onb_witness(&f, TOL) {
            Ok((u, ut)) => {
                prop_assert!(frame);
                let v = def_equivalent_with_witness(&f, &onb, &u, &ut, OperatorClass::Injective, TOL).unwrap();
                for k in v.constants().unwrap() {
                    prop_assert!((k - 1.0).abs() <= 1e-9);
                }
            }
            Err(e) => {
                prop_assert_eq!(e, FrameError::NotAFrame);
                prop_assert!(!frame);
                let (u, ut) = pseudo_onb_witness(&f, TOL);
                let v = def_equivalent_with_witness(&f, &onb, &u, &ut, OperatorClass::Any, TOL).unwrap();
                prop_assert!(!v.equivalent());
            }
        }
    }

    #[test]
    fn phase_unitary_action_conjugates(seed in any::<u64>(), dim in 1usize..=4, count in 0usize..=6) {
        let mut rng = samples::rng(seed);
        let field = samples::random_field(&mut rng);
        let f = samples::random_family(&mut rng, field, dim, count);
        let u = samples::random_unitary(&mut rng, dim, field);
        let phases = samples::random_phases(&mut rng, count, field);
        let ft = phase_unitary_act(&f, &OperatorMatrix::any(u.clone()), &phases).unwrap();
        prop_assert!(conjugation_defect(&f, &ft, &u).unwrap() <= 1e-12);
        let transported = f.frame_operator().conjugate(&u).unwrap();
        let c = asymp_compare(&ft.frame_operator(), &transported, TOL).unwrap();
        let (k1, k2) = c.constants().unwrap();
        prop_assert!((k1 - 1.0).abs() <= 1e-9 && (k2 - 1.0).abs() <= 1e-9);
    }
}
