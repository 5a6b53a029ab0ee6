//! Frame bounds, the canonical witness against an orthonormal basis and the
//! comparison of the induced quadratic forms.

use morph_equiv::frame::linalg::real_matrix;
use morph_equiv::frame::{
    asymp_compare, def_equivalent_with_witness, is_frame, onb_witness, BesselFamily, Comparison, Field, OperatorClass, Tolerances,
};

fn main() {
    let tol = Tolerances::default();
    let h = 3f64.sqrt() / 2.0;
    let mercedes = BesselFamily::unweighted(Field::Real, real_matrix(2, 3, &[0.0, -h, h, 1.0, -0.5, -0.5])).unwrap();
    let skewed = BesselFamily::unweighted(Field::Real, real_matrix(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0])).unwrap();
    let line = BesselFamily::unweighted(Field::Real, real_matrix(2, 2, &[1.0, 2.0, 0.0, 0.0])).unwrap();
    let onb = BesselFamily::standard_basis(Field::Real, 2);

    for (name, f) in [("mercedes", &mercedes), ("skewed", &skewed), ("line", &line)] {
        let b = is_frame(f, tol);
        println!("{name}: frame={} bounds=({:.4}, {:.4}) tight={}", b.is_frame, b.lower, b.upper, b.tight);
        match onb_witness(f, tol) {
            Ok((u, ut)) => {
                let v = def_equivalent_with_witness(f, &onb, &u, &ut, OperatorClass::InjectiveClosedRange, tol).unwrap();
                println!("  equivalent to the basis with constants {:?}", v.constants().unwrap());
            }
            Err(e) => println!("  no basis witness: {e}"),
        }
    }

    match asymp_compare(&skewed.frame_operator(), &mercedes.frame_operator(), tol).unwrap() {
        Comparison::Equivalent { k1, k2, .. } => println!("skewed vs mercedes: K1={k1:.4} K2={k2:.4}"),
        other => println!("skewed vs mercedes: {:?}", other.summary()),
    }
    println!("line vs basis: {:?}", asymp_compare(&line.frame_operator(), &onb.frame_operator(), tol).unwrap().summary());
}
