//! A unitary and a choice of phases move a family without changing its
//! coarse invariant beyond conjugation.

use morph_equiv::frame::{asymp_compare, conjugation_defect, phase_unitary_act, Field, OperatorMatrix, Tolerances};
use morph_equiv::samples;

fn main() {
    let mut rng = samples::rng(2024);
    let f = samples::random_family(&mut rng, Field::Complex, 3, 5);
    let u = samples::random_unitary(&mut rng, 3, Field::Complex);
    let phases = samples::random_phases(&mut rng, 5, Field::Complex);

    let moved = phase_unitary_act(&f, &OperatorMatrix::any(u.clone()), &phases).unwrap();
    println!("conjugation defect: {:.2e}", conjugation_defect(&f, &moved, &u).unwrap());

    let transported = f.frame_operator().conjugate(&u).unwrap();
    let c = asymp_compare(&moved.frame_operator(), &transported, Tolerances::default()).unwrap();
    let (k1, k2) = c.constants().unwrap();
    println!("constants against the transported form: ({k1:.12}, {k2:.12})");

    let untouched = asymp_compare(&moved.frame_operator(), &f.frame_operator(), Tolerances::default()).unwrap();
    println!("against the original form: {:?}", untouched.constants());
}
