//! The seminorm composite `τ₁(u₁) ∘ σ(T_f) ∘ τ₂(u₂)` and the bridge verdict,
//! compared with the operator-witnessed relation.

use morph_equiv::bridge::{
    bridge_composite, bridge_composite_staged, bridge_equivalent, def_verdict_for, non_functoriality_gap, BridgeData, SeminormRep,
};
use morph_equiv::frame::linalg::{identity, real_matrix, real_vector};
use morph_equiv::frame::{BesselFamily, Field, Tolerances};

fn main() {
    let tol = Tolerances::default();
    let f = BesselFamily::unweighted(Field::Real, real_matrix(2, 2, &[2.0, 0.0, 0.0, 1.0])).unwrap();
    let e = BesselFamily::standard_basis(Field::Real, 2);
    let data = BridgeData { u1: identity(2), u2: identity(2), v1: identity(2), v2: identity(2) };

    let phi = SeminormRep::new(0.5, identity(2)).unwrap();
    let x = real_vector(&[1.0, 1.0]);
    let closed = bridge_composite(&f, &data.u1, &data.u2, &phi).unwrap();
    let staged = bridge_composite_staged(&f, &data.u1, &data.u2, &phi).unwrap();
    println!("composite at (1,1): closed {:.6}, staged {:.6}", closed.eval(&x).unwrap(), staged.eval(&x).unwrap());

    let v = bridge_equivalent(&f, &e, &data, tol).unwrap();
    println!("{}", serde_json::to_string_pretty(&v.summary()).unwrap());
    println!("operator witness agrees: {}", def_verdict_for(&f, &e, &data, tol).unwrap() == v.equivalent());

    let m = real_matrix(2, 2, &[1.0, 0.0, 0.0, 2.0]);
    let gap = non_functoriality_gap(&m, &m, &SeminormRep::norm(2), &[real_vector(&[1.0, 0.0])]).unwrap();
    println!("σ is not functorial: gap {gap} at (1,0)");
}
