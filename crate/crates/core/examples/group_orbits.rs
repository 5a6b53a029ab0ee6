//! Orbit equivalence against the delooped action groupoid for `S₃` acting on
//! the cosets of a subgroup of order two and of the alternating subgroup.

use morph_equiv::action::{DeloopedEquivalence, FiniteGroup, GroupAction};

fn main() {
    let s3 = FiniteGroup::symmetric(3);
    let subs = s3.subgroups();
    let pick = |order: usize| subs.iter().find(|h| h.len() == order).unwrap().clone();
    let action = GroupAction::on_cosets(&s3, &[pick(2), pick(3)]).unwrap();
    let names = action.carrier();

    println!("carrier: {names:?}");
    for x in 0..action.carrier_len() {
        for y in 0..action.carrier_len() {
            if let Some(g) = action.orbit_equivalent(x, y) {
                println!("{} = {}.{}", names[y], action.group().name(g), names[x]);
            }
        }
    }

    for l in 0..=2 {
        let eq = DeloopedEquivalence::new(&action, l).unwrap();
        let same = eq.classes() == action.orbits();
        println!("chains up to length {l}: {} classes, equal to orbits: {same}", eq.classes().blocks.len());
    }
}
