//! Scalar 2-cells between matrix maps of nonnegative cones, with exact
//! rational composition and the interchange law.

use morph_equiv::preord::{check_file, PreordFile};
use morph_equiv::samples;

fn main() {
    let file: PreordFile = serde_json::from_str(include_str!("../data/preord_cells.json")).unwrap();
    let report = check_file(&file).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let mut rng = samples::rng(11);
    for _ in 0..3 {
        let s = samples::random_cell_square(&mut rng);
        let r = morph_equiv::preord::check_interchange(&s.c, &s.c2, &s.d, &s.d2).unwrap();
        println!("random square: {} vs {} (holds: {})", r.vertical_first, r.horizontal_first, r.holds);
    }
}
