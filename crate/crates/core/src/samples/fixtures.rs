use std::collections::BTreeMap;

use crate::action::{ActionSpec, GroupSpec};
use crate::kernel::{CategorySpec, CellSpec, MorphismSpec, TwoCategorySpec};

fn s(x: &str) -> String {
    x.to_string()
}

fn triple(a: &str, b: &str, c: &str) -> [String; 3] {
    [s(a), s(b), s(c)]
}

fn mor(id: &str, dom: &str, cod: &str) -> MorphismSpec {
    MorphismSpec { id: s(id), dom: s(dom), cod: s(cod) }
}

fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (s(a), s(b))).collect()
}

/// `A → B → C` generated by `f` and `g`, with `gf = g ∘ f`.
pub fn chain_category() -> CategorySpec {
    let ids = [("A", "id_A"), ("B", "id_B"), ("C", "id_C")];
    let mut compose = Vec::new();
    for (_, id) in ids {
        compose.push(triple(id, id, id));
    }
    compose.extend([
        triple("f", "id_A", "f"),
        triple("id_B", "f", "f"),
        triple("g", "id_B", "g"),
        triple("id_C", "g", "g"),
        triple("gf", "id_A", "gf"),
        triple("id_C", "gf", "gf"),
        triple("g", "f", "gf"),
    ]);
    CategorySpec {
        objects: vec![s("A"), s("B"), s("C")],
        morphisms: vec![
            mor("id_A", "A", "A"),
            mor("id_B", "B", "B"),
            mor("id_C", "C", "C"),
            mor("f", "A", "B"),
            mor("g", "B", "C"),
            mor("gf", "A", "C"),
        ],
        identity: map(&ids),
        compose,
    }
}

/// One object, one 1-cell, one 2-cell.
pub fn terminal_two_category() -> TwoCategorySpec {
    TwoCategorySpec {
        objects: vec![s("*")],
        one_cells: vec![mor("1", "*", "*")],
        identity: map(&[("*", "1")]),
        compose: vec![triple("1", "1", "1")],
        two_cells: vec![CellSpec { id: s("i"), src: s("1"), tgt: s("1") }],
        identity2: map(&[("1", "i")]),
        vcomp: vec![triple("i", "i", "i")],
        whisker_left: vec![triple("1", "i", "i")],
        whisker_right: vec![triple("i", "1", "i")],
    }
}

/// Parallel 1-cells `e, f, g: X → Y` with generators `α: e ⇒ f`,
/// `β: f ⇒ g` and their composite `βα`.
pub fn two_cell_chain() -> TwoCategorySpec {
    let one = ["e", "f", "g"];
    let ids = [("e", "1e"), ("f", "1f"), ("g", "1g"), ("id_X", "1X"), ("id_Y", "1Y")];
    let cells = [("1e", "e", "e"), ("1f", "f", "f"), ("1g", "g", "g"), ("1X", "id_X", "id_X"), ("1Y", "id_Y", "id_Y"), ("alpha", "e", "f"), ("beta", "f", "g"), ("beta.alpha", "e", "g")];
    let mut compose = vec![triple("id_X", "id_X", "id_X"), triple("id_Y", "id_Y", "id_Y")];
    for k in one {
        compose.push(triple(k, "id_X", k));
        compose.push(triple("id_Y", k, k));
    }
    let mut vcomp = Vec::new();
    for (a, src, tgt) in cells {
        let into = cells.iter().find(|c| c.0 == ids.iter().find(|i| i.0 == src).unwrap().1).unwrap();
        vcomp.push(triple(a, into.0, a));
        let out = ids.iter().find(|i| i.0 == tgt).unwrap().1;
        if out != a {
            vcomp.push(triple(out, a, a));
        }
    }
    vcomp.push(triple("beta", "alpha", "beta.alpha"));
    vcomp.sort();
    vcomp.dedup();
    let mut whisker_left = Vec::new();
    let mut whisker_right = Vec::new();
    for (a, src, _) in cells {
        let (dom, cod) = if src == "id_X" { ("X", "X") } else if src == "id_Y" { ("Y", "Y") } else { ("X", "Y") };
        whisker_left.push(triple(&format!("id_{cod}"), a, a));
        whisker_right.push(triple(a, &format!("id_{dom}"), a));
    }
    for k in one {
        whisker_left.push(triple(k, "1X", &format!("1{k}")));
        whisker_right.push(triple("1Y", k, &format!("1{k}")));
    }
    TwoCategorySpec {
        objects: vec![s("X"), s("Y")],
        one_cells: vec![mor("id_X", "X", "X"), mor("id_Y", "Y", "Y"), mor("e", "X", "Y"), mor("f", "X", "Y"), mor("g", "X", "Y")],
        identity: map(&[("X", "id_X"), ("Y", "id_Y")]),
        compose,
        two_cells: cells.iter().map(|(id, a, b)| CellSpec { id: s(id), src: s(a), tgt: s(b) }).collect(),
        identity2: map(&ids),
        vcomp,
        whisker_left,
        whisker_right,
    }
}

/// `ℤ/2 = {e, s}` swapping `a` and `b` and fixing `c`.
pub fn swap_action() -> ActionSpec {
    ActionSpec {
        group: GroupSpec {
            elements: vec![s("e"), s("s")],
            mul: vec![triple("e", "e", "e"), triple("e", "s", "s"), triple("s", "e", "s"), triple("s", "s", "e")],
            unit: s("e"),
        },
        carrier: vec![s("a"), s("b"), s("c")],
        act: vec![
            triple("e", "a", "a"),
            triple("e", "b", "b"),
            triple("e", "c", "c"),
            triple("s", "a", "b"),
            triple("s", "b", "a"),
            triple("s", "c", "c"),
        ],
    }
}
