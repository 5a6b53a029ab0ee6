use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{Category, TwoCategory};

/// The axiom a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    IdentityBoundary,
    ComposeTotality,
    ComposeBoundary,
    UnitLaw,
    Associativity,
    StrayEntry,
    Identity2Boundary,
    VcompTotality,
    VcompBoundary,
    VcompUnit,
    VcompAssociativity,
    WhiskerTotality,
    WhiskerBoundary,
    WhiskerByIdentity,
    WhiskerByComposite,
    WhiskerPreservesIdentity,
    WhiskerPreservesVcomp,
    WhiskerSidesCommute,
    Interchange,
    MiddleFour,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        write!(f, "{}", s.as_ref().and_then(|v| v.as_str()).unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

/// Every violated axiom instance found by exhaustive checking. Empty iff the
/// instance is lawful.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_lawful(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_message(&self) -> String {
        self.violations
            .first()
            .map(|v| format!("{}: {}", v.axiom, v.detail))
            .unwrap_or_else(|| "none".to_string())
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }

    fn push(&mut self, axiom: Axiom, detail: String) {
        self.violations.push(Violation { axiom, detail });
    }

    fn finish(mut self) -> Self {
        self.violations
            .sort_by(|a, b| (a.axiom, &a.detail).cmp(&(b.axiom, &b.detail)));
        self
    }

    pub(crate) fn extend_stray(&mut self, table: &str, entries: &[String]) {
        for e in entries {
            self.push(Axiom::StrayEntry, format!("{table} entry on non-composable pair {e}"));
        }
    }
}

/// Checks identities, totality of composition on composable pairs, unit laws
/// and associativity over every composable triple.
pub fn validate_category<C: Category>(c: &C) -> ValidationReport {
    let mut report = ValidationReport::default();
    let name = |f| c.morphism_name(f);
    for x in c.objects() {
        let id = c.identity(x);
        if c.dom(id) != x || c.cod(id) != x {
            report.push(
                Axiom::IdentityBoundary,
                format!("identity of {} is {}", c.object_name(x), name(id)),
            );
        }
    }
    let morphisms = c.morphisms();
    let mut outgoing: HashMap<C::Obj, Vec<C::Mor>> = HashMap::new();
    for &f in &morphisms {
        outgoing.entry(c.dom(f)).or_default().push(f);
    }
    let after = |f: C::Mor| outgoing.get(&c.cod(f)).map(Vec::as_slice).unwrap_or(&[]);
    let mut table: HashMap<(C::Mor, C::Mor), C::Mor> = HashMap::new();
    for &f in &morphisms {
        for &g in after(f) {
            match c.compose(g, f) {
                Ok(gf) => {
                    if c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g) {
                        report.push(
                            Axiom::ComposeBoundary,
                            format!("{} ∘ {} = {} has the wrong boundary", name(g), name(f), name(gf)),
                        );
                    }
                    table.insert((g, f), gf);
                }
                Err(_) => report.push(
                    Axiom::ComposeTotality,
                    format!("{} ∘ {} is undefined", name(g), name(f)),
                ),
            }
        }
    }
    for &f in &morphisms {
        let left = table.get(&(c.identity(c.cod(f)), f));
        let right = table.get(&(f, c.identity(c.dom(f))));
        if left.is_some_and(|&h| h != f) || right.is_some_and(|&h| h != f) {
            report.push(Axiom::UnitLaw, format!("identities do not act trivially on {}", name(f)));
        }
    }
    for &f in &morphisms {
        for &g in after(f) {
            for &h in after(g) {
                let lhs = table.get(&(g, f)).and_then(|&gf| table.get(&(h, gf)));
                let rhs = table.get(&(h, g)).and_then(|&hg| table.get(&(hg, f)));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        report.push(
                            Axiom::Associativity,
                            format!("({}, {}, {}): {} vs {}", name(h), name(g), name(f), name(*l), name(*r)),
                        );
                    }
                }
            }
        }
    }
    report.finish()
}

/// Full strict 2-category check: the 1-skeleton laws, vertical composition,
/// whiskering functoriality on both sides, interchange of whiskering orders
/// and the middle-four law.
pub fn validate_two_category<D: TwoCategory>(d: &D) -> ValidationReport {
    let mut report = validate_category(d);
    let mname = |f| d.morphism_name(f);
    let cname = |a| d.cell_name(a);
    let cells = d.cells();
    let morphisms = d.morphisms();

    for &f in &morphisms {
        let id = d.identity2(f);
        if d.src(id) != f || d.tgt(id) != f {
            report.push(Axiom::Identity2Boundary, format!("identity 2-cell of {} is {}", mname(f), cname(id)));
        }
    }

    let mut outgoing: HashMap<D::Mor, Vec<D::Cell>> = HashMap::new();
    for &a in &cells {
        outgoing.entry(d.src(a)).or_default().push(a);
    }
    let after = |a: D::Cell| outgoing.get(&d.tgt(a)).map(Vec::as_slice).unwrap_or(&[]);
    let mut vtable: HashMap<(D::Cell, D::Cell), D::Cell> = HashMap::new();
    for &a in &cells {
        for &b in after(a) {
            match d.vcomp(b, a) {
                Ok(ba) => {
                    if d.src(ba) != d.src(a) || d.tgt(ba) != d.tgt(b) {
                        report.push(Axiom::VcompBoundary, format!("{} ∘v {} = {}", cname(b), cname(a), cname(ba)));
                    }
                    vtable.insert((b, a), ba);
                }
                Err(_) => report.push(Axiom::VcompTotality, format!("{} ∘v {} is undefined", cname(b), cname(a))),
            }
        }
    }
    for &a in &cells {
        let l = vtable.get(&(d.identity2(d.tgt(a)), a));
        let r = vtable.get(&(a, d.identity2(d.src(a))));
        if l.is_some_and(|&x| x != a) || r.is_some_and(|&x| x != a) {
            report.push(Axiom::VcompUnit, format!("identity 2-cells do not act trivially on {}", cname(a)));
        }
    }
    for &a in &cells {
        for &b in after(a) {
            for &c in after(b) {
                let lhs = vtable.get(&(b, a)).and_then(|&ba| vtable.get(&(c, ba)));
                let rhs = vtable.get(&(c, b)).and_then(|&cb| vtable.get(&(cb, a)));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        report.push(
                            Axiom::VcompAssociativity,
                            format!("({}, {}, {}): {} vs {}", cname(c), cname(b), cname(a), cname(*l), cname(*r)),
                        );
                    }
                }
            }
        }
    }

    // Whisker tables, with boundary checks.
    let mut wl: HashMap<(D::Mor, D::Cell), D::Cell> = HashMap::new();
    let mut wr: HashMap<(D::Cell, D::Mor), D::Cell> = HashMap::new();
    for &a in &cells {
        let (s, t) = (d.src(a), d.tgt(a));
        for &k in &morphisms {
            if d.dom(k) == d.cod(s) {
                match d.whisker_left(k, a) {
                    Ok(ka) => {
                        let ok = d.compose(k, s).is_ok_and(|ks| ks == d.src(ka))
                            && d.compose(k, t).is_ok_and(|kt| kt == d.tgt(ka));
                        if !ok {
                            report.push(Axiom::WhiskerBoundary, format!("{} ∘h {} = {}", mname(k), cname(a), cname(ka)));
                        }
                        wl.insert((k, a), ka);
                    }
                    Err(_) => report.push(Axiom::WhiskerTotality, format!("left whisker ({}, {}) undefined", mname(k), cname(a))),
                }
            }
            if d.cod(k) == d.dom(s) {
                match d.whisker_right(a, k) {
                    Ok(ak) => {
                        let ok = d.compose(s, k).is_ok_and(|sk| sk == d.src(ak))
                            && d.compose(t, k).is_ok_and(|tk| tk == d.tgt(ak));
                        if !ok {
                            report.push(Axiom::WhiskerBoundary, format!("{} ∘h {} = {}", cname(a), mname(k), cname(ak)));
                        }
                        wr.insert((a, k), ak);
                    }
                    Err(_) => report.push(Axiom::WhiskerTotality, format!("right whisker ({}, {}) undefined", cname(a), mname(k))),
                }
            }
        }
    }

    let mut outgoing_mor: HashMap<D::Obj, Vec<D::Mor>> = HashMap::new();
    for &k in &morphisms {
        outgoing_mor.entry(d.dom(k)).or_default().push(k);
    }
    let mut incoming_mor: HashMap<D::Obj, Vec<D::Mor>> = HashMap::new();
    for &k in &morphisms {
        incoming_mor.entry(d.cod(k)).or_default().push(k);
    }
    let empty: &[D::Mor] = &[];

    for &a in &cells {
        let s = d.src(a);
        let (x, y) = (d.dom(s), d.cod(s));
        if wl.get(&(d.identity(y), a)).is_some_and(|&b| b != a)
            || wr.get(&(a, d.identity(x))).is_some_and(|&b| b != a)
        {
            report.push(Axiom::WhiskerByIdentity, format!("identity 1-cells do not whisker {} trivially", cname(a)));
        }
        // left: k' then k, i.e. whisker by k ∘ k'
        for &k1 in outgoing_mor.get(&y).map(Vec::as_slice).unwrap_or(empty) {
            for &k2 in outgoing_mor.get(&d.cod(k1)).map(Vec::as_slice).unwrap_or(empty) {
                let Ok(k21) = d.compose(k2, k1) else { continue };
                let iterated = wl.get(&(k1, a)).and_then(|&b| wl.get(&(k2, b)));
                if let (Some(&once), Some(&twice)) = (wl.get(&(k21, a)), iterated) {
                    if once != twice {
                        report.push(
                            Axiom::WhiskerByComposite,
                            format!("left whisker of {} by {} ∘ {}", cname(a), mname(k2), mname(k1)),
                        );
                    }
                }
            }
        }
        // right: α ∘ k1 ∘ k2
        for &k1 in incoming_mor.get(&x).map(Vec::as_slice).unwrap_or(empty) {
            for &k2 in incoming_mor.get(&d.dom(k1)).map(Vec::as_slice).unwrap_or(empty) {
                let Ok(k12) = d.compose(k1, k2) else { continue };
                let iterated = wr.get(&(a, k1)).and_then(|&b| wr.get(&(b, k2)));
                if let (Some(&once), Some(&twice)) = (wr.get(&(a, k12)), iterated) {
                    if once != twice {
                        report.push(
                            Axiom::WhiskerByComposite,
                            format!("right whisker of {} by {} ∘ {}", cname(a), mname(k1), mname(k2)),
                        );
                    }
                }
            }
        }
        for &k in outgoing_mor.get(&y).map(Vec::as_slice).unwrap_or(empty) {
            for &k2 in incoming_mor.get(&x).map(Vec::as_slice).unwrap_or(empty) {
                let one = wl.get(&(k, a)).and_then(|&b| wr.get(&(b, k2)));
                let two = wr.get(&(a, k2)).and_then(|&b| wl.get(&(k, b)));
                if let (Some(p), Some(q)) = (one, two) {
                    if p != q {
                        report.push(
                            Axiom::WhiskerSidesCommute,
                            format!("({} ∘h {}) ∘h {} vs {} ∘h ({} ∘h {})", mname(k), cname(a), mname(k2), mname(k), cname(a), mname(k2)),
                        );
                    }
                }
            }
        }
    }

    for &f in &morphisms {
        let id = d.identity2(f);
        for &k in outgoing_mor.get(&d.cod(f)).map(Vec::as_slice).unwrap_or(empty) {
            if let (Some(&w), Ok(kf)) = (wl.get(&(k, id)), d.compose(k, f)) {
                if w != d.identity2(kf) {
                    report.push(Axiom::WhiskerPreservesIdentity, format!("{} ∘h 1_{}", mname(k), mname(f)));
                }
            }
        }
        for &k in incoming_mor.get(&d.dom(f)).map(Vec::as_slice).unwrap_or(empty) {
            if let (Some(&w), Ok(fk)) = (wr.get(&(id, k)), d.compose(f, k)) {
                if w != d.identity2(fk) {
                    report.push(Axiom::WhiskerPreservesIdentity, format!("1_{} ∘h {}", mname(f), mname(k)));
                }
            }
        }
    }

    for (&(b, a), &ba) in &vtable {
        let s = d.src(a);
        for &k in outgoing_mor.get(&d.cod(s)).map(Vec::as_slice).unwrap_or(empty) {
            let split = match (wl.get(&(k, b)), wl.get(&(k, a))) {
                (Some(&kb), Some(&ka)) => vtable.get(&(kb, ka)),
                _ => None,
            };
            if let (Some(&whole), Some(&split)) = (wl.get(&(k, ba)), split) {
                if whole != split {
                    report.push(Axiom::WhiskerPreservesVcomp, format!("{} ∘h ({} ∘v {})", mname(k), cname(b), cname(a)));
                }
            }
        }
        for &k in incoming_mor.get(&d.dom(s)).map(Vec::as_slice).unwrap_or(empty) {
            let split = match (wr.get(&(b, k)), wr.get(&(a, k))) {
                (Some(&bk), Some(&ak)) => vtable.get(&(bk, ak)),
                _ => None,
            };
            if let (Some(&whole), Some(&split)) = (wr.get(&(ba, k)), split) {
                if whole != split {
                    report.push(Axiom::WhiskerPreservesVcomp, format!("({} ∘v {}) ∘h {}", cname(b), cname(a), mname(k)));
                }
            }
        }
    }

    // Interchange of whiskering orders, from the recorded tables.
    let hcomp = |beta: D::Cell, alpha: D::Cell| -> Option<D::Cell> {
        let first = wr.get(&(beta, d.src(alpha)))?;
        let second = wl.get(&(d.tgt(beta), alpha))?;
        vtable.get(&(*second, *first)).copied()
    };
    let hcomp_opp = |beta: D::Cell, alpha: D::Cell| -> Option<D::Cell> {
        let first = wl.get(&(d.src(beta), alpha))?;
        let second = wr.get(&(beta, d.tgt(alpha)))?;
        vtable.get(&(*second, *first)).copied()
    };
    let mut cells_from: HashMap<D::Obj, Vec<D::Cell>> = HashMap::new();
    for &a in &cells {
        cells_from.entry(d.dom(d.src(a))).or_default().push(a);
    }
    let no_cells: &[D::Cell] = &[];
    for &alpha in &cells {
        let y = d.cod(d.src(alpha));
        for &beta in cells_from.get(&y).map(Vec::as_slice).unwrap_or(no_cells) {
            if let (Some(p), Some(q)) = (hcomp(beta, alpha), hcomp_opp(beta, alpha)) {
                if p != q {
                    report.push(
                        Axiom::Interchange,
                        format!("{} ∘h {}: {} vs {}", cname(beta), cname(alpha), cname(p), cname(q)),
                    );
                }
            }
        }
    }

    // Middle-four over vertically composable pairs.
    let mut pairs_from: HashMap<D::Obj, Vec<(D::Cell, D::Cell, D::Cell)>> = HashMap::new();
    for (&(b, a), &ba) in &vtable {
        pairs_from.entry(d.dom(d.src(a))).or_default().push((b, a, ba));
    }
    for v in pairs_from.values_mut() {
        v.sort();
    }
    let mut keys: Vec<_> = pairs_from.keys().copied().collect();
    keys.sort();
    for x in keys {
        for &(beta, alpha, ba) in &pairs_from[&x] {
            let y = d.cod(d.src(alpha));
            let Some(rights) = pairs_from.get(&y) else { continue };
            for &(delta, gamma, dg) in rights {
                let lhs = hcomp(dg, ba);
                let rhs = match (hcomp(delta, beta), hcomp(gamma, alpha)) {
                    (Some(db), Some(ga)) => vtable.get(&(db, ga)).copied(),
                    _ => None,
                };
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        report.push(
                            Axiom::MiddleFour,
                            format!(
                                "({} ∘v {}) ∘h ({} ∘v {})",
                                cname(delta),
                                cname(gamma),
                                cname(beta),
                                cname(alpha)
                            ),
                        );
                    }
                }
            }
        }
    }
    report.finish()
}
