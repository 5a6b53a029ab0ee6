//! Preordered sets with a monotone action of the positive rationals,
//! equivariant monotone maps, and scalar 2-cells.
//!
//! A cell `c: f ⇒ g` between parallel maps is a scalar with
//! `f(x) ≥ c·g(y)` whenever `x ≥ y`. Both compositions multiply scalars.
//! All arithmetic is exact.

mod spec;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use spec::{
    check_file, CellEntry, CellStatus, ComposeEntry, ComposeMode, ComposeStatus, InterchangeStatus,
    ItemStatus, MapEntry, MapStatus, ObjectEntry, PreordFile, PreordReport,
};

/// Exact positive scalar.
pub type Scalar = Rational64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PreordError {
    #[error("maps are not parallel")]
    NotParallel,
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error("scalar {0} is not positive")]
    NonPositive(Scalar),
    #[error("scalar {0} is not a product of the action's generators")]
    NotGenerated(Scalar),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("malformed input: {0}")]
    Schema(String),
}

/// How scalars act on a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteAction {
    /// Every scalar acts as the identity.
    Trivial,
    /// Tables for a few generating scalars; other scalars act through a
    /// factorization into generators.
    Generated(BTreeMap<Scalar, Vec<usize>>),
}

/// Largest exponent tried when factoring a scalar over the generators.
const MAX_EXPONENT: i32 = 6;

/// A finite preorder with an action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteObject {
    carrier: Vec<String>,
    /// `leq[x][y]` iff `x ≤ y`.
    leq: Vec<Vec<bool>>,
    action: FiniteAction,
}

/// A preordered set with an action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreordObject {
    /// `ℚ≥0^dim` with the componentwise order and scalar multiplication,
    /// probed at finitely many sample points. For matrix maps a cell is valid
    /// on the whole cone iff it is valid on the standard basis, so samples
    /// containing the basis give exact verdicts.
    Numeric { dim: usize, sample: Vec<Vec<Scalar>> },
    Finite(FiniteObject),
}

/// A point of an object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Vector(Vec<Scalar>),
    Element(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            Point::Element(i) => write!(f, "#{i}"),
        }
    }
}

fn check_positive(c: Scalar) -> Result<(), PreordError> {
    if c > Scalar::zero() {
        Ok(())
    } else {
        Err(PreordError::NonPositive(c))
    }
}

impl FiniteObject {
    /// Closes nothing: `leq` must already be reflexive and transitive.
    pub fn new(carrier: Vec<String>, leq: Vec<Vec<bool>>, action: FiniteAction) -> Result<Self, PreordError> {
        let n = carrier.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(PreordError::InvalidObject("order has the wrong shape".into()));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(PreordError::InvalidObject(format!("{} ≤ {} is missing", carrier[x], carrier[x])));
            }
            for y in 0..n {
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(PreordError::InvalidObject(format!(
                            "{} ≤ {} ≤ {} but not {} ≤ {}",
                            carrier[x], carrier[y], carrier[z], carrier[x], carrier[z]
                        )));
                    }
                }
            }
        }
        let obj = FiniteObject { carrier, leq, action };
        if let FiniteAction::Generated(gens) = &obj.action {
            for (q, table) in gens {
                check_positive(*q)?;
                if table.len() != n || table.iter().any(|&y| y >= n) {
                    return Err(PreordError::InvalidObject(format!("table for {q} has the wrong shape")));
                }
                for x in 0..n {
                    for y in 0..n {
                        if obj.leq[y][x] && !obj.leq[table[y]][table[x]] {
                            return Err(PreordError::InvalidObject(format!(
                                "{q} does not act monotonically on {} ≥ {}",
                                obj.carrier[x], obj.carrier[y]
                            )));
                        }
                    }
                }
            }
            obj.check_relations()?;
        }
        Ok(obj)
    }

    /// Every factorization of the same scalar must act the same way.
    fn check_relations(&self) -> Result<(), PreordError> {
        let mut seen: BTreeMap<Scalar, Vec<usize>> = BTreeMap::new();
        for (c, table) in self.products() {
            match seen.get(&c) {
                Some(prev) if *prev != table => {
                    return Err(PreordError::InvalidObject(format!("{c} acts in two different ways")));
                }
                Some(_) => {}
                None => {
                    seen.insert(c, table);
                }
            }
        }
        Ok(())
    }

    /// All products of generators with exponents in `0..=MAX_EXPONENT`, with
    /// their tables.
    fn products(&self) -> Vec<(Scalar, Vec<usize>)> {
        let FiniteAction::Generated(gens) = &self.action else { return Vec::new() };
        let n = self.carrier.len();
        let mut out = vec![(Scalar::one(), (0..n).collect::<Vec<_>>())];
        for (q, table) in gens {
            let mut next = Vec::new();
            for (c, t) in &out {
                let (mut c, mut t) = (*c, t.clone());
                for _ in 0..=MAX_EXPONENT {
                    next.push((c, t.clone()));
                    c *= *q;
                    t = t.iter().map(|&x| table[x]).collect();
                }
            }
            out = next;
        }
        out
    }

    fn act(&self, c: Scalar, x: usize) -> Result<usize, PreordError> {
        check_positive(c)?;
        match &self.action {
            FiniteAction::Trivial => Ok(x),
            FiniteAction::Generated(_) if c.is_one() => Ok(x),
            FiniteAction::Generated(_) => self
                .products()
                .into_iter()
                .find(|(q, _)| *q == c)
                .map(|(_, t)| t[x])
                .ok_or(PreordError::NotGenerated(c)),
        }
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Generating scalars, empty for the trivial action.
    pub fn generators(&self) -> Vec<Scalar> {
        match &self.action {
            FiniteAction::Trivial => Vec::new(),
            FiniteAction::Generated(g) => g.keys().copied().collect(),
        }
    }
}

impl PreordObject {
    pub fn numeric(dim: usize, sample: Vec<Vec<Scalar>>) -> Result<Self, PreordError> {
        for p in &sample {
            if p.len() != dim {
                return Err(PreordError::InvalidObject("sample point has the wrong dimension".into()));
            }
            if p.iter().any(|q| *q < Scalar::zero()) {
                return Err(PreordError::InvalidObject("sample point has a negative coordinate".into()));
            }
        }
        Ok(PreordObject::Numeric { dim, sample })
    }

    pub fn points(&self) -> Vec<Point> {
        match self {
            PreordObject::Numeric { sample, .. } => sample.iter().cloned().map(Point::Vector).collect(),
            PreordObject::Finite(o) => (0..o.carrier.len()).map(Point::Element).collect(),
        }
    }

    /// `x ≤ y`.
    pub fn leq(&self, x: &Point, y: &Point) -> bool {
        match (self, x, y) {
            (PreordObject::Numeric { .. }, Point::Vector(a), Point::Vector(b)) => a.iter().zip(b).all(|(p, q)| p <= q),
            (PreordObject::Finite(o), Point::Element(a), Point::Element(b)) => o.leq[*a][*b],
            _ => false,
        }
    }

    pub fn act(&self, c: Scalar, x: &Point) -> Result<Point, PreordError> {
        check_positive(c)?;
        match (self, x) {
            (PreordObject::Numeric { .. }, Point::Vector(v)) => Ok(Point::Vector(v.iter().map(|q| q * c).collect())),
            (PreordObject::Finite(o), Point::Element(e)) => Ok(Point::Element(o.act(c, *e)?)),
            _ => Err(PreordError::InvalidObject("point does not belong to the object".into())),
        }
    }

    /// Scalars whose action must commute with maps out of this object.
    fn test_scalars(&self) -> Vec<Scalar> {
        match self {
            PreordObject::Numeric { .. } => [2, 3].iter().map(|&n| Scalar::from_integer(n)).chain([Scalar::new(1, 2)]).collect(),
            PreordObject::Finite(o) => o.generators(),
        }
    }

    /// Pairs `(x, y)` of points with `x ≥ y`.
    pub fn comparable_pairs(&self) -> Vec<(Point, Point)> {
        let pts = self.points();
        let mut out = Vec::new();
        for x in &pts {
            for y in &pts {
                if self.leq(y, x) {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum MapKind {
    /// `x ↦ A x` with nonnegative entries, `A` of shape `cod × dom`.
    Matrix(Vec<Vec<Scalar>>),
    Table(Vec<usize>),
}

/// An equivariant monotone map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: PreordObject,
    cod: PreordObject,
    kind: MapKind,
}

impl MonotoneMap {
    pub fn matrix(dom: &PreordObject, cod: &PreordObject, a: Vec<Vec<Scalar>>) -> Result<Self, PreordError> {
        let (PreordObject::Numeric { dim: n, .. }, PreordObject::Numeric { dim: m, .. }) = (dom, cod) else {
            return Err(PreordError::InvalidMap("matrix maps need numeric objects".into()));
        };
        if a.len() != *m || a.iter().any(|r| r.len() != *n) {
            return Err(PreordError::InvalidMap(format!("matrix must be {m}×{n}")));
        }
        if a.iter().flatten().any(|q| *q < Scalar::zero()) {
            return Err(PreordError::InvalidMap("negative entry".into()));
        }
        Ok(MonotoneMap { dom: dom.clone(), cod: cod.clone(), kind: MapKind::Matrix(a) })
    }

    /// Checks monotonicity and equivariance on every pair and generator.
    pub fn table(dom: &PreordObject, cod: &PreordObject, t: Vec<usize>) -> Result<Self, PreordError> {
        let (PreordObject::Finite(a), PreordObject::Finite(b)) = (dom, cod) else {
            return Err(PreordError::InvalidMap("table maps need finite objects".into()));
        };
        if t.len() != a.carrier.len() || t.iter().any(|&y| y >= b.carrier.len()) {
            return Err(PreordError::InvalidMap("table has the wrong shape".into()));
        }
        let map = MonotoneMap { dom: dom.clone(), cod: cod.clone(), kind: MapKind::Table(t) };
        map.check()?;
        Ok(map)
    }

    pub fn identity(x: &PreordObject) -> Self {
        let kind = match x {
            PreordObject::Numeric { dim, .. } => MapKind::Matrix(
                (0..*dim)
                    .map(|i| (0..*dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
                    .collect(),
            ),
            PreordObject::Finite(o) => MapKind::Table((0..o.carrier.len()).collect()),
        };
        MonotoneMap { dom: x.clone(), cod: x.clone(), kind }
    }

    fn check(&self) -> Result<(), PreordError> {
        for (x, y) in self.dom.comparable_pairs() {
            if !self.cod.leq(&self.apply(&y), &self.apply(&x)) {
                return Err(PreordError::InvalidMap(format!("not monotone on {x} ≥ {y}")));
            }
        }
        let mut scalars = self.dom.test_scalars();
        scalars.extend(self.cod.test_scalars());
        for q in scalars {
            for x in self.dom.points() {
                let (Ok(qx), Ok(fx)) = (self.dom.act(q, &x), self.apply_checked(&x)) else { continue };
                let lhs = self.apply_checked(&qx)?;
                let rhs = self
                    .cod
                    .act(q, &fx)
                    .map_err(|_| PreordError::InvalidMap(format!("{q} does not act on the codomain")))?;
                if lhs != rhs {
                    return Err(PreordError::InvalidMap(format!("not equivariant for {q} at {x}")));
                }
            }
        }
        Ok(())
    }

    fn apply_checked(&self, x: &Point) -> Result<Point, PreordError> {
        match (&self.kind, x) {
            (MapKind::Matrix(a), Point::Vector(v)) => {
                Ok(Point::Vector(a.iter().map(|row| row.iter().zip(v).map(|(p, q)| p * q).sum()).collect()))
            }
            (MapKind::Table(t), Point::Element(e)) => Ok(Point::Element(t[*e])),
            _ => Err(PreordError::InvalidMap("point does not belong to the domain".into())),
        }
    }

    /// `f(x)`.
    pub fn apply(&self, x: &Point) -> Point {
        self.apply_checked(x).expect("point in the domain")
    }

    pub fn dom(&self) -> &PreordObject {
        &self.dom
    }

    pub fn cod(&self) -> &PreordObject {
        &self.cod
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap, PreordError> {
        if self.cod != g.dom {
            return Err(PreordError::NotComposable("codomain and domain differ".into()));
        }
        let kind = match (&self.kind, &g.kind) {
            (MapKind::Matrix(a), MapKind::Matrix(b)) => MapKind::Matrix(
                b.iter()
                    .map(|row| (0..self.dom_dim()).map(|j| row.iter().zip(a).map(|(p, ar)| p * ar[j]).sum()).collect())
                    .collect(),
            ),
            (MapKind::Table(a), MapKind::Table(b)) => MapKind::Table(a.iter().map(|&x| b[x]).collect()),
            _ => return Err(PreordError::NotComposable("mixed map kinds".into())),
        };
        Ok(MonotoneMap { dom: self.dom.clone(), cod: g.cod.clone(), kind })
    }

    fn dom_dim(&self) -> usize {
        match &self.dom {
            PreordObject::Numeric { dim, .. } => *dim,
            PreordObject::Finite(o) => o.carrier.len(),
        }
    }

    pub fn is_parallel(&self, g: &MonotoneMap) -> bool {
        self.dom == g.dom && self.cod == g.cod
    }
}

/// `f(x) ≥ c·g(y)` for every `x ≥ y` in the domain.
pub fn is_two_cell(c: Scalar, f: &MonotoneMap, g: &MonotoneMap) -> Result<bool, PreordError> {
    if !f.is_parallel(g) {
        return Err(PreordError::NotParallel);
    }
    check_positive(c)?;
    Ok(first_failure(c, f, g)?.is_none())
}

fn first_failure(c: Scalar, f: &MonotoneMap, g: &MonotoneMap) -> Result<Option<(Point, Point)>, PreordError> {
    for (x, y) in f.dom.comparable_pairs() {
        let cgy = f.cod.act(c, &g.apply(&y))?;
        if !f.cod.leq(&cgy, &f.apply(&x)) {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Largest `c` with `f(x) ≥ c·g(y)` over the sample of a numeric domain.
/// `None` when no positive scalar works; `Some(None)` when every scalar does.
pub fn max_cell_value(f: &MonotoneMap, g: &MonotoneMap) -> Result<Option<Option<Scalar>>, PreordError> {
    if !f.is_parallel(g) {
        return Err(PreordError::NotParallel);
    }
    if !matches!(f.dom, PreordObject::Numeric { .. }) {
        return Err(PreordError::InvalidMap("only numeric objects have a closed form".into()));
    }
    let mut best: Option<Scalar> = None;
    for (x, y) in f.dom.comparable_pairs() {
        let (Point::Vector(fx), Point::Vector(gy)) = (f.apply(&x), g.apply(&y)) else { unreachable!() };
        for (a, b) in fx.iter().zip(&gy) {
            if b.is_zero() {
                continue;
            }
            let bound = a / b;
            if bound.is_zero() {
                return Ok(None);
            }
            best = Some(best.map_or(bound, |m: Scalar| m.min(bound)));
        }
    }
    Ok(Some(best))
}

/// A validated scalar 2-cell `value: src ⇒ tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCell {
    value: Scalar,
    src: MonotoneMap,
    tgt: MonotoneMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Vertical,
    Horizontal,
}

impl CentralCell {
    pub fn new(value: Scalar, src: MonotoneMap, tgt: MonotoneMap) -> Result<Self, PreordError> {
        if !src.is_parallel(&tgt) {
            return Err(PreordError::NotParallel);
        }
        check_positive(value)?;
        if let Some((x, y)) = first_failure(value, &src, &tgt)? {
            return Err(PreordError::InvalidCell(format!("f({x}) ≱ {value}·g({y})")));
        }
        Ok(CentralCell { value, src, tgt })
    }

    pub fn identity(f: &MonotoneMap) -> Result<Self, PreordError> {
        Self::new(Scalar::one(), f.clone(), f.clone())
    }

    pub fn value(&self) -> Scalar {
        self.value
    }

    pub fn src(&self) -> &MonotoneMap {
        &self.src
    }

    pub fn tgt(&self) -> &MonotoneMap {
        &self.tgt
    }
}

/// Vertical: `second ∘v first` for `first: f ⇒ g`, `second: g ⇒ h`.
/// Horizontal: `second ∘h first` for `first` on `X → Y`, `second` on
/// `Y → Z`. The value is the product in both cases; the result is
/// re-validated.
pub fn compose_cells(mode: Mode, second: &CentralCell, first: &CentralCell) -> Result<CentralCell, PreordError> {
    let value = second.value * first.value;
    let (src, tgt) = match mode {
        Mode::Vertical => {
            if first.tgt != second.src {
                return Err(PreordError::NotComposable("tgt(first) ≠ src(second)".into()));
            }
            (first.src.clone(), second.tgt.clone())
        }
        Mode::Horizontal => {
            if first.src.cod != second.src.dom {
                return Err(PreordError::NotComposable("cells are not horizontally adjacent".into()));
            }
            (first.src.then(&second.src)?, first.tgt.then(&second.tgt)?)
        }
    };
    CentralCell::new(value, src, tgt)
}

/// Outcome of [`check_interchange`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interchange {
    #[serde(with = "spec::scalar")]
    pub vertical_first: Scalar,
    #[serde(with = "spec::scalar")]
    pub horizontal_first: Scalar,
    pub holds: bool,
}

/// For `c: f ⇒ g`, `c2: g ⇒ h` on `X → Y` and `d: i ⇒ j`, `d2: j ⇒ k` on
/// `Y → Z`, compares `(d2 ∘v d) ∘h (c2 ∘v c)` with
/// `(d2 ∘h c2) ∘v (d ∘h c)`.
pub fn check_interchange(
    c: &CentralCell,
    c2: &CentralCell,
    d: &CentralCell,
    d2: &CentralCell,
) -> Result<Interchange, PreordError> {
    let lhs = compose_cells(
        Mode::Horizontal,
        &compose_cells(Mode::Vertical, d2, d)?,
        &compose_cells(Mode::Vertical, c2, c)?,
    )?;
    let rhs = compose_cells(
        Mode::Vertical,
        &compose_cells(Mode::Horizontal, d2, c2)?,
        &compose_cells(Mode::Horizontal, d, c)?,
    )?;
    Ok(Interchange {
        vertical_first: lhs.value,
        horizontal_first: rhs.value,
        holds: lhs == rhs,
    })
}

#[cfg(test)]
mod tests;
