use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::validate::{validate_category, validate_two_category, ValidationReport};
use super::{CellId, KernelError, MorId, ObjId, TwoCategory};
use super::Category;

/// A morphism (or 1-cell) record in an instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// A 2-cell record in an instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// On-disk form of a finite category.
///
/// `compose` holds `[g, f, g∘f]` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identity: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

/// On-disk form of a finite strict 2-category.
///
/// `vcomp` holds `[β, α, β∘α]`, `whisker_left` holds `[k, α, k∘α]` and
/// `whisker_right` holds `[α, k, α∘k]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoCategorySpec {
    pub objects: Vec<String>,
    pub one_cells: Vec<MorphismSpec>,
    pub identity: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    pub two_cells: Vec<CellSpec>,
    pub identity2: BTreeMap<String, String>,
    #[serde(default)]
    pub vcomp: Vec<[String; 3]>,
    #[serde(default)]
    pub whisker_left: Vec<[String; 3]>,
    #[serde(default)]
    pub whisker_right: Vec<[String; 3]>,
}

#[derive(Clone, Debug)]
struct MorRec {
    name: String,
    dom: ObjId,
    cod: ObjId,
}

#[derive(Clone, Debug)]
struct CellRec {
    name: String,
    src: MorId,
    tgt: MorId,
}

fn sorted_index<'a, I>(kind: &'static str, names: I) -> Result<(Vec<String>, HashMap<String, usize>), KernelError>
where
    I: IntoIterator<Item = &'a String>,
{
    let mut names: Vec<String> = names.into_iter().cloned().collect();
    names.sort();
    for w in names.windows(2) {
        if w[0] == w[1] {
            return Err(KernelError::DuplicateId { kind, id: w[0].clone() });
        }
    }
    let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    Ok((names, index))
}

fn insert_entry<K: std::hash::Hash + Eq + Copy, V: PartialEq + Copy>(
    table: &mut HashMap<K, V>,
    key: K,
    value: V,
    what: &str,
) -> Result<(), KernelError> {
    if let Some(old) = table.insert(key, value) {
        if old != value {
            return Err(KernelError::Schema(format!("conflicting {what} entries")));
        }
    }
    Ok(())
}

/// A category given by explicit finite tables.
///
/// Objects and morphisms are stored sorted by identifier, so index order is
/// identifier order.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    morphisms: Vec<MorRec>,
    morphism_index: HashMap<String, usize>,
    identity: Vec<MorId>,
    compose: HashMap<(MorId, MorId), MorId>,
    homs: HashMap<(ObjId, ObjId), Vec<MorId>>,
    stray: Vec<String>,
}

impl FiniteCategory {
    /// Loads and validates. Unlawful tables are rejected with the full
    /// violation report.
    pub fn from_spec(spec: &CategorySpec) -> Result<Self, KernelError> {
        let c = Self::from_spec_unchecked(spec)?;
        let report = c.validate();
        if report.is_lawful() {
            Ok(c)
        } else {
            Err(KernelError::Invalid(report))
        }
    }

    /// Resolves identifiers without checking any category axiom.
    pub fn from_spec_unchecked(spec: &CategorySpec) -> Result<Self, KernelError> {
        let (objects, object_index) = sorted_index("object", &spec.objects)?;
        let (names, morphism_index) =
            sorted_index("morphism", spec.morphisms.iter().map(|m| &m.id))?;
        let by_name: HashMap<&str, &MorphismSpec> =
            spec.morphisms.iter().map(|m| (m.id.as_str(), m)).collect();
        let obj = |id: &str| {
            object_index.get(id).map(|&i| ObjId(i)).ok_or_else(|| KernelError::UnknownId {
                kind: "object",
                id: id.to_string(),
            })
        };
        let mut morphisms = Vec::with_capacity(names.len());
        for name in &names {
            let m = by_name[name.as_str()];
            morphisms.push(MorRec { name: name.clone(), dom: obj(&m.dom)?, cod: obj(&m.cod)? });
        }
        let mor = |id: &str| {
            morphism_index.get(id).map(|&i| MorId(i)).ok_or_else(|| KernelError::UnknownId {
                kind: "morphism",
                id: id.to_string(),
            })
        };
        let mut identity = Vec::with_capacity(objects.len());
        for o in &objects {
            let id = spec
                .identity
                .get(o)
                .ok_or_else(|| KernelError::Schema(format!("object `{o}` has no identity")))?;
            identity.push(mor(id)?);
        }
        for key in spec.identity.keys() {
            obj(key)?;
        }
        let mut compose = HashMap::new();
        let mut stray = Vec::new();
        for [g, f, gf] in &spec.compose {
            let (g_id, f_id, gf_id) = (mor(g)?, mor(f)?, mor(gf)?);
            if morphisms[f_id.0].cod != morphisms[g_id.0].dom {
                stray.push(format!("({g}, {f})"));
            }
            insert_entry(&mut compose, (g_id, f_id), gf_id, "compose")?;
        }
        let mut homs: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.dom, m.cod)).or_default().push(MorId(i));
        }
        Ok(FiniteCategory {
            objects,
            object_index,
            morphisms,
            morphism_index,
            identity,
            compose,
            homs,
            stray,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = validate_category(self);
        report.extend_stray("compose", &self.stray);
        report
    }

    pub fn object(&self, id: &str) -> Result<ObjId, KernelError> {
        self.object_index.get(id).map(|&i| ObjId(i)).ok_or_else(|| KernelError::UnknownId {
            kind: "object",
            id: id.to_string(),
        })
    }

    pub fn morphism(&self, id: &str) -> Result<MorId, KernelError> {
        self.morphism_index.get(id).map(|&i| MorId(i)).ok_or_else(|| KernelError::UnknownId {
            kind: "morphism",
            id: id.to_string(),
        })
    }

    /// Name-based composition: `g ∘ f`.
    pub fn compose_named(&self, g: &str, f: &str) -> Result<&str, KernelError> {
        let h = self.compose(self.morphism(g)?, self.morphism(f)?)?;
        Ok(&self.morphisms[h.0].name)
    }

    pub fn name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }
}

impl Category for FiniteCategory {
    type Obj = ObjId;
    type Mor = MorId;

    fn objects(&self) -> Vec<ObjId> {
        (0..self.objects.len()).map(ObjId).collect()
    }

    fn morphisms(&self) -> Vec<MorId> {
        (0..self.morphisms.len()).map(MorId).collect()
    }

    fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dom
    }

    fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].cod
    }

    fn identity(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    fn compose(&self, g: MorId, f: MorId) -> Result<MorId, KernelError> {
        if self.cod(f) != self.dom(g) {
            return Err(KernelError::NotComposable(format!(
                "cod({}) = {} but dom({}) = {}",
                self.name(f),
                self.objects[self.cod(f).0],
                self.name(g),
                self.objects[self.dom(g).0]
            )));
        }
        self.compose.get(&(g, f)).copied().ok_or_else(|| {
            KernelError::NotComposable(format!(
                "no table entry for {} ∘ {}",
                self.name(g),
                self.name(f)
            ))
        })
    }

    fn object_name(&self, x: ObjId) -> String {
        self.objects[x.0].clone()
    }

    fn morphism_name(&self, f: MorId) -> String {
        self.morphisms[f.0].name.clone()
    }

    fn hom(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.homs.get(&(x, y)).cloned().unwrap_or_default()
    }
}

/// A strict 2-category given by explicit finite tables.
///
/// Horizontal composition is derived (see [`TwoCategory::hcomp`]); lawful
/// instances satisfy interchange, which validation checks exhaustively.
#[derive(Clone, Debug)]
pub struct Finite2Category {
    skeleton: FiniteCategory,
    cells: Vec<CellRec>,
    cell_index: HashMap<String, usize>,
    identity2: Vec<CellId>,
    vcomp: HashMap<(CellId, CellId), CellId>,
    whisker_left: HashMap<(MorId, CellId), CellId>,
    whisker_right: HashMap<(CellId, MorId), CellId>,
    between: HashMap<(MorId, MorId), Vec<CellId>>,
    stray: Vec<(&'static str, String)>,
}

impl Finite2Category {
    pub fn from_spec(spec: &TwoCategorySpec) -> Result<Self, KernelError> {
        let d = Self::from_spec_unchecked(spec)?;
        let report = d.validate();
        if report.is_lawful() {
            Ok(d)
        } else {
            Err(KernelError::Invalid(report))
        }
    }

    pub fn from_spec_unchecked(spec: &TwoCategorySpec) -> Result<Self, KernelError> {
        let skeleton = FiniteCategory::from_spec_unchecked(&CategorySpec {
            objects: spec.objects.clone(),
            morphisms: spec.one_cells.clone(),
            identity: spec.identity.clone(),
            compose: spec.compose.clone(),
        })?;
        let (names, cell_index) = sorted_index("2-cell", spec.two_cells.iter().map(|c| &c.id))?;
        let by_name: HashMap<&str, &CellSpec> =
            spec.two_cells.iter().map(|c| (c.id.as_str(), c)).collect();
        let mut cells = Vec::with_capacity(names.len());
        for name in &names {
            let c = by_name[name.as_str()];
            let src = skeleton.morphism(&c.src)?;
            let tgt = skeleton.morphism(&c.tgt)?;
            if skeleton.dom(src) != skeleton.dom(tgt) || skeleton.cod(src) != skeleton.cod(tgt) {
                return Err(KernelError::BoundaryMismatch(format!(
                    "2-cell `{name}` joins non-parallel 1-cells `{}` and `{}`",
                    c.src, c.tgt
                )));
            }
            cells.push(CellRec { name: name.clone(), src, tgt });
        }
        let cell = |id: &str| {
            cell_index.get(id).map(|&i| CellId(i)).ok_or_else(|| KernelError::UnknownId {
                kind: "2-cell",
                id: id.to_string(),
            })
        };
        let mut identity2 = Vec::with_capacity(skeleton.len());
        for f in 0..skeleton.len() {
            let name = skeleton.name(MorId(f));
            let id = spec.identity2.get(name).ok_or_else(|| {
                KernelError::Schema(format!("1-cell `{name}` has no identity 2-cell"))
            })?;
            identity2.push(cell(id)?);
        }
        for key in spec.identity2.keys() {
            skeleton.morphism(key)?;
        }
        let mut stray = Vec::new();
        let mut vcomp = HashMap::new();
        for [b, a, ba] in &spec.vcomp {
            let (b_id, a_id, ba_id) = (cell(b)?, cell(a)?, cell(ba)?);
            if cells[a_id.0].tgt != cells[b_id.0].src {
                stray.push(("vcomp", format!("({b}, {a})")));
            }
            insert_entry(&mut vcomp, (b_id, a_id), ba_id, "vcomp")?;
        }
        let mut whisker_left = HashMap::new();
        for [k, a, ka] in &spec.whisker_left {
            let (k_id, a_id, ka_id) = (skeleton.morphism(k)?, cell(a)?, cell(ka)?);
            if skeleton.dom(k_id) != skeleton.cod(cells[a_id.0].src) {
                stray.push(("whisker_left", format!("({k}, {a})")));
            }
            insert_entry(&mut whisker_left, (k_id, a_id), ka_id, "whisker_left")?;
        }
        let mut whisker_right = HashMap::new();
        for [a, k, ak] in &spec.whisker_right {
            let (a_id, k_id, ak_id) = (cell(a)?, skeleton.morphism(k)?, cell(ak)?);
            if skeleton.cod(k_id) != skeleton.dom(cells[a_id.0].src) {
                stray.push(("whisker_right", format!("({a}, {k})")));
            }
            insert_entry(&mut whisker_right, (a_id, k_id), ak_id, "whisker_right")?;
        }
        let mut between: HashMap<(MorId, MorId), Vec<CellId>> = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            between.entry((c.src, c.tgt)).or_default().push(CellId(i));
        }
        Ok(Finite2Category {
            skeleton,
            cells,
            cell_index,
            identity2,
            vcomp,
            whisker_left,
            whisker_right,
            between,
            stray,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = validate_two_category(self);
        report.extend_stray("compose", &self.skeleton.stray);
        for (table, entry) in &self.stray {
            report.extend_stray(table, std::slice::from_ref(entry));
        }
        report
    }

    pub fn skeleton(&self) -> &FiniteCategory {
        &self.skeleton
    }

    pub fn object(&self, id: &str) -> Result<ObjId, KernelError> {
        self.skeleton.object(id)
    }

    pub fn one_cell(&self, id: &str) -> Result<MorId, KernelError> {
        self.skeleton.morphism(id)
    }

    pub fn cell(&self, id: &str) -> Result<CellId, KernelError> {
        self.cell_index.get(id).map(|&i| CellId(i)).ok_or_else(|| KernelError::UnknownId {
            kind: "2-cell",
            id: id.to_string(),
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn one_cell_count(&self) -> usize {
        self.skeleton.len()
    }

    fn cname(&self, a: CellId) -> &str {
        &self.cells[a.0].name
    }
}

impl Category for Finite2Category {
    type Obj = ObjId;
    type Mor = MorId;

    fn objects(&self) -> Vec<ObjId> {
        self.skeleton.objects()
    }

    fn morphisms(&self) -> Vec<MorId> {
        self.skeleton.morphisms()
    }

    fn dom(&self, f: MorId) -> ObjId {
        self.skeleton.dom(f)
    }

    fn cod(&self, f: MorId) -> ObjId {
        self.skeleton.cod(f)
    }

    fn identity(&self, x: ObjId) -> MorId {
        self.skeleton.identity(x)
    }

    fn compose(&self, g: MorId, f: MorId) -> Result<MorId, KernelError> {
        self.skeleton.compose(g, f)
    }

    fn object_name(&self, x: ObjId) -> String {
        self.skeleton.object_name(x)
    }

    fn morphism_name(&self, f: MorId) -> String {
        self.skeleton.morphism_name(f)
    }

    fn hom(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.skeleton.hom(x, y)
    }
}

impl TwoCategory for Finite2Category {
    type Cell = CellId;

    fn cells(&self) -> Vec<CellId> {
        (0..self.cells.len()).map(CellId).collect()
    }

    fn src(&self, a: CellId) -> MorId {
        self.cells[a.0].src
    }

    fn tgt(&self, a: CellId) -> MorId {
        self.cells[a.0].tgt
    }

    fn identity2(&self, f: MorId) -> CellId {
        self.identity2[f.0]
    }

    fn vcomp(&self, second: CellId, first: CellId) -> Result<CellId, KernelError> {
        if self.tgt(first) != self.src(second) {
            return Err(KernelError::NotComposable(format!(
                "tgt({}) ≠ src({})",
                self.cname(first),
                self.cname(second)
            )));
        }
        self.vcomp.get(&(second, first)).copied().ok_or_else(|| {
            KernelError::NotComposable(format!(
                "no vcomp entry for {} ∘v {}",
                self.cname(second),
                self.cname(first)
            ))
        })
    }

    fn whisker_left(&self, k: MorId, a: CellId) -> Result<CellId, KernelError> {
        if self.dom(k) != self.cod(self.src(a)) {
            return Err(KernelError::NotComposable(format!(
                "cannot whisker {} on the left by {}",
                self.cname(a),
                self.skeleton.name(k)
            )));
        }
        self.whisker_left.get(&(k, a)).copied().ok_or_else(|| {
            KernelError::NotComposable(format!(
                "no whisker_left entry for ({}, {})",
                self.skeleton.name(k),
                self.cname(a)
            ))
        })
    }

    fn whisker_right(&self, a: CellId, k: MorId) -> Result<CellId, KernelError> {
        if self.cod(k) != self.dom(self.src(a)) {
            return Err(KernelError::NotComposable(format!(
                "cannot whisker {} on the right by {}",
                self.cname(a),
                self.skeleton.name(k)
            )));
        }
        self.whisker_right.get(&(a, k)).copied().ok_or_else(|| {
            KernelError::NotComposable(format!(
                "no whisker_right entry for ({}, {})",
                self.cname(a),
                self.skeleton.name(k)
            ))
        })
    }

    fn cell_name(&self, a: CellId) -> String {
        self.cells[a.0].name.clone()
    }

    fn cells_between(&self, s: MorId, t: MorId) -> Vec<CellId> {
        self.between.get(&(s, t)).cloned().unwrap_or_default()
    }

    fn first_cell_between(&self, s: MorId, t: MorId) -> Option<CellId> {
        self.between.get(&(s, t)).and_then(|v| v.first().copied())
    }
}

/// Writes out the tables of any enumerable category.
pub fn materialize_category<C: Category>(c: &C) -> Result<CategorySpec, KernelError> {
    let morphisms = c.morphisms();
    let mut spec = CategorySpec {
        objects: c.objects().into_iter().map(|x| c.object_name(x)).collect(),
        morphisms: morphisms
            .iter()
            .map(|&f| MorphismSpec {
                id: c.morphism_name(f),
                dom: c.object_name(c.dom(f)),
                cod: c.object_name(c.cod(f)),
            })
            .collect(),
        identity: c
            .objects()
            .into_iter()
            .map(|x| (c.object_name(x), c.morphism_name(c.identity(x))))
            .collect(),
        compose: Vec::new(),
    };
    for &f in &morphisms {
        for &g in morphisms.iter().filter(|&&g| c.dom(g) == c.cod(f)) {
            let gf = c.compose(g, f)?;
            spec.compose.push([c.morphism_name(g), c.morphism_name(f), c.morphism_name(gf)]);
        }
    }
    spec.compose.sort();
    Ok(spec)
}

/// Writes out the tables of any enumerable 2-category, e.g. to export a
/// symbolic instance as a JSON file.
pub fn materialize<D: TwoCategory>(d: &D) -> Result<TwoCategorySpec, KernelError> {
    let base = materialize_category(d)?;
    let cells = d.cells();
    let morphisms = d.morphisms();
    let mut spec = TwoCategorySpec {
        objects: base.objects,
        one_cells: base.morphisms,
        identity: base.identity,
        compose: base.compose,
        two_cells: cells
            .iter()
            .map(|&a| CellSpec {
                id: d.cell_name(a),
                src: d.morphism_name(d.src(a)),
                tgt: d.morphism_name(d.tgt(a)),
            })
            .collect(),
        identity2: morphisms
            .iter()
            .map(|&f| (d.morphism_name(f), d.cell_name(d.identity2(f))))
            .collect(),
        ..Default::default()
    };
    let mut outgoing: HashMap<D::Mor, Vec<D::Cell>> = HashMap::new();
    for &a in &cells {
        outgoing.entry(d.src(a)).or_default().push(a);
    }
    for &a in &cells {
        for &b in outgoing.get(&d.tgt(a)).map(Vec::as_slice).unwrap_or(&[]) {
            let ba = d.vcomp(b, a)?;
            spec.vcomp.push([d.cell_name(b), d.cell_name(a), d.cell_name(ba)]);
        }
        let s = d.src(a);
        for &k in &morphisms {
            if d.dom(k) == d.cod(s) {
                let ka = d.whisker_left(k, a)?;
                spec.whisker_left.push([d.morphism_name(k), d.cell_name(a), d.cell_name(ka)]);
            }
            if d.cod(k) == d.dom(s) {
                let ak = d.whisker_right(a, k)?;
                spec.whisker_right.push([d.cell_name(a), d.morphism_name(k), d.cell_name(ak)]);
            }
        }
    }
    spec.vcomp.sort();
    spec.whisker_left.sort();
    spec.whisker_right.sort();
    Ok(spec)
}
