use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    check_interchange, compose_cells, is_two_cell, CentralCell, FiniteAction, FiniteObject, Mode,
    MonotoneMap, PreordError, PreordObject, Scalar,
};

/// Rationals on disk: an integer or a string such as `"3/2"`.
pub(crate) mod scalar {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Scalar;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
        Float(f64),
    }

    pub fn parse(s: &str) -> Result<Scalar, String> {
        s.trim().parse::<Scalar>().map_err(|e| format!("bad rational `{s}`: {e}"))
    }

    pub fn serialize<S: Serializer>(q: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Scalar::from_integer(n)),
            Raw::Text(t) => parse(&t).map_err(serde::de::Error::custom),
            Raw::Float(x) => Err(serde::de::Error::custom(format!(
                "{x} is not exact; write rationals as integers or strings like \"3/2\""
            ))),
        }
    }

    #[derive(Deserialize)]
    #[serde(transparent)]
    pub struct Wrapped(#[serde(with = "self")] pub Scalar);
}

type Q = scalar::Wrapped;

fn unwrap_rows(rows: &[Vec<Q>]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|q| q.0).collect()).collect()
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectEntry {
    Numeric {
        dim: usize,
        sample: Vec<Vec<Q>>,
    },
    /// `leq` pairs `[x, y]` meaning `x ≤ y` generate the preorder. `action`
    /// maps generating scalars to tables; omit it for the trivial action.
    Finite {
        carrier: Vec<String>,
        #[serde(default)]
        leq: Vec<[String; 2]>,
        #[serde(default)]
        action: BTreeMap<String, BTreeMap<String, String>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub dom: String,
    pub cod: String,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Q>>>,
    #[serde(default)]
    pub table: Option<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub value: Q,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ComposeMode {
    Vertical,
    Horizontal,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeEntry {
    pub mode: ComposeMode,
    pub second: String,
    pub first: String,
}

/// Input of the `preord-check` verb.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreordFile {
    pub objects: BTreeMap<String, ObjectEntry>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapEntry>,
    #[serde(default)]
    pub cells: BTreeMap<String, CellEntry>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
    /// `[c, c2, d, d2]` with `c: f ⇒ g`, `c2: g ⇒ h`, `d: i ⇒ j`, `d2: j ⇒ k`.
    #[serde(default)]
    pub interchange: Vec<[String; 4]>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ItemStatus {
    pub name: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MapStatus {
    pub name: String,
    pub valid: bool,
    pub identity_cell: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CellStatus {
    pub name: String,
    pub value: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ComposeStatus {
    pub mode: ComposeMode,
    pub second: String,
    pub first: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InterchangeStatus {
    pub cells: [String; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertical_first: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizontal_first: Option<String>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Everything `preord-check` evaluates, in input order.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PreordReport {
    pub objects: Vec<ItemStatus>,
    pub maps: Vec<MapStatus>,
    pub cells: Vec<CellStatus>,
    pub compose: Vec<ComposeStatus>,
    pub interchange: Vec<InterchangeStatus>,
    pub ok: bool,
}

fn build_object(entry: &ObjectEntry) -> Result<PreordObject, PreordError> {
    match entry {
        ObjectEntry::Numeric { dim, sample } => PreordObject::numeric(*dim, unwrap_rows(sample)),
        ObjectEntry::Finite { carrier, leq, action } => {
            let n = carrier.len();
            let index = |s: &str| {
                carrier
                    .iter()
                    .position(|c| c == s)
                    .ok_or_else(|| PreordError::Schema(format!("unknown carrier element `{s}`")))
            };
            let mut rel = vec![vec![false; n]; n];
            for (x, row) in rel.iter_mut().enumerate() {
                row[x] = true;
            }
            for [a, b] in leq {
                rel[index(a)?][index(b)?] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][k] && rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            let action = if action.is_empty() {
                FiniteAction::Trivial
            } else {
                let mut gens = BTreeMap::new();
                for (q, table) in action {
                    let q = scalar::parse(q).map_err(PreordError::Schema)?;
                    let mut t = Vec::with_capacity(n);
                    for x in carrier {
                        let y = table
                            .get(x)
                            .ok_or_else(|| PreordError::Schema(format!("action of {q} misses `{x}`")))?;
                        t.push(index(y)?);
                    }
                    gens.insert(q, t);
                }
                FiniteAction::Generated(gens)
            };
            Ok(PreordObject::Finite(FiniteObject::new(carrier.clone(), rel, action)?))
        }
    }
}

fn build_map(entry: &MapEntry, objects: &BTreeMap<String, Result<PreordObject, String>>) -> Result<MonotoneMap, PreordError> {
    let get = |name: &str| match objects.get(name) {
        None => Err(PreordError::Schema(format!("unknown object `{name}`"))),
        Some(Err(_)) => Err(PreordError::InvalidMap(format!("object `{name}` is invalid"))),
        Some(Ok(o)) => Ok(o),
    };
    let (dom, cod) = (get(&entry.dom)?, get(&entry.cod)?);
    match (&entry.matrix, &entry.table) {
        (Some(m), None) => MonotoneMap::matrix(dom, cod, unwrap_rows(m)),
        (None, Some(t)) => {
            let (PreordObject::Finite(a), PreordObject::Finite(b)) = (dom, cod) else {
                return Err(PreordError::InvalidMap("table maps need finite objects".into()));
            };
            let mut out = Vec::new();
            for x in a.carrier() {
                let y = t.get(x).ok_or_else(|| PreordError::Schema(format!("table misses `{x}`")))?;
                let j = b
                    .carrier()
                    .iter()
                    .position(|c| c == y)
                    .ok_or_else(|| PreordError::Schema(format!("unknown carrier element `{y}`")))?;
                out.push(j);
            }
            MonotoneMap::table(dom, cod, out)
        }
        _ => Err(PreordError::Schema("a map needs exactly one of `matrix` and `table`".into())),
    }
}

fn is_schema(e: &PreordError) -> bool {
    matches!(e, PreordError::Schema(_))
}

/// Evaluates every item of a `preord-check` file. Unknown names and
/// malformed values are errors; failing checks are recorded in the report.
pub fn check_file(file: &PreordFile) -> Result<PreordReport, PreordError> {
    let mut objects: BTreeMap<String, Result<PreordObject, String>> = BTreeMap::new();
    let mut report = PreordReport {
        objects: Vec::new(),
        maps: Vec::new(),
        cells: Vec::new(),
        compose: Vec::new(),
        interchange: Vec::new(),
        ok: true,
    };
    for (name, entry) in &file.objects {
        let built = build_object(entry);
        if let Err(e) = &built {
            if is_schema(e) {
                return Err(e.clone());
            }
        }
        report.objects.push(ItemStatus {
            name: name.clone(),
            valid: built.is_ok(),
            error: built.as_ref().err().map(|e| e.to_string()),
        });
        objects.insert(name.clone(), built.map_err(|e| e.to_string()));
    }
    let mut maps: BTreeMap<String, Result<MonotoneMap, String>> = BTreeMap::new();
    for (name, entry) in &file.maps {
        let built = build_map(entry, &objects);
        if let Err(e) = &built {
            if is_schema(e) {
                return Err(e.clone());
            }
        }
        let identity_cell = built.as_ref().map(|f| is_two_cell(Scalar::from_integer(1), f, f) == Ok(true)).unwrap_or(false);
        report.maps.push(MapStatus {
            name: name.clone(),
            valid: built.is_ok(),
            identity_cell,
            error: built.as_ref().err().map(|e| e.to_string()),
        });
        maps.insert(name.clone(), built.map_err(|e| e.to_string()));
    }
    let mut cells: BTreeMap<String, Result<CentralCell, String>> = BTreeMap::new();
    for (name, entry) in &file.cells {
        let get = |m: &str| match maps.get(m) {
            None => Err(PreordError::Schema(format!("unknown map `{m}`"))),
            Some(Err(_)) => Err(PreordError::InvalidCell(format!("map `{m}` is invalid"))),
            Some(Ok(f)) => Ok(f.clone()),
        };
        let built = get(&entry.src).and_then(|f| get(&entry.tgt).and_then(|g| CentralCell::new(entry.value.0, f, g)));
        if let Err(e) = &built {
            if is_schema(e) {
                return Err(e.clone());
            }
        }
        report.cells.push(CellStatus {
            name: name.clone(),
            value: entry.value.0.to_string(),
            valid: built.is_ok(),
            error: built.as_ref().err().map(|e| e.to_string()),
        });
        cells.insert(name.clone(), built.map_err(|e| e.to_string()));
    }
    let cell = |n: &str| match cells.get(n) {
        None => Err(PreordError::Schema(format!("unknown cell `{n}`"))),
        Some(Err(_)) => Err(PreordError::InvalidCell(format!("cell `{n}` is invalid"))),
        Some(Ok(c)) => Ok(c),
    };
    for entry in &file.compose {
        let mode = match entry.mode {
            ComposeMode::Vertical => Mode::Vertical,
            ComposeMode::Horizontal => Mode::Horizontal,
        };
        let out = cell(&entry.second).and_then(|b| cell(&entry.first).and_then(|a| compose_cells(mode, b, a)));
        if let Err(e) = &out {
            if is_schema(e) {
                return Err(e.clone());
            }
        }
        report.compose.push(ComposeStatus {
            mode: entry.mode,
            second: entry.second.clone(),
            first: entry.first.clone(),
            value: out.as_ref().ok().map(|c| c.value().to_string()),
            valid: out.is_ok(),
            error: out.as_ref().err().map(|e| e.to_string()),
        });
    }
    for names in &file.interchange {
        let out = (|| {
            let [c, c2, d, d2] = names;
            check_interchange(cell(c)?, cell(c2)?, cell(d)?, cell(d2)?)
        })();
        if let Err(e) = &out {
            if is_schema(e) {
                return Err(e.clone());
            }
        }
        report.interchange.push(InterchangeStatus {
            cells: names.clone(),
            vertical_first: out.as_ref().ok().map(|i| i.vertical_first.to_string()),
            horizontal_first: out.as_ref().ok().map(|i| i.horizontal_first.to_string()),
            holds: out.as_ref().map(|i| i.holds).unwrap_or(false),
            error: out.as_ref().err().map(|e| e.to_string()),
        });
    }
    report.ok = report.objects.iter().all(|o| o.valid)
        && report.maps.iter().all(|m| m.valid && m.identity_cell)
        && report.cells.iter().all(|c| c.valid)
        && report.compose.iter().all(|c| c.valid)
        && report.interchange.iter().all(|i| i.holds);
    Ok(report)
}
