use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ActionError;
use crate::equiv::Partition;

/// On-disk form of a finite group. `mul` holds `[g, h, gh]` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    pub mul: Vec<[String; 3]>,
    pub unit: String,
}

/// On-disk form of a group action. `act` holds `[g, x, g.x]` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: GroupSpec,
    pub carrier: Vec<String>,
    pub act: Vec<[String; 3]>,
}

/// A finite group with a full multiplication table. Element order is the
/// order in which elements were listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    index: HashMap<String, usize>,
    mul: Vec<Vec<usize>>,
    unit: usize,
    inverse: Vec<usize>,
}

fn index_names(kind: &'static str, names: &[String]) -> Result<HashMap<String, usize>, ActionError> {
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(ActionError::Schema(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(index)
}

impl FiniteGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self, ActionError> {
        let index = index_names("group element", &spec.elements)?;
        let n = spec.elements.len();
        let lookup = |s: &str| {
            index.get(s).copied().ok_or_else(|| ActionError::UnknownElement(s.to_string()))
        };
        let mut mul = vec![vec![usize::MAX; n]; n];
        for [g, h, gh] in &spec.mul {
            let (g, h, gh) = (lookup(g)?, lookup(h)?, lookup(gh)?);
            if mul[g][h] != usize::MAX && mul[g][h] != gh {
                return Err(ActionError::NotAGroup(format!(
                    "conflicting products for ({}, {})",
                    spec.elements[g], spec.elements[h]
                )));
            }
            mul[g][h] = gh;
        }
        let unit = lookup(&spec.unit)?;
        Self::from_table(spec.elements.clone(), mul, unit)
    }

    /// Builds from an index table `mul[g][h] = gh`, checking the group axioms.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>, unit: usize) -> Result<Self, ActionError> {
        let index = index_names("group element", &names)?;
        let n = names.len();
        if n == 0 {
            return Err(ActionError::NotAGroup("no elements".into()));
        }
        if unit >= n || mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(ActionError::NotAGroup("table has the wrong shape".into()));
        }
        for (g, row) in mul.iter().enumerate() {
            for (h, &gh) in row.iter().enumerate() {
                if gh >= n {
                    return Err(ActionError::NotAGroup(format!(
                        "product ({}, {}) is missing",
                        names[g], names[h]
                    )));
                }
            }
        }
        for g in 0..n {
            if mul[unit][g] != g || mul[g][unit] != g {
                return Err(ActionError::NotAGroup(format!("unit fails on {}", names[g])));
            }
            for h in 0..n {
                for k in 0..n {
                    if mul[mul[g][h]][k] != mul[g][mul[h][k]] {
                        return Err(ActionError::NotAGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            names[g], names[h], names[k]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| mul[g][h] == unit && mul[h][g] == unit).ok_or_else(|| {
                ActionError::NotAGroup(format!("{} has no inverse", names[g]))
            })?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { names, index, mul, unit, inverse })
    }

    /// `ℤ/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, mul, 0).expect("cyclic group table")
    }

    /// Permutations of `0..k` under composition `(pq)(i) = p(q(i))`, listed in
    /// lexicographic order of their images.
    pub fn symmetric(k: usize) -> Self {
        fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
            if items.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for i in 0..items.len() {
                let mut rest = items.to_vec();
                let x = rest.remove(i);
                for mut tail in permutations(&rest) {
                    tail.insert(0, x);
                    out.push(tail);
                }
            }
            out
        }
        let all = permutations(&(0..k).collect::<Vec<_>>());
        let pos: HashMap<Vec<usize>, usize> =
            all.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let names = all
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        let mul = all
            .iter()
            .map(|p| all.iter().map(|q| pos[&q.iter().map(|&i| p[i]).collect::<Vec<_>>()]).collect())
            .collect();
        Self::from_table(names, mul, 0).expect("symmetric group table")
    }

    /// Direct product, elements named `g,h` in row-major order.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let names = (0..n * m)
            .map(|i| format!("{},{}", self.names[i / m], other.names[i % m]))
            .collect();
        let mul = (0..n * m)
            .map(|a| {
                (0..n * m)
                    .map(|b| self.mul[a / m][b / m] * m + other.mul[a % m][b % m])
                    .collect()
            })
            .collect();
        Self::from_table(names, mul, self.unit * m + other.unit).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element(&self, name: &str) -> Result<usize, ActionError> {
        self.index.get(name).copied().ok_or_else(|| ActionError::UnknownElement(name.to_string()))
    }

    /// All subgroups, each as a sorted element list.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        assert!(n <= 16, "subgroup enumeration is exponential in the order");
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & (1 << self.unit) == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| mask & (1 << self.mul[a][b]) != 0));
            if closed {
                out.push(members);
            }
        }
        out
    }

    pub fn spec(&self) -> GroupSpec {
        let n = self.order();
        GroupSpec {
            elements: self.names.clone(),
            mul: (0..n)
                .flat_map(|g| {
                    (0..n).map(move |h| (g, h))
                })
                .map(|(g, h)| [self.names[g].clone(), self.names[h].clone(), self.names[self.mul[g][h]].clone()])
                .collect(),
            unit: self.names[self.unit].clone(),
        }
    }
}

/// A left action of a finite group on a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    carrier: Vec<String>,
    index: HashMap<String, usize>,
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn from_spec(spec: &ActionSpec) -> Result<Self, ActionError> {
        let group = FiniteGroup::from_spec(&spec.group)?;
        let index = index_names("carrier element", &spec.carrier)?;
        let n = spec.carrier.len();
        let mut act = vec![vec![usize::MAX; n]; group.order()];
        for [g, x, gx] in &spec.act {
            let g = group.element(g)?;
            let lookup = |s: &str| {
                index.get(s).copied().ok_or_else(|| ActionError::UnknownElement(s.to_string()))
            };
            let (x, gx) = (lookup(x)?, lookup(gx)?);
            if act[g][x] != usize::MAX && act[g][x] != gx {
                return Err(ActionError::NotAnAction(format!(
                    "conflicting images for ({}, {})",
                    group.name(g),
                    spec.carrier[x]
                )));
            }
            act[g][x] = gx;
        }
        Self::from_table(group, spec.carrier.clone(), act)
    }

    /// Builds from `act[g][x] = g.x`, checking the action laws.
    pub fn from_table(group: FiniteGroup, carrier: Vec<String>, act: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let index = index_names("carrier element", &carrier)?;
        let n = carrier.len();
        if act.len() != group.order() {
            return Err(ActionError::NotAnAction("table has the wrong shape".into()));
        }
        for (g, row) in act.iter().enumerate() {
            if row.len() != n {
                return Err(ActionError::NotAnAction("table has the wrong shape".into()));
            }
            for (x, &gx) in row.iter().enumerate() {
                if gx >= n {
                    return Err(ActionError::NotAnAction(format!(
                        "{}.{} is missing",
                        group.name(g),
                        carrier[x]
                    )));
                }
            }
        }
        for x in 0..n {
            if act[group.unit()][x] != x {
                return Err(ActionError::NotAnAction(format!("unit moves {}", carrier[x])));
            }
            for g in 0..group.order() {
                for h in 0..group.order() {
                    if act[g][act[h][x]] != act[group.mul(g, h)][x] {
                        return Err(ActionError::NotAnAction(format!(
                            "{}.({}.{}) ≠ ({}{}).{}",
                            group.name(g),
                            group.name(h),
                            carrier[x],
                            group.name(g),
                            group.name(h),
                            carrier[x]
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { group, carrier, index, act })
    }

    /// The action of `G` on the left cosets of each listed subgroup, as one
    /// disjoint union. Carrier elements are named `H{i}:{least member}`.
    pub fn on_cosets(group: &FiniteGroup, subgroups: &[Vec<usize>]) -> Result<Self, ActionError> {
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut names = Vec::new();
        for (i, h) in subgroups.iter().enumerate() {
            let mut seen: Vec<Vec<usize>> = Vec::new();
            for g in 0..group.order() {
                let mut coset: Vec<usize> = h.iter().map(|&x| group.mul(g, x)).collect();
                coset.sort();
                if !seen.contains(&coset) {
                    names.push(format!("H{i}:{}", group.name(coset[0])));
                    seen.push(coset);
                }
            }
            cosets.extend(seen);
        }
        let offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::new();
            for h in subgroups {
                out.push(acc);
                acc += group.order() / h.len();
            }
            out
        };
        let block = |idx: usize| offsets.iter().rposition(|&o| o <= idx).unwrap_or(0);
        let act = (0..group.order())
            .map(|g| {
                (0..cosets.len())
                    .map(|x| {
                        let mut image: Vec<usize> = cosets[x].iter().map(|&y| group.mul(g, y)).collect();
                        image.sort();
                        let b = block(x);
                        (0..cosets.len())
                            .find(|&y| block(y) == b && cosets[y] == image)
                            .expect("cosets are permuted")
                    })
                    .collect()
            })
            .collect();
        Self::from_table(group.clone(), names, act)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn carrier_len(&self) -> usize {
        self.carrier.len()
    }

    pub fn element(&self, name: &str) -> Result<usize, ActionError> {
        self.index.get(name).copied().ok_or_else(|| ActionError::UnknownElement(name.to_string()))
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    /// Least group element (in listed order) carrying `f` to `f_tilde`.
    pub fn orbit_equivalent(&self, f: usize, f_tilde: usize) -> Option<usize> {
        (0..self.group.order()).find(|&g| self.act[g][f] == f_tilde)
    }

    pub fn orbit_equivalent_named(&self, f: &str, f_tilde: &str) -> Result<Option<&str>, ActionError> {
        let (f, ft) = (self.element(f)?, self.element(f_tilde)?);
        Ok(self.orbit_equivalent(f, ft).map(|g| self.group.name(g)))
    }

    pub fn orbits(&self) -> Partition<usize> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.carrier.len()];
        for x in 0..self.carrier.len() {
            if assigned[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.act[g][x]).collect();
            orbit.sort();
            orbit.dedup();
            for &y in &orbit {
                assigned[y] = true;
            }
            blocks.push(orbit);
        }
        Partition::from_blocks(blocks)
    }

    pub fn spec(&self) -> ActionSpec {
        let mut act = Vec::new();
        for g in 0..self.group.order() {
            for x in 0..self.carrier.len() {
                act.push([
                    self.group.name(g).to_string(),
                    self.carrier[x].clone(),
                    self.carrier[self.act[g][x]].clone(),
                ]);
            }
        }
        ActionSpec { group: self.group.spec(), carrier: self.carrier.clone(), act }
    }
}
