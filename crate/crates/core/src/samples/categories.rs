use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::equiv::EquivSpec;
use crate::kernel::{CategorySpec, CellSpec, MapSpec, MorphismSpec, TwoCategorySpec};

/// A function between two small sets, used as a 1-cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Func {
    dom: usize,
    cod: usize,
    table: Vec<u8>,
}

/// Size bounds for [`RandomTwoCategory`] and [`random_equiv_spec`].
#[derive(Clone, Copy, Debug)]
pub struct InstanceBounds {
    pub c_objects: usize,
    pub c_morphisms: usize,
    pub d_one_cells: usize,
    pub d_two_cells: usize,
}

impl Default for InstanceBounds {
    fn default() -> Self {
        InstanceBounds { c_objects: 3, c_morphisms: 8, d_one_cells: 12, d_two_cells: 24 }
    }
}

/// A strict 2-category of functions between sets of size one or two.
///
/// 2-cells `f ⇒ g` exist for `(f, g)` in a preorder on parallel functions
/// that is stable under pre- and post-composition, one per label in `ℤ/k`.
/// Vertical composition adds labels; whiskering keeps them.
#[derive(Clone, Debug)]
pub struct RandomTwoCategory {
    sizes: Vec<usize>,
    funcs: Vec<Func>,
    relation: BTreeSet<(usize, usize)>,
    labels: usize,
}

fn object_name(i: usize) -> String {
    format!("X{i}")
}

impl Func {
    fn name(&self) -> String {
        let t: String = self.table.iter().map(|d| char::from(b'0' + d)).collect();
        format!("{}>{}:{t}", object_name(self.dom), object_name(self.cod))
    }

    fn after(&self, f: &Func) -> Func {
        Func { dom: f.dom, cod: self.cod, table: f.table.iter().map(|&i| self.table[i as usize]).collect() }
    }
}

impl RandomTwoCategory {
    pub fn generate<R: Rng>(rng: &mut R, bounds: InstanceBounds) -> Self {
        loop {
            if let Some(d) = Self::attempt(rng, bounds) {
                return d;
            }
        }
    }

    fn attempt<R: Rng>(rng: &mut R, bounds: InstanceBounds) -> Option<Self> {
        let n = rng.gen_range(1..=bounds.c_objects.max(1));
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let mut set: BTreeSet<Func> = (0..n)
            .map(|i| Func { dom: i, cod: i, table: (0..sizes[i] as u8).collect() })
            .collect();
        for _ in 0..rng.gen_range(1..=4) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let table = (0..sizes[a]).map(|_| rng.gen_range(0..sizes[b]) as u8).collect();
            set.insert(Func { dom: a, cod: b, table });
        }
        loop {
            let current: Vec<Func> = set.iter().cloned().collect();
            let before = set.len();
            for f in &current {
                for g in current.iter().filter(|g| g.dom == f.cod) {
                    set.insert(g.after(f));
                }
            }
            if set.len() > bounds.d_one_cells {
                return None;
            }
            if set.len() == before {
                break;
            }
        }
        let funcs: Vec<Func> = set.into_iter().collect();
        let mut d = RandomTwoCategory { sizes, funcs, relation: BTreeSet::new(), labels: rng.gen_range(1..=2) };
        for i in 0..d.funcs.len() {
            d.relation.insert((i, i));
        }
        let extra = rng.gen_range(0..=3);
        d.add_random_pairs(rng, extra);
        (d.cell_count() <= bounds.d_two_cells).then_some(d)
    }

    fn cell_count(&self) -> usize {
        self.relation.len() * self.labels
    }

    fn index(&self, f: &Func) -> usize {
        self.funcs.binary_search(f).expect("closed under composition")
    }

    fn add_random_pairs<R: Rng>(&mut self, rng: &mut R, count: usize) {
        let parallel: Vec<(usize, usize)> = (0..self.funcs.len())
            .flat_map(|i| (0..self.funcs.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                i != j && self.funcs[i].dom == self.funcs[j].dom && self.funcs[i].cod == self.funcs[j].cod
            })
            .collect();
        for _ in 0..count {
            if let Some(&p) = parallel.choose(rng) {
                self.relation.insert(p);
            }
        }
        self.close();
    }

    fn close(&mut self) {
        loop {
            let pairs: Vec<(usize, usize)> = self.relation.iter().copied().collect();
            let before = self.relation.len();
            for &(f, g) in &pairs {
                for &(g2, h) in &pairs {
                    if g == g2 {
                        self.relation.insert((f, h));
                    }
                }
                for k in 0..self.funcs.len() {
                    let kf = &self.funcs[k];
                    if kf.dom == self.funcs[f].cod {
                        let a = self.index(&kf.after(&self.funcs[f]));
                        let b = self.index(&kf.after(&self.funcs[g]));
                        self.relation.insert((a, b));
                    }
                    if kf.cod == self.funcs[f].dom {
                        let a = self.index(&self.funcs[f].after(kf));
                        let b = self.index(&self.funcs[g].after(kf));
                        self.relation.insert((a, b));
                    }
                }
            }
            if self.relation.len() == before {
                break;
            }
        }
    }

    /// The same 1-cells with strictly more (or equal) 2-cells.
    pub fn with_more_cells<R: Rng>(&self, rng: &mut R, pairs: usize) -> Self {
        let mut d = self.clone();
        d.add_random_pairs(rng, pairs);
        d
    }

    pub fn object_count(&self) -> usize {
        self.sizes.len()
    }

    /// 1-cell identifiers grouped by `(dom, cod)` object index.
    fn hom_names(&self) -> BTreeMap<(usize, usize), Vec<String>> {
        let mut out: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for f in &self.funcs {
            out.entry((f.dom, f.cod)).or_default().push(f.name());
        }
        out
    }

    fn compose_name(&self, g: &str, f: &str) -> String {
        let find = |n: &str| self.funcs.iter().find(|x| x.name() == n).expect("known 1-cell");
        find(g).after(find(f)).name()
    }

    pub fn spec(&self) -> TwoCategorySpec {
        let names: Vec<String> = self.funcs.iter().map(Func::name).collect();
        let cell = |f: usize, g: usize, a: usize| format!("{}=>{}#{a}", names[f], names[g]);
        let mut spec = TwoCategorySpec {
            objects: (0..self.sizes.len()).map(object_name).collect(),
            one_cells: self
                .funcs
                .iter()
                .map(|f| MorphismSpec { id: f.name(), dom: object_name(f.dom), cod: object_name(f.cod) })
                .collect(),
            identity: (0..self.sizes.len())
                .map(|i| {
                    let id = Func { dom: i, cod: i, table: (0..self.sizes[i] as u8).collect() };
                    (object_name(i), id.name())
                })
                .collect(),
            ..Default::default()
        };
        for (i, f) in self.funcs.iter().enumerate() {
            for (j, g) in self.funcs.iter().enumerate() {
                if g.dom == f.cod {
                    spec.compose.push([names[j].clone(), names[i].clone(), g.after(f).name()]);
                }
            }
            spec.identity2.insert(names[i].clone(), cell(i, i, 0));
        }
        let k = self.labels;
        for &(f, g) in &self.relation {
            for a in 0..k {
                spec.two_cells.push(CellSpec { id: cell(f, g, a), src: names[f].clone(), tgt: names[g].clone() });
                for &(g2, h) in self.relation.range((g, 0)..(g + 1, 0)) {
                    debug_assert_eq!(g2, g);
                    for b in 0..k {
                        spec.vcomp.push([cell(g, h, b), cell(f, g, a), cell(f, h, (a + b) % k)]);
                    }
                }
                for (x, kf) in self.funcs.iter().enumerate() {
                    if kf.dom == self.funcs[f].cod {
                        let (l, r) = (self.index(&kf.after(&self.funcs[f])), self.index(&kf.after(&self.funcs[g])));
                        spec.whisker_left.push([names[x].clone(), cell(f, g, a), cell(l, r, a)]);
                    }
                    if kf.cod == self.funcs[f].dom {
                        let (l, r) = (self.index(&self.funcs[f].after(kf)), self.index(&self.funcs[g].after(kf)));
                        spec.whisker_right.push([cell(f, g, a), names[x].clone(), cell(l, r, a)]);
                    }
                }
            }
        }
        spec
    }
}

/// A random instance: a lawful `D` from [`RandomTwoCategory`] and a `C` that
/// is either a free category on a small DAG with random functors, or a
/// subcategory of `D` with both functors the inclusion. `σ` is random.
pub fn random_equiv_spec<R: Rng>(rng: &mut R, bounds: InstanceBounds) -> (RandomTwoCategory, EquivSpec) {
    let d = RandomTwoCategory::generate(rng, bounds);
    let spec = if rng.gen_bool(0.5) { over_dag(rng, &d, bounds) } else { over_subcategory(rng, &d, bounds) };
    (d, spec)
}

/// Same `C`, `σ`, `τ₁`, `τ₂` as `spec`, over a 2-category with more cells.
pub fn with_d(spec: &EquivSpec, d: &RandomTwoCategory) -> EquivSpec {
    EquivSpec { d: d.spec(), ..spec.clone() }
}

fn pick_sigma<R: Rng>(
    rng: &mut R,
    homs: &BTreeMap<(usize, usize), Vec<String>>,
    boundary: &[(String, usize, usize)],
    preferred: impl Fn(&str) -> Option<String>,
) -> BTreeMap<String, String> {
    boundary
        .iter()
        .map(|(m, a, b)| {
            let hom = &homs[&(*a, *b)];
            let image = match preferred(m) {
                Some(p) if rng.gen_bool(0.5) => p,
                _ => hom.choose(rng).expect("nonempty hom").clone(),
            };
            (m.clone(), image)
        })
        .collect()
}

fn over_dag<R: Rng>(rng: &mut R, d: &RandomTwoCategory, bounds: InstanceBounds) -> EquivSpec {
    let homs = d.hom_names();
    let n = rng.gen_range(1..=bounds.c_objects.max(1));
    let names: Vec<String> = (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect();
    let obj: Vec<usize> = (0..n).map(|_| rng.gen_range(0..d.object_count())).collect();
    // (name, dom, cod, edge list in application order)
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let paths_of = |edges: &[(usize, usize)]| -> Vec<Vec<usize>> {
        let mut paths: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = edges[*p.last().unwrap()].1;
                for (e, &(a, _)) in edges.iter().enumerate() {
                    if a == end {
                        let mut q = p.clone();
                        q.push(e);
                        next.push(q);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        paths
    };
    for _ in 0..rng.gen_range(0..=5) {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        if !homs.contains_key(&(obj[a], obj[b])) {
            continue;
        }
        edges.push((a, b));
        if n + paths_of(&edges).len() > bounds.c_morphisms {
            edges.pop();
        }
    }
    let paths = paths_of(&edges);
    let edge_name = |e: usize| format!("e{e}");
    let path_name = |p: &[usize]| p.iter().rev().map(|&e| edge_name(e)).collect::<Vec<_>>().join("*");
    let id_name = |x: usize| format!("id_{}", names[x]);
    let mut morphisms: Vec<(String, usize, usize, Vec<usize>)> =
        (0..n).map(|x| (id_name(x), x, x, Vec::new())).collect();
    for p in &paths {
        morphisms.push((path_name(p), edges[p[0]].0, edges[*p.last().unwrap()].1, p.clone()));
    }
    let mut c = CategorySpec {
        objects: names.clone(),
        morphisms: morphisms
            .iter()
            .map(|(m, a, b, _)| MorphismSpec { id: m.clone(), dom: names[*a].clone(), cod: names[*b].clone() })
            .collect(),
        identity: (0..n).map(|x| (names[x].clone(), id_name(x))).collect(),
        compose: Vec::new(),
    };
    for (f, a, b, p) in &morphisms {
        for (g, _, _, q) in morphisms.iter().filter(|m| m.1 == *b) {
            let mut pq = p.clone();
            pq.extend(q);
            let gf = if pq.is_empty() { id_name(*a) } else { path_name(&pq) };
            c.compose.push([g.clone(), f.clone(), gf]);
        }
    }
    let object_map: BTreeMap<String, String> = (0..n).map(|x| (names[x].clone(), object_name(obj[x]))).collect();
    let full = d.spec();
    let identity_of = |x: usize| full.identity[&object_name(obj[x])].clone();
    let functor = |rng: &mut R| -> MapSpec {
        let images: Vec<String> = edges
            .iter()
            .map(|&(a, b)| homs[&(obj[a], obj[b])].choose(rng).expect("edge hom").clone())
            .collect();
        let morphisms = morphisms
            .iter()
            .map(|(m, a, _, p)| {
                let image = p.iter().fold(identity_of(*a), |acc, &e| d.compose_name(&images[e], &acc));
                (m.clone(), image)
            })
            .collect();
        MapSpec { objects: object_map.clone(), morphisms }
    };
    let tau1 = functor(rng);
    let tau2 = functor(rng);
    let boundary: Vec<(String, usize, usize)> =
        morphisms.iter().map(|(m, a, b, _)| (m.clone(), obj[*a], obj[*b])).collect();
    let sigma = MapSpec {
        objects: object_map.clone(),
        morphisms: pick_sigma(rng, &homs, &boundary, |m| Some(tau1.morphisms[m].clone())),
    };
    EquivSpec { c, d: full, sigma, tau1, tau2 }
}

fn over_subcategory<R: Rng>(rng: &mut R, d: &RandomTwoCategory, bounds: InstanceBounds) -> EquivSpec {
    let homs = d.hom_names();
    let full = d.spec();
    loop {
        let objects: Vec<usize> = (0..d.object_count()).collect();
        let mut chosen: BTreeSet<String> = objects.iter().map(|&x| full.identity[&object_name(x)].clone()).collect();
        for _ in 0..rng.gen_range(0..=3) {
            chosen.insert(full.one_cells.choose(rng).expect("nonempty").id.clone());
        }
        loop {
            let current: Vec<String> = chosen.iter().cloned().collect();
            let before = chosen.len();
            for [g, f, gf] in &full.compose {
                if current.contains(g) && current.contains(f) {
                    chosen.insert(gf.clone());
                }
            }
            if chosen.len() == before {
                break;
            }
        }
        if chosen.len() > bounds.c_morphisms {
            continue;
        }
        let cells: Vec<&MorphismSpec> = full.one_cells.iter().filter(|m| chosen.contains(&m.id)).collect();
        let c = CategorySpec {
            objects: full.objects.clone(),
            morphisms: cells.iter().map(|&m| m.clone()).collect(),
            identity: full.identity.clone(),
            compose: full
                .compose
                .iter()
                .filter(|[g, f, _]| chosen.contains(g) && chosen.contains(f))
                .cloned()
                .collect(),
        };
        let inclusion = MapSpec {
            objects: full.objects.iter().map(|x| (x.clone(), x.clone())).collect(),
            morphisms: chosen.iter().map(|m| (m.clone(), m.clone())).collect(),
        };
        let parse = |o: &str| o[1..].parse::<usize>().expect("object name");
        let boundary: Vec<(String, usize, usize)> =
            cells.iter().map(|m| (m.id.clone(), parse(&m.dom), parse(&m.cod))).collect();
        let sigma = MapSpec {
            objects: inclusion.objects.clone(),
            morphisms: pick_sigma(rng, &homs, &boundary, |m| Some(m.to_string())),
        };
        return EquivSpec { c, d: full, sigma, tau1: inclusion.clone(), tau2: inclusion };
    }
}
