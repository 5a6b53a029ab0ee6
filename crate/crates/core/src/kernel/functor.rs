use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Category, KernelError};

/// On-disk form of an object/morphism assignment, by identifier.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

/// A total assignment of objects and morphisms of `C` to objects and
/// morphisms of `D` that respects domains and codomains.
#[derive(Clone, Debug)]
pub struct ObjectMorphismMap<C: Category, D: Category> {
    objects: HashMap<C::Obj, D::Obj>,
    morphisms: HashMap<C::Mor, D::Mor>,
}

impl<C: Category, D: Category> ObjectMorphismMap<C, D> {
    pub fn new<FO, FM>(c: &C, d: &D, on_objects: FO, on_morphisms: FM) -> Result<Self, KernelError>
    where
        FO: Fn(C::Obj) -> D::Obj,
        FM: Fn(C::Mor) -> D::Mor,
    {
        let objects: HashMap<_, _> = c.objects().into_iter().map(|x| (x, on_objects(x))).collect();
        let morphisms: HashMap<_, _> =
            c.morphisms().into_iter().map(|f| (f, on_morphisms(f))).collect();
        for (&f, &g) in &morphisms {
            if objects[&c.dom(f)] != d.dom(g) || objects[&c.cod(f)] != d.cod(g) {
                return Err(KernelError::BoundaryMismatch(format!(
                    "{} is sent to {} with incompatible boundary",
                    c.morphism_name(f),
                    d.morphism_name(g)
                )));
            }
        }
        Ok(ObjectMorphismMap { objects, morphisms })
    }

    /// Resolves a [`MapSpec`] by identifier.
    pub fn from_spec(c: &C, d: &D, spec: &MapSpec) -> Result<Self, KernelError> {
        let d_objects: HashMap<String, D::Obj> =
            d.objects().into_iter().map(|x| (d.object_name(x), x)).collect();
        let d_morphisms: HashMap<String, D::Mor> =
            d.morphisms().into_iter().map(|f| (d.morphism_name(f), f)).collect();
        let mut objects = HashMap::new();
        for x in c.objects() {
            let name = c.object_name(x);
            let target = spec
                .objects
                .get(&name)
                .ok_or_else(|| KernelError::Schema(format!("object `{name}` is not mapped")))?;
            let y = d_objects.get(target).ok_or_else(|| KernelError::UnknownId {
                kind: "object",
                id: target.clone(),
            })?;
            objects.insert(x, *y);
        }
        let mut morphisms = HashMap::new();
        for f in c.morphisms() {
            let name = c.morphism_name(f);
            let target = spec
                .morphisms
                .get(&name)
                .ok_or_else(|| KernelError::Schema(format!("morphism `{name}` is not mapped")))?;
            let g = d_morphisms.get(target).ok_or_else(|| KernelError::UnknownId {
                kind: "1-cell",
                id: target.clone(),
            })?;
            morphisms.insert(f, *g);
        }
        let c_objects: Vec<String> = c.objects().into_iter().map(|x| c.object_name(x)).collect();
        let c_morphisms: Vec<String> =
            c.morphisms().into_iter().map(|f| c.morphism_name(f)).collect();
        for key in spec.objects.keys() {
            if !c_objects.contains(key) {
                return Err(KernelError::UnknownId { kind: "object", id: key.clone() });
            }
        }
        for key in spec.morphisms.keys() {
            if !c_morphisms.contains(key) {
                return Err(KernelError::UnknownId { kind: "morphism", id: key.clone() });
            }
        }
        Self::new(c, d, |x| objects[&x], |f| morphisms[&f])
    }

    pub fn object(&self, x: C::Obj) -> D::Obj {
        self.objects[&x]
    }

    pub fn morphism(&self, f: C::Mor) -> D::Mor {
        self.morphisms[&f]
    }

    pub fn same_objects(&self, other: &Self) -> bool {
        self.objects == other.objects
    }

    /// Finds a composable pair on which the assignment is not functorial.
    pub fn functoriality_defect(&self, c: &C, d: &D) -> Option<String> {
        for x in c.objects() {
            if self.morphism(c.identity(x)) != d.identity(self.object(x)) {
                return Some(format!("identity of {} is not preserved", c.object_name(x)));
            }
        }
        let morphisms = c.morphisms();
        for &f in &morphisms {
            for &g in morphisms.iter().filter(|&&g| c.dom(g) == c.cod(f)) {
                let gf = match c.compose(g, f) {
                    Ok(gf) => gf,
                    Err(e) => return Some(e.to_string()),
                };
                match d.compose(self.morphism(g), self.morphism(f)) {
                    Ok(image) if image == self.morphism(gf) => {}
                    Ok(image) => {
                        return Some(format!(
                            "F({} ∘ {}) = {} but F({}) ∘ F({}) = {}",
                            c.morphism_name(g),
                            c.morphism_name(f),
                            d.morphism_name(self.morphism(gf)),
                            c.morphism_name(g),
                            c.morphism_name(f),
                            d.morphism_name(image)
                        ))
                    }
                    Err(e) => return Some(e.to_string()),
                }
            }
        }
        None
    }
}

/// A functor, checked exhaustively for preservation of identities and
/// composition.
#[derive(Clone, Debug)]
pub struct Functor<C: Category, D: Category>(ObjectMorphismMap<C, D>);

impl<C: Category, D: Category> Functor<C, D> {
    pub fn new(c: &C, d: &D, map: ObjectMorphismMap<C, D>) -> Result<Self, KernelError> {
        match map.functoriality_defect(c, d) {
            None => Ok(Functor(map)),
            Some(defect) => Err(KernelError::NotAFunctor(defect)),
        }
    }

    pub fn from_spec(c: &C, d: &D, spec: &MapSpec) -> Result<Self, KernelError> {
        Self::new(c, d, ObjectMorphismMap::from_spec(c, d, spec)?)
    }

    pub fn map(&self) -> &ObjectMorphismMap<C, D> {
        &self.0
    }

    pub fn object(&self, x: C::Obj) -> D::Obj {
        self.0.object(x)
    }

    pub fn morphism(&self, f: C::Mor) -> D::Mor {
        self.0.morphism(f)
    }
}

impl<C> Functor<C, C>
where
    C: Category,
{
    pub fn identity(c: &C) -> Self {
        Functor(ObjectMorphismMap {
            objects: c.objects().into_iter().map(|x| (x, x)).collect(),
            morphisms: c.morphisms().into_iter().map(|f| (f, f)).collect(),
        })
    }
}

/// A boundary-respecting assignment with no functoriality requirement.
#[derive(Clone, Debug)]
pub struct MorphismFunction<C: Category, D: Category>(ObjectMorphismMap<C, D>);

impl<C: Category, D: Category> MorphismFunction<C, D> {
    pub fn new(map: ObjectMorphismMap<C, D>) -> Self {
        MorphismFunction(map)
    }

    pub fn from_spec(c: &C, d: &D, spec: &MapSpec) -> Result<Self, KernelError> {
        Ok(MorphismFunction(ObjectMorphismMap::from_spec(c, d, spec)?))
    }

    pub fn map(&self) -> &ObjectMorphismMap<C, D> {
        &self.0
    }

    pub fn object(&self, x: C::Obj) -> D::Obj {
        self.0.object(x)
    }

    pub fn morphism(&self, f: C::Mor) -> D::Mor {
        self.0.morphism(f)
    }
}

impl<C: Category> MorphismFunction<C, C> {
    pub fn identity(c: &C) -> Self {
        MorphismFunction(Functor::identity(c).0)
    }
}
