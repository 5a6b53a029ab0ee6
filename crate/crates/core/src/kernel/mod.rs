//! Finite categories and strict 2-categories.
//!
//! Everything downstream is written against the [`Category`] and
//! [`TwoCategory`] traits. The table-driven implementations
//! ([`FiniteCategory`], [`Finite2Category`]) load from JSON instance files;
//! other modules provide symbolic implementations (see
//! [`crate::action::DeloopSlice`]) that enumerate the same data lazily.
//!
//! Enumeration order matters: every `Vec` returned by these traits is in the
//! instance's canonical order, and witness search returns the first witness
//! in that order. For table instances the canonical order is identifier order.

mod functor;
mod table;
mod validate;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use functor::{Functor, MapSpec, MorphismFunction, ObjectMorphismMap};
pub use table::{
    materialize, materialize_category, CategorySpec, CellSpec, Finite2Category, FiniteCategory,
    MorphismSpec, TwoCategorySpec,
};
pub use validate::{validate_category, validate_two_category, Axiom, ValidationReport, Violation};

/// Index of an object in a table-driven instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub(crate) usize);

/// Index of a morphism (or 1-cell) in a table-driven instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub(crate) usize);

/// Index of a 2-cell in a table-driven instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub(crate) usize);

impl ObjId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl CellId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("unknown {kind} id `{id}`")]
    UnknownId { kind: &'static str, id: String },
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("malformed instance: {0}")]
    Schema(String),
    #[error("interchange violated: {0}")]
    InterchangeViolation(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("instance is not lawful ({} violation(s)); first: {}", .0.violations.len(), .0.first_message())]
    Invalid(ValidationReport),
}

/// Which side a 1-cell is attached on when whiskering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `k ∘ α`
    Left,
    /// `α ∘ k`
    Right,
}

/// A small category with canonically ordered objects and morphisms.
///
/// `compose(g, f)` is `g ∘ f` and is defined exactly when `cod(f) == dom(g)`.
pub trait Category {
    type Obj: Copy + Eq + Ord + Hash + Debug;
    type Mor: Copy + Eq + Ord + Hash + Debug;

    fn objects(&self) -> Vec<Self::Obj>;
    fn morphisms(&self) -> Vec<Self::Mor>;
    fn dom(&self, f: Self::Mor) -> Self::Obj;
    fn cod(&self, f: Self::Mor) -> Self::Obj;
    fn identity(&self, x: Self::Obj) -> Self::Mor;
    fn compose(&self, g: Self::Mor, f: Self::Mor) -> Result<Self::Mor, KernelError>;
    fn object_name(&self, x: Self::Obj) -> String;
    fn morphism_name(&self, f: Self::Mor) -> String;

    /// Morphisms `x → y` in canonical order.
    fn hom(&self, x: Self::Obj, y: Self::Obj) -> Vec<Self::Mor> {
        self.morphisms()
            .into_iter()
            .filter(|&f| self.dom(f) == x && self.cod(f) == y)
            .collect()
    }

    fn is_identity(&self, f: Self::Mor) -> bool {
        let x = self.dom(f);
        self.cod(f) == x && self.identity(x) == f
    }
}

/// A strict 2-category over a [`Category`] of 1-cells.
///
/// Horizontal composition is not primitive: it is derived from whiskering
/// and vertical composition, and lawful instances make both whiskering
/// orders agree.
pub trait TwoCategory: Category {
    type Cell: Copy + Eq + Ord + Hash + Debug;

    fn cells(&self) -> Vec<Self::Cell>;
    fn src(&self, alpha: Self::Cell) -> Self::Mor;
    fn tgt(&self, alpha: Self::Cell) -> Self::Mor;
    fn identity2(&self, f: Self::Mor) -> Self::Cell;
    /// `second ∘v first`, defined when `tgt(first) == src(second)`.
    fn vcomp(&self, second: Self::Cell, first: Self::Cell) -> Result<Self::Cell, KernelError>;
    /// `1_k ∘h α`, defined when `dom(k) == cod(src(α))`.
    fn whisker_left(&self, k: Self::Mor, alpha: Self::Cell) -> Result<Self::Cell, KernelError>;
    /// `α ∘h 1_k`, defined when `cod(k) == dom(src(α))`.
    fn whisker_right(&self, alpha: Self::Cell, k: Self::Mor) -> Result<Self::Cell, KernelError>;
    fn cell_name(&self, alpha: Self::Cell) -> String;

    /// 2-cells `s ⇒ t` in canonical order.
    fn cells_between(&self, s: Self::Mor, t: Self::Mor) -> Vec<Self::Cell> {
        self.cells()
            .into_iter()
            .filter(|&a| self.src(a) == s && self.tgt(a) == t)
            .collect()
    }

    /// The first entry of [`TwoCategory::cells_between`].
    fn first_cell_between(&self, s: Self::Mor, t: Self::Mor) -> Option<Self::Cell> {
        self.cells_between(s, t).into_iter().next()
    }

    fn whisker(
        &self,
        side: Side,
        k: Self::Mor,
        alpha: Self::Cell,
    ) -> Result<Self::Cell, KernelError> {
        match side {
            Side::Left => self.whisker_left(k, alpha),
            Side::Right => self.whisker_right(alpha, k),
        }
    }

    /// `β ∘h α` for `α: f ⇒ g` on `X → Y` and `β: h ⇒ i` on `Y → Z`,
    /// computed as `(1_i ∘h α) ∘v (β ∘h 1_f)`.
    fn hcomp(&self, beta: Self::Cell, alpha: Self::Cell) -> Result<Self::Cell, KernelError> {
        let f = self.src(alpha);
        let i = self.tgt(beta);
        let right = self.whisker_right(beta, f)?;
        let left = self.whisker_left(i, alpha)?;
        self.vcomp(left, right)
    }

    /// The other whiskering order, `(β ∘h 1_g) ∘v (1_h ∘h α)`.
    fn hcomp_opposite(
        &self,
        beta: Self::Cell,
        alpha: Self::Cell,
    ) -> Result<Self::Cell, KernelError> {
        let g = self.tgt(alpha);
        let h = self.src(beta);
        let left = self.whisker_left(h, alpha)?;
        let right = self.whisker_right(beta, g)?;
        self.vcomp(right, left)
    }

    /// Horizontal composite, rejecting the pair if the two whiskering orders
    /// disagree.
    fn hcomp_checked(
        &self,
        beta: Self::Cell,
        alpha: Self::Cell,
    ) -> Result<Self::Cell, KernelError> {
        let a = self.hcomp(beta, alpha)?;
        let b = self.hcomp_opposite(beta, alpha)?;
        if a != b {
            return Err(KernelError::InterchangeViolation(format!(
                "{} ∘h {}: {} vs {}",
                self.cell_name(beta),
                self.cell_name(alpha),
                self.cell_name(a),
                self.cell_name(b)
            )));
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests;
