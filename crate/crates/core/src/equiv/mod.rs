//! Equivalence of morphisms relative to a function `σ` and two functors
//! `τ₁, τ₂` from a category `C` into a 2-category `D`.
//!
//! `m: A → B` and `m̃: Ã → B̃` are equivalent when there are morphisms
//! `u₁: B → B̃`, `u₂: Ã → A`, `v₁: B̃ → B`, `v₂: A → Ã` of `C` and 2-cells
//!
//! ```text
//! Φ : τ₁(u₁) ∘ σ(m) ∘ τ₂(u₂) ⇒ σ(m̃)      Φ̃ : σ(m̃) ⇒ τ₁(u₁) ∘ σ(m) ∘ τ₂(u₂)
//! Ψ : τ₁(v₁) ∘ σ(m̃) ∘ τ₂(v₂) ⇒ σ(m)      Ψ̃ : σ(m) ⇒ τ₁(v₁) ∘ σ(m̃) ∘ τ₂(v₂)
//! ```
//!
//! None of these are required to be invertible.

mod classes;
mod derive;
mod spec;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{Category, Functor, KernelError, MorphismFunction, TwoCategory};

pub use classes::Partition;
pub use derive::Derivation;
pub use spec::EquivSpec;

/// The data `(C, D, σ, τ₁, τ₂)`.
#[derive(Clone, Debug)]
pub struct EquivData<C: Category, D: TwoCategory> {
    c: C,
    d: D,
    sigma: MorphismFunction<C, D>,
    tau1: Functor<C, D>,
    tau2: Functor<C, D>,
}

/// The tuple `(u₁, u₂, v₁, v₂, Φ, Φ̃, Ψ, Ψ̃)` certifying `m ≃ m̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Witness<M, A> {
    pub u1: M,
    pub u2: M,
    pub v1: M,
    pub v2: M,
    pub phi: A,
    pub phi_tilde: A,
    pub psi: A,
    pub psi_tilde: A,
}

/// The first boundary condition a witness fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCondition {
    U1,
    U2,
    V1,
    V2,
    Phi,
    PhiTilde,
    Psi,
    PsiTilde,
}

impl fmt::Display for WitnessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WitnessCondition::U1 => "u1 boundary",
            WitnessCondition::U2 => "u2 boundary",
            WitnessCondition::V1 => "v1 boundary",
            WitnessCondition::V2 => "v2 boundary",
            WitnessCondition::Phi => "phi boundary",
            WitnessCondition::PhiTilde => "phi_tilde boundary",
            WitnessCondition::Psi => "psi boundary",
            WitnessCondition::PsiTilde => "psi_tilde boundary",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquivError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("σ, τ₁ and τ₂ disagree on objects")]
    ObjectMapsDisagree,
    #[error("premise witness fails: {0}")]
    InvalidPremise(WitnessCondition),
}

impl<C: Category, D: TwoCategory> EquivData<C, D> {
    pub fn new(
        c: C,
        d: D,
        sigma: MorphismFunction<C, D>,
        tau1: Functor<C, D>,
        tau2: Functor<C, D>,
    ) -> Result<Self, EquivError> {
        if !sigma.map().same_objects(tau1.map()) || !sigma.map().same_objects(tau2.map()) {
            return Err(EquivError::ObjectMapsDisagree);
        }
        Ok(EquivData { c, d, sigma, tau1, tau2 })
    }

    pub fn c(&self) -> &C {
        &self.c
    }

    pub fn d(&self) -> &D {
        &self.d
    }

    pub fn sigma(&self) -> &MorphismFunction<C, D> {
        &self.sigma
    }

    pub fn tau1(&self) -> &Functor<C, D> {
        &self.tau1
    }

    pub fn tau2(&self) -> &Functor<C, D> {
        &self.tau2
    }

    /// `τ₁(u₁) ∘ σ(m) ∘ τ₂(u₂)`, for `u₁` leaving `cod(m)` and `u₂` entering
    /// `dom(m)`.
    pub fn composite_boundary(
        &self,
        u1: C::Mor,
        m: C::Mor,
        u2: C::Mor,
    ) -> Result<D::Mor, KernelError> {
        let c = &self.c;
        if c.dom(u1) != c.cod(m) || c.cod(u2) != c.dom(m) {
            return Err(KernelError::NotComposable(format!(
                "{} ∘ {} ∘ {}",
                c.morphism_name(u1),
                c.morphism_name(m),
                c.morphism_name(u2)
            )));
        }
        let inner = self.d.compose(self.sigma.morphism(m), self.tau2.morphism(u2))?;
        self.d.compose(self.tau1.morphism(u1), inner)
    }

    /// Checks every boundary condition; the error names the first failure.
    pub fn verify_witness(
        &self,
        m: C::Mor,
        m_tilde: C::Mor,
        w: &Witness<C::Mor, D::Cell>,
    ) -> Result<(), WitnessCondition> {
        let c = &self.c;
        let (a, b) = (c.dom(m), c.cod(m));
        let (at, bt) = (c.dom(m_tilde), c.cod(m_tilde));
        if c.dom(w.u1) != b || c.cod(w.u1) != bt {
            return Err(WitnessCondition::U1);
        }
        if c.dom(w.u2) != at || c.cod(w.u2) != a {
            return Err(WitnessCondition::U2);
        }
        if c.dom(w.v1) != bt || c.cod(w.v1) != b {
            return Err(WitnessCondition::V1);
        }
        if c.dom(w.v2) != a || c.cod(w.v2) != at {
            return Err(WitnessCondition::V2);
        }
        let s_m = self.sigma.morphism(m);
        let s_mt = self.sigma.morphism(m_tilde);
        let forward = self.composite_boundary(w.u1, m, w.u2).ok();
        let backward = self.composite_boundary(w.v1, m_tilde, w.v2).ok();
        let d = &self.d;
        let joins = |cell, s: Option<D::Mor>, t: Option<D::Mor>| {
            Some(d.src(cell)) == s && Some(d.tgt(cell)) == t
        };
        if !joins(w.phi, forward, Some(s_mt)) {
            return Err(WitnessCondition::Phi);
        }
        if !joins(w.phi_tilde, Some(s_mt), forward) {
            return Err(WitnessCondition::PhiTilde);
        }
        if !joins(w.psi, backward, Some(s_m)) {
            return Err(WitnessCondition::Psi);
        }
        if !joins(w.psi_tilde, Some(s_m), backward) {
            return Err(WitnessCondition::PsiTilde);
        }
        Ok(())
    }

    /// Exhaustive witness search. Returns the least witness in the order
    /// `(u₁, u₂, Φ, Φ̃, v₁, v₂, Ψ, Ψ̃)` of canonical identifiers, or `None`.
    pub fn are_equivalent(&self, m: C::Mor, m_tilde: C::Mor) -> Option<Witness<C::Mor, D::Cell>> {
        let (u1, u2, phi, phi_tilde) = self.one_side(m, m_tilde)?;
        let (v1, v2, psi, psi_tilde) = self.one_side(m_tilde, m)?;
        Some(Witness { u1, u2, v1, v2, phi, phi_tilde, psi, psi_tilde })
    }

    /// First `(x₁, x₂, Θ, Θ̃)` with `Θ: τ₁(x₁)∘σ(from)∘τ₂(x₂) ⇒ σ(to)` and
    /// `Θ̃` the other way.
    fn one_side(&self, from: C::Mor, to: C::Mor) -> Option<(C::Mor, C::Mor, D::Cell, D::Cell)> {
        let (c, d) = (&self.c, &self.d);
        let target = self.sigma.morphism(to);
        let s_from = self.sigma.morphism(from);
        let lefts: Vec<(C::Mor, D::Mor)> = c
            .hom(c.cod(from), c.cod(to))
            .into_iter()
            .map(|x1| (x1, self.tau1.morphism(x1)))
            .collect();
        // Only the least x₂ per composite can be the first hit.
        let mut seen = BTreeSet::new();
        let rights: Vec<(C::Mor, D::Mor)> = c
            .hom(c.dom(to), c.dom(from))
            .into_iter()
            .filter_map(|x2| d.compose(s_from, self.tau2.morphism(x2)).ok().map(|r| (x2, r)))
            .filter(|&(_, r)| seen.insert(r))
            .collect();
        // 1-cells parallel to the target with cells both ways; usually few.
        let candidates: BTreeMap<D::Mor, (D::Cell, D::Cell)> = d
            .hom(d.dom(target), d.cod(target))
            .into_iter()
            .filter_map(|k| Some((k, (d.first_cell_between(k, target)?, d.first_cell_between(target, k)?))))
            .collect();
        if candidates.is_empty() {
            return None;
        }
        for &(x1, t1) in &lefts {
            for &(x2, inner) in &rights {
                let Ok(composite) = d.compose(t1, inner) else { continue };
                if let Some(&(theta, theta_tilde)) = candidates.get(&composite) {
                    return Some((x1, x2, theta, theta_tilde));
                }
            }
        }
        None
    }

    /// Renders a witness with identifiers.
    pub fn describe(&self, w: &Witness<C::Mor, D::Cell>) -> Witness<String, String> {
        let (c, d) = (&self.c, &self.d);
        Witness {
            u1: c.morphism_name(w.u1),
            u2: c.morphism_name(w.u2),
            v1: c.morphism_name(w.v1),
            v2: c.morphism_name(w.v2),
            phi: d.cell_name(w.phi),
            phi_tilde: d.cell_name(w.phi_tilde),
            psi: d.cell_name(w.psi),
            psi_tilde: d.cell_name(w.psi_tilde),
        }
    }
}
