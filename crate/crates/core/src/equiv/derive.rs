//! Witness constructors for reflexivity, symmetry and transitivity.

use crate::kernel::{Category, Side, TwoCategory};

use super::{EquivData, EquivError, Witness};

/// Which law to build a witness for, with its premises.
#[derive(Clone, Copy, Debug)]
pub enum Derivation<M, A> {
    /// `m ≃ m`.
    Reflexivity { m: M },
    /// From `m ≃ m̃`, build `m̃ ≃ m`.
    Symmetry { m: M, m_tilde: M, witness: Witness<M, A> },
    /// From `m ≃ m̄` and `m̄ ≃ m̄̄`, build `m ≃ m̄̄`.
    Transitivity { m: M, m_bar: M, m_bar_bar: M, first: Witness<M, A>, second: Witness<M, A> },
}

impl<C: Category, D: TwoCategory> EquivData<C, D> {
    pub fn derive_witness(
        &self,
        request: Derivation<C::Mor, D::Cell>,
    ) -> Result<Witness<C::Mor, D::Cell>, EquivError> {
        match request {
            Derivation::Reflexivity { m } => self.reflexivity(m),
            Derivation::Symmetry { m, m_tilde, witness } => self.symmetry(m, m_tilde, &witness),
            Derivation::Transitivity { m, m_bar, m_bar_bar, first, second } => {
                self.transitivity(m, m_bar, m_bar_bar, &first, &second)
            }
        }
    }

    /// Identities in `C`, identity 2-cells on `σ(m)`.
    pub fn reflexivity(&self, m: C::Mor) -> Result<Witness<C::Mor, D::Cell>, EquivError> {
        let c = self.c();
        let id_a = c.identity(c.dom(m));
        let id_b = c.identity(c.cod(m));
        let one = self.d().identity2(self.sigma().morphism(m));
        let w = Witness {
            u1: id_b,
            u2: id_a,
            v1: id_b,
            v2: id_a,
            phi: one,
            phi_tilde: one,
            psi: one,
            psi_tilde: one,
        };
        self.check_output(m, m, w)
    }

    /// Swaps the roles of the `u`/`Φ` and `v`/`Ψ` halves.
    pub fn symmetry(
        &self,
        m: C::Mor,
        m_tilde: C::Mor,
        w: &Witness<C::Mor, D::Cell>,
    ) -> Result<Witness<C::Mor, D::Cell>, EquivError> {
        self.verify_witness(m, m_tilde, w).map_err(EquivError::InvalidPremise)?;
        let swapped = Witness {
            u1: w.v1,
            u2: w.v2,
            v1: w.u1,
            v2: w.u2,
            phi: w.psi,
            phi_tilde: w.psi_tilde,
            psi: w.phi,
            psi_tilde: w.phi_tilde,
        };
        self.check_output(m_tilde, m, swapped)
    }

    /// Composes the two witnesses:
    ///
    /// ```text
    /// u₁'' = u₁'∘u₁   u₂'' = u₂∘u₂'   v₁'' = v₁∘v₁'   v₂'' = v₂'∘v₂
    /// Φ''  = Φ' ∘v (1_{τ₁(u₁')} ∘h Φ ∘h 1_{τ₂(u₂')})
    /// Φ̃''  = (1_{τ₁(u₁')} ∘h Φ̃ ∘h 1_{τ₂(u₂')}) ∘v Φ̃'
    /// Ψ''  = Ψ ∘v (1_{τ₁(v₁)} ∘h Ψ' ∘h 1_{τ₂(v₂)})
    /// Ψ̃''  = (1_{τ₁(v₁)} ∘h Ψ̃' ∘h 1_{τ₂(v₂)}) ∘v Ψ̃
    /// ```
    pub fn transitivity(
        &self,
        m: C::Mor,
        m_bar: C::Mor,
        m_bar_bar: C::Mor,
        first: &Witness<C::Mor, D::Cell>,
        second: &Witness<C::Mor, D::Cell>,
    ) -> Result<Witness<C::Mor, D::Cell>, EquivError> {
        self.verify_witness(m, m_bar, first).map_err(EquivError::InvalidPremise)?;
        self.verify_witness(m_bar, m_bar_bar, second).map_err(EquivError::InvalidPremise)?;
        let (c, d) = (self.c(), self.d());
        let (w, w2) = (first, second);
        let sandwich = |left: C::Mor, cell: D::Cell, right: C::Mor| {
            let inner = d.whisker(Side::Right, self.tau2().morphism(right), cell)?;
            d.whisker(Side::Left, self.tau1().morphism(left), inner)
        };
        let out = Witness {
            u1: c.compose(w2.u1, w.u1)?,
            u2: c.compose(w.u2, w2.u2)?,
            v1: c.compose(w.v1, w2.v1)?,
            v2: c.compose(w2.v2, w.v2)?,
            phi: d.vcomp(w2.phi, sandwich(w2.u1, w.phi, w2.u2)?)?,
            phi_tilde: d.vcomp(sandwich(w2.u1, w.phi_tilde, w2.u2)?, w2.phi_tilde)?,
            psi: d.vcomp(w.psi, sandwich(w.v1, w2.psi, w.v2)?)?,
            psi_tilde: d.vcomp(sandwich(w.v1, w2.psi_tilde, w.v2)?, w.psi_tilde)?,
        };
        self.check_output(m, m_bar_bar, out)
    }

    fn check_output(
        &self,
        m: C::Mor,
        m_tilde: C::Mor,
        w: Witness<C::Mor, D::Cell>,
    ) -> Result<Witness<C::Mor, D::Cell>, EquivError> {
        // Only reachable on instances whose tables are not lawful.
        self.verify_witness(m, m_tilde, &w).map_err(|cond| {
            EquivError::Kernel(crate::kernel::KernelError::NotComposable(format!(
                "derived witness fails {cond}"
            )))
        })?;
        Ok(w)
    }
}
