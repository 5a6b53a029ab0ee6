use serde::{Deserialize, Serialize};

use crate::kernel::{
    CategorySpec, Finite2Category, FiniteCategory, Functor, MapSpec, MorphismFunction,
    TwoCategorySpec,
};

use super::{EquivData, EquivError};

/// The five components of an instance, all inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivSpec {
    pub c: CategorySpec,
    pub d: TwoCategorySpec,
    pub sigma: MapSpec,
    pub tau1: MapSpec,
    pub tau2: MapSpec,
}

impl EquivSpec {
    /// Validates both categories and both functors, then checks that the
    /// three maps agree on objects.
    pub fn load(&self) -> Result<EquivData<FiniteCategory, Finite2Category>, EquivError> {
        let c = FiniteCategory::from_spec(&self.c)?;
        let d = Finite2Category::from_spec(&self.d)?;
        let sigma = MorphismFunction::from_spec(&c, &d, &self.sigma)?;
        let tau1 = Functor::from_spec(&c, &d, &self.tau1)?;
        let tau2 = Functor::from_spec(&c, &d, &self.tau2)?;
        EquivData::new(c, d, sigma, tau1, tau2)
    }
}
