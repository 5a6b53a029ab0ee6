//! Equivalence of morphisms parametrized by a function and two functors into
//! a 2-category, with two worked instances: group-action orbits through a
//! delooped action groupoid, and coarse equivalence of finite Bessel families
//! through a 2-category of seminorms.

pub mod action;
pub mod bridge;
pub mod cli;
pub mod equiv;
pub mod frame;
pub mod kernel;
pub mod preord;
pub mod samples;
