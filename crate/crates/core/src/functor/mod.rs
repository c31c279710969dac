//! The functors between spaces, systems and algebras, their unit and counit
//! components, and exhaustive checks of the associated universal properties.
//!
//! Universal properties quantify over all objects; here they are checked
//! against explicit finite test families, and every report says how many
//! members it covered.

mod local;
mod prop3;
mod spatial;
mod theory_morphism;

pub use local::{
    counit_eps, e_loc, e_loc_morphism, loc, loc_morphism, loc_universal_arrow, pt, unit_eta,
    verify_loc_universal, verify_points_adjunction, PointsAdjunction, UnitEta,
};
pub use prop3::{prop3_demo, Prop3};
pub use spatial::{
    counit_system, e_space, e_space_morphism, space_algebra, spat, spat_morphism, spat_unit,
    verify_couniversal, verify_spatial_adjunction, SpatialAdjunction,
};
pub use theory_morphism::{afsys_apply, afsys_apply_morphism, theory_compose, TheoryMorphism};

/// Outcome of a universal-property check over a finite test family: for
/// each test arrow, the number of factorizations found (exactly one is
/// required).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub family_size: usize,
    pub factorizations: Vec<usize>,
    pub candidates_checked: usize,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.factorizations.iter().all(|&c| c == 1)
    }
}
