//! Institutions with finite set-valued sentences and models, their
//! morphisms, entailment and theory lattices, and affine institutions with
//! the lifts of the space and algebra embeddings.

mod affine;
mod elementary;
mod morphism;
mod theory;

pub use affine::{
    check_affine_inst_morphism, check_affine_institution, check_localic_institution,
    check_spatial_institution, compose_affine_inst_morphisms, geo, ie_lift, ie_loc_lift, iloc_lift,
    ispat_lift, loc_reflection_components, spatial_counit_components, spatial_unit_components,
    AffineInstFailure, AffineInstMorphism, AffineInstitution, AffineMorphismFailure,
    LiftComponents, LocalicAffineInstitution, SpatialAffineInstitution,
};
pub use elementary::{check_elementary, ElementaryFailure, ElementaryInstitution};
pub use morphism::{check_inst_morphism, Direction, InstMorphismFailure, InstitutionMorphism};
pub use theory::{
    entailment_closure, extent_label, models_of, spatial_completion, theory_lattice, theory_system,
    JoinFailure, SentenceSet, TheoryLattice, TheorySystem,
};
