//! Finite categories, functors between them, set-valued functors, and
//! natural transformations, each with an exhaustive law check.
//!
//! Arrows are indexed; arrow `i < objects` is not assumed to be an
//! identity, the identity assignment is explicit. Composition is a dense
//! partial table indexed `g * arrows + f` for `g ∘ f`.

mod category;
mod functor;
mod nat;

pub use category::{check_category, Arrow, CategoryFailure, FiniteCategory};
pub use functor::{
    check_functor, check_set_functor, compose_functors, FiniteFunctor, FunctorFailure, SetFunctor,
};
pub use nat::{
    check_nat_trans, check_set_nat_trans, FiniteNatTrans, NaturalityFailure, SetNatTrans,
};
