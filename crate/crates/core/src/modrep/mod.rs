//! Modules over a bound quiver algebra, given as representations.

mod endo;
mod ext;
mod gen;
mod hom;
mod iso;
mod rep;
mod resolution;
mod tau;

pub use endo::{
    decompose, end_coordinates, end_ring, is_indecomposable, split_by_idempotent, Decomposability,
    EndRing,
};
pub use ext::{ext1, ext_dim, push_out_extension, ExactnessReport, ExtSpace, ShortExactSequence};
pub use gen::{is_cogenerated_by, is_generated_by};
pub use hom::{hom, hom_dim, HomSpace};
pub use iso::{
    is_isomorphic, is_isomorphic_seeded, isomorphism, Confidence, IsoVerdict, DEFAULT_SEED,
    GRID_MAX_HOM_DIM, RANDOM_COEFF_BOUND, RANDOM_ROUNDS,
};
pub use rep::{cokernel, image, kernel, Morphism, Quotient, Representation};
pub use resolution::{
    idim, is_injective, is_projective, map_from_projectives, pdim, projective_cover,
    projective_sum, syzygy, top_generators, DimBound, ProjectiveCover,
};
pub use tau::ar_translate;
