//! Every family of sets and partitions the toolkit certifies.

mod affine;
mod classical;
mod semidirect;

pub use affine::{
    affine_abelian, affine_abelian_with, affine_g1, affine_g1_with, affine_g2, affine_g2_with, affine_paley_q4,
    affine_paley_selection, affine_scheme_q4, affine_scheme_q4_with, AffineConstruction, AffineKind,
};
pub use classical::{latin3_partitions, paley_field_set, PaleyKind};
pub use semidirect::{gen_subgroup, p_class_terms, paley_selection, scheme_group, semidirect_paley, semidirect_scheme};
