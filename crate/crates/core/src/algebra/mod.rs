//! Exact counting: difference censuses, certificates, scheme checks and
//! group-ring identities.

mod census;
pub mod identities;
mod scheme;
mod verify;

pub use census::{convolution, difference_census, with_threads, Census};
pub use scheme::{
    check_mixed_product_undoubled, latin_families, scheme_constants, verify_amorphic, verify_mixed_product,
    verify_partition, verify_square_identity, AmorphicMode, AmorphicReport, FusionFailure, LabeledCertificate,
    LatinFamily, MixedProductReport, PartitionReport, SchemeConstants, MAX_FUSION_CLASSES,
};
pub use verify::{
    classify_parameters, set_hash, verify_ds, verify_pds, verify_regularity, verify_skew_hadamard, CertKind,
    Certificate, Params, SkewReport, TypeTag,
};
