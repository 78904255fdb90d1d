//! Difference systems of sets (DSSs) over `Z_v`: cyclotomic and product
//! constructions, exhaustive verification against the Levenshtein and Wang
//! bounds, and the self-synchronizing marker codes they define.
//!
//! ```
//! use dss::{quartic_pair, verify};
//!
//! let d = quartic_pair(1).unwrap();
//! let report = verify(&d).unwrap();
//! assert_eq!((report.v, report.index), (17, 2));
//! assert!(report.is_perfect && report.meets_levenshtein_equality);
//! ```

pub mod cli;
pub mod codec;
pub mod constructions;
pub mod dss;
pub mod error;
pub mod numtheory;
pub mod products;
pub mod tables;
pub mod verify;

pub use codec::{comma_free_index, layout_from_dss, simulate_stream, splice, CodeWindow, MarkerLayout, NoiseModel, SyncStats};
pub use constructions::{
    cyclotomic_dss, cyclotomic_fhs, cyclotomic_index_formula, identity_fhs, paley_dss, qr_difference_set,
    quartic_pair, scan_prime_forms, sextic_pair, sextic_triple, PrimeForm,
};
pub use dss::{dss_to_fhs, fhs_to_dss, Dss, FrequencyHoppingSequence, Rate, MAX_MODULUS};
pub use error::{Error, Result};
pub use numtheory::{crt_map, cyclotomic_classes, is_prime, primitive_root, Crt, CyclotomicTable};
pub use products::{
    direct_product, fhs_ds_product, fhs_embedding_product, predict_direct_product, predict_hyperplane_product,
    predict_paley_product, ProductDss,
};
pub use verify::{
    check_claim, inner_spectrum, levenshtein_bound, outer_spectrum, verify, verify_with, wang_bound, Budget,
    DifferenceSpectrum, VerificationReport,
};
