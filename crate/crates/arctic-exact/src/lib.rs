//! Closed-form exact enumerations: alternating sign matrices, lozenge
//! tilings of hexagons and trapezoids, weighted directed paths, triangoloid
//! counts, and the Λ_{N,L} convolution.

mod asm;
mod binom;
mod error;
mod lambda;
mod lozenge;
mod paths;
mod poly;
mod triangoloid;

pub use asm::{asm_count, asm_h, asm_h_poly, asm_refined, asm_refined_or_zero};
pub use binom::{binomial, binomial_q, factorial};
pub use error::ExactError;
pub use lambda::lambda_nl_partition;
pub use lozenge::{
    gelfand_tsetlin, gt_product, hex_refined_m_ratio, hex_refined_n, hex_refined_n_count, identity_hex_check,
    identity_hex_sides, macmahon,
};
pub use paths::{path_corner_count, path_weight_abc, path_weight_poly};
pub use poly::ExactPolynomial;
pub use triangoloid::{triangoloid_count, triangoloid_h, triangoloid_h_closed, triangoloid_h_poly, triangoloid_refined};
