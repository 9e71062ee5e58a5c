//! Independent checks for the closed forms: finite group orders, brute-force
//! enumeration, witness groups, kernel valuations via diagonal forms, and
//! `Φ_d` valuations at explicit points.

mod orders;
mod phi;
mod smith;
mod witness;

pub use orders::{
    chevalley_order, enumerate_gl2_count, enumerate_gl2_sylow, gl_order, o_order, sylow_exponent_formula,
};
pub use phi::{phi_valuation_table, minkowski_prime, phi_valuation};
pub use smith::{bareiss_determinant, diagonal_form, kernel_valuation, KernelValuation};
pub use witness::{schur_witness, wreath_witness};
