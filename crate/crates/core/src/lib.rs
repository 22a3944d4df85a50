//! Exact lattice-point counting on the triangle `w0*x + w1*y + w2*z = d`
//! (`x, y, z >= 0`) for pairwise coprime weights.
//!
//! The count `Eh_w(d)` is a degree-2 quasi-polynomial in `d`. This crate builds it in
//! closed form as the virtual genus `g_{w, d+|w|}` minus one periodic correction per
//! singular vertex of the weighted projective plane, and ships everything needed to
//! check that closed form independently:
//!
//! - [`arith`]: rationals, modular inverses, the sawtooth function, periodic rational
//!   functions and the residue ring `Q[x] / (1 + x + ... + x^(b-1))`.
//! - [`dedekind`]: classical Dedekind sums (naive and reciprocity descent) and
//!   Fourier-Dedekind sums evaluated exactly over all nontrivial `b`-th roots of unity.
//! - [`ehrhart`]: enumeration oracles, the Popoviciu-type closed forms for
//!   denumerants, the virtual genus and the quasi-polynomial itself.
//! - [`singularity`]: cyclic quotient types `X(d; a, b)`, the `A - delta` correction
//!   invariant and the `Delta = delta - kappa` ledger.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod dedekind;
pub mod ehrhart;
pub mod singularity;

pub use arith::{mod_inverse, rat, sawtooth, ArithError, PeriodicRational, QuotientPoly, Rational};
pub use dedekind::{
    dedekind_sum_fast, dedekind_sum_naive, fourier_dedekind_sum, DedekindArgs, DedekindError,
    FourierDedekindArgs, FourierDedekindTable,
};
pub use ehrhart::{
    coprime_weight_triples, count_simplex_eq, count_triangle_le, ehrhart_at_multiple,
    ehrhart_quasipolynomial, ehrhart_value, poly_part, popoviciu_2d, popoviciu_3d, virtual_genus,
    DenumerantQuasiPolynomial, OracleCount, PartitionPolyInputs, QuasiPolynomial, WeightError,
    WeightVector,
};
pub use singularity::{
    count_a, delta_at_projective_vertex, delta_comb, delta_invariant, delta_single_blowup,
    delta_table_for_local_type, h0_from_genus, ledger_check, normalize_type, numerical_adjunction,
    to_minus_one_form, GermLedgerEntry, LedgerReport, LedgerVerdict, NormalizedForm, QuotientType,
    SingularityError,
};
