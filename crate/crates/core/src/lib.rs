//! Exact finite-field laboratory for products of linear codes.
//!
//! The crate computes, exactly at small scale and statistically at moderate
//! scale, the product-expansion factor of collections of linear codes and the
//! related testability constants of their tensor products:
//!
//! - [`gf`] / [`linalg`]: finite fields `GF(p^e)` and exact linear algebra
//!   (RREF, kernels, subspaces, Grassmannian sampling, q-binomials);
//! - [`codes`]: linear codes with duals, minimum distances, information sets,
//!   Reed-Solomon codes and q-ary entropy;
//! - [`tensor`]: m-dimensional tensor words over grids, product and dual
//!   product (boxplus) codes, line weights and distances to axis codes;
//! - [`expansion`]: exact minimum-cost decompositions, the product-expansion
//!   factor, agreement/robust testability constants, zero rectangles and the
//!   upper-bound witness;
//! - [`complexes`]: based cochain complexes with block weights, tensor
//!   product complexes and Cheeger constants;
//! - [`harness`]: seeded experiment drivers (censuses, Monte-Carlo bound
//!   checks, demos) with reproducible JSON/CSV reports.
//!
//! Every quantity that feeds an equality check is an exact rational; floats
//! appear only in entropy evaluations and statistical summaries.

pub mod codes;
pub mod complexes;
pub mod expansion;
pub mod gf;
pub mod harness;
pub mod linalg;
pub mod tensor;

use num_rational::Ratio;

/// Exact rational used for every normalized weight, distance and expansion
/// factor. Numerators and denominators stay far below `i64` range at the
/// grid sizes the enumeration caps admit.
pub type Rat = Ratio<i64>;

/// Shorthand constructor for [`Rat`].
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// Renders a rational as the canonical `"numerator/denominator"` report
/// string (always with an explicit denominator, e.g. `"0/1"`, `"5/9"`).
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `"numerator/denominator"` form produced by [`rat_str`].
pub fn rat_parse(s: &str) -> Result<Rat> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected p/q rational, got {s:?}")))?;
    let n: i64 = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: i64 = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Enumeration and size caps shared by the exhaustive operations.
///
/// `cells` bounds grid sizes (total number of tensor-word cells), while
/// `enumeration` bounds every `q^dim`-style exhaustive loop (message spaces,
/// decomposition cosets, Cheeger terms, sparse-subspace searches).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub cells: u64,
    pub enumeration: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cells: 1 << 20,
            enumeration: 1 << 24,
        }
    }
}

impl Caps {
    /// Checks `q^dim <= enumeration`, returning the count itself.
    pub fn check_enum(&self, q: u64, dim: usize) -> Result<u64> {
        let mut total: u64 = 1;
        for _ in 0..dim {
            total = total
                .checked_mul(q)
                .filter(|&t| t <= self.enumeration)
                .ok_or(Error::CapExceeded {
                    what: "enumeration",
                    needed: format!("{q}^{dim}"),
                    cap: self.enumeration,
                })?;
        }
        Ok(total)
    }

    pub fn check_cells(&self, cells: u64) -> Result<u64> {
        if cells > self.cells {
            return Err(Error::CapExceeded {
                what: "cells",
                needed: cells.to_string(),
                cap: self.cells,
            });
        }
        Ok(cells)
    }
}

/// Crate-wide error type.
///
/// `TheoryViolation` is reserved for assertions the underlying results
/// guarantee can never fire; seeing one means an implementation bug or a
/// violated statistical bound, and the CLI maps it to its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field order {order} exceeds the cap {cap}")]
    FieldCap { order: u64, cap: u64 },
    #[error("no canonical irreducible polynomial available for p={p}, e={e}")]
    NoIrreducible { p: u64, e: u32 },
    #[error("{what} cap exceeded: needs {needed}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("word is not a codeword of the dual product code")]
    NotInBoxplus,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("theory violation: {0}")]
    TheoryViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use codes::{
    dual, entropy_q, entropy_q_inv, is_css_pair, ltc_soundness, reed_solomon, EntropyEval,
    LinearCode,
};
pub use complexes::{
    cheeger_constant, complex_from_encoder, tensor_complex, verify_expansion_cheeger_identity,
    BasedComplex,
};
pub use expansion::{
    agreement_test_constant, dinur_conversion, expansion_factor, greedy_decomposition,
    min_cost_decomposition, robustness_constant, upper_bound_witness, Decomposition,
    ExpansionReport,
};
pub use gf::{field_create, Field, FiniteField};
pub use linalg::{qbinom, random_subspace, MatrixFq, Subspace};
pub use tensor::{CodeCollection, GridShape, TensorWord};
