//! Product-expansion: exact minimum-cost decompositions over dual product
//! codes, the expansion factor, testability constants, the constructive
//! rectangle/extension lemmas, sparse-subspace checks, and the upper-bound
//! witness.

mod rectangles;
mod smb;
mod solver;
mod star;
mod testability;
mod witness;

pub use rectangles::{
    extend_codeword_part, find_zero_rectangle, intersection_identity_check, rank_bound_check,
    zero_rectangle_decompose, RankBound,
};
pub use smb::{is_delta_minimal, rectangle_min_weight, smb_expansion_check, SmbReport};
pub use solver::{
    expansion_factor, greedy_decomposition, min_cost_decomposition, BoxplusSolver, GreedyResult,
};
pub use star::{has_property_star, property_star_with_threshold, StarOutcome, StarWitness};
pub use testability::{
    agreement_test_constant, agreement_test_constant_direct, dinur_conversion,
    robustness_constant,
};
pub use witness::upper_bound_witness;

use serde::Serialize;

use crate::tensor::{tensor_membership, CodeCollection, TensorWord};
use crate::{rat_str, Error, Rat, Result};

/// A decomposition `x = sum_i a_i` with `a_i` in the axis code `C^(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    components: Vec<TensorWord>,
}

impl Decomposition {
    pub fn new(components: Vec<TensorWord>) -> Self {
        Decomposition { components }
    }

    pub fn components(&self) -> &[TensorWord] {
        &self.components
    }

    pub fn component(&self, axis: usize) -> &TensorWord {
        &self.components[axis]
    }

    /// `sum_i ||a_i||_i`, the quantity product-expansion charges.
    pub fn cost(&self) -> Rat {
        self.components
            .iter()
            .enumerate()
            .map(|(axis, a)| a.line_norm(axis))
            .sum()
    }

    /// `sum_i n_i |a_i|_i`, the unnormalized form of the cost.
    pub fn unnormalized_cost(&self) -> u64 {
        self.components
            .iter()
            .enumerate()
            .map(|(axis, a)| (a.shape().size(axis) * a.line_weight(axis)) as u64)
            .sum()
    }

    pub fn sum(&self) -> Result<TensorWord> {
        let mut acc = self.components[0].clone();
        for a in &self.components[1..] {
            acc = acc.add(a)?;
        }
        Ok(acc)
    }

    /// Checks `sum a_i = x` and each axis-code membership.
    pub fn validate(&self, x: &TensorWord, coll: &CodeCollection) -> Result<()> {
        if self.sum()? != *x {
            return Err(Error::TheoryViolation(
                "decomposition components do not sum to the word".into(),
            ));
        }
        for (axis, a) in self.components.iter().enumerate() {
            for line in a.shape().lines(axis) {
                if !coll.code(axis).contains(&a.line_values(&line)) {
                    return Err(Error::TheoryViolation(format!(
                        "component {axis} leaves the axis code"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Concatenation of the flattened components, the tie-break key.
    pub fn flattened(&self) -> Vec<u16> {
        let mut out = Vec::new();
        for a in &self.components {
            out.extend_from_slice(a.data());
        }
        out
    }
}

/// How an [`ExpansionReport`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    HeuristicUpperBoundOnCost,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::HeuristicUpperBoundOnCost => "heuristic-upper-bound-on-cost",
        }
    }
}

/// Instance identification carried by reports.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InstanceMeta {
    pub q: u64,
    pub lengths: Vec<usize>,
    pub dims: Vec<usize>,
}

impl InstanceMeta {
    pub fn of(coll: &CodeCollection) -> Self {
        InstanceMeta {
            q: coll.field().order(),
            lengths: coll.codes().iter().map(|c| c.len()).collect(),
            dims: coll.dims(),
        }
    }
}

/// The product-expansion factor of a collection together with the argmin
/// codeword and its optimal decomposition.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub rho: Rat,
    pub argmin: TensorWord,
    pub decomposition: Decomposition,
    pub method: Method,
    pub instance: InstanceMeta,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct ExpansionReportJson<'a> {
    rho: String,
    argmin: String,
    decomposition_cost: String,
    method: &'static str,
    instance: &'a InstanceMeta,
    seed: Option<u64>,
}

impl ExpansionReport {
    pub fn to_json(&self) -> Result<String> {
        let doc = ExpansionReportJson {
            rho: rat_str(&self.rho),
            argmin: self.argmin.to_text()?,
            decomposition_cost: rat_str(&self.decomposition.cost()),
            method: self.method.as_str(),
            instance: &self.instance,
            seed: self.seed,
        };
        serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `||x|| / mincost(x)` for one codeword: an exact upper bound on the
/// expansion factor witnessed by `x`.
pub fn codeword_ratio(x: &TensorWord, coll: &CodeCollection, caps: &crate::Caps) -> Result<Rat> {
    if x.is_zero() {
        return Err(Error::Precondition(
            "the zero word does not witness an upper bound".into(),
        ));
    }
    let d = min_cost_decomposition(x, coll, caps)?;
    Ok(x.norm() / d.cost())
}

/// Membership in the product code, re-exported here because expansion
/// reports use it for validation.
pub fn in_product_code(x: &TensorWord, coll: &CodeCollection) -> Result<bool> {
    tensor_membership(x, coll)
}
