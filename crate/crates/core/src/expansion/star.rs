//! Sparse-subspace enumeration and property (*): no alpha-sparse subspace
//! of dimension m <= r may meet a given subspace in dimension m/2 or more.
//!
//! The enumeration is exponential by nature and guarded by the caps; this
//! is a tiny-n verifier used as a test oracle, not a scalable algorithm.

use std::collections::HashSet;

use crate::codes::entropy_q_inv;
use crate::gf::Elt;
use crate::linalg::Subspace;
use crate::{Caps, Error, Result};

/// A violation of property (*): an alpha-sparse subspace meeting `U` too
/// deeply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarWitness {
    /// Dimension `m` of the violating subspace.
    pub dim: usize,
    /// Sparse generating vectors that span it.
    pub sparse_basis: Vec<Vec<Elt>>,
    /// `dim(U cap V) >= m/2`.
    pub intersection_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarOutcome {
    Holds,
    Witness(StarWitness),
}

impl StarOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, StarOutcome::Holds)
    }
}

/// Property (*) with an explicit sparseness threshold: checks every
/// subspace spanned by nonzero vectors of weight at most `weight_threshold`
/// up to dimension `r`, demanding `dim(U cap V) < dim(V)/2`. Returns the
/// first witness in the canonical (BFS over RREF-deduplicated spans,
/// lexicographic generators) order.
pub fn property_star_with_threshold(
    u: &Subspace,
    r: usize,
    weight_threshold: usize,
    caps: &Caps,
) -> Result<StarOutcome> {
    let n = u.ambient_dim();
    let field = u.field().clone();
    let q = field.order();
    caps.check_enum(q, n)?;
    // sparse nonzero vectors in lexicographic order
    let mut sparse: Vec<Vec<Elt>> = Vec::new();
    let full = Subspace::full(field.clone(), n);
    for v in full.elements() {
        let wt = v.iter().filter(|&&x| x != 0).count();
        if wt > 0 && wt <= weight_threshold {
            sparse.push(v);
        }
    }
    sparse.sort();

    // BFS over spans, deduplicated by canonical RREF basis
    struct Node {
        space: Subspace,
        gens: Vec<Vec<Elt>>,
    }
    let mut seen: HashSet<Vec<Elt>> = HashSet::new();
    let mut frontier: Vec<Node> = vec![Node {
        space: Subspace::zero(field.clone(), n),
        gens: Vec::new(),
    }];
    let mut visited: u64 = 0;
    for level in 1..=r.min(n) {
        let mut next: Vec<Node> = Vec::new();
        for node in &frontier {
            for v in &sparse {
                if node.space.contains(v) {
                    continue;
                }
                let mut rows: Vec<Vec<Elt>> =
                    node.space.basis_rows().map(|x| x.to_vec()).collect();
                rows.push(v.clone());
                let span = Subspace::from_rows(field.clone(), n, &rows);
                debug_assert_eq!(span.dim(), level);
                if !seen.insert(span.basis().data().to_vec()) {
                    continue;
                }
                visited += 1;
                if visited > caps.enumeration {
                    return Err(Error::CapExceeded {
                        what: "enumeration",
                        needed: "sparse subspace census".into(),
                        cap: caps.enumeration,
                    });
                }
                let inter = u.intersect(&span)?.dim();
                let mut gens = node.gens.clone();
                gens.push(v.clone());
                if 2 * inter >= level {
                    return Ok(StarOutcome::Witness(StarWitness {
                        dim: level,
                        sparse_basis: gens,
                        intersection_dim: inter,
                    }));
                }
                next.push(Node { space: span, gens });
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(StarOutcome::Holds)
}

/// Property (*) at the canonical threshold `alpha = H_q^{-1}(r / 8n)`,
/// floored to the integer weight bound `floor(alpha n)`.
pub fn has_property_star(u: &Subspace, r: usize, caps: &Caps) -> Result<StarOutcome> {
    let n = u.ambient_dim();
    let q = u.field().order();
    let alpha = entropy_q_inv(q, r as f64 / (8.0 * n as f64));
    let threshold = (alpha * n as f64 + 1e-12).floor() as usize;
    property_star_with_threshold(u, r, threshold, caps)
}
