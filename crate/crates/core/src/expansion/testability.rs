//! Agreement and robust testability constants for products of two codes,
//! and the conversion from agreement testability to robust testability.

use crate::codes::LinearCode;
use crate::gf::Elt;
use crate::linalg::Subspace;
use crate::tensor::{
    boxplus_basis, distance_to_axis_code, nearest_codeword, product_code_basis, CodeCollection,
    TensorWord,
};
use crate::{rat, Caps, Error, Rat, Result};

use super::solver::BoxplusSolver;

/// The agreement-testability constant of `C_1 (x) C_2`: the largest rho
/// with `rho (||c_1 - c||_1 + ||c_2 - c||_2) <= ||c_1 - c_2||` for all
/// `c_1` in `C^(1)`, `c_2` in `C^(2)`, some `c` in the product code.
///
/// Computed through the equivalence with product-expansion: the difference
/// `d = c_1 - c_2` ranges over the dual product code, and the minimization
/// over `c` is a minimum-cost decomposition of `d`; the inner minimum here
/// is enumerated over the product-code translates of one split, which is an
/// independently coded route to the same coset.
pub fn agreement_test_constant(
    c1: &LinearCode,
    c2: &LinearCode,
    caps: &Caps,
) -> Result<Rat> {
    let coll = CodeCollection::pair(c1.clone(), c2.clone())?;
    if coll.is_degenerate() {
        // equals the expansion factor in the degenerate case as well
        return Ok(super::expansion_factor(&coll, caps)?.rho);
    }
    let basis = boxplus_basis(&coll, caps)?;
    let q = coll.field().order();
    caps.check_enum(q, basis.dim())?;
    let product = product_code_basis(&coll, caps)?;
    caps.check_enum(q, product.dim())?;
    let solver = BoxplusSolver::new(&coll, caps)?;
    let shape = coll.shape();
    let field = coll.field().clone();
    let (n1, n2) = (shape.size(0), shape.size(1));
    let product_words: Vec<Vec<Elt>> = product.elements().collect();
    let mut best: Option<Rat> = None;
    for d in basis.elements() {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let word = TensorWord::from_flat(field.clone(), shape.clone(), d)?;
        // one split d = a1 + a2; then c1 := a1, c2 := -a2
        let theta = solver
            .particular_solution(&word)
            .ok_or(Error::TheoryViolation(
                "boxplus basis element failed to split".into(),
            ))?;
        let dec = solver.materialize(&theta);
        let split1 = dec.component(0).data();
        let split2: Vec<Elt> = dec.component(1).data().iter().map(|&x| field.neg(x)).collect();
        let mut inner_min = usize::MAX; // n2 * (#cols) + n1 * (#rows), common denominator n1 n2
        for t in &product_words {
            let cols = nonzero_columns_of_diff(split1, t, n1, n2, &field);
            let rows = nonzero_rows_of_diff(&split2, t, n1, n2, &field);
            inner_min = inner_min.min(n1 * cols + n2 * rows);
        }
        debug_assert!(inner_min > 0);
        // inner cost = cols/n2 + rows/n1 = (n1 cols + n2 rows) / (n1 n2)
        let inner = rat(inner_min as i64, (n1 * n2) as i64);
        let ratio = word.norm() / inner;
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    best.ok_or_else(|| Error::Precondition("dual product code is trivial".into()))
}

fn nonzero_columns_of_diff(
    a: &[Elt],
    t: &[Elt],
    n1: usize,
    n2: usize,
    field: &crate::gf::Field,
) -> usize {
    (0..n2)
        .filter(|&j| (0..n1).any(|i| field.sub(a[i * n2 + j], t[i * n2 + j]) != 0))
        .count()
}

fn nonzero_rows_of_diff(
    a: &[Elt],
    t: &[Elt],
    n1: usize,
    n2: usize,
    field: &crate::gf::Field,
) -> usize {
    (0..n1)
        .filter(|&i| (0..n2).any(|j| field.sub(a[i * n2 + j], t[i * n2 + j]) != 0))
        .count()
}

/// Direct tiny-instance evaluation of the agreement constant by full
/// enumeration of `(c_1, c_2)` pairs; the independent cross-check path.
pub fn agreement_test_constant_direct(
    c1: &LinearCode,
    c2: &LinearCode,
    caps: &Caps,
) -> Result<Rat> {
    let coll = CodeCollection::pair(c1.clone(), c2.clone())?;
    let axis1 = crate::tensor::axis_code_basis(&coll, 0, caps)?;
    let axis2 = crate::tensor::axis_code_basis(&coll, 1, caps)?;
    let q = coll.field().order();
    caps.check_enum(q, axis1.dim() + axis2.dim())?;
    let product = product_code_basis(&coll, caps)?;
    let shape = coll.shape();
    let field = coll.field().clone();
    let product_words: Vec<TensorWord> = product
        .elements()
        .map(|t| TensorWord::from_flat(field.clone(), shape.clone(), t).unwrap())
        .collect();
    let mut best: Option<Rat> = None;
    for w1 in axis1.elements() {
        let cw1 = TensorWord::from_flat(field.clone(), shape.clone(), w1)?;
        for w2 in axis2.elements() {
            let cw2 = TensorWord::from_flat(field.clone(), shape.clone(), w2)?;
            if cw1 == cw2 {
                continue; // c with total agreement exists; constraint vacuous
            }
            let diff_norm = cw1.sub(&cw2)?.norm();
            let mut inner: Option<Rat> = None;
            for t in &product_words {
                let cost = cw1.sub(t)?.line_norm(0) + cw2.sub(t)?.line_norm(1);
                inner = Some(match inner {
                    Some(b) if b <= cost => b,
                    _ => cost,
                });
            }
            let inner = inner.expect("product code contains zero");
            let ratio = diff_norm / inner;
            best = Some(match best {
                Some(b) if b <= ratio => b,
                _ => ratio,
            });
        }
    }
    best.ok_or_else(|| {
        Error::Precondition("no disagreeing pairs: the product code is everything".into())
    })
}

/// The robust-testability constant of `C_1 (x) C_2`: the exact minimum over
/// `x` outside the product code of
/// `(delta(x, C^(1)) + delta(x, C^(2))) / (2 delta(x, C_1 (x) C_2))`.
pub fn robustness_constant(c1: &LinearCode, c2: &LinearCode, caps: &Caps) -> Result<Rat> {
    let coll = CodeCollection::pair(c1.clone(), c2.clone())?;
    let shape = coll.shape();
    let cells = shape.total_cells();
    let q = coll.field().order();
    caps.check_enum(q, cells)?;
    let product = product_code_basis(&coll, caps)?;
    caps.check_enum(q, product.dim())?;
    let field = coll.field().clone();
    let full = Subspace::full(field.clone(), cells);
    let mut best: Option<Rat> = None;
    for x in full.elements() {
        if product.contains(&x) {
            continue; // zero denominator: excluded by definition
        }
        let word = TensorWord::from_flat(field.clone(), shape.clone(), x)?;
        let (_, d) = nearest_codeword(word.data(), &product, caps)?;
        let to_product = rat(d as i64, cells as i64);
        let d1 = distance_to_axis_code(&word, &coll, 0, caps)?;
        let d2 = distance_to_axis_code(&word, &coll, 1, caps)?;
        let ratio = (d1 + d2) / (rat(2, 1) * to_product);
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    best.ok_or_else(|| {
        Error::Precondition("every word is a product codeword; robustness undefined".into())
    })
}

/// The agreement-to-robustness conversion `rho' -> rho' / (2 (rho' + 1))`.
pub fn dinur_conversion(rho_prime: &Rat) -> Rat {
    assert!(*rho_prime >= rat(0, 1));
    rho_prime / (rat(2, 1) * (rho_prime + rat(1, 1)))
}

#[allow(dead_code)]
fn quiet_unused(_: &[Elt]) {}
