//! The diagonal upper-bound witness: a dual-product codeword of weight at
//! most `eps_1 eps_2 n^2 + n` whose exact decomposition cost certifies
//! `rho <= eps_1 eps_2 + 1/n`.

use crate::codes::LinearCode;
use crate::gf::Elt;
use crate::tensor::{boxplus_membership, CodeCollection, GridShape, TensorWord};
use crate::{rat, Caps, Error, Rat, Result};

use super::solver::min_cost_decomposition;

/// Builds the witness word and returns it with the certified upper bound
/// `||y|| / mincost(y)` on the expansion factor of the pair.
///
/// Construction: a diagonal on `A_1 x A_2'` (information set of `C_1` paired
/// with a superset of the information set of `C_2`), encoded down the
/// columns by `C_1`, then the `(A_1-complement, A_2)` block re-encoded along
/// the rows by `C_2` and subtracted. Roles are swapped internally so the
/// first code has the larger dimension; the returned word is in the
/// caller's orientation.
pub fn upper_bound_witness(
    c1: &LinearCode,
    c2: &LinearCode,
    caps: &Caps,
) -> Result<(TensorWord, Rat)> {
    if c1.len() != c2.len() {
        return Err(Error::Precondition("the witness assumes equal lengths".into()));
    }
    if c1.dim() == 0 || c2.dim() == 0 {
        return Err(Error::Precondition(
            "both codes need an information set (k >= 1)".into(),
        ));
    }
    let swapped = c1.dim() < c2.dim();
    let (ca, cb) = if swapped { (c2, c1) } else { (c1, c2) };
    let n = ca.len();
    let (ka, kb) = (ca.dim(), cb.dim());
    let field = ca.field().clone();

    let all: Vec<usize> = (0..n).collect();
    let a1 = ca.information_set(&all).expect("k >= 1 code has an information set");
    let a2 = cb.information_set(&all).expect("k >= 1 code has an information set");
    // A_2' extends A_2 to size |A_1| by the lowest missing indices
    let mut a2p = a2.clone();
    for t in 0..n {
        if a2p.len() == ka {
            break;
        }
        if !a2p.contains(&t) {
            a2p.push(t);
        }
    }
    a2p.sort_unstable();
    debug_assert_eq!(a2p.len(), ka);

    // diagonal pairing: t-th smallest of A_1 with t-th smallest of A_2'
    let shape = GridShape::new(vec![n, n])?;
    let mut x = TensorWord::zero(field.clone(), shape.clone());
    for j in 0..n {
        let vals: Vec<Elt> = a1
            .iter()
            .enumerate()
            .map(|(t, _)| if a2p[t] == j { 1 } else { 0 })
            .collect();
        if vals.iter().all(|&v| v == 0) {
            continue; // zero column encodes to zero
        }
        let col = ca.codeword_from_information_set(&a1, &vals);
        for (i, &v) in col.iter().enumerate() {
            x.data_mut()[i * n + j] = v;
        }
    }
    // re-encode the rows outside A_1 from their values on A_2 and subtract
    let mut y = x.clone();
    for i in 0..n {
        if a1.contains(&i) {
            continue;
        }
        let vals: Vec<Elt> = a2.iter().map(|&j| x.data()[i * n + j]).collect();
        let row = cb.codeword_from_information_set(&a2, &vals);
        for (j, &v) in row.iter().enumerate() {
            y.data_mut()[i * n + j] = field.sub(y.data()[i * n + j], v);
        }
    }
    if !boxplus_membership(&y, ca, cb)? {
        return Err(Error::TheoryViolation("witness left the dual product code".into()));
    }
    let (ra, rb) = (n - ka, n - kb);
    if y.weight() > ra * rb + n {
        return Err(Error::TheoryViolation(format!(
            "witness weight {} exceeds eps1 eps2 n^2 + n = {}",
            y.weight(),
            ra * rb + n
        )));
    }

    let coll = CodeCollection::pair(ca.clone(), cb.clone())?;
    let dec = min_cost_decomposition(&y, &coll, caps)?;
    let bound = y.norm() / dec.cost();
    let prop_bound = rat((ra * rb) as i64, (n * n) as i64) + rat(1, n as i64);
    if bound > prop_bound {
        return Err(Error::TheoryViolation(format!(
            "certified bound {bound} exceeds eps1 eps2 + 1/n = {prop_bound}"
        )));
    }

    let y_out = if swapped {
        TensorWord::from_matrix(&y.to_matrix().transpose())
    } else {
        y
    };
    Ok((y_out, bound))
}
