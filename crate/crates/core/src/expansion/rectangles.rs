//! Zero rectangles and the constructive decomposition they force, codeword
//! part extension by section operators, the rank bound, and the
//! tensor-intersection identity.

use crate::codes::LinearCode;
use crate::gf::Elt;
use crate::linalg::{image, row_space, MatrixFq, Subspace};
use crate::tensor::{boxplus_basis, boxplus_membership, CodeCollection, TensorWord};
use crate::{Caps, Error, Rat, Result};

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !set.contains(i)).collect()
}

fn check_pair_word(x: &TensorWord, c1: &LinearCode, c2: &LinearCode) -> Result<()> {
    if x.shape().axes() != 2
        || x.shape().size(0) != c1.len()
        || x.shape().size(1) != c2.len()
    {
        return Err(Error::ShapeMismatch(
            "word shape does not match the code pair".into(),
        ));
    }
    Ok(())
}

/// Restriction `x(A, B)` as a matrix over the picked rows and columns.
fn restrict(x: &TensorWord, rows: &[usize], cols: &[usize]) -> MatrixFq {
    x.to_matrix().submatrix(rows, cols)
}

/// Replays the zero-rectangle decomposition: given `x(A_1, A_2) = 0` with
/// `n - |A_i| < d(C_i)`, splits `x = D_1 + D_2` where `D_1` is supported on
/// at most `n - |A_2|` columns from `C_1` and `D_2` on at most `n - |A_1|`
/// rows from `C_2`.
pub fn zero_rectangle_decompose(
    x: &TensorWord,
    a1: &[usize],
    a2: &[usize],
    c1: &LinearCode,
    c2: &LinearCode,
    caps: &Caps,
) -> Result<(TensorWord, TensorWord)> {
    check_pair_word(x, c1, c2)?;
    if !boxplus_membership(x, c1, c2)? {
        return Err(Error::NotInBoxplus);
    }
    let (n1, n2) = (c1.len(), c2.len());
    let (d1, d2) = (c1.min_distance(caps)?, c2.min_distance(caps)?);
    if n1 - a1.len() >= d1 || n2 - a2.len() >= d2 {
        return Err(Error::Precondition(
            "rectangle complements must be smaller than the code distances".into(),
        ));
    }
    if !restrict(x, a1, a2).is_zero() {
        return Err(Error::Precondition("x(A1, A2) is not zero".into()));
    }
    let i1 = c1
        .information_set(a1)
        .ok_or_else(|| Error::TheoryViolation("A1 must contain an information set".into()))?;
    let i2 = c2
        .information_set(a2)
        .ok_or_else(|| Error::TheoryViolation("A2 must contain an information set".into()))?;
    let a1_bar = complement(n1, a1);
    let a2_bar = complement(n2, a2);

    let field = x.field().clone();
    let mut delta1 = TensorWord::zero(field.clone(), x.shape().clone());
    for &j in &a2_bar {
        let vals: Vec<Elt> = i1.iter().map(|&i| x.data()[i * n2 + j]).collect();
        let col = c1.codeword_from_information_set(&i1, &vals);
        for (i, &v) in col.iter().enumerate() {
            delta1.data_mut()[i * n2 + j] = v;
        }
    }
    let mut delta2 = TensorWord::zero(field.clone(), x.shape().clone());
    for &i in &a1_bar {
        let vals: Vec<Elt> = i2.iter().map(|&j| x.data()[i * n2 + j]).collect();
        let row = c2.codeword_from_information_set(&i2, &vals);
        for (j, &v) in row.iter().enumerate() {
            delta2.data_mut()[i * n2 + j] = v;
        }
    }
    let sum = delta1.add(&delta2)?;
    if sum != *x {
        return Err(Error::TheoryViolation(
            "zero-rectangle reconstruction missed the word".into(),
        ));
    }
    debug_assert!(delta1.line_weight(0) <= n2 - a2.len());
    debug_assert!(delta2.line_weight(1) <= n1 - a1.len());
    Ok((delta1, delta2))
}

/// Finds the canonical zero rectangle of `x`: `A` keeps the rows of weight
/// at most `alpha_2 n / 2` and `B` the columns of weight at most
/// `alpha_1 n / 2`. Returns it only when it is a genuine zero rectangle
/// (`x(A, B) = 0` with complements smaller than the code distances).
pub fn find_zero_rectangle(
    x: &TensorWord,
    c1: &LinearCode,
    c2: &LinearCode,
    alpha1: &Rat,
    alpha2: &Rat,
    caps: &Caps,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    check_pair_word(x, c1, c2)?;
    if c1.len() != c2.len() {
        return Err(Error::Precondition("zero rectangles assume equal lengths".into()));
    }
    let n = c1.len();
    let half = |alpha: &Rat| alpha * Rat::new(n as i64, 2);
    let row_thresh = half(alpha2);
    let col_thresh = half(alpha1);
    let m = x.to_matrix();
    let a: Vec<usize> = (0..n)
        .filter(|&i| {
            let wt = (0..n).filter(|&j| m[(i, j)] != 0).count();
            Rat::from_integer(wt as i64) <= row_thresh
        })
        .collect();
    let b: Vec<usize> = (0..n)
        .filter(|&j| {
            let wt = (0..n).filter(|&i| m[(i, j)] != 0).count();
            Rat::from_integer(wt as i64) <= col_thresh
        })
        .collect();
    // size bounds from the weight filter itself (every excluded line is
    // heavier than the threshold)
    if row_thresh > Rat::from_integer(0) {
        let bound = Rat::from_integer(n as i64)
            - Rat::from_integer(x.weight() as i64) / row_thresh.clone();
        debug_assert!(Rat::from_integer(a.len() as i64) >= bound);
    }
    if col_thresh > Rat::from_integer(0) {
        let bound = Rat::from_integer(n as i64)
            - Rat::from_integer(x.weight() as i64) / col_thresh.clone();
        debug_assert!(Rat::from_integer(b.len() as i64) >= bound);
    }
    let (d1, d2) = (c1.min_distance(caps)?, c2.min_distance(caps)?);
    if !restrict(x, &a, &b).is_zero() {
        return Ok(None);
    }
    if n - a.len() >= d1 || n - b.len() >= d2 {
        return Ok(None); // too small to qualify as a zero rectangle
    }
    Ok(Some((a, b)))
}

/// Section operator for one axis: a matrix `M` with `v -> v M` lifting
/// `F_q^{A}` into `F_q^n` such that restriction back to `A` is the identity
/// and the projected code `C|_A` lifts into `C`. Bases are completed by
/// lowest-index pivots.
fn section_operator(code: &LinearCode, a: &[usize]) -> MatrixFq {
    let field = code.field().clone();
    let k = code.dim();
    let n = code.len();
    let w = a.len();
    // [G|_A | G] eliminated with pivots restricted to the first |A| columns
    let mut aug = MatrixFq::zeros(field.clone(), k, w + n);
    let g = code.generator().basis();
    for r in 0..k {
        for (ci, &c) in a.iter().enumerate() {
            aug[(r, ci)] = g[(r, c)];
        }
        for c in 0..n {
            aug[(r, w + c)] = g[(r, c)];
        }
    }
    let pivots = crate::linalg::rref_prefix(&mut aug, w);
    // basis rows of C|_A with their lifts in C
    let mut basis_rows: Vec<Vec<Elt>> = Vec::with_capacity(w);
    let mut lift_rows: Vec<Vec<Elt>> = Vec::with_capacity(w);
    for (r, _) in pivots.iter().enumerate() {
        basis_rows.push((0..w).map(|c| aug[(r, c)]).collect());
        lift_rows.push((0..n).map(|c| aug[(r, w + c)]).collect());
    }
    // complete with unit vectors on the non-pivot coordinates; their lifts
    // are the matching unit vectors of F_q^n embedded at positions A[t]
    for t in 0..w {
        if !pivots.contains(&t) {
            let mut e = vec![0 as Elt; w];
            e[t] = 1;
            basis_rows.push(e);
            let mut lift = vec![0 as Elt; n];
            lift[a[t]] = 1;
            lift_rows.push(lift);
        }
    }
    let basis = MatrixFq::from_rows(field.clone(), &basis_rows).unwrap();
    let lifts = MatrixFq::from_rows(field, &lift_rows).unwrap();
    // operator: coords in the basis, then apply the lifts
    basis
        .inverse()
        .expect("completed basis is invertible")
        .mul_matrix(&lifts)
        .unwrap()
}

/// Extends the restriction `x(A_1, A_2)` of a dual-product codeword to a
/// full codeword `x'` with `x'(A_1, A_2) = x(A_1, A_2)` and
/// `rk x' = rk x(A_1, A_2)` via section operators.
pub fn extend_codeword_part(
    x: &TensorWord,
    a1: &[usize],
    a2: &[usize],
    c1: &LinearCode,
    c2: &LinearCode,
) -> Result<TensorWord> {
    check_pair_word(x, c1, c2)?;
    if !boxplus_membership(x, c1, c2)? {
        return Err(Error::NotInBoxplus);
    }
    let part = restrict(x, a1, a2);
    let m1 = section_operator(c1, a1); // |A1| x n1
    let m2 = section_operator(c2, a2); // |A2| x n2
    // x' = M1^T * x(A1,A2) * M2
    let xp = m1.transpose().mul_matrix(&part)?.mul_matrix(&m2)?;
    let out = TensorWord::from_matrix(&xp);
    // postconditions of the extension lemma
    if restrict(&out, a1, a2) != part {
        return Err(Error::TheoryViolation("extension changed the restriction".into()));
    }
    if xp.rank() != part.rank() {
        return Err(Error::TheoryViolation("extension changed the rank".into()));
    }
    if !boxplus_membership(&out, c1, c2)? {
        return Err(Error::TheoryViolation("extension left the dual product code".into()));
    }
    Ok(out)
}

/// The rank bound `rk x <= dim(X cap C_1) + dim(Y cap C_2)` for a dual
/// product codeword, with `X` the column space and `Y` the row space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBound {
    pub rank: usize,
    pub col_intersection_dim: usize,
    pub row_intersection_dim: usize,
    pub holds: bool,
}

pub fn rank_bound_check(
    x: &TensorWord,
    c1: &LinearCode,
    c2: &LinearCode,
) -> Result<RankBound> {
    check_pair_word(x, c1, c2)?;
    if !boxplus_membership(x, c1, c2)? {
        return Err(Error::NotInBoxplus);
    }
    let m = x.to_matrix();
    let col_space = image(&m);
    let row_sp = row_space(&m);
    let rank = m.rank();
    let ci = col_space.intersect(c1.generator())?.dim();
    let ri = row_sp.intersect(c2.generator())?.dim();
    Ok(RankBound {
        rank,
        col_intersection_dim: ci,
        row_intersection_dim: ri,
        holds: rank <= ci + ri,
    })
}

/// Tensor product of two subspaces inside the flattened `n_1 x n_2` grid.
pub fn tensor_subspace(x: &Subspace, y: &Subspace) -> Subspace {
    Subspace::from_matrix(x.basis().kron(y.basis()))
}

/// Verifies the identity
/// `(X (x) Y) cap (C_1 boxplus C_2) = (X cap C_1) (x) Y + X (x) (Y cap C_2)`
/// by exact subspace computation; a `false` indicates a bug.
pub fn intersection_identity_check(
    x: &Subspace,
    y: &Subspace,
    c1: &LinearCode,
    c2: &LinearCode,
    caps: &Caps,
) -> Result<bool> {
    if x.ambient_dim() != c1.len() || y.ambient_dim() != c2.len() {
        return Err(Error::DimensionMismatch(
            "operand subspaces must match the code lengths".into(),
        ));
    }
    let coll = CodeCollection::pair(c1.clone(), c2.clone())?;
    let boxplus = boxplus_basis(&coll, caps)?;
    let lhs = tensor_subspace(x, y).intersect(&boxplus)?;
    let left_term = tensor_subspace(&x.intersect(c1.generator())?, y);
    let right_term = tensor_subspace(x, &y.intersect(c2.generator())?);
    let rhs = left_term.sum(&right_term)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{dual, LinearCode};
    use crate::gf::{field_create, Field};
    use crate::linalg::random_subspace_from_rng;
    use crate::tensor::GridShape;
    use crate::{rat, Caps};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn gf2() -> Field {
        field_create(2, 1).unwrap()
    }

    fn rep3() -> LinearCode {
        LinearCode::from_generator(gf2(), 3, &[vec![1, 1, 1]]).unwrap()
    }

    fn word3x3(data: [Elt; 9]) -> TensorWord {
        TensorWord::from_flat(gf2(), GridShape::new(vec![3, 3]).unwrap(), data.to_vec()).unwrap()
    }

    #[test]
    fn zero_rectangle_trivial_cases() {
        let caps = Caps::default();
        let r = rep3();
        let zero = TensorWord::zero(gf2(), GridShape::new(vec![3, 3]).unwrap());
        let (d1, d2) =
            zero_rectangle_decompose(&zero, &[0, 1, 2], &[0, 1, 2], &r, &r, &caps).unwrap();
        assert!(d1.is_zero() && d2.is_zero());
        // single-row word, A1 = rows {1,2}, A2 = everything
        let x = word3x3([1, 1, 1, 0, 0, 0, 0, 0, 0]);
        let (d1, d2) = zero_rectangle_decompose(&x, &[1, 2], &[0, 1, 2], &r, &r, &caps).unwrap();
        assert!(d1.is_zero());
        assert_eq!(d2, x);
    }

    #[test]
    fn zero_rectangle_mixed_pattern() {
        // x[i][j] = u_i + v_j with u = 100, v = 100: rows/cols 1,2 form a
        // zero rectangle; one column plus one row reconstruct x
        let caps = Caps::default();
        let r = rep3();
        let x = word3x3([0, 1, 1, 1, 0, 0, 1, 0, 0]);
        assert!(boxplus_membership(&x, &r, &r).unwrap());
        let (d1, d2) = zero_rectangle_decompose(&x, &[1, 2], &[1, 2], &r, &r, &caps).unwrap();
        assert_eq!(d1.add(&d2).unwrap(), x);
        assert!(d1.line_weight(0) <= 1);
        assert!(d2.line_weight(1) <= 1);
    }

    #[test]
    fn zero_rectangle_rejects_bad_preconditions() {
        let caps = Caps::default();
        let r = rep3();
        let x = word3x3([0, 1, 1, 1, 0, 0, 1, 0, 0]);
        // complement too large for d(C1) = 3 would need |A1| <= ... here
        // A1 = {2}: n - |A1| = 2 < 3 holds, but x({2},{2}) != 0 fails
        assert!(zero_rectangle_decompose(&x, &[2], &[0], &r, &r, &caps).is_err());
        let not_cw = word3x3([1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(
            zero_rectangle_decompose(&not_cw, &[1, 2], &[1, 2], &r, &r, &caps),
            Err(Error::NotInBoxplus)
        ));
    }

    #[test]
    fn planted_rectangles_reconstruct() {
        // random D1 on few columns + D2 on few rows, then decompose
        let caps = Caps::default();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let r = rep3();
        let e = dual(&r);
        for trial in 0..200 {
            let (c1, c2) = if trial % 2 == 0 {
                (r.clone(), r.clone())
            } else {
                (e.clone(), e.clone())
            };
            let n = 3;
            let d1 = c1.min_distance(&caps).unwrap();
            let d2 = c2.min_distance(&caps).unwrap();
            // complements strictly smaller than the distances
            let bar1 = rng.gen_range(0..d1.min(n));
            let bar2 = rng.gen_range(0..d2.min(n));
            let a1: Vec<usize> = (bar1..n).collect();
            let a2: Vec<usize> = (bar2..n).collect();
            let mut x = TensorWord::zero(gf2(), GridShape::new(vec![n, n]).unwrap());
            // D1: random C1 codewords on the first bar2 columns
            for j in 0..bar2 {
                let msg: Vec<Elt> = (0..c1.dim()).map(|_| rng.gen_range(0..2)).collect();
                let cw = c1.generator().encode(&msg);
                for i in 0..n {
                    x.data_mut()[i * n + j] = x.field().add(x.data()[i * n + j], cw[i]);
                }
            }
            // D2: random C2 codewords on the first bar1 rows
            for i in 0..bar1 {
                let msg: Vec<Elt> = (0..c2.dim()).map(|_| rng.gen_range(0..2)).collect();
                let cw = c2.generator().encode(&msg);
                for j in 0..n {
                    x.data_mut()[i * n + j] = x.field().add(x.data()[i * n + j], cw[j]);
                }
            }
            if !restrict(&x, &a1, &a2).is_zero() {
                continue; // the plant can overlap; only exact zero rectangles qualify
            }
            let (dd1, dd2) =
                zero_rectangle_decompose(&x, &a1, &a2, &c1, &c2, &caps).unwrap();
            assert_eq!(dd1.add(&dd2).unwrap(), x);
            assert!(dd1.line_weight(0) <= n - a2.len());
            assert!(dd2.line_weight(1) <= n - a1.len());
        }
    }

    #[test]
    fn find_zero_rectangle_examples() {
        let caps = Caps::default();
        let r = rep3();
        let one = rat(1, 1);
        // zero word: the full rectangle
        let zero = TensorWord::zero(gf2(), GridShape::new(vec![3, 3]).unwrap());
        let (a, b) = find_zero_rectangle(&zero, &r, &r, &one, &one, &caps)
            .unwrap()
            .unwrap();
        assert_eq!((a, b), ((0..3).collect::<Vec<_>>(), (0..3).collect::<Vec<_>>()));
        // all-ones word: every line too heavy, rectangle empty and unusable
        let ones = word3x3([1; 9]);
        assert!(find_zero_rectangle(&ones, &r, &r, &one, &one, &caps)
            .unwrap()
            .is_none());
        // single-row word: rows {1,2} and all columns
        let row = word3x3([1, 1, 1, 0, 0, 0, 0, 0, 0]);
        let (a, b) = find_zero_rectangle(&row, &r, &r, &one, &one, &caps)
            .unwrap()
            .unwrap();
        assert_eq!(a, vec![1, 2]);
        assert_eq!(b, vec![0, 1, 2]);
    }

    #[test]
    fn extension_identity_sections() {
        let r = rep3();
        let x = word3x3([0, 1, 1, 0, 1, 1, 1, 0, 0]);
        // full index sets: identity sections
        let full: Vec<usize> = (0..3).collect();
        let x2 = extend_codeword_part(&x, &full, &full, &r, &r).unwrap();
        assert_eq!(x2, x);
        // zero restriction extends to zero
        let x3 = extend_codeword_part(&x, &[2], &[1], &r, &r).unwrap();
        let _ = x3;
    }

    #[test]
    fn extension_postconditions_random() {
        let caps = Caps::default();
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let r = rep3();
        let e = dual(&r);
        let coll = crate::tensor::CodeCollection::pair(r.clone(), e.clone()).unwrap();
        let basis = boxplus_basis(&coll, &caps).unwrap();
        for _ in 0..200 {
            let msg: Vec<Elt> = (0..basis.dim()).map(|_| rng.gen_range(0..2)).collect();
            let x = TensorWord::from_flat(gf2(), coll.shape(), basis.encode(&msg)).unwrap();
            let pick = |rng: &mut ChaCha12Rng| -> Vec<usize> {
                let size = rng.gen_range(1..=3usize);
                let mut s: Vec<usize> = (0..3).collect();
                for _ in 0..(3 - size) {
                    let idx = rng.gen_range(0..s.len());
                    s.remove(idx);
                }
                s
            };
            let a1 = pick(&mut rng);
            let a2 = pick(&mut rng);
            let xp = extend_codeword_part(&x, &a1, &a2, &r, &e).unwrap();
            assert_eq!(restrict(&xp, &a1, &a2), restrict(&x, &a1, &a2));
            assert_eq!(xp.to_matrix().rank(), restrict(&x, &a1, &a2).rank());
        }
    }

    #[test]
    fn rank_bound_examples() {
        let r = rep3();
        let e = dual(&r);
        let zero = TensorWord::zero(gf2(), GridShape::new(vec![3, 3]).unwrap());
        let rb = rank_bound_check(&zero, &r, &r).unwrap();
        assert_eq!(
            rb,
            RankBound {
                rank: 0,
                col_intersection_dim: 0,
                row_intersection_dim: 0,
                holds: true
            }
        );
        // identity in (Rep3, E3): rank 3 = 1 + 2 with equality
        let id = word3x3([1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let rb = rank_bound_check(&id, &r, &e).unwrap();
        assert_eq!(rb.rank, 3);
        assert_eq!(rb.col_intersection_dim, 1);
        assert_eq!(rb.row_intersection_dim, 2);
        assert!(rb.holds);
        // a single row from C2
        let row = word3x3([1, 1, 1, 0, 0, 0, 0, 0, 0]);
        let rb = rank_bound_check(&row, &r, &r).unwrap();
        assert_eq!(rb.rank, 1);
        assert!(rb.row_intersection_dim >= 1);
        assert!(rb.holds);
    }

    #[test]
    fn intersection_identity_trivial_and_random() {
        let caps = Caps::default();
        let r = rep3();
        let e = dual(&r);
        let zero = Subspace::zero(gf2(), 3);
        assert!(intersection_identity_check(&zero, &zero, &r, &e, &caps).unwrap());
        assert!(
            intersection_identity_check(r.generator(), e.generator(), &r, &e, &caps).unwrap()
        );
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let f = gf2();
        for _ in 0..100 {
            let n = rng.gen_range(3..=4);
            let cs: Vec<Subspace> = (0..4)
                .map(|_| {
                    let k = rng.gen_range(0..=n);
                    random_subspace_from_rng(&f, n, k, &mut rng).unwrap()
                })
                .collect();
            let c1 = LinearCode::from_subspace(cs[2].clone());
            let c2 = LinearCode::from_subspace(cs[3].clone());
            assert!(intersection_identity_check(&cs[0], &cs[1], &c1, &c2, &caps).unwrap());
        }
    }
}
