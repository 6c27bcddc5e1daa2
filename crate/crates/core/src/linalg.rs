//! Exact matrices and subspaces over a finite field.
//!
//! Everything reduces to plain Gaussian elimination: deterministic RREF
//! (leftmost pivot, topmost row), kernels and images, canonical subspaces
//! (RREF bases, so equality is bit equality), sums/intersections via duals,
//! uniform Grassmannian sampling by rejection, and exact q-binomials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::gf::{Elt, Field};
use crate::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct MatrixFq {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl std::fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixFq {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
impl Eq for MatrixFq {}

impl MatrixFq {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        MatrixFq {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Elt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let q = field.q() as Elt;
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &x in r {
                if x >= q {
                    return Err(Error::Parse(format!("entry {x} not a field element")));
                }
                data.push(x);
            }
        }
        Ok(MatrixFq {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Elt>) -> Self {
        assert_eq!(rows * cols, data.len());
        MatrixFq {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elt] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Elt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = MatrixFq::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul_matrix(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixFq::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elt]) -> Vec<Elt> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut out = vec![0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0;
            for (j, &x) in v.iter().enumerate() {
                if x != 0 {
                    acc = f.add(acc, f.mul(self[(i, j)], x));
                }
            }
            out[i] = acc;
        }
        out
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Elt]) -> Vec<Elt> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..self.cols {
                let m = self[(i, j)];
                if m != 0 {
                    out[j] = f.add(out[j], f.mul(x, m));
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixFq {
        let mut out = MatrixFq::zeros(self.field.clone(), rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)];
            }
        }
        out
    }

    /// Kronecker product `self (x) other`, a-major index order:
    /// row `(i, i')` of the result is `i * other.rows + i'`.
    pub fn kron(&self, other: &MatrixFq) -> MatrixFq {
        let f = &self.field;
        let mut out = MatrixFq::zeros(
            self.field.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other[(i2, j2)];
                        if b != 0 {
                            out[(i * other.rows + i2, j * other.cols + j2)] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form (deterministic: leftmost pivot
    /// column, topmost nonzero row). Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let mut sel = None;
            for r in pivot_row..self.rows {
                if self[(r, col)] != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pivot_row {
                for c in 0..self.cols {
                    self.data.swap(sel * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let inv = f.inv(self[(pivot_row, col)]);
            if inv != 1 {
                for c in col..self.cols {
                    self[(pivot_row, c)] = f.mul(self[(pivot_row, c)], inv);
                }
            }
            for r in 0..self.rows {
                if r != pivot_row && self[(r, col)] != 0 {
                    let factor = self[(r, col)];
                    for c in col..self.cols {
                        let sub = f.mul(factor, self[(pivot_row, c)]);
                        self[(r, c)] = f.sub(self[(r, c)], sub);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Inverse of a square full-rank matrix via `[M | I]` elimination.
    pub fn inverse(&self) -> Result<MatrixFq> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = MatrixFq::zeros(self.field.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, n + r)] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let mut inv = MatrixFq::zeros(self.field.clone(), n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)];
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for MatrixFq {
    type Output = Elt;
    fn index(&self, (r, c): (usize, usize)) -> &Elt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixFq {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elt {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form together with rank and pivot columns.
pub fn rref(m: &MatrixFq) -> (MatrixFq, usize, Vec<usize>) {
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let rank = pivots.len();
    (r, rank, pivots)
}

/// RREF with pivot selection restricted to the first `limit` columns,
/// leaving any augmented block to record the row operations. Returns the
/// pivot columns.
pub fn rref_prefix(m: &mut MatrixFq, limit: usize) -> Vec<usize> {
    let f = m.field().clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..limit {
        if pivot_row == rows {
            break;
        }
        let mut sel = None;
        for r in pivot_row..rows {
            if m[(r, col)] != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        if sel != pivot_row {
            for c in 0..cols {
                let a = m[(sel, c)];
                let b = m[(pivot_row, c)];
                m[(sel, c)] = b;
                m[(pivot_row, c)] = a;
            }
        }
        let inv = f.inv(m[(pivot_row, col)]);
        if inv != 1 {
            for c in 0..cols {
                m[(pivot_row, c)] = f.mul(m[(pivot_row, c)], inv);
            }
        }
        for r in 0..rows {
            if r != pivot_row && m[(r, col)] != 0 {
                let factor = m[(r, col)];
                for c in 0..cols {
                    let s = f.mul(factor, m[(pivot_row, c)]);
                    m[(r, c)] = f.sub(m[(r, c)], s);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// The kernel `{v : M v = 0}` of `M` as a map on column vectors.
pub fn kernel(m: &MatrixFq) -> Subspace {
    let (r, rank, pivots) = rref(m);
    let f = m.field();
    let n = m.cols();
    let mut free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.sort_unstable();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0 as Elt; n];
        v[fc] = 1;
        for (prow, &pcol) in pivots.iter().enumerate() {
            // pivot entry is 1, so the pivot coordinate is -R[prow, fc]
            v[pcol] = f.neg(r[(prow, fc)]);
        }
        basis.push(v);
    }
    debug_assert_eq!(basis.len() + rank, n);
    Subspace::from_rows(m.field().clone(), n, &basis)
}

/// The column space of `M` (`im M` for the column-vector action).
pub fn image(m: &MatrixFq) -> Subspace {
    let t = m.transpose();
    Subspace::from_matrix(t)
}

/// The row space of `M`.
pub fn row_space(m: &MatrixFq) -> Subspace {
    Subspace::from_matrix(m.clone())
}

/// A linear subspace of `F_q^n` in canonical form.
///
/// The basis matrix is the RREF of any generating set with zero rows
/// dropped, so two `Subspace` values are equal iff their representations are
/// bit-identical.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: MatrixFq, // k x n, RREF, no zero rows
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of F^{})\n{:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: MatrixFq::zeros(field.clone(), 0, ambient),
            field,
            ambient,
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: MatrixFq::identity(field.clone(), ambient),
            field,
            ambient,
        }
    }

    pub fn from_rows(field: Field, ambient: usize, rows: &[Vec<Elt>]) -> Self {
        let m = if rows.is_empty() {
            MatrixFq::zeros(field.clone(), 0, ambient)
        } else {
            MatrixFq::from_rows(field.clone(), rows).expect("consistent rows")
        };
        assert!(rows.iter().all(|r| r.len() == ambient));
        Self::from_matrix(m)
    }

    /// Canonicalizes the row space of `m`.
    pub fn from_matrix(m: MatrixFq) -> Self {
        let field = m.field().clone();
        let ambient = m.cols();
        let (r, rank, _) = rref(&m);
        let mut data = Vec::with_capacity(rank * ambient);
        for row in 0..rank {
            data.extend_from_slice(r.row(row));
        }
        Subspace {
            field,
            ambient,
            basis: MatrixFq::from_flat(r.field().clone(), rank, ambient, data),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Elt]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[Elt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        let mut v = v.to_vec();
        for row in 0..self.dim() {
            // pivot = first nonzero column of the RREF row
            let pivot = self.basis.row(row).iter().position(|&x| x != 0).unwrap();
            let c = v[pivot];
            if c != 0 {
                for j in pivot..self.ambient {
                    let s = f.mul(c, self.basis[(row, j)]);
                    v[j] = f.sub(v[j], s);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().all(|r| self.contains(r))
    }

    /// Expands the message vector `msg` (length `dim`) into the ambient
    /// element `msg * basis`.
    pub fn encode(&self, msg: &[Elt]) -> Vec<Elt> {
        self.basis.vec_mul(msg)
    }

    /// Iterates all `q^dim` elements in message-lexicographic order
    /// (message digits over the basis rows, last row fastest).
    pub fn elements(&self) -> SubspaceElements<'_> {
        SubspaceElements {
            space: self,
            msg: vec![0; self.dim()],
            done: false,
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows: Vec<Vec<Elt>> = self.basis_rows().map(|r| r.to_vec()).collect();
        rows.extend(other.basis_rows().map(|r| r.to_vec()));
        Ok(Subspace::from_rows(self.field.clone(), self.ambient, &rows))
    }

    /// Orthogonal complement with respect to the standard bilinear form.
    pub fn dual(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Intersection via duals: `A cap B = (A^perp + B^perp)^perp`.
    /// The modular dimension law is asserted.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let inter = self.dual().sum(&other.dual())?.dual();
        debug_assert_eq!(
            self.sum(other).unwrap().dim() + inter.dim(),
            self.dim() + other.dim(),
            "modular dimension law violated"
        );
        Ok(inter)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

pub struct SubspaceElements<'a> {
    space: &'a Subspace,
    msg: Vec<Elt>,
    done: bool,
}

impl<'a> Iterator for SubspaceElements<'a> {
    type Item = Vec<Elt>;

    fn next(&mut self) -> Option<Vec<Elt>> {
        if self.done {
            return None;
        }
        let out = self.space.encode(&self.msg);
        // increment base-q counter, last digit fastest
        let q = self.space.field.q() as Elt;
        let mut i = self.msg.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.msg[i] += 1;
            if self.msg[i] < q {
                break;
            }
            self.msg[i] = 0;
        }
        Some(out)
    }
}

/// Draws a uniform element of the Grassmannian `Gr(n, k)` over the field.
///
/// Contract: sample `k x n` matrices with i.i.d. uniform entries and reject
/// until the rank is `k`; the row space is then uniform because every
/// k-dimensional subspace has the same number of ordered bases. Fails loudly
/// after 64 rejections (expected attempts < 4).
pub fn random_subspace_from_rng<R: Rng>(
    field: &Field,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<Subspace> {
    if k > n {
        return Err(Error::Precondition(format!("k={k} > n={n}")));
    }
    if k == 0 {
        return Ok(Subspace::zero(field.clone(), n));
    }
    let q = field.q();
    for _ in 0..64 {
        let data: Vec<Elt> = (0..k * n).map(|_| rng.gen_range(0..q) as Elt).collect();
        let m = MatrixFq::from_flat(field.clone(), k, n, data);
        if m.rank() == k {
            return Ok(Subspace::from_matrix(m));
        }
    }
    Err(Error::TheoryViolation(
        "rank-deficient draws 64 times in a row".into(),
    ))
}

/// Seeded wrapper around [`random_subspace_from_rng`]; same seed, same
/// subspace, bit for bit.
pub fn random_subspace(field: &Field, n: usize, k: usize, seed: u64) -> Result<Subspace> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_subspace_from_rng(field, n, k, &mut rng)
}

/// The Gaussian binomial coefficient `[n k]_q` in exact arithmetic.
pub fn qbinom(n: u64, k: u64, q: u64) -> BigUint {
    assert!(k <= n, "qbinom requires 0 <= k <= n");
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((k - i) as u32) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(num_traits::Zero::is_zero(&rem));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_create;
    use num_traits::ToPrimitive;

    fn gf2() -> Field {
        field_create(2, 1).unwrap()
    }

    #[test]
    fn rref_zero_matrix() {
        let m = MatrixFq::zeros(gf2(), 3, 4);
        let (r, rank, pivots) = rref(&m);
        assert!(r.is_zero());
        assert_eq!(rank, 0);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_identity_fixed_point() {
        let m = MatrixFq::identity(gf2(), 3);
        let (r, rank, pivots) = rref(&m);
        assert_eq!(r, m);
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_detects_dependence() {
        let m = MatrixFq::from_rows(
            gf2(),
            &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
        )
        .unwrap();
        let (_, rank, _) = rref(&m);
        assert_eq!(rank, 2);
    }

    #[test]
    fn kernel_of_parity_check_is_even_weight_code() {
        let h = MatrixFq::from_rows(gf2(), &[vec![1, 1, 1]]).unwrap();
        let k = kernel(&h);
        assert_eq!(k.dim(), 2);
        for v in k.basis_rows() {
            assert_eq!(v.iter().filter(|&&x| x != 0).count() % 2, 0);
        }
    }

    #[test]
    fn image_of_zero_and_kernel_of_identity() {
        let z = MatrixFq::zeros(gf2(), 3, 3);
        assert!(image(&z).is_zero());
        let i = MatrixFq::identity(gf2(), 4);
        assert!(kernel(&i).is_zero());
    }

    #[test]
    fn rank_nullity_random() {
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = field_create(p, e).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(7);
            for _ in 0..500 {
                let rows = rng.gen_range(1..=8);
                let cols = rng.gen_range(1..=8);
                let data: Vec<Elt> =
                    (0..rows * cols).map(|_| rng.gen_range(0..f.q()) as Elt).collect();
                let m = MatrixFq::from_flat(f.clone(), rows, cols, data);
                let (r, rank, _) = rref(&m);
                assert_eq!(rank, m.rank());
                assert_eq!(kernel(&m).dim() + rank, cols);
                assert_eq!(image(&m).dim(), rank);
                // rref is row-equivalent: same row space
                assert_eq!(row_space(&m), row_space(&r));
            }
        }
    }

    #[test]
    fn subspace_sum_intersection_idempotence() {
        let f = gf2();
        let a = Subspace::from_rows(f.clone(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let zero = Subspace::zero(f.clone(), 3);
        assert_eq!(a.intersect(&zero).unwrap(), zero);
        assert_eq!(a.sum(&zero).unwrap(), a);
    }

    #[test]
    fn intersection_matches_exhaustive_membership() {
        // A = span{100, 010}, B = span{110, 001}: A cap B = span{110}
        let f = gf2();
        let a = Subspace::from_rows(f.clone(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_rows(f.clone(), 3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        let cap = a.intersect(&b).unwrap();
        assert_eq!(cap.dim(), 1);
        // oracle: test all 8 vectors of F_2^3
        for bits in 0..8u16 {
            let v = vec![bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
            let both = a.contains(&v) && b.contains(&v);
            assert_eq!(cap.contains(&v), both, "vector {v:?}");
        }
    }

    #[test]
    fn modular_dimension_law_random_pairs() {
        let fields = [field_create(2, 1).unwrap(), field_create(3, 1).unwrap()];
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..500 {
            let f = &fields[rng.gen_range(0..fields.len())];
            let n = rng.gen_range(1..=6);
            let ka = rng.gen_range(0..=n);
            let kb = rng.gen_range(0..=n);
            let a = random_subspace_from_rng(f, n, ka, &mut rng).unwrap();
            let b = random_subspace_from_rng(f, n, kb, &mut rng).unwrap();
            let sum = a.sum(&b).unwrap();
            let cap = a.intersect(&b).unwrap();
            assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
            assert!(sum.contains_subspace(&a) && sum.contains_subspace(&b));
            assert!(a.contains_subspace(&cap) && b.contains_subspace(&cap));
        }
    }

    #[test]
    fn dual_is_orthogonal_complement() {
        let f = gf2();
        let a = Subspace::from_rows(f.clone(), 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let d = a.dual();
        assert_eq!(d.dim(), 2);
        for u in a.basis_rows() {
            for w in d.basis_rows() {
                let dot = u
                    .iter()
                    .zip(w)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(d.dual(), a);
    }

    #[test]
    fn random_subspace_deterministic_and_edge_dims() {
        let f = gf2();
        let a = random_subspace(&f, 5, 2, 42).unwrap();
        let b = random_subspace(&f, 5, 2, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(random_subspace(&f, 4, 0, 1).unwrap(), Subspace::zero(f.clone(), 4));
        assert_eq!(random_subspace(&f, 4, 4, 1).unwrap(), Subspace::full(f.clone(), 4));
    }

    #[test]
    fn grassmannian_sampling_uniform_over_lines() {
        // Gr(3,1) over GF(2): the 7 lines, each hit ~ N/7.
        let f = gf2();
        let mut rng = ChaCha12Rng::seed_from_u64(1234);
        let mut counts = std::collections::HashMap::new();
        let n_samples = 100_000;
        for _ in 0..n_samples {
            let s = random_subspace_from_rng(&f, 3, 1, &mut rng).unwrap();
            *counts.entry(s.basis().data().to_vec()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 7, "all 7 lines of F_2^3 must appear");
        let p = 1.0 / 7.0;
        let sigma = (n_samples as f64 * p * (1.0 - p)).sqrt();
        for (_, c) in counts {
            let dev = (c as f64 - n_samples as f64 * p).abs();
            assert!(dev <= 5.0 * sigma, "deviation {dev} beyond 5 sigma {sigma}");
        }
    }

    /// Brute-force count of k-dimensional subspaces of F_q^n by enumerating
    /// RREF canonical forms of all spanning sets.
    fn count_subspaces_brute(f: &Field, n: usize, k: usize) -> usize {
        use std::collections::HashSet;
        let q = f.q() as u64;
        let total = q.pow(n as u32 * k as u32);
        let mut seen = HashSet::new();
        for enc in 0..total {
            let mut data = Vec::with_capacity(n * k);
            let mut x = enc;
            for _ in 0..n * k {
                data.push((x % q) as Elt);
                x /= q;
            }
            let m = MatrixFq::from_flat(f.clone(), k, n, data);
            if m.rank() == k {
                let s = Subspace::from_matrix(m);
                seen.insert(s.basis().data().to_vec());
            }
        }
        seen.len()
    }

    #[test]
    fn qbinom_matches_brute_force_counts() {
        let f = gf2();
        assert_eq!(qbinom(3, 0, 2).to_u64().unwrap(), 1);
        let lines = count_subspaces_brute(&f, 3, 1);
        assert_eq!(lines, 7);
        assert_eq!(qbinom(3, 1, 2).to_u64().unwrap(), lines as u64);
        let planes = count_subspaces_brute(&f, 4, 2);
        assert_eq!(planes, 35);
        assert_eq!(qbinom(4, 2, 2).to_u64().unwrap(), planes as u64);
    }

    #[test]
    fn qbinom_two_sided_bounds() {
        // q^{k(n-k)} <= [n k]_q <= 4 q^{k(n-k)} for q in {2,3,4,5}, n <= 8
        for q in [2u64, 3, 4, 5] {
            for n in 0..=8u64 {
                for k in 0..=n {
                    let v = qbinom(n, k, q);
                    let base = BigUint::from(q).pow((k * (n - k)) as u32);
                    assert!(v >= base, "lower bound failed q={q} n={n} k={k}");
                    assert!(v <= &base * 4u32, "upper bound failed q={q} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn kron_of_identities() {
        let f = gf2();
        let a = MatrixFq::identity(f.clone(), 2);
        let b = MatrixFq::identity(f.clone(), 3);
        assert_eq!(a.kron(&b), MatrixFq::identity(f, 6));
    }
}
