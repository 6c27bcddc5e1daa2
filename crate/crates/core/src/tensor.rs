//! m-dimensional tensor words over grids, product and dual product
//! (boxplus) codes, line weights and distances to the axis codes.
//!
//! Flattening convention: row-major with axis 1 slowest (the last axis has
//! stride 1). Lines parallel to axis `i` are enumerated in row-major order
//! of the grid with axis `i` removed.

use crate::codes::LinearCode;
use crate::gf::{elt_from_char, elt_to_char, field_of_order, Elt, Field};
use crate::linalg::{MatrixFq, Subspace};
use crate::{rat, Caps, Error, Rat, Result};

/// The shape of an m-dimensional grid `[n_1] x ... x [n_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridShape {
    sizes: Vec<usize>,
}

impl GridShape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&n| n == 0) {
            return Err(Error::ShapeMismatch("grid axes must be nonempty".into()));
        }
        Ok(GridShape { sizes })
    }

    pub fn axes(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, axis: usize) -> usize {
        self.sizes[axis]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_cells(&self) -> usize {
        self.sizes.iter().product()
    }

    /// Strides of the row-major layout (axis 1 slowest).
    pub fn strides(&self) -> Vec<usize> {
        let m = self.axes();
        let mut s = vec![1; m];
        for i in (0..m.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.sizes[i + 1];
        }
        s
    }

    pub fn lines_count(&self, axis: usize) -> usize {
        self.total_cells() / self.sizes[axis]
    }

    /// Cell indices of every line parallel to `axis`, each of length
    /// `n_axis`, in row-major order of the reduced grid.
    pub fn lines(&self, axis: usize) -> Vec<Vec<usize>> {
        let strides = self.strides();
        let m = self.axes();
        let reduced: Vec<usize> = (0..m).filter(|&a| a != axis).collect();
        let mut lines = Vec::with_capacity(self.lines_count(axis));
        let mut coords = vec![0usize; reduced.len()];
        loop {
            let base: usize = reduced
                .iter()
                .zip(&coords)
                .map(|(&a, &c)| strides[a] * c)
                .sum();
            lines.push((0..self.sizes[axis]).map(|t| base + t * strides[axis]).collect());
            // odometer over the reduced axes, last fastest
            let mut i = reduced.len();
            loop {
                if i == 0 {
                    return lines;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.sizes[reduced[i]] {
                    break;
                }
                coords[i] = 0;
            }
        }
    }
}

/// An element of `F_q^{n_1 x ... x n_m}` in the documented flattening.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorWord {
    field: Field,
    shape: GridShape,
    data: Vec<Elt>,
}

impl std::fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorWord{:?} {:?}", self.shape.sizes(), self.data)
    }
}

impl TensorWord {
    pub fn zero(field: Field, shape: GridShape) -> Self {
        let data = vec![0; shape.total_cells()];
        TensorWord { field, shape, data }
    }

    pub fn from_flat(field: Field, shape: GridShape, data: Vec<Elt>) -> Result<Self> {
        if data.len() != shape.total_cells() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a grid of {} cells",
                data.len(),
                shape.total_cells()
            )));
        }
        if data.iter().any(|&x| x as u64 >= field.order()) {
            return Err(Error::Parse("entry outside the field".into()));
        }
        Ok(TensorWord { field, shape, data })
    }

    /// 2-dimensional word from a matrix.
    pub fn from_matrix(m: &MatrixFq) -> Self {
        TensorWord {
            field: m.field().clone(),
            shape: GridShape::new(vec![m.rows(), m.cols()]).unwrap(),
            data: m.data().to_vec(),
        }
    }

    pub fn to_matrix(&self) -> MatrixFq {
        assert_eq!(self.shape.axes(), 2, "matrix view needs a 2-dimensional word");
        MatrixFq::from_flat(
            self.field.clone(),
            self.shape.size(0),
            self.shape.size(1),
            self.data.clone(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn data(&self) -> &[Elt] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Elt] {
        &mut self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Hamming weight `|x|`.
    pub fn weight(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    /// Normalized weight `||x|| = |x| / prod n_i`.
    pub fn norm(&self) -> Rat {
        rat(self.weight() as i64, self.shape.total_cells() as i64)
    }

    pub fn line_values(&self, line: &[usize]) -> Vec<Elt> {
        line.iter().map(|&i| self.data[i]).collect()
    }

    /// Number of nonzero lines in direction `axis` (`|x|_i`).
    pub fn line_weight(&self, axis: usize) -> usize {
        self.shape
            .lines(axis)
            .iter()
            .filter(|line| line.iter().any(|&i| self.data[i] != 0))
            .count()
    }

    /// Fraction of nonzero lines in direction `axis` (`||x||_i`).
    pub fn line_norm(&self, axis: usize) -> Rat {
        rat(
            self.line_weight(axis) as i64,
            self.shape.lines_count(axis) as i64,
        )
    }

    pub fn add(&self, other: &TensorWord) -> Result<TensorWord> {
        self.check_shape(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(TensorWord {
            field: self.field.clone(),
            shape: self.shape.clone(),
            data,
        })
    }

    pub fn sub(&self, other: &TensorWord) -> Result<TensorWord> {
        self.check_shape(other)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(TensorWord {
            field: self.field.clone(),
            shape: self.shape.clone(),
            data,
        })
    }

    fn check_shape(&self, other: &TensorWord) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "{:?} vs {:?}",
                self.shape.sizes(),
                other.shape.sizes()
            )));
        }
        Ok(())
    }

    /// Text format: header `q m n_1 ... n_m`, then all cells as base-36
    /// digits in the flattening order.
    pub fn to_text(&self) -> Result<String> {
        let mut out = format!("{} {}", self.field.order(), self.shape.axes());
        for &n in self.shape.sizes() {
            out.push_str(&format!(" {n}"));
        }
        out.push('\n');
        for &x in &self.data {
            out.push(elt_to_char(x)?);
        }
        out.push('\n');
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty word file".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse("bad word header".into())))
            .collect::<Result<_>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse("word header needs q and m".into()));
        }
        let q = nums[0];
        let m = nums[1] as usize;
        if nums.len() != 2 + m {
            return Err(Error::Parse(format!(
                "word header promises {m} axes, found {}",
                nums.len() - 2
            )));
        }
        let field = field_of_order(q)?;
        let shape = GridShape::new(nums[2..].iter().map(|&n| n as usize).collect())?;
        let digits: String = lines.collect();
        let data: Result<Vec<Elt>> = digits
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(elt_from_char)
            .collect();
        TensorWord::from_flat(field, shape, data?)
    }
}

/// An ordered collection of component codes matching a grid.
#[derive(Debug, Clone)]
pub struct CodeCollection {
    codes: Vec<LinearCode>,
}

impl CodeCollection {
    pub fn new(codes: Vec<LinearCode>) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::ShapeMismatch("empty code collection".into()));
        }
        let field = codes[0].field().clone();
        if codes.iter().any(|c| *c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(CodeCollection { codes })
    }

    pub fn pair(c1: LinearCode, c2: LinearCode) -> Result<Self> {
        Self::new(vec![c1, c2])
    }

    pub fn axes(&self) -> usize {
        self.codes.len()
    }

    pub fn code(&self, i: usize) -> &LinearCode {
        &self.codes[i]
    }

    pub fn codes(&self) -> &[LinearCode] {
        &self.codes
    }

    pub fn field(&self) -> &Field {
        self.codes[0].field()
    }

    pub fn shape(&self) -> GridShape {
        GridShape::new(self.codes.iter().map(|c| c.len()).collect()).unwrap()
    }

    /// Degenerate iff some `C_i = F_q^{n_i}`.
    pub fn is_degenerate(&self) -> bool {
        self.codes.iter().any(|c| c.is_full())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.codes.iter().map(|c| c.dim()).collect()
    }

    /// `dim(C_1 boxplus ... boxplus C_m) = prod n_i - prod (n_i - k_i)`.
    pub fn boxplus_dim(&self) -> usize {
        let total: usize = self.codes.iter().map(|c| c.len()).product();
        let codim: usize = self.codes.iter().map(|c| c.len() - c.dim()).product();
        total - codim
    }

    /// The subcollection indexed by `axes` (order preserved).
    pub fn subcollection(&self, axes: &[usize]) -> Result<Self> {
        let codes: Vec<LinearCode> = axes.iter().map(|&i| self.codes[i].clone()).collect();
        CodeCollection::new(codes)
    }
}

/// Membership in the product code: every line in every direction must be a
/// codeword of the matching component code.
pub fn tensor_membership(x: &TensorWord, coll: &CodeCollection) -> Result<bool> {
    check_word_collection(x, coll)?;
    for (axis, code) in coll.codes().iter().enumerate() {
        for line in x.shape().lines(axis) {
            if !code.contains(&x.line_values(&line)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership in `C_1 boxplus C_2` by the syndrome test `H_1 x H_2^T = 0`.
pub fn boxplus_membership(x: &TensorWord, c1: &LinearCode, c2: &LinearCode) -> Result<bool> {
    let coll = CodeCollection::pair(c1.clone(), c2.clone())?;
    check_word_collection(x, &coll)?;
    let xm = x.to_matrix();
    let s = c1
        .parity_check()
        .mul_matrix(&xm)?
        .mul_matrix(&c2.parity_check().transpose())?;
    Ok(s.is_zero())
}

fn check_word_collection(x: &TensorWord, coll: &CodeCollection) -> Result<()> {
    if x.field() != coll.field() {
        return Err(Error::FieldMismatch);
    }
    if *x.shape() != coll.shape() {
        return Err(Error::ShapeMismatch(format!(
            "word {:?} vs collection {:?}",
            x.shape().sizes(),
            coll.shape().sizes()
        )));
    }
    Ok(())
}

/// Basis of `C^(i)` (the direct sum of `|L_i|` copies of `C_i`) as a
/// subspace of the flattened grid.
pub fn axis_code_basis(coll: &CodeCollection, axis: usize, caps: &Caps) -> Result<Subspace> {
    let shape = coll.shape();
    caps.check_cells(shape.total_cells() as u64)?;
    let n_cells = shape.total_cells();
    let code = coll.code(axis);
    let mut rows = Vec::with_capacity(shape.lines_count(axis) * code.dim());
    for line in shape.lines(axis) {
        for gen_row in code.generator().basis_rows() {
            let mut v = vec![0 as Elt; n_cells];
            for (t, &cell) in line.iter().enumerate() {
                v[cell] = gen_row[t];
            }
            rows.push(v);
        }
    }
    let s = Subspace::from_rows(coll.field().clone(), n_cells, &rows);
    debug_assert_eq!(s.dim(), shape.lines_count(axis) * code.dim());
    Ok(s)
}

/// Basis of `C_1 boxplus ... boxplus C_m = C^(1) + ... + C^(m)`.
pub fn boxplus_basis(coll: &CodeCollection, caps: &Caps) -> Result<Subspace> {
    let mut acc = axis_code_basis(coll, 0, caps)?;
    for axis in 1..coll.axes() {
        acc = acc.sum(&axis_code_basis(coll, axis, caps)?)?;
    }
    if coll.axes() == 2 {
        let (n1, k1) = (coll.code(0).len(), coll.code(0).dim());
        let (n2, k2) = (coll.code(1).len(), coll.code(1).dim());
        assert_eq!(acc.dim(), n1 * k2 + k1 * n2 - k1 * k2);
    }
    debug_assert_eq!(acc.dim(), coll.boxplus_dim());
    Ok(acc)
}

/// Basis of the product code `C_1 (x) ... (x) C_m` (tensor products of the
/// generator rows).
pub fn product_code_basis(coll: &CodeCollection, caps: &Caps) -> Result<Subspace> {
    let shape = coll.shape();
    caps.check_cells(shape.total_cells() as u64)?;
    let strides = shape.strides();
    let n_cells = shape.total_cells();
    // iterate over tuples of generator rows, one per axis
    let dims = coll.dims();
    let k_total: usize = dims.iter().product();
    let mut rows = Vec::with_capacity(k_total);
    let mut idx = vec![0usize; coll.axes()];
    if dims.iter().all(|&k| k > 0) {
        loop {
            let mut v = vec![0 as Elt; n_cells];
            let f = coll.field();
            // fill by iterating all cells
            let mut coords = vec![0usize; coll.axes()];
            loop {
                let mut val: Elt = 1;
                for (axis, &c) in coords.iter().enumerate() {
                    let g = coll.code(axis).generator().basis();
                    val = f.mul(val, g[(idx[axis], c)]);
                    if val == 0 {
                        break;
                    }
                }
                let cell: usize = coords.iter().zip(&strides).map(|(&c, &s)| c * s).sum();
                v[cell] = val;
                let mut a = coll.axes();
                loop {
                    if a == 0 {
                        coords.clear();
                        break;
                    }
                    a -= 1;
                    coords[a] += 1;
                    if coords[a] < shape.size(a) {
                        break;
                    }
                    coords[a] = 0;
                }
                if coords.is_empty() {
                    break;
                }
            }
            rows.push(v);
            let mut a = coll.axes();
            loop {
                if a == 0 {
                    idx.clear();
                    break;
                }
                a -= 1;
                idx[a] += 1;
                if idx[a] < dims[a] {
                    break;
                }
                idx[a] = 0;
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    let s = Subspace::from_rows(coll.field().clone(), n_cells, &rows);
    debug_assert_eq!(s.dim(), k_total);
    Ok(s)
}

/// Per-axis `(|x|_i, ||x||_i)` pairs.
pub fn line_weights(x: &TensorWord) -> Vec<(usize, Rat)> {
    (0..x.shape().axes())
        .map(|axis| (x.line_weight(axis), x.line_norm(axis)))
        .collect()
}

/// Exhaustive nearest codeword in a subspace, ties broken by the
/// lexicographically smallest codeword. Returns `(codeword, distance)`.
pub fn nearest_codeword(x: &[Elt], space: &Subspace, caps: &Caps) -> Result<(Vec<Elt>, usize)> {
    assert_eq!(x.len(), space.ambient_dim());
    caps.check_enum(space.field().order(), space.dim())?;
    let mut best: Option<(Vec<Elt>, usize)> = None;
    for c in space.elements() {
        let d = x.iter().zip(&c).filter(|(a, b)| a != b).count();
        match &best {
            Some((bc, bd)) if (d, &c) >= (*bd, bc) => {}
            _ => best = Some((c, d)),
        }
    }
    Ok(best.expect("subspace contains at least the zero vector"))
}

/// `delta(x, C^(i))`: sum of per-line distances to `C_i`, normalized by the
/// total number of cells. Exact rational.
pub fn distance_to_axis_code(
    x: &TensorWord,
    coll: &CodeCollection,
    axis: usize,
    caps: &Caps,
) -> Result<Rat> {
    check_word_collection(x, coll)?;
    let code = coll.code(axis);
    let mut total = 0usize;
    for line in x.shape().lines(axis) {
        let vals = x.line_values(&line);
        let (_, d) = nearest_codeword(&vals, code.generator(), caps)?;
        total += d;
    }
    Ok(rat(total as i64, x.shape().total_cells() as i64))
}
