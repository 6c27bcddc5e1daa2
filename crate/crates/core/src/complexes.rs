//! Based cochain complexes over `F_q` with block structure: the two-term
//! complex of an encoder, tensor products of complexes with Koszul signs,
//! cohomology dimensions, block-weight norms, and Cheeger constants.

use serde::Serialize;

use crate::expansion::expansion_factor;
use crate::gf::{Elt, Field};
use crate::linalg::{image, MatrixFq, Subspace};
use crate::tensor::CodeCollection;
use crate::{rat, rat_str, Caps, Error, Rat, Result};

/// A poset coordinate: `None` renders as `*`, `Some(i)` as the cell index.
pub type PosetCoord = Option<usize>;

/// A block of a term: a based subspace labeled by a poset element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub label: Vec<PosetCoord>,
    pub dim: usize,
}

/// One term of a complex: an ordered list of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Term {
    pub fn new(blocks: Vec<Block>) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for b in &blocks {
            offsets.push(dim);
            dim += b.dim;
        }
        Term {
            blocks,
            offsets,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// Number of nonzero blocks of a coefficient vector of this term.
    pub fn block_weight(&self, v: &[Elt]) -> usize {
        assert_eq!(v.len(), self.dim);
        self.blocks
            .iter()
            .zip(&self.offsets)
            .filter(|(b, &off)| v[off..off + b.dim].iter().any(|&x| x != 0))
            .count()
    }

    /// Block norm `||v|| = wt_X(v) / |X(i)|`.
    pub fn block_norm(&self, v: &[Elt]) -> Rat {
        rat(self.block_weight(v) as i64, self.block_count() as i64)
    }
}

/// A based cochain complex: terms `C^0 -> C^1 -> ...` with coboundary
/// matrices acting on column vectors. `delta delta = 0` is enforced at
/// construction.
#[derive(Debug, Clone)]
pub struct BasedComplex {
    field: Field,
    terms: Vec<Term>,
    /// maps[i]: C^i -> C^{i+1}, shape dim(i+1) x dim(i)
    maps: Vec<MatrixFq>,
    /// axis lengths when the complex came from a product of encoders
    axis_sizes: Option<Vec<usize>>,
}

impl BasedComplex {
    pub fn new(field: Field, terms: Vec<Term>, maps: Vec<MatrixFq>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition("a complex needs at least one term".into()));
        }
        if maps.len() + 1 != terms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} maps, got {}",
                terms.len(),
                terms.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != terms[i + 1].dim() || m.cols() != terms[i].dim() {
                return Err(Error::DimensionMismatch(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    terms[i + 1].dim(),
                    terms[i].dim()
                )));
            }
        }
        for i in 0..maps.len().saturating_sub(1) {
            let comp = maps[i + 1].mul_matrix(&maps[i])?;
            if !comp.is_zero() {
                return Err(Error::TheoryViolation(format!(
                    "delta_{} after delta_{} is nonzero",
                    i + 1,
                    i
                )));
            }
        }
        Ok(BasedComplex {
            field,
            terms,
            maps,
            axis_sizes: None,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Degree of the top term.
    pub fn top(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> &Term {
        &self.terms[i]
    }

    pub fn map(&self, i: usize) -> &MatrixFq {
        &self.maps[i]
    }

    pub fn axis_sizes(&self) -> Option<&[usize]> {
        self.axis_sizes.as_deref()
    }

    /// Space of `i`-coboundaries `B^i = im delta_{i-1}`.
    pub fn coboundaries(&self, i: usize) -> Subspace {
        if i == 0 {
            Subspace::zero(self.field.clone(), self.terms[0].dim())
        } else {
            image(&self.maps[i - 1])
        }
    }

    /// Space of `i`-cocycles `Z^i = ker delta_i`.
    pub fn cocycles(&self, i: usize) -> Subspace {
        if i == self.top() {
            Subspace::full(self.field.clone(), self.terms[i].dim())
        } else {
            crate::linalg::kernel(&self.maps[i])
        }
    }

    /// `dim H^i = dim Z^i - dim B^i`.
    pub fn cohomology_dim(&self, i: usize) -> usize {
        self.cocycles(i).dim() - self.coboundaries(i).dim()
    }

    /// Applies `delta_i` to a cochain of term `i`.
    pub fn coboundary(&self, i: usize, v: &[Elt]) -> Vec<Elt> {
        self.maps[i].mul_vec(v)
    }
}

/// The two-term complex `F_q^k -> F_q^n` of an injective encoder (the rows
/// of `g` span the code; the coboundary matrix is `g^T` acting on column
/// vectors).
pub fn complex_from_encoder(g: &MatrixFq) -> Result<BasedComplex> {
    let k = g.rows();
    let n = g.cols();
    if g.rank() != k {
        return Err(Error::Precondition("encoder must have full row rank".into()));
    }
    let term0 = Term::new(vec![Block {
        label: vec![None],
        dim: k,
    }]);
    let term1 = Term::new(
        (0..n)
            .map(|i| Block {
                label: vec![Some(i)],
                dim: 1,
            })
            .collect(),
    );
    let mut cx = BasedComplex::new(g.field().clone(), vec![term0, term1], vec![g.transpose()])?;
    cx.axis_sizes = Some(vec![n]);
    Ok(cx)
}

/// A complex with a single term and no maps (tensor unit up to dimension).
pub fn single_term_complex(field: Field, blocks: Vec<Block>) -> Result<BasedComplex> {
    BasedComplex::new(field, vec![Term::new(blocks)], vec![])
}

/// Tensor product of two based complexes with Koszul signs:
/// `delta(a (x) b) = delta a (x) b + (-1)^{deg a} a (x) delta b`.
///
/// Term `k` concatenates the components `A^i (x) B^j` (`i + j = k`) in
/// ascending `j`; blocks are pairs with concatenated labels, a-major.
pub fn tensor_pair(a: &BasedComplex, b: &BasedComplex) -> Result<BasedComplex> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field().clone();
    let top = a.top() + b.top();

    // component layout per term: list of (i, j, offset)
    let mut layouts: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(top + 1);
    let mut terms: Vec<Term> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut blocks = Vec::new();
        let mut layout = Vec::new();
        let mut offset = 0;
        for j in 0..=b.top().min(k) {
            let i = k - j;
            if i > a.top() {
                continue;
            }
            layout.push((i, j, offset));
            offset += a.term(i).dim() * b.term(j).dim();
            for ab in a.term(i).blocks() {
                for bb in b.term(j).blocks() {
                    let mut label = ab.label.clone();
                    label.extend_from_slice(&bb.label);
                    blocks.push(Block {
                        label,
                        dim: ab.dim * bb.dim,
                    });
                }
            }
        }
        layouts.push(layout);
        terms.push(Term::new(blocks));
    }

    // position of basis vector (a_idx, b_idx) inside component (i, j):
    // blocks are a-major pairs, and inside a pair block the basis is
    // (a_inner, b_inner) with a_inner slower
    let pos_in_component = |ai: &Term, bj: &Term, a_idx: usize, b_idx: usize| -> usize {
        let (mut ablk, mut aoff) = (0, a_idx);
        while aoff >= ai.blocks()[ablk].dim {
            aoff -= ai.blocks()[ablk].dim;
            ablk += 1;
        }
        let (mut bblk, mut boff) = (0, b_idx);
        while boff >= bj.blocks()[bblk].dim {
            boff -= bj.blocks()[bblk].dim;
            bblk += 1;
        }
        // offset of the pair block (ablk, bblk) within the component
        let mut block_offset = 0;
        for t in 0..ablk {
            block_offset += ai.blocks()[t].dim * bj.dim();
        }
        for t in 0..bblk {
            block_offset += ai.blocks()[ablk].dim * bj.blocks()[t].dim;
        }
        block_offset + aoff * bj.blocks()[bblk].dim + boff
    };

    let mut maps = Vec::with_capacity(top);
    for k in 0..top {
        let mut m = MatrixFq::zeros(field.clone(), terms[k + 1].dim(), terms[k].dim());
        for &(i, j, src_off) in &layouts[k] {
            // delta_A (x) id: component (i, j) -> (i+1, j)
            if i < a.top() {
                if let Some(&(_, _, dst_off)) =
                    layouts[k + 1].iter().find(|&&(ti, tj, _)| ti == i + 1 && tj == j)
                {
                    let da = a.map(i);
                    for r in 0..da.rows() {
                        for c in 0..da.cols() {
                            let v = da[(r, c)];
                            if v == 0 {
                                continue;
                            }
                            for t in 0..b.term(j).dim() {
                                let src =
                                    src_off + pos_in_component(a.term(i), b.term(j), c, t);
                                let dst =
                                    dst_off + pos_in_component(a.term(i + 1), b.term(j), r, t);
                                m[(dst, src)] = field.add(m[(dst, src)], v);
                            }
                        }
                    }
                }
            }
            // (-1)^i id (x) delta_B: component (i, j) -> (i, j+1)
            if j < b.top() {
                if let Some(&(_, _, dst_off)) =
                    layouts[k + 1].iter().find(|&&(ti, tj, _)| ti == i && tj == j + 1)
                {
                    let db = b.map(j);
                    let sign_neg = i % 2 == 1;
                    for r in 0..db.rows() {
                        for c in 0..db.cols() {
                            let mut v = db[(r, c)];
                            if v == 0 {
                                continue;
                            }
                            if sign_neg {
                                v = field.neg(v);
                            }
                            for s in 0..a.term(i).dim() {
                                let src =
                                    src_off + pos_in_component(a.term(i), b.term(j), s, c);
                                let dst =
                                    dst_off + pos_in_component(a.term(i), b.term(j + 1), s, r);
                                m[(dst, src)] = field.add(m[(dst, src)], v);
                            }
                        }
                    }
                }
            }
        }
        maps.push(m);
    }
    let mut out = BasedComplex::new(field, terms, maps)?;
    out.axis_sizes = match (a.axis_sizes(), b.axis_sizes()) {
        (Some(x), Some(y)) => {
            let mut v = x.to_vec();
            v.extend_from_slice(y);
            Some(v)
        }
        _ => None,
    };
    Ok(out)
}

/// The m-fold tensor product complex of a list of factors (left fold).
pub fn tensor_complex(factors: &[BasedComplex]) -> Result<BasedComplex> {
    if factors.is_empty() {
        return Err(Error::Precondition("tensor product of no factors".into()));
    }
    let mut acc = factors[0].clone();
    for b in &factors[1..] {
        acc = tensor_pair(&acc, b)?;
    }
    Ok(acc)
}

/// The complex `C(g_1, ..., g_m)` of a code collection, built from the
/// canonical RREF generators.
pub fn collection_complex(coll: &CodeCollection) -> Result<BasedComplex> {
    let factors: Vec<BasedComplex> = coll
        .codes()
        .iter()
        .map(|c| complex_from_encoder(c.generator().basis()))
        .collect::<Result<_>>()?;
    tensor_complex(&factors)
}

/// Exhaustive `i`-th Cheeger constant with block-weight norms:
/// `min over x outside B^i of ||delta x|| / min_{b in B^i} ||x - b||`.
/// `None` when every cochain is a coboundary. Complexes carrying unequal
/// axis lengths are rejected (the plain block norm only matches the
/// product-expansion normalization when `n_1 = ... = n_m`).
pub fn cheeger_constant(cx: &BasedComplex, i: usize, caps: &Caps) -> Result<Option<Rat>> {
    if let Some(sizes) = cx.axis_sizes() {
        if sizes.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Precondition(format!(
                "Cheeger constant needs equal axis lengths, got {sizes:?}"
            )));
        }
    }
    if i >= cx.top() {
        return Err(Error::Precondition(
            "Cheeger constant needs an outgoing coboundary map".into(),
        ));
    }
    let term = cx.term(i);
    let q = cx.field().order();
    caps.check_enum(q, term.dim())?;
    let b = cx.coboundaries(i);
    if b.dim() == term.dim() {
        return Ok(None); // C^i = B^i: minimum over an empty set
    }
    // enumerate coset representatives C^i / B^i: complete the coboundary
    // basis to the full term, then scan representative + B^i
    let full = Subspace::full(cx.field().clone(), term.dim());
    let mut complement_rows: Vec<Vec<Elt>> = Vec::new();
    {
        let mut acc = b.clone();
        for v in full.basis_rows() {
            if !acc.contains(v) {
                complement_rows.push(v.to_vec());
                let mut rows: Vec<Vec<Elt>> = acc.basis_rows().map(|r| r.to_vec()).collect();
                rows.push(v.to_vec());
                acc = Subspace::from_rows(cx.field().clone(), term.dim(), &rows);
            }
        }
    }
    let reps = Subspace::from_rows(cx.field().clone(), term.dim(), &complement_rows);
    let next_term = cx.term(i + 1);
    let f = cx.field().clone();
    let mut best: Option<Rat> = None;
    for rep in reps.elements() {
        if rep.iter().all(|&x| x == 0) {
            continue; // the coset B^i itself is excluded
        }
        let numer = next_term.block_norm(&cx.coboundary(i, &rep));
        // min over the coset rep + B^i of the block norm
        let mut denom: Option<Rat> = None;
        for bb in b.elements() {
            let cand: Vec<Elt> = rep.iter().zip(&bb).map(|(&x, &y)| f.add(x, y)).collect();
            let nm = term.block_norm(&cand);
            denom = Some(match denom {
                Some(d) if d <= nm => d,
                _ => nm,
            });
        }
        let denom = denom.expect("coset nonempty");
        debug_assert!(denom > rat(0, 1));
        let ratio = numer / denom;
        best = Some(match best {
            Some(bst) if bst <= ratio => bst,
            _ => ratio,
        });
    }
    Ok(best)
}

/// Compares `(1/m) h^{m-1}` of the collection complex with the exact
/// expansion factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerIdentity {
    pub rho: Rat,
    pub cheeger: Rat,
    pub holds: bool,
}

pub fn verify_expansion_cheeger_identity(
    coll: &CodeCollection,
    caps: &Caps,
) -> Result<CheegerIdentity> {
    let m = coll.axes();
    let cx = collection_complex(coll)?;
    let h = cheeger_constant(&cx, m - 1, caps)?.ok_or_else(|| {
        Error::Precondition("top-minus-one term has no non-coboundary cochains".into())
    })?;
    let rho = expansion_factor(coll, caps)?.rho;
    let scaled = h.clone() / rat(m as i64, 1);
    Ok(CheegerIdentity {
        rho: rho.clone(),
        cheeger: h,
        holds: scaled == rho,
    })
}

/// JSON-ready summary of a complex.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexSummary {
    pub term_dims: Vec<usize>,
    pub block_counts: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    pub cheeger: Vec<Option<String>>,
}

pub fn summarize_complex(cx: &BasedComplex, caps: &Caps) -> Result<ComplexSummary> {
    let mut cheeger = Vec::new();
    for i in 0..cx.top() {
        let h = cheeger_constant(cx, i, caps)?;
        cheeger.push(h.map(|r| rat_str(&r)));
    }
    Ok(ComplexSummary {
        term_dims: (0..cx.term_count()).map(|i| cx.term(i).dim()).collect(),
        block_counts: (0..cx.term_count()).map(|i| cx.term(i).block_count()).collect(),
        cohomology_dims: (0..cx.term_count()).map(|i| cx.cohomology_dim(i)).collect(),
        cheeger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::LinearCode;
    use crate::gf::field_create;
    use crate::linalg::random_subspace_from_rng;
    use crate::tensor::boxplus_basis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn gf2() -> Field {
        field_create(2, 1).unwrap()
    }

    fn rep3() -> LinearCode {
        LinearCode::from_generator(gf2(), 3, &[vec![1, 1, 1]]).unwrap()
    }

    fn rep_pair() -> CodeCollection {
        CodeCollection::pair(rep3(), rep3()).unwrap()
    }

    #[test]
    fn encoder_complex_cohomology() {
        let id = MatrixFq::identity(gf2(), 3);
        let cx = complex_from_encoder(&id).unwrap();
        assert_eq!(cx.cohomology_dim(0), 0);
        assert_eq!(cx.cohomology_dim(1), 0);
        let g = rep3().generator().basis().clone();
        let cx = complex_from_encoder(&g).unwrap();
        assert_eq!(cx.cohomology_dim(0), 0);
        assert_eq!(cx.cohomology_dim(1), 2);
        let one = MatrixFq::identity(gf2(), 1);
        let cx = complex_from_encoder(&one).unwrap();
        assert_eq!(cx.cohomology_dim(0), 0);
        assert_eq!(cx.cohomology_dim(1), 0);
    }

    #[test]
    fn rank_deficient_encoder_rejected() {
        let g = MatrixFq::from_rows(gf2(), &[vec![1, 1, 0], vec![1, 1, 0]]).unwrap();
        assert!(complex_from_encoder(&g).is_err());
    }

    #[test]
    fn pair_complex_dimensions() {
        let cx = collection_complex(&rep_pair()).unwrap();
        assert_eq!(cx.term_count(), 3);
        assert_eq!(cx.term(0).dim(), 1);
        assert_eq!(cx.term(0).block_count(), 1);
        assert_eq!(cx.term(1).dim(), 6);
        assert_eq!(cx.term(1).block_count(), 6);
        assert_eq!(cx.term(2).dim(), 9);
        assert_eq!(cx.term(2).block_count(), 9);
        assert_eq!(cx.axis_sizes(), Some(&[3usize, 3][..]));
    }

    #[test]
    fn tensor_with_single_term_complex_relabels() {
        let g = rep3().generator().basis().clone();
        let a = complex_from_encoder(&g).unwrap();
        let unit = single_term_complex(
            gf2(),
            vec![Block {
                label: vec![None],
                dim: 1,
            }],
        )
        .unwrap();
        let t = tensor_pair(&a, &unit).unwrap();
        assert_eq!(t.term_count(), a.term_count());
        for i in 0..a.term_count() {
            assert_eq!(t.term(i).dim(), a.term(i).dim());
        }
        assert_eq!(t.cohomology_dim(1), a.cohomology_dim(1));
    }

    #[test]
    fn top_coboundaries_equal_boxplus() {
        let caps = Caps::default();
        for coll in [
            rep_pair(),
            CodeCollection::pair(rep3(), crate::codes::dual(&rep3())).unwrap(),
        ] {
            let cx = collection_complex(&coll).unwrap();
            let top = cx.top();
            assert_eq!(cx.coboundaries(top), boxplus_basis(&coll, &caps).unwrap());
        }
    }

    #[test]
    fn kunneth_acyclicity_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(67);
        let fields = [field_create(2, 1).unwrap(), field_create(3, 1).unwrap()];
        for trial in 0..50 {
            let f = &fields[trial % 2];
            let m = 2 + trial % 2;
            let mut codes = Vec::new();
            for _ in 0..m {
                let n = rng.gen_range(2..=3);
                let k = rng.gen_range(0..=n);
                codes.push(LinearCode::from_subspace(
                    random_subspace_from_rng(f, n, k, &mut rng).unwrap(),
                ));
            }
            let coll = CodeCollection::new(codes).unwrap();
            let cx = collection_complex(&coll).unwrap();
            for j in 0..m {
                assert_eq!(cx.cohomology_dim(j), 0, "H^{j} must vanish below the top");
            }
            let expected: usize = coll.codes().iter().map(|c| c.len() - c.dim()).product();
            assert_eq!(cx.cohomology_dim(m), expected);
        }
    }

    #[test]
    fn cheeger_h0_of_single_factor_is_relative_distance() {
        let caps = Caps::default();
        let g = rep3().generator().basis().clone();
        let cx = complex_from_encoder(&g).unwrap();
        let h0 = cheeger_constant(&cx, 0, &caps).unwrap().unwrap();
        assert_eq!(h0, rat(1, 1) * rat(3, 3)); // delta(Rep3) = 3/3 = 1
    }

    #[test]
    fn cheeger_h1_of_rep_pair() {
        let caps = Caps::default();
        let cx = collection_complex(&rep_pair()).unwrap();
        let h1 = cheeger_constant(&cx, 1, &caps).unwrap().unwrap();
        assert_eq!(h1, rat(10, 9));
    }

    #[test]
    fn cheeger_absent_when_everything_bounds() {
        // hand-built F -> F -> F with delta_0 = id, delta_1 = 0:
        // B^1 = C^1, so the minimum ranges over an empty set
        let caps = Caps::default();
        let blk = || {
            vec![Block {
                label: vec![None],
                dim: 1,
            }]
        };
        let terms = vec![Term::new(blk()), Term::new(blk()), Term::new(blk())];
        let maps = vec![
            MatrixFq::identity(gf2(), 1),
            MatrixFq::zeros(gf2(), 1, 1),
        ];
        let cx = BasedComplex::new(gf2(), terms, maps).unwrap();
        assert_eq!(cheeger_constant(&cx, 1, &caps).unwrap(), None);
        // while h^0 of the same complex is well-defined
        assert!(cheeger_constant(&cx, 0, &caps).unwrap().is_some());
    }

    #[test]
    fn cheeger_rejects_unequal_lengths() {
        let caps = Caps::default();
        let rep2 = LinearCode::from_generator(gf2(), 2, &[vec![1, 1]]).unwrap();
        let coll = CodeCollection::pair(rep3(), rep2).unwrap();
        let cx = collection_complex(&coll).unwrap();
        assert!(cheeger_constant(&cx, 1, &caps).is_err());
    }

    #[test]
    fn expansion_cheeger_identity_pairs() {
        let caps = Caps::default();
        let id = verify_expansion_cheeger_identity(&rep_pair(), &caps).unwrap();
        assert!(id.holds);
        assert_eq!(id.rho, rat(5, 9));
        assert_eq!(id.cheeger, rat(10, 9));
        // degenerate pair
        let full = LinearCode::from_subspace(Subspace::full(gf2(), 3));
        let degen = CodeCollection::pair(rep3(), full).unwrap();
        let id = verify_expansion_cheeger_identity(&degen, &caps).unwrap();
        assert!(id.holds);
        assert_eq!(id.rho, rat(1, 3));
    }

    #[test]
    fn expansion_cheeger_identity_three_dims() {
        let caps = Caps::default();
        let rep2 = LinearCode::from_generator(gf2(), 2, &[vec![1, 1]]).unwrap();
        let coll = CodeCollection::new(vec![rep2.clone(), rep2.clone(), rep2]).unwrap();
        let id = verify_expansion_cheeger_identity(&coll, &caps).unwrap();
        assert!(id.holds, "rho = {:?}, h = {:?}", id.rho, id.cheeger);
    }

    #[test]
    fn coboundary_expansion_inequality_restated() {
        // for every c in B^m: rho * m * min_{delta a = c} ||a|| <= ||c||
        let caps = Caps::default();
        let coll = rep_pair();
        let cx = collection_complex(&coll).unwrap();
        let rho = expansion_factor(&coll, &caps).unwrap().rho;
        let m = coll.axes();
        let b_top = cx.coboundaries(m);
        let z = cx.cocycles(m - 1);
        let term = cx.term(m - 1);
        let top_term = cx.term(m);
        let f = cx.field().clone();
        // solve delta a = c by scanning all a (tiny term)
        let full = Subspace::full(f.clone(), term.dim());
        for c in b_top.elements() {
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let mut min_norm: Option<Rat> = None;
            for a in full.elements() {
                if cx.coboundary(m - 1, &a) == c {
                    let nm = term.block_norm(&a);
                    min_norm = Some(match min_norm {
                        Some(b) if b <= nm => b,
                        _ => nm,
                    });
                }
            }
            let min_norm = min_norm.expect("c is a coboundary");
            assert!(rho * rat(m as i64, 1) * min_norm <= top_term.block_norm(&c));
        }
        let _ = z;
    }

    #[test]
    fn summary_serializes() {
        let caps = Caps::default();
        let cx = collection_complex(&rep_pair()).unwrap();
        let s = summarize_complex(&cx, &caps).unwrap();
        assert_eq!(s.term_dims, vec![1, 6, 9]);
        assert_eq!(s.cohomology_dims, vec![0, 0, 4]);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("term_dims"));
    }
}
