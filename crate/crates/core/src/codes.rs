//! Linear codes: parameters, duals, exact minimum distances, information
//! sets, the Reed-Solomon family, q-ary entropy, and the local-testability
//! soundness constant.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::gf::{elt_from_char, elt_to_char, field_of_order, Elt, Field};
use crate::linalg::{kernel, MatrixFq, Subspace};
use crate::{rat, Caps, Error, Rat, Result};

/// A k-dimensional linear code in `F_q^n`.
///
/// The generator is kept as a canonical RREF subspace and the parity-check
/// matrix is the RREF kernel basis, so equal codes have bit-identical
/// representations. The minimum distance is cached on first computation
/// (idempotent; no other mutation).
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    gen: Subspace,
    parity: MatrixFq,
    min_dist: OnceLock<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}
impl Eq for LinearCode {}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]_{} code", self.n, self.dim(), self.field.order())
    }
}

impl LinearCode {
    /// Builds the code spanned by `rows` (need not be independent).
    pub fn from_generator(field: Field, n: usize, rows: &[Vec<Elt>]) -> Result<Self> {
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator row of length {} in a code of length {n}",
                    r.len()
                )));
            }
        }
        let gen = Subspace::from_rows(field.clone(), n, rows);
        Ok(Self::from_subspace(gen))
    }

    /// Builds the code `{x : H x = 0}` from parity-check rows.
    pub fn from_parity(field: Field, n: usize, rows: &[Vec<Elt>]) -> Result<Self> {
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "parity row of length {} in a code of length {n}",
                    r.len()
                )));
            }
        }
        let h = if rows.is_empty() {
            MatrixFq::zeros(field.clone(), 0, n)
        } else {
            MatrixFq::from_rows(field.clone(), rows)?
        };
        Ok(Self::from_subspace(kernel(&h)))
    }

    pub fn from_subspace(gen: Subspace) -> Self {
        let field = gen.field().clone();
        let n = gen.ambient_dim();
        let parity = kernel(gen.basis()).basis().clone();
        debug_assert_eq!(parity.rank(), n - gen.dim());
        debug_assert!(gen
            .basis_rows()
            .all(|g| parity.mul_vec(g).iter().all(|&s| s == 0)));
        LinearCode {
            field,
            n,
            gen,
            parity,
            min_dist: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.dim()
    }

    pub fn generator(&self) -> &Subspace {
        &self.gen
    }

    /// Full-rank `(n-k) x n` parity-check matrix.
    pub fn parity_check(&self) -> &MatrixFq {
        &self.parity
    }

    pub fn rate(&self) -> Rat {
        rat(self.dim() as i64, self.n as i64)
    }

    /// Redundancy fraction `1 - k/n`.
    pub fn epsilon(&self) -> Rat {
        rat((self.n - self.dim()) as i64, self.n as i64)
    }

    pub fn relative_distance(&self, caps: &Caps) -> Result<Rat> {
        Ok(rat(self.min_distance(caps)? as i64, self.n as i64))
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        self.gen.contains(v)
    }

    /// `C_i = F_q^{n_i}`: the degenerate case for collections.
    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn codewords(&self) -> impl Iterator<Item = Vec<Elt>> + '_ {
        self.gen.elements()
    }

    pub fn cached_min_distance(&self) -> Option<usize> {
        self.min_dist.get().copied()
    }

    /// Exact minimum nonzero codeword weight.
    ///
    /// Enumerates the message space when `q^k` fits the cap; otherwise falls
    /// back to the dual-side MacWilliams transform when `q^{n-k}` fits. The
    /// zero code gets the sentinel `n + 1` (acts as +infinity in
    /// `n - |A| < d` comparisons). Idempotently cached.
    pub fn min_distance(&self, caps: &Caps) -> Result<usize> {
        if let Some(&d) = self.min_dist.get() {
            return Ok(d);
        }
        let q = self.field.order();
        let k = self.dim();
        let d = if k == 0 {
            self.n + 1
        } else if caps.check_enum(q, k).is_ok() {
            let mut best = usize::MAX;
            for w in self.codewords() {
                let wt = w.iter().filter(|&&x| x != 0).count();
                if wt > 0 && wt < best {
                    best = wt;
                    if best == 1 {
                        break;
                    }
                }
            }
            best
        } else if caps.check_enum(q, self.n - k).is_ok() {
            min_distance_via_dual(self)?
        } else {
            return Err(Error::CapExceeded {
                what: "enumeration",
                needed: format!("{q}^min({k},{})", self.n - k),
                cap: caps.enumeration,
            });
        };
        Ok(*self.min_dist.get_or_init(|| d))
    }

    /// Greedy information set inside `s`: scans the columns of `s` in
    /// ascending order keeping those that increase the generator rank, until
    /// it reaches `k`. Returns `None` iff the generator restricted to `s`
    /// has rank below `k`.
    pub fn information_set(&self, s: &[usize]) -> Option<Vec<usize>> {
        let k = self.dim();
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut work = MatrixFq::zeros(self.field.clone(), k, 0);
        let mut rank = 0;
        for &col in &sorted {
            if rank == k {
                break;
            }
            // candidate matrix: previously chosen columns plus this one
            let mut trial = chosen.clone();
            trial.push(col);
            let sub = self.gen.basis().submatrix(&(0..k).collect::<Vec<_>>(), &trial);
            let r = sub.rank();
            if r > rank {
                rank = r;
                chosen = trial;
                work = sub;
            }
        }
        let _ = work;
        if rank == k {
            if let Some(d) = self.cached_min_distance() {
                // |S| > n - d guarantees an information set exists
                if sorted.len() + d > self.n {
                    debug_assert_eq!(chosen.len(), k);
                }
            }
            Some(chosen)
        } else {
            if let Some(d) = self.cached_min_distance() {
                assert!(
                    sorted.len() + d <= self.n,
                    "information set must exist when |S| > n - d"
                );
            }
            None
        }
    }

    /// The unique codeword taking the values `vals` on the information set
    /// `info` (an index set on which the generator has full rank `k`).
    pub fn codeword_from_information_set(&self, info: &[usize], vals: &[Elt]) -> Vec<Elt> {
        let k = self.dim();
        assert_eq!(info.len(), k);
        assert_eq!(vals.len(), k);
        // solve m * G_I = vals, then expand m * G
        let g = self.gen.basis();
        let gi = g.submatrix(&(0..k).collect::<Vec<_>>(), info);
        // [G_I^T | vals^T] -> RREF gives m^T
        let mut aug = MatrixFq::zeros(self.field.clone(), k, k + 1);
        for r in 0..k {
            for c in 0..k {
                aug[(r, c)] = gi[(c, r)];
            }
            aug[(r, k)] = vals[r];
        }
        let pivots = aug.rref_in_place();
        assert_eq!(pivots.len(), k, "columns do not form an information set");
        let m: Vec<Elt> = (0..k).map(|r| aug[(r, k)]).collect();
        let out = self.gen.encode(&m);
        debug_assert!(info.iter().zip(vals).all(|(&i, &v)| out[i] == v));
        out
    }

    /// Serializes to the text code format: first line `q n k`, then `k`
    /// generator rows as base-36 digit strings.
    pub fn to_text(&self) -> Result<String> {
        let mut out = format!("{} {} {}\n", self.field.order(), self.n, self.dim());
        for row in self.gen.basis_rows() {
            for &x in row {
                out.push(elt_to_char(x)?);
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut it = header.split_whitespace();
        let q: u64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad q in code header".into()))?;
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad n in code header".into()))?;
        let k: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad k in code header".into()))?;
        let field = field_of_order(q)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing generator row".into()))?;
            let row: Result<Vec<Elt>> = line.trim().chars().map(elt_from_char).collect();
            let row = row?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "generator row has {} digits, expected {n}",
                    row.len()
                )));
            }
            if row.iter().any(|&x| x as u64 >= q) {
                return Err(Error::Parse("generator digit outside the field".into()));
            }
            rows.push(row);
        }
        let code = LinearCode::from_generator(field, n, &rows)?;
        if code.dim() != k {
            return Err(Error::Parse(format!(
                "generator rows span dimension {}, header says {k}",
                code.dim()
            )));
        }
        Ok(code)
    }
}

/// The dual code `C^perp`; an involution.
pub fn dual(code: &LinearCode) -> LinearCode {
    LinearCode::from_subspace(code.generator().dual())
}

/// Minimum distance through the dual weight enumerator and the MacWilliams
/// identity; exact, used when the dual side is the small one.
fn min_distance_via_dual(code: &LinearCode) -> Result<usize> {
    let n = code.len();
    let q = code.field.order() as i64;
    let dual_code = dual(code);
    let mut dual_wt = vec![BigInt::zero(); n + 1];
    for w in dual_code.codewords() {
        let wt = w.iter().filter(|&&x| x != 0).count();
        dual_wt[wt] += 1;
    }
    // W_C(y) coefficientwise: A_j = (1/|C^perp|) sum_i B_i * K_j(i) with the
    // Krawtchouk expansion of (x + (q-1)y)^{n-i} (x - y)^i at x = 1.
    let binom = |n: usize, k: usize| -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let mut acc = BigInt::from(1);
        for i in 0..k {
            acc = acc * BigInt::from((n - i) as i64) / BigInt::from((i + 1) as i64);
        }
        acc
    };
    let size_dual = BigInt::from(q).pow((n - code.dim()) as u32);
    for d in 1..=n {
        // A_d * |C^perp| = sum_i B_i * K_d(i; n, q)
        let mut acc = BigInt::zero();
        for (i, b) in dual_wt.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut k_val = BigInt::zero();
            for j in 0..=d {
                let term = binom(i, j) * binom(n - i, d - j) * BigInt::from(q - 1).pow((d - j) as u32);
                if j % 2 == 0 {
                    k_val += term;
                } else {
                    k_val -= term;
                }
            }
            acc += b * k_val;
        }
        debug_assert!((&acc % &size_dual).is_zero());
        if !acc.is_zero() {
            if acc.is_negative() {
                return Err(Error::TheoryViolation(
                    "negative weight enumerator coefficient".into(),
                ));
            }
            return Ok(d);
        }
    }
    Ok(n + 1) // zero code sentinel
}

/// The Reed-Solomon code `RS_q^k`: evaluations of polynomials of degree
/// `< k` at all field elements, in the canonical order `0, 1, g, g^2, ...`.
pub fn reed_solomon(q: u64, k: usize) -> Result<LinearCode> {
    let field = field_of_order(q)?;
    if k > q as usize {
        return Err(Error::Precondition(format!("k={k} exceeds q={q}")));
    }
    let pts = field.evaluation_points();
    let mut rows = Vec::with_capacity(k);
    for deg in 0..k {
        let row: Vec<Elt> = pts.iter().map(|&a| field.pow(a, deg as u64)).collect();
        rows.push(row);
    }
    let code = LinearCode::from_generator(field, q as usize, &rows)?;
    debug_assert_eq!(code.dim(), k);
    Ok(code)
}

/// Tests the CSS commutativity condition `H_1 H_2^T = 0`, cross-checked
/// against the equivalent containment `C_2^perp subseteq C_1`.
pub fn is_css_pair(c1: &LinearCode, c2: &LinearCode) -> Result<bool> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch);
    }
    if c1.len() != c2.len() {
        return Err(Error::DimensionMismatch(format!(
            "lengths {} vs {}",
            c1.len(),
            c2.len()
        )));
    }
    let prod = c1.parity_check().mul_matrix(&c2.parity_check().transpose())?;
    let commute = prod.is_zero();
    let containment = c1.generator().contains_subspace(&dual(c2).generator().clone());
    assert_eq!(
        commute, containment,
        "H1 H2^T = 0 must coincide with C2^perp subseteq C1"
    );
    Ok(commute)
}

/// q-ary entropy `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`,
/// with `0 log 0 := 0`.
pub fn entropy_q(q: u64, x: f64) -> f64 {
    assert!(q >= 2);
    assert!((0.0..=1.0).contains(&x), "entropy argument out of [0,1]");
    let lq = (q as f64).ln();
    let term = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() / lq };
    x * ((q - 1) as f64).ln() / lq - term(x) - term(1.0 - x)
}

/// Inverse of `H_q` on `[0, 1 - 1/q]` by bisection to absolute tolerance
/// `1e-12`.
pub fn entropy_q_inv(q: u64, y: f64) -> f64 {
    assert!((0.0..=1.0).contains(&y), "entropy value out of [0,1]");
    let (mut lo, mut hi) = (0.0_f64, 1.0 - 1.0 / q as f64);
    if y == 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return hi;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy_q(q, mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A recorded entropy evaluation (value is accurate to the f64 rounding of
/// the closed form; inverses to 1e-12 absolute).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEval {
    pub q: u64,
    pub x: f64,
    pub value: f64,
}

impl EntropyEval {
    pub fn evaluate(q: u64, x: f64) -> Self {
        EntropyEval {
            q,
            x,
            value: entropy_q(q, x),
        }
    }
}

/// The largest `s` with `s * delta(x, C) <= ||Hx||` over all `x`, i.e. the
/// exact minimum of `||Hx|| / delta(x, C)` over non-codewords, as a
/// rational. `||Hx||` is normalized by the row count of `H` and distances by
/// `n`. Returns `None` when there are no non-codewords.
pub fn ltc_soundness(code: &LinearCode, h: &MatrixFq, caps: &Caps) -> Result<Option<Rat>> {
    if h.cols() != code.len() {
        return Err(Error::DimensionMismatch(format!(
            "H has {} columns, code length {}",
            h.cols(),
            code.len()
        )));
    }
    if kernel(h) != *code.generator() {
        return Err(Error::Precondition(
            "H is not a parity-check matrix of the code".into(),
        ));
    }
    let n = code.len();
    let q = code.field.order();
    caps.check_enum(q, n)?;
    caps.check_enum(q, code.dim())?;
    if code.dim() == n {
        return Ok(None); // full code: no non-codewords, constraint vacuous
    }
    let codewords: Vec<Vec<Elt>> = code.codewords().collect();
    let full = Subspace::full(code.field.clone(), n);
    let mut best: Option<Rat> = None;
    for x in full.elements() {
        if code.contains(&x) {
            continue;
        }
        let syndrome_wt = h
            .mul_vec(&x)
            .iter()
            .filter(|&&s| s != 0)
            .count();
        let dist = codewords
            .iter()
            .map(|c| x.iter().zip(c).filter(|(a, b)| a != b).count())
            .min()
            .expect("code nonempty");
        debug_assert!(dist > 0);
        // (|Hx|/rows) / (d/n) = n*|Hx| / (rows*d)
        let ratio = rat(
            (n * syndrome_wt) as i64,
            (h.rows() * dist) as i64,
        );
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    Ok(best)
}
