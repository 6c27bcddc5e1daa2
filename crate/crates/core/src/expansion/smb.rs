//! Delta-minimal codewords and the (s, m, beta)-product-expansion variant.

use num_traits::ToPrimitive;

use crate::codes::LinearCode;
use crate::linalg::MatrixFq;
use crate::tensor::{boxplus_basis, nearest_codeword, CodeCollection, TensorWord};
use crate::{Caps, Error, Rat, Result};

/// Delta-minimality: no row can be moved more than `delta` closer to `C_2`
/// and no column more than `delta` closer to `C_1`.
pub fn is_delta_minimal(
    x: &TensorWord,
    delta: usize,
    c1: &LinearCode,
    c2: &LinearCode,
    caps: &Caps,
) -> Result<bool> {
    if x.shape().axes() != 2
        || x.shape().size(0) != c1.len()
        || x.shape().size(1) != c2.len()
    {
        return Err(Error::ShapeMismatch("word does not match the pair".into()));
    }
    // axis 1 lines are rows (checked against C_2), axis 0 lines columns
    for line in x.shape().lines(1) {
        let vals = x.line_values(&line);
        let wt = vals.iter().filter(|&&v| v != 0).count();
        let (_, d) = nearest_codeword(&vals, c2.generator(), caps)?;
        if wt > d + delta {
            return Ok(false);
        }
    }
    for line in x.shape().lines(0) {
        let vals = x.line_values(&line);
        let wt = vals.iter().filter(|&&v| v != 0).count();
        let (_, d) = nearest_codeword(&vals, c1.generator(), caps)?;
        if wt > d + delta {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact minimum of `|x(A, B)|` over all `A, B` keeping at least
/// `n - deletions` rows and columns: enumerate the deleted row subsets and
/// pick, for each, the heaviest remaining columns. The row-first greedy
/// (heaviest full rows, then heaviest remaining columns) is kept as an
/// upper-bound cross-check; it is not always optimal.
pub fn rectangle_min_weight(m: &MatrixFq, deletions: usize) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let del_r = deletions.min(rows);
    let del_c = deletions.min(cols);
    if del_r == rows || del_c == cols {
        return 0;
    }
    let mut best = usize::MAX;
    let mut subset: Vec<usize> = (0..del_r).collect();
    loop {
        // column weights with the chosen rows removed
        let mut col_wt = vec![0usize; cols];
        let mut total = 0usize;
        for r in 0..rows {
            if subset.contains(&r) {
                continue;
            }
            for c in 0..cols {
                if m[(r, c)] != 0 {
                    col_wt[c] += 1;
                    total += 1;
                }
            }
        }
        let mut wts = col_wt.clone();
        wts.sort_unstable_by(|a, b| b.cmp(a));
        let removed: usize = wts.iter().take(del_c).sum();
        best = best.min(total - removed);
        // next combination of deleted rows
        if del_r == 0 {
            break;
        }
        let mut i = del_r;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if subset[i] + 1 <= rows - (del_r - i) {
                subset[i] += 1;
                for j in i + 1..del_r {
                    subset[j] = subset[j - 1] + 1;
                }
                if subset[del_r - 1] < rows {
                    break;
                }
            }
        }
    }
    best
}

/// Greedy counterpart: delete the heaviest full rows, then the heaviest
/// remaining columns. Always an upper bound on [`rectangle_min_weight`].
pub fn rectangle_min_weight_greedy(m: &MatrixFq, deletions: usize) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let del_r = deletions.min(rows);
    let del_c = deletions.min(cols);
    if del_r == rows || del_c == cols {
        return 0;
    }
    let mut row_wts: Vec<(usize, usize)> = (0..rows)
        .map(|r| ((0..cols).filter(|&c| m[(r, c)] != 0).count(), r))
        .collect();
    row_wts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let deleted: Vec<usize> = row_wts.iter().take(del_r).map(|&(_, r)| r).collect();
    let mut col_wt = vec![0usize; cols];
    let mut total = 0usize;
    for r in 0..rows {
        if deleted.contains(&r) {
            continue;
        }
        for c in 0..cols {
            if m[(r, c)] != 0 {
                col_wt[c] += 1;
                total += 1;
            }
        }
    }
    col_wt.sort_unstable_by(|a, b| b.cmp(a));
    total - col_wt.iter().take(del_c).sum::<usize>()
}

/// Outcome of an (s, m, beta)-product-expansion check.
#[derive(Debug, Clone)]
pub struct SmbReport {
    pub holds: bool,
    /// A minimal codeword with rectangle weight below `s`, when one exists.
    pub counterexample: Option<(TensorWord, usize)>,
    /// Number of nonzero beta-n-minimal codewords inspected.
    pub minimal_codewords: usize,
}

/// Checks (s, m, beta)-product-expansion: every nonzero `beta n`-minimal
/// codeword of the dual product code keeps weight at least `s` on every
/// rectangle missing at most `m` rows and `m` columns. `s` is compared as a
/// rational against the integer rectangle weight; the deletion budget is
/// `floor(m)`.
pub fn smb_expansion_check(
    c1: &LinearCode,
    c2: &LinearCode,
    s: &Rat,
    m: &Rat,
    beta: &Rat,
    caps: &Caps,
) -> Result<SmbReport> {
    if c1.len() != c2.len() {
        return Err(Error::Precondition("the variant assumes equal lengths".into()));
    }
    let n = c1.len();
    let coll = CodeCollection::pair(c1.clone(), c2.clone())?;
    let basis = boxplus_basis(&coll, caps)?;
    let q = coll.field().order();
    caps.check_enum(q, basis.dim())?;
    let delta = (beta * Rat::from_integer(n as i64))
        .floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Precondition("beta n must be nonnegative".into()))?;
    let deletions = if *m >= Rat::from_integer(n as i64) {
        n
    } else {
        m.floor()
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::Precondition("m must be nonnegative".into()))?
    };
    let shape = coll.shape();
    let field = coll.field().clone();
    let mut inspected = 0usize;
    for w in basis.elements() {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let word = TensorWord::from_flat(field.clone(), shape.clone(), w)?;
        if !is_delta_minimal(&word, delta, c1, c2, caps)? {
            continue;
        }
        inspected += 1;
        let mat = word.to_matrix();
        let min_wt = rectangle_min_weight(&mat, deletions);
        debug_assert!(rectangle_min_weight_greedy(&mat, deletions) >= min_wt);
        if Rat::from_integer(min_wt as i64) < *s {
            return Ok(SmbReport {
                holds: false,
                counterexample: Some((word, min_wt)),
                minimal_codewords: inspected,
            });
        }
    }
    Ok(SmbReport {
        holds: true,
        counterexample: None,
        minimal_codewords: inspected,
    })
}
