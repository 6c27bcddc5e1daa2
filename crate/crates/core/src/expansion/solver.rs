//! Exact minimum-cost decompositions and the expansion factor.
//!
//! A decomposition `x = sum a_i` is parameterized by one message vector per
//! line per axis. The solver reduces the resulting linear system once per
//! collection; each codeword then needs only a back-substitution plus an
//! enumeration of the solution coset, whose dimension is `k_1 k_2` for
//! pairs (the product-code translate) and the kernel of the summation map
//! in general.

use crate::gf::Elt;
use crate::linalg::{rref_prefix, MatrixFq};
use crate::tensor::{boxplus_basis, CodeCollection, GridShape, TensorWord};
use crate::{rat, Caps, Error, Rat, Result};

use super::{Decomposition, ExpansionReport, InstanceMeta, Method};

/// Precomputed linear-system data for decomposing words of one collection.
pub struct BoxplusSolver {
    coll: CodeCollection,
    shape: GridShape,
    /// per-axis: (offset into the parameter vector, k_i, lines)
    axis_params: Vec<(usize, usize, Vec<Vec<usize>>)>,
    total_params: usize,
    /// row-operations matrix applied to right-hand sides at solve time
    ops: MatrixFq,
    pivots: Vec<usize>,
    kernel: Vec<Vec<Elt>>,
}

impl BoxplusSolver {
    pub fn new(coll: &CodeCollection, caps: &Caps) -> Result<Self> {
        let shape = coll.shape();
        let cells = shape.total_cells();
        caps.check_cells(cells as u64)?;
        let mut axis_params = Vec::with_capacity(coll.axes());
        let mut total_params = 0usize;
        for (axis, code) in coll.codes().iter().enumerate() {
            let lines = shape.lines(axis);
            axis_params.push((total_params, code.dim(), lines));
            total_params += code.dim() * shape.lines_count(axis);
        }
        // system matrix: column (axis, line, t) has the t-th generator row of
        // C_axis scattered along the line
        let field = coll.field().clone();
        let mut system = MatrixFq::zeros(field.clone(), cells, total_params);
        for (axis, code) in coll.codes().iter().enumerate() {
            let (offset, k, lines) = &axis_params[axis];
            let gen = code.generator().basis();
            for (li, line) in lines.iter().enumerate() {
                for t in 0..*k {
                    let col = offset + li * k + t;
                    for (s, &cell) in line.iter().enumerate() {
                        system[(cell, col)] = gen[(t, s)];
                    }
                }
            }
        }
        // eliminate [system | I] so solves are a single matrix-vector product
        let mut aug = MatrixFq::zeros(field.clone(), cells, total_params + cells);
        for r in 0..cells {
            for c in 0..total_params {
                aug[(r, c)] = system[(r, c)];
            }
            aug[(r, total_params + r)] = 1;
        }
        // eliminate with pivots restricted to the parameter columns
        let pivots = rref_prefix(&mut aug, total_params);
        let mut reduced = MatrixFq::zeros(field.clone(), cells, total_params);
        let mut ops = MatrixFq::zeros(field.clone(), cells, cells);
        for r in 0..cells {
            for c in 0..total_params {
                reduced[(r, c)] = aug[(r, c)];
            }
            for c in 0..cells {
                ops[(r, c)] = aug[(r, total_params + c)];
            }
        }
        // kernel basis of the system from the reduced form
        let free: Vec<usize> = (0..total_params).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0 as Elt; total_params];
            v[fc] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = field.neg(reduced[(prow, fc)]);
            }
            kernel.push(v);
        }
        Ok(BoxplusSolver {
            coll: coll.clone(),
            shape,
            axis_params,
            total_params,
            ops,
            pivots,
            kernel,
        })
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// One parameter vector solving `sum a_i = x`, or `None` if `x` is not
    /// in the dual product code.
    pub fn particular_solution(&self, x: &TensorWord) -> Option<Vec<Elt>> {
        debug_assert_eq!(*x.shape(), self.shape);
        let y = self.ops.mul_vec(x.data());
        // consistency: rows without a pivot must see a zero right-hand side
        for r in self.pivots.len()..y.len() {
            if y[r] != 0 {
                return None;
            }
        }
        let mut theta = vec![0 as Elt; self.total_params];
        for (prow, &pcol) in self.pivots.iter().enumerate() {
            theta[pcol] = y[prow];
        }
        Some(theta)
    }

    /// Materializes the decomposition encoded by a parameter vector.
    pub fn materialize(&self, theta: &[Elt]) -> Decomposition {
        let field = self.coll.field();
        let mut components = Vec::with_capacity(self.coll.axes());
        for (axis, code) in self.coll.codes().iter().enumerate() {
            let (offset, k, lines) = &self.axis_params[axis];
            let gen = code.generator().basis();
            let mut w = TensorWord::zero(field.clone(), self.shape.clone());
            for (li, line) in lines.iter().enumerate() {
                let msg = &theta[offset + li * k..offset + li * k + k];
                if msg.iter().all(|&m| m == 0) {
                    continue;
                }
                for (s, &cell) in line.iter().enumerate() {
                    let mut acc: Elt = 0;
                    for (t, &m) in msg.iter().enumerate() {
                        if m != 0 {
                            acc = field.add(acc, field.mul(m, gen[(t, s)]));
                        }
                    }
                    w.data_mut()[cell] = acc;
                }
            }
            components.push(w);
        }
        Decomposition::new(components)
    }

    /// Decomposition cost read straight off the parameters: a line is
    /// nonzero iff its message segment is (generator rows are independent).
    fn cost_of(&self, theta: &[Elt]) -> Rat {
        let mut cost = rat(0, 1);
        for (axis, _) in self.coll.codes().iter().enumerate() {
            let (offset, k, lines) = &self.axis_params[axis];
            if *k == 0 {
                continue;
            }
            let mut nonzero = 0usize;
            for li in 0..lines.len() {
                if theta[offset + li * k..offset + li * k + k]
                    .iter()
                    .any(|&m| m != 0)
                {
                    nonzero += 1;
                }
            }
            cost += rat(nonzero as i64, lines.len() as i64);
        }
        cost
    }

    /// Exact minimum-cost decomposition of `x`; ties broken by the
    /// lexicographically smallest flattened `(a_1, ..., a_m)`.
    pub fn min_cost(&self, x: &TensorWord, caps: &Caps) -> Result<Decomposition> {
        let particular = self.particular_solution(x).ok_or(Error::NotInBoxplus)?;
        let q = self.coll.field().order();
        caps.check_enum(q, self.kernel.len())?;
        let field = self.coll.field().clone();
        let mut digits = vec![0 as Elt; self.kernel.len()];
        let mut theta = particular.clone();
        let mut best: Option<(Rat, Vec<u16>, Decomposition)> = None;
        loop {
            let cost = self.cost_of(&theta);
            let candidate_better = match &best {
                None => true,
                Some((bc, _, _)) => cost <= *bc,
            };
            if candidate_better {
                let dec = self.materialize(&theta);
                let flat = dec.flattened();
                match &mut best {
                    Some((bc, bflat, bdec)) => {
                        if cost < *bc || (cost == *bc && flat < *bflat) {
                            *bc = cost;
                            *bflat = flat;
                            *bdec = dec;
                        }
                    }
                    None => best = Some((cost, flat, dec)),
                }
            }
            // advance the kernel-coefficient odometer, last digit fastest
            let mut i = digits.len();
            let mut done = true;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if (digits[i] as u64) < q {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            if done {
                break;
            }
            // rebuild theta from the particular solution and digits
            theta.copy_from_slice(&particular);
            for (j, &d) in digits.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                for (t, &kv) in self.kernel[j].iter().enumerate() {
                    if kv != 0 {
                        theta[t] = field.add(theta[t], field.mul(d, kv));
                    }
                }
            }
        }
        let (_, _, dec) = best.expect("at least the particular solution");
        debug_assert!(dec.sum().unwrap() == *x);
        Ok(dec)
    }
}

/// Exact minimum-cost decomposition of one word (builds a fresh solver; use
/// [`BoxplusSolver`] directly when decomposing many words of one
/// collection).
pub fn min_cost_decomposition(
    x: &TensorWord,
    coll: &CodeCollection,
    caps: &Caps,
) -> Result<Decomposition> {
    if *x.shape() != coll.shape() {
        return Err(Error::ShapeMismatch("word does not match the collection".into()));
    }
    BoxplusSolver::new(coll, caps)?.min_cost(x, caps)
}

/// Exact product-expansion factor of a collection.
///
/// Degenerate collections (some `C_i` full) short-circuit to the exact value
/// `1/n_i` for the smallest full axis; otherwise every nonzero codeword of
/// the dual product code is enumerated.
pub fn expansion_factor(coll: &CodeCollection, caps: &Caps) -> Result<ExpansionReport> {
    let instance = InstanceMeta::of(coll);
    if coll.is_degenerate() {
        return Ok(degenerate_report(coll, instance));
    }
    let basis = boxplus_basis(coll, caps)?;
    let q = coll.field().order();
    caps.check_enum(q, basis.dim())?;
    let solver = BoxplusSolver::new(coll, caps)?;
    let shape = coll.shape();
    let mut best: Option<(Rat, TensorWord, Decomposition)> = None;
    for c in basis.elements() {
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let word = TensorWord::from_flat(coll.field().clone(), shape.clone(), c)?;
        let dec = solver.min_cost(&word, caps)?;
        let ratio = word.norm() / dec.cost();
        match &mut best {
            Some((br, bw, bd)) => {
                if ratio < *br || (ratio == *br && word.data() < bw.data()) {
                    *br = ratio;
                    *bw = word;
                    *bd = dec;
                }
            }
            None => best = Some((ratio, word, dec)),
        }
    }
    let (rho, argmin, decomposition) =
        best.ok_or_else(|| Error::Precondition("dual product code is trivial".into()))?;
    Ok(ExpansionReport {
        rho,
        argmin,
        decomposition,
        method: Method::Exact,
        instance,
        seed: None,
    })
}

/// Exact degenerate value: with `C_i` full, `a_i := c` always decomposes, so
/// the factor is `1/n_i` for the smallest full axis, attained by a single
/// cell placed off the unit vectors of every proper component code.
fn degenerate_report(coll: &CodeCollection, instance: InstanceMeta) -> ExpansionReport {
    let shape = coll.shape();
    let best_axis = (0..coll.axes())
        .filter(|&i| coll.code(i).is_full())
        .min_by_key(|&i| shape.size(i))
        .expect("degenerate collection has a full axis");
    let n_i = shape.size(best_axis);
    // witness cell: per axis, the smallest coordinate whose unit vector is
    // outside a proper component code
    let mut coords = Vec::with_capacity(coll.axes());
    for (axis, code) in coll.codes().iter().enumerate() {
        let mut r = 0;
        if !code.is_full() {
            r = (0..code.len())
                .find(|&t| {
                    let mut e = vec![0 as Elt; code.len()];
                    e[t] = 1;
                    !code.contains(&e)
                })
                .expect("a proper code misses some unit vector");
        }
        let _ = axis;
        coords.push(r);
    }
    let strides = shape.strides();
    let cell: usize = coords.iter().zip(&strides).map(|(&c, &s)| c * s).sum();
    let mut witness = TensorWord::zero(coll.field().clone(), shape.clone());
    witness.data_mut()[cell] = 1;
    let mut components = Vec::with_capacity(coll.axes());
    for axis in 0..coll.axes() {
        if axis == best_axis {
            components.push(witness.clone());
        } else {
            components.push(TensorWord::zero(coll.field().clone(), shape.clone()));
        }
    }
    ExpansionReport {
        rho: rat(1, n_i as i64),
        argmin: witness,
        decomposition: Decomposition::new(components),
        method: Method::Exact,
        instance,
        seed: None,
    }
}

/// Outcome of the greedy line-replacement heuristic.
#[derive(Debug, Clone)]
pub enum GreedyResult {
    /// Terminated at zero; the cost is an upper bound on the optimum.
    Decomposed(Decomposition),
    /// Stuck at a local minimum (or exceeded the step budget) with a
    /// nonzero residual; reported as data, not as an error.
    Stuck { residual_weight: usize, steps: usize },
}

/// Greedy decomposition for pairs: repeatedly subtracts from one line the
/// component-code codeword nearest to it, choosing the line whose
/// replacement decreases `|x|` the most (ties: columns before rows, lowest
/// index). Stops at zero, at a local minimum, or after `n_1 + n_2` steps.
pub fn greedy_decomposition(
    x: &TensorWord,
    coll: &CodeCollection,
    caps: &Caps,
) -> Result<GreedyResult> {
    if coll.axes() != 2 {
        return Err(Error::Precondition("greedy decomposition handles pairs".into()));
    }
    if *x.shape() != coll.shape() {
        return Err(Error::ShapeMismatch("word does not match the collection".into()));
    }
    let shape = coll.shape();
    let field = coll.field().clone();
    let mut residual = x.clone();
    let mut acc = [
        TensorWord::zero(field.clone(), shape.clone()),
        TensorWord::zero(field.clone(), shape.clone()),
    ];
    let max_steps = shape.size(0) + shape.size(1);
    let mut steps = 0usize;
    while !residual.is_zero() {
        if steps == max_steps {
            return Ok(GreedyResult::Stuck {
                residual_weight: residual.weight(),
                steps,
            });
        }
        // best (gain, axis, line index, nearest codeword); columns = axis 0
        let mut best: Option<(usize, usize, usize, Vec<Elt>, Vec<usize>)> = None;
        for axis in 0..2 {
            let code = coll.code(axis);
            for (li, line) in shape.lines(axis).into_iter().enumerate() {
                let vals = residual.line_values(&line);
                let wt = vals.iter().filter(|&&v| v != 0).count();
                if wt == 0 {
                    continue;
                }
                let (nearest, d) = crate::tensor::nearest_codeword(&vals, code.generator(), caps)?;
                let gain = wt - d;
                let better = match &best {
                    None => gain > 0,
                    Some((bg, ..)) => gain > *bg,
                };
                if better {
                    best = Some((gain, axis, li, nearest, line));
                }
            }
        }
        let Some((_, axis, _, nearest, line)) = best else {
            return Ok(GreedyResult::Stuck {
                residual_weight: residual.weight(),
                steps,
            });
        };
        for (s, &cell) in line.iter().enumerate() {
            let c = nearest[s];
            if c != 0 {
                residual.data_mut()[cell] = field.sub(residual.data()[cell], c);
                acc[axis].data_mut()[cell] = field.add(acc[axis].data()[cell], c);
            }
        }
        steps += 1;
    }
    let dec = Decomposition::new(acc.to_vec());
    dec.validate(x, coll)?;
    Ok(GreedyResult::Decomposed(dec))
}
