//! Evaluation matrices: contraction schemes applied to sampled normal
//! tensors, exact ranks with a batch-stabilization certificate, kernel
//! dimensions, and the membership check for the Lovelock-type generators.
//!
//! A row of the evaluation matrix is a (sample, output tuple) pair; a column
//! is a deduplicated contraction scheme. Entries are exact rationals computed
//! with the standard euclidean pairing (ranks are signature-independent).
//! Ranks are certified by batch doubling: the rank over the first half of the
//! samples must survive the second half unchanged, otherwise the computation
//! reports failure instead of a possibly deficient dimension.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::lovelock_from_point_data;
use crate::invariant::matching::Matching;
use crate::invariant::normal::{combine_coords, normal_tensor_coords};
use crate::invariant::scheme::{
    canonical_form, enumerate_generators, ContractionScheme, SlotSignature,
};
use crate::linalg::{Matrix, RowSpace};
use crate::rng::SplitMix64;
use crate::scalar::{rat, Rational};
use crate::tensor::{IndexIter, Permutation, Tensor, Variance};

/// Per-order normal-tensor samples, shared across the factors of every
/// scheme in a run.
struct SampleBank {
    samples: BTreeMap<usize, Vec<Tensor>>,
}

impl SampleBank {
    fn new(n: usize, orders: &[usize], count: usize, seed: u64) -> Result<Self> {
        let mut samples = BTreeMap::new();
        for &order in orders {
            let (basis, kernel) = normal_tensor_coords(n, order)?;
            let mut list = Vec::with_capacity(count);
            for s in 0..count {
                let mut rng = SplitMix64::substream(seed, ((order as u64) << 32) | s as u64);
                list.push(combine_coords(&basis, &kernel, &mut rng));
            }
            samples.insert(order, list);
        }
        Ok(Self { samples })
    }

    fn tensor(&self, order: usize, sample: usize) -> &Tensor {
        &self.samples[&order][sample]
    }
}

fn orders_of(schemes: &[ContractionScheme]) -> Vec<usize> {
    let mut orders: Vec<usize> = Vec::new();
    for s in schemes {
        for &(order, _) in s.signature.counts() {
            if !orders.contains(&order) {
                orders.push(order);
            }
        }
    }
    orders.sort_unstable();
    orders
}

/// Values of one scheme's total contraction on the given sample, for every
/// free tuple at once, indexed row-major over the `2 pbar` free slots. The
/// pairing is the euclidean one: matched indices are summed over equal
/// values.
///
/// The block slots are swept a single time: pairs inside the factor blocks
/// are summed out, block slots matched to a free slot enumerate that free
/// coordinate, and pairs of free slots only constrain which tuples are
/// nonzero. This keeps the cost independent of the number of output tuples.
fn evaluate_scheme_all_tuples(
    scheme: &ContractionScheme,
    bank: &SampleBank,
    sample: usize,
    n: usize,
) -> Vec<Rational> {
    let free_start = scheme.signature.free_slot_start();
    let total = scheme.signature.total_slots();
    let free_count = total - free_start;
    let mut slot_values = vec![0usize; total];
    let mut sum_pairs: Vec<(usize, usize)> = Vec::new();
    let mut free_free: Vec<(usize, usize)> = Vec::new();
    // (block slot, free coordinate) pairs, the free side driving the block side
    let mut bound: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in scheme.matching.pairs() {
        match (a >= free_start, b >= free_start) {
            (true, true) => free_free.push((a - free_start, b - free_start)),
            (true, false) => bound.push((b, a - free_start)),
            (false, true) => bound.push((a, b - free_start)),
            (false, false) => sum_pairs.push((a, b)),
        }
    }
    let blocks = scheme.signature.factor_blocks();

    // One sweep over the bound-slot grid, summing out the internal pairs.
    let mut per_bound = vec![Rational::zero(); n.pow(bound.len() as u32)];
    for driving in IndexIter::over(n, bound.len()) {
        for (p, &(slot, _)) in bound.iter().enumerate() {
            slot_values[slot] = driving[p];
        }
        let cell = &mut per_bound[driving.iter().fold(0, |acc, &v| acc * n + v)];
        for assignment in IndexIter::over(n, sum_pairs.len()) {
            for (p, &(a, b)) in sum_pairs.iter().enumerate() {
                slot_values[a] = assignment[p];
                slot_values[b] = assignment[p];
            }
            let mut term = Rational::one();
            let mut zero = false;
            for &(order, start) in &blocks {
                let idx = &slot_values[start..start + order + 2];
                let v = bank.tensor(order, sample).get(idx);
                if v.is_zero() {
                    zero = true;
                    break;
                }
                term *= v;
            }
            if !zero {
                *cell += term;
            }
        }
    }

    // Scatter onto the full tuple grid, honoring the free-free constraints.
    let mut out = vec![Rational::zero(); n.pow(free_count as u32)];
    for (offset, tuple) in IndexIter::over(n, free_count).enumerate() {
        if free_free.iter().any(|&(a, b)| tuple[a] != tuple[b]) {
            continue;
        }
        let key = bound.iter().fold(0, |acc, &(_, f)| acc * n + tuple[f]);
        out[offset] = per_bound[key].clone();
    }
    out
}

#[cfg(test)]
fn evaluate_scheme(
    scheme: &ContractionScheme,
    bank: &SampleBank,
    sample: usize,
    tuple: &[usize],
    n: usize,
) -> Rational {
    let offset = tuple.iter().fold(0, |acc, &v| acc * n + v);
    evaluate_scheme_all_tuples(scheme, bank, sample, n)[offset].clone()
}

/// The evaluation matrix: columns are the deduplicated schemes of the
/// `(pbar, k)` family, rows are (sample, output tuple) pairs in sample-major
/// order. Deterministic given the seed.
pub fn evaluation_matrix(
    pbar: usize,
    k: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<Matrix> {
    let schemes = enumerate_generators(pbar, k)?;
    if samples < schemes.len() {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples, got {samples}",
            schemes.len()
        )));
    }
    let bank = SampleBank::new(n, &orders_of(&schemes), samples, seed)?;
    let tuple_count = n.pow(2 * pbar as u32);
    let mut rows = Vec::with_capacity(samples * tuple_count);
    for s in 0..samples {
        let columns: Vec<Vec<Rational>> = schemes
            .iter()
            .map(|scheme| evaluate_scheme_all_tuples(scheme, &bank, s, n))
            .collect();
        for t in 0..tuple_count {
            rows.push(columns.iter().map(|c| c[t].clone()).collect());
        }
    }
    Ok(Matrix::from_rows(rows))
}

/// Streams the evaluation rows of `2 * batch` samples through a rank
/// accumulator (and an optional per-row hook), returning the rank after the
/// first batch and after both.
fn stream_evaluation(
    schemes: &[ContractionScheme],
    pbar: usize,
    n: usize,
    batch: usize,
    seed: u64,
    mut row_hook: impl FnMut(usize, &[usize], &[Rational]),
) -> Result<(usize, usize)> {
    let bank = SampleBank::new(n, &orders_of(schemes), 2 * batch, seed)?;
    let tuples: Vec<Vec<usize>> = IndexIter::over(n, 2 * pbar).collect();
    let mut space = RowSpace::new(schemes.len());
    let mut rank_first = 0;
    for s in 0..2 * batch {
        let columns: Vec<Vec<Rational>> = schemes
            .iter()
            .map(|scheme| evaluate_scheme_all_tuples(scheme, &bank, s, n))
            .collect();
        for (t, tuple) in tuples.iter().enumerate() {
            let row: Vec<Rational> = columns.iter().map(|c| c[t].clone()).collect();
            row_hook(s, tuple, &row);
            space.insert(row);
        }
        if s + 1 == batch {
            rank_first = space.rank();
        }
    }
    Ok((rank_first, space.rank()))
}

/// Exact dimension of the span of the scheme functionals at dimension `n`,
/// certified by batch doubling.
pub fn certified_span_dim(pbar: usize, k: usize, n: usize, seed: u64) -> Result<usize> {
    let schemes = enumerate_generators(pbar, k)?;
    let batch = schemes.len().max(4);
    let (first, second) = stream_evaluation(&schemes, pbar, n, batch, seed, |_, _, _| {})?;
    if first != second {
        return Err(Error::RankUnstable { first, second });
    }
    Ok(second)
}

/// Dimension of the space of universal tensors of the `(pbar, k)` family that
/// vanish identically in dimension `n`: the span dimension at the critical
/// dimension `2k + pbar` minus the span dimension at `n`.
pub fn kernel_dimension(pbar: usize, k: usize, n: usize, seed: u64) -> Result<usize> {
    let critical = 2 * k + pbar;
    if n > critical || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "kernel dimension is defined for 1 <= n <= {critical}"
        )));
    }
    let stable = certified_span_dim(pbar, k, critical, seed)?;
    if n == critical {
        return Ok(0);
    }
    let at_n = certified_span_dim(pbar, k, n, seed)?;
    Ok(stable - at_n)
}

/// Curvature of the degree-2 jet `g = Id + (1/2) v x x` at the origin, as a
/// linear expression in the second-order data `v` (metric pair first):
/// `R_{abcd} = (1/2) (v[a,d,b,c] + v[b,c,a,d] - v[a,c,b,d] - v[b,d,a,c])`.
pub fn curvature_from_second_order(v: &Tensor) -> Result<Tensor> {
    let n = v.dim();
    if v.num_slots() != 4 {
        return Err(Error::InvalidArgument(
            "second-order data must have 4 slots".into(),
        ));
    }
    let half = rat(1, 2);
    Tensor::from_fn(n, vec![Variance::Covariant; 4], |idx| {
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = v.get(&[a, d, b, c]).clone();
        acc += v.get(&[b, c, a, d]);
        acc -= v.get(&[a, c, b, d]).clone();
        acc -= v.get(&[b, d, a, c]).clone();
        acc * &half
    })
}

/// Expansion of the Lovelock-type contraction into signed matchings on the
/// slots of `k` second-order factors plus `2 pbar` free slots: the
/// generalized Kronecker delta unfolds into permutations and each curvature
/// factor into the four placements of the second-order data.
fn lovelock_matching_terms(pbar: usize, k: usize) -> Vec<(Matching, Rational)> {
    let m = 2 * k + pbar;
    let free_base = 4 * k;
    // placements[w] = (sign, slot offsets of the externals a, b, c, d)
    let placements: [(i64, [usize; 4]); 4] = [
        (1, [0, 2, 3, 1]),  // v[(a d), (b c)]: a->0, d->1, b->2, c->3
        (1, [2, 0, 1, 3]),  // v[(b c), (a d)]
        (-1, [0, 2, 1, 3]), // -v[(a c), (b d)]
        (-1, [2, 0, 3, 1]), // -v[(b d), (a c)]
    ];
    let upper_endpoint = |q: usize, ws: &[usize]| -> usize {
        if q < 2 * k {
            let t = q / 2;
            let external = q % 2; // 0 -> a, 1 -> b
            4 * t + placements[ws[t]].1[external]
        } else {
            free_base + pbar + (q - 2 * k)
        }
    };
    let lower_endpoint = |q: usize, ws: &[usize]| -> usize {
        if q < 2 * k {
            let t = q / 2;
            let external = 2 + q % 2; // 2 -> c, 3 -> d
            4 * t + placements[ws[t]].1[external]
        } else {
            free_base + (q - 2 * k)
        }
    };

    let half_pow = rational_half_power(k);
    let mut terms = Vec::new();
    let mut ws = vec![0usize; k];
    loop {
        let mut w_sign = 1i64;
        for &w in &ws {
            w_sign *= placements[w].0;
        }
        for pi in Permutation::all(m) {
            let pairs: Vec<(usize, usize)> = (0..m)
                .map(|q| (upper_endpoint(q, &ws), lower_endpoint(pi.image(q), &ws)))
                .collect();
            let matching = Matching::new(pairs).expect("expansion yields a perfect matching");
            let coeff = Rational::from_integer((pi.sign() * w_sign).into()) * &half_pow;
            terms.push((matching, coeff));
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return terms;
            }
            pos -= 1;
            ws[pos] += 1;
            if ws[pos] < 4 {
                break;
            }
            ws[pos] = 0;
        }
    }
}

fn rational_half_power(k: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= rat(1, 2);
    }
    acc
}

/// Coefficient vectors, over the full scheme column list, of the distinct
/// slot-permuted variants of the Lovelock-type contraction.
pub fn lovelock_scheme_vectors(
    pbar: usize,
    k: usize,
    schemes: &[ContractionScheme],
) -> Result<Vec<(Permutation, Vec<Rational>)>> {
    let second_order_sig = SlotSignature::new(pbar, vec![(2, k)])?;
    let mut column_of: BTreeMap<&Matching, usize> = BTreeMap::new();
    for (i, s) in schemes.iter().enumerate() {
        if s.signature == second_order_sig {
            column_of.insert(&s.canonical, i);
        }
    }
    let raw_terms = lovelock_matching_terms(pbar, k);
    let free_base = 4 * k;
    let mut out: Vec<(Permutation, Vec<Rational>)> = Vec::new();
    for sigma in Permutation::all(2 * pbar) {
        let mut vector = vec![Rational::zero(); schemes.len()];
        for (matching, coeff) in &raw_terms {
            // relabel free slot r to sigma(r)
            let images: Vec<usize> = (0..free_base + 2 * pbar)
                .map(|s| {
                    if s < free_base {
                        s
                    } else {
                        free_base + sigma.image(s - free_base)
                    }
                })
                .collect();
            let relabeled = matching.relabel(&images);
            let canonical = canonical_form(&second_order_sig, &relabeled);
            let col = *column_of
                .get(&canonical)
                .expect("expansion lands on an enumerated scheme");
            vector[col] += coeff;
        }
        if !out.iter().any(|(_, v)| v == &vector) {
            out.push((sigma, vector));
        }
    }
    Ok(out)
}

/// Outcome of the membership verification at the critical dimension.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub pbar: usize,
    pub k: usize,
    /// Distinct coefficient vectors among the slot-permuted variants
    /// (sign-flipped variants count as distinct vectors).
    pub distinct_variants: usize,
    /// All variants evaluate to zero on every sample at `2k + pbar - 1`.
    pub all_in_kernel: bool,
    /// Rank of the variants' evaluation vectors at the critical dimension.
    pub span_dimension: usize,
    /// Certified span dimension of the scheme functionals one below the
    /// critical dimension.
    pub rank_below: usize,
    /// Certified span dimension at the critical dimension.
    pub rank_critical: usize,
    /// `rank_critical - rank_below`: the dimension of the space of universal
    /// tensors vanishing identically below the critical dimension.
    pub kernel_dimension: usize,
    /// Closed-form count `pbar (pbar+1) .. (2 pbar - 1)`, or 1 when
    /// `pbar <= 1`.
    pub predicted_dimension: usize,
    /// The coefficient-vector route agrees with direct point evaluation of
    /// the contraction through the sampled curvature.
    pub evaluation_cross_check: bool,
    /// The variants lie in the kernel and span all of it.
    pub generates_kernel: bool,
    /// The certified span equals the closed-form count.
    pub matches_prediction: bool,
}

pub fn predicted_kernel_dimension(pbar: usize) -> usize {
    if pbar == 0 {
        return 1;
    }
    (pbar..2 * pbar).product()
}

/// Verifies that the slot-permuted Lovelock-type contractions generate the
/// kernel at the critical dimension: each lies in the nullspace of the
/// evaluation at `2k + pbar - 1`, their span at `2k + pbar` has the predicted
/// dimension, and their coefficient expansion agrees with direct point
/// evaluation.
pub fn membership_check(pbar: usize, k: usize, seed: u64) -> Result<MembershipReport> {
    let critical = 2 * k + pbar;
    if critical < 2 {
        return Err(Error::ExceptionalCase(pbar, k));
    }
    let schemes = enumerate_generators(pbar, k)?;
    let variants = lovelock_scheme_vectors(pbar, k, &schemes)?;
    let batch = schemes.len().max(4);

    // Pass at the subcritical dimension: every variant must evaluate to zero.
    let mut all_in_kernel = true;
    let below = critical - 1;
    let (first, rank_below) =
        stream_evaluation(&schemes, pbar, below, batch, seed, |_, _, row| {
            for (_, x) in &variants {
                let mut dot = Rational::zero();
                for (entry, coeff) in row.iter().zip(x) {
                    if !coeff.is_zero() && !entry.is_zero() {
                        dot += entry * coeff;
                    }
                }
                if !dot.is_zero() {
                    all_in_kernel = false;
                }
            }
        })?;
    if first != rank_below {
        return Err(Error::RankUnstable {
            first,
            second: rank_below,
        });
    }

    // Pass at the critical dimension: collect each variant's evaluation
    // vector and cross-check against direct point evaluation. The probe bank
    // is built with the same (orders, count, seed) as the one inside
    // stream_evaluation, so sample s here is the same tensor seen by the rows.
    let bank_probe = SampleBank::new(critical, &orders_of(&schemes), 2 * batch, seed)?;
    let identity: Vec<Vec<Rational>> = (0..critical)
        .map(|i| {
            (0..critical)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut point_values: Vec<Tensor> = Vec::new();
    for s in 0..2 * batch {
        let curvature = curvature_from_second_order(bank_probe.tensor(2, s))?;
        point_values.push(lovelock_from_point_data(
            pbar, k, &curvature, &identity, &identity,
        )?);
    }

    let mut evaluation_vectors: Vec<Vec<Rational>> = vec![Vec::new(); variants.len()];
    let mut cross_check = true;
    let (first, rank_critical) =
        stream_evaluation(&schemes, pbar, critical, batch, seed, |s, tuple, row| {
            for (v, (sigma, x)) in variants.iter().enumerate() {
                let mut dot = Rational::zero();
                for (entry, coeff) in row.iter().zip(x) {
                    if !coeff.is_zero() && !entry.is_zero() {
                        dot += entry * coeff;
                    }
                }
                // direct evaluation: sigma-permuted point value at the tuple
                let direct = if tuple.is_empty() {
                    point_values[s].scalar_value().expect("scalar").clone()
                } else {
                    let src: Vec<usize> = (0..tuple.len()).map(|a| tuple[sigma.image(a)]).collect();
                    point_values[s].get(&src).clone()
                };
                if direct != dot {
                    cross_check = false;
                }
                evaluation_vectors[v].push(dot);
            }
        })?;
    if first != rank_critical {
        return Err(Error::RankUnstable {
            first,
            second: rank_critical,
        });
    }

    let mut span = RowSpace::new(evaluation_vectors[0].len());
    for v in evaluation_vectors {
        span.insert(v);
    }
    let span_dimension = span.rank();
    let predicted = predicted_kernel_dimension(pbar);
    let kernel_dimension = rank_critical - rank_below;
    Ok(MembershipReport {
        pbar,
        k,
        distinct_variants: variants.len(),
        all_in_kernel,
        span_dimension,
        rank_below,
        rank_critical,
        kernel_dimension,
        predicted_dimension: predicted,
        evaluation_cross_check: cross_check,
        generates_kernel: all_in_kernel && span_dimension == kernel_dimension,
        matches_prediction: span_dimension == predicted,
    })
}
