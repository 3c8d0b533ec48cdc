//! Lovelock-type curvature contractions and exact vanishing trials.
//!
//! The central object is the total contraction of `k` curvature factors and
//! `pbar` metric factors against a generalized Kronecker delta of order
//! `2k + pbar`. In dimensions below `2k + pbar` it vanishes for every metric;
//! at the critical dimension it is generically nonzero. [`verify_vanishing`]
//! runs that dichotomy over seeded random jets with exact arithmetic, and the
//! proportionality constants tying special cases to the scalar curvature, the
//! Einstein tensor and the Pfaffian density are derived at run time from a
//! designated jet rather than assumed.
//!
//! The delta is never materialized densely here: its nonzero entries are
//! enumerated directly and folded against the curvature factors pairwise,
//! which keeps the critical-dimension cases cheap.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{restrict, MetricJet};
use crate::rng::SplitMix64;
use crate::scalar::Rational;
use crate::tensor::{invert_symmetric, Permutation, Tensor, Variance};

/// Slot cap for a single contraction expression (delta slots plus curvature
/// and metric factor slots).
pub const SLOT_CAP: usize = 12;

/// Dimension cap for jobs.
pub const DIM_CAP: usize = 6;

/// Nonzero entries of the order-`m` generalized Kronecker delta in dimension
/// `n`, keyed as `[upper.., lower..]` with an integer sign. Empty when
/// `m > n`.
pub(crate) fn kronecker_nonzeros(m: usize, n: usize) -> Vec<(Vec<u8>, i8)> {
    if m > n {
        return Vec::new();
    }
    if m == 0 {
        return vec![(Vec::new(), 1)];
    }
    let perms = Permutation::all(m);
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..m).collect();
    loop {
        for alpha in &perms {
            for beta in &perms {
                let mut key = Vec::with_capacity(2 * m);
                for a in 0..m {
                    key.push(combo[alpha.image(a)] as u8);
                }
                for b in 0..m {
                    key.push(combo[beta.image(b)] as u8);
                }
                out.push((key, (alpha.sign() * beta.sign()) as i8));
            }
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            combo[pos] += 1;
            if combo[pos] <= n - m + pos {
                for p in pos + 1..m {
                    combo[p] = combo[p - 1] + 1;
                }
                break;
            }
        }
    }
}

fn remove_positions(key: &[u8], positions: &[usize]) -> Vec<u8> {
    key.iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, &v)| v)
        .collect()
}

/// The value of the Lovelock-type contraction from point data alone: the
/// fully covariant curvature at the point, the metric value and its inverse.
///
/// Computes the `2 pbar`-covariant tensor obtained by raising the last two
/// slots of each of `k` curvature factors, contracting all of them against a
/// generalized Kronecker delta of order `2k + pbar`, and closing the remaining
/// delta slots with `pbar` metric factors.
pub fn lovelock_from_point_data(
    pbar: usize,
    k: usize,
    riemann: &Tensor,
    g0: &[Vec<Rational>],
    ginv0: &[Vec<Rational>],
) -> Result<Tensor> {
    let n = riemann.dim();
    let m = 2 * k + pbar;
    if 4 * k + 2 * pbar > SLOT_CAP {
        return Err(Error::CapExceeded {
            what: "contraction slots",
            got: 4 * k + 2 * pbar,
            cap: SLOT_CAP,
        });
    }

    // mixed[c1, c2, b1, b2] = R_{c1 c2}{}^{b1 b2}: last two slots raised
    let mut mixed = vec![Rational::zero(); n * n * n * n];
    if k > 0 {
        for c1 in 0..n {
            for c2 in 0..n {
                for e in 0..n {
                    for f in 0..n {
                        let r = riemann.get(&[c1, c2, e, f]);
                        if r.is_zero() {
                            continue;
                        }
                        for b1 in 0..n {
                            if ginv0[e][b1].is_zero() {
                                continue;
                            }
                            let re = r * &ginv0[e][b1];
                            for b2 in 0..n {
                                if ginv0[f][b2].is_zero() {
                                    continue;
                                }
                                mixed[((c1 * n + c2) * n + b1) * n + b2] += &re * &ginv0[f][b2];
                            }
                        }
                    }
                }
            }
        }
    }

    // Fold the delta against the curvature factors, then the metric factors.
    let mut entries: HashMap<Vec<u8>, Rational> = HashMap::new();
    for (key, sign) in kronecker_nonzeros(m, n) {
        entries.insert(key, Rational::from_integer(i64::from(sign).into()));
    }
    // Original delta slot ids carried along as positions get consumed:
    // uppers are 0..m, lowers are m..2m.
    let mut slot_map: Vec<usize> = (0..2 * m).collect();
    let pos_of = |slot_map: &[usize], slot: usize| {
        slot_map
            .iter()
            .position(|&s| s == slot)
            .expect("slot still present")
    };

    for t in 0..k {
        let positions = [
            pos_of(&slot_map, 2 * t),
            pos_of(&slot_map, 2 * t + 1),
            pos_of(&slot_map, m + 2 * t),
            pos_of(&slot_map, m + 2 * t + 1),
        ];
        let mut next: HashMap<Vec<u8>, Rational> = HashMap::new();
        for (key, val) in &entries {
            let c1 = key[positions[0]] as usize;
            let c2 = key[positions[1]] as usize;
            let b1 = key[positions[2]] as usize;
            let b2 = key[positions[3]] as usize;
            let w = &mixed[((c1 * n + c2) * n + b1) * n + b2];
            if w.is_zero() {
                continue;
            }
            let mut sorted = positions;
            sorted.sort_unstable();
            let reduced = remove_positions(key, &sorted);
            let term = val * w;
            let acc = next.entry(reduced).or_insert_with(Rational::zero);
            *acc += term;
        }
        entries = next;
        let mut sorted = positions;
        sorted.sort_unstable();
        for &p in sorted.iter().rev() {
            slot_map.remove(p);
        }
    }

    const FREE: usize = usize::MAX;
    for s in 0..pbar {
        let pj = pos_of(&slot_map, 2 * k + s);
        let mut next: HashMap<Vec<u8>, Rational> = HashMap::new();
        for (key, val) in &entries {
            let j = key[pj] as usize;
            let reduced = remove_positions(key, &[pj]);
            for i2 in 0..n {
                if g0[j][i2].is_zero() {
                    continue;
                }
                let mut newkey = reduced.clone();
                newkey.push(i2 as u8);
                let term = val * &g0[j][i2];
                let acc = next.entry(newkey).or_insert_with(Rational::zero);
                *acc += term;
            }
        }
        entries = next;
        slot_map.remove(pj);
        slot_map.push(FREE);
    }

    let mut out = Tensor::zeros(n, vec![Variance::Covariant; 2 * pbar])?;
    for (key, val) in entries {
        if val.is_zero() {
            continue;
        }
        let idx: Vec<usize> = key.iter().map(|&v| v as usize).collect();
        out.set(&idx, val);
    }
    Ok(out)
}

/// The Lovelock-type contraction of `k` curvature factors of the jet, a
/// `2 pbar`-covariant tensor at the base point.
pub fn lovelock_tensor(pbar: usize, k: usize, g: &MetricJet) -> Result<Tensor> {
    let riemann = g.riemann()?;
    let g0 = g.constant_matrix();
    let ginv0 = invert_symmetric(g.dim(), |i, j| g0[i][j].clone())?;
    lovelock_from_point_data(pbar, k, &riemann, &g0, &ginv0)
}

/// Slot-permuted variant `sigma . S`.
pub fn permuted_lovelock(
    sigma: &Permutation,
    pbar: usize,
    k: usize,
    g: &MetricJet,
) -> Result<Tensor> {
    lovelock_tensor(pbar, k, g)?.permute_slots(sigma)
}

/// Pfaffian-type density: full alternation of `n/2` fully covariant curvature
/// factors with two Levi-Civita symbols (no metric factors).
pub fn pfaffian_density(g: &MetricJet) -> Result<Rational> {
    let n = g.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let riemann = g.riemann()?;
    let half = n / 2;
    // Restrict both symbols to pair-sorted permutations; the curvature pair
    // antisymmetries make each such term stand for 2^(n/2) equal ones.
    let perms: Vec<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|p| (0..half).all(|t| p.image(2 * t) < p.image(2 * t + 1)))
        .collect();
    let mut total = Rational::zero();
    for alpha in &perms {
        'beta: for beta in &perms {
            let mut term = Rational::from_integer((alpha.sign() * beta.sign()).into());
            for t in 0..half {
                let r = riemann.get(&[
                    alpha.image(2 * t),
                    alpha.image(2 * t + 1),
                    beta.image(2 * t),
                    beta.image(2 * t + 1),
                ]);
                if r.is_zero() {
                    continue 'beta;
                }
                term *= r;
            }
            total += term;
        }
    }
    let doubling = Rational::from_integer(BigInt::from(1u8) << n);
    Ok(total * doubling)
}

/// A vanishing/nonvanishing verification job.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityJob {
    pub pbar: usize,
    pub k: usize,
    pub dim: usize,
    pub signature: (usize, usize),
    pub trials: usize,
    pub seed: u64,
}

impl IdentityJob {
    pub fn new(
        pbar: usize,
        k: usize,
        dim: usize,
        signature: (usize, usize),
        trials: usize,
        seed: u64,
    ) -> Result<Self> {
        if k == 0 && pbar <= 1 {
            return Err(Error::ExceptionalCase(pbar, k));
        }
        if signature.0 + signature.1 != dim {
            return Err(Error::InvalidSignature(signature.0, signature.1));
        }
        if dim == 0 || dim > DIM_CAP {
            return Err(Error::CapExceeded {
                what: "dimension",
                got: dim,
                cap: DIM_CAP,
            });
        }
        if 4 * k + 2 * pbar > SLOT_CAP {
            return Err(Error::CapExceeded {
                what: "contraction slots",
                got: 4 * k + 2 * pbar,
                cap: SLOT_CAP,
            });
        }
        if trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        Ok(Self {
            pbar,
            k,
            dim,
            signature,
            trials,
            seed,
        })
    }

    /// Homogeneity weight `2 (pbar - k)`.
    pub fn weight(&self) -> i64 {
        2 * (self.pbar as i64 - self.k as i64)
    }

    /// The contraction vanishes identically below this dimension.
    pub fn critical_dim(&self) -> usize {
        2 * self.k + self.pbar
    }

    /// Deterministic jet for one trial.
    pub fn jet(&self, trial: usize) -> Result<MetricJet> {
        let seed = SplitMix64::substream(self.seed, trial as u64).next_u64();
        MetricJet::random(self.dim, self.signature, 2, seed)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WitnessComponent {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub exact_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_component: Option<WitnessComponent>,
}

/// Outcome record of a batch of vanishing trials.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityReport {
    pub job: IdentityJob,
    pub results: Vec<TrialResult>,
    /// Proportionality constants derived from the designated first trial and
    /// asserted constant across the batch.
    pub constants: BTreeMap<String, String>,
    /// Largest absolute numerator over all nonzero components seen.
    pub max_abs_numerator: String,
    pub verdict: String,
}

impl IdentityReport {
    pub fn identity_holds(&self) -> bool {
        self.results.iter().all(|r| r.exact_zero)
    }
}

/// Runs `job.trials` random jets and records the exact-zero status of the
/// contraction on each, together with derived proportionality constants.
pub fn verify_vanishing(job: &IdentityJob) -> Result<IdentityReport> {
    let mut results = Vec::with_capacity(job.trials);
    let mut max_numer = BigInt::zero();
    let mut constants: BTreeMap<String, String> = BTreeMap::new();

    // name -> (derived constant, reference is pending)
    let mut scalar_ratio: Option<Rational> = None;
    let mut einstein_ratio: Option<Rational> = None;
    let mut pfaffian_ratio: Option<Rational> = None;

    for trial in 0..job.trials {
        let jet = job.jet(trial)?;
        let value = lovelock_tensor(job.pbar, job.k, &jet)?;
        let mut witness = None;
        for idx in value.indices() {
            let c = value.get(&idx);
            if c.is_zero() {
                continue;
            }
            let abs = c.numer().abs();
            if abs > max_numer {
                max_numer = abs;
            }
            if witness.is_none() {
                witness = Some(WitnessComponent {
                    index: idx.clone(),
                    value: c.to_string(),
                });
            }
        }
        results.push(TrialResult {
            trial,
            exact_zero: witness.is_none(),
            witness_component: witness,
        });

        // Derived constants, where the classical comparisons apply.
        if job.pbar == 0 && job.k == 1 && job.dim >= 2 {
            let r = jet.scalar_curvature()?;
            if !r.is_zero() {
                let s = value.scalar_value()?.clone();
                check_ratio(&mut scalar_ratio, "lovelock_over_scalar_curvature", s / r)?;
            }
        }
        if job.pbar == 1 && job.k == 1 && job.dim >= 3 {
            let einstein = jet.einstein()?;
            if let Some(c) = componentwise_ratio(&value, &einstein)? {
                check_ratio(&mut einstein_ratio, "lovelock_over_einstein", c)?;
            }
        }
        if job.pbar == 0 && job.dim == 2 * job.k {
            let pf = pfaffian_density(&jet)?;
            if !pf.is_zero() {
                let s = value.scalar_value()?.clone();
                check_ratio(&mut pfaffian_ratio, "lovelock_over_pfaffian", s / pf)?;
            }
        }
    }

    for (name, c) in [
        ("lovelock_over_scalar_curvature", scalar_ratio),
        ("lovelock_over_einstein", einstein_ratio),
        ("lovelock_over_pfaffian", pfaffian_ratio),
    ] {
        if let Some(c) = c {
            constants.insert(name.to_string(), c.to_string());
        }
    }

    let verdict = if results.iter().all(|r| r.exact_zero) {
        "identity holds".to_string()
    } else {
        "nonvanishing witness found".to_string()
    };
    Ok(IdentityReport {
        job: job.clone(),
        results,
        constants,
        max_abs_numerator: max_numer.to_string(),
        verdict,
    })
}

/// Requires `value == ratio * reference` with one ratio for the whole batch;
/// derives the ratio from the first usable trial.
fn check_ratio(stored: &mut Option<Rational>, name: &str, ratio: Rational) -> Result<()> {
    match stored {
        None => {
            *stored = Some(ratio);
            Ok(())
        }
        Some(existing) if *existing == ratio => Ok(()),
        Some(_) => Err(Error::InvalidArgument(format!(
            "proportionality constant for {name} is not constant across trials"
        ))),
    }
}

/// The single constant `c` with `a == c * b`, if one exists and `b` is
/// nonzero; `Ok(None)` when `b` is zero.
fn componentwise_ratio(a: &Tensor, b: &Tensor) -> Result<Option<Rational>> {
    let mut ratio: Option<Rational> = None;
    for idx in b.indices() {
        let bv = b.get(&idx);
        if bv.is_zero() {
            continue;
        }
        let c = a.get(&idx) / bv;
        match &ratio {
            None => ratio = Some(c),
            Some(existing) if *existing == c => {}
            Some(_) => {
                return Err(Error::InvalidArgument(
                    "tensors are not proportional".into(),
                ))
            }
        }
    }
    if ratio.is_some() {
        // also require a to vanish wherever b does
        for idx in b.indices() {
            if b.get(&idx).is_zero() && !a.get(&idx).is_zero() {
                return Err(Error::InvalidArgument(
                    "tensors are not proportional".into(),
                ));
            }
        }
    }
    Ok(ratio)
}

/// Exact homogeneity check: does the contraction of the rescaled jet equal
/// `lambda2^(pbar - k)` times the original?
pub fn homogeneity_check(pbar: usize, k: usize, g: &MetricJet, lambda2: &Rational) -> Result<bool> {
    let scaled = g.rescale(lambda2)?;
    let lhs = lovelock_tensor(pbar, k, &scaled)?;
    let factor = rational_power(lambda2, pbar as i64 - k as i64);
    let rhs = lovelock_tensor(pbar, k, g)?.scale(&factor);
    Ok(lhs == rhs)
}

/// Exact cylinder compatibility: restricting the contraction of the extended
/// jet must reproduce the contraction of the base jet.
pub fn universality_check(pbar: usize, k: usize, g: &MetricJet) -> Result<bool> {
    let extended = g.cylinder_extend();
    let restricted = restrict(&lovelock_tensor(pbar, k, &extended)?)?;
    Ok(restricted == lovelock_tensor(pbar, k, g)?)
}

/// `base^exponent` for a nonzero rational base and integer exponent.
pub fn rational_power(base: &Rational, exponent: i64) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    let positive = base.clone();
    let factor = if exponent >= 0 {
        positive
    } else {
        Rational::from_integer(1.into()) / positive
    };
    for _ in 0..exponent.unsigned_abs() {
        acc *= &factor;
    }
    acc
}
