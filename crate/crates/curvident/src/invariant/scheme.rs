//! Contraction schemes: a block structure of normal-tensor factors plus free
//! output slots, together with a perfect matching of all slots.
//!
//! Two matchings that differ by a slot symmetry — swapping the metric pair of
//! a factor, permuting its derivative slots, or exchanging identical factors —
//! define the same total contraction, so schemes are deduplicated by the
//! lexicographically minimal matching over the symmetry-group orbit. The
//! orbits are enumerated explicitly; group orders at desk scale are tiny.

use crate::error::{Error, Result};
use crate::invariant::matching::{enumerate_matchings, Matching, MATCHING_CAP};
use crate::tensor::Permutation;

/// Block structure: `counts[(order j, d_j)]` normal factors (each occupying
/// `j + 2` slots, metric pair first), followed by `2 pbar` free slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlotSignature {
    pbar: usize,
    // (order, multiplicity), ascending orders, multiplicities >= 1
    counts: Vec<(usize, usize)>,
}

impl SlotSignature {
    pub fn new(pbar: usize, counts: Vec<(usize, usize)>) -> Result<Self> {
        let mut last = 1;
        for &(order, mult) in &counts {
            if order < 2 || mult == 0 || order <= last {
                return Err(Error::InvalidArgument(format!(
                    "bad factor counts {counts:?}"
                )));
            }
            last = order;
        }
        Ok(Self { pbar, counts })
    }

    pub fn pbar(&self) -> usize {
        self.pbar
    }

    pub fn counts(&self) -> &[(usize, usize)] {
        &self.counts
    }

    /// Total contraction weight `sum_j j d_j` carried by the factors.
    pub fn derivative_weight(&self) -> usize {
        self.counts.iter().map(|&(j, d)| j * d).sum()
    }

    /// One `(order, first slot)` entry per factor instance, in layout order.
    pub fn factor_blocks(&self) -> Vec<(usize, usize)> {
        let mut blocks = Vec::new();
        let mut at = 0;
        for &(order, mult) in &self.counts {
            for _ in 0..mult {
                blocks.push((order, at));
                at += order + 2;
            }
        }
        blocks
    }

    pub fn free_slot_start(&self) -> usize {
        self.counts.iter().map(|&(j, d)| d * (j + 2)).sum()
    }

    pub fn total_slots(&self) -> usize {
        self.free_slot_start() + 2 * self.pbar
    }

    /// All slot permutations generated by the within-factor symmetries and
    /// the exchange of identical factors. Free slots are left fixed.
    pub fn symmetry_group(&self) -> Vec<Vec<usize>> {
        let m = self.total_slots();
        let blocks = self.factor_blocks();

        // Local symmetries per factor: swap of the metric pair x permutations
        // of the derivative slots, as permutations of that block's offsets.
        let mut local: Vec<Vec<Vec<usize>>> = Vec::new();
        for &(order, _) in &blocks {
            let mut elems = Vec::new();
            for swap in [false, true] {
                for sigma in Permutation::all(order) {
                    let mut images: Vec<usize> = (0..order + 2).collect();
                    if swap {
                        images.swap(0, 1);
                    }
                    for off in 0..order {
                        images[2 + off] = 2 + sigma.image(off);
                    }
                    elems.push(images);
                }
            }
            local.push(elems);
        }

        // Exchanges of identical factors: permutations within each
        // multiplicity class, combined.
        let mut class_ranges = Vec::new();
        {
            let mut at = 0;
            for &(_, mult) in &self.counts {
                class_ranges.push((at, mult));
                at += mult;
            }
        }
        let mut exchanges: Vec<Vec<usize>> = vec![(0..blocks.len()).collect()];
        for &(start, mult) in &class_ranges {
            let mut extended = Vec::new();
            for base in &exchanges {
                for sigma in Permutation::all(mult) {
                    let mut e = base.clone();
                    for off in 0..mult {
                        e[start + off] = base[start + sigma.image(off)];
                    }
                    extended.push(e);
                }
            }
            exchanges = extended;
        }

        // Assemble: choose one local element per factor and one exchange.
        let mut out = Vec::new();
        let mut choice = vec![0usize; blocks.len()];
        loop {
            for exchange in &exchanges {
                let mut images: Vec<usize> = (0..m).collect();
                for (f, &(order, start)) in blocks.iter().enumerate() {
                    let (_, target_start) = blocks[exchange[f]];
                    let loc = &local[f][choice[f]];
                    for off in 0..order + 2 {
                        images[start + off] = target_start + loc[off];
                    }
                }
                out.push(images);
            }
            // odometer over local choices
            let mut pos = blocks.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < local[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
}

/// A slot signature together with a matching, identified by the minimal
/// matching over the slot-symmetry orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionScheme {
    pub signature: SlotSignature,
    pub matching: Matching,
    pub canonical: Matching,
}

impl ContractionScheme {
    pub fn new(signature: SlotSignature, matching: Matching) -> Result<Self> {
        if matching.size() != signature.total_slots() {
            return Err(Error::SizeMismatch(
                matching.size(),
                signature.total_slots(),
            ));
        }
        let canonical = canonical_form(&signature, &matching);
        Ok(Self {
            signature,
            matching,
            canonical,
        })
    }
}

/// Minimal relabeled matching over the symmetry-group orbit.
pub fn canonical_form(signature: &SlotSignature, matching: &Matching) -> Matching {
    signature
        .symmetry_group()
        .iter()
        .map(|images| matching.relabel(images))
        .min()
        .expect("symmetry group contains the identity")
}

/// All multi-indices `(d_2, .., d_r)` with `sum_j j d_j = weight`, as sparse
/// `(order, count)` lists in a deterministic order.
pub fn admissible_multiindices(weight: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();
    fn rec(
        remaining: usize,
        min_order: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for order in min_order.. {
            if order > remaining {
                break;
            }
            for count in 1..=remaining / order {
                current.push((order, count));
                rec(remaining - order * count, order + 1, current, out);
                current.pop();
            }
        }
    }
    rec(weight, 2, &mut current, &mut out);
    out
}

/// All deduplicated contraction schemes for `2 pbar` free slots and factor
/// weight `2k`: for each admissible multi-index, every perfect matching on
/// its slots, reduced to one representative per symmetry orbit.
///
/// Errors if any admissible block structure exceeds the slot cap.
pub fn enumerate_generators(pbar: usize, k: usize) -> Result<Vec<ContractionScheme>> {
    let mut out = Vec::new();
    for counts in admissible_multiindices(2 * k) {
        let signature = SlotSignature::new(pbar, counts)?;
        let m = signature.total_slots();
        if m > MATCHING_CAP {
            return Err(Error::CapExceeded {
                what: "scheme slots",
                got: m,
                cap: MATCHING_CAP,
            });
        }
        let mut reps: Vec<Matching> = Vec::new();
        for matching in enumerate_matchings(m)? {
            let canonical = canonical_form(&signature, &matching);
            if !reps.contains(&canonical) {
                reps.push(canonical);
            }
        }
        reps.sort();
        for canonical in reps {
            out.push(ContractionScheme {
                signature: signature.clone(),
                matching: canonical.clone(),
                canonical,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_multiindices_examples() {
        // weight 2: only d_2 = 1
        assert_eq!(admissible_multiindices(2), vec![vec![(2, 1)]]);
        // weight 4: d_2 = 2, or d_4 = 1 (3 + 1 is not expressible)
        assert_eq!(admissible_multiindices(4), vec![vec![(2, 2)], vec![(4, 1)]]);
    }

    #[test]
    fn slot_layout_for_a_single_second_order_factor() {
        let sig = SlotSignature::new(1, vec![(2, 1)]).unwrap();
        assert_eq!(sig.total_slots(), 6);
        assert_eq!(sig.free_slot_start(), 4);
        assert_eq!(sig.factor_blocks(), vec![(2, 0)]);
        assert_eq!(sig.symmetry_group().len(), 4);
    }

    #[test]
    fn symmetry_group_orders() {
        // two identical second-order factors: (2 * 2)^2 * 2! = 32
        let two = SlotSignature::new(0, vec![(2, 2)]).unwrap();
        assert_eq!(two.symmetry_group().len(), 32);
        // one fourth-order factor: 2 * 4! = 48
        let four = SlotSignature::new(0, vec![(4, 1)]).unwrap();
        assert_eq!(four.symmetry_group().len(), 48);
    }

    #[test]
    fn matching_counts_before_dedup() {
        // pbar = 0, k = 1: one block of 4 slots, 3 matchings
        assert_eq!(enumerate_matchings(4).unwrap().len(), 3);
        // pbar = 1, k = 1: 6 slots, 15 matchings
        assert_eq!(enumerate_matchings(6).unwrap().len(), 15);
    }

    #[test]
    fn scalar_curvature_block_dedups_to_two_schemes() {
        // The two trace patterns on one second-order factor.
        let schemes = enumerate_generators(0, 1).unwrap();
        assert_eq!(schemes.len(), 2);
    }

    #[test]
    fn ricci_block_dedups_to_six_schemes() {
        let schemes = enumerate_generators(1, 1).unwrap();
        assert_eq!(schemes.len(), 6);
    }

    #[test]
    fn canonical_form_identifies_orbit_members() {
        let sig = SlotSignature::new(0, vec![(2, 1)]).unwrap();
        // pairing (metric slot, derivative slot) twice in the two possible ways
        let a = Matching::new(vec![(0, 2), (1, 3)]).unwrap();
        let b = Matching::new(vec![(0, 3), (1, 2)]).unwrap();
        assert_eq!(canonical_form(&sig, &a), canonical_form(&sig, &b));
        // full metric trace and full derivative trace is its own orbit
        let c = Matching::new(vec![(0, 1), (2, 3)]).unwrap();
        assert_ne!(canonical_form(&sig, &a), canonical_form(&sig, &c));
    }
}
