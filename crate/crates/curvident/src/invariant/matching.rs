//! Perfect matchings of slot sets and the Gram pairing of total contractions.

use crate::error::{Error, Result};

/// Cap on the number of slots a matching may pair.
pub const MATCHING_CAP: usize = 12;

/// A perfect matching of `{0, .., m-1}` into unordered pairs, stored sorted:
/// each pair `(a, b)` has `a < b`, and pairs are ordered by first element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let m = 2 * pairs.len();
        let mut seen = vec![false; m];
        for &(a, b) in &pairs {
            if a == b || b >= m || seen[a] || seen[b] {
                return Err(Error::InvalidArgument(format!(
                    "{pairs:?} is not a perfect matching"
                )));
            }
            seen[a] = true;
            seen[b] = true;
        }
        Ok(Self { pairs })
    }

    pub fn size(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn partner(&self, slot: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == slot {
                return b;
            }
            if b == slot {
                return a;
            }
        }
        panic!("slot {slot} out of range");
    }

    /// Applies a slot relabeling and re-canonicalizes.
    pub fn relabel(&self, images: &[usize]) -> Matching {
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (images[a], images[b]))
            .collect();
        Matching::new(pairs).expect("relabeling a matching by a bijection")
    }

    /// Number of cycles in the union multigraph of two matchings on the same
    /// slot set. Every vertex has one edge from each matching, so the union
    /// is a disjoint set of even cycles (a shared pair is a 2-cycle).
    pub fn union_cycles(&self, other: &Matching) -> usize {
        assert_eq!(self.size(), other.size());
        let m = self.size();
        let mut seen = vec![false; m];
        let mut cycles = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            loop {
                seen[at] = true;
                let via_self = self.partner(at);
                seen[via_self] = true;
                let back = other.partner(via_self);
                if back == start {
                    break;
                }
                at = back;
            }
        }
        cycles
    }
}

/// All `(m-1)!!` perfect matchings of `{0, .., m-1}`, in lexicographic order
/// of their sorted pair lists.
pub fn enumerate_matchings(m: usize) -> Result<Vec<Matching>> {
    if !m.is_multiple_of(2) {
        return Err(Error::OddSlotCount(m));
    }
    if m > MATCHING_CAP {
        return Err(Error::CapExceeded {
            what: "matching slots",
            got: m,
            cap: MATCHING_CAP,
        });
    }
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut pairs = Vec::with_capacity(m / 2);
    fn rec(m: usize, used: &mut [bool], pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        let first = match (0..m).find(|&i| !used[i]) {
            None => {
                out.push(Matching {
                    pairs: pairs.clone(),
                });
                return;
            }
            Some(f) => f,
        };
        used[first] = true;
        for second in first + 1..m {
            if used[second] {
                continue;
            }
            used[second] = true;
            pairs.push((first, second));
            rec(m, used, pairs, out);
            pairs.pop();
            used[second] = false;
        }
        used[first] = false;
    }
    rec(m, &mut used, &mut pairs, &mut out);
    Ok(out)
}
