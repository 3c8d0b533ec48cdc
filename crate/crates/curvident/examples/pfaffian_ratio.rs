//! Pfaffian proportionality in even dimensions.
//!
//! The scalar contraction with `k = n/2` curvature factors and the Pfaffian
//! density (full alternation with two Levi-Civita symbols, no metric factors)
//! are proportional with a single constant across all metrics of a fixed
//! signature. The two quantities are computed along entirely different code
//! paths, so the constant ratio is a real cross-check.
//!
//! ```bash
//! cargo run -p curvident --example pfaffian_ratio
//! ```

use curvident::identities::{lovelock_tensor, pfaffian_density};
use curvident::metric::MetricJet;
use curvident::scalar::Rational;
use num_traits::Zero;

fn main() -> curvident::Result<()> {
    for (dim, signature) in [(2usize, (2, 0)), (2, (1, 1)), (4, (4, 0)), (4, (3, 1))] {
        let k = dim / 2;
        let mut ratio: Option<Rational> = None;
        let mut used = 0;
        for seed in 0..20u64 {
            let jet = MetricJet::random(dim, signature, 2, seed)?;
            let pf = pfaffian_density(&jet)?;
            if pf.is_zero() {
                continue;
            }
            let s = lovelock_tensor(0, k, &jet)?;
            let c = s.scalar_value()?.clone() / pf;
            match &ratio {
                None => ratio = Some(c),
                Some(existing) => assert_eq!(existing, &c, "ratio drifted"),
            }
            used += 1;
        }
        println!(
            "dim {dim}, signature {signature:?}: ratio {} across {used} jets",
            ratio.expect("curved jets exist")
        );
    }
    Ok(())
}
