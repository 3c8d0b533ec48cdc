//! Homogeneity weights under constant rescaling of the metric.
//!
//! Rescaling `g` by a constant multiplies each natural quantity by a fixed
//! power of that constant: the metric and curvature carry weight 2, the Ricci
//! tensor weight 0, the scalar curvature weight -2, and the `(pbar, k)`
//! contraction weight `2(pbar - k)`. All checked exactly at factors 4 and 9.
//!
//! ```bash
//! cargo run -p curvident --example homogeneity_weights
//! ```

use curvident::identities::{homogeneity_check, rational_power};
use curvident::metric::MetricJet;
use curvident::scalar::int;

fn main() -> curvident::Result<()> {
    let jet = MetricJet::random(3, (3, 0), 2, 5)?;
    for lambda2 in [int(4), int(9)] {
        let scaled = jet.rescale(&lambda2)?;
        assert_eq!(scaled.riemann()?, jet.riemann()?.scale(&lambda2));
        assert_eq!(scaled.ricci()?, jet.ricci()?);
        assert_eq!(
            scaled.scalar_curvature()?,
            jet.scalar_curvature()? * rational_power(&lambda2, -1)
        );
        println!("lambda^2 = {lambda2}: weights (2, 0, -2) for R, Ricc, r confirmed");
    }

    for (pbar, k) in [(0usize, 1usize), (0, 2), (1, 1), (1, 2), (2, 1)] {
        let dim = 2 * k + pbar;
        let jet = MetricJet::random(dim, (dim, 0), 2, 5)?;
        for lambda2 in [int(4), int(9)] {
            assert!(homogeneity_check(pbar, k, &jet, &lambda2)?);
        }
        println!(
            "({pbar},{k}): contraction scales with weight 2({pbar}-{k}) = {}",
            2 * (pbar as i64 - k as i64)
        );
    }
    Ok(())
}
