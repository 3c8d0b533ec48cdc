//! The Einstein tensor of a surface vanishes — exactly.
//!
//! Draws random degree-2 metric jets in dimension 2, Riemannian and
//! Lorentzian, and checks `Ricc - (r/2) g = 0` component by component in
//! rational arithmetic. In dimension 3 the same tensor is generically
//! nonzero, which is also shown.
//!
//! ```bash
//! cargo run -p curvident --example einstein_surface
//! ```

use curvident::metric::MetricJet;

fn main() -> curvident::Result<()> {
    for signature in [(2, 0), (1, 1)] {
        for seed in 0..20u64 {
            let jet = MetricJet::random(2, signature, 2, seed)?;
            let einstein = jet.einstein()?;
            assert!(einstein.is_zero());
        }
        println!("signature {signature:?}: Einstein tensor exactly zero on 20 random surface jets");
    }

    let jet = MetricJet::random(3, (3, 0), 2, 1)?;
    let einstein = jet.einstein()?;
    println!(
        "dimension 3, seed 1: Einstein tensor is {} (scalar curvature {})",
        if einstein.is_zero() {
            "zero"
        } else {
            "nonzero"
        },
        jet.scalar_curvature()?
    );
    Ok(())
}
