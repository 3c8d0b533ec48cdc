//! Cylinder extension and dimensional restriction.
//!
//! Extending a jet by a flat coordinate and restricting the contraction back
//! reproduces the contraction of the base jet — the compatibility that makes
//! the family a single universal object across dimensions. Also shows the
//! stronger curvature property: every curvature component of the extended jet
//! touching the new direction vanishes.
//!
//! ```bash
//! cargo run -p curvident --example cylinder_universality
//! ```

use curvident::identities::universality_check;
use curvident::metric::{restrict, MetricJet};

fn main() -> curvident::Result<()> {
    for base_dim in [2usize, 3] {
        for (pbar, k) in [(0usize, 1usize), (1, 1)] {
            for seed in 0..10u64 {
                let jet = MetricJet::random(base_dim, (base_dim, 0), 2, seed)?;
                assert!(universality_check(pbar, k, &jet)?);
            }
            println!("({pbar},{k}) base dim {base_dim}: restriction equals the base contraction on 10 jets");
        }
    }

    let base = MetricJet::random(3, (3, 0), 2, 0)?;
    let cylinder = base.cylinder_extend();
    let r = cylinder.riemann()?;
    let new_axis = cylinder.dim() - 1;
    assert!(r
        .indices()
        .filter(|idx| idx.contains(&new_axis))
        .all(|idx| r.get(&idx) == &curvident::scalar::int(0)));
    assert_eq!(restrict(&r)?, base.riemann()?);
    println!("curvature of the cylinder lives entirely in the base block");
    Ok(())
}
