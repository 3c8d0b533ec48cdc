//! Normal-tensor spaces: exact bases and dimensions.
//!
//! The order-`r` normal tensors are the kernel of symmetrization over the
//! trailing `r + 1` indices of `S^2 x S^r` — the pointwise model of the
//! order-`r` metric derivatives in normal coordinates. The basis comes from
//! an exact nullspace; at `r = 2` the dimension `n^2(n^2-1)/12` coincides
//! with the count of algebraic curvature tensors.
//!
//! ```bash
//! cargo run -p curvident --example normal_tensors
//! ```

use curvident::invariant::{normal_space_dim, normal_tensor_basis, random_normal_tensor};

fn main() -> curvident::Result<()> {
    println!("r \\ n |   1     2     3     4");
    for r in 2..=4usize {
        let dims: Vec<String> = (1..=4)
            .map(|n| Ok(format!("{:>4}", normal_space_dim(n, r)?)))
            .collect::<curvident::Result<_>>()?;
        println!("{r:>5} | {}", dims.join("  "));
    }

    for (n, expected) in [(2usize, 1usize), (3, 6), (4, 20)] {
        assert_eq!(normal_tensor_basis(n, 2)?.len(), expected);
        assert_eq!(n * n * (n * n - 1) / 12, expected);
    }
    println!("r = 2 dimensions match n^2(n^2-1)/12");

    let sample = random_normal_tensor(3, 2, 42)?;
    assert!(sample.tensor.symmetrize(&[1, 2, 3])?.is_zero());
    println!("random sample annihilated by the trailing symmetrization, as required");
    Ok(())
}
