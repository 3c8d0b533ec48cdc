//! Kernel dimensions: how many independent identities vanish below the
//! critical dimension, certified by exact ranks.
//!
//! For each family the span dimension of the contraction generators is
//! computed at the critical dimension and one below; the difference counts
//! the universal tensors that vanish identically in the lower dimension. The
//! membership check then verifies that the slot-permuted contractions lie in
//! that kernel and span it, and cross-checks the coefficient expansion
//! against direct point evaluation.
//!
//! The `(2, 1)` family is the interesting one: the closed-form count predicts
//! 6, while the certified computation gives 2 — the permuted contractions
//! satisfy a cyclic identity that collapses their span. Run it and see.
//!
//! ```bash
//! cargo run -p curvident --example kernel_dimensions
//! ```

use curvident::invariant::{kernel_dimension, membership_check};

fn main() -> curvident::Result<()> {
    for (pbar, k) in [(0usize, 1usize), (1, 1), (2, 1)] {
        let critical = 2 * k + pbar;
        let below = kernel_dimension(pbar, k, critical - 1, 0)?;
        let at = kernel_dimension(pbar, k, critical, 0)?;
        let membership = membership_check(pbar, k, 0)?;
        println!(
            "({pbar},{k}): kernel dim {below} at n = {}, {at} at n = {critical}",
            critical - 1
        );
        println!(
            "  generators: {} distinct variants, span {}, predicted {}, \
             generate kernel: {}, cross-check: {}",
            membership.distinct_variants,
            membership.span_dimension,
            membership.predicted_dimension,
            membership.generates_kernel,
            membership.evaluation_cross_check
        );
    }
    Ok(())
}
