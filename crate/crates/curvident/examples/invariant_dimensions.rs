//! Dimensions of orthogonal-invariant spaces from exact Gram ranks.
//!
//! Invariant multilinear forms on `m` arguments are spanned by the perfect
//! matchings; pairing them over an orthonormal frame gives a Gram matrix with
//! entries `n^cycles` whose exact rational rank is the dimension of the
//! invariant space. At `m <= 2n` the matchings are independent, so the
//! dimension is `(m-1)!!`; in lower dimensions the rank drops, and it
//! stabilizes under dimensional reduction from `n = m - 1` on.
//!
//! ```bash
//! cargo run -p curvident --example invariant_dimensions
//! ```

use curvident::invariant::{dim_invariants, reduction_check};

fn main() -> curvident::Result<()> {
    println!("m \\ n |  1    2    3    4    5    6    7    8");
    for m in [2usize, 4, 6, 8] {
        let dims: Vec<String> = (1..=8)
            .map(|n| Ok(format!("{:>3}", dim_invariants(m, n)?)))
            .collect::<curvident::Result<_>>()?;
        println!("{m:>5} | {}", dims.join("  "));
    }

    for m in [2usize, 4, 6, 8] {
        let report = reduction_check(m, 8)?;
        assert!(report.ok());
        println!(
            "m = {m}: nondecreasing, stable from n = {} (dims {:?})",
            (m - 1).max(1),
            report.dims
        );
    }
    Ok(())
}
