//! The vanishing dichotomy for the Lovelock-type contractions.
//!
//! For each family `(pbar, k)`, the total contraction of `k` curvature
//! factors against a generalized Kronecker delta vanishes for every metric in
//! dimensions below `2k + pbar`, and a random metric witnesses nonvanishing
//! at the critical dimension. Both halves are checked exactly on seeded
//! random jets, in a Riemannian and a Lorentzian signature.
//!
//! ```bash
//! cargo run -p curvident --example vanishing_dichotomy
//! ```

use curvident::identities::{verify_vanishing, IdentityJob};

fn main() -> curvident::Result<()> {
    for (pbar, k) in [(0usize, 1usize), (0, 2), (1, 1), (1, 2), (2, 1)] {
        let critical = 2 * k + pbar;
        for dim in [critical - 1, critical] {
            for signature in [(dim, 0), (dim - 1, 1)] {
                let job = IdentityJob::new(pbar, k, dim, signature, 10, 0)?;
                let report = verify_vanishing(&job)?;
                println!(
                    "({pbar},{k}) dim {dim} sig {signature:?}: {}",
                    report.verdict
                );
                assert_eq!(report.identity_holds(), dim < critical);
            }
        }
    }
    Ok(())
}
