//! Derived proportionality constants.
//!
//! Nothing about normalization conventions is assumed: the constants tying
//! the contraction family to classical tensors are computed from a designated
//! jet and then asserted constant across further random jets.
//!
//! * `(pbar, k) = (0, 1)`: a multiple of the scalar curvature;
//! * `(pbar, k) = (1, 1)` in dimension >= 3: a multiple of the Einstein tensor.
//!
//! ```bash
//! cargo run -p curvident --example lovelock_constants
//! ```

use curvident::identities::{verify_vanishing, IdentityJob};

fn main() -> curvident::Result<()> {
    let scalar_job = IdentityJob::new(0, 1, 2, (2, 0), 20, 0)?;
    let scalar = verify_vanishing(&scalar_job)?;
    println!(
        "contraction (0,1) vs scalar curvature: constant {}",
        scalar.constants["lovelock_over_scalar_curvature"]
    );

    let einstein_job = IdentityJob::new(1, 1, 3, (3, 0), 20, 0)?;
    let einstein = verify_vanishing(&einstein_job)?;
    println!(
        "contraction (1,1) vs Einstein tensor: constant {}",
        einstein.constants["lovelock_over_einstein"]
    );

    // The same constants hold in the Lorentzian signature.
    let lorentz = verify_vanishing(&IdentityJob::new(1, 1, 3, (2, 1), 20, 0)?)?;
    println!(
        "contraction (1,1), signature (2,1): constant {}",
        lorentz.constants["lovelock_over_einstein"]
    );
    Ok(())
}
