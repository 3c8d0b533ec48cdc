//! Metric jets on disk: exact JSON round trips.
//!
//! Jets serialize to a JSON document with one record per nonzero coefficient
//! (indices, monomial exponents, numerator and denominator as decimal
//! strings), so the round trip is bit-exact — curvature computed before and
//! after a save/load cycle is identical, not merely close.
//!
//! ```bash
//! cargo run -p curvident --example jet_io
//! ```

use curvident::metric::MetricJet;

fn main() -> curvident::Result<()> {
    let jet = MetricJet::random(3, (2, 1), 2, 9)?;
    let text = jet.to_json();
    println!("serialized jet ({} bytes):", text.len());
    for line in text.lines().take(12) {
        println!("  {line}");
    }
    println!("  ...");

    let back = MetricJet::from_json(&text)?;
    assert_eq!(back, jet);
    assert_eq!(back.to_json(), text);
    assert_eq!(back.riemann()?, jet.riemann()?);
    println!("round trip is bit-exact; curvature identical before and after");
    Ok(())
}
