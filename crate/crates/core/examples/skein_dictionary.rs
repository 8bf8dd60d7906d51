//! Linking-number skein evaluation and the curve-to-Heisenberg dictionary.

use theta_tqft::heis::{mcg_on_heis, skein_curve_to_heis, HeisFin};
use theta_tqft::link::parse_link;
use theta_tqft::{CycloRing, SymplecticMatrix};

fn main() -> theta_tqft::Result<()> {
    let ring = CycloRing::new(4)?;
    let text = "# Whitehead-style diagram data\nX 0 1 +\nX 1 0 +\nX 0 0 -\n";
    let crossings = parse_link(text)?;
    let d = crossings.linking_matrix()?;
    println!("linking matrix {:?}", d.b);
    println!("skein value in S^3: {}", d.skein_value_s3(&ring));

    match parse_link("X 0 1 +") {
        Ok(_) => println!("unexpected: odd crossing count accepted"),
        Err(e) => println!("rejected: {e}"),
    }

    let curve = [1, 1];
    let u = skein_curve_to_heis(&curve, 0);
    println!("curve (1,1) ↦ {u:?} ↦ {:?}", u.to_finite(4));
    let t = SymplecticMatrix::t();
    let p = HeisFin::exp(4, vec![1], vec![0], 0);
    println!("T·exp(P) = {:?}, exp(P+Q) = {:?}", mcg_on_heis(&t, &p)?, HeisFin::exp(4, vec![1], vec![1], 0));
    Ok(())
}
