//! Exact Gauss sums in the cyclotomic field.
//!
//! Prints `N^{-1/2} Σ_j ζ_{2N}^{j²}` for even `N` up to 20; each equals `ζ_8`.

use theta_tqft::cyclo::normalized_gauss_sum;
use theta_tqft::CycloRing;

fn main() -> theta_tqft::Result<()> {
    for n in (2..=20).step_by(2) {
        let ring = CycloRing::new(n)?;
        let g = normalized_gauss_sum(&ring);
        let z = g.to_complex();
        println!(
            "N = {n:2}: {g}  ≈ {:.6}{:+.6}i  equals zeta_8: {}",
            z.re,
            z.im,
            g == ring.zeta8_pow(1)
        );
    }
    Ok(())
}
