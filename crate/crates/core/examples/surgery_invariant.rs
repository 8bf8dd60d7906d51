//! The U(1) invariant of a few 3-manifolds given by surgery.

use theta_tqft::rt::{omega_eval_fast, signature, z_invariant};
use theta_tqft::{CycloRing, FramedLinkData};

fn main() -> theta_tqft::Result<()> {
    let examples = [
        ("S^3 (empty)", FramedLinkData::empty()),
        ("S^3 (+1 unknot)", FramedLinkData::unknot(1)),
        ("S^1 x S^2", FramedLinkData::unknot(0)),
        ("lens space L(4,1)", FramedLinkData::unknot(4)),
        ("Hopf link, framings 0", FramedLinkData::new(vec![vec![0, 1], vec![1, 0]])?),
        ("Hopf link, framings 2, -3", FramedLinkData::new(vec![vec![2, 1], vec![1, -3]])?),
    ];
    for n in [2, 4] {
        let ring = CycloRing::new(n)?;
        println!("N = {n}");
        for (name, d) in &examples {
            let z = z_invariant(d, &ring);
            println!(
                "  {name:28} sign {:2}  Omega {}  Z {} ≈ {:.6}",
                signature(&d.b),
                omega_eval_fast(d, &ring),
                z,
                z.to_complex()
            );
        }
    }
    Ok(())
}
