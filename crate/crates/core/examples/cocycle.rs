//! The composition cocycle of normalized transforms and the Maslov index.

use theta_tqft::dft::{cocycle_scalar, maslov_index, MCGWord};
use theta_tqft::{CycloRing, Lagrangian};

fn main() -> theta_tqft::Result<()> {
    let ring = CycloRing::new(2)?;
    let words = ["S", "s", "T", "t", "S T", "T S", "t S t", "S S"];
    for a in words {
        for b in words {
            let h = MCGWord::parse(a, 1)?.matrix()?;
            let h2 = MCGWord::parse(b, 1)?.matrix()?;
            let r = cocycle_scalar(&ring, &h, &h2)?;
            if r.tau != 0 || a == b {
                println!(
                    "h = {a:6} h' = {b:6} lambda = {:12} tau = {:2}  lambda = zeta_8^-tau: {}",
                    r.lambda.to_string(),
                    r.tau,
                    r.matches()
                );
            }
        }
    }
    let l1 = Lagrangian::new(vec![vec![1, 0]])?;
    let l2 = Lagrangian::new(vec![vec![1, 1]])?;
    let l3 = Lagrangian::new(vec![vec![0, 1]])?;
    println!("tau(e1, e1+e2, e2) = {}", maslov_index(&l1, &l2, &l3)?);
    println!("tau(e2, e1+e2, e1) = {}", maslov_index(&l3, &l2, &l1)?);
    Ok(())
}
