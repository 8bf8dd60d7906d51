//! The Schrödinger representation of the finite Heisenberg group.

use theta_tqft::heis::{commutant_dim, operator_basis_rank, schrodinger_matrix, weyl_product_phase, HeisFin};
use theta_tqft::CycloRing;

fn main() -> theta_tqft::Result<()> {
    let ring = CycloRing::new(4)?;
    let p = HeisFin::exp(4, vec![1], vec![0], 0);
    let q = HeisFin::exp(4, vec![0], vec![1], 0);
    println!("rho(exp P) =\n{:?}", schrodinger_matrix(&ring, &p));
    println!("rho(exp Q) =\n{:?}", schrodinger_matrix(&ring, &q));

    let pq = schrodinger_matrix(&ring, &p).mul(&schrodinger_matrix(&ring, &q))?;
    let qp = schrodinger_matrix(&ring, &q).mul(&schrodinger_matrix(&ring, &p))?;
    println!("PQ = t^2 QP: {}", pq == qp.scale(&ring.t_pow(2)));
    println!("Op(1,0) Op(0,1) = t^w Op(1,1) with w = {:?}", weyl_product_phase(&ring, &[1], &[0], &[0], &[1]));

    for (n, g) in [(2, 1), (4, 1), (6, 1), (2, 2)] {
        let r = CycloRing::new(n)?;
        println!(
            "N = {n}, g = {g}: operator basis rank {}, commutant dimension {}",
            operator_basis_rank(&r, g),
            commutant_dim(&r, g)
        );
    }
    Ok(())
}
