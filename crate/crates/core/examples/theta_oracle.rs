//! Numerical theta functions checked against the closed-form operators.

use num_complex::Complex64;
use theta_tqft::theta_num::{bargmann_project, toeplitz_closed_form, ThetaGrid, ThetaParams};
use theta_tqft::verify::analytic_errors;

fn main() -> theta_tqft::Result<()> {
    let params = ThetaParams::torus(2, Complex64::new(0.5, 1.0))?;
    let grid = ThetaGrid::new(&params)?;
    for (p, q) in [(0, 1), (1, 0), (1, 1), (2, -1)] {
        let quad = grid.toeplitz(p, q, 0, p.rem_euclid(2))?;
        let closed = toeplitz_closed_form(&params, &[p], &[q], &[0], &[p.rem_euclid(2)]);
        println!("E_({p},{q}): quadrature {quad:.10}  closed form {closed:.10}");
    }
    let e = analytic_errors(&params)?;
    println!("worst errors: toeplitz {:.2e}, gram {:.2e}, weyl {:.2e}", e.toeplitz, e.gram, e.weyl);

    let b = bargmann_project(&ThetaParams::torus(2, Complex64::new(0.0, 1.0))?, 1)?;
    println!("Bargmann image of s_1: {:?}, off-diagonal mass {:.2e}", b.coeffs, b.off_mass);
    Ok(())
}
