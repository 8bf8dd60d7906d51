//! Discrete Fourier transforms on the torus: twist products and averaging.

use theta_tqft::dft::{dft_matrix, egorov_check, rho_averaging, rho_word, MCGWord};
use theta_tqft::CycloRing;

fn main() -> theta_tqft::Result<()> {
    let ring = CycloRing::new(4)?;
    for word in ["T", "S", "S T T s"] {
        let w = MCGWord::parse(word, 1)?;
        let h = w.matrix()?;
        let t = rho_word(&ring, &w)?;
        let avg = rho_averaging(&ring, &h)?;
        println!("word {word:?}: h = {:?}, framing {}", h.rows(), t.framing);
        println!("  unitary {}", t.normalized().is_unitary());
        println!("  Egorov (twists) {}", egorov_check(&ring, &h, &t.matrix)?.holds);
        println!("  Egorov (averaging) {}", egorov_check(&ring, &h, &avg)?.holds);
        println!("  averaging / twists = {:?}", avg.ratio_to(&t.matrix));
    }
    let s = rho_averaging(&ring, &MCGWord::parse("S", 1)?.matrix()?)?;
    println!("sqrt(N) * rho(S) = DFT: {}", s.scale(&ring.level_pow_half(1)) == dft_matrix(&ring));
    println!("{:?}", dft_matrix(&ring));
    Ok(())
}
