//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use theta_tqft::cyclo::normalized_gauss_sum;
use theta_tqft::dft::{
    cocycle_scalar, dft_matrix, egorov_check, rho_averaging, twist_transform, MCGWord,
};
use theta_tqft::heis::{commutant_dim, operator_basis_rank, schrodinger_matrix, HeisFin};
use theta_tqft::link::{parse_link, random_kirby_walk_with};
use theta_tqft::rt::{omega_eval, signature, z_invariant};
use theta_tqft::theta_num::{bargmann_project, ThetaParams};
use theta_tqft::verify::{analytic_errors, random_linking, random_torus_word, AnalyticErrors, GENUS2_CURVES};
use theta_tqft::{CycloMatrix, CycloRing, Error, FramedLinkData, Result, SymplecticMatrix};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn gauss_sums() -> Result<Outcome> {
    for n in (2..=20).step_by(2) {
        let ring = CycloRing::new(n)?;
        let exact = normalized_gauss_sum(&ring);
        let float: Complex64 = (0..n)
            .map(|j| Complex64::from_polar(1.0, std::f64::consts::PI * (j * j) as f64 / n as f64))
            .sum::<Complex64>()
            / (n as f64).sqrt();
        let z8 = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        if exact != ring.zeta8_pow(1) || (float - z8).norm() > 1e-12 {
            return outcome(false, format!("N = {n}: {exact}"));
        }
    }
    outcome(true, "N = 2..20 even")
}

fn unknots() -> Result<Outcome> {
    for n in [2, 4, 6] {
        let ring = CycloRing::new(n)?;
        let prod = &omega_eval(&FramedLinkData::unknot(1), &ring) * &omega_eval(&FramedLinkData::unknot(-1), &ring);
        let zp = z_invariant(&FramedLinkData::unknot(1), &ring);
        let zm = z_invariant(&FramedLinkData::unknot(-1), &ring);
        if !prod.is_one() || !zp.is_one() || !zm.is_one() {
            return outcome(false, format!("N = {n}: {prod}, {zp}, {zm}"));
        }
    }
    outcome(true, "N = 2, 4, 6")
}

fn kirby_walks() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rings = [CycloRing::new(2)?, CycloRing::new(4)?, CycloRing::new(6)?];
    let mut moves = 0;
    for walk in 0..500 {
        let ring = &rings[walk % 3];
        let d = random_linking(&mut rng, 6, 3);
        let (end, mv) = random_kirby_walk_with(&d, 12, rng.gen(), 6);
        moves += mv.len();
        if end.n > 6 || z_invariant(&end, ring) != z_invariant(&d, ring) {
            return outcome(false, format!("walk {walk} from {:?} to {:?}", d.b, end.b));
        }
    }
    outcome(true, format!("500 walks, {moves} moves"))
}

fn hermitian_multiplicative() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let ring = CycloRing::new([2, 4, 6][i % 3])?;
        let a = random_linking(&mut rng, 3, 3);
        let b = random_linking(&mut rng, 3, 3);
        let za = z_invariant(&a, &ring);
        let zb = z_invariant(&b, &ring);
        let sum = a.connected_sum(&b);
        if z_invariant(&a.mirror(), &ring) != za.conj()
            || z_invariant(&sum, &ring) != &za * &zb
            || signature(&sum.b) != signature(&a.b) + signature(&b.b)
        {
            return outcome(false, format!("{:?}, {:?}", a.b, b.b));
        }
    }
    outcome(true, "100 instances")
}

fn all_elements(n: u32, g: usize) -> Vec<HeisFin> {
    let side = n as usize;
    let count = side.pow(2 * g as u32) * 2 * side;
    (0..count)
        .map(|mut i| {
            let k = (i % (2 * side)) as i64;
            i /= 2 * side;
            let mut v = Vec::with_capacity(2 * g);
            for _ in 0..2 * g {
                v.push((i % side) as i64);
                i /= side;
            }
            HeisFin::new(n, v[..g].to_vec(), v[g..].to_vec(), k)
        })
        .collect()
}

fn schrodinger() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (g, n) in [(1usize, 2u32), (1, 4), (1, 6), (2, 2)] {
        let ring = CycloRing::new(n as i64)?;
        let elems = all_elements(n, g);
        let mats: Vec<CycloMatrix> = elems.iter().map(|u| schrodinger_matrix(&ring, u)).collect();
        if !mats.iter().all(CycloMatrix::is_unitary) {
            return outcome(false, format!("(g, N) = ({g}, {n}): not unitary"));
        }
        for _ in 0..200 {
            let (i, j) = (rng.gen_range(0..elems.len()), rng.gen_range(0..elems.len()));
            if mats[i].mul(&mats[j])? != schrodinger_matrix(&ring, &elems[i].mul(&elems[j])) {
                return outcome(false, format!("(g, N) = ({g}, {n}): {:?} {:?}", elems[i], elems[j]));
            }
        }
        let dim = (n as usize).pow(g as u32);
        let rank = operator_basis_rank(&ring, g);
        let comm = commutant_dim(&ring, g);
        if rank != dim * dim || comm != 1 {
            return outcome(false, format!("(g, N) = ({g}, {n}): rank {rank}, commutant {comm}"));
        }
    }
    outcome(true, "(1,2) (1,4) (1,6) (2,2)")
}

fn analytic_runs() -> Result<Vec<(String, AnalyticErrors)>> {
    let mut out = Vec::new();
    for n in [2, 4] {
        for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.5, 1.0)] {
            out.push((format!("N={n} tau={tau}"), analytic_errors(&ThetaParams::torus(n, tau)?)?));
        }
    }
    Ok(out)
}

fn analytic_oracle() -> Result<Outcome> {
    let runs = analytic_runs()?;
    let worst_t = runs.iter().map(|r| r.1.toeplitz).fold(0.0, f64::max);
    let worst_g = runs.iter().map(|r| r.1.gram).fold(0.0, f64::max);
    outcome(
        worst_t < 1e-6 && worst_g < 1e-6,
        format!("toeplitz rel err {worst_t:.2e}, gram err {worst_g:.2e}"),
    )
}

fn weyl_bridge() -> Result<Outcome> {
    let runs = analytic_runs()?;
    let worst = runs.iter().map(|r| r.1.weyl).fold(0.0, f64::max);
    outcome(worst < 1e-8, format!("max entry err {worst:.2e}"))
}

fn egorov_exact() -> Result<Outcome> {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [2, 4, 6] {
        let ring = CycloRing::new(n)?;
        for c in [[1, 0], [0, 1], [1, 1], [1, -1]] {
            for eps in [1, -1] {
                let h = SymplecticMatrix::dehn_twist(&c, eps)?;
                if !egorov_check(&ring, &h, &twist_transform(&ring, &c, eps))?.holds {
                    return outcome(false, format!("twist {c:?}^{eps} at N = {n}"));
                }
                checked += 1;
            }
        }
        for _ in 0..10 {
            let w = random_torus_word(&mut rng, 6);
            let h = MCGWord::parse(&w, 1)?.matrix()?;
            if !egorov_check(&ring, &h, &rho_averaging(&ring, &h)?)?.holds {
                return outcome(false, format!("averaging {w:?} at N = {n}"));
            }
            checked += 1;
        }
    }
    let ring = CycloRing::new(2)?;
    for c in GENUS2_CURVES {
        for eps in [1, -1] {
            let h = SymplecticMatrix::dehn_twist(&c, eps)?;
            if !egorov_check(&ring, &h, &rho_averaging(&ring, &h)?)?.holds {
                return outcome(false, format!("genus 2 averaging {c:?}^{eps}"));
            }
            checked += 1;
        }
    }
    let w = MCGWord::parse("+(1,0,0,0) -(0,0,1,1) +(1,-1,0,0) +(0,0,0,1)", 2)?;
    let h = w.matrix()?;
    if !egorov_check(&ring, &h, &rho_averaging(&ring, &h)?)?.holds {
        return outcome(false, "genus 2 averaging word");
    }
    outcome(true, format!("{} transforms", checked + 1))
}

fn s_map() -> Result<Outcome> {
    for n in [2, 4, 6, 8] {
        let ring = CycloRing::new(n)?;
        let m = rho_averaging(&ring, &SymplecticMatrix::s())?;
        // (1/N) e^{-2πi jk/N}
        let reference = CycloMatrix::from_fn(&ring, n as usize, n as usize, |j, k| {
            &ring.t_pow(-2 * (j * k) as i64) * &ring.ratio(1, n)
        });
        let c = m.ratio_to(&reference);
        let d = m.ratio_to(&dft_matrix(&ring));
        if c.as_ref().is_none_or(|c| !c.is_one()) || d != Some(ring.level_pow_half(-1)) {
            return outcome(false, format!("N = {n}: ratio {c:?}, to unitary DFT {d:?}"));
        }
    }
    outcome(true, "ratio 1 to (1/N)e^{-2 pi i jk/N}, N = 2..8")
}

fn cocycle() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut nonzero = 0;
    for n in [2, 4, 6] {
        let ring = CycloRing::new(n)?;
        for _ in 0..50 {
            let (a, b) = (random_torus_word(&mut rng, 6), random_torus_word(&mut rng, 6));
            let r = cocycle_scalar(&ring, &MCGWord::parse(&a, 1)?.matrix()?, &MCGWord::parse(&b, 1)?.matrix()?)?;
            if !r.matches() {
                return outcome(false, format!("N = {n}, h = {a:?}, h' = {b:?}: {} vs tau = {}", r.lambda, r.tau));
            }
            nonzero += usize::from(r.tau != 0);
        }
    }
    outcome(true, format!("50 pairs at N = 2, 4, 6; {nonzero} with tau != 0"))
}

fn bargmann() -> Result<Outcome> {
    let params = ThetaParams::torus(2, Complex64::new(0.0, 1.0))?;
    let mut worst: f64 = 0.0;
    for mu in 0..2 {
        worst = worst.max(bargmann_project(&params, mu)?.off_mass);
    }
    outcome(worst < 1e-5, format!("off-mu mass {worst:.2e}"))
}

fn negative_controls() -> Result<Outcome> {
    let ring = CycloRing::new(2)?;
    let wrong = egorov_check(&ring, &SymplecticMatrix::t(), &twist_transform(&ring, &[0, 1], -1))?;
    let witness_ok = !wrong.holds && wrong.witness == Some(HeisFin::exp(2, vec![1], vec![0], 0));
    let parse_ok = matches!(parse_link("X 0 1 +"), Err(Error::Parity(0, 1)));
    let zero = z_invariant(&FramedLinkData::unknot(0), &ring);
    let differ_ok = zero != z_invariant(&FramedLinkData::empty(), &ring) && zero == ring.level_pow_half(1);
    outcome(
        witness_ok && parse_ok && differ_ok,
        format!("wrong sign witness {witness_ok}, odd crossing rejected {parse_ok}, [[0]] vs empty differ {differ_ok}"),
    )
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("gauss sum equals zeta_8", secs(1), gauss_sums),
        ("unknot values", secs(1), unknots),
        ("kirby invariance", secs(60), kirby_walks),
        ("hermiticity and multiplicativity", secs(10), hermitian_multiplicative),
        ("schrodinger representation", secs(30), schrodinger),
        ("toeplitz closed form vs quadrature", secs(120), analytic_oracle),
        ("weyl bridge", secs(30), weyl_bridge),
        ("exact egorov identity", secs(30), egorov_exact),
        ("torus S is the DFT", secs(5), s_map),
        ("cocycle equals zeta_8^-tau", secs(60), cocycle),
        ("bargmann proportionality", secs(60), bargmann),
        ("negative controls", secs(60), negative_controls),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= *limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!passed);
        println!(
            "{:>2} {} {name} [{:.2}s / {}s] {detail}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
