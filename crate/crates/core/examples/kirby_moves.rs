//! Random Kirby moves leave the invariant unchanged.

use theta_tqft::link::random_kirby_walk_with;
use theta_tqft::rt::z_invariant;
use theta_tqft::{CycloRing, FramedLinkData};

fn main() -> theta_tqft::Result<()> {
    let ring = CycloRing::new(4)?;
    let start = FramedLinkData::new(vec![vec![1, 2], vec![2, -1]])?;
    let z0 = z_invariant(&start, &ring);
    println!("start {:?}: Z = {z0}", start.b);
    for seed in 0..5 {
        let (end, moves) = random_kirby_walk_with(&start, 8, seed, 5);
        let z = z_invariant(&end, &ring);
        println!("seed {seed}: {} moves, end {:?}, unchanged: {}", moves.len(), end.b, z == z0);
    }
    let a = start.kirby_slide(0, 1, 1)?;
    println!("slide 0 over 1: {:?}", a.b);
    let s = a.stabilize(-1)?;
    println!("stabilize by -1: {:?}", s.b);
    Ok(())
}
