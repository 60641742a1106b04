//! Sharpening the Schmidt spectrum at the middle bond lowers the cut
//! entropy and raises the energy.

use enttemp::models::heisenberg_af;
use enttemp::tradeoff::{find_ground, sharpen, GroundSearch};

fn main() -> enttemp::Result<()> {
    let h = heisenberg_af(10)?;
    let (ground, e0) = find_ground(&h, &GroundSearch::default())?;
    let bond = h.ab_cut();
    let s0 = ground.entropy_bits(bond)?;
    println!("ground: S = {s0:.5} bits, E = {e0:.8}");
    for eps in [0.01, 0.05, 0.1, 0.5, 1.0, 3.0] {
        let sharp = sharpen(&ground, bond, eps)?;
        let ds = s0 - sharp.entropy_bits(bond)?;
        let de = sharp.energy(&h)? - e0;
        println!("ε = {eps:<5} ΔS = {ds:.5}  ΔE = {de:.6}  T = {:.5}", de / ds);
    }
    Ok(())
}
