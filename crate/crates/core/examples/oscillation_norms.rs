//! Weighted BMO and Lipschitz-type norms, and the comparison of p-oscillation with 1-oscillation.
use morreylab::grid::{CubeFamily, Grid};
use morreylab::spaces::{lemma_d_check, oscillation_norm, OscillationParams};
use morreylab::weights::Weight;

fn main() -> morreylab::Result<()> {
    let grid = Grid::with(1, 2.0, 0.5, 10)?;
    let family = CubeFamily::new(grid, 3)?;
    let b = grid.sample(|x| x[0].abs().max(1e-3).ln())?;
    let w = Weight::power(-0.4);
    for p in [1.0, 2.0, 3.0] {
        let op = OscillationParams::bmo(p, w.clone())?;
        println!("BMO_(p={p}, w): {:.6}", oscillation_norm(&b, &op, &family)?.value);
    }
    let s = grid.sample(|x| x[0].abs().sqrt())?;
    for beta in [0.25, 0.5, 0.75] {
        let op = OscillationParams::lip(beta, 1.0)?;
        println!("Lip_{beta}: {:.6}", oscillation_norm(&s, &op, &family)?.value);
    }
    let op = OscillationParams::bmo(2.0, w)?;
    let d = lemma_d_check(&b, 2.0, &op, &family)?;
    println!("p-norm {:.5}, 1-norm {:.5}, ratio {:?}", d.p_norm, d.one_norm, d.ratio);
    Ok(())
}
