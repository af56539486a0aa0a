//! Weighted Morrey norms and the cube that attains them.
use morreylab::grid::{CubeFamily, Grid};
use morreylab::spaces::{morrey_norm, MorreyParams, SpaceSpec};
use morreylab::weights::Weight;

fn main() -> morreylab::Result<()> {
    let grid = Grid::with(1, 2.0, 0.5, 10)?;
    let family = CubeFamily::new(grid, 3)?;
    let f = grid.sample(|x| if x[0].abs() <= 0.5 { 1.0 } else { 0.0 })?;
    for kappa in [0.1, 0.25, 0.5, 0.75] {
        let mp = MorreyParams::one_weight(2.0, kappa, Weight::power(-0.3))?;
        let r = morrey_norm(&f, &mp, &family)?;
        println!("kappa={kappa}: {:.6} on cube centered {:.4} side {}", r.value, r.cube.center[0], r.cube.side);
    }
    let spec: SpaceSpec = "morrey:p=1.5,kappa=0.3,u=power:x0=0,gamma=-0.2,v=power:x0=0,gamma=0.1".parse()?;
    let r = spec.load()?.norm(&f, &family)?;
    println!("{spec}: {:.6}", r.value);
    Ok(())
}
