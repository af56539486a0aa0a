//! Every maximal variant applied to one input.
use morreylab::grid::{CubeFamily, Grid};
use morreylab::operators::{maximal, MaximalConfig};
use morreylab::weights::Weight;

fn main() -> morreylab::Result<()> {
    let grid = Grid::with(1, 2.0, 0.5, 9)?;
    let family = CubeFamily::new(grid, 3)?;
    let f = grid.sample(|x| (3.0 * x[0]).sin() * (-x[0] * x[0]).exp())?;
    let w = Weight::power(-0.3);
    let configs = [
        MaximalConfig::plain(),
        MaximalConfig::fractional(0.3, 1.5),
        MaximalConfig::weighted(w.clone()),
        MaximalConfig::fractional_weighted(0.3, 1.5, w),
        MaximalConfig::delta(0.5),
        MaximalConfig::sharp_delta(0.5),
    ];
    println!("{} cubes in the family", family.len());
    for cfg in configs {
        let m = maximal(&f, &cfg, &family)?;
        let (min, _, max, _) = m.extrema();
        println!("{:>7}: min {min:.5} max {max:.5}", cfg.variant.cli_name());
    }
    Ok(())
}
