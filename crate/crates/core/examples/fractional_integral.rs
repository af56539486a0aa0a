//! Fractional integral of an indicator on [-1,1]^n, compared with closed forms.
use morreylab::grid::Grid;
use morreylab::operators::{fractional_integral, fractional_integral_at, FracIntConfig};

fn main() -> morreylab::Result<()> {
    let grid = Grid::with(1, 2.0, 0.5, 10)?;
    let f = grid.sample(|x| if x[0].abs() <= 1.0 { 1.0 } else { 0.0 })?;
    for alpha in [0.25, 0.5, 0.75] {
        let cfg = FracIntConfig::new(1, alpha)?;
        let at0 = fractional_integral_at(&f, &cfg, [0.0, 0.0])?;
        let exact = cfg.constant() * 2.0 * 1f64.powf(alpha) / alpha;
        println!("alpha={alpha}: c={:.6} I(0)={at0:.6} closed form {exact:.6}", cfg.constant());
    }
    let g = fractional_integral(&f, &FracIntConfig::new(1, 0.5)?)?;
    let (_, _, max, cell) = g.extrema();
    println!("max I_0.5 f = {max:.6} at x = {:.4}", grid.center(cell)[0]);

    let grid2 = Grid::with(2, 2.0, 0.5, 6)?;
    let f2 = grid2.sample(|x| if x[0].abs() <= 1.0 && x[1].abs() <= 1.0 { 1.0 } else { 0.0 })?;
    let cfg = FracIntConfig::new(2, 1.0)?;
    let v = fractional_integral_at(&f2, &cfg, [0.0, 0.0])?;
    println!("2D, alpha=1: I(0)={v:.6} closed form {:.6}", cfg.constant() * 8.0 * 1f64.asinh());
    Ok(())
}
