//! The commutator [b, I_alpha] for a few symbols.
use morreylab::grid::Grid;
use morreylab::operators::{commutator, fractional_integral, FracIntConfig};

fn main() -> morreylab::Result<()> {
    let grid = Grid::with(1, 2.0, 0.5, 9)?;
    let cfg = FracIntConfig::new(1, 0.3)?;
    let f = grid.sample(|x| (-4.0 * x[0] * x[0]).exp())?;
    let symbols: [(&str, fn(f64) -> f64); 3] = [
        ("constant", |_| 2.0),
        ("linear", |x| x),
        ("log", |x| x.abs().max(1e-3).ln()),
    ];
    for (name, b) in symbols {
        let bf = grid.sample(|x| b(x[0]))?;
        let c = commutator(&bf, &f, &cfg)?;
        let direct = bf.zip_with(&fractional_integral(&f, &cfg)?, |b, i| b * i)?.add(
            &fractional_integral(&bf.zip_with(&f, |b, f| b * f)?, &cfg)?.scale(-1.0),
        )?;
        let gap = c.zip_with(&direct, |a, b| (a - b).abs())?.max_abs();
        println!("{name:>8}: sup|[b,I]f| = {:.6}, gap to b*I f - I(b f) = {gap:.2e}", c.max_abs());
    }
    Ok(())
}
