//! Pointwise sharp-function majorants for the commutator.
use morreylab::grid::Grid;
use morreylab::verify::{generate_corpus, verify_prop, ParamSet, PropId};

fn main() -> morreylab::Result<()> {
    let corpus = generate_corpus(Grid::with(1, 2.0, 0.5, 8)?, 2024, 6)?;
    let ps = ParamSet::new(1, 0.2, 0.3, 1.5, 0.2, -0.1)?.with_r(1.2);
    for prop in [PropId::P37, PropId::P44, PropId::P52] {
        let r = verify_prop(prop, &ps, &corpus, &[8, 9], 3)?;
        let violations = r.ratios.iter().filter(|e| e.value == Some(f64::INFINITY)).count();
        println!("{prop}: sup ratio {:.5}, drift {:?}, {violations} violations", r.sup_ratio, r.drift);
    }
    Ok(())
}
