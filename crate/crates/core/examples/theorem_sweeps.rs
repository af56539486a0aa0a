//! Ratio sweeps for the commutator bounds across two resolutions.
use morreylab::grid::Grid;
use morreylab::verify::{check_hypotheses, generate_corpus, verify_bound, BoundId, ParamSet};

fn main() -> morreylab::Result<()> {
    let corpus = generate_corpus(Grid::with(1, 2.0, 0.5, 8)?, 2024, 8)?;
    let sets = [
        (BoundId::Thm1, ParamSet::new(1, 0.25, 0.0, 2.0, 0.25, -0.2)?),
        (BoundId::Thm2, ParamSet::new(1, 0.2, 0.3, 1.5, 0.2, -0.1)?),
        (BoundId::Thm3, ParamSet::new(1, 0.2, 0.3, 1.5, 0.1, -0.1)?),
    ];
    for (id, ps) in sets {
        for h in check_hypotheses(&ps, id) {
            println!("  [{}] {} {}", if h.pass { "ok" } else { "FAIL" }, h.name, h.detail);
        }
        let r = verify_bound(id, &ps, &corpus, &[8, 9], 3)?;
        println!("{id}: {} -> {}, sup ratio {:.4}, drift {:?}", r.source.unwrap_or_default(), r.target.unwrap_or_default(), r.sup_ratio, r.drift);
    }
    let bad = ParamSet::new(1, 0.25, 0.0, 2.0, 0.6, -0.2)?;
    match verify_bound(BoundId::Thm1, &bad, &corpus, &[8, 9], 3) {
        Err(e) => println!("kappa=0.6 refused: {e}"),
        Ok(_) => println!("kappa=0.6 unexpectedly ran"),
    }
    Ok(())
}
