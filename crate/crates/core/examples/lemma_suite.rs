//! Every auxiliary bound at its default parameters.
use morreylab::grid::Grid;
use morreylab::verify::{generate_corpus, verify_bound, BoundId, ParamSet};

fn main() -> morreylab::Result<()> {
    let corpus = generate_corpus(Grid::with(1, 2.0, 0.5, 8)?, 7, 8)?;
    let thm1 = ParamSet::new(1, 0.25, 0.0, 2.0, 0.25, -0.2)?;
    let thm2 = ParamSet::new(1, 0.2, 0.3, 1.5, 0.2, -0.1)?;
    let thm3 = thm2.with_kappa(0.1);
    for id in BoundId::ALL.into_iter().filter(|id| !id.is_commutator()) {
        let ps = match id {
            BoundId::L41 | BoundId::L42 | BoundId::L43 => &thm2,
            BoundId::L51 => &thm3,
            _ => &thm1,
        };
        let r = verify_bound(id, ps, &corpus, &[8, 9], 3)?;
        let drift = r.drift.map_or("n/a".into(), |d| format!("{:.3}%", 100.0 * d));
        println!("{:>5} {:<24} sup {:.4} drift {drift}", id.name(), r.operator, r.sup_ratio);
    }
    Ok(())
}
