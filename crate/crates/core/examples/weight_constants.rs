//! Numeric A_p, A_{p,q} and RH_r constants of power weights next to exact membership.
use morreylab::grid::{CubeFamily, Grid};
use morreylab::weights::{class_constant, doubling_check, numeric_finiteness, power_membership, Weight, WeightClass};

fn main() -> morreylab::Result<()> {
    let grid = Grid::with(1, 1.0, 0.25, 11)?;
    let family = CubeFamily::new(grid, 3)?;
    let classes = [WeightClass::a1(), WeightClass::Ap { p: 2.0 }, WeightClass::Apq { p: 1.5, q: 3.0 }, WeightClass::Rh { r: 2.0 }];
    for gamma in [-0.6, -0.3, 0.0, 0.5] {
        let w = Weight::power(gamma);
        for class in classes {
            let member = power_membership(1, w.as_power().unwrap(), class)?;
            let verdict = numeric_finiteness(&w, class, &grid, 3)?;
            let constant = match class_constant(&w, class, &family) {
                Ok(r) => format!("{:.4}", r.constant),
                Err(e) => e.to_string(),
            };
            println!("gamma={gamma:>5} {:>10}: member={member:<5} finite={:<5} constant {constant}", class.label(), verdict.finite);
        }
    }
    let d = doubling_check(&Weight::power(-0.5), 2.0, 2.0, &family)?;
    println!("doubling, lambda=2: sup w(2Q)/w(Q) = {:.4} over {} cubes", d.sup_ratio, d.eligible);
    Ok(())
}
