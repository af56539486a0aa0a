//! Equivalence tables for power weights, each side decided independently.
use morreylab::weights::{eq4_check, lemma_c_check};

fn main() -> morreylab::Result<()> {
    let gammas: Vec<f64> = (-12..=12).map(|k| k as f64 * 0.1).collect();
    let rows = lemma_c_check(1, &gammas, 2.0, 2.0)?;
    let agree = rows.iter().filter(|r| r.agree()).count();
    println!("w^s in A_p vs A_(1+(p-1)/s) and RH_s: {agree}/{} agree", rows.len());
    for r in rows.iter().filter(|r| r.lhs) {
        print!("{:.1} ", r.gamma);
    }
    println!();
    let rows = eq4_check(2, &gammas, 1.5, 3.0)?;
    let agree = rows.iter().filter(|r| r.agree()).count();
    println!("A_(p,q) vs w^q in A_(1+q/p'): {agree}/{} agree", rows.len());
    Ok(())
}
