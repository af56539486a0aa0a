//! A seeded corpus, written to a temporary directory and read back.
use morreylab::grid::{Grid, GridFunction};
use morreylab::verify::{generate_corpus, SymbolClass};

fn main() -> morreylab::Result<()> {
    let corpus = generate_corpus(Grid::with(1, 2.0, 0.5, 9)?, 2024, 10)?;
    let dir = std::env::temp_dir().join("morreylab-corpus-example");
    std::fs::create_dir_all(&dir)?;
    for e in &corpus.inputs {
        let path = dir.join(format!("{}.csv", e.name));
        e.values.write_csv(&path)?;
        let back = GridFunction::read_csv(&path)?;
        println!("{:>8} in_margin={} hash {} roundtrip={}", e.name, e.in_margin, &e.values.content_hash()[..12], back == e.values);
    }
    for class in [SymbolClass::Bmo, SymbolClass::Lip] {
        let names: Vec<_> = corpus.symbols_for(class).into_iter().map(|s| s.name.clone()).collect();
        println!("{class:?} symbols: {names:?}");
    }
    let fine = corpus.resample(Grid::with(1, 2.0, 0.5, 10)?)?;
    println!("resampled to {} cells", fine.grid().len());
    Ok(())
}
