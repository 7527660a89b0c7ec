//! Generate each supported process, print summary statistics, and round-trip
//! a series through the CSV and binary formats.

use ordent::process::{load_series, reference_processes, save_binary, save_csv, ProcessKind, ProcessSpec};
use ordent::generate;

fn main() -> ordent::Result<()> {
    let mut kinds = reference_processes();
    kinds.push(ProcessKind::Logistic { a: 4.0, x0: 0.3 });
    kinds.push("noisy-logistic:a-lo=3.83:a-hi=3.84".parse()?);
    for kind in kinds {
        let ts = generate(&ProcessSpec::new(kind.clone(), 10_000, 42))?;
        let x = ts.samples();
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let (lo, hi) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        println!("{:<42} mean {mean:>9.4}  min {lo:>9.4}  max {hi:>9.4}", kind.to_string());
    }

    let spec = ProcessSpec::new("fbm:hurst=0.2".parse()?, 1000, 7);
    let ts = generate(&spec)?;
    let dir = std::env::temp_dir();
    let (csv, bin) = (dir.join("ordent_example.csv"), dir.join("ordent_example.bin"));
    save_csv(&ts, &csv)?;
    save_binary(&ts, &bin)?;
    assert_eq!(load_series(&csv)?.samples(), ts.samples());
    assert_eq!(load_series(&bin)?.samples(), ts.samples());
    println!("round-tripped {} samples through {} and {}", ts.len(), csv.display(), bin.display());
    Ok(())
}
