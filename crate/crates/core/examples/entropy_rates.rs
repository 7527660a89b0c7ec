//! Factorial-class entropy rates Z(L)/L of the reference processes at three
//! entropic indices, and growth classification of allowed-pattern counts.

use ordent::classes::{growth_points, rate_upper_bound};
use ordent::process::{reference_processes, ProcessKind, ProcessSpec};
use ordent::{classify_growth, entropy_rate, generate, ComplexityClass};

fn main() -> ordent::Result<()> {
    let lens = [3, 4, 5, 6, 7];
    let class = ComplexityClass::Factorial;
    for alpha in [0.5, 1.0, 1.5] {
        println!("alpha = {alpha}");
        for kind in reference_processes() {
            let est = entropy_rate(&ProcessSpec::new(kind.clone(), 25_000, 0), &class, alpha, &lens, 10, 0)?;
            let rates: Vec<String> = est.rates().iter().map(|r| format!("{r:.4}")).collect();
            println!("  {:<32} {}", kind.to_string(), rates.join(" "));
        }
    }
    let bounds: Vec<String> = lens
        .iter()
        .map(|&l| rate_upper_bound(l, &class).map(|b| format!("{b:.4}")))
        .collect::<ordent::Result<_>>()?;
    println!("upper bound                        {}", bounds.join(" "));

    for kind in [ProcessKind::WhiteNoise, ProcessKind::Logistic { a: 4.0, x0: 0.3 }] {
        let ts = generate(&ProcessSpec::new(kind.clone(), 200_000, 1))?;
        let fit = classify_growth(&growth_points(&ts, &[3, 4, 5, 6])?)?;
        println!("{kind}: {:?} (best model {:?})", fit.class, fit.best);
    }
    Ok(())
}
