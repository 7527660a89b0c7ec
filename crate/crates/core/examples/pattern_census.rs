//! Census of the full logistic map against white noise: allowed and missing
//! patterns, and the empirical transition matrix.

use ordent::process::{ProcessKind, ProcessSpec};
use ordent::{census, forbidden_patterns, generate, transition_matrix};

fn main() -> ordent::Result<()> {
    let t = 100_000;
    let logistic = generate(&ProcessSpec::new(ProcessKind::Logistic { a: 4.0, x0: 0.3 }, t, 0))?;
    let noise = generate(&ProcessSpec::new(ProcessKind::WhiteNoise, t, 0))?;

    for len in 3..=6 {
        let d_log = census(&logistic, len)?;
        let d_wn = census(&noise, len)?;
        println!(
            "L={len}: logistic {} allowed, white noise {} allowed (L! = {})",
            d_log.allowed_count(),
            d_wn.allowed_count(),
            ordent::ordinal::factorial(len)
        );
    }

    let d = census(&logistic, 3)?;
    for (code, count) in d.observed() {
        println!("  {}  {count}  {:.4}", code.pattern().dashed(), d.probability(code));
    }
    let missing: Vec<String> = forbidden_patterns(&d).iter().map(|c| c.pattern().dashed()).collect();
    println!("missing at L=3: {} (missing patterns are not necessarily forbidden)", missing.join(", "));

    let m = transition_matrix(&logistic, 3)?;
    println!("transitions out of each L=3 pattern:");
    for from in m.sources() {
        let row: Vec<String> = m
            .row(from)
            .iter()
            .map(|(to, p)| format!("{} {p:.3}", to.pattern().dashed()))
            .collect();
        println!("  {} -> {}", from.pattern().dashed(), row.join(", "));
    }
    Ok(())
}
