//! Ordinal patterns of a few windows, their Lehmer codes, and sliding extraction.

use ordent::{decode, encode, extract_patterns, pattern_of, OrdinalPattern, PatternCode, TimeSeries};

fn main() -> ordent::Result<()> {
    let p = pattern_of(&[0.3, -0.5, 1.2, 0.7])?;
    let code = encode(&p);
    println!("(0.3, -0.5, 1.2, 0.7) -> {p}, code {}", code.code());
    assert_eq!(decode(code), p);

    // ties: the earlier sample counts as smaller
    println!("(1, 1, 0) -> {}", pattern_of(&[1.0, 1.0, 0.0])?);

    println!("all patterns of length 3 in code order:");
    for c in 0..6 {
        let p = PatternCode::new(c, 3)?.pattern();
        println!("  {c}: {p}  {}", p.dashed());
    }

    let ts = TimeSeries::new(vec![4.0, 7.0, 9.0, 10.0, 6.0, 11.0, 3.0])?;
    let codes = extract_patterns(&ts, 3, 1)?;
    let shown: Vec<String> = codes.iter().map(|c| c.pattern().dashed()).collect();
    println!("sliding L=3 patterns: {}", shown.join(" "));

    let id = OrdinalPattern::identity(5)?;
    println!("identity of length 5 has code {}", encode(&id).code());
    Ok(())
}
