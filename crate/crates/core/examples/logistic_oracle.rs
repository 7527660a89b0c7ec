//! Exact ordinal partition of the full logistic map, arcsine measures, and
//! transition probabilities checked against a long orbit.

use ordent::logistic::{exact_pattern_probs, exact_transition_probs, intersection_measure, ordinal_cells};
use ordent::process::{ProcessKind, ProcessSpec};
use ordent::{census, generate, transition_matrix, OrdinalPattern};

fn main() -> ordent::Result<()> {
    let cells = ordinal_cells(3)?;
    for cell in &cells.cells {
        let parts: Vec<String> = cell
            .intervals
            .iter()
            .map(|i| {
                let (l, r) = (if i.lo_closed { '[' } else { '(' }, if i.hi_closed { ']' } else { ')' });
                format!("{l}{:.6}, {:.6}{r}", i.lo, i.hi)
            })
            .collect();
        println!("P{}  mu = {:.6}  {}", cell.pattern, cell.measure(), parts.join(" u "));
    }

    let inc = cells.cell(&OrdinalPattern::new(vec![0, 1, 2])?).unwrap();
    for to in &cells.cells {
        let m = intersection_measure(inc, to);
        if m > 0.0 {
            println!("mu(P(0,1,2) n f^-1 P{}) = {:.6} = {:.3}/30", to.pattern, m, 30.0 * m);
        }
    }

    let ts = generate(&ProcessSpec::new(ProcessKind::Logistic { a: 4.0, x0: 0.3 }, 1_000_000, 0))?;
    let d = census(&ts, 4)?;
    println!("L=4 pattern probabilities, exact vs orbit:");
    for (code, p) in exact_pattern_probs(4)? {
        println!("  {:<8} {p:.5}  {:.5}", code.pattern().dashed(), d.probability(code));
    }
    let exact = exact_transition_probs(3)?;
    let emp = transition_matrix(&ts, 3)?;
    println!("L=3 transitions, exact vs orbit:");
    for from in exact.sources() {
        for (to, p) in exact.row(from) {
            println!("  {} -> {}  {p:.4}  {:.4}", from.pattern().dashed(), to.pattern().dashed(), emp.get(from, to));
        }
    }
    Ok(())
}
