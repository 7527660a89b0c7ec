//! Finite permutation-complexity curves g(L,T) for the reference processes,
//! printed as a CSV table ready for plotting.

use ordent::process::{reference_processes, ProcessSpec};
use ordent::{finite_pc_curve, ordinal::ln_factorial};

fn main() -> ordent::Result<()> {
    let len = 6;
    let grid: Vec<usize> = (1..=30).map(|k| k * 500).collect();
    println!("# ln L! = {:.4}", ln_factorial(len));
    println!("process,L,T,g_mean,g_stddev");
    for kind in reference_processes() {
        let spec = ProcessSpec::new(kind.clone(), 2, 0);
        let curve = finite_pc_curve(&spec, len, &grid, 10, 0)?;
        for (i, t) in curve.t_grid.iter().enumerate() {
            println!("{kind},{len},{t},{:.5},{:.5}", curve.mean[i], curve.stddev[i]);
        }
    }
    Ok(())
}
