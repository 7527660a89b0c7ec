//! Shannon, Renyi, Tsallis and Z-entropies of small distributions, group
//! logarithms, and composition laws on a product distribution.

use ordent::classes::ComplexityClass;
use ordent::entropy::{
    composition_law_for, lambert_w0, q_exp, q_log, relative_z, renyi, shannon, tsallis, two_param_entropy,
    z_entropy_general,
};
use ordent::{Distribution, GroupLogarithm};

fn main() -> ordent::Result<()> {
    let p = Distribution::new(vec![0.5, 0.25, 0.125, 0.125])?;
    let q = Distribution::from_weights(&[3.0, 1.0])?;
    println!("shannon(p) = {:.6}", shannon(&p));
    for alpha in [0.5, 1.0, 2.0] {
        println!(
            "alpha={alpha}: renyi {:.6}  tsallis {:.6}",
            renyi(&p, alpha)?,
            tsallis(&p, alpha)?
        );
    }
    println!("two-parameter (alpha=2, beta=0.5) = {:.6}", two_param_entropy(&p, 2.0, 0.5)?);

    let g = GroupLogarithm::q_log(0.5)?;
    println!("q-log with q=0.5: log_G(4) = {}  q_log(4, 0.5) = {}", g.log(4.0)?, q_log(4.0, 0.5)?);
    println!("q_exp(2, 0.5) = {}", q_exp(2.0, 0.5)?);
    println!("Z with the q-log group at alpha=2: {:.6}", z_entropy_general(&p, &g, 2.0)?);

    let u = Distribution::uniform(2)?;
    let v = Distribution::new(vec![0.9, 0.1])?;
    println!("relative Z (identity G, alpha=2) = {:.4}", relative_z(&u, &v, &GroupLogarithm::identity(), 2.0)?);

    println!("W(1) = {:.15}", lambert_w0(1.0)?);

    let pq = p.product(&q);
    for class in [ComplexityClass::exponential(1.0)?, ComplexityClass::Factorial, ComplexityClass::sub_factorial(0.5)?] {
        let law = composition_law_for(&class)?;
        let alpha = 0.5;
        let (zp, zq) = (class.metric_entropy(&p, alpha)?, class.metric_entropy(&q, alpha)?);
        println!(
            "{:<22} Phi(Z(p), Z(q)) = {:.12}  Z(p x q) = {:.12}",
            class.label(),
            law.apply(zp, zq),
            class.metric_entropy(&pq, alpha)?
        );
    }
    Ok(())
}
