//! Oblivious rounding at a fully fractional point loses a factor growing
//! with m, while the sparsify-then-round pipeline stays within a constant.
//!
//! cargo run --release --example adversarial_gap

use detmax::cli;
use detmax::instances;
use detmax::rounding;

fn main() -> detmax::Result<()> {
    for m in [4, 8, 16] {
        let adv = instances::gen_adversarial(m, m - 1)?;
        let e = rounding::adversarial_oblivious_expectation(&adv);
        println!("m = {m:>2}: E[oblivious] = {e:.4e}, OPT / E = {:.2}", 16.0 / e);
    }
    println!();
    for row in cli::cmd_demo_adversarial(&[8, 16], 5_000, 0)? {
        println!(
            "m = {:>2}: oblivious ratio {:>8.2} (>= m/4: {}), pipeline ratio {:.2} (< {:.0}: {})",
            row.m,
            row.oblivious_ratio,
            row.oblivious_gap_holds(),
            row.pipeline_ratio,
            row.chain_constant,
            row.pipeline_within_chain()
        );
    }
    Ok(())
}
