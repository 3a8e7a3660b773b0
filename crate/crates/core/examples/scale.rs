//! Compiles a SCOV-shaped CNF circuit with about ten thousand gates and
//! reports time, widths and target size.
//!
//! cargo run --release --example scale -- [n]

use std::time::Instant;

use widthkc::compiler::{compile_auto, CompileOptions, Mode};
use widthkc::lowerbounds::gen_scov;

fn main() -> widthkc::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3334);
    let c = gen_scov(n)?.to_circuit();
    let start = Instant::now();
    let p = compile_auto(&c, Mode::Auto, None, &CompileOptions::default())?;
    let took = start.elapsed();
    println!("gates            {}", c.len());
    println!("mode             {:?}", p.mode);
    println!(
        "decomposition    width {}, {} bags",
        p.decomposition_width(),
        p.decomposition.len()
    );
    println!(
        "friendly         width {}, {} bags",
        p.friendly.width(),
        p.friendly.td().len()
    );
    println!(
        "extended         {} gates, width {}",
        p.stats.gates, p.stats.compiled_width
    );
    println!(
        "target           size {}, width {}",
        p.target_size(),
        p.target_width()
    );
    println!("time             {took:.2?}");
    if let Ok(status) = std::fs::read_to_string("/proc/self/status") {
        if let Some(line) = status.lines().find(|l| l.starts_with("VmHWM:")) {
            println!(
                "peak memory      {}",
                line.trim_start_matches("VmHWM:").trim()
            );
        }
    }
    Ok(())
}
