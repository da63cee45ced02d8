//! Write the datasets behind the published figures.
//!
//! `cargo run --example figures -- [out-dir]`
use std::path::PathBuf;

use weyl_dyn::cli::{cmd_figures, load_scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("weyl_figures"), PathBuf::from);
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    for name in ["fig1_velocity", "fig2_trajectory", "fig3_k", "fig45_control"] {
        let s = load_scenario(dir.join(format!("{name}.scn")))?;
        let fig = cmd_figures(&s, Some(&out))?;
        println!("{}\n", fig.report);
    }
    Ok(())
}
