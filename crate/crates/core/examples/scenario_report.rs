//! Loading a scenario file and rendering its report, as the `dsqif analyze`
//! binary does.
//!
//! ```bash
//! cargo run --example scenario_report -- scenarios/experiment2.json
//! ```

use std::path::PathBuf;

use dsqif::scenario::{load_scenario, run_scenario};

fn main() -> dsqif::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/experiment1.json"));
    let scenario = load_scenario(&path)?;
    println!("program:\n{}", scenario.setup.program().pretty());
    let report = run_scenario(&scenario)?;
    print!("{}", report.render_table(false));
    println!("\nsummary as JSON: {}", report.to_json(false)["summary"]);
    Ok(())
}
