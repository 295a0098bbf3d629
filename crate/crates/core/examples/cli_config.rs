//! Experiment configurations: build one, save it as JSON, reload it and run
//! it through the same entry point as the `ergw` binary.

use ergw::cli::{run, ExperimentConfig};

fn main() -> ergw::Result<()> {
    let dir = std::env::temp_dir().join("ergw-cli-config-example");
    std::fs::create_dir_all(&dir)?;
    let cfg = dir.join("expsum.json");
    let cfg_str = cfg.to_str().unwrap();
    let code = run([
        "ergw",
        "--save-config",
        cfg_str,
        "expsum",
        "--n",
        "1000",
        "--x",
        "1/3,1/4",
        "--method",
        "direct",
    ]);
    println!("saved configuration (exit {code}):");
    let text = std::fs::read_to_string(&cfg)?;
    println!("{text}");
    let parsed = ExperimentConfig::from_json(&text)?;
    println!("round trip: {}", parsed.to_json()? == text.trim_end());
    let code = run(["ergw", "--config", cfg_str]);
    println!("replay exit code {code}");
    Ok(())
}
