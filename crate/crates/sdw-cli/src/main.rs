use clap::Parser;
use sdw_cli::ast::ReportFormat;
use sdw_cli::session::{render_json, render_text, Config};

/// Runs a session file of ring/module declarations and checks, printing a
/// verdict report.
#[derive(Parser, Debug)]
#[command(name = "sdw", version, about)]
struct Cli {
    /// Session file to execute.
    input: String,

    /// Override the coefficient characteristic declared in the file.
    #[arg(long)]
    char: Option<u32>,

    /// Bound for Ext-vanishing certifications (default: variables + 2).
    #[arg(long)]
    ext_bound: Option<u32>,

    /// Seed for randomized searches; identical seeds give identical
    /// structured reports (timings aside).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format on stdout.
    #[arg(long, default_value = "text", value_parser = ["json", "text"])]
    format: String,

    /// Per-check timeout in seconds (checks that exceed it report
    /// `unknown`).
    #[arg(long)]
    timeout_s: Option<u64>,
}

fn main() {
    let cli = Cli::parse();
    let config = Config {
        char_override: cli.char,
        ext_bound: cli.ext_bound,
        seed: cli.seed,
        timeout_s: cli.timeout_s,
    };
    let outcome = match sdw_cli::run_file(&cli.input, &config) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    match cli.format.as_str() {
        "json" => print!("{}", render_json(&outcome.report)),
        _ => print!("{}", render_text(&outcome.report)),
    }
    for (format, path) in &outcome.sinks {
        let rendered = match format {
            ReportFormat::Json => render_json(&outcome.report),
            ReportFormat::Text => render_text(&outcome.report),
        };
        if let Some(parent) = std::path::Path::new(path).parent() {
            if !parent.as_os_str().is_empty() {
                let _ = std::fs::create_dir_all(parent);
            }
        }
        if let Err(e) = std::fs::write(path, rendered) {
            eprintln!("error: cannot write {path}: {e}");
            std::process::exit(2);
        }
    }
    std::process::exit(outcome.exit_code);
}
