use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use symcrys_cli::config::{RawOptions, KNOWN_KEYS};
use symcrys_cli::run;

/// Exact symmetric-crystal computations: crystal graphs, global bases,
/// relation verification and dimension values, as DOT/JSON artifacts.
#[derive(Parser, Debug)]
#[command(name = "symcrys", version, about)]
struct Cli {
    /// Key=value config file; command-line flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
    /// One of: binfty, crystal-b, global-basis, verify-uq, verify-vtheta,
    /// verify-hecke, dim-formula.
    #[arg(long)]
    command: Option<String>,
    /// Root-datum kind: odd-window, finite-path, affine-cycle, doubled-orbit.
    #[arg(long)]
    kind: Option<String>,
    /// Window radius for odd-window (positive odd integer).
    #[arg(long)]
    radius: Option<String>,
    /// Comma-separated labels for finite-path.
    #[arg(long, allow_hyphen_values = true)]
    labels: Option<String>,
    /// Cycle length for affine-cycle / doubled-orbit.
    #[arg(long)]
    ell: Option<String>,
    /// Chain truncation for doubled-orbit.
    #[arg(long)]
    window: Option<String>,
    /// Declared relation p0^2 = p1^e for doubled-orbit (even e).
    #[arg(long, allow_hyphen_values = true)]
    relation: Option<String>,
    /// Dominant weight: zero, preset, or explicit `index:value,...`.
    #[arg(long)]
    lambda: Option<String>,
    /// Crystal depth bound.
    #[arg(long)]
    depth: Option<String>,
    /// Carrier for global-basis: uq or vtheta.
    #[arg(long)]
    carrier: Option<String>,
    /// Output formats, comma-separated: dot, json, text.
    #[arg(long)]
    format: Option<String>,
    /// Output path prefix; artifacts get .dot/.json/.txt extensions.
    #[arg(long)]
    out: Option<String>,
    /// Hecke degree.
    #[arg(long)]
    n: Option<String>,
    /// Hecke exponent bound for exhaustive checks.
    #[arg(long = "exp-bound")]
    exp_bound: Option<String>,
    /// Numeric Hecke parameter p0 (exact rational, e.g. 3 or 5/2).
    #[arg(long)]
    p0: Option<String>,
    /// Numeric Hecke parameter p1.
    #[arg(long)]
    p1: Option<String>,
    /// Crystal node witness word for dim-formula (application order).
    #[arg(long, allow_hyphen_values = true)]
    witness: Option<String>,
    /// Raising word for dim-formula.
    #[arg(long, allow_hyphen_values = true)]
    eseq: Option<String>,
    /// Parallelism cap (also via SYMCRYS_THREADS).
    #[arg(long)]
    threads: Option<String>,
}

impl Cli {
    fn flag_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let pairs: [(&str, &Option<String>); 19] = [
            ("command", &self.command),
            ("kind", &self.kind),
            ("radius", &self.radius),
            ("labels", &self.labels),
            ("ell", &self.ell),
            ("window", &self.window),
            ("relation", &self.relation),
            ("lambda", &self.lambda),
            ("depth", &self.depth),
            ("carrier", &self.carrier),
            ("format", &self.format),
            ("out", &self.out),
            ("n", &self.n),
            ("exp-bound", &self.exp_bound),
            ("p0", &self.p0),
            ("p1", &self.p1),
            ("witness", &self.witness),
            ("eseq", &self.eseq),
            ("threads", &self.threads),
        ];
        debug_assert!(pairs.iter().all(|(k, _)| KNOWN_KEYS.contains(k)));
        for (k, v) in pairs {
            if let Some(v) = v {
                m.insert(k.to_string(), v.clone());
            }
        }
        m
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file_opts = match &cli.config {
        Some(path) => match RawOptions::from_file(path) {
            Ok(o) => o,
            Err(e) => {
                eprintln!("symcrys: {e}");
                return ExitCode::from(2);
            }
        },
        None => RawOptions::default(),
    };
    let job = match file_opts.overlay(cli.flag_map()).into_job() {
        Ok(j) => j,
        Err(e) => {
            eprintln!("symcrys: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&job) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            if let Some(json) = &outcome.json {
                print!("{json}");
            }
            for a in &outcome.artifacts {
                eprintln!("wrote {}", a.display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("symcrys: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
