//! Library behind the `symcrys` binary: validated job configs, the runner
//! for every command, and deterministic DOT/JSON artifact writing.

pub mod config;
pub mod document;
pub mod verify;

use std::collections::BTreeSet;
use std::path::PathBuf;

use thiserror::Error;

use symcrys_core::crystal::{
    check_balanced, dim_formula_eval, global_basis, Carrier, CrystalBuild, CrystalError, Engine,
};
use symcrys_core::heckeb::{self, HeckeConfig, HeckeError};
use symcrys_core::uqminus::UqAlgebra;
use symcrys_core::vtheta::VModule;

use config::{CarrierChoice, Command, ConfigError, Format, JobConfig};
use document::{
    to_json, CheckDoc, DimFormulaDocument, ElementDoc, GlobalBasisBlockDoc, GlobalBasisDocument,
    GraphDocument, HeckeDocument, Metadata, TermDoc, VerificationDocument, TOOL_VERSION,
};

#[derive(Debug, Error)]
pub enum CliError {
    /// Configuration/validation problems: exit status 2.
    #[error("{0}")]
    Config(#[from] ConfigError),
    /// Computation errors: exit status 1.
    #[error("{0}")]
    Crystal(#[from] CrystalError),
    #[error("{0}")]
    Hecke(#[from] HeckeError),
    #[error("cannot write {path}: {detail}")]
    Io { path: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// A finished job: exit status (0 = clean, 1 = a conjecture-relevant report
/// was produced), artifacts written, and a one-line summary per artifact.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub artifacts: Vec<PathBuf>,
    pub summary: String,
    /// JSON payload, also printed to stdout when no output path is set.
    pub json: Option<String>,
}

fn metadata(job: &JobConfig) -> Metadata {
    Metadata {
        tool: "symcrys".to_string(),
        version: TOOL_VERSION.to_string(),
        command: job.command.name().to_string(),
        depth: job.depth,
        config: job.echo(),
    }
}

/// Resolves the internal parallelism cap: explicit option, then the
/// SYMCRYS_THREADS environment variable, then the machine default.
pub fn thread_cap(job: &JobConfig) -> usize {
    if job.threads > 0 {
        return job.threads;
    }
    if let Ok(s) = std::env::var("SYMCRYS_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n > 0 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Executes a validated job and writes its artifacts.
pub fn run(job: &JobConfig) -> Result<RunOutcome, CliError> {
    match job.command {
        Command::Binfty => {
            let rd = job.root_datum()?;
            let u = UqAlgebra::new(rd);
            graph_job(job, &u)
        }
        Command::CrystalB => {
            let rd = job.root_datum()?;
            let lambda = job.dominant_weight(&rd)?;
            let m = VModule::new(rd, lambda);
            graph_job(job, &m)
        }
        Command::GlobalBasis => match job.carrier {
            CarrierChoice::Uq => {
                let rd = job.root_datum()?;
                let u = UqAlgebra::new(rd);
                global_basis_job(job, &u)
            }
            CarrierChoice::Vtheta => {
                let rd = job.root_datum()?;
                let lambda = job.dominant_weight(&rd)?;
                let m = VModule::new(rd, lambda);
                global_basis_job(job, &m)
            }
        },
        Command::VerifyUq => {
            let rd = job.root_datum()?;
            let checks = verify::verify_uq(&rd, 200, job.depth);
            verification_job(job, checks)
        }
        Command::VerifyVtheta => {
            let rd = job.root_datum()?;
            let lambda = job.dominant_weight(&rd)?;
            let checks = verify::verify_vtheta(&rd, &lambda, 200, job.depth);
            verification_job(job, checks)
        }
        Command::VerifyHecke => hecke_job(job),
        Command::DimFormula => dim_formula_job(job),
    }
}

fn write_artifact(path: &PathBuf, content: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
                path: dir.display().to_string(),
                detail: e.to_string(),
            })?;
        }
    }
    std::fs::write(path, content).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

fn emit(
    job: &JobConfig,
    json: String,
    dot: Option<String>,
    text: String,
    clean: bool,
) -> Result<RunOutcome, CliError> {
    let mut artifacts = Vec::new();
    if let Some(prefix) = &job.out {
        for fmt in &job.formats {
            match fmt {
                Format::Json => {
                    let path = prefix.with_extension("json");
                    write_artifact(&path, &json)?;
                    artifacts.push(path);
                }
                Format::Dot => {
                    if let Some(dot) = &dot {
                        let path = prefix.with_extension("dot");
                        write_artifact(&path, dot)?;
                        artifacts.push(path);
                    }
                }
                Format::Text => {
                    let path = prefix.with_extension("txt");
                    write_artifact(&path, &text)?;
                    artifacts.push(path);
                }
            }
        }
    }
    let print_json = job.out.is_none() && job.formats.contains(&Format::Json);
    Ok(RunOutcome {
        exit_code: if clean { 0 } else { 1 },
        artifacts,
        summary: text,
        json: print_json.then_some(json),
    })
}

fn graph_job<C: Carrier>(job: &JobConfig, carrier: &C) -> Result<RunOutcome, CliError> {
    let engine = Engine::new(carrier);
    let build = engine.build(job.depth);
    let doc = GraphDocument::from_build(carrier, &build, metadata(job));
    let clean = doc.reports.is_empty();
    let text = format!(
        "{}: {} nodes, {} arrows at depth {}; {} report(s)\n",
        job.command.name(),
        doc.nodes.len(),
        doc.arrows.len(),
        job.depth,
        doc.reports.len()
    );
    let dot = doc.to_dot();
    emit(job, to_json(&doc), Some(dot), text, clean)
}

fn element_doc<C: Carrier>(carrier: &C, e: &C::Elem) -> ElementDoc {
    // Canonical reduced representative, term by term.
    let reduced = carrier.reduce(e);
    let terms = carrier
        .term_strings(&reduced)
        .into_iter()
        .map(|(monomial, coeff)| TermDoc { monomial, coeff })
        .collect();
    ElementDoc { terms }
}

fn blocks_of_build<C: Carrier>(build: &CrystalBuild<C>) -> Vec<C::Block> {
    let set: BTreeSet<C::Block> = build.graph.nodes.iter().map(|n| n.block.clone()).collect();
    set.into_iter().collect()
}

fn global_basis_job<C: Carrier>(job: &JobConfig, carrier: &C) -> Result<RunOutcome, CliError> {
    let engine = Engine::new(carrier);
    let build = engine.build(job.depth);
    let mut blocks = Vec::new();
    let mut all_reports = build.reports.clone();
    all_reports.extend(engine.check_lattice_stability(&build));
    for block in blocks_of_build(&build) {
        let gbb = global_basis(&engine, &build, &block)?;
        let balanced = check_balanced(&engine, &build, &gbb);
        all_reports.extend(gbb.reports.clone());
        blocks.push(GlobalBasisBlockDoc {
            block: carrier.block_label(&block),
            nodes: gbb
                .node_ids
                .iter()
                .map(|&id| symcrys_core::crystal::witness_string(&build.graph.nodes[id].witness))
                .collect(),
            lower: gbb.lower.iter().map(|g| element_doc(carrier, g)).collect(),
            upper: gbb.upper.iter().map(|g| element_doc(carrier, g)).collect(),
            balanced,
            reports: gbb.reports.clone(),
        });
    }
    let clean = all_reports.is_empty() && blocks.iter().all(|b| b.balanced.pass);
    let doc = GlobalBasisDocument {
        metadata: metadata(job),
        blocks,
        reports: all_reports,
    };
    let text = format!(
        "global-basis: {} block(s) at depth {}; balanced: {}; {} report(s)\n",
        doc.blocks.len(),
        job.depth,
        if doc.blocks.iter().all(|b| b.balanced.pass) {
            "pass"
        } else {
            "FAIL"
        },
        doc.reports.len()
    );
    emit(job, to_json(&doc), None, text, clean)
}

fn verification_job(job: &JobConfig, checks: Vec<CheckDoc>) -> Result<RunOutcome, CliError> {
    let doc = VerificationDocument {
        metadata: metadata(job),
        checks,
    };
    let clean = doc.all_pass();
    let mut text = String::new();
    for c in &doc.checks {
        text.push_str(&format!(
            "{}: {}\n",
            c.name,
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    emit(job, to_json(&doc), None, text, clean)
}

fn hecke_job(job: &JobConfig) -> Result<RunOutcome, CliError> {
    let cfg = match &job.hecke_params {
        None => HeckeConfig::generic(job.hecke_n)?,
        Some((p0, p1)) => HeckeConfig::numeric(job.hecke_n, p0.clone(), p1.clone())?,
    };
    let report = heckeb::verify_relations(&cfg, job.hecke_bound, thread_cap(job))?;
    let clean = report.all_pass();
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!(
            "{}: {}\n",
            c.name,
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    let doc = HeckeDocument {
        metadata: metadata(job),
        report,
    };
    emit(job, to_json(&doc), None, text, clean)
}

fn dim_formula_job(job: &JobConfig) -> Result<RunOutcome, CliError> {
    if job.eseq.len() != job.witness.len() {
        return Err(CliError::Config(ConfigError::Invalid {
            key: "eseq",
            detail: format!(
                "raising word length {} must equal the witness length {}",
                job.eseq.len(),
                job.witness.len()
            ),
        }));
    }
    let rd = job.root_datum()?;
    let lambda = job.dominant_weight(&rd)?;
    for seq in [&job.witness, &job.eseq] {
        for &i in seq {
            if !rd.contains(i) {
                return Err(CliError::Config(ConfigError::Invalid {
                    key: "witness",
                    detail: format!("index {i} is not in the window"),
                }));
            }
        }
    }
    let m = VModule::new(rd, lambda);
    let engine = Engine::new(&m);
    let build = engine.build(job.witness.len() as u32);
    let node_id = *build.node_of_word.get(&job.witness).ok_or_else(|| {
        CliError::Config(ConfigError::Invalid {
            key: "witness",
            detail: "word does not generate a crystal node at this depth".to_string(),
        })
    })?;
    let block = build.graph.nodes[node_id].block.clone();
    let gbb = global_basis(&engine, &build, &block)?;
    if !gbb.is_complete() {
        let doc = GlobalBasisDocument {
            metadata: metadata(job),
            blocks: Vec::new(),
            reports: gbb.reports.clone(),
        };
        let text = format!(
            "dim-formula: global basis unavailable on block {} ({} report(s))\n",
            m.block_label(&block),
            gbb.reports.len()
        );
        return emit(job, to_json(&doc), None, text, false);
    }
    let value = dim_formula_eval(&engine, &gbb, node_id, &job.eseq)?;
    let doc = DimFormulaDocument {
        metadata: metadata(job),
        witness: symcrys_core::crystal::witness_string(&job.witness),
        eseq: symcrys_core::crystal::witness_string(&job.eseq),
        value: value.to_string(),
    };
    let text = format!("dim-formula: value {} at q = 1\n", doc.value);
    emit(job, to_json(&doc), None, text, true)
}
