//! `qscen`: analyse, compare and export scenario structures.
//!
//! Results go to standard output. Warnings and errors go to standard error,
//! errors as one JSON line `{"reason": .., "message": ..}`. Exit status is
//! 0 on success, 2 for unusable input and 1 for anything else.

mod args;

use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use qscen_core::{
    analyze, compare_variants, detect_format, export_dot, parse_scenario, sniff_json,
    AnalysisError, AnalysisReport, DiffView, IngestError, InputFormat, LineGraph,
    LineGraphRequest, RenderOptions, ReportOptions, ScenarioDocument, ScenarioInput,
};
use serde_json::json;

use args::{
    AnalysisArgs, AnalyzeArgs, Cli, Command, CompareArgs, ExportDotArgs, GraphFormat,
    LinegraphArgs, OutputFormat, ServeArgs,
};

#[derive(Debug)]
enum Failure {
    Input {
        reason: &'static str,
        cause: Option<&'static str>,
        message: String,
        path: Option<String>,
    },
    Internal(String),
}

impl Failure {
    fn ingest(path: &Path, err: IngestError) -> Self {
        Failure::Input {
            reason: err.kind(),
            cause: err.cause(),
            message: err.to_string(),
            path: Some(path.display().to_string()),
        }
    }

    fn analysis(err: AnalysisError) -> Self {
        Failure::Input {
            reason: err.kind(),
            cause: None,
            message: err.to_string(),
            path: None,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input { .. } => 2,
            Failure::Internal(_) => 1,
        }
    }

    fn to_line(&self) -> String {
        let value = match self {
            Failure::Input {
                reason,
                cause,
                message,
                path,
            } => {
                let mut v = json!({ "reason": reason, "message": message });
                if let Some(cause) = cause {
                    v["cause"] = json!(cause);
                }
                if let Some(path) = path {
                    v["path"] = json!(path);
                }
                v
            }
            Failure::Internal(message) => json!({ "reason": "InternalError", "message": message }),
        };
        value.to_string()
    }
}

struct Loaded {
    id: String,
    scenario: ScenarioInput,
}

/// File stem up to the first dot: `mexico-base.incidence.csv` is `mexico-base`.
fn scenario_id(path: &Path) -> String {
    path.file_name()
        .and_then(|n| n.to_str())
        .and_then(|n| n.split('.').next())
        .filter(|n| !n.is_empty())
        .unwrap_or("stdin")
        .to_string()
}

fn load(path: &Path, format: Option<InputFormat>, label: Option<&str>) -> Result<Loaded, Failure> {
    let stdin = path == Path::new("-");
    let payload = if stdin {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map(|_| buf)
            .map_err(|e| e.to_string())
    } else {
        std::fs::read(path).map_err(|e| e.to_string())
    }
    .map_err(|message| Failure::Input {
        reason: "UnreadableInput",
        cause: None,
        message,
        path: Some(path.display().to_string()),
    })?;

    let format = match format {
        Some(f) => f,
        None if stdin => {
            let trimmed = String::from_utf8_lossy(&payload);
            if trimmed.trim_start().starts_with('{') {
                sniff_json(&payload)
            } else {
                InputFormat::IncidenceCsv
            }
        }
        None => detect_format(path, &payload).ok_or_else(|| Failure::Input {
            reason: "UnknownFormat",
            cause: None,
            message: "cannot tell the input format from the file name; pass --input-format".into(),
            path: Some(path.display().to_string()),
        })?,
    };
    let mut doc = ScenarioDocument::new(format, payload);
    if let Some(label) = label {
        doc = doc.with_label(label);
    }
    let parsed = parse_scenario(&doc).map_err(|e| Failure::ingest(path, e))?;
    for warning in &parsed.warnings {
        eprintln!("warning: {}: {warning}", path.display());
    }
    Ok(Loaded {
        id: if stdin { "stdin".into() } else { scenario_id(path) },
        scenario: parsed.scenario,
    })
}

fn report_options(args: &AnalysisArgs, line_graphs: Vec<LineGraphRequest>) -> ReportOptions {
    ReportOptions {
        variant: args.variant,
        line_graphs,
        precision: args.precision,
    }
}

fn run_analysis(loaded: &Loaded, options: &ReportOptions) -> Result<AnalysisReport, Failure> {
    let report = analyze(&loaded.id, &loaded.scenario, options).map_err(Failure::analysis)?;
    if let Some(condition) = report.condition() {
        eprintln!(
            "warning: {}: {condition}: structure vector and complexity are undefined",
            loaded.id
        );
    }
    Ok(report)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<String, Failure> {
    let loaded = load(&args.input, args.input_args.input_format, args.label.as_deref())?;
    let mut graphs: Vec<LineGraphRequest> =
        args.min_dim.iter().map(|&p| LineGraphRequest::MinDim(p)).collect();
    graphs.extend(args.band.iter().copied());
    let report = run_analysis(&loaded, &report_options(&args.analysis, graphs))?;
    Ok(match args.analysis.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => report.to_json_pretty() + "\n",
    })
}

fn cmd_compare(args: CompareArgs) -> Result<String, Failure> {
    let a = load(&args.a, args.input_args.input_format, None)?;
    let b = load(&args.b, args.input_args.input_format, None)?;
    let options = report_options(&args.analysis, Vec::new());
    let (ra, rb) = (run_analysis(&a, &options)?, run_analysis(&b, &options)?);
    let diff = compare_variants(&ra, &rb);
    let view = DiffView {
        diff: &diff,
        precision: options.precision,
    };
    Ok(match args.analysis.format {
        OutputFormat::Text => view.render_text(),
        OutputFormat::Json => {
            let meta = |r: &AnalysisReport| {
                json!({"id": r.scenario_id(), "digest": r.scenario().digest})
            };
            let body = json!({ "a": meta(&ra), "b": meta(&rb), "diff": view });
            serde_json::to_string_pretty(&body).expect("diff serializes") + "\n"
        }
    })
}

fn dot_style(loaded: &Loaded) -> RenderOptions {
    RenderOptions {
        name: Some(loaded.id.clone()),
        labels: loaded.scenario.alternative_labels().into_iter().collect(),
    }
}

fn graph_json(loaded: &Loaded, graph: &LineGraph) -> String {
    let ids = graph.nodes();
    let components: Vec<Vec<&str>> = graph
        .components()
        .iter()
        .map(|c| c.iter().map(|&h| ids[h].as_str()).collect())
        .collect();
    let body = json!({
        "scenario": {"id": loaded.id, "digest": loaded.scenario.digest()},
        "line_graph": graph,
        "components": components,
    });
    serde_json::to_string_pretty(&body).expect("graph serializes") + "\n"
}

fn cmd_linegraph(args: LinegraphArgs) -> Result<String, Failure> {
    let loaded = load(&args.input, args.input_args.input_format, None)?;
    let request = match (args.min_dim, args.band) {
        (Some(p), _) => LineGraphRequest::MinDim(p),
        (None, Some(band)) => band,
        (None, None) => unreachable!("clap requires one of --min-dim or --band"),
    };
    let graph = request
        .build(&loaded.scenario.intersection_matrix())
        .map_err(Failure::analysis)?;
    Ok(match args.format {
        GraphFormat::Dot => export_dot(&graph, &dot_style(&loaded)),
        GraphFormat::Json => graph_json(&loaded, &graph),
    })
}

fn cmd_export_dot(args: ExportDotArgs) -> Result<String, Failure> {
    let loaded = load(&args.input, args.input_args.input_format, None)?;
    let matrix = loaded.scenario.intersection_matrix();
    let style = dot_style(&loaded);
    let top = matrix.max_face().max(0) as usize;
    let docs: Vec<(usize, String)> = (0..=top)
        .map(|p| (p, export_dot(&LineGraphRequest::MinDim(p).build(&matrix).expect("min-dim graphs always build"), &style)))
        .collect();

    let Some(dir) = args.out_dir else {
        return Ok(docs.into_iter().map(|(_, d)| d).collect());
    };
    std::fs::create_dir_all(&dir)
        .map_err(|e| Failure::Internal(format!("{}: {e}", dir.display())))?;
    let mut out = String::new();
    for (p, doc) in docs {
        let path = dir.join(format!("{}.L{p}.dot", loaded.id));
        std::fs::write(&path, doc)
            .map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
        out.push_str(&format!("{}\n", path.display()));
    }
    Ok(out)
}

fn cmd_serve(args: ServeArgs) -> Result<String, Failure> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Internal(e.to_string()))?;
    runtime
        .block_on(qscen_service::serve(qscen_service::Config {
            listen: args.listen,
            data_dir: args.data_dir,
        }))
        .map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(String::new())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Linegraph(args) => cmd_linegraph(args),
        Command::ExportDot(args) => cmd_export_dot(args),
        Command::Serve(args) => cmd_serve(args),
    };
    match result {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}", Failure::Internal(e.to_string()).to_line());
                    ExitCode::from(1)
                }
            }
        }
        Err(failure) => {
            eprintln!("{}", failure.to_line());
            ExitCode::from(failure.exit_code())
        }
    }
}
