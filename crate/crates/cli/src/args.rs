use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qscen_core::{InputFormat, LineGraphRequest, Variant};

#[derive(Debug, Parser)]
#[command(name = "qscen", version, about = "Q-analysis of scenario structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the full analysis report for one scenario.
    Analyze(AnalyzeArgs),
    /// Compare scenario B against baseline A.
    Compare(CompareArgs),
    /// Print one line graph.
    Linegraph(LinegraphArgs),
    /// Write the complex line graph at every level as DOT.
    ExportDot(ExportDotArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Override format detection.
    #[arg(long, value_parser = parse_input_format)]
    pub input_format: Option<InputFormat>,
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    /// Classification behind the structure vector.
    #[arg(long, default_value = "complex-threshold", value_parser = parse_variant)]
    pub variant: Variant,
    /// Decimal places for rendered complexity values.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=30))]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Scenario file, or `-` for standard input.
    pub input: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// Override the scenario label.
    #[arg(long)]
    pub label: Option<String>,
    /// Include the complex line graph with shared faces of at least N.
    #[arg(long = "min-dim", value_name = "N")]
    pub min_dim: Vec<usize>,
    /// Include the line graph over the band lo:hi.
    #[arg(long, value_name = "LO:HI", value_parser = parse_band, allow_hyphen_values = true)]
    pub band: Vec<LineGraphRequest>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("level").required(true).args(["min_dim", "band"]))]
pub struct LinegraphArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
    #[arg(long = "min-dim", value_name = "N")]
    pub min_dim: Option<usize>,
    #[arg(long, value_name = "LO:HI", value_parser = parse_band, allow_hyphen_values = true)]
    pub band: Option<LineGraphRequest>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
    /// Write `<scenario>.L<p>.dot` files here instead of standard output.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "QSCEN_LISTEN", default_value = "127.0.0.1:8080")]
    pub listen: SocketAddr,
    /// Directory for the revision log; in-memory when absent.
    #[arg(long, env = "QSCEN_DATA_DIR")]
    pub data_dir: Option<PathBuf>,
}

fn parse_input_format(s: &str) -> Result<InputFormat, String> {
    s.parse()
        .map_err(|_| "expected scenario-json, incidence-csv, intersection-csv or cogmap-json".into())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
        .map_err(|_| "expected complex-threshold or hypergraph-equality".into())
}

fn parse_band(s: &str) -> Result<LineGraphRequest, String> {
    s.parse()
}
