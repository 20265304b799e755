use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod workspace;

/// Exact computations with filtered shifted L∞-algebras and their
/// Maurer–Cartan simplicial sets.
#[derive(Parser, Debug)]
#[command(name = "linf", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Algebra, morphism, simplex, certificate or simplicial-space file.
    #[arg(long = "input", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Work modulo F_{N+1} for a smaller N than the files declare.
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    /// Write the result document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an algebra, or a morphism and its quasi-isomorphism hypothesis.
    Validate,
    /// Curvature of a degree-0 element.
    Curv(ElementArg),
    /// Twist an algebra (or a morphism) by an MC element.
    Twist(ElementArg),
    /// Push an element or simplex forward along a morphism.
    Pushforward(ElementArg),
    /// Rebuild an MC simplex from its value at a vertex and its stub.
    Reconstruct {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        stub: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Replace an edge by a rectified one with the same endpoints.
    Rectify {
        #[arg(long)]
        edge: String,
        #[arg(long, default_value_t = 1)]
        floor: u32,
    },
    /// Fill the horn formed by two consecutive edges.
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Concatenate a weight-scheduled chain of edges.
    Concatenate {
        #[arg(long = "edge", required = true)]
        edges: Vec<String>,
    },
    /// Find an MC preimage of a target MC element, with a certificate.
    Preimage(ElementArg),
    /// Transfer a target edge between images into a source edge.
    TransferConnect {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        alpha_prime: String,
        #[arg(long)]
        edge: String,
    },
    /// Homotopy group dimensions of an abelian algebra, cross-checked
    /// against the Moore complex of Z⁰(L ⊗ C).
    PiAbelian {
        #[arg(long)]
        degree: usize,
    },
    /// Moore homology of a simplicial vector space, or of Z⁰(L ⊗ C) for an
    /// abelian algebra.
    MooreHomology {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Re-validate a certificate or a simplex file.
    Verify,
}

#[derive(Args, Debug)]
pub struct ElementArg {
    /// Inline JSON document or a path to one.
    #[arg(long)]
    pub element: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    let (doc, code) = match outcome {
        Ok(out) => (out.doc, out.status),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = linf_core::io::to_json(&doc);
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
