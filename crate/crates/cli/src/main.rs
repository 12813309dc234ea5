use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod format;
mod input;
mod reproduce;
mod svg;

/// Schur stability of Hadamard products and powers of polynomials.
#[derive(Parser)]
#[command(name = "schur-hadamard", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, stability verdict and coefficient criteria of one polynomial.
    Analyze {
        #[arg(long)]
        poly: PathBuf,
        /// Include the weights that certify the sufficient condition.
        #[arg(long)]
        witness: bool,
    },
    /// Hadamard power f^[p] for a rational p = K/M.
    Power {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long = "p", allow_hyphen_values = true)]
        p: String,
        /// Report every branch instead of the principal one.
        #[arg(long)]
        all_branches: bool,
    },
    /// Hadamard (or Szegő) product of two polynomials of equal degree.
    Product {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        szego: bool,
        #[arg(long, value_enum)]
        criterion: Option<CriterionArg>,
    },
    /// Power thresholds of f^[p].
    Threshold {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "grid")]
        method: MethodArg,
        #[arg(long, default_value_t = 1000)]
        grid_n: usize,
        #[arg(long, value_enum, default_value = "lattice")]
        grid_scheme: SchemeArg,
        #[arg(long, default_value_t = schur_hadamard::threshold::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Roots of f^[p] over an arithmetic range of powers, as CSV and SVG.
    Sweep {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Recompute the worked examples and compare with reference values.
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Grid,
    Exact,
    Onset,
    Beta,
    Guardian,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Lattice,
    Nested,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { poly, witness } => commands::analyze(&poly, witness),
        Command::Power { poly, p, all_branches } => commands::power(&poly, &p, all_branches),
        Command::Product { f, g, szego, criterion } => commands::product(
            &f,
            &g,
            szego,
            criterion.map(|c| match c {
                CriterionArg::A => schur_hadamard::ProductCriterion::A,
                CriterionArg::B => schur_hadamard::ProductCriterion::B,
                CriterionArg::C => schur_hadamard::ProductCriterion::C,
            }),
        ),
        Command::Threshold {
            poly,
            mode,
            method,
            grid_n,
            grid_scheme,
            tol,
        } => commands::threshold(
            &poly,
            match mode {
                ModeArg::Max => schur_hadamard::Mode::Max,
                ModeArg::Min => schur_hadamard::Mode::Min,
            },
            match method {
                MethodArg::Grid => commands::Method::Grid(match grid_scheme {
                    SchemeArg::Lattice => schur_hadamard::GridScheme::Lattice,
                    SchemeArg::Nested => schur_hadamard::GridScheme::Nested,
                }),
                MethodArg::Exact => commands::Method::Exact,
                MethodArg::Onset => commands::Method::Onset,
                MethodArg::Beta => commands::Method::Beta,
                MethodArg::Guardian => commands::Method::Guardian,
            },
            grid_n,
            tol,
        ),
        Command::Sweep {
            poly,
            from,
            to,
            step,
            out,
        } => commands::sweep(&poly, from, to, step, &out),
        Command::Reproduce { example, out } => reproduce::run(example, &out),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
