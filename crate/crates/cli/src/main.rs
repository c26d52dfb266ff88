mod commands;
mod literal;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use literal::{parse_grid, Grid};
use render::Format;

const AFTER_HELP: &str = "\
Arguments:
  --x always denotes the variable x of K_{z,w}(2x), the form in which the
  identities are stated; eval --z 0.3 --w 0 --x 2 therefore prints K_0.3(4).

Literals and grids:
  Complex literals: a, a+bi, a-bi, bi (decimal components, exponents allowed).
  Any parameter may be a grid: a comma list of literals and ranges
  lin:a:b:n (n points from a to b) or log:a:b:n (10^a to 10^b).
  Grids over several parameters form their cartesian product, z varying
  slowest and a fastest.

CSV columns, in order:
  eval     z_re,z_im,w_re,w_im,x_re,x_im,value_re,value_im,err_est,method,work,converged
  compare  z_re,z_im,w_re,w_im,x_re,x_im,method,value_re,value_im,err_est,work,converged,error,max_rel_discrepancy
  verify   identity,z_re,z_im,w_re,w_im,x_re,x_im,alpha,beta,a,b,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tolerance,pass
  table    parameter,param_re,param_im,value_re,value_im,err_est,method,converged

Exit status: 0 all converged or passed, 1 usage error, 2 numerical failure
(non-convergence or a failed identity check).";

#[derive(Parser, Debug)]
#[command(
    name = "genbessel",
    version,
    about = "Evaluate the generalized modified Bessel function K_{z,w} and check its identities",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate K_{z,w}(2x) with the automatic method choice
    Eval(Common),
    /// Evaluate K_{z,w}(2x) with every applicable representation
    Compare(Common),
    /// Check an identity at each grid point
    Verify {
        identity: Identity,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep one of z, w, x and emit K_{z,w}(2x) rows for plotting
    Table(Common),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Identity {
    /// Reciprocity in the Koshliakov kernel, both directions (z, w, alpha, x)
    Reciprocity,
    /// Ramanujan–Guinand form with ab = π² (z, w, a)
    RgGeneral,
    /// Modular form F(z, w, α) = F(z, iw, 1/α) (z, w, alpha)
    RgModular,
    /// The z = 0 form with divisor counts (w, alpha)
    KoshliakovW,
    /// Differential-difference equation in w (z, w, x)
    Dde,
    /// Integral interchange lemma, three ways (w, x)
    LemmaInteq,
    /// Ξ-integral identity (z, w, alpha)
    XiThm,
    /// Ξ-integral identity at z = 0 (w, alpha)
    XiCorollary,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Order z
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    z: Option<Grid>,
    /// Parameter w
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    w: Option<Grid>,
    /// Variable x of K_{z,w}(2x)
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    x: Option<Grid>,
    /// Modular parameter α > 0 (β = 1/α)
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    alpha: Option<Grid>,
    /// Ramanujan–Guinand parameter a > 0 (b = π²/a)
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    a: Option<Grid>,
    /// Relative tolerance [default: 1e-12]
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Absolute tolerance [default: 1e-15]
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Series term budget [default: 200]
    #[arg(long)]
    max_terms: Option<usize>,
    /// Emit JSON
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long)]
    csv: bool,
    /// Report configuration and timing on stderr
    #[arg(long)]
    verbose: bool,
}

impl Common {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok((text, status)) => {
            render::emit(&text);
            ExitCode::from(status as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(commands::Status::Usage as u8)
        }
    }
}
