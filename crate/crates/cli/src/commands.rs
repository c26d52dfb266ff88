use std::time::Instant;

use clap::ValueEnum;
use genbessel::identities::{
    check_dde, check_koshliakov_w, check_lemma_inteq, check_reciprocity, check_rg_general, check_rg_modular,
    IdentityReport,
};
use genbessel::kzw::{compare_methods, eval_auto, KzwPoint};
use genbessel::xi::{check_xi_corollary_z0, check_xi_theorem};
use genbessel::{Complex64, Error, EvalConfig, Evaluation};
use rayon::prelude::*;
use serde::Serialize;

use crate::literal::Grid;
use crate::render::render;
use crate::{Command, Common, Identity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Usage = 1,
    Numerical = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Param {
    Z,
    W,
    X,
    Alpha,
    A,
}

impl Param {
    const ALL: [Param; 5] = [Param::Z, Param::W, Param::X, Param::Alpha, Param::A];

    fn flag(self) -> &'static str {
        match self {
            Param::Z => "z",
            Param::W => "w",
            Param::X => "x",
            Param::Alpha => "alpha",
            Param::A => "a",
        }
    }

    fn grid(self, c: &Common) -> Option<&Grid> {
        match self {
            Param::Z => c.z.as_ref(),
            Param::W => c.w.as_ref(),
            Param::X => c.x.as_ref(),
            Param::Alpha => c.alpha.as_ref(),
            Param::A => c.a.as_ref(),
        }
    }

    /// α and a must be positive reals.
    fn positive_real(self) -> bool {
        matches!(self, Param::Alpha | Param::A)
    }
}

/// One grid point; parameters a command does not use stay zero.
#[derive(Debug, Clone, Copy, Default)]
struct Point {
    z: Complex64,
    w: Complex64,
    x: Complex64,
    alpha: f64,
    a: f64,
}

impl Point {
    fn set(&mut self, p: Param, v: Complex64) {
        match p {
            Param::Z => self.z = v,
            Param::W => self.w = v,
            Param::X => self.x = v,
            Param::Alpha => self.alpha = v.re,
            Param::A => self.a = v.re,
        }
    }

    fn describe(&self, used: &[Param]) -> String {
        let parts: Vec<String> = used
            .iter()
            .map(|&p| match p {
                Param::Z => format!("z = {}", self.z),
                Param::W => format!("w = {}", self.w),
                Param::X => format!("x = {}", self.x),
                Param::Alpha => format!("alpha = {}", self.alpha),
                Param::A => format!("a = {}", self.a),
            })
            .collect();
        parts.join(", ")
    }
}

fn config(c: &Common) -> Result<(EvalConfig, Vec<String>), String> {
    let mut cfg = EvalConfig::default();
    let mut overrides = Vec::new();
    if let Some(v) = c.rel_tol {
        cfg.rel_tol = v;
        overrides.push(format!("rel_tol={v:e}"));
    }
    if let Some(v) = c.abs_tol {
        cfg.abs_tol = v;
        overrides.push(format!("abs_tol={v:e}"));
    }
    if let Some(v) = c.max_terms {
        cfg.max_series_terms = v;
        overrides.push(format!("max_series_terms={v}"));
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok((cfg, overrides))
}

/// Check that exactly the `used` parameters are present and well formed,
/// and expand their grids into points.
fn points(command: &str, c: &Common, used: &[Param]) -> Result<Vec<Point>, String> {
    for p in Param::ALL {
        match (p.grid(c), used.contains(&p)) {
            (None, true) => return Err(format!("{command} needs --{}", p.flag())),
            (Some(_), false) => return Err(format!("{command} does not take --{}", p.flag())),
            (Some(g), true) if g.0.is_empty() => return Err(format!("--{} is an empty grid", p.flag())),
            (Some(g), true) if p.positive_real() => {
                if let Some(bad) = g.0.iter().find(|v| v.im != 0.0 || v.re <= 0.0) {
                    return Err(format!("--{} must be a positive real, got {bad}", p.flag()));
                }
            }
            _ => {}
        }
    }
    let mut out = vec![Point::default()];
    for &p in used {
        let grid = &p.grid(c).expect("checked above").0;
        out = out
            .iter()
            .flat_map(|base| {
                grid.iter().map(move |&v| {
                    let mut q = *base;
                    q.set(p, v);
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

fn sector_point(pt: &Point) -> Result<KzwPoint, String> {
    KzwPoint::new(pt.z, pt.w, pt.x * 2.0)
        .map_err(|_| format!("x = {} is outside the sector |arg x| < π/4 (x ≠ 0)", pt.x))
}

/// Domain errors and poles are usage errors; anything else is numerical.
fn classify(e: &Error) -> Status {
    if e.is_non_convergence() {
        Status::Numerical
    } else {
        Status::Usage
    }
}

/// Split per-point results into rows and stderr diagnostics. A usage error
/// anywhere aborts the command.
fn gather<T>(results: Vec<(Point, genbessel::Result<T>)>, used: &[Param]) -> Result<(Vec<(Point, T)>, Status), String> {
    let mut rows = Vec::new();
    let mut status = Status::Ok;
    for (pt, r) in results {
        match r {
            Ok(v) => rows.push((pt, v)),
            Err(e) if classify(&e) == Status::Usage => return Err(format!("at {}: {e}", pt.describe(used))),
            Err(e) => {
                eprintln!("error at {}: {e}", pt.describe(used));
                status = Status::Numerical;
            }
        }
    }
    Ok((rows, status))
}

#[derive(Serialize)]
struct EvalRow {
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
    x_re: f64,
    x_im: f64,
    value_re: f64,
    value_im: f64,
    err_est: f64,
    method: &'static str,
    work: usize,
    converged: bool,
}

impl EvalRow {
    fn new(pt: &Point, e: &Evaluation) -> Self {
        EvalRow {
            z_re: pt.z.re,
            z_im: pt.z.im,
            w_re: pt.w.re,
            w_im: pt.w.im,
            x_re: pt.x.re,
            x_im: pt.x.im,
            value_re: e.value.re,
            value_im: e.value.im,
            err_est: e.err_est,
            method: e.method.name(),
            work: e.work,
            converged: e.converged,
        }
    }
}

#[derive(Serialize)]
struct CompareRow {
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
    x_re: f64,
    x_im: f64,
    method: &'static str,
    value_re: Option<f64>,
    value_im: Option<f64>,
    err_est: Option<f64>,
    work: Option<usize>,
    converged: bool,
    error: Option<String>,
    max_rel_discrepancy: f64,
}

#[derive(Serialize)]
struct VerifyRow {
    identity: &'static str,
    z_re: Option<f64>,
    z_im: Option<f64>,
    w_re: Option<f64>,
    w_im: Option<f64>,
    x_re: Option<f64>,
    x_im: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    lhs_re: f64,
    lhs_im: f64,
    rhs_re: f64,
    rhs_im: f64,
    abs_residual: f64,
    rel_residual: f64,
    tolerance: f64,
    pass: bool,
}

impl From<&IdentityReport> for VerifyRow {
    fn from(r: &IdentityReport) -> Self {
        let p = &r.params;
        VerifyRow {
            identity: r.name,
            z_re: p.z.map(|v| v.re),
            z_im: p.z.map(|v| v.im),
            w_re: p.w.map(|v| v.re),
            w_im: p.w.map(|v| v.im),
            x_re: p.x.map(|v| v.re),
            x_im: p.x.map(|v| v.im),
            alpha: p.alpha,
            beta: p.beta,
            a: p.a,
            b: p.b,
            lhs_re: r.lhs.re,
            lhs_im: r.lhs.im,
            rhs_re: r.rhs.re,
            rhs_im: r.rhs.im,
            abs_residual: r.abs_residual,
            rel_residual: r.rel_residual,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    parameter: &'static str,
    param_re: f64,
    param_im: f64,
    value_re: f64,
    value_im: f64,
    err_est: f64,
    method: &'static str,
    converged: bool,
}

const KZW_PARAMS: [Param; 3] = [Param::Z, Param::W, Param::X];

fn evaluate(pts: &[Point], cfg: &EvalConfig) -> Result<Vec<(Point, genbessel::Result<Evaluation>)>, String> {
    let kzw: Vec<KzwPoint> = pts.iter().map(sector_point).collect::<Result<_, _>>()?;
    Ok(pts
        .par_iter()
        .zip(kzw.par_iter())
        .map(|(pt, k)| (*pt, eval_auto(k, cfg)))
        .collect())
}

fn converged_status(all: bool) -> Status {
    if all {
        Status::Ok
    } else {
        Status::Numerical
    }
}

fn eval(c: &Common, cfg: &EvalConfig) -> Result<(String, Status, usize), String> {
    let pts = points("eval", c, &KZW_PARAMS)?;
    let (evals, status) = gather(evaluate(&pts, cfg)?, &KZW_PARAMS)?;
    let status = status.max(converged_status(evals.iter().all(|(_, e)| e.converged)));
    let rows: Vec<EvalRow> = evals.iter().map(|(pt, e)| EvalRow::new(pt, e)).collect();
    Ok((render(&rows, c.format(), pts.len() == 1)?, status, pts.len()))
}

fn compare(c: &Common, cfg: &EvalConfig) -> Result<(String, Status, usize), String> {
    let pts = points("compare", c, &KZW_PARAMS)?;
    let kzw: Vec<KzwPoint> = pts.iter().map(sector_point).collect::<Result<_, _>>()?;
    let comparisons: Vec<_> = kzw.par_iter().map(|k| compare_methods(k, cfg)).collect();
    let mut status = Status::Ok;
    let mut rows = Vec::new();
    for (pt, cmp) in pts.iter().zip(&comparisons) {
        for o in &cmp.outcomes {
            let ok = o.result.as_ref().ok();
            if let Err(e) = &o.result {
                eprintln!("{} failed at {}: {e}", o.method, pt.describe(&KZW_PARAMS));
                status = Status::Numerical;
            }
            rows.push(CompareRow {
                z_re: pt.z.re,
                z_im: pt.z.im,
                w_re: pt.w.re,
                w_im: pt.w.im,
                x_re: pt.x.re,
                x_im: pt.x.im,
                method: o.method.name(),
                value_re: ok.map(|e| e.value.re),
                value_im: ok.map(|e| e.value.im),
                err_est: ok.map(|e| e.err_est),
                work: ok.map(|e| e.work),
                converged: ok.is_some_and(|e| e.converged),
                error: o.result.as_ref().err().map(|e| e.to_string()),
                max_rel_discrepancy: cmp.max_rel_discrepancy,
            });
        }
    }
    Ok((render(&rows, c.format(), false)?, status, pts.len()))
}

fn identity_params(identity: Identity) -> &'static [Param] {
    use Param::*;
    match identity {
        Identity::Reciprocity => &[Z, W, Alpha, X],
        Identity::RgGeneral => &[Z, W, A],
        Identity::RgModular | Identity::XiThm => &[Z, W, Alpha],
        Identity::KoshliakovW | Identity::XiCorollary => &[W, Alpha],
        Identity::Dde => &[Z, W, X],
        Identity::LemmaInteq => &[W, X],
    }
}

fn check(identity: Identity, pt: &Point, cfg: &EvalConfig) -> genbessel::Result<Vec<IdentityReport>> {
    let one = |r: genbessel::Result<IdentityReport>| r.map(|r| vec![r]);
    match identity {
        Identity::Reciprocity => {
            if pt.x.im != 0.0 {
                return Err(Error::Domain {
                    function: "verify reciprocity",
                    reason: format!("x must be real, got {}", pt.x),
                });
            }
            check_reciprocity(pt.z, pt.w, pt.alpha, pt.x.re, cfg).map(Vec::from)
        }
        Identity::RgGeneral => one(check_rg_general(pt.z, pt.w, pt.a, cfg)),
        Identity::RgModular => one(check_rg_modular(pt.z, pt.w, pt.alpha, cfg)),
        Identity::KoshliakovW => one(check_koshliakov_w(pt.w, pt.alpha, cfg)),
        Identity::Dde => one(check_dde(pt.z, pt.w, pt.x, cfg)),
        Identity::LemmaInteq => one(check_lemma_inteq(pt.w, pt.x, cfg)),
        Identity::XiThm => one(check_xi_theorem(pt.z, pt.w, pt.alpha, cfg)),
        Identity::XiCorollary => one(check_xi_corollary_z0(pt.w, pt.alpha, cfg)),
    }
}

fn verify(identity: Identity, c: &Common, cfg: &EvalConfig) -> Result<(String, Status, usize), String> {
    let used = identity_params(identity);
    let name = identity
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let pts = points(&format!("verify {name}"), c, used)?;
    let results: Vec<_> = pts.par_iter().map(|pt| (*pt, check(identity, pt, cfg))).collect();
    let (reports, status) = gather(results, used)?;
    let rows: Vec<VerifyRow> = reports
        .iter()
        .flat_map(|(_, rs)| rs.iter().map(VerifyRow::from))
        .collect();
    let status = status.max(converged_status(rows.iter().all(|r| r.pass)));
    Ok((render(&rows, c.format(), false)?, status, pts.len()))
}

fn table(c: &Common, cfg: &EvalConfig) -> Result<(String, Status, usize), String> {
    let swept: Vec<Param> = KZW_PARAMS
        .into_iter()
        .filter(|p| p.grid(c).is_some_and(|g| g.0.len() != 1))
        .collect();
    let pts = points("table", c, &KZW_PARAMS)?;
    let param = match swept[..] {
        [p] => p,
        [] => return Err("table needs one swept parameter among --z, --w, --x".into()),
        _ => return Err("table sweeps exactly one parameter".into()),
    };
    let (evals, status) = gather(evaluate(&pts, cfg)?, &KZW_PARAMS)?;
    let status = status.max(converged_status(evals.iter().all(|(_, e)| e.converged)));
    let rows: Vec<TableRow> = evals
        .iter()
        .map(|(pt, e)| {
            let v = match param {
                Param::Z => pt.z,
                Param::W => pt.w,
                _ => pt.x,
            };
            TableRow {
                parameter: param.flag(),
                param_re: v.re,
                param_im: v.im,
                value_re: e.value.re,
                value_im: e.value.im,
                err_est: e.err_est,
                method: e.method.name(),
                converged: e.converged,
            }
        })
        .collect();
    Ok((render(&rows, c.format(), false)?, status, pts.len()))
}

/// Run a parsed command: rendered stdout text and exit status, or a usage
/// error message.
pub fn run(command: Command) -> Result<(String, Status), String> {
    let started = Instant::now();
    let (label, common) = match &command {
        Command::Eval(c) => ("eval", c),
        Command::Compare(c) => ("compare", c),
        Command::Verify { common, .. } => ("verify", common),
        Command::Table(c) => ("table", c),
    };
    let (cfg, overrides) = config(common)?;
    let (text, status, n) = match &command {
        Command::Eval(c) => eval(c, &cfg)?,
        Command::Compare(c) => compare(c, &cfg)?,
        Command::Verify { identity, common } => verify(*identity, common, &cfg)?,
        Command::Table(c) => table(c, &cfg)?,
    };
    if common.verbose {
        let o = if overrides.is_empty() {
            "none".to_string()
        } else {
            overrides.join(" ")
        };
        eprintln!(
            "# {label}: {n} point(s); rel_tol={:e} abs_tol={:e} max_series_terms={} (overrides: {o}); threads={}; {:.3}s",
            cfg.rel_tol,
            cfg.abs_tol,
            cfg.max_series_terms,
            rayon::current_num_threads(),
            started.elapsed().as_secs_f64()
        );
    }
    Ok((text, status))
}
