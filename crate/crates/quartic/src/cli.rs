//! Command-line grammar and dispatch.
//!
//! Exit codes: 0 success, 1 a check failed (witness JSON on stdout), 2 usage
//! error. Relative `--output` paths are resolved against `QUARTIC_OUT_DIR`
//! when it is set.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quartic_core::alpha_beta::{critical_line_certify, three_term_check, Family};
use quartic_core::coeffs::{d_coeff, d_row_by, nice_a, Method};
use quartic_core::concavity::{
    classify, inf_lc_probe, log_concavity_violation, r_factor_certify_iterated,
};
use quartic_core::identities::{check_identity, IdentityId};
use quartic_core::kernel::{binomial_row, Rat};
use quartic_core::qanalog::{
    diagonal_lowest_degree, gaussian_binomial, gaussian_depth2_scan, gaussian_row,
    quantum_binomial, quantum_conjecture_probe, QFamily,
};
use quartic_core::quadrature::{landen_q1_check, tie_back_error};
use quartic_core::report::{Report, Witness};
use quartic_core::tree::{build_tree, piecewise_formula, verify_piecewise};
use quartic_core::valuation::{
    b_recurrence_check, block_structure, composition, default_reduction_window, nu2_a_formula,
    nu2_a_table, nup_series, predicted_block, reduce_sequence, Nu2Method,
};

use crate::emit::{emit, rat_cell, report_json, Format, FormatMismatch, Payload, Table};
use crate::sweep::{fisk_sweep, par_map, shift_sweep};

/// `p/q` or an integer.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| format!("`{s}` is not a rational `p/q`"))
}

/// Environment variable naming the directory for relative `--output` paths.
pub const OUT_DIR_VAR: &str = "QUARTIC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "quartic",
    version,
    about = "Exact experiments on the coefficients of a quartic integral"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients d(l, m).
    #[command(subcommand)]
    Dlm(DlmCmd),
    /// Identity, valuation and tree sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// 2-adic and p-adic valuations of A(l, m).
    #[command(subcommand)]
    Valuation(ValuationCmd),
    /// Decision trees and piecewise valuation formulas.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Unimodality and log-concavity.
    #[command(subcommand)]
    Concavity(ConcavityCmd),
    /// Gaussian and quantum binomials.
    #[command(subcommand)]
    Q(QCmd),
    /// Numerical checks of the integral.
    #[command(subcommand)]
    Integral(IntegralCmd),
    /// Root location of the alpha/beta polynomials.
    #[command(subcommand)]
    Roots(RootsCmd),
}

#[derive(Debug, Subcommand)]
pub enum DlmCmd {
    /// Triangle of d(l, m) for m <= m_max.
    Table {
        #[arg(long)]
        m_max: u64,
        #[arg(long, default_value = "single")]
        method: Method,
    },
    /// A single coefficient.
    Value {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "single")]
        method: Method,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Check the named identities over their ranges.
    Identities {
        /// Comma-separated identity names (default: all).
        #[arg(long, value_delimiter = ',')]
        ids: Vec<IdentityId>,
        #[arg(long, default_value_t = 0)]
        m_min: u64,
        /// Upper end of the range (default: per identity).
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// Cross-check valuation routes, oddness of B and its recurrence.
    Valuations {
        /// Direct and digit-sum valuations compared for 1 <= l <= m <= m_max.
        #[arg(long, default_value_t = 300)]
        m_max: u64,
        /// B(l, m) odd for m <= b_max.
        #[arg(long, default_value_t = 200)]
        b_max: u64,
        /// Backward recurrence for m <= rec_max.
        #[arg(long, default_value_t = 100)]
        rec_max: u64,
    },
    /// Build trees and check them against the piecewise formulas.
    Trees {
        #[arg(long, default_value_t = 40)]
        l_max: u64,
        #[arg(long, default_value_t = 256)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        probe: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LRange {
    /// A single index.
    #[arg(long)]
    pub l: Option<u64>,
    /// Every index 1..=l_max.
    #[arg(long)]
    pub l_max: Option<u64>,
}

impl LRange {
    fn values(&self) -> Vec<u64> {
        match (self.l, self.l_max) {
            (Some(l), _) => vec![l],
            (None, Some(n)) => (1..=n).collect(),
            (None, None) => Vec::new(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ValuationCmd {
    /// nu_p(A(l, m)) for m <= m_max, with the error nu - m/(p-1).
    Series {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m_max: u64,
    },
    /// Block length of the 2-adic valuation sequence.
    Blocks {
        #[command(flatten)]
        range: LRange,
        /// Window, in multiples of the predicted block length.
        #[arg(long, default_value_t = 256)]
        window_factor: usize,
        #[arg(long, default_value = "formula")]
        method: Nu2Method,
    },
    /// Reduction cycles against the binary composition of l.
    Reduce {
        #[command(flatten)]
        range: LRange,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value = "formula")]
        method: Nu2Method,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreeCmd {
    /// Decision tree for the 2-adic valuation of one column.
    Build {
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 64)]
        probe: usize,
        #[arg(long, default_value = "formula")]
        method: Nu2Method,
    },
    /// Closed piecewise formula for one column.
    Formula {
        #[arg(long)]
        l: u64,
    },
    /// Check the formula and tree shape against direct valuations.
    Verify {
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 256)]
        count: usize,
        #[arg(long, default_value = "formula")]
        method: Nu2Method,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SeqSource {
    /// Comma-separated rationals, e.g. `1,3,3,1` or `1/2,1`.
    #[arg(long, value_delimiter = ',', value_parser = parse_rat)]
    pub seq: Option<Vec<Rat>>,
    /// The row d(0, m), ..., d(m, m).
    #[arg(long)]
    pub d_row: Option<u64>,
    /// Coefficients of the polynomial A with A(x + 1) = P_m(x).
    #[arg(long)]
    pub nice_a: Option<u64>,
}

impl SeqSource {
    fn values(&self) -> Vec<Rat> {
        if let Some(s) = &self.seq {
            s.clone()
        } else if let Some(m) = self.d_row {
            d_row_by(m, Method::Single)
        } else if let Some(m) = self.nice_a {
            nice_a(m).into_coeffs()
        } else {
            Vec::new()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ConcavityCmd {
    /// Unimodality and log-concavity of a sequence.
    Classify {
        #[command(flatten)]
        source: SeqSource,
    },
    /// Iterate the operator L and look for negative entries.
    Probe {
        #[command(flatten)]
        source: SeqSource,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// r-factor certificates for Pascal rows 2..=n_max.
    Pascal {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        #[arg(long, default_value_t = 8)]
        max_iter: usize,
    },
    /// L on random real-rooted polynomials.
    Fisk {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Unimodality of A(x + 1) for random nondecreasing A.
    Shift {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum QCmd {
    /// Gaussian binomial coefficients.
    Gaussian {
        #[arg(long)]
        n: u64,
        /// Single entry; the whole row when omitted.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Quantum binomial coefficients.
    Quantum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Iterate L on a row, column or diagonal family.
    Probe {
        /// `row:N`, `column:K` or `diagonal:N,U,V`.
        #[arg(long)]
        family: QFamily,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Largest n (columns) or m (diagonals).
        #[arg(long, default_value_t = 12)]
        bound: u64,
    },
    /// Smallest negative coefficient after two applications of L to Gaussian rows.
    Witness {
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// Lowest term of <n+u, v>^2 - <n+2u, 2v> for u > v.
    Lowdeg {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        u: u64,
        #[arg(long)]
        v: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum IntegralCmd {
    /// Closed form against quadrature, plus the Landen check.
    Check {
        /// Parameter a > -1 as `p/q`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        a: Rat,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Largest accepted relative error against the closed form.
        #[arg(long, default_value_t = 1e-10)]
        max_error: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum RootsCmd {
    /// Certify roots on the critical line; with --l-max also the three-term recurrence.
    Certify {
        #[command(flatten)]
        range: LRange,
        /// Restrict to one family.
        #[arg(long)]
        family: Option<Family>,
    },
}

/// Result of a command: what to print, and the failed checks.
pub struct Outcome {
    pub payload: Payload,
    pub failures: Vec<Value>,
}

impl Outcome {
    fn ok(payload: Payload) -> Self {
        Outcome {
            payload,
            failures: Vec::new(),
        }
    }

    fn reports(reports: Vec<Report>) -> Self {
        let failures = reports
            .iter()
            .filter(|r| !r.passed)
            .map(report_json)
            .collect();
        Outcome {
            payload: Payload::Reports(reports),
            failures,
        }
    }
}

fn progress(msg: &str) {
    eprintln!("quartic: {msg}");
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let jobs = cli.jobs;
    if jobs == Some(0) {
        bail!(quartic_core::Error::InvalidArgument(
            "--jobs must be at least 1".into()
        ));
    }
    match &cli.command {
        Command::Dlm(c) => dlm(c, jobs),
        Command::Verify(c) => verify(c, jobs),
        Command::Valuation(c) => valuation(c, jobs),
        Command::Tree(c) => tree(c),
        Command::Concavity(c) => concavity(c, jobs),
        Command::Q(c) => q(c, jobs),
        Command::Integral(c) => integral(c),
        Command::Roots(c) => roots(c, jobs),
    }
}

fn dlm(c: &DlmCmd, jobs: Option<usize>) -> Result<Outcome> {
    let mut t = Table::new(&["m", "l", "d"]);
    match *c {
        DlmCmd::Table { m_max, method } => {
            let ms: Vec<u64> = (0..=m_max).collect();
            let rows = par_map(jobs, &ms, |&m| d_row_by(m, method))?;
            for (m, row) in rows.iter().enumerate() {
                for (l, d) in row.iter().enumerate() {
                    t.push([m.to_string(), l.to_string(), rat_cell(d)]);
                }
            }
        }
        DlmCmd::Value { l, m, method } => {
            let d = d_coeff(l, m, method)?;
            t.push([m.to_string(), l.to_string(), rat_cell(&d)]);
        }
    }
    Ok(Outcome::ok(Payload::Table(t)))
}

/// Direct against digit-sum valuations, plus the closed form at `l = 1`.
pub fn valuation_agreement(m_max: u64) -> Report {
    let params = format!("1<=l<=m<={m_max}");
    let table = nu2_a_table(m_max, m_max);
    for l in 1..=m_max {
        for m in l..=m_max {
            let direct = table[l as usize][(m - l) as usize];
            let formula = nu2_a_formula(l, m);
            if direct != formula {
                return Report::fail(
                    "nu2_routes",
                    params,
                    Witness::new(format!("l={l} m={m}"), direct, formula),
                );
            }
            if l == 1 {
                let closed = u64::from((m * (m + 1)).trailing_zeros()) + 1;
                if direct != closed {
                    return Report::fail(
                        "nu2_routes",
                        params,
                        Witness::new(format!("l=1 m={m}"), direct, closed),
                    );
                }
            }
        }
    }
    Report::pass("nu2_routes", params)
}

/// `B(l, m)` integral and odd for `1 <= l <= m <= b_max`.
pub fn b_oddness(b_max: u64, jobs: Option<usize>) -> Result<Report> {
    let ms: Vec<u64> = (1..=b_max).collect();
    let rows = par_map(jobs, &ms, |&m| {
        quartic_core::valuation::b_row(m).map(|_| ())
    })?;
    let params = format!("1<=l<=m<={b_max}");
    for r in rows {
        if let Err(e) = r {
            return Ok(Report::fail(
                "b_odd",
                params,
                Witness::new("B", e, "odd integer"),
            ));
        }
    }
    Ok(Report::pass("b_odd", params))
}

/// Piecewise formula against data and tree shape against the theorem counts.
pub fn tree_reports(l: u64, count: usize, probe: usize) -> Result<Vec<Report>> {
    let formula = verify_piecewise(l, count, Nu2Method::Formula)?;
    let shape = build_tree(l, probe, Nu2Method::Formula)?.theorem_check();
    Ok(vec![formula, shape])
}

fn verify(c: &VerifyCmd, jobs: Option<usize>) -> Result<Outcome> {
    match c {
        VerifyCmd::Identities { ids, m_min, m_max } => {
            let ids: Vec<IdentityId> = if ids.is_empty() {
                IdentityId::ALL.to_vec()
            } else {
                ids.clone()
            };
            for id in &ids {
                let hi = m_max.unwrap_or(id.default_max_m());
                if hi > id.max_m() || *m_min > hi {
                    bail!(quartic_core::Error::InvalidArgument(format!(
                        "{id}: range {m_min}..={hi} outside 0..={}",
                        id.max_m()
                    )));
                }
            }
            progress(&format!("checking {} identities", ids.len()));
            let reports = par_map(jobs, &ids, |id| {
                check_identity(*id, *m_min, m_max.unwrap_or(id.default_max_m()))
            })?;
            Ok(Outcome::reports(
                reports.into_iter().collect::<Result<_, _>>()?,
            ))
        }
        VerifyCmd::Valuations {
            m_max,
            b_max,
            rec_max,
        } => {
            progress("checking valuations");
            let mut reports = vec![valuation_agreement(*m_max), b_oddness(*b_max, jobs)?];
            reports.push(b_recurrence_check(*rec_max)?);
            Ok(Outcome::reports(reports))
        }
        VerifyCmd::Trees {
            l_max,
            count,
            probe,
        } => {
            progress(&format!("checking trees for l <= {l_max}"));
            let ls: Vec<u64> = (1..=*l_max).collect();
            let per_l = par_map(jobs, &ls, |&l| tree_reports(l, *count, *probe))?;
            let mut reports = Vec::new();
            for r in per_l {
                reports.extend(r?);
            }
            Ok(Outcome::reports(reports))
        }
    }
}

fn valuation(c: &ValuationCmd, jobs: Option<usize>) -> Result<Outcome> {
    match c {
        ValuationCmd::Series { p, l, m_max } => {
            Ok(Outcome::ok(Payload::Series(nup_series(*p, *l, *m_max)?)))
        }
        ValuationCmd::Blocks {
            range,
            window_factor,
            method,
        } => {
            let ls = range.values();
            let out = par_map(jobs, &ls, |&l| {
                let window = *window_factor * predicted_block(l.max(1)) as usize;
                block_structure(l, window, *method)
            })?;
            let mut reports = Vec::new();
            for b in out {
                let b = b?;
                let params = format!("l={} window={}", b.l, b.verified_window);
                let r = if b.confirmed() {
                    Report::pass("blocks", params)
                } else {
                    Report::fail(
                        "blocks",
                        params,
                        Witness::new("block length", b.detected_s, b.predicted_s),
                    )
                };
                reports.push(
                    r.with_detail("s", b.predicted_s)
                        .with_detail("detected", b.detected_s),
                );
            }
            Ok(Outcome::reports(reports))
        }
        ValuationCmd::Reduce {
            range,
            window,
            method,
        } => {
            let ls = range.values();
            let out = par_map(jobs, &ls, |&l| -> quartic_core::Result<Report> {
                let w = window.unwrap_or_else(|| default_reduction_window(l));
                let trace = reduce_sequence(l, w, *method)?;
                let comp = composition(l)?;
                let params = format!("l={l}");
                let fmt = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                Ok(if trace.omega == comp {
                    Report::pass("reduction", params).with_detail("omega", fmt(&trace.omega))
                } else {
                    Report::fail(
                        "reduction",
                        params,
                        Witness::new("omega", fmt(&trace.omega), fmt(&comp)),
                    )
                })
            })?;
            Ok(Outcome::reports(out.into_iter().collect::<Result<_, _>>()?))
        }
    }
}

fn tree(c: &TreeCmd) -> Result<Outcome> {
    match *c {
        TreeCmd::Build { l, probe, method } => {
            Ok(Outcome::ok(Payload::Tree(build_tree(l, probe, method)?)))
        }
        TreeCmd::Formula { l } => Ok(Outcome::ok(Payload::Formula(piecewise_formula(l)?))),
        TreeCmd::Verify { l, count, method } => {
            let formula = verify_piecewise(l, count, method)?;
            let shape = build_tree(l, 64, method)?.theorem_check();
            Ok(Outcome::reports(vec![formula, shape]))
        }
    }
}

fn concavity(c: &ConcavityCmd, jobs: Option<usize>) -> Result<Outcome> {
    match c {
        ConcavityCmd::Classify { source } => {
            let s = source.values();
            let cl = classify(&s);
            let mut t = Table::new(&["length", "unimodal", "log_concave", "violation"]);
            t.push([
                s.len().to_string(),
                cl.unimodal.to_string(),
                cl.log_concave
                    .map_or_else(|| "undefined".into(), |b| b.to_string()),
                log_concavity_violation(&s)
                    .map(|j| j.to_string())
                    .unwrap_or_default(),
            ]);
            Ok(Outcome::ok(Payload::Table(t)))
        }
        ConcavityCmd::Probe { source, depth } => Ok(Outcome::reports(vec![inf_lc_probe(
            &source.values(),
            *depth,
        )?])),
        ConcavityCmd::Pascal { n_max, max_iter } => {
            let ns: Vec<u64> = (2..=*n_max).collect();
            let its = par_map(jobs, &ns, |&n| {
                let row: Vec<Rat> = binomial_row(n).into_iter().map(Rat::from_integer).collect();
                r_factor_certify_iterated(&row, *max_iter)
            })?;
            let params = format!("2<=n<={n_max} iterations<={max_iter}");
            let mut worst = 0;
            for (n, it) in ns.iter().zip(its) {
                match it? {
                    Some(i) => worst = worst.max(i),
                    None => {
                        let r = Report::fail(
                            "pascal_r_factor",
                            params,
                            Witness::new(format!("n={n}"), "uncertified", "certified"),
                        );
                        return Ok(Outcome::reports(vec![r]));
                    }
                }
            }
            Ok(Outcome::reports(vec![Report::pass(
                "pascal_r_factor",
                params,
            )
            .with_detail("max_iterations", worst)]))
        }
        ConcavityCmd::Fisk {
            samples,
            max_degree,
            seed,
        } => {
            progress(&format!("fisk sweep over {samples} samples"));
            Ok(Outcome::reports(vec![fisk_sweep(
                *samples,
                *max_degree,
                *seed,
                jobs,
            )?]))
        }
        ConcavityCmd::Shift {
            samples,
            max_len,
            seed,
        } => {
            progress(&format!("shift sweep over {samples} samples"));
            Ok(Outcome::reports(vec![shift_sweep(
                *samples, *max_len, *seed, jobs,
            )?]))
        }
    }
}

fn q(c: &QCmd, jobs: Option<usize>) -> Result<Outcome> {
    match *c {
        QCmd::Gaussian { n, k } => {
            let mut t = Table::new(&["n", "k", "poly"]);
            match k {
                Some(k) => t.push([
                    n.to_string(),
                    k.to_string(),
                    gaussian_binomial(n as i64, k as i64).to_string(),
                ]),
                None => {
                    for (k, g) in gaussian_row(n).iter().enumerate() {
                        t.push([n.to_string(), k.to_string(), g.to_string()]);
                    }
                }
            }
            Ok(Outcome::ok(Payload::Table(t)))
        }
        QCmd::Quantum { n, k } => {
            let mut t = Table::new(&["n", "k", "poly"]);
            let ks: Vec<u64> = k.map_or_else(|| (0..=n).collect(), |k| vec![k]);
            let polys = par_map(jobs, &ks, |&k| quantum_binomial(n as i64, k as i64))?;
            for (k, p) in ks.iter().zip(polys) {
                t.push([n.to_string(), k.to_string(), p.to_string()]);
            }
            Ok(Outcome::ok(Payload::Table(t)))
        }
        QCmd::Probe {
            family,
            depth,
            bound,
        } => Ok(Outcome::reports(vec![quantum_conjecture_probe(
            family, depth, bound,
        )?])),
        QCmd::Witness { n_max } => {
            if n_max < 1 {
                bail!(quartic_core::Error::Domain("n_max must be at least 1"));
            }
            let mut t = Table::new(&["n", "k", "depth", "exponent", "coefficient"]);
            match gaussian_depth2_scan(n_max) {
                Some(w) => {
                    t.push(
                        [w.n, w.k, w.depth as u64]
                            .map(|x| x.to_string())
                            .into_iter()
                            .chain([w.exponent.to_string(), w.coefficient.to_string()]),
                    );
                    Ok(Outcome::ok(Payload::Table(t)))
                }
                None => Ok(Outcome {
                    payload: Payload::Table(t),
                    failures: vec![
                        json!({"id": "gaussian_depth2", "passed": false, "range": format!("n<={n_max}"), "witness": null, "details": {"result": format!("no witness <= {n_max}")}}),
                    ],
                }),
            }
        }
        QCmd::Lowdeg { n, u, v } => {
            let lt = diagonal_lowest_degree(n, u, v)?;
            let mut t = Table::new(&["n", "u", "v", "exponent", "coefficient"]);
            t.push([
                n.to_string(),
                u.to_string(),
                v.to_string(),
                lt.exponent.to_string(),
                lt.coefficient.to_string(),
            ]);
            Ok(Outcome::ok(Payload::Table(t)))
        }
    }
}

fn integral(c: &IntegralCmd) -> Result<Outcome> {
    let IntegralCmd::Check {
        a,
        m,
        tol,
        max_error,
    } = c;
    let err = tie_back_error(a, *m, *tol)?;
    let params = format!("a={a} m={m} tol={tol:e}");
    let tie = if err <= *max_error {
        Report::pass("tie_back", params)
    } else {
        Report::fail(
            "tie_back",
            params,
            Witness::new("relative error", err, format!("<= {max_error:e}")),
        )
    }
    .with_detail("relative_error", format!("{err:e}"));
    let landen = landen_q1_check(a, *m, tol.max(1e-11))?;
    Ok(Outcome::reports(vec![tie, landen]))
}

fn roots(c: &RootsCmd, jobs: Option<usize>) -> Result<Outcome> {
    let RootsCmd::Certify { range, family } = c;
    let families: Vec<Family> =
        family.map_or_else(|| vec![Family::Alpha, Family::Beta], |f| vec![f]);
    let mut grid = Vec::new();
    for f in &families {
        for l in range.values() {
            if *f == Family::Beta && l < 2 && range.l.is_none() {
                continue;
            }
            grid.push((*f, l));
        }
    }
    let out = par_map(jobs, &grid, |&(f, l)| {
        critical_line_certify(l, f).map(|ok| {
            let params = format!("{f} l={l}");
            if ok {
                Report::pass("critical_line", params)
            } else {
                Report::fail(
                    "critical_line",
                    params,
                    Witness::new("roots", "off the line", "on Re m = -1/2"),
                )
            }
        })
    })?;
    let mut reports: Vec<Report> = out.into_iter().collect::<Result<_, _>>()?;
    if let Some(l_max) = range.l_max {
        if l_max >= 2 {
            reports.push(three_term_check(l_max)?);
        }
    }
    Ok(Outcome::reports(reports))
}

/// Map core errors to exit codes: bad input is a usage error (2), a broken
/// invariant is a failed check (1).
fn is_usage_error(e: &anyhow::Error) -> bool {
    use quartic_core::Error as E;
    if e.downcast_ref::<FormatMismatch>().is_some() {
        return true;
    }
    match e.downcast_ref::<E>() {
        Some(
            E::TheoremViolation(_)
            | E::RouteMismatch(_)
            | E::TreeUndecided { .. }
            | E::WindowExhausted { .. }
            | E::NoConvergence { .. },
        ) => false,
        Some(_) => true,
        None => e.downcast_ref::<rayon::ThreadPoolBuildError>().is_some(),
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(path: &Path, body: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

/// Parse, run and print; returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) if is_usage_error(&e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return 2;
        }
        Err(e) => {
            let w = json!({"error": format!("{e:#}")});
            let _ = writeln!(stdout, "{w}");
            let _ = writeln!(stderr, "error: {e:#}");
            return 1;
        }
    };
    let body = match emit(&outcome.payload, cli.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let witness_in_body = cli.output.is_none()
        && cli.format == Format::Json
        && matches!(outcome.payload, Payload::Reports(_));
    match &cli.output {
        Some(p) => {
            if let Err(e) = write_output(&resolve_output(p), &body) {
                let _ = writeln!(stderr, "error: {e:#}");
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    if outcome.failures.is_empty() {
        return 0;
    }
    if !witness_in_body {
        let _ = writeln!(stdout, "{}", json!({"failures": outcome.failures}));
    }
    1
}
