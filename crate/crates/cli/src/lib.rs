//! Command-line front end: parameter reports, kernel grids, convergence
//! tables, CD checks, gap tables and sampling runs.

pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pfgas::finite_kernel::{cd_residual, corr_finite};
use pfgas::gap::{gap_constants, gap_table, log_gap, Region};
use pfgas::limit_kernels::{corr_limit_c, corr_limit_r, corr_limit_w, reference_kernel, BulkParams, ReferenceKernel};
use pfgas::model::{make_params, ModelParams};
use pfgas::sampler::{annulus_mass, im_symmetry_statistic, radial_hist, sample_chain, ChainConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

pub use table::{Cell, Format, Table};

const MAX_NODES: usize = 1_000_000;
const CD_DISK_RADIUS: f64 = 2.0;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(pfgas::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use pfgas::Error::*;
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(Domain(_) | Validation(_) | Shape(_) | Size(_)) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<pfgas::Error> for CliError {
    fn from(e: pfgas::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "pfgas",
    version,
    about = "Edge statistics of the induced symplectic Ginibre ensemble"
)]
pub struct Cli {
    /// Worker threads; defaults to PFGAS_THREADS, then to the core count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived model parameters and droplet radii.
    Params(NRho),
    /// Correlation functions or reference kernels on a grid.
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Sup-norm distance between finite-N and limiting correlations.
    Converge(ConvergeArgs),
    /// Christoffel-Darboux residuals at random point pairs.
    CdCheck(CdArgs),
    /// Exact log gap probability.
    Gap(GapArgs),
    /// Asymptotic gap constants C1, C1~ and C0.
    GapConstants(RhoList),
    /// Exact gaps against their asymptotics, for every region.
    GapTable(GapTableArgs),
    /// Metropolis sampling of the Gibbs measure.
    Sample(SampleArgs),
}

#[derive(Args, Debug)]
struct NRho {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    rho: f64,
}

/// Base angle, either directly or through `theta = sqrt(2) rho t / N`.
#[derive(Args, Debug)]
#[command(group(ArgGroup::new("angle").required(true).args(["theta", "t"])))]
struct Angle {
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
}

impl Angle {
    fn theta(&self, p: &ModelParams) -> f64 {
        match (self.theta, self.t) {
            (Some(theta), _) => theta,
            (None, Some(t)) => std::f64::consts::SQRT_2 * p.rho * t / p.n as f64,
            (None, None) => unreachable!("clap enforces the angle group"),
        }
    }
}

#[derive(Args, Debug)]
struct GridArgs {
    /// re0,re1,nre,im0,im1,nim
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    grid: Grid,
    /// Extra fixed points z2,...,zk for k-point functions, e.g. 0.1+0.5i.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = parse_complex)]
    points: Vec<Complex64>,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

impl GridArgs {
    fn fixed_points(&self) -> CliResult<&[Complex64]> {
        if self.k == 0 || self.points.len() != self.k - 1 {
            return Err(CliError::Usage(format!(
                "--k {} needs exactly {} extra points, got {}",
                self.k,
                self.k.saturating_sub(1),
                self.points.len()
            )));
        }
        Ok(&self.points)
    }
}

#[derive(Subcommand, Debug)]
enum KernelCommand {
    /// `R_{N,k}` at the inner edge, first point on the grid.
    Finite {
        #[command(flatten)]
        nrho: NRho,
        #[command(flatten)]
        angle: Angle,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Limiting correlations (c, r, w) or reference kernels (chiral, sine
    /// take the grid point (x, y) as their two real arguments; exp pairs the
    /// grid point with the first --points entry, default 0).
    Limit {
        #[arg(long, value_enum)]
        which: LimitKind,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LimitKind {
    C,
    R,
    W,
    Chiral,
    Sine,
    Exp,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long)]
    rho: f64,
    #[command(flatten)]
    angle: Angle,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args, Debug)]
struct CdArgs {
    #[command(flatten)]
    nrho: NRho,
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GapArgs {
    #[command(flatten)]
    nrho: NRho,
    #[arg(long, value_parser = parse_region)]
    region: Region,
}

#[derive(Args, Debug)]
struct RhoList {
    #[arg(long, value_delimiter = ',', required = true)]
    rho_list: Vec<f64>,
}

#[derive(Args, Debug)]
struct GapTableArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    rhos: RhoList,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    nrho: NRho,
    /// Sweeps of N single-site proposals, burn-in included.
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    burn_in: usize,
    /// Proposal step; defaults to gamma_N / 2.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    thin: usize,
    /// Emit a radial histogram with this many bins instead of the points.
    #[arg(long)]
    hist: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Grid {
    re: (f64, f64, usize),
    im: (f64, f64, usize),
}

impl Grid {
    fn axis(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    }

    /// Row-major nodes: imaginary part outer, real part inner.
    fn nodes(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.re.2 * self.im.2);
        for j in 0..self.im.2 {
            for i in 0..self.re.2 {
                out.push(Complex64::new(
                    Grid::axis(self.re.0, self.re.1, self.re.2, i),
                    Grid::axis(self.im.0, self.im.1, self.im.2, j),
                ));
            }
        }
        out
    }

    fn describe(&self) -> serde_json::Value {
        let axis = |a: (f64, f64, usize)| json!({"start": a.0, "end": a.1, "count": a.2});
        json!({"re": axis(self.re), "im": axis(self.im), "order": "row-major, im outer"})
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err("expected re0,re1,nre,im0,im1,nim".to_string());
    }
    let real = |k: usize| parts[k].parse::<f64>().map_err(|e| format!("{}: {e}", parts[k]));
    let count = |k: usize| parts[k].parse::<usize>().map_err(|e| format!("{}: {e}", parts[k]));
    let g = Grid {
        re: (real(0)?, real(1)?, count(2)?),
        im: (real(3)?, real(4)?, count(5)?),
    };
    if g.re.2 == 0 || g.im.2 == 0 {
        return Err("grid counts must be positive".to_string());
    }
    if ![g.re.0, g.re.1, g.im.0, g.im.1].iter().all(|x| x.is_finite()) {
        return Err("grid bounds must be finite".to_string());
    }
    if g.re.2.saturating_mul(g.im.2) > MAX_NODES {
        return Err(format!("grid has more than {MAX_NODES} nodes"));
    }
    Ok(g)
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    Complex64::from_str(s.trim()).map_err(|_| format!("cannot parse complex number '{s}'"))
}

fn parse_region(s: &str) -> Result<Region, String> {
    Region::from_str(s).map_err(|e| e.to_string())
}

fn thread_count(flag: Option<usize>) -> CliResult<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("PFGAS_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("PFGAS_THREADS must be a positive integer, got '{v}'"))),
        Err(_) => Ok(0),
    }
}

/// Evaluates `f` at every node in parallel, keeping node order.
fn eval_nodes<T: Send>(nodes: &[Complex64], f: impl Fn(Complex64) -> pfgas::Result<T> + Sync) -> CliResult<Vec<T>> {
    Ok(nodes.par_iter().map(|&z| f(z)).collect::<pfgas::Result<Vec<T>>>()?)
}

fn with_first(z: Complex64, rest: &[Complex64]) -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(rest.len() + 1);
    pts.push(z);
    pts.extend_from_slice(rest);
    pts
}

fn params_table(a: &NRho) -> CliResult<Table> {
    let p = make_params(a.n, a.rho)?;
    let mut t = Table::new(
        "params",
        &["n", "rho", "a_n", "b_n", "a_n_n", "b_n_n", "gamma_n", "r1", "r2"],
    );
    t.param("n", a.n).param("rho", a.rho);
    t.push(vec![
        p.n.into(),
        p.rho.into(),
        p.a_n.into(),
        p.b_n.into(),
        p.a_n_n.into(),
        p.b_n_n.into(),
        p.gamma_n.into(),
        p.r1.into(),
        p.r2.into(),
    ]);
    Ok(t)
}

fn grid_table(command: &str, g: &GridArgs, nodes: &[Complex64], values: Vec<Complex64>, complex: bool) -> Table {
    let cols: &[&str] = if complex {
        &["re", "im", "value_re", "value_im"]
    } else {
        &["re", "im", "value"]
    };
    let mut t = Table::new(command, cols);
    t.axes = g.grid.describe();
    t.param("k", g.k);
    t.param(
        "points",
        g.points.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
    );
    for (z, v) in nodes.iter().zip(values) {
        let mut row = vec![z.re.into(), z.im.into(), v.re.into()];
        if complex {
            row.push(v.im.into());
        }
        t.push(row);
    }
    t
}

fn kernel_table(cmd: &KernelCommand) -> CliResult<Table> {
    match cmd {
        KernelCommand::Finite { nrho, angle, grid } => {
            let p = make_params(nrho.n, nrho.rho)?;
            let theta = angle.theta(&p);
            let rest = grid.fixed_points()?;
            let nodes = grid.grid.nodes();
            let vals = eval_nodes(&nodes, |z| {
                corr_finite(&p, theta, &with_first(z, rest)).map(|v| Complex64::new(v, 0.0))
            })?;
            let mut t = grid_table("kernel finite", grid, &nodes, vals, false);
            t.param("n", nrho.n).param("rho", nrho.rho).param("theta", theta);
            Ok(t)
        }
        KernelCommand::Limit { which, rho, t, grid } => {
            let nodes = grid.grid.nodes();
            let bulk = || -> CliResult<BulkParams> {
                let rho = rho.ok_or_else(|| CliError::Usage("--rho is required for this kernel".to_string()))?;
                Ok(BulkParams::new(rho, *t)?)
            };
            let real = |v: f64| Complex64::new(v, 0.0);
            let (vals, complex) = match which {
                LimitKind::C | LimitKind::R => {
                    let bp = bulk()?;
                    let rest = grid.fixed_points()?;
                    let f = |z: Complex64| {
                        let pts = with_first(z, rest);
                        if *which == LimitKind::C {
                            corr_limit_c(&bp, &pts)
                        } else {
                            corr_limit_r(&bp, &pts)
                        }
                    };
                    (eval_nodes(&nodes, |z| f(z).map(real))?, false)
                }
                LimitKind::W => {
                    let rest = grid.fixed_points()?;
                    (
                        eval_nodes(&nodes, |z| corr_limit_w(&with_first(z, rest)).map(real))?,
                        false,
                    )
                }
                LimitKind::Chiral | LimitKind::Sine => {
                    let kind = if *which == LimitKind::Chiral {
                        ReferenceKernel::Chiral
                    } else {
                        ReferenceKernel::Sine
                    };
                    (
                        eval_nodes(&nodes, |z| reference_kernel(kind, real(z.re), real(z.im)))?,
                        false,
                    )
                }
                LimitKind::Exp => {
                    let w = grid.points.first().copied().unwrap_or_default();
                    (
                        eval_nodes(&nodes, |z| reference_kernel(ReferenceKernel::Exp, z, w))?,
                        true,
                    )
                }
            };
            let mut table = grid_table("kernel limit", grid, &nodes, vals, complex);
            table.param("which", format!("{which:?}").to_lowercase()).param("t", *t);
            if let Some(r) = rho {
                table.param("rho", *r);
            }
            Ok(table)
        }
    }
}

fn converge_table(a: &ConvergeArgs) -> CliResult<Table> {
    let rest = a.grid.fixed_points()?;
    let nodes = a.grid.grid.nodes();
    let (limit_kind, bp) = match a.angle.t {
        Some(t) => ("r", BulkParams::new(a.rho, t)?),
        None => ("c", BulkParams::new(a.rho, 0.0)?),
    };
    let limits = eval_nodes(&nodes, |z| {
        let pts = with_first(z, rest);
        if limit_kind == "r" {
            corr_limit_r(&bp, &pts)
        } else {
            corr_limit_c(&bp, &pts)
        }
    })?;
    let mut t = Table::new("converge", &["n", "theta", "sup_abs_diff", "argmax_re", "argmax_im"]);
    t.axes = a.grid.grid.describe();
    t.param("rho", a.rho).param("limit", limit_kind).param("k", a.grid.k);
    if let Some(theta) = a.angle.theta {
        t.param("theta", theta);
    }
    if let Some(tt) = a.angle.t {
        t.param("t", tt);
    }
    for &n in &a.n_list {
        let p = make_params(n, a.rho)?;
        let theta = a.angle.theta(&p);
        let finite = eval_nodes(&nodes, |z| corr_finite(&p, theta, &with_first(z, rest)))?;
        let (mut sup, mut at) = (0.0, nodes[0]);
        for ((f, l), z) in finite.iter().zip(&limits).zip(&nodes) {
            let d = (f - l).abs();
            if d > sup {
                sup = d;
                at = *z;
            }
        }
        t.push(vec![n.into(), theta.into(), sup.into(), at.re.into(), at.im.into()]);
    }
    Ok(t)
}

fn cd_table(a: &CdArgs) -> CliResult<Table> {
    let p = make_params(a.nrho.n, a.nrho.rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut disk = || {
        let r = CD_DISK_RADIUS * rng.random::<f64>().sqrt();
        Complex64::from_polar(r, 2.0 * std::f64::consts::PI * rng.random::<f64>())
    };
    let pairs: Vec<(Complex64, Complex64)> = (0..a.samples).map(|_| (disk(), disk())).collect();
    let res = pairs
        .par_iter()
        .map(|&(z, w)| cd_residual(&p, a.theta, z, w))
        .collect::<pfgas::Result<Vec<f64>>>()?;
    let mut t = Table::new("cd-check", &["z_re", "z_im", "w_re", "w_im", "residual"]);
    t.param("n", a.nrho.n).param("rho", a.nrho.rho).param("theta", a.theta);
    t.param("samples", a.samples).param("seed", a.seed);
    t.note("max_residual", res.iter().copied().fold(0.0, f64::max));
    for ((z, w), r) in pairs.iter().zip(res) {
        t.push(vec![z.re.into(), z.im.into(), w.re.into(), w.im.into(), r.into()]);
    }
    Ok(t)
}

fn gap_result_table(a: &GapArgs) -> CliResult<Table> {
    let p = make_params(a.nrho.n, a.nrho.rho)?;
    let g = log_gap(&p, a.region)?;
    let mut t = Table::new("gap", &["n", "rho", "region", "log_p", "term_count"]);
    t.param("n", a.nrho.n)
        .param("rho", a.nrho.rho)
        .param("region", a.region.as_str());
    t.push(vec![
        g.n.into(),
        g.rho.into(),
        g.region.as_str().into(),
        g.log_p.into(),
        g.term_count.into(),
    ]);
    Ok(t)
}

fn gap_constants_table(a: &RhoList) -> CliResult<Table> {
    let mut t = Table::new("gap-constants", &["rho", "c1", "c1_tilde", "c0"]);
    t.param("rho_list", a.rho_list.clone());
    let consts = a
        .rho_list
        .par_iter()
        .map(|&r| gap_constants(r))
        .collect::<pfgas::Result<Vec<_>>>()?;
    for (&rho, c) in a.rho_list.iter().zip(consts) {
        t.push(vec![rho.into(), c.c1.into(), c.c1_tilde.into(), c.c0.into()]);
    }
    Ok(t)
}

fn gap_table_table(a: &GapTableArgs) -> CliResult<Table> {
    let mut t = Table::new(
        "gap-table",
        &["rho", "region", "n", "log_p", "n_times_c", "o1_pred", "residual"],
    );
    t.param("n", a.n).param("rho_list", a.rhos.rho_list.clone());
    let chunks = a
        .rhos
        .rho_list
        .par_iter()
        .map(|&r| gap_table(a.n, &[r]))
        .collect::<pfgas::Result<Vec<_>>>()?;
    for row in chunks.into_iter().flatten() {
        t.push(vec![
            row.rho.into(),
            row.region.as_str().into(),
            row.n.into(),
            row.log_p.into(),
            row.n_times_c.into(),
            row.o1_pred.into(),
            row.residual.into(),
        ]);
    }
    Ok(t)
}

fn sample_table(a: &SampleArgs) -> CliResult<Table> {
    let p = make_params(a.nrho.n, a.nrho.rho)?;
    let mut cfg = ChainConfig::new(&p, a.steps, a.burn_in, a.seed);
    cfg.thin = a.thin;
    if let Some(s) = a.sigma {
        cfg.proposal_sigma = s;
    }
    let s = sample_chain(&p, &cfg)?;
    let band = 3.0 * p.gamma_n;
    let mut t = match a.hist {
        Some(bins) => {
            let h = radial_hist(&s, bins)?;
            let mut t = Table::new("sample", &["r_lo", "r_hi", "mass"]);
            for (k, m) in h.mass.iter().enumerate() {
                t.push(vec![h.edges[k].into(), h.edges[k + 1].into(), (*m).into()]);
            }
            t
        }
        None => {
            let mut t = Table::new("sample", &["sweep", "particle", "re", "im"]);
            for (sweep, config) in s.sweeps.iter().zip(&s.configs) {
                for (j, z) in config.iter().enumerate() {
                    t.push(vec![(*sweep).into(), j.into(), z.re.into(), z.im.into()]);
                }
            }
            t
        }
    };
    t.param("n", a.nrho.n)
        .param("rho", a.nrho.rho)
        .param("steps", a.steps)
        .param("burn_in", a.burn_in);
    t.param("sigma", cfg.proposal_sigma)
        .param("seed", a.seed)
        .param("thin", a.thin);
    t.note("acceptance_rate", s.acceptance_rate);
    if !s.configs.is_empty() {
        t.note("annulus_mass", annulus_mass(&s, p.r1 - band, p.r2 + band)?);
        t.note("im_symmetry_ks", im_symmetry_statistic(&s)?);
    }
    Ok(t)
}

fn execute(cli: &Cli) -> CliResult<Table> {
    match &cli.command {
        Command::Params(a) => params_table(a),
        Command::Kernel(k) => kernel_table(k),
        Command::Converge(a) => converge_table(a),
        Command::CdCheck(a) => cd_table(a),
        Command::Gap(a) => gap_result_table(a),
        Command::GapConstants(a) => gap_constants_table(a),
        Command::GapTable(a) => gap_table_table(a),
        Command::Sample(a) => sample_table(a),
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let threads = thread_count(cli.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let table = pool.install(|| execute(cli))?;
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            table.write(cli.format, &mut w)?;
        }
    }
    Ok(())
}

/// Parses `argv` (program name first) and runs the command. Returns the exit
/// code: 0 on success, 2 on usage or parameter errors, 3 on numeric or
/// region errors, 1 on i/o failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("pfgas: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("-1,1,3,0,0.5,2").unwrap();
        let nodes = g.nodes();
        assert_eq!(nodes.len(), 6);
        assert_eq!(nodes[0], Complex64::new(-1.0, 0.0));
        assert_eq!(nodes[2], Complex64::new(1.0, 0.0));
        assert_eq!(nodes[3], Complex64::new(-1.0, 0.5));
        assert!(parse_grid("0,1,0,0,1,1").is_err());
        assert!(parse_grid("0,1,2").is_err());
        assert_eq!(
            parse_grid("0.3,9,1,0.2,9,1").unwrap().nodes(),
            vec![Complex64::new(0.3, 0.2)]
        );
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.1+0.5i").unwrap(), Complex64::new(0.1, 0.5));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(CliError::Numeric(pfgas::Error::Domain(String::new())).exit_code(), 2);
        assert_eq!(CliError::Numeric(pfgas::Error::Region(String::new())).exit_code(), 3);
        assert_eq!(CliError::Numeric(pfgas::Error::Precision(String::new())).exit_code(), 3);
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
    }
}
