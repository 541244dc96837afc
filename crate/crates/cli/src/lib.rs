//! Command dispatch for the `hilbert` binary. Every command produces a
//! [`RunReport`]; the exit code is 0 when all checks pass, 1 when some fail,
//! 2 on usage errors and 3 on I/O errors.

use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand};
use finite_hilbert::clifford::{metaplectic, normalizer_residual, sl2_enumerate, zauner_scan};
use finite_hilbert::combinat::{
    are_orthogonal, count_reduced_latin_squares, entanglement_deviation, fourier_matrix, gram_deviation,
    is_complex_hadamard, latin_from_group, mols_from_field, random_latin, werner_basis,
};
use finite_hilbert::designs::{design_check, design_test, welch_bound, EPS_DESIGN};
use finite_hilbert::gf::{field_table, is_prime, prime_power, FieldSpec};
use finite_hilbert::mub::{
    ivanovic_mubs, mermin_landscape, search6, stabilizer_count, subgroup_eigenbases, unbiasedness_check, MubSet,
    EPS_MUB,
};
use finite_hilbert::persist::{self, Artifact};
use finite_hilbert::sic::{
    dim4_pattern_residual, overlap_phases, sic_search, sic_verify, u_fingerprint, SearchOptions, EPS_SIC,
    SIC_SUCCESS,
};
use finite_hilbert::weyl::{expand_operator, weyl_check, DEFAULT_MAX_DIM};
use finite_hilbert::wigner::{parity_operator, phase_point_set, wigner_check, wigner_function};
use finite_hilbert::{Check, ComplexMatrix, Error, RunReport, StateVector, EPS_MAT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "HILBERT_THREADS";

/// Zauner residual accepted by `sic fingerprint` and `clifford zauner`.
const ZAUNER_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "hilbert", version, about = "Discrete structures in finite-dimensional Hilbert spaces")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for commands that use randomness.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: HILBERT_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file for generated artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Replace every residual threshold with this value.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite fields.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Weyl–Heisenberg operators.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Latin squares.
    Latin {
        #[command(subcommand)]
        cmd: LatinCmd,
    },
    /// Complex Hadamard matrices.
    Hadamard {
        #[command(subcommand)]
        cmd: HadamardCmd,
    },
    /// Maximally entangled bases from a Latin square and a Hadamard matrix.
    Werner {
        #[arg(long)]
        n: usize,
    },
    /// Mutually unbiased bases.
    Mub {
        #[command(subcommand)]
        cmd: MubCmd,
    },
    /// Discrete Wigner functions.
    Wigner {
        #[command(subcommand)]
        cmd: WignerCmd,
    },
    /// Symplectic group and metaplectic representation.
    Clifford {
        #[command(subcommand)]
        cmd: CliffordCmd,
    },
    /// Projective t-designs.
    Design {
        #[command(subcommand)]
        cmd: DesignCmd,
    },
    /// SIC fiducials.
    Sic {
        #[command(subcommand)]
        cmd: SicCmd,
    },
    /// Weyl, MUB, Wigner and design invariant suites at one dimension.
    Suite {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FieldCmd {
    /// Element table: power of the primitive element, coefficients, minimal polynomial, traces, order.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeylCmd {
    /// Full invariant suite.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Expansion coefficients of a matrix in the displacement basis.
    Expand {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatinCmd {
    /// Cyclic Latin square (shuffled with --random).
    Gen {
        #[arg(long)]
        n: usize,
        /// Also count reduced Latin squares of this order (n ≤ 6).
        #[arg(long)]
        count: bool,
        /// Shuffle rows, columns and symbols using --seed.
        #[arg(long)]
        random: bool,
        /// List the q − 1 mutually orthogonal squares from GF(q).
        #[arg(long)]
        mols: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum HadamardCmd {
    /// The Fourier matrix of order n.
    Fourier {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MubCmd {
    /// Complete MUB set in dimension p (or p^k with --k).
    Gen {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Unbiasedness and orthonormality of a saved set.
    Verify { file: PathBuf },
    /// Petals, flowers and stabilizer states of two qubits.
    Mermin,
    /// Search for vectors unbiased to the computational and Fourier bases in dimension six.
    Search6 {
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WignerCmd {
    /// Wigner function of a state (density matrix or vector JSON; default |0⟩).
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Full invariant suite.
    Check {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CliffordCmd {
    /// Group order, normalizer residuals and the parity element.
    Check {
        #[arg(long)]
        p: u64,
        /// Sample this many elements instead of all (default: all for p ≤ 7, else 100).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Order-3 Clifford symmetry of a saved fiducial.
    Zauner {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        fiducial: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum DesignCmd {
    /// t-design moment test.
    Test {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        t: u32,
    },
    /// Welch bound and its slack.
    Welch {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        t: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum SicCmd {
    /// Random-restart search for a fiducial.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        /// Start from order-3 eigenspace projections (odd prime n).
        #[arg(long)]
        zauner: bool,
    },
    /// Resolution of identity and Gram moduli of the orbit.
    Verify { file: PathBuf },
    /// Overlap phases and, in dimension 4, the algebraic fingerprint of u.
    Fingerprint { file: PathBuf },
}

/// Failure of a command before its checks ran.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Ctx<'a> {
    report: &'a mut RunReport,
    seed: u64,
    out: Option<PathBuf>,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl Into<String>) {
        self.report.lines.push(s.into());
    }

    fn save(&mut self, artifact: &Artifact, meta: Option<serde_json::Value>) -> Outcome {
        if let Some(path) = self.out.clone() {
            persist::save_with_meta(artifact, meta, &path)?;
            self.report.artifacts.push(path.display().to_string());
        }
        Ok(())
    }

    fn warnings(&mut self, ws: Vec<String>) {
        for w in ws {
            self.line(format!("warning: {w}"));
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> std::result::Result<Option<usize>, String> {
    match flag {
        Some(0) => Err("--threads: must be at least 1".into()),
        Some(t) => Ok(Some(t)),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(t) if t > 0 => Ok(Some(t)),
                _ => Err(format!("{THREADS_ENV}: expected a positive integer, got `{v}`")),
            },
            Err(_) => Ok(None),
        },
    }
}

/// Parses `argv` (without the program name) and runs the command.
pub fn dispatch<S: AsRef<str>>(argv: &[S]) -> (i32, RunReport) {
    let args = std::iter::once("hilbert".to_string()).chain(argv.iter().map(|s| s.as_ref().to_string()));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let mut report = RunReport::new("help");
            report.lines.push(e.to_string().trim_end().to_string());
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => {
                    report.command = "usage".into();
                    EXIT_USAGE
                }
            };
            return (code, report);
        }
    };
    let mut report = RunReport::new(command_name(&cli.command));
    let threads = match resolve_threads(cli.threads) {
        Ok(t) => t,
        Err(msg) => {
            report.lines.push(format!("error: {msg}"));
            return (EXIT_USAGE, report);
        }
    };
    if let Some(t) = threads {
        report.param("threads", t);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            report.lines.push(format!("error: thread pool: {e}"));
            return (EXIT_USAGE, report);
        }
    };
    let seed = cli.seed.unwrap_or(0);
    let result = {
        let mut ctx = Ctx { report: &mut report, seed, out: cli.out.clone() };
        pool.install(|| run(&cli.command, &mut ctx))
    };
    if let Some(tol) = cli.tol {
        report.param("tol", tol);
        for c in report.checks.iter_mut().filter(|c| c.relation == finite_hilbert::report::Relation::Below) {
            c.threshold = tol;
            c.pass = c.value < tol;
        }
    }
    match result {
        Ok(()) => (if report.all_pass() { EXIT_PASS } else { EXIT_FAIL }, report),
        Err(Failure::Usage(msg)) => {
            report.lines.push(format!("error: {msg}"));
            (EXIT_USAGE, report)
        }
        Err(Failure::Io(msg)) => {
            report.lines.push(format!("error: {msg}"));
            (EXIT_IO, report)
        }
    }
}

/// Renders a report as text or pretty JSON.
pub fn render(report: &RunReport, json: bool) -> String {
    if json {
        serde_json::to_string_pretty(report).expect("report serializes")
    } else if report.command == "help" || report.command == "usage" {
        report.lines.join("\n")
    } else {
        report.to_string()
    }
}

/// Whether `--json` appears before a `--` separator.
pub fn wants_json<S: AsRef<str>>(argv: &[S]) -> bool {
    argv.iter().take_while(|a| a.as_ref() != "--").any(|a| a.as_ref() == "--json")
}

pub fn usage_text() -> String {
    Cli::command().render_help().to_string()
}

fn command_name(c: &Command) -> String {
    let (a, b) = match c {
        Command::Field { cmd: FieldCmd::Table { .. } } => ("field", "table"),
        Command::Weyl { cmd: WeylCmd::Check { .. } } => ("weyl", "check"),
        Command::Weyl { cmd: WeylCmd::Expand { .. } } => ("weyl", "expand"),
        Command::Latin { cmd: LatinCmd::Gen { .. } } => ("latin", "gen"),
        Command::Hadamard { cmd: HadamardCmd::Fourier { .. } } => ("hadamard", "fourier"),
        Command::Werner { .. } => ("werner", ""),
        Command::Mub { cmd: MubCmd::Gen { .. } } => ("mub", "gen"),
        Command::Mub { cmd: MubCmd::Verify { .. } } => ("mub", "verify"),
        Command::Mub { cmd: MubCmd::Mermin } => ("mub", "mermin"),
        Command::Mub { cmd: MubCmd::Search6 { .. } } => ("mub", "search6"),
        Command::Wigner { cmd: WignerCmd::Table { .. } } => ("wigner", "table"),
        Command::Wigner { cmd: WignerCmd::Check { .. } } => ("wigner", "check"),
        Command::Clifford { cmd: CliffordCmd::Check { .. } } => ("clifford", "check"),
        Command::Clifford { cmd: CliffordCmd::Zauner { .. } } => ("clifford", "zauner"),
        Command::Design { cmd: DesignCmd::Test { .. } } => ("design", "test"),
        Command::Design { cmd: DesignCmd::Welch { .. } } => ("design", "welch"),
        Command::Sic { cmd: SicCmd::Search { .. } } => ("sic", "search"),
        Command::Sic { cmd: SicCmd::Verify { .. } } => ("sic", "verify"),
        Command::Sic { cmd: SicCmd::Fingerprint { .. } } => ("sic", "fingerprint"),
        Command::Suite { .. } => ("suite", ""),
    };
    if b.is_empty() { a.to_string() } else { format!("{a} {b}") }
}

fn run(cmd: &Command, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Command::Field { cmd: FieldCmd::Table { p, k } } => field_table_cmd(*p, *k, ctx),
        Command::Weyl { cmd: WeylCmd::Check { n, max_dim } } => {
            ctx.report.param("n", n);
            if *n < 2 {
                return Err(usage("--n: dimension must be at least 2"));
            }
            let checks = weyl_check(*n, *max_dim)?;
            ctx.report.extend(checks);
            Ok(())
        }
        Command::Weyl { cmd: WeylCmd::Expand { matrix } } => weyl_expand(matrix, ctx),
        Command::Latin { cmd: LatinCmd::Gen { n, count, random, mols } } => latin_gen(*n, *count, *random, *mols, ctx),
        Command::Hadamard { cmd: HadamardCmd::Fourier { n } } => hadamard_fourier(*n, ctx),
        Command::Werner { n } => werner(*n, ctx),
        Command::Mub { cmd } => match cmd {
            MubCmd::Gen { p, k } => mub_gen(*p, *k, ctx),
            MubCmd::Verify { file } => mub_verify(file, ctx),
            MubCmd::Mermin => mub_mermin(ctx),
            MubCmd::Search6 { restarts } => mub_search6(*restarts, ctx),
        },
        Command::Wigner { cmd: WignerCmd::Table { n, state } } => wigner_table(*n, state.as_deref(), ctx),
        Command::Wigner { cmd: WignerCmd::Check { n } } => {
            ctx.report.param("n", n);
            let checks = wigner_check(*n)?;
            ctx.report.extend(checks);
            Ok(())
        }
        Command::Clifford { cmd: CliffordCmd::Check { p, samples } } => clifford_check(*p, *samples, ctx),
        Command::Clifford { cmd: CliffordCmd::Zauner { p, fiducial } } => clifford_zauner(*p, fiducial, ctx),
        Command::Design { cmd: DesignCmd::Test { family, t } } => design_test_cmd(family, *t, ctx),
        Command::Design { cmd: DesignCmd::Welch { family, t } } => design_welch_cmd(family, *t, ctx),
        Command::Sic { cmd: SicCmd::Search { n, restarts, zauner } } => sic_search_cmd(*n, *restarts, *zauner, ctx),
        Command::Sic { cmd: SicCmd::Verify { file } } => sic_verify_cmd(file, ctx),
        Command::Sic { cmd: SicCmd::Fingerprint { file } } => sic_fingerprint_cmd(file, ctx),
        Command::Suite { n } => suite(*n, ctx),
    }
}

fn field_table_cmd(p: u64, k: u32, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("p", p).param("k", k);
    if !is_prime(p) {
        return Err(usage("--p: p must be prime"));
    }
    let spec = FieldSpec::new(p, k)?;
    let rows = field_table(&spec);
    ctx.line(format!("GF({}) with polynomial {}", spec.order(), spec.polynomial_string()));
    ctx.line(format!("{:>6}  {:<24} {:<28} {:>4} {:>5} {:>6}", "power", "element", "minimal polynomial", "tr x", "tr x²", "order"));
    for r in &rows {
        let power = r.power.map_or("-".into(), |k| k.to_string());
        let order = r.order.map_or("-".into(), |k| k.to_string());
        ctx.line(format!(
            "{:>6}  {:<24} {:<28} {:>4} {:>5} {:>6}",
            power, r.element, r.minimal_polynomial, r.trace, r.trace_of_square, order
        ));
    }
    ctx.report.push(Check::equals("table rows", rows.len() as f64, spec.order() as f64));
    let nonzero_traces = rows.iter().filter(|r| r.trace != 0).count() as f64;
    ctx.report.push(Check::equals(
        "elements with nonzero trace",
        nonzero_traces,
        (spec.order() - spec.order() / p) as f64,
    ));
    ctx.save(&Artifact::Field(spec), None)
}

fn weyl_expand(matrix: &Path, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("matrix", matrix.display());
    let a = persist::read_complex_matrix(matrix, false)?;
    if !a.is_square() {
        return Err(usage("--matrix: matrix must be square"));
    }
    let e = expand_operator(&a)?;
    ctx.line(format!("{:>3} {:>3}  {:>22} {:>22}", "r", "s", "re", "im"));
    for (r, row) in e.coeffs.iter().enumerate() {
        for (s, z) in row.iter().enumerate() {
            if z.norm() > 1e-12 {
                ctx.line(format!("{r:>3} {s:>3}  {:>22.15e} {:>22.15e}", z.re, z.im));
            }
        }
    }
    ctx.report.push(Check::below("reconstruction", e.reconstruct().max_abs_diff(&a), EPS_MAT));
    Ok(())
}

fn latin_gen(n: usize, count: bool, random: bool, mols: bool, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("n", n);
    if n < 1 {
        return Err(usage("--n: order must be at least 1"));
    }
    let sq = if random {
        ctx.report.seed = Some(ctx.seed);
        random_latin(n, &mut ChaCha8Rng::seed_from_u64(ctx.seed))
    } else {
        latin_from_group(n)
    };
    for row in sq.cells() {
        ctx.line(row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    }
    ctx.report.push(Check::flag("Latin property", finite_hilbert::combinat::is_latin(sq.cells())));
    if count {
        if n > 6 {
            return Err(usage("--count: supported for n ≤ 6"));
        }
        let c = count_reduced_latin_squares(n);
        ctx.line(format!("reduced Latin squares of order {n}: {c}"));
    }
    if mols {
        let squares = mols_from_field(n as u64)?;
        let mut all_orthogonal = true;
        for (i, a) in squares.iter().enumerate() {
            for b in &squares[i + 1..] {
                all_orthogonal &= are_orthogonal(a, b)?;
            }
        }
        ctx.line(format!("{} mutually orthogonal squares from GF({n})", squares.len()));
        ctx.report.push(Check::equals("MOLS count", squares.len() as f64, (n - 1) as f64));
        ctx.report.push(Check::flag("pairwise orthogonal", all_orthogonal));
    }
    Ok(())
}

fn hadamard_fourier(n: usize, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("n", n);
    if n < 1 {
        return Err(usage("--n: order must be at least 1"));
    }
    let f = fourier_matrix(n);
    ctx.line(format!("entries √n·F_jk = ω^(jk) with ω = exp(2πi/{n}); exponents jk mod {n}:"));
    for j in 0..n {
        ctx.line((0..n).map(|k| ((j * k) % n).to_string()).collect::<Vec<_>>().join(" "));
    }
    ctx.report.push(Check::below("unitarity", f.matrix().unitarity_residual(), EPS_MAT));
    ctx.report.push(Check::flag("complex Hadamard", is_complex_hadamard(f.matrix())));
    Ok(())
}

fn werner(n: usize, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("n", n);
    if n < 2 {
        return Err(usage("--n: order must be at least 2"));
    }
    let latin = latin_from_group(n);
    let h = fourier_matrix(n);
    let vectors = werner_basis(&latin, &h)?;
    let ent = vectors.iter().map(|v| entanglement_deviation(v, n)).fold(0.0, f64::max);
    ctx.report.push(Check::equals("vectors", vectors.len() as f64, (n * n) as f64));
    ctx.report.push(Check::below("Gram deviation", gram_deviation(&vectors), EPS_MAT));
    ctx.report.push(Check::below("reduced states = 1/n", ent, EPS_MAT));
    let meta = serde_json::json!({
        "latin": latin.cells(),
        "hadamard": h.matrix().to_rows(),
    });
    let fam = finite_hilbert::designs::VectorFamily::new(vectors)?;
    ctx.save(&Artifact::BasisFamily(fam), Some(meta))
}

fn build_mubs(p: u64, k: Option<u32>) -> std::result::Result<MubSet, Failure> {
    if !is_prime(p) {
        return Err(usage("--p: p must be prime"));
    }
    match k {
        None | Some(1) if p % 2 == 1 => Ok(ivanovic_mubs(p)?),
        None => Ok(subgroup_eigenbases(p, 1)?),
        Some(0) => Err(usage("--k: must be at least 1")),
        Some(k) => Ok(subgroup_eigenbases(p, k)?),
    }
}

fn mub_checks(mubs: &MubSet, ctx: &mut Ctx) -> Outcome {
    let r = unbiasedness_check(&mubs.bases)?;
    let n = mubs.dim();
    ctx.report.push(Check::below("max |overlap|² − 1/N", r.max_deviation, EPS_MUB));
    ctx.report.push(Check::below("orthonormality", r.max_orthonormality_deviation, EPS_MUB));
    ctx.line(format!("dimension {n}, {} bases, {} cross-basis pairs checked", mubs.bases.len(), r.pairs_checked));
    ctx.line(if mubs.is_complete() { "complete set".to_string() } else { format!("incomplete: {} of {} bases", mubs.bases.len(), n + 1) });
    Ok(())
}

fn mub_gen(p: u64, k: Option<u32>, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("p", p);
    if let Some(k) = k {
        ctx.report.param("k", k);
    }
    let mubs = build_mubs(p, k)?;
    mub_checks(&mubs, ctx)?;
    ctx.report.push(Check::flag("complete set", mubs.is_complete()));
    ctx.save(&Artifact::MubSet(mubs), None)
}

fn mub_verify(file: &Path, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("file", file.display());
    let (mubs, ws) = persist::load_mubset(file)?;
    ctx.warnings(ws);
    mub_checks(&mubs, ctx)
}

fn mub_mermin(ctx: &mut Ctx) -> Outcome {
    let land = mermin_landscape()?;
    let square = land.mermin_square_petals();
    for (i, p) in land.petals.iter().enumerate() {
        let names: Vec<String> = p.iter().map(|e| e.name()).collect();
        let tag = if square.contains(&i) { "  (Mermin square)" } else { "" };
        ctx.line(format!("petal {:>2}: {}{tag}", i + 1, names.join(" ")));
    }
    for f in &land.flowers {
        ctx.line(format!("flower: {}", f.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")));
    }
    ctx.report.push(Check::equals("maximal abelian subgroups", land.petals.len() as f64, 15.0));
    ctx.report.push(Check::equals("flowers", land.flowers.len() as f64, 6.0));
    ctx.report.push(Check::flag("two Mermin petals per flower", land.mermin_petals_per_flower().iter().all(|&c| c == 2)));
    let states = land.stabilizer_states().len() as f64;
    ctx.report.push(Check::equals("stabilizer states", states, stabilizer_count(2, 2)? as f64));
    let worst = (0..land.flowers.len())
        .map(|i| unbiasedness_check(&land.flower_mubs(i).bases).map(|r| r.max_deviation))
        .collect::<finite_hilbert::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    ctx.report.push(Check::below("flowers are complete MUB sets", worst, EPS_MUB));
    Ok(())
}

fn mub_search6(restarts: usize, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("restarts", restarts);
    ctx.report.seed = Some(ctx.seed);
    if restarts == 0 {
        return Err(usage("--restarts: must be at least 1"));
    }
    let r = search6(restarts, ctx.seed);
    ctx.line(format!(
        "{} of {} restarts converged below {:.1e}; {} distinct vectors; best objective {:.3e}",
        r.converged, r.restarts, r.tolerance, r.distinct, r.best_objective
    ));
    ctx.report.push(Check::flag("some restart converged", r.converged > 0));
    Ok(())
}

fn wigner_table(n: usize, state: Option<&Path>, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("n", n);
    let pps = phase_point_set(n)?;
    let rho = match state {
        Some(path) => {
            ctx.report.param("state", path.display());
            persist::read_complex_matrix(path, true)?
        }
        None => ComplexMatrix::projector(&StateVector::basis(n, 0)),
    };
    if rho.rows() != n {
        return Err(usage(format!("--state: expected dimension {n}, got {}", rho.rows())));
    }
    let w = wigner_function(&rho, &pps)?;
    for row in &w.w {
        ctx.line(row.iter().map(|x| format!("{x:>10.6}")).collect::<Vec<_>>().join(" "));
    }
    ctx.report.push(Check::below("|Σ W − 1|", (w.total() - 1.0).abs(), EPS_MAT));
    ctx.report.push(Check::below("reconstruction", w.reconstruct(&pps).max_abs_diff(&rho), EPS_MAT));
    if let Some(path) = ctx.out.clone() {
        if path.extension().is_some_and(|e| e == "json") {
            return ctx.save(&Artifact::WignerTable(w), None);
        }
        std::fs::write(&path, w.to_csv() + "\n").map_err(Error::from)?;
        ctx.report.artifacts.push(path.display().to_string());
    }
    Ok(())
}

fn clifford_check(p: u64, samples: Option<usize>, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("p", p);
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(usage("--p: p must be an odd prime"));
    }
    let group = sl2_enumerate(p)?;
    ctx.report.push(Check::equals("|SL(2, Z_p)|", group.len() as f64, (p * (p * p - 1)) as f64));
    let take = samples.unwrap_or(if p <= 7 { group.len() } else { 100 });
    let chosen: Vec<_> = if take >= group.len() {
        group.clone()
    } else {
        use rand::seq::IndexedRandom;
        ctx.report.seed = Some(ctx.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        group.choose_multiple(&mut rng, take).copied().collect()
    };
    use rayon::prelude::*;
    let worst = chosen
        .par_iter()
        .map(normalizer_residual)
        .collect::<finite_hilbert::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    ctx.report.push(Check::below(format!("normalizer residual ({} elements)", chosen.len()), worst, EPS_MAT));
    let minus = metaplectic(&finite_hilbert::clifford::SymplecticMat::minus_identity(p))?;
    let parity = parity_operator(p as usize)?;
    ctx.report.push(Check::below("U(−1) = parity", minus.phase_aligned_distance(&parity), EPS_MAT));
    Ok(())
}

fn clifford_zauner(p: u64, fiducial: &Path, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("p", p).param("fiducial", fiducial.display());
    let (cand, ws) = persist::load_sic(fiducial)?;
    ctx.warnings(ws);
    if cand.n as u64 != p {
        return Err(usage(format!("--p: fiducial has dimension {}", cand.n)));
    }
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(usage("--p: p must be an odd prime"));
    }
    let scan = zauner_scan(&cand.fiducial)?;
    let g = scan.g;
    ctx.line(format!(
        "best element D_({},{}) U_G with G = [[{}, {}], [{}, {}]] ({} scanned)",
        scan.translation.0, scan.translation.1, g.alpha, g.beta, g.gamma, g.delta, scan.elements_scanned
    ));
    ctx.report.push(Check::below("order-3 invariance residual", scan.residual, ZAUNER_TOL));
    Ok(())
}

fn design_test_cmd(family: &Path, t: u32, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("family", family.display()).param("t", t);
    if t == 0 {
        return Err(usage("--t: must be at least 1"));
    }
    let (fam, ws) = persist::load_family(family)?;
    ctx.warnings(ws);
    let v = design_test(&fam, t);
    ctx.line(format!("N = {}, K = {}, moment {:.15e}, target {:.15e}", fam.dim(), fam.len(), v.value, v.target));
    ctx.report.push(Check::below(format!("|moment − target| (t={t})"), (v.value - v.target).abs(), EPS_DESIGN));
    Ok(())
}

fn design_welch_cmd(family: &Path, t: u32, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("family", family.display()).param("t", t);
    if t == 0 {
        return Err(usage("--t: must be at least 1"));
    }
    let (fam, ws) = persist::load_family(family)?;
    ctx.warnings(ws);
    let w = welch_bound(&fam, t);
    ctx.line(format!("lhs {:.15e}, rhs {:.15e}, slack {:.6e}", w.lhs, w.rhs, w.slack));
    ctx.line(if w.slack.abs() < EPS_DESIGN { "bound saturated".to_string() } else { "bound not saturated".to_string() });
    ctx.report.push(Check::below("inequality violation (−slack)", -w.slack, EPS_MAT));
    Ok(())
}

fn sic_search_cmd(n: usize, restarts: usize, zauner: bool, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("n", n).param("restarts", restarts);
    ctx.report.seed = Some(ctx.seed);
    let mut opts = SearchOptions::new(restarts, ctx.seed);
    opts.zauner_start = zauner;
    if zauner {
        ctx.report.param("zauner", true);
    }
    let out = sic_search(n, &opts)?;
    let rep = sic_verify(&out.best);
    ctx.line(format!(
        "best restart {} of {}; {} converged; f_SIC = {:.3e}",
        out.best.restart.unwrap_or(0),
        restarts,
        out.converged,
        out.best.fsic
    ));
    ctx.report.push(Check::below("f_SIC", out.best.fsic, SIC_SUCCESS));
    ctx.report.push(Check::below("Gram deviation", rep.gram_deviation, EPS_SIC));
    ctx.save(&Artifact::Sic(out.best), None)
}

fn sic_verify_cmd(file: &Path, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("file", file.display());
    let (cand, ws) = persist::load_sic(file)?;
    ctx.warnings(ws);
    let rep = sic_verify(&cand);
    ctx.line(format!("N = {}, {} vectors, {} cross pairs, f_SIC = {:.3e}", cand.n, rep.vectors, rep.pairs, cand.fsic));
    ctx.report.push(Check::below("resolution of identity", rep.identity_deviation, EPS_MAT));
    ctx.report.push(Check::below("Gram deviation", rep.gram_deviation, EPS_SIC));
    Ok(())
}

fn sic_fingerprint_cmd(file: &Path, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("file", file.display());
    let (cand, ws) = persist::load_sic(file)?;
    ctx.warnings(ws);
    let phases = match overlap_phases(&cand) {
        Ok(p) => p,
        Err(Error::UnverifiedSic(dev)) => {
            ctx.report.push(Check::below("Gram deviation", dev, EPS_SIC));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    for row in &phases.phases {
        ctx.line(
            row.iter()
                .map(|z| z.map_or("        ×        ".to_string(), |z| format!("{:+.6}{:+.6}i", z.re, z.im)))
                .collect::<Vec<_>>()
                .join("  "),
        );
    }
    ctx.report.push(Check::below("phase moduli", phases.modulus_deviation(), EPS_SIC));
    if cand.n == 4 {
        let fp = u_fingerprint(&phases)?;
        ctx.line(format!("u = {:+.15}{:+.15}i", fp.u.re, fp.u.im));
        ctx.report.push(Check::below("pattern residual", dim4_pattern_residual(&phases)?, EPS_MAT));
        ctx.report.push(Check::below("u − closed form", fp.closed_form_residual, EPS_MAT));
        ctx.report.push(Check::below("|p(u)|", fp.minpoly_residual, EPS_SIC));
        ctx.report.push(Check::below("|p(1/u)|", fp.unit_residual, EPS_SIC));
    }
    if cand.n % 2 == 1 && is_prime(cand.n as u64) {
        let scan = zauner_scan(&cand.fiducial)?;
        ctx.report.push(Check::below("order-3 invariance residual", scan.residual, ZAUNER_TOL));
    }
    Ok(())
}

fn suite(n: usize, ctx: &mut Ctx) -> Outcome {
    ctx.report.param("n", n);
    if n < 2 {
        return Err(usage("--n: dimension must be at least 2"));
    }
    ctx.report.extend(weyl_check(n, DEFAULT_MAX_DIM)?);
    match prime_power(n as u64) {
        Some((p, k)) if n <= 32 => {
            let mubs = build_mubs(p, Some(k))?;
            mub_checks(&mubs, ctx)?;
            ctx.report.extend(design_check(n)?);
        }
        _ => ctx.line(format!("mub and design suites skipped: {n} is not a prime power ≤ 32")),
    }
    if n % 2 == 1 && is_prime(n as u64) && n <= 31 {
        ctx.report.extend(wigner_check(n)?);
    } else {
        ctx.line(format!("wigner suite skipped: {n} is not an odd prime ≤ 31"));
    }
    Ok(())
}
