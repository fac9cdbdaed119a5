//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on malformed input or I/O failure, 2 when
//! well-formed input is rejected (not a contraction, width mismatch,
//! infeasible request).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::detection::{trial_seed, DetectorModel};
use crate::engine::{apply_circuit, mean_photon_number};
use crate::error::{Error, Result};
use crate::io;
use crate::numerics::{is_unitary, UNITARY_TOL};
use crate::protocols::{
    attenuation_ladder, bellcat_feasibility, equal_prior_success_probability, phase_states_from_port,
    BellTarget, BellcatQuery, Identification, SearchMode, SearchSetup, SearchSpec,
};
use crate::synthesis::{compile, dilate, reck_decompose, reck_mesh};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cohlin", version, about = "Linear-optical circuits for coherent states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a unitary (or the dilation of a contraction) into a circuit file.
    Synth(SynthArgs),
    /// Propagate starred amplitudes through a circuit file.
    Run(RunArgs),
    /// Restorable database search with threshold detectors.
    Search(SearchArgs),
    /// Phase-encoded states alpha*exp(2*pi*i*k/N) from a DFT circuit.
    Qkd(QkdArgs),
    /// Attenuated copies alpha/sqrt(L), L = 1..N.
    Ladder(LadderArgs),
    /// Can a contraction turn |v1> + |v2> into a Bell-cat state?
    Bellcat(BellcatArgs),
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Matrix file (`rows cols` then `re im` pairs).
    matrix: PathBuf,
    /// Circuit file to write.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = UNITARY_TOL)]
    tol: f64,
    /// Keep a beamsplitter (possibly θ = 0) at every mesh position.
    #[arg(long)]
    full_mesh: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    circuit: PathBuf,
    amplitudes: PathBuf,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Number of references; must match --refs when given.
    #[arg(long)]
    n: Option<usize>,
    /// Reference amplitudes, e.g. `1,0;-1,0`.
    #[arg(long, allow_hyphen_values = true)]
    refs: String,
    /// Unknown data amplitude `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    data: String,
    /// Comparison scale; defaults to 1/sqrt(N+1).
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `dilation` or `explicit` (two references only).
    #[arg(long, default_value = "dilation")]
    mode: String,
    #[arg(long, default_value_t = 1.0)]
    efficiency: f64,
    #[arg(long, default_value_t = 0.0)]
    dark_count: f64,
    /// Write the trial CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-port click records (`trial,port,clicked`).
    #[arg(long)]
    clicks: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct QkdArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// 1-based input port for sqrt(N)*alpha; defaults to 2 (1 when N = 1).
    #[arg(long)]
    input_port: Option<usize>,
}

#[derive(Debug, Args)]
struct LadderArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Debug, Args)]
struct BellcatArgs {
    /// First branch `re,im,re,im`.
    #[arg(long, allow_hyphen_values = true)]
    v1: String,
    /// Second branch `re,im,re,im`.
    #[arg(long, allow_hyphen_values = true)]
    v2: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// B00, B10, B01 or B11.
    #[arg(long, default_value = "B00")]
    target: String,
}

/// A command that ran to completion but whose answer is negative.
struct Rejected(String);

enum Failure {
    Lib(Error),
    Rejected(Rejected),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Synth(a) => cmd_synth(a, out),
        Command::Run(a) => cmd_run(a, out),
        Command::Search(a) => cmd_search(a, out, err),
        Command::Qkd(a) => cmd_qkd(a, out),
        Command::Ladder(a) => cmd_ladder(a, out),
        Command::Bellcat(a) => cmd_bellcat(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Rejected(Rejected(msg))) => {
            let _ = writeln!(err, "cohlin: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "cohlin: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes()).map_err(Error::from)?;
    Ok(())
}

fn fmt_c(z: Complex64) -> String {
    // no "-0.000000000000" for values that round to zero
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{:.12} {:.12}", clean(z.re), clean(z.im))
}

fn cmd_synth(a: SynthArgs, out: &mut dyn Write) -> CmdResult {
    let m = io::read_matrix(&a.matrix)?;
    let mut report = String::new();
    let target = if m.is_square() && is_unitary(&m, a.tol)? {
        writeln!(report, "path: unitary").unwrap();
        m
    } else {
        let d = dilate(&m, a.tol)?;
        writeln!(report, "path: dilation").unwrap();
        writeln!(
            report,
            "contraction: {}x{}; inputs on ports 1..{}, outputs on ports 1'..{}', remaining ports dark",
            d.rows, d.cols, d.cols, d.rows
        )
        .unwrap();
        d.unitary
    };
    let circuit = if a.full_mesh { reck_mesh(&target, a.tol)? } else { reck_decompose(&target, a.tol)? };
    let residual = compile(&circuit).max_abs_diff(&target);
    std::fs::write(&a.out, io::format_circuit(&circuit)).map_err(Error::from)?;
    writeln!(report, "modes: {}", circuit.width()).unwrap();
    writeln!(report, "beamsplitters: {}", circuit.beamsplitter_count()).unwrap();
    writeln!(report, "phase shifters: {}", circuit.phaseshifter_count()).unwrap();
    writeln!(report, "residual: {residual:.3e}").unwrap();
    emit(out, &report)
}

fn cmd_run(a: RunArgs, out: &mut dyn Write) -> CmdResult {
    let circuit = io::read_circuit(&a.circuit)?;
    let amps = io::read_amplitudes(&a.amplitudes)?;
    let result = apply_circuit(&circuit, &amps)?;
    let mut report = String::from("port starred_re starred_im physical_re physical_im\n");
    for (k, z) in result.starred().iter().enumerate() {
        writeln!(report, "{}' {} {}", k + 1, fmt_c(*z), fmt_c(z.conj())).unwrap();
    }
    writeln!(report, "mean photon number in: {:.12}", mean_photon_number(&amps)).unwrap();
    writeln!(report, "mean photon number out: {:.12}", mean_photon_number(&result)).unwrap();
    emit(out, &report)
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let references = io::parse_complex_list(&a.refs)?;
    if let Some(n) = a.n {
        if n != references.len() {
            return Err(Failure::Rejected(Rejected(format!(
                "--n {n} does not match {} references",
                references.len()
            ))));
        }
    }
    let data = io::parse_complex(&a.data)?;
    let mode: SearchMode = a.mode.parse()?;
    let mut spec = SearchSpec::new(references, data)?.with_mode(mode)?;
    if let Some(c) = a.c {
        spec = spec.with_c(c)?;
    }
    let detector = DetectorModel::new(a.efficiency, a.dark_count)?;
    for (i, j) in spec.degenerate_pairs() {
        let _ = writeln!(err, "warning: references {} and {} coincide and cannot be distinguished", i + 1, j + 1);
    }
    let setup = SearchSetup::new(spec.clone())?;
    let truth = spec.matching_reference();
    let analytic = match truth {
        Some(k) => setup.identification_probability(k),
        None => equal_prior_success_probability(&spec.references, spec.c),
    };

    let mut csv = String::from("trial,identified,clicked_ports,p_succ_analytic\n");
    let mut clicks_csv = String::from("trial,port,clicked\n");
    let (mut conclusive, mut correct) = (0u64, 0u64);
    for t in 0..a.trials {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(trial_seed(a.seed, t));
        let outcome = setup.trial_with(&detector, &mut rng)?;
        let label = match outcome.identified {
            Identification::Reference(k) => {
                conclusive += 1;
                if truth == Some(k) {
                    correct += 1;
                }
                (k + 1).to_string()
            }
            Identification::Inconclusive => "inconclusive".to_string(),
        };
        let ports: Vec<String> = outcome.clicked_ports().iter().map(|p| (p + 1).to_string()).collect();
        writeln!(csv, "{t},{label},{},{analytic:.6}", ports.join(";")).unwrap();
        for r in &outcome.clicks {
            writeln!(clicks_csv, "{t},{},{}", r.port + 1, u8::from(r.clicked)).unwrap();
        }
    }

    let mut summary = String::new();
    let trials = a.trials.max(1) as f64;
    if truth.is_some() {
        writeln!(summary, "# empirical success rate: {:.6} ({correct}/{})", correct as f64 / trials, a.trials).unwrap();
    } else {
        writeln!(summary, "# data matches no reference").unwrap();
        writeln!(summary, "# conclusive rate: {:.6} ({conclusive}/{})", conclusive as f64 / trials, a.trials).unwrap();
    }
    writeln!(summary, "# analytic success probability: {analytic:.6}").unwrap();

    if let Some(path) = &a.clicks {
        std::fs::write(path, clicks_csv).map_err(Error::from)?;
    }
    match &a.out {
        Some(path) => {
            std::fs::write(path, csv).map_err(Error::from)?;
            emit(out, &summary)
        }
        None => {
            emit(out, &csv)?;
            err.write_all(summary.as_bytes()).map_err(Error::from)?;
            Ok(())
        }
    }
}

fn cmd_qkd(a: QkdArgs, out: &mut dyn Write) -> CmdResult {
    let alpha = io::parse_complex(&a.alpha)?;
    let port = match a.input_port {
        Some(0) => return Err(Error::InvalidParameter("ports are numbered from 1".into()).into()),
        Some(p) => p - 1,
        None => usize::from(a.n > 1),
    };
    let states = phase_states_from_port(a.n, alpha, port)?;
    let mut report = String::from("port re im\n");
    for (k, z) in states.physical().iter().enumerate() {
        writeln!(report, "{}' {}", k + 1, fmt_c(*z)).unwrap();
    }
    writeln!(report, "mean photon number: {:.12}", mean_photon_number(&states)).unwrap();
    emit(out, &report)
}

fn cmd_ladder(a: LadderArgs, out: &mut dyn Write) -> CmdResult {
    let alpha = io::parse_complex(&a.alpha)?;
    let states = attenuation_ladder(a.n, alpha)?;
    let mut report = String::from("port re im\n");
    for (k, z) in states.physical().iter().enumerate() {
        writeln!(report, "{}' {}", k + 1, fmt_c(*z)).unwrap();
    }
    emit(out, &report)
}

fn parse_pair(s: &str) -> Result<[Complex64; 2]> {
    match io::parse_complex_list(s)?.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::Parse { line: 1, msg: format!("expected two complex numbers 're,im,re,im', got '{s}'") }),
    }
}

fn cmd_bellcat(a: BellcatArgs, out: &mut dyn Write) -> CmdResult {
    let query = BellcatQuery {
        v1: parse_pair(&a.v1)?,
        v2: parse_pair(&a.v2)?,
        alpha: io::parse_complex(&a.alpha)?,
        target: a.target.parse::<BellTarget>()?,
    };
    let verdict = bellcat_feasibility(&query)?;
    let mut report = String::new();
    writeln!(report, "{}", if verdict.feasible { "feasible" } else { "infeasible" }).unwrap();
    writeln!(
        report,
        "inputs: {}",
        if verdict.linearly_dependent { "linearly dependent" } else { "linearly independent" }
    )
    .unwrap();
    match &verdict.contraction {
        Some(k) => {
            writeln!(report, "K:").unwrap();
            for row in k.to_rows() {
                let cells: Vec<String> = row.iter().map(|z| fmt_c(*z)).collect();
                writeln!(report, "  {}", cells.join("  ")).unwrap();
            }
        }
        None => writeln!(report, "K: none").unwrap(),
    }
    if let Some(norm) = verdict.norm {
        writeln!(report, "sigma_max: {norm:.12}").unwrap();
    }
    if let Some(r) = verdict.kernel_residual {
        writeln!(report, "kernel residual |K(v1+v2)|: {r:.3e}").unwrap();
    }
    writeln!(report, "necessary condition: {}", if verdict.necessary_condition { "holds" } else { "fails" }).unwrap();
    writeln!(report, "max_alpha: {:.12}", verdict.max_alpha).unwrap();
    emit(out, &report)?;
    if verdict.feasible {
        Ok(())
    } else {
        Err(Failure::Rejected(Rejected(match verdict.norm {
            Some(n) => format!("no contraction exists (sigma_max = {n:.6} > 1)"),
            None => "no linear map exists for these inputs".to_string(),
        })))
    }
}
