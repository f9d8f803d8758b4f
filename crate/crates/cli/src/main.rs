//! Command-line front end: parse voltage digraph files, run constructions
//! and analyses, and emit matrices, polynomial matrices, spectra, and walk
//! counts in stable text formats.
//!
//! Commands read a voltage digraph from stdin (or a file argument) and write
//! to stdout, so `catalog` output pipes straight into the analysis commands.
//! Exit codes: 0 success, 1 input or usage errors, 2 numeric failures
//! (transform rounding residual, eigensolver trouble), 3 failed checks
//! (`spectrum --method both` disagreement, `check-regular` on an irregular
//! partition).

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use voltlift::eigen::EigenError;
use voltlift::spectra::{
    direct_spectrum, lift_spectrum, multiset_distance, multiset_equal, SpectraError,
    SpectrumMultiset,
};
use voltlift::{
    catalog, voltfile, DigraphError, FiniteGroup, GroupError, PolyMatrix, PolymatError,
    VertexPartition, VoltageDigraph,
};

const EXIT_INPUT: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

impl From<voltlift::ParseError> for Failure {
    fn from(e: voltlift::ParseError) -> Self {
        input_error(e.to_string())
    }
}

impl From<DigraphError> for Failure {
    fn from(e: DigraphError) -> Self {
        input_error(e.to_string())
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match e {
            GroupError::Overflow => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<PolymatError> for Failure {
    fn from(e: PolymatError) -> Self {
        let code = match &e {
            PolymatError::ResidualTooLarge { .. } => EXIT_NUMERIC,
            PolymatError::Group(g) => return Failure::from(g.clone()),
            PolymatError::Mismatch => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Eigen(err) => Failure {
                code: EXIT_NUMERIC,
                message: match &err {
                    EigenError::NonConvergence { .. } => format!("eigensolver: {err}"),
                    EigenError::MomentCheckFailed { .. } => format!("eigensolver: {err}"),
                },
            },
            SpectraError::Group(g) => Failure::from(g),
            SpectraError::Polymat(p) => Failure::from(p),
            SpectraError::LiftTooLarge { .. } => input_error(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "voltlift",
    version,
    about = "Lifts of voltage digraphs: spectra, walk counts, quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Character-point evaluation of the polynomial matrix (Abelian groups).
    Poly,
    /// Eigensolve of the explicitly constructed lift.
    Direct,
    /// Run both and require agreement.
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a built-in construction as a voltage digraph file.
    ///
    /// Names: alegre | hoffman-singleton | petersen <n> <k> |
    /// pfamily <n> <p1> <p2> (comma-separated coefficient lists) |
    /// cayley cyclic <k> <gen>... | cayley product <k1,k2,...> <gen>...
    Catalog {
        name: String,
        args: Vec<String>,
    },
    /// Print the lift adjacency in coordinate format (`n n nnz`, then
    /// `u v multiplicity` lines).
    Lift {
        file: Option<PathBuf>,
    },
    /// Print the clustered lift spectrum, one `re im multiplicity` line per
    /// cluster.
    Spectrum {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Poly)]
        method: Method,
        /// Clustering tolerance for the printed multiplicities.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Matching tolerance for `--method both`.
        #[arg(long, default_value_t = 1e-8)]
        compare_tol: f64,
    },
    /// Print the fiber quotient matrix of the lift.
    Quotient {
        file: Option<PathBuf>,
    },
    /// Check whether a partition of the base digraph is regular.
    ///
    /// Blocks are given as `--blocks "a,b;c,d"`, vertex names separated by
    /// commas, blocks by semicolons. Exits 0 and prints the quotient when
    /// regular, exits 3 otherwise. Voltages are ignored; use `group cyclic 1`
    /// to analyse a plain digraph.
    CheckRegular {
        file: Option<PathBuf>,
        #[arg(long)]
        blocks: String,
    },
    /// Walk counts of a given length between fibers of the lift: lines
    /// `u v c0 c1 ... c(m-1)`, coefficient i counting walks from (u, g) to
    /// (v, g*gi).
    Walks {
        file: Option<PathBuf>,
        #[arg(long)]
        len: usize,
        /// Restrict to one source vertex (by label).
        #[arg(long)]
        from: Option<String>,
        /// Restrict to one target vertex (by label).
        #[arg(long)]
        to: Option<String>,
    },
    /// Print the diameter of the lift.
    Diameter {
        file: Option<PathBuf>,
    },
    /// Print the polynomial matrix of the base (or its --power), one
    /// `u v polynomial` line per entry.
    Polymatrix {
        file: Option<PathBuf>,
        #[arg(long)]
        power: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((code, output)) => {
            if emit(&output).is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Write to stdout, treating a closed pipe as a normal early exit.
fn emit(text: &str) -> Result<(), ()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => {
            eprintln!("error: cannot write to stdout: {e}");
            Err(())
        }
    }
}

fn run(command: Command) -> Result<(u8, String), Failure> {
    match command {
        Command::Catalog { name, args } => cmd_catalog(&name, &args),
        Command::Lift { file } => {
            let vd = read_input(file.as_deref())?;
            Ok((0, vd.lift().digraph().to_coordinate_string()))
        }
        Command::Spectrum {
            file,
            method,
            tol,
            compare_tol,
        } => cmd_spectrum(file.as_deref(), method, tol, compare_tol),
        Command::Quotient { file } => {
            let vd = read_input(file.as_deref())?;
            Ok((0, matrix_lines(&vd.fiber_quotient())))
        }
        Command::CheckRegular { file, blocks } => cmd_check_regular(file.as_deref(), &blocks),
        Command::Walks {
            file,
            len,
            from,
            to,
        } => cmd_walks(file.as_deref(), len, from.as_deref(), to.as_deref()),
        Command::Diameter { file } => {
            let vd = read_input(file.as_deref())?;
            Ok((0, format!("{}\n", vd.lift().digraph().diameter()?)))
        }
        Command::Polymatrix { file, power } => {
            let vd = read_input(file.as_deref())?;
            let poly = PolyMatrix::from_voltage(&vd);
            let poly = match power {
                Some(l) => poly.power(l)?,
                None => poly,
            };
            let mut out = String::new();
            for u in 0..vd.r() {
                for v in 0..vd.r() {
                    writeln!(
                        out,
                        "{} {} {}",
                        vd.labels()[u],
                        vd.labels()[v],
                        poly.format_entry(u, v)
                    )
                    .unwrap();
                }
            }
            Ok((0, out))
        }
    }
}

fn matrix_lines(matrix: &ndarray::Array2<i64>) -> String {
    let mut out = String::new();
    for row in matrix.rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

fn read_input(file: Option<&std::path::Path>) -> Result<VoltageDigraph, Failure> {
    let text = match file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| input_error(format!("cannot read stdin: {e}")))?;
            buffer
        }
    };
    Ok(voltfile::parse(&text)?)
}

fn cmd_catalog(name: &str, args: &[String]) -> Result<(u8, String), Failure> {
    let usage = |msg: &str| input_error(format!("catalog {name}: {msg}"));
    let vd = match name {
        "alegre" => catalog::alegre(),
        "hoffman-singleton" => catalog::hoffman_singleton(),
        "petersen" => {
            let (n, k) = match args {
                [n, k] => (
                    n.parse().map_err(|_| usage("invalid n"))?,
                    k.parse().map_err(|_| usage("invalid k"))?,
                ),
                _ => return Err(usage("expected: petersen <n> <k>")),
            };
            catalog::generalized_petersen(n, k).map_err(|e| usage(&e))?
        }
        "pfamily" => {
            let (n, p1, p2) = match args {
                [n, p1, p2] => (
                    n.parse().map_err(|_| usage("invalid n"))?,
                    parse_coeff_list(p1).ok_or_else(|| usage("invalid p1"))?,
                    parse_coeff_list(p2).ok_or_else(|| usage("invalid p2"))?,
                ),
                _ => return Err(usage("expected: pfamily <n> <p1> <p2>")),
            };
            catalog::p_family(n, &p1, &p2).map_err(|e| usage(&e))?
        }
        "cayley" => {
            if args.len() < 2 {
                return Err(usage(
                    "expected: cayley cyclic <k> <gen>... or cayley product <k1,k2,...> <gen>...",
                ));
            }
            let group = match args[0].as_str() {
                "cyclic" => {
                    FiniteGroup::cyclic(args[1].parse().map_err(|_| usage("invalid order"))?)?
                }
                "product" => {
                    let factors: Option<Vec<usize>> =
                        args[1].split(',').map(|t| t.parse().ok()).collect();
                    FiniteGroup::product(&factors.ok_or_else(|| usage("invalid factors"))?)?
                }
                other => return Err(usage(&format!("unknown group kind '{other}'"))),
            };
            let gens: Vec<usize> = args[2..]
                .iter()
                .map(|t| group.parse_element(t))
                .collect::<Result<_, _>>()?;
            catalog::cayley(group, &gens).map_err(|e| usage(&e))?
        }
        other => return Err(input_error(format!("unknown catalog entry '{other}'"))),
    };
    Ok((0, voltfile::serialize(&vd)))
}

fn cmd_spectrum(
    file: Option<&std::path::Path>,
    method: Method,
    tol: f64,
    compare_tol: f64,
) -> Result<(u8, String), Failure> {
    let vd = read_input(file)?;
    match method {
        Method::Poly => Ok((0, spectrum_lines(&lift_spectrum(&vd)?, tol))),
        Method::Direct => Ok((0, spectrum_lines(&direct_spectrum(&vd)?, tol))),
        Method::Both => {
            let poly = lift_spectrum(&vd)?;
            let direct = direct_spectrum(&vd)?;
            let mut out = spectrum_lines(&poly, tol);
            let equal = multiset_equal(&poly, &direct, compare_tol);
            match multiset_distance(&poly, &direct) {
                Some(d) => {
                    writeln!(out, "# both-methods distance={} equal={equal}", fmt_sig(d)).unwrap()
                }
                None => writeln!(out, "# both-methods cardinality mismatch").unwrap(),
            }
            if equal {
                Ok((0, out))
            } else {
                let _ = emit(&out);
                Err(Failure {
                    code: EXIT_CHECK_FAILED,
                    message: format!(
                        "character-point and direct spectra differ beyond {compare_tol:e}"
                    ),
                })
            }
        }
    }
}

fn spectrum_lines(spec: &SpectrumMultiset, tol: f64) -> String {
    let mut out = format!("# tol={tol:e}\n");
    for cluster in spec.cluster(tol) {
        writeln!(
            out,
            "{} {} {}",
            fmt_sig(cluster.value.re),
            fmt_sig(cluster.value.im),
            cluster.multiplicity
        )
        .unwrap();
    }
    out
}

/// Fixed 12-significant-digit rendering, with negative zero normalized.
fn fmt_sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn cmd_check_regular(
    file: Option<&std::path::Path>,
    blocks: &str,
) -> Result<(u8, String), Failure> {
    let vd = read_input(file)?;
    let base = vd.base();
    let mut parsed: Vec<Vec<usize>> = Vec::new();
    for block in blocks.split(';') {
        let mut vertices = Vec::new();
        for name in block.split(',') {
            let name = name.trim();
            if name.is_empty() {
                return Err(input_error("empty vertex name in --blocks"));
            }
            let index = base
                .vertex_index(name)
                .ok_or_else(|| input_error(format!("unknown vertex '{name}' in --blocks")))?;
            vertices.push(index);
        }
        parsed.push(vertices);
    }
    let partition = VertexPartition::new(base.n(), parsed)?;
    match base.regular_quotient_counts(&partition) {
        Some(counts) => Ok((0, format!("regular: true\n{}", matrix_lines(&counts)))),
        None => Ok((EXIT_CHECK_FAILED, "regular: false\n".to_string())),
    }
}

fn cmd_walks(
    file: Option<&std::path::Path>,
    len: usize,
    from: Option<&str>,
    to: Option<&str>,
) -> Result<(u8, String), Failure> {
    let vd = read_input(file)?;
    let resolve = |name: Option<&str>| -> Result<Option<usize>, Failure> {
        match name {
            None => Ok(None),
            Some(label) => vd
                .labels()
                .iter()
                .position(|l| l == label)
                .map(Some)
                .ok_or_else(|| input_error(format!("unknown vertex '{label}'"))),
        }
    };
    let from = resolve(from)?;
    let to = resolve(to)?;
    let poly = PolyMatrix::from_voltage(&vd).power(len)?;
    let mut out = String::new();
    for u in 0..vd.r() {
        if from.is_some_and(|f| f != u) {
            continue;
        }
        for v in 0..vd.r() {
            if to.is_some_and(|t| t != v) {
                continue;
            }
            let counts: Vec<String> = poly
                .entry(u, v)
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect();
            writeln!(out, "{} {} {}", vd.labels()[u], vd.labels()[v], counts.join(" ")).unwrap();
        }
    }
    Ok((0, out))
}

fn parse_coeff_list(text: &str) -> Option<Vec<i64>> {
    if text.is_empty() {
        return Some(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}
