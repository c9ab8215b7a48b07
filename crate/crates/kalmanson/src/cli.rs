//! Command-line driver: one executable exposing splits, binary-matrix,
//! metric, complex-census, and instance-generation commands.
//!
//! Exit codes separate the two kinds of "no": `0` means the requested
//! check passed or the artifact was produced, `1` means the mathematics
//! answered no (not circular, not decomposable, forbidden configuration
//! found, cross-validation mismatch), and `2` means the input was
//! unusable (unreadable file, parse failure, size guard). `--json`
//! switches the human text for one machine-readable JSON object; both
//! forms are byte-deterministic for fixed inputs and flags.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::generate;
use crate::geometry::{
    kalmanson_violation, recognize, tsp_bruteforce, tsp_kalmanson, Metric,
};
use crate::ones::{
    c1r_witness, circ1r_witness, contains_configuration, splits_to_rowclass,
    tucker_config_matrix, BinaryMatrix, TuckerFamily,
};
use crate::splits::{
    is_circular, weak_compatibility_witness, CircularOrdering, Side, Split,
    SplitSystem,
};

/// Entry point: parse `args` (program name first, as the OS provides
/// them), run the command, write all output to `out`, and return the
/// process exit code.
pub fn run<I, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = String>,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let report = dispatch(&cli).unwrap_or_else(|e| Report {
        code: 2,
        text: format!("error: {e}\n"),
        json: json!({ "status": "error", "message": e.to_string() }),
    });
    if cli.json {
        let _ = writeln!(out, "{}", report.json);
    } else {
        let _ = write!(out, "{}", report.text);
    }
    report.code
}

#[derive(Parser)]
#[command(
    name = "kalmanson",
    about = "Circular split systems, consecutive/circular ones, \
             Kalmanson metrics, and the face census of their complex",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit one machine-readable JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks on a split system (JSON file).
    #[command(subcommand)]
    Splits(SplitsCmd),
    /// Checks on a 0/1 matrix (text file of 0/1 rows).
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Checks on a distance matrix (text file of rational rows).
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Face counts of the complex of circular split systems.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Seed-deterministic random test instances.
    #[command(subcommand)]
    Generate(GenerateCmd),
}

#[derive(Subcommand)]
enum SplitsCmd {
    /// Is the system circular? Prints a witness ordering when it is.
    /// Trivial splits are arcs of every ordering and are ignored.
    Circular { file: String },
    /// Is the system weakly compatible? Prints the offending triple when
    /// it is not.
    WeaklyCompatible { file: String },
    /// Encode the system as a 0/1 matrix (rows = blocks avoiding 1).
    ToMatrix { file: String },
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Can the columns be reordered to make every row's ones consecutive?
    C1r { file: String },
    /// Like c1r, but consecutive around a circle.
    Circ1r { file: String },
    /// Search for a forbidden configuration (families I-V).
    Tucker { file: String },
}

#[derive(Args)]
struct MetricArgs {
    file: String,
    /// Fail (exit 1) if the triangle inequality is violated, before any
    /// other verdict.
    #[arg(long)]
    require_triangle: bool,
}

#[derive(Subcommand)]
enum MetricCmd {
    /// Do the Kalmanson conditions hold in the given labeling?
    Kalmanson(MetricArgs),
    /// Find a circular ordering under which the conditions hold.
    Recognize(MetricArgs),
    /// Expand the metric over the splits of a recognized ordering.
    Decompose(MetricArgs),
    /// Optimal tour via recognition; `--oracle` cross-checks by brute
    /// force.
    Tsp {
        #[command(flatten)]
        args: MetricArgs,
        /// Also solve by exhaustive search and compare lengths.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Formula,
    Both,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// The face-count vector (f_0, ..., f_{d-1}).
    Fvector {
        #[arg(long)]
        n: usize,
        /// brute = enumerate every face; formula = closed forms (unknown
        /// entries print as ?); both = cross-validate.
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// The number of triangles (3-vertex faces).
    Triangles {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// List the facets (one circular ordering each).
    Facets {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// A random split system as JSON (consumable by `splits ...`).
    System {
        #[arg(long)]
        n: usize,
        /// Number of distinct splits.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// An unconstrained random metric as text (consumable by `metric
    /// ...`).
    Metric {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A metric built as a nonnegative combination over the arcs of a
    /// circular ordering — always recognizable.
    Kalmanson {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hide a random ordering instead of the identity.
        #[arg(long)]
        scrambled: bool,
    },
}

/// One command's result: exit code, text rendering, JSON rendering.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

fn dispatch(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Splits(cmd) => run_splits(cmd),
        Command::Matrix(cmd) => run_matrix(cmd),
        Command::Metric(cmd) => run_metric(cmd),
        Command::Complex(cmd) => run_complex(cmd),
        Command::Generate(cmd) => run_generate(cmd),
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn ordering_text(ord: &CircularOrdering) -> String {
    ord.to_string()
}

fn ordering_json(ord: &CircularOrdering) -> Value {
    Value::from(ord.order().to_vec())
}

/// Unambiguous key for a split: its canonical block, comma-joined.
fn split_key(s: &Split) -> String {
    s.block()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn run_splits(cmd: &SplitsCmd) -> Result<Report, Error> {
    match cmd {
        SplitsCmd::Circular { file } => {
            let ss = SplitSystem::from_json_str(&read_input(file)?)?;
            let nontrivial = SplitSystem::new(
                ss.n(),
                ss.iter().copied().filter(|s| !s.is_trivial()),
            )?;
            match is_circular(&nontrivial) {
                Some(ord) => Ok(Report {
                    code: 0,
                    text: format!(
                        "circular\nordering: {}\n",
                        ordering_text(&ord)
                    ),
                    json: json!({
                        "status": "ok",
                        "circular": true,
                        "ordering": ordering_json(&ord),
                    }),
                }),
                None => Ok(Report {
                    code: 1,
                    text: "not circular\n".into(),
                    json: json!({ "status": "violation", "circular": false }),
                }),
            }
        }
        SplitsCmd::WeaklyCompatible { file } => {
            let ss = SplitSystem::from_json_str(&read_input(file)?)?;
            match weak_compatibility_witness(&ss) {
                None => Ok(Report {
                    code: 0,
                    text: "weakly compatible\n".into(),
                    json: json!({
                        "status": "ok",
                        "weakly_compatible": true,
                    }),
                }),
                Some(w) => {
                    let side_name = |s: Side| match s {
                        Side::Block => "block",
                        Side::Complement => "complement",
                    };
                    let splits: Vec<String> =
                        w.splits.iter().map(ToString::to_string).collect();
                    let sides: Vec<&str> =
                        w.sides.iter().map(|&s| side_name(s)).collect();
                    let outliers: Vec<String> =
                        w.outliers.iter().map(ToString::to_string).collect();
                    Ok(Report {
                        code: 1,
                        text: format!(
                            "not weakly compatible\nsplits: {}\nsides: {}\n\
                             hub: {}\noutliers: {}\n",
                            splits.join(", "),
                            sides.join(", "),
                            w.hub,
                            outliers.join(", "),
                        ),
                        json: json!({
                            "status": "violation",
                            "weakly_compatible": false,
                            "splits": w.splits.iter().map(|s| s.block()).collect::<Vec<_>>(),
                            "sides": sides,
                            "hub": w.hub,
                            "outliers": w.outliers.to_vec(),
                        }),
                    })
                }
            }
        }
        SplitsCmd::ToMatrix { file } => {
            let ss = SplitSystem::from_json_str(&read_input(file)?)?;
            if ss.has_trivial() {
                return Err(Error::InvalidSystem(
                    "the matrix encoding covers non-trivial splits only"
                        .into(),
                ));
            }
            let text = splits_to_rowclass(&ss).matrix().to_text();
            let rows: Vec<&str> = text.lines().collect();
            Ok(Report {
                code: 0,
                json: json!({ "status": "ok", "rows": rows }),
                text,
            })
        }
    }
}

fn run_matrix(cmd: &MatrixCmd) -> Result<Report, Error> {
    let witness_report = |found: Option<Vec<usize>>,
                          what: &str|
     -> Report {
        match found {
            Some(order) => {
                let cols: Vec<usize> = order.iter().map(|c| c + 1).collect();
                let shown: Vec<String> =
                    cols.iter().map(ToString::to_string).collect();
                Report {
                    code: 0,
                    text: format!(
                        "{what} order exists\ncolumns: {}\n",
                        shown.join(" ")
                    ),
                    json: json!({
                        "status": "ok",
                        "exists": true,
                        "column_order": cols,
                    }),
                }
            }
            None => Report {
                code: 1,
                text: format!("no {what} order\n"),
                json: json!({ "status": "violation", "exists": false }),
            },
        }
    };
    match cmd {
        MatrixCmd::C1r { file } => {
            let m = BinaryMatrix::parse_text(&read_input(file)?)?;
            let w = c1r_witness(&m).map(|w| w.order().to_vec());
            Ok(witness_report(w, "consecutive ones"))
        }
        MatrixCmd::Circ1r { file } => {
            let m = BinaryMatrix::parse_text(&read_input(file)?)?;
            let w = circ1r_witness(&m).map(|w| w.order().to_vec());
            Ok(witness_report(w, "circular ones"))
        }
        MatrixCmd::Tucker { file } => {
            let m = BinaryMatrix::parse_text(&read_input(file)?)?;
            for family in TuckerFamily::ALL {
                let ks: Vec<usize> = if family.is_parametric() {
                    (1..).take_while(|k| fits(family, *k, &m)).collect()
                } else {
                    vec![1]
                };
                for k in ks {
                    let config = tucker_config_matrix(family, k)?;
                    if config.rows() > m.rows() || config.cols() > m.cols() {
                        continue;
                    }
                    if let Some((rows, cols)) =
                        contains_configuration(&m, &config)
                    {
                        let rows1: Vec<usize> =
                            rows.iter().map(|r| r + 1).collect();
                        let cols1: Vec<usize> =
                            cols.iter().map(|c| c + 1).collect();
                        let fmt = |v: &[usize]| {
                            v.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(" ")
                        };
                        return Ok(Report {
                            code: 1,
                            text: format!(
                                "forbidden configuration: family {family}, \
                                 k = {k}\nrows: {}\ncolumns: {}\n",
                                fmt(&rows1),
                                fmt(&cols1),
                            ),
                            json: json!({
                                "status": "violation",
                                "family": family.to_string(),
                                "k": k,
                                "rows": rows1,
                                "cols": cols1,
                            }),
                        });
                    }
                }
            }
            Ok(Report {
                code: 0,
                text: "no forbidden configuration\n".into(),
                json: json!({ "status": "ok", "found": false }),
            })
        }
    }
}

/// Whether the `k`-th member of a parametric family fits inside `m`.
fn fits(family: TuckerFamily, k: usize, m: &BinaryMatrix) -> bool {
    let (r, c) = match family {
        TuckerFamily::I => (k + 2, k + 2),
        TuckerFamily::II => (k + 3, k + 3),
        TuckerFamily::III => (k + 2, k + 3),
        TuckerFamily::IV => (4, 6),
        TuckerFamily::V => (4, 5),
    };
    r <= m.rows() && c <= m.cols()
}

/// Shared triangle-inequality gate for the metric commands.
fn triangle_gate(m: &Metric, required: bool) -> Option<Report> {
    if !required {
        return None;
    }
    m.triangle_violation().map(|[i, j, k]| Report {
        code: 1,
        text: format!(
            "triangle inequality fails\ntriple: {i} {j} {k}\n"
        ),
        json: json!({
            "status": "violation",
            "triangle": false,
            "triple": [i, j, k],
        }),
    })
}

fn not_member_report() -> Report {
    Report {
        code: 1,
        text: "not circular decomposable\n".into(),
        json: json!({ "status": "not-member" }),
    }
}

fn run_metric(cmd: &MetricCmd) -> Result<Report, Error> {
    match cmd {
        MetricCmd::Kalmanson(args) => {
            let m = Metric::parse_text(&read_input(&args.file)?)?;
            if let Some(r) = triangle_gate(&m, args.require_triangle) {
                return Ok(r);
            }
            match kalmanson_violation(&m) {
                None => Ok(Report {
                    code: 0,
                    text: "kalmanson conditions hold\n".into(),
                    json: json!({ "status": "ok", "kalmanson": true }),
                }),
                Some(q) => Ok(Report {
                    code: 1,
                    text: format!(
                        "kalmanson conditions fail\nquadruple: {} {} {} {}\n",
                        q[0], q[1], q[2], q[3]
                    ),
                    json: json!({
                        "status": "violation",
                        "kalmanson": false,
                        "quadruple": q.to_vec(),
                    }),
                }),
            }
        }
        MetricCmd::Recognize(args) => {
            let m = Metric::parse_text(&read_input(&args.file)?)?;
            if let Some(r) = triangle_gate(&m, args.require_triangle) {
                return Ok(r);
            }
            match recognize(&m)? {
                Some((ord, _)) => Ok(Report {
                    code: 0,
                    text: format!(
                        "circular decomposable\nordering: {}\n",
                        ordering_text(&ord)
                    ),
                    json: json!({
                        "status": "ok",
                        "ordering": ordering_json(&ord),
                    }),
                }),
                None => Ok(not_member_report()),
            }
        }
        MetricCmd::Decompose(args) => {
            let m = Metric::parse_text(&read_input(&args.file)?)?;
            if let Some(r) = triangle_gate(&m, args.require_triangle) {
                return Ok(r);
            }
            match recognize(&m)? {
                Some((ord, dec)) => {
                    let alpha: Vec<String> =
                        dec.alpha().iter().map(ToString::to_string).collect();
                    let mut text = format!(
                        "ordering: {}\nalpha: {}\n",
                        ordering_text(&ord),
                        alpha.join(" ")
                    );
                    let mut weights = serde_json::Map::new();
                    for (s, w) in dec.weights() {
                        let _ = writeln!(
                            text,
                            "weight {{{}}}: {w}",
                            split_key(s)
                        );
                        weights.insert(split_key(s), Value::from(w.to_string()));
                    }
                    Ok(Report {
                        code: 0,
                        text,
                        json: json!({
                            "status": "ok",
                            "ordering": ordering_json(&ord),
                            "alpha": alpha,
                            "weights": weights,
                        }),
                    })
                }
                None => Ok(not_member_report()),
            }
        }
        MetricCmd::Tsp { args, oracle } => {
            let m = Metric::parse_text(&read_input(&args.file)?)?;
            if let Some(r) = triangle_gate(&m, args.require_triangle) {
                return Ok(r);
            }
            match tsp_kalmanson(&m)? {
                Some(tour) => {
                    let mut text = format!(
                        "tour: {}\nlength: {}\n",
                        ordering_text(tour.ordering()),
                        tour.length()
                    );
                    let mut body = json!({
                        "status": "ok",
                        "tour": ordering_json(tour.ordering()),
                        "length": tour.length().to_string(),
                    });
                    if *oracle {
                        let brute = tsp_bruteforce(&m)?;
                        let agrees = brute.length() == tour.length();
                        let _ = writeln!(
                            text,
                            "oracle length: {} ({})",
                            brute.length(),
                            if agrees { "agrees" } else { "DISAGREES" }
                        );
                        body["oracle_length"] =
                            Value::from(brute.length().to_string());
                        body["oracle_agrees"] = Value::from(agrees);
                        if !agrees {
                            body["status"] = Value::from("violation");
                            return Ok(Report { code: 1, text, json: body });
                        }
                    }
                    Ok(Report { code: 0, text, json: body })
                }
                None => {
                    let mut report = not_member_report();
                    if *oracle {
                        let brute = tsp_bruteforce(&m)?;
                        let _ = writeln!(
                            report.text,
                            "oracle tour: {}\noracle length: {}",
                            ordering_text(brute.ordering()),
                            brute.length()
                        );
                        report.json["oracle_tour"] =
                            ordering_json(brute.ordering());
                        report.json["oracle_length"] =
                            Value::from(brute.length().to_string());
                    }
                    Ok(report)
                }
            }
        }
    }
}

/// Renders a complete f-vector as text and JSON.
fn complete_fvector(n: usize, counts: &[u64]) -> (String, Value) {
    let parts: Vec<String> = counts.iter().map(ToString::to_string).collect();
    (
        format!("f-vector (n = {n}): ({})\n", parts.join(", ")),
        Value::from(counts.to_vec()),
    )
}

fn run_complex(cmd: &ComplexCmd) -> Result<Report, Error> {
    use crate::enumeration::{
        facets, fvector_bruteforce, fvector_formulas, triangles,
        triangles_bruteforce, MAX_FORMULA,
    };
    match cmd {
        ComplexCmd::Fvector { n, method } => match method {
            Method::Brute => {
                let f = fvector_bruteforce(*n)?;
                let (text, value) = complete_fvector(*n, f.counts());
                Ok(Report {
                    code: 0,
                    text,
                    json: json!({ "status": "ok", "n": n, "f": value }),
                })
            }
            Method::Formula => {
                let f = fvector_formulas(*n)?;
                let parts: Vec<String> = f
                    .iter()
                    .map(|e| match e {
                        Some(v) => v.to_string(),
                        None => "?".into(),
                    })
                    .collect();
                let value: Vec<Value> = f
                    .iter()
                    .map(|e| match e {
                        Some(v) => Value::from(*v as u64),
                        None => Value::Null,
                    })
                    .collect();
                Ok(Report {
                    code: 0,
                    text: format!(
                        "f-vector (n = {n}): ({})\n",
                        parts.join(", ")
                    ),
                    json: json!({ "status": "ok", "n": n, "f": value }),
                })
            }
            Method::Both => {
                let brute = fvector_bruteforce(*n)?;
                let formulas = fvector_formulas(*n)?;
                let mismatch: Vec<usize> = formulas
                    .iter()
                    .enumerate()
                    .filter_map(|(k, e)| {
                        e.filter(|&v| v != brute.counts()[k] as u128)
                            .map(|_| k)
                    })
                    .collect();
                let (mut text, value) = complete_fvector(*n, brute.counts());
                if mismatch.is_empty() {
                    text.push_str("brute force and closed forms agree\n");
                    Ok(Report {
                        code: 0,
                        text,
                        json: json!({
                            "status": "ok",
                            "n": n,
                            "f": value,
                            "methods_agree": true,
                        }),
                    })
                } else {
                    let _ = writeln!(
                        text,
                        "MISMATCH at indices {mismatch:?}"
                    );
                    Ok(Report {
                        code: 1,
                        text,
                        json: json!({
                            "status": "violation",
                            "n": n,
                            "f": value,
                            "methods_agree": false,
                            "mismatch_indices": mismatch,
                        }),
                    })
                }
            }
        },
        ComplexCmd::Triangles { n, method } => {
            let formula_count = |n: usize| -> Result<u128, Error> {
                if !(4..=MAX_FORMULA).contains(&n) {
                    return Err(Error::SizeGuard {
                        what: "closed-form triangle count",
                        min: 4,
                        max: MAX_FORMULA,
                        got: n,
                    });
                }
                Ok(triangles(n))
            };
            let (count, extra) = match method {
                Method::Brute => (triangles_bruteforce(*n)?.0, None),
                Method::Formula => (formula_count(*n)?, None),
                Method::Both => {
                    let brute = triangles_bruteforce(*n)?.0;
                    let formula = formula_count(*n)?;
                    (brute, Some(formula == brute))
                }
            };
            let mut text = format!("triangles (n = {n}): {count}\n");
            let mut body = json!({
                "status": "ok",
                "n": n,
                "triangles": count as u64,
            });
            match extra {
                Some(true) => {
                    text.push_str("brute force and closed form agree\n");
                    body["methods_agree"] = Value::from(true);
                }
                Some(false) => {
                    text.push_str("MISMATCH between methods\n");
                    body["methods_agree"] = Value::from(false);
                    body["status"] = Value::from("violation");
                    return Ok(Report { code: 1, text, json: body });
                }
                None => {}
            }
            Ok(Report { code: 0, text, json: body })
        }
        ComplexCmd::Facets { n } => {
            let fs = facets(*n)?;
            let mut text = format!("facets (n = {n}): {}\n", fs.len());
            let mut list = Vec::with_capacity(fs.len());
            for f in &fs {
                let _ = writeln!(text, "{}", ordering_text(f.ordering()));
                list.push(ordering_json(f.ordering()));
            }
            Ok(Report {
                code: 0,
                text,
                json: json!({
                    "status": "ok",
                    "n": n,
                    "count": fs.len(),
                    "facets": list,
                }),
            })
        }
    }
}

fn run_generate(cmd: &GenerateCmd) -> Result<Report, Error> {
    match cmd {
        GenerateCmd::System { n, k, seed } => {
            let max = (1usize << (n - 1)).saturating_sub(n + 1);
            crate::splits::validate_ground_set(*n)?;
            if *k > max {
                return Err(Error::InvalidSystem(format!(
                    "only {max} non-trivial splits exist for n = {n}"
                )));
            }
            let mut rng = generate::rng(*seed);
            let ss = generate::random_system(&mut rng, *n, *k);
            let text = ss.to_json_string();
            let value: Value = serde_json::from_str(&text)
                .expect("system serialization is valid JSON");
            Ok(Report {
                code: 0,
                text: format!("{text}\n"),
                json: json!({ "status": "ok", "system": value }),
            })
        }
        GenerateCmd::Metric { n, seed } => {
            crate::splits::validate_ground_set(*n)?;
            let mut rng = generate::rng(*seed);
            let m = generate::random_metric(&mut rng, *n);
            Ok(Report {
                code: 0,
                text: m.to_text(),
                json: json!({ "status": "ok", "rows": metric_rows(&m) }),
            })
        }
        GenerateCmd::Kalmanson { n, seed, scrambled } => {
            crate::splits::validate_ground_set(*n)?;
            let mut rng = generate::rng(*seed);
            let (ord, m) =
                generate::random_circular_metric(&mut rng, *n, *scrambled);
            Ok(Report {
                code: 0,
                text: m.to_text(),
                json: json!({
                    "status": "ok",
                    "ordering": ordering_json(&ord),
                    "rows": metric_rows(&m),
                }),
            })
        }
    }
}

fn metric_rows(m: &Metric) -> Vec<Vec<String>> {
    m.entries()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut argv = vec!["kalmanson".to_string()];
        argv.extend(args.iter().map(ToString::to_string));
        let mut out = Vec::new();
        let code = run(argv, &mut out);
        (code, String::from_utf8(out).expect("output is utf-8"))
    }

    fn temp_file(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().expect("temp file");
        f.write_all(content.as_bytes()).expect("write");
        f
    }

    fn system_json(n: usize, blocks: &[&[usize]]) -> String {
        let ss = SplitSystem::new(
            n,
            blocks.iter().map(|b| Split::new(n, b).unwrap()),
        )
        .unwrap();
        ss.to_json_string()
    }

    #[test]
    fn splits_circular_reports_a_witness() {
        // Arcs of (1 2 3 4 5): circular with the identity ordering.
        let f = temp_file(&system_json(5, &[&[2, 3], &[4, 5], &[3, 4, 5]]));
        let (code, out) = run_cli(&["splits", "circular", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "circular\nordering: (1 2 3 4 5)\n");

        let (code, out) = run_cli(&[
            "splits",
            "circular",
            f.path().to_str().unwrap(),
            "--json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["ordering"], json!([1, 2, 3, 4, 5]));
    }

    #[test]
    fn empty_systems_are_vacuously_circular() {
        let f = temp_file(r#"{"n":5,"splits":[]}"#);
        let (code, out) =
            run_cli(&["splits", "circular", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "circular\nordering: (1 2 3 4 5)\n");
    }

    #[test]
    fn splits_circular_rejects_crossing_systems() {
        // {1,3} and {1,4} and {1,2} blocks force incompatible arcs.
        let f = temp_file(&system_json(
            5,
            &[&[2, 4], &[2, 5], &[3, 4], &[3, 5], &[2, 3]],
        ));
        let (code, out) =
            run_cli(&["splits", "circular", f.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert_eq!(out, "not circular\n");
    }

    #[test]
    fn splits_weakly_compatible_reports_triples() {
        let good = temp_file(&system_json(5, &[&[2, 3], &[4, 5]]));
        let (code, out) = run_cli(&[
            "splits",
            "weakly-compatible",
            good.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "weakly compatible\n");

        let bad = temp_file(&system_json(
            5,
            &[&[3, 4, 5], &[2, 4, 5], &[2, 3, 5]],
        ));
        let (code, out) = run_cli(&[
            "splits",
            "weakly-compatible",
            bad.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
        assert!(out.starts_with("not weakly compatible\n"), "{out}");
        assert!(out.contains("hub: 2"), "{out}");
    }

    #[test]
    fn splits_to_matrix_prints_the_encoding() {
        let f = temp_file(&system_json(5, &[&[2, 3], &[4, 5]]));
        let (code, out) =
            run_cli(&["splits", "to-matrix", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        // Rows are sorted lexicographically, column 0 first.
        assert_eq!(out, "00011\n01100\n");
    }

    #[test]
    fn matrix_commands_give_witnesses_and_verdicts() {
        let scattered = temp_file("00110\n11100\n01001\n11101\n");
        let (code, out) =
            run_cli(&["matrix", "c1r", scattered.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "consecutive ones order exists\ncolumns: 4 3 1 2 5\n"
        );

        // The cyclic 3x3 pattern: circular but not consecutive.
        let wheel = temp_file("110\n011\n101\n");
        let (code, out) =
            run_cli(&["matrix", "c1r", wheel.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert_eq!(out, "no consecutive ones order\n");
        let (code, _) =
            run_cli(&["matrix", "circ1r", wheel.path().to_str().unwrap()]);
        assert_eq!(code, 0);
    }

    #[test]
    fn matrix_tucker_finds_the_smallest_family() {
        let wheel = temp_file("110\n011\n101\n");
        let (code, out) =
            run_cli(&["matrix", "tucker", wheel.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert_eq!(
            out,
            "forbidden configuration: family I, k = 1\nrows: 1 2 3\ncolumns: 1 2 3\n"
        );

        let clean = temp_file("1100\n0110\n0011\n");
        let (code, out) =
            run_cli(&["matrix", "tucker", clean.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "no forbidden configuration\n");
    }

    #[test]
    fn metric_kalmanson_verdicts() {
        let member = temp_file("0 0 1 1 1\n0 0 1 1 1\n1 1 0 0 0\n1 1 0 0 0\n1 1 0 0 0\n");
        let (code, out) = run_cli(&[
            "metric",
            "kalmanson",
            member.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "kalmanson conditions hold\n");

        // The split {1,3}|{2,4,5} read in the identity labeling.
        let crossing = temp_file("0 1 0 1 1\n1 0 1 0 0\n0 1 0 1 1\n1 0 1 0 0\n1 0 1 0 0\n");
        let (code, out) = run_cli(&[
            "metric",
            "kalmanson",
            crossing.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
        assert_eq!(
            out,
            "kalmanson conditions fail\nquadruple: 1 2 3 4\n"
        );

        // ... but recognizable under a reordering: the first ordering
        // examined that keeps {2,4,5} consecutive is (1 2 4 5 3).
        let (code, out) = run_cli(&[
            "metric",
            "recognize",
            crossing.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "circular decomposable\nordering: (1 2 4 5 3)\n"
        );
    }

    #[test]
    fn metric_triangle_gate_fires_first() {
        let bad = temp_file("0 1 5\n1 0 1\n5 1 0\n");
        // Without the gate: too few points for the four-point condition,
        // but the parse succeeds and the conditions hold vacuously.
        let (code, _) =
            run_cli(&["metric", "kalmanson", bad.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        let (code, out) = run_cli(&[
            "metric",
            "kalmanson",
            bad.path().to_str().unwrap(),
            "--require-triangle",
        ]);
        assert_eq!(code, 1);
        assert_eq!(out, "triangle inequality fails\ntriple: 1 2 3\n");
    }

    #[test]
    fn metric_decompose_emits_exact_weights() {
        // Twice the cut metric of 23|145 plus one unit at point 2:
        // separated pairs of the cut are 12,13,24,25,34,35.
        let text = "0 3 2 0 0\n3 0 1 3 3\n2 1 0 2 2\n0 3 2 0 0\n0 3 2 0 0\n";
        let f = temp_file(text);
        let (code, out) = run_cli(&[
            "metric",
            "decompose",
            f.path().to_str().unwrap(),
            "--json",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["ordering"], json!([1, 2, 3, 4, 5]));
        assert_eq!(v["alpha"], json!(["0", "1", "0", "0", "0"]));
        assert_eq!(v["weights"], json!({ "2,3": "2" }));

        // Sum of the cut metrics with blocks 245, 235, 345: no circular
        // ordering keeps all three consecutive.
        let off = temp_file(
            "0 2 2 2 3\n2 0 2 2 1\n2 2 0 2 1\n2 2 2 0 1\n3 1 1 1 0\n",
        );
        let (code, out) = run_cli(&[
            "metric",
            "decompose",
            off.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 1, "{out}");
        assert_eq!(out, "not circular decomposable\n");
    }

    #[test]
    fn metric_tsp_with_oracle_agrees() {
        let member = temp_file("0 0 1 1 1\n0 0 1 1 1\n1 1 0 0 0\n1 1 0 0 0\n1 1 0 0 0\n");
        let (code, out) = run_cli(&[
            "metric",
            "tsp",
            member.path().to_str().unwrap(),
            "--oracle",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "tour: (1 2 3 4 5)\nlength: 2\noracle length: 2 (agrees)\n"
        );
    }

    #[test]
    fn complex_commands_match_published_counts() {
        let (code, out) =
            run_cli(&["complex", "fvector", "--n", "5", "--method", "both"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "f-vector (n = 5): (10, 45, 90, 60, 12)\nbrute force and closed forms agree\n"
        );

        let (code, out) =
            run_cli(&["complex", "fvector", "--n", "8", "--method", "formula"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("f-vector (n = 8): (119, 7021, 178878, ?"));
        assert!(out.trim_end().ends_with("50400, 2520)"));

        let (code, out) = run_cli(&["complex", "triangles", "--n", "13"]);
        assert_eq!(code, 0);
        assert_eq!(out, "triangles (n = 13): 3100707610\n");

        let (code, out) = run_cli(&["complex", "facets", "--n", "4"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "facets (n = 4): 3\n(1 2 3 4)\n(1 2 4 3)\n(1 3 2 4)\n"
        );
    }

    #[test]
    fn generated_instances_flow_back_through_the_tools() {
        let (code, metric_text) =
            run_cli(&["generate", "kalmanson", "--n", "6", "--seed", "9", "--scrambled"]);
        assert_eq!(code, 0);
        let f = temp_file(&metric_text);
        let (code, out) =
            run_cli(&["metric", "recognize", f.path().to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");

        let (code, sys_text) =
            run_cli(&["generate", "system", "--n", "7", "--k", "4", "--seed", "3"]);
        assert_eq!(code, 0);
        let f = temp_file(&sys_text);
        let (code, _) = run_cli(&[
            "splits",
            "weakly-compatible",
            f.path().to_str().unwrap(),
        ]);
        assert!(code == 0 || code == 1, "verdict, not an input error");
    }

    #[test]
    fn output_is_deterministic() {
        for args in [
            vec!["complex", "fvector", "--n", "6", "--method", "both"],
            vec!["complex", "facets", "--n", "5", "--json"],
            vec!["generate", "metric", "--n", "5", "--seed", "7"],
        ] {
            let (c1, o1) = run_cli(&args);
            let (c2, o2) = run_cli(&args);
            assert_eq!(c1, c2);
            assert_eq!(o1, o2, "non-deterministic output for {args:?}");
        }
    }

    #[test]
    fn bad_inputs_exit_two() {
        let (code, out) = run_cli(&["splits", "circular", "/no/such/file"]);
        assert_eq!(code, 2);
        assert!(out.starts_with("error: "), "{out}");

        let garbage = temp_file("this is not json");
        let (code, _) =
            run_cli(&["splits", "circular", garbage.path().to_str().unwrap()]);
        assert_eq!(code, 2);

        let asym = temp_file("0 1\n2 0\n");
        let (code, _) =
            run_cli(&["metric", "kalmanson", asym.path().to_str().unwrap()]);
        assert_eq!(code, 2);

        // Guard violations are input errors.
        let (code, _) = run_cli(&["complex", "fvector", "--n", "9", "--method", "brute"]);
        assert_eq!(code, 2);

        // Unknown flags are usage errors.
        let (code, _) = run_cli(&["complex", "fvector", "--bogus"]);
        assert_eq!(code, 2);

        // Help is not an error.
        let (code, out) = run_cli(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }
}
