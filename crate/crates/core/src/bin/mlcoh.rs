//! `mlcoh`: supports, ends, anchors and finiteness dimensions of monomial
//! local cohomology, verification suites and support diagrams.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mlcoh::grading::PointSet;
use mlcoh::instance_io::{parse_field, parse_pattern, Instance, InstanceFile};
use mlcoh::invariants::anchors::anchor_points;
use mlcoh::invariants::ends::{end_in, q_bound};
use mlcoh::invariants::finiteness::{f_in, g_in};
use mlcoh::invariants::kunneth::{kunneth_support, natural_base, prescribed_supports};
use mlcoh::invariants::verify::Outcome;
use mlcoh::invariants::CohomologyTable;
use mlcoh::render::{ascii, json_boxes, svg, RenderSpec};
use mlcoh::{suite, Error};

#[derive(Parser)]
#[command(name = "mlcoh", version, about = "Multigraded local cohomology of monomial modules")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Ascii, global = true)]
    format: Format,
    /// Diagram window `LO,HI`, applied to every coordinate.
    #[arg(long, default_value = "-5,4", global = true, allow_hyphen_values = true)]
    window: String,
    /// Override the coefficient field of the instance (QQ or GF(p)).
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Svg,
    Json,
}

#[derive(Args)]
struct Pair {
    /// Instance file.
    instance: PathBuf,
    /// Ideal: a declared name, `R_+`, or `(x^2, y)`.
    #[arg(long, short = 'b')]
    ideal: String,
    /// Module name (`S` is the free module).
    #[arg(long, short = 'M', default_value = "S")]
    module: String,
}

#[derive(Subcommand)]
enum Command {
    /// Coarse support of H^i_b(M), rendered and dumped as boxes.
    Support {
        #[command(flatten)]
        pair: Pair,
        #[arg(short)]
        i: usize,
    },
    /// end(H^i_b(M)); every index when -i is omitted.
    End {
        #[command(flatten)]
        pair: Pair,
        #[arg(short)]
        i: Option<usize>,
    },
    /// Anchor points anch^i(p, M).
    Anchors {
        instance: PathBuf,
        /// Prime: a declared name or `(x, y)`.
        #[arg(long, short = 'p')]
        prime: String,
        #[arg(long, short = 'M', default_value = "S")]
        module: String,
        #[arg(short)]
        i: Option<usize>,
    },
    /// g^Q_b(M), with the witnessing domains.
    Gdim {
        #[command(flatten)]
        pair: Pair,
        /// Color set such as `{1,2}`; `{}` is the empty set.
        #[arg(long, short = 'Q')]
        q: String,
    },
    /// f^a_b(M) for a monomial ideal a.
    Fdim {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, short = 'a')]
        a: String,
    },
    /// The Q-bound bnd^Q(M).
    Bnd {
        instance: PathBuf,
        #[arg(long, short = 'M', default_value = "S")]
        module: String,
        #[arg(long, short = 'Q')]
        q: String,
    },
    /// Run the verification checks; exit 1 if any fails.
    Verify {
        /// Instance files; the suite is used when none are given.
        instances: Vec<PathBuf>,
        /// `bundled` or a directory of `.inst` files.
        #[arg(long)]
        suite: Option<String>,
        /// Restrict to the named checks.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Supports of H^i_{R_+}(A ⊗ B) from one-dimensional factor supports.
    Kunneth {
        /// `figure1`: w = v = 5, W = {2}, V = {3}.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 5)]
        w: usize,
        #[arg(long, default_value_t = 5)]
        v: usize,
        /// Middle indices with support {0} in the first factor.
        #[arg(long = "first", value_delimiter = ',')]
        first: Vec<usize>,
        /// Middle indices with support {0} in the second factor.
        #[arg(long = "second", value_delimiter = ',')]
        second: Vec<usize>,
        /// Indices to draw.
        #[arg(short, value_delimiter = ',', default_values_t = vec![2, 3, 4, 5])]
        i: Vec<usize>,
    },
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(2, format!("error: {e}"))
    }
}

fn load(path: &PathBuf, field: Option<&str>) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(2, format!("error: {}: {e}", path.display())))?;
    let located = |e: Error| Failure(2, format!("error: {}:{e}", path.display()));
    match field {
        None => Instance::parse(&text).map_err(located),
        Some(f) => {
            let mut file = InstanceFile::parse(&text).map_err(located)?;
            file.field = parse_field(f).map_err(|m| Failure(2, format!("error: --field: {m}")))?;
            Instance::parse(&file.serialize()).map_err(located)
        }
    }
}

fn window(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure(2, format!("error: --window expects `LO,HI`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let (lo, hi) = (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Diagram plus region dump for rank ≤ 2; region dump only otherwise.
fn show_set(set: &PointSet, rank: usize, title: &str, cli: &Cli) -> Result<String, Failure> {
    let (lo, hi) = window(&cli.window)?;
    let drawable = (1..=2).contains(&rank);
    Ok(match cli.format {
        Format::Json => {
            let mut v = json_boxes(set);
            v["title"] = json!(title);
            format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialize"))
        }
        Format::Svg if drawable => svg(set, &RenderSpec::cube(rank, lo, hi)?)?,
        Format::Svg => return Err(Failure(2, format!("error: cannot draw a rank {rank} set as SVG"))),
        Format::Ascii if drawable => {
            format!("{title}\n{}region: {set}\n", ascii(set, &RenderSpec::cube(rank, lo, hi)?)?)
        }
        Format::Ascii => format!("{title}\nregion: {set}\n"),
    })
}

fn table_rows(rows: Vec<(String, String)>, cli: &Cli) -> String {
    match cli.format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = rows.into_iter().map(|(k, v)| (k, json!(v))).collect();
            format!("{}\n", serde_json::to_string_pretty(&map).expect("JSON values serialize"))
        }
        _ => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.into_iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
        }
    }
}

fn run(cli: &Cli) -> Result<(u8, String), Failure> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Support { pair, i } => {
            let inst = load(&pair.instance, field)?;
            let table = CohomologyTable::new(&inst.ideal(&pair.ideal)?, &inst.module(&pair.module)?);
            let title = format!("S(H^{i}_{}({}))", pair.ideal, pair.module);
            Ok((0, show_set(&table.coarse(*i), inst.grading.rank(), &title, cli)?))
        }
        Command::End { pair, i } => {
            let inst = load(&pair.instance, field)?;
            let table = CohomologyTable::new(&inst.ideal(&pair.ideal)?, &inst.module(&pair.module)?);
            let indices: Vec<usize> = match i {
                Some(i) => vec![*i],
                None => (0..=table.top()).collect(),
            };
            let mut rows = Vec::new();
            for j in indices {
                let points = if j > table.top() { PointSet::empty() } else { end_in(&table, j)?.points };
                rows.push((format!("end H^{j}"), points.to_string()));
            }
            Ok((0, table_rows(rows, cli)))
        }
        Command::Anchors { instance, prime, module, i } => {
            let inst = load(instance, field)?;
            let p = inst.prime(prime)?;
            let m = inst.module(module)?;
            let indices: Vec<usize> = match i {
                Some(i) => vec![*i],
                None => (0..=p.vars().len()).collect(),
            };
            let mut rows = Vec::new();
            for j in indices {
                rows.push((format!("anch^{j}"), anchor_points(&p, &m, j)?.points.to_string()));
            }
            Ok((0, table_rows(rows, cli)))
        }
        Command::Gdim { pair, q } => {
            let inst = load(&pair.instance, field)?;
            let q = parse_pattern(q, inst.grading.rank())?;
            let table = CohomologyTable::new(&inst.ideal(&pair.ideal)?, &inst.module(&pair.module)?);
            let report = g_in(&table, &q)?;
            let mut rows = vec![(format!("g^{q}"), report.value.to_string())];
            rows.extend(report.witnesses.iter().enumerate().map(|(k, w)| (format!("witness {k}"), w.to_string())));
            Ok((0, table_rows(rows, cli)))
        }
        Command::Fdim { pair, a } => {
            let inst = load(&pair.instance, field)?;
            let table = CohomologyTable::new(&inst.ideal(&pair.ideal)?, &inst.module(&pair.module)?);
            let value = f_in(&table, &inst.ideal(a)?);
            Ok((0, table_rows(vec![(format!("f^({a})"), value.to_string())], cli)))
        }
        Command::Bnd { instance, module, q } => {
            let inst = load(instance, field)?;
            let q = parse_pattern(q, inst.grading.rank())?;
            let bound = q_bound(&inst.module(module)?, &q)?;
            Ok((0, table_rows(vec![(format!("bnd^{q}"), bound.to_string())], cli)))
        }
        Command::Verify { instances, suite: which, checks } => {
            let mut all = Vec::new();
            for path in instances {
                let label = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
                all.push((label, load(path, field)?));
            }
            match which.as_deref() {
                Some("bundled") => all.extend(suite::bundled()?),
                Some(dir) => all.extend(suite::from_dir(std::path::Path::new(dir))?),
                None if instances.is_empty() => all.extend(suite::bundled()?),
                None => {}
            }
            let reports = suite::verify_all(&all, checks)?;
            let failed = reports.iter().any(|r| !r.passed());
            let text = match cli.format {
                Format::Json => {
                    format!("{}\n", serde_json::to_string_pretty(&reports).expect("reports serialize"))
                }
                _ => {
                    let mut s: String = reports.iter().map(|r| r.render()).collect();
                    let count = |o: Outcome| reports.iter().map(|r| r.count(o)).sum::<usize>();
                    s.push_str(&format!(
                        "total: {} pass, {} fail, {} inconclusive\n",
                        count(Outcome::Pass),
                        count(Outcome::Fail),
                        count(Outcome::Inconclusive)
                    ));
                    s
                }
            };
            Ok((u8::from(failed), text))
        }
        Command::Kunneth { preset, w, v, first, second, i } => {
            let (w, v, first, second) = match preset.as_deref() {
                Some("figure1") => (5, 5, vec![2], vec![3]),
                Some(other) => return Err(Failure(2, format!("error: unknown preset `{other}`"))),
                None => (*w, *v, first.clone(), second.clone()),
            };
            let (sa, sb) = (prescribed_supports(w, &first), prescribed_supports(v, &second));
            let base = natural_base();
            let mut out = String::new();
            for &k in i {
                let set = kunneth_support(&sa, &sb, &base, &base, k);
                out.push_str(&show_set(&set, 2, &format!("S(H^{k}_R+(R))"), cli)?);
            }
            Ok((0, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((code, text)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
