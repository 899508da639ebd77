use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use signrank::experiment::{run_experiment, write_csv, ExperimentConfig, InstanceSource};
use signrank::generate::{generate_matrix, MatrixKind};
use signrank::io::{
    decomposition_from_json, family_from_json, family_to_json, matrix_to_json, read_matrix,
    read_tensor, DecompositionJson, OracleJson, TensorDecompositionJson,
};
use signrank::tensor::{tensor_signed_decomposition_with, TensorOptions};
use signrank::{
    best_monochromatic_subfamilies, check_cross_intersecting, decompose_with, exact_partition_number,
    exact_rank, exact_signed_rank, max_monochromatic_rectangle, signed_to_cross_intersecting,
    BoolMatrix, DecomposeOptions, Error, IndependenceConfig, IntersectionSpec, SearchBudget,
    SignedDecomposition,
};

#[derive(Parser)]
#[command(version, about = "Signed rectangle decompositions and exact small-instance oracles")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input file; stdin when omitted or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for exact searches.
    #[arg(long, global = true, default_value_t = SearchBudget::default().nodes)]
    budget_nodes: u64,
    /// Largest column set checked by subset-sum enumeration.
    #[arg(long, global = true, default_value_t = IndependenceConfig::default().cap)]
    cap_independence: usize,
    /// Column scan order for the greedy independent set, 1-based, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Tensor coordinate split first, 1-based (default: last).
    #[arg(long, global = true)]
    lambda: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    RandomDensity,
    RectangleSum,
    Identity,
    ComplementIdentity,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 4)]
    rows: usize,
    #[arg(long, default_value_t = 4)]
    cols: usize,
    /// Cell probability for `random-density`.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Rectangle count for `rectangle-sum`.
    #[arg(long, default_value_t = 3)]
    k: usize,
}

impl GenArgs {
    fn kind(&self) -> MatrixKind {
        let (m, n) = (self.rows, self.cols);
        match self.kind {
            Kind::RandomDensity => MatrixKind::RandomDensity { m, n, density: self.density },
            Kind::RectangleSum => MatrixKind::RectangleSum { m, n, k: self.k },
            Kind::Identity => MatrixKind::Identity { n },
            Kind::ComplementIdentity => MatrixKind::ComplementIdentity { n },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact rank over the rationals.
    Rank,
    /// Constructive signed rectangle decomposition.
    Decompose,
    /// Check a decomposition against a matrix.
    Verify {
        #[arg(long)]
        decomposition: PathBuf,
    },
    /// Exact signed rectangle rank.
    ExactUr,
    /// Exact partition number.
    ExactP,
    /// Largest monochromatic rectangle.
    Monorect,
    /// Signed primitive-tensor decomposition.
    TensorDecompose,
    /// Cross-intersecting family pair from a signed decomposition.
    ToSetsys {
        /// Decomposition JSON; the constructive one when omitted.
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Check a family pair's intersection sizes.
    CheckSetsys {
        /// Allowed intersection sizes, comma separated.
        #[arg(long, value_delimiter = ',', required_unless_present = "ab")]
        values: Option<Vec<usize>>,
        /// `a,b`: report the largest {a}- or {b}-cross-intersecting subfamilies.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        ab: Option<Vec<usize>>,
    },
    /// Generate a matrix.
    Gen(GenArgs),
    /// Run the experiment harness and emit CSV.
    Experiment {
        #[command(flatten)]
        gen: Option<GenArgs>,
        /// Number of generated instances.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Enumerate every matrix of this shape instead, e.g. `3x3`.
        #[arg(long, conflicts_with = "kind")]
        exhaustive: Option<String>,
        #[arg(long)]
        no_ur: bool,
        #[arg(long)]
        no_p: bool,
        #[arg(long)]
        no_mono: bool,
        /// Drop wall-time columns so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_file(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn zero_based(v: &[usize], what: &str) -> anyhow::Result<Vec<usize>> {
    v.iter()
        .map(|&x| match x.checked_sub(1) {
            Some(y) => Ok(y),
            None => Err(Error::Usage(format!("{what} is 1-based, got 0")).into()),
        })
        .collect()
}

fn set_text(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn decomposition_text(d: &SignedDecomposition) -> String {
    let mut out = format!("# {} terms, {}x{}\n", d.len(), d.rows(), d.cols());
    for t in d.terms() {
        let s = if t.sign.value() > 0 { '+' } else { '-' };
        out.push_str(&format!("{s} {} x {}\n", set_text(t.rect.rows()), set_text(t.rect.cols())));
    }
    out
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run(cli: Cli) -> anyhow::Result<(String, ExitCode)> {
    let c = &cli.common;
    let budget = SearchBudget::nodes(c.budget_nodes);
    let independence = IndependenceConfig::with_cap(c.cap_independence);
    let format = c.format;
    let ok = ExitCode::SUCCESS;
    let decompose_opts = || -> anyhow::Result<DecomposeOptions> {
        Ok(DecomposeOptions {
            order: c.order.as_deref().map(|o| zero_based(o, "column order")).transpose()?,
            independence,
        })
    };
    let matrix = || -> anyhow::Result<BoolMatrix> { Ok(read_matrix(&read_input(c.input.as_ref())?)?) };

    let out = match &cli.command {
        Command::Rank => {
            let r = exact_rank(&matrix()?);
            match format {
                Some(Format::Json) => json!({ "rank": r }).to_string(),
                _ => r.to_string(),
            }
        }
        Command::Decompose => {
            let m = matrix()?;
            let res = decompose_with(&m, &decompose_opts()?)?;
            match format {
                Some(Format::Text) => format!(
                    "# independent columns {}\n{}",
                    set_text(res.independent.columns()),
                    decomposition_text(&res.decomposition)
                ),
                _ => to_json(&DecompositionJson::from(&res.decomposition)),
            }
        }
        Command::Verify { decomposition } => {
            let m = matrix()?;
            let d = decomposition_from_json(&read_file(decomposition)?)?;
            if d.verify(&m)? {
                "ok".to_string()
            } else {
                return Ok(("mismatch".into(), ExitCode::from(4)));
            }
        }
        Command::ExactUr | Command::ExactP => {
            let m = matrix()?;
            let res = if matches!(cli.command, Command::ExactUr) {
                exact_signed_rank(&m, budget)?
            } else {
                exact_partition_number(&m, budget)?
            };
            match format {
                Some(Format::Text) => format!(
                    "value {} exhausted {} lower_bound {} nodes {}\n{}",
                    res.value,
                    res.exhausted,
                    res.lower_bound,
                    res.nodes,
                    decomposition_text(&res.witness)
                ),
                _ => to_json(&OracleJson::from(&res)),
            }
        }
        Command::Monorect => {
            let r = max_monochromatic_rectangle(&matrix()?)?;
            let rows: Vec<usize> = r.rect.rows().iter().map(|x| x + 1).collect();
            let cols: Vec<usize> = r.rect.cols().iter().map(|x| x + 1).collect();
            match format {
                Some(Format::Text) => format!(
                    "value {} rows {} cols {} density {}",
                    u8::from(r.value),
                    set_text(r.rect.rows()),
                    set_text(r.rect.cols()),
                    r.density
                ),
                _ => to_json(&json!({
                    "value": u8::from(r.value),
                    "rows": rows,
                    "cols": cols,
                    "density": r.density.to_string(),
                })),
            }
        }
        Command::TensorDecompose => {
            let t = read_tensor(&read_input(c.input.as_ref())?)?;
            let lambda = match c.lambda {
                Some(l) => Some(zero_based(&[l], "lambda")?[0]),
                None => None,
            };
            let opts = TensorOptions {
                lambda,
                independence,
                ..TensorOptions::default()
            };
            let d = tensor_signed_decomposition_with(&t, &opts)?;
            to_json(&TensorDecompositionJson::from(&d))
        }
        Command::ToSetsys { decomposition } => {
            let m = matrix()?;
            let dec = match decomposition {
                Some(p) => decomposition_from_json(&read_file(p)?)?,
                None => decompose_with(&m, &decompose_opts()?)?.decomposition,
            };
            let red = signed_to_cross_intersecting(&m, &dec)?;
            match format {
                Some(Format::Text) => format!(
                    "u {} d {} values {{{},{}}}",
                    red.u,
                    red.family.universe(),
                    red.u,
                    red.u + 1
                ),
                _ => family_to_json(&red.family),
            }
        }
        Command::CheckSetsys { values, ab } => {
            let p = family_from_json(&read_input(c.input.as_ref())?)?;
            if let Some(ab) = ab {
                let [a, b] = ab[..] else {
                    bail!(Error::Usage("--ab takes exactly two values".into()));
                };
                let best = best_monochromatic_subfamilies(&p, a, b)?;
                to_json(&json!({
                    "value": best.value,
                    "S": best.left.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "T": best.right.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "density": best.density.to_string(),
                }))
            } else {
                let spec = IntersectionSpec::new(values.clone().unwrap_or_default())?;
                let holds = check_cross_intersecting(&p, &spec);
                let text = match format {
                    Some(Format::Json) => json!({ "cross_intersecting": holds }).to_string(),
                    _ => holds.to_string(),
                };
                if !holds {
                    return Ok((text, ExitCode::from(4)));
                }
                text
            }
        }
        Command::Gen(g) => {
            let m = generate_matrix(&g.kind(), c.seed)?;
            match format {
                Some(Format::Json) => matrix_to_json(&m),
                _ => m.to_text().trim_end().to_string(),
            }
        }
        Command::Experiment { gen, count, exhaustive, no_ur, no_p, no_mono, no_timing } => {
            let source = match (exhaustive, gen) {
                (Some(shape), _) => {
                    let (a, b) = shape
                        .split_once('x')
                        .ok_or_else(|| Error::Usage(format!("bad shape {shape:?}, use MxN")))?;
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|e| Error::Usage(format!("bad shape {shape:?}: {e}")))
                    };
                    InstanceSource::Exhaustive { m: parse(a)?, n: parse(b)? }
                }
                (None, Some(g)) => InstanceSource::Generated { kind: g.kind(), count: *count },
                (None, None) => bail!(Error::Usage(
                    "experiment needs --kind or --exhaustive".into()
                )),
            };
            let mut cfg = ExperimentConfig::new(source);
            cfg.seed = c.seed;
            cfg.budget = budget;
            cfg.signed_rank = !no_ur;
            cfg.partition = !no_p;
            cfg.monochromatic = !no_mono;
            cfg.decompose = decompose_opts()?;
            let records = run_experiment(&cfg)?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf, !no_timing)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    Ok((out, ok))
}

fn exit_code(err: &anyhow::Error) -> ExitCode {
    match err.downcast_ref::<Error>() {
        Some(Error::Usage(_)) => ExitCode::from(2),
        Some(Error::ResourceLimit { .. }) => ExitCode::from(3),
        Some(Error::Logic(_)) => ExitCode::from(1),
        Some(_) => ExitCode::from(4),
        None if err.downcast_ref::<io::Error>().is_some() => ExitCode::from(2),
        None => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.common.output.clone();
    match run(cli) {
        Ok((text, code)) => {
            let mut text = text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match output {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display())),
                None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
