use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hirzebruch::character::{full_character, morse_index_direct, reduced_character};
use hirzebruch::fixed_locus::{enumerate_components, enumerate_full_fixed_points, is_admissible};
use hirzebruch::poincare::{
    euler_characteristic, euler_generating_function, morse_index_closed_form, poincare_polynomial,
};
use hirzebruch::poly::PolynomialJson;
use hirzebruch::rational::{self, int};
use hirzebruch::verify::{self, Ranges, VerifyReport};
use hirzebruch::{
    Character, ChernData, ChernVector, Error, FixedComponent, FullFixedPoint, IndexReport, Partition, Rational,
    SurfaceParams,
};

// Guards against i64 overflow in the rational arithmetic.
const MAX_P: i64 = 1000;
const MAX_R: usize = 64;

#[derive(Parser)]
#[command(
    name = "hirzebruch",
    version,
    about = "Fixed-point combinatorics of framed sheaves on Hirzebruch surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poincaré polynomial of the moduli space.
    Poincare(PointArgs),
    /// Euler characteristic (the Poincaré polynomial at t = -1).
    Euler(PointArgs),
    /// Fixed components of the one-parameter subgroup, or full-torus fixed points.
    Components {
        #[command(flatten)]
        point: PointArgs,
        /// List fixed points of the full torus instead.
        #[arg(long)]
        full: bool,
        /// Attach index data to each entry.
        #[arg(long)]
        index: bool,
    },
    /// Generating function of Euler characteristics in q and z.
    Series {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        r: usize,
        /// Truncation order in q (rational).
        #[arg(long, allow_hyphen_values = true)]
        max_order: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tangent character at an explicit fixed-point datum.
    Character(CharacterArgs),
    /// Compare the engine with an independent oracle.
    Verify {
        oracle: Oracle,
        #[arg(long, default_value_t = 4)]
        max_n: i64,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        #[arg(long, default_value_t = 3)]
        max_p: i64,
        #[arg(long, default_value = "5", allow_hyphen_values = true)]
        max_order: String,
        /// Include stacky surfaces where the oracle normally runs ordinary only.
        #[arg(long)]
        stacky: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    /// Self-intersection parameter of the Hirzebruch surface.
    #[arg(long)]
    p: i64,
    /// Allow Chern coefficients in (1/p)Z.
    #[arg(long)]
    stacky: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    r: usize,
    /// First Chern class coefficient, "a/b" or an integer.
    #[arg(long, allow_hyphen_values = true)]
    c1: String,
    /// Discriminant, "a/b" or an integer.
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CharacterArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Rank; defaults to the length of --kvec.
    #[arg(long)]
    r: Option<usize>,
    /// Comma-separated Chern coefficients k_1,...,k_r.
    #[arg(long, allow_hyphen_values = true)]
    kvec: String,
    /// Reduced mode: JSON list of r partitions, one per summand.
    #[arg(long)]
    tableaux: Option<String>,
    /// Full mode: JSON list of r partitions at the first fixed point.
    #[arg(long)]
    tableaux_p1: Option<String>,
    /// Full mode: JSON list of r partitions at the second fixed point.
    #[arg(long)]
    tableaux_p2: Option<String>,
    /// Character of the fixed component (specialized t2 = t1).
    #[arg(long)]
    reduced: bool,
    /// Expected first Chern class; checked against the sum of --kvec.
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    /// Expected discriminant; checked against the box count.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Hilbert,
    Grassmannian,
    Theta,
    IndexConsistency,
    Dimension,
    Connectedness,
    PIndependence,
}

enum Failure {
    Input(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Input(Error::InvalidParams(msg.into()))
}

fn surface(args: &SurfaceArgs) -> std::result::Result<SurfaceParams, Failure> {
    if args.p > MAX_P {
        return Err(invalid(format!("p must be <= {MAX_P}")));
    }
    Ok(SurfaceParams::new(args.p, args.stacky)?)
}

fn rank(r: usize) -> std::result::Result<usize, Failure> {
    if r == 0 || r > MAX_R {
        return Err(invalid(format!("r must be in 1..={MAX_R}")));
    }
    Ok(r)
}

fn chern(args: &PointArgs) -> std::result::Result<(SurfaceParams, ChernData), Failure> {
    let params = surface(&args.surface)?;
    let data = ChernData::new(rank(args.r)?, rational::parse(&args.c1)?, rational::parse(&args.n)?);
    data.validate(&params)?;
    if !is_admissible(&params, &data) {
        eprintln!(
            "warning: no fixed points for p={} r={} c1={} n={}; the result is empty",
            params.p(),
            data.r,
            data.k,
            data.n
        );
    }
    Ok((params, data))
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> std::result::Result<T, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| invalid(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn run_poincare(args: &PointArgs) -> Outcome {
    let (params, data) = chern(args)?;
    let poly = in_pool(args.out.jobs, || poincare_polynomial(&params, &data))??;
    Ok(match args.out.format {
        Format::Text => format!("{}\n", poly.render("t")),
        Format::Json => to_json(&PolynomialJson { var: "t", poly: &poly }),
        Format::Csv => to_csv(
            &["exp", "coeff"],
            poly.terms().map(|(e, c)| vec![e.to_string(), c.to_string()]),
        ),
    })
}

fn run_euler(args: &PointArgs) -> Outcome {
    let (params, data) = chern(args)?;
    let chi = in_pool(args.out.jobs, || euler_characteristic(&params, &data))??;
    Ok(match args.out.format {
        Format::Text => format!("{chi}\n"),
        Format::Json => to_json(&json!({
            "p": params.p(),
            "stacky": params.is_stacky(),
            "r": data.r,
            "c1": data.k.to_string(),
            "n": data.n.to_string(),
            "euler": chi.to_string(),
        })),
        Format::Csv => to_csv(&["euler"], [vec![chi.to_string()]]),
    })
}

fn index_json(report: &IndexReport, closed_form: Option<u64>) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("serializable");
    if let Some(c) = closed_form {
        v["closed_form_index"] = json!(c);
    }
    v
}

fn tableaux_json(t: &[Partition]) -> String {
    serde_json::to_string(t).expect("serializable")
}

fn kvec_text(k: &ChernVector) -> String {
    k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn run_components(args: &PointArgs, full: bool, index: bool) -> Outcome {
    let (params, data) = chern(args)?;
    let format = args.out.format;
    if full {
        let points = enumerate_full_fixed_points(&params, &data)?;
        let indexes: Vec<IndexReport> = in_pool(args.out.jobs, || {
            use rayon::prelude::*;
            points
                .par_iter()
                .map(|pt| morse_index_direct(&full_character(&params, pt)))
                .collect()
        })?;
        return Ok(render_full(format, &points, index.then_some(&indexes)));
    }
    let comps = enumerate_components(&params, &data)?;
    let indexes: Vec<(IndexReport, u64)> = in_pool(args.out.jobs, || {
        use rayon::prelude::*;
        comps
            .par_iter()
            .map(|c| {
                (
                    morse_index_direct(&reduced_character(&params, c)),
                    morse_index_closed_form(&params, c),
                )
            })
            .collect()
    })?;
    Ok(render_components(format, &comps, index.then_some(&indexes)))
}

fn render_components(format: Format, comps: &[FixedComponent], indexes: Option<&Vec<(IndexReport, u64)>>) -> String {
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = comps
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut v = serde_json::to_value(c).expect("serializable");
                    if let Some(ix) = indexes {
                        v["index"] = index_json(&ix[i].0, Some(ix[i].1));
                    }
                    v
                })
                .collect();
            to_json(&json!({ "count": comps.len(), "components": items }))
        }
        Format::Csv => {
            let mut header = vec!["kvec", "tableaux"];
            if indexes.is_some() {
                header.extend([
                    "negative_count",
                    "zero_diagonal_count",
                    "positive_count",
                    "closed_form_index",
                ]);
            }
            to_csv(
                &header,
                comps.iter().enumerate().map(|(i, c)| {
                    let mut row = vec![kvec_text(&c.kvec), tableaux_json(&c.tableaux)];
                    if let Some(ix) = indexes {
                        let (r, cf) = ix[i];
                        row.extend(
                            [r.negative_count, r.zero_diagonal_count, r.positive_count, cf].map(|x| x.to_string()),
                        );
                    }
                    row
                }),
            )
        }
        Format::Text => {
            let mut out = format!("{} components\n", comps.len());
            for (i, c) in comps.iter().enumerate() {
                out.push_str(&format!("k=({}) Y={}", kvec_text(&c.kvec), tableaux_json(&c.tableaux)));
                if let Some(ix) = indexes {
                    let (r, cf) = ix[i];
                    out.push_str(&format!(
                        " index={} zero={} positive={} closed_form={}",
                        r.negative_count, r.zero_diagonal_count, r.positive_count, cf
                    ));
                }
                out.push('\n');
            }
            out
        }
    }
}

fn render_full(format: Format, points: &[FullFixedPoint], indexes: Option<&Vec<IndexReport>>) -> String {
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = points
                .iter()
                .enumerate()
                .map(|(i, pt)| {
                    let mut v = serde_json::to_value(pt).expect("serializable");
                    if let Some(ix) = indexes {
                        v["index"] = index_json(&ix[i], None);
                    }
                    v
                })
                .collect();
            to_json(&json!({ "count": points.len(), "points": items }))
        }
        Format::Csv => {
            let mut header = vec!["kvec", "tableaux_p1", "tableaux_p2"];
            if indexes.is_some() {
                header.extend(["negative_count", "zero_diagonal_count", "positive_count"]);
            }
            to_csv(
                &header,
                points.iter().enumerate().map(|(i, pt)| {
                    let mut row = vec![
                        kvec_text(&pt.kvec),
                        tableaux_json(&pt.tableaux_p1),
                        tableaux_json(&pt.tableaux_p2),
                    ];
                    if let Some(ix) = indexes {
                        let r = ix[i];
                        row.extend([r.negative_count, r.zero_diagonal_count, r.positive_count].map(|x| x.to_string()));
                    }
                    row
                }),
            )
        }
        Format::Text => {
            let mut out = format!("{} points\n", points.len());
            for (i, pt) in points.iter().enumerate() {
                out.push_str(&format!(
                    "k=({}) Y1={} Y2={}",
                    kvec_text(&pt.kvec),
                    tableaux_json(&pt.tableaux_p1),
                    tableaux_json(&pt.tableaux_p2)
                ));
                if let Some(ix) = indexes {
                    let r = ix[i];
                    out.push_str(&format!(
                        " index={} zero={} positive={}",
                        r.negative_count, r.zero_diagonal_count, r.positive_count
                    ));
                }
                out.push('\n');
            }
            out
        }
    }
}

fn run_series(surface_args: &SurfaceArgs, r: usize, max_order: &str, out: &OutputArgs) -> Outcome {
    let params = surface(surface_args)?;
    let r = rank(r)?;
    let order = rational::parse(max_order)?;
    if order < int(0) || order > int(1000) {
        return Err(invalid("max-order must be in [0, 1000]"));
    }
    let series = in_pool(out.jobs, || euler_generating_function(&params, r, order))??;
    Ok(match out.format {
        Format::Json => to_json(&series),
        Format::Csv => to_csv(
            &["q_num", "q_den", "z_num", "z_den", "coeff"],
            series.csv_rows().into_iter().map(Vec::from),
        ),
        Format::Text => series.terms().map(|(q, z, c)| format!("q^{q} z^{z}: {c}\n")).collect(),
    })
}

fn parse_tableaux(flag: &str, raw: Option<&str>, r: usize) -> std::result::Result<Vec<Partition>, Failure> {
    let Some(raw) = raw else {
        return Ok(vec![Partition::empty(); r]);
    };
    let parts: Vec<Partition> =
        serde_json::from_str(raw).map_err(|e| Failure::Input(Error::InvalidDatum(format!("--{flag}: {e}"))))?;
    if parts.len() != r {
        return Err(Failure::Input(Error::InvalidDatum(format!(
            "--{flag} has {} partitions, expected {r}",
            parts.len()
        ))));
    }
    Ok(parts)
}

fn run_character(args: &CharacterArgs) -> Outcome {
    let params = surface(&args.surface)?;
    let kvec = ChernVector(
        args.kvec
            .split(',')
            .map(rational::parse)
            .collect::<hirzebruch::Result<Vec<Rational>>>()?,
    );
    let r = rank(kvec.rank())?;
    if let Some(expected) = args.r {
        if expected != r {
            return Err(Failure::Input(Error::InvalidDatum(format!(
                "--r {expected} but --kvec has {r} entries"
            ))));
        }
    }
    if let Some(bad) = kvec.iter().find(|k| !params.allows(*k)) {
        return Err(Failure::Input(Error::InvalidChern(format!(
            "Chern coefficient {bad} is not a multiple of 1/{}",
            params.denominator()
        ))));
    }
    if let Some(c1) = &args.c1 {
        let c1 = rational::parse(c1)?;
        if c1 != kvec.total() {
            return Err(Failure::Input(Error::InvalidDatum(format!(
                "coefficients sum to {} but c1 = {c1}",
                kvec.total()
            ))));
        }
    }

    let (character, discriminant) = if args.reduced {
        if args.tableaux_p1.is_some() || args.tableaux_p2.is_some() {
            return Err(invalid("--reduced takes --tableaux, not --tableaux-p1/--tableaux-p2"));
        }
        let comp = FixedComponent::new(kvec, parse_tableaux("tableaux", args.tableaux.as_deref(), r)?)?;
        (reduced_character(&params, &comp), comp.discriminant(params.p()))
    } else {
        if args.tableaux.is_some() {
            return Err(invalid(
                "--tableaux needs --reduced; use --tableaux-p1/--tableaux-p2 for full fixed points",
            ));
        }
        let point = FullFixedPoint::new(
            kvec,
            parse_tableaux("tableaux-p1", args.tableaux_p1.as_deref(), r)?,
            parse_tableaux("tableaux-p2", args.tableaux_p2.as_deref(), r)?,
        )?;
        (full_character(&params, &point), point.discriminant(params.p()))
    };
    if let Some(n) = &args.n {
        let n = rational::parse(n)?;
        if n != discriminant {
            return Err(Failure::Input(Error::InvalidDatum(format!(
                "boxes and Chern coefficients give discriminant {discriminant}, not {n}"
            ))));
        }
    }
    let index = morse_index_direct(&character);
    Ok(render_character(args.out.format, &character, &index, discriminant))
}

fn render_character(format: Format, ch: &Character, index: &IndexReport, n: Rational) -> String {
    match format {
        Format::Json => to_json(&json!({
            "n": n.to_string(),
            "dimension": index.total(),
            "character": ch,
            "index": index,
        })),
        Format::Csv => to_csv(
            &["alpha", "beta", "t1", "t2", "mult"],
            ch.terms().map(|(t, m)| {
                [t.alpha as i64, t.beta as i64, t.t1, t.t2, m as i64]
                    .map(|x| x.to_string())
                    .to_vec()
            }),
        ),
        Format::Text => {
            let mut out = format!("{} terms, dimension {}, n = {n}\n", ch.distinct(), index.total());
            for (t, m) in ch.terms() {
                out.push_str(&format!("{m} x e{}/e{} t1^{} t2^{}\n", t.beta, t.alpha, t.t1, t.t2));
            }
            out.push_str(&format!(
                "index {} (zero diagonal {}, positive {})\n",
                index.negative_count, index.zero_diagonal_count, index.positive_count
            ));
            out
        }
    }
}

fn run_verify(oracle: Oracle, ranges: Ranges, stacky: bool, out: &OutputArgs) -> Outcome {
    if ranges.max_n < 0 || ranges.max_n > 64 {
        return Err(invalid("max-n must be in 0..=64"));
    }
    if ranges.max_p < 1 || ranges.max_p > MAX_P {
        return Err(invalid(format!("max-p must be in 1..={MAX_P}")));
    }
    rank(ranges.max_r)?;
    if ranges.max_order < int(0) || ranges.max_order > int(1000) {
        return Err(invalid("max-order must be in [0, 1000]"));
    }
    let report: VerifyReport = in_pool(out.jobs, || match oracle {
        Oracle::Hilbert => verify::hilbert(ranges.max_n as usize, ranges.max_p),
        Oracle::PIndependence => verify::p_independence(ranges.max_n as usize, ranges.max_p),
        Oracle::Grassmannian => verify::grassmannian(ranges.max_r, ranges.max_p),
        Oracle::Theta => verify::theta(ranges.max_r, ranges.max_p, ranges.max_order),
        Oracle::IndexConsistency => verify::index_consistency(&ranges),
        Oracle::Dimension => verify::dimension_check(&ranges),
        Oracle::Connectedness => verify::connectedness(&ranges, stacky),
    })??;
    eprintln!("{}: {:.3}s", report.oracle, report.elapsed.as_secs_f64());
    let text = match out.format {
        Format::Json => to_json(&report),
        Format::Csv => to_csv(
            &["input", "expected", "actual"],
            report
                .mismatches
                .iter()
                .map(|m| vec![m.input.clone(), m.expected.clone(), m.actual.clone()]),
        ),
        Format::Text => report.to_string(),
    };
    if report.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Mismatch)
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Poincare(a) => run_poincare(a),
        Command::Euler(a) => run_euler(a),
        Command::Components { point, full, index } => run_components(point, *full, *index),
        Command::Series {
            surface,
            r,
            max_order,
            out,
        } => run_series(surface, *r, max_order, out),
        Command::Character(a) => run_character(a),
        Command::Verify {
            oracle,
            max_n,
            max_r,
            max_p,
            max_order,
            stacky,
            out,
        } => {
            let ranges = Ranges {
                max_n: *max_n,
                max_r: *max_r,
                max_p: *max_p,
                max_order: rational::parse(max_order)?,
            };
            run_verify(*oracle, ranges, *stacky, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
