//! `heckecount`: groups, character tables and simple-module counts of
//! specialised Iwahori-Hecke algebras from the command line.
//!
//! Exit codes: 0 success, 1 unexpected verify status or internal failure,
//! 2 bad input (unknown type, unreachable `e`, no table model), 3 scale cap.

use clap::{Args, Parser, Subcommand, ValueEnum};
use heckecount_core::cache::Cache;
use heckecount_core::counting::{make_spec_point, verify_theorem, Method, VerifyOptions, VerifyReport};
use heckecount_core::engine::Engine;
use heckecount_core::exactalg::EParam;
use heckecount_core::hecke::class_polynomials;
use heckecount_core::rootsys::{group_profile, CartanType, CoxeterDatum, GroupProfile, DEFAULT_MAX_ORDER};
use heckecount_core::{export, Error};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "heckecount", version, about = "Count simple modules of specialised Iwahori-Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for the meataxe random search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cache directory (default: $HECKECOUNT_CACHE_DIR or the user cache directory).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest group order that is built or chopped.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write to a file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct TypeArg {
    /// Cartan type: A1..A5, B2..B4, D4, G2, F4, I2(m); E6/E7/E8 for `group` only.
    #[arg(long = "type", value_name = "TYPE", value_parser = parse_type)]
    ty: CoxeterDatum,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, degrees, class count and bad primes.
    Group(TypeArg),
    /// Number of simple modules at (e, ell); characteristic zero when --ell is omitted.
    Count {
        #[command(flatten)]
        ty: TypeArg,
        /// Comma-separated list; "inf" for the generic parameter.
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_e)]
        e: Vec<EParam>,
        #[arg(long, value_delimiter = ',')]
        ell: Vec<u64>,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
    },
    /// Compare modular counts with the characteristic-zero count.
    Verify {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        ell: Vec<u64>,
        /// Require a strict drop when e = ell is a bad prime.
        #[arg(long)]
        expect_bad_strict: bool,
    },
    /// Generic character table at class representatives.
    Chartable(TypeArg),
    /// Schur elements of the generic algebra.
    Schur(TypeArg),
    /// Class polynomials f_{w,C}.
    Classpoly(TypeArg),
}

fn parse_type(s: &str) -> Result<CoxeterDatum, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_e(s: &str) -> Result<EParam, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Output {
    Json(Value),
    Csv(String),
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::NoTableModel(_) | Error::Unreachable { .. } => 2,
            Error::UnsupportedScale { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn csv_string(records: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &records {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8 fields")
}

fn one_or_many(mut items: Vec<Value>) -> Value {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        Value::Array(items)
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn engine(common: &Common) -> Engine {
    let cache = (!common.no_cache).then(|| Cache::new(common.cache_dir.clone().unwrap_or_else(Cache::default_dir)));
    Engine::new(cache, common.seed, common.max_order)
}

fn cmd_group(engine: &Engine, datum: &CoxeterDatum, format: Format) -> Result<Output, Failure> {
    let p: GroupProfile = match datum.cartan_type() {
        CartanType::E(_) => group_profile(datum, engine.max_order)?,
        _ => engine.group(datum)?.profile()?,
    };
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": 1,
            "type": datum.to_string(),
            "order": p.order,
            "degrees": p.degrees,
            "num_classes": p.num_classes,
            "bad_primes": p.bad_primes,
            "poincare": p.poincare,
            "provenance": p.provenance,
        })),
        Format::Csv => Output::Csv(csv_string(vec![
            ["type", "order", "degrees", "num_classes", "bad_primes", "provenance"].map(String::from).to_vec(),
            vec![
                datum.to_string(),
                p.order.to_string(),
                join(&p.degrees),
                p.num_classes.map_or(String::new(), |c| c.to_string()),
                join(&p.bad_primes),
                p.provenance.to_string(),
            ],
        ])),
    })
}

fn cmd_count(
    engine: &Engine,
    datum: &CoxeterDatum,
    es: &[EParam],
    ells: &[u64],
    method: Method,
    format: Format,
) -> Result<Output, Failure> {
    let counter = engine.counter(datum)?;
    let mut rows = Vec::new();
    for &e in es {
        if ells.is_empty() {
            let c = engine.char0(&counter, e)?;
            let mut row = json!({
                "schema": 1, "type": datum.to_string(), "e": e, "ell": 0,
                "count": c.count, "method": "char0", "provenance": c.provenance,
            });
            if !c.primes.is_empty() {
                row["primes"] = json!(c.primes);
            }
            rows.push(row);
            continue;
        }
        let EParam::Finite(ef) = e else {
            return Err(Failure { code: 2, message: "e = inf only occurs in characteristic 0; omit --ell".into() });
        };
        for &ell in ells {
            let point = make_spec_point(ef, ell)?;
            let count = counter.count(&point, method)?;
            let mut row = point.to_json();
            let obj = row.as_object_mut().unwrap();
            obj.insert("schema".into(), json!(1));
            obj.insert("type".into(), json!(datum.to_string()));
            obj.insert("count".into(), json!(count));
            obj.insert("method".into(), json!(counter.resolve(method).to_string()));
            rows.push(row);
        }
    }
    Ok(match format {
        Format::Json => Output::Json(one_or_many(rows)),
        Format::Csv => {
            let cols = ["type", "e", "ell", "i", "count", "method"];
            let mut records = vec![cols.map(String::from).to_vec()];
            for r in &rows {
                records.push(
                    cols.iter()
                        .map(|k| match &r[*k] {
                            Value::String(s) => s.clone(),
                            Value::Null => String::new(),
                            v => v.to_string(),
                        })
                        .collect(),
                );
            }
            Output::Csv(csv_string(records))
        }
    })
}

fn verify_csv(reports: &[VerifyReport]) -> String {
    let header = [
        "type", "e", "ell", "i", "status", "count", "char0", "provenance", "bad_prime", "degree_hypothesis",
        "star_condition", "expected", "error",
    ];
    let mut records = vec![header.map(String::from).to_vec()];
    for rep in reports {
        for r in &rep.rows {
            let status = serde_json::to_value(r.status).unwrap();
            records.push(vec![
                rep.datum.to_string(),
                rep.e.to_string(),
                r.ell.to_string(),
                r.point.as_ref().map_or(String::new(), |p| p.degree.to_string()),
                status.as_str().unwrap_or_default().to_string(),
                r.count().map_or(String::new(), |c| c.to_string()),
                rep.char0.count.to_string(),
                rep.char0.provenance.to_string(),
                r.bad_prime.to_string(),
                r.degree_hypothesis.to_string(),
                r.star_condition.map_or(String::new(), |s| s.to_string()),
                r.expected.to_string(),
                r.error.clone().unwrap_or_default(),
            ]);
        }
    }
    csv_string(records)
}

fn cmd_verify(
    engine: &Engine,
    datum: &CoxeterDatum,
    es: &[u64],
    ells: &[u64],
    expect_bad_strict: bool,
    format: Format,
) -> Result<(Output, bool), Failure> {
    let counter = engine.counter(datum)?;
    let char0 = |e: u64| engine.char0(&counter, EParam::Finite(e));
    let reports = verify_theorem(&counter, es, ells, &char0, VerifyOptions { expect_bad_strict })?;
    let ok = reports.iter().all(|r| r.ok());
    let out = match format {
        Format::Json => Output::Json(one_or_many(reports.iter().map(|r| r.to_json()).collect())),
        Format::Csv => Output::Csv(verify_csv(&reports)),
    };
    Ok((out, ok))
}

fn cmd_tables(engine: &Engine, cmd: &Cmd, datum: &CoxeterDatum, format: Format) -> Result<Output, Failure> {
    let group = engine.group(datum)?;
    let table = engine.require_table(&group)?;
    Ok(match (cmd, format) {
        (Cmd::Chartable(_), Format::Json) => Output::Json(export::chartable_json(&table)),
        (Cmd::Chartable(_), Format::Csv) => Output::Csv(export::chartable_csv(&table)),
        (Cmd::Schur(_), f) => {
            let schur = engine.schur(&group, &table)?;
            match f {
                Format::Json => Output::Json(export::schur_json(&table, &schur)),
                Format::Csv => Output::Csv(export::schur_csv(&schur)),
            }
        }
        (Cmd::Classpoly(_), f) => {
            let polys = class_polynomials(&group, &table)?;
            match f {
                Format::Json => Output::Json(export::classpoly_json(&group, &table, &polys)),
                Format::Csv => Output::Csv(export::classpoly_csv(&group, &table, &polys)),
            }
        }
        _ => unreachable!(),
    })
}

fn run(cli: &Cli) -> Result<(Output, bool), Failure> {
    let c = &cli.common;
    if let Some(j) = c.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure { code: 1, message: e.to_string() })?;
    }
    let engine = engine(c);
    match &cli.cmd {
        Cmd::Group(t) => Ok((cmd_group(&engine, &t.ty, c.format)?, true)),
        Cmd::Count { ty, e, ell, method } => Ok((cmd_count(&engine, &ty.ty, e, ell, *method, c.format)?, true)),
        Cmd::Verify { ty, e, ell, expect_bad_strict } => {
            cmd_verify(&engine, &ty.ty, e, ell, *expect_bad_strict, c.format)
        }
        cmd @ (Cmd::Chartable(t) | Cmd::Schur(t) | Cmd::Classpoly(t)) => {
            Ok((cmd_tables(&engine, cmd, &t.ty, c.format)?, true))
        }
    }
}

fn write_output(out: &Output, path: Option<&PathBuf>) -> std::io::Result<()> {
    let text = match out {
        Output::Json(v) => serde_json::to_string_pretty(v).expect("JSON values serialise") + "\n",
        Output::Csv(s) => s.clone(),
    };
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            if let Err(e) = write_output(&out, cli.common.output.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: some rows have a status the theorem does not allow");
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
