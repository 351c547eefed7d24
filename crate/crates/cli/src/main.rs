mod cache;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fundalc::classifier::{classify, minuscule_report, Classification, CSV_HEADER};
use fundalc::enumerate::enumerate_elements;
use fundalc::expr::{format_element, parse_element};
use fundalc::newton::newton_point;
use fundalc::verify::{default_minuscule, run_suite, VerifyConfig, REPORT_CSV_HEADER, SUITES};
use fundalc::{
    build_root_datum, fraction_string, parse_vector, AffineWeylGroup, BasedRootDatum, DiagramAutomorphism,
    Error, VDatum,
};

use cache::Cache;

/// Data listed by `types list`. Other keys of the same families also work.
const CATALOGUE: [&str; 16] = [
    "GL2", "GL3", "GL4", "SL2", "SL3", "SL4", "PGL2", "PGL3", "Sp4-sc", "Sp4-ad", "SO5-sc", "G2-sc", "GL3@2",
    "SL3@2", "SL4@2", "SL5@2",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "fundalc", version, about = "Length, Newton points and fundamental alcoves in extended affine Weyl groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Radius of the window of length-zero elements when that group is infinite.
    /// Defaults to 1 for such data and is ignored otherwise.
    #[arg(long, global = true)]
    omega_window: Option<usize>,
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// `types list`: known datum keys.
    Types {
        #[arg(value_parser = ["list"])]
        action: String,
    },
    /// Length, Newton point, Kottwitz point and fundamentality of one element.
    Eval {
        datum: String,
        element: String,
        /// Use the k-th power of the twist.
        #[arg(long, default_value_t = 1)]
        sigma: usize,
    },
    /// Newton point, period and the subspace V_w.
    Newton { datum: String, element: String },
    /// Classify every element up to a length.
    Classify {
        datum: String,
        #[arg(long)]
        max_len: usize,
    },
    /// List every element up to a length.
    Enumerate {
        datum: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        datum: String,
        #[arg(long)]
        max_len: usize,
        /// Repeat reduction-step checks on random elements up to this length.
        #[arg(long)]
        sample_len: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        slack: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Minuscule cocharacter for the minuscule suite, e.g. 1,0,0.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Check that every element of W t^mu W dominates a straight conjugate.
    Minuscule {
        datum: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value_t = 2)]
        slack: usize,
    },
    /// Draw alcoves of a rank-2 datum as SVG.
    Plot {
        datum: String,
        #[arg(required = true)]
        elements: Vec<String>,
        /// Point v for the P-alcove condition, e.g. 1/2,0.
        #[arg(long)]
        v: Option<String>,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let usage = matches!(
            e.downcast_ref::<Error>(),
            Some(
                Error::UnknownKey(_)
                    | Error::IncompatibleLattice(_)
                    | Error::InvalidDatum(_)
                    | Error::InvalidAutomorphism(_)
                    | Error::DatumMismatch
                    | Error::Syntax { .. }
                    | Error::IndexOutOfRange { .. }
                    | Error::Arity { .. }
                    | Error::NotRank2(_)
                    | Error::NotMinuscule(_)
                    | Error::UnknownSuite(_)
            )
        ) || e.downcast_ref::<std::io::Error>().is_some();
        if usage {
            Failure::Usage(e)
        } else {
            Failure::Runtime(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

/// Rendered output and whether every checked property held.
struct Output {
    text: String,
    ok: bool,
}

struct Datum {
    group: AffineWeylGroup,
    /// Identifies the datum and twist in cache keys.
    id: String,
}

fn load_datum(spec: &str) -> Result<Datum> {
    let path = Path::new(spec);
    if spec.ends_with(".json") && path.exists() {
        let text = std::fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text).context("datum file is not JSON")?;
        let (d, s) = BasedRootDatum::from_json(&value)?;
        let key = d.label().to_string();
        let sigma = format!("{:?}", s.matrix());
        return Ok(Datum {
            group: AffineWeylGroup::with_key(key, d, s)?,
            id: format!("file:{}:{sigma}", cache::digest(&text)),
        });
    }
    let group = AffineWeylGroup::from_key(spec)?;
    let id = format!("{spec}:{:?}", group.sigma().matrix());
    Ok(Datum { group, id })
}

fn twist_power(g: &AffineWeylGroup, k: usize) -> Result<AffineWeylGroup> {
    let m = g.sigma().matrix().pow(k);
    let s = DiagramAutomorphism::new(g.datum(), m)?;
    let key = if k == 1 { g.key().to_string() } else { format!("{}^{k}", g.key()) };
    Ok(AffineWeylGroup::with_key(key, g.datum().clone(), s)?)
}

fn omega_window(g: &AffineWeylGroup, flag: Option<usize>) -> usize {
    if g.omega_is_finite() {
        0
    } else {
        flag.unwrap_or(1)
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| anyhow!(Error::Syntax { pos: 0, msg: format!("bad integer `{p}`") })))
        .collect()
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_text(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

fn render_classifications(rows: &[Classification], format: Format) -> String {
    match format {
        Format::Json => json_text(&Value::Array(rows.iter().map(|c| c.to_json()).collect())),
        Format::Csv => csv_text(CSV_HEADER, rows.iter().map(|c| c.csv_row())),
    }
}

fn types(format: Format) -> Output {
    let rows: Vec<(String, usize, usize, usize, bool)> = CATALOGUE
        .iter()
        .filter_map(|k| {
            let (d, s) = build_root_datum(k).ok()?;
            let g = AffineWeylGroup::with_key(k.to_string(), d.clone(), s.clone()).ok()?;
            Some((k.to_string(), d.rank(), d.num_roots(), s.order(), g.omega_is_finite()))
        })
        .collect();
    let text = match format {
        Format::Json => json_text(&Value::Array(
            rows.iter()
                .map(|(k, r, n, o, f)| {
                    json!({
                        "key": k, "rank": r, "roots": n, "sigma_order": o,
                        "omega_finite": f, "default_omega_window": if *f { 0 } else { 1 },
                    })
                })
                .collect(),
        )),
        Format::Csv => csv_text(
            "key,rank,roots,sigma_order,omega_finite,default_omega_window",
            rows.iter()
                .map(|(k, r, n, o, f)| format!("{k},{r},{n},{o},{f},{}", if *f { 0 } else { 1 })),
        ),
    };
    Output { text, ok: true }
}

fn eval(g: &AffineWeylGroup, literal: &str, format: Format) -> Result<Output, Failure> {
    let x = parse_element(g, literal)?;
    let c = classify(g, &x)?;
    let n = newton_point(g, &x);
    let text = match format {
        Format::Json => {
            let mut v = c.to_json();
            v["newton"] = n.to_json();
            json_text(&v)
        }
        Format::Csv => csv_text(CSV_HEADER, [c.csv_row()]),
    };
    Ok(Output { text, ok: true })
}

fn newton(g: &AffineWeylGroup, literal: &str, format: Format) -> Result<Output, Failure> {
    let x = parse_element(g, literal)?;
    let n = newton_point(g, &x);
    let fr = |v: &[fundalc::Rational]| v.iter().map(fraction_string).collect::<Vec<_>>().join(" ");
    let text = match format {
        Format::Json => json_text(&n.to_json()),
        Format::Csv => csv_text(
            "literal,nu,nu_dom,period,kappa,v_base,v_dim",
            [format!(
                "{},{},{},{},{},{},{}",
                format_element(g, &x),
                fr(&n.nu),
                fr(&n.nu_dom),
                n.period,
                n.kappa,
                fr(&n.base),
                n.directions.len()
            )],
        ),
    };
    Ok(Output { text, ok: true })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cfg = config::load(cli.config.as_deref()).map_err(Failure::Usage)?;
    if let Some(n) = cli.jobs.or(cfg.jobs) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Runtime(e.into()))?;
    }
    let use_cache = !cli.no_cache && cfg.cache.unwrap_or(true);
    let cache = match (use_cache, cfg.cache_dir.clone().or_else(config::default_cache_dir)) {
        (true, Some(dir)) => Cache::open(&dir).ok(),
        _ => None,
    };
    let format = cli.format;
    let cached = |key: String, compute: &dyn Fn() -> Result<Output, Failure>| -> Result<Output, Failure> {
        let key = format!("{key}\tformat={format:?}\tcode={}", cache::code_hash());
        if let Some((code, text)) = cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(Output { text, ok: code == 0 });
        }
        let out = compute()?;
        if let Some(c) = &cache {
            // a read-only cache directory is not an error
            let _ = c.put(&key, u8::from(!out.ok), &out.text);
        }
        Ok(out)
    };

    match &cli.command {
        Command::Types { .. } => Ok(types(format)),
        Command::Eval { datum, element, sigma } => {
            let d = load_datum(datum)?;
            let g = twist_power(&d.group, *sigma)?;
            eval(&g, element, format)
        }
        Command::Newton { datum, element } => newton(&load_datum(datum)?.group, element, format),
        Command::Classify { datum, max_len } => {
            let d = load_datum(datum)?;
            let g = &d.group;
            let w = omega_window(g, cli.omega_window);
            cached(format!("classify\t{}\tmax_len={max_len}\tomega={w}", d.id), &|| {
                use rayon::prelude::*;
                let els = enumerate_elements(g, *max_len, w);
                let rows: Vec<Classification> = els
                    .par_iter()
                    .map(|x| classify(g, x))
                    .collect::<fundalc::Result<_>>()?;
                Ok(Output { text: render_classifications(&rows, format), ok: true })
            })
        }
        Command::Enumerate { datum, max_len } => {
            let d = load_datum(datum)?;
            let g = &d.group;
            let w = omega_window(g, cli.omega_window);
            cached(format!("enumerate\t{}\tmax_len={max_len}\tomega={w}", d.id), &|| {
                let els = enumerate_elements(g, *max_len, w);
                let text = match format {
                    Format::Json => json_text(&Value::Array(
                        els.iter()
                            .map(|x| json!({ "literal": format_element(g, x), "length": g.length(x) }))
                            .collect(),
                    )),
                    Format::Csv => csv_text(
                        "literal,length",
                        els.iter().map(|x| format!("{},{}", format_element(g, x), g.length(x))),
                    ),
                };
                Ok(Output { text, ok: true })
            })
        }
        Command::Verify { suite, datum, max_len, sample_len, samples, slack, seed, mu } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::UnknownSuite(suite.clone()).into());
            }
            let d = load_datum(datum)?;
            let g = &d.group;
            let mu = mu.as_deref().map(parse_ints).transpose()?;
            let vc = VerifyConfig {
                max_len: *max_len,
                sample_len: *sample_len,
                samples: *samples,
                omega_window: omega_window(g, cli.omega_window),
                slack: *slack,
                seed: *seed,
                mu: mu.into_iter().collect(),
            };
            let key = format!("verify\t{suite}\t{}\t{vc:?}", d.id);
            cached(key, &|| {
                let r = run_suite(suite, g, &vc)?;
                let text = match format {
                    Format::Json => json_text(&r.to_json()),
                    Format::Csv => csv_text(REPORT_CSV_HEADER, r.csv_rows()),
                };
                Ok(Output { text, ok: r.passed() })
            })
        }
        Command::Minuscule { datum, mu, slack } => {
            let d = load_datum(datum)?;
            let g = &d.group;
            let mus = match mu {
                Some(s) => vec![parse_ints(s)?],
                None => default_minuscule(g),
            };
            cached(format!("minuscule\t{}\tmu={mus:?}\tslack={slack}", d.id), &|| {
                let mut ok = true;
                let mut json_rows = Vec::new();
                let mut csv_rows = Vec::new();
                for m in &mus {
                    let r = minuscule_report(g, m, *slack)?;
                    ok &= r.all_succeed();
                    let mut v = r.to_json(g);
                    v["mu"] = json!(m);
                    json_rows.push(v);
                    let ms = m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                    for row in &r.rows {
                        csv_rows.push(format!(
                            "{ms},{},{},{},{}",
                            format_element(g, &row.element),
                            format_element(g, &row.straight_rep),
                            row.witness.as_ref().map(|y| format_element(g, y)).unwrap_or_default(),
                            row.bruhat_ok
                        ));
                    }
                }
                let text = match format {
                    Format::Json => json_text(&Value::Array(json_rows)),
                    Format::Csv => csv_text("mu,element,straight_rep,witness,bruhat_ok", csv_rows),
                };
                Ok(Output { text, ok })
            })
        }
        Command::Plot { datum, elements, v, window, out } => {
            let d = load_datum(datum)?;
            let g = &d.group;
            let xs = elements
                .iter()
                .map(|e| parse_element(g, e))
                .collect::<fundalc::Result<Vec<_>>>()?;
            let vd = match v {
                Some(s) => {
                    let p = parse_vector(s)?;
                    if p.len() != g.rank() {
                        return Err(Error::DatumMismatch.into());
                    }
                    Some(VDatum::new(g.datum(), p))
                }
                None => None,
            };
            let svg = fundalc::plot::plot_rank2(g, &xs, vd.as_ref(), *window)?;
            std::fs::write(out, svg)
                .with_context(|| format!("writing {}", out.display()))
                .map_err(Failure::Usage)?;
            let text = match format {
                Format::Json => json_text(&json!({ "out": out.display().to_string(), "elements": xs.len() })),
                Format::Csv => csv_text("out,elements", [format!("{},{}", out.display(), xs.len())]),
            };
            Ok(Output { text, ok: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_builds() {
        for k in CATALOGUE {
            assert!(load_datum(k).is_ok(), "{k}");
        }
    }

    #[test]
    fn rejects_bad_integers() {
        assert!(parse_ints("1,x").is_err());
        assert_eq!(parse_ints("1, 0,-1").unwrap(), vec![1, 0, -1]);
    }

    #[test]
    fn twist_powers() {
        let g = AffineWeylGroup::from_key("SL3@2").unwrap();
        assert_eq!(twist_power(&g, 2).unwrap().sigma().order(), 1);
        assert_eq!(twist_power(&g, 3).unwrap().sigma().order(), 2);
    }
}
