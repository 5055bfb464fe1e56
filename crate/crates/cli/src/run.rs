//! Command execution and deterministic serialization.

use ghm_core::families::{
    build_report, Askey, AskeyParams, Family, GenMuntz, GenMuntzParams, Lommel, LommelParams, Muntz, MuntzParams,
    Synthetic, VerifyOptions,
};
use ghm_core::gram::{build_h, matrix_strings, Comparison};
use ghm_core::{ComplexRational, Error, GramReport};
use serde_json::{json, Map, Value};

use crate::config::{Command, Format, Params, RunConfig};
use crate::{CliError, EXIT_MISMATCH, EXIT_OK};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

pub fn build_family(params: &Params) -> Result<Box<dyn Family>, CliError> {
    Ok(match params.clone() {
        Params::Muntz { alphas } => Box::new(Muntz::new(MuntzParams::new(alphas))?),
        Params::Gmuntz { a, b, c, alphas } => Box::new(GenMuntz::new(GenMuntzParams::new(a, b, c, alphas))?),
        Params::Lommel { q, v } => Box::new(Lommel::new(LommelParams::new(q, v))?),
        Params::Askey { alpha, beta, q } => Box::new(Askey::new(AskeyParams::new(alpha, beta, q))?),
        Params::Synthetic { alphas } => Box::new(Synthetic::new(MuntzParams::new(alphas))?),
    })
}

fn options(cfg: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        n: cfg.n,
        prec: cfg.prec,
        z0: cfg.z0.clone(),
        printed_formulas: cfg.printed_formulas,
        perturb_inverse: cfg.perturb.clone(),
    }
}

pub fn run_verify(cfg: &RunConfig) -> Result<GramReport, CliError> {
    let family = build_family(&cfg.params)?;
    Ok(build_report(family.as_ref(), &options(cfg))?)
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let family = build_family(&cfg.params)?;
    let fam = family.as_ref();
    let n = cfg.n;
    let mut doc = Map::new();
    doc.insert("family".into(), json!(fam.tag()));
    doc.insert("n".into(), json!(n));
    let ok = match cfg.command {
        Command::Matrix => {
            let h = build_h(fam, n)?;
            let agrees = match fam.entry_matrix(n) {
                Ok(direct) => direct == h,
                Err(Error::Unavailable(_)) => true,
                Err(e) => return Err(e.into()),
            };
            doc.insert("entries".into(), json!(matrix_strings(&h)));
            agrees
        }
        Command::Det => {
            let closed = fam.closed_det(n)?;
            let oracle = build_h(fam, n)?.bareiss_det();
            let cmp = Comparison { closed: closed.to_string(), oracle: oracle.to_string(), matches: closed == oracle };
            doc.insert("det".into(), to_value(&cmp));
            cmp.matches
        }
        Command::Inverse => {
            let mut closed = fam.closed_inverse(n)?;
            if let Some(p) = &cfg.perturb {
                closed[(0, 0)] += &ComplexRational::real(p.clone());
            }
            let oracle = build_h(fam, n)?.exact_inverse()?;
            let cmp = Comparison { closed: matrix_strings(&closed), oracle: matrix_strings(&oracle), matches: closed == oracle };
            doc.insert("inverse".into(), to_value(&cmp));
            cmp.matches
        }
        Command::Bound | Command::Eigen | Command::Verify => {
            let mut opts = options(cfg);
            // errata are attached below for every command alike
            opts.printed_formulas = false;
            let report = build_report(fam, &opts)?;
            match cfg.command {
                Command::Verify => {
                    let ok = report.passed();
                    doc = as_object(to_value(&report));
                    ok
                }
                Command::Bound => {
                    let bounds = report.bounds.as_ref().ok_or_else(|| not_pd(&report))?;
                    doc.insert("precision".into(), json!(report.precision));
                    doc.insert("bounds".into(), to_value(bounds));
                    doc.insert("lambda_s".into(), to_value(&report.lambda_s));
                    bounds.certified
                }
                _ => {
                    let lambda = report.lambda_s.as_ref().ok_or_else(|| not_pd(&report))?;
                    doc.insert("precision".into(), json!(report.precision));
                    doc.insert("lambda_s".into(), to_value(lambda));
                    true
                }
            }
        }
    };
    if cfg.printed_formulas {
        doc.insert("errata".into(), to_value(&fam.printed(n, cfg.prec)?));
    }
    Ok(Outcome { text: render(&Value::Object(doc), cfg.format), exit_code: if ok { EXIT_OK } else { EXIT_MISMATCH } })
}

fn not_pd(report: &GramReport) -> CliError {
    let why = report.warnings.first().cloned().unwrap_or_else(|| "no eigenvalue enclosure".into());
    CliError::Core(Error::NotApplicable(why))
}

pub fn emit_report(report: &GramReport, format: Format) -> String {
    render(&to_value(report), format)
}

/// Structured error body written in place of a report.
pub fn error_document(cfg: &RunConfig, err: &CliError) -> String {
    let kind = match err {
        CliError::Core(e) => format!("{e:?}").split(['(', ' ']).next().unwrap_or("Error").to_string(),
        _ => "Usage".into(),
    };
    let doc = json!({
        "family": cfg.family().to_string(),
        "n": cfg.n,
        "error": { "kind": kind, "message": err.to_string() },
    });
    render(&doc, cfg.format)
}

fn to_value<T: serde::Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize infallibly")
}

fn as_object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports serialize to objects"),
    }
}

/// JSON keys come out sorted (the default `serde_json` map is ordered), so
/// identical reports give identical bytes.
fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
    }
}

/// Dotted paths, arrays by index; nested matrices come out row-major.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_args;

    fn run(s: &str) -> Outcome {
        execute(&parse_args(&s.split_whitespace().collect::<Vec<_>>()).unwrap()).unwrap()
    }

    #[test]
    fn one_by_one() {
        let out = run("muntz verify --alphas 0");
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["entries"], json!([["1"]]));
        assert_eq!(v["det"], json!({"closed": "1", "oracle": "1", "match": true}));
        assert_eq!(out.exit_code, 0);
    }

    #[test]
    fn hilbert_inverse_block() {
        let v: Value = serde_json::from_str(&run("muntz inverse --alphas 0,1").text).unwrap();
        assert_eq!(v["inverse"]["closed"], json!([["4", "-6"], ["-6", "12"]]));
    }

    #[test]
    fn csv_is_row_major() {
        let out = run("muntz matrix --alphas 0,1 --format csv");
        let lines: Vec<_> = out.text.lines().collect();
        assert_eq!(lines[0], "key,value");
        let entries: Vec<_> = lines.iter().filter(|l| l.starts_with("entries.")).copied().collect();
        assert_eq!(entries, ["entries.0.0,1", "entries.0.1,1/2", "entries.1.0,1/2", "entries.1.1,1/3"]);
    }

    #[test]
    fn bound_needs_pd() {
        let cfg = parse_args(&["muntz", "bound", "--alphas", "-1/3,-3/4"]);
        let err = execute(&cfg.unwrap()).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::NotApplicable(_))), "{err:?}");
    }
}
