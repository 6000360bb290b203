//! Serialization of every report type as JSON, CSV or text.

use std::fmt::Write as _;

use legendre_rank::descent::DescentAnalysis;
use legendre_rank::local::SurfaceFibreReport;
use legendre_rank::mersenne::EstimateComparison;
use legendre_rank::pipeline::{RankCertificate, RankConfirmation, ScanStatistics, SurveyRecord};
use legendre_rank::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MersenneReport {
    pub limit: u32,
    pub exponents: Vec<u32>,
    pub estimate: Option<EstimateComparison>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "kebab-case")]
pub enum Report {
    Certificate(Box<RankCertificate>),
    Confirmation(RankConfirmation),
    Scan(ScanStatistics),
    SurfaceTypes(SurfaceFibreReport),
    NeumannSetzer(Vec<SurveyRecord>),
    Mersenne(MersenneReport),
    Descent(Box<DescentAnalysis>),
}

/// The JSON document: `{kind, body, params, timings, version}` with sorted keys.
pub fn envelope(report: &Report, params: &Value, timings: Option<&Value>) -> Value {
    let mut doc = serde_json::to_value(report).expect("reports serialize");
    let obj = doc.as_object_mut().expect("tagged enum");
    obj.insert("params".into(), params.clone());
    obj.insert("timings".into(), timings.cloned().unwrap_or(Value::Null));
    obj.insert("version".into(), json!(VERSION));
    doc
}

/// Reads the report back out of an emitted JSON document.
pub fn parse_report(doc: &str) -> Result<Report, Error> {
    let mut v: Value = serde_json::from_str(doc).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(obj) = v.as_object_mut() {
        obj.retain(|k, _| k == "kind" || k == "body");
    }
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn emit_report(report: &Report, format: Format, params: &Value, timings: Option<&Value>) -> Result<String, Error> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&envelope(report, params, timings)).expect("json");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_of(report),
        Format::Text => Ok(text_of(report)),
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn csv_of(report: &Report) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::UnsupportedFormat(e.to_string());
    match report {
        Report::Scan(s) => {
            w.write_record(["b", "height", "model", "alpha", "mu", "root_number", "lower", "upper", "classification", "parity"])
                .map_err(io)?;
            for r in &s.records {
                let cls = serde_json::to_value(r.classification).expect("enum");
                let parity = r.parity.map(|p| serde_json::to_value(p).expect("enum"));
                w.write_record([
                    r.b.to_string(),
                    r.height.to_string(),
                    opt(&r.model),
                    opt(&r.alpha),
                    opt(&r.mu),
                    r.sign().map(|s| s.to_string()).unwrap_or_else(|| if r.root_number.is_some() { "unsupported".into() } else { String::new() }),
                    opt(&r.interval.as_ref().map(|i| i.lower)),
                    opt(&r.interval.as_ref().map(|i| i.upper)),
                    cls.as_str().unwrap_or_default().to_string(),
                    parity.and_then(|p| p.as_str().map(String::from)).unwrap_or_default(),
                ])
                .map_err(io)?;
            }
        }
        Report::NeumannSetzer(rs) => {
            w.write_record(["b", "prime", "torsion", "lower", "upper", "witness", "agrees"]).map_err(io)?;
            for r in rs {
                w.write_record([
                    r.b.to_string(),
                    r.prime.to_string(),
                    opt(&r.torsion),
                    opt(&r.interval.as_ref().map(|i| i.lower)),
                    opt(&r.interval.as_ref().map(|i| i.upper)),
                    opt(&r.witness),
                    r.agrees.to_string(),
                ])
                .map_err(io)?;
            }
        }
        Report::SurfaceTypes(s) => {
            w.write_record(["place", "kodaira", "euler_contribution"]).map_err(io)?;
            for f in &s.fibres {
                w.write_record([f.place.to_string(), f.kodaira.to_string(), f.euler_contribution.to_string()])
                    .map_err(io)?;
            }
        }
        Report::Mersenne(m) => {
            w.write_record(["q"]).map_err(io)?;
            for q in &m.exponents {
                w.write_record([q.to_string()]).map_err(io)?;
            }
        }
        _ => return Err(Error::UnsupportedFormat("csv is available for scan, neumann-setzer, surface-types and mersenne".into())),
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::UnsupportedFormat(e.to_string()))?)
        .map_err(|e| Error::UnsupportedFormat(e.to_string()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text_of(report: &Report) -> String {
    let mut s = String::new();
    match report {
        Report::Certificate(c) => {
            let p = c.profile.bad_primes().last().cloned().unwrap_or_default();
            writeln!(s, "q = {}", c.q).ok();
            writeln!(s, "model: [{}]", c.model).ok();
            writeln!(s, "alpha = {}, mu = {}", c.profile.alpha, c.profile.mu).ok();
            writeln!(s, "split multiplicative at 2: {}", yes(c.split_at_two)).ok();
            writeln!(s, "nonsplit multiplicative at {p}: {}", yes(c.nonsplit_at_p)).ok();
            writeln!(s, "bound 2 alpha + mu - 1 = {}", c.thm23.bound).ok();
            writeln!(s, "root number w = {}", c.root_number.global).ok();
            for (i, st) in c.steps.iter().enumerate() {
                let tag = serde_json::to_value(st.justification).expect("enum");
                writeln!(s, "  [{i}] {} ({})", st.claim, tag.as_str().unwrap_or_default()).ok();
            }
            writeln!(s, "concluded rank: {}", c.concluded_rank).ok();
        }
        Report::Confirmation(c) => {
            writeln!(s, "q = {}", c.q).ok();
            writeln!(s, "dim S2 = {}, rank <= {}", c.dim_two, c.rank_upper_bound).ok();
            let pts: Vec<String> = c.points_found.iter().map(|p| p.to_string()).collect();
            writeln!(s, "points up to height {}: {}", c.search_height, pts.join(" ")).ok();
            writeln!(s, "confirmed: {}", yes(c.confirmed)).ok();
        }
        Report::Scan(st) => {
            writeln!(s, "height bound {}, search height {}", st.params.height, st.params.search_height).ok();
            for (k, v) in &st.counts {
                let k = serde_json::to_value(k).expect("enum");
                writeln!(s, "{}: {v}", k.as_str().unwrap_or_default()).ok();
            }
            writeln!(s, "semistable fibres: {}", st.semistable).ok();
            match st.mean_root_number {
                Some(m) => writeln!(s, "mean root number: {m:.6}").ok(),
                None => writeln!(s, "mean root number: n/a").ok(),
            };
            writeln!(s, "parity checked: {}, failures: {}", st.parity_checked, st.parity_failures).ok();
        }
        Report::SurfaceTypes(r) => {
            for f in &r.fibres {
                writeln!(s, "{}: {} (euler {})", f.place, f.kodaira, f.euler_contribution).ok();
            }
        }
        Report::NeumannSetzer(rs) => {
            for r in rs {
                let iv = r.interval.as_ref().map(|i| format!("[{}, {}]", i.lower, i.upper)).unwrap_or_else(|| "-".into());
                let wit = r.witness.as_ref().map(|p| format!(" witness {p}")).unwrap_or_default();
                writeln!(s, "b = {}: p = {}, torsion {}, rank {}{}{}", r.b, r.prime, opt(&r.torsion), iv, wit, if r.agrees { "" } else { " DISAGREES" })
                    .ok();
            }
        }
        Report::Mersenne(m) => {
            for q in &m.exponents {
                writeln!(s, "{q}").ok();
            }
            if let Some(e) = &m.estimate {
                writeln!(s, "# count {} up to 2^{}; estimate {:.2} (natural log), {:.2} (base 2)", e.actual, e.log2_x, e.natural, e.base_two).ok();
            }
        }
        Report::Descent(d) => {
            let i = &d.interval;
            writeln!(s, "model y^2 = x^3 + {} x^2 + {} x", d.a, d.b).ok();
            writeln!(s, "dim S_theta = {}, dim S_theta' = {}", d.selmer.dim_theta, d.selmer.dim_theta_dual).ok();
            if let Some(t) = d.selmer.dim_two {
                writeln!(s, "dim S_2 = {t}").ok();
            }
            if let Some(t) = &d.thm23 {
                writeln!(s, "alpha = {}, mu = {}, bound {}", t.alpha, t.mu, t.bound).ok();
            }
            writeln!(s, "rank in [{}, {}]", i.lower, i.upper).ok();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mersenne() -> Report {
        Report::Mersenne(MersenneReport { limit: 20, exponents: vec![2, 3, 5, 7, 13, 17, 19], estimate: None })
    }

    #[test]
    fn envelope_keys() {
        let v = envelope(&mersenne(), &json!({"limit": 20}), None);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["body", "kind", "params", "timings", "version"]);
        assert_eq!(v["kind"], "mersenne");
        assert!(v["timings"].is_null());
    }

    #[test]
    fn json_round_trip() {
        let s = emit_report(&mersenne(), Format::Json, &json!({}), None).unwrap();
        assert_eq!(parse_report(&s).unwrap(), mersenne());
    }

    #[test]
    fn mersenne_csv_and_text() {
        let csv = emit_report(&mersenne(), Format::Csv, &json!({}), None).unwrap();
        assert!(csv.lines().count() == 8, "{csv}");
        let text = emit_report(&mersenne(), Format::Text, &json!({}), None).unwrap();
        assert_eq!(text.lines().collect::<Vec<_>>(), ["2", "3", "5", "7", "13", "17", "19"]);
    }

    #[test]
    fn garbage_does_not_parse() {
        assert!(parse_report("{\"kind\": \"nope\"}").is_err());
        assert!(parse_report("not json").is_err());
    }
}
