//! Rendering of measurements, search results and reports.

use clap::ValueEnum;
use serde::Serialize;

use domq::domination::domination_number;
use domq::enumeration::{ExtremalResult, UniverseSpec};
use domq::graph::{from_graph6, to_graph6, Graph, StructuralProfile};
use domq::report::{format_f64, ser_f64, ser_opt_f64, VerificationReport};
use domq::spectra::{q_spectrum, SpectraError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Graph6,
}

#[derive(Serialize)]
pub struct GraphRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'static str>,
    graph6: String,
    n: usize,
    m: usize,
    profile: StructuralProfile,
    gamma: usize,
    #[serde(serialize_with = "ser_f64")]
    q_min: f64,
    q_multiplicity: usize,
    #[serde(serialize_with = "ser_f64")]
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip)]
    graph: Graph,
}

impl GraphRecord {
    pub fn new(
        g: &Graph,
        tol: f64,
        family: Option<&'static str>,
        labels: Option<Vec<String>>,
    ) -> Result<GraphRecord, SpectraError> {
        let cert = q_spectrum(g, tol)?;
        Ok(GraphRecord {
            family,
            graph6: to_graph6(g),
            n: g.order(),
            m: g.size(),
            profile: g.profile(),
            gamma: domination_number(g).gamma,
            q_min: cert.q_min,
            q_multiplicity: cert.multiplicity(),
            residual: cert.residual,
            labels,
            graph: g.clone(),
        })
    }
}

#[derive(Serialize)]
pub struct SearchRecord {
    universe: String,
    n: usize,
    #[serde(serialize_with = "ser_f64")]
    min_value: f64,
    unique: bool,
    #[serde(serialize_with = "ser_opt_f64")]
    runner_up_gap: Option<f64>,
    universe_size: usize,
    minimizers: Vec<String>,
}

impl SearchRecord {
    pub fn new(spec: &UniverseSpec, r: &ExtremalResult) -> SearchRecord {
        SearchRecord {
            universe: spec.describe(),
            n: spec.n,
            min_value: r.min_value,
            unique: r.unique,
            runner_up_gap: r.runner_up_gap.is_finite().then_some(r.runner_up_gap),
            universe_size: r.universe_size,
            minimizers: r.minimizers.iter().map(to_graph6).collect(),
        }
    }
}

fn json_lines<T: Serialize>(items: &[T]) -> String {
    items
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
        .collect()
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

pub fn graphs(recs: &[GraphRecord], format: Format) -> String {
    match format {
        Format::Json => json_lines(recs),
        Format::Graph6 => recs.iter().map(|r| r.graph6.clone() + "\n").collect(),
        Format::Dot => recs.iter().map(|r| r.graph.to_dot(r.labels.as_deref())).collect(),
        Format::Csv => csv_text(
            &["graph6", "n", "m", "gamma", "q_min", "bipartite", "girth", "odd_girth"],
            recs.iter()
                .map(|r| {
                    vec![
                        r.graph6.clone(),
                        r.n.to_string(),
                        r.m.to_string(),
                        r.gamma.to_string(),
                        format_f64(r.q_min),
                        r.profile.bipartite.to_string(),
                        r.profile.girth.to_string(),
                        r.profile.odd_girth.to_string(),
                    ]
                })
                .collect(),
        ),
    }
}

fn graph6_lines<'a>(items: impl Iterator<Item = &'a str>, format: Format) -> String {
    items
        .map(|s| match format {
            Format::Dot => from_graph6(s).map(|g| g.to_dot(None)).unwrap_or_default(),
            _ => format!("{s}\n"),
        })
        .collect()
}

pub fn searches(recs: &[SearchRecord], format: Format) -> String {
    match format {
        Format::Json => json_lines(recs),
        Format::Dot | Format::Graph6 => {
            graph6_lines(recs.iter().flat_map(|r| r.minimizers.iter().map(String::as_str)), format)
        }
        Format::Csv => csv_text(
            &["n", "universe", "min_value", "unique", "runner_up_gap", "universe_size", "minimizers"],
            recs.iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.universe.clone(),
                        format_f64(r.min_value),
                        r.unique.to_string(),
                        r.runner_up_gap.map(format_f64).unwrap_or_default(),
                        r.universe_size.to_string(),
                        r.minimizers.join(" "),
                    ]
                })
                .collect(),
        ),
    }
}

pub fn report(rep: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => rep.to_jsonl(),
        Format::Dot | Format::Graph6 => graph6_lines(rep.records.iter().filter_map(|r| r.graph6.as_deref()), format),
        Format::Csv => csv_text(
            &["lemma", "status", "graph6", "gamma", "q_min", "params"],
            rep.records
                .iter()
                .map(|r| {
                    vec![
                        r.lemma.clone(),
                        r.status.to_string(),
                        r.graph6.clone().unwrap_or_default(),
                        r.gamma.map(|g| g.to_string()).unwrap_or_default(),
                        r.q_min.map(format_f64).unwrap_or_default(),
                        r.params.to_string(),
                    ]
                })
                .collect(),
        ),
    }
}
