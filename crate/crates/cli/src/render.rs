//! JSON and CSV report rendering. Numbers carry 15 significant digits.

use anyhow::Result;
use serde::Serialize;

use welfarelens::format::{fmt_num, round15};
use welfarelens::{
    CurveGrid, DominanceVerdict, IndexKind, IndexReport, PropositionCertificate, WeightProfile,
};

use crate::Format;

pub struct Rendered(pub String);

#[derive(Serialize)]
pub struct WelfareRow {
    pub kind: IndexKind,
    #[serde(serialize_with = "round15")]
    pub index: f64,
    #[serde(serialize_with = "round15")]
    pub welfare: f64,
    #[serde(serialize_with = "round15")]
    pub welfare_by_curve: f64,
    #[serde(serialize_with = "round15")]
    pub welfare_direct: f64,
}

#[derive(Serialize)]
pub struct WelfareReport {
    #[serde(serialize_with = "round15")]
    pub mean: f64,
    pub rows: Vec<WelfareRow>,
}

#[derive(Serialize)]
pub struct DominanceReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lorenz: Option<DominanceVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zenga: Option<DominanceVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalent: Option<bool>,
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<Rendered> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(Rendered(s))
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Rendered> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(Rendered(String::from_utf8(w.into_inner()?)?))
}

pub fn index(report: &IndexReport, ks: &[f64], format: Format) -> Result<Rendered> {
    if format == Format::Json {
        return json(report);
    }
    let mut rows = vec![vec!["gini".to_string(), fmt_num(report.gini)]];
    for k in ks {
        let key = fmt_num(*k);
        rows.push(vec![format!("gini_k({key})"), fmt_num(report.gini_k[&key])]);
    }
    rows.push(vec!["bonferroni".into(), fmt_num(report.bonferroni)]);
    rows.push(vec!["zenga".into(), fmt_num(report.zenga)]);
    rows.push(vec!["mean".into(), fmt_num(report.mean)]);
    csv(&["statistic", "value"], rows)
}

pub fn curve(grid: &CurveGrid, format: Format) -> Result<Rendered> {
    match format {
        Format::Json => json(grid),
        Format::Csv => csv(
            &["p", "value"],
            grid.points
                .iter()
                .map(|pt| vec![fmt_num(pt.p), fmt_num(pt.value)]),
        ),
    }
}

pub fn weights(profile: &WeightProfile, format: Format) -> Result<Rendered> {
    match format {
        Format::Json => json(profile),
        Format::Csv => {
            let rows = profile
                .points
                .iter()
                .map(|pt| vec![fmt_num(pt.p), fmt_num(pt.weight)])
                .chain(std::iter::once(vec![
                    "integral".to_string(),
                    fmt_num(profile.integral),
                ]));
            csv(&["p", "weight"], rows)
        }
    }
}

pub fn welfare(report: &WelfareReport, format: Format) -> Result<Rendered> {
    match format {
        Format::Json => json(report),
        Format::Csv => csv(
            &[
                "kind",
                "index",
                "welfare",
                "welfare_by_curve",
                "welfare_direct",
                "mean",
            ],
            report.rows.iter().map(|r| {
                vec![
                    r.kind.to_string(),
                    fmt_num(r.index),
                    fmt_num(r.welfare),
                    fmt_num(r.welfare_by_curve),
                    fmt_num(r.welfare_direct),
                    fmt_num(report.mean),
                ]
            }),
        ),
    }
}

pub fn dominance(report: &DominanceReport, format: Format) -> Result<Rendered> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let rows = [("lorenz", &report.lorenz), ("zenga", &report.zenga)]
                .into_iter()
                .filter_map(|(name, v)| v.as_ref().map(|v| (name, v)))
                .map(|(name, v)| {
                    let crossings: Vec<String> = v.crossings.iter().map(|c| fmt_num(*c)).collect();
                    vec![
                        name.to_string(),
                        v.relation.as_str().to_string(),
                        fmt_num(v.max_gap),
                        crossings.join(";"),
                        v.grid_size.to_string(),
                    ]
                });
            csv(
                &["ordering", "relation", "max_gap", "crossings", "grid_size"],
                rows,
            )
        }
    }
}

pub fn certificates(certs: &[PropositionCertificate], format: Format) -> Result<Rendered> {
    match format {
        Format::Json => json(certs),
        Format::Csv => csv(
            &["id", "status", "residual", "description"],
            certs.iter().map(|c| {
                vec![
                    c.id.to_string(),
                    if c.passed() { "pass" } else { "fail" }.to_string(),
                    fmt_num(c.residual),
                    c.description.clone(),
                ]
            }),
        ),
    }
}
