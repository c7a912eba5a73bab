//! Certificate files: one JSON header line followed by one `TwistRecord` per line.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use twinrank_core::certify::{IndependenceReport, IndependenceVerdict, OrderVerdict};
use twinrank_core::families::{FamilyId, TwistRecord};
use twinrank_core::symalg::rat::rat_to_string;

use crate::config::RunConfig;

pub const FORMAT: &str = "twinrank-certificates/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub tool: String,
    pub version: String,
    pub family: FamilyId,
    pub alpha: String,
    pub config: RunConfig,
}

impl Header {
    pub fn new(config: &RunConfig, alpha: &str) -> Self {
        Self {
            format: FORMAT.into(),
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            family: config.family,
            alpha: alpha.into(),
            config: config.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateFile {
    pub header: Header,
    pub records: Vec<TwistRecord>,
}

pub fn write_line<W: Write, T: Serialize>(w: &mut W, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

impl CertificateFile {
    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    /// Errors name the offending line.
    pub fn from_reader<R: BufRead>(r: R) -> anyhow::Result<Self> {
        let mut lines = r.lines().enumerate().filter(|(_, l)| !matches!(l, Ok(s) if s.trim().is_empty()));
        let Some((_, first)) = lines.next() else { bail!("empty certificate file") };
        let header: Header = serde_json::from_str(&first?).context("line 1: not a certificate header")?;
        if header.format != FORMAT {
            bail!("line 1: unsupported format {:?}", header.format);
        }
        let mut records = Vec::new();
        for (i, line) in lines {
            let rec = serde_json::from_str(&line?).with_context(|| format!("line {}: not a twist record", i + 1))?;
            records.push(rec);
        }
        Ok(Self { header, records })
    }

    pub fn write<W: Write>(&self, w: &mut W) -> anyhow::Result<()> {
        write_line(w, &self.header)?;
        for r in &self.records {
            write_line(w, r)?;
        }
        Ok(())
    }
}

/// `out.jsonl` -> `out.csv`.
pub fn csv_path(out: &Path) -> PathBuf {
    out.with_extension("csv")
}

#[derive(Serialize)]
struct SummaryRow {
    index: usize,
    n: i64,
    m: i64,
    t: String,
    d_squarefree: String,
    reduction_complete: bool,
    orders: String,
    e1_verdict: String,
    e1_regulator: Option<f64>,
    e2_verdict: String,
    e2_regulator: Option<f64>,
}

fn verdict(r: &IndependenceReport) -> String {
    match r.verdict {
        IndependenceVerdict::IndependentEvidence => "independent-evidence".into(),
        IndependenceVerdict::RelationFound(a, b) => format!("relation({a},{b})"),
        IndependenceVerdict::Inconclusive => "inconclusive".into(),
    }
}

pub fn write_summary<W: Write>(w: W, records: &[TwistRecord]) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (i, r) in records.iter().enumerate() {
        let orders: Vec<String> = r
            .orders
            .iter()
            .map(|o| match o.verdict {
                OrderVerdict::InfiniteOrder => "infinite".to_string(),
                OrderVerdict::TorsionOfOrder(n) => format!("torsion{n}"),
            })
            .collect();
        out.serialize(SummaryRow {
            index: i + 1,
            n: r.walk[0],
            m: r.walk[1],
            t: rat_to_string(&r.t),
            d_squarefree: rat_to_string(&r.d_squarefree),
            reduction_complete: r.reduction_complete,
            orders: orders.join(" "),
            e1_verdict: verdict(&r.independence[0]),
            e1_regulator: r.independence[0].regulator_estimate,
            e2_verdict: verdict(&r.independence[1]),
            e2_regulator: r.independence[1].regulator_estimate,
        })?;
    }
    out.flush()?;
    Ok(())
}
