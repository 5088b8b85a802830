//! Serialized forms of counting reports.
//!
//! Integers and rationals are written as decimal strings so that nothing
//! passes through floating point.

use std::io::Write;
use std::thread;

use grassmann_core::counting::{self, CountReport, CountingError};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRecord {
    pub k: u64,
    pub c1: String,
    pub c2: String,
    pub c3: String,
    pub d: String,
    pub e: String,
    pub qk_num: String,
    pub qk_den: String,
    pub qk_lt_1: bool,
}

/// One JSON record: the CSV fields plus the identity checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRecord {
    #[serde(flatten)]
    pub base: CsvRecord,
    /// `"num/den"` in lowest terms.
    pub qk: String,
    pub c3_closed_form: bool,
    pub e_integral: bool,
    pub routes_agree: bool,
    pub dim_below_bound: bool,
    pub zero_terms: Vec<String>,
}

impl From<&CountReport> for CsvRecord {
    fn from(r: &CountReport) -> Self {
        CsvRecord {
            k: r.k,
            c1: r.c1.to_string(),
            c2: r.c2.to_string(),
            c3: r.c3.to_string(),
            d: r.d.to_string(),
            e: r.e.to_string(),
            qk_num: r.qk.numer().to_string(),
            qk_den: r.qk.denom().to_string(),
            qk_lt_1: r.qk_lt_1,
        }
    }
}

impl From<&CountReport> for JsonRecord {
    fn from(r: &CountReport) -> Self {
        JsonRecord {
            base: r.into(),
            qk: format!("{}/{}", r.qk.numer(), r.qk.denom()),
            c3_closed_form: r.c3_closed_form,
            e_integral: r.e_integral,
            routes_agree: r.routes_agree,
            dim_below_bound: r.dim_below_bound,
            zero_terms: r.zero_terms.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl CsvRecord {
    /// Parses the numeric fields back into integers, in the order
    /// `c1, c2, c3, d, e, qk_num, qk_den`.
    pub fn integers(&self) -> Result<[BigInt; 7], num_bigint::ParseBigIntError> {
        Ok([
            self.c1.parse()?,
            self.c2.parse()?,
            self.c3.parse()?,
            self.d.parse()?,
            self.e.parse()?,
            self.qk_num.parse()?,
            self.qk_den.parse()?,
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Writes reports one at a time in the chosen format.
pub enum ReportWriter<W: Write> {
    Csv { out: csv::Writer<W>, count: usize },
    Json { out: W, count: usize },
    Text { out: W, count: usize },
}

impl<W: Write> ReportWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        match format {
            Format::Csv => ReportWriter::Csv {
                out: csv::Writer::from_writer(out),
                count: 0,
            },
            Format::Json => ReportWriter::Json { out, count: 0 },
            Format::Text => ReportWriter::Text { out, count: 0 },
        }
    }

    pub fn push(&mut self, r: &CountReport) -> anyhow::Result<()> {
        match self {
            ReportWriter::Csv { out, count } => {
                out.serialize(CsvRecord::from(r))?;
                *count += 1;
            }
            ReportWriter::Json { out, count } => {
                let sep = if *count == 0 { "[\n" } else { ",\n" };
                let body = serde_json::to_string(&JsonRecord::from(r))?;
                write!(out, "{sep}  {body}")?;
                *count += 1;
            }
            ReportWriter::Text { out, count } => {
                if *count == 0 {
                    writeln!(out, "{:>6}  {:>8}  {:>6}  Q_k", "k", "n", "Q_k<1")?;
                }
                let q = format!("{}/{}", r.qk.numer(), r.qk.denom());
                let shown = if q.len() > 60 {
                    format!("{}... ({} chars)", &q[..40], q.len())
                } else {
                    q
                };
                writeln!(out, "{:>6}  {:>8}  {:>6}  {shown}", r.k, r.rank(), r.qk_lt_1)?;
                *count += 1;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> anyhow::Result<()> {
        match self {
            ReportWriter::Csv { mut out, count } => {
                if count == 0 {
                    out.write_record([
                        "k", "c1", "c2", "c3", "d", "e", "qk_num", "qk_den", "qk_lt_1",
                    ])?;
                }
                out.flush()?;
            }
            ReportWriter::Json { mut out, count } => {
                let close = if count == 0 { "[]\n" } else { "\n]\n" };
                write!(out, "{close}")?;
                out.flush()?;
            }
            ReportWriter::Text { mut out, .. } => out.flush()?,
        }
        Ok(())
    }
}

pub fn parse_csv(text: &str) -> anyhow::Result<Vec<CsvRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}

pub fn parse_json(text: &str) -> anyhow::Result<Vec<JsonRecord>> {
    Ok(serde_json::from_str(text)?)
}

/// Runs `report(k)` for `k_from..=k_to` on `workers` threads, handing each
/// report to `sink` in ascending `k`. Stops at the first failing `k`.
pub fn sweep_ordered(
    k_from: u64,
    k_to: u64,
    workers: usize,
    mut sink: impl FnMut(&CountReport) -> anyhow::Result<()>,
) -> anyhow::Result<Result<(), CountingError>> {
    let workers = workers.max(1) as u64;
    let batch = workers * 4;
    let mut start = k_from;
    while start <= k_to {
        let end = k_to.min(start + batch - 1);
        let results: Vec<Result<CountReport, CountingError>> = if workers == 1 {
            (start..=end).map(counting::report).collect()
        } else {
            thread::scope(|s| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        s.spawn(move || {
                            (start + w..=end)
                                .step_by(workers as usize)
                                .map(|k| (k, counting::report(k)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                let mut all: Vec<_> = handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("sweep worker panicked"))
                    .collect();
                all.sort_by_key(|(k, _)| *k);
                all.into_iter().map(|(_, r)| r).collect()
            })
        };
        for r in results {
            match r {
                Ok(report) => sink(&report)?,
                Err(e) => return Ok(Err(e)),
            }
        }
        start = end + 1;
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_sweep_keeps_order() {
        let mut seq = Vec::new();
        sweep_ordered(1, 23, 1, |r| {
            seq.push(r.clone());
            Ok(())
        })
        .unwrap()
        .unwrap();
        let mut par = Vec::new();
        sweep_ordered(1, 23, 3, |r| {
            par.push(r.clone());
            Ok(())
        })
        .unwrap()
        .unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.iter().map(|r| r.k).collect::<Vec<_>>(), (1..=23).collect::<Vec<_>>());
    }

    #[test]
    fn record_fields() {
        let r = counting::report(2).unwrap();
        let rec = JsonRecord::from(&r);
        assert_eq!(rec.qk, "4033/4096");
        assert_eq!(rec.base.c1, "1590");
        assert_eq!(rec.base.qk_den, "4096");
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["e"], "17875");
        assert_eq!(json["qk_lt_1"], true);
    }
}
