use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instances::{Family, Instance, Shape, Sign};
use crate::disctriple::algorithm1_scan;
use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, Rational};

/// Outcome of scanning one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub params: Vec<i64>,
    pub label: String,
    pub degree: i64,
    pub terms: usize,
    pub passing: usize,
    pub distinct: usize,
    pub passing_terms: Vec<usize>,
}

/// Sums over a set of instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub instances: usize,
    pub terms: usize,
    pub passing: usize,
    pub distinct: usize,
    pub percentage: String,
    pub fraction: String,
}

impl Totals {
    fn from_records<'a>(records: impl IntoIterator<Item = &'a InstanceRecord>) -> Self {
        let mut t = Totals::default();
        for r in records {
            t.instances += 1;
            t.terms += r.terms;
            t.passing += r.passing;
            t.distinct += r.distinct;
        }
        t.percentage = percentage(t.passing, t.terms);
        t.fraction = if t.terms == 0 {
            "0".into()
        } else {
            format_rational(&Rational::new(BigInt::from(t.passing), BigInt::from(t.terms)))
        };
        t
    }
}

/// `100 p / t` to two decimals.
pub fn percentage(passing: usize, terms: usize) -> String {
    if terms == 0 {
        return "0.00".into();
    }
    let hundredths = (20000 * passing + terms) / (2 * terms);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// Published figures for a family at its full bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub instances: usize,
    pub terms: usize,
    pub passing: usize,
    pub percentage: String,
}

pub fn reference(family: &Family) -> Option<Reference> {
    let r = |instances, terms, passing, percentage: &str| Reference {
        instances,
        terms,
        passing,
        percentage: percentage.into(),
    };
    match *family {
        Family::Univariate { bound: 17 } => Some(r(613, 7927, 123, "1.55")),
        Family::Trinomial { bound: 17 } => Some(r(138, 2665, 93, "3.49")),
        Family::LinearMultiple { shape: Shape::Binomial, sign: Sign::Minus, bound: 8 } => Some(r(1028, 8212, 12, "0.15")),
        Family::LinearMultiple { shape: Shape::Binomial, sign: Sign::Plus, bound: 8 } => Some(r(1028, 8218, 0, "0")),
        Family::LinearMultiple { shape: Shape::Trinomial, sign: Sign::Minus, bound: 3 } => Some(r(792, 8678, 8, "0.01")),
        Family::LinearMultiple { shape: Shape::Trinomial, sign: Sign::Plus, bound: 3 } => Some(r(792, 8968, 0, "0")),
        _ => None,
    }
}

/// Aggregated result of a family scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: String,
    pub bound: u32,
    pub records: Vec<InstanceRecord>,
    pub totals: Totals,
    pub per_degree: BTreeMap<i64, Totals>,
    pub reference: Option<Reference>,
    /// Differences between the computed totals and the published figures.
    pub flags: Vec<String>,
    pub elapsed_ms: u128,
}

impl ScanReport {
    pub fn new(family: &Family, records: Vec<InstanceRecord>, elapsed_ms: u128) -> Self {
        let totals = Totals::from_records(&records);
        let mut by_degree: BTreeMap<i64, Vec<&InstanceRecord>> = BTreeMap::new();
        for r in &records {
            by_degree.entry(r.degree).or_default().push(r);
        }
        let per_degree = by_degree
            .into_iter()
            .map(|(d, rs)| (d, Totals::from_records(rs)))
            .collect();
        let reference = reference(family);
        let mut flags = Vec::new();
        if let Some(r) = &reference {
            if r.instances != totals.instances {
                flags.push(format!("instances: computed {}, published {}", totals.instances, r.instances));
            }
            if r.terms != totals.terms {
                flags.push(format!("candidate pairs: computed {}, published {}", totals.terms, r.terms));
            }
            if r.passing != totals.passing {
                flags.push(format!("passing pairs: computed {}, published {}", totals.passing, r.passing));
            }
            let published = format!("{:.2}", r.percentage.parse::<f64>().unwrap_or(0.0));
            if published != totals.percentage {
                flags.push(format!(
                    "percentage: computed {}%, published {}%",
                    totals.percentage, r.percentage
                ));
            }
        }
        ScanReport {
            family: family.name(),
            bound: family.bound(),
            records,
            totals,
            per_degree,
            reference,
            flags,
            elapsed_ms,
        }
    }

    /// `"613 matrices, 7927 pairs, 123 triples (1.55%)"`
    pub fn summary_line(&self) -> String {
        format!(
            "{} matrices, {} pairs, {} triples ({}%)",
            self.totals.instances, self.totals.terms, self.totals.passing, self.totals.percentage
        )
    }

    /// One JSON line per instance followed by a summary line.
    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "summary": {
                "family": self.family,
                "bound": self.bound,
                "totals": self.totals,
                "per_degree": self.per_degree,
                "reference": self.reference,
                "flags": self.flags,
            }
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// A plain-text table row in the style `Family | Pairs | Horn pairs | %`.
    pub fn to_table(reports: &[ScanReport]) -> String {
        let mut rows = vec![[
            "Family".to_string(),
            "Instances".to_string(),
            "Pairs (Δ,m)".to_string(),
            "Horn pairs".to_string(),
            "Percentage".to_string(),
            "Fraction".to_string(),
        ]];
        for r in reports {
            rows.push([
                r.family.clone(),
                r.totals.instances.to_string(),
                r.totals.terms.to_string(),
                r.totals.passing.to_string(),
                format!("{}%", r.totals.percentage),
                r.totals.fraction.clone(),
            ]);
        }
        let widths: Vec<usize> = (0..6)
            .map(|k| rows.iter().map(|row| row[k].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
            if i == 0 {
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                out.push_str(&rule.join("-|-"));
                out.push('\n');
            }
        }
        for r in reports {
            for f in &r.flags {
                out.push_str(&format!("note [{}]: {f}\n", r.family));
            }
        }
        out
    }
}

/// Runtime knobs for [`run_scan`].
#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    /// Worker threads; the global pool when `None`.
    pub jobs: Option<usize>,
    /// NDJSON file of finished instances, appended as work completes and
    /// read back to skip them on the next run.
    pub checkpoint: Option<PathBuf>,
    /// Restrict the scan to the first `limit` instances.
    pub limit: Option<usize>,
}

/// Scans a single instance.
pub fn scan_instance(family: &Family, inst: &Instance) -> Result<InstanceRecord> {
    let (a, delta) = family.build(inst)?;
    let out = algorithm1_scan(&a, &delta)?;
    Ok(InstanceRecord {
        index: inst.index,
        params: inst.params.clone(),
        label: inst.label.clone(),
        degree: delta.total_degree().unwrap_or(0),
        terms: out.terms,
        passing: out.records.len(),
        distinct: out.distinct(),
        passing_terms: out.records.iter().map(|r| r.term_index).collect(),
    })
}

fn read_checkpoint(path: &PathBuf, instances: &[Instance]) -> Result<HashMap<usize, InstanceRecord>> {
    let mut done = HashMap::new();
    let Ok(file) = File::open(path) else {
        return Ok(done);
    };
    for line in BufReader::new(file).lines() {
        let line = line?;
        let Ok(r) = serde_json::from_str::<InstanceRecord>(&line) else {
            continue;
        };
        if instances.get(r.index).is_some_and(|i| i.params == r.params) {
            done.insert(r.index, r);
        }
    }
    Ok(done)
}

/// Scans every instance of the family in parallel. Records are folded in
/// instance order, so the report does not depend on the number of workers.
pub fn run_scan(family: &Family, options: &ScanOptions) -> Result<ScanReport> {
    let start = Instant::now();
    let mut instances = family.instances();
    if let Some(l) = options.limit {
        instances.truncate(l);
    }
    let mut done = match &options.checkpoint {
        Some(p) => read_checkpoint(p, &instances)?,
        None => HashMap::new(),
    };
    let todo: Vec<&Instance> = instances.iter().filter(|i| !done.contains_key(&i.index)).collect();
    let mut sink = match &options.checkpoint {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };
    let work = |chunk: &[&Instance]| -> Result<Vec<InstanceRecord>> {
        chunk.par_iter().map(|i| scan_instance(family, i)).collect()
    };
    let pool = match options.jobs {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(e.to_string()))?,
        ),
        None => None,
    };
    for chunk in todo.chunks(64) {
        let records = match &pool {
            Some(p) => p.install(|| work(chunk))?,
            None => work(chunk)?,
        };
        if let Some(f) = sink.as_mut() {
            for r in &records {
                writeln!(f, "{}", serde_json::to_string(r).expect("serializable"))?;
            }
            f.flush()?;
        }
        for r in records {
            done.insert(r.index, r);
        }
    }
    let mut records: Vec<InstanceRecord> = done.into_values().collect();
    records.sort_by_key(|r| r.index);
    Ok(ScanReport::new(family, records, start.elapsed().as_millis()))
}
