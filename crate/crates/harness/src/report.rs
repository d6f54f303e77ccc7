//! Reports and their CSV and JSON forms.

use std::io::Write;

use serde::{Deserialize, Serialize};
use vcsp_core::search::Termination;
use vcsp_core::Assignment;

use crate::HarnessError;

pub const CSV_COLUMNS: [&str; 12] = [
    "instance_id",
    "family",
    "n",
    "rule",
    "seed",
    "steps",
    "terminated",
    "height",
    "width",
    "bound_name",
    "bound_value",
    "within_bound",
];

/// One trial. `height` and `width` are those of the certified order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub instance_id: String,
    pub family: String,
    pub n: usize,
    pub rule: String,
    pub seed: u64,
    pub start: Assignment,
    pub steps: usize,
    pub terminated: Termination,
    /// Decimal string, since weights are unbounded.
    pub final_fitness: String,
    pub height: usize,
    pub width: usize,
    pub bound_name: Option<String>,
    /// Per-run bound for per-run kinds, the bound on the mean otherwise.
    pub bound_value: Option<f64>,
    /// For expectation bounds this is the verdict on the group mean.
    pub within_bound: Option<bool>,
}

/// Statistics of one (instance, rule) group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub instance_id: String,
    pub family: String,
    pub n: usize,
    pub rule: String,
    pub trials: usize,
    /// Trials stopped by the step cap; they stay in every statistic.
    pub capped: usize,
    pub mean: f64,
    pub median: f64,
    pub max: usize,
    pub height: usize,
    pub width: usize,
    pub bound_name: Option<String>,
    /// Largest per-run bound, or the bound on the mean.
    pub bound_value: Option<f64>,
    pub within_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub base_seed: u64,
    pub groups: Vec<GroupSummary>,
    pub trials: Vec<TrialRecord>,
}

/// Decimal form of a bound value: shortest round-trip representation.
pub fn decimal(v: f64) -> String {
    format!("{v}")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

impl BoundReport {
    /// True when no enabled check failed.
    pub fn all_within(&self) -> bool {
        self.groups.iter().all(|g| g.within_bound != Some(false))
    }

    pub fn failures(&self) -> Vec<&GroupSummary> {
        self.groups
            .iter()
            .filter(|g| g.within_bound == Some(false))
            .collect()
    }

    /// Writes one row per trial. With `timestamp` the first line is a
    /// `# generated at <unix seconds>` comment; everything after it depends only
    /// on the report.
    pub fn write_csv<W: Write>(&self, mut out: W, timestamp: bool) -> Result<(), HarnessError> {
        if timestamp {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            writeln!(out, "# generated at {secs}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for t in &self.trials {
            w.write_record([
                t.instance_id.clone(),
                t.family.clone(),
                t.n.to_string(),
                t.rule.clone(),
                t.seed.to_string(),
                t.steps.to_string(),
                t.terminated.to_string(),
                t.height.to_string(),
                t.width.to_string(),
                t.bound_name.clone().unwrap_or_default(),
                t.bound_value.map(decimal).unwrap_or_default(),
                opt(&t.within_bound),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self, timestamp: bool) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, timestamp)
            .expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    /// Fixed-width table of the groups, for terminals.
    pub fn summary_table(&self) -> String {
        let mut s = format!(
            "{:<28} {:<30} {:>6} {:>10} {:>8} {:>6} {:>6} {:<20} {:>12} {}\n",
            "instance", "rule", "trials", "mean", "median", "max", "capped", "bound", "value", "ok"
        );
        for g in &self.groups {
            s += &format!(
                "{:<28} {:<30} {:>6} {:>10.3} {:>8.1} {:>6} {:>6} {:<20} {:>12} {}\n",
                g.instance_id,
                g.rule,
                g.trials,
                g.mean,
                g.median,
                g.max,
                g.capped,
                g.bound_name.as_deref().unwrap_or("-"),
                g.bound_value.map_or("-".into(), |v| format!("{v:.3}")),
                g.within_bound
                    .map_or("-", |ok| if ok { "yes" } else { "NO" }),
            );
        }
        s
    }
}
