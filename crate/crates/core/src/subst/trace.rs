//! Run traces: one row per substitution state, plus the m-series ordinal
//! bookkeeping and a stable line-delimited serialization for golden tests.

use num_bigint::BigUint;

use crate::epsilon::proof::ProofStep;
use crate::ordinals::{compare_series, SeriesOrdinal};
use crate::registry::FunctionRegistry;

use super::stats::{characteristic, degree_of, order_of};
use super::{EngineError, Repair, SubstState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub generation: u64,
    /// Index of the first false critical step under this state; `None` marks
    /// the final substitution.
    pub repaired_step: Option<usize>,
    pub category_position: Option<usize>,
    pub category: Option<String>,
    pub entry_key: Option<Vec<u64>>,
    pub old: Option<u64>,
    pub new: Option<u64>,
    pub characteristic: usize,
    pub order: BigUint,
    pub degree: BigUint,
}

#[derive(Debug, Clone, Default)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
    /// Number of categories of the underlying proof (fixes the series range).
    pub categories: usize,
}

impl RunTrace {
    pub fn new() -> RunTrace {
        RunTrace::default()
    }

    pub(crate) fn push_row(
        &mut self,
        proof: &[ProofStep],
        state: &SubstState,
        reg: &FunctionRegistry,
        repaired_step: Option<usize>,
        repair: Option<&Repair>,
    ) -> Result<(), EngineError> {
        self.categories = state.analysis().categories.len();
        let row = TraceRow {
            generation: state.generation(),
            repaired_step,
            category_position: repair.map(|r| r.category_position),
            category: repair.map(|r| state.analysis().categories[r.category_position].to_string()),
            entry_key: repair.map(|r| r.key.clone()),
            old: repair.map(|r| r.old),
            new: repair.map(|r| r.new),
            characteristic: characteristic(state),
            order: order_of(state, reg)?,
            degree: degree_of(state, proof, reg)?,
        };
        self.rows.push(row);
        Ok(())
    }
}

/// The m-series decomposition of a run, carrying each series' opening
/// characteristic number alongside its ordinal index.
///
/// A 1-series is a single substitution. For m ≥ 2, a new m-series opens at
/// the start of the run and at every substitution whose characteristic
/// number is ≥ m; the members between two openers are the series.
pub fn series_with_openers(trace: &RunTrace, m: u32) -> Vec<(usize, SeriesOrdinal)> {
    if m <= 1 {
        return trace
            .rows
            .iter()
            .map(|r| {
                (
                    r.characteristic,
                    SeriesOrdinal::level1(r.order.clone(), r.degree.clone()),
                )
            })
            .collect();
    }
    let lower = series_with_openers(trace, m - 1);
    let mut out: Vec<(usize, Vec<SeriesOrdinal>)> = Vec::new();
    for (opener, index) in lower {
        let starts_new = out.is_empty() || opener >= m as usize;
        if starts_new {
            out.push((opener, vec![index]));
        } else {
            out.last_mut().unwrap().1.push(index);
        }
    }
    out.into_iter()
        .map(|(opener, members)| (opener, SeriesOrdinal::sum(m, members)))
        .collect()
}

/// Ordinal indices of the m-series decomposing the run.
pub fn series_indices(trace: &RunTrace, m: u32) -> Vec<SeriesOrdinal> {
    series_with_openers(trace, m)
        .into_iter()
        .map(|(_, idx)| idx)
        .collect()
}

/// Checks the corollary on a trace: for every m, consecutive m-series whose
/// second member opens with a characteristic-m substitution have strictly
/// decreasing ordinal indices.
pub fn check_series_decrease(trace: &RunTrace) -> Result<(), String> {
    for m in 1..=(trace.categories as u32 + 1) {
        let series = series_with_openers(trace, m);
        for pair in series.windows(2) {
            let (_, ref first) = pair[0];
            let (opener, ref second) = pair[1];
            if opener == m as usize {
                match compare_series(first, second) {
                    Ok(std::cmp::Ordering::Greater) => {}
                    Ok(other) => {
                        return Err(format!(
                            "consecutive {m}-series indices not decreasing: {first} vs {second} ({other:?})"
                        ))
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    Ok(())
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn opt_json<T: std::fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "null".into(),
    }
}

impl RunTrace {
    /// Line-delimited records, one per substitution state, followed by a
    /// series summary block. Byte-stable for identical inputs and budgets.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let key = match &r.entry_key {
                Some(k) => format!(
                    "[{}]",
                    k.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => "null".into(),
            };
            let category = match &r.category {
                Some(c) => format!("\"{}\"", json_escape(c)),
                None => "null".into(),
            };
            out.push_str(&format!(
                "{{\"gen\":{},\"repairedStep\":{},\"category\":{},\"entryKey\":{},\"old\":{},\"new\":{},\"char\":{},\"o\":\"{}\",\"d\":\"{}\"}}\n",
                r.generation,
                opt_json(&r.repaired_step),
                category,
                key,
                opt_json(&r.old),
                opt_json(&r.new),
                r.characteristic,
                r.order,
                r.degree,
            ));
        }
        for m in 1..=(self.categories as u32 + 1) {
            let indices = series_indices(self, m)
                .iter()
                .map(|s| format!("\"{}\"", json_escape(&s.to_string())))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "{{\"series\":{{\"m\":{m},\"indices\":[{indices}]}}}}\n"
            ));
        }
        out
    }
}
