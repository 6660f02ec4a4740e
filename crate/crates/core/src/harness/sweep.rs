//! Parameter sweeps: run the base experiment once per value of one
//! `section.key`, in parallel, and emit a combined table in config order.

use rayon::prelude::*;

use super::config;
use super::runner::{self, SummaryReport};
use crate::{Error, Result};

/// One sweep cell: the attempted value and the run outcome.
#[derive(Debug)]
pub struct SweepCell {
    pub value: String,
    pub outcome: Result<SummaryReport>,
}

/// Apply `key = value` onto the base config text and run each resulting
/// experiment. Cells run in parallel; results come back in value order.
/// Per-cell failures are recorded, not raised.
pub fn sweep(base_text: &str, key: &str, values: &[String]) -> Result<Vec<SweepCell>> {
    let (section, key) = key.split_once('.').ok_or_else(|| {
        Error::Config(format!(
            "vary key must look like `section.key`, got `{key}`"
        ))
    })?;
    // Validate the base text once so a broken config fails fast.
    config::parse(base_text, None)?;
    let cells: Vec<SweepCell> = values
        .par_iter()
        .map(|value| {
            let text = config::override_key(base_text, section, key, value);
            let outcome =
                config::parse(&text, None).and_then(|cfg| runner::run(&cfg).map(|(_, s)| s));
            SweepCell {
                value: value.clone(),
                outcome,
            }
        })
        .collect();
    Ok(cells)
}

/// Render the sweep table as CSV keyed by the varied value.
pub fn table_to_csv(key: &str, cells: &[SweepCell]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{key},status,regret,p_star,s_star,bound_p,bound_s,bound_selfconcordant,all_satisfied\n"
    ));
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for cell in cells {
        match &cell.outcome {
            Ok(summary) => {
                let b = summary.bounds.as_ref();
                out.push_str(&format!(
                    "{},ok,{},{},{},{},{},{},{}\n",
                    cell.value,
                    summary.regret,
                    summary.regularity.p_star,
                    summary.regularity.s_star,
                    opt(b.and_then(|b| b.bound_p)),
                    opt(b.and_then(|b| b.bound_s)),
                    opt(b.and_then(|b| b.bound_selfconcordant)),
                    b.map(|b| b.all_satisfied().to_string()).unwrap_or_default(),
                ));
            }
            Err(e) => {
                out.push_str(&format!(
                    "{},error: {},,,,,,\n",
                    cell.value,
                    e.to_string().replace(',', ";")
                ));
            }
        }
    }
    out
}
