//! Experiment configuration: a flat, section-based key = value text file.
//!
//! ```text
//! [scenario]
//! kind = drifting_quadratic
//! rounds = 100
//! dim = 5
//! tau = 0.5
//! seed = 42
//! set = ball 1.0
//!
//! [learner]
//! variant = omgd
//! eta = auto
//! k = auto
//!
//! [report]
//! probe_grid = 64
//! ```
//!
//! The raw file text is echoed verbatim into the summary for provenance.
//! The `DYNREGRET_SEED` environment variable (or an explicit override)
//! replaces the configured seed.

use crate::functions::FeasibleSet;
use crate::learners::LearnerKind;
use crate::numerics::Vector;
use crate::scenarios::{ScenarioConfig, ScenarioExtras, ScenarioKind};
use crate::{Error, Result};

/// `auto` resolves from the scenario constants; `fixed` is taken as given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Setting {
    Auto,
    Fixed(f64),
}

/// Inner-iteration budget: `auto` resolves to the prescribed count for the
/// scenario's function class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerCount {
    Auto,
    Fixed(usize),
}

/// Where the first iterate comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartPoint {
    /// The scenario's recommended (seeded) starting point.
    Scenario,
    /// The center of the feasible set.
    Center,
    /// The first round's minimizer (diagnostic runs only; a real learner
    /// does not know it).
    Minimizer,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    pub learner: LearnerKind,
    pub eta: Setting,
    pub k_inner: InnerCount,
    pub start: StartPoint,
    pub probe_grid: usize,
    pub evaluate_bounds: bool,
    /// The raw config text, echoed into the summary.
    pub raw_text: String,
}

/// Parse a config file, optionally overriding the seed.
pub fn load(path: &std::path::Path, seed_override: Option<u64>) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, seed_override)
}

/// Parse config text, optionally overriding the seed.
pub fn parse(text: &str, seed_override: Option<u64>) -> Result<ExperimentConfig> {
    let mut section = String::new();
    let mut entries: Vec<(String, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        if section.is_empty() {
            return Err(Error::Config(format!(
                "line {}: key outside any [section]",
                lineno + 1
            )));
        }
        entries.push((
            section.clone(),
            key.trim().to_string(),
            value.trim().to_string(),
        ));
    }

    let mut b = Builder::default();
    for (section, key, value) in &entries {
        b.apply(section, key, value)?;
    }
    b.finish(text, seed_override)
}

/// Replace (or insert) `section.key` in raw config text. Used by sweeps.
pub fn override_key(text: &str, section: &str, key: &str, value: &str) -> String {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut replaced = false;
    let mut section_seen = false;
    for raw in text.lines() {
        let stripped = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if let Some(name) = stripped
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
        {
            // Leaving the target section without a hit: append the key.
            if current == section && !replaced {
                out.push(format!("{key} = {value}"));
                replaced = true;
            }
            current = name.trim().to_string();
            if current == section {
                section_seen = true;
            }
            out.push(raw.to_string());
            continue;
        }
        if current == section {
            if let Some((k, _)) = stripped.split_once('=') {
                if k.trim() == key {
                    out.push(format!("{key} = {value}"));
                    replaced = true;
                    continue;
                }
            }
        }
        out.push(raw.to_string());
    }
    if !replaced {
        if !section_seen {
            out.push(format!("[{section}]"));
        } else if current == section {
            // File ended inside the target section.
        }
        out.push(format!("{key} = {value}"));
    }
    out.join("\n")
}

#[derive(Default)]
struct Builder {
    kind: Option<ScenarioKind>,
    rounds: Option<usize>,
    dim: Option<usize>,
    tau: Option<f64>,
    seed: Option<u64>,
    set_spec: Option<String>,
    extras: ScenarioExtras,
    learner: Option<LearnerKind>,
    eta: Option<Setting>,
    k_inner: Option<InnerCount>,
    start: Option<StartPoint>,
    probe_grid: Option<usize>,
    evaluate_bounds: Option<bool>,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse `{value}` for key `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "cannot parse `{value}` for boolean key `{key}`"
        ))),
    }
}

impl Builder {
    fn apply(&mut self, section: &str, key: &str, value: &str) -> Result<()> {
        match (section, key) {
            ("scenario", "kind") => self.kind = Some(ScenarioKind::parse(value)?),
            ("scenario", "rounds") => self.rounds = Some(parse_num(key, value)?),
            ("scenario", "dim") => self.dim = Some(parse_num(key, value)?),
            ("scenario", "tau") => self.tau = Some(parse_num(key, value)?),
            ("scenario", "seed") => self.seed = Some(parse_num(key, value)?),
            ("scenario", "set") => self.set_spec = Some(value.to_string()),
            ("scenario", "cond") => self.extras.cond = parse_num(key, value)?,
            ("scenario", "per_round_hessian") => {
                self.extras.per_round_hessian = parse_bool(key, value)?;
            }
            ("scenario", "batch") => self.extras.batch = parse_num(key, value)?,
            ("scenario", "reg") => self.extras.reg = parse_num(key, value)?,
            ("scenario", "refresh_batch") => {
                self.extras.refresh_batch = parse_bool(key, value)?;
            }
            ("scenario", "rank") => self.extras.rank = parse_num(key, value)?,
            ("scenario", "barrier_halfwidth") => {
                self.extras.barrier_halfwidth = parse_num(key, value)?;
            }
            ("learner", "variant") => {
                self.learner = Some(match value {
                    "ogd" => LearnerKind::Ogd,
                    "omgd" => LearnerKind::Omgd,
                    "omnu" => LearnerKind::Omnu,
                    other => {
                        return Err(Error::Config(format!("unknown learner `{other}`")));
                    }
                });
            }
            ("learner", "eta") => {
                self.eta = Some(if value == "auto" {
                    Setting::Auto
                } else {
                    Setting::Fixed(parse_num(key, value)?)
                });
            }
            ("learner", "k") => {
                self.k_inner = Some(if value == "auto" {
                    InnerCount::Auto
                } else {
                    InnerCount::Fixed(parse_num(key, value)?)
                });
            }
            ("learner", "start") => {
                self.start = Some(match value {
                    "scenario" => StartPoint::Scenario,
                    "center" => StartPoint::Center,
                    "minimizer" => StartPoint::Minimizer,
                    other => {
                        return Err(Error::Config(format!("unknown start `{other}`")));
                    }
                });
            }
            ("report", "probe_grid") => self.probe_grid = Some(parse_num(key, value)?),
            ("report", "bounds") => {
                self.evaluate_bounds = Some(match value {
                    "auto" => true,
                    "none" => false,
                    other => {
                        return Err(Error::Config(format!(
                            "report bounds must be `auto` or `none`, got `{other}`"
                        )));
                    }
                });
            }
            _ => {
                return Err(Error::Config(format!(
                    "unknown config key `{key}` in section [{section}]"
                )));
            }
        }
        Ok(())
    }

    fn finish(self, raw_text: &str, seed_override: Option<u64>) -> Result<ExperimentConfig> {
        let kind = self
            .kind
            .ok_or_else(|| Error::Config("missing scenario.kind".into()))?;
        let rounds = self
            .rounds
            .ok_or_else(|| Error::Config("missing scenario.rounds".into()))?;
        let dim = self
            .dim
            .ok_or_else(|| Error::Config("missing scenario.dim".into()))?;
        let seed = seed_override
            .or(self.seed)
            .ok_or_else(|| Error::Config("missing scenario.seed".into()))?;
        let set = parse_set(self.set_spec.as_deref().unwrap_or("ball 1.0"), dim)?;
        let scenario = ScenarioConfig {
            kind,
            rounds,
            dim,
            tau: self.tau.unwrap_or(0.5),
            seed,
            set,
            extras: self.extras,
        };
        let learner = self
            .learner
            .ok_or_else(|| Error::Config("missing learner.variant".into()))?;
        Ok(ExperimentConfig {
            scenario,
            learner,
            eta: self.eta.unwrap_or(Setting::Auto),
            k_inner: self.k_inner.unwrap_or(InnerCount::Auto),
            start: self.start.unwrap_or(StartPoint::Scenario),
            probe_grid: self.probe_grid.unwrap_or(64),
            evaluate_bounds: self.evaluate_bounds.unwrap_or(true),
            raw_text: raw_text.to_string(),
        })
    }
}

/// `whole_space` | `ball <radius>` | `box <lower> <upper>` (uniform bounds).
fn parse_set(spec: &str, dim: usize) -> Result<FeasibleSet> {
    let mut parts = spec.split_whitespace();
    match parts.next() {
        Some("whole_space") => Ok(FeasibleSet::new_whole_space(dim)),
        Some("ball") => {
            let radius: f64 = parts
                .next()
                .ok_or_else(|| Error::Config("ball set needs a radius".into()))?
                .parse()
                .map_err(|_| Error::Config("cannot parse ball radius".into()))?;
            FeasibleSet::new_ball(Vector::zeros(dim), radius)
        }
        Some("box") => {
            let lo: f64 = parts
                .next()
                .ok_or_else(|| Error::Config("box set needs lower and upper".into()))?
                .parse()
                .map_err(|_| Error::Config("cannot parse box lower bound".into()))?;
            let hi: f64 = parts
                .next()
                .ok_or_else(|| Error::Config("box set needs lower and upper".into()))?
                .parse()
                .map_err(|_| Error::Config("cannot parse box upper bound".into()))?;
            FeasibleSet::new_box(
                Vector::from_fn(dim, |_| lo),
                Vector::from_fn(dim, |_| hi),
            )
        }
        other => Err(Error::Config(format!(
            "unknown set spec `{}`",
            other.unwrap_or("")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
[scenario]
kind = drifting_quadratic
rounds = 50
dim = 3
tau = 0.5
seed = 42
set = ball 1.0

[learner]
variant = omgd
eta = auto
k = auto

[report]
probe_grid = 16
";

    #[test]
    fn parses_a_full_config() {
        let cfg = parse(SAMPLE, None).unwrap();
        assert_eq!(cfg.scenario.kind, ScenarioKind::DriftingQuadratic);
        assert_eq!(cfg.scenario.rounds, 50);
        assert_eq!(cfg.scenario.seed, 42);
        assert_eq!(cfg.learner, LearnerKind::Omgd);
        assert_eq!(cfg.eta, Setting::Auto);
        assert_eq!(cfg.probe_grid, 16);
        assert_eq!(cfg.raw_text, SAMPLE);
    }

    #[test]
    fn seed_override_wins() {
        let cfg = parse(SAMPLE, Some(7)).unwrap();
        assert_eq!(cfg.scenario.seed, 7);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = SAMPLE.replace("probe_grid", "probes");
        assert!(matches!(parse(&bad, None), Err(Error::Config(_))));
    }

    #[test]
    fn missing_required_keys_are_reported() {
        let bad = SAMPLE.replace("kind = drifting_quadratic\n", "");
        match parse(&bad, None) {
            Err(Error::Config(msg)) => assert!(msg.contains("scenario.kind")),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let commented = format!("# experiment\n{SAMPLE}\n# trailing\n");
        assert!(parse(&commented, None).is_ok());
    }

    #[test]
    fn override_replaces_existing_key() {
        let out = override_key(SAMPLE, "scenario", "tau", "0.8");
        let cfg = parse(&out, None).unwrap();
        assert_eq!(cfg.scenario.tau, 0.8);
        // Untouched keys survive.
        assert_eq!(cfg.scenario.rounds, 50);
    }

    #[test]
    fn override_appends_missing_key() {
        let out = override_key(SAMPLE, "scenario", "cond", "9.0");
        let cfg = parse(&out, None).unwrap();
        assert_eq!(cfg.scenario.extras.cond, 9.0);
        let out2 = override_key(SAMPLE, "extra_section", "foo", "1");
        assert!(out2.contains("[extra_section]"));
    }

    #[test]
    fn set_specs() {
        let ball = parse(&SAMPLE.replace("ball 1.0", "ball 2.5"), None).unwrap();
        assert!(matches!(
            ball.scenario.set,
            FeasibleSet::Ball { radius, .. } if radius == 2.5
        ));
        let boxed = parse(&SAMPLE.replace("ball 1.0", "box -1 1"), None).unwrap();
        assert!(matches!(boxed.scenario.set, FeasibleSet::Box { .. }));
        let whole = parse(&SAMPLE.replace("ball 1.0", "whole_space"), None).unwrap();
        assert!(!whole.scenario.set.is_bounded());
    }
}
