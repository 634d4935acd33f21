//! Randomized verification suites shared by `crestimate verify` and the
//! acceptance tests.
//!
//! Trials run in parallel but are reduced in trial order, so the report is
//! identical for every thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{block_bounds_check, lemma_decreasing_check, lemma_onepeak_check, BoundCertificate, QContext};
use crate::error::{Error, Result};
use crate::families::{
    log_spaced_frequencies, random_decreasing_step, random_one_crest_step, random_step, trial_rng,
};
use crate::piecewise::Function;

/// Relative slack for the crest-count bound.
pub const THEOREM_SLACK: f64 = 1e-9;
/// Absolute slack for the single-function lemmas.
pub const LEMMA_SLACK: f64 = 1e-12;
/// Most counterexamples kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Step,
    Decreasing,
    OneCrest,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "step" => Ok(Family::Step),
            "decreasing" => Ok(Family::Decreasing),
            "one-crest" => Ok(Family::OneCrest),
            other => Err(Error::InvalidArgument(format!(
                "family must be step, decreasing or one-crest, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub frequencies: usize,
    pub z_min: f64,
    pub z_max: f64,
    pub max_pieces: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            frequencies: 50,
            z_min: 1e-3,
            z_max: 1e3,
            max_pieces: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub trial: u64,
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub function: Function,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub evaluations: u64,
    pub violations: u64,
    /// Largest `lhs / rhs` seen (0 when every `rhs` was 0).
    pub max_ratio: f64,
    pub slack: f64,
    pub counterexamples: Vec<Violation>,
}

impl CheckSummary {
    fn new(name: &str, slack: f64) -> Self {
        Self {
            name: name.to_string(),
            evaluations: 0,
            violations: 0,
            max_ratio: 0.0,
            slack,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, trial: u64, z: f64, lhs: f64, rhs: f64, ok: bool, f: &Function) {
        self.evaluations += 1;
        if rhs > 0.0 {
            self.max_ratio = self.max_ratio.max(lhs / rhs);
        }
        if !ok {
            self.violations += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(Violation {
                    trial,
                    z,
                    lhs,
                    rhs,
                    function: f.clone(),
                });
            }
        }
    }

    fn merge(&mut self, other: CheckSummary) {
        self.evaluations += other.evaluations;
        self.violations += other.violations;
        self.max_ratio = self.max_ratio.max(other.max_ratio);
        let room = MAX_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(other.counterexamples.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub family: Family,
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// The function drawn for `trial` in `family`.
pub fn family_member(family: Family, seed: u64, trial: u64, max_pieces: usize) -> Function {
    let mut rng = trial_rng(seed, trial);
    match family {
        Family::Step => random_step(&mut rng, max_pieces).into(),
        Family::Decreasing => random_decreasing_step(&mut rng, max_pieces).into(),
        Family::OneCrest => random_one_crest_step(&mut rng, max_pieces.saturating_sub(1).max(1) / 2).into(),
    }
}

fn frequencies(cfg: &SuiteConfig, trial: u64) -> Vec<f64> {
    // a separate stream family so that adding pieces never shifts the grid
    let mut rng = trial_rng(cfg.seed ^ 0x9e37_79b9_7f4a_7c15, trial);
    log_spaced_frequencies(&mut rng, cfg.frequencies, cfg.z_min, cfg.z_max)
}

fn step_trial(cfg: &SuiteConfig, trial: u64) -> Result<Vec<CheckSummary>> {
    let f = family_member(Family::Step, cfg.seed, trial, cfg.max_pieces);
    let ctx = QContext::new(&f)?;
    let mut theorem = CheckSummary::new("crest_bound", THEOREM_SLACK);
    let mut reports = Vec::with_capacity(cfg.frequencies);
    for z in frequencies(cfg, trial) {
        let r = ctx.report(z)?;
        let ok = r.transform_magnitude <= r.theorem1_bound * (1.0 + THEOREM_SLACK);
        theorem.record(trial, z, r.transform_magnitude, r.theorem1_bound, ok, &f);
        reports.push(r);
    }
    let cert = BoundCertificate::from_reports(reports)?;
    let mut sound = CheckSummary::new("certificate", 0.0);
    let count = ctx.crest_count() as f64;
    sound.record(
        trial,
        cert.best_z,
        cert.crest_lower_bound as f64,
        count,
        cert.crest_lower_bound as usize <= ctx.crest_count(),
        &f,
    );
    Ok(vec![theorem, sound])
}

fn decreasing_trial(cfg: &SuiteConfig, trial: u64) -> Result<Vec<CheckSummary>> {
    let f = family_member(Family::Decreasing, cfg.seed, trial, cfg.max_pieces);
    let mut lemma = CheckSummary::new("lemma_decreasing", LEMMA_SLACK);
    let mut positive = CheckSummary::new("sine_positive", 0.0);
    let mut half = CheckSummary::new("sine_half_window", LEMMA_SLACK);
    let mut full = CheckSummary::new("sine_full_window", LEMMA_SLACK);
    let mut cosine = CheckSummary::new("cosine_window", LEMMA_SLACK);
    for z in frequencies(cfg, trial) {
        let l = lemma_decreasing_check(&f, z)?;
        lemma.record(trial, z, l.lhs, l.rhs, l.holds(LEMMA_SLACK), &f);
        let b = block_bounds_check(&f, z)?;
        // stored as -sine <= 0; rhs = 0 keeps it out of max_ratio
        positive.record(trial, z, -b.sine, 0.0, b.sine_positive(), &f);
        half.record(trial, z, b.sine, b.sine_window, b.sine_within_half_window(LEMMA_SLACK), &f);
        full.record(trial, z, b.sine, b.sine_window_full, b.sine_within_full_window(LEMMA_SLACK), &f);
        cosine.record(trial, z, b.cosine.abs(), b.cosine_window, b.cosine_within_window(LEMMA_SLACK), &f);
    }
    Ok(vec![lemma, positive, half, full, cosine])
}

fn one_crest_trial(cfg: &SuiteConfig, trial: u64) -> Result<Vec<CheckSummary>> {
    let f = family_member(Family::OneCrest, cfg.seed, trial, cfg.max_pieces);
    let mut lemma = CheckSummary::new("lemma_one_crest", LEMMA_SLACK);
    for z in frequencies(cfg, trial) {
        let c = lemma_onepeak_check(&f, z)?;
        lemma.record(trial, z, c.lhs, c.rhs, c.holds(LEMMA_SLACK), &f);
    }
    Ok(vec![lemma])
}

pub fn run_suite(family: Family, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.trials == 0 || cfg.frequencies == 0 {
        return Err(Error::InvalidArgument("trials and frequencies must be positive".into()));
    }
    if !(cfg.z_min > 0.0) || !(cfg.z_max >= cfg.z_min) || !cfg.z_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "frequency range needs 0 < min <= max, got [{}, {}]",
            cfg.z_min, cfg.z_max
        )));
    }
    if cfg.max_pieces == 0 {
        return Err(Error::InvalidArgument("max_pieces must be positive".into()));
    }
    let per_trial: Vec<Vec<CheckSummary>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| match family {
            Family::Step => step_trial(cfg, t),
            Family::Decreasing => decreasing_trial(cfg, t),
            Family::OneCrest => one_crest_trial(cfg, t),
        })
        .collect::<Result<_>>()?;
    let mut iter = per_trial.into_iter();
    let mut checks = iter.next().expect("at least one trial");
    for trial in iter {
        for (acc, c) in checks.iter_mut().zip(trial) {
            acc.merge(c);
        }
    }
    Ok(SuiteReport {
        family,
        seed: cfg.seed,
        trials: cfg.trials,
        checks,
    })
}
