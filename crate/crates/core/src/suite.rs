//! Randomized property battery over seed-derived instances.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{coboundary, cup_pairing_oracle, random_parabolic, transport_cocycle, transport_parabolic, ParabolicData, TwistedCocycle};
use crate::error::Result;
use crate::io::CONVENTION;
use crate::linalg::Rat;
use crate::normal_function::build_extended_section;
use crate::pencil::PencilModel;
use crate::poincare_degree::{degree_of_pair, degree_pl, verify_theorem};
use crate::random::{trial_seed, Rng};
use crate::symplectic::{RatVector, Ring};

pub const CHECKS: [&str; 7] = [
    "theorem",
    "coboundary",
    "symmetry",
    "refinement",
    "rotation",
    "integrality",
    "quadrature",
];

/// Largest half-length drawn, so `m = 2k ≤ 16`.
pub const MAX_HALF_LENGTH: usize = 8;

/// Smallest half-length drawn for genus `g`: the parabolic classes of a
/// word-and-inverse pencil are all coboundaries unless `k > 2g`.
pub fn min_half_length(genus: i64) -> usize {
    ((2 * genus + 1) as usize).min(MAX_HALF_LENGTH)
}

/// A random instance: pencil plus two parabolic cocycles.
#[derive(Clone, Debug)]
pub struct Trial {
    pub seed: u64,
    pub pencil: Arc<PencilModel>,
    pub first: (TwistedCocycle, ParabolicData),
    pub second: (TwistedCocycle, ParabolicData),
}

/// The instance of trial seed `seed`: genus uniform in `{1, 2, 3}`,
/// half-length uniform in `[min_half_length(g), 8]`.
pub fn trial_instance(seed: u64, ring: Ring) -> Result<Trial> {
    Ok(draw_trial(seed, ring)?.0)
}

/// The trial together with the generator state after drawing it.
fn draw_trial(seed: u64, ring: Ring) -> Result<(Trial, Rng)> {
    let mut rng = Rng::from_seed(seed);
    let genus = rng.range(1, 3);
    let k = rng.range(min_half_length(genus) as i64, MAX_HALF_LENGTH as i64) as usize;
    let pencil = Arc::new(PencilModel::random_instance(genus, k, rng.next_u64())?);
    let first = random_parabolic(&pencil, ring, &mut rng);
    let second = random_parabolic(&pencil, ring, &mut rng);
    Ok((
        Trial {
            seed,
            pencil,
            first,
            second,
        },
        rng,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub seed: u64,
    pub genus: usize,
    pub punctures: usize,
    pub pairing: String,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }
}

fn random_vector(genus: usize, rng: &mut Rng) -> RatVector {
    let coords: Vec<i64> = (0..2 * genus).map(|_| rng.range(-3, 3)).collect();
    RatVector::from_i64(&coords).expect("even length")
}

fn both_sides(c1: &TwistedCocycle, a1: &ParabolicData, c2: &TwistedCocycle, a2: &ParabolicData) -> Result<(Rat, Rat)> {
    Ok((cup_pairing_oracle(c1, a1, c2, a2)?, degree_of_pair(c1, a1, c2, a2)?))
}

/// Runs the battery on one trial. Checks that raise an error count as
/// failures.
pub fn run_trial(index: u64, seed: u64, ring: Ring, mesh: usize) -> Result<TrialOutcome> {
    let start = Instant::now();
    let (trial, mut rng) = draw_trial(seed, ring)?;
    let p = trial.pencil.clone();
    let (c1, a1) = &trial.first;
    let (c2, a2) = &trial.second;
    let mut checks = BTreeMap::new();

    let report = verify_theorem(c1, a1, c2, a2, mesh, Some(seed))?;
    checks.insert("theorem".to_string(), report.equal);
    checks.insert("quadrature".to_string(), report.quadrature.within_tolerance);
    let base = both_sides(c1, a1, c2, a2)?;

    let coboundary_ok = (|| -> Result<bool> {
        let (b, ab) = coboundary(&random_vector(p.genus(), &mut rng), &p)?;
        let shifted1 = both_sides(&c1.add(&b)?, &a1.add(&ab), c2, a2)?;
        let shifted2 = both_sides(c1, a1, &c2.add(&b)?, &a2.add(&ab))?;
        Ok(shifted1 == base && shifted2 == base)
    })();
    checks.insert("coboundary".to_string(), coboundary_ok.unwrap_or(false));

    let swapped = both_sides(c2, a2, c1, a1)?;
    checks.insert("symmetry".to_string(), swapped == base);

    let refinement_ok = (|| -> Result<bool> {
        let s1 = build_extended_section(c1, a1)?;
        let s2 = build_extended_section(c2, a2)?;
        let d0 = degree_pl(&s1, &s2)?;
        for level in 1..=3 {
            if degree_pl(&s1.at_level(level), &s2.at_level(level))? != d0 {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    checks.insert("refinement".to_string(), refinement_ok.unwrap_or(false));

    let rotation_ok = (|| -> Result<bool> {
        let (rotated, rotation) = p.rotate_marking();
        let rotated = Arc::new(rotated);
        let r1 = transport_cocycle(c1, &rotated, &rotation)?;
        let r2 = transport_cocycle(c2, &rotated, &rotation)?;
        let b1 = transport_parabolic(c1, a1, &r1, &rotation)?;
        let b2 = transport_parabolic(c2, a2, &r2, &rotation)?;
        Ok(both_sides(&r1, &b1, &r2, &b2)? == base)
    })();
    checks.insert("rotation".to_string(), rotation_ok.unwrap_or(false));

    let integral = ring == Ring::Rationals || (base.0.is_integer() && base.1.is_integer());
    checks.insert("integrality".to_string(), integral);

    Ok(TrialOutcome {
        index,
        seed,
        genus: p.genus(),
        punctures: p.punctures(),
        pairing: base.0.to_string(),
        checks,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub p50_ms: f64,
    pub p90_ms: f64,
    pub max_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub convention: String,
    pub seed: u64,
    pub trials: u64,
    pub ring: Ring,
    pub mesh: usize,
    pub passed: u64,
    pub check_passes: BTreeMap<String, u64>,
    pub failed_trials: Vec<u64>,
    pub outcomes: Vec<TrialOutcome>,
    pub timing: Timing,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.failed_trials.is_empty()
    }

    /// Pass/fail per trial, in trial order.
    pub fn pass_vector(&self) -> Vec<bool> {
        self.outcomes.iter().map(TrialOutcome::passed).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

/// Runs `trials` trials in parallel; trial `i` uses `trial_seed(seed, i)`.
pub fn run_suite(seed: u64, trials: u64, ring: Ring, mesh: usize) -> SuiteSummary {
    let start = Instant::now();
    let mut outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let ts = trial_seed(seed, i);
            run_trial(i, ts, ring, mesh).unwrap_or_else(|e| TrialOutcome {
                index: i,
                seed: ts,
                genus: 0,
                punctures: 0,
                pairing: format!("error: {e}"),
                checks: CHECKS.iter().map(|c| (c.to_string(), false)).collect(),
                elapsed: Duration::ZERO,
            })
        })
        .collect();
    outcomes.sort_by_key(|o| o.index);
    let mut check_passes: BTreeMap<String, u64> = CHECKS.iter().map(|c| (c.to_string(), 0)).collect();
    for o in &outcomes {
        for (name, &ok) in &o.checks {
            *check_passes.entry(name.clone()).or_default() += ok as u64;
        }
    }
    let failed_trials: Vec<u64> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.index).collect();
    let mut times: Vec<f64> = outcomes.iter().map(|o| o.elapsed.as_secs_f64() * 1e3).collect();
    times.sort_by(f64::total_cmp);
    SuiteSummary {
        convention: CONVENTION.to_string(),
        seed,
        trials,
        ring,
        mesh,
        passed: trials - failed_trials.len() as u64,
        check_passes,
        failed_trials,
        timing: Timing {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            p50_ms: percentile(&times, 0.5),
            p90_ms: percentile(&times, 0.9),
            max_ms: times.last().copied().unwrap_or(0.0),
        },
        outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let a = run_suite(3, 4, Ring::Integers, 1);
        assert!(a.all_passed(), "{:?}", a.outcomes);
        let b = run_suite(3, 4, Ring::Integers, 1);
        assert_eq!(a.pass_vector(), b.pass_vector());
        assert_eq!(
            a.outcomes.iter().map(|o| &o.pairing).collect::<Vec<_>>(),
            b.outcomes.iter().map(|o| &o.pairing).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rational_trials_pass() {
        let s = run_suite(11, 2, Ring::Rationals, 1);
        assert!(s.all_passed(), "{:?}", s.outcomes);
    }

    #[test]
    fn instances_respect_bounds() {
        for i in 0..20 {
            let t = trial_instance(trial_seed(1, i), Ring::Integers).unwrap();
            let g = t.pencil.genus() as i64;
            assert!((1..=3).contains(&g));
            assert!(t.pencil.punctures() <= 16 && t.pencil.punctures() >= 2 * min_half_length(g));
        }
    }
}
