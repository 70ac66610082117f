//! Seeded randomized counterexample search over all theorem checkers.
//!
//! Trial `t` draws everything from a ChaCha8 stream keyed by `(seed, t)`, so
//! trials are independent of each other and of the execution strategy.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_4m_2m, check_ball_in_rlim, check_bounded, check_cluster_ball, check_diameter_bound,
    check_limit_in_rlim, check_paired, check_product_2r, check_rlim_closed_capped, check_sidedness,
    check_sides_classical, check_subsequence, Outcome, PairedVariant, TheoremId, TheoremVerdict,
};
use crate::error::{Error, Result};
use crate::pmspace::{gen_random_with, Family, PointSet, Space};
use crate::rational::Rational;
use crate::seqlab::{
    classical_limits, cluster_points, minimal_roughness, rough_limit_set, sequence_sup, Sequence,
    Side,
};
use crate::topo::DEFAULT_TOPOLOGY_CAP;

const MAX_PREFIX: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_points: usize,
    pub max_cycle: usize,
    pub r_grid: Vec<Rational>,
    pub families: Vec<Family>,
    pub topology_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 42,
            trials: 500,
            max_points: 6,
            max_cycle: 4,
            r_grid: ["0", "1/8", "1/4", "1/2", "1", "3/2", "2", "4"]
                .iter()
                .map(|s| s.parse().expect("grid literal"))
                .collect(),
            families: Family::ALL.to_vec(),
            topology_cap: DEFAULT_TOPOLOGY_CAP,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.max_points == 0 || self.max_points > 63 {
            return Err(Error::domain(format!(
                "max_points must be in 1..=63, got {}",
                self.max_points
            )));
        }
        if self.max_cycle == 0 {
            return Err(Error::domain("max_cycle must be at least 1"));
        }
        if self.families.is_empty() {
            return Err(Error::domain("at least one space family is required"));
        }
        if self.r_grid.is_empty() || self.r_grid.iter().any(Rational::is_negative) {
            return Err(Error::domain("r_grid must be nonempty and nonnegative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub skipped: usize,
}

impl Counts {
    pub fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Skipped => self.skipped += 1,
        }
    }

    /// Instances whose hypotheses held.
    pub fn non_vacuous(&self) -> usize {
        self.pass + self.fail
    }
}

/// Outcome counts per theorem, with every theorem present.
pub fn summarize(verdicts: &[TheoremVerdict]) -> BTreeMap<TheoremId, Counts> {
    let mut out: BTreeMap<TheoremId, Counts> = TheoremId::ALL
        .iter()
        .map(|&id| (id, Counts::default()))
        .collect();
    for v in verdicts {
        out.entry(v.theorem_id).or_default().record(v.outcome());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchFailure {
    pub trial: usize,
    pub family: Family,
    #[serde(flatten)]
    pub verdict: TheoremVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub summary: BTreeMap<TheoremId, Counts>,
    pub by_family: BTreeMap<Family, BTreeMap<TheoremId, Counts>>,
    /// Largest achieved-to-bound ratio seen per bound-type theorem.
    pub tightness: BTreeMap<TheoremId, Rational>,
    pub failures: Vec<SearchFailure>,
}

impl SearchReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// Canonical JSON: object keys sorted, two-space indentation.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialization cannot fail");
        serde_json::to_string_pretty(&value).expect("value serialization cannot fail")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon when the `parallel` feature is enabled, sequential otherwise.
    Parallel,
}

/// Runs the search in parallel where available.
pub fn search(config: &SearchConfig) -> Result<SearchReport> {
    search_with(config, Execution::Parallel)
}

pub fn search_with(config: &SearchConfig, execution: Execution) -> Result<SearchReport> {
    config.validate()?;
    let run = |t: usize| run_trial(config, t);
    let trials: Vec<Result<(Family, Vec<TheoremVerdict>)>> = match execution {
        Execution::Sequential => (0..config.trials).map(run).collect(),
        Execution::Parallel => crate::par::map_indices(config.trials, run),
    };

    let zero: BTreeMap<TheoremId, Counts> = TheoremId::ALL
        .iter()
        .map(|&id| (id, Counts::default()))
        .collect();
    let mut report = SearchReport {
        config: config.clone(),
        summary: zero.clone(),
        by_family: config.families.iter().map(|&f| (f, zero.clone())).collect(),
        tightness: BTreeMap::new(),
        failures: Vec::new(),
    };
    for (trial, result) in trials.into_iter().enumerate() {
        let (family, verdicts) = result?;
        for verdict in verdicts {
            let id = verdict.theorem_id;
            let outcome = verdict.outcome();
            report.summary.entry(id).or_default().record(outcome);
            report
                .by_family
                .entry(family)
                .or_default()
                .entry(id)
                .or_default()
                .record(outcome);
            if let (true, Some(t)) = (verdict.hypotheses_met, &verdict.tightness) {
                let best = report.tightness.entry(id).or_insert_with(Rational::zero);
                if t > best {
                    *best = t.clone();
                }
            }
            if outcome == Outcome::Fail {
                report.failures.push(SearchFailure {
                    trial,
                    family,
                    verdict,
                });
            }
        }
    }
    Ok(report)
}

fn random_sequence(rng: &mut ChaCha8Rng, n: usize, max_cycle: usize) -> Sequence {
    let prefix_len = rng.gen_range(0..=MAX_PREFIX);
    let cycle_len = rng.gen_range(1..=max_cycle);
    let prefix = (0..prefix_len).map(|_| rng.gen_range(0..n)).collect();
    let cycle = (0..cycle_len).map(|_| rng.gen_range(0..n)).collect();
    Sequence::new(prefix, cycle).expect("cycle is nonempty")
}

fn pick(rng: &mut ChaCha8Rng, set: &PointSet) -> Option<usize> {
    let items: Vec<usize> = set.iter().copied().collect();
    items.choose(rng).copied()
}

/// A sequence drawn from `source` (or the whole carrier when empty).
fn probe_in(rng: &mut ChaCha8Rng, source: &PointSet, n: usize) -> Sequence {
    let pool: Vec<usize> = if source.is_empty() {
        (0..n).collect()
    } else {
        source.iter().copied().collect()
    };
    let prefix_len = rng.gen_range(0..=2);
    let prefix = (0..prefix_len)
        .map(|_| *pool.choose(rng).expect("pool nonempty"))
        .collect();
    let cycle_len = rng.gen_range(1..=2);
    let cycle = (0..cycle_len)
        .map(|_| *pool.choose(rng).expect("pool nonempty"))
        .collect();
    Sequence::new(prefix, cycle).expect("cycle is nonempty")
}

/// A partner sequence: half the time eventually equal to `seq`, otherwise
/// a shift of it or an independent draw.
fn partner(rng: &mut ChaCha8Rng, seq: &Sequence, n: usize, max_cycle: usize) -> Sequence {
    match rng.gen_range(0..4) {
        0 | 1 => {
            let len = if seq.prefix().is_empty() {
                seq.cycle().len()
            } else {
                seq.prefix().len()
            };
            let prefix = (0..len).map(|_| rng.gen_range(0..n)).collect();
            Sequence::new(prefix, seq.cycle().to_vec()).expect("cycle is nonempty")
        }
        2 => seq.arithmetic_subsequence(1, 1).expect("step is positive"),
        _ => random_sequence(rng, n, max_cycle),
    }
}

/// Either a grid value or the exact two-sided degree toward a random point,
/// so the boundary case `r = r*` is exercised.
fn pick_r(
    rng: &mut ChaCha8Rng,
    config: &SearchConfig,
    space: &Space,
    seq: &Sequence,
) -> Result<Rational> {
    if rng.gen_bool(0.5) {
        Ok(config.r_grid.choose(rng).expect("grid nonempty").clone())
    } else {
        minimal_roughness(space, seq, rng.gen_range(0..space.len()), Side::TwoSided)
    }
}

fn run_trial(config: &SearchConfig, trial: usize) -> Result<(Family, Vec<TheoremVerdict>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let family = config.families[trial % config.families.len()];
    let n = rng.gen_range(1..=config.max_points);
    let space = gen_random_with(&mut rng, n, family)?;
    let seq = random_sequence(&mut rng, n, config.max_cycle);
    let r = pick_r(&mut rng, config, &space, &seq)?;
    let x = rng.gen_range(0..n);
    let lim = rough_limit_set(&space, &seq, &r, Side::TwoSided)?;
    let rlim = rough_limit_set(&space, &seq, &r, Side::Right)?;

    let mut out = Vec::with_capacity(TheoremId::ALL.len());
    out.push(check_diameter_bound(&space, &seq, &r)?);
    out.push(check_sides_classical(&space, &seq, x)?);
    out.push(check_sidedness(&space, &seq, x, &r)?);

    // a convergent sequence to test the ball inclusion on
    let ball_seq = if rng.gen_bool(0.5) {
        seq.clone()
    } else {
        Sequence::new(seq.prefix().to_vec(), vec![x]).expect("cycle is nonempty")
    };
    let ball_center = pick(&mut rng, &classical_limits(&space, &ball_seq)?).unwrap_or(x);
    out.push(check_ball_in_rlim(&space, &ball_seq, ball_center, &r)?);

    out.push(check_rlim_closed_capped(
        &space,
        &seq,
        &r,
        config.topology_cap,
    )?);
    let source = if rng.gen_bool(0.5) { &rlim } else { &lim };
    let probe = probe_in(&mut rng, source, n);
    out.push(check_limit_in_rlim(&space, &seq, &r, &probe)?);
    let bounded_at = pick(&mut rng, &lim).unwrap_or(x);
    out.push(check_bounded(&space, &seq, bounded_at, &r)?);

    let slack: Rational = ["0", "1/8", "1/2", "1", "2"]
        .choose(&mut rng)
        .expect("nonempty")
        .parse()
        .expect("literal");
    let mut m = sequence_sup(&space, &seq)? + slack;
    if !m.is_positive() {
        m = Rational::new(1, 8);
    }
    let k_probe = rng.gen_range(0..seq.span());
    out.push(check_4m_2m(&space, &seq, &m, k_probe)?);
    let offset = rng.gen_range(0..=3);
    let step = rng.gen_range(1..=3);
    out.push(check_subsequence(&space, &seq, &r, offset, step)?);

    let seq_y = partner(&mut rng, &seq, n, config.max_cycle);
    let x_p = rng.gen_range(0..n);
    let r_p = if rng.gen_bool(0.5) {
        r.clone()
            .max(minimal_roughness(&space, &seq, x_p, Side::TwoSided)?)
    } else {
        r.clone()
    };
    out.push(check_paired(
        &space,
        &seq,
        &seq_y,
        x_p,
        &r_p,
        &PairedVariant::Vanishing,
    )?);
    let c: Rational = ["1/4", "1/2", "1", "2"]
        .choose(&mut rng)
        .expect("nonempty")
        .parse()
        .expect("literal");
    let variant = if rng.gen_bool(0.5) {
        PairedVariant::ConstantC(c)
    } else {
        PairedVariant::ConstantD(c)
    };
    out.push(check_paired(&space, &seq, &seq_y, x_p, &r_p, &variant)?);

    let x_q = rng.gen_range(0..n);
    let y_q = rng.gen_range(0..n);
    let r_q = if rng.gen_bool(0.5) {
        minimal_roughness(&space, &seq, x_q, Side::TwoSided)?.max(minimal_roughness(
            &space,
            &seq_y,
            y_q,
            Side::TwoSided,
        )?)
    } else {
        r.clone()
    };
    out.push(check_product_2r(&space, &seq, &seq_y, x_q, y_q, &r_q)?);

    let cluster =
        pick(&mut rng, &cluster_points(&space, &seq)?).expect("cycle terms are cluster points");
    out.push(check_cluster_ball(&space, &seq, cluster, &r)?);
    Ok((family, out))
}
