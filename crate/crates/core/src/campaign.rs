//! Dichotomy campaigns over random low-rank box unions.
//!
//! Each instance draws a box union on a dyadic grid, rejecting draws whose
//! rank exceeds the configured bound, and runs the dichotomy for every
//! target pattern in every dyadic region. Instance `i` uses its own ChaCha
//! stream of the campaign seed, so reports do not depend on the number of
//! worker threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::copy::dyadic_regions;
use crate::dichotomy::{theorem1_dichotomy, theorem3_driver, theorem3_target, DichotomyOutcome, SearchParams};
use crate::error::{ConfigError, DichotomyError};
use crate::geometry::{Box, BoxUnionSet, EssentialSimplex};
use crate::pattern::{all_patterns, Pattern};
use crate::rank::{brute_force_rank, rank_budgeted, RankReport, DEFAULT_BUDGET};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// 2 runs the planar induction, 3 the spatial driver.
    pub dimension: usize,
    /// Each instance has between 1 and `box_count` boxes.
    pub box_count: usize,
    /// Box endpoints lie on the grid `(1/grid_denominator)ℤ`.
    pub grid_denominator: u32,
    /// Draws with `rank(S) > rank_cap` are rejected.
    pub rank_cap: usize,
    /// Planar targets are all patterns with at most this many indices.
    pub pattern_size_max: usize,
    pub depth: u32,
    pub min_gap: Rational,
    /// Slots per open cell and coordinate in the copy searches.
    pub sample_density: usize,
    pub instance_count: usize,
    /// The rank threshold `M` of the dichotomy.
    pub threshold: usize,
    /// Longest chain used by the spatial driver.
    pub chain_max: usize,
    pub search_budget: u64,
    /// Cross-check every measured rank against the brute-force oracle.
    pub oracle: bool,
    /// Draws tried per instance before the instance is reported as failed.
    pub max_attempts: usize,
    /// Redraw boxes that miss the simplex. In dimension 3 every box meeting
    /// the simplex has rank at least 2, so rank bound 1 needs this off.
    pub meet_simplex: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            dimension: 2,
            box_count: 3,
            grid_denominator: 16,
            rank_cap: 2,
            pattern_size_max: 6,
            depth: 3,
            min_gap: Rational::new(1, 8),
            sample_density: 2,
            instance_count: 50,
            threshold: 3,
            chain_max: 4,
            search_budget: 2_000_000,
            oracle: false,
            max_attempts: 10_000,
            meet_simplex: true,
        }
    }
}

impl ExperimentConfig {
    /// The spatial defaults: rank at most 1, threshold 2, depth 2, gap 1/4.
    pub fn spatial() -> Self {
        ExperimentConfig {
            dimension: 3,
            grid_denominator: 8,
            rank_cap: 1,
            depth: 2,
            min_gap: Rational::new(1, 4),
            instance_count: 20,
            threshold: 2,
            meet_simplex: false,
            ..ExperimentConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.into()));
        if !(2..=3).contains(&self.dimension) {
            return bad("dimension must be 2 or 3");
        }
        if !self.grid_denominator.is_power_of_two() || self.grid_denominator > 1 << 20 {
            return bad("grid_denominator must be a power of two up to 2^20");
        }
        if self.box_count == 0 || self.rank_cap == 0 || self.threshold == 0 || self.instance_count == 0 {
            return bad("box_count, rank_cap, threshold and instance_count must be positive");
        }
        if self.depth == 0 || self.depth > 16 || self.sample_density == 0 || self.max_attempts == 0 {
            return bad("depth must lie in 1..=16, sample_density and max_attempts must be positive");
        }
        if self.min_gap <= Rational::zero() || self.min_gap > Rational::one() {
            return bad("min_gap must lie in (0, 1]");
        }
        if self.dimension == 2 && self.pattern_size_max < 2 {
            return bad("pattern_size_max must be at least 2");
        }
        if self.dimension == 3 && self.chain_max < 2 {
            return bad("chain_max must be at least 2");
        }
        Ok(())
    }

    /// The target patterns of the campaign.
    pub fn targets(&self) -> Vec<Pattern> {
        match self.dimension {
            2 => (1..=self.pattern_size_max / 2).flat_map(|b| all_patterns(2, 2 * b)).collect(),
            _ => vec![theorem3_target()],
        }
    }

    fn params(&self) -> SearchParams {
        SearchParams {
            q: self.sample_density,
            budget: self.search_budget,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RunResult {
    Completed { outcome: DichotomyOutcome },
    Failed { kind: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub target: Pattern,
    pub region: EssentialSimplex,
    #[serde(flatten)]
    pub result: RunResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    /// Draws made, the accepted one included.
    pub attempts: usize,
    pub set: Option<BoxUnionSet>,
    pub rank: Option<RankReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_rank: Option<usize>,
    pub runs: Vec<RunRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub copies: usize,
    pub witnesses: usize,
    pub failures: usize,
    pub oracle_mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: ExperimentConfig,
    pub targets: Vec<Pattern>,
    pub regions: Vec<EssentialSimplex>,
    pub instances: Vec<InstanceReport>,
    pub counts: Counts,
}

impl CampaignReport {
    /// 0 when every run gave a copy, 2 when a witness branch occurred, 3 when
    /// a run failed or a rank disagreed with the oracle.
    pub fn exit_code(&self) -> i32 {
        if self.counts.failures > 0 || self.counts.oracle_mismatches > 0 {
            3
        } else if self.counts.witnesses > 0 {
            2
        } else {
            0
        }
    }
}

pub fn error_kind(e: &DichotomyError) -> &'static str {
    match e {
        DichotomyError::CopySearchFailed(_) => "copy_search_failed",
        DichotomyError::Parameter(_) => "parameter",
        DichotomyError::Precondition(_) => "precondition",
        DichotomyError::Unverified(_) => "unverified",
        DichotomyError::Pattern(_) => "pattern",
        DichotomyError::Rank(_) => "rank",
        DichotomyError::Budget(_) => "budget",
    }
}

/// Whether an open box meets the simplex `x_1 ≤ … ≤ x_n`.
pub fn meets_simplex(b: &Box) -> bool {
    let mut t = Rational::zero();
    b.intervals().iter().all(|&(lo, hi)| {
        t = t.max(lo);
        t < hi
    })
}

/// An open box with endpoints on the grid `(1/den)ℤ ∩ [0,1]`, redrawn until
/// it meets the simplex when `meet` is set.
pub fn random_grid_box(rng: &mut impl Rng, dim: usize, den: u32, meet: bool) -> Box {
    let den = den as i128;
    loop {
        let iv = (0..dim)
            .map(|_| {
                let lo = rng.gen_range(0..den);
                let hi = rng.gen_range(lo + 1..=den);
                (Rational::new(lo, den), Rational::new(hi, den))
            })
            .collect();
        let b = Box::new(iv).expect("lo < hi");
        if !meet || meets_simplex(&b) {
            return b;
        }
    }
}

pub fn random_grid_set(rng: &mut impl Rng, dim: usize, max_boxes: usize, den: u32, meet: bool) -> BoxUnionSet {
    let k = rng.gen_range(1..=max_boxes);
    let boxes = (0..k).map(|_| random_grid_box(rng, dim, den, meet)).collect();
    BoxUnionSet::new(dim, boxes).expect("same dimension")
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Draws the set of instance `index`: the first draw with measured rank at
/// most `rank_cap`, and the number of draws.
pub fn draw_instance(cfg: &ExperimentConfig, index: usize) -> Option<(BoxUnionSet, RankReport, usize)> {
    let mut rng = instance_rng(cfg.seed, index);
    for attempt in 1..=cfg.max_attempts {
        let s = random_grid_set(&mut rng, cfg.dimension, cfg.box_count, cfg.grid_denominator, cfg.meet_simplex);
        if let Ok(r) = rank_budgeted(&s, cfg.rank_cap + 1, DEFAULT_BUDGET) {
            if r.value <= cfg.rank_cap && !r.capped {
                return Some((s, r, attempt));
            }
        }
    }
    None
}

fn run_one(cfg: &ExperimentConfig, s: &BoxUnionSet, target: &Pattern, region: &EssentialSimplex) -> RunResult {
    let result = match cfg.dimension {
        2 => theorem1_dichotomy(s, target, region, cfg.threshold),
        _ => theorem3_driver(s, region, cfg.threshold, cfg.chain_max, cfg.params()),
    };
    match result {
        Ok(outcome) => RunResult::Completed { outcome },
        Err(e) => RunResult::Failed {
            kind: error_kind(&e).into(),
            message: e.to_string(),
        },
    }
}

fn run_instance(cfg: &ExperimentConfig, index: usize, targets: &[Pattern], regions: &[EssentialSimplex]) -> InstanceReport {
    let Some((s, rank, attempts)) = draw_instance(cfg, index) else {
        return InstanceReport {
            index,
            attempts: cfg.max_attempts,
            set: None,
            rank: None,
            oracle_rank: None,
            runs: Vec::new(),
            error: Some(format!("no draw of rank <= {} in {} attempts", cfg.rank_cap, cfg.max_attempts)),
        };
    };
    let oracle_rank = cfg.oracle.then(|| brute_force_rank(&s, cfg.rank_cap + 1));
    let mut runs = Vec::with_capacity(regions.len() * targets.len());
    for region in regions {
        for target in targets {
            runs.push(RunRecord {
                target: target.clone(),
                region: *region,
                result: run_one(cfg, &s, target, region),
            });
        }
    }
    InstanceReport {
        index,
        attempts,
        set: Some(s),
        rank: Some(rank),
        oracle_rank,
        runs,
        error: None,
    }
}

fn tally(instances: &[InstanceReport], per_instance: usize) -> Counts {
    let mut c = Counts::default();
    for inst in instances {
        if inst.error.is_some() {
            c.failures += per_instance;
            continue;
        }
        if let (Some(o), Some(r)) = (inst.oracle_rank, &inst.rank) {
            if o != r.value {
                c.oracle_mismatches += 1;
            }
        }
        for run in &inst.runs {
            match &run.result {
                RunResult::Completed { outcome } if outcome.is_copy() => c.copies += 1,
                RunResult::Completed { .. } => c.witnesses += 1,
                RunResult::Failed { .. } => c.failures += 1,
            }
        }
    }
    c
}

/// Runs the campaign on `jobs` worker threads, or one per core when `jobs`
/// is 0. Instances are collected in index order.
pub fn run_campaign(cfg: &ExperimentConfig, jobs: usize) -> Result<CampaignReport, ConfigError> {
    cfg.validate()?;
    let targets = cfg.targets();
    let regions = dyadic_regions(cfg.dimension, cfg.depth, cfg.min_gap);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| ConfigError::ThreadPool(e.to_string()))?;
    let instances: Vec<InstanceReport> = pool.install(|| {
        (0..cfg.instance_count)
            .into_par_iter()
            .map(|i| run_instance(cfg, i, &targets, &regions))
            .collect()
    });
    let counts = tally(&instances, targets.len() * regions.len());
    Ok(CampaignReport {
        config: cfg.clone(),
        targets,
        regions,
        instances,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            instance_count: 3,
            pattern_size_max: 4,
            depth: 2,
            min_gap: Rational::new(1, 4),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn validation() {
        assert!(ExperimentConfig::default().validate().is_ok());
        assert!(ExperimentConfig::spatial().validate().is_ok());
        let bad = ExperimentConfig {
            grid_denominator: 12,
            ..ExperimentConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn targets_cover_small_patterns() {
        assert_eq!(ExperimentConfig::default().targets().len(), 1 + 3 + 15);
        assert_eq!(ExperimentConfig::spatial().targets(), vec![theorem3_target()]);
    }

    #[test]
    fn draws_respect_the_rank_bound() {
        let cfg = small();
        for i in 0..5 {
            let (s, r, _) = draw_instance(&cfg, i).unwrap();
            assert!(r.value <= cfg.rank_cap);
            assert_eq!(brute_force_rank(&s, cfg.rank_cap + 1), r.value);
        }
    }

    #[test]
    fn counts_add_up_and_jobs_do_not_matter() {
        let cfg = small();
        let one = run_campaign(&cfg, 1).unwrap();
        let c = one.counts;
        assert_eq!(c.copies + c.witnesses + c.failures, 3 * one.targets.len() * one.regions.len());
        assert_eq!(one.exit_code(), 0);
        let four = run_campaign(&cfg, 4).unwrap();
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
    }
}
