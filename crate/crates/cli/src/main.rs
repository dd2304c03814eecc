//! Command line front end: pattern calculator, rank, copy search,
//! essentiality sweeps, homeomorphism constructions and dichotomy campaigns.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};

use simplex_ramsey::campaign::{run_campaign, ExperimentConfig};
use simplex_ramsey::copy::{essential_at_depth, find_copy_in_complement};
use simplex_ramsey::dichotomy::{theorem1_dichotomy, theorem3_driver, verify_outcome, SearchParams};
use simplex_ramsey::geometry::{BoxUnionSet, EssentialSimplex};
use simplex_ramsey::homeo::{densify_check, densify_from_grid, thin_check, thin_from_witness, PLHomeo};
use simplex_ramsey::pattern::{chain, grid_pattern, insert, lemma1_extend, oplus, Constructed, Pattern};
use simplex_ramsey::rank::{brute_force_rank, rank_budgeted, RankWitness2D, DEFAULT_BUDGET};
use simplex_ramsey::{q, Rational};

const EXIT_WITNESS: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "simplex-ramsey", version, about = "Patterns, rank and dichotomies on the 2- and 3-simplex")]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a pattern construction.
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Rank of a box union read from JSON.
    Rank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Copy of a pattern in the complement of a set, inside a region.
    Match {
        #[arg(long)]
        input: PathBuf,
    },
    /// Copy search in every dyadic region.
    Essential {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value = "1/8")]
        min_gap: Rational,
    },
    /// Densifying and thinning homeomorphisms with their verification.
    #[command(subcommand)]
    Lemma2(Lemma2Cmd),
    /// Dichotomy campaign over random low-rank sets, or a single run.
    Dichotomy(DichotomyArgs),
    /// Quick end-to-end checks of every subcommand's core.
    Selftest,
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Validate a pattern given by its blocks.
    Make {
        #[arg(long)]
        p: Pattern,
    },
    /// `P_{j1}^{j2} ⊕ Q_i`.
    Oplus {
        #[arg(long)]
        p: Pattern,
        #[arg(long)]
        q: Pattern,
        #[arg(long)]
        j1: usize,
        #[arg(long)]
        j2: usize,
        #[arg(long)]
        i: usize,
    },
    /// `Q` inserted into `P` at index `j`.
    Insert {
        #[arg(long)]
        p: Pattern,
        #[arg(long)]
        q: Pattern,
        #[arg(long)]
        j: usize,
    },
    /// `l` copies of the base glued at `j`, `k`.
    Chain {
        #[arg(long)]
        base: Pattern,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// The canonical grid of a width.
    Grid {
        #[arg(long)]
        width: usize,
    },
    /// Adds the pair `{k, n+1}`.
    #[command(name = "lemma1-extend")]
    Lemma1Extend {
        #[arg(long)]
        p: Pattern,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum Lemma2Cmd {
    /// From interleaved reals (`{"x": [...], "y": [...]}`), or from a grid
    /// copy found in the complement of a set (`{"set": ...}`), with the
    /// density test at `eps`.
    Densify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: Option<Rational>,
    },
    /// From a rank witness (`{"witness": ...}`, optionally with `"set"` for
    /// the boundary-neighbourhood test on sampled complement points).
    Thin {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct DichotomyArgs {
    /// Campaign configuration (JSON); a file with `"set"` and `"target"`
    /// runs a single dichotomy instead.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Master seed; instance `i` draws from stream `i` of this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 uses every core). The report does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Depth of the dyadic subdivision of the essential parameter range.
    #[arg(long)]
    depth: Option<u32>,
    /// Smallest allowed gap `b - a` of a region, as a rational `p/q`.
    #[arg(long)]
    min_gap: Option<Rational>,
    /// Rejection bound on the rank of drawn sets.
    #[arg(long)]
    cap: Option<usize>,
    /// Cross-check every drawn rank against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Use the spatial defaults when no configuration is given.
    #[arg(long)]
    spatial: bool,
}

fn pattern_field<'de, D: Deserializer<'de>>(d: D) -> Result<Pattern, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Text(String),
        Object(Pattern),
    }
    match Repr::deserialize(d)? {
        Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        Repr::Object(p) => Ok(p),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchJob {
    #[serde(deserialize_with = "pattern_field")]
    pattern: Pattern,
    set: BoxUnionSet,
    region: Option<EssentialSimplex>,
    q: Option<usize>,
    budget: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SingleRun {
    set: BoxUnionSet,
    #[serde(deserialize_with = "pattern_field")]
    target: Pattern,
    region: Option<EssentialSimplex>,
    threshold: usize,
    #[serde(default = "default_chain_max")]
    chain_max: usize,
}

fn default_chain_max() -> usize {
    4
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensifyJob {
    x: Option<Vec<Rational>>,
    y: Option<Vec<Rational>>,
    set: Option<BoxUnionSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThinJob {
    witness: RankWitness2D,
    set: Option<BoxUnionSet>,
    q: Option<usize>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn constructed(c: &Constructed) -> Value {
    json!({ "pattern": c.pattern, "display": c.pattern.to_string(), "stages": c.stages })
}

fn cmd_pattern(cmd: PatternCmd) -> Result<Value> {
    let atom = |p: Pattern, label: &str| Constructed::atom(p, label);
    let c = match cmd {
        PatternCmd::Make { p } => atom(p, "P"),
        PatternCmd::Oplus { p, q, j1, j2, i } => oplus(&atom(p, "P"), j1, j2, &atom(q, "Q"), i)?,
        PatternCmd::Insert { p, q, j } => insert(&atom(p, "P"), j, &atom(q, "Q"))?,
        PatternCmd::Chain { base, j, k, l } => chain(&base, j, k, l)?,
        PatternCmd::Grid { width } => {
            if width == 0 {
                bail!("width must be at least 1");
            }
            atom(grid_pattern(width), "grid")
        }
        PatternCmd::Lemma1Extend { p, k } => lemma1_extend(&atom(p, "P"), k)?,
    };
    Ok(constructed(&c))
}

fn cmd_rank(input: &Path, cap: usize, oracle: bool) -> Result<(Value, u8)> {
    let s: BoxUnionSet = read_json(input)?;
    let report = rank_budgeted(&s, cap, DEFAULT_BUDGET)?;
    let mut value = serde_json::to_value(&report)?;
    let mut code = 0;
    if oracle {
        let o = brute_force_rank(&s, cap);
        value["oracle"] = json!(o);
        value["oracle_agrees"] = json!(o == report.value);
        if o != report.value {
            code = EXIT_FAILURE;
        }
    }
    Ok((value, code))
}

fn cmd_match(input: &Path) -> Result<(Value, u8)> {
    let job: MatchJob = read_json(input)?;
    let region = job.region.unwrap_or_else(|| EssentialSimplex::full(job.set.dim()));
    let q = job.q.unwrap_or(2);
    let found = find_copy_in_complement(&job.pattern, &job.set, &region, q, job.budget.unwrap_or(2_000_000))?;
    let code = if found.is_some() { 0 } else { EXIT_FAILURE };
    Ok((json!({ "pattern": job.pattern, "region": region, "copy": found }), code))
}

fn cmd_essential(input: &Path, depth: u32, min_gap: Rational) -> Result<(Value, u8)> {
    let job: MatchJob = read_json(input)?;
    let report = essential_at_depth(
        &job.pattern,
        &job.set,
        depth,
        min_gap,
        job.q.unwrap_or(2),
        job.budget.unwrap_or(2_000_000),
    );
    let code = if report.all_found { 0 } else { EXIT_FAILURE };
    Ok((serde_json::to_value(&report)?, code))
}

fn cmd_lemma2(cmd: Lemma2Cmd) -> Result<(Value, u8)> {
    match cmd {
        Lemma2Cmd::Densify { input, n, eps } => {
            let job: DensifyJob = read_json(&input)?;
            let eps = eps.unwrap_or_else(|| q(14143, 10000) * q(4, 2 * n as i128 + 3) + q(1, 10000));
            match (job.x, job.y, job.set) {
                (Some(x), Some(y), None) => {
                    let homeo = densify_from_grid(&x, &y, n)?;
                    let image: Vec<Rational> = x.iter().chain(&y).map(|&t| homeo.apply(t)).collect();
                    Ok((json!({ "homeo": homeo, "images": image }), 0))
                }
                (None, None, Some(set)) => match densify_check(&set, n, eps, 2_000_000)? {
                    Some(c) => {
                        let code = if c.dense { 0 } else { EXIT_FAILURE };
                        Ok((serde_json::to_value(&c)?, code))
                    }
                    None => Ok((json!({ "width": n, "copy": null }), EXIT_FAILURE)),
                },
                _ => bail!("densify needs either \"x\" and \"y\" or \"set\""),
            }
        }
        Lemma2Cmd::Thin { input, n } => {
            let job: ThinJob = read_json(&input)?;
            match job.set {
                Some(set) => {
                    let c = thin_check(&set, &job.witness, n, job.q.unwrap_or(2))?;
                    let code = if c.violations.is_empty() { 0 } else { EXIT_FAILURE };
                    Ok((serde_json::to_value(&c)?, code))
                }
                None => {
                    let homeo = thin_from_witness(&job.witness, n)?;
                    Ok((json!({ "homeo": homeo }), 0))
                }
            }
        }
    }
}

fn cmd_dichotomy(args: DichotomyArgs) -> Result<(Value, u8)> {
    let raw: Option<Value> = args.input.as_deref().map(read_json).transpose()?;
    if let Some(v) = raw.as_ref().filter(|v| v.get("set").is_some()) {
        let job: SingleRun = serde_json::from_value(v.clone()).context("parsing single run")?;
        let region = job.region.unwrap_or_else(|| EssentialSimplex::full(job.set.dim()));
        let outcome = match job.set.dim() {
            2 => theorem1_dichotomy(&job.set, &job.target, &region, job.threshold)?,
            _ => theorem3_driver(&job.set, &region, job.threshold, job.chain_max, SearchParams::default())?,
        };
        let code = if outcome.is_copy() { 0 } else { EXIT_WITNESS };
        let verified = verify_outcome(&job.set, &outcome);
        let mut value = serde_json::to_value(&outcome)?;
        value["verified"] = json!(verified);
        return Ok((value, code));
    }
    let mut cfg = match raw {
        Some(v) => serde_json::from_value(v).context("parsing campaign configuration")?,
        None if args.spatial => ExperimentConfig::spatial(),
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(depth) = args.depth {
        cfg.depth = depth;
    }
    if let Some(gap) = args.min_gap {
        cfg.min_gap = gap;
    }
    if let Some(cap) = args.cap {
        cfg.rank_cap = cap;
    }
    cfg.oracle |= args.oracle;
    let jobs = args.jobs.unwrap_or(0);
    let start = Instant::now();
    let report = run_campaign(&cfg, jobs)?;
    let c = report.counts;
    eprintln!(
        "instances {}, runs {}: copies {}, witnesses {}, failures {}, oracle mismatches {} ({:.2} s)",
        report.instances.len(),
        c.copies + c.witnesses + c.failures,
        c.copies,
        c.witnesses,
        c.failures,
        c.oracle_mismatches,
        start.elapsed().as_secs_f64()
    );
    let code = report.exit_code() as u8;
    Ok((serde_json::to_value(&report)?, code))
}

fn selftest() -> Result<(Value, u8)> {
    let pat = |s: &str| s.parse::<Pattern>().expect("literal pattern");
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let staircase = RankWitness2D {
        x0: q(1, 8),
        pairs: vec![(q(1, 4), q(3, 8)), (q(1, 2), q(5, 8)), (q(3, 4), q(13, 16))],
        y_end: q(7, 8),
    };
    let stairs = BoxUnionSet::new(2, staircase.rectangles())?;
    checks.push(("chain of {{0,1,2}} at 1, 2 of length 2", chain(&pat("{{0,1,2}}"), 1, 2, 2)?.pattern == pat("{{0,3,5},{1,2,4}}")));
    checks.push(("grid of width 1", grid_pattern(1) == pat("{{0,1}}")));
    let ext = lemma1_extend(&Constructed::from(pat("{{0,1}}")), 1)?.pattern;
    checks.push(("extension of {{0,1}} at 1", ext == pat("{{0,2},{1,3}}")));
    checks.push(("rank of the empty set", rank_budgeted(&BoxUnionSet::empty(2), 4, DEFAULT_BUDGET)?.value == 0));
    let r = rank_budgeted(&stairs, 4, DEFAULT_BUDGET)?.value;
    checks.push(("rank of a three-step staircase", r == 3 && brute_force_rank(&stairs, 4) == 3));
    let g = densify_from_grid(&[q(1, 10), q(3, 10)], &[q(2, 10), q(4, 10)], 1)?;
    let dens: Vec<Rational> = [1, 2, 3, 4].iter().map(|&k| g.apply(q(k, 10))).collect();
    checks.push(("densify images k/5", dens == [1, 2, 3, 4].map(|k| q(k, 5)).to_vec()));
    let w = RankWitness2D {
        x0: q(1, 10),
        pairs: vec![(q(2, 10), q(3, 10))],
        y_end: q(9, 10),
    };
    let f = thin_from_witness(&w, 1)?;
    let thin: Vec<Rational> = [1, 2, 3, 9].iter().map(|&k| f.apply(q(k, 10))).collect();
    checks.push(("thin images k/6", thin == [1, 2, 3, 5].map(|k| q(k, 6)).to_vec()));
    checks.push(("identity round trip", PLHomeo::identity().compose(&PLHomeo::identity()) == PLHomeo::identity()));
    let full2 = EssentialSimplex::full(2);
    let o = theorem1_dichotomy(&BoxUnionSet::empty(2), &pat("{{0,2},{1,3}}"), &full2, 3)?;
    checks.push(("planar dichotomy on the empty set", o.is_copy() && verify_outcome(&BoxUnionSet::empty(2), &o)));
    let full3 = EssentialSimplex::full(3);
    let o = theorem3_driver(&BoxUnionSet::empty(3), &full3, 2, 4, SearchParams::default())?;
    checks.push(("spatial dichotomy on the empty set", o.is_copy() && verify_outcome(&BoxUnionSet::empty(3), &o)));
    for (name, ok) in &checks {
        eprintln!("{} {name}", if *ok { "ok  " } else { "FAIL" });
    }
    let all = checks.iter().all(|c| c.1);
    let value = json!({
        "checks": checks.iter().map(|(n, ok)| json!({ "check": n, "ok": ok })).collect::<Vec<_>>(),
        "all_ok": all,
    });
    Ok((value, if all { 0 } else { EXIT_FAILURE }))
}

fn run(cli: Cli) -> Result<u8> {
    let (value, code) = match cli.command {
        Command::Pattern(cmd) => (cmd_pattern(cmd)?, 0),
        Command::Rank { input, cap, oracle } => cmd_rank(&input, cap, oracle)?,
        Command::Match { input } => cmd_match(&input)?,
        Command::Essential { input, depth, min_gap } => cmd_essential(&input, depth, min_gap)?,
        Command::Lemma2(cmd) => cmd_lemma2(cmd)?,
        Command::Dichotomy(args) => cmd_dichotomy(args)?,
        Command::Selftest => selftest()?,
    };
    emit(cli.output.as_deref(), &value)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
