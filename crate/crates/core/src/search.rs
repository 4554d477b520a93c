//! The search pipeline: enumerate self-dual base codes over the residue
//! field, keep one per equivalence class, visit them by decreasing Hamming
//! distance and evaluate every self-dual lift.
//!
//! Bases are processed in batches of equal `d_Ham`. Inside a batch a lift is
//! abandoned once it shows a codeword lighter than both the committed best
//! `d` and the best found so far in the batch, so every code attaining the
//! final value is evaluated exactly whatever the thread schedule. The batch
//! result is committed when the batch ends; the run stops before a batch with
//! `2·d_Ham ≤ d`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU32, Ordering};

use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::{Border, CircVec, CodeSpec};
use crate::distance::{is_doubly_even, min_hamming_distance, min_lee_distance};
use crate::equivalence::{canonical_spec, circulant_candidates, necklaces};
use crate::error::{Error, Result};
use crate::lift::nested_lift;
use crate::record::{Family, SearchRecord};
use crate::ring::{ChainRing, RingElem};

/// Lengths above this need `extended`.
pub const DEFAULT_MAX_LENGTH: usize = 24;
/// Hard limit on the code length.
pub const MAX_LENGTH: usize = 64;
/// Largest number of candidate vectors enumerated without a necklace filter.
const MAX_FULL_ENUMERATION: u64 = 1 << 24;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub ring: ChainRing,
    pub n: usize,
    pub family: Family,
    /// 0 uses the rayon default.
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub extended: bool,
    /// Disables the `2·d_Ham` cutoff and early abort.
    pub no_pruning: bool,
    /// Stop with [`Error::Interrupted`] after this many bases have been
    /// processed in this invocation (checkpoint written first).
    pub stop_after: Option<usize>,
}

impl SearchConfig {
    pub fn new(ring: ChainRing, n: usize, family: Family) -> Self {
        SearchConfig {
            ring: ring.without_alpha(),
            n,
            family,
            threads: 0,
            out: None,
            checkpoint: None,
            extended: false,
            no_pruning: false,
            stop_after: None,
        }
    }

    /// The target ring with the family's `α`.
    pub fn target(&self) -> Result<ChainRing> {
        self.family.ring_with_alpha(self.ring)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |msg: String| Err(Error::Config(msg));
        if self.n == 0 || self.n % 2 != 0 {
            return cfg(format!("length {} must be positive and even", self.n));
        }
        if self.family.is_bordered() && self.n < 4 {
            return cfg("bordered codes need length at least 4".into());
        }
        if self.n > MAX_LENGTH {
            return cfg(format!("length {} exceeds the supported maximum {MAX_LENGTH}", self.n));
        }
        if self.n > DEFAULT_MAX_LENGTH && !self.extended {
            return cfg(format!("length {} > {DEFAULT_MAX_LENGTH} needs --extended", self.n));
        }
        if self.ring.p() == 2 && self.ring.m() >= 2 && self.n % 8 != 0 {
            return cfg(format!("self-dual codes over {} need length divisible by 8, got {}", self.ring, self.n));
        }
        self.target().map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    fn key(&self) -> String {
        format!("{} {} {} pruning={}", self.family, self.ring, self.n, !self.no_pruning)
    }
}

/// A canonical base code with its Hamming distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCode {
    pub spec: CodeSpec,
    pub d_ham: u32,
}

/// Canonical representatives of the self-dual base codes over the residue
/// field (doubly-even as well when the target is `Z_{2^m}`, `m ≥ 2`), sorted
/// by decreasing `d_Ham` and then by digits.
pub fn enumerate_base_codes(cfg: &SearchConfig) -> Result<Vec<BaseCode>> {
    cfg.validate()?;
    let field = cfg.target()?.residue_field();
    let alpha = field.alpha().expect("alpha projects to the residue field");
    let q = field.q();
    let k = cfg.family.core_len(cfg.n);
    let need_doubly_even = cfg.ring.p() == 2 && cfg.ring.m() >= 2;

    let elems = |v: &[u32]| -> Vec<RingElem> { v.iter().map(|&x| field.reduce(x as u64)).collect() };
    let keep = |spec: &CodeSpec| -> bool {
        spec.is_self_dual() && (!need_doubly_even || is_doubly_even(spec).unwrap_or(false))
    };

    let mut classes: BTreeMap<(Vec<u32>, [u32; 3]), CodeSpec> = BTreeMap::new();
    let mut insert = |spec: CodeSpec| {
        let canon = canonical_spec(&spec);
        classes.entry(canon.sort_key()).or_insert(canon);
    };

    if cfg.family.is_bordered() {
        for core in necklaces(k, q) {
            let core = CircVec::new(field, alpha, elems(&core))?;
            for b in 0..q * q * q {
                let border = Border::new(
                    field.reduce((b / (q * q)) as u64),
                    field.reduce((b / q % q) as u64),
                    field.reduce((b % q) as u64),
                );
                let spec = CodeSpec::bordered(core.clone(), border)?;
                if keep(&spec) {
                    insert(spec);
                }
            }
        }
    } else if alpha == RingElem::ONE {
        for v in circulant_candidates(k, q) {
            let spec = CodeSpec::double(CircVec::new(field, alpha, elems(&v))?);
            if keep(&spec) {
                insert(spec);
            }
        }
    } else {
        let total = (q as u64).checked_pow(k as u32).filter(|&t| t <= MAX_FULL_ENUMERATION).ok_or_else(|| {
            Error::Config(format!("{q}^{k} candidate vectors is beyond the unfiltered enumeration limit"))
        })?;
        for idx in 0..total {
            let v: Vec<u32> = (0..k).map(|i| ((idx / (q as u64).pow(i as u32)) % q as u64) as u32).collect();
            let spec = CodeSpec::double(CircVec::new(field, alpha, elems(&v))?);
            if keep(&spec) {
                insert(spec);
            }
        }
    }

    let mut bases: Vec<BaseCode> = classes
        .into_values()
        .map(|spec| {
            let d_ham = min_hamming_distance(&spec);
            BaseCode { spec, d_ham }
        })
        .collect();
    bases.sort_by(|a, b| b.d_ham.cmp(&a.d_ham).then_with(|| a.spec.sort_key().cmp(&b.spec.sort_key())));
    Ok(bases)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub bases: usize,
    pub bases_visited: usize,
    pub lifts_exact: u64,
    pub lifts_aborted: u64,
    /// Lifts whose exact `d_Lee`, or found weight if aborted, exceeds `2·d_Ham(base)`.
    pub bound_violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub best_d: u32,
    pub records: Vec<SearchRecord>,
    pub stats: SearchStats,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Checkpoint {
    key: String,
    d: u32,
    /// Index of the first base not yet processed.
    next_base: usize,
    /// Exact evaluations of the current batch, as record lines.
    batch: Vec<String>,
    /// Records attaining `d`.
    records: Vec<String>,
    stats: SearchStats,
}

impl Checkpoint {
    fn load(path: &Path, key: &str) -> Result<Option<Checkpoint>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let ck: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if ck.key != key {
            return Err(Error::Checkpoint(format!(
                "{} belongs to a different search ({:?}, expected {key:?})",
                path.display(),
                ck.key
            )));
        }
        Ok(Some(ck))
    }

    fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self).map_err(|e| Error::Checkpoint(e.to_string()))?;
        write_atomic(path, text.as_bytes())
    }
}

fn parse_lines(lines: &[String]) -> Result<Vec<SearchRecord>> {
    lines
        .iter()
        .map(|l| l.parse().map_err(|e: Error| Error::Checkpoint(e.to_string())))
        .collect()
}

fn to_lines(records: &[SearchRecord]) -> Vec<String> {
    records.iter().map(ToString::to_string).collect()
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// The results file: records, then a `#` summary block.
pub fn format_results(cfg: &SearchConfig, outcome: &SearchOutcome, finished: bool) -> String {
    let mut text = String::new();
    for r in &outcome.records {
        text.push_str(&r.to_string());
        text.push('\n');
    }
    let s = &outcome.stats;
    text.push_str(&format!("# family={} ring={} n={}\n", cfg.family, cfg.ring, cfg.n));
    text.push_str(&format!(
        "# best_d_lee={} witnesses={} status={}\n",
        outcome.best_d,
        outcome.records.len(),
        if finished { "complete" } else { "partial" }
    ));
    text.push_str(&format!(
        "# bases={} visited={} lifts_exact={} lifts_aborted={}\n",
        s.bases, s.bases_visited, s.lifts_exact, s.lifts_aborted
    ));
    text
}

struct State {
    d: u32,
    next_base: usize,
    batch: Vec<SearchRecord>,
    records: Vec<SearchRecord>,
    stats: SearchStats,
}

impl State {
    fn batch_best(&self) -> u32 {
        self.batch.iter().map(|r| r.d_lee).max().unwrap_or(0)
    }

    fn commit_batch(&mut self) {
        let best = self.batch_best();
        let batch = std::mem::take(&mut self.batch);
        if best > self.d {
            self.d = best;
            self.records.clear();
        }
        if best == self.d && best > 0 {
            self.records.extend(batch.into_iter().filter(|r| r.d_lee == best));
            self.records.sort();
            self.records.dedup();
        }
    }

    fn checkpoint(&self, key: &str) -> Checkpoint {
        Checkpoint {
            key: key.to_string(),
            d: self.d,
            next_base: self.next_base,
            batch: to_lines(&self.batch),
            records: to_lines(&self.records),
            stats: self.stats.clone(),
        }
    }

    fn outcome(&self) -> SearchOutcome {
        SearchOutcome { best_d: self.d, records: self.records.clone(), stats: self.stats.clone() }
    }
}

/// Evaluates every self-dual lift of one base. Returns the exactly
/// evaluated lifts at or above the abort threshold.
fn evaluate_base(
    cfg: &SearchConfig,
    target: ChainRing,
    base: &BaseCode,
    d: u32,
    batch_best: &AtomicU32,
    stats: &mut SearchStats,
) -> Result<Vec<SearchRecord>> {
    let lifts: Vec<CodeSpec> = if target.m() == 1 {
        vec![base.spec.clone()]
    } else {
        nested_lift(&base.spec, target)?.collect()
    };
    let results: Vec<(CodeSpec, u32, bool)> = lifts
        .into_par_iter()
        .map(|spec| {
            let threshold = if cfg.no_pruning { 0 } else { d.max(batch_best.load(Ordering::Relaxed)) };
            let w = min_lee_distance(&spec, (threshold > 0).then_some(threshold));
            let exact = w >= threshold;
            if exact {
                batch_best.fetch_max(w, Ordering::Relaxed);
            }
            (spec, w, exact)
        })
        .collect();

    let mut kept = Vec::new();
    for (spec, w, exact) in results {
        // an aborted w still bounds d_Lee from above
        if w > 2 * base.d_ham {
            stats.bound_violations += 1;
        }
        if !exact {
            stats.lifts_aborted += 1;
            continue;
        }
        stats.lifts_exact += 1;
        kept.push(SearchRecord::new(cfg.family, &base.spec, &spec, w, base.d_ham));
    }
    Ok(kept)
}

/// Runs the search. With a checkpoint path, progress is saved after every
/// base and an existing checkpoint for the same configuration is resumed.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let target = cfg.target()?;
    let bases = enumerate_base_codes(cfg)?;
    info!("{}: {} canonical base codes", cfg.key(), bases.len());

    let mut state = State { d: 0, next_base: 0, batch: Vec::new(), records: Vec::new(), stats: SearchStats::default() };
    if let Some(path) = &cfg.checkpoint {
        if let Some(ck) = Checkpoint::load(path, &cfg.key())? {
            info!("resuming from {} at base {}", path.display(), ck.next_base);
            if ck.next_base > bases.len() {
                return Err(Error::Checkpoint(format!("checkpoint refers to base {} of {}", ck.next_base, bases.len())));
            }
            state = State {
                d: ck.d,
                next_base: ck.next_base,
                batch: parse_lines(&ck.batch)?,
                records: parse_lines(&ck.records)?,
                stats: ck.stats,
            };
        }
    }
    state.stats.bases = bases.len();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let mut processed = 0usize;
    let mut finished = true;
    while state.next_base < bases.len() {
        let base = &bases[state.next_base];
        let starts_batch = state.next_base == 0 || bases[state.next_base - 1].d_ham != base.d_ham;
        if starts_batch {
            state.commit_batch();
            if !cfg.no_pruning && 2 * base.d_ham <= state.d {
                info!("stopping: 2*d_ham = {} <= d = {}", 2 * base.d_ham, state.d);
                break;
            }
        }
        if cfg.stop_after.is_some_and(|limit| processed >= limit) {
            finished = false;
            break;
        }

        let batch_best = AtomicU32::new(state.batch_best());
        let d = state.d;
        let mut stats = std::mem::take(&mut state.stats);
        let kept = pool.install(|| evaluate_base(cfg, target, base, d, &batch_best, &mut stats))?;
        state.stats = stats;
        state.stats.bases_visited += 1;
        let floor = d.max(batch_best.load(Ordering::Relaxed));
        state.batch.extend(kept);
        state.batch.retain(|r| r.d_lee >= floor);
        state.batch.sort();
        state.next_base += 1;
        processed += 1;
        debug!("base {} d_ham={} batch best {}", base.spec.core(), base.d_ham, state.batch_best());

        if let Some(path) = &cfg.checkpoint {
            state.checkpoint(&cfg.key()).save(path)?;
        }
    }
    if finished {
        state.commit_batch();
        state.next_base = bases.len();
        if let Some(path) = &cfg.checkpoint {
            state.checkpoint(&cfg.key()).save(path)?;
        }
    }

    let outcome = state.outcome();
    if let Some(path) = &cfg.out {
        write_atomic(path, format_results(cfg, &outcome, finished).as_bytes())?;
    }
    if !finished {
        return Err(Error::Interrupted);
    }
    info!("{}: best d_lee = {} ({} witnesses)", cfg.key(), outcome.best_d, outcome.records.len());
    Ok(outcome)
}
