//! Lee and Hamming weights and the minimum-distance engine.
//!
//! Codewords of `(I_k | B)` are `(m | mB)` for messages `m ∈ R^k`, so the
//! weight of a codeword is at least the weight of its message. The engine
//! walks messages depth-first, one coordinate at a time; each step adds a
//! single generator row to the running codeword, and a branch is cut as soon
//! as the message prefix alone weighs at least the best weight found so far.
//! Over `Z_2` and `Z_4` (length ≤ 64) codewords are bit-sliced into `u64`
//! planes so one row addition is a handful of word operations.

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use crate::circulant::CodeSpec;
use crate::error::{Error, Result};
use crate::ring::{ChainRing, RingElem};

/// Per-residue weights for one ring and metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    ring: ChainRing,
    table: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Lee,
    Hamming,
}

impl WeightProfile {
    pub fn new(ring: ChainRing, metric: Metric) -> Self {
        let table = ring
            .elements()
            .map(|x| match metric {
                Metric::Lee => ring.lee_weight(x),
                Metric::Hamming => u32::from(!x.is_zero()),
            })
            .collect();
        WeightProfile { ring, table }
    }

    pub fn lee(ring: ChainRing) -> Self {
        Self::new(ring, Metric::Lee)
    }

    #[inline]
    pub fn weight(&self, x: RingElem) -> u32 {
        self.table[x.value() as usize]
    }

    pub fn word_weight(&self, c: &[RingElem]) -> u32 {
        c.iter().map(|&x| self.weight(x)).sum()
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }
}

pub fn lee_weight(ring: ChainRing, c: &[RingElem]) -> u32 {
    c.iter().map(|&x| ring.lee_weight(x)).sum()
}

pub fn hamming_weight(c: &[RingElem]) -> u32 {
    c.iter().filter(|x| !x.is_zero()).count() as u32
}

/// The Gray map `Z_4 → Z_2²`: 0 ↦ 00, 1 ↦ 01, 2 ↦ 11, 3 ↦ 10.
pub fn gray_image(ring: ChainRing, c: &[RingElem]) -> Result<Vec<u8>> {
    if ring.order() != 4 {
        return Err(Error::Unsupported(format!("the Gray map is defined over z4, not {ring}")));
    }
    Ok(c.iter()
        .flat_map(|x| match x.value() {
            0 => [0, 0],
            1 => [0, 1],
            2 => [1, 1],
            _ => [1, 0],
        })
        .collect())
}

trait Words: Sync {
    type W: Clone + Send;
    fn zero(&self) -> Self::W;
    fn add_row(&self, w: &mut Self::W, row: usize);
    fn weight(&self, w: &Self::W) -> u32;
}

struct Binary {
    rows: Vec<u64>,
}

impl Words for Binary {
    type W = u64;
    fn zero(&self) -> u64 {
        0
    }
    #[inline(always)]
    fn add_row(&self, w: &mut u64, row: usize) {
        *w ^= self.rows[row];
    }
    #[inline(always)]
    fn weight(&self, w: &u64) -> u32 {
        w.count_ones()
    }
}

/// Residue `2h + l` stored as bit planes `(l, h)`.
struct Quaternary {
    rows: Vec<(u64, u64)>,
    metric: Metric,
}

impl Words for Quaternary {
    type W = (u64, u64);
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    #[inline(always)]
    fn add_row(&self, w: &mut (u64, u64), row: usize) {
        let (rl, rh) = self.rows[row];
        let carry = w.0 & rl;
        w.0 ^= rl;
        w.1 ^= rh ^ carry;
    }
    #[inline(always)]
    fn weight(&self, w: &(u64, u64)) -> u32 {
        match self.metric {
            // Lee weight = Hamming weight of the Gray image (h, h ^ l).
            Metric::Lee => w.1.count_ones() + (w.1 ^ w.0).count_ones(),
            Metric::Hamming => (w.0 | w.1).count_ones(),
        }
    }
}

struct Generic {
    ring: ChainRing,
    rows: Vec<Vec<RingElem>>,
    profile: WeightProfile,
}

impl Words for Generic {
    type W = Vec<RingElem>;
    fn zero(&self) -> Vec<RingElem> {
        vec![RingElem::ZERO; self.rows[0].len()]
    }
    fn add_row(&self, w: &mut Vec<RingElem>, row: usize) {
        for (x, &y) in w.iter_mut().zip(&self.rows[row]) {
            *x = self.ring.add(*x, y);
        }
    }
    fn weight(&self, w: &Vec<RingElem>) -> u32 {
        self.profile.word_weight(w)
    }
}

struct Walk<'a, T: Words> {
    words: &'a T,
    k: usize,
    order: u32,
    /// weight of each scalar λ
    scalar_weight: Vec<u32>,
    best: &'a AtomicU32,
    abort_below: u32,
}

enum Flow {
    Continue,
    Abort,
}

impl<T: Words> Walk<'_, T> {
    /// Extends the message `cur` (coordinates `< pos` fixed, prefix weight
    /// `pw`) with a nonzero value at some position `≥ pos`.
    fn visit(&self, pos: usize, cur: &T::W, pw: u32) -> Flow {
        for i in pos..self.k {
            let mut w = cur.clone();
            for lambda in 1..self.order {
                self.words.add_row(&mut w, i);
                let pw2 = pw + self.scalar_weight[lambda as usize];
                if pw2 >= self.best.load(Ordering::Relaxed) {
                    continue;
                }
                if let Flow::Abort = self.step(i, &w, pw2) {
                    return Flow::Abort;
                }
            }
        }
        Flow::Continue
    }

    #[inline]
    fn step(&self, i: usize, w: &T::W, pw: u32) -> Flow {
        let wt = self.words.weight(w);
        if wt < self.best.load(Ordering::Relaxed) {
            self.best.fetch_min(wt, Ordering::Relaxed);
            if wt < self.abort_below {
                return Flow::Abort;
            }
        }
        if i + 1 < self.k {
            return self.visit(i + 1, w, pw);
        }
        Flow::Continue
    }

    fn run_sequential(&self) {
        let zero = self.words.zero();
        self.visit(0, &zero, 0);
    }

    fn run_parallel(&self)
    where
        T::W: Send,
    {
        let tasks: Vec<(usize, u32)> =
            (0..self.k).flat_map(|i| (1..self.order).map(move |l| (i, l))).collect();
        tasks.par_iter().for_each(|&(i, lambda)| {
            if self.best.load(Ordering::Relaxed) < self.abort_below {
                return;
            }
            let pw = self.scalar_weight[lambda as usize];
            if pw >= self.best.load(Ordering::Relaxed) {
                return;
            }
            let mut w = self.words.zero();
            for _ in 0..lambda {
                self.words.add_row(&mut w, i);
            }
            let _ = self.step(i, &w, pw);
        });
    }
}

/// Exact minimum-weight computation for a free code `(I_k | B)`.
pub struct DistanceEngine {
    ring: ChainRing,
    metric: Metric,
    k: usize,
    kind: EngineWords,
}

enum EngineWords {
    Binary(Binary),
    Quaternary(Quaternary),
    Generic(Generic),
}

impl DistanceEngine {
    pub fn new(spec: &CodeSpec, metric: Metric) -> Self {
        let g = spec.generator_matrix();
        let ring = spec.ring();
        let n = g.cols();
        let k = g.rows();
        let kind = if ring.order() == 2 && n <= 64 {
            let rows = (0..k)
                .map(|i| g.row(i).iter().enumerate().fold(0u64, |acc, (j, x)| acc | ((x.value() as u64) << j)))
                .collect();
            EngineWords::Binary(Binary { rows })
        } else if ring.order() == 4 && n <= 64 {
            let rows = (0..k)
                .map(|i| {
                    g.row(i).iter().enumerate().fold((0u64, 0u64), |(l, h), (j, x)| {
                        let v = x.value() as u64;
                        (l | ((v & 1) << j), h | ((v >> 1) << j))
                    })
                })
                .collect();
            EngineWords::Quaternary(Quaternary { rows, metric })
        } else {
            let rows = (0..k).map(|i| g.row(i).to_vec()).collect();
            EngineWords::Generic(Generic { ring, rows, profile: WeightProfile::new(ring, metric) })
        };
        DistanceEngine { ring, metric, k, kind }
    }

    fn walk_with<T: Words>(&self, words: &T, abort_below: Option<u32>, parallel: bool) -> u32 {
        let profile = WeightProfile::new(self.ring, self.metric);
        let best = AtomicU32::new(u32::MAX);
        let walk = Walk {
            words,
            k: self.k,
            order: self.ring.order(),
            scalar_weight: self.ring.elements().map(|x| profile.weight(x)).collect(),
            best: &best,
            abort_below: match abort_below {
                Some(t) if t != u32::MAX => t,
                _ => 0,
            },
        };
        if parallel {
            walk.run_parallel();
        } else {
            walk.run_sequential();
        }
        best.load(Ordering::Relaxed)
    }

    /// Minimum nonzero weight. With `early_abort_at = Some(t)` the walk stops
    /// at the first codeword of weight `< t` and returns that weight;
    /// `Some(u32::MAX)` stands for an infinite threshold and never aborts.
    pub fn min_weight(&self, early_abort_at: Option<u32>) -> u32 {
        self.dispatch(early_abort_at, false)
    }

    /// As [`DistanceEngine::min_weight`], partitioning the message space by
    /// its first nonzero coordinate across the rayon pool.
    pub fn min_weight_parallel(&self, early_abort_at: Option<u32>) -> u32 {
        self.dispatch(early_abort_at, true)
    }

    fn dispatch(&self, early_abort_at: Option<u32>, parallel: bool) -> u32 {
        match &self.kind {
            EngineWords::Binary(w) => self.walk_with(w, early_abort_at, parallel),
            EngineWords::Quaternary(w) => self.walk_with(w, early_abort_at, parallel),
            EngineWords::Generic(w) => self.walk_with(w, early_abort_at, parallel),
        }
    }
}

/// Minimum Lee distance of the code generated by `spec`.
pub fn min_lee_distance(spec: &CodeSpec, early_abort_at: Option<u32>) -> u32 {
    DistanceEngine::new(spec, Metric::Lee).min_weight(early_abort_at)
}

/// Minimum Hamming distance of the code generated by `spec`.
pub fn min_hamming_distance(spec: &CodeSpec) -> u32 {
    DistanceEngine::new(spec, Metric::Hamming).min_weight(None)
}

/// Every codeword weight divisible by 4. Checked on the generator rows and
/// their pairwise sums, which suffices for self-orthogonal binary codes.
pub fn is_doubly_even(spec: &CodeSpec) -> Result<bool> {
    let ring = spec.ring();
    if ring.order() != 2 {
        return Err(Error::Unsupported(format!("doubly-even test needs a binary code, got {ring}")));
    }
    let g = spec.generator_matrix();
    let rows: Vec<Vec<bool>> = (0..g.rows()).map(|i| g.row(i).iter().map(|x| !x.is_zero()).collect()).collect();
    let weight = |r: &[bool]| r.iter().filter(|&&b| b).count();
    for (i, ri) in rows.iter().enumerate() {
        if weight(ri) % 4 != 0 {
            return Ok(false);
        }
        for rj in &rows[i + 1..] {
            let sum = ri.iter().zip(rj).filter(|(a, b)| a != b).count();
            if sum % 4 != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
