//! Self-synchronizing block codes realized from a DSS.
//!
//! Positions in `Q_i` carry marker symbol `i`; the remaining positions carry
//! raw payload symbols. A window whose markers disagree with the layout in at
//! most `t = ⌊(ρ - 1)/2⌋` places is accepted as block-aligned. For a DSS of
//! index `ρ`, every splice of two codewords disagrees with the layout in at
//! least `ρ` marker positions, so with at most `t` substitutions aligned
//! windows score `≤ t` and misaligned ones `≥ ρ - t > t`.
//!
//! # Randomness
//!
//! [`simulate_stream`] uses ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)`. Payloads are drawn from stream 0; the noise applied
//! to the window starting at stream offset `k` is drawn from stream `k + 1`.
//! Each window therefore has its own generator, and the parallel sweep gives
//! exactly the sequential result.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dss::Dss;
use crate::error::{Error, Result};
use crate::verify::{verify_with, Budget};

/// A length-`v` window of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeWindow(Vec<u32>);

impl CodeWindow {
    pub fn new(symbols: Vec<u32>) -> Self {
        CodeWindow(symbols)
    }

    pub fn constant(v: usize, symbol: u32) -> Self {
        CodeWindow(vec![symbol; v])
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming(&self, other: &CodeWindow) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// Cyclic left shift by `i`: `(x_i, ..., x_{v-1}, x_0, ..., x_{i-1})`.
    pub fn rotated(&self, i: usize) -> CodeWindow {
        let mut s = self.0.clone();
        s.rotate_left(i % self.0.len().max(1));
        CodeWindow(s)
    }
}

impl From<Vec<u32>> for CodeWindow {
    fn from(symbols: Vec<u32>) -> Self {
        CodeWindow(symbols)
    }
}

/// The last `i` symbols of `x` followed by the first `v - i` symbols of `y`.
pub fn splice(x: &CodeWindow, y: &CodeWindow, i: usize) -> Result<CodeWindow> {
    let v = x.len();
    if y.len() != v {
        return Err(Error::LengthMismatch {
            expected: v,
            got: y.len(),
        });
    }
    if i == 0 || i >= v {
        return Err(Error::OffsetOutOfRange {
            offset: i,
            max: v.saturating_sub(1),
        });
    }
    let mut out = Vec::with_capacity(v);
    out.extend_from_slice(&x.0[v - i..]);
    out.extend_from_slice(&y.0[..v - i]);
    Ok(CodeWindow(out))
}

/// Marker positions and symbols derived from a verified DSS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerLayout {
    alphabet: u32,
    marker_at: Vec<Option<u32>>,
    marker_positions: Vec<usize>,
    free_positions: Vec<usize>,
    index: u64,
    tolerance: u64,
}

impl MarkerLayout {
    /// Layout over an alphabet of `alphabet ≥ q` symbols. The DSS is verified
    /// here; its claimed index is not used.
    pub fn from_dss(d: &Dss, alphabet: u32) -> Result<Self> {
        if (alphabet as usize) < d.q() {
            return Err(Error::AlphabetTooSmall {
                alphabet,
                sets: d.q(),
            });
        }
        let index = verify_with(d, &Budget::default())?.index;
        let mut marker_at = vec![None; d.v() as usize];
        for (i, set) in d.sets().iter().enumerate() {
            for &a in set {
                marker_at[a as usize] = Some(i as u32);
            }
        }
        let (marker_positions, free_positions) =
            (0..marker_at.len()).partition(|&p| marker_at[p].is_some());
        Ok(MarkerLayout {
            alphabet,
            marker_at,
            marker_positions,
            free_positions,
            index,
            tolerance: index.saturating_sub(1) / 2,
        })
    }

    /// Block length.
    pub fn v(&self) -> usize {
        self.marker_at.len()
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn marker_at(&self, position: usize) -> Option<u32> {
        self.marker_at.get(position).copied().flatten()
    }

    pub fn marker_positions(&self) -> &[usize] {
        &self.marker_positions
    }

    pub fn free_positions(&self) -> &[usize] {
        &self.free_positions
    }

    /// Verified index of the underlying DSS.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `⌊(ρ - 1)/2⌋`, zero for `ρ ≤ 2`.
    pub fn tolerance(&self) -> u64 {
        self.tolerance
    }

    /// Marker pattern with `*` on free positions, e.g.
    /// `*000010**11***10*1******1`.
    pub fn pattern(&self) -> String {
        self.marker_at
            .iter()
            .map(|m| match m {
                None => '*',
                Some(s) => char::from_digit(*s, 36).unwrap_or('?'),
            })
            .collect()
    }

    fn check_len(&self, w: &CodeWindow) -> Result<()> {
        if w.len() != self.v() {
            return Err(Error::LengthMismatch {
                expected: self.v(),
                got: w.len(),
            });
        }
        Ok(())
    }

    /// Markers in place, payload on the free positions in ascending order.
    pub fn encode(&self, payload: &[u32]) -> Result<CodeWindow> {
        if payload.len() != self.free_positions.len() {
            return Err(Error::PayloadLengthMismatch {
                expected: self.free_positions.len(),
                got: payload.len(),
            });
        }
        if let Some((i, &symbol)) = payload
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= self.alphabet)
        {
            return Err(Error::SymbolOutOfRange {
                position: self.free_positions[i],
                symbol,
                alphabet: self.alphabet,
            });
        }
        let mut symbols: Vec<u32> = self.marker_at.iter().map(|m| m.unwrap_or(0)).collect();
        for (&p, &s) in self.free_positions.iter().zip(payload) {
            symbols[p] = s;
        }
        Ok(CodeWindow(symbols))
    }

    /// Symbols on the free positions; markers are not checked.
    pub fn decode(&self, w: &CodeWindow) -> Result<Vec<u32>> {
        self.check_len(w)?;
        Ok(self.free_positions.iter().map(|&p| w.0[p]).collect())
    }

    /// Disagreements between `w` and the layout on marker positions.
    pub fn marker_distance(&self, w: &CodeWindow) -> Result<usize> {
        self.check_len(w)?;
        Ok(self
            .marker_positions
            .iter()
            .filter(|&&p| Some(w.0[p]) != self.marker_at[p])
            .count())
    }

    pub fn is_sync(&self, w: &CodeWindow) -> Result<bool> {
        Ok(self.marker_distance(w)? as u64 <= self.tolerance)
    }
}

/// Free-function form of [`MarkerLayout::from_dss`].
pub fn layout_from_dss(d: &Dss, alphabet: u32) -> Result<MarkerLayout> {
    MarkerLayout::from_dss(d, alphabet)
}

/// Brute-force comma-free index: the minimum Hamming distance between any
/// codeword `z` and any splice of any ordered codeword pair `(x, y)` at any
/// offset `1 ≤ i ≤ v - 1`. Costs `|code|³ · v` symbol comparisons, bounded
/// by `budget.max_pairs`.
pub fn comma_free_index(code: &[CodeWindow], budget: &Budget) -> Result<usize> {
    let v = code
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty code".into()))?
        .len();
    if v < 2 {
        return Err(Error::InvalidParameter(
            "windows of length < 2 have no splices".into(),
        ));
    }
    if let Some(bad) = code.iter().find(|w| w.len() != v) {
        return Err(Error::LengthMismatch {
            expected: v,
            got: bad.len(),
        });
    }
    let n = code.len() as u128;
    let required = n * n * n * v as u128 * (v as u128 - 1);
    if required > budget.max_pairs {
        return Err(Error::BudgetExceeded {
            required,
            allowed: budget.max_pairs,
            modulus: v as u64,
        });
    }
    let mut best = usize::MAX;
    for x in code {
        for y in code {
            for i in 1..v {
                let s = splice(x, y, i)?;
                for z in code {
                    best = best.min(z.hamming(&s));
                }
            }
        }
    }
    Ok(best)
}

/// Substitution noise applied independently to every tested window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// Exactly `t` distinct positions replaced by a different symbol.
    Exact(usize),
    /// Each position replaced by a different symbol with probability `p`.
    Iid(f64),
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::Exact(t) => write!(f, "exact-{t}"),
            NoiseModel::Iid(p) => write!(f, "iid-{p}"),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("noise '{s}' is not exact-<t> or iid-<p>"));
        if let Some(t) = s.strip_prefix("exact-") {
            return Ok(NoiseModel::Exact(t.parse().map_err(|_| bad())?));
        }
        if let Some(p) = s.strip_prefix("iid-") {
            let p: f64 = p.parse().map_err(|_| bad())?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "substitution probability {p} outside [0, 1]"
                )));
            }
            return Ok(NoiseModel::Iid(p));
        }
        Err(bad())
    }
}

impl Serialize for NoiseModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NoiseModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncStats {
    pub blocks: usize,
    pub offsets_tested: usize,
    pub true_accepts: usize,
    pub false_accepts: usize,
    pub false_rejects: usize,
    pub seed: u64,
    pub noise: NoiseModel,
}

impl SyncStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

fn substitute(rng: &mut ChaCha8Rng, symbol: u32, alphabet: u32) -> u32 {
    (symbol + 1 + rng.gen_range(0..alphabet - 1)) % alphabet
}

/// Slides a length-`v` window over a stream of `n_blocks` encoded random
/// payloads, applies fresh noise to each window, and tallies the detector's
/// decisions.
///
/// Only windows lying fully inside the stream are tested, so every
/// misaligned window is a splice of two whole codewords.
pub fn simulate_stream(
    layout: &MarkerLayout,
    n_blocks: usize,
    noise: NoiseModel,
    seed: u64,
) -> Result<SyncStats> {
    let v = layout.v();
    let alphabet = layout.alphabet();
    if n_blocks == 0 {
        return Err(Error::InvalidParameter("need at least one block".into()));
    }
    match noise {
        NoiseModel::Exact(t) if t > v => {
            return Err(Error::InvalidParameter(format!(
                "cannot substitute {t} of {v} positions"
            )))
        }
        NoiseModel::Iid(p) if !(0.0..=1.0).contains(&p) => {
            return Err(Error::InvalidParameter(format!(
                "substitution probability {p} outside [0, 1]"
            )))
        }
        _ => {}
    }
    let noisy = !matches!(noise, NoiseModel::Exact(0)) && !matches!(noise, NoiseModel::Iid(p) if p == 0.0);
    if noisy && alphabet < 2 {
        return Err(Error::InvalidParameter(
            "substitutions need an alphabet of at least two symbols".into(),
        ));
    }

    let base = ChaCha8Rng::seed_from_u64(seed);
    let mut payload_rng = base.clone();
    payload_rng.set_stream(0);
    let mut stream = Vec::with_capacity(n_blocks * v);
    for _ in 0..n_blocks {
        let payload: Vec<u32> = (0..layout.free_positions().len())
            .map(|_| payload_rng.gen_range(0..alphabet))
            .collect();
        stream.extend_from_slice(layout.encode(&payload)?.symbols());
    }

    let windows = (n_blocks - 1) * v + 1;
    let tally = (0..windows)
        .into_par_iter()
        .map(|k| {
            let mut rng = base.clone();
            rng.set_stream(k as u64 + 1);
            let mut w = stream[k..k + v].to_vec();
            match noise {
                NoiseModel::Exact(0) => {}
                NoiseModel::Exact(t) => {
                    for p in sample(&mut rng, v, t) {
                        w[p] = substitute(&mut rng, w[p], alphabet);
                    }
                }
                NoiseModel::Iid(p) => {
                    for s in w.iter_mut() {
                        if p > 0.0 && rng.gen_bool(p) {
                            *s = substitute(&mut rng, *s, alphabet);
                        }
                    }
                }
            }
            let accepted = layout
                .is_sync(&CodeWindow(w))
                .expect("window has block length");
            let aligned = k % v == 0;
            (
                usize::from(aligned && accepted),
                usize::from(!aligned && accepted),
                usize::from(aligned && !accepted),
            )
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));

    Ok(SyncStats {
        blocks: n_blocks,
        offsets_tested: windows,
        true_accepts: tally.0,
        false_accepts: tally.1,
        false_rejects: tally.2,
        seed,
        noise,
    })
}
