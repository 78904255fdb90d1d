//! Exhaustive verification of difference systems of sets.
//!
//! Both spectra come from one pass over the ordered pairs of `∪Q_i`:
//! `O(s²)` time and `O(v)` space. Large instances split the pass across the
//! rayon pool with one count array per chunk; counts are merged by integer
//! addition, so the result is identical to the sequential loop.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dss::{Dss, Rate};
use crate::error::{Error, Result};

/// Limits checked before any exhaustive pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on `redundancy²`, the number of ordered pairs visited.
    pub max_pairs: u128,
    /// Upper bound on `v`, the length of each count array.
    pub max_modulus: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000_000,
            max_modulus: 10_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_pairs: u128::MAX,
            max_modulus: u64::MAX,
        }
    }

    /// Fails if a family with modulus `v` and redundancy `redundancy` is
    /// too large to verify.
    pub fn check(&self, v: u64, redundancy: u64) -> Result<()> {
        let required = redundancy as u128 * redundancy as u128;
        if required > self.max_pairs {
            return Err(Error::BudgetExceeded {
                required,
                allowed: self.max_pairs,
                modulus: v,
            });
        }
        if v > self.max_modulus {
            return Err(Error::BudgetExceeded {
                required: v as u128,
                allowed: self.max_modulus as u128,
                modulus: v,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Outer,
    Inner,
}

/// `counts[d]` is the number of ordered pairs `(a, b)` with `a - b ≡ d`,
/// taken across distinct sets (outer) or within one set (inner).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSpectrum {
    pub v: u64,
    pub counts: Vec<u64>,
    pub kind: SpectrumKind,
}

impl DifferenceSpectrum {
    /// Minimum count over nonzero differences; 0 when `v = 1`.
    pub fn min_nonzero(&self) -> u64 {
        self.counts[1..].iter().copied().min().unwrap_or(0)
    }

    /// `Some(c)` if every nonzero difference occurs exactly `c` times.
    pub fn constant_nonzero(&self) -> Option<u64> {
        let first = *self.counts.get(1)?;
        self.counts[1..]
            .iter()
            .all(|&c| c == first)
            .then_some(first)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Closed-form pair total: `Σ_{i≠j} |Q_i||Q_j|` for outer spectra,
    /// `Σ |Q_i|(|Q_i| - 1)` for inner ones.
    pub fn expected_total(d: &Dss, kind: SpectrumKind) -> u64 {
        let sizes = d.set_sizes();
        let s: u64 = sizes.iter().map(|&k| k as u64).sum();
        let squares: u64 = sizes.iter().map(|&k| (k * k) as u64).sum();
        match kind {
            SpectrumKind::Outer => s * s - squares,
            SpectrumKind::Inner => squares - s,
        }
    }
}

const PARALLEL_MIN_PAIRS: u64 = 1 << 20;
const PARALLEL_MAX_MODULUS: u64 = 1 << 20;

fn accumulate(
    v: u64,
    labelled: &[(u64, usize)],
    range: std::ops::Range<usize>,
    outer: &mut [u64],
    inner: &mut [u64],
) {
    for &(a, la) in &labelled[range] {
        for &(b, lb) in labelled {
            let d = if a >= b { a - b } else { a + v - b } as usize;
            if la != lb {
                outer[d] += 1;
            } else if a != b {
                inner[d] += 1;
            }
        }
    }
}

fn labelled_elements(d: &Dss) -> Vec<(u64, usize)> {
    d.sets()
        .iter()
        .enumerate()
        .flat_map(|(i, set)| set.iter().map(move |&a| (a, i)))
        .collect()
}

pub(crate) fn spectra_sequential(d: &Dss) -> (Vec<u64>, Vec<u64>) {
    let v = d.v();
    let labelled = labelled_elements(d);
    let mut outer = vec![0; v as usize];
    let mut inner = vec![0; v as usize];
    accumulate(v, &labelled, 0..labelled.len(), &mut outer, &mut inner);
    (outer, inner)
}

fn spectra_parallel(d: &Dss) -> (Vec<u64>, Vec<u64>) {
    let v = d.v();
    let labelled = labelled_elements(d);
    let chunk = labelled.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
    let starts: Vec<usize> = (0..labelled.len()).step_by(chunk).collect();
    starts
        .into_par_iter()
        .map(|start| {
            let mut outer = vec![0; v as usize];
            let mut inner = vec![0; v as usize];
            let end = (start + chunk).min(labelled.len());
            accumulate(v, &labelled, start..end, &mut outer, &mut inner);
            (outer, inner)
        })
        .reduce(
            || (vec![0; v as usize], vec![0; v as usize]),
            |(mut o1, mut i1), (o2, i2)| {
                o1.iter_mut().zip(o2).for_each(|(x, y)| *x += y);
                i1.iter_mut().zip(i2).for_each(|(x, y)| *x += y);
                (o1, i1)
            },
        )
}

/// Outer and inner spectra in one pass.
pub fn spectra_with(d: &Dss, budget: &Budget) -> Result<(DifferenceSpectrum, DifferenceSpectrum)> {
    let s = d.redundancy();
    budget.check(d.v(), s)?;
    let (outer, inner) = if s * s >= PARALLEL_MIN_PAIRS && d.v() <= PARALLEL_MAX_MODULUS {
        spectra_parallel(d)
    } else {
        spectra_sequential(d)
    };
    Ok((
        DifferenceSpectrum {
            v: d.v(),
            counts: outer,
            kind: SpectrumKind::Outer,
        },
        DifferenceSpectrum {
            v: d.v(),
            counts: inner,
            kind: SpectrumKind::Inner,
        },
    ))
}

pub fn outer_spectrum(d: &Dss) -> Result<DifferenceSpectrum> {
    Ok(spectra_with(d, &Budget::default())?.0)
}

pub fn inner_spectrum(d: &Dss) -> Result<DifferenceSpectrum> {
    Ok(spectra_with(d, &Budget::default())?.1)
}

/// `(qρ(v-1), q-1)`: the Levenshtein bound is the square root of their
/// quotient. Undefined for `q < 2`.
pub fn levenshtein_radicand(v: u64, q: u64, rho: u64) -> Option<(u128, u128)> {
    (q >= 2 && v >= 1).then(|| (q as u128 * rho as u128 * (v as u128 - 1), q as u128 - 1))
}

pub fn levenshtein_bound(v: u64, q: u64, rho: u64) -> Option<f64> {
    levenshtein_radicand(v, q, rho).map(|(n, d)| (n as f64 / d as f64).sqrt())
}

/// `⌈sqrt(qρ(v-1)/(q-1))⌉` in exact arithmetic.
pub fn levenshtein_min_redundancy(v: u64, q: u64, rho: u64) -> Option<u64> {
    let (num, den) = levenshtein_radicand(v, q, rho)?;
    // smallest r with r² · den ≥ num
    let mut r = (num / den).isqrt();
    while r * r * den < num {
        r += 1;
    }
    Some(r as u64)
}

/// `sqrt(S(ρ(v-1) + ⌈ρ(v-1)/(q-1)⌉))` where `S(n)` is the least square `≥ n`;
/// equivalently the ceiling of the square root of the argument.
pub fn wang_bound(v: u64, q: u64, rho: u64) -> Option<u64> {
    if q < 2 || v == 0 {
        return None;
    }
    let base = rho as u128 * (v as u128 - 1);
    let n = base + base.div_ceil(q as u128 - 1);
    let mut r = n.isqrt();
    if r * r < n {
        r += 1;
    }
    Some(r as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub v: u64,
    pub q: usize,
    pub redundancy: u64,
    pub rate: Rate,
    pub index: u64,
    pub is_regular: bool,
    pub is_perfect: bool,
    pub df_lambda: Option<u64>,
    pub set_sizes: Vec<usize>,
    pub levenshtein_bound: Option<f64>,
    pub wang_bound: Option<u64>,
    pub meets_levenshtein_equality: bool,
}

impl VerificationReport {
    /// Perfect, regular and a difference family: the shape required of
    /// direct-product ingredients.
    pub fn is_perfect_regular_df(&self) -> bool {
        self.is_perfect && self.is_regular && self.df_lambda.is_some()
    }

    /// Common set size `m` of a regular family.
    pub fn set_size(&self) -> Option<usize> {
        (self.is_regular).then(|| self.set_sizes.first().copied().unwrap_or(0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Builds the report from precomputed spectra.
pub fn report_from_spectra(
    d: &Dss,
    outer: &DifferenceSpectrum,
    inner: &DifferenceSpectrum,
) -> VerificationReport {
    let index = outer.min_nonzero();
    let q = d.q() as u64;
    let s = d.redundancy() as u128;
    let is_perfect = outer.counts[1..].iter().all(|&c| c == index);
    let equality = s * s * (q as u128 - 1) == q as u128 * index as u128 * (d.v() as u128 - 1);
    let mut set_sizes = d.set_sizes();
    set_sizes.sort_unstable();
    VerificationReport {
        v: d.v(),
        q: d.q(),
        redundancy: d.redundancy(),
        rate: d.rate(),
        index,
        is_regular: d.is_regular(),
        is_perfect,
        df_lambda: inner.constant_nonzero(),
        set_sizes,
        levenshtein_bound: levenshtein_bound(d.v(), q, index),
        wang_bound: wang_bound(d.v(), q, index),
        meets_levenshtein_equality: equality,
    }
}

pub fn verify_with(d: &Dss, budget: &Budget) -> Result<VerificationReport> {
    let (outer, inner) = spectra_with(d, budget)?;
    Ok(report_from_spectra(d, &outer, &inner))
}

pub fn verify(d: &Dss) -> Result<VerificationReport> {
    verify_with(d, &Budget::default())
}

/// Whether the recomputed index equals the family's claimed index.
pub fn check_claim(d: &Dss) -> Result<bool> {
    let claimed = d.claimed_index().ok_or(Error::NoClaim)?;
    Ok(verify(d)?.index == claimed)
}
