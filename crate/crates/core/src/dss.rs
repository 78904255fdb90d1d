//! Difference systems of sets over `Z_v` and frequency hopping sequences.
//!
//! A [`Dss`] is a family of pairwise disjoint subsets `Q_0, ..., Q_{q-1}` of
//! the residues `0..v`. Its canonical form keeps the original set order and
//! sorts each set ascending. A [`FrequencyHoppingSequence`] is the same thing
//! seen from the other side: a length-`v` symbol vector whose symbol supports
//! partition `Z_v`, i.e. a family of redundancy rate one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = (1 << 63) - 1;

/// Exact fraction `num/den`, kept unreduced so that a redundancy rate reads
/// as `redundancy/v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rate {
    pub num: u64,
    pub den: u64,
}

impl Rate {
    pub fn new(num: u64, den: u64) -> Self {
        Rate { num, den }
    }

    /// Equality as rational numbers (`1/2 == 2/4`).
    pub fn same_value(&self, other: &Rate) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }

    /// Product as rationals, unreduced.
    pub fn times(&self, other: &Rate) -> (u128, u128) {
        (
            self.num as u128 * other.num as u128,
            self.den as u128 * other.den as u128,
        )
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Rate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let (num, den) = text
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom("rate must look like s/v"))?;
        let num = num.trim().parse().map_err(serde::de::Error::custom)?;
        let den = den.trim().parse().map_err(serde::de::Error::custom)?;
        Ok(Rate { num, den })
    }
}

/// A difference system of sets in canonical form.
///
/// Serializes as `{"v", "sets", "provenance", "claimed_index"}` in that order.
/// Deserialization goes through [`Dss::new`], so a parsed value always
/// satisfies the invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDss")]
pub struct Dss {
    v: u64,
    sets: Vec<Vec<u64>>,
    provenance: String,
    claimed_index: Option<u64>,
}

#[derive(Deserialize)]
struct RawDss {
    v: u64,
    sets: Vec<Vec<u64>>,
    #[serde(default)]
    provenance: String,
    #[serde(default)]
    claimed_index: Option<u64>,
}

impl TryFrom<RawDss> for Dss {
    type Error = Error;

    fn try_from(raw: RawDss) -> Result<Self> {
        Ok(Dss::new(raw.v, raw.sets)?
            .with_provenance(raw.provenance)
            .with_claimed_index(raw.claimed_index))
    }
}

impl Dss {
    /// Validates and canonicalizes a family of residue sets over `Z_v`.
    ///
    /// Set order is preserved; each set is sorted ascending. Duplicates,
    /// whether inside one set or across sets, are rejected with
    /// [`Error::SetsNotDisjoint`].
    pub fn new(v: u64, sets: Vec<Vec<u64>>) -> Result<Self> {
        if v == 0 || v > MAX_MODULUS {
            return Err(Error::InvalidModulus(v));
        }
        if sets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut seen = std::collections::HashSet::new();
        let mut canonical = Vec::with_capacity(sets.len());
        for mut set in sets {
            for &element in &set {
                if element >= v {
                    return Err(Error::ElementOutOfRange {
                        element,
                        modulus: v,
                    });
                }
                if !seen.insert(element) {
                    return Err(Error::SetsNotDisjoint(element));
                }
            }
            set.sort_unstable();
            canonical.push(set);
        }
        Ok(Dss {
            v,
            sets: canonical,
            provenance: String::new(),
            claimed_index: None,
        })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn with_claimed_index(mut self, claimed: Option<u64>) -> Self {
        self.claimed_index = claimed;
        self
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    /// Number of sets `q`.
    pub fn q(&self) -> usize {
        self.sets.len()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Advisory only; see [`crate::verify::check_claim`].
    pub fn claimed_index(&self) -> Option<u64> {
        self.claimed_index
    }

    /// Total marker count `|Q_0 ∪ ... ∪ Q_{q-1}|`.
    pub fn redundancy(&self) -> u64 {
        self.sets.iter().map(|s| s.len() as u64).sum()
    }

    pub fn rate(&self) -> Rate {
        Rate::new(self.redundancy(), self.v)
    }

    pub fn set_sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.sets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Same modulus and same sets in the same order; provenance and claim are
    /// ignored.
    pub fn same_family(&self, other: &Dss) -> bool {
        self.v == other.v && self.sets == other.sets
    }

    /// Set label of every residue: `Some(i)` for members of `Q_i`.
    pub fn labels(&self) -> Vec<Option<usize>> {
        let mut labels = vec![None; self.v as usize];
        for (i, set) in self.sets.iter().enumerate() {
            for &a in set {
                labels[a as usize] = Some(i);
            }
        }
        labels
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("Dss serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A period-`v` sequence over the alphabet `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyHoppingSequence {
    q: u32,
    symbols: Vec<u32>,
}

impl FrequencyHoppingSequence {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Self> {
        if symbols.is_empty() || symbols.len() as u64 > MAX_MODULUS {
            return Err(Error::InvalidModulus(symbols.len() as u64));
        }
        if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= q) {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol,
                alphabet: q,
            });
        }
        Ok(FrequencyHoppingSequence { q, symbols })
    }

    /// Period.
    pub fn v(&self) -> u64 {
        self.symbols.len() as u64
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Supports of symbols `0..q` in symbol order, with empty supports
    /// dropped. The result always has redundancy rate one.
    pub fn to_dss(&self) -> Dss {
        let mut supports = vec![Vec::new(); self.q as usize];
        for (position, &symbol) in self.symbols.iter().enumerate() {
            supports[symbol as usize].push(position as u64);
        }
        supports.retain(|s| !s.is_empty());
        Dss::new(self.v(), supports)
            .expect("supports of a sequence partition Z_v")
            .with_provenance(format!("fhs-support(v={}, q={})", self.v(), self.q))
    }

    /// Inverse of [`to_dss`](Self::to_dss): residues of `Q_i` carry symbol
    /// `i`. Fails with [`Error::NotRateOne`] on the smallest uncovered residue.
    pub fn from_dss(d: &Dss) -> Result<Self> {
        let mut symbols = vec![u32::MAX; d.v() as usize];
        for (i, set) in d.sets().iter().enumerate() {
            for &a in set {
                symbols[a as usize] = i as u32;
            }
        }
        if let Some(hole) = symbols.iter().position(|&s| s == u32::MAX) {
            return Err(Error::NotRateOne(hole as u64));
        }
        Ok(FrequencyHoppingSequence {
            q: d.q() as u32,
            symbols,
        })
    }

    /// Relabels symbols in order of first occurrence and shrinks the
    /// alphabet to the symbols actually used.
    pub fn relabeled_by_first_occurrence(&self) -> Self {
        let mut map = vec![u32::MAX; self.q as usize];
        let mut next = 0;
        let symbols = self
            .symbols
            .iter()
            .map(|&s| {
                if map[s as usize] == u32::MAX {
                    map[s as usize] = next;
                    next += 1;
                }
                map[s as usize]
            })
            .collect();
        FrequencyHoppingSequence { q: next, symbols }
    }
}

/// Free-function form of [`FrequencyHoppingSequence::to_dss`].
pub fn fhs_to_dss(x: &FrequencyHoppingSequence) -> Dss {
    x.to_dss()
}

/// Free-function form of [`FrequencyHoppingSequence::from_dss`].
pub fn dss_to_fhs(d: &Dss) -> Result<FrequencyHoppingSequence> {
    FrequencyHoppingSequence::from_dss(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z25() -> Dss {
        Dss::new(
            25,
            vec![vec![1, 2, 3, 4, 6, 15], vec![5, 9, 10, 14, 17, 24]],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_is_valid() {
        let d = z25();
        assert_eq!(d.q(), 2);
        assert_eq!(d.redundancy(), 12);
        assert_eq!(d.rate(), Rate::new(12, 25));
        assert!(d.is_regular());
    }

    #[test]
    fn single_set_family() {
        let d = Dss::new(5, vec![vec![0]]).unwrap();
        assert_eq!(d.q(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Dss::new(5, vec![vec![1, 2], vec![2, 3]]),
            Err(Error::SetsNotDisjoint(2))
        );
        assert_eq!(
            Dss::new(5, vec![vec![1, 1]]),
            Err(Error::SetsNotDisjoint(1))
        );
        assert_eq!(
            Dss::new(5, vec![vec![5]]),
            Err(Error::ElementOutOfRange {
                element: 5,
                modulus: 5
            })
        );
        assert_eq!(Dss::new(5, vec![]), Err(Error::EmptyFamily));
        assert_eq!(Dss::new(0, vec![vec![]]), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn sorts_within_sets_and_keeps_set_order() {
        let d = Dss::new(9, vec![vec![8, 3], vec![1, 0]]).unwrap();
        assert_eq!(d.sets(), &[vec![3, 8], vec![0, 1]]);
    }

    #[test]
    fn json_field_order_is_fixed() {
        let d = z25().with_provenance("worked example").with_claimed_index(Some(3));
        assert_eq!(
            d.to_json(),
            r#"{"v":25,"sets":[[1,2,3,4,6,15],[5,9,10,14,17,24]],"provenance":"worked example","claimed_index":3}"#
        );
        assert_eq!(Dss::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn json_input_is_validated_and_canonicalized() {
        let d = Dss::from_json(r#"{"v":7,"sets":[[4,2,1]],"provenance":"","claimed_index":null}"#)
            .unwrap();
        assert_eq!(d.sets(), &[vec![1, 2, 4]]);
        assert!(Dss::from_json(r#"{"v":7,"sets":[[1],[1]]}"#).is_err());
        assert!(Dss::from_json("{not json").is_err());
    }

    #[test]
    fn fhs_supports() {
        let identity = FrequencyHoppingSequence::new(7, (0..7).collect()).unwrap();
        let d = identity.to_dss();
        assert_eq!(d.q(), 7);
        assert!(d.sets().iter().enumerate().all(|(i, s)| s == &[i as u64]));

        let x = FrequencyHoppingSequence::new(2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(x.to_dss().sets(), &[vec![0, 1], vec![2, 3]]);

        let x = FrequencyHoppingSequence::new(2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(x.to_dss().sets(), &[vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(x.to_dss().rate(), Rate::new(6, 6));
    }

    #[test]
    fn empty_supports_are_dropped() {
        let x = FrequencyHoppingSequence::new(4, vec![3, 0, 3]).unwrap();
        assert_eq!(x.to_dss().sets(), &[vec![1], vec![0, 2]]);
    }

    #[test]
    fn dss_to_fhs_cases() {
        let d = Dss::new(6, vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(dss_to_fhs(&d).unwrap().symbols(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(dss_to_fhs(&z25()), Err(Error::NotRateOne(0)));
        let singletons = Dss::new(7, (0..7).map(|i| vec![i]).collect()).unwrap();
        assert_eq!(
            dss_to_fhs(&singletons).unwrap().symbols(),
            &[0, 1, 2, 3, 4, 5, 6]
        );
    }

    #[test]
    fn fhs_rejects_out_of_alphabet_symbols() {
        assert!(matches!(
            FrequencyHoppingSequence::new(2, vec![0, 2]),
            Err(Error::SymbolOutOfRange { position: 1, .. })
        ));
    }

    fn arb_family() -> impl Strategy<Value = (u64, Vec<Vec<u64>>)> {
        (1u64..40, 1usize..6).prop_flat_map(|(v, q)| {
            (
                Just(v),
                proptest::collection::vec(proptest::option::of(0..q), v as usize),
            )
                .prop_map(move |(v, labels)| {
                    let mut sets = vec![Vec::new(); q];
                    for (x, l) in labels.into_iter().enumerate() {
                        if let Some(i) = l {
                            sets[i].push(v - 1 - x as u64);
                        }
                    }
                    (v, sets)
                })
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent((v, sets) in arb_family()) {
            let d = Dss::new(v, sets).unwrap();
            let again = Dss::new(d.v(), d.sets().to_vec()).unwrap();
            prop_assert_eq!(again, d);
        }

        #[test]
        fn fhs_round_trip(symbols in proptest::collection::vec(0u32..5, 1..40)) {
            let x = FrequencyHoppingSequence::new(5, symbols).unwrap();
            let back = dss_to_fhs(&fhs_to_dss(&x)).unwrap();
            prop_assert_eq!(
                back.relabeled_by_first_occurrence(),
                x.relabeled_by_first_occurrence()
            );
        }

        #[test]
        fn rate_one_round_trip(symbols in proptest::collection::vec(0u32..4, 1..40)) {
            let d = FrequencyHoppingSequence::new(4, symbols).unwrap().to_dss();
            prop_assert!(fhs_to_dss(&dss_to_fhs(&d).unwrap()).same_family(&d));
        }
    }
}
