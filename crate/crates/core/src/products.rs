//! Product constructions that lower the redundancy rate.
//!
//! * [`direct_product`]: `{Q_i × Q'_j}` mapped into `Z_{vv'}` through the CRT,
//!   for coprime moduli and perfect regular ingredients that also form
//!   difference families.
//! * [`fhs_embedding_product`]: `S_{i,x} = {v'a + x : a ∈ Q_i}` for a
//!   frequency hopping sequence `{Q_i}` over `Z_v` and a perfect DSS over
//!   `Z_{v'}` forming a difference family. No coprimality needed.
//!
//! Ingredient properties are always re-established by [`verify`]; nothing is
//! taken from metadata.

use crate::dss::{Dss, FrequencyHoppingSequence, MAX_MODULUS};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, Crt};
use crate::verify::{verify, Budget, VerificationReport};

/// A product family together with the index its construction predicts.
///
/// `dss.claimed_index()` holds the verified index, which equals
/// `predicted_index` for direct products and is at least `predicted_index`
/// for embedding products.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDss {
    pub dss: Dss,
    pub predicted_index: u64,
    pub report: VerificationReport,
}

/// Outer-difference counts of a direct product by difference class under
/// the CRT split `d ↦ (a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectProductPrediction {
    /// Count for `(0, b)`, `b ≠ 0`: `ρ' m q`.
    pub first_zero: u64,
    /// Count for `(a, 0)`, `a ≠ 0`: `ρ m' q'`.
    pub second_zero: u64,
    /// Count for `(a, b)`, both nonzero: `ρρ' + ρλ' + ρ'λ`.
    pub mixed: u64,
}

impl DirectProductPrediction {
    pub fn index(&self) -> u64 {
        self.first_zero.min(self.second_zero).min(self.mixed)
    }

    /// Predicted count for the difference with CRT components `(a, b)`.
    pub fn count_for(&self, a: u64, b: u64) -> Option<u64> {
        match (a, b) {
            (0, 0) => None,
            (0, _) => Some(self.first_zero),
            (_, 0) => Some(self.second_zero),
            _ => Some(self.mixed),
        }
    }
}

fn require_perfect_regular_df(report: &VerificationReport) -> Result<u64> {
    if !report.is_perfect {
        return Err(Error::IngredientNotPerfect(report.v));
    }
    if !report.is_regular {
        return Err(Error::IngredientNotRegular(report.v));
    }
    report.df_lambda.ok_or(Error::IngredientNotDF(report.v))
}

/// Counts predicted from two verified ingredient reports.
pub fn predict_direct_product(
    a: &VerificationReport,
    b: &VerificationReport,
) -> Result<DirectProductPrediction> {
    let lambda = require_perfect_regular_df(a)?;
    let lambda2 = require_perfect_regular_df(b)?;
    let (rho, m, q) = (a.index, a.set_size().unwrap_or(0) as u64, a.q as u64);
    let (rho2, m2, q2) = (b.index, b.set_size().unwrap_or(0) as u64, b.q as u64);
    Ok(DirectProductPrediction {
        first_zero: rho2 * m * q,
        second_zero: rho * m2 * q2,
        mixed: rho * rho2 + rho * lambda2 + rho2 * lambda,
    })
}

/// Regular `DSS(vv', mm', qq', min(ρρ'+ρλ'+ρ'λ, ρm'q', ρ'mq))`.
///
/// Sets are ordered by `(i, j)` lexicographically. The verified index must
/// equal the predicted one exactly.
pub fn direct_product(a: &Dss, b: &Dss) -> Result<ProductDss> {
    direct_product_with(a, b, &Budget::default())
}

pub fn direct_product_with(a: &Dss, b: &Dss, budget: &Budget) -> Result<ProductDss> {
    let crt = Crt::new(a.v(), b.v())?;
    let ra = verify_with_budget(a, budget)?;
    let rb = verify_with_budget(b, budget)?;
    let prediction = predict_direct_product(&ra, &rb)?;

    budget.check(crt.modulus(), a.redundancy() * b.redundancy())?;
    let sets = a
        .sets()
        .iter()
        .flat_map(|qa| {
            b.sets().iter().map(move |qb| {
                qa.iter()
                    .flat_map(|&x| qb.iter().map(move |&y| crt.combine(x, y)))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let dss = Dss::new(crt.modulus(), sets)?;
    let report = verify_with_budget(&dss, budget)?;
    let predicted_index = prediction.index();
    if report.index != predicted_index {
        return Err(Error::ClaimMismatch {
            claimed: format!("index {predicted_index}"),
            verified: format!("index {}", report.index),
        });
    }
    let dss = dss
        .with_provenance(format!(
            "direct-product[{} x {}]",
            label(a),
            label(b)
        ))
        .with_claimed_index(Some(report.index));
    Ok(ProductDss {
        dss,
        predicted_index,
        report,
    })
}

fn label(d: &Dss) -> String {
    if d.provenance().is_empty() {
        format!("Z_{}", d.v())
    } else {
        d.provenance().to_string()
    }
}

fn verify_with_budget(d: &Dss, budget: &Budget) -> Result<VerificationReport> {
    crate::verify::verify_with(d, budget)
}

/// Embeds a sequence `X` over `Z_v` into a perfect DSS `B` over `Z_{v'}`
/// forming a `DF(v', K, λ')`.
///
/// The result lives on `Z_{vv'}`, has the redundancy rate of `B`, and
/// `q · redundancy(B)` sets ordered by `i` then `x`. Its index is at least
/// `min(ρ · redundancy(B), v(λ' + ρ'))` with `ρ` the index of `X`.
pub fn fhs_embedding_product(x: &FrequencyHoppingSequence, b: &Dss) -> Result<ProductDss> {
    fhs_embedding_product_with(x, b, &Budget::default())
}

pub fn fhs_embedding_product_with(
    x: &FrequencyHoppingSequence,
    b: &Dss,
    budget: &Budget,
) -> Result<ProductDss> {
    if b.v() < 2 {
        return Err(Error::InvalidParameter(format!(
            "second ingredient needs modulus at least 2, got {}",
            b.v()
        )));
    }
    let rb = verify_with_budget(b, budget)?;
    if !rb.is_perfect {
        return Err(Error::IngredientNotPerfect(b.v()));
    }
    let lambda2 = rb.df_lambda.ok_or(Error::IngredientNotDF(b.v()))?;

    let xa = x.to_dss();
    let rx = verify_with_budget(&xa, budget)?;
    let (v, v2) = (x.v(), b.v());
    let modulus = v
        .checked_mul(v2)
        .filter(|&m| m <= MAX_MODULUS)
        .ok_or(Error::InvalidModulus(u64::MAX))?;
    budget.check(modulus, v * b.redundancy())?;

    let mut offsets: Vec<u64> = b.sets().iter().flatten().copied().collect();
    offsets.sort_unstable();
    let sets = xa
        .sets()
        .iter()
        .flat_map(|qi| {
            offsets
                .iter()
                .map(move |&off| qi.iter().map(|&a| v2 * a + off).collect::<Vec<_>>())
        })
        .collect();
    let dss = Dss::new(modulus, sets)?;
    let report = verify_with_budget(&dss, budget)?;
    let predicted_index = (rx.index * b.redundancy()).min(v * (lambda2 + rb.index));
    if report.index < predicted_index {
        return Err(Error::ClaimMismatch {
            claimed: format!("index at least {predicted_index}"),
            verified: format!("index {}", report.index),
        });
    }
    let dss = dss
        .with_provenance(format!("fhs-embed[fhs(v={v}) into {}]", label(b)))
        .with_claimed_index(Some(report.index));
    Ok(ProductDss {
        dss,
        predicted_index,
        report,
    })
}

/// Embedding product with a cyclic difference set `DS(v', m', λ')`, read as
/// a perfect regular single-set family of index 0. Predicted index
/// `min(ρ m', v λ')`, redundancy rate `m'/v'`.
pub fn fhs_ds_product(x: &FrequencyHoppingSequence, d: &Dss) -> Result<ProductDss> {
    if d.q() != 1 {
        return Err(Error::NotSingleSet(d.q()));
    }
    if verify(d)?.df_lambda.is_none() {
        return Err(Error::NotDifferenceSet(d.v()));
    }
    let mut product = fhs_embedding_product(x, d)?;
    product.dss = product.dss.clone().with_provenance(format!(
        "fhs-ds[fhs(v={}) with {}]",
        x.v(),
        label(d)
    ));
    Ok(product)
}

/// Parameters `(v, m, q, ρ)` of a regular family, predicted without
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictedParams {
    pub v: u128,
    pub m: u128,
    pub q: u128,
    /// Closed-form index.
    pub index: u128,
    /// `min(ρρ'+ρλ'+ρ'λ, ρm'q', ρ'mq)` recomputed from the ingredient
    /// parameters.
    pub min_index: u128,
}

impl PredictedParams {
    /// Whether the closed form picks the minimum branch.
    pub fn closed_form_is_min(&self) -> bool {
        self.index == self.min_index
    }
}

#[allow(clippy::too_many_arguments)]
fn direct_min(rho: u128, lambda: u128, m: u128, q: u128, rho2: u128, lambda2: u128, m2: u128, q2: u128) -> u128 {
    (rho * rho2 + rho * lambda2 + rho2 * lambda)
        .min(rho * m2 * q2)
        .min(rho2 * m * q)
}

fn paley_side(v: u64, q: u64) -> Result<u64> {
    if v == 2 || !is_prime(v) {
        return Err(Error::NotPrime(v));
    }
    if v % 4 != 3 {
        return Err(Error::WrongResidueClass {
            value: v,
            residue: 3,
            modulus: 4,
        });
    }
    if q == 0 || !(v - 1).is_multiple_of(2 * q) {
        return Err(Error::OrderDoesNotDivide {
            order: 2 * q,
            modulus: v,
        });
    }
    Ok((v - 1) / (2 * q))
}

/// Direct product of two Paley-type families over distinct primes
/// `v = 2mq + 1`, `v' = 2m'q' + 1`, both `≡ 3 (mod 4)`.
pub fn predict_paley_product(v: u64, q: u64, v2: u64, q2: u64) -> Result<PredictedParams> {
    let m = paley_side(v, q)? as u128;
    let m2 = paley_side(v2, q2)? as u128;
    if v == v2 {
        return Err(Error::NotCoprime(v, v2));
    }
    let (q, q2) = (q as u128, q2 as u128);
    let numerator = m * (m2 - 1) * (q - 1) + (m - 1) * m2 * (q2 - 1) + m * m2 * (q - 1) * (q2 - 1);
    let (rho, rho2) = ((v as u128 - 2 * m - 1) / 4, (v2 as u128 - 2 * m2 - 1) / 4);
    let (lambda, lambda2) = ((m - 1) / 2, (m2 - 1) / 2);
    Ok(PredictedParams {
        v: v as u128 * v2 as u128,
        m: m * m2,
        q: q * q2,
        index: numerator / 4,
        min_index: direct_min(rho, lambda, m, q, rho2, lambda2, m2, q2),
    })
}

/// Whether `(p, s)` indexes one of the known hyperplane partitions of
/// `PG(2s, p)`.
pub fn hyperplane_admissible(p: u64, s: u32) -> bool {
    match p {
        2 => (2..=5).contains(&s),
        3 => (2..=3).contains(&s),
        5 | 8 | 9 => s == 2,
        _ => false,
    }
}

/// Direct product of two hyperplane-partition families
/// `DSS((p^{2s+1}-1)/(p-1), p+1, (p^{2s}-1)/(p²-1), (p^{2s-1}-p)/(p-1))`,
/// each forming a `DF(·, p+1, 1)`. Parameters only.
pub fn predict_hyperplane_product(p: u64, s: u32, p2: u64, s2: u32) -> Result<PredictedParams> {
    for (p, s) in [(p, s), (p2, s2)] {
        if !hyperplane_admissible(p, s) {
            return Err(Error::NotAdmissible { p, s });
        }
    }
    let side = |p: u64, s: u32| {
        let p = p as u128;
        let v = (p.pow(2 * s + 1) - 1) / (p - 1);
        let m = p + 1;
        let q = (p.pow(2 * s) - 1) / (p * p - 1);
        let rho = (p.pow(2 * s - 1) - p) / (p - 1);
        (v, m, q, rho)
    };
    let (v, m, q, rho) = side(p, s);
    let (v2, m2, q2, rho2) = side(p2, s2);
    if num_integer::gcd(v, v2) != 1 {
        return Err(Error::NotCoprime(v as u64, v2 as u64));
    }
    let (pp, pp2) = (p as u128, p2 as u128);
    let index = (pp.pow(2 * s - 1) - 1) * (pp2.pow(2 * s2 - 1) - 1) / ((pp - 1) * (pp2 - 1)) - 1;
    Ok(PredictedParams {
        v: v * v2,
        m: m * m2,
        q: q * q2,
        index,
        min_index: direct_min(rho, 1, m, q, rho2, 1, m2, q2),
    })
}
