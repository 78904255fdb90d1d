//! Reproduction of the published parameter tables as CSV.
//!
//! Every row is constructed and verified again right before emission, so a
//! table that prints is a table that checks out.

use rayon::prelude::*;

use crate::constructions::{paley_dss, PrimeForm};
use crate::dss::{Dss, Rate};
use crate::error::{Error, Result};
use crate::verify::verify;

pub const CSV_HEADER: &str = "n,v,m,q,rho,redundancy_rate,construction";

/// `(form, n)` for every cyclotomic series row, in published order.
pub const TABLE1: [(PrimeForm, u64); 15] = [
    (PrimeForm::Quartic, 1),
    (PrimeForm::Quartic, 4),
    (PrimeForm::Quartic, 5),
    (PrimeForm::Quartic, 6),
    (PrimeForm::Quartic, 9),
    (PrimeForm::Quartic, 10),
    (PrimeForm::SexticTriple, 1),
    (PrimeForm::SexticTriple, 3),
    (PrimeForm::SexticTriple, 4),
    (PrimeForm::SexticTriple, 6),
    (PrimeForm::SexticTriple, 8),
    (PrimeForm::SexticTriple, 10),
    (PrimeForm::SexticPair, 1),
    (PrimeForm::SexticPair, 2),
    (PrimeForm::SexticPair, 6),
];

/// Primes used for the default Paley rows.
pub const PALEY_PRIMES: [u64; 4] = [7, 11, 19, 23];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub v: u64,
    pub m: u64,
    pub q: u64,
    pub rho: u64,
    pub rate: Rate,
    pub construction: &'static str,
}

impl TableRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n, self.v, self.m, self.q, self.rho, self.rate, self.construction
        )
    }
}

fn row_from(d: &Dss, n: u64, construction: &'static str) -> Result<TableRow> {
    let report = verify(d)?;
    let m = match (report.is_perfect, report.set_size()) {
        (true, Some(m)) => m as u64,
        _ => {
            return Err(Error::ClaimMismatch {
                claimed: format!("{} perfect regular", d.provenance()),
                verified: format!(
                    "perfect={}, regular={}",
                    report.is_perfect, report.is_regular
                ),
            })
        }
    };
    if d.claimed_index() != Some(report.index) {
        return Err(Error::ClaimMismatch {
            claimed: format!("{:?}", d.claimed_index()),
            verified: report.index.to_string(),
        });
    }
    Ok(TableRow {
        n,
        v: report.v,
        m,
        q: report.q as u64,
        rho: report.index,
        rate: report.rate,
        construction,
    })
}

/// The fifteen cyclotomic-series rows, built in parallel, emitted in order.
pub fn table1() -> Result<Vec<TableRow>> {
    TABLE1
        .par_iter()
        .map(|&(form, n)| row_from(&form.construct(n)?, n, form.method()))
        .collect()
}

/// Paley-type rows `(4n+3, m, (2n+1)/m, (2n+1-m)/2)` with `n = (p-3)/4`.
///
/// `q = None` selects every `q > 1` with `2q | p - 1`, ascending.
pub fn paley_rows(p: u64, q: Option<u64>) -> Result<Vec<TableRow>> {
    if p < 3 {
        return Err(Error::NotPrime(p));
    }
    let qs: Vec<u64> = match q {
        Some(q) => vec![q],
        None => (2..=(p - 1) / 2).filter(|q| (p - 1).is_multiple_of(2 * q)).collect(),
    };
    qs.into_par_iter()
        .map(|q| row_from(&paley_dss(p, q)?, (p - 3) / 4, "paley"))
        .collect()
}

/// Paley rows for several primes, grouped by prime.
pub fn paley_table(primes: &[u64]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        rows.extend(paley_rows(p, None)?);
    }
    Ok(rows)
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}
