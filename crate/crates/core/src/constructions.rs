//! Direct constructions over prime fields.
//!
//! Every family returned here has been checked against its exhaustive
//! spectrum before it leaves the function, and carries the verified index as
//! its claimed index.

use std::fmt;
use std::str::FromStr;

use crate::dss::{Dss, FrequencyHoppingSequence};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, CyclotomicTable};
use crate::verify::{verify, VerificationReport};

/// `min_i Σ_{j<q} Σ_{1≤a<q} (i + jf, af)_{fq}` over `i ∈ [0, f)`.
pub fn cyclotomic_index_formula(table: &CyclotomicTable, f: u64, q: u64) -> u64 {
    (0..f)
        .map(|i| {
            (0..q)
                .flat_map(|j| (1..q).map(move |a| (i + j * f, a * f)))
                .map(|(x, y)| table.cyclotomic_number(x, y))
                .sum::<u64>()
        })
        .min()
        .unwrap_or(0)
}

fn check_cyclotomic_parameters(p: u64, f: u64, q: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = f.checked_mul(q).unwrap_or(0);
    if order == 0 || !(p - 1).is_multiple_of(order) {
        return Err(Error::OrderDoesNotDivide { order, modulus: p });
    }
    Ok(())
}

pub(crate) fn cyclotomic_dss_with_report(
    p: u64,
    f: u64,
    q: u64,
) -> Result<(Dss, VerificationReport)> {
    check_cyclotomic_parameters(p, f, q)?;
    let table = CyclotomicTable::new(p, f * q)?;
    let sets = (0..q).map(|i| table.class(f * i)).collect();
    let formula = cyclotomic_index_formula(&table, f, q);
    let dss = Dss::new(p, sets)?;
    let report = verify(&dss)?;
    if report.index != formula {
        return Err(Error::IndexFormulaMismatch {
            formula,
            spectrum: report.index,
        });
    }
    let dss = dss
        .with_provenance(format!("cyclotomic(p={p}, f={f}, q={q})"))
        .with_claimed_index(Some(report.index));
    Ok((dss, report))
}

/// The classes `C_0, C_f, ..., C_{(q-1)f}` of order `fq` over `F_p`.
///
/// The index predicted by cyclotomic numbers is compared with the
/// exhaustive spectrum; disagreement is [`Error::IndexFormulaMismatch`].
pub fn cyclotomic_dss(p: u64, f: u64, q: u64) -> Result<Dss> {
    Ok(cyclotomic_dss_with_report(p, f, q)?.0)
}

fn expect_perfect_regular(
    report: &VerificationReport,
    index: u64,
    what: impl Fn() -> String,
) -> Result<()> {
    if report.is_perfect && report.is_regular && report.index == index {
        return Ok(());
    }
    Err(Error::ClaimMismatch {
        claimed: format!("{} perfect regular, index {index}", what()),
        verified: format!(
            "perfect={}, regular={}, index {}",
            report.is_perfect, report.is_regular, report.index
        ),
    })
}

/// A prime-producing quadratic form `a n² + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeForm {
    /// `16n² + 1`: two quartic classes.
    Quartic,
    /// `12n² + 1`: three sextic classes.
    SexticTriple,
    /// `108n² + 1`: two sextic classes.
    SexticPair,
}

impl PrimeForm {
    pub const ALL: [PrimeForm; 3] = [PrimeForm::Quartic, PrimeForm::SexticTriple, PrimeForm::SexticPair];

    pub fn coefficient(self) -> u64 {
        match self {
            PrimeForm::Quartic => 16,
            PrimeForm::SexticTriple => 12,
            PrimeForm::SexticPair => 108,
        }
    }

    /// `a n² + 1`, or `None` on overflow.
    pub fn eval(self, n: u64) -> Option<u64> {
        n.checked_mul(n)?
            .checked_mul(self.coefficient())?
            .checked_add(1)
    }

    /// Name of the construction built on this form.
    pub fn method(self) -> &'static str {
        match self {
            PrimeForm::Quartic => "quartic-pair",
            PrimeForm::SexticTriple => "sextic-triple",
            PrimeForm::SexticPair => "sextic-pair",
        }
    }

    pub fn construct(self, n: u64) -> Result<Dss> {
        match self {
            PrimeForm::Quartic => quartic_pair(n),
            PrimeForm::SexticTriple => sextic_triple(n),
            PrimeForm::SexticPair => sextic_pair(n),
        }
    }
}

impl fmt::Display for PrimeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}n^2+1", self.coefficient())
    }
}

impl FromStr for PrimeForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "16n^2+1" | "16n2+1" | "quartic" | "quartic-pair" => Ok(PrimeForm::Quartic),
            "12n^2+1" | "12n2+1" | "sextic-triple" => Ok(PrimeForm::SexticTriple),
            "108n^2+1" | "108n2+1" | "sextic-pair" => Ok(PrimeForm::SexticPair),
            _ => Err(Error::InvalidParameter(format!("unknown prime form '{s}'"))),
        }
    }
}

fn prime_of_form(form: PrimeForm, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let p = form
        .eval(n)
        .ok_or_else(|| Error::InvalidParameter(format!("{form} overflows at n = {n}")))?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

fn series(form: PrimeForm, n: u64, f: u64, q: u64, index: u64) -> Result<Dss> {
    let p = prime_of_form(form, n)?;
    let (dss, report) = cyclotomic_dss_with_report(p, f, q)?;
    expect_perfect_regular(&report, index, || format!("{}(n={n})", form.method()))?;
    Ok(dss.with_provenance(format!("{}(n={n})", form.method())))
}

/// Perfect regular `DSS(16n²+1, 4n², 2, 2n²)` from `C_0^4`, `C_2^4`.
pub fn quartic_pair(n: u64) -> Result<Dss> {
    series(PrimeForm::Quartic, n, 2, 2, 2 * n * n)
}

/// Perfect regular `DSS(12n²+1, 2n², 3, 2n²)` from `C_0^6`, `C_2^6`, `C_4^6`.
pub fn sextic_triple(n: u64) -> Result<Dss> {
    series(PrimeForm::SexticTriple, n, 2, 3, 2 * n * n)
}

/// Perfect regular `DSS(108n²+1, 18n², 2, 6n²)` from `C_0^6`, `C_3^6`.
pub fn sextic_pair(n: u64) -> Result<Dss> {
    series(PrimeForm::SexticPair, n, 3, 2, 6 * n * n)
}

/// All `n ≤ n_max` for which the form is prime, ascending.
pub fn scan_prime_forms(form: PrimeForm, n_max: u64) -> Vec<u64> {
    (1..=n_max)
        .map_while(|n| form.eval(n).map(|p| (n, p)))
        .filter(|&(_, p)| is_prime(p))
        .map(|(n, _)| n)
        .collect()
}

fn require_three_mod_four(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 3 {
        return Err(Error::WrongResidueClass {
            value: p,
            residue: 3,
            modulus: 4,
        });
    }
    Ok(())
}

/// Paley-type `DSS(p, m, q, (p-2m-1)/4)` for `p ≡ 3 (mod 4)`, `p = 2mq + 1`,
/// forming a difference family of index `(m-1)/2`.
pub fn paley_dss(p: u64, q: u64) -> Result<Dss> {
    require_three_mod_four(p)?;
    let (dss, report) = cyclotomic_dss_with_report(p, 2, q)?;
    let m = (p - 1) / (2 * q);
    expect_perfect_regular(&report, (p - 2 * m - 1) / 4, || format!("paley(p={p}, q={q})"))?;
    let lambda = (m - 1) / 2;
    if report.df_lambda != Some(lambda) {
        return Err(Error::ClaimMismatch {
            claimed: format!("difference family of index {lambda}"),
            verified: format!("{:?}", report.df_lambda),
        });
    }
    Ok(dss.with_provenance(format!("paley(p={p}, q={q})")))
}

/// Quadratic residues of `p ≡ 3 (mod 4)`: a `DS(p, (p-1)/2, (p-3)/4)`.
pub fn qr_difference_set(p: u64) -> Result<Dss> {
    require_three_mod_four(p)?;
    let table = CyclotomicTable::new(p, 2)?;
    let dss = Dss::new(p, vec![table.class(0)])?;
    let report = verify(&dss)?;
    let lambda = (p - 3) / 4;
    if report.df_lambda != Some(lambda) {
        return Err(Error::ClaimMismatch {
            claimed: format!("DS({p}, {}, {lambda})", (p - 1) / 2),
            verified: format!("inner spectrum constant: {:?}", report.df_lambda),
        });
    }
    Ok(dss
        .with_provenance(format!("qr-ds(p={p})"))
        .with_claimed_index(Some(report.index)))
}

/// `(0, 1, ..., v-1)`: `v` singleton supports, index `v`.
pub fn identity_fhs(v: u64) -> Result<FrequencyHoppingSequence> {
    if v < 2 || v > u32::MAX as u64 {
        return Err(Error::InvalidParameter(format!(
            "identity sequence needs 2 <= v <= 2^32 - 1, got {v}"
        )));
    }
    FrequencyHoppingSequence::new(v as u32, (0..v as u32).collect())
}

/// Period-`p` sequence whose supports are the `q` cyclotomic classes of
/// order `q` (symbols `0..q`) plus `{0}` (symbol `q`).
pub fn cyclotomic_fhs(p: u64, q: u64) -> Result<FrequencyHoppingSequence> {
    check_cyclotomic_parameters(p, 1, q)?;
    let table = CyclotomicTable::new(p, q)?;
    let symbols = (0..p)
        .map(|x| table.class_of(x).unwrap_or(q as u32))
        .collect();
    FrequencyHoppingSequence::new(q as u32 + 1, symbols)
}
