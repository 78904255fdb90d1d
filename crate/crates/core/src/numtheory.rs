//! Prime-field machinery: primality, primitive roots, cyclotomic classes and
//! cyclotomic numbers, and the CRT isomorphism `Z_v × Z_w → Z_vw`.

use num_integer::Integer;

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// First twelve primes as witnesses: deterministic for every n < 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Distinct prime factors by trial division.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// Smallest primitive root of the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .ok_or(Error::NotPrime(p))
}

/// The `f`-th cyclotomic classes of `F_p` for the smallest primitive root
/// `α`: `C_i = {α^(i + t f)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicTable {
    p: u64,
    f: u64,
    generator: u64,
    class_of: Vec<u32>,
}

impl CyclotomicTable {
    /// Sentinel stored in `class_of[0]`.
    pub const ZERO: u32 = u32::MAX;

    pub fn new(p: u64, f: u64) -> Result<Self> {
        require_odd_prime(p)?;
        if f == 0 || !(p - 1).is_multiple_of(f) {
            return Err(Error::OrderDoesNotDivide {
                order: f,
                modulus: p,
            });
        }
        let generator = primitive_root(p)?;
        let mut class_of = vec![Self::ZERO; p as usize];
        let mut x = 1u64;
        for k in 0..p - 1 {
            class_of[x as usize] = (k % f) as u32;
            x = mul_mod(x, generator, p);
        }
        Ok(CyclotomicTable {
            p,
            f,
            generator,
            class_of,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of classes.
    pub fn order(&self) -> u64 {
        self.f
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Members per class, `(p - 1) / f`.
    pub fn class_size(&self) -> u64 {
        (self.p - 1) / self.f
    }

    /// Class index of a nonzero residue; `None` for zero.
    pub fn class_of(&self, x: u64) -> Option<u32> {
        match self.class_of[(x % self.p) as usize] {
            Self::ZERO => None,
            c => Some(c),
        }
    }

    /// Members of `C_i` in ascending order.
    pub fn class(&self, i: u64) -> Vec<u64> {
        let i = (i % self.f) as u32;
        (1..self.p)
            .filter(|&x| self.class_of[x as usize] == i)
            .collect()
    }

    /// `(i, j)_f = |(C_i + 1) ∩ C_j|`, the number of `x ∈ C_i` with
    /// `x + 1 ∈ C_j`.
    pub fn cyclotomic_number(&self, i: u64, j: u64) -> u64 {
        let (i, j) = ((i % self.f) as u32, (j % self.f) as u32);
        // Walk C_i as α^i · (α^f)^t.
        let step = pow_mod(self.generator, self.f, self.p);
        let mut x = pow_mod(self.generator, i as u64, self.p);
        let mut count = 0;
        for _ in 0..self.class_size() {
            let next = x + 1;
            if next != self.p && self.class_of[next as usize] == j {
                count += 1;
            }
            x = mul_mod(x, step, self.p);
        }
        count
    }
}

/// The ring isomorphism `Z_v × Z_w → Z_vw` for coprime `v`, `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crt {
    v: u64,
    w: u64,
    // v^{-1} mod w
    v_inv: u64,
}

impl Crt {
    pub fn new(v: u64, w: u64) -> Result<Self> {
        if v == 0 || w == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let g = (v as i128).extended_gcd(&(w as i128));
        if g.gcd != 1 {
            return Err(Error::NotCoprime(v, w));
        }
        if (v as u128) * (w as u128) > crate::dss::MAX_MODULUS as u128 {
            return Err(Error::InvalidModulus(u64::MAX));
        }
        let v_inv = g.x.rem_euclid(w as i128) as u64;
        Ok(Crt { v, w, v_inv })
    }

    pub fn modulus(&self) -> u64 {
        self.v * self.w
    }

    /// `(a, b) ↦ x` with `x ≡ a (mod v)` and `x ≡ b (mod w)`.
    pub fn combine(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (a % self.v, b % self.w);
        let t = mul_mod((b + self.w - a % self.w) % self.w, self.v_inv, self.w);
        a + self.v * t
    }

    pub fn split(&self, x: u64) -> (u64, u64) {
        (x % self.v, x % self.w)
    }
}

/// Free-function form of [`Crt::new`].
pub fn crt_map(v: u64, w: u64) -> Result<Crt> {
    Crt::new(v, w)
}

pub fn cyclotomic_classes(p: u64, f: u64) -> Result<CyclotomicTable> {
    CyclotomicTable::new(p, f)
}
