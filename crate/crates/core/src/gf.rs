//! Arithmetic in GF(p^m) for small prime powers (q <= 2^16).
//!
//! Elements are stored by their canonical integer encoding: the residue
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` modulo the field's modulus maps to
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. All serialized matrices use this
//! encoding. The modulus is the monic irreducible of degree `m` with the
//! smallest encoding, so two independent builds agree on every table.
//!
//! Multiplication goes through log/exp tables built from the primitive
//! element with the smallest encoding.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds 2^16")]
    TooLarge { p: u64, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("square roots need characteristic 2, field has characteristic {0}")]
    OddCharacteristic(u32),
    #[error("element {value} out of range for GF({q})")]
    OutOfRange { value: u64, q: u32 },
    #[error("operands from different fields GF({0}) and GF({1})")]
    Mismatch(u32, u32),
    #[error("modulus {found:?} is not the canonical modulus {expected:?}")]
    NonCanonicalModulus { found: Vec<u32>, expected: Vec<u32> },
}

/// Serializable description of a field: `{p, m, modulus}` with the modulus
/// given as coefficients from low to high degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }
}

/// A field element by canonical integer encoding.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Fe> for u32 {
    fn from(x: Fe) -> u32 {
        x.0
    }
}

struct Tables {
    spec: FieldSpec,
    q: u32,
    generator: Fe,
    // exp has length 2(q-1) so that log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^m). Cheap to clone; all clones share the tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.p() == other.p() && self.m() == other.m())
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Factor `q = p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `modulus` over GF(p).
/// Coefficient vectors are low-to-high.
fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (i, &c) in modulus[..deg].iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - (lead * c) % p)) % p;
            }
        }
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    // Trial division by every monic polynomial of degree 1..=m/2.
    for deg in 1..=m / 2 {
        let count = p.pow(deg as u32);
        for low in 0..count {
            let mut divisor = digits(low, p, deg as u32);
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `m` over GF(p) with the smallest
/// canonical encoding.
pub fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = p.pow(m);
    for low in 0..count {
        let mut cand = digits(low, p, m);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Build GF(p^m) with its canonical modulus.
    pub fn new(p: u64, m: u32) -> Result<Field, FieldError> {
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(FieldError::TooLarge { p, m });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = canonical_modulus(p, m);
        let spec = FieldSpec { p, m, modulus };

        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, m);
            let db = digits(b, p, m);
            let mut prod = vec![0u32; 2 * m as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            encode(&poly_rem(&prod, &spec.modulus, p), p)
        };

        let order = q - 1;
        let mut generator = None;
        for g in 1..q {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow_mul(x, g);
                k += 1;
                if k > order {
                    break;
                }
            }
            if x == 1 && k == order {
                generator = Some(g);
                break;
            }
        }
        let generator = generator.expect("multiplicative group of a field is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            log[x as usize] = i;
            x = slow_mul(x, generator);
        }
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }

        Ok(Field {
            inner: Arc::new(Tables {
                spec,
                q,
                generator: Fe(generator),
                exp,
                log,
            }),
        })
    }

    /// Build the field of order `q`.
    pub fn with_order(q: u64) -> Result<Field, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Field::new(p, m)
    }

    /// Rebuild a field from its serialized form, rejecting non-canonical moduli.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FieldError> {
        let field = Field::new(spec.p as u64, spec.m)?;
        if field.spec().modulus != spec.modulus {
            return Err(FieldError::NonCanonicalModulus {
                found: spec.modulus.clone(),
                expected: field.spec().modulus.clone(),
            });
        }
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.spec.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.spec.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> Fe {
        self.inner.generator
    }

    pub fn element(&self, value: u64) -> Result<Fe, FieldError> {
        if value < self.q() as u64 {
            Ok(Fe(value as u32))
        } else {
            Err(FieldError::OutOfRange { value, q: self.q() })
        }
    }

    pub fn check(&self, x: Fe) -> Result<Fe, FieldError> {
        self.element(x.0 as u64)
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        digits(x.0, self.p(), self.m())
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, FieldError> {
        let p = self.p();
        if coeffs.len() > self.m() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::OutOfRange {
                value: encode(coeffs, p.max(2)) as u64,
                q: self.q(),
            });
        }
        Ok(Fe(encode(coeffs, p)))
    }

    /// All `q - 1` nonzero elements in ascending encoding.
    pub fn units(&self) -> Vec<Fe> {
        (1..self.q()).map(Fe).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q()).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        if p == 2 {
            Fe(a.0 ^ b.0)
        } else if self.m() == 1 {
            let s = a.0 + b.0;
            Fe(if s >= p { s - p } else { s })
        } else {
            let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
            while x > 0 || y > 0 {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            Fe(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p();
        if p == 2 {
            a
        } else if self.m() == 1 {
            Fe(if a.0 == 0 { 0 } else { p - a.0 })
        } else {
            let (mut x, mut out, mut place) = (a.0, 0, 1);
            while x > 0 {
                out += ((p - x % p) % p) * place;
                x /= p;
                place *= p;
            }
            Fe(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let t = &self.inner;
        Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InverseOfZero);
        }
        let t = &self.inner;
        let order = self.q() - 1;
        Ok(Fe(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let order = (self.q() - 1) as u64;
        let t = &self.inner;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        Fe(t.exp[l as usize])
    }

    /// `a^e` for any integer exponent; negative powers of zero are an error.
    pub fn pow_signed(&self, a: Fe, e: i64) -> Result<Fe, FieldError> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        if a.0 == 0 {
            return Err(FieldError::InverseOfZero);
        }
        let order = (self.q() - 1) as i64;
        Ok(self.pow(a, e.rem_euclid(order) as u64))
    }

    /// The unique square root in characteristic 2: `x^(2^(m-1))`.
    pub fn sqrt_char2(&self, x: Fe) -> Result<Fe, FieldError> {
        if self.p() != 2 {
            return Err(FieldError::OddCharacteristic(self.p()));
        }
        Ok(self.pow(x, 1u64 << (self.m() - 1)))
    }

    pub fn same_field(&self, other: &Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.q(), other.q()))
        }
    }
}
