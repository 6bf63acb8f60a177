//! Finite field arithmetic for F_q, q = p^m <= 2^16.
//!
//! Extension fields are F_p[x] modulo a canonical irreducible polynomial: the
//! first monic irreducible of degree m when candidates are ordered by reading
//! their non-leading coefficients as a base-p integer (most significant
//! coefficient first).  That rule is deterministic, so every run of the
//! library agrees on the element encoding.  An element is encoded as the
//! integer sum c_i * p^i of its coefficient vector, which makes 0 and 1 the
//! additive and multiplicative identities in every field.
//!
//! Small fields (q <= 256) precompute full addition and multiplication
//! tables; larger ones store discrete log/exp tables for a fixed primitive
//! element and add coefficient-wise.

use crate::{Error, Result};
use std::sync::Arc;

const FULL_TABLE_LIMIT: u64 = 256;
const MAX_ORDER: u64 = 1 << 16;

/// Splits q into (p, m) with p prime and q = p^m, m >= 1.
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut m = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return (rest == 1).then_some((p, m));
        }
        p += 1;
    }
    Some((q, 1))
}

fn is_prime(x: u64) -> bool {
    matches!(prime_power_decompose(x), Some((_, 1)))
}

/// Coefficients of the integer-encoded polynomial, lowest degree first.
fn coeffs_of(mut value: u64, p: u64) -> Vec<u16> {
    let mut out = Vec::new();
    while value > 0 {
        out.push((value % p) as u16);
        value /= p;
    }
    out
}

fn trim(poly: &mut Vec<u16>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

fn poly_rem(mut a: Vec<u16>, b: &[u16], p: u64) -> Vec<u16> {
    debug_assert!(b.last().is_some_and(|&c| c != 0));
    let lead_inv = mod_inv(*b.last().unwrap() as u64, p);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = (*a.last().unwrap() as u64 * lead_inv) % p;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor * bc as u64) % p;
            let cur = a[shift + i] as u64;
            a[shift + i] = ((cur + p - sub) % p) as u16;
        }
        trim(&mut a);
    }
    a
}

fn poly_mul_rem(a: &[u16], b: &[u16], modulus: &[u16], p: u64) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        for (j, &bc) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ac as u64 * bc as u64) % p;
        }
    }
    let prod: Vec<u16> = prod.into_iter().map(|c| c as u16).collect();
    poly_rem(prod, modulus, p)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    debug_assert!(!a.is_multiple_of(p));
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn encode_poly(coeffs: &[u16], p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p + c as u64)
}

/// True if the monic polynomial has no monic divisor of degree in 1..=deg/2.
fn is_irreducible(poly: &[u16], p: u64) -> bool {
    let deg = poly.len() - 1;
    for t in 1..=deg / 2 {
        let mut divisor_id = 0u64;
        let count = p.pow(t as u32);
        while divisor_id < count {
            let mut divisor = coeffs_of(divisor_id, p);
            divisor.resize(t, 0);
            divisor.push(1);
            if poly_rem(poly.to_vec(), &divisor, p).is_empty() {
                return false;
            }
            divisor_id += 1;
        }
    }
    true
}

fn canonical_modulus(p: u64, m: u32) -> Vec<u16> {
    let count = p.pow(m);
    for id in 0..count {
        let mut candidate = coeffs_of(id, p);
        candidate.resize(m as usize, 0);
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

enum Repr {
    Full {
        add: Vec<u16>,
        mul: Vec<u16>,
        inv: Vec<u16>,
        neg: Vec<u16>,
    },
    LogExp {
        log: Vec<u16>,
        exp: Vec<u16>,
    },
}

/// A concrete field F_q with its canonical modulus and arithmetic tables.
///
/// Raw operations work on `u16` element encodings; [`FieldElement`] wraps
/// them together with a shared `Arc<FieldSpec>` for checked mixed-field use.
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u16>,
    repr: Repr,
}

impl FieldSpec {
    /// Builds F_{p^m}.  Errors if p is not prime, m = 0, or p^m > 2^16.
    pub fn new(p: u64, m: u32) -> Result<Arc<FieldSpec>> {
        if m == 0 {
            return Err(Error::BadExtensionDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(m)))?;
        let modulus = canonical_modulus(p, m);
        let repr = if q <= FULL_TABLE_LIMIT {
            Self::build_full_tables(p, q, &modulus)
        } else {
            Self::build_log_tables(p, q, &modulus)
        };
        Ok(Arc::new(FieldSpec {
            p,
            m,
            q,
            modulus,
            repr,
        }))
    }

    /// Builds the field of the given order.  Errors if q is not a prime power.
    pub fn from_order(q: u64) -> Result<Arc<FieldSpec>> {
        let (p, m) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
        FieldSpec::new(p, m)
    }

    fn raw_add(p: u64, a: u64, b: u64) -> u64 {
        // Coefficient-wise addition of the base-p digit vectors.
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut scale = 1u64;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    fn raw_neg(p: u64, a: u64) -> u64 {
        let mut a = a;
        let mut out = 0u64;
        let mut scale = 1u64;
        while a > 0 {
            out += (p - a % p) % p * scale;
            a /= p;
            scale *= p;
        }
        out
    }

    fn raw_mul(p: u64, modulus: &[u16], a: u64, b: u64) -> u64 {
        let prod = poly_mul_rem(&coeffs_of(a, p), &coeffs_of(b, p), modulus, p);
        encode_poly(&prod, p)
    }

    fn build_full_tables(p: u64, q: u64, modulus: &[u16]) -> Repr {
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..q {
            neg[a as usize] = Self::raw_neg(p, a) as u16;
            for b in a..q {
                let s = Self::raw_add(p, a, b) as u16;
                let m = Self::raw_mul(p, modulus, a, b) as u16;
                add[(a * q + b) as usize] = s;
                add[(b * q + a) as usize] = s;
                mul[(a * q + b) as usize] = m;
                mul[(b * q + a) as usize] = m;
                if m == 1 {
                    inv[a as usize] = b as u16;
                    inv[b as usize] = a as u16;
                }
            }
        }
        Repr::Full { add, mul, inv, neg }
    }

    fn build_log_tables(p: u64, q: u64, modulus: &[u16]) -> Repr {
        let order = q - 1;
        let factors = distinct_prime_factors(order);
        let pow = |base: u64, mut e: u64| -> u64 {
            let mut acc = 1u64;
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = Self::raw_mul(p, modulus, acc, b);
                }
                b = Self::raw_mul(p, modulus, b, b);
                e >>= 1;
            }
            acc
        };
        let generator = (2..q)
            .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut log = vec![0u16; q as usize];
        let mut exp = vec![0u16; 2 * order as usize];
        let mut acc = 1u64;
        for e in 0..order {
            exp[e as usize] = acc as u16;
            exp[(e + order) as usize] = acc as u16;
            log[acc as usize] = e as u16;
            acc = Self::raw_mul(p, modulus, acc, generator);
        }
        debug_assert_eq!(acc, 1);
        Repr::LogExp { log, exp }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, lowest degree first, leading coefficient included.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// The modulus rendered as a polynomial in x, e.g. "x^2 + x + 1".
    pub fn modulus_string(&self) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (deg, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && deg > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let var = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{deg}"),
            };
            terms.push(format!("{coeff}{var}"));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    fn same_field(&self, other: &FieldSpec) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        debug_assert!((a as u64) < self.q && (b as u64) < self.q);
        match &self.repr {
            Repr::Full { add, .. } => add[a as usize * self.q as usize + b as usize],
            Repr::LogExp { .. } => Self::raw_add(self.p, a as u64, b as u64) as u16,
        }
    }

    pub fn neg(&self, a: u16) -> u16 {
        debug_assert!((a as u64) < self.q);
        match &self.repr {
            Repr::Full { neg, .. } => neg[a as usize],
            Repr::LogExp { .. } => Self::raw_neg(self.p, a as u64) as u16,
        }
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        debug_assert!((a as u64) < self.q && (b as u64) < self.q);
        match &self.repr {
            Repr::Full { mul, .. } => mul[a as usize * self.q as usize + b as usize],
            Repr::LogExp { log, exp } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[log[a as usize] as usize + log[b as usize] as usize]
                }
            }
        }
    }

    /// Multiplicative inverse; errors on 0.
    pub fn inv(&self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        debug_assert!((a as u64) < self.q);
        Ok(match &self.repr {
            Repr::Full { inv, .. } => inv[a as usize],
            Repr::LogExp { log, exp } => {
                let order = (self.q - 1) as usize;
                exp[(order - log[a as usize] as usize) % order]
            }
        })
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        let mut acc = 1u16;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Wraps an encoded value as a checked element of this field.
    pub fn element(self: &Arc<Self>, value: u64) -> Result<FieldElement> {
        if value >= self.q {
            return Err(Error::InvalidParameter(format!(
                "element encoding {value} out of range for a field of order {}",
                self.q
            )));
        }
        Ok(FieldElement {
            spec: Arc::clone(self),
            value: value as u16,
        })
    }
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus_string())
            .finish()
    }
}

fn distinct_prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// An element of a specific field instance.
///
/// All binary operations check that both operands come from the same field
/// (same characteristic, degree, and modulus) and error otherwise.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: u16,
}

impl FieldElement {
    pub fn value(&self) -> u16 {
        self.value
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.spec.same_field(&other.spec) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.add(self.value, other.value),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.sub(self.value, other.value),
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.mul(self.value, other.value),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.neg(self.value),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.inv(self.value)?,
        })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.spec.same_field(&other.spec)
    }
}

impl Eq for FieldElement {}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@F{}", self.value, self.spec.q)
    }
}
