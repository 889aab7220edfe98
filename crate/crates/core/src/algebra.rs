//! Arithmetic in GF(p^d).
//!
//! Elements are addressed by their *code*: the coefficient vector of the
//! polynomial-basis representation read as a base-`p` integer, lowest degree
//! first. Codes give a total order on the field that every downstream module
//! uses for canonical indexing. The hot paths take and return raw `u32` codes;
//! [`FieldElement`] wraps a code together with its field for checked use.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{d} exceeds the supported maximum 2^20")]
    TooLarge { p: u32, d: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element code {code} out of range for a field of order {q}")]
    CodeOutOfRange { code: u32, q: u32 },
    #[error("coefficient vector must have exactly {expected} entries, each below {p}")]
    BadCoefficients { expected: usize, p: u32 },
    #[error("frobenius exponent {e} must be below the extension degree {d}")]
    BadExponent { e: u32, d: u32 },
}

/// Integer helpers shared by the constructions.
pub mod arith {
    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut f = 2;
        while f * f <= n {
            if n.is_multiple_of(f) {
                return false;
            }
            f += 1;
        }
        true
    }

    /// Distinct prime divisors in increasing order.
    pub fn prime_factors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut f = 2;
        while f * f <= n {
            if n.is_multiple_of(f) {
                out.push(f);
                while n.is_multiple_of(f) {
                    n /= f;
                }
            }
            f += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// All positive divisors in increasing order.
    pub fn divisors(n: u64) -> Vec<u64> {
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut f = 1;
        while f * f <= n {
            if n.is_multiple_of(f) {
                small.push(f);
                if f * f != n {
                    large.push(n / f);
                }
            }
            f += 1;
        }
        small.extend(large.into_iter().rev());
        small
    }

    pub fn ipow(base: u64, exp: u32) -> u64 {
        base.pow(exp)
    }

    /// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
    pub fn prime_power(n: u64) -> Option<(u64, u32)> {
        if n < 2 {
            return None;
        }
        let factors = prime_factors(n);
        if factors.len() != 1 {
            return None;
        }
        let p = factors[0];
        let mut e = 0;
        let mut m = n;
        while m > 1 {
            m /= p;
            e += 1;
        }
        Some((p, e))
    }
}

struct FieldData {
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[k] = primitive^k`, stored twice over so that log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field GF(p^d), immutable and cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

// Dense polynomials over GF(p), coefficients low to high, no trailing zeros.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&poly_trim(prod), m, p)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Irreducibility by trial division against every monic polynomial of degree at most `deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    let deg = match poly.len() {
        0 => return false,
        n => n - 1,
    };
    if deg == 0 {
        return false;
    }
    for dd in 1..=deg / 2 {
        let count = (p as u64).pow(dd as u32);
        for low in 0..count {
            let mut divisor = digits(low, p, dd);
            divisor.push(1);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `d` over GF(p) whose coefficient
/// vector is smallest when read as a base-`p` integer.
pub fn smallest_irreducible(p: u32, d: u32) -> Vec<u32> {
    let count = (p as u64).pow(d);
    for low in 0..count {
        let mut poly = digits(low, p, d as usize);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// GF(p^d) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, d: u32) -> Result<Self, AlgebraError> {
        if !arith::is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p));
        }
        if d < 1 {
            return Err(AlgebraError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(d).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or(AlgebraError::TooLarge { p, d })? as u32;
        let modulus = smallest_irreducible(p, d);

        // Smallest-code element of order q-1, found with polynomial arithmetic.
        let order = (q - 1) as u64;
        let cofactors: Vec<u64> = arith::prime_factors(order)
            .into_iter()
            .map(|l| order / l)
            .collect();
        let poly_pow = |g: &[u32], mut e: u64| {
            let mut result = vec![1u32];
            let mut base = g.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    result = poly_mulmod(&result, &base, &modulus, p);
                }
                base = poly_mulmod(&base, &base, &modulus, p);
                e >>= 1;
            }
            result
        };
        let primitive = (1..q)
            .find(|&code| {
                let g = poly_trim(digits(code as u64, p, d as usize));
                cofactors.iter().all(|&c| poly_pow(&g, c) != vec![1])
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let g = poly_trim(digits(primitive as u64, p, d as usize));
        let mut cur = vec![1u32];
        for k in 0..n {
            let code = undigits(&cur, p) as u32;
            exp[k] = code;
            exp[k + n] = code;
            log[code as usize] = k as u32;
            cur = poly_mulmod(&cur, &g, &modulus, p);
        }
        Ok(FiniteField(Arc::new(FieldData {
            p,
            d,
            q,
            modulus,
            primitive,
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn d(&self) -> u32 {
        self.0.d
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `GF(p^d)/modulus=[c0,...,cd]`
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.0.modulus.iter().map(u32::to_string).collect();
        format!("GF({}^{})/modulus=[{}]", self.0.p, self.0.d, coeffs.join(","))
    }

    /// Code of the generator of the multiplicative group with smallest code.
    pub fn primitive(&self) -> u32 {
        self.0.primitive
    }

    pub fn element(&self, code: u32) -> Result<FieldElement, AlgebraError> {
        if code >= self.0.q {
            return Err(AlgebraError::CodeOutOfRange { code, q: self.0.q });
        }
        Ok(FieldElement {
            field: self.clone(),
            code,
        })
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, AlgebraError> {
        if coeffs.len() != self.0.d as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(AlgebraError::BadCoefficients {
                expected: self.0.d as usize,
                p: self.0.p,
            });
        }
        self.element(undigits(coeffs, self.0.p) as u32)
    }

    pub fn coeffs(&self, code: u32) -> Vec<u32> {
        digits(code as u64, self.0.p, self.0.d as usize)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.d == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let data = &*self.0;
        data.exp[(data.log[a as usize] + data.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, AlgebraError> {
        if a == 0 {
            return Err(AlgebraError::ZeroInverse);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        Ok(self.0.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, AlgebraError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (e % n)) % n) as usize]
    }

    /// `primitive^k`
    pub fn exp(&self, k: u64) -> u32 {
        self.0.exp[(k % (self.0.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the base [`primitive`](Self::primitive); `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.0.q as u64 - 1;
        Some(n / arith::gcd(l, n))
    }

    /// `a^(p^e)`, the `e`-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: u32, e: u32) -> Result<u32, AlgebraError> {
        if e >= self.0.d {
            return Err(AlgebraError::BadExponent { e, d: self.0.d });
        }
        Ok(self.pow(a, (self.0.p as u64).pow(e)))
    }

    /// Elements of the subfield of order `p^e` (requires `e | d`), ascending by code.
    pub fn subfield(&self, e: u32) -> Vec<u32> {
        assert!(e >= 1 && self.0.d.is_multiple_of(e), "subfield degree must divide {}", self.0.d);
        let sub_order = (self.0.p as u64).pow(e);
        let step = (self.0.q as u64 - 1) / (sub_order - 1);
        let mut out: Vec<u32> = (0..sub_order - 1).map(|k| self.exp(k * step)).collect();
        out.push(0);
        out.sort_unstable();
        out
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }
}

/// A field element that remembers its field; arithmetic is checked.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    code: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    fn with(&self, code: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.code, e))
    }

    pub fn frobenius(&self, e: u32) -> Result<Self, AlgebraError> {
        Ok(self.with(self.field.frobenius(self.code, e)?))
    }
}
