//! Arithmetic in `F_{p^n}` for odd `p`.
//!
//! Elements use the polynomial basis over a monic irreducible modulus. Every
//! element also has an *index*, the integer `Σ c_i·p^i` of its coefficient
//! vector; enumeration order, square tables and the brute-force engines all
//! work on indices.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

/// Upper bound on the extension degree: `3^41 > 2^64`, so any field whose
/// order fits in a `u64` has `n ≤ 40`.
pub const MAX_DEGREE: usize = 40;

/// Default largest order for which a square table is precomputed.
pub const DEFAULT_CHI_TABLE_THRESHOLD: u64 = 1 << 21;

/// Position of an element in the canonical enumeration order.
pub type ElemIndex = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} is even; only odd characteristic is supported")]
    EvenCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("order {p}^{n} does not fit in 64 bits")]
    OrderOverflow { p: u64, n: usize },
    #[error("modulus must be monic of degree {expected}: {reason}")]
    BadModulus { expected: usize, reason: String },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("0^0 is undefined")]
    ZeroToZero,
    #[error("invalid element encoding {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Value of the quadratic character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChiValue {
    NonSquare,
    Zero,
    Square,
}

impl ChiValue {
    pub fn value(self) -> i64 {
        match self {
            ChiValue::NonSquare => -1,
            ChiValue::Zero => 0,
            ChiValue::Square => 1,
        }
    }

    fn from_i8(v: i8) -> Self {
        match v {
            -1 => ChiValue::NonSquare,
            0 => ChiValue::Zero,
            _ => ChiValue::Square,
        }
    }
}

/// An element of a specific field. Elements remember which field created
/// them so that arithmetic across fields is rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: u64,
    coeffs: Vec<u64>,
}

impl FieldElem {
    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

/// Comma-separated coefficients `c0,c1,...,c(n-1)`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Options for [`FieldCtx::with_options`].
#[derive(Debug, Clone, Copy)]
pub struct FieldOptions {
    /// A square table is built when `q` is at most this value.
    pub chi_table_threshold: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        Self {
            chi_table_threshold: DEFAULT_CHI_TABLE_THRESHOLD,
        }
    }
}

/// The field `F_{p^n}`. Immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    n: usize,
    q: u64,
    /// Monic, `n + 1` coefficients, constant term first. `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    id: u64,
    chi_table: Option<Vec<i8>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("chi_table", &self.chi_table.is_some())
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{p^n}`. With no modulus the canonical one from
    /// [`find_irreducible`] is used.
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        Self::with_options(p, n, modulus, FieldOptions::default())
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn with_options(
        p: u64,
        n: usize,
        modulus: Option<&[u64]>,
        options: FieldOptions,
    ) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = u32::try_from(n)
            .ok()
            .and_then(|e| p.checked_pow(e))
            .ok_or(FieldError::OrderOverflow { p, n })?;

        let modulus = match modulus {
            Some(m) => {
                validate_modulus(p, n, m)?;
                m.to_vec()
            }
            None => find_irreducible(p, n),
        };

        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        (p, n, &modulus).hash(&mut hasher);
        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            id: hasher.finish(),
            chi_table: None,
        };
        if q <= options.chi_table_threshold {
            ctx.chi_table = Some(ctx.build_chi_table());
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The defining polynomial, or `None` for a prime field.
    pub fn modulus(&self) -> Option<&[u64]> {
        (self.n > 1).then_some(self.modulus.as_slice())
    }

    pub fn has_chi_table(&self) -> bool {
        self.chi_table.is_some()
    }

    fn build_chi_table(&self) -> Vec<i8> {
        let q = self.q as usize;
        let mut table = vec![-1i8; q];
        table[0] = 0;
        for x in 1..self.q {
            table[self.mul_idx(x, x) as usize] = 1;
        }
        table
    }

    // ---------------------------------------------------------------------
    // Element construction

    pub fn zero(&self) -> FieldElem {
        self.wrap(vec![0; self.n])
    }

    pub fn one(&self) -> FieldElem {
        self.embed(1)
    }

    /// The constant `k mod p`.
    pub fn embed(&self, k: i64) -> FieldElem {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = self.reduce_int(k);
        self.wrap(coeffs)
    }

    /// Builds an element from coefficients; each must lie in `[0, p)`.
    pub fn elem(&self, coeffs: &[u64]) -> Result<FieldElem, FieldError> {
        let input = || {
            coeffs
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        if coeffs.len() != self.n {
            return Err(FieldError::Parse {
                input: input(),
                reason: format!("expected {} coefficients", self.n),
            });
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::Parse {
                input: input(),
                reason: format!("coefficient {c} is not below p = {}", self.p),
            });
        }
        Ok(self.wrap(coeffs.to_vec()))
    }

    /// Parses `"c0,c1,...,c(n-1)"` or a (possibly negative) bare integer.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, FieldError> {
        let s = s.trim();
        let err = |reason: String| FieldError::Parse {
            input: s.to_string(),
            reason,
        };
        if !s.contains(',') {
            let normalized = s.replace('\u{2212}', "-");
            let k = i128::from_str(&normalized).map_err(|e| err(e.to_string()))?;
            let r = k.rem_euclid(self.p as i128) as u64;
            let mut coeffs = vec![0; self.n];
            coeffs[0] = r;
            return Ok(self.wrap(coeffs));
        }
        let coeffs = s
            .split(',')
            .map(|part| u64::from_str(part.trim()).map_err(|e| err(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.elem(&coeffs).map_err(|e| match e {
            FieldError::Parse { reason, .. } => err(reason),
            other => other,
        })
    }

    pub fn element(&self, index: ElemIndex) -> FieldElem {
        debug_assert!(index < self.q);
        let mut coeffs = vec![0; self.n];
        self.decode(index, &mut coeffs);
        self.wrap(coeffs)
    }

    pub fn index_of(&self, a: &FieldElem) -> Result<ElemIndex, FieldError> {
        self.check(a)?;
        Ok(self.encode(&a.coeffs))
    }

    /// All `q` elements in index order; index 0 is zero.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |i| self.element(i))
    }

    fn wrap(&self, coeffs: Vec<u64>) -> FieldElem {
        FieldElem {
            field: self.id,
            coeffs,
        }
    }

    fn check(&self, a: &FieldElem) -> Result<(), FieldError> {
        if a.field == self.id {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn reduce_int(&self, k: i64) -> u64 {
        (k as i128).rem_euclid(self.p as i128) as u64
    }

    // ---------------------------------------------------------------------
    // Checked element arithmetic

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.add_scalar(x, y))
            .collect();
        Ok(self.wrap(coeffs))
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.sub_scalar(x, y))
            .collect();
        Ok(self.wrap(coeffs))
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![0; self.n];
        self.mul_coeffs(&a.coeffs, &b.coeffs, &mut out);
        Ok(self.wrap(out))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in `F_p[x]`.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        if self.n == 1 {
            return Ok(self.wrap(vec![self.inv_scalar(a.coeffs[0])]));
        }
        let p = self.p;
        // Invariant: r_i ≡ s_i·a (mod modulus).
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.coeffs.clone());
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(p, &r0, &r1);
            let qs = poly_mul(p, &quot, &s1);
            let s2 = poly_sub(p, &s0, &qs);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let scale = self.inv_scalar(r0[0]);
        let mut coeffs = vec![0; self.n];
        for (i, c) in s0.iter().enumerate() {
            coeffs[i] = self.mul_scalar(*c, scale);
        }
        Ok(self.wrap(coeffs))
    }

    pub fn pow(&self, a: &FieldElem, e: u64) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        if e == 0 && a.is_zero() {
            return Err(FieldError::ZeroToZero);
        }
        let mut out = vec![0; self.n];
        self.pow_coeffs(&a.coeffs, e, &mut out);
        Ok(self.wrap(out))
    }

    /// Quadratic character.
    pub fn chi(&self, a: &FieldElem) -> Result<ChiValue, FieldError> {
        self.check(a)?;
        Ok(self.chi_idx(self.encode(&a.coeffs)))
    }

    /// Quadratic character by exponentiation, ignoring any square table.
    pub fn chi_by_pow(&self, a: &FieldElem) -> Result<ChiValue, FieldError> {
        self.check(a)?;
        Ok(self.chi_pow_coeffs(&a.coeffs))
    }

    // ---------------------------------------------------------------------
    // Unchecked index arithmetic used by the enumeration engines.

    pub fn add_idx(&self, a: ElemIndex, b: ElemIndex) -> ElemIndex {
        let p = self.p;
        if self.n == 1 {
            return self.add_scalar(a, b);
        }
        let (mut a, mut b, mut place, mut r) = (a, b, 1u64, 0u64);
        for _ in 0..self.n {
            r += self.add_scalar(a % p, b % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        r
    }

    pub fn sub_idx(&self, a: ElemIndex, b: ElemIndex) -> ElemIndex {
        let p = self.p;
        if self.n == 1 {
            return self.sub_scalar(a, b);
        }
        let (mut a, mut b, mut place, mut r) = (a, b, 1u64, 0u64);
        for _ in 0..self.n {
            r += self.sub_scalar(a % p, b % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        r
    }

    pub fn neg_idx(&self, a: ElemIndex) -> ElemIndex {
        self.sub_idx(0, a)
    }

    pub fn mul_idx(&self, a: ElemIndex, b: ElemIndex) -> ElemIndex {
        if self.n == 1 {
            return self.mul_scalar(a, b);
        }
        let mut x = [0u64; MAX_DEGREE];
        let mut y = [0u64; MAX_DEGREE];
        let mut out = [0u64; MAX_DEGREE];
        let n = self.n;
        self.decode(a, &mut x[..n]);
        self.decode(b, &mut y[..n]);
        self.mul_coeffs(&x[..n], &y[..n], &mut out[..n]);
        self.encode(&out[..n])
    }

    /// `a^e` with the convention `0^0 = 1`; callers that care must check.
    pub fn pow_idx(&self, a: ElemIndex, e: u64) -> ElemIndex {
        if self.n == 1 {
            return self.pow_scalar(a, e);
        }
        let n = self.n;
        let mut x = [0u64; MAX_DEGREE];
        let mut out = [0u64; MAX_DEGREE];
        self.decode(a, &mut x[..n]);
        self.pow_coeffs(&x[..n], e, &mut out[..n]);
        self.encode(&out[..n])
    }

    pub fn chi_idx(&self, a: ElemIndex) -> ChiValue {
        if let Some(table) = &self.chi_table {
            return ChiValue::from_i8(table[a as usize]);
        }
        let n = self.n;
        let mut x = [0u64; MAX_DEGREE];
        self.decode(a, &mut x[..n]);
        self.chi_pow_coeffs(&x[..n])
    }

    /// Index of the constant `k mod p`.
    pub fn embed_idx(&self, k: i64) -> ElemIndex {
        self.reduce_int(k)
    }

    /// `x^d` for every element, with `0^d = 0` (requires `d ≥ 1`).
    pub fn power_table(&self, d: u64) -> Vec<ElemIndex> {
        debug_assert!(d >= 1);
        (0..self.q).map(|x| self.pow_idx(x, d)).collect()
    }

    // ---------------------------------------------------------------------
    // Internals

    fn chi_pow_coeffs(&self, a: &[u64]) -> ChiValue {
        if a.iter().all(|&c| c == 0) {
            return ChiValue::Zero;
        }
        let n = self.n;
        let mut out = [0u64; MAX_DEGREE];
        self.pow_coeffs(a, (self.q - 1) / 2, &mut out[..n]);
        if out[0] == 1 && out[1..n].iter().all(|&c| c == 0) {
            ChiValue::Square
        } else {
            ChiValue::NonSquare
        }
    }

    fn decode(&self, mut index: ElemIndex, out: &mut [u64]) {
        for c in out.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
    }

    fn encode(&self, coeffs: &[u64]) -> ElemIndex {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    #[inline]
    fn add_scalar(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (if s >= self.p as u128 {
            s - self.p as u128
        } else {
            s
        }) as u64
    }

    #[inline]
    fn sub_scalar(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    fn mul_scalar(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_scalar(r, a);
            }
            a = self.mul_scalar(a, a);
            e >>= 1;
        }
        r
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        t0.rem_euclid(self.p as i128) as u64
    }

    /// `out = a·b mod modulus`; all slices have length `n`.
    fn mul_coeffs(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let n = self.n;
        if n == 1 {
            out[0] = self.mul_scalar(a[0], b[0]);
            return;
        }
        let p = self.p as u128;
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // x^n ≡ -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        for k in (n..2 * n - 1).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..n {
                let m = self.modulus[j] as u128;
                if m != 0 {
                    let t = top * m % p;
                    prod[k - n + j] = (prod[k - n + j] + p - t) % p;
                }
            }
        }
        for (o, v) in out.iter_mut().zip(prod.iter()) {
            *o = *v as u64;
        }
    }

    fn pow_coeffs(&self, a: &[u64], mut e: u64, out: &mut [u64]) {
        let n = self.n;
        let mut base = [0u64; MAX_DEGREE];
        base[..n].copy_from_slice(a);
        let mut acc = [0u64; MAX_DEGREE];
        acc[0] = 1;
        let mut tmp = [0u64; MAX_DEGREE];
        while e > 0 {
            if e & 1 == 1 {
                self.mul_coeffs(&acc[..n], &base[..n], &mut tmp[..n]);
                acc[..n].copy_from_slice(&tmp[..n]);
            }
            e >>= 1;
            if e > 0 {
                self.mul_coeffs(&base[..n], &base[..n], &mut tmp[..n]);
                base[..n].copy_from_slice(&tmp[..n]);
            }
        }
        out.copy_from_slice(&acc[..n]);
    }
}

fn validate_modulus(p: u64, n: usize, m: &[u64]) -> Result<(), FieldError> {
    let bad = |reason: &str| FieldError::BadModulus {
        expected: n,
        reason: reason.to_string(),
    };
    if m.len() != n + 1 {
        return Err(bad(&format!("got {} coefficients", m.len())));
    }
    if m[n] != 1 {
        return Err(bad("leading coefficient is not 1"));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(bad("coefficient not reduced mod p"));
    }
    if !is_irreducible(p, m) {
        return Err(FieldError::ReducibleModulus(p));
    }
    Ok(())
}

// -------------------------------------------------------------------------
// Polynomials over F_p as trimmed coefficient vectors (constant term first).

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divmod(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = {
        let ctx_p = p as i128;
        let (mut r0, mut r1) = (ctx_p, b[db] as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        t0.rem_euclid(ctx_p) as u64
    };
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let coef = ((*rem.last().unwrap() as u128 * lead_inv as u128) % p as u128) as u64;
        quot[k] = coef;
        for (j, &bj) in b.iter().enumerate() {
            let t = ((coef as u128 * bj as u128) % p as u128) as u64;
            rem[k + j] = (rem[k + j] + p - t) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn poly_rem_is_zero(p: u64, a: &[u64], b: &[u64]) -> bool {
    poly_divmod(p, a, b).1.is_empty()
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index`.
fn monic_from_index(p: u64, deg: usize, mut index: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        v.push(index % p);
        index /= p;
    }
    v.push(1);
    v
}

/// All monic irreducibles of degree `1..=max_deg`, grouped by degree.
fn irreducibles_up_to(p: u64, max_deg: usize) -> Vec<Vec<Vec<u64>>> {
    let mut by_degree: Vec<Vec<Vec<u64>>> = vec![vec![]];
    for deg in 1..=max_deg {
        let count = p.pow(deg as u32);
        let found = (0..count)
            .map(|i| monic_from_index(p, deg, i))
            .filter(|f| {
                by_degree[1..=deg / 2]
                    .iter()
                    .flatten()
                    .all(|g| !poly_rem_is_zero(p, f, g))
            })
            .collect();
        by_degree.push(found);
    }
    by_degree
}

/// Trial division by every monic irreducible of degree at most `deg/2`.
/// Deterministic Miller–Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let poly = trim(poly.to_vec());
    let Some(deg) = poly.len().checked_sub(1) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // Linear factors: root test.
    let has_root = (0..p).any(|a| {
        poly.iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * a as u128 + c as u128) % p as u128)
            == 0
    });
    if has_root {
        return false;
    }
    if deg < 4 {
        return true;
    }
    let small = irreducibles_up_to(p, deg / 2);
    small[2..]
        .iter()
        .flatten()
        .all(|g| !poly_rem_is_zero(p, &poly, g))
}

/// Monic irreducibles of degree `n` in canonical order: increasing
/// `Σ c_i·p^i` over the non-leading coefficients.
pub fn irreducibles(p: u64, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let small = if n >= 4 {
        irreducibles_up_to(p, n / 2)
    } else {
        vec![vec![]]
    };
    let count = p.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..count)
        .map(move |i| monic_from_index(p, n, i))
        .filter(move |f| {
            if n == 1 {
                return true;
            }
            let has_root = (0..p).any(|a| {
                f.iter()
                    .rev()
                    .fold(0u128, |acc, &c| (acc * a as u128 + c as u128) % p as u128)
                    == 0
            });
            !has_root
                && small
                    .iter()
                    .skip(2)
                    .flatten()
                    .all(|g| !poly_rem_is_zero(p, f, g))
        })
}

/// First monic irreducible of degree `n` in canonical order.
pub fn find_irreducible(p: u64, n: usize) -> Vec<u64> {
    irreducibles(p, n)
        .next()
        .expect("an irreducible of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_errors() {
        assert_eq!(
            FieldCtx::new(4, 2, None).unwrap_err(),
            FieldError::NonPrime(4)
        );
        assert_eq!(
            FieldCtx::new(2, 3, None).unwrap_err(),
            FieldError::EvenCharacteristic(2)
        );
        assert_eq!(
            FieldCtx::new(3, 0, None).unwrap_err(),
            FieldError::ZeroDegree
        );
        assert!(matches!(
            FieldCtx::new(3, 41, None).unwrap_err(),
            FieldError::OrderOverflow { .. }
        ));
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus(3)
        );
        assert!(matches!(
            FieldCtx::new(3, 2, Some(&[1, 0, 2])).unwrap_err(),
            FieldError::BadModulus { .. }
        ));
    }

    #[test]
    fn prime_field_has_no_modulus() {
        let f = FieldCtx::new(7, 1, None).unwrap();
        assert_eq!(f.q(), 7);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn canonical_modulus_small() {
        // -1 is a nonsquare mod 3, and x^2 is reducible.
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]);
        let f = FieldCtx::new(3, 2, None).unwrap();
        let x = f.elem(&[0, 1]).unwrap();
        assert_eq!(f.mul(&x, &x).unwrap(), f.embed(-1));
    }

    #[test]
    fn basic_arithmetic() {
        let f = FieldCtx::new(7, 1, None).unwrap();
        assert_eq!(f.inv(&f.embed(2)).unwrap(), f.embed(4));
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&f.zero()).unwrap_err(), FieldError::ZeroInverse);
        assert_eq!(f.embed(-1), f.embed(6));
        assert_eq!(f.embed(7), f.zero());
        let g = FieldCtx::new(11, 1, None).unwrap();
        assert_eq!(g.pow(&g.embed(2), 4).unwrap(), g.embed(5));
        assert_eq!(g.pow(&g.zero(), 0).unwrap_err(), FieldError::ZeroToZero);
        assert_eq!(g.pow(&g.zero(), 4).unwrap(), g.zero());
        assert_eq!(g.add(&g.embed(3), &g.embed(-3)).unwrap(), g.zero());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = FieldCtx::new(7, 1, None).unwrap();
        let g = FieldCtx::new(11, 1, None).unwrap();
        assert_eq!(
            f.add(&f.one(), &g.one()).unwrap_err(),
            FieldError::MixedFields
        );
        assert_eq!(
            f.mul(&g.one(), &f.one()).unwrap_err(),
            FieldError::MixedFields
        );
        // same (p, n), different modulus
        let a = FieldCtx::new(7, 2, Some(&[1, 0, 1])).unwrap();
        let b = FieldCtx::new(7, 2, Some(&[3, 1, 1])).unwrap();
        assert_eq!(
            a.sub(&a.one(), &b.one()).unwrap_err(),
            FieldError::MixedFields
        );
    }

    #[test]
    fn parse_and_display() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        let a = f.parse_elem("1,2,0").unwrap();
        assert_eq!(a.to_string(), "1,2,0");
        assert_eq!(f.parse_elem("-1").unwrap(), f.embed(2));
        assert_eq!(f.parse_elem("\u{2212}1").unwrap(), f.embed(2));
        assert!(f.parse_elem("1,2").is_err());
        assert!(f.parse_elem("1,3,0").is_err());
        assert!(f.parse_elem("abc").is_err());
    }

    #[test]
    fn chi_of_five() {
        let f = FieldCtx::new(7, 3, None).unwrap();
        assert_eq!(f.chi(&f.embed(5)).unwrap(), ChiValue::NonSquare);
        let g = FieldCtx::new(11, 3, None).unwrap();
        assert_eq!(g.chi(&g.embed(5)).unwrap(), ChiValue::Square);
        assert_eq!(g.chi(&g.zero()).unwrap(), ChiValue::Zero);
    }

    #[test]
    fn chi_table_matches_exponentiation() {
        for (p, n) in [(3, 4), (7, 2), (11, 1), (5, 3)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            assert!(f.has_chi_table());
            for a in f.enumerate() {
                assert_eq!(f.chi(&a).unwrap(), f.chi_by_pow(&a).unwrap());
            }
        }
        let no_table = FieldCtx::with_options(
            7,
            2,
            None,
            FieldOptions {
                chi_table_threshold: 0,
            },
        )
        .unwrap();
        assert!(!no_table.has_chi_table());
    }

    #[test]
    fn enumeration_order() {
        let f = FieldCtx::new(7, 1, None).unwrap();
        let v: Vec<u64> = f.enumerate().map(|e| e.coeffs()[0]).collect();
        assert_eq!(v, (0..7).collect::<Vec<_>>());
        let g = FieldCtx::new(3, 5, None).unwrap();
        let all: std::collections::HashSet<_> = g.enumerate().collect();
        assert_eq!(all.len(), 243);
        assert!(g.enumerate().next().unwrap().is_zero());
    }
}
