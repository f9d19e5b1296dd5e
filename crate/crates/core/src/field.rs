//! Polynomial-basis GF(2^m) elements and reference arithmetic.
//!
//! Bit `i` of every stored value is the coefficient of `x^i`, so the
//! constant term lives in bit 0 of limb 0. Elements are backed by `u64`
//! limbs and never carry bits at index `>= m`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid field degree {0}")]
    InvalidDegree(usize),
    #[error("reduction polynomial must have constant term f_0 = 1")]
    MissingConstantTerm,
    #[error("value has a coefficient at x^{bit}, outside GF(2^{m})")]
    OutOfRange { m: usize, bit: usize },
    #[error("invalid hex element {0:?}")]
    InvalidHex(String),
    #[error("expected a polynomial of {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown NIST field {0:?} (expected one of b163, b233, b283, b409, b571)")]
    UnknownNistField(String),
}

pub type Result<T> = std::result::Result<T, FieldError>;

#[inline]
fn limb_count(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Clears every bit at index `>= len` in the top limb.
#[inline]
fn mask_top(limbs: &mut [u64], len: usize) {
    let rem = len % 64;
    if rem != 0 {
        if let Some(top) = limbs.last_mut() {
            *top &= (1u64 << rem) - 1;
        }
    }
}

/// `dst ^= src << shift` over limb slices; bits shifted past `dst` are dropped.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for (i, &w) in src.iter().enumerate() {
        let lo = i + words;
        if lo < dst.len() {
            dst[lo] ^= w << bits;
        }
        if bits != 0 && lo + 1 < dst.len() {
            dst[lo + 1] ^= w >> (64 - bits);
        }
    }
}

/// A polynomial over GF(2) with an explicit bit length, used for unreduced
/// products (`2m - 1` bits) and generic polynomial algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitPoly {
    len: usize,
    limbs: Vec<u64>,
}

impl BitPoly {
    pub fn zero(len: usize) -> Self {
        Self { len, limbs: vec![0; limb_count(len)] }
    }

    /// Builds a polynomial from the set coefficient positions.
    pub fn from_exponents(len: usize, exps: &[usize]) -> Result<Self> {
        let mut p = Self::zero(len);
        for &e in exps {
            if e >= len {
                return Err(FieldError::OutOfRange { m: len, bit: e });
            }
            p.flip(e);
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        i < self.len && (self.limbs[i / 64] >> (i % 64)) & 1 == 1
    }

    fn flip(&mut self, i: usize) {
        self.limbs[i / 64] ^= 1u64 << (i % 64);
    }

    /// Index of the highest set coefficient, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Carry-less product, sized to hold every coefficient of the result.
    pub fn clmul(&self, other: &BitPoly) -> BitPoly {
        let len = (self.len + other.len).saturating_sub(1).max(1);
        let mut out = BitPoly::zero(len);
        for i in (0..self.len).filter(|&i| self.bit(i)) {
            xor_shifted(&mut out.limbs, &other.limbs, i);
        }
        mask_top(&mut out.limbs, len);
        out
    }

    /// Remainder of `self` modulo the monic polynomial `modulus`.
    pub fn rem(&self, modulus: &BitPoly) -> BitPoly {
        let d = modulus.degree().expect("modulus must be non-zero");
        let mut r = self.clone();
        while let Some(top) = r.degree() {
            if top < d {
                break;
            }
            xor_shifted(&mut r.limbs, &modulus.limbs, top - d);
        }
        r.resize(d.max(1))
    }

    /// Truncates or zero-extends to `len` bits.
    pub fn resize(&self, len: usize) -> BitPoly {
        let mut limbs = self.limbs.clone();
        limbs.resize(limb_count(len), 0);
        mask_top(&mut limbs, len);
        BitPoly { len, limbs }
    }

    pub fn add(&self, other: &BitPoly) -> BitPoly {
        let len = self.len.max(other.len);
        let mut out = self.resize(len);
        for (d, s) in out.limbs.iter_mut().zip(&other.limbs) {
            *d ^= s;
        }
        out
    }

    /// Polynomial gcd over GF(2).
    pub fn gcd(&self, other: &BitPoly) -> BitPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({}; 0x{})", self.len, hex_digits(&self.limbs, self.len))
    }
}

fn hex_digits(limbs: &[u64], len: usize) -> String {
    let digits = len.div_ceil(4).max(1);
    (0..digits)
        .rev()
        .map(|d| {
            let nib = (limbs.get(d / 16).copied().unwrap_or(0) >> ((d % 16) * 4)) & 0xf;
            char::from_digit(nib as u32, 16).unwrap()
        })
        .collect()
}

/// An element of GF(2^m) in polynomial basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(BitPoly);

impl FieldElement {
    pub fn zero(m: usize) -> Self {
        Self(BitPoly::zero(m))
    }

    pub fn one(m: usize) -> Self {
        Self::from_u64(m, 1).expect("m >= 1")
    }

    pub fn from_u64(m: usize, value: u64) -> Result<Self> {
        Self::from_limbs(m, vec![value])
    }

    /// Little-endian limbs; rejects any coefficient at index `>= m`.
    pub fn from_limbs(m: usize, mut limbs: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(FieldError::InvalidDegree(m));
        }
        let n = limb_count(m);
        for (i, &w) in limbs.iter().enumerate().rev() {
            let keep = match (i + 1).cmp(&n) {
                std::cmp::Ordering::Less => u64::MAX,
                std::cmp::Ordering::Equal if !m.is_multiple_of(64) => (1u64 << (m % 64)) - 1,
                std::cmp::Ordering::Equal => u64::MAX,
                std::cmp::Ordering::Greater => 0,
            };
            let stray = w & !keep;
            if stray != 0 {
                let bit = i * 64 + 63 - stray.leading_zeros() as usize;
                return Err(FieldError::OutOfRange { m, bit });
            }
        }
        limbs.resize(n, 0);
        Ok(Self(BitPoly { len: m, limbs }))
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut limbs: Vec<u64> = (0..limb_count(m)).map(|_| rng.gen()).collect();
        mask_top(&mut limbs, m);
        Self(BitPoly { len: m, limbs })
    }

    /// Parses the lowercase (or uppercase) hex encoding; an optional `0x`
    /// prefix and leading zeros are accepted.
    pub fn from_hex(m: usize, s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")).unwrap_or(body);
        if body.is_empty() {
            return Err(FieldError::InvalidHex(s.to_string()));
        }
        let mut limbs = vec![0u64; limb_count(body.len() * 4)];
        for (d, c) in body.chars().rev().enumerate() {
            let nib = c.to_digit(16).ok_or_else(|| FieldError::InvalidHex(s.to_string()))?;
            limbs[d / 16] |= (nib as u64) << ((d % 16) * 4);
        }
        Self::from_limbs(m, limbs)
    }

    /// Lowercase hex, most significant nibble first, zero-padded to `ceil(m/4)` digits.
    pub fn to_hex(&self) -> String {
        hex_digits(&self.0.limbs, self.m())
    }

    pub fn m(&self) -> usize {
        self.0.len
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0.bit(i)
    }

    pub fn limbs(&self) -> &[u64] {
        &self.0.limbs
    }

    pub(crate) fn limbs_mut(&mut self) -> &mut [u64] {
        &mut self.0.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.0.limbs.iter().all(|&w| w == 0)
    }

    /// Value as a `u64` when it fits (always for `m <= 64`).
    pub fn to_u64(&self) -> Option<u64> {
        match self.0.limbs.as_slice() {
            [w] => Some(*w),
            [w, rest @ ..] if rest.iter().all(|&x| x == 0) => Some(*w),
            _ => None,
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.m()).map(move |i| self.bit(i))
    }

    pub fn as_poly(&self) -> &BitPoly {
        &self.0
    }

    pub(crate) fn mask(&mut self) {
        let m = self.m();
        mask_top(&mut self.0.limbs, m);
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        add(self, other)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}):{}", self.m(), self.to_hex())
    }
}

pub(crate) fn check_degree(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(FieldError::DegreeMismatch { left, right })
    }
}

/// A monic degree-`m` reduction polynomial `f(x) = x^m + ... + 1`, stored as
/// the `m`-bit vector `f(x) - x^m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IrreduciblePoly {
    reduction: FieldElement,
}

impl IrreduciblePoly {
    /// The `x^m` term is implicit; `reduction` holds `f_0 .. f_{m-1}`.
    pub fn new(reduction: FieldElement) -> Result<Self> {
        if reduction.m() < 2 {
            return Err(FieldError::InvalidDegree(reduction.m()));
        }
        if !reduction.bit(0) {
            return Err(FieldError::MissingConstantTerm);
        }
        Ok(Self { reduction })
    }

    /// `x^m + sum x^e` for each `e` in `low_terms` (each `< m`).
    pub fn from_exponents(m: usize, low_terms: &[usize]) -> Result<Self> {
        let p = BitPoly::from_exponents(m, low_terms)?;
        Self::new(FieldElement(p))
    }

    pub fn from_hex(m: usize, reduction_hex: &str) -> Result<Self> {
        Self::new(FieldElement::from_hex(m, reduction_hex)?)
    }

    pub fn m(&self) -> usize {
        self.reduction.m()
    }

    pub fn reduction_vector(&self) -> &FieldElement {
        &self.reduction
    }

    /// Coefficient `f_i` for `i < m`; `f_m` is always 1.
    pub fn coeff(&self, i: usize) -> bool {
        i == self.m() || self.reduction.bit(i)
    }

    /// The full `m + 1`-bit polynomial including `x^m`.
    pub fn full(&self) -> BitPoly {
        let m = self.m();
        let mut p = self.reduction.0.resize(m + 1);
        p.flip(m);
        p
    }

    /// Rabin's test: `x^(2^m) = x mod f` and `gcd(x^(2^(m/q)) - x, f) = 1`
    /// for every prime `q | m`.
    pub fn is_irreducible(&self) -> bool {
        let m = self.m();
        let f = self.full();
        let x = FieldElement::from_u64(m, 2).expect("m >= 2");
        let square = |e: &FieldElement| mul_reference(e, e, self).expect("same field");
        let frobenius = |k: usize| (0..k).fold(x.clone(), |acc, _| square(&acc));
        if frobenius(m) != x {
            return false;
        }
        prime_factors(m).into_iter().all(|q| {
            let h = frobenius(m / q).as_poly().add(x.as_poly());
            let g = f.gcd(&h);
            g.degree() == Some(0)
        })
    }
}

impl fmt::Debug for IrreduciblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..=self.m())
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Field addition: coefficient-wise XOR.
pub fn add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    check_degree(a.m(), b.m())?;
    let mut out = a.clone();
    for (d, s) in out.limbs_mut().iter_mut().zip(b.limbs()) {
        *d ^= s;
    }
    Ok(out)
}

/// Reduces a `2m - 1`-bit polynomial modulo `f`, clearing the high
/// coefficients from `x^(2m-2)` down to `x^m`.
pub fn reduce(p: &BitPoly, f: &IrreduciblePoly) -> Result<FieldElement> {
    let m = f.m();
    let expected = 2 * m - 1;
    if p.len() != expected {
        return Err(FieldError::LengthMismatch { expected, got: p.len() });
    }
    let mut work = p.clone();
    for i in (m..expected).rev() {
        if work.bit(i) {
            work.flip(i);
            xor_shifted(&mut work.limbs, f.reduction.limbs(), i - m);
        }
    }
    Ok(FieldElement(work.resize(m)))
}

/// Schoolbook carry-less product followed by [`reduce`].
pub fn mul_reference(a: &FieldElement, b: &FieldElement, f: &IrreduciblePoly) -> Result<FieldElement> {
    check_degree(a.m(), b.m())?;
    check_degree(a.m(), f.m())?;
    let product = a.as_poly().clmul(b.as_poly()).resize(2 * f.m() - 1);
    reduce(&product, f)
}

/// The five NIST-recommended binary fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NistField {
    B163,
    B233,
    B283,
    B409,
    B571,
}

impl NistField {
    pub const ALL: [NistField; 5] =
        [NistField::B163, NistField::B233, NistField::B283, NistField::B409, NistField::B571];

    pub fn degree(self) -> usize {
        match self {
            NistField::B163 => 163,
            NistField::B233 => 233,
            NistField::B283 => 283,
            NistField::B409 => 409,
            NistField::B571 => 571,
        }
    }

    fn low_terms(self) -> &'static [usize] {
        match self {
            NistField::B163 => &[7, 6, 3, 0],
            NistField::B233 => &[74, 0],
            NistField::B283 => &[12, 7, 5, 0],
            NistField::B409 => &[87, 0],
            NistField::B571 => &[10, 5, 2, 0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NistField::B163 => "B-163",
            NistField::B233 => "B-233",
            NistField::B283 => "B-283",
            NistField::B409 => "B-409",
            NistField::B571 => "B-571",
        }
    }

    pub fn poly(self) -> IrreduciblePoly {
        nist_poly(self)
    }
}

/// Catalog lookup for the standard published NIST reduction polynomials.
pub fn nist_poly(id: NistField) -> IrreduciblePoly {
    IrreduciblePoly::from_exponents(id.degree(), id.low_terms()).expect("catalog polynomial")
}

impl FromStr for NistField {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        NistField::ALL
            .into_iter()
            .find(|id| key == format!("b{}", id.degree()))
            .ok_or_else(|| FieldError::UnknownNistField(s.to_string()))
    }
}

impl fmt::Display for NistField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `x^4 + x + 1`.
pub fn gf16_poly() -> IrreduciblePoly {
    IrreduciblePoly::from_exponents(4, &[1, 0]).expect("static")
}

/// `x^8 + x^4 + x^3 + x + 1`.
pub fn gf256_poly() -> IrreduciblePoly {
    IrreduciblePoly::from_exponents(8, &[4, 3, 1, 0]).expect("static")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e4(v: u64) -> FieldElement {
        FieldElement::from_u64(4, v).unwrap()
    }

    /// Independent oracle: multiply coefficient by coefficient into a u64,
    /// then substitute x^4 <- x + 1 until the degree drops below 4.
    fn brute_gf16(a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        for i in 0..4 {
            for j in 0..4 {
                acc ^= ((a >> i) & (b >> j) & 1) << (i + j);
            }
        }
        while acc >= 16 {
            let top = 63 - acc.leading_zeros() as u64;
            acc ^= 1 << top;
            acc ^= 0b11 << (top - 4);
        }
        acc
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&e4(0), &e4(0xb)).unwrap(), e4(0xb));
        assert_eq!(add(&e4(0xb), &e4(0xb)).unwrap(), e4(0));
        assert_eq!(add(&e4(0b1011), &e4(0b0110)).unwrap(), e4(0b1101));
    }

    #[test]
    fn add_rejects_mismatched_degrees() {
        let err = add(&e4(1), &FieldElement::from_u64(8, 1).unwrap()).unwrap_err();
        assert_eq!(err, FieldError::DegreeMismatch { left: 4, right: 8 });
    }

    #[test]
    fn brute_oracle_matches_worked_example() {
        assert_eq!(brute_gf16(0b1011, 0b1100), 0b1101);
    }

    #[test]
    fn mul_reference_examples() {
        let f = gf16_poly();
        assert_eq!(mul_reference(&e4(0b1011), &e4(0b1100), &f).unwrap(), e4(0b1101));
        for b in 0..16 {
            assert_eq!(mul_reference(&e4(1), &e4(b), &f).unwrap(), e4(b));
            assert_eq!(mul_reference(&e4(0), &e4(b), &f).unwrap(), e4(0));
        }
    }

    #[test]
    fn mul_reference_matches_brute_oracle_on_gf16() {
        let f = gf16_poly();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(mul_reference(&e4(a), &e4(b), &f).unwrap().to_u64(), Some(brute_gf16(a, b)));
            }
        }
    }

    #[test]
    fn mul_reference_degree_mismatch() {
        let f = gf256_poly();
        assert!(matches!(mul_reference(&e4(1), &e4(1), &f), Err(FieldError::DegreeMismatch { .. })));
    }

    #[test]
    fn reduce_examples() {
        let f = gf16_poly();
        let x4 = BitPoly::from_exponents(7, &[4]).unwrap();
        assert_eq!(reduce(&x4, &f).unwrap(), e4(0b0011));
        let x6 = BitPoly::from_exponents(7, &[6]).unwrap();
        assert_eq!(reduce(&x6, &f).unwrap(), e4(0b1100));
        let low = BitPoly::from_exponents(7, &[0, 2, 3]).unwrap();
        assert_eq!(reduce(&low, &f).unwrap(), e4(0b1101));
    }

    #[test]
    fn reduce_agrees_with_long_division() {
        let f = gf16_poly();
        for v in 0u64..128 {
            let p = FieldElement::from_u64(7, v).unwrap().as_poly().clone();
            let expect = p.rem(&f.full());
            assert_eq!(reduce(&p, &f).unwrap().as_poly(), &expect, "v={v:#x}");
        }
    }

    #[test]
    fn reduce_rejects_wrong_length() {
        let f = gf16_poly();
        let err = reduce(&BitPoly::zero(6), &f).unwrap_err();
        assert_eq!(err, FieldError::LengthMismatch { expected: 7, got: 6 });
    }

    #[test]
    fn hex_round_trip_and_padding() {
        let a = FieldElement::from_hex(163, "5").unwrap();
        assert_eq!(a.to_hex().len(), 41);
        assert!(a.to_hex().ends_with("05"));
        assert_eq!(FieldElement::from_hex(4, "b").unwrap().to_hex(), "b");
        assert_eq!(FieldElement::from_hex(4, "0x0B").unwrap(), e4(0xb));
        assert_eq!(FieldElement::from_hex(8, "0a").unwrap().to_hex(), "0a");
    }

    #[test]
    fn hex_rejects_high_bits_and_garbage() {
        assert_eq!(FieldElement::from_hex(4, "1f").unwrap_err(), FieldError::OutOfRange { m: 4, bit: 4 });
        assert!(matches!(FieldElement::from_hex(4, "g"), Err(FieldError::InvalidHex(_))));
        assert!(matches!(FieldElement::from_hex(4, ""), Err(FieldError::InvalidHex(_))));
        let x163 = format!("8{}", "0".repeat(40));
        assert!(FieldElement::from_hex(163, &x163).is_err());
        let x162 = format!("4{}", "0".repeat(40));
        assert!(FieldElement::from_hex(163, &x162).is_ok());
    }

    #[test]
    fn irreducible_poly_requires_constant_term() {
        assert_eq!(
            IrreduciblePoly::from_exponents(4, &[1]).unwrap_err(),
            FieldError::MissingConstantTerm
        );
        assert!(IrreduciblePoly::from_exponents(1, &[0]).is_err());
    }

    #[test]
    fn rabin_test_small_cases() {
        assert!(gf16_poly().is_irreducible());
        assert!(gf256_poly().is_irreducible());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!IrreduciblePoly::from_exponents(4, &[2, 0]).unwrap().is_irreducible());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive
        assert!(IrreduciblePoly::from_exponents(4, &[3, 2, 1, 0]).unwrap().is_irreducible());
        // x^8 + x^4 + x^3 + x^2 + 1 is irreducible (primitive)
        assert!(IrreduciblePoly::from_exponents(8, &[4, 3, 2, 0]).unwrap().is_irreducible());
        // ninth cyclotomic polynomial, irreducible since ord_9(2) = 6
        assert!(IrreduciblePoly::from_exponents(6, &[3, 0]).unwrap().is_irreducible());
        // (x^2 + x + 1)(x^4 + x + 1)
        let prod = BitPoly::from_exponents(3, &[0, 1, 2]).unwrap().clmul(&BitPoly::from_exponents(5, &[0, 1, 4]).unwrap());
        let low: Vec<usize> = (0..6).filter(|&i| prod.bit(i)).collect();
        assert!(!IrreduciblePoly::from_exponents(6, &low).unwrap().is_irreducible());
    }

    #[test]
    fn nist_catalog() {
        let b163 = nist_poly(NistField::B163);
        assert_eq!(b163.m(), 163);
        let low: Vec<usize> = (0..163).filter(|&i| b163.coeff(i)).collect();
        assert_eq!(low, vec![0, 3, 6, 7]);
        let b233 = nist_poly(NistField::B233);
        let low: Vec<usize> = (0..233).filter(|&i| b233.coeff(i)).collect();
        assert_eq!(low, vec![0, 74]);
        for id in NistField::ALL {
            let f = id.poly();
            assert_eq!(f.m(), id.degree());
            assert!(f.reduction_vector().bit(0));
        }
    }

    #[test]
    fn nist_polys_are_irreducible() {
        for id in NistField::ALL {
            assert!(id.poly().is_irreducible(), "{id}");
        }
    }

    #[test]
    fn nist_field_parsing() {
        assert_eq!("b163".parse::<NistField>().unwrap(), NistField::B163);
        assert_eq!("B-571".parse::<NistField>().unwrap(), NistField::B571);
        assert!("b164".parse::<NistField>().is_err());
    }

    #[test]
    fn field_axioms_exhaustive_gf16() {
        let f = gf16_poly();
        let all: Vec<_> = (0..16).map(e4).collect();
        let mul = |a: &FieldElement, b: &FieldElement| mul_reference(a, b, &f).unwrap();
        for a in &all {
            for b in &all {
                assert_eq!(mul(a, b), mul(b, a));
                for c in &all {
                    assert_eq!(mul(a, &mul(b, c)), mul(&mul(a, b), c));
                    assert_eq!(mul(a, &add(b, c).unwrap()), add(&mul(a, b), &mul(a, c)).unwrap());
                }
            }
        }
        for a in all.iter().skip(1) {
            let mut image: Vec<u64> = all.iter().map(|b| mul(a, b).to_u64().unwrap()).collect();
            image.sort_unstable();
            assert_eq!(image, (0..16).collect::<Vec<_>>());
        }
    }
}
