//! MSB-first bit-serial multiplication with interleaved reduction.
//!
//! Each cycle performs the G step (`P <- P·x mod f`) followed by the H step
//! (`P <- P ^ b_{m-k}·A`). After `m` cycles the accumulator holds `A·B mod f`.

use std::fmt;

use serde::Serialize;

use crate::field::{check_degree, FieldElement, IrreduciblePoly, Result};

/// Which XOR realisation the per-cycle steps use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XorForm {
    #[default]
    Plain,
    /// Every XOR is the four-gate NAND network.
    Nand,
}

#[inline]
pub fn nand(a: bool, b: bool) -> bool {
    !(a && b)
}

/// `p XOR g` built only from two-input NANDs.
#[inline]
pub fn nand_xor(p: bool, g: bool) -> bool {
    let t = nand(p, g);
    nand(nand(p, t), nand(t, g))
}

/// The same four-NAND network applied to 64 independent bit lanes.
#[inline]
pub fn nand_xor_word(p: u64, g: u64) -> u64 {
    let nand = |a: u64, b: u64| !(a & b);
    let t = nand(p, g);
    nand(nand(p, t), nand(t, g))
}

#[inline]
fn xor_word(form: XorForm, p: u64, g: u64) -> u64 {
    match form {
        XorForm::Plain => p ^ g,
        XorForm::Nand => nand_xor_word(p, g),
    }
}

/// `p ^= mask & other` limb by limb using the chosen XOR form.
fn xor_masked(form: XorForm, p: &mut FieldElement, other: &FieldElement, mask: u64) {
    for (d, &s) in p.limbs_mut().iter_mut().zip(other.limbs()) {
        *d = xor_word(form, *d, mask & s);
    }
    p.mask();
}

/// G step: `(p·x) mod f`.
pub fn xtimes_reduce(p: &FieldElement, f: &IrreduciblePoly) -> Result<FieldElement> {
    xtimes_reduce_with(p, f, XorForm::Plain)
}

pub fn xtimes_reduce_with(p: &FieldElement, f: &IrreduciblePoly, form: XorForm) -> Result<FieldElement> {
    check_degree(p.m(), f.m())?;
    let m = p.m();
    let overflow = p.bit(m - 1);
    let mut shifted = p.clone();
    let mut carry = 0u64;
    for w in shifted.limbs_mut() {
        let next = *w >> 63;
        *w = (*w << 1) | carry;
        carry = next;
    }
    shifted.mask();
    let mask = if overflow { u64::MAX } else { 0 };
    xor_masked(form, &mut shifted, f.reduction_vector(), mask);
    Ok(shifted)
}

/// H step: `p ^ (b_bit · a)`.
pub fn accumulate(p: &FieldElement, b_bit: bool, a: &FieldElement) -> Result<FieldElement> {
    accumulate_with(p, b_bit, a, XorForm::Plain)
}

pub fn accumulate_with(p: &FieldElement, b_bit: bool, a: &FieldElement, form: XorForm) -> Result<FieldElement> {
    check_degree(p.m(), a.m())?;
    let mut out = p.clone();
    xor_masked(form, &mut out, a, if b_bit { u64::MAX } else { 0 });
    Ok(out)
}

/// One cycle of the multiplier as observed at the block boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub cycle: usize,
    pub b_bit: u8,
    pub after_g: FieldElement,
    pub after_h: FieldElement,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.cycle, self.b_bit, self.after_g, self.after_h)
    }
}

/// Register state threaded through the multiply loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerialMultState {
    reg1: FieldElement,
    reg2: FieldElement,
    b: FieldElement,
    cycle: usize,
}

impl SerialMultState {
    pub fn new(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        check_degree(a.m(), b.m())?;
        Ok(Self { reg1: a.clone(), reg2: FieldElement::zero(a.m()), b: b.clone(), cycle: 0 })
    }

    pub fn reg1(&self) -> &FieldElement {
        &self.reg1
    }

    pub fn reg2(&self) -> &FieldElement {
        &self.reg2
    }

    pub fn cycle(&self) -> usize {
        self.cycle
    }

    pub fn is_done(&self) -> bool {
        self.cycle == self.reg1.m()
    }

    /// Serial bits not yet consumed, next one first.
    pub fn remaining_bits(&self) -> impl Iterator<Item = bool> + '_ {
        let m = self.reg1.m();
        (0..m - self.cycle).rev().map(move |i| self.b.bit(i))
    }

    /// Advances one clock; returns `None` once all `m` bits are consumed.
    pub fn step(&mut self, f: &IrreduciblePoly, form: XorForm) -> Result<Option<TraceRecord>> {
        let m = self.reg1.m();
        if self.cycle == m {
            return Ok(None);
        }
        let b_bit = self.b.bit(m - 1 - self.cycle);
        let after_g = xtimes_reduce_with(&self.reg2, f, form)?;
        let after_h = accumulate_with(&after_g, b_bit, &self.reg1, form)?;
        self.cycle += 1;
        self.reg2 = after_h.clone();
        Ok(Some(TraceRecord { cycle: self.cycle, b_bit: b_bit as u8, after_g, after_h }))
    }
}

/// Multiplies `a·b mod f` in `m` cycles, returning the product and the
/// per-cycle trace.
pub fn mul_serial(
    a: &FieldElement,
    b: &FieldElement,
    f: &IrreduciblePoly,
    use_nand_form: bool,
) -> Result<(FieldElement, Vec<TraceRecord>)> {
    check_degree(a.m(), f.m())?;
    let form = if use_nand_form { XorForm::Nand } else { XorForm::Plain };
    let mut state = SerialMultState::new(a, b)?;
    let mut trace = Vec::with_capacity(a.m());
    while let Some(rec) = state.step(f, form)? {
        trace.push(rec);
    }
    Ok((state.reg2, trace))
}
