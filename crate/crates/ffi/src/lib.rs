//! C ABI over `gf2m_sipo`.
//!
//! Fields and netlists are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`Gf2mStatus`]; on failure the
//! message is available from [`gf2m_last_error`] on the same thread.
//! Strings returned through out-pointers are released with
//! [`gf2m_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gf2m_sipo::cost::{transistor_count, Arch, GateCostTable};
use gf2m_sipo::field::{mul_reference, FieldElement, IrreduciblePoly, NistField};
use gf2m_sipo::netlist::{build_netlist, GateCensus, Netlist};
use gf2m_sipo::serial::mul_serial;
use gf2m_sipo::sim::simulate_many;
use gf2m_sipo::timing::critical_path;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gf2mStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    FieldError = 4,
    NetlistError = 5,
    CostError = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gf2mEngine {
    Reference = 0,
    Serial = 1,
    SerialNand = 2,
    Gate = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gf2mArch {
    Proposed = 0,
    Ref29 = 1,
    Ref25 = 2,
    Ref8 = 3,
    Ref22 = 4,
    Ref33 = 5,
}

impl From<Gf2mArch> for Arch {
    fn from(a: Gf2mArch) -> Arch {
        match a {
            Gf2mArch::Proposed => Arch::Proposed,
            Gf2mArch::Ref29 => Arch::Ref29,
            Gf2mArch::Ref25 => Arch::Ref25,
            Gf2mArch::Ref8 => Arch::Ref8,
            Gf2mArch::Ref22 => Arch::Ref22,
            Gf2mArch::Ref33 => Arch::Ref33,
        }
    }
}

/// Gate census of a netlist.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Gf2mCensus {
    pub and2: usize,
    pub nand2: usize,
    pub nand3: usize,
    pub xor_xnor: usize,
    pub mux21: usize,
    pub dff: usize,
}

impl From<GateCensus> for Gf2mCensus {
    fn from(c: GateCensus) -> Self {
        Self { and2: c.and2, nand2: c.nand2, nand3: c.nand3, xor_xnor: c.xor_xnor(), mux21: c.mux21, dff: c.dff }
    }
}

/// Opaque irreducible-polynomial handle.
pub struct Gf2mField(IrreduciblePoly);

/// Opaque netlist handle.
pub struct Gf2mNetlist(Netlist);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

type Outcome<T> = Result<T, (Gf2mStatus, String)>;

fn fail<T>(status: Gf2mStatus, msg: impl ToString) -> Outcome<T> {
    Err((status, msg.to_string()))
}

fn guard(body: impl FnOnce() -> Outcome<()>) -> Gf2mStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            Gf2mStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            Gf2mStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return fail(Gf2mStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p).to_str().or_else(|_| fail(Gf2mStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(|| (Gf2mStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Outcome<()> {
    if out.is_null() {
        return fail(Gf2mStatus::NullPointer, "output pointer is null");
    }
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Outcome<()> {
    check_out(out)?;
    out.write(value);
    Ok(())
}

fn field_err(e: impl ToString) -> (Gf2mStatus, String) {
    (Gf2mStatus::FieldError, e.to_string())
}

fn netlist_err(e: impl ToString) -> (Gf2mStatus, String) {
    (Gf2mStatus::NetlistError, e.to_string())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gf2m_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Field with a NIST binary polynomial: "b163", "B-233", ...
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_field_nist(name: *const c_char, out: *mut *mut Gf2mField) -> Gf2mStatus {
    guard(|| {
        check_out(out)?;
        let id: NistField = text(name, "name")?.parse().map_err(field_err)?;
        write(out, Box::into_raw(Box::new(Gf2mField(id.poly()))))
    })
}

/// Field GF(2^m) with reduction vector f(x) - x^m given in hex.
///
/// # Safety
/// `reduction_hex` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_field_new(
    m: usize,
    reduction_hex: *const c_char,
    out: *mut *mut Gf2mField,
) -> Gf2mStatus {
    guard(|| {
        check_out(out)?;
        let f = IrreduciblePoly::from_hex(m, text(reduction_hex, "reduction_hex")?).map_err(field_err)?;
        write(out, Box::into_raw(Box::new(Gf2mField(f))))
    })
}

/// Degree m of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf2m_field_degree(field: *const Gf2mField) -> usize {
    field.as_ref().map_or(0, |f| f.0.m())
}

/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf2m_field_free(field: *mut Gf2mField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

fn multiply(engine: Gf2mEngine, a: &FieldElement, b: &FieldElement, f: &IrreduciblePoly) -> Outcome<FieldElement> {
    match engine {
        Gf2mEngine::Reference => mul_reference(a, b, f).map_err(field_err),
        Gf2mEngine::Serial => mul_serial(a, b, f, false).map(|r| r.0).map_err(field_err),
        Gf2mEngine::SerialNand => mul_serial(a, b, f, true).map(|r| r.0).map_err(field_err),
        Gf2mEngine::Gate => {
            let nl = build_netlist(f.m(), f).map_err(netlist_err)?;
            simulate_many(&nl, &[(a.clone(), b.clone())]).map(|mut v| v.remove(0)).map_err(netlist_err)
        }
    }
}

/// Multiplies two hex-encoded elements. The product is written to `out` as
/// a lowercase hex string owned by the caller.
///
/// # Safety
/// `field` must be a live handle, `a_hex`/`b_hex` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_mul_hex(
    field: *const Gf2mField,
    a_hex: *const c_char,
    b_hex: *const c_char,
    engine: Gf2mEngine,
    out: *mut *mut c_char,
) -> Gf2mStatus {
    guard(|| {
        check_out(out)?;
        let f = &handle(field, "field")?.0;
        let a = FieldElement::from_hex(f.m(), text(a_hex, "a_hex")?).map_err(field_err)?;
        let b = FieldElement::from_hex(f.m(), text(b_hex, "b_hex")?).map_err(field_err)?;
        let p = multiply(engine, &a, &b, f)?;
        let s = CString::new(p.to_hex()).expect("hex has no NUL");
        write(out, s.into_raw())
    })
}

/// Multiplies elements of at most 64 bits given as integers (bit i is the
/// coefficient of x^i).
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_mul_u64(
    field: *const Gf2mField,
    a: u64,
    b: u64,
    engine: Gf2mEngine,
    out: *mut u64,
) -> Gf2mStatus {
    guard(|| {
        let f = &handle(field, "field")?.0;
        if f.m() > 64 {
            return fail(Gf2mStatus::InvalidArgument, format!("m = {} does not fit in 64 bits", f.m()));
        }
        let a = FieldElement::from_u64(f.m(), a).map_err(field_err)?;
        let b = FieldElement::from_u64(f.m(), b).map_err(field_err)?;
        let p = multiply(engine, &a, &b, f)?;
        write(out, p.to_u64().expect("m <= 64"))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf2m_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the gate-level multiplier for `field`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_netlist_build(field: *const Gf2mField, out: *mut *mut Gf2mNetlist) -> Gf2mStatus {
    guard(|| {
        check_out(out)?;
        let f = &handle(field, "field")?.0;
        let nl = build_netlist(f.m(), f).map_err(netlist_err)?;
        write(out, Box::into_raw(Box::new(Gf2mNetlist(nl))))
    })
}

/// # Safety
/// `netlist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_netlist_census(netlist: *const Gf2mNetlist, out: *mut Gf2mCensus) -> Gf2mStatus {
    guard(|| {
        let nl = &handle(netlist, "netlist")?.0;
        write(out, nl.census().into())
    })
}

/// Register-to-register critical path in picoseconds under the default
/// gate delays.
///
/// # Safety
/// `netlist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_netlist_critical_path_ps(netlist: *const Gf2mNetlist, out: *mut u64) -> Gf2mStatus {
    guard(|| {
        let nl = &handle(netlist, "netlist")?.0;
        let t = critical_path(nl, &GateCostTable::default().delays).map_err(netlist_err)?;
        write(out, t.0)
    })
}

/// Netlist as a JSON document, owned by the caller.
///
/// # Safety
/// `netlist` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_netlist_json(netlist: *const Gf2mNetlist, out: *mut *mut c_char) -> Gf2mStatus {
    guard(|| {
        check_out(out)?;
        let nl = &handle(netlist, "netlist")?.0;
        let s = CString::new(nl.to_json()).or_else(|e| fail(Gf2mStatus::NetlistError, e))?;
        write(out, s.into_raw())
    })
}

/// # Safety
/// `netlist` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf2m_netlist_free(netlist: *mut Gf2mNetlist) {
    if !netlist.is_null() {
        drop(Box::from_raw(netlist));
    }
}

/// Closed-form transistor count of `arch` at degree `m` under the default
/// gate costs. `strict_nand3` prices 3-input NANDs separately.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf2m_transistor_count(arch: Gf2mArch, m: usize, strict_nand3: bool, out: *mut u64) -> Gf2mStatus {
    guard(|| {
        let n = transistor_count(&Arch::from(arch).formula(), m, &GateCostTable::default(), strict_nand3)
            .map_err(|e| (Gf2mStatus::CostError, e.to_string()))?;
        write(out, n)
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn null_out_pointer_is_reported() {
        let status = unsafe { gf2m_transistor_count(Gf2mArch::Proposed, 163, false, ptr::null_mut()) };
        assert_eq!(status, Gf2mStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(gf2m_last_error()) };
        assert!(!msg.to_bytes().is_empty());
    }

    #[test]
    fn arch_mapping_is_total() {
        let all = [Gf2mArch::Proposed, Gf2mArch::Ref29, Gf2mArch::Ref25, Gf2mArch::Ref8, Gf2mArch::Ref22, Gf2mArch::Ref33];
        let mapped: Vec<Arch> = all.iter().map(|&a| a.into()).collect();
        assert_eq!(mapped, Arch::ALL.to_vec());
    }
}
