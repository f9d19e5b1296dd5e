use std::ffi::{CStr, CString};
use std::ptr;

use gf2m_sipo_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gf2m_last_error()) }.to_string_lossy().into_owned()
}

struct Field(*mut Gf2mField);

impl Field {
    fn custom(m: usize, hex: &str) -> Result<Self, Gf2mStatus> {
        let mut f = ptr::null_mut();
        match unsafe { gf2m_field_new(m, cstr(hex).as_ptr(), &mut f) } {
            Gf2mStatus::Ok => Ok(Field(f)),
            s => Err(s),
        }
    }

    fn nist(name: &str) -> Result<Self, Gf2mStatus> {
        let mut f = ptr::null_mut();
        match unsafe { gf2m_field_nist(cstr(name).as_ptr(), &mut f) } {
            Gf2mStatus::Ok => Ok(Field(f)),
            s => Err(s),
        }
    }

    fn mul_hex(&self, a: &str, b: &str, engine: Gf2mEngine) -> Result<String, Gf2mStatus> {
        let mut out = ptr::null_mut();
        let status = unsafe { gf2m_mul_hex(self.0, cstr(a).as_ptr(), cstr(b).as_ptr(), engine, &mut out) };
        if status != Gf2mStatus::Ok {
            return Err(status);
        }
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
        unsafe { gf2m_string_free(out) };
        Ok(s)
    }
}

impl Drop for Field {
    fn drop(&mut self) {
        unsafe { gf2m_field_free(self.0) }
    }
}

const ENGINES: [Gf2mEngine; 4] = [Gf2mEngine::Reference, Gf2mEngine::Serial, Gf2mEngine::SerialNand, Gf2mEngine::Gate];

#[test]
fn gf16_worked_example_every_engine() {
    let f = Field::custom(4, "3").unwrap();
    assert_eq!(unsafe { gf2m_field_degree(f.0) }, 4);
    for e in ENGINES {
        assert_eq!(f.mul_hex("b", "c", e).unwrap(), "d");
        let mut p = 0;
        assert_eq!(unsafe { gf2m_mul_u64(f.0, 0xb, 0xc, e, &mut p) }, Gf2mStatus::Ok);
        assert_eq!(p, 0xd);
    }
}

#[test]
fn u64_exhaustive_gf16_matches_reference() {
    let f = Field::custom(4, "3").unwrap();
    for a in 0..16u64 {
        for b in 0..16u64 {
            let mut want = 0;
            unsafe { gf2m_mul_u64(f.0, a, b, Gf2mEngine::Reference, &mut want) };
            for e in ENGINES {
                let mut got = u64::MAX;
                assert_eq!(unsafe { gf2m_mul_u64(f.0, a, b, e, &mut got) }, Gf2mStatus::Ok);
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn nist_field_engines_agree() {
    let f = Field::nist("b163").unwrap();
    assert_eq!(unsafe { gf2m_field_degree(f.0) }, 163);
    let a = "7".repeat(41);
    let b = "5".to_string() + &"a".repeat(40);
    let r = f.mul_hex(&a, &b, Gf2mEngine::Reference).unwrap();
    assert_eq!(r.len(), 41);
    for e in ENGINES {
        assert_eq!(f.mul_hex(&a, &b, e).unwrap(), r);
    }
    let mut out = 0;
    assert_eq!(unsafe { gf2m_mul_u64(f.0, 1, 1, Gf2mEngine::Serial, &mut out) }, Gf2mStatus::InvalidArgument);
}

#[test]
fn error_codes() {
    assert_eq!(Field::nist("b999").err(), Some(Gf2mStatus::FieldError));
    assert!(last_error().contains("b999"), "{}", last_error());
    // f_0 must be set
    assert_eq!(Field::custom(4, "2").err(), Some(Gf2mStatus::FieldError));
    let f = Field::custom(4, "3").unwrap();
    assert_eq!(f.mul_hex("1f", "1", Gf2mEngine::Serial), Err(Gf2mStatus::FieldError));
    assert_eq!(f.mul_hex("zz", "1", Gf2mEngine::Serial), Err(Gf2mStatus::FieldError));
    let mut out = ptr::null_mut();
    let s = unsafe { gf2m_mul_hex(f.0, ptr::null(), cstr("1").as_ptr(), Gf2mEngine::Serial, &mut out) };
    assert_eq!(s, Gf2mStatus::NullPointer);
    let s = unsafe { gf2m_mul_hex(ptr::null(), cstr("1").as_ptr(), cstr("1").as_ptr(), Gf2mEngine::Serial, &mut out) };
    assert_eq!(s, Gf2mStatus::NullPointer);
    let bad = [0xffu8, 0];
    let s = unsafe { gf2m_mul_hex(f.0, bad.as_ptr().cast(), cstr("1").as_ptr(), Gf2mEngine::Serial, &mut out) };
    assert_eq!(s, Gf2mStatus::InvalidUtf8);
    assert_eq!(f.mul_hex("1", "1", Gf2mEngine::Serial).unwrap(), "1");
    assert_eq!(last_error(), "");
    let mut n = 0;
    assert_eq!(unsafe { gf2m_transistor_count(Gf2mArch::Proposed, 0, false, &mut n) }, Gf2mStatus::CostError);
}

#[test]
fn netlist_handle() {
    let f = Field::nist("B-163").unwrap();
    let mut nl = ptr::null_mut();
    assert_eq!(unsafe { gf2m_netlist_build(f.0, &mut nl) }, Gf2mStatus::Ok);
    let mut c = Gf2mCensus::default();
    assert_eq!(unsafe { gf2m_netlist_census(nl, &mut c) }, Gf2mStatus::Ok);
    assert_eq!((c.and2, c.nand2 + c.nand3, c.dff, c.xor_xnor, c.mux21), (326, 1304, 326, 0, 0));
    let mut ps = 0;
    assert_eq!(unsafe { gf2m_netlist_critical_path_ps(nl, &mut ps) }, Gf2mStatus::Ok);
    assert_eq!(ps, 140);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { gf2m_netlist_json(nl, &mut json) }, Gf2mStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    assert!(text.contains("NAND3"));
    unsafe {
        gf2m_string_free(json);
        gf2m_netlist_free(nl);
        gf2m_netlist_free(ptr::null_mut());
        gf2m_field_free(ptr::null_mut());
    }
    assert_eq!(unsafe { gf2m_netlist_census(ptr::null(), &mut c) }, Gf2mStatus::NullPointer);
}

#[test]
fn transistor_counts() {
    let cases = [
        (Gf2mArch::Proposed, false, 16952),
        (Gf2mArch::Proposed, true, 18256),
        (Gf2mArch::Ref29, false, 14996),
        (Gf2mArch::Ref25, false, 20538),
    ];
    for (arch, strict, want) in cases {
        let mut n = 0;
        assert_eq!(unsafe { gf2m_transistor_count(arch, 163, strict, &mut n) }, Gf2mStatus::Ok);
        assert_eq!(n, want);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/gf2m_sipo.h");
    for name in [
        "gf2m_last_error",
        "gf2m_field_nist",
        "gf2m_field_new",
        "gf2m_field_degree",
        "gf2m_field_free",
        "gf2m_mul_hex",
        "gf2m_mul_u64",
        "gf2m_string_free",
        "gf2m_netlist_build",
        "gf2m_netlist_census",
        "gf2m_netlist_critical_path_ps",
        "gf2m_netlist_json",
        "gf2m_netlist_free",
        "gf2m_transistor_count",
        "typedef struct Gf2mField Gf2mField",
        "GF2M_STATUS_FIELD_ERROR = 4",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
