//! Transistor and delay cost model for the bit-serial multiplier and the
//! five published architectures it is compared against.
//!
//! Delays are held as integer picoseconds so every derived figure (total
//! delay, ADP, percentage reductions) is exact. Displayed values are
//! truncated toward zero, which is how the published tables round.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::NistField;
use crate::netlist::{GateCensus, GateKind, Netlist};
use crate::timing::critical_path;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("unknown architecture {0:?} (expected one of proposed, ref29, ref25, ref8, ref22, ref33)")]
    UnknownArch(String),
    #[error("field degree must be at least 2, got {0}")]
    InvalidDegree(usize),
    #[error("cost table entry {0} must be strictly positive")]
    NonPositive(&'static str),
    #[error("netlist does not match the cost formula for m = {m}:\n{diff}")]
    Mismatch { m: usize, diff: String },
}

/// A delay in whole picoseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Picos(pub u64);

impl Picos {
    pub fn from_ns(ns: f64) -> Self {
        Picos((ns * 1000.0).round() as u64)
    }

    pub fn as_ns(self) -> f64 {
        self.0 as f64 / 1000.0
    }

    /// Nanoseconds with two decimals, truncated.
    pub fn display_ns(self) -> String {
        format!("{}.{:02}", self.0 / 1000, (self.0 % 1000) / 10)
    }
}

impl std::ops::Add for Picos {
    type Output = Picos;
    fn add(self, rhs: Picos) -> Picos {
        Picos(self.0 + rhs.0)
    }
}

impl std::ops::Mul<u64> for Picos {
    type Output = Picos;
    fn mul(self, rhs: u64) -> Picos {
        Picos(self.0 * rhs)
    }
}

impl fmt::Display for Picos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_ns())
    }
}

impl Serialize for Picos {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_ns())
    }
}

impl<'de> Deserialize<'de> for Picos {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(Picos::from_ns)
    }
}

/// One value per priced cell type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CellTable<T> {
    pub nand2: T,
    pub nand3: T,
    pub and2: T,
    pub xor2: T,
    pub xnor2: T,
    pub mux21: T,
    pub dff: T,
}

impl<T: Copy> CellTable<T> {
    /// `None` for tie cells, which are free.
    pub fn get(&self, kind: GateKind) -> Option<T> {
        match kind {
            GateKind::Nand2 => Some(self.nand2),
            GateKind::Nand3 => Some(self.nand3),
            GateKind::And2 => Some(self.and2),
            GateKind::Xor2 => Some(self.xor2),
            GateKind::Xnor2 => Some(self.xnor2),
            GateKind::Mux21 => Some(self.mux21),
            GateKind::Dff => Some(self.dff),
            GateKind::Const0 | GateKind::Const1 => None,
        }
    }

    fn entries(&self) -> [(&'static str, T); 7] {
        [
            ("nand2", self.nand2),
            ("nand3", self.nand3),
            ("and2", self.and2),
            ("xor2", self.xor2),
            ("xnor2", self.xnor2),
            ("mux21", self.mux21),
            ("dff", self.dff),
        ]
    }
}

pub type TransistorTable = CellTable<u64>;
pub type GateDelayTable = CellTable<Picos>;

impl GateDelayTable {
    pub fn delay(&self, kind: GateKind) -> Picos {
        self.get(kind).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCostTable {
    pub transistors: TransistorTable,
    #[serde(rename = "delays_ns")]
    pub delays: GateDelayTable,
}

impl Default for GateCostTable {
    /// 65 nm standard-cell figures. No 3-input NAND delay is published; it
    /// takes the 2-input NAND value.
    fn default() -> Self {
        GateCostTable {
            transistors: CellTable { nand2: 4, nand3: 8, and2: 6, xor2: 12, xnor2: 12, mux21: 12, dff: 30 },
            delays: CellTable {
                nand2: Picos(20),
                nand3: Picos(20),
                and2: Picos(30),
                xor2: Picos(40),
                xnor2: Picos(40),
                mux21: Picos(30),
                dff: Picos(80),
            },
        }
    }
}

impl GateCostTable {
    pub fn validate(&self) -> Result<(), CostError> {
        for (name, v) in self.transistors.entries() {
            if v == 0 {
                return Err(CostError::NonPositive(name));
            }
        }
        for (name, v) in self.delays.entries() {
            if v.0 == 0 {
                return Err(CostError::NonPositive(name));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let table: GateCostTable = serde_json::from_str(text)?;
        table.validate()?;
        Ok(table)
    }
}

/// `ceil((m2·m² + m1·m + c) / div)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Poly2 {
    pub m2: i64,
    pub m1: i64,
    pub c: i64,
    pub div: i64,
}

impl Poly2 {
    pub const ZERO: Poly2 = Poly2 { m2: 0, m1: 0, c: 0, div: 1 };

    pub const fn new(m2: i64, m1: i64, c: i64) -> Self {
        Poly2 { m2, m1, c, div: 1 }
    }

    pub fn eval(&self, m: usize) -> u64 {
        let m = m as i64;
        let num = self.m2 * m * m + self.m1 * m + self.c;
        let v = (num + self.div - 1).div_euclid(self.div);
        v.max(0) as u64
    }

    pub fn is_quadratic(&self) -> bool {
        self.m2 != 0
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (coef, sym) in [(self.m2, "m^2"), (self.m1, "m"), (self.c, "")] {
            if coef != 0 {
                parts.push(match (coef, sym) {
                    (c, "") => c.to_string(),
                    (1, s) => s.to_string(),
                    (c, s) => format!("{c}{s}"),
                });
            }
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ").replace("+ -", "- ") };
        if self.div == 1 {
            f.write_str(&body)
        } else {
            write!(f, "({body})/{}", self.div)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arch {
    Proposed,
    Ref29,
    Ref25,
    Ref8,
    Ref22,
    Ref33,
}

impl Arch {
    pub const ALL: [Arch; 6] = [Arch::Proposed, Arch::Ref29, Arch::Ref25, Arch::Ref8, Arch::Ref22, Arch::Ref33];

    /// Row order of the published comparison tables.
    pub const PUBLISHED_ORDER: [Arch; 6] = [Arch::Ref33, Arch::Ref22, Arch::Ref8, Arch::Ref25, Arch::Ref29, Arch::Proposed];

    pub fn id(self) -> &'static str {
        match self {
            Arch::Proposed => "proposed",
            Arch::Ref29 => "ref29",
            Arch::Ref25 => "ref25",
            Arch::Ref8 => "ref8",
            Arch::Ref22 => "ref22",
            Arch::Ref33 => "ref33",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Arch::Proposed => "Proposed",
            Arch::Ref29 => "[29]",
            Arch::Ref25 => "[25]",
            Arch::Ref8 => "[8]",
            Arch::Ref22 => "[22]",
            Arch::Ref33 => "[33]",
        }
    }

    pub fn formula(self) -> ArchFormula {
        arch_formula(self)
    }

    pub fn printed(self) -> PrintedFigures {
        printed_figures(self)
    }
}

impl FromStr for Arch {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Self, CostError> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.trim_start_matches('[').trim_end_matches(']');
        match key {
            "proposed" => Ok(Arch::Proposed),
            "ref29" | "29" => Ok(Arch::Ref29),
            "ref25" | "25" => Ok(Arch::Ref25),
            "ref8" | "8" => Ok(Arch::Ref8),
            "ref22" | "22" => Ok(Arch::Ref22),
            // the transistor table labels this row [39]
            "ref33" | "33" | "ref39" | "39" => Ok(Arch::Ref33),
            _ => Err(CostError::UnknownArch(s.to_string())),
        }
    }
}

impl fmt::Display for Arch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Gate counts, latency and critical path of one architecture as
/// functions of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArchFormula {
    pub arch: Arch,
    pub counts: CellTable<Poly2>,
    pub latency_cycles: Poly2,
    /// Multiplicity of each gate delay on the critical path.
    pub critical_path: CellTable<u32>,
}

fn arch_formula(arch: Arch) -> ArchFormula {
    let z = Poly2::ZERO;
    let p = Poly2::new;
    let none = CellTable { nand2: 0, nand3: 0, and2: 0, xor2: 0, xnor2: 0, mux21: 0, dff: 0 };
    let (counts, latency_cycles, critical_path) = match arch {
        Arch::Proposed => (
            CellTable { nand2: p(0, 6, 0), nand3: p(0, 2, 0), and2: p(0, 2, 0), xor2: z, xnor2: z, mux21: z, dff: p(0, 2, 0) },
            p(0, 1, 0),
            CellTable { and2: 2, nand2: 4, ..none },
        ),
        Arch::Ref29 => (
            CellTable { nand2: p(0, 2, 0), nand3: z, and2: z, xor2: z, xnor2: p(0, 2, 0), mux21: z, dff: p(0, 2, 0) },
            p(0, 1, 0),
            CellTable { nand2: 1, xnor2: 2, ..none },
        ),
        Arch::Ref25 => (
            CellTable { nand2: z, nand3: z, and2: p(0, 2, 0), xor2: p(0, 2, 0), xnor2: z, mux21: z, dff: p(0, 3, 0) },
            p(0, 1, 0),
            CellTable { and2: 1, xor2: 1, ..none },
        ),
        Arch::Ref8 => (
            CellTable {
                nand2: z,
                nand3: z,
                and2: p(1, 0, 0),
                xor2: p(1, 1, -1),
                xnor2: z,
                mux21: z,
                dff: p(3, 2, -2),
            },
            p(0, 2, -1),
            CellTable { and2: 1, xor2: 1, ..none },
        ),
        Arch::Ref22 => (
            CellTable { nand2: z, nand3: z, and2: p(2, 2, 0), xor2: p(2, 3, 0), xnor2: z, mux21: z, dff: p(3, 4, 0) },
            Poly2 { m2: 0, m1: 1, c: 2, div: 2 },
            CellTable { and2: 1, xor2: 2, ..none },
        ),
        Arch::Ref33 => (
            CellTable { nand2: z, nand3: z, and2: p(2, 0, 0), xor2: p(2, 0, 0), xnor2: z, mux21: p(1, 0, 0), dff: p(8, 0, 0) },
            p(0, 2, 0),
            CellTable { and2: 1, xor2: 1, ..none },
        ),
    };
    ArchFormula { arch, counts, latency_cycles, critical_path }
}

/// Timing figures of one architecture at one `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub critical_path: Picos,
    pub latency_cycles: u64,
    pub total_delay: Picos,
}

impl ArchFormula {
    pub fn is_linear(&self) -> bool {
        !self.counts.entries().iter().any(|(_, p)| p.is_quadratic())
    }

    /// NAND2 plus NAND3 count.
    pub fn nand_count(&self, m: usize) -> u64 {
        self.counts.nand2.eval(m) + self.counts.nand3.eval(m)
    }
}

fn check_m(m: usize) -> Result<(), CostError> {
    if m < 2 {
        Err(CostError::InvalidDegree(m))
    } else {
        Ok(())
    }
}

/// How NAND3 cells are priced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NandPricing {
    /// Every NAND at the 2-input price; reproduces the published totals.
    #[default]
    Uniform,
    /// NAND3 at its own price.
    StrictNand3,
}

impl NandPricing {
    pub fn from_strict(strict_nand3: bool) -> Self {
        if strict_nand3 {
            NandPricing::StrictNand3
        } else {
            NandPricing::Uniform
        }
    }

    fn nand3_price(self, costs: &GateCostTable) -> u64 {
        match self {
            NandPricing::Uniform => costs.transistors.nand2,
            NandPricing::StrictNand3 => costs.transistors.nand3,
        }
    }
}

/// Total transistors of `arch` in `GF(2^m)`.
pub fn transistor_count(arch: &ArchFormula, m: usize, costs: &GateCostTable, strict_nand3: bool) -> Result<u64, CostError> {
    check_m(m)?;
    let pricing = NandPricing::from_strict(strict_nand3);
    let c = &arch.counts;
    let t = &costs.transistors;
    Ok(c.nand2.eval(m) * t.nand2
        + c.nand3.eval(m) * pricing.nand3_price(costs)
        + c.and2.eval(m) * t.and2
        + c.xor2.eval(m) * t.xor2
        + c.xnor2.eval(m) * t.xnor2
        + c.mux21.eval(m) * t.mux21
        + c.dff.eval(m) * t.dff)
}

/// Transistors of an actual gate census under the same pricing rules.
pub fn census_transistors(census: &GateCensus, costs: &GateCostTable, strict_nand3: bool) -> u64 {
    let pricing = NandPricing::from_strict(strict_nand3);
    let t = &costs.transistors;
    census.nand2 as u64 * t.nand2
        + census.nand3 as u64 * pricing.nand3_price(costs)
        + census.and2 as u64 * t.and2
        + census.xor2 as u64 * t.xor2
        + census.xnor2 as u64 * t.xnor2
        + census.mux21 as u64 * t.mux21
        + census.dff as u64 * t.dff
}

pub fn critical_path_of(arch: &ArchFormula, costs: &GateCostTable) -> Picos {
    let k = &arch.critical_path;
    let d = &costs.delays;
    d.nand2 * k.nand2 as u64
        + d.nand3 * k.nand3 as u64
        + d.and2 * k.and2 as u64
        + d.xor2 * k.xor2 as u64
        + d.xnor2 * k.xnor2 as u64
        + d.mux21 * k.mux21 as u64
        + d.dff * k.dff as u64
}

pub fn timing(arch: &ArchFormula, m: usize, costs: &GateCostTable) -> Result<Timing, CostError> {
    check_m(m)?;
    let critical_path = critical_path_of(arch, costs);
    let latency_cycles = arch.latency_cycles.eval(m);
    Ok(Timing { critical_path, latency_cycles, total_delay: critical_path * latency_cycles })
}

/// Figures printed in the published comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrintedFigures {
    /// Transistor totals for m = 163, 233, 283, 409, 571.
    pub transistors_by_m: [u64; 5],
    /// The timing/ADP row at m = 163.
    pub at_163: PrintedRow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrintedRow {
    pub critical_path: Picos,
    pub latency_cycles: u64,
    pub total_delay: Picos,
    pub transistors: u64,
    /// ADP in units of 10^5 ns·transistors, as printed (integer or one decimal).
    pub adp_e5: &'static str,
}

pub const PRINTED_MS: [usize; 5] = [163, 233, 283, 409, 571];

fn printed_figures(arch: Arch) -> PrintedFigures {
    let row = |cp: u64, lat: u64, delay: u64, tr: u64, adp: &'static str| PrintedRow {
        critical_path: Picos(cp),
        latency_cycles: lat,
        total_delay: Picos(delay),
        transistors: tr,
        adp_e5: adp,
    };
    match arch {
        Arch::Ref33 => PrintedFigures {
            transistors_by_m: [2391210, 4886010, 7208010, 15055290, 29343690],
            at_163: row(70, 818, 11410, 48176928, "5496"),
        },
        Arch::Ref22 => PrintedFigures {
            transistors_by_m: [1285418, 2620318, 3861818, 8054846, 15685370],
            at_163: row(110, 205, 17930, 21146118, "3791"),
        },
        Arch::Ref8 => PrintedFigures {
            transistors_by_m: [906910, 1850930, 2729230, 5696530, 11097934],
            at_163: row(70, 817, 11410, 837629, "95.5"),
        },
        Arch::Ref25 => PrintedFigures {
            transistors_by_m: [20538, 29358, 35658, 51534, 71946],
            at_163: row(70, 163, 11410, 20538, "2.3"),
        },
        Arch::Ref29 => PrintedFigures {
            transistors_by_m: [14996, 21436, 26036, 37628, 52532],
            at_163: row(100, 163, 16300, 14996, "2.4"),
        },
        Arch::Proposed => PrintedFigures {
            transistors_by_m: [16952, 24232, 29432, 42536, 59384],
            at_163: row(140, 163, 22820, 16952, "3.8"),
        },
    }
}

/// Whether the published figures for `arch` disagree with its formulas
/// evaluated under the default cost table.
pub fn printed_discrepancy(arch: Arch) -> bool {
    let costs = GateCostTable::default();
    let formula = arch.formula();
    let printed = arch.printed();
    let tr = |m| transistor_count(&formula, m, &costs, false).expect("m >= 2");
    let by_m = PRINTED_MS.iter().zip(printed.transistors_by_m).any(|(&m, p)| tr(m) != p);
    let t = timing(&formula, 163, &costs).expect("m >= 2");
    let row = printed.at_163;
    by_m || tr(163) != row.transistors
        || t.critical_path != row.critical_path
        || t.latency_cycles != row.latency_cycles
        || t.total_delay != row.total_delay
}

/// Where a report row's area and timing come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Evaluated from the gate-count formulas and the cost table.
    Formula,
    /// Taken from the published tables (area, critical path, latency, delay).
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostRow {
    pub arch: Arch,
    pub m: usize,
    pub source: Source,
    pub transistors: u64,
    pub critical_path: Picos,
    pub latency_cycles: u64,
    pub total_delay: Picos,
}

impl CostRow {
    /// ADP in ns·transistors.
    pub fn adp(&self) -> f64 {
        self.adp_ps() as f64 / 1000.0
    }

    fn adp_ps(&self) -> u128 {
        self.transistors as u128 * self.total_delay.0 as u128
    }

    /// ADP / 10^5, in tenths, truncated.
    pub fn adp_e5_tenths(&self) -> u64 {
        (self.adp_ps() / 10_000_000) as u64
    }

    pub fn adp_display(&self) -> String {
        tenths(self.adp_e5_tenths() as i128)
    }

    /// ADP / 10^5 truncated to whole units.
    pub fn adp_e5_whole(&self) -> u64 {
        self.adp_e5_tenths() / 10
    }
}

fn tenths(v: i128) -> String {
    let sign = if v < 0 { "-" } else { "" };
    format!("{sign}{}.{}", v.abs() / 10, v.abs() % 10)
}

/// A percentage held in hundredths (truncated toward zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hundredths(pub i64);

impl Hundredths {
    /// `100 · (num / den)` truncated to two decimals.
    pub fn ratio(num: i128, den: i128) -> Option<Self> {
        (den != 0).then(|| Hundredths((num * 10_000 / den) as i64))
    }

    pub fn as_percent(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl fmt::Display for Hundredths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        write!(f, "{sign}{}.{:02}", self.0.abs() / 100, self.0.abs() % 100)
    }
}

/// How much smaller the proposed design's area is than `other`'s, relative to `other`.
pub fn area_reduction(proposed: &CostRow, other: &CostRow) -> Option<Hundredths> {
    let (p, o) = (proposed.transistors as i128, other.transistors as i128);
    Hundredths::ratio(o - p, o)
}

/// ADP reduction relative to `other`, computed from the displayed (truncated)
/// ADP figures the way the published table does.
pub fn adp_reduction(proposed: &CostRow, other: &CostRow) -> Option<Hundredths> {
    let (p, o) = (proposed.adp_e5_tenths() as i128, other.adp_e5_tenths() as i128);
    Hundredths::ratio(o - p, o)
}

/// How much larger the proposed design's area is than `other`'s, relative to the proposed design.
pub fn area_overhead(proposed: &CostRow, other: &CostRow) -> Option<Hundredths> {
    let (p, o) = (proposed.transistors as i128, other.transistors as i128);
    Hundredths::ratio(p - o, p)
}

/// One report line: a cost row plus its comparison against the proposed design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    #[serde(flatten)]
    pub row: CostRow,
    pub adp_ns: f64,
    pub adp_e5: String,
    pub area_reduction_pct: Option<f64>,
    pub adp_reduction_pct: Option<f64>,
    /// Unrounded reductions from raw values.
    pub area_reduction_raw: f64,
    pub adp_reduction_raw: f64,
    /// Published figures for this architecture disagree with its formulas.
    pub discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    pub pricing: NandPricing,
    pub costs: GateCostTable,
    pub entries: Vec<ReportEntry>,
}

impl CostReport {
    pub fn find(&self, arch: Arch, m: usize, source: Source) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.row.arch == arch && e.row.m == m && e.row.source == source)
    }
}

/// Formula-derived row for `arch` at `m`.
pub fn formula_row(arch: Arch, m: usize, costs: &GateCostTable, strict_nand3: bool) -> Result<CostRow, CostError> {
    let f = arch.formula();
    let t = timing(&f, m, costs)?;
    Ok(CostRow {
        arch,
        m,
        source: Source::Formula,
        transistors: transistor_count(&f, m, costs, strict_nand3)?,
        critical_path: t.critical_path,
        latency_cycles: t.latency_cycles,
        total_delay: t.total_delay,
    })
}

/// Row built from the published table at m = 163, if `m` is 163.
pub fn printed_row(arch: Arch, m: usize) -> Option<CostRow> {
    (m == 163).then(|| {
        let p = arch.printed().at_163;
        CostRow {
            arch,
            m,
            source: Source::Printed,
            transistors: p.transistors,
            critical_path: p.critical_path,
            latency_cycles: p.latency_cycles,
            total_delay: p.total_delay,
        }
    })
}

fn entry(row: CostRow, proposed: &CostRow) -> ReportEntry {
    let raw = |p: f64, o: f64| if o == 0.0 { 0.0 } else { 100.0 * (o - p) / o };
    ReportEntry {
        row,
        adp_ns: row.adp(),
        adp_e5: row.adp_display(),
        area_reduction_pct: area_reduction(proposed, &row).map(Hundredths::as_percent),
        adp_reduction_pct: adp_reduction(proposed, &row).map(Hundredths::as_percent),
        area_reduction_raw: raw(proposed.transistors as f64, row.transistors as f64),
        adp_reduction_raw: raw(proposed.adp(), row.adp()),
        discrepancy: printed_discrepancy(row.arch),
    }
}

/// Cross product of architectures and degrees. Architectures whose published
/// figures disagree with their formulas also get a printed-source row at
/// m = 163.
pub fn adp_report(archs: &[Arch], ms: &[usize], costs: &GateCostTable, strict_nand3: bool) -> Result<CostReport, CostError> {
    let mut entries = Vec::new();
    for &m in ms {
        let proposed = formula_row(Arch::Proposed, m, costs, strict_nand3)?;
        for &arch in archs {
            let row = formula_row(arch, m, costs, strict_nand3)?;
            entries.push(entry(row, &proposed));
            if printed_discrepancy(arch) {
                if let Some(p) = printed_row(arch, m) {
                    entries.push(entry(p, &proposed));
                }
            }
        }
    }
    Ok(CostReport { pricing: NandPricing::from_strict(strict_nand3), costs: *costs, entries })
}

/// Result of checking a built netlist against the proposed-design formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Consistency {
    pub m: usize,
    pub census: GateCensus,
    pub transistors_uniform: u64,
    pub transistors_strict: u64,
    pub critical_path: Picos,
}

pub fn verify_against_netlist(nl: &Netlist, costs: &GateCostTable) -> Result<Consistency, CostError> {
    let m = nl.m();
    let formula = Arch::Proposed.formula();
    let census = nl.census();
    let mut diff = Vec::new();

    let expected = [
        ("AND2", census.and2 as u64, formula.counts.and2.eval(m)),
        ("NAND2", census.nand2 as u64, formula.counts.nand2.eval(m)),
        ("NAND3", census.nand3 as u64, formula.counts.nand3.eval(m)),
        ("XOR2", census.xor2 as u64, formula.counts.xor2.eval(m)),
        ("XNOR2", census.xnor2 as u64, formula.counts.xnor2.eval(m)),
        ("MUX21", census.mux21 as u64, formula.counts.mux21.eval(m)),
        ("DFF", census.dff as u64, formula.counts.dff.eval(m)),
    ];
    for (name, got, want) in expected {
        if got != want {
            diff.push(format!("  {name}: netlist {got}, formula {want}"));
        }
    }
    let mut transistors = [0u64; 2];
    for (slot, strict) in transistors.iter_mut().zip([false, true]) {
        let got = census_transistors(&census, costs, strict);
        let want = transistor_count(&formula, m, costs, strict)?;
        if got != want {
            let mode = if strict { "strict-nand3" } else { "uniform" };
            diff.push(format!("  transistors ({mode}): netlist {got}, formula {want}"));
        }
        *slot = got;
    }
    let path = critical_path(nl, &costs.delays).map_err(|e| CostError::Mismatch { m, diff: format!("  {e}") })?;
    let want = timing(&formula, m, costs)?.critical_path;
    if path != want {
        diff.push(format!("  critical path: netlist {path} ns, formula {want} ns"));
    }
    if diff.is_empty() {
        Ok(Consistency { m, census, transistors_uniform: transistors[0], transistors_strict: transistors[1], critical_path: path })
    } else {
        Err(CostError::Mismatch { m, diff: diff.join("\n") })
    }
}

/// Degrees of the NIST fields in table order.
pub fn nist_degrees() -> Vec<usize> {
    NistField::ALL.iter().map(|f| f.degree()).collect()
}
