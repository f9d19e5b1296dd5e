//! Gate-level netlist of the two-block bit-serial multiplier.
//!
//! Block G computes `P·x mod f` and block H adds `b·A`; each output bit of
//! each block is one AND2, one NAND3 and three NAND2 cells. Reg1 holds A,
//! Reg2 holds the partial product, and the shift-left feeding G is wiring.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, IrreduciblePoly};

pub type NetId = usize;
pub type GateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("field degree must be at least 2, got {0}")]
    InvalidDegree(usize),
    #[error("reduction polynomial degree {poly} does not match netlist degree {m}")]
    DegreeMismatch { m: usize, poly: usize },
    #[error("reduction polynomial must have f_0 = 1")]
    MissingConstantTerm,
    #[error("gate {gate} ({kind}) has {got} inputs, expected {expected}")]
    Arity { gate: GateId, kind: GateKind, expected: usize, got: usize },
    #[error("gate {gate} references net {net}, but only {net_count} nets exist")]
    UnknownNet { gate: GateId, net: NetId, net_count: usize },
    #[error("net {net} is driven by both gate {first} and gate {second}")]
    MultipleDrivers { net: NetId, first: GateId, second: GateId },
    #[error("net {net} read by gate {gate} has no driver")]
    Undriven { net: NetId, gate: GateId },
    #[error("combinational cycle through gate {gate}")]
    CombinationalCycle { gate: GateId },
    #[error("gate ids must equal their position: found id {found} at index {index}")]
    GateOrder { index: usize, found: GateId },
    #[error("malformed port or register: {0}")]
    Port(String),
    #[error("operand has degree {got}, netlist expects {expected}")]
    OperandSize { expected: usize, got: usize },
    #[error("need at least {min} cycles, got {got}")]
    TooFewCycles { min: usize, got: usize },
    #[error("netlist document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, NetlistError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    And2,
    Nand2,
    Nand3,
    Xor2,
    Xnor2,
    Mux21,
    Dff,
    Const0,
    Const1,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Const0 | GateKind::Const1 => 0,
            GateKind::Dff => 1,
            GateKind::And2 | GateKind::Nand2 | GateKind::Xor2 | GateKind::Xnor2 => 2,
            GateKind::Nand3 | GateKind::Mux21 => 3,
        }
    }

    pub fn is_sequential(self) -> bool {
        self == GateKind::Dff
    }

    /// Evaluates 64 independent lanes at once. `Mux21` inputs are `(sel, d0, d1)`.
    #[inline]
    pub fn eval(self, ins: &[u64]) -> u64 {
        match self {
            GateKind::And2 => ins[0] & ins[1],
            GateKind::Nand2 => !(ins[0] & ins[1]),
            GateKind::Nand3 => !(ins[0] & ins[1] & ins[2]),
            GateKind::Xor2 => ins[0] ^ ins[1],
            GateKind::Xnor2 => !(ins[0] ^ ins[1]),
            GateKind::Mux21 => (!ins[0] & ins[1]) | (ins[0] & ins[2]),
            GateKind::Dff => ins[0],
            GateKind::Const0 => 0,
            GateKind::Const1 => u64::MAX,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateKind::And2 => "AND2",
            GateKind::Nand2 => "NAND2",
            GateKind::Nand3 => "NAND3",
            GateKind::Xor2 => "XOR2",
            GateKind::Xnor2 => "XNOR2",
            GateKind::Mux21 => "MUX21",
            GateKind::Dff => "DFF",
            GateKind::Const0 => "CONST0",
            GateKind::Const1 => "CONST1",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stage {
    G,
    H,
}

/// Which per-bit block instance a gate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockTag {
    pub stage: Stage,
    pub bit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub id: GateId,
    pub kind: GateKind,
    pub inputs: Vec<NetId>,
    pub output: NetId,
    /// Combinational depth inside the owning block; 0 for registers and ties.
    #[serde(default)]
    pub level: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<BlockTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ports {
    /// Reg1 outputs; preloaded with operand A.
    pub a: Vec<NetId>,
    /// Constant nets carrying `f_0 .. f_{m-1}`.
    pub f: Vec<NetId>,
    pub b_serial: NetId,
    /// Block G outputs (the reduced, shifted partial product).
    #[serde(default)]
    pub g_out: Vec<NetId>,
    /// Reg2 outputs.
    pub p_out: Vec<NetId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegisterInit {
    OperandA,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub init: RegisterInit,
    /// DFF gate ids, bit 0 first.
    pub cells: Vec<GateId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateCensus {
    pub and2: usize,
    pub nand2: usize,
    pub nand3: usize,
    pub xor2: usize,
    pub xnor2: usize,
    pub mux21: usize,
    pub dff: usize,
    pub ties: usize,
}

impl GateCensus {
    pub fn nand(&self) -> usize {
        self.nand2 + self.nand3
    }

    pub fn xor_xnor(&self) -> usize {
        self.xor2 + self.xnor2
    }

    pub fn count(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::And2 => self.and2,
            GateKind::Nand2 => self.nand2,
            GateKind::Nand3 => self.nand3,
            GateKind::Xor2 => self.xor2,
            GateKind::Xnor2 => self.xnor2,
            GateKind::Mux21 => self.mux21,
            GateKind::Dff => self.dff,
            GateKind::Const0 | GateKind::Const1 => self.ties,
        }
    }
}

impl fmt::Display for GateCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AND2={} NAND={} (NAND3={} NAND2={}) DFF={} XOR/XNOR={} MUX={}",
            self.and2,
            self.nand(),
            self.nand3,
            self.nand2,
            self.dff,
            self.xor_xnor(),
            self.mux21
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Netlist {
    m: usize,
    nets: Vec<String>,
    gates: Vec<Gate>,
    ports: Ports,
    registers: Vec<Register>,
}

/// Serialized form; `nets` may be omitted in hand-written files.
#[derive(Deserialize)]
struct NetlistDoc {
    m: usize,
    #[serde(default)]
    nets: Vec<String>,
    #[serde(default)]
    net_count: Option<usize>,
    gates: Vec<Gate>,
    ports: Ports,
    registers: Vec<Register>,
}

struct Builder {
    nets: Vec<String>,
    gates: Vec<Gate>,
}

impl Builder {
    fn net(&mut self, name: String) -> NetId {
        self.nets.push(name);
        self.nets.len() - 1
    }

    fn gate(&mut self, kind: GateKind, inputs: Vec<NetId>, output: NetId, level: u8, block: Option<BlockTag>) -> GateId {
        let id = self.gates.len();
        self.gates.push(Gate { id, kind, inputs, output, level, block });
        id
    }

    /// One output bit of a block: `s XOR (x·y)` as AND2 + NAND3 + 3×NAND2.
    fn xor_and_cell(&mut self, tag: BlockTag, s: NetId, x: NetId, y: NetId) -> NetId {
        let p = match tag.stage {
            Stage::G => "g",
            Stage::H => "h",
        };
        let i = tag.bit;
        let and = self.net(format!("{p}.and[{i}]"));
        let t = self.net(format!("{p}.t[{i}]"));
        let u1 = self.net(format!("{p}.u1[{i}]"));
        let u2 = self.net(format!("{p}.u2[{i}]"));
        let out = self.net(format!("{p}[{i}]"));
        let b = Some(tag);
        self.gate(GateKind::And2, vec![x, y], and, 1, b);
        self.gate(GateKind::Nand3, vec![s, x, y], t, 1, b);
        self.gate(GateKind::Nand2, vec![s, t], u1, 2, b);
        self.gate(GateKind::Nand2, vec![t, and], u2, 2, b);
        self.gate(GateKind::Nand2, vec![u1, u2], out, 3, b);
        out
    }
}

/// Builds the multiplier for `GF(2^m)` with `f` wired in as constants.
pub fn build_netlist(m: usize, f: &IrreduciblePoly) -> Result<Netlist> {
    if m < 2 {
        return Err(NetlistError::InvalidDegree(m));
    }
    if f.m() != m {
        return Err(NetlistError::DegreeMismatch { m, poly: f.m() });
    }
    if !f.coeff(0) {
        return Err(NetlistError::MissingConstantTerm);
    }
    let mut b = Builder { nets: Vec::new(), gates: Vec::new() };

    let a: Vec<NetId> = (0..m).map(|i| b.net(format!("a[{i}]"))).collect();
    let p: Vec<NetId> = (0..m).map(|i| b.net(format!("p[{i}]"))).collect();
    let b_serial = b.net("b_serial".to_string());
    let fc: Vec<NetId> = (0..m).map(|i| b.net(format!("f[{i}]"))).collect();
    let zero = b.net("zero".to_string());

    for (i, &net) in fc.iter().enumerate() {
        let kind = if f.coeff(i) { GateKind::Const1 } else { GateKind::Const0 };
        b.gate(kind, vec![], net, 0, None);
    }
    b.gate(GateKind::Const0, vec![], zero, 0, None);

    let top = p[m - 1];
    let g_out: Vec<NetId> = (0..m)
        .map(|i| {
            let shifted = if i == 0 { zero } else { p[i - 1] };
            b.xor_and_cell(BlockTag { stage: Stage::G, bit: i }, shifted, top, fc[i])
        })
        .collect();
    let h_out: Vec<NetId> = (0..m)
        .map(|i| b.xor_and_cell(BlockTag { stage: Stage::H, bit: i }, g_out[i], b_serial, a[i]))
        .collect();

    let reg1: Vec<GateId> = (0..m).map(|i| b.gate(GateKind::Dff, vec![a[i]], a[i], 0, None)).collect();
    let reg2: Vec<GateId> = (0..m).map(|i| b.gate(GateKind::Dff, vec![h_out[i]], p[i], 0, None)).collect();

    let nl = Netlist {
        m,
        nets: b.nets,
        gates: b.gates,
        ports: Ports { a, f: fc, b_serial, g_out, p_out: p },
        registers: vec![
            Register { name: "reg1".into(), init: RegisterInit::OperandA, cells: reg1 },
            Register { name: "reg2".into(), init: RegisterInit::Zero, cells: reg2 },
        ],
    };
    nl.validate()?;
    Ok(nl)
}

impl Netlist {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn ports(&self) -> &Ports {
        &self.ports
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn net_count(&self) -> usize {
        self.nets.len()
    }

    pub fn net_name(&self, net: NetId) -> &str {
        &self.nets[net]
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Data-input nets of the register holding the partial product.
    pub fn reg2_inputs(&self) -> Vec<NetId> {
        self.registers
            .iter()
            .find(|r| r.init == RegisterInit::Zero)
            .map(|r| r.cells.iter().map(|&c| self.gates[c].inputs[0]).collect())
            .unwrap_or_default()
    }

    pub fn census(&self) -> GateCensus {
        let mut c = GateCensus::default();
        for g in &self.gates {
            match g.kind {
                GateKind::And2 => c.and2 += 1,
                GateKind::Nand2 => c.nand2 += 1,
                GateKind::Nand3 => c.nand3 += 1,
                GateKind::Xor2 => c.xor2 += 1,
                GateKind::Xnor2 => c.xnor2 += 1,
                GateKind::Mux21 => c.mux21 += 1,
                GateKind::Dff => c.dff += 1,
                GateKind::Const0 | GateKind::Const1 => c.ties += 1,
            }
        }
        c
    }

    /// Census after folding gates whose inputs include a constant. Diagnostic
    /// only; the nominal census keeps every gate.
    pub fn folded_census(&self) -> GateCensus {
        let mut constant = vec![None::<bool>; self.nets.len()];
        for g in &self.gates {
            match g.kind {
                GateKind::Const0 => constant[g.output] = Some(false),
                GateKind::Const1 => constant[g.output] = Some(true),
                _ => {}
            }
        }
        let order = self.combinational_order().unwrap_or_default();
        let mut removed = vec![false; self.gates.len()];
        for gi in order {
            let g = &self.gates[gi];
            let ins: Vec<Option<bool>> = g.inputs.iter().map(|&n| constant[n]).collect();
            let folded = match g.kind {
                GateKind::And2 if ins.contains(&Some(false)) => Some(false),
                GateKind::Nand2 | GateKind::Nand3 if ins.contains(&Some(false)) => Some(true),
                _ if !ins.is_empty() && ins.iter().all(Option::is_some) => {
                    let lanes: Vec<u64> = ins.iter().map(|v| if v.unwrap() { u64::MAX } else { 0 }).collect();
                    Some(g.kind.eval(&lanes) & 1 == 1)
                }
                _ => None,
            };
            if let Some(v) = folded {
                constant[g.output] = Some(v);
                removed[gi] = true;
            }
        }
        let mut c = GateCensus::default();
        for (g, _) in self.gates.iter().zip(&removed).filter(|(_, &r)| !r) {
            match g.kind {
                GateKind::And2 => c.and2 += 1,
                GateKind::Nand2 => c.nand2 += 1,
                GateKind::Nand3 => c.nand3 += 1,
                GateKind::Xor2 => c.xor2 += 1,
                GateKind::Xnor2 => c.xnor2 += 1,
                GateKind::Mux21 => c.mux21 += 1,
                GateKind::Dff => c.dff += 1,
                GateKind::Const0 | GateKind::Const1 => c.ties += 1,
            }
        }
        c
    }

    /// Driver gate of every net, if any.
    pub fn drivers(&self) -> Vec<Option<GateId>> {
        let mut d = vec![None; self.nets.len()];
        for g in &self.gates {
            if g.output < d.len() {
                d[g.output] = Some(g.id);
            }
        }
        d
    }

    /// Combinational gates (including ties) in topological order.
    pub fn combinational_order(&self) -> Result<Vec<GateId>> {
        let drivers = self.drivers();
        let comb = |id: GateId| !self.gates[id].kind.is_sequential();
        let mut indegree = vec![0usize; self.gates.len()];
        let mut fanout: Vec<Vec<GateId>> = vec![Vec::new(); self.gates.len()];
        for g in self.gates.iter().filter(|g| comb(g.id)) {
            for &n in &g.inputs {
                if let Some(d) = drivers[n].filter(|&d| comb(d)) {
                    indegree[g.id] += 1;
                    fanout[d].push(g.id);
                }
            }
        }
        let mut queue: VecDeque<GateId> =
            self.gates.iter().filter(|g| comb(g.id) && indegree[g.id] == 0).map(|g| g.id).collect();
        let mut order = Vec::with_capacity(self.gates.len());
        while let Some(id) = queue.pop_front() {
            order.push(id);
            for &next in &fanout[id] {
                indegree[next] -= 1;
                if indegree[next] == 0 {
                    queue.push_back(next);
                }
            }
        }
        match self.gates.iter().find(|g| comb(g.id) && indegree[g.id] > 0) {
            Some(g) => Err(NetlistError::CombinationalCycle { gate: g.id }),
            None => Ok(order),
        }
    }

    /// Structural well-formedness: arities, single drivers, driven inputs,
    /// consistent ports and registers, acyclic combinational logic.
    pub fn validate(&self) -> Result<()> {
        let n = self.nets.len();
        if self.m < 2 {
            return Err(NetlistError::InvalidDegree(self.m));
        }
        let mut driver: Vec<Option<GateId>> = vec![None; n];
        for (index, g) in self.gates.iter().enumerate() {
            if g.id != index {
                return Err(NetlistError::GateOrder { index, found: g.id });
            }
            if g.inputs.len() != g.kind.arity() {
                return Err(NetlistError::Arity {
                    gate: g.id,
                    kind: g.kind,
                    expected: g.kind.arity(),
                    got: g.inputs.len(),
                });
            }
            for &net in g.inputs.iter().chain(std::iter::once(&g.output)) {
                if net >= n {
                    return Err(NetlistError::UnknownNet { gate: g.id, net, net_count: n });
                }
            }
            if let Some(first) = driver[g.output] {
                return Err(NetlistError::MultipleDrivers { net: g.output, first, second: g.id });
            }
            driver[g.output] = Some(g.id);
        }
        let ports = &self.ports;
        if ports.b_serial >= n || driver[ports.b_serial].is_some() {
            return Err(NetlistError::Port("b_serial must be an undriven primary input".into()));
        }
        for g in &self.gates {
            if let Some(&net) = g.inputs.iter().find(|&&net| net != ports.b_serial && driver[net].is_none()) {
                return Err(NetlistError::Undriven { net, gate: g.id });
            }
        }
        let width_ok = |v: &[NetId]| v.len() == self.m && v.iter().all(|&x| x < n);
        if !width_ok(&ports.a) || !width_ok(&ports.f) || !width_ok(&ports.p_out) {
            return Err(NetlistError::Port(format!("ports a, f and p_out must each list {} valid nets", self.m)));
        }
        if !ports.g_out.is_empty() && !width_ok(&ports.g_out) {
            return Err(NetlistError::Port(format!("g_out must list {} valid nets", self.m)));
        }
        for (i, &net) in ports.f.iter().enumerate() {
            let tie = driver[net].map(|d| self.gates[d].kind);
            if !matches!(tie, Some(GateKind::Const0 | GateKind::Const1)) {
                return Err(NetlistError::Port(format!("f[{i}] is not driven by a constant")));
            }
        }
        let mut seen = vec![false; self.gates.len()];
        for reg in &self.registers {
            if reg.cells.len() != self.m {
                return Err(NetlistError::Port(format!("register {} has {} cells", reg.name, reg.cells.len())));
            }
            for &c in &reg.cells {
                if c >= self.gates.len() || self.gates[c].kind != GateKind::Dff || seen[c] {
                    return Err(NetlistError::Port(format!("register {} cell {c} is not a distinct DFF", reg.name)));
                }
                seen[c] = true;
            }
        }
        let outputs = |init: RegisterInit| -> Option<Vec<NetId>> {
            let r = self.registers.iter().find(|r| r.init == init)?;
            Some(r.cells.iter().map(|&c| self.gates[c].output).collect())
        };
        if outputs(RegisterInit::OperandA).as_deref() != Some(&ports.a[..]) {
            return Err(NetlistError::Port("port a must be the outputs of the operand register".into()));
        }
        if outputs(RegisterInit::Zero).as_deref() != Some(&ports.p_out[..]) {
            return Err(NetlistError::Port("port p_out must be the outputs of the accumulator register".into()));
        }
        self.combinational_order().map(|_| ())
    }

    /// The reduction polynomial encoded by the constant nets on port `f`.
    pub fn reduction_poly(&self) -> std::result::Result<IrreduciblePoly, crate::field::FieldError> {
        let drivers = self.drivers();
        let exps: Vec<usize> = self
            .ports
            .f
            .iter()
            .enumerate()
            .filter(|(_, &net)| drivers[net].map(|d| self.gates[d].kind) == Some(GateKind::Const1))
            .map(|(i, _)| i)
            .collect();
        IrreduciblePoly::from_exponents(self.m, &exps)
    }

    /// Reads the given nets as an element, bit `i` from `nets[i]` in lane 0.
    pub(crate) fn element_from(&self, values: &[u64], nets: &[NetId], lane: usize) -> FieldElement {
        let mut limbs = vec![0u64; self.m.div_ceil(64)];
        for (i, &net) in nets.iter().enumerate() {
            limbs[i / 64] |= ((values[net] >> lane) & 1) << (i % 64);
        }
        FieldElement::from_limbs(self.m, limbs).expect("width m")
    }

    /// Pretty-printed JSON with stable field and gate order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("netlist serializes")
    }

    pub fn from_json(text: &str) -> Result<Netlist> {
        let doc: NetlistDoc = serde_json::from_str(text).map_err(|e| NetlistError::Document(e.to_string()))?;
        let max_net = doc
            .gates
            .iter()
            .flat_map(|g| g.inputs.iter().chain(std::iter::once(&g.output)))
            .chain(std::iter::once(&doc.ports.b_serial))
            .copied()
            .max()
            .map_or(0, |x| x + 1);
        let count = doc.net_count.unwrap_or(doc.nets.len()).max(doc.nets.len()).max(max_net);
        let mut nets = doc.nets;
        nets.extend((nets.len()..count).map(|i| format!("n{i}")));
        let nl = Netlist { m: doc.m, nets, gates: doc.gates, ports: doc.ports, registers: doc.registers };
        nl.validate()?;
        Ok(nl)
    }

    /// Removes one gate (renumbering the rest); for negative testing.
    #[doc(hidden)]
    pub fn without_gate(&self, id: GateId) -> Netlist {
        let mut nl = self.clone();
        nl.gates.remove(id);
        for (i, g) in nl.gates.iter_mut().enumerate() {
            g.id = i;
        }
        for r in &mut nl.registers {
            r.cells.retain(|&c| c != id);
            for c in &mut r.cells {
                if *c > id {
                    *c -= 1;
                }
            }
        }
        nl
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gf16_poly, gf256_poly, NistField};

    #[test]
    fn census_m4() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        let c = nl.census();
        assert_eq!((c.and2, c.nand3, c.nand2, c.dff), (8, 8, 24, 8));
        assert_eq!(c.nand(), 32);
        assert_eq!((c.xor2, c.xnor2, c.mux21), (0, 0, 0));
        assert_eq!(c.ties, 5);
    }

    #[test]
    fn census_b163() {
        let nl = build_netlist(163, &NistField::B163.poly()).unwrap();
        let c = nl.census();
        assert_eq!((c.and2, c.nand(), c.dff), (326, 1304, 326));
    }

    #[test]
    fn rejects_bad_construction_inputs() {
        assert_eq!(build_netlist(1, &gf16_poly()).unwrap_err(), NetlistError::InvalidDegree(1));
        assert_eq!(build_netlist(8, &gf16_poly()).unwrap_err(), NetlistError::DegreeMismatch { m: 8, poly: 4 });
    }

    #[test]
    fn block_levels() {
        let nl = build_netlist(8, &gf256_poly()).unwrap();
        for g in nl.gates().iter().filter(|g| g.block.is_some()) {
            let expect = match g.kind {
                GateKind::And2 | GateKind::Nand3 => 1,
                GateKind::Nand2 if nl.net_name(g.output).contains(".u") => 2,
                GateKind::Nand2 => 3,
                other => panic!("unexpected {other} in block"),
            };
            assert_eq!(g.level, expect, "gate {}", g.id);
        }
    }

    #[test]
    fn stable_ordering() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        let tags: Vec<_> = nl.gates().iter().filter_map(|g| g.block).collect();
        let mut sorted = tags.clone();
        sorted.sort();
        assert_eq!(tags, sorted);
        let first_dff = nl.gates().iter().position(|g| g.kind == GateKind::Dff).unwrap();
        assert!(nl.gates()[first_dff..].iter().all(|g| g.kind == GateKind::Dff));
        assert_eq!(nl.to_json(), build_netlist(4, &gf16_poly()).unwrap().to_json());
    }

    #[test]
    fn json_round_trip() {
        let nl = build_netlist(8, &gf256_poly()).unwrap();
        let back = Netlist::from_json(&nl.to_json()).unwrap();
        assert_eq!(back, nl);
        assert_eq!(back.reduction_poly().unwrap(), gf256_poly());
    }

    #[test]
    fn detects_combinational_cycle() {
        let mut nl = build_netlist(4, &gf16_poly()).unwrap();
        // feed the G output of bit 0 back into its own NAND3
        let out = nl.ports.g_out[0];
        let nand3 = nl.gates.iter().position(|g| g.kind == GateKind::Nand3).unwrap();
        nl.gates[nand3].inputs[0] = out;
        assert!(matches!(nl.validate(), Err(NetlistError::CombinationalCycle { .. })));
    }

    #[test]
    fn detects_arity_and_driver_errors() {
        let base = build_netlist(4, &gf16_poly()).unwrap();
        let mut nl = base.clone();
        let and = nl.gates.iter().position(|g| g.kind == GateKind::And2).unwrap();
        nl.gates[and].inputs.pop();
        assert!(matches!(nl.validate(), Err(NetlistError::Arity { .. })));

        let mut nl = base.clone();
        let out = nl.gates[and].output;
        let other = and + 1;
        nl.gates[other].output = out;
        assert!(matches!(nl.validate(), Err(NetlistError::MultipleDrivers { .. })));

        let removed = base.without_gate(and);
        assert!(matches!(removed.validate(), Err(NetlistError::Undriven { .. })));
    }

    #[test]
    fn folded_census_drops_constant_fed_gates() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        let folded = nl.folded_census();
        assert!(folded.nand() < nl.census().nand());
        assert_eq!(folded.dff, 8);
    }
}
