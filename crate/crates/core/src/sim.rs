//! Two-phase cycle simulation: settle all combinational gates in topological
//! order, then clock every DFF at once.
//!
//! Net values are `u64` words so up to 64 independent operand pairs run in
//! one pass, one per bit lane.

use crate::field::FieldElement;
use crate::netlist::{GateId, GateKind, NetId, Netlist, NetlistError, RegisterInit, Result};
use crate::serial::TraceRecord;

/// Settled net values for one clock cycle (before the clock edge), lane 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimVector {
    pub cycle: usize,
    pub b_bit: bool,
    pub nets: Vec<bool>,
}

impl SimVector {
    pub fn read(&self, m: usize, nets: &[NetId]) -> FieldElement {
        let mut limbs = vec![0u64; m.div_ceil(64)];
        for (i, &n) in nets.iter().enumerate() {
            limbs[i / 64] |= (self.nets[n] as u64) << (i % 64);
        }
        FieldElement::from_limbs(m, limbs).expect("width m")
    }
}

/// A netlist compiled for repeated simulation.
pub struct Simulator<'a> {
    nl: &'a Netlist,
    order: Vec<GateId>,
    dffs: Vec<GateId>,
    values: Vec<u64>,
}

impl<'a> Simulator<'a> {
    pub fn new(nl: &'a Netlist) -> Result<Self> {
        let order = nl.combinational_order()?;
        let dffs = nl.gates().iter().filter(|g| g.kind == GateKind::Dff).map(|g| g.id).collect();
        Ok(Self { nl, order, dffs, values: vec![0; nl.net_count()] })
    }

    /// Initialization phase: operand register gets `a`, accumulator gets zero.
    fn load(&mut self, a: &[&FieldElement]) {
        self.values.iter_mut().for_each(|v| *v = 0);
        for reg in self.nl.registers() {
            for (bit, &cell) in reg.cells.iter().enumerate() {
                let q = self.nl.gates()[cell].output;
                self.values[q] = match reg.init {
                    RegisterInit::OperandA => lanes(a.iter().map(|e| e.bit(bit))),
                    RegisterInit::Zero => 0,
                };
            }
        }
    }

    fn settle(&mut self, b_serial: u64) {
        self.values[self.nl.ports().b_serial] = b_serial;
        let gates = self.nl.gates();
        let mut ins = [0u64; 3];
        for &gi in &self.order {
            let g = &gates[gi];
            for (slot, &n) in ins.iter_mut().zip(&g.inputs) {
                *slot = self.values[n];
            }
            self.values[g.output] = g.kind.eval(&ins[..g.inputs.len()]);
        }
    }

    fn clock(&mut self) {
        let gates = self.nl.gates();
        let next: Vec<(NetId, u64)> =
            self.dffs.iter().map(|&d| (gates[d].output, self.values[gates[d].inputs[0]])).collect();
        for (q, v) in next {
            self.values[q] = v;
        }
    }

    /// Runs up to 64 operand pairs for `m` cycles and returns the Reg2 contents.
    pub fn run_batch(&mut self, pairs: &[(FieldElement, FieldElement)]) -> Result<Vec<FieldElement>> {
        assert!(pairs.len() <= 64, "at most 64 lanes per pass");
        let m = self.nl.m();
        for (a, b) in pairs {
            for x in [a, b] {
                if x.m() != m {
                    return Err(NetlistError::OperandSize { expected: m, got: x.m() });
                }
            }
        }
        let a: Vec<&FieldElement> = pairs.iter().map(|(a, _)| a).collect();
        self.load(&a);
        for k in 1..=m {
            let b_lanes = lanes(pairs.iter().map(|(_, b)| b.bit(m - k)));
            self.settle(b_lanes);
            self.clock();
        }
        let p_out = &self.nl.ports().p_out;
        Ok((0..pairs.len()).map(|lane| self.nl.element_from(&self.values, p_out, lane)).collect())
    }
}

fn lanes(bits: impl Iterator<Item = bool>) -> u64 {
    bits.enumerate().fold(0, |acc, (lane, bit)| acc | ((bit as u64) << lane))
}

/// Simulates one multiplication for `cycles` clocks (at least `m`), shifting
/// `b` in MSB-first and zeros afterwards. Returns Reg2 after `m` cycles and
/// the settled net values of every cycle.
pub fn simulate(
    nl: &Netlist,
    a: &FieldElement,
    b: &FieldElement,
    cycles: usize,
) -> Result<(FieldElement, Vec<SimVector>)> {
    let m = nl.m();
    if cycles < m {
        return Err(NetlistError::TooFewCycles { min: m, got: cycles });
    }
    for x in [a, b] {
        if x.m() != m {
            return Err(NetlistError::OperandSize { expected: m, got: x.m() });
        }
    }
    let mut sim = Simulator::new(nl)?;
    sim.load(&[a]);
    let mut vectors = Vec::with_capacity(cycles);
    let mut product = None;
    for k in 1..=cycles {
        let b_bit = k <= m && b.bit(m - k);
        sim.settle(b_bit as u64);
        vectors.push(SimVector { cycle: k, b_bit, nets: sim.values.iter().map(|v| v & 1 == 1).collect() });
        sim.clock();
        if k == m {
            product = Some(nl.element_from(&sim.values, &nl.ports().p_out, 0));
        }
    }
    Ok((product.expect("cycles >= m"), vectors))
}

/// Multiplies many pairs, 64 per simulator pass.
pub fn simulate_many(nl: &Netlist, pairs: &[(FieldElement, FieldElement)]) -> Result<Vec<FieldElement>> {
    let mut sim = Simulator::new(nl)?;
    let mut out = Vec::with_capacity(pairs.len());
    for chunk in pairs.chunks(64) {
        out.extend(sim.run_batch(chunk)?);
    }
    Ok(out)
}

/// Register-level trace in the same shape as the algorithmic trace: the
/// G-block outputs and the value clocked into Reg2 each cycle.
pub fn simulate_trace(nl: &Netlist, a: &FieldElement, b: &FieldElement) -> Result<(FieldElement, Vec<TraceRecord>)> {
    let m = nl.m();
    if nl.ports().g_out.len() != m {
        return Err(NetlistError::Port("netlist has no g_out port to trace".into()));
    }
    let (product, vectors) = simulate(nl, a, b, m)?;
    let h_in = nl.reg2_inputs();
    let trace = vectors
        .iter()
        .map(|v| TraceRecord {
            cycle: v.cycle,
            b_bit: v.b_bit as u8,
            after_g: v.read(m, &nl.ports().g_out),
            after_h: v.read(m, &h_in),
        })
        .collect();
    Ok((product, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gf16_poly, gf256_poly, mul_reference, NistField};
    use crate::netlist::build_netlist;
    use crate::serial::mul_serial;

    fn e4(v: u64) -> FieldElement {
        FieldElement::from_u64(4, v).unwrap()
    }

    #[test]
    fn worked_example() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        let (p, vectors) = simulate(&nl, &e4(0b1011), &e4(0b1100), 4).unwrap();
        assert_eq!(p, e4(0b1101));
        assert_eq!(vectors.len(), 4);
    }

    #[test]
    fn extra_cycles_do_not_change_reported_product() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        let (p, vectors) = simulate(&nl, &e4(0b1011), &e4(0b1100), 7).unwrap();
        assert_eq!(p, e4(0b1101));
        assert_eq!(vectors.len(), 7);
        assert!(vectors[4..].iter().all(|v| !v.b_bit));
    }

    #[test]
    fn zero_serial_input_keeps_reg2_zero() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        let (_, trace) = simulate_trace(&nl, &e4(0b1111), &e4(0)).unwrap();
        assert!(trace.iter().all(|r| r.after_h.is_zero()));
    }

    #[test]
    fn trace_matches_algorithm_exhaustively_gf16() {
        let f = gf16_poly();
        let nl = build_netlist(4, &f).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                let (p, gate_trace) = simulate_trace(&nl, &e4(a), &e4(b)).unwrap();
                let (q, alg_trace) = mul_serial(&e4(a), &e4(b), &f, false).unwrap();
                assert_eq!(p, q);
                assert_eq!(gate_trace, alg_trace, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn batch_lanes_match_reference() {
        let f = gf256_poly();
        let nl = build_netlist(8, &f).unwrap();
        let pairs: Vec<_> = (0..200u64)
            .map(|i| {
                let a = FieldElement::from_u64(8, (i * 37 + 11) & 0xff).unwrap();
                let b = FieldElement::from_u64(8, (i * 101 + 3) & 0xff).unwrap();
                (a, b)
            })
            .collect();
        let got = simulate_many(&nl, &pairs).unwrap();
        for ((a, b), p) in pairs.iter().zip(got) {
            assert_eq!(p, mul_reference(a, b, &f).unwrap());
        }
    }

    #[test]
    fn size_and_cycle_errors() {
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        assert_eq!(
            simulate(&nl, &e4(1), &e4(1), 3).unwrap_err(),
            NetlistError::TooFewCycles { min: 4, got: 3 }
        );
        let wide = FieldElement::one(8);
        assert!(matches!(simulate(&nl, &wide, &e4(1), 4), Err(NetlistError::OperandSize { .. })));
    }

    #[test]
    fn deterministic_vectors() {
        let f = NistField::B163.poly();
        let nl = build_netlist(163, &f).unwrap();
        let mut rng = rand::thread_rng();
        let a = FieldElement::random(163, &mut rng);
        let b = FieldElement::random(163, &mut rng);
        let first = simulate(&nl, &a, &b, 163).unwrap();
        let second = simulate(&nl, &a, &b, 163).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.0, mul_reference(&a, &b, &f).unwrap());
    }
}
