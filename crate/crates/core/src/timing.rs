//! Register-to-register static timing over a netlist.
//!
//! [`critical_path`] times each per-bit block as a unit: every input of a
//! block is taken to arrive when the latest one does, and the block then adds
//! its own longest internal path. [`flat_critical_path`] follows individual
//! gate-to-gate paths and can be shorter, since a late input may enter a
//! block below its deepest gate.

use std::collections::{BTreeMap, VecDeque};

use crate::cost::{GateDelayTable, Picos};
use crate::netlist::{BlockTag, GateId, GateKind, NetId, Netlist, Result};

/// Launch points (register outputs, primary inputs, ties) arrive at time zero.
pub fn critical_path(nl: &Netlist, delays: &GateDelayTable) -> Result<Picos> {
    longest_path(nl, delays, true)
}

/// Gate-level longest path ignoring block boundaries. Diagnostic only.
pub fn flat_critical_path(nl: &Netlist, delays: &GateDelayTable) -> Result<Picos> {
    longest_path(nl, delays, false)
}

/// Worst delay of a single block instance from its inputs to its output.
pub fn block_delay(nl: &Netlist, delays: &GateDelayTable, tag: BlockTag) -> Result<Picos> {
    let arrivals = arrival_times(nl, delays, true)?;
    let gates: Vec<_> = nl.gates().iter().filter(|g| g.block == Some(tag)).collect();
    let inside: std::collections::HashSet<NetId> = gates.iter().map(|g| g.output).collect();
    let boundary = gates
        .iter()
        .flat_map(|g| g.inputs.iter())
        .filter(|n| !inside.contains(n))
        .map(|&n| arrivals[n])
        .max()
        .unwrap_or_default();
    let out = gates.iter().map(|g| arrivals[g.output]).max().unwrap_or_default();
    Ok(Picos(out.0 - boundary.0))
}

fn longest_path(nl: &Netlist, delays: &GateDelayTable, by_block: bool) -> Result<Picos> {
    let arrivals = arrival_times(nl, delays, by_block)?;
    Ok(nl
        .gates()
        .iter()
        .filter(|g| g.kind == GateKind::Dff)
        .map(|g| arrivals[g.inputs[0]])
        .max()
        .unwrap_or_default())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Instance {
    Block(BlockTag),
    Gate(GateId),
}

/// Arrival time of every net.
fn arrival_times(nl: &Netlist, delays: &GateDelayTable, by_block: bool) -> Result<Vec<Picos>> {
    let order = nl.combinational_order()?;
    let gates = nl.gates();
    let instance_of = |id: GateId| match gates[id].block {
        Some(tag) if by_block => Instance::Block(tag),
        _ => Instance::Gate(id),
    };

    // gates of each instance, kept in topological order
    let mut members: BTreeMap<Instance, Vec<GateId>> = BTreeMap::new();
    for &id in &order {
        members.entry(instance_of(id)).or_default().push(id);
    }
    let drivers = nl.drivers();
    let comb_driver =
        |net: NetId| drivers[net].filter(|&d| !gates[d].kind.is_sequential()).map(instance_of);

    // order instances so every external input is timed before it is read
    let keys: Vec<Instance> = members.keys().copied().collect();
    let index: BTreeMap<Instance, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut indegree = vec![0usize; keys.len()];
    let mut fanout: Vec<Vec<usize>> = vec![Vec::new(); keys.len()];
    for (i, key) in keys.iter().enumerate() {
        let mut sources: Vec<usize> = members[key]
            .iter()
            .flat_map(|&g| gates[g].inputs.iter())
            .filter_map(|&n| comb_driver(n))
            .filter(|src| src != key)
            .map(|src| index[&src])
            .collect();
        sources.sort_unstable();
        sources.dedup();
        for s in sources {
            indegree[i] += 1;
            fanout[s].push(i);
        }
    }
    let mut queue: VecDeque<usize> = (0..keys.len()).filter(|&i| indegree[i] == 0).collect();
    let mut arrival = vec![Picos(0); nl.net_count()];
    while let Some(i) = queue.pop_front() {
        let key = keys[i];
        let inside: Vec<NetId> = members[&key].iter().map(|&g| gates[g].output).collect();
        let boundary = members[&key]
            .iter()
            .flat_map(|&g| gates[g].inputs.iter())
            .filter(|n| !inside.contains(n))
            .map(|&n| arrival[n])
            .max()
            .unwrap_or_default();
        for &g in &members[&key] {
            let gate = &gates[g];
            let start = gate
                .inputs
                .iter()
                .map(|n| if inside.contains(n) { arrival[*n] } else { boundary })
                .max()
                .unwrap_or_default();
            arrival[gate.output] = start + delays.delay(gate.kind);
        }
        for &next in &fanout[i] {
            indegree[next] -= 1;
            if indegree[next] == 0 {
                queue.push_back(next);
            }
        }
    }
    Ok(arrival)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{CellTable, GateCostTable};
    use crate::field::{gf16_poly, NistField};
    use crate::netlist::{build_netlist, Stage};

    #[test]
    fn block_level_path_is_two_and_plus_four_nand() {
        let d = GateCostTable::default().delays;
        for id in [NistField::B163, NistField::B233] {
            let nl = build_netlist(id.degree(), &id.poly()).unwrap();
            assert_eq!(critical_path(&nl, &d).unwrap(), Picos(140));
        }
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        assert_eq!(critical_path(&nl, &d).unwrap().display_ns(), "0.14");
    }

    #[test]
    fn single_block_delay() {
        let d = GateCostTable::default().delays;
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        for stage in [Stage::G, Stage::H] {
            for bit in 0..4 {
                assert_eq!(block_delay(&nl, &d, BlockTag { stage, bit }).unwrap(), Picos(70));
            }
        }
    }

    #[test]
    fn flat_path_is_shorter() {
        let d = GateCostTable::default().delays;
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        // AND2 + NAND2 + NAND2 in G, then NAND3 + NAND2 + NAND2 in H
        assert_eq!(flat_critical_path(&nl, &d).unwrap(), Picos(130));
    }

    #[test]
    fn zero_delays() {
        let z = CellTable::<Picos>::default();
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        assert_eq!(critical_path(&nl, &z).unwrap(), Picos(0));
    }

    #[test]
    fn scales_with_custom_delays() {
        let mut d = GateCostTable::default().delays;
        d.and2 = Picos(10);
        d.nand2 = Picos(50);
        d.nand3 = Picos(50);
        let nl = build_netlist(4, &gf16_poly()).unwrap();
        // each block: max(T_A, T_N) + 2 T_N
        assert_eq!(critical_path(&nl, &d).unwrap(), Picos(2 * (50 + 100)));
    }
}
