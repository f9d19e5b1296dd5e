//! Serial-in parallel-out polynomial-basis multiplier for GF(2^m).
//!
//! The same multiplier is available at three levels:
//!
//! * [`field`]: element types, the schoolbook reference product and the NIST
//!   field catalog;
//! * [`serial`]: the MSB-first interleaved-reduction algorithm, optionally
//!   with every XOR expressed as four NAND gates;
//! * [`netlist`], [`sim`] and [`timing`]: the AND/NAND/DFF gate netlist,
//!   its cycle simulator and static timing.
//!
//! [`cost`] and [`report`] hold the transistor/delay model used to compare
//! the design against published bit-serial and systolic multipliers.

pub mod cost;
pub mod field;
pub mod netlist;
pub mod report;
pub mod serial;
pub mod sim;
pub mod timing;

pub use cost::{Arch, GateCostTable, GateDelayTable, Picos};
pub use field::{add, mul_reference, nist_poly, reduce, FieldElement, IrreduciblePoly, NistField};
pub use netlist::{build_netlist, Netlist};
pub use serial::{mul_serial, nand_xor, TraceRecord};
pub use sim::simulate;
pub use timing::critical_path;
