//! Exhaustive enumeration and propagation of Pauli faults through circuits.
//!
//! Faults are injected after their location executes (a faulty gate is the
//! ideal gate followed by a Pauli on its support), except that a Pauli
//! payload on a measurement acts before the readout and a `MeasFlip` flips
//! the recorded bit classically. Preparations absorb the stabilized
//! component of a payload (Z after a Z-basis prep is nothing).

use crate::circuit::{Basis, Circuit, Location};
use crate::code::StabilizerCode;
use crate::pauli::{PauliOperator, Sector, SyndromeVector};

/// One- or two-qubit Pauli payload, or a classical readout flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Payload {
    One { x: bool, z: bool },
    Two { x1: bool, z1: bool, x2: bool, z2: bool },
    MeasFlip,
}

impl Payload {
    pub fn one_from_letter(c: char) -> Payload {
        match c {
            'X' => Payload::One { x: true, z: false },
            'Z' => Payload::One { x: false, z: true },
            'Y' => Payload::One { x: true, z: true },
            _ => panic!("bad payload letter {c}"),
        }
    }

    pub fn label(&self) -> String {
        fn letter(x: bool, z: bool) -> char {
            match (x, z) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            }
        }
        match self {
            Payload::One { x, z } => letter(*x, *z).to_string(),
            Payload::Two { x1, z1, x2, z2 } => {
                format!("{}{}", letter(*x1, *z1), letter(*x2, *z2))
            }
            Payload::MeasFlip => "flip".to_string(),
        }
    }
}

/// A fault at a specific compiled location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaultEvent {
    pub op_index: usize,
    pub payload: Payload,
}

/// Residual data error and measurement flips produced by a fault set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaultOutcome {
    /// Residual Pauli on the data register at circuit end.
    pub residual: PauliOperator,
    /// One bit per measurement, in execution order.
    pub flags: SyndromeVector,
}

impl FaultOutcome {
    pub fn is_trivial(&self) -> bool {
        self.residual.is_identity() && self.flags.is_trivial()
    }
}

/// Payload restriction used for CSS sector analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultSector {
    XOnly,
    ZOnly,
    All,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub sector: FaultSector,
    /// Also enumerate faults on auto-inserted idle locations. Only
    /// meaningful if the stream was compiled with idles.
    pub idle_faults: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { sector: FaultSector::All, idle_faults: false }
    }
}

/// One executable step of a compiled stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    PrepZ(u8),
    PrepX(u8),
    Cnot(u8, u8),
    MeasZ(u8, u16),
    MeasX(u8, u16),
    Rest(u8),
    /// Auto-inserted idle (distinct from declared rests so enumeration can
    /// include or skip it).
    Idle(u8),
    Swap(u8, u8),
    Permute(Vec<u8>),
}

impl Op {
    pub fn is_faultable(&self) -> bool {
        !matches!(self, Op::Permute(_))
    }
}

/// A circuit (or protocol round sequence) flattened for propagation.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub width: usize,
    pub n_data: usize,
    pub n_meas: usize,
    pub ops: Vec<Op>,
    /// Human-readable location names, parallel to `ops`.
    pub labels: Vec<String>,
}

impl Compiled {
    pub fn from_circuit(c: &Circuit) -> Compiled {
        Self::from_rounds(&[(c, None)], false, 1)
    }

    pub fn from_circuit_with_idles(c: &Circuit, meas_ticks: usize) -> Compiled {
        Self::from_rounds(&[(c, None)], true, meas_ticks)
    }

    /// Concatenates rounds; each round optionally ends with a fault-free
    /// data permutation (0-based image map over the data register).
    pub fn from_rounds(
        rounds: &[(&Circuit, Option<Vec<usize>>)],
        idles: bool,
        meas_ticks: usize,
    ) -> Compiled {
        let n_data = rounds.iter().map(|(c, _)| c.n_data).max().unwrap();
        let n_anc = rounds.iter().map(|(c, _)| c.n_anc).max().unwrap();
        let width = n_data + n_anc;
        let mut ops = Vec::new();
        let mut labels = Vec::new();
        let mut n_meas = 0usize;
        for (ri, (circuit, perm)) in rounds.iter().enumerate() {
            // wire liveness for idle insertion
            let mut live = vec![false; width];
            for q in 0..circuit.n_data {
                live[q] = true;
            }
            let flat = |wire| -> usize {
                match wire {
                    crate::circuit::Wire::Data(i) => i as usize - 1,
                    crate::circuit::Wire::Anc(i) => n_data + i as usize,
                }
            };
            for (ti, tick) in circuit.ticks.iter().enumerate() {
                let mut touched = vec![false; width];
                let mut has_meas = false;
                for loc in tick {
                    let name = |s: String| format!("r{ri}.t{ti}.{s}");
                    match loc {
                        Location::Prep(b, wq) => {
                            let q = flat(*wq);
                            touched[q] = true;
                            live[q] = true;
                            ops.push(match b {
                                Basis::Z => Op::PrepZ(q as u8),
                                Basis::X => Op::PrepX(q as u8),
                            });
                            labels.push(name(format!("prep_{}_{}", letter(*b), wq)));
                        }
                        Location::Cnot(c, t) => {
                            let (fc, ft) = (flat(*c), flat(*t));
                            touched[fc] = true;
                            touched[ft] = true;
                            ops.push(Op::Cnot(fc as u8, ft as u8));
                            labels.push(name(format!("cnot_{c}_{t}")));
                        }
                        Location::Meas(b, wq, _) => {
                            let q = flat(*wq);
                            touched[q] = true;
                            live[q] = false;
                            has_meas = true;
                            ops.push(match b {
                                Basis::Z => Op::MeasZ(q as u8, n_meas as u16),
                                Basis::X => Op::MeasX(q as u8, n_meas as u16),
                            });
                            labels.push(name(format!("meas_{}_{}", letter(*b), wq)));
                            n_meas += 1;
                        }
                        Location::Rest(wq) => {
                            let q = flat(*wq);
                            touched[q] = true;
                            ops.push(Op::Rest(q as u8));
                            labels.push(name(format!("rest_{wq}")));
                        }
                        Location::Swap(a, b) => {
                            let (fa, fb) = (flat(*a), flat(*b));
                            touched[fa] = true;
                            touched[fb] = true;
                            ops.push(Op::Swap(fa as u8, fb as u8));
                            labels.push(name(format!("swap_{a}_{b}")));
                        }
                        Location::Permute(cycles) => {
                            let perm = circuit.resolve_permutation(cycles);
                            let mut full: Vec<u8> = (0..width as u8).collect();
                            for (i, &j) in perm.iter().enumerate() {
                                full[i] = j as u8;
                            }
                            ops.push(Op::Permute(full));
                            labels.push(name("permute".into()));
                        }
                    }
                }
                if idles {
                    let repeats = if has_meas { meas_ticks } else { 1 };
                    for q in 0..width {
                        if live[q] && !touched[q] {
                            for _ in 0..repeats {
                                ops.push(Op::Idle(q as u8));
                                labels.push(format!("r{ri}.t{ti}.idle_q{q}"));
                            }
                        }
                    }
                }
            }
            if let Some(p) = perm {
                let mut full: Vec<u8> = (0..width as u8).collect();
                for (i, &j) in p.iter().enumerate() {
                    full[i] = j as u8;
                }
               ops.push(Op::Permute(full));
                labels.push(format!("r{ri}.permute"));
            }
        }
        Compiled { width, n_data, n_meas, ops, labels }
    }

    /// Enumerates single-fault events under the sector restriction.
    pub fn enumerate_events(&self, opts: EnumerationOptions) -> Vec<FaultEvent> {
        let mut out = Vec::new();
        let ones: &[char] = match opts.sector {
            FaultSector::XOnly => &['X'],
            FaultSector::ZOnly => &['Z'],
            FaultSector::All => &['X', 'Y', 'Z'],
        };
        for (i, op) in self.ops.iter().enumerate() {
            match op {
                Op::PrepZ(_) | Op::PrepX(_) | Op::Rest(_) => {
                    for &c in ones {
                        out.push(FaultEvent { op_index: i, payload: Payload::one_from_letter(c) });
                    }
                }
                Op::Idle(_) => {
                    if opts.idle_faults {
                        for &c in ones {
                            out.push(FaultEvent {
                                op_index: i,
                                payload: Payload::one_from_letter(c),
                            });
                        }
                    }
                }
                Op::MeasZ(..) | Op::MeasX(..) => {
                    for &c in ones {
                        out.push(FaultEvent { op_index: i, payload: Payload::one_from_letter(c) });
                    }
                    if matches!(opts.sector, FaultSector::All) {
                        out.push(FaultEvent { op_index: i, payload: Payload::MeasFlip });
                    }
                }
                Op::Cnot(..) | Op::Swap(..) => match opts.sector {
                    FaultSector::XOnly => {
                        for (x1, x2) in [(true, false), (false, true), (true, true)] {
                            out.push(FaultEvent {
                                op_index: i,
                                payload: Payload::Two { x1, z1: false, x2, z2: false },
                            });
                        }
                    }
                    FaultSector::ZOnly => {
                        for (z1, z2) in [(true, false), (false, true), (true, true)] {
                            out.push(FaultEvent {
                                op_index: i,
                                payload: Payload::Two { x1: false, z1, x2: false, z2 },
                            });
                        }
                    }
                    FaultSector::All => {
                        for bits in 1u8..16 {
                            out.push(FaultEvent {
                                op_index: i,
                                payload: Payload::Two {
                                    x1: bits & 1 != 0,
                                    z1: bits & 2 != 0,
                                    x2: bits & 4 != 0,
                                    z2: bits & 8 != 0,
                                },
                            });
                        }
                    }
                },
                Op::Permute(_) => {}
            }
        }
        out
    }

    /// Propagates an optional input error plus a fault set.
    ///
    /// `input` is a Pauli on the data register applied before the first op.
    pub fn propagate(&self, input: Option<&PauliOperator>, faults: &[FaultEvent]) -> FaultOutcome {
        let mut fx = 0u64; // frame x bits
        let mut fz = 0u64;
        if let Some(p) = input {
            assert_eq!(p.n(), self.n_data);
            fx |= p.x_bits();
            fz |= p.z_bits();
        }
        let mut flags = 0u64;
        for (i, op) in self.ops.iter().enumerate() {
            let inject = |fx: &mut u64, fz: &mut u64, after_prep: Option<&Op>| {
                for f in faults.iter().filter(|f| f.op_index == i) {
                    match f.payload {
                        Payload::One { x, z } => {
                            let q = op_qubit1(op);
                            let (mut x, mut z) = (x, z);
                            // a prep absorbs its stabilized component
                            if let Some(Op::PrepZ(_)) = after_prep {
                                z = false;
                            }
                            if let Some(Op::PrepX(_)) = after_prep {
                                x = false;
                            }
                            if x {
                                *fx ^= 1 << q;
                            }
                            if z {
                                *fz ^= 1 << q;
                            }
                        }
                        Payload::Two { x1, z1, x2, z2 } => {
                            let (q1, q2) = op_qubits2(op);
                            if x1 {
                                *fx ^= 1 << q1;
                            }
                            if z1 {
                                *fz ^= 1 << q1;
                            }
                            if x2 {
                                *fx ^= 1 << q2;
                            }
                            if z2 {
                                *fz ^= 1 << q2;
                            }
                        }
                        Payload::MeasFlip => {}
                    }
                }
            };
            match op {
                Op::PrepZ(q) | Op::PrepX(q) => {
                    let clear = !(1u64 << q);
                    fx &= clear;
                    fz &= clear;
                    inject(&mut fx, &mut fz, Some(op));
                }
                Op::Cnot(c, t) => {
                    if fx >> c & 1 != 0 {
                        fx ^= 1 << t;
                    }
                    if fz >> t & 1 != 0 {
                        fz ^= 1 << c;
                    }
                    inject(&mut fx, &mut fz, None);
                }
                Op::MeasZ(q, m) | Op::MeasX(q, m) => {
                    // Pauli payloads act before the readout
                    inject(&mut fx, &mut fz, None);
                    let flipped = match op {
                        Op::MeasZ(..) => fx >> q & 1 != 0,
                        _ => fz >> q & 1 != 0,
                    };
                    if flipped {
                        flags ^= 1 << m;
                    }
                    for f in faults.iter().filter(|f| f.op_index == i) {
                        if matches!(f.payload, Payload::MeasFlip) {
                            flags ^= 1 << m;
                        }
                    }
                    let clear = !(1u64 << q);
                    fx &= clear;
                    fz &= clear;
                }
                Op::Rest(_) | Op::Idle(_) | Op::Swap(..) => {
                    inject(&mut fx, &mut fz, None);
                }
                Op::Permute(perm) => {
                    let (mut nx, mut nz) = (0u64, 0u64);
                    for (i2, &j) in perm.iter().enumerate() {
                        if fx >> i2 & 1 != 0 {
                            nx |= 1 << j;
                        }
                        if fz >> i2 & 1 != 0 {
                            nz |= 1 << j;
                        }
                    }
                    fx = nx;
                    fz = nz;
                }
            }
        }
        let data_mask = crate::pauli::mask(self.n_data);
        FaultOutcome {
            residual: PauliOperator::from_bits(self.n_data, fx & data_mask, fz & data_mask),
            flags: SyndromeVector::from_bits(self.n_meas, flags),
        }
    }

    /// Analytic pre-dedup event count for the sector (exhaustiveness check).
    pub fn analytic_event_count(&self, opts: EnumerationOptions) -> usize {
        let (one, two, flip) = match opts.sector {
            FaultSector::All => (3, 15, 1),
            _ => (1, 3, 0),
        };
        self.ops
            .iter()
            .map(|op| match op {
                Op::PrepZ(_) | Op::PrepX(_) | Op::Rest(_) => one,
                Op::Idle(_) => {
                    if opts.idle_faults {
                        one
                    } else {
                        0
                    }
                }
                Op::MeasZ(..) | Op::MeasX(..) => one + flip,
                Op::Cnot(..) | Op::Swap(..) => two,
                Op::Permute(_) => 0,
            })
            .sum()
    }
}

fn op_qubit1(op: &Op) -> u8 {
    match op {
        Op::PrepZ(q) | Op::PrepX(q) | Op::MeasZ(q, _) | Op::MeasX(q, _) | Op::Rest(q) | Op::Idle(q) => *q,
        _ => panic!("one-qubit payload on a two-qubit location"),
    }
}

fn op_qubits2(op: &Op) -> (u8, u8) {
    match op {
        Op::Cnot(a, b) | Op::Swap(a, b) => (*a, *b),
        _ => panic!("two-qubit payload on a one-qubit location"),
    }
}

fn letter(b: Basis) -> char {
    match b {
        Basis::Z => 'z',
        Basis::X => 'x',
    }
}

/// Full single-fault table entry.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub event: FaultEvent,
    pub outcome: FaultOutcome,
}

/// Enumerates all single faults and their outcomes. The second return value
/// is the table deduplicated by (stabilizer coset of the residual, flags).
pub fn single_fault_table(
    compiled: &Compiled,
    code: &StabilizerCode,
    opts: EnumerationOptions,
) -> (Vec<TableEntry>, Vec<TableEntry>) {
    let events = compiled.enumerate_events(opts);
    let full: Vec<TableEntry> = events
        .into_iter()
        .map(|event| TableEntry { event, outcome: compiled.propagate(None, &[event]) })
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut dedup = Vec::new();
    for e in &full {
        let rep = code.coset_representative(&e.outcome.residual, Sector::Full);
        if seen.insert((rep, e.outcome.flags)) {
            dedup.push(e.clone());
        }
    }
    (full, dedup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::circuit::Circuit;

    fn compile(text: &str, n_data: usize) -> Compiled {
        let c = Circuit::parse("t", text).unwrap().with_data_count(n_data);
        Compiled::from_circuit(&c)
    }

    #[test]
    fn event_counts() {
        let c = compile("cnot d1 d2", 2);
        assert_eq!(c.enumerate_events(EnumerationOptions::default()).len(), 15);
        let xonly = EnumerationOptions { sector: FaultSector::XOnly, idle_faults: false };
        assert_eq!(c.enumerate_events(xonly).len(), 3);
        assert_eq!(c.analytic_event_count(EnumerationOptions::default()), 15);
    }

    #[test]
    fn empty_fault_set_is_identity() {
        let c = compile("prep z a0\ntick\ncnot d4 a0\ntick\nmeas z a0", 7);
        let out = c.propagate(None, &[]);
        assert!(out.is_trivial());
    }

    const UNFLAGGED_Z_GADGET: &str = "\
prep z a0
tick
cnot d4 a0
tick
cnot d5 a0
tick
cnot d6 a0
tick
cnot d7 a0
tick
meas z a0 expects Z4 Z5 Z6 Z7
";

    #[test]
    fn midpoint_fault_spreads_to_weight_two() {
        // Z on the syndrome qubit after the second data CNOT lands on the
        // remaining two controls and never flips the readout.
        let c = compile(UNFLAGGED_Z_GADGET, 7);
        // op order: prep, cnot4, cnot5, cnot6, cnot7, meas
        let ev = FaultEvent {
            op_index: 2,
            payload: Payload::Two { x1: false, z1: false, x2: false, z2: true },
        };
        let out = c.propagate(None, &[ev]);
        assert_eq!(out.residual, PauliOperator::from_support(7, &[], &[6, 7]));
        assert!(out.flags.is_trivial());
    }

    #[test]
    fn x_on_ancilla_flips_z_readout() {
        let c = compile(UNFLAGGED_Z_GADGET, 7);
        let ev = FaultEvent {
            op_index: 4,
            payload: Payload::Two { x1: false, z1: false, x2: true, z2: false },
        };
        let out = c.propagate(None, &[ev]);
        assert!(out.residual.is_identity());
        assert!(!out.flags.is_trivial());
    }

    #[test]
    fn linearity_over_disjoint_fault_sets() {
        let c = compile(UNFLAGGED_Z_GADGET, 7);
        let all = c.enumerate_events(EnumerationOptions::default());
        for (i, a) in all.iter().enumerate() {
            for b in all.iter().skip(i + 1) {
                if a.op_index == b.op_index {
                    continue;
                }
                let oa = c.propagate(None, &[*a]);
                let ob = c.propagate(None, &[*b]);
                let oab = c.propagate(None, &[*a, *b]);
                assert_eq!(oab.residual, oa.residual.multiply(&ob.residual));
                assert_eq!(oab.flags, oa.flags.xor(&ob.flags));
            }
        }
    }

    #[test]
    fn table_dedup_and_exhaustiveness() {
        let code = catalog::steane7();
        let c = compile(UNFLAGGED_Z_GADGET, 7);
        let opts = EnumerationOptions::default();
        let (full, dedup) = single_fault_table(&c, &code, opts);
        assert_eq!(full.len(), c.analytic_event_count(opts));
        assert!(dedup.len() < full.len());
    }

    #[test]
    fn input_error_flips_measurement() {
        let code = catalog::steane7();
        let c = compile(UNFLAGGED_Z_GADGET, 7);
        let x4 = PauliOperator::x_on(7, 4);
        let out = c.propagate(Some(&x4), &[]);
        assert_eq!(out.residual, x4);
        assert!(!out.flags.is_trivial());
        // the readout reacts exactly like the corresponding generator row
        assert!(!code.syndrome_rows(&x4, &[3]).is_trivial());
    }

    #[test]
    fn idle_insertion() {
        let c = Circuit::parse("t", "prep z a0\ntick\ncnot d4 a0\ntick\nmeas z a0").unwrap();
        let compiled = Compiled::from_circuit_with_idles(&c, 1);
        let idles = compiled.ops.iter().filter(|o| matches!(o, Op::Idle(_))).count();
        assert!(idles > 0);
    }
}
