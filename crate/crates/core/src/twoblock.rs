//! Two-block zero-extra-qubit syndrome extraction.
//!
//! One round measures a Z-type stabilizer on block 1 (read out through a
//! data qubit of block 1) and the matching X-type stabilizer on block 2.
//! The readout qubits are emptied into their neighbours, measured, and
//! re-encoded; transversal CNOT pairs between the blocks catch the faults
//! that would otherwise spread into uncorrectable correlated errors. The
//! construction is mirror-symmetric: swapping the blocks, exchanging X and Z
//! and reversing every CNOT maps the round onto itself, so the two error
//! sectors behave symmetrically.

use crate::circuit::Circuit;
use crate::code::StabilizerCode;
use crate::fault::{Compiled, EnumerationOptions, FaultSector};
use crate::pauli::PauliOperator;

/// In-tree over the stabilizer support: `parent[i]` is the parent of
/// `support[i+1]`; the root is `support[0]` (the readout qubit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBlockSpec {
    /// Block size (7 or 15 here).
    pub block_n: usize,
    /// Stabilizer support; first entry is the readout qubit.
    pub support: Vec<usize>,
    /// Parent of support[i+1] in the collect tree (an element of `support`).
    pub parent: Vec<usize>,
    /// Collect-phase edge order: indices into 1..support.len() (the child
    /// qubits), deepest edges first.
    pub collect_order: Vec<usize>,
    /// Respread-phase edge order (root edges first).
    pub respread_order: Vec<usize>,
    /// Catch pairs: (qubit, from_block1, first_slot, second_slot). Slots
    /// index the gaps between base ticks: 0 = before everything, then one
    /// slot after each collect edge, one after measure+prep, one after each
    /// respread edge.
    pub blacks: Vec<(usize, bool, usize, usize)>,
}

impl TwoBlockSpec {
    pub fn n_slots(&self) -> usize {
        // one slot before each base tick plus one at the end
        2 * (self.support.len() - 1) + 3
    }

    /// Builds the round as a circuit on `2 * block_n` data qubits.
    pub fn build(&self, name: &str) -> Circuit {
        self.try_build(name).unwrap()
    }

    /// Fallible build; placements that touch a consumed wire are rejected.
    pub fn try_build(&self, name: &str) -> Result<Circuit, crate::circuit::CircuitError> {
        let w = self.support.len() - 1;
        let root = self.support[0];
        let b2 = |q: usize| q + self.block_n;
        // base tick gate pairs (block1 gate, mirrored block2 gate)
        let mut base: Vec<Vec<String>> = Vec::new();
        for &ei in &self.collect_order {
            let child = self.support[ei];
            let par = self.parent[ei - 1];
            // block1: collect Z toward the root; block2 mirror
            base.push(vec![
                format!("cnot d{child} d{par}"),
                format!("cnot d{} d{}", b2(par), b2(child)),
            ]);
        }
        let zexp: String =
            self.support.iter().map(|q| format!("Z{q}")).collect::<Vec<_>>().join(" ");
        let xexp: String =
            self.support.iter().map(|q| format!("X{}", b2(*q))).collect::<Vec<_>>().join(" ");
        base.push(vec![
            format!("meas z d{root} expects {zexp}"),
            format!("meas x d{} expects {xexp}", b2(root)),
        ]);
        base.push(vec![format!("prep z d{root}"), format!("prep x d{}", b2(root))]);
        for &ei in &self.respread_order {
            let child = self.support[ei];
            let par = self.parent[ei - 1];
            base.push(vec![
                format!("cnot d{child} d{par}"),
                format!("cnot d{} d{}", b2(par), b2(child)),
            ]);
        }
        assert_eq!(base.len(), 2 * w + 2);

        let mut ticks: Vec<Vec<String>> = Vec::new();
        for slot in 0..=base.len() {
            for &(q, from1, s1, s2) in &self.blacks {
                for s in [s1, s2] {
                    if s == slot {
                        let line = if from1 {
                            format!("cnot d{q} d{}", b2(q))
                        } else {
                            format!("cnot d{} d{q}", b2(q))
                        };
                        ticks.push(vec![line]);
                    }
                }
            }
            if slot < base.len() {
                ticks.push(base[slot].clone());
            }
        }
        let text: String = ticks
            .iter()
            .map(|t| t.join("\n"))
            .collect::<Vec<_>>()
            .join("\ntick\n");
        Ok(Circuit::parse(name, &text)?.with_data_count(2 * self.block_n))
    }
}

/// The block-swap-and-rotate permutation as a 0-based image map on
/// `2 * block_n` data qubits: block-1 qubit `q` goes to block-2 position
/// `sigma(q)` and vice versa.
pub fn swap_rotate_perm(block_n: usize, sigma: &dyn Fn(usize) -> usize) -> Vec<usize> {
    let mut perm = vec![0usize; 2 * block_n];
    for q in 1..=block_n {
        perm[q - 1] = block_n + sigma(q) - 1;
        perm[block_n + q - 1] = sigma(q) - 1;
    }
    perm
}

/// Rotation used by the seven-qubit two-block procedure:
/// 1 -> 4 -> 2 -> 1, 3 -> 5 -> 6 -> 3, 7 fixed.
pub fn steane_rotation(q: usize) -> usize {
    match q {
        1 => 4,
        4 => 2,
        2 => 1,
        3 => 5,
        5 => 6,
        6 => 3,
        7 => 7,
        _ => panic!("qubit {q} out of range"),
    }
}

/// Invariant set for the seven-qubit two-block round, on 14 qubits
/// (block-2 qubit `q` is data index `q + 7`).
pub fn steane_invariant_x() -> Vec<PauliOperator> {
    let n = 14;
    let mut out = vec![PauliOperator::identity(n)];
    for j in 1..=7 {
        out.push(PauliOperator::from_support(n, &[j], &[]));
        out.push(PauliOperator::from_support(n, &[j + 7], &[]));
        out.push(PauliOperator::from_support(n, &[j, j + 7], &[]));
    }
    for s in [
        vec![6, 9, 13],    // X6 (x) X{2,6}
        vec![3, 9, 10],    // X3 (x) X{2,3}
        vec![7, 8, 11],    // X7 (x) X{1,4}
        vec![6, 9],        // X6 (x) X2
        vec![2, 7, 9],     // X{2,7} (x) X2
        vec![1, 5, 12],    // X{1,5} (x) X5
    ] {
        out.push(PauliOperator::from_support(n, &s, &[]));
    }
    out
}

/// Mirror image of an invariant set: blocks swapped, X and Z exchanged.
pub fn mirror_invariant(set: &[PauliOperator], block_n: usize) -> Vec<PauliOperator> {
    set.iter()
        .map(|p| {
            let b1 = p.restrict(1, block_n);
            let b2 = p.restrict(block_n + 1, 2 * block_n);
            let z1 = PauliOperator::from_bits(block_n, b1.z_bits(), b1.x_bits());
            let z2 = PauliOperator::from_bits(block_n, b2.z_bits(), b2.x_bits());
            z2.embed(2 * block_n, 1).multiply(&z1.embed(2 * block_n, block_n + 1))
        })
        .collect()
}

/// Scores a candidate: number of single faults (X sector, then Z sector)
/// whose permuted residual leaves the invariant, plus a large penalty if the
/// round does not even measure the declared operators. Zero means valid.
pub fn score_candidate(
    spec: &TwoBlockSpec,
    code2: &StabilizerCode,
    perm: &[usize],
    inv_x: &[PauliOperator],
    inv_z: &[PauliOperator],
) -> usize {
    let Ok(circuit) = spec.try_build("cand") else {
        return 100_000;
    };
    if circuit.measured_operators(Some(code2)).is_err() {
        return 100_000;
    }
    let compiled = Compiled::from_circuit(&circuit);
    let mut bad = 0usize;
    for (sector, inv) in [(FaultSector::XOnly, inv_x), (FaultSector::ZOnly, inv_z)] {
        let events =
            compiled.enumerate_events(EnumerationOptions { sector, idle_faults: false });
        for ev in events {
            let out = compiled.propagate(None, &[ev]);
            let image = out.residual.permute(perm);
            if !inv.iter().any(|s| code2.stabilizer_equivalent(&image, s)) {
                bad += 1;
            }
        }
    }
    bad
}
