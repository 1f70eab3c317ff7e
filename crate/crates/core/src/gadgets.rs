//! Programmatic builders for the shipped syndrome-extraction circuits.
//!
//! Circuits whose published form is only pictorial are reconstructed here;
//! their correctness is fixed operationally by `measured_operators` and by
//! the fault sets the verifier reproduces.

use crate::circuit::{Basis, Circuit};
use crate::code::StabilizerCode;
use crate::pauli::PauliOperator;

fn expects_z(support: &[usize]) -> String {
    support.iter().map(|q| format!("Z{q}")).collect::<Vec<_>>().join(" ")
}

fn expects_x(support: &[usize]) -> String {
    support.iter().map(|q| format!("X{q}")).collect::<Vec<_>>().join(" ")
}

/// Bare single-ancilla extraction of one stabilizer, one data CNOT per tick.
pub fn unflagged_gadget(name: &str, basis: Basis, support: &[usize]) -> Circuit {
    let mut text = String::new();
    match basis {
        Basis::Z => {
            text.push_str("prep z a0\n");
            for q in support {
                text.push_str(&format!("tick\ncnot d{q} a0\n"));
            }
            text.push_str(&format!("tick\nmeas z a0 expects {}\n", expects_z(support)));
        }
        Basis::X => {
            text.push_str("prep x a0\n");
            for q in support {
                text.push_str(&format!("tick\ncnot a0 d{q}\n"));
            }
            text.push_str(&format!("tick\nmeas x a0 expects {}\n", expects_x(support)));
        }
    }
    Circuit::parse(name, &text).unwrap()
}

/// Two-extra-qubit flagged extraction: the flag brackets the inner data
/// CNOTs so any readout-qubit fault that could spread to weight two or more
/// also flips the flag.
pub fn flagged_gadget(name: &str, basis: Basis, support: &[usize]) -> Circuit {
    assert!(support.len() >= 3);
    let w = support.len();
    let mut text = String::new();
    match basis {
        Basis::Z => {
            text.push_str("prep z a0\nprep x a1\n");
            text.push_str(&format!("tick\ncnot d{} a0\n", support[0]));
            text.push_str("tick\ncnot a1 a0\n");
            for q in &support[1..w - 1] {
                text.push_str(&format!("tick\ncnot d{q} a0\n"));
            }
            text.push_str("tick\ncnot a1 a0\n");
            text.push_str(&format!("tick\ncnot d{} a0\n", support[w - 1]));
            text.push_str(&format!(
                "tick\nmeas z a0 expects {}\nmeas x a1\n",
                expects_z(support)
            ));
        }
        Basis::X => {
            text.push_str("prep x a0\nprep z a1\n");
            text.push_str(&format!("tick\ncnot a0 d{}\n", support[0]));
            text.push_str("tick\ncnot a0 a1\n");
            for q in &support[1..w - 1] {
                text.push_str(&format!("tick\ncnot a0 d{q}\n"));
            }
            text.push_str("tick\ncnot a0 a1\n");
            text.push_str(&format!("tick\ncnot a0 d{}\n", support[w - 1]));
            text.push_str(&format!(
                "tick\nmeas x a0 expects {}\nmeas z a1\n",
                expects_x(support)
            ));
        }
    }
    Circuit::parse(name, &text).unwrap()
}

/// Two syndromes at once with the readout qubits flagging each other.
///
/// `x_support` and `z_support` must be weight four and overlap on exactly two
/// qubits. The X readout (a0) couples to the shared qubits first; a CNOT
/// pair a0 -> a1 brackets the window where a readout fault could spread to an
/// uncorrectable pair.
pub fn mutual_pair(name: &str, x_support: &[usize], z_support: &[usize]) -> Circuit {
    assert_eq!(x_support.len(), 4);
    assert_eq!(z_support.len(), 4);
    let shared: Vec<usize> = x_support.iter().copied().filter(|q| z_support.contains(q)).collect();
    assert_eq!(shared.len(), 2, "supports must overlap on exactly two qubits");
    let xs: Vec<usize> = x_support.iter().copied().filter(|q| !shared.contains(q)).collect();
    let zs: Vec<usize> = z_support.iter().copied().filter(|q| !shared.contains(q)).collect();
    let (s1, s2) = (shared[0], shared[1]);
    let (x1, x2) = (xs[0], xs[1]);
    let (z1, z2) = (zs[0], zs[1]);
    let text = format!(
        "\
prep x a0
prep z a1
tick
cnot a0 d{s1}
cnot d{z1} a1
tick
cnot a0 a1
tick
cnot a0 d{s2}
cnot d{z2} a1
tick
cnot a0 d{x1}
cnot d{s1} a1
tick
cnot a0 a1
tick
cnot a0 d{x2}
cnot d{s2} a1
tick
meas x a0 expects {}
meas z a1 expects {}
",
        expects_x(x_support),
        expects_z(z_support)
    );
    Circuit::parse(name, &text).unwrap()
}

/// Three syndromes at once: one X readout (a0) and two Z readouts (a1, a2)
/// flagging each other through shared support and two catch CNOTs.
///
/// Fixed to the seven-qubit color code rows: X on {1,3,5,7} into a0,
/// Z on {4,5,6,7} into a1, Z on {2,3,6,7} into a2. One initialization tick,
/// six CNOT ticks, one measurement tick.
pub fn parallel3() -> Circuit {
    let text = "\
prep x a0
prep z a1
prep z a2
tick
cnot a0 d3
cnot d5 a1
cnot d7 a2
tick
cnot a0 d7
cnot d3 a2
tick
cnot a0 d1
cnot d7 a1
cnot d2 a2
tick
cnot a0 a2
cnot d4 a1
tick
cnot a0 a1
cnot d6 a2
tick
cnot a0 d5
cnot d6 a1
tick
meas x a0 expects X1 X3 X5 X7
meas z a1 expects Z4 Z5 Z6 Z7
meas z a2 expects Z2 Z3 Z6 Z7
";
    Circuit::parse("parallel3", text).unwrap().with_data_count(7)
}

/// Basis-dual partner of [`parallel3`] covering the other three rows.
pub fn parallel3_partner() -> Circuit {
    let text = "\
prep z a0
prep x a1
prep x a2
tick
cnot d3 a0
cnot a1 d5
cnot a2 d7
tick
cnot d7 a0
cnot a2 d3
tick
cnot d1 a0
cnot a1 d7
cnot a2 d2
tick
cnot a2 a0
cnot a1 d4
tick
cnot a1 a0
cnot a2 d6
tick
cnot d5 a0
cnot a1 d6
tick
meas z a0 expects Z1 Z3 Z5 Z7
meas x a1 expects X4 X5 X6 X7
meas x a2 expects X2 X3 X6 X7
";
    Circuit::parse("parallel3_partner", text).unwrap().with_data_count(7)
}

/// Dual-basis pair on one weight-four support with no readout-readout CNOT:
/// errors cross between the readouts through the carefully ordered data
/// CNOTs, and the two marked swap points exchange the readout positions.
pub fn dual_pair(name: &str, support: &[usize]) -> Circuit {
    assert_eq!(support.len(), 4);
    let (q1, q2, q3, q4) = (support[0], support[1], support[2], support[3]);
    // X readout order: q1 q2 q3 q4; Z readout order: q2 q1 q4 q3
    let text = format!(
        "\
prep x a0
prep z a1
tick
cnot a0 d{q1}
cnot d{q2} a1
tick
swap a0 a1
tick
cnot a0 d{q2}
cnot d{q1} a1
tick
cnot a0 d{q3}
cnot d{q4} a1
tick
swap a0 a1
tick
cnot a0 d{q4}
cnot d{q3} a1
tick
meas x a0 expects {}
meas z a1 expects {}
",
        expects_x(support),
        expects_z(support)
    );
    Circuit::parse(name, &text).unwrap()
}

/// One-extra-qubit parity readout of the same stabilizer on two blocks.
/// Gate order interleaves the blocks so every readout-qubit fault spreads to
/// a pair whose block components multiply to a detectable error.
pub fn parity_gadget(block_n: usize, support: &[usize]) -> Circuit {
    assert_eq!(support.len(), 4);
    let (q1, q2, q3, q4) = (support[0], support[1], support[2], support[3]);
    let b = |q: usize| q + block_n; // block-2 wire
    let order = [q4, b(q1), b(q3), q3, b(q2), q2, b(q4), q1];
    let mut text = String::from("prep z a0\n");
    for q in order {
        text.push_str(&format!("tick\ncnot d{q} a0\n"));
    }
    let exp: Vec<String> =
        support.iter().map(|q| format!("Z{q}")).chain(support.iter().map(|q| format!("Z{}", b(*q)))).collect();
    text.push_str(&format!("tick\nmeas z a0 expects {}\n", exp.join(" ")));
    Circuit::parse("parity", &text).unwrap().with_data_count(2 * block_n)
}

/// Sequence of flagged gadgets covering every generator of a CSS code.
pub fn flagged_family(code: &StabilizerCode) -> Vec<Circuit> {
    let split = code.css_split().expect("flagged family needs a CSS code");
    let mut out = Vec::new();
    for (&row, basis) in split
        .z_rows
        .iter()
        .map(|r| (r, Basis::Z))
        .chain(split.x_rows.iter().map(|r| (r, Basis::X)))
        .map(|(r, b)| (r, b))
    {
        let g = &code.generators()[row];
        let support: Vec<usize> = (1..=code.n()).filter(|&q| g.letter(q) != 'I').collect();
        let name = format!("flagged_{}_{}", basis_tag(basis), row);
        out.push(flagged_gadget(&name, basis, &support).with_data_count(code.n()));
    }
    out
}

/// Sequence of bare single-ancilla gadgets covering every generator.
pub fn unflagged_family(code: &StabilizerCode) -> Vec<Circuit> {
    let split = code.css_split().expect("unflagged family needs a CSS code");
    let mut out = Vec::new();
    for (&row, basis) in split
        .z_rows
        .iter()
        .map(|r| (r, Basis::Z))
        .chain(split.x_rows.iter().map(|r| (r, Basis::X)))
        .map(|(r, b)| (r, b))
    {
        let g = &code.generators()[row];
        let support: Vec<usize> = (1..=code.n()).filter(|&q| g.letter(q) != 'I').collect();
        let name = format!("unflagged_{}_{}", basis_tag(basis), row);
        out.push(unflagged_gadget(&name, basis, &support).with_data_count(code.n()));
    }
    out
}

fn basis_tag(b: Basis) -> &'static str {
    match b {
        Basis::Z => "z",
        Basis::X => "x",
    }
}

/// Support of a stabilizer as 1-based indices.
pub fn support_of(p: &PauliOperator) -> Vec<usize> {
    (1..=p.n()).filter(|&q| p.letter(q) != 'I').collect()
}
