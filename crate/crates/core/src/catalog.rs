//! Built-in code constructions backing the shipped data files.

use crate::code::{complete_logicals, Plaquette, StabilizerCode};
use crate::pauli::PauliOperator;

fn p(s: &str) -> PauliOperator {
    PauliOperator::parse_dense(s).unwrap()
}

fn plaq(color: &str, qubits: &[usize]) -> Plaquette {
    Plaquette { color: color.into(), qubits: qubits.to_vec() }
}

/// Seven-qubit distance-three color code. Generator order: the three X rows
/// (supports {4..7}, {2,3,6,7}, {1,3,5,7}) then the three Z rows.
pub fn steane7() -> StabilizerCode {
    StabilizerCode::build(
        "steane7",
        7,
        vec![
            p("IIIXXXX"),
            p("IXXIIXX"),
            p("XIXIXIX"),
            p("IIIZZZZ"),
            p("IZZIIZZ"),
            p("ZIZIZIZ"),
        ],
        vec![p("XXXXXXX")],
        vec![p("ZZZZZZZ")],
        vec![
            plaq("blue", &[4, 5, 6, 7]),
            plaq("green", &[2, 3, 6, 7]),
            plaq("red", &[1, 3, 5, 7]),
        ],
    )
    .expect("steane7 is valid")
}

/// Four-qubit error-detecting code: one plaquette, two encoded qubits.
pub fn color422() -> StabilizerCode {
    StabilizerCode::build(
        "color422",
        4,
        vec![p("XXXX"), p("ZZZZ")],
        vec![p("XXII"), p("XIXI")],
        vec![p("ZIZI"), p("ZZII")],
        vec![plaq("blue", &[1, 2, 3, 4])],
    )
    .expect("color422 is valid")
}

/// Five-qubit code: four cyclic shifts of XZZXI, transversal logicals.
pub fn fivequbit513() -> StabilizerCode {
    StabilizerCode::build(
        "fivequbit513",
        5,
        vec![p("XZZXI"), p("IXZZX"), p("XIXZZ"), p("ZXIXZ")],
        vec![p("XXXXX")],
        vec![p("ZZZZZ")],
        vec![],
    )
    .expect("fivequbit513 is valid")
}

/// Fifteen-qubit self-dual CSS code. Check-matrix column `q` is `q` in
/// binary; the logical basis is a fixed symplectic completion.
pub fn hamming15() -> StabilizerCode {
    let mut gens = Vec::new();
    for bit in (0..4).rev() {
        let mut s = String::new();
        for q in 1..=15 {
            s.push(if q >> bit & 1 != 0 { 'X' } else { 'I' });
        }
        gens.push(p(&s));
    }
    for bit in (0..4).rev() {
        let mut s = String::new();
        for q in 1..=15 {
            s.push(if q >> bit & 1 != 0 { 'Z' } else { 'I' });
        }
        gens.push(p(&s));
    }
    let (lx, lz) = complete_logicals(15, &gens).expect("hamming15 completion");
    StabilizerCode::build("hamming15", 15, gens, lx, lz, vec![]).expect("hamming15 is valid")
}

/// Twelve-qubit distance-three color code on two fused seven-qubit blocks:
/// four square plaquettes plus a central weight-six plaquette.
pub fn color1223() -> StabilizerCode {
    let supports: [&[usize]; 5] = [
        &[1, 2, 4, 5],
        &[2, 3, 5, 6],
        &[7, 8, 10, 11],
        &[8, 9, 11, 12],
        &[4, 5, 6, 7, 8, 9],
    ];
    let mut gens = Vec::new();
    for s in supports {
        gens.push(PauliOperator::from_support(12, s, &[]));
    }
    for s in supports {
        gens.push(PauliOperator::from_support(12, &[], s));
    }
    StabilizerCode::build(
        "color1223",
        12,
        gens,
        vec![
            PauliOperator::from_support(12, &[1, 2, 3], &[]),
            PauliOperator::from_support(12, &[10, 11, 12], &[]),
        ],
        vec![
            PauliOperator::from_support(12, &[], &[1, 2, 3]),
            PauliOperator::from_support(12, &[], &[10, 11, 12]),
        ],
        vec![
            plaq("red", &[1, 2, 4, 5]),
            plaq("green", &[2, 3, 5, 6]),
            plaq("red", &[7, 8, 10, 11]),
            plaq("green", &[8, 9, 11, 12]),
            plaq("blue", &[4, 5, 6, 7, 8, 9]),
        ],
    )
    .expect("color1223 is valid")
}

/// Two independent copies of the seven-qubit code (14 qubits).
pub fn steane7x2() -> StabilizerCode {
    steane7().two_block()
}

/// Two independent copies of the fifteen-qubit code (30 qubits).
pub fn hamming15x2() -> StabilizerCode {
    hamming15().two_block()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Distance;
    use crate::pauli::Sector;

    #[test]
    fn catalog_parameters() {
        let cap = 10_000_000;
        assert_eq!(steane7().code_parameters(3, cap).unwrap(), (7, 1, Distance::Found(3)));
        assert_eq!(color422().code_parameters(2, cap).unwrap(), (4, 2, Distance::Found(2)));
        assert_eq!(fivequbit513().code_parameters(3, cap).unwrap(), (5, 1, Distance::Found(3)));
        assert_eq!(hamming15().code_parameters(3, cap).unwrap(), (15, 7, Distance::Found(3)));
        assert_eq!(color1223().code_parameters(3, cap).unwrap(), (12, 2, Distance::Found(3)));
    }

    #[test]
    fn hamming_columns_count_in_binary() {
        let code = hamming15();
        // X rows 0..4 ordered from the high bit: column q reads q in binary
        for q in 1..=15usize {
            let mut col = 0usize;
            for row in 0..4 {
                let g = &code.generators()[row];
                if g.letter(q) == 'X' {
                    col |= 1 << (3 - row);
                }
            }
            assert_eq!(col, q);
        }
    }

    #[test]
    fn hamming_weight_two_sector_errors_uncorrectable() {
        // perfect distance-three CSS code: every weight-two Z error sits in a
        // coset of minimum weight two
        let code = hamming15();
        let z12 = PauliOperator::from_support(15, &[], &[1, 2]);
        assert_eq!(code.coset_min_weight(&z12, Sector::Z), 2);
    }

    #[test]
    fn two_block_tensor() {
        let code = steane7x2();
        assert_eq!(code.n(), 14);
        assert_eq!(code.k(), 2);
        assert_eq!(code.generators().len(), 12);
    }
}
