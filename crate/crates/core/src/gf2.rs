//! GF(2) linear algebra on symplectic bit rows.
//!
//! Rows are `(x, z)` word pairs as used by [`crate::pauli::PauliOperator`].
//! Everything here is plain Gaussian elimination over packed words; the
//! matrices in this crate are tiny (at most a few dozen rows).

use crate::pauli::PauliOperator;

/// One symplectic row: the (x, z) masks of a Pauli.
pub type Row = (u64, u64);

pub fn row_of(p: &PauliOperator) -> Row {
    (p.x_bits(), p.z_bits())
}

fn leading_bit(r: Row) -> Option<u32> {
    // x half occupies virtual columns 0..64, z half 64..128
    if r.0 != 0 {
        Some(r.0.trailing_zeros())
    } else if r.1 != 0 {
        Some(64 + r.1.trailing_zeros())
    } else {
        None
    }
}

fn xor(a: Row, b: Row) -> Row {
    (a.0 ^ b.0, a.1 ^ b.1)
}

/// Row-echelon basis with pivot columns, kept in insertion-reduced form.
#[derive(Clone, Default)]
pub struct Echelon {
    rows: Vec<(Row, u32, u64)>, // (row, pivot, combination mask over inserted rows)
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `r` against the basis; returns the remainder and the
    /// combination mask of basis inputs used.
    fn reduce(&self, mut r: Row) -> (Row, u64) {
        let mut combo = 0u64;
        for &(row, piv, c) in &self.rows {
            let hit = if piv < 64 {
                r.0 >> piv & 1 != 0
            } else {
                r.1 >> (piv - 64) & 1 != 0
            };
            if hit {
                r = xor(r, row);
                combo ^= c;
            }
        }
        (r, combo)
    }

    /// Inserts a row. Returns `true` if it was independent of the basis.
    pub fn insert(&mut self, r: Row) -> bool {
        assert!(self.inserted < 64, "echelon supports at most 64 inputs");
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(r);
        match leading_bit(rem) {
            Some(piv) => {
                self.rows.push((rem, piv, combo | (1 << idx)));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, r: Row) -> bool {
        self.reduce(r).0 == (0, 0)
    }

    /// If `r` lies in the span, returns the mask of inserted input rows
    /// (by insertion order) whose XOR equals `r`.
    pub fn solve(&self, r: Row) -> Option<u64> {
        let (rem, combo) = self.reduce(r);
        if rem == (0, 0) {
            Some(combo)
        } else {
            None
        }
    }
}

pub fn rank(rows: &[Row]) -> usize {
    let mut e = Echelon::new();
    for &r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn echelon_of(paulis: &[PauliOperator]) -> Echelon {
    let mut e = Echelon::new();
    for p in paulis {
        e.insert(row_of(p));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliOperator;

    #[test]
    fn rank_of_cyclic_shifts() {
        // the five cyclic shifts of XZZXI have rank four
        let strs = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ", "ZZXIX"];
        let rows: Vec<Row> = strs
            .iter()
            .map(|s| row_of(&PauliOperator::parse_dense(s).unwrap()))
            .collect();
        assert_eq!(rank(&rows), 4);
        for skip in 0..5 {
            let sub: Vec<Row> =
                (0..5).filter(|&i| i != skip).map(|i| rows[i]).collect();
            assert_eq!(rank(&sub), 4);
        }
    }

    #[test]
    fn solve_returns_combination() {
        let a = row_of(&PauliOperator::parse_dense("XXII").unwrap());
        let b = row_of(&PauliOperator::parse_dense("IXXI").unwrap());
        let mut e = Echelon::new();
        e.insert(a);
        e.insert(b);
        let t = row_of(&PauliOperator::parse_dense("XIXI").unwrap());
        assert_eq!(e.solve(t), Some(0b11));
        assert_eq!(e.solve(row_of(&PauliOperator::parse_dense("ZIII").unwrap())), None);
    }
}
