//! Phaseless n-qubit Pauli operators in binary-symplectic form.
//!
//! A Pauli is stored as a pair of bit vectors over GF(2): qubit `i` carries
//! an X factor iff bit `i` of `x` is set, a Z factor iff bit `i` of `z` is
//! set, and Y iff both. Global phases are discarded throughout; products are
//! componentwise XOR and commutation is the symplectic inner product.
//!
//! Qubit indices are 1-based at the API surface and 0-based in the bit
//! packing. Operators on up to 64 qubits are supported.

use std::fmt;
use thiserror::Error;

pub const MAX_QUBITS: usize = 64;

/// Weight-counting sector: X component, Z component, or any non-identity letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    X,
    Z,
    Full,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("qubit count {0} out of range 1..={MAX_QUBITS}")]
    BadLength(usize),
    #[error("qubit index {0} out of range 1..={1}")]
    BadIndex(usize, usize),
    #[error("cannot parse pauli string {0:?}: {1}")]
    Parse(String, String),
}

/// A phaseless Pauli operator on `n` qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: u16,
    x: u64,
    z: u64,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS, "qubit count {n} out of range");
        PauliOperator { n: n as u16, x: 0, z: 0 }
    }

    /// Builds from raw bit masks. Bits above `n` must be clear.
    pub fn from_bits(n: usize, x: u64, z: u64) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS);
        let mask = mask(n);
        debug_assert_eq!(x & !mask, 0);
        debug_assert_eq!(z & !mask, 0);
        PauliOperator { n: n as u16, x: x & mask, z: z & mask }
    }

    /// Single-qubit X on 1-based index `q`.
    pub fn x_on(n: usize, q: usize) -> Self {
        Self::from_support(n, &[q], &[])
    }

    /// Single-qubit Z on 1-based index `q`.
    pub fn z_on(n: usize, q: usize) -> Self {
        Self::from_support(n, &[], &[q])
    }

    /// X on `xs`, Z on `zs` (1-based indices; overlap yields Y).
    pub fn from_support(n: usize, xs: &[usize], zs: &[usize]) -> Self {
        let mut p = PauliOperator::identity(n);
        for &q in xs {
            assert!(q >= 1 && q <= n, "qubit index {q} out of range 1..={n}");
            p.x |= 1 << (q - 1);
        }
        for &q in zs {
            assert!(q >= 1 && q <= n, "qubit index {q} out of range 1..={n}");
            p.z |= 1 << (q - 1);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Letter on 1-based qubit `q`: 'I', 'X', 'Y' or 'Z'.
    pub fn letter(&self, q: usize) -> char {
        let b = 1u64 << (q - 1);
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// Componentwise product (XOR of both bit vectors).
    pub fn multiply(&self, other: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        PauliOperator { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z }
    }

    pub fn try_multiply(&self, other: &PauliOperator) -> Result<PauliOperator, PauliError> {
        if self.n != other.n {
            return Err(PauliError::LengthMismatch(self.n(), other.n()));
        }
        Ok(self.multiply(other))
    }

    /// Symplectic inner product mod 2: 0 if the operators commute, 1 otherwise.
    pub fn symplectic_form(&self, other: &PauliOperator) -> u8 {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        let t = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        (t & 1) as u8
    }

    pub fn commutes(&self, other: &PauliOperator) -> bool {
        self.symplectic_form(other) == 0
    }

    pub fn try_commutes(&self, other: &PauliOperator) -> Result<bool, PauliError> {
        if self.n != other.n {
            return Err(PauliError::LengthMismatch(self.n(), other.n()));
        }
        Ok(self.commutes(other))
    }

    pub fn weight(&self, sector: Sector) -> usize {
        match sector {
            Sector::X => self.x.count_ones() as usize,
            Sector::Z => self.z.count_ones() as usize,
            Sector::Full => (self.x | self.z).count_ones() as usize,
        }
    }

    /// Keeps only the requested component (X part or Z part).
    pub fn component(&self, sector: Sector) -> PauliOperator {
        match sector {
            Sector::X => PauliOperator { n: self.n, x: self.x, z: 0 },
            Sector::Z => PauliOperator { n: self.n, x: 0, z: self.z },
            Sector::Full => *self,
        }
    }

    /// Restricts to 1-based qubit range `[lo, hi]`, reindexing from 1.
    pub fn restrict(&self, lo: usize, hi: usize) -> PauliOperator {
        assert!(lo >= 1 && hi <= self.n() && lo <= hi);
        let m = mask(hi - lo + 1);
        PauliOperator {
            n: (hi - lo + 1) as u16,
            x: (self.x >> (lo - 1)) & m,
            z: (self.z >> (lo - 1)) & m,
        }
    }

    /// Embeds into `n` qubits with this operator starting at 1-based `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> PauliOperator {
        assert!(offset >= 1 && offset - 1 + self.n() <= n);
        PauliOperator {
            n: n as u16,
            x: self.x << (offset - 1),
            z: self.z << (offset - 1),
        }
    }

    /// Applies a qubit relabeling: output qubit `perm[i]` gets input qubit `i`'s letter.
    /// `perm` is a 0-based permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> PauliOperator {
        assert_eq!(perm.len(), self.n());
        let mut x = 0u64;
        let mut z = 0u64;
        for (i, &j) in perm.iter().enumerate() {
            if self.x >> i & 1 != 0 {
                x |= 1 << j;
            }
            if self.z >> i & 1 != 0 {
                z |= 1 << j;
            }
        }
        PauliOperator { n: self.n, x, z }
    }

    /// Dense rendering over {I,X,Y,Z}, qubit 1 leftmost.
    pub fn dense(&self) -> String {
        (1..=self.n()).map(|q| self.letter(q)).collect()
    }

    /// Sparse rendering like `"X4 Z5"`; identity renders as `"I"`.
    pub fn sparse(&self) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        let mut parts = Vec::new();
        for q in 1..=self.n() {
            match self.letter(q) {
                'I' => {}
                c => parts.push(format!("{c}{q}")),
            }
        }
        parts.join(" ")
    }

    /// Parses dense form (`"IIXZ"`); length fixes the qubit count.
    pub fn parse_dense(s: &str) -> Result<PauliOperator, PauliError> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_QUBITS {
            return Err(PauliError::BadLength(s.len()));
        }
        let mut p = PauliOperator::identity(s.len());
        for (i, c) in s.chars().enumerate() {
            let b = 1u64 << i;
            match c {
                'I' | 'i' | '_' | '.' => {}
                'X' | 'x' => p.x |= b,
                'Z' | 'z' => p.z |= b,
                'Y' | 'y' => {
                    p.x |= b;
                    p.z |= b;
                }
                _ => {
                    return Err(PauliError::Parse(s.into(), format!("bad letter {c:?}")));
                }
            }
        }
        Ok(p)
    }

    /// Parses sparse form (`"X4 X5"`, `"I"`) onto `n` qubits.
    pub fn parse_sparse(n: usize, s: &str) -> Result<PauliOperator, PauliError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::BadLength(n));
        }
        let mut p = PauliOperator::identity(n);
        let s = s.trim();
        if s.is_empty() || s == "I" || s == "i" {
            return Ok(p);
        }
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let letter = chars.next().unwrap();
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| PauliError::Parse(s.into(), format!("bad token {tok:?}")))?;
            if idx < 1 || idx > n {
                return Err(PauliError::BadIndex(idx, n));
            }
            let b = 1u64 << (idx - 1);
            match letter {
                'X' | 'x' => p.x ^= b,
                'Z' | 'z' => p.z ^= b,
                'Y' | 'y' => {
                    p.x ^= b;
                    p.z ^= b;
                }
                _ => {
                    return Err(PauliError::Parse(s.into(), format!("bad token {tok:?}")));
                }
            }
        }
        Ok(p)
    }

    /// Parses either form; a string of pure letters with no digits is dense.
    pub fn parse(n: usize, s: &str) -> Result<PauliOperator, PauliError> {
        let s = s.trim();
        if s.chars().any(|c| c.is_ascii_digit()) {
            Self::parse_sparse(n, s)
        } else if s == "I" && n > 1 {
            Ok(PauliOperator::identity(n))
        } else {
            let p = Self::parse_dense(s)?;
            if p.n() != n {
                return Err(PauliError::LengthMismatch(p.n(), n));
            }
            Ok(p)
        }
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[{}]({})", self.n, self.sparse())
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dense())
    }
}

/// Measurement-outcome bit vector, one bit per stabilizer generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SyndromeVector {
    bits: u64,
    len: u8,
}

impl SyndromeVector {
    pub fn new(len: usize) -> Self {
        assert!(len <= 64);
        SyndromeVector { bits: 0, len: len as u8 }
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        SyndromeVector { bits: bits & mask(len), len: len as u8 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 != 0
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    pub fn xor(&self, other: &SyndromeVector) -> SyndromeVector {
        assert_eq!(self.len, other.len);
        SyndromeVector { bits: self.bits ^ other.bits, len: self.len }
    }
}

impl fmt::Debug for SyndromeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Display for SyndromeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_self_inverse() {
        let x1 = PauliOperator::x_on(7, 1);
        assert!(x1.multiply(&x1).is_identity());
    }

    #[test]
    fn multiply_xor_of_supports() {
        let a = PauliOperator::from_support(7, &[4, 5], &[]);
        let all = PauliOperator::parse_dense("XXXXXXX").unwrap();
        let prod = a.multiply(&all);
        assert_eq!(prod, PauliOperator::from_support(7, &[1, 2, 3, 6, 7], &[]));
    }

    #[test]
    fn multiply_recovers_stabilizer_row() {
        // X on {4,5} times X1 times the transversal logical equals the
        // weight-four row on {2,3,6,7}.
        let a = PauliOperator::from_support(7, &[4, 5], &[]);
        let x1 = PauliOperator::x_on(7, 1);
        let all = PauliOperator::parse_dense("XXXXXXX").unwrap();
        let row = a.multiply(&x1).multiply(&all);
        assert_eq!(row.dense(), "IXXIIXX");
    }

    #[test]
    fn commutation_basics() {
        let n = 7;
        assert!(PauliOperator::x_on(n, 1).commutes(&PauliOperator::x_on(n, 2)));
        assert!(!PauliOperator::x_on(n, 1).commutes(&PauliOperator::z_on(n, 1)));
        let zrow = PauliOperator::parse_dense("ZIZIZIZ").unwrap();
        assert!(!PauliOperator::x_on(n, 1).commutes(&zrow));
    }

    #[test]
    fn weights() {
        let id = PauliOperator::identity(5);
        for s in [Sector::X, Sector::Z, Sector::Full] {
            assert_eq!(id.weight(s), 0);
        }
        let y3 = PauliOperator::from_support(5, &[3], &[3]);
        assert_eq!(y3.weight(Sector::X), 1);
        assert_eq!(y3.weight(Sector::Z), 1);
        assert_eq!(y3.weight(Sector::Full), 1);

        // two blocks of 7: X6 on block 1, X on {2,6} of block 2
        let e = PauliOperator::from_support(14, &[6, 9, 13], &[]);
        assert_eq!(e.weight(Sector::Full), 3);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["IIIXXXX", "XZZXI", "IYIIZ"] {
            let p = PauliOperator::parse_dense(s).unwrap();
            assert_eq!(p.dense(), s);
            let back = PauliOperator::parse_sparse(p.n(), &p.sparse()).unwrap();
            assert_eq!(back, p);
        }
        assert_eq!(
            PauliOperator::parse_sparse(7, "X4 X5").unwrap(),
            PauliOperator::from_support(7, &[4, 5], &[])
        );
        assert_eq!(PauliOperator::parse_sparse(7, "I").unwrap(), PauliOperator::identity(7));
    }

    #[test]
    fn parse_errors() {
        assert!(PauliOperator::parse_dense("ABC").is_err());
        assert!(PauliOperator::parse_sparse(4, "X9").is_err());
        assert!(PauliOperator::parse_sparse(4, "Q1").is_err());
    }

    #[test]
    fn permute_moves_letters() {
        // cycle  1 -> 4 -> 2 -> 1,  3 -> 5 -> 6 -> 3,  7 fixed
        let perm = [3usize, 0, 4, 1, 5, 2, 6];
        let p = PauliOperator::x_on(7, 1).permute(&perm);
        assert_eq!(p, PauliOperator::x_on(7, 4));
        let q = PauliOperator::z_on(7, 6).permute(&perm);
        assert_eq!(q, PauliOperator::z_on(7, 3));
    }
}
