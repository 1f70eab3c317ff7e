//! Stabilizer codes: construction, validation, syndromes and coset queries.

use std::fmt::Write as _;
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf2::{self, Echelon, Row};
use crate::pauli::{PauliOperator, Sector, SyndromeVector};

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("generator {0} is dependent on earlier generators")]
    Dependent(usize),
    #[error("generator {0} acts on {1} qubits, code has {2}")]
    WrongLength(usize, usize, usize),
    #[error("expected {expected} logical pairs, got {x} X and {z} Z operators")]
    LogicalCount { expected: usize, x: usize, z: usize },
    #[error("logical {0} does not commute with generator {1}")]
    LogicalVsStabilizer(usize, usize),
    #[error("logical pair {0}: wrong commutation with pair {1}")]
    LogicalPairing(usize, usize),
    #[error("distance search enumerated more than {0} operators (cap)")]
    SearchCap(usize),
    #[error("stabilizer group too large to materialize ({0} generators)")]
    GroupTooLarge(usize),
    #[error("plaquette index {0} out of range 1..={1}")]
    PlaquetteIndex(usize, usize),
    #[error("parse error at line {0}: {1}")]
    Parse(usize, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaquette {
    pub color: String,
    /// 1-based qubit indices.
    pub qubits: Vec<usize>,
}

/// Indices of pure-X and pure-Z generators for CSS codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssSplit {
    pub x_rows: Vec<usize>,
    pub z_rows: Vec<usize>,
}

/// A validated stabilizer code with chosen logical operators.
///
/// Immutable after construction; group tables are computed lazily and cached.
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    css_split: Option<CssSplit>,
    plaquettes: Vec<Plaquette>,
    gen_echelon: Echelon,
    group_cache: OnceLock<Vec<PauliOperator>>,
    x_group_cache: OnceLock<Vec<PauliOperator>>,
    z_group_cache: OnceLock<Vec<PauliOperator>>,
}

impl Clone for StabilizerCode {
    fn clone(&self) -> Self {
        StabilizerCode {
            name: self.name.clone(),
            n: self.n,
            generators: self.generators.clone(),
            logical_x: self.logical_x.clone(),
            logical_z: self.logical_z.clone(),
            css_split: self.css_split.clone(),
            plaquettes: self.plaquettes.clone(),
            gen_echelon: self.gen_echelon.clone(),
            group_cache: OnceLock::new(),
            x_group_cache: OnceLock::new(),
            z_group_cache: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StabilizerCode({}, [[{},{}]])", self.name, self.n, self.k())
    }
}

/// Result of the exhaustive distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Found(usize),
    /// No normalizer-minus-stabilizer element up to the search weight.
    AtLeast(usize),
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Found(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Outcome of [`StabilizerCode::logical_action`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicalAction {
    /// Nonzero syndrome.
    Detectable,
    /// Zero syndrome; bit `2i` = logical X_i factor, bit `2i+1` = logical Z_i.
    Class(u64),
}

impl LogicalAction {
    pub fn is_trivial(&self) -> bool {
        matches!(self, LogicalAction::Class(0))
    }
}

impl StabilizerCode {
    pub fn build(
        name: &str,
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
        plaquettes: Vec<Plaquette>,
    ) -> Result<Self, CodeError> {
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(CodeError::WrongLength(i, g.n(), n));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !g.commutes(h) {
                    return Err(CodeError::NonCommuting(i, j));
                }
            }
        }
        let mut ech = Echelon::new();
        for (i, g) in generators.iter().enumerate() {
            if !ech.insert(gf2::row_of(g)) {
                return Err(CodeError::Dependent(i));
            }
        }
        let k = n - generators.len();
        if logical_x.len() != k || logical_z.len() != k {
            return Err(CodeError::LogicalCount { expected: k, x: logical_x.len(), z: logical_z.len() });
        }
        for (li, l) in logical_x.iter().chain(logical_z.iter()).enumerate() {
            if l.n() != n {
                return Err(CodeError::WrongLength(li, l.n(), n));
            }
            for (gi, g) in generators.iter().enumerate() {
                if !l.commutes(g) {
                    return Err(CodeError::LogicalVsStabilizer(li, gi));
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                let want_anti = i == j;
                if (!logical_x[i].commutes(&logical_z[j])) != want_anti {
                    return Err(CodeError::LogicalPairing(i, j));
                }
                if i < j {
                    if !logical_x[i].commutes(&logical_x[j]) || !logical_z[i].commutes(&logical_z[j]) {
                        return Err(CodeError::LogicalPairing(i, j));
                    }
                }
            }
        }
        for p in &plaquettes {
            for &q in &p.qubits {
                if q < 1 || q > n {
                    return Err(CodeError::PlaquetteIndex(q, n));
                }
            }
        }
        let css_split = derive_css_split(&generators);
        Ok(StabilizerCode {
            name: name.to_string(),
            n,
            generators,
            logical_x,
            logical_z,
            css_split,
            plaquettes,
            gen_echelon: ech,
            group_cache: OnceLock::new(),
            x_group_cache: OnceLock::new(),
            z_group_cache: OnceLock::new(),
        })
    }

    /// Builds a code, deriving a valid logical basis by symplectic completion.
    pub fn build_with_derived_logicals(
        name: &str,
        n: usize,
        generators: Vec<PauliOperator>,
        plaquettes: Vec<Plaquette>,
    ) -> Result<Self, CodeError> {
        let (lx, lz) = complete_logicals(n, &generators)?;
        Self::build(name, n, generators, lx, lz, plaquettes)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn css_split(&self) -> Option<&CssSplit> {
        self.css_split.as_ref()
    }

    pub fn is_css(&self) -> bool {
        self.css_split.is_some()
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    /// Bit `i` is set iff `p` anticommutes with generator `i`.
    pub fn syndrome_of(&self, p: &PauliOperator) -> SyndromeVector {
        assert_eq!(p.n(), self.n, "operator length mismatch");
        let mut s = SyndromeVector::new(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            s.set(i, !p.commutes(g));
        }
        s
    }

    /// Syndrome restricted to the given generator rows.
    pub fn syndrome_rows(&self, p: &PauliOperator, rows: &[usize]) -> SyndromeVector {
        let mut s = SyndromeVector::new(rows.len());
        for (i, &r) in rows.iter().enumerate() {
            s.set(i, !p.commutes(&self.generators[r]));
        }
        s
    }

    pub fn in_stabilizer(&self, p: &PauliOperator) -> bool {
        self.gen_echelon.contains(gf2::row_of(p))
    }

    /// True iff `p` and `q` differ by a stabilizer element.
    pub fn stabilizer_equivalent(&self, p: &PauliOperator, q: &PauliOperator) -> bool {
        self.in_stabilizer(&p.multiply(q))
    }

    /// All `2^r` stabilizer elements. Guarded against large groups.
    pub fn stabilizer_group(&self) -> &[PauliOperator] {
        self.group_cache.get_or_init(|| enumerate_group(self.n, &self.generators))
    }

    fn sector_group(&self, sector: Sector) -> &[PauliOperator] {
        match (sector, &self.css_split) {
            (Sector::X, Some(split)) => self.x_group_cache.get_or_init(|| {
                let gens: Vec<_> = split.x_rows.iter().map(|&i| self.generators[i]).collect();
                enumerate_group(self.n, &gens)
            }),
            (Sector::Z, Some(split)) => self.z_group_cache.get_or_init(|| {
                let gens: Vec<_> = split.z_rows.iter().map(|&i| self.generators[i]).collect();
                enumerate_group(self.n, &gens)
            }),
            _ => self.stabilizer_group(),
        }
    }

    /// Minimum sector weight over the stabilizer coset of `p`.
    pub fn coset_min_weight(&self, p: &PauliOperator, sector: Sector) -> usize {
        self.sector_group(sector)
            .iter()
            .map(|s| p.multiply(s).weight(sector))
            .min()
            .unwrap()
    }

    /// Minimum-weight coset representative, ties broken by the raw bit order
    /// (lowest x-support first, then z-support).
    pub fn coset_representative(&self, p: &PauliOperator, sector: Sector) -> PauliOperator {
        let mut best = *p;
        let mut best_key = (p.weight(sector), p.x_bits(), p.z_bits());
        for s in self.sector_group(sector) {
            let c = p.multiply(s);
            let key = (c.weight(sector), c.x_bits(), c.z_bits());
            if key < best_key {
                best_key = key;
                best = c;
            }
        }
        best
    }

    /// Checks the maximum sector weight reachable with one coset element:
    /// true iff some stabilizer multiple of `p` has both X and Z weight at
    /// most `w`.
    pub fn coset_within_sector_weight(&self, p: &PauliOperator, w: usize) -> bool {
        self.stabilizer_group()
            .iter()
            .any(|s| {
                let c = p.multiply(s);
                c.weight(Sector::X) <= w && c.weight(Sector::Z) <= w
            })
    }

    /// Resolves the logical class of `p`. Panics if the syndrome is zero but
    /// `p` lies outside the span of stabilizers and logicals (impossible for
    /// a complete logical basis).
    pub fn logical_action(&self, p: &PauliOperator) -> LogicalAction {
        if !self.syndrome_of(p).is_trivial() {
            return LogicalAction::Detectable;
        }
        let mut ech = self.gen_echelon.clone();
        let r = self.generators.len();
        for i in 0..self.k() {
            ech.insert(gf2::row_of(&self.logical_x[i]));
            ech.insert(gf2::row_of(&self.logical_z[i]));
        }
        let combo = ech
            .solve(gf2::row_of(p))
            .expect("zero-syndrome operator outside normalizer span");
        LogicalAction::Class(combo >> r)
    }

    /// Exhaustive minimum distance search up to `max_search_weight`, with a
    /// cap on the number of enumerated operators.
    pub fn code_parameters(
        &self,
        max_search_weight: usize,
        cap: usize,
    ) -> Result<(usize, usize, Distance), CodeError> {
        assert!(max_search_weight >= 1);
        let mut enumerated = 0usize;
        for w in 1..=max_search_weight.min(self.n) {
            let mut found = false;
            let mut support: Vec<usize> = (0..w).collect();
            loop {
                // 3 letter choices per qubit in the support
                let mut letters = vec![0u8; w];
                loop {
                    enumerated += 1;
                    if enumerated > cap {
                        return Err(CodeError::SearchCap(cap));
                    }
                    let mut x = 0u64;
                    let mut z = 0u64;
                    for (i, &q) in support.iter().enumerate() {
                        let b = 1u64 << q;
                        match letters[i] {
                            0 => x |= b,
                            1 => z |= b,
                            _ => {
                                x |= b;
                                z |= b;
                            }
                        }
                    }
                    let p = PauliOperator::from_bits(self.n, x, z);
                    if self.syndrome_of(&p).is_trivial() && !self.in_stabilizer(&p) {
                        found = true;
                    }
                    if !advance_odometer(&mut letters, 3) {
                        break;
                    }
                }
                if !next_combination(&mut support, self.n) {
                    break;
                }
            }
            if found {
                return Ok((self.n, self.k(), Distance::Found(w)));
            }
        }
        Ok((self.n, self.k(), Distance::AtLeast(max_search_weight + 1)))
    }

    /// Tensor product of two codes on disjoint blocks.
    pub fn tensor(name: &str, a: &StabilizerCode, b: &StabilizerCode) -> Result<StabilizerCode, CodeError> {
        let n = a.n + b.n;
        let mut gens = Vec::new();
        for g in &a.generators {
            gens.push(g.embed(n, 1));
        }
        for g in &b.generators {
            gens.push(g.embed(n, a.n + 1));
        }
        let mut lx = Vec::new();
        let mut lz = Vec::new();
        for l in &a.logical_x {
            lx.push(l.embed(n, 1));
        }
        for l in &b.logical_x {
            lx.push(l.embed(n, a.n + 1));
        }
        for l in &a.logical_z {
            lz.push(l.embed(n, 1));
        }
        for l in &b.logical_z {
            lz.push(l.embed(n, a.n + 1));
        }
        let mut plaq = a.plaquettes.clone();
        for p in &b.plaquettes {
            plaq.push(Plaquette {
                color: p.color.clone(),
                qubits: p.qubits.iter().map(|&q| q + a.n).collect(),
            });
        }
        StabilizerCode::build(name, n, gens, lx, lz, plaq)
    }

    /// Two copies of `self` side by side.
    pub fn two_block(&self) -> StabilizerCode {
        StabilizerCode::tensor(&format!("{}x2", self.name), self, self)
            .expect("two-block tensor of a valid code is valid")
    }

    /// Renders the line-oriented code file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "code {} n={}", self.name, self.n).unwrap();
        for g in &self.generators {
            writeln!(out, "stab {}", g.dense()).unwrap();
        }
        for i in 0..self.k() {
            writeln!(out, "logicalX {}", self.logical_x[i].dense()).unwrap();
            writeln!(out, "logicalZ {}", self.logical_z[i].dense()).unwrap();
        }
        for p in &self.plaquettes {
            let idx: Vec<String> = p.qubits.iter().map(|q| q.to_string()).collect();
            writeln!(out, "plaquette {} {}", p.color, idx.join(" ")).unwrap();
        }
        out
    }

    /// Parses the code file format produced by [`Self::render`].
    pub fn parse(text: &str) -> Result<StabilizerCode, CodeError> {
        let mut name = String::new();
        let mut n = 0usize;
        let mut gens = Vec::new();
        let mut lx = Vec::new();
        let mut lz = Vec::new();
        let mut plaq = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap();
            let err = |m: String| CodeError::Parse(lineno, m);
            match head {
                "code" => {
                    name = toks.next().ok_or_else(|| err("missing name".into()))?.to_string();
                    let nspec = toks.next().ok_or_else(|| err("missing n=".into()))?;
                    let v = nspec
                        .strip_prefix("n=")
                        .ok_or_else(|| err(format!("expected n=<count>, got {nspec:?}")))?;
                    n = v.parse().map_err(|_| err(format!("bad qubit count {v:?}")))?;
                }
                "stab" | "logicalX" | "logicalZ" => {
                    if n == 0 {
                        return Err(err("code header must come first".into()));
                    }
                    let rest: Vec<&str> = toks.collect();
                    let s = rest.join(" ");
                    let p = PauliOperator::parse(n, &s)
                        .map_err(|e| err(e.to_string()))?;
                    match head {
                        "stab" => gens.push(p),
                        "logicalX" => lx.push(p),
                        _ => lz.push(p),
                    }
                }
                "plaquette" => {
                    let color = toks.next().ok_or_else(|| err("missing color".into()))?.to_string();
                    let mut qubits = Vec::new();
                    for t in toks {
                        qubits.push(t.parse().map_err(|_| err(format!("bad index {t:?}")))?);
                    }
                    plaq.push(Plaquette { color, qubits });
                }
                _ => return Err(err(format!("unknown directive {head:?}"))),
            }
        }
        if n == 0 {
            return Err(CodeError::Parse(0, "missing code header".into()));
        }
        StabilizerCode::build(&name, n, gens, lx, lz, plaq)
    }
}

fn derive_css_split(generators: &[PauliOperator]) -> Option<CssSplit> {
    let mut x_rows = Vec::new();
    let mut z_rows = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if g.z_bits() == 0 {
            x_rows.push(i);
        } else if g.x_bits() == 0 {
            z_rows.push(i);
        } else {
            return None;
        }
    }
    Some(CssSplit { x_rows, z_rows })
}

fn enumerate_group(n: usize, gens: &[PauliOperator]) -> Vec<PauliOperator> {
    assert!(gens.len() <= 20, "stabilizer group too large to materialize");
    let mut out = Vec::with_capacity(1 << gens.len());
    out.push(PauliOperator::identity(n));
    for g in gens {
        let half = out.len();
        for i in 0..half {
            out.push(out[i].multiply(g));
        }
    }
    out
}

/// Computes a symplectic completion: `k` logical X/Z pairs commuting with all
/// generators, pairwise correct.
pub fn complete_logicals(
    n: usize,
    generators: &[PauliOperator],
) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>), CodeError> {
    // centralizer of the generator set
    let constraints: Vec<Row> = generators
        .iter()
        .map(|g| (g.z_bits(), g.x_bits())) // symplectic flip
        .collect();
    let cent = kernel(&constraints, n);
    let mut pool: Vec<PauliOperator> = cent
        .into_iter()
        .map(|(x, z)| PauliOperator::from_bits(n, x, z))
        .collect();
    // prefer low-weight representatives so derived logicals stay readable
    pool.sort_by_key(|p| (p.weight(Sector::Full), p.x_bits(), p.z_bits()));

    let mut span = gf2::echelon_of(generators);
    let k = n - generators.len();
    let mut lx = Vec::with_capacity(k);
    let mut lz = Vec::with_capacity(k);
    for _ in 0..k {
        // pick an element outside the current span that anticommutes with
        // something else in the pool
        let mut chosen: Option<(PauliOperator, PauliOperator)> = None;
        'outer: for i in 0..pool.len() {
            let a = pool[i];
            if span.contains(gf2::row_of(&a)) {
                continue;
            }
            for j in 0..pool.len() {
                if i == j {
                    continue;
                }
                let b = pool[j];
                if !a.commutes(&b) {
                    chosen = Some((a, b));
                    break 'outer;
                }
            }
        }
        let (a, b) = chosen.ok_or(CodeError::Dependent(generators.len()))?;
        // clean the pool so the rest commutes with both
        for c in pool.iter_mut() {
            let mut v = *c;
            if !v.commutes(&b) {
                v = v.multiply(&a);
            }
            if !v.commutes(&a) {
                v = v.multiply(&b);
            }
            *c = v;
        }
        span.insert(gf2::row_of(&a));
        span.insert(gf2::row_of(&b));
        lx.push(a);
        lz.push(b);
    }
    // orient pairs so X-logicals carry an X part where possible
    for i in 0..k {
        if lx[i].x_bits() == 0 && lz[i].x_bits() != 0 {
            std::mem::swap(&mut lx[i], &mut lz[i]);
        }
    }
    Ok((lx, lz))
}

/// Kernel of the constraint rows viewed as dot products over 2n bits.
fn kernel(constraints: &[Row], n: usize) -> Vec<Row> {
    let get = |r: Row, bit: usize| -> bool {
        if bit < 64 {
            r.0 >> bit & 1 != 0
        } else {
            r.1 >> (bit - 64) & 1 != 0
        }
    };
    let set = |r: &mut Row, bit: usize| {
        if bit < 64 {
            r.0 |= 1 << bit;
        } else {
            r.1 |= 1 << (bit - 64);
        }
    };
    let positions: Vec<usize> = (0..n).chain(64..64 + n).collect();
    let mut rows: Vec<Row> = constraints.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (bit, row)
    let mut rank = 0usize;
    for &bit in &positions {
        if let Some(r) = (rank..rows.len()).find(|&r| get(rows[r], bit)) {
            rows.swap(rank, r);
            for rr in 0..rows.len() {
                if rr != rank && get(rows[rr], bit) {
                    rows[rr] = (rows[rr].0 ^ rows[rank].0, rows[rr].1 ^ rows[rank].1);
                }
            }
            pivots.push((bit, rank));
            rank += 1;
        }
    }
    let pivot_bits: Vec<usize> = pivots.iter().map(|&(b, _)| b).collect();
    let mut basis = Vec::new();
    for &f in &positions {
        if pivot_bits.contains(&f) {
            continue;
        }
        let mut v: Row = (0, 0);
        set(&mut v, f);
        for &(pb, ri) in &pivots {
            if get(rows[ri], f) {
                set(&mut v, pb);
            }
        }
        basis.push(v);
    }
    basis
}

/// Advances `idx` to the next `w`-subset of `0..n`. Returns false when done.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let w = idx.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - w {
            idx[i] += 1;
            for j in i + 1..w {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advances a mixed-radix counter; returns false on wraparound.
pub(crate) fn advance_odometer(digits: &mut [u8], radix: u8) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn steane_builds_and_validates() {
        let code = catalog::steane7();
        assert_eq!(code.n(), 7);
        assert_eq!(code.k(), 1);
        assert!(code.is_css());
        let (n, k, d) = code.code_parameters(3, 1_000_000).unwrap();
        assert_eq!((n, k, d), (7, 1, Distance::Found(3)));
    }

    #[test]
    fn dependent_generators_rejected() {
        let shifts = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ", "ZZXIX"];
        let gens: Vec<_> = shifts.iter().map(|s| PauliOperator::parse_dense(s).unwrap()).collect();
        let err = StabilizerCode::build("bad513", 5, gens, vec![], vec![], vec![]).unwrap_err();
        assert!(matches!(err, CodeError::Dependent(4)));
    }

    #[test]
    fn syndrome_examples() {
        let code = catalog::steane7();
        let id = PauliOperator::identity(7);
        assert!(code.syndrome_of(&id).is_trivial());

        // Z-sector rows come after the three X rows in the generator order
        let x1 = PauliOperator::x_on(7, 1);
        let s = code.syndrome_of(&x1);
        assert_eq!(format!("{s}"), "000001");

        // Z6 Z7 has the same syndrome as Z1 composed with the transversal logical
        let z67 = PauliOperator::from_support(7, &[], &[6, 7]);
        let z1zbar = PauliOperator::z_on(7, 1)
            .multiply(&PauliOperator::parse_dense("ZZZZZZZ").unwrap());
        assert_eq!(code.syndrome_of(&z67), code.syndrome_of(&z1zbar));
        assert!(code.stabilizer_equivalent(&z67, &z1zbar));
    }

    #[test]
    fn equivalence_and_coset_weights() {
        let code = catalog::steane7();
        let x45 = PauliOperator::from_support(7, &[4, 5], &[]);
        let x1xbar = PauliOperator::x_on(7, 1)
            .multiply(&PauliOperator::parse_dense("XXXXXXX").unwrap());
        assert!(code.stabilizer_equivalent(&x45, &x1xbar));
        assert!(!code.stabilizer_equivalent(
            &PauliOperator::x_on(7, 1),
            &PauliOperator::x_on(7, 2)
        ));

        // brute-force oracle: the eight X-sector coset elements of X{6,7}
        let x67 = PauliOperator::from_support(7, &[6, 7], &[]);
        let xgens = ["IIIXXXX", "IXXIIXX", "XIXIXIX"]
            .map(|s| PauliOperator::parse_dense(s).unwrap());
        let mut min = usize::MAX;
        for m in 0..8u8 {
            let mut p = x67;
            for (b, g) in xgens.iter().enumerate() {
                if m >> b & 1 != 0 {
                    p = p.multiply(g);
                }
            }
            min = min.min(p.weight(Sector::X));
        }
        assert_eq!(min, 2);
        assert_eq!(code.coset_min_weight(&x67, Sector::X), 2);
    }

    #[test]
    fn logical_action_examples() {
        let code = catalog::steane7();
        let stab = code.generators()[0];
        assert!(code.logical_action(&stab).is_trivial());
        let xbar = PauliOperator::parse_dense("XXXXXXX").unwrap();
        assert_eq!(code.logical_action(&xbar), LogicalAction::Class(0b01));

        let c422 = catalog::color422();
        let z24 = PauliOperator::from_support(4, &[], &[2, 4]);
        match c422.logical_action(&z24) {
            LogicalAction::Class(c) => assert_ne!(c, 0),
            other => panic!("expected a logical class, got {other:?}"),
        }
    }

    #[test]
    fn code_file_roundtrip() {
        let code = catalog::steane7();
        let text = code.render();
        let back = StabilizerCode::parse(&text).unwrap();
        assert_eq!(back.generators(), code.generators());
        assert_eq!(back.logical_x(), code.logical_x());
        assert_eq!(back.plaquettes(), code.plaquettes());
    }

    #[test]
    fn syndrome_invariant_under_stabilizer_multiplication() {
        let code = catalog::steane7();
        let p = PauliOperator::from_support(7, &[2, 5], &[3]);
        for s in code.stabilizer_group() {
            assert_eq!(code.syndrome_of(&p.multiply(s)), code.syndrome_of(&p));
        }
    }
}
