//! CNOT-level syndrome-extraction circuits: parsing, validation, and ideal
//! semantics.
//!
//! A circuit is a time-ordered list of ticks; each tick holds locations that
//! act on disjoint qubits. Wires are named `d1..` (data, 1-based) and `a0..`
//! (ancilla, 0-based). Measurements may declare the data operator they are
//! expected to read (`expects ...`); a measurement without a declaration is a
//! flag and must read the identity.
//!
//! `PERMUTE` relabels data qubits and is fault-free. `SWAP` is a relabeling
//! of physical positions used by the locality checker; it does not move
//! Pauli frames, but a failure at a swap can hit both involved qubits.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::code::StabilizerCode;
use crate::gf2::{self, Echelon};
use crate::pauli::{PauliOperator, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wire {
    /// 1-based data qubit.
    Data(u16),
    /// 0-based ancilla qubit.
    Anc(u16),
}

impl std::fmt::Display for Wire {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Wire::Data(i) => write!(f, "d{i}"),
            Wire::Anc(i) => write!(f, "a{i}"),
        }
    }
}

impl Wire {
    pub fn parse(tok: &str) -> Option<Wire> {
        let (head, rest) = tok.split_at(1);
        let idx: u16 = rest.parse().ok()?;
        match head {
            "d" if idx >= 1 => Some(Wire::Data(idx)),
            "a" => Some(Wire::Anc(idx)),
            _ => None,
        }
    }
}

/// Measurement basis; preps use the same pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    fn letter(self) -> char {
        match self {
            Basis::Z => 'z',
            Basis::X => 'x',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Prep(Basis, Wire),
    Cnot(Wire, Wire),
    /// Measurement with an optional declared data operator (sparse tokens,
    /// resolved against the data qubit count at validation time).
    Meas(Basis, Wire, Option<String>),
    Rest(Wire),
    Swap(Wire, Wire),
    /// Fault-free relabeling of data qubits, in cycle notation.
    Permute(Vec<Vec<u16>>),
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("tick {0}: qubit {1} used twice")]
    Collision(usize, String),
    #[error("tick {0}: cnot control equals target ({1})")]
    SelfCnot(usize, String),
    #[error("tick {0}: {1} used while not live (measure consumed it or it was never prepared)")]
    DeadWire(usize, String),
    #[error("ancilla {0} is prepared but never measured")]
    UnmeasuredAncilla(String),
    #[error("too many qubits: {0} data + {1} ancilla exceeds {MAX_QUBITS}")]
    TooWide(usize, usize),
    #[error("measurement {0}: outcome is not deterministic on the codespace (operator {1} survives at a {2} preparation)")]
    NondeterministicMeasurement(usize, String, String),
    #[error("measurement {0}: reads {1} but declares {2}")]
    DeclaredMismatch(usize, String, String),
    #[error("measurement {0}: reads {1}, which is not a stabilizer element")]
    NotAStabilizer(usize, String),
    #[error("net action: image of {0} anticommutes with measurement {1}")]
    DisturbsGroup(String, usize),
    #[error("net action: image of {0} is {1}, outside the stabilizer group")]
    GroupNotPreserved(String, String),
    #[error("net action: stabilizer group rank drops from {0} to {1}")]
    RankDrop(usize, usize),
    #[error("net action: logical {0} maps to {1}, a different logical class")]
    LogicalChanged(String, String),
    #[error("permutation: {0}")]
    BadPermutation(String),
}

/// A parsed, validated circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub name: String,
    /// Data qubit count (1-based indices up to this value).
    pub n_data: usize,
    /// Ancilla count (0-based indices below this value).
    pub n_anc: usize,
    pub ticks: Vec<Vec<Location>>,
}

impl Circuit {
    /// Parses the line-oriented grammar. `tick` lines separate time steps;
    /// blank lines and `#` comments are ignored.
    pub fn parse(name: &str, text: &str) -> Result<Circuit, CircuitError> {
        let mut ticks: Vec<Vec<Location>> = vec![Vec::new()];
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if line == "tick" {
                ticks.push(Vec::new());
                continue;
            }
            let err = |m: String| CircuitError::Parse(lineno, m);
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap();
            let loc = match head {
                "prep" => {
                    let b = parse_basis(toks.next(), &err)?;
                    let w = parse_wire(toks.next(), &err)?;
                    Location::Prep(b, w)
                }
                "cnot" => {
                    let c = parse_wire(toks.next(), &err)?;
                    let t = parse_wire(toks.next(), &err)?;
                    Location::Cnot(c, t)
                }
                "meas" => {
                    let b = parse_basis(toks.next(), &err)?;
                    let w = parse_wire(toks.next(), &err)?;
                    let rest: Vec<&str> = toks.collect();
                    let expects = if rest.is_empty() {
                        None
                    } else if rest[0] == "expects" {
                        Some(rest[1..].join(" "))
                    } else {
                        return Err(err(format!("unexpected token {:?}", rest[0])));
                    };
                    Location::Meas(b, w, expects)
                }
                "rest" => Location::Rest(parse_wire(toks.next(), &err)?),
                "swap" => {
                    let a = parse_wire(toks.next(), &err)?;
                    let b = parse_wire(toks.next(), &err)?;
                    Location::Swap(a, b)
                }
                "permute" => {
                    let spec: String = line["permute".len()..].trim().to_string();
                    Location::Permute(parse_cycles(&spec).map_err(err)?)
                }
                _ => return Err(err(format!("unknown location {head:?}"))),
            };
            ticks.last_mut().unwrap().push(loc);
        }
        while ticks.last().is_some_and(|t| t.is_empty()) {
            ticks.pop();
        }
        let mut n_data = 0usize;
        let mut n_anc = 0usize;
        for t in &ticks {
            for loc in t {
                for w in loc_wires(loc) {
                    match w {
                        Wire::Data(i) => n_data = n_data.max(i as usize),
                        Wire::Anc(i) => n_anc = n_anc.max(i as usize + 1),
                    }
                }
                if let Location::Permute(cycles) = loc {
                    for c in cycles {
                        for &q in c {
                            n_data = n_data.max(q as usize);
                        }
                    }
                }
            }
        }
        let c = Circuit { name: name.to_string(), n_data, n_anc, ticks };
        c.validate()?;
        Ok(c)
    }

    /// Extends the data register (untouched data qubits still belong to the code).
    pub fn with_data_count(mut self, n_data: usize) -> Circuit {
        assert!(n_data >= self.n_data);
        self.n_data = n_data;
        self
    }

    pub fn width(&self) -> usize {
        self.n_data + self.n_anc
    }

    /// Canonical rendering; `parse(render(c))` reproduces the circuit.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, tick) in self.ticks.iter().enumerate() {
            if i > 0 {
                writeln!(out, "tick").unwrap();
            }
            for loc in tick {
                match loc {
                    Location::Prep(b, w) => writeln!(out, "prep {} {}", b.letter(), w).unwrap(),
                    Location::Cnot(c, t) => writeln!(out, "cnot {c} {t}").unwrap(),
                    Location::Meas(b, w, e) => match e {
                        Some(s) => writeln!(out, "meas {} {} expects {}", b.letter(), w, s).unwrap(),
                        None => writeln!(out, "meas {} {}", b.letter(), w).unwrap(),
                    },
                    Location::Rest(w) => writeln!(out, "rest {w}").unwrap(),
                    Location::Swap(a, b) => writeln!(out, "swap {a} {b}").unwrap(),
                    Location::Permute(cycles) => {
                        let mut s = String::from("permute ");
                        for c in cycles {
                            let inner: Vec<String> = c.iter().map(|q| q.to_string()).collect();
                            write!(s, "({})", inner.join(" ")).unwrap();
                        }
                        writeln!(out, "{s}").unwrap();
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), CircuitError> {
        if self.width() > MAX_QUBITS {
            return Err(CircuitError::TooWide(self.n_data, self.n_anc));
        }
        // liveness: every wire starts live (fragments without explicit preps
        // are allowed); a measurement consumes its wire until the next prep
        let mut live: HashMap<Wire, bool> = HashMap::new();
        for (ti, tick) in self.ticks.iter().enumerate() {
            let mut used: Vec<Wire> = Vec::new();
            let touch = |w: Wire, used: &mut Vec<Wire>| -> Result<(), CircuitError> {
                if used.contains(&w) {
                    return Err(CircuitError::Collision(ti, w.to_string()));
                }
                used.push(w);
                Ok(())
            };
            for loc in tick {
                match loc {
                    Location::Permute(cycles) => {
                        // touches every data qubit
                        for q in 1..=self.n_data as u16 {
                            touch(Wire::Data(q), &mut used)?;
                        }
                        validate_cycles(cycles, self.n_data)?;
                    }
                    Location::Cnot(c, t) => {
                        if c == t {
                            return Err(CircuitError::SelfCnot(ti, c.to_string()));
                        }
                        touch(*c, &mut used)?;
                        touch(*t, &mut used)?;
                    }
                    Location::Swap(a, b) => {
                        if a == b {
                            return Err(CircuitError::SelfCnot(ti, a.to_string()));
                        }
                        touch(*a, &mut used)?;
                        touch(*b, &mut used)?;
                    }
                    Location::Prep(_, w) | Location::Meas(_, w, _) | Location::Rest(w) => {
                        touch(*w, &mut used)?;
                    }
                }
            }
            // liveness transitions happen after collision checks, per tick
            for loc in tick {
                let is_live = |w: &Wire, live: &HashMap<Wire, bool>| -> bool {
                    *live.get(w).unwrap_or(&true)
                };
                match loc {
                    Location::Prep(_, w) => {
                        live.insert(*w, true);
                    }
                    Location::Meas(_, w, _) => {
                        if !is_live(w, &live) {
                            return Err(CircuitError::DeadWire(ti, w.to_string()));
                        }
                        live.insert(*w, false);
                    }
                    Location::Cnot(a, b) | Location::Swap(a, b) => {
                        for w in [a, b] {
                            if !is_live(w, &live) {
                                return Err(CircuitError::DeadWire(ti, w.to_string()));
                            }
                        }
                    }
                    Location::Rest(w) => {
                        if !is_live(w, &live) {
                            return Err(CircuitError::DeadWire(ti, w.to_string()));
                        }
                    }
                    Location::Permute(_) => {}
                }
            }
        }
        Ok(())
    }

    /// Flat 0-based index of a wire: data first, then ancillas.
    pub fn flat(&self, w: Wire) -> usize {
        match w {
            Wire::Data(i) => i as usize - 1,
            Wire::Anc(i) => self.n_data + i as usize,
        }
    }

    /// All locations in time order with their tick index.
    pub fn locations(&self) -> impl Iterator<Item = (usize, &Location)> {
        self.ticks.iter().enumerate().flat_map(|(ti, t)| t.iter().map(move |l| (ti, l)))
    }

    pub fn cnot_count(&self) -> usize {
        self.locations().filter(|(_, l)| matches!(l, Location::Cnot(..))).count()
    }

    /// (ticks containing preps, ticks containing CNOTs, ticks containing measurements).
    pub fn round_profile(&self) -> (usize, usize, usize) {
        let mut preps = 0;
        let mut cnots = 0;
        let mut meas = 0;
        for tick in &self.ticks {
            if tick.iter().any(|l| matches!(l, Location::Prep(..))) {
                preps += 1;
            }
            if tick.iter().any(|l| matches!(l, Location::Cnot(..))) {
                cnots += 1;
            }
            if tick.iter().any(|l| matches!(l, Location::Meas(..))) {
                meas += 1;
            }
        }
        (preps, cnots, meas)
    }

    pub fn measurements(&self) -> Vec<(Basis, Wire, Option<String>)> {
        self.locations()
            .filter_map(|(_, l)| match l {
                Location::Meas(b, w, e) => Some((*b, *w, e.clone())),
                _ => None,
            })
            .collect()
    }

    /// Resolves the data permutation of a `Permute` location to a 0-based map
    /// over the full wire width (identity on ancillas).
    pub fn resolve_permutation(&self, cycles: &[Vec<u16>]) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.width()).collect();
        for c in cycles {
            for i in 0..c.len() {
                let from = c[i] as usize - 1;
                let to = c[(i + 1) % c.len()] as usize - 1;
                perm[from] = to;
            }
        }
        perm
    }

    /// Back-propagates each measurement to time zero and returns the data
    /// operator it reads. Errors on nondeterministic outcomes. If `code` is
    /// given, also checks the declared operator, stabilizer membership, and
    /// that the circuit's net action on the stabilizer group and logicals is
    /// trivial.
    pub fn measured_operators(
        &self,
        code: Option<&StabilizerCode>,
    ) -> Result<Vec<PauliOperator>, CircuitError> {
        if let Some(c) = code {
            assert_eq!(c.n(), self.n_data, "code size vs circuit data register");
        }
        let w = self.width();
        let flat_locs: Vec<&Location> = self.locations().map(|(_, l)| l).collect();
        let mut out = Vec::new();
        let mut meas_idx = 0usize;
        for (i, loc) in flat_locs.iter().enumerate() {
            let (basis, wq, expects) = match loc {
                Location::Meas(b, wq, e) => (*b, *wq, e),
                _ => continue,
            };
            let q = self.flat(wq);
            let mut p = match basis {
                Basis::Z => PauliOperator::from_bits(w, 0, 1 << q),
                Basis::X => PauliOperator::from_bits(w, 1 << q, 0),
            };
            // walk backwards
            for j in (0..i).rev() {
                match flat_locs[j] {
                    Location::Cnot(c, t) => {
                        p = conjugate_cnot(p, self.flat(*c), self.flat(*t));
                    }
                    Location::Permute(cycles) => {
                        let perm = invert(&self.resolve_permutation(cycles));
                        p = p.permute(&perm);
                    }
                    Location::Prep(b, pw) => {
                        let pq = self.flat(*pw);
                        let has_x = p.x_bits() >> pq & 1 != 0;
                        let has_z = p.z_bits() >> pq & 1 != 0;
                        let bad = match b {
                            Basis::Z => has_x,
                            Basis::X => has_z,
                        };
                        if bad {
                            return Err(CircuitError::NondeterministicMeasurement(
                                meas_idx,
                                p.sparse(),
                                format!("{pw}"),
                            ));
                        }
                        // absorb the stabilized component
                        let clear = !(1u64 << pq);
                        p = PauliOperator::from_bits(w, p.x_bits() & clear, p.z_bits() & clear);
                    }
                    Location::Meas(_, mw, _) => {
                        let mq = self.flat(*mw);
                        debug_assert!(
                            (p.x_bits() | p.z_bits()) >> mq & 1 == 0,
                            "support on a consumed wire while back-propagating"
                        );
                    }
                    Location::Rest(_) | Location::Swap(..) => {}
                }
            }
            // ancilla support must have been absorbed by preps
            let anc_mask = ((1u64 << self.n_anc) - 1).checked_shl(self.n_data as u32).unwrap_or(0);
            let anc_mask = if self.n_anc == 0 { 0 } else { anc_mask };
            if (p.x_bits() | p.z_bits()) & anc_mask != 0 {
                return Err(CircuitError::NondeterministicMeasurement(
                    meas_idx,
                    p.sparse(),
                    "circuit start".into(),
                ));
            }
            let data_op = p.restrict(1, self.n_data.max(1));
            if let Some(code) = code {
                let declared = match expects {
                    Some(s) => PauliOperator::parse(self.n_data, s)
                        .map_err(|e| CircuitError::Parse(0, e.to_string()))?,
                    None => PauliOperator::identity(self.n_data),
                };
                if declared != data_op {
                    return Err(CircuitError::DeclaredMismatch(
                        meas_idx,
                        data_op.sparse(),
                        declared.sparse(),
                    ));
                }
                if !code.in_stabilizer(&data_op) {
                    return Err(CircuitError::NotAStabilizer(meas_idx, data_op.sparse()));
                }
            }
            out.push(data_op);
            meas_idx += 1;
        }
        if let Some(code) = code {
            self.check_net_action(code)?;
        }
        Ok(out)
    }

    /// Forward-propagates every stabilizer generator, prep operator and
    /// logical; requires the stabilizer group to be exactly regenerated and
    /// the logical classes preserved.
    fn check_net_action(&self, code: &StabilizerCode) -> Result<(), CircuitError> {
        let w = self.width();
        let flat_locs: Vec<&Location> = self.locations().map(|(_, l)| l).collect();

        // forward image with drops at compatible measurements
        let forward = |start: usize, mut p: PauliOperator, label: &str| -> Result<PauliOperator, CircuitError> {
            let mut meas_counter = 0usize;
            for (j, loc) in flat_locs.iter().enumerate() {
                match loc {
                    Location::Meas(b, mw, _) => {
                        let idx = meas_counter;
                        meas_counter += 1;
                        if j < start {
                            continue;
                        }
                        let mq = self.flat(*mw);
                        let has_x = p.x_bits() >> mq & 1 != 0;
                        let has_z = p.z_bits() >> mq & 1 != 0;
                        let anti = match b {
                            Basis::Z => has_x,
                            Basis::X => has_z,
                        };
                        if anti {
                            return Err(CircuitError::DisturbsGroup(label.to_string(), idx));
                        }
                        // drop the compatible component on the measured qubit
                        let clear = !(1u64 << mq);
                        p = PauliOperator::from_bits(w, p.x_bits() & clear, p.z_bits() & clear);
                    }
                    _ if j < start => continue,
                    Location::Cnot(c, t) => {
                        p = conjugate_cnot(p, self.flat(*c), self.flat(*t));
                    }
                    Location::Permute(cycles) => {
                        p = p.permute(&self.resolve_permutation(cycles));
                    }
                    Location::Prep(_, pw) => {
                        let pq = self.flat(*pw);
                        debug_assert!(
                            (p.x_bits() | p.z_bits()) >> pq & 1 == 0,
                            "support on a wire at its preparation"
                        );
                    }
                    Location::Rest(_) | Location::Swap(..) => {}
                }
            }
            Ok(p)
        };

        let embed = |p: &PauliOperator| p.embed(w, 1);
        let mut images: Vec<(String, PauliOperator)> = Vec::new();
        for (gi, g) in code.generators().iter().enumerate() {
            let img = forward(0, embed(g), &format!("generator {gi}"))?;
            images.push((format!("generator {gi}"), img));
        }
        // operators introduced by preparations
        for (j, loc) in flat_locs.iter().enumerate() {
            if let Location::Prep(b, pw) = loc {
                let pq = self.flat(*pw);
                let p = match b {
                    Basis::Z => PauliOperator::from_bits(w, 0, 1 << pq),
                    Basis::X => PauliOperator::from_bits(w, 1 << pq, 0),
                };
                let img = forward(j + 1, p, &format!("prep at {pw}"))?;
                images.push((format!("prep at {pw}"), img));
            }
        }
        let anc_mask = if self.n_anc == 0 {
            0
        } else {
            ((1u64 << self.n_anc) - 1) << self.n_data
        };
        let mut ech = Echelon::new();
        let mut rank = 0usize;
        for (label, img) in &images {
            if (img.x_bits() | img.z_bits()) & anc_mask != 0 {
                return Err(CircuitError::GroupNotPreserved(label.clone(), img.sparse()));
            }
            let data_img = img.restrict(1, self.n_data);
            if !code.in_stabilizer(&data_img) {
                return Err(CircuitError::GroupNotPreserved(label.clone(), data_img.sparse()));
            }
            if ech.insert(gf2::row_of(&data_img)) {
                rank += 1;
            }
        }
        if rank < code.generators().len() {
            return Err(CircuitError::RankDrop(code.generators().len(), rank));
        }
        for (li, l) in code.logical_x().iter().chain(code.logical_z().iter()).enumerate() {
            let img = forward(0, embed(l), &format!("logical {li}"))?;
            let data_img = img.restrict(1, self.n_data);
            if !code.stabilizer_equivalent(&data_img, l) {
                return Err(CircuitError::LogicalChanged(l.sparse(), data_img.sparse()));
            }
        }
        Ok(())
    }

    /// Lists CNOTs whose endpoints are not adjacent in `layout`, given the
    /// running position relabeling induced by swap points.
    pub fn check_locality(&self, layout: &Layout) -> Vec<LocalityViolation> {
        let mut pos: HashMap<Wire, Wire> = HashMap::new(); // wire -> site
        let mut report = Vec::new();
        for (ti, loc) in self.locations() {
            match loc {
                Location::Swap(a, b) => {
                    let pa = *pos.get(a).unwrap_or(a);
                    let pb = *pos.get(b).unwrap_or(b);
                    pos.insert(*a, pb);
                    pos.insert(*b, pa);
                }
                Location::Cnot(c, t) => {
                    let sc = *pos.get(c).unwrap_or(c);
                    let st = *pos.get(t).unwrap_or(t);
                    if !layout.adjacent(sc, st) {
                        report.push(LocalityViolation {
                            tick: ti,
                            control: *c,
                            target: *t,
                            control_site: sc,
                            target_site: st,
                        });
                    }
                }
                _ => {}
            }
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityViolation {
    pub tick: usize,
    pub control: Wire,
    pub target: Wire,
    pub control_site: Wire,
    pub target_site: Wire,
}

/// Undirected adjacency over named sites.
#[derive(Debug, Clone, Default)]
pub struct Layout {
    pub name: String,
    edges: Vec<(Wire, Wire)>,
    complete: bool,
}

impl Layout {
    /// Every pair adjacent.
    pub fn complete() -> Layout {
        Layout { name: "complete".into(), edges: Vec::new(), complete: true }
    }

    pub fn from_edges(name: &str, edges: Vec<(Wire, Wire)>) -> Layout {
        Layout { name: name.into(), edges, complete: false }
    }

    pub fn adjacent(&self, a: Wire, b: Wire) -> bool {
        if self.complete {
            return true;
        }
        self.edges.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    /// Parses `edge <wire> <wire>` lines.
    pub fn parse(name: &str, text: &str) -> Result<Layout, CircuitError> {
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap();
            if head != "edge" {
                return Err(CircuitError::Parse(lineno + 1, format!("unknown directive {head:?}")));
            }
            let a = toks
                .next()
                .and_then(Wire::parse)
                .ok_or_else(|| CircuitError::Parse(lineno + 1, "bad wire".into()))?;
            let b = toks
                .next()
                .and_then(Wire::parse)
                .ok_or_else(|| CircuitError::Parse(lineno + 1, "bad wire".into()))?;
            edges.push((a, b));
        }
        Ok(Layout::from_edges(name, edges))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.edges {
            writeln!(out, "edge {a} {b}").unwrap();
        }
        out
    }
}

/// CNOT conjugation on packed bits: X on the control spreads to the target,
/// Z on the target spreads to the control. Self-inverse.
pub fn conjugate_cnot(p: PauliOperator, c: usize, t: usize) -> PauliOperator {
    let mut x = p.x_bits();
    let mut z = p.z_bits();
    if x >> c & 1 != 0 {
        x ^= 1 << t;
    }
    if z >> t & 1 != 0 {
        z ^= 1 << c;
    }
    PauliOperator::from_bits(p.n(), x, z)
}

pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn parse_basis(tok: Option<&str>, err: &impl Fn(String) -> CircuitError) -> Result<Basis, CircuitError> {
    match tok {
        Some("z") | Some("Z") => Ok(Basis::Z),
        Some("x") | Some("X") => Ok(Basis::X),
        other => Err(err(format!("expected basis x|z, got {other:?}"))),
    }
}

fn parse_wire(tok: Option<&str>, err: &impl Fn(String) -> CircuitError) -> Result<Wire, CircuitError> {
    tok.and_then(Wire::parse).ok_or_else(|| err(format!("expected wire, got {tok:?}")))
}

fn parse_cycles(spec: &str) -> Result<Vec<Vec<u16>>, String> {
    let mut cycles = Vec::new();
    let mut rest = spec.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(format!("expected '(' in cycle spec at {rest:?}"));
        }
        let end = rest.find(')').ok_or_else(|| "unclosed cycle".to_string())?;
        let inner = &rest[1..end];
        let mut cycle = Vec::new();
        for tok in inner.split_whitespace() {
            let q: u16 = tok.parse().map_err(|_| format!("bad qubit {tok:?}"))?;
            cycle.push(q);
        }
        if cycle.is_empty() {
            return Err("empty cycle".into());
        }
        cycles.push(cycle);
        rest = rest[end + 1..].trim_start();
    }
    if cycles.is_empty() {
        return Err("empty permutation".into());
    }
    Ok(cycles)
}

fn validate_cycles(cycles: &[Vec<u16>], n_data: usize) -> Result<(), CircuitError> {
    let mut seen = vec![false; n_data + 1];
    for c in cycles {
        for &q in c {
            if q == 0 || q as usize > n_data {
                return Err(CircuitError::BadPermutation(format!("qubit {q} out of range")));
            }
            if seen[q as usize] {
                return Err(CircuitError::BadPermutation(format!("qubit {q} repeated")));
            }
            seen[q as usize] = true;
        }
    }
    Ok(())
}

fn loc_wires(loc: &Location) -> Vec<Wire> {
    match loc {
        Location::Prep(_, w) | Location::Meas(_, w, _) | Location::Rest(w) => vec![*w],
        Location::Cnot(a, b) | Location::Swap(a, b) => vec![*a, *b],
        Location::Permute(_) => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const TEXTBOOK_Z_GADGET: &str = "\
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
    fn parse_single_line() {
        let c = Circuit::parse("one", "cnot d4 a0").unwrap();
        assert_eq!(c.cnot_count(), 1);
        assert_eq!(c.n_data, 4);
        assert_eq!(c.n_anc, 1);
    }

    #[test]
    fn self_cnot_rejected() {
        let err = Circuit::parse("bad", "cnot d4 d4").unwrap_err();
        assert!(matches!(err, CircuitError::SelfCnot(..)));
    }

    #[test]
    fn tick_collision_rejected() {
        let err = Circuit::parse("bad", "cnot d1 a0\ncnot d2 a0").unwrap_err();
        assert!(matches!(err, CircuitError::Collision(..)));
    }

    #[test]
    fn use_after_measure_rejected() {
        let text = "prep z a0\ntick\nmeas z a0\ntick\ncnot d1 a0";
        let err = Circuit::parse("bad", text).unwrap_err();
        assert!(matches!(err, CircuitError::DeadWire(..)));
    }

    #[test]
    fn roundtrip_is_canonical() {
        let c = Circuit::parse("gadget", TEXTBOOK_Z_GADGET).unwrap();
        let rendered = c.render();
        let again = Circuit::parse("gadget", &rendered).unwrap();
        assert_eq!(c, again);
        assert_eq!(again.render(), rendered);
    }

    #[test]
    fn textbook_gadget_measures_the_declared_row() {
        let code = catalog::steane7();
        let c = Circuit::parse("gadget", TEXTBOOK_Z_GADGET).unwrap().with_data_count(7);
        let ops = c.measured_operators(Some(&code)).unwrap();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0], PauliOperator::from_support(7, &[], &[4, 5, 6, 7]));
    }

    #[test]
    fn empty_circuit_counts() {
        let c = Circuit::parse("empty", "").unwrap();
        assert_eq!(c.cnot_count(), 0);
    }

    #[test]
    fn canceling_pair_invariance() {
        // inserting a self-canceling CNOT pair does not change verification
        let code = catalog::steane7();
        let with_pair = "\
prep z a0
prep x a1
tick
cnot d4 a0
tick
cnot a1 a0
tick
cnot d5 a0
tick
cnot a1 a0
tick
cnot d6 a0
tick
cnot d7 a0
tick
meas z a0 expects Z4 Z5 Z6 Z7
meas x a1
";
        let c = Circuit::parse("pair", with_pair).unwrap().with_data_count(7);
        let ops = c.measured_operators(Some(&code)).unwrap();
        assert_eq!(ops[0], PauliOperator::from_support(7, &[], &[4, 5, 6, 7]));
        assert!(ops[1].is_identity());
    }

    #[test]
    fn nondeterministic_measurement_rejected() {
        let code = catalog::steane7();
        // measuring a single data qubit's Z is not deterministic on the codespace
        let text = "prep z a0\ntick\ncnot d1 a0\ntick\nmeas z a0 expects Z1";
        let c = Circuit::parse("bad", text).unwrap().with_data_count(7);
        let err = c.measured_operators(Some(&code)).unwrap_err();
        assert!(matches!(err, CircuitError::NotAStabilizer(..)), "{err}");
    }

    #[test]
    fn locality_reporting() {
        let c = Circuit::parse("gadget", TEXTBOOK_Z_GADGET).unwrap();
        assert!(c.check_locality(&Layout::complete()).is_empty());
        let layout = Layout::parse("line", "edge d4 a0\nedge d5 a0").unwrap();
        let viol = c.check_locality(&layout);
        assert_eq!(viol.len(), 2); // d6 and d7 links missing
    }

    #[test]
    fn swap_rewires_positions() {
        let text = "\
prep z a0
prep z a1
tick
swap a0 a1
tick
cnot d1 a0
tick
meas z a0
meas z a1
";
        // a0 now sits at a1's site, which is adjacent to d1
        let c = Circuit::parse("swapped", text).unwrap();
        let layout = Layout::parse("l", "edge d1 a1\nedge a0 a1").unwrap();
        assert!(c.check_locality(&layout).is_empty());
    }

    #[test]
    fn permute_parse_and_resolve() {
        let c = Circuit::parse("p", "permute (1 4 2)(3 5 6)(7)").unwrap();
        let Location::Permute(cycles) = &c.ticks[0][0] else { panic!() };
        let perm = c.resolve_permutation(cycles);
        assert_eq!(perm[0], 3); // 1 -> 4
        assert_eq!(perm[3], 1); // 4 -> 2
        assert_eq!(perm[1], 0); // 2 -> 1
        assert_eq!(perm[6], 6); // 7 fixed
    }
}
