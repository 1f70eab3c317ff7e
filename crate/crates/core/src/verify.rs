//! Machine checks of fault-tolerance claims by exhaustive single-fault
//! enumeration.
//!
//! The central notion of distinguishability: the map from
//! (measurement-flip pattern, code syndrome of the residual) to the
//! stabilizer coset of the residual must be injective over everything a
//! single fault can produce. That is exactly what makes table-lookup
//! correction well defined.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::circuit::{Circuit, CircuitError};
use crate::code::StabilizerCode;
use crate::fault::{
    single_fault_table, Compiled, EnumerationOptions, FaultEvent, FaultOutcome, FaultSector,
};
use crate::pauli::{PauliOperator, Sector, SyndromeVector};

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub events: Vec<FaultEvent>,
    pub labels: Vec<String>,
    pub input: Option<PauliOperator>,
    pub outcome: FaultOutcome,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct ConditionResult {
    pub name: String,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Default)]
pub struct VerdictStats {
    pub events: usize,
    pub outcome_classes: usize,
}

#[derive(Debug, Clone)]
pub struct VerdictReport {
    pub name: String,
    pub pass: bool,
    pub conditions: Vec<ConditionResult>,
    pub stats: VerdictStats,
}

impl VerdictReport {
    fn from_conditions(name: &str, conditions: Vec<ConditionResult>, stats: VerdictStats) -> Self {
        let pass = conditions.iter().all(|c| c.pass);
        VerdictReport { name: name.to_string(), pass, conditions, stats }
    }

    /// Line-oriented report: VERDICT / CONDITION / COUNTEREXAMPLE lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "VERDICT {} {}", self.name, if self.pass { "PASS" } else { "FAIL" }).unwrap();
        writeln!(out, "STATS events={} classes={}", self.stats.events, self.stats.outcome_classes)
            .unwrap();
        for c in &self.conditions {
            writeln!(out, "CONDITION {} {}", c.name, if c.pass { "PASS" } else { "FAIL" }).unwrap();
            for ce in &c.counterexamples {
                let evs: Vec<String> = ce
                    .events
                    .iter()
                    .zip(&ce.labels)
                    .map(|(e, l)| format!("{}:{}", l, e.payload.label()))
                    .collect();
                let input = match &ce.input {
                    Some(p) => format!(" input={}", p.sparse()),
                    None => String::new(),
                };
                writeln!(
                    out,
                    "COUNTEREXAMPLE [{}]{} residual={} flags={} reason={}",
                    evs.join(","),
                    input,
                    ce.outcome.residual.sparse(),
                    ce.outcome.flags,
                    ce.reason
                )
                .unwrap();
            }
        }
        out
    }
}

/// Single-fault outcome record used by the checks below.
struct Entry {
    event: FaultEvent,
    outcome: FaultOutcome,
}

fn enumerate_outcomes(compiled: &Compiled, opts: EnumerationOptions) -> Vec<Entry> {
    compiled
        .enumerate_events(opts)
        .into_iter()
        .map(|event| Entry { event, outcome: compiled.propagate(None, &[event]) })
        .collect()
}

fn counterexample(compiled: &Compiled, e: &Entry, reason: String) -> Counterexample {
    Counterexample {
        events: vec![e.event],
        labels: vec![compiled.labels[e.event.op_index].clone()],
        input: None,
        outcome: e.outcome.clone(),
        reason,
    }
}

/// Distance-three fault-tolerance check for a full error-correction round.
///
/// `family` is the circuit sequence covering every generator. Checks, per
/// sector:
///  * condition A: a single fault that flips no measurement leaves a residual
///    whose X and Z components both have weight at most one, up to
///    multiplication by stabilizers;
///  * condition B: within each nontrivial flip pattern, residuals sharing a
///    code syndrome are stabilizer-equivalent;
///  * input correction: any input error with both sector weights at most one
///    is diagnosed and corrected by the pattern-plus-resyndrome table.
pub fn verify_agp_distance3(
    family: &[&Circuit],
    code: &StabilizerCode,
    sectors: &[FaultSector],
) -> Result<VerdictReport, CircuitError> {
    for c in family {
        c.measured_operators(Some(code))?;
    }
    let rounds: Vec<(&Circuit, Option<Vec<usize>>)> =
        family.iter().map(|c| (*c, None)).collect();
    let compiled = Compiled::from_rounds(&rounds, false, 1);
    Ok(verify_ec_stream(&compiled, code, sectors, "agp_distance3"))
}

/// The same check over an explicit round sequence with inter-round
/// permutations (multi-round schedules).
pub fn verify_protocol(
    rounds: &[(&Circuit, Option<Vec<usize>>)],
    code: &StabilizerCode,
    sectors: &[FaultSector],
) -> Result<VerdictReport, CircuitError> {
    for (c, _) in rounds {
        c.measured_operators(Some(code))?;
    }
    let compiled = Compiled::from_rounds(rounds, false, 1);
    Ok(verify_ec_stream(&compiled, code, sectors, "protocol"))
}

fn verify_ec_stream(
    compiled: &Compiled,
    code: &StabilizerCode,
    sectors: &[FaultSector],
    name: &str,
) -> VerdictReport {
    let mut conditions = Vec::new();
    let mut total_events = 0usize;
    let mut classes = std::collections::HashSet::new();

    for &sector in sectors {
        let opts = EnumerationOptions { sector, idle_faults: false };
        let entries = enumerate_outcomes(compiled, opts);
        total_events += entries.len();

        // condition A
        let mut bad = Vec::new();
        for e in &entries {
            if e.outcome.flags.is_trivial()
                && !code.coset_within_sector_weight(&e.outcome.residual, 1)
            {
                bad.push(counterexample(
                    compiled,
                    e,
                    format!(
                        "undetected residual has sector weight above one (coset weights X={}, Z={})",
                        code.coset_min_weight(&e.outcome.residual, Sector::X),
                        code.coset_min_weight(&e.outcome.residual, Sector::Z)
                    ),
                ));
            }
        }
        conditions.push(ConditionResult {
            name: format!("{}:trivial_flag_weight", sector_name(sector)),
            pass: bad.is_empty(),
            counterexamples: bad,
        });

        // condition B: group by (flags, syndrome)
        let mut groups: BTreeMap<(u64, u64), Vec<&Entry>> = BTreeMap::new();
        for e in &entries {
            if e.outcome.flags.is_trivial() {
                continue;
            }
            let syn = code.syndrome_of(&e.outcome.residual);
            groups.entry((e.outcome.flags.bits(), syn.bits())).or_default().push(e);
            classes.insert((e.outcome.flags.bits(), syn.bits()));
        }
        let mut bad = Vec::new();
        for ((_, _), group) in &groups {
            let first = group[0];
            for other in group.iter().skip(1) {
                if !code.stabilizer_equivalent(&first.outcome.residual, &other.outcome.residual) {
                    bad.push(Counterexample {
                        events: vec![first.event, other.event],
                        labels: vec![
                            compiled.labels[first.event.op_index].clone(),
                            compiled.labels[other.event.op_index].clone(),
                        ],
                        input: None,
                        outcome: other.outcome.clone(),
                        reason: format!(
                            "indistinguishable from residual {} with the same flips and syndrome",
                            first.outcome.residual.sparse()
                        ),
                    });
                }
            }
        }
        conditions.push(ConditionResult {
            name: format!("{}:flagged_distinguishable", sector_name(sector)),
            pass: bad.is_empty(),
            counterexamples: bad,
        });
    }

    // input correction against the full-sector fault table
    let all_entries = enumerate_outcomes(
        compiled,
        EnumerationOptions { sector: FaultSector::All, idle_faults: false },
    );
    let mut keyed: BTreeMap<(u64, u64), &Entry> = BTreeMap::new();
    for e in &all_entries {
        // condition B already vouches for key consistency
        let syn = code.syndrome_of(&e.outcome.residual);
        keyed.entry((e.outcome.flags.bits(), syn.bits())).or_insert(e);
    }
    let mut bad = Vec::new();
    for input in low_weight_inputs(code.n()) {
        let out = compiled.propagate(Some(&input), &[]);
        let syn = code.syndrome_of(&out.residual);
        debug_assert_eq!(out.residual, input, "no-fault run must not alter the input error");
        let correction = match keyed.get(&(out.flags.bits(), syn.bits())) {
            Some(e) => e.outcome.residual,
            None => min_weight_representative(code, &syn),
        };
        let after = input.multiply(&correction);
        if !code.in_stabilizer(&after) {
            bad.push(Counterexample {
                events: vec![],
                labels: vec![],
                input: Some(input),
                outcome: out,
                reason: format!("corrected with {}, leaving a logical fault", correction.sparse()),
            });
        }
    }
    conditions.push(ConditionResult {
        name: "input_correction".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    });

    VerdictReport::from_conditions(
        name,
        conditions,
        VerdictStats { events: total_events, outcome_classes: classes.len() },
    )
}

fn sector_name(s: FaultSector) -> &'static str {
    match s {
        FaultSector::XOnly => "x",
        FaultSector::ZOnly => "z",
        FaultSector::All => "all",
    }
}

/// Errors with X and Z components both of weight at most one.
fn low_weight_inputs(n: usize) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for xq in 0..=n {
        for zq in 0..=n {
            let xs: &[usize] = if xq == 0 { &[] } else { std::slice::from_ref(&xq) };
            let zs: &[usize] = if zq == 0 { &[] } else { std::slice::from_ref(&zq) };
            out.push(PauliOperator::from_support(n, xs, zs));
        }
    }
    out
}

/// Minimum-weight Pauli with the given syndrome.
///
/// CSS codes are decoded per sector: the minimum-weight X component matching
/// the Z-row bits times the minimum-weight Z component matching the X-row
/// bits (this is what corrects an input whose X and Z parts each have weight
/// one). Non-CSS codes fall back to a full-syndrome search. Ties break
/// X-before-Z, then lowest qubit indices.
pub fn min_weight_representative(code: &StabilizerCode, syndrome: &SyndromeVector) -> PauliOperator {
    if syndrome.is_trivial() {
        return PauliOperator::identity(code.n());
    }
    if let Some(split) = code.css_split() {
        let want_x = |p: &PauliOperator| {
            split.z_rows.iter().all(|&r| syndrome.get(r) == !p.commutes(&code.generators()[r]))
        };
        let want_z = |p: &PauliOperator| {
            split.x_rows.iter().all(|&r| syndrome.get(r) == !p.commutes(&code.generators()[r]))
        };
        let xpart = search_component(code.n(), false, &want_x);
        let zpart = search_component(code.n(), true, &want_z);
        return xpart.multiply(&zpart);
    }
    let n = code.n();
    for w in 1..=n {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            // letter order X < Z < Y realizes the documented tie-break
            let mut letters = vec![0u8; w];
            loop {
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
                let p = PauliOperator::from_bits(n, x, z);
                if code.syndrome_of(&p) == *syndrome {
                    return p;
                }
                if !crate::code::advance_odometer(&mut letters, 3) {
                    break;
                }
            }
            if !crate::code::next_combination(&mut support, n) {
                break;
            }
        }
    }
    unreachable!("every syndrome has a representative for a complete generator set")
}

/// Smallest pure-X (or pure-Z) operator satisfying `accept`, lowest indices first.
fn search_component(n: usize, z_sector: bool, accept: &dyn Fn(&PauliOperator) -> bool) -> PauliOperator {
    for w in 0..=n {
        if w == 0 {
            let id = PauliOperator::identity(n);
            if accept(&id) {
                return id;
            }
            continue;
        }
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut bits = 0u64;
            for &q in &support {
                bits |= 1 << q;
            }
            let p = if z_sector {
                PauliOperator::from_bits(n, 0, bits)
            } else {
                PauliOperator::from_bits(n, bits, 0)
            };
            if accept(&p) {
                return p;
            }
            if !crate::code::next_combination(&mut support, n) {
                break;
            }
        }
    }
    unreachable!("component search must terminate for a complete generator set")
}

/// Exact partition of single-fault outcomes by flip pattern; residuals are
/// reduced to canonical coset representatives.
pub fn conditional_error_sets(
    compiled: &Compiled,
    code: &StabilizerCode,
    sector: FaultSector,
) -> BTreeMap<u64, Vec<PauliOperator>> {
    let (full, _) = single_fault_table(compiled, code, EnumerationOptions { sector, idle_faults: false });
    let mut map: BTreeMap<u64, Vec<PauliOperator>> = BTreeMap::new();
    for e in &full {
        let rep = code.coset_representative(&e.outcome.residual, Sector::Full);
        let v = map.entry(e.outcome.flags.bits()).or_default();
        if !v.contains(&rep) {
            v.push(rep);
        }
    }
    for v in map.values_mut() {
        v.sort();
    }
    map
}

/// Union of the residual classes over all patterns where any of `meas_bits`
/// is flipped.
pub fn flagged_class_union(
    sets: &BTreeMap<u64, Vec<PauliOperator>>,
    meas_bits: &[usize],
) -> Vec<PauliOperator> {
    let mask: u64 = meas_bits.iter().map(|&b| 1u64 << b).sum();
    let mut out: Vec<PauliOperator> = Vec::new();
    for (flags, reps) in sets {
        if flags & mask != 0 {
            for r in reps {
                if !out.contains(r) {
                    out.push(*r);
                }
            }
        }
    }
    out.sort();
    out
}

/// Induction-invariant check for two-block zero-ancilla rounds.
///
/// * every single fault in the chosen sector must land (after the round
///   permutation) inside `invariant`, up to stabilizers of `code2`;
/// * the invariant's members must have pairwise distinct syndromes
///   (or be stabilizer-equivalent);
/// * members undetected by the round's measured operators must map back into
///   the invariant under the permutation.
pub fn verify_invariant_closure(
    circuit: &Circuit,
    perm: &[usize],
    invariant: &[PauliOperator],
    code2: &StabilizerCode,
    sector: FaultSector,
) -> Result<VerdictReport, CircuitError> {
    let measured = circuit.measured_operators(Some(code2))?;
    let compiled = Compiled::from_circuit(circuit);
    assert_eq!(compiled.n_data, code2.n());
    let full_perm: Vec<usize> = perm.to_vec();
    let in_invariant = |p: &PauliOperator| invariant.iter().any(|s| code2.stabilizer_equivalent(p, s));

    // (i) fault closure
    let opts = EnumerationOptions { sector, idle_faults: false };
    let entries = enumerate_outcomes(&compiled, opts);
    let events = entries.len();
    let mut bad = Vec::new();
    for e in &entries {
        let image = e.outcome.residual.permute(&full_perm);
        if !in_invariant(&image) {
            bad.push(counterexample(
                &compiled,
                e,
                format!("residual maps to {} outside the invariant set", image.sparse()),
            ));
        }
    }
    let cond_i = ConditionResult {
        name: "fault_closure".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };

    // (ii) distinct syndromes
    let mut bad = Vec::new();
    for (i, a) in invariant.iter().enumerate() {
        for b in invariant.iter().skip(i + 1) {
            if code2.syndrome_of(a) == code2.syndrome_of(b) && !code2.stabilizer_equivalent(a, b) {
                bad.push(Counterexample {
                    events: vec![],
                    labels: vec![],
                    input: Some(*a),
                    outcome: FaultOutcome {
                        residual: *b,
                        flags: SyndromeVector::new(0),
                    },
                    reason: "invariant members share a syndrome".into(),
                });
            }
        }
    }
    let cond_ii = ConditionResult {
        name: "distinct_syndromes".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };

    // (iii) closure of undetected members under the permutation
    let mut bad = Vec::new();
    for m in invariant {
        let detected = measured.iter().any(|op| !m.commutes(op));
        if detected {
            continue;
        }
        let image = m.permute(&full_perm);
        if !in_invariant(&image) {
            bad.push(Counterexample {
                events: vec![],
                labels: vec![],
                input: Some(*m),
                outcome: FaultOutcome { residual: image, flags: SyndromeVector::new(0) },
                reason: "undetected member leaves the invariant set".into(),
            });
        }
    }
    let cond_iii = ConditionResult {
        name: "undetected_closure".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };

    Ok(VerdictReport::from_conditions(
        "invariant_closure",
        vec![cond_i, cond_ii, cond_iii],
        VerdictStats { events, outcome_classes: invariant.len() },
    ))
}

/// Checks the one-extra-qubit syndrome-parity gadget on two code blocks.
///
/// Every single fault in the chosen sector must leave a residual `(P, Q)`
/// such that the product of the block components has a nontrivial block-code
/// syndrome (so some parity measurement reacts) unless both components are
/// already stabilizer-trivial; and residuals must be pairwise distinguishable
/// by the pair of separate block syndromes. Also reports the documented
/// limitation that equal errors on both blocks escape the parity readout.
pub fn verify_parity_gadget(
    circuit: &Circuit,
    block_code: &StabilizerCode,
    code2: &StabilizerCode,
    sector: FaultSector,
) -> Result<VerdictReport, CircuitError> {
    circuit.measured_operators(Some(code2))?;
    let compiled = Compiled::from_circuit(circuit);
    let nb = block_code.n();
    assert_eq!(code2.n(), 2 * nb);

    let opts = EnumerationOptions { sector, idle_faults: false };
    let entries = enumerate_outcomes(&compiled, opts);
    let events = entries.len();

    // every residual pair product is detectable within one block's syndrome
    let mut bad = Vec::new();
    for e in &entries {
        let p = e.outcome.residual.restrict(1, nb);
        let q = e.outcome.residual.restrict(nb + 1, 2 * nb);
        let trivial = block_code.in_stabilizer(&p) && block_code.in_stabilizer(&q);
        if trivial {
            continue;
        }
        let prod = p.multiply(&q);
        if block_code.syndrome_of(&prod).is_trivial() {
            bad.push(counterexample(
                &compiled,
                e,
                format!(
                    "product {} of the block residuals has trivial block syndrome",
                    prod.sparse()
                ),
            ));
        }
    }
    let cond_parity = ConditionResult {
        name: "pair_product_detectable".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };

    // distinguishable by the two separate block syndromes
    let mut seen: BTreeMap<(u64, u64), PauliOperator> = BTreeMap::new();
    let mut bad = Vec::new();
    for e in &entries {
        let p = e.outcome.residual.restrict(1, nb);
        let q = e.outcome.residual.restrict(nb + 1, 2 * nb);
        let key = (block_code.syndrome_of(&p).bits(), block_code.syndrome_of(&q).bits());
        match seen.get(&key) {
            Some(prev) => {
                if !code2.stabilizer_equivalent(prev, &e.outcome.residual) {
                    bad.push(counterexample(
                        &compiled,
                        e,
                        format!("shares both block syndromes with {}", prev.sparse()),
                    ));
                }
            }
            None => {
                seen.insert(key, e.outcome.residual);
            }
        }
    }
    let cond_dist = ConditionResult {
        name: "separate_syndromes_distinguish".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };

    // documented limitation: matching errors on both blocks commute with the
    // parity operator and stay invisible
    let measured = circuit.measured_operators(Some(code2))?;
    let mut undetected_pairs = 0usize;
    for q in 1..=nb {
        let e = PauliOperator::x_on(nb, q)
            .embed(2 * nb, 1)
            .multiply(&PauliOperator::x_on(nb, q).embed(2 * nb, nb + 1));
        if measured.iter().all(|m| e.commutes(m)) {
            undetected_pairs += 1;
        }
    }
    let cond_limit = ConditionResult {
        name: "matched_pairs_undetected(reported)".into(),
        pass: true,
        counterexamples: vec![Counterexample {
            events: vec![],
            labels: vec![],
            input: None,
            outcome: FaultOutcome {
                residual: PauliOperator::identity(2 * nb),
                flags: SyndromeVector::new(0),
            },
            reason: format!(
                "{undetected_pairs} matched single-qubit pairs escape the parity readout"
            ),
        }],
    };

    Ok(VerdictReport::from_conditions(
        "parity_gadget",
        vec![cond_parity, cond_dist, cond_limit],
        VerdictStats { events, outcome_classes: seen.len() },
    ))
}

/// Detection-style check for distance-two codes: no single fault may leave
/// an undetected nontrivial logical error.
pub fn verify_detection(
    family: &[&Circuit],
    code: &StabilizerCode,
    sector: FaultSector,
) -> Result<VerdictReport, CircuitError> {
    for c in family {
        c.measured_operators(Some(code))?;
    }
    let rounds: Vec<(&Circuit, Option<Vec<usize>>)> = family.iter().map(|c| (*c, None)).collect();
    let compiled = Compiled::from_rounds(&rounds, false, 1);
    let opts = EnumerationOptions { sector, idle_faults: false };
    let entries = enumerate_outcomes(&compiled, opts);
    let events = entries.len();
    let mut bad = Vec::new();
    for e in &entries {
        if e.outcome.flags.is_trivial()
            && code.syndrome_of(&e.outcome.residual).is_trivial()
            && !code.in_stabilizer(&e.outcome.residual)
        {
            bad.push(counterexample(&compiled, e, "undetectable logical error".into()));
        }
    }
    let cond = ConditionResult {
        name: "no_undetected_logical".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };
    Ok(VerdictReport::from_conditions(
        "detection",
        vec![cond],
        VerdictStats { events, outcome_classes: 0 },
    ))
}

/// Order-two exhaustive check: every pair of faults is either detected or
/// leaves both sector weights at most two (up to stabilizers). Uses frame
/// linearity to compose the precomputed single-fault outcomes.
pub fn verify_order2(
    family: &[&Circuit],
    code: &StabilizerCode,
    sector: FaultSector,
) -> Result<VerdictReport, CircuitError> {
    let rounds: Vec<(&Circuit, Option<Vec<usize>>)> = family.iter().map(|c| (*c, None)).collect();
    let compiled = Compiled::from_rounds(&rounds, false, 1);
    let opts = EnumerationOptions { sector, idle_faults: false };
    let entries = enumerate_outcomes(&compiled, opts);
    let mut bad = Vec::new();
    let mut pairs = 0usize;
    for (i, a) in entries.iter().enumerate() {
        for b in entries.iter().skip(i + 1) {
            if a.event.op_index == b.event.op_index {
                continue; // same-location products are single faults again
            }
            pairs += 1;
            let flags = a.outcome.flags.xor(&b.outcome.flags);
            if !flags.is_trivial() {
                continue;
            }
            let residual = a.outcome.residual.multiply(&b.outcome.residual);
            if !code.coset_within_sector_weight(&residual, 2) {
                bad.push(Counterexample {
                    events: vec![a.event, b.event],
                    labels: vec![
                        compiled.labels[a.event.op_index].clone(),
                        compiled.labels[b.event.op_index].clone(),
                    ],
                    input: None,
                    outcome: FaultOutcome { residual, flags },
                    reason: "undetected pair exceeds sector weight two".into(),
                });
                if bad.len() > 16 {
                    break;
                }
            }
        }
    }
    let cond = ConditionResult {
        name: "order2_detect_or_weight2".into(),
        pass: bad.is_empty(),
        counterexamples: bad,
    };
    Ok(VerdictReport::from_conditions(
        "order2",
        vec![cond],
        VerdictStats { events: pairs, outcome_classes: 0 },
    ))
}
