//! Verification of the reconstructed syndrome-extraction circuits against
//! their published fault sets.

use qecw_core::catalog;
use qecw_core::circuit::Basis;
use qecw_core::fault::{Compiled, FaultSector};
use qecw_core::gadgets;
use qecw_core::pauli::PauliOperator;
use qecw_core::verify;

fn p7(s: &str) -> PauliOperator {
    PauliOperator::parse(7, s).unwrap()
}

/// Compare a computed class (canonical coset representatives) against the
/// expected residuals, as cosets.
fn assert_same_cosets(
    code: &qecw_core::StabilizerCode,
    got: &[PauliOperator],
    expected: &[PauliOperator],
) {
    for e in expected {
        assert!(
            got.iter().any(|g| code.stabilizer_equivalent(g, e)),
            "expected residual {} missing from {:?}",
            e.sparse(),
            got.iter().map(|g| g.sparse()).collect::<Vec<_>>()
        );
    }
    for g in got {
        assert!(
            expected.iter().any(|e| code.stabilizer_equivalent(g, e)),
            "unexpected residual {} (expected one of {:?})",
            g.sparse(),
            expected.iter().map(|e| e.sparse()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn unflagged_gadget_fails_with_the_weight_two_counterexample() {
    let code = catalog::steane7();
    let family = gadgets::unflagged_family(&code);
    let refs: Vec<&_> = family.iter().collect();
    let report =
        verify::verify_agp_distance3(&refs, &code, &[FaultSector::XOnly, FaultSector::ZOnly])
            .unwrap();
    assert!(!report.pass);
    // some failing counterexample involves the Z6 Z7 residual (replay each
    // recorded event to inspect both sides of indistinguishable pairs)
    let rounds: Vec<(&qecw_core::circuit::Circuit, Option<Vec<usize>>)> =
        refs.iter().map(|c| (*c, None)).collect();
    let compiled = Compiled::from_rounds(&rounds, false, 1);
    let z67 = p7("Z6 Z7");
    let found = report
        .conditions
        .iter()
        .filter(|c| !c.pass)
        .flat_map(|c| &c.counterexamples)
        .flat_map(|ce| ce.events.iter())
        .any(|ev| {
            let out = compiled.propagate(None, &[*ev]);
            code.stabilizer_equivalent(&out.residual, &z67)
        });
    assert!(found, "expected a Z6 Z7 counterexample:\n{}", report.render());
}

#[test]
fn flagged_family_passes() {
    let code = catalog::steane7();
    let family = gadgets::flagged_family(&code);
    let refs: Vec<&_> = family.iter().collect();
    let report =
        verify::verify_agp_distance3(&refs, &code, &[FaultSector::XOnly, FaultSector::ZOnly])
            .unwrap();
    assert!(report.pass, "{}", report.render());
}

#[test]
fn mutual_pair_measures_and_reproduces_the_printed_sets() {
    let code = catalog::steane7();
    let c = gadgets::mutual_pair("eq1", &[4, 5, 6, 7], &[2, 3, 6, 7]).with_data_count(7);
    let ops = c.measured_operators(Some(&code)).unwrap();
    assert_eq!(ops[0], p7("X4 X5 X6 X7"));
    assert_eq!(ops[1], p7("Z2 Z3 Z6 Z7"));

    let compiled = Compiled::from_circuit(&c);
    // X faults that flip the Z readout (measurement bit 1)
    let sets = verify::conditional_error_sets(&compiled, &code, FaultSector::XOnly);
    let flagged = verify::flagged_class_union(&sets, &[1]);
    let expected: Vec<_> =
        ["I", "X2", "X3", "X5", "X6", "X7", "X4 X5"].iter().map(|s| p7(s)).collect();
    assert_same_cosets(&code, &flagged, &expected);

    // Z faults that flip the X readout (measurement bit 0)
    let sets = verify::conditional_error_sets(&compiled, &code, FaultSector::ZOnly);
    let flagged = verify::flagged_class_union(&sets, &[0]);
    let expected: Vec<_> =
        ["I", "Z2", "Z4", "Z5", "Z6", "Z7", "Z6 Z7"].iter().map(|s| p7(s)).collect();
    assert_same_cosets(&code, &flagged, &expected);
}

#[test]
fn mutual_pair_family_passes() {
    let code = catalog::steane7();
    // three pairings covering all six rows
    let c1 = gadgets::mutual_pair("pair_bg", &[4, 5, 6, 7], &[2, 3, 6, 7]).with_data_count(7);
    let c2 = gadgets::mutual_pair("pair_gr", &[2, 3, 6, 7], &[1, 3, 5, 7]).with_data_count(7);
    let c3 = gadgets::mutual_pair("pair_rb", &[1, 3, 5, 7], &[4, 5, 6, 7]).with_data_count(7);
    let report = verify::verify_agp_distance3(
        &[&c1, &c2, &c3],
        &code,
        &[FaultSector::XOnly, FaultSector::ZOnly],
    )
    .unwrap();
    assert!(report.pass, "{}", report.render());
}

#[test]
fn parallel3_measures_and_has_the_stated_profile() {
    let code = catalog::steane7();
    let c = gadgets::parallel3();
    let ops = c.measured_operators(Some(&code)).unwrap();
    assert_eq!(ops[0], p7("X1 X3 X5 X7"));
    assert_eq!(ops[1], p7("Z4 Z5 Z6 Z7"));
    assert_eq!(ops[2], p7("Z2 Z3 Z6 Z7"));
    assert_eq!(c.round_profile(), (1, 6, 1));
    assert_eq!(c.cnot_count(), 14);
}

#[test]
fn parallel3_z_fault_class_matches_the_printed_set() {
    let code = catalog::steane7();
    let c = gadgets::parallel3();
    let compiled = Compiled::from_circuit(&c);
    let sets = verify::conditional_error_sets(&compiled, &code, FaultSector::ZOnly);
    // Z faults that flip the X readout (bit 0)
    let flagged = verify::flagged_class_union(&sets, &[0]);
    let expected: Vec<_> = ["I", "Z1", "Z4 Z6", "Z3", "Z3 Z7", "Z5", "Z6", "Z7"]
        .iter()
        .map(|s| p7(s))
        .collect();
    assert_same_cosets(&code, &flagged, &expected);
}

#[test]
fn parallel3_x4_and_x37_live_in_different_flag_classes() {
    let code = catalog::steane7();
    let c = gadgets::parallel3();
    let compiled = Compiled::from_circuit(&c);
    let sets = verify::conditional_error_sets(&compiled, &code, FaultSector::XOnly);
    let x4 = p7("X4");
    let x37 = p7("X3 X7");
    let mut class_of_x4 = Vec::new();
    let mut class_of_x37 = Vec::new();
    for (flags, reps) in &sets {
        for r in reps {
            if code.stabilizer_equivalent(r, &x4) {
                class_of_x4.push(*flags);
            }
            if code.stabilizer_equivalent(r, &x37) {
                class_of_x37.push(*flags);
            }
        }
    }
    // X4 occurs flagged only with the first Z readout flipped (bit 1);
    // the X3 X7 class only with both Z readouts flipped (bits 1 and 2)
    assert!(class_of_x4.contains(&0b010), "{class_of_x4:?}");
    assert!(class_of_x37.contains(&0b110), "{class_of_x37:?}");
    for f in &class_of_x4 {
        assert!(*f == 0 || *f == 0b010, "X4 class seen with flags {f:#05b}");
    }
    for f in &class_of_x37 {
        assert_eq!(*f, 0b110, "X3 X7 class seen with flags {f:#05b}");
    }
}

#[test]
fn parallel3_family_passes() {
    let code = catalog::steane7();
    let c1 = gadgets::parallel3();
    let c2 = gadgets::parallel3_partner();
    let report =
        verify::verify_agp_distance3(&[&c1, &c2], &code, &[FaultSector::XOnly, FaultSector::ZOnly])
            .unwrap();
    assert!(report.pass, "{}", report.render());
}

#[test]
fn dual_pair_verifies_on_the_plaquette() {
    let code = catalog::steane7();
    let c = gadgets::dual_pair("dual", &[4, 5, 6, 7]).with_data_count(7);
    let ops = c.measured_operators(Some(&code)).unwrap();
    assert_eq!(ops[0], p7("X4 X5 X6 X7"));
    assert_eq!(ops[1], p7("Z4 Z5 Z6 Z7"));
}

#[test]
fn four_two_two_pair_detects_every_single_fault() {
    let code = catalog::color422();
    let c = gadgets::dual_pair("c422", &[1, 3, 2, 4]).with_data_count(4);
    let ops = c.measured_operators(Some(&code)).unwrap();
    assert_eq!(ops.len(), 2);
    let report = verify::verify_detection(&[&c], &code, FaultSector::All).unwrap();
    assert!(report.pass, "{}", report.render());
}

#[test]
fn four_two_two_star_fault_is_caught_by_the_other_readout() {
    // the marked fault: a Z on the Z-readout spreading to the logical pair,
    // caught by the X readout
    let code = catalog::color422();
    let c = gadgets::dual_pair("c422", &[1, 3, 2, 4]).with_data_count(4);
    let compiled = Compiled::from_circuit(&c);
    let sets = verify::conditional_error_sets(&compiled, &code, FaultSector::ZOnly);
    let z24 = PauliOperator::parse(4, "Z2 Z4").unwrap();
    let flagged = verify::flagged_class_union(&sets, &[0]);
    assert!(
        flagged.iter().any(|r| code.stabilizer_equivalent(r, &z24)),
        "Z2 Z4 not caught by the X readout: {flagged:?}"
    );
}

#[test]
fn parity_gadget_counts_and_verifies() {
    let steane = catalog::steane7();
    let two = catalog::steane7x2();
    let c = gadgets::parity_gadget(7, &[4, 5, 6, 7]);
    assert_eq!(c.cnot_count(), 8);
    let ops = c.measured_operators(Some(&two)).unwrap();
    assert_eq!(ops[0], PauliOperator::parse(14, "Z4 Z5 Z6 Z7 Z11 Z12 Z13 Z14").unwrap());
    let report = verify::verify_parity_gadget(&c, &steane, &two, FaultSector::ZOnly).unwrap();
    assert!(report.pass, "{}", report.render());
}

#[test]
fn parity_gadget_residual_table() {
    // expected single-Z-fault residual pairs beyond single-qubit errors
    let two = catalog::steane7x2();
    let c = gadgets::parity_gadget(7, &[4, 5, 6, 7]);
    let compiled = Compiled::from_circuit(&c);
    let sets = verify::conditional_error_sets(&compiled, &two, FaultSector::ZOnly);
    let all: Vec<PauliOperator> = sets.values().flatten().copied().collect();
    let expect = |s: &str| PauliOperator::parse(14, s).unwrap();
    let table = [
        expect("Z7 Z11"),          // (Z7, Z4)
        expect("Z7 Z11 Z13"),      // (Z7, Z4 Z6)
        expect("Z6 Z7 Z11 Z13"),   // (Z6 Z7, Z4 Z6)
        expect("Z6 Z7 Z14"),       // (Z6 Z7, Z7)
        expect("Z4 Z14"),          // (Z4, Z7)
    ];
    for t in &table {
        assert!(
            all.iter().any(|r| two.stabilizer_equivalent(r, t)),
            "missing residual pair {}",
            t.sparse()
        );
    }
    // nothing outside single-qubit errors and the table may appear
    for r in &all {
        let ok = r.is_identity()
            || r.weight(qecw_core::Sector::Full) == 1
            || table.iter().any(|t| two.stabilizer_equivalent(r, t));
        assert!(ok, "unexpected residual {}", r.sparse());
    }
}

#[test]
fn counterexamples_replay_exactly() {
    let code = catalog::steane7();
    let family = gadgets::unflagged_family(&code);
    let refs: Vec<&_> = family.iter().collect();
    let report =
        verify::verify_agp_distance3(&refs, &code, &[FaultSector::ZOnly]).unwrap();
    let rounds: Vec<(&qecw_core::circuit::Circuit, Option<Vec<usize>>)> =
        refs.iter().map(|c| (*c, None)).collect();
    let compiled = Compiled::from_rounds(&rounds, false, 1);
    for cond in &report.conditions {
        for ce in &cond.counterexamples {
            if ce.events.len() == 1 {
                let replay = compiled.propagate(None, &ce.events);
                assert_eq!(replay, ce.outcome);
            }
        }
    }
}
