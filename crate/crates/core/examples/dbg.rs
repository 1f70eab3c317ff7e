use qecw_core::*;
use qecw_core::fault::*;
use qecw_core::gadgets;

fn main() {
    let code = catalog::steane7();
    let family = gadgets::flagged_family(&code);
    let rounds: Vec<(&circuit::Circuit, Option<Vec<usize>>)> =
        family.iter().map(|c| (c, None)).collect();
    let compiled = Compiled::from_rounds(&rounds, false, 1);
    let input = PauliOperator::parse(7, "X1 Z3").unwrap();
    let out = compiled.propagate(Some(&input), &[]);
    let syn = code.syndrome_of(&out.residual);
    println!("input flags={} syn={}", out.flags, syn);
    let events = compiled.enumerate_events(EnumerationOptions { sector: FaultSector::All, idle_faults: false });
    for ev in events {
        let o = compiled.propagate(None, &[ev]);
        if o.flags == out.flags && code.syndrome_of(&o.residual) == syn {
            println!("match: {} payload {} -> residual {} ~input? {}",
                compiled.labels[ev.op_index], ev.payload.label(), o.residual.sparse(),
                code.stabilizer_equivalent(&o.residual, &input));
        }
    }
}
