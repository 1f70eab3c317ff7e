use qecw_core::catalog;
use qecw_core::fault::{Compiled, EnumerationOptions, FaultSector};
use qecw_core::twoblock::*;

fn main() {
    let code2 = catalog::steane7x2();
    let perm = swap_rotate_perm(7, &steane_rotation);
    let inv_x = steane_invariant_x();
    let inv_z = mirror_invariant(&inv_x, 7);
    let spec = TwoBlockSpec {
        block_n: 7,
        support: vec![4, 5, 6, 7],
        parent: vec![4, 4, 4],
        collect_order: vec![1, 3, 2],
        respread_order: vec![1, 2, 3],
        blacks: vec![
            (5, true, 0, 8),
            (6, true, 0, 7),
            (7, true, 1, 8),
            (4, false, 3, 8),
            (4, false, 0, 5),
        ],
    };
    let circuit = spec.build("dbg");
    let compiled = Compiled::from_circuit(&circuit);
    for (sector, inv, tag) in
        [(FaultSector::XOnly, &inv_x, "X"), (FaultSector::ZOnly, &inv_z, "Z")]
    {
        let events = compiled.enumerate_events(EnumerationOptions { sector, idle_faults: false });
        for ev in events {
            let out = compiled.propagate(None, &[ev]);
            let image = out.residual.permute(&perm);
            if !inv.iter().any(|s| code2.stabilizer_equivalent(&image, s)) {
                println!(
                    "{tag} viol: {} {} -> residual {} image {}",
                    compiled.labels[ev.op_index],
                    ev.payload.label(),
                    out.residual.sparse(),
                    image.sparse()
                );
            }
        }
    }
}
