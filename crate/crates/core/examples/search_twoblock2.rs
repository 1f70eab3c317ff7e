use qecw_core::catalog;
use qecw_core::twoblock::*;
use qecw_core::twoblock_search::*;

fn main() {
    let code2 = catalog::steane7x2();
    let target = SearchTarget {
        code2: &code2,
        perm: swap_rotate_perm(7, &steane_rotation),
        inv_x: steane_invariant_x(),
        inv_z: mirror_invariant(&steane_invariant_x(), 7),
    };
    for round in 0..60 {
        let seed = 0x5eed5eedu64 + round * 7919;
        let (s, c) = search(7, &[4, 5, 6, 7], &target, 96, 12000, seed);
        println!("round {round}: best {s}");
        if s == 0 {
            println!("FOUND:");
            println!("{c:?}");
            println!("{}", c.build("twoblock").unwrap().render());
            return;
        }
    }
}
