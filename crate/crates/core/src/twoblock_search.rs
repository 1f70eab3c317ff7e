//! Randomized search for valid two-block rounds.
//!
//! Candidates combine an in-tree collect/respread skeleton per block with a
//! set of inter-block catch CNOTs at arbitrary slots. Scoring counts
//! single-fault closure violations in both sectors; zero is a valid round.

use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::code::StabilizerCode;
use crate::fault::{Compiled, EnumerationOptions, FaultSector};
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub block_n: usize,
    /// Stabilizer support; first entry is the readout qubit.
    pub support: Vec<usize>,
    /// parent of support[i+1] in block 1's collect tree.
    pub parent1: Vec<usize>,
    /// parent of support[i+1] in block 2's spread tree.
    pub parent2: Vec<usize>,
    /// collect edge order per block (indices 1..support.len()).
    pub co1: Vec<usize>,
    pub co2: Vec<usize>,
    pub ro1: Vec<usize>,
    pub ro2: Vec<usize>,
    /// catch gates: (qubit, from_block1, slot)
    pub blacks: Vec<(usize, bool, usize)>,
}

impl Candidate {
    pub fn n_base_ticks(&self) -> usize {
        2 * (self.support.len() - 1) + 2
    }

    pub fn n_slots(&self) -> usize {
        self.n_base_ticks() + 1
    }

    pub fn build(&self, name: &str) -> Result<Circuit, crate::circuit::CircuitError> {
        let w = self.support.len() - 1;
        let root = self.support[0];
        let b2 = |q: usize| q + self.block_n;
        let mut base: Vec<Vec<String>> = Vec::new();
        for i in 0..w {
            let mut tick = Vec::new();
            let e1 = self.co1[i];
            let child = self.support[e1];
            let par = self.parent1[e1 - 1];
            tick.push(format!("cnot d{child} d{par}"));
            let e2 = self.co2[i];
            let child2 = self.support[e2];
            let par2 = self.parent2[e2 - 1];
            tick.push(format!("cnot d{} d{}", b2(par2), b2(child2)));
            base.push(tick);
        }
        let zexp: String =
            self.support.iter().map(|q| format!("Z{q}")).collect::<Vec<_>>().join(" ");
        let xexp: String =
            self.support.iter().map(|q| format!("X{}", b2(*q))).collect::<Vec<_>>().join(" ");
        base.push(vec![
            format!("meas z d{root} expects {zexp}"),
            format!("meas x d{} expects {xexp}", b2(root)),
        ]);
        base.push(vec![format!("prep z d{root}"), format!("prep x d{}", b2(root))]);
        for i in 0..w {
            let mut tick = Vec::new();
            let e1 = self.ro1[i];
            let child = self.support[e1];
            let par = self.parent1[e1 - 1];
            tick.push(format!("cnot d{child} d{par}"));
            let e2 = self.ro2[i];
            let child2 = self.support[e2];
            let par2 = self.parent2[e2 - 1];
            tick.push(format!("cnot d{} d{}", b2(par2), b2(child2)));
            base.push(tick);
        }
        let mut ticks: Vec<Vec<String>> = Vec::new();
        for slot in 0..=base.len() {
            for &(q, from1, s) in &self.blacks {
                if s == slot {
                    let line = if from1 {
                        format!("cnot d{q} d{}", b2(q))
                    } else {
                        format!("cnot d{} d{q}", b2(q))
                    };
                    ticks.push(vec![line]);
                }
            }
            if slot < base.len() {
                ticks.push(base[slot].clone());
            }
        }
        let text: String =
            ticks.iter().map(|t| t.join("\n")).collect::<Vec<_>>().join("\ntick\n");
        Ok(Circuit::parse(name, &text)?.with_data_count(2 * self.block_n))
    }
}

pub struct SearchTarget<'a> {
    pub code2: &'a StabilizerCode,
    pub perm: Vec<usize>,
    pub inv_x: Vec<PauliOperator>,
    pub inv_z: Vec<PauliOperator>,
}

pub fn score(cand: &Candidate, t: &SearchTarget) -> usize {
    let Ok(circuit) = cand.build("cand") else {
        return 100_000;
    };
    if circuit.measured_operators(Some(t.code2)).is_err() {
        return 100_000;
    }
    let compiled = Compiled::from_circuit(&circuit);
    let mut bad = 0usize;
    for (sector, inv) in [(FaultSector::XOnly, &t.inv_x), (FaultSector::ZOnly, &t.inv_z)] {
        let events = compiled.enumerate_events(EnumerationOptions { sector, idle_faults: false });
        for ev in events {
            let out = compiled.propagate(None, &[ev]);
            let image = out.residual.permute(&t.perm);
            if !inv.iter().any(|s| t.code2.stabilizer_equivalent(&image, s)) {
                bad += 1;
            }
        }
    }
    bad
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn legal_trees(support: &[usize]) -> Vec<Vec<usize>> {
    // parent vectors over the non-root support qubits, acyclic toward root
    let w = support.len() - 1;
    let root = support[0];
    let mut out = Vec::new();
    let mut idx = vec![0usize; w];
    loop {
        let parent: Vec<usize> = idx
            .iter()
            .enumerate()
            .map(|(i, &pi)| {
                let choices: Vec<usize> =
                    support.iter().copied().filter(|&q| q != support[i + 1]).collect();
                choices[pi % choices.len()]
            })
            .collect();
        let ok = (0..w).all(|i| {
            let mut cur = support[i + 1];
            for _ in 0..=w {
                if cur == root {
                    return true;
                }
                let pos = support.iter().position(|&q| q == cur).unwrap();
                if pos == 0 {
                    return true;
                }
                cur = parent[pos - 1];
            }
            false
        });
        if ok && !out.contains(&parent) {
            out.push(parent);
        }
        let mut i = 0;
        loop {
            if i == w {
                return out;
            }
            idx[i] += 1;
            if idx[i] < w {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn legal_collect_orders(support: &[usize], parent: &[usize]) -> Vec<Vec<usize>> {
    // an edge must precede its parent's edge (deep first)
    let w = support.len() - 1;
    let perms = permutations(w);
    perms
        .into_iter()
        .filter(|ord| {
            for (i, &e) in ord.iter().enumerate() {
                let par = parent[e - 1];
                if par != support[0] {
                    let pidx = ord
                        .iter()
                        .position(|&x| support[x] == par)
                        .expect("parent edge exists");
                    if pidx < i {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

fn legal_respread_orders(support: &[usize], parent: &[usize]) -> Vec<Vec<usize>> {
    let w = support.len() - 1;
    let perms = permutations(w);
    perms
        .into_iter()
        .filter(|ord| {
            for (i, &e) in ord.iter().enumerate() {
                let par = parent[e - 1];
                if par != support[0] {
                    let pidx = ord
                        .iter()
                        .position(|&x| support[x] == par)
                        .expect("parent edge exists");
                    if pidx > i {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

fn permutations(w: usize) -> Vec<Vec<usize>> {
    if w == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    for sub in permutations(w - 1) {
        for pos in 0..=sub.len() {
            let mut v = sub.clone();
            v.insert(pos, w);
            out.push(v);
        }
    }
    out
}

/// Multi-restart hill-climbing search; returns the best candidate found and
/// its score (zero means valid).
pub fn search(
    block_n: usize,
    support: &[usize],
    target: &SearchTarget,
    restarts: usize,
    steps: usize,
    seed: u64,
) -> (usize, Candidate) {
    let trees = legal_trees(support);
    let results: Vec<(usize, Candidate)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = Rng(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(r as u64 + 1)));
            let mut cand = random_candidate(block_n, support, &trees, &mut rng);
            let mut best = score(&cand, target);
            let mut stall = 0usize;
            for _ in 0..steps {
                if best == 0 {
                    break;
                }
                let mut next = cand.clone();
                mutate(&mut next, &trees, &mut rng);
                // occasionally take a double move to escape plateaus
                if rng.below(4) == 0 {
                    mutate(&mut next, &trees, &mut rng);
                }
                let s = score(&next, target);
                if s <= best {
                    if s < best {
                        stall = 0;
                    }
                    best = s;
                    cand = next;
                } else {
                    stall += 1;
                    if stall > 2500 {
                        // restart within the budget
                        cand = random_candidate(block_n, support, &trees, &mut rng);
                        best = score(&cand, target);
                        stall = 0;
                    }
                }
            }
            (best, cand)
        })
        .collect();
    results.into_iter().min_by_key(|(s, _)| *s).unwrap()
}

fn random_candidate(
    block_n: usize,
    support: &[usize],
    trees: &[Vec<usize>],
    rng: &mut Rng,
) -> Candidate {
    let p1 = trees[rng.below(trees.len())].clone();
    let p2 = trees[rng.below(trees.len())].clone();
    let co1s = legal_collect_orders(support, &p1);
    let ro1s = legal_respread_orders(support, &p1);
    let co2s = legal_collect_orders(support, &p2);
    let ro2s = legal_respread_orders(support, &p2);
    let mut cand = Candidate {
        block_n,
        support: support.to_vec(),
        parent1: p1,
        parent2: p2,
        co1: co1s[rng.below(co1s.len())].clone(),
        co2: co2s[rng.below(co2s.len())].clone(),
        ro1: ro1s[rng.below(ro1s.len())].clone(),
        ro2: ro2s[rng.below(ro2s.len())].clone(),
        blacks: Vec::new(),
    };
    let n_black = 6 + rng.below(5);
    let n_slots = cand.n_slots();
    for _ in 0..n_black {
        cand.blacks.push((
            support[rng.below(support.len())],
            rng.next() & 1 == 0,
            rng.below(n_slots),
        ));
    }
    cand
}

fn mutate(cand: &mut Candidate, trees: &[Vec<usize>], rng: &mut Rng) {
    let n_slots = cand.n_slots();
    match rng.below(10) {
        0 => {
            // reshape a block
            let which = rng.next() & 1 == 0;
            let p = trees[rng.below(trees.len())].clone();
            let cos = legal_collect_orders(&cand.support, &p);
            let ros = legal_respread_orders(&cand.support, &p);
            if which {
                cand.parent1 = p;
                cand.co1 = cos[rng.below(cos.len())].clone();
                cand.ro1 = ros[rng.below(ros.len())].clone();
            } else {
                cand.parent2 = p;
                cand.co2 = cos[rng.below(cos.len())].clone();
                cand.ro2 = ros[rng.below(ros.len())].clone();
            }
        }
        1 => {
            let cos = legal_collect_orders(&cand.support, &cand.parent1);
            cand.co1 = cos[rng.below(cos.len())].clone();
        }
        2 => {
            let ros = legal_respread_orders(&cand.support, &cand.parent1);
            cand.ro1 = ros[rng.below(ros.len())].clone();
        }
        3 => {
            let cos = legal_collect_orders(&cand.support, &cand.parent2);
            cand.co2 = cos[rng.below(cos.len())].clone();
        }
        4 => {
            let ros = legal_respread_orders(&cand.support, &cand.parent2);
            cand.ro2 = ros[rng.below(ros.len())].clone();
        }
        5 if cand.blacks.len() < 12 => {
            cand.blacks.push((
                cand.support[rng.below(cand.support.len())],
                rng.next() & 1 == 0,
                rng.below(n_slots),
            ));
        }
        6 if !cand.blacks.is_empty() => {
            let i = rng.below(cand.blacks.len());
            cand.blacks.remove(i);
        }
        _ if !cand.blacks.is_empty() => {
            let i = rng.below(cand.blacks.len());
            match rng.below(3) {
                0 => cand.blacks[i].2 = rng.below(n_slots),
                1 => cand.blacks[i].1 = !cand.blacks[i].1,
                _ => cand.blacks[i].0 = cand.support[rng.below(cand.support.len())],
            }
        }
        _ => {}
    }
}
