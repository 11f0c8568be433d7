//! Brute-force enumeration of all automorphisms of a small finite group by
//! backtracking over generator images. The group is first tabulated so every
//! product is an array lookup; candidates are pruned by element order, by
//! closure consistency on the subgroup generated so far (every rediscovery
//! of an element is a relation check), and by injectivity.

use super::FiniteGroup;
use crate::error::{Error, Result};

pub const DEFAULT_AUT_ENUM_LIMIT: usize = 200;

/// Fully tabulated copy of a small group.
struct TableGroup {
    n: usize,
    table: Vec<u32>,
    id: usize,
    gens: Vec<usize>,
}

impl TableGroup {
    fn build<G: FiniteGroup + ?Sized>(group: &G) -> Self {
        let n = group.order();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = group.mul(a, b) as u32;
            }
        }
        TableGroup { n, table, id: group.identity(), gens: group.generators() }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        let mut ord = 1;
        while acc != self.id {
            acc = self.mul(acc, x);
            ord += 1;
        }
        ord
    }
}

#[derive(Clone, Copy)]
enum Step {
    /// y newly reached as x * gens[slot]
    New { y: usize, x: usize, slot: usize },
    /// y reached again as x * gens[slot]: a relation the image must satisfy
    Check { y: usize, x: usize, slot: usize },
}

struct ClosureProgram {
    size: usize,
    steps: Vec<Step>,
}

fn closure_program(group: &TableGroup, gens: &[usize]) -> ClosureProgram {
    let n = group.n;
    let mut in_set = vec![false; n];
    in_set[group.id] = true;
    let mut members = vec![group.id];
    let mut steps = Vec::new();
    let mut frontier = 0;
    while frontier < members.len() {
        let x = members[frontier];
        frontier += 1;
        for (slot, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            if in_set[y] {
                steps.push(Step::Check { y, x, slot });
            } else {
                in_set[y] = true;
                members.push(y);
                steps.push(Step::New { y, x, slot });
            }
        }
    }
    ClosureProgram { size: members.len(), steps }
}

/// Replay a closure program against candidate generator images, building the
/// partial map; fails on a relation inconsistency or an injectivity
/// violation. `map` and `hit` are scratch buffers reset via the epoch trick.
struct Scratch {
    map: Vec<usize>,
    map_epoch: Vec<u32>,
    hit_epoch: Vec<u32>,
    epoch: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { map: vec![0; n], map_epoch: vec![0; n], hit_epoch: vec![0; n], epoch: 0 }
    }
}

fn replay(
    group: &TableGroup,
    program: &ClosureProgram,
    images: &[usize],
    scratch: &mut Scratch,
) -> bool {
    scratch.epoch += 1;
    let e = scratch.epoch;
    scratch.map[group.id] = group.id;
    scratch.map_epoch[group.id] = e;
    scratch.hit_epoch[group.id] = e;
    for step in &program.steps {
        match *step {
            Step::New { y, x, slot } => {
                let img = group.mul(scratch.map[x], images[slot]);
                if scratch.hit_epoch[img] == e {
                    return false; // not injective on the subgroup
                }
                scratch.map[y] = img;
                scratch.map_epoch[y] = e;
                scratch.hit_epoch[img] = e;
            }
            Step::Check { y, x, slot } => {
                let img = group.mul(scratch.map[x], images[slot]);
                if scratch.map[y] != img {
                    return false; // relation violated
                }
            }
        }
    }
    true
}

fn extract_map(group: &TableGroup, program: &ClosureProgram, images: &[usize]) -> Vec<usize> {
    let mut map = vec![usize::MAX; group.n];
    map[group.id] = group.id;
    for step in &program.steps {
        if let Step::New { y, x, slot } = *step {
            map[y] = group.mul(map[x], images[slot]);
        }
    }
    map
}

/// All automorphisms of a small finite group as permutation tables, sorted
/// lexicographically. Errors with `TooLarge` above the limit.
pub fn enumerate_automorphisms_small<G: FiniteGroup + ?Sized>(
    group: &G,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = group.order();
    if n > limit {
        return Err(Error::TooLarge(n as u128, limit as u128));
    }
    let tg = TableGroup::build(group);

    // greedy irredundant generator sequence
    let mut gens: Vec<usize> = Vec::new();
    let mut covered = 1usize;
    for g in tg.gens.clone() {
        let trial: Vec<usize> = gens.iter().copied().chain([g]).collect();
        let size = closure_program(&tg, &trial).size;
        if size > covered {
            gens.push(g);
            covered = size;
        }
        if covered == n {
            break;
        }
    }
    if covered != n {
        return Err(Error::NotAnAutomorphism("declared generators do not generate".into()));
    }

    let orders: Vec<usize> = (0..n).map(|x| tg.order_of(x)).collect();
    let programs: Vec<ClosureProgram> =
        (1..=gens.len()).map(|k| closure_program(&tg, &gens[..k])).collect();
    let pools: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&x| orders[x] == orders[g]).collect())
        .collect();

    let mut scratch = Scratch::new(n);
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut images = vec![0usize; gens.len()];
    search(&tg, &gens, &programs, &pools, 0, &mut images, &mut scratch, &mut tables);
    tables.sort_unstable();
    Ok(tables)
}

#[allow(clippy::too_many_arguments)]
fn search(
    group: &TableGroup,
    gens: &[usize],
    programs: &[ClosureProgram],
    pools: &[Vec<usize>],
    level: usize,
    images: &mut Vec<usize>,
    scratch: &mut Scratch,
    tables: &mut Vec<Vec<usize>>,
) {
    if level == gens.len() {
        let map = extract_map(group, &programs[gens.len() - 1], images);
        if is_full_automorphism(group, gens, &map) {
            tables.push(map);
        }
        return;
    }
    for k in 0..pools[level].len() {
        images[level] = pools[level][k];
        if replay(group, &programs[level], &images[..=level], scratch) {
            search(group, gens, programs, pools, level + 1, images, scratch, tables);
        }
    }
}

fn is_full_automorphism(group: &TableGroup, gens: &[usize], map: &[usize]) -> bool {
    let n = group.n;
    let mut seen = vec![false; n];
    for &m in map {
        if m == usize::MAX || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for &g in gens {
        for x in 0..n {
            if map[group.mul(g, x)] != group.mul(map[g], map[x]) {
                return false;
            }
        }
    }
    true
}

/// Compose permutation tables: (f . g)(x) = f(g(x)).
pub fn compose_tables(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn invert_table(f: &[usize]) -> Vec<usize> {
    let mut out = vec![0; f.len()];
    for (x, &y) in f.iter().enumerate() {
        out[y] = x;
    }
    out
}
