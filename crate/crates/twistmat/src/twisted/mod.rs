//! Twisted conjugation g ~ x g phi(x)^{-1}, Reidemeister class enumeration
//! on finite groups via union-find over generator moves, the quotient lower
//! bound, Heath-style consistency bookkeeping, and fixed point computations.

pub mod autenum;
pub mod boxsearch;
pub mod certify;

use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::groups::{
    enumerate_finite_group, inverse, multiply, project_quotient, EnumeratedGroup, GroupElement,
    QuotientSpec,
};
use serde::Serialize;
use std::collections::HashMap;

pub use autenum::enumerate_automorphisms_small;
pub use boxsearch::{fix_trivial_box_search, FixSearchReport};
pub use certify::{fix_family_certify, FixFamilyCertificate};

/// g x phi(g)^{-1} for symbolic group elements.
pub fn twisted_conjugate(
    phi: &Automorphism,
    x: &GroupElement,
    g: &GroupElement,
) -> Result<GroupElement> {
    multiply(&multiply(g, x)?, &inverse(&phi.apply(g)?)?)
}

/// Finite groups presented by index arithmetic. Indices run 0..order().
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn identity(&self) -> usize;
    /// Some generating set; correctness of orbit enumeration only needs the
    /// set to generate.
    fn generators(&self) -> Vec<usize>;
    fn describe_element(&self, a: usize) -> String;
    fn describe(&self) -> String;
}

impl FiniteGroup for EnumeratedGroup {
    fn order(&self) -> usize {
        self.order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_idx(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.inv_idx(a)
    }
    fn identity(&self) -> usize {
        self.identity_index()
    }
    fn generators(&self) -> Vec<usize> {
        self.generator_indices()
    }
    fn describe_element(&self, a: usize) -> String {
        self.element(a).to_string()
    }
    fn describe(&self) -> String {
        self.describe()
    }
}

/// Z/m, written additively.
pub struct Cyclic {
    pub m: usize,
}

impl FiniteGroup for Cyclic {
    fn order(&self) -> usize {
        self.m
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (a + b) % self.m
    }
    fn inv(&self, a: usize) -> usize {
        (self.m - a) % self.m
    }
    fn identity(&self) -> usize {
        0
    }
    fn generators(&self) -> Vec<usize> {
        vec![1 % self.m]
    }
    fn describe_element(&self, a: usize) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("Z/{}", self.m)
    }
}

impl Cyclic {
    pub fn negation_table(&self) -> Vec<usize> {
        (0..self.m).map(|a| (self.m - a) % self.m).collect()
    }
}

/// A direct product of cyclic groups, mixed-radix indexed.
pub struct ProductCyclic {
    pub moduli: Vec<usize>,
}

impl ProductCyclic {
    pub fn unpack(&self, mut idx: usize) -> Vec<usize> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = idx % m;
                idx /= m;
                d
            })
            .collect()
    }

    pub fn pack(&self, digits: &[usize]) -> usize {
        let mut idx = 0;
        for (&m, &d) in self.moduli.iter().zip(digits).rev() {
            idx = idx * m + d;
        }
        idx
    }
}

impl FiniteGroup for ProductCyclic {
    fn order(&self) -> usize {
        self.moduli.iter().product()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.unpack(a), self.unpack(b));
        let sum: Vec<usize> =
            x.iter().zip(&y).zip(&self.moduli).map(|((&p, &q), &m)| (p + q) % m).collect();
        self.pack(&sum)
    }
    fn inv(&self, a: usize) -> usize {
        let x = self.unpack(a);
        let neg: Vec<usize> = x.iter().zip(&self.moduli).map(|(&p, &m)| (m - p) % m).collect();
        self.pack(&neg)
    }
    fn identity(&self) -> usize {
        0
    }
    fn generators(&self) -> Vec<usize> {
        (0..self.moduli.len())
            .map(|k| {
                let mut d = vec![0; self.moduli.len()];
                d[k] = 1 % self.moduli[k];
                self.pack(&d)
            })
            .collect()
    }
    fn describe_element(&self, a: usize) -> String {
        format!("{:?}", self.unpack(a))
    }
    fn describe(&self) -> String {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        parts.join(" x ")
    }
}

/// Check a permutation table is an automorphism: a bijection multiplicative
/// against every generator and every element, which forces full
/// multiplicativity because the generators generate.
pub fn verify_automorphism_table<G: FiniteGroup + ?Sized>(group: &G, table: &[usize]) -> Result<()> {
    if table.len() != group.order() {
        return Err(Error::NotAnAutomorphism("table length mismatch".into()));
    }
    let mut seen = vec![false; table.len()];
    for &t in table {
        if t >= table.len() || seen[t] {
            return Err(Error::NotAnAutomorphism("table is not a bijection".into()));
        }
        seen[t] = true;
    }
    for g in group.generators() {
        for x in 0..group.order() {
            if table[group.mul(g, x)] != group.mul(table[g], table[x]) {
                return Err(Error::NotAnAutomorphism(format!(
                    "multiplicativity fails at generator {}, element {}",
                    group.describe_element(g),
                    group.describe_element(x)
                )));
            }
        }
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so representatives are minimal in
            // enumeration order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ReidemeisterReport {
    pub group: String,
    pub automorphism: String,
    pub order: usize,
    pub class_count: usize,
    pub representatives: Vec<String>,
    pub class_sizes: Vec<usize>,
}

/// Exact orbit partition of G under (g, x) -> g x phi(g)^{-1}, by union-find
/// over generator moves. Representatives are the least elements of their
/// classes in enumeration order.
pub fn reidemeister_classes<G: FiniteGroup + ?Sized>(
    group: &G,
    table: &[usize],
    automorphism_label: &str,
) -> Result<ReidemeisterReport> {
    verify_automorphism_table(group, table)?;
    let n = group.order();
    let mut uf = UnionFind::new(n);
    let gens = group.generators();
    for x in 0..n {
        for &g in &gens {
            // x ~ g x phi(g)^{-1}
            let moved = group.mul(group.mul(g, x), group.inv(table[g]));
            uf.union(x, moved);
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        *sizes.entry(uf.find(x)).or_insert(0) += 1;
    }
    let mut reps: Vec<usize> = sizes.keys().copied().collect();
    reps.sort_unstable();
    let class_sizes: Vec<usize> = reps.iter().map(|r| sizes[r]).collect();
    debug_assert_eq!(class_sizes.iter().sum::<usize>(), n);
    Ok(ReidemeisterReport {
        group: group.describe(),
        automorphism: automorphism_label.to_string(),
        order: n,
        class_count: reps.len(),
        representatives: reps.iter().map(|&r| group.describe_element(r)).collect(),
        class_sizes,
    })
}

/// Ordinary conjugacy class count by direct orbit sweep — an independent
/// path used to cross-check R(id).
pub fn conjugacy_class_count<G: FiniteGroup + ?Sized>(group: &G) -> usize {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        count += 1;
        for h in 0..n {
            let y = group.mul(group.mul(h, x), group.inv(h));
            seen[y] = true;
        }
    }
    count
}

pub fn fixed_points<G: FiniteGroup + ?Sized>(group: &G, table: &[usize]) -> Vec<usize> {
    (0..group.order()).filter(|&x| table[x] == x).collect()
}

/// The table of iota_g . phi.
pub fn compose_inner<G: FiniteGroup + ?Sized>(group: &G, g: usize, table: &[usize]) -> Vec<usize> {
    (0..group.order()).map(|x| group.mul(group.mul(g, table[x]), group.inv(g))).collect()
}

/// Induce a table through a projection map: `proj[x]` gives the index of the
/// image of x in the quotient group. Errors unless phi descends, i.e. the
/// composite proj . phi is constant on fibers.
pub fn induced_table<G: FiniteGroup + ?Sized, Q: FiniteGroup + ?Sized>(
    group: &G,
    proj: &[usize],
    quotient: &Q,
    table: &[usize],
) -> Result<Vec<usize>> {
    let mut out: Vec<Option<usize>> = vec![None; quotient.order()];
    for x in 0..group.order() {
        let src = proj[x];
        let dst = proj[table[x]];
        match out[src] {
            None => out[src] = Some(dst),
            Some(d) if d == dst => {}
            Some(_) => {
                return Err(Error::KernelNotInvariant(group.describe_element(x)));
            }
        }
    }
    let table_q: Vec<usize> =
        out.into_iter().map(|o| o.expect("projection must be onto")).collect();
    verify_automorphism_table(quotient, &table_q)?;
    Ok(table_q)
}

/// R(phi-bar) computed on the quotient; Reidemeister classes surject onto
/// the quotient classes, so R(phi) is at least the returned value.
pub fn reidemeister_lower_bound_via_quotient<G, Q>(
    group: &G,
    proj: &[usize],
    quotient: &Q,
    table: &[usize],
) -> Result<usize>
where
    G: FiniteGroup + ?Sized,
    Q: FiniteGroup + ?Sized,
{
    let tq = induced_table(group, proj, quotient, table)?;
    Ok(reidemeister_classes(quotient, &tq, "induced")?.class_count)
}

/// Restriction of the group structure to a subgroup given by member indices.
pub struct SubgroupView<'a, G: FiniteGroup + ?Sized> {
    parent: &'a G,
    members: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl<'a, G: FiniteGroup + ?Sized> SubgroupView<'a, G> {
    pub fn new(parent: &'a G, members: Vec<usize>) -> Self {
        let pos = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SubgroupView { parent, members, pos }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    fn local(&self, parent_idx: usize) -> usize {
        self.pos[&parent_idx]
    }
}

impl<'a, G: FiniteGroup + ?Sized> FiniteGroup for SubgroupView<'a, G> {
    fn order(&self) -> usize {
        self.members.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.local(self.parent.mul(self.members[a], self.members[b]))
    }
    fn inv(&self, a: usize) -> usize {
        self.local(self.parent.inv(self.members[a]))
    }
    fn identity(&self) -> usize {
        self.local(self.parent.identity())
    }
    fn generators(&self) -> Vec<usize> {
        // no presentation available; every element generates trivially
        (0..self.members.len()).collect()
    }
    fn describe_element(&self, a: usize) -> String {
        self.parent.describe_element(self.members[a])
    }
    fn describe(&self) -> String {
        format!("subgroup of order {} in {}", self.members.len(), self.parent.describe())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HeathReport {
    pub r_total: usize,
    pub r_quotient: usize,
    pub fiber_counts: Vec<usize>,
    /// Sum of the per-class fiber Reidemeister numbers; classes of G embed
    /// into the disjoint union of the fiber partitions, so r_total must be
    /// bounded by it (and below by r_quotient).
    pub upper_bound: usize,
    pub consistent: bool,
}

/// Recompute R(phi-bar) and all R((iota_g . phi)|_N) for class
/// representatives g, and confirm the combinatorial bound
/// R(phi-bar) <= R(phi) <= sum of fiber counts.
pub fn heath_finiteness_check<G, Q>(
    group: &G,
    proj: &[usize],
    quotient: &Q,
    table: &[usize],
) -> Result<HeathReport>
where
    G: FiniteGroup + ?Sized,
    Q: FiniteGroup + ?Sized,
{
    let tq = induced_table(group, proj, quotient, table)?;
    let quotient_report = reidemeister_classes(quotient, &tq, "induced")?;

    // kernel subgroup; phi maps it to itself because the induced table fixes
    // the identity coset
    let members: Vec<usize> =
        (0..group.order()).filter(|&x| proj[x] == quotient.identity()).collect();
    let n_view = SubgroupView::new(group, members.clone());

    // class representatives of the quotient, lifted minimally
    let rep_indices: Vec<usize> = {
        let mut uf = UnionFind::new(quotient.order());
        let gens = quotient.generators();
        for x in 0..quotient.order() {
            for &g in &gens {
                let moved = quotient.mul(quotient.mul(g, x), quotient.inv(tq[g]));
                uf.union(x, moved);
            }
        }
        let mut roots: Vec<usize> = (0..quotient.order()).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    };

    let mut fiber_counts = Vec::with_capacity(rep_indices.len());
    for rep in rep_indices {
        let lift = (0..group.order())
            .find(|&x| proj[x] == rep)
            .expect("projection must be onto");
        // restricted twisted structure on N: n ~ m n (iota_lift . phi)(m)^{-1}
        let composed = compose_inner(group, lift, table);
        let table_n: Vec<usize> =
            members.iter().map(|&m| n_view.pos[&composed[m]]).collect();
        let report = reidemeister_classes(&n_view, &table_n, "fiber")?;
        fiber_counts.push(report.class_count);
    }

    let r_total = reidemeister_classes(group, table, "total")?.class_count;
    let upper_bound = fiber_counts.iter().sum();
    let consistent = r_total <= upper_bound && r_total >= quotient_report.class_count;
    Ok(HeathReport {
        r_total,
        r_quotient: quotient_report.class_count,
        fiber_counts,
        upper_bound,
        consistent,
    })
}

/// Projection data from a finer enumerated quotient to a coarser one over
/// the same (n, I, field): the coarser group and the index map.
pub fn project_enumerated(
    group: &EnumeratedGroup,
    coarser: &QuotientSpec,
    limit: u128,
) -> Result<(EnumeratedGroup, Vec<usize>)> {
    let target = enumerate_finite_group(&group.ix, &group.field, coarser, limit)?;
    let proj: Result<Vec<usize>> = group
        .elements
        .iter()
        .map(|x| Ok(target.index_of(&project_quotient(x, coarser)?)))
        .collect();
    Ok((target, proj?))
}
