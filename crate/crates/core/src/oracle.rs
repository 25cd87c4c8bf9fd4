//! Brute-force subgroup lattices and everything counted from them.
//!
//! This is the ground truth every formula path is checked against, so it
//! stays deliberately naive: subgroups are explicit bit-sets, levels are built
//! by adjoining one element at a time, and normality and conjugacy are tested
//! by direct conjugation.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{classify, GroupError, GroupTable, SubgroupSet};
use crate::tables::{CensusTable, EProfile, SectionCensus, SectionClass};
use crate::Count;

/// Default largest group order the oracle will enumerate.
pub const DEFAULT_ORACLE_CAP: usize = 256;

/// Hard upper limit for a configured oracle cap.
pub const MAX_ORACLE_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("group order {order} exceeds the oracle cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("oracle cap {0} is above the supported maximum of 512")]
    InvalidCap(usize),
    #[error("Frattini subgroup has order {0}, expected 2")]
    FrattiniNotOrderTwo(usize),
    #[error("{0} is neither extraspecial nor almost extraspecial")]
    NotAlmostExtraspecial(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn check_cap(g: &GroupTable, cap: usize) -> Result<(), OracleError> {
    if cap > MAX_ORACLE_CAP {
        return Err(OracleError::InvalidCap(cap));
    }
    if g.order() > cap {
        return Err(OracleError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    if g.order() > DEFAULT_ORACLE_CAP {
        log::warn!(
            "enumerating the lattice of {} (order {}) above the default cap; this is slow",
            g.label(),
            g.order()
        );
    }
    Ok(())
}

/// The complete subgroup lattice, graded by order.
pub struct SubgroupLattice<'g> {
    parent: &'g GroupTable,
    levels: Vec<Vec<SubgroupSet>>,
    gens: Vec<Vec<Vec<u16>>>,
    covers: Vec<Vec<Vec<u32>>>,
}

/// Index of a subgroup inside a lattice: `(k, i)` is entry `i` of level `k`.
pub type LatticeIndex = (u32, u32);

impl<'g> SubgroupLattice<'g> {
    pub fn parent(&self) -> &'g GroupTable {
        self.parent
    }

    /// Subgroups of order `2^k`.
    pub fn level(&self, k: u32) -> &[SubgroupSet] {
        &self.levels[k as usize]
    }

    pub fn levels(&self) -> &[Vec<SubgroupSet>] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn get(&self, (k, i): LatticeIndex) -> &SubgroupSet {
        &self.levels[k as usize][i as usize]
    }

    /// A generating set recorded during enumeration.
    pub fn generators(&self, (k, i): LatticeIndex) -> &[u16] {
        &self.gens[k as usize][i as usize]
    }

    /// Indices in level `k + 1` of the subgroups that contain entry `(k, i)`
    /// with index 2.
    pub fn covers(&self, (k, i): LatticeIndex) -> &[u32] {
        &self.covers[k as usize][i as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticeIndex, &SubgroupSet)> + '_ {
        self.levels.iter().enumerate().flat_map(|(k, lvl)| {
            lvl.iter()
                .enumerate()
                .map(move |(i, h)| ((k as u32, i as u32), h))
        })
    }

    /// Position of a subgroup, if it is one.
    pub fn index_of(&self, h: &SubgroupSet) -> Option<LatticeIndex> {
        let k = h.log2_len();
        self.levels
            .get(k as usize)?
            .iter()
            .position(|x| x == h)
            .map(|i| (k, i as u32))
    }

    fn lookup(&self) -> HashMap<&SubgroupSet, LatticeIndex> {
        self.iter().map(|(ix, h)| (h, ix)).collect()
    }

    /// Maximal subgroups of each subgroup, as the reverse of [`Self::covers`].
    fn maximal_subgroups(&self) -> Vec<Vec<Vec<u32>>> {
        let mut down: Vec<Vec<Vec<u32>>> = self
            .levels
            .iter()
            .map(|l| vec![Vec::new(); l.len()])
            .collect();
        for (k, lvl) in self.covers.iter().enumerate() {
            for (i, ups) in lvl.iter().enumerate() {
                for &j in ups {
                    down[k + 1][j as usize].push(i as u32);
                }
            }
        }
        down
    }

    fn normalizes(&self, g: usize, ix: LatticeIndex) -> bool {
        let h = self.get(ix);
        self.generators(ix)
            .iter()
            .all(|&x| h.contains(self.parent.conj(g, x as usize)))
    }

    pub fn is_normal(&self, ix: LatticeIndex) -> bool {
        self.parent
            .generators()
            .iter()
            .all(|&g| self.normalizes(g, ix))
    }
}

pub fn enumerate_lattice(g: &GroupTable) -> Result<SubgroupLattice<'_>, OracleError> {
    enumerate_lattice_capped(g, DEFAULT_ORACLE_CAP)
}

/// Builds level `k + 1` from level `k`: every subgroup of order `2^(k+1)`
/// contains some subgroup of order `2^k` with index 2, hence as a normal
/// subgroup, and is `H ∪ gH` for any `g` outside `H` that normalizes `H`
/// and squares into it.
pub fn enumerate_lattice_capped(
    g: &GroupTable,
    cap: usize,
) -> Result<SubgroupLattice<'_>, OracleError> {
    check_cap(g, cap)?;
    let order = g.order();
    let n = g.log2_order() as usize;
    let mut lat = SubgroupLattice {
        parent: g,
        levels: vec![vec![SubgroupSet::trivial(order)]],
        gens: vec![vec![Vec::new()]],
        covers: Vec::new(),
    };
    for k in 0..n {
        let level = &lat.levels[k];
        let extensions: Vec<Vec<(SubgroupSet, Vec<u16>)>> = (0..level.len())
            .into_par_iter()
            .map(|i| {
                let ix = (k as u32, i as u32);
                let h = lat.get(ix);
                let mut covered = h.clone();
                let mut out = Vec::new();
                for x in 0..order {
                    if covered.contains(x) || !h.contains(g.square(x)) || !lat.normalizes(x, ix) {
                        continue;
                    }
                    let mut bigger = h.clone();
                    for y in h.iter() {
                        bigger.insert(g.mul(x, y));
                    }
                    covered.union_with(&bigger);
                    let mut gens = lat.generators(ix).to_vec();
                    gens.push(x as u16);
                    out.push((bigger, gens));
                }
                out
            })
            .collect();

        let mut index: HashMap<SubgroupSet, u32> = HashMap::new();
        let mut next_level = Vec::new();
        let mut next_gens = Vec::new();
        let mut covers = Vec::with_capacity(extensions.len());
        for ext in extensions {
            let mut ups = Vec::with_capacity(ext.len());
            for (bigger, gens) in ext {
                let id = *index.entry(bigger.clone()).or_insert_with(|| {
                    next_level.push(bigger);
                    next_gens.push(gens);
                    (next_level.len() - 1) as u32
                });
                ups.push(id);
            }
            covers.push(ups);
        }
        lat.covers.push(covers);
        lat.levels.push(next_level);
        lat.gens.push(next_gens);
    }
    lat.covers.push(vec![Vec::new(); lat.levels[n].len()]);
    Ok(lat)
}

pub fn census(g: &GroupTable) -> Result<CensusTable, OracleError> {
    census_capped(g, DEFAULT_ORACLE_CAP)
}

pub fn census_capped(g: &GroupTable, cap: usize) -> Result<CensusTable, OracleError> {
    Ok(census_of(&enumerate_lattice_capped(g, cap)?))
}

pub fn census_of(lat: &SubgroupLattice<'_>) -> CensusTable {
    let sizes = lat.level_sizes();
    CensusTable::new(
        (sizes.len() - 1) as u32,
        sizes.into_iter().map(|s| Count::from(s as u64)).collect(),
    )
}

/// Numbers of cyclic subgroups keyed by their order (`1, 2, 4, ...`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCensus {
    by_order: BTreeMap<u64, u64>,
}

impl CyclicCensus {
    /// Number of cyclic subgroups of the given order.
    pub fn c(&self, order: u64) -> u64 {
        self.by_order.get(&order).copied().unwrap_or(0)
    }

    pub fn by_order(&self) -> &BTreeMap<u64, u64> {
        &self.by_order
    }

    /// `|L_1(G)|`, including the trivial subgroup.
    pub fn total(&self) -> u64 {
        self.by_order.values().sum()
    }
}

/// Each cyclic subgroup of order `m > 1` has `m / 2` generators in a 2-group,
/// so counting elements by order suffices.
pub fn cyclic_census(g: &GroupTable) -> CyclicCensus {
    let mut elems: BTreeMap<u64, u64> = BTreeMap::new();
    for a in g.elements() {
        *elems.entry(g.element_order(a) as u64).or_default() += 1;
    }
    CyclicCensus {
        by_order: elems
            .into_iter()
            .map(|(o, c)| (o, if o == 1 { c } else { c / (o / 2) }))
            .collect(),
    }
}

fn frattini_of_order_two(g: &GroupTable) -> Result<SubgroupSet, OracleError> {
    let phi = g.frattini_subgroup();
    if phi.len() != 2 {
        return Err(OracleError::FrattiniNotOrderTwo(phi.len()));
    }
    Ok(phi)
}

/// `e_i(G)` for `i = 0..=n`, counted from the lattice.
pub fn elementary_abelian_over_frattini(g: &GroupTable) -> Result<EProfile, OracleError> {
    let phi = frattini_of_order_two(g)?;
    let lat = enumerate_lattice(g)?;
    Ok(e_profile_of(&lat, &phi))
}

pub fn e_profile_of(lat: &SubgroupLattice<'_>, phi: &SubgroupSet) -> EProfile {
    let g = lat.parent();
    let counts = lat.levels()[1..].iter().map(|lvl| {
        Count::from(
            lvl.iter()
                .filter(|h| phi.is_subset(h) && g.is_elementary_abelian_set(h))
                .count() as u64,
        )
    });
    EProfile::from_e1(counts)
}

pub fn section_census(g: &GroupTable, split: bool) -> Result<SectionCensus, OracleError> {
    section_census_capped(g, split, DEFAULT_ORACLE_CAP)
}

pub fn section_census_capped(
    g: &GroupTable,
    split: bool,
    cap: usize,
) -> Result<SectionCensus, OracleError> {
    let phi = if split {
        Some(frattini_of_order_two(g)?)
    } else {
        None
    };
    let lat = enumerate_lattice_capped(g, cap)?;
    Ok(section_census_of(&lat, phi.as_ref()))
}

/// Counts sections `H2/H1` with `H1` normal in `H2` and `H2/H1` elementary
/// abelian, classified against `phi` when given.
///
/// For each top `H2`, walks down through maximal subgroups while they still
/// contain every square of `H2`: those are exactly the candidate bottoms.
pub fn section_census_of(lat: &SubgroupLattice<'_>, phi: Option<&SubgroupSet>) -> SectionCensus {
    let g = lat.parent();
    let n = (lat.levels().len() - 1) as u32;
    let down = lat.maximal_subgroups();
    let offsets: Vec<usize> = lat
        .levels()
        .iter()
        .scan(0, |acc, l| {
            let o = *acc;
            *acc += l.len();
            Some(o)
        })
        .collect();
    let tops: Vec<LatticeIndex> = lat.iter().map(|(ix, _)| ix).collect();

    let partial: Vec<Vec<(u32, u32, Option<SectionClass>)>> = tops
        .par_iter()
        .map_init(
            || (vec![usize::MAX; lat.total()], 0usize),
            |(stamp, _), &top| {
                let h2 = lat.get(top);
                let squares = SubgroupSet::from_elements(g.order(), h2.iter().map(|x| g.square(x)));
                let top_gens: Vec<usize> =
                    lat.generators(top).iter().map(|&x| x as usize).collect();
                let stamp_id = offsets[top.0 as usize] + top.1 as usize;
                let mut found = Vec::new();
                let mut stack = vec![top];
                stamp[stamp_id] = stamp_id;
                while let Some(ix) = stack.pop() {
                    let h1 = lat.get(ix);
                    if !squares.is_subset(h1) {
                        continue;
                    }
                    let normal = lat
                        .generators(ix)
                        .iter()
                        .all(|&x| top_gens.iter().all(|&t| h1.contains(g.conj(t, x as usize))));
                    if normal {
                        let class = phi.map(|p| {
                            SectionClass::classify(p.is_subset(h1), ix.0 == 0, p.is_subset(h2))
                        });
                        found.push((top.0 - ix.0, ix.0, class));
                    }
                    if ix.0 == 0 {
                        continue;
                    }
                    for &j in &down[ix.0 as usize][ix.1 as usize] {
                        let sid = offsets[ix.0 as usize - 1] + j as usize;
                        if stamp[sid] != stamp_id {
                            stamp[sid] = stamp_id;
                            stack.push((ix.0 - 1, j));
                        }
                    }
                }
                found
            },
        )
        .collect();

    let mut counts = SectionCensus::<u64>::zeros(n, phi.is_some());
    for (alpha, beta, class) in partial.into_iter().flatten() {
        counts.add(alpha, beta, class, 1);
    }
    counts.map(|&c| Count::from(c))
}

/// Outcome of checking the subgroup dichotomy of an (almost) extraspecial group.
#[derive(Debug, Clone, Default)]
pub struct DichotomyReport {
    /// Nontrivial normal subgroups are exactly those containing `Φ(G)`.
    pub normal_iff_over_frattini: bool,
    /// Every other nontrivial subgroup is elementary abelian and complements
    /// `Φ` in `HΦ`, with `2^i` complements per elementary abelian overgroup
    /// of order `2^(i+1)` containing `Φ`.
    pub complements: bool,
    /// Non-normal `H`, `K` are conjugate iff `HΦ = KΦ`.
    pub conjugacy: bool,
    /// At most one conjugate of a non-normal `H` lies in a given non-normal `K`.
    pub unique_conjugator: bool,
    pub witnesses: Vec<String>,
}

impl DichotomyReport {
    pub fn passed(&self) -> bool {
        self.normal_iff_over_frattini
            && self.complements
            && self.conjugacy
            && self.unique_conjugator
    }
}

pub fn verify_subgroup_dichotomy(g: &GroupTable) -> Result<DichotomyReport, OracleError> {
    if !classify(g).is_almost_or_extraspecial() {
        return Err(OracleError::NotAlmostExtraspecial(g.label().to_string()));
    }
    let phi = frattini_of_order_two(g)?;
    let lat = enumerate_lattice(g)?;
    let lookup = lat.lookup();
    let mut rep = DichotomyReport {
        normal_iff_over_frattini: true,
        complements: true,
        conjugacy: true,
        unique_conjugator: true,
        witnesses: Vec::new(),
    };

    // (i) and the shape of the non-normal subgroups
    let mut non_normal: Vec<LatticeIndex> = Vec::new();
    let mut complement_count: HashMap<LatticeIndex, u64> = HashMap::new();
    let mut closure_of: HashMap<LatticeIndex, LatticeIndex> = HashMap::new();
    for (ix, h) in lat.iter() {
        if ix.0 == 0 {
            continue;
        }
        let over = phi.is_subset(h);
        if lat.is_normal(ix) != over {
            rep.normal_iff_over_frattini = false;
            rep.witnesses
                .push(format!("subgroup {ix:?} {h:?}: normal != contains Φ"));
        }
        if over {
            continue;
        }
        non_normal.push(ix);
        let hphi = g.product_set(h, &phi);
        let ok = g.is_elementary_abelian_set(h)
            && hphi.len() == 2 * h.len()
            && g.is_elementary_abelian_set(&hphi);
        match lookup.get(&hphi) {
            Some(&a) if ok => {
                *complement_count.entry(a).or_default() += 1;
                closure_of.insert(ix, a);
            }
            _ => {
                rep.complements = false;
                rep.witnesses.push(format!(
                    "subgroup {ix:?} is not a complement of Φ in an elementary abelian HΦ"
                ));
            }
        }
    }

    // (ii) complement counts per elementary abelian overgroup of Φ
    for (ix, a) in lat.iter() {
        if ix.0 < 2 || !phi.is_subset(a) || !g.is_elementary_abelian_set(a) {
            continue;
        }
        let want = 1u64 << (ix.0 - 1);
        let got = complement_count.get(&ix).copied().unwrap_or(0);
        if got != want {
            rep.complements = false;
            rep.witnesses.push(format!(
                "elementary abelian {ix:?} has {got} complements of Φ, expected {want}"
            ));
        }
    }

    // (iii) conjugacy classes of non-normal subgroups
    let mut class_of: HashMap<LatticeIndex, usize> = HashMap::new();
    let mut classes: Vec<Vec<LatticeIndex>> = Vec::new();
    for &ix in &non_normal {
        if class_of.contains_key(&ix) {
            continue;
        }
        let h = lat.get(ix);
        let mut members: Vec<LatticeIndex> = g
            .elements()
            .map(|x| lookup[&g.conjugate_set(x, h)])
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of.insert(m, classes.len());
        }
        classes.push(members);
    }
    for &h in &non_normal {
        for &k in &non_normal {
            if h.0 != k.0 || h >= k {
                continue;
            }
            let conj = class_of[&h] == class_of[&k];
            let same_closure =
                closure_of.contains_key(&h) && closure_of.get(&h) == closure_of.get(&k);
            if conj != same_closure {
                rep.conjugacy = false;
                rep.witnesses.push(format!(
                    "{h:?} and {k:?}: conjugate = {conj}, HΦ = KΦ: {same_closure}"
                ));
            }
        }
    }

    // (iv) uniqueness of the conjugate landing inside K
    for class in &classes {
        let level = class[0].0;
        for &k in non_normal.iter().filter(|k| k.0 >= level) {
            let kset = lat.get(k);
            let inside = class
                .iter()
                .filter(|&&m| lat.get(m).is_subset(kset))
                .count();
            if inside > 1 {
                rep.unique_conjugator = false;
                rep.witnesses.push(format!(
                    "{inside} conjugates of {:?} lie inside {k:?}",
                    class[0]
                ));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, dihedral8, elementary, quaternion8, GroupSpec};
    use std::collections::HashSet;

    fn g(s: &str) -> GroupTable {
        build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn sizes(t: &GroupTable) -> Vec<usize> {
        enumerate_lattice(t).unwrap().level_sizes()
    }

    #[test]
    fn small_lattices() {
        assert_eq!(sizes(&dihedral8()), [1, 5, 3, 1]);
        assert_eq!(sizes(&quaternion8()), [1, 1, 3, 1]);
        assert_eq!(sizes(&elementary(3).unwrap()), [1, 7, 7, 1]);
        assert_eq!(sizes(&g("C8")), [1, 1, 1, 1]);
    }

    /// Independent count: distinct subgroups generated by all subsets of at
    /// most `d` elements, which reaches every subgroup of rank <= d.
    fn brute_subgroups(t: &GroupTable, d: usize) -> HashSet<SubgroupSet> {
        let mut seen = HashSet::new();
        fn rec(
            t: &GroupTable,
            start: usize,
            d: usize,
            gens: &mut Vec<usize>,
            seen: &mut HashSet<SubgroupSet>,
        ) {
            seen.insert(t.closure(gens));
            if gens.len() == d {
                return;
            }
            for x in start..t.order() {
                gens.push(x);
                rec(t, x + 1, d, gens, seen);
                gens.pop();
            }
        }
        rec(t, 1, d, &mut Vec::new(), &mut seen);
        seen
    }

    #[test]
    fn layered_enumeration_matches_generator_closure() {
        for s in ["D8 x C2", "Q8 x C2", "C4 x C4", "D8 * C4", "C8 x C2"] {
            let t = g(s);
            let lat = enumerate_lattice(&t).unwrap();
            let brute = brute_subgroups(&t, 3);
            let ours: HashSet<SubgroupSet> = lat.iter().map(|(_, h)| h.clone()).collect();
            assert_eq!(ours, brute, "{s}");
            assert_eq!(ours.len(), lat.total());
        }
    }

    #[test]
    fn covers_are_index_two_containments() {
        let t = g("D8 x C2");
        let lat = enumerate_lattice(&t).unwrap();
        for (ix, h) in lat.iter() {
            for &j in lat.covers(ix) {
                let k = lat.get((ix.0 + 1, j));
                assert!(h.is_subset(k));
                assert_eq!(k.len(), 2 * h.len());
            }
            if (ix.0 as usize) < lat.levels().len() - 1 {
                assert!(!lat.covers(ix).is_empty());
            }
        }
    }

    #[test]
    fn golden_lattice_totals() {
        assert_eq!(census(&g("D8 * D8")).unwrap().total(), Count::from(110u32));
        assert_eq!(census(&g("Q8 * D8")).unwrap().total(), Count::from(78u32));
        assert_eq!(census(&g("D8 * C4")).unwrap().total(), Count::from(23u32));
    }

    #[test]
    fn cyclic_census_examples() {
        let d8 = cyclic_census(&dihedral8());
        assert_eq!(d8.total(), 7);
        let c4 = cyclic_census(&g("C4"));
        assert_eq!((c4.c(2), c4.c(4)), (1, 1));
        for s in ["D8 x C2^2", "Q8 * D8", "D8 * C4 x C2", "C4 x C4"] {
            let t = g(s);
            let c = cyclic_census(&t);
            assert_eq!(t.order() as u64, 1 + c.c(2) + 2 * c.c(4), "{s}");
        }
    }

    #[test]
    fn cyclic_census_matches_dedup() {
        for s in ["C8 x C4", "Q8 x C4", "D8 * C8"] {
            let t = g(s);
            let distinct: HashSet<SubgroupSet> = t.elements().map(|a| t.closure(&[a])).collect();
            assert_eq!(cyclic_census(&t).total(), distinct.len() as u64, "{s}");
        }
    }

    #[test]
    fn e_profiles() {
        let e = elementary_abelian_over_frattini(&g("D8 * D8")).unwrap();
        assert_eq!((e.get(2), e.get(3)), (Count::from(9u32), Count::from(6u32)));
        let e = elementary_abelian_over_frattini(&g("Q8 * D8")).unwrap();
        assert_eq!((e.get(2), e.get(3)), (Count::from(5u32), Count::from(0u32)));
        let e = elementary_abelian_over_frattini(&g("D8 * C4")).unwrap();
        assert_eq!(e.get(2), Count::from(3u32));
        assert_eq!(e.get(1), Count::from(1u32));
        assert_eq!(
            elementary_abelian_over_frattini(&g("C2^3")).unwrap_err(),
            OracleError::FrattiniNotOrderTwo(1)
        );
    }

    #[test]
    fn section_census_examples() {
        let dd = g("D8 * D8");
        let sc = section_census(&dd, true).unwrap();
        assert_eq!(sc.get(2, 0), Count::from(33u32));
        let cen = census(&dd).unwrap();
        for k in 0..=5 {
            assert_eq!(sc.get(0, k), cen.get(k));
        }
        let v4 = section_census(&g("C2^2"), false).unwrap();
        assert_eq!(v4.get(1, 1), Count::from(3u32));
        assert_eq!(v4.get(2, 0), Count::from(1u32));
        assert_eq!(v4.get(1, 0), Count::from(3u32));
    }

    #[test]
    fn section_classes_partition() {
        for s in ["D8 * D8", "D8 x C2^2", "D8 * C4"] {
            let sc = section_census(&g(s), true).unwrap();
            for (a, b) in sc.cells() {
                let sum = SectionClass::ALL
                    .iter()
                    .map(|&c| sc.class(a, b, c).unwrap())
                    .fold(Count::from(0u32), |x, y| x + y);
                assert_eq!(sum, sc.get(a, b), "{s} ({a},{b})");
            }
        }
    }

    /// Section count by brute force over all pairs, building quotient tables.
    #[test]
    fn section_census_matches_pairwise_quotients() {
        let t = g("D8 x C2");
        let lat = enumerate_lattice(&t).unwrap();
        let fast = section_census_of(&lat, None);
        let mut slow = SectionCensus::<u64>::zeros(4, false);
        for (_, h2) in lat.iter() {
            for (ix1, h1) in lat.iter() {
                if !h1.is_subset(h2) || !t.is_normal_in(h1, h2) {
                    continue;
                }
                // quotient H2/H1 inside G: cosets x H1 for x in H2
                let elementary = h2.iter().all(|x| h1.contains(t.square(x)));
                if elementary {
                    slow.add(h2.log2_len() - ix1.0, ix1.0, None, 1);
                }
            }
        }
        assert_eq!(fast, slow.map(|&c| Count::from(c)));
    }

    #[test]
    fn subgroup_dichotomy_holds_on_small_groups() {
        for s in ["D8", "Q8", "D8 * D8", "Q8 * D8", "D8 * C4"] {
            let rep = verify_subgroup_dichotomy(&g(s)).unwrap();
            assert!(rep.passed(), "{s}: {:?}", rep.witnesses);
        }
        assert!(matches!(
            verify_subgroup_dichotomy(&g("D8 x C2")),
            Err(OracleError::NotAlmostExtraspecial(_))
        ));
    }

    #[test]
    fn d8_non_normal_subgroups() {
        let d8 = dihedral8();
        let lat = enumerate_lattice(&d8).unwrap();
        let phi = d8.frattini_subgroup();
        let nn: Vec<_> = lat
            .iter()
            .filter(|(ix, _)| ix.0 > 0 && !lat.is_normal(*ix))
            .collect();
        assert_eq!(nn.len(), 4);
        assert!(nn.iter().all(|(ix, h)| ix.0 == 1 && !phi.is_subset(h)));
        // they pair up by HΦ
        let closures: HashSet<SubgroupSet> =
            nn.iter().map(|(_, h)| d8.product_set(h, &phi)).collect();
        assert_eq!(closures.len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let big = g("D8 x C2^6");
        assert_eq!(
            enumerate_lattice(&big).err(),
            Some(OracleError::CapExceeded {
                order: 512,
                cap: 256
            })
        );
        assert_eq!(
            enumerate_lattice_capped(&big, 1024).err(),
            Some(OracleError::InvalidCap(1024))
        );
    }

    #[test]
    fn odd_congruence_and_endpoints() {
        for s in ["D8 x C2^2", "C4 x C4", "Q8 x C4", "D8 * C8", "C8 x C2 x C2"] {
            let c = census(&g(s)).unwrap();
            let n = c.n();
            assert_eq!(c.get(0), Count::from(1u32));
            assert_eq!(c.get(n), Count::from(1u32));
            for k in 0..=n {
                assert!(c.get(k).bit(0), "{s}: s_{k} is even");
            }
        }
    }
}
