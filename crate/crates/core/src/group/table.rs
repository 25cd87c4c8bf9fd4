use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::subset::SubgroupSet;
use super::GroupError;

/// Largest table order we will store (indices are kept as `u16`).
pub const MAX_TABLE_ORDER: usize = 1 << 16;

/// Tables up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;

const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

/// A finite 2-group given by its full multiplication table.
///
/// Element 0 is the identity.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mult: Vec<u16>,
    inv: Vec<u16>,
    element_order: Vec<u32>,
    label: String,
    central_involution: Option<usize>,
    generators: OnceLock<Vec<usize>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl GroupTable {
    /// Validates and wraps a row-major multiplication table.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        mult: Vec<u16>,
    ) -> Result<Self, GroupError> {
        let label = label.into();
        if order == 0 || !order.is_power_of_two() {
            return Err(GroupError::NotTwoPower(order));
        }
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::OrderCap {
                order,
                cap: MAX_TABLE_ORDER,
            });
        }
        if mult.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "table has {} entries, expected {}",
                mult.len(),
                order * order
            )));
        }
        if mult.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        for a in 0..order {
            if mult[a] as usize != a || mult[a * order] as usize != a {
                return Err(GroupError::InvalidTable(format!(
                    "element 0 is not an identity at {a}"
                )));
            }
        }
        // Latin square.
        for a in 0..order {
            let mut row = SubgroupSet::empty(order);
            let mut col = SubgroupSet::empty(order);
            for b in 0..order {
                row.insert(mult[a * order + b] as usize);
                col.insert(mult[b * order + a] as usize);
            }
            if row.len() != order || col.len() != order {
                return Err(GroupError::InvalidTable(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        let mut inv = vec![0u16; order];
        for a in 0..order {
            let row = &mult[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&x| x == 0).unwrap() as u16;
        }
        let mut g = Self {
            order,
            mult,
            inv,
            element_order: Vec::new(),
            label,
            central_involution: None,
            generators: OnceLock::new(),
        };
        g.check_associative()?;
        g.element_order = (0..order).map(|a| g.compute_order(a)).collect();
        if let Some(a) = (0..order).find(|&a| !g.element_order[a].is_power_of_two()) {
            return Err(GroupError::InvalidTable(format!(
                "element {a} has order {}, not a power of two",
                g.element_order[a]
            )));
        }
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        let fail = |a, b, c| {
            Err(GroupError::InvalidTable(format!(
                "associativity fails on ({a}, {b}, {c})"
            )))
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_0002 ^ n as u64);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    fn compute_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub(crate) fn with_central_involution(mut self, z: Option<usize>) -> Self {
        self.central_involution = z;
        self
    }

    pub(crate) fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `n` such that the order is `2^n`.
    pub fn log2_order(&self) -> u32 {
        self.order.trailing_zeros()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The central involution used when this group is a central-product operand.
    pub fn central_involution(&self) -> Option<usize> {
        self.central_involution
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> u32 {
        self.element_order[a]
    }

    #[inline]
    pub fn square(&self, a: usize) -> usize {
        self.mul(a, a)
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn exponent(&self) -> u32 {
        self.element_order.iter().copied().max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// A small generating set of the whole group.
    pub fn generators(&self) -> &[usize] {
        self.generators
            .get_or_init(|| self.generating_set(&SubgroupSet::full(self.order)))
    }

    /// Closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> SubgroupSet {
        let mut set = SubgroupSet::trivial(self.order);
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !set.contains(y) {
                    set.insert(y);
                    members.push(y);
                }
            }
            i += 1;
        }
        set
    }

    /// Greedy generating set of the subgroup generated by `elems`.
    pub fn generating_set(&self, elems: &SubgroupSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut h = SubgroupSet::trivial(self.order);
        for g in elems.iter() {
            if !h.contains(g) {
                gens.push(g);
                h = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by an arbitrary element set.
    pub fn generate(&self, elems: &SubgroupSet) -> SubgroupSet {
        self.closure(&self.generating_set(elems))
    }

    /// Checks that `set` is a subgroup (contains 1 and is closed).
    pub fn is_subgroup(&self, set: &SubgroupSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// `N` is normal iff conjugating its generators by the group generators stays inside.
    pub fn is_normal(&self, n: &SubgroupSet) -> bool {
        let ngens = self.generating_set(n);
        self.generators()
            .iter()
            .all(|&g| ngens.iter().all(|&h| n.contains(self.conj(g, h))))
    }

    /// `H` is normal in `K` (both subgroups, `H <= K`).
    pub fn is_normal_in(&self, h: &SubgroupSet, k: &SubgroupSet) -> bool {
        let hgens = self.generating_set(h);
        let kgens = self.generating_set(k);
        kgens
            .iter()
            .all(|&g| hgens.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// `g H g^-1` as a set.
    pub fn conjugate_set(&self, g: usize, h: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_elements(self.order, h.iter().map(|x| self.conj(g, x)))
    }

    pub fn center(&self) -> SubgroupSet {
        let gens = self.generators();
        SubgroupSet::from_elements(
            self.order,
            (0..self.order).filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    pub fn derived_subgroup(&self) -> SubgroupSet {
        let mut comms = SubgroupSet::empty(self.order);
        for a in 0..self.order {
            for b in 0..a {
                comms.insert(self.commutator(a, b));
            }
        }
        self.generate(&comms)
    }

    /// Frattini subgroup, computed for 2-groups as the subgroup generated by
    /// all squares and commutators.
    pub fn frattini_subgroup(&self) -> SubgroupSet {
        let mut s = SubgroupSet::empty(self.order);
        for a in 0..self.order {
            s.insert(self.square(a));
        }
        s.union_with(&self.derived_subgroup());
        self.generate(&s)
    }

    /// `H Φ` style product of two subgroups, one of them normal.
    pub fn product_set(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        let mut out = SubgroupSet::empty(self.order);
        for a in h.iter() {
            for b in k.iter() {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    pub fn is_elementary_abelian_set(&self, h: &SubgroupSet) -> bool {
        h.iter().all(|a| self.element_order(a) <= 2)
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::OrderCap {
                order: n,
                cap: MAX_TABLE_ORDER,
            });
        }
        let mut mult = vec![0u16; n * n];
        for x in 0..n {
            let (xa, xb) = (x % na, x / na);
            for y in 0..n {
                let (ya, yb) = (y % na, y / na);
                mult[x * n + y] = (a.mul(xa, ya) + na * b.mul(xb, yb)) as u16;
            }
        }
        Self::from_table(format!("({}) x ({})", a.label, b.label), n, mult)
    }

    /// Index of `(x, y)` in [`GroupTable::direct_product`] of `a` and `b`.
    pub fn pair_index(a: &GroupTable, x: usize, y: usize) -> usize {
        x + a.order * y
    }

    /// `(A x B) / <(z_A, z_B)>` on the designated central involutions.
    pub fn central_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
        let za = a
            .central_involution
            .ok_or_else(|| GroupError::NoCentralInvolution(a.label.clone()))?;
        let zb = b
            .central_involution
            .ok_or_else(|| GroupError::NoCentralInvolution(b.label.clone()))?;
        let ab = Self::direct_product(a, b)?;
        let z = Self::pair_index(a, za, zb);
        let n = SubgroupSet::from_elements(ab.order, [0, z]);
        let q = ab.quotient(&n)?;
        let image = q.projection[Self::pair_index(a, za, 0)];
        Ok(q.group
            .relabel(format!("({}) * ({})", a.label, b.label))
            .with_central_involution(Some(image)))
    }

    /// Quotient by a normal subgroup. Cosets are numbered in order of their
    /// smallest member, so the identity coset is 0.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<Quotient, GroupError> {
        if !self.is_subgroup(n) {
            return Err(GroupError::NotSubgroup);
        }
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for x in n.iter() {
                projection[self.mul(g, x)] = id;
            }
        }
        let m = reps.len();
        let mut mult = vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mult[i * m + j] = projection[self.mul(a, b)] as u16;
            }
        }
        let group = Self::from_table(format!("({}) / N{}", self.label, n.len()), m, mult)?;
        Ok(Quotient { group, projection })
    }
}

/// A quotient table together with the projection `G -> G/N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupTable,
    pub projection: Vec<usize>,
}

/// Structural flags of a 2-group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_elementary_abelian: bool,
    pub is_abelian: bool,
    pub is_extraspecial: bool,
    pub is_almost_extraspecial: bool,
    pub is_generalized_extraspecial: bool,
    pub exponent: u32,
}

impl Classification {
    /// Extraspecial or almost extraspecial.
    pub fn is_almost_or_extraspecial(&self) -> bool {
        self.is_extraspecial || self.is_almost_extraspecial
    }
}

pub fn classify(g: &GroupTable) -> Classification {
    let z = g.center();
    let d = g.derived_subgroup();
    let phi = g.frattini_subgroup();
    let exponent = g.exponent();
    let is_abelian = d.len() == 1;
    let small_derived_is_frattini = d.len() == 2 && d == phi;
    let z_is_c4 = z.len() == 4 && z.iter().any(|a| g.element_order(a) == 4);
    Classification {
        is_elementary_abelian: exponent <= 2,
        is_abelian,
        is_extraspecial: small_derived_is_frattini && z == d,
        is_almost_extraspecial: small_derived_is_frattini && z_is_c4,
        is_generalized_extraspecial: small_derived_is_frattini && d.is_subset(&z),
        exponent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, dihedral8, elementary, GroupSpec};

    fn g(s: &str) -> GroupTable {
        build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn order_profile(g: &GroupTable) -> Vec<usize> {
        let mut p = vec![0; 17];
        for a in g.elements() {
            p[g.element_order(a).trailing_zeros() as usize] += 1;
        }
        p
    }

    #[test]
    fn structural_subgroups_of_d8() {
        let d8 = dihedral8();
        let (z, d, phi) = (d8.center(), d8.derived_subgroup(), d8.frattini_subgroup());
        assert_eq!(z.len(), 2);
        assert_eq!(z, d);
        assert_eq!(d, phi);
        assert!(classify(&d8).is_extraspecial);
    }

    #[test]
    fn elementary_abelian_structure() {
        let e = elementary(4).unwrap();
        assert_eq!(e.center().len(), 16);
        assert_eq!(e.derived_subgroup().len(), 1);
        assert_eq!(e.frattini_subgroup().len(), 1);
        let c = classify(&e);
        assert!(c.is_elementary_abelian && c.is_abelian && !c.is_generalized_extraspecial);
        assert_eq!(c.exponent, 2);
    }

    #[test]
    fn almost_extraspecial_center_is_c4() {
        let a = g("D8 * C4");
        let z = a.center();
        assert_eq!(z.len(), 4);
        assert!(z.iter().any(|x| a.element_order(x) == 4));
        assert_eq!(a.derived_subgroup().len(), 2);
        assert_eq!(a.frattini_subgroup().len(), 2);
        let c = classify(&a);
        assert!(c.is_almost_extraspecial && c.is_generalized_extraspecial && !c.is_extraspecial);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&g("Q8 * D8"));
        assert!(c.is_extraspecial);
        assert_eq!(c.exponent, 4);
        let c = classify(&g("D8 x C2^2"));
        assert!(c.is_generalized_extraspecial && !c.is_extraspecial && !c.is_almost_extraspecial);
        let c = classify(&g("C4 x C2"));
        assert!(c.is_abelian && !c.is_elementary_abelian);
        for s in ["D8 x C2^3", "Q8 * D8 x C2", "D8 * C4 x C2^2", "D8^{*3}"] {
            let c = classify(&g(s));
            assert!(c.is_generalized_extraspecial, "{s}");
            assert_eq!(c.exponent, 4, "{s}");
        }
    }

    #[test]
    fn quotients() {
        let d8 = dihedral8();
        let triv = d8.quotient(&SubgroupSet::full(8)).unwrap();
        assert_eq!(triv.group.order(), 1);
        let q = d8.quotient(&d8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.group.exponent(), 2);
        assert_eq!(q.projection[0], 0);

        let dd = GroupTable::direct_product(&d8, &d8).unwrap();
        let z = GroupTable::pair_index(&d8, 2, 2);
        let n = SubgroupSet::from_elements(dd.order(), [0, z]);
        let quo = dd.quotient(&n).unwrap().group;
        let built = g("D8 * D8");
        assert_eq!(quo.order(), built.order());
        assert_eq!(order_profile(&quo), order_profile(&built));

        // <s> is not normal in D8
        let s = SubgroupSet::from_elements(8, [0, 4]);
        assert_eq!(d8.quotient(&s).unwrap_err(), GroupError::NotNormal);
        let bogus = SubgroupSet::from_elements(8, [0, 1]);
        assert_eq!(d8.quotient(&bogus).unwrap_err(), GroupError::NotSubgroup);
    }

    #[test]
    fn tables_are_validated() {
        // C4 with one entry swapped breaks the latin-square property.
        let mut mult: Vec<u16> = (0..16).map(|x| ((x / 4 + x % 4) % 4) as u16).collect();
        mult[5] = 3;
        assert!(matches!(
            GroupTable::from_table("bad", 4, mult),
            Err(GroupError::InvalidTable(_))
        ));
        assert_eq!(
            GroupTable::from_table("bad", 3, vec![0; 9]).unwrap_err(),
            GroupError::NotTwoPower(3)
        );
        // The 16 signed octonion units: a latin square with identity and
        // power-of-two element orders, but not associative.
        const TRIPLES: [[usize; 3]; 7] = [
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 7],
            [5, 6, 1],
            [6, 7, 2],
            [7, 1, 3],
        ];
        let unit = |i: usize, j: usize| -> (usize, usize) {
            match (i, j) {
                (0, j) => (0, j),
                (i, 0) => (0, i),
                (i, j) if i == j => (1, 0),
                _ => TRIPLES
                    .iter()
                    .find_map(|t| {
                        (0..3).find_map(|r| {
                            let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                            if (a, b) == (i, j) {
                                Some((0, c))
                            } else if (b, a) == (i, j) {
                                Some((1, c))
                            } else {
                                None
                            }
                        })
                    })
                    .unwrap(),
            }
        };
        let mult: Vec<u16> = (0..256)
            .map(|x| {
                let (a, b) = (x / 16, x % 16);
                let (s, u) = unit(a % 8, b % 8);
                (u + 8 * ((a / 8 + b / 8 + s) % 2)) as u16
            })
            .collect();
        let res = GroupTable::from_table("octonion units", 16, mult);
        match &res {
            Err(GroupError::InvalidTable(msg)) => assert!(msg.contains("associativity"), "{msg}"),
            other => panic!("expected an associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn sampled_associativity_on_large_products() {
        let big = g("D8^{*2} x C2^4");
        assert_eq!(big.order(), 512);
        assert!(big.order() > EXHAUSTIVE_ASSOC_LIMIT);
    }

    #[test]
    fn every_built_table_has_latin_rows() {
        for s in ["D8", "Q8", "C8 x C2", "D8 * Q8", "D8^{*2} * C4", "C4 * C8"] {
            let t = g(s);
            for a in t.elements() {
                let mut row = SubgroupSet::empty(t.order());
                for b in t.elements() {
                    row.insert(t.mul(a, b));
                }
                assert_eq!(row.len(), t.order());
            }
        }
    }
}
