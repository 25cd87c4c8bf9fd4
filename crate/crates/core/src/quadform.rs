//! Quadratic forms over F2 and totally singular subspace counts.
//!
//! For a group `G` with `|Φ(G)| = 2` and `Φ(G)` central, `q(vΦ) = [v² ≠ 1]`
//! is a quadratic form on `G/Φ(G)` whose polar form is the commutator
//! pairing. Elementary abelian subgroups of order `2^(d+1)` containing `Φ`
//! correspond to totally singular `d`-subspaces.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{gaussian_binomial, DEFAULT_ENUM_CAP};
use crate::group::{GroupSpec, GroupTable};
use crate::scalar::CountScalar;
use crate::tables::EProfile;
use crate::Count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadformError {
    #[error("form dimension {dim} exceeds the enumeration cap {cap}")]
    EnumerationCap { dim: usize, cap: usize },
    #[error("form dimension {0} exceeds 64")]
    TooWide(usize),
    #[error("coefficient row {0} has bits below the diagonal")]
    NotUpperTriangular(usize),
    #[error("Frattini subgroup has order {0}, expected 2")]
    FrattiniNotOrderTwo(usize),
    #[error("Frattini subgroup is not central")]
    FrattiniNotCentral,
    #[error("squares are not constant on cosets of the Frattini subgroup")]
    NotWellDefined,
    #[error("square map is not a quadratic form on the Frattini quotient")]
    NotQuadratic,
    #[error("polar form disagrees with the commutator pairing")]
    PolarMismatch,
}

/// `q(v) = Σ_{i<=j} a_ij v_i v_j`, row `i` holding `a_ij` in bit `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    dim: usize,
    rows: Vec<u64>,
}

fn mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

impl QuadraticForm {
    pub fn new(dim: usize, rows: Vec<u64>) -> Result<Self, QuadformError> {
        if dim > 64 {
            return Err(QuadformError::TooWide(dim));
        }
        assert_eq!(rows.len(), dim, "one coefficient row per coordinate");
        for (i, &r) in rows.iter().enumerate() {
            if r & !(mask(dim) & !mask(i)) != 0 {
                return Err(QuadformError::NotUpperTriangular(i));
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![0; dim],
        }
    }

    /// The unique form agreeing with `f` on unit vectors and their pairwise
    /// sums. Only meaningful when `f` is already quadratic.
    pub fn fit(dim: usize, f: impl Fn(u64) -> bool) -> Self {
        let diag: Vec<bool> = (0..dim).map(|i| f(1 << i)).collect();
        let rows = (0..dim)
            .map(|i| {
                let mut row = (diag[i] as u64) << i;
                for j in i + 1..dim {
                    if f((1 << i) | (1 << j)) ^ diag[i] ^ diag[j] {
                        row |= 1 << j;
                    }
                }
                row
            })
            .collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn eval(&self, v: u64) -> bool {
        let mut acc = 0u32;
        let mut rest = v;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= (self.rows[i] & v).count_ones();
            rest &= rest - 1;
        }
        acc & 1 == 1
    }

    pub fn polar(&self, u: u64, v: u64) -> bool {
        self.eval(u ^ v) ^ self.eval(u) ^ self.eval(v)
    }

    /// Gram matrix of the polar form, row `i` as a bit mask.
    pub fn polar_rows(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (i, &r) in self.rows.iter().enumerate() {
            let off = r & !(1u64 << i);
            out[i] |= off;
            let mut rest = off;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                out[j] |= 1 << i;
                rest &= rest - 1;
            }
        }
        out
    }

    /// `{v : B(v, ·) = 0}` as a basis.
    pub fn radical(&self) -> Vec<u64> {
        nullspace(&self.polar_rows(), self.dim)
    }

    /// Orthogonal sum, with `other` on the higher coordinates.
    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> Result<Self, QuadformError> {
        let dim = self.dim + other.dim;
        if dim > 64 {
            return Err(QuadformError::TooWide(dim));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.dim));
        Ok(Self { dim, rows })
    }

    /// `v ↦ q(Mv)` where column `i` of `M` is `columns[i]`.
    pub fn substitute(&self, columns: &[u64]) -> Self {
        let image = |v: u64| {
            let mut w = 0;
            let mut rest = v;
            while rest != 0 {
                w ^= columns[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            w
        };
        Self::fit(columns.len(), |v| self.eval(image(v)))
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| {
                (i..self.dim)
                    .filter(move |&j| r >> j & 1 == 1)
                    .map(move |j| {
                        if i == j {
                            format!("x{i}")
                        } else {
                            format!("x{i}x{j}")
                        }
                    })
            })
            .collect();
        if terms.is_empty() {
            write!(f, "q[{}] = 0", self.dim)
        } else {
            write!(f, "q[{}] = {}", self.dim, terms.join(" + "))
        }
    }
}

/// Basis of `{v : row·v = 0 for every row}` in `F2^dim`.
fn nullspace(rows: &[u64], dim: usize) -> Vec<u64> {
    let mut ech: Vec<u64> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for &r in rows {
        let mut r = r;
        for (e, &p) in ech.iter().zip(&pivots) {
            if r >> p & 1 == 1 {
                r ^= e;
            }
        }
        if r == 0 {
            continue;
        }
        let p = r.trailing_zeros() as usize;
        for e in ech.iter_mut() {
            if *e >> p & 1 == 1 {
                *e ^= r;
            }
        }
        ech.push(r);
        pivots.push(p);
    }
    let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
    (0..dim)
        .filter(|&c| pivot_mask >> c & 1 == 0)
        .map(|c| {
            let mut v = 1u64 << c;
            for (e, &p) in ech.iter().zip(&pivots) {
                if e >> c & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

/// Isometry types of the forms attached to generalized extraspecial groups.
///
/// The `r` argument is the Witt index of the nondegenerate part and `m0`
/// counts radical coordinates on which `q` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormType {
    /// `r` hyperbolic planes; the form of `D8^{*r}`.
    Plus(u32),
    /// `r - 1` hyperbolic planes and one anisotropic plane; `Q8 * D8^{*(r-1)}`.
    Minus(u32),
    /// `Plus(r)` and one radical coordinate with `q = 1`; `D8^{*r} * C4`.
    AlmostExtraspecial(u32),
    /// `Plus(r)` and `m0` radical coordinates with `q = 0`; `D8^{*r} x C2^m0`.
    ExtraspecialTimesElementary(u32, u32),
    /// `Minus(r)` and `m0` zero radical coordinates; `Q8 * D8^{*(r-1)} x C2^m0`.
    MinusTimesElementary(u32, u32),
    /// `AlmostExtraspecial(r)` and `m0` zero radical coordinates.
    AlmostExtraspecialTimesElementary(u32, u32),
}

/// Coarse shape of a [`FormType`]: which nondegenerate part, how many zero
/// radical coordinates, and whether `q` is nonzero on the radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shape {
    r: u32,
    minus: bool,
    almost: bool,
    m0: u32,
}

impl FormType {
    fn shape(self) -> Shape {
        let s = |r, minus, almost, m0| Shape {
            r,
            minus,
            almost,
            m0,
        };
        match self {
            FormType::Plus(r) => s(r, false, false, 0),
            FormType::Minus(r) => s(r, true, false, 0),
            FormType::AlmostExtraspecial(r) => s(r, false, true, 0),
            FormType::ExtraspecialTimesElementary(r, m) => s(r, false, false, m),
            FormType::MinusTimesElementary(r, m) => s(r, true, false, m),
            FormType::AlmostExtraspecialTimesElementary(r, m) => s(r, false, true, m),
        }
    }

    fn from_shape(sh: Shape) -> Self {
        match (sh.almost, sh.minus, sh.m0) {
            (true, _, 0) => FormType::AlmostExtraspecial(sh.r),
            (true, _, m) => FormType::AlmostExtraspecialTimesElementary(sh.r, m),
            (false, false, 0) => FormType::Plus(sh.r),
            (false, false, m) => FormType::ExtraspecialTimesElementary(sh.r, m),
            (false, true, 0) => FormType::Minus(sh.r),
            (false, true, m) => FormType::MinusTimesElementary(sh.r, m),
        }
    }

    /// Same type with a zero `m0` folded into the base variant.
    pub fn normalized(self) -> Self {
        Self::from_shape(self.shape())
    }

    pub fn dim(self) -> u32 {
        let sh = self.shape();
        2 * sh.r + sh.almost as u32 + sh.m0
    }

    pub fn witt_index(self) -> u32 {
        self.shape().r
    }

    pub fn radical_dim(self) -> u32 {
        let sh = self.shape();
        sh.almost as u32 + sh.m0
    }

    pub fn is_minus(self) -> bool {
        self.shape().minus
    }

    /// Largest `d` with a nonzero totally singular `d`-subspace count.
    pub fn max_singular_dim(self) -> u32 {
        let sh = self.shape();
        let part = if sh.minus { sh.r - 1 } else { sh.r };
        part + sh.m0
    }

    /// A group whose attached form has this type.
    pub fn group_spec(self) -> Option<GroupSpec> {
        let sh = self.shape();
        let base = match (sh.minus, sh.r) {
            (true, 0) => return None,
            (true, 1) => Some(GroupSpec::Quaternion8),
            (true, r) => Some(GroupSpec::central(
                GroupSpec::Quaternion8,
                GroupSpec::central_power(GroupSpec::Dihedral8, r - 1),
            )),
            (false, 0) => None,
            (false, 1) => Some(GroupSpec::Dihedral8),
            (false, r) => Some(GroupSpec::central_power(GroupSpec::Dihedral8, r)),
        };
        let base = match (base, sh.almost) {
            (Some(b), true) => GroupSpec::central(b, GroupSpec::Cyclic(2)),
            (None, true) => GroupSpec::Cyclic(2),
            (Some(b), false) => b,
            (None, false) => return None,
        };
        Some(if sh.m0 == 0 {
            base
        } else {
            GroupSpec::direct(base, GroupSpec::Elementary(sh.m0))
        })
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sh = self.shape();
        let base = if sh.almost {
            format!("almost({})", sh.r)
        } else if sh.minus {
            format!("minus({})", sh.r)
        } else {
            format!("plus({})", sh.r)
        };
        if sh.m0 == 0 {
            f.write_str(&base)
        } else {
            write!(f, "{base}+zero({})", sh.m0)
        }
    }
}

const HYPERBOLIC: [u64; 2] = [0b10, 0];
const ANISOTROPIC: [u64; 2] = [0b11, 0b10];

pub fn standard_form(t: FormType) -> QuadraticForm {
    let sh = t.shape();
    let dim = t.dim() as usize;
    let mut rows = vec![0u64; dim];
    for p in 0..sh.r as usize {
        let plane = if sh.minus && p + 1 == sh.r as usize {
            ANISOTROPIC
        } else {
            HYPERBOLIC
        };
        rows[2 * p] = plane[0] << (2 * p);
        rows[2 * p + 1] = plane[1] << (2 * p);
    }
    if sh.almost {
        let z = 2 * sh.r as usize;
        rows[z] = 1 << z;
    }
    QuadraticForm { dim, rows }
}

/// Singular nonzero vectors of a nondegenerate `2r`-dimensional form, `r >= 1`.
fn singular_vectors<T: CountScalar>(r: u32, minus: bool) -> T {
    let r = r as usize;
    let one = T::one;
    if minus {
        (T::pow2(r) + one()) * (T::pow2(r - 1) - one())
    } else {
        (T::pow2(r) - one()) * (T::pow2(r - 1) + one())
    }
}

/// Totally singular `k`-subspaces of a nondegenerate `2r`-dimensional form.
fn nondegenerate_ts<T: CountScalar>(r: u32, minus: bool, k: u32) -> T {
    let top = if minus { r.saturating_sub(1) } else { r };
    if k > top {
        return T::zero();
    }
    let mut num = T::one();
    let mut den = T::one();
    for i in 0..k {
        num = num * singular_vectors::<T>(r - i, minus);
        den = den * (T::pow2(i as usize + 1) - T::one());
    }
    num / den
}

/// Totally isotropic `k`-subspaces of a symplectic `2r`-dimensional space.
fn symplectic_ti<T: CountScalar>(r: u32, k: u32) -> T {
    if k > r {
        return T::zero();
    }
    let mut num = T::one();
    let mut den = T::one();
    for i in 0..k {
        num = num * (T::pow2(2 * (r - i) as usize) - T::one());
        den = den * (T::pow2(i as usize + 1) - T::one());
    }
    num / den
}

/// Number of totally singular `d`-subspaces of the standard form of type `t`.
///
/// A totally singular subspace `W` of `N ⊥ R0`, with `q` and the polar form
/// both zero on `R0`, is the graph of a linear map from its projection to
/// `N` into `R0 / (W ∩ R0)`; summing over the projection dimension gives the
/// radical factor.
pub fn count_totally_singular_closed<T: CountScalar>(t: FormType, d: u32) -> T {
    let sh = t.shape();
    let core = |j: u32| -> T {
        if sh.almost {
            symplectic_ti(sh.r, j)
        } else if sh.r == 0 {
            if j == 0 {
                T::one()
            } else {
                T::zero()
            }
        } else {
            nondegenerate_ts(sh.r, sh.minus, j)
        }
    };
    let m0 = sh.m0 as i64;
    (0..=d)
        .map(|j| {
            let rest = d as i64 - j as i64;
            let c = core(j);
            if c.is_zero() {
                return T::zero();
            }
            let b: T = gaussian_binomial(m0, rest);
            if b.is_zero() {
                return T::zero();
            }
            c * b * T::pow2(j as usize * (m0 - rest) as usize)
        })
        .fold(T::zero(), |a, b| a + b)
}

/// `e_i` for `i = 0..=max+1`, with `e_{d+1}` the totally singular count.
pub fn e_profile<T: CountScalar>(t: FormType) -> EProfile<T> {
    EProfile::from_e1((0..=t.max_singular_dim()).map(|d| count_totally_singular_closed(t, d)))
}

/// Enumerative count of totally singular `d`-subspaces, up to dimension 24.
pub fn count_totally_singular(q: &QuadraticForm, d: usize) -> Result<Count, QuadformError> {
    count_totally_singular_capped(q, d, DEFAULT_ENUM_CAP)
}

/// Walks reduced echelon bases from the highest pivot down, extending only
/// by singular vectors orthogonal to the rows chosen so far. Each subspace
/// has exactly one such basis, so no division is needed.
pub fn count_totally_singular_capped(
    q: &QuadraticForm,
    d: usize,
    cap: usize,
) -> Result<Count, QuadformError> {
    let m = q.dim();
    if m > cap {
        return Err(QuadformError::EnumerationCap { dim: m, cap });
    }
    if d > m {
        return Ok(Count::from(0u32));
    }
    if d == 0 {
        return Ok(Count::from(1u32));
    }
    let polar = q.polar_rows();
    let firsts: Vec<u64> = candidates(m, m, 0).filter(|&v| !q.eval(v)).collect();
    let total: u64 = firsts
        .par_iter()
        .map(|&v| {
            let mut rows = vec![v];
            extend(q, &polar, &mut rows, d)
        })
        .sum();
    Ok(Count::from(total))
}

/// Vectors with pivot below `below`, zero at `pivots`.
fn candidates(m: usize, below: usize, pivots: u64) -> impl Iterator<Item = u64> {
    (0..below).flat_map(move |p| {
        let free = mask(m) & !mask(p + 1) & !pivots;
        let nfree = free.count_ones();
        (0..1u64 << nfree).map(move |bits| (1u64 << p) | scatter(bits, free))
    })
}

fn scatter(mut bits: u64, mut slots: u64) -> u64 {
    let mut out = 0;
    while slots != 0 {
        let s = slots & slots.wrapping_neg();
        if bits & 1 == 1 {
            out |= s;
        }
        bits >>= 1;
        slots ^= s;
    }
    out
}

fn extend(q: &QuadraticForm, polar: &[u64], rows: &mut Vec<u64>, d: usize) -> u64 {
    if rows.len() == d {
        return 1;
    }
    let m = q.dim();
    let last = *rows.last().expect("nonempty");
    let below = last.trailing_zeros() as usize;
    let pivots = rows.iter().fold(0u64, |a, r| a | 1 << r.trailing_zeros());
    // polar(v, row) = parity(v & B·row)
    let perp: Vec<u64> = rows
        .iter()
        .map(|&r| {
            let mut acc = 0;
            let mut rest = r;
            while rest != 0 {
                acc ^= polar[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            acc
        })
        .collect();
    let mut total = 0;
    for v in candidates(m, below, pivots) {
        if q.eval(v) || perp.iter().any(|&w| (w & v).count_ones() & 1 == 1) {
            continue;
        }
        rows.push(v);
        total += extend(q, polar, rows, d);
        rows.pop();
    }
    total
}

/// Isometry type of `q`.
///
/// When `q` is nonzero on the radical the Arf invariant of a complement is
/// not well defined and both signs give the same type.
pub fn arf_classify(q: &QuadraticForm) -> FormType {
    let m = q.dim();
    let radical = q.radical();
    let t = radical.len();
    let r = ((m - t) / 2) as u32;
    let q_on_radical = radical.iter().any(|&v| q.eval(v));
    if q_on_radical {
        return FormType::from_shape(Shape {
            r,
            minus: false,
            almost: true,
            m0: t as u32 - 1,
        });
    }
    // complement of the radical spanned by unit vectors
    let mut span: Vec<u64> = Vec::new();
    let reduce = |v: u64, span: &mut Vec<u64>| -> bool {
        let mut v = v;
        for &b in span.iter() {
            v = v.min(v ^ b);
        }
        if v == 0 {
            false
        } else {
            span.push(v);
            span.sort_unstable_by(|a, b| b.cmp(a));
            true
        }
    };
    for &v in &radical {
        reduce(v, &mut span);
    }
    let mut comp: Vec<u64> = (0..m)
        .map(|i| 1u64 << i)
        .filter(|&e| reduce(e, &mut span))
        .collect();
    let mut arf = false;
    while let Some(e) = comp.pop() {
        let fi = comp
            .iter()
            .position(|&f| q.polar(e, f))
            .expect("polar form is nondegenerate on a radical complement");
        let f = comp.swap_remove(fi);
        arf ^= q.eval(e) & q.eval(f);
        for w in comp.iter_mut() {
            let (we, wf) = (q.polar(*w, e), q.polar(*w, f));
            if wf {
                *w ^= e;
            }
            if we {
                *w ^= f;
            }
        }
    }
    FormType::from_shape(Shape {
        r,
        minus: arf,
        almost: false,
        m0: t as u32,
    })
}

/// The form of a group together with the coordinates used to build it.
#[derive(Debug, Clone)]
pub struct GroupForm {
    pub form: QuadraticForm,
    /// Generator chosen for each coordinate.
    pub basis: Vec<usize>,
    /// Coordinate vector of every element.
    pub coords: Vec<u64>,
    /// The nontrivial element of `Φ(G)`.
    pub frattini: usize,
}

pub fn form_of_group(g: &GroupTable) -> Result<QuadraticForm, QuadformError> {
    group_form(g).map(|gf| gf.form)
}

pub fn group_form(g: &GroupTable) -> Result<GroupForm, QuadformError> {
    let phi = g.frattini_subgroup();
    if phi.len() != 2 {
        return Err(QuadformError::FrattiniNotOrderTwo(phi.len()));
    }
    let x = phi.iter().find(|&a| a != 0).expect("order two");
    if !g.center().contains(x) {
        return Err(QuadformError::FrattiniNotCentral);
    }
    let n = g.order();
    let mut coords = vec![u64::MAX; n];
    coords[0] = 0;
    coords[x] = 0;
    let mut covered = vec![0, x];
    let mut basis = Vec::new();
    for b in 0..n {
        if coords[b] != u64::MAX {
            continue;
        }
        let bit = 1u64 << basis.len();
        basis.push(b);
        let fresh: Vec<usize> = covered.iter().map(|&c| g.mul(c, b)).collect();
        for (&c, &y) in covered.clone().iter().zip(&fresh) {
            coords[y] = coords[c] | bit;
        }
        covered.extend(fresh);
    }
    if basis.len() > 64 {
        return Err(QuadformError::NotQuadratic);
    }
    let dim = basis.len();
    let mut rep = vec![usize::MAX; 1usize << dim];
    let mut value = vec![false; 1usize << dim];
    for a in g.elements() {
        let sq = g.square(a);
        if sq != 0 && sq != x {
            return Err(QuadformError::NotWellDefined);
        }
        let v = coords[a] as usize;
        if rep[v] == usize::MAX {
            rep[v] = a;
            value[v] = sq == x;
        } else if value[v] != (sq == x) {
            return Err(QuadformError::NotWellDefined);
        }
    }
    let form = QuadraticForm::fit(dim, |v| value[v as usize]);
    if (0..value.len()).any(|v| form.eval(v as u64) != value[v]) {
        return Err(QuadformError::NotQuadratic);
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let comm = g.commutator(basis[i], basis[j]) != 0;
            if form.polar(1 << i, 1 << j) != comm {
                return Err(QuadformError::PolarMismatch);
            }
        }
    }
    Ok(GroupForm {
        form,
        basis,
        coords,
        frattini: x,
    })
}
