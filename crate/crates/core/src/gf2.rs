//! Bit-vector linear algebra over GF(2).
//!
//! Vectors live in `F_2^m` with `m <= 64`, packed into one `u64` where bit
//! `i` is coordinate `i`. Coordinate 0 is printed first, so `110` is the
//! vector with coordinates 0 and 1 set. Pivots are the lowest set coordinate.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::CountScalar;

/// Largest ambient dimension a [`BitVec`] can hold.
pub const MAX_WIDTH: usize = 64;

/// Default cap on the ambient dimension for subspace enumeration.
pub const DEFAULT_ENUM_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("width {0} exceeds the maximum of 64")]
    WidthTooLarge(usize),
    #[error("bits set beyond width {width}: {bits:#x}")]
    BitsBeyondWidth { width: usize, bits: u64 },
    #[error("vectors of mixed widths {0} and {1}")]
    MixedWidths(usize, usize),
    #[error("ambient dimension {dim} exceeds the enumeration cap {cap}")]
    EnumerationCap { dim: usize, cap: usize },
    #[error("dimension {k} out of range {lo}..={hi}")]
    DimensionOutOfRange { k: usize, lo: usize, hi: usize },
    #[error("invalid bit string {0:?}")]
    Parse(String),
}

fn width_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A vector of `F_2^width`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    width: u8,
    bits: u64,
}

impl BitVec {
    pub fn new(width: usize, bits: u64) -> Result<Self, Gf2Error> {
        if width > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(width));
        }
        if bits & !width_mask(width) != 0 {
            return Err(Gf2Error::BitsBeyondWidth { width, bits });
        }
        Ok(Self {
            width: width as u8,
            bits,
        })
    }

    pub fn zero(width: usize) -> Result<Self, Gf2Error> {
        Self::new(width, 0)
    }

    /// The unit vector with coordinate `i` set.
    pub fn unit(width: usize, i: usize) -> Result<Self, Gf2Error> {
        if i >= width {
            return Err(Gf2Error::BitsBeyondWidth {
                width,
                bits: 1u64.checked_shl(i as u32).unwrap_or(0),
            });
        }
        Self::new(width, 1 << i)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.width() && (self.bits >> i) & 1 == 1
    }

    /// Lowest set coordinate.
    #[inline]
    pub fn pivot(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard dot product.
    pub fn dot(&self, other: &Self) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }
}

impl std::ops::Add for BitVec {
    type Output = BitVec;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.width, rhs.width);
        Self {
            width: self.width,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = 0u64;
        let mut width = 0;
        for c in s.chars() {
            match c {
                '0' => {}
                '1' if width < 64 => bits |= 1 << width,
                _ => return Err(Gf2Error::Parse(s.to_string())),
            }
            width += 1;
        }
        Self::new(width, bits)
    }
}

/// A subspace of `F_2^m` held as its reduced row echelon basis.
///
/// Basis rows are sorted by strictly increasing pivot and every pivot column
/// is zero in all other rows, so equality of subspaces is equality of bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Subspace {
    ambient_dim: usize,
    basis: Vec<u64>,
}

impl Gf2Subspace {
    pub fn zero(ambient_dim: usize) -> Result<Self, Gf2Error> {
        if ambient_dim > MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(ambient_dim));
        }
        Ok(Self {
            ambient_dim,
            basis: Vec::new(),
        })
    }

    pub fn full(ambient_dim: usize) -> Result<Self, Gf2Error> {
        let mut s = Self::zero(ambient_dim)?;
        s.basis = (0..ambient_dim).map(|i| 1u64 << i).collect();
        Ok(s)
    }

    /// Span of `rows`, which must all have `ambient_dim` width.
    fn from_raw(ambient_dim: usize, rows: impl IntoIterator<Item = u64>) -> Self {
        let mut basis: Vec<u64> = Vec::new();
        for v in rows {
            let x = reduce_against(&basis, v);
            if x == 0 {
                continue;
            }
            let p = x.trailing_zeros();
            for r in basis.iter_mut() {
                if (*r >> p) & 1 == 1 {
                    *r ^= x;
                }
            }
            basis.push(x);
        }
        basis.sort_unstable_by_key(|r| r.trailing_zeros());
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl ExactSizeIterator<Item = BitVec> + '_ {
        let w = self.ambient_dim as u8;
        self.basis
            .iter()
            .map(move |&bits| BitVec { width: w, bits })
    }

    pub fn basis_bits(&self) -> &[u64] {
        &self.basis
    }

    /// Bitmask of the pivot columns.
    pub fn pivot_mask(&self) -> u64 {
        self.basis
            .iter()
            .fold(0, |m, r| m | (1u64 << r.trailing_zeros()))
    }

    /// The unique representative of `v + U` that vanishes on every pivot column.
    pub fn reduce(&self, v: BitVec) -> BitVec {
        BitVec {
            width: v.width,
            bits: reduce_against(&self.basis, v.bits),
        }
    }

    pub fn contains(&self, v: BitVec) -> bool {
        v.width() == self.ambient_dim && reduce_against(&self.basis, v.bits) == 0
    }

    pub fn contains_subspace(&self, other: &Gf2Subspace) -> bool {
        other.ambient_dim == self.ambient_dim
            && other
                .basis
                .iter()
                .all(|&r| reduce_against(&self.basis, r) == 0)
    }

    /// All `2^dim` vectors of the subspace.
    pub fn elements(&self) -> impl Iterator<Item = BitVec> + '_ {
        let w = self.ambient_dim as u8;
        (0u64..(1u64 << self.dim())).map(move |c| {
            let bits = self
                .basis
                .iter()
                .enumerate()
                .filter(|(i, _)| (c >> i) & 1 == 1)
                .fold(0, |acc, (_, r)| acc ^ r);
            BitVec { width: w, bits }
        })
    }
}

impl fmt::Debug for Gf2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis().map(|b| b.to_string()).collect();
        write!(f, "<{}> in F2^{}", rows.join(", "), self.ambient_dim)
    }
}

fn reduce_against(basis: &[u64], mut x: u64) -> u64 {
    for &r in basis {
        if (x >> r.trailing_zeros()) & 1 == 1 {
            x ^= r;
        }
    }
    x
}

/// Canonical RREF basis of the span of `vectors`.
///
/// An empty input has no width to speak of; pass `ambient_dim` for that case
/// via [`rref_in`].
pub fn rref(vectors: &[BitVec]) -> Result<Gf2Subspace, Gf2Error> {
    let width = vectors.first().map_or(0, BitVec::width);
    rref_in(width, vectors)
}

/// [`rref`] with an explicit ambient dimension.
pub fn rref_in(ambient_dim: usize, vectors: &[BitVec]) -> Result<Gf2Subspace, Gf2Error> {
    if ambient_dim > MAX_WIDTH {
        return Err(Gf2Error::WidthTooLarge(ambient_dim));
    }
    if let Some(v) = vectors.iter().find(|v| v.width() != ambient_dim) {
        return Err(Gf2Error::MixedWidths(ambient_dim, v.width()));
    }
    Ok(Gf2Subspace::from_raw(
        ambient_dim,
        vectors.iter().map(BitVec::bits),
    ))
}

/// Number of `k`-dimensional subspaces of `F_2^n`; zero when `k < 0` or `k > n`.
///
/// Evaluated as a running product where each step multiplies by
/// `2^(n-i) - 1` and then divides by `2^(i+1) - 1`. Every partial product is
/// itself a Gaussian binomial, so each division is exact.
pub fn gaussian_binomial<T: CountScalar>(n: i64, k: i64) -> T {
    if n < 0 || k < 0 || k > n {
        return T::zero();
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    let one = T::one();
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * (T::pow2(n - i) - one.clone());
        acc = acc / (T::pow2(i + 1) - one.clone());
    }
    acc
}

/// `|GL(alpha, 2)|`, the number of automorphisms of `C_2^alpha`.
pub fn gl2_order<T: CountScalar>(alpha: usize) -> T {
    let top = T::pow2(alpha);
    (0..alpha).fold(T::one(), |acc, i| acc * (top.clone() - T::pow2(i)))
}

fn check_cap(m: usize, cap: usize) -> Result<(), Gf2Error> {
    if m > cap {
        return Err(Gf2Error::EnumerationCap { dim: m, cap });
    }
    Ok(())
}

/// Every `k`-dimensional subspace of `F_2^m`, each exactly once.
pub fn enumerate_subspaces(
    m: usize,
    k: usize,
) -> Result<impl Iterator<Item = Gf2Subspace>, Gf2Error> {
    enumerate_subspaces_capped(m, k, DEFAULT_ENUM_CAP)
}

pub fn enumerate_subspaces_capped(
    m: usize,
    k: usize,
    cap: usize,
) -> Result<impl Iterator<Item = Gf2Subspace>, Gf2Error> {
    check_cap(m, cap)?;
    if k > m {
        return Err(Gf2Error::DimensionOutOfRange { k, lo: 0, hi: m });
    }
    Ok(rref_stream(m, k).map(move |basis| Gf2Subspace {
        ambient_dim: m,
        basis,
    }))
}

/// Every `k`-dimensional subspace containing `u`.
pub fn enumerate_oversubspaces(
    u: &Gf2Subspace,
    k: usize,
) -> Result<impl Iterator<Item = Gf2Subspace> + '_, Gf2Error> {
    let m = u.ambient_dim;
    check_cap(m, DEFAULT_ENUM_CAP)?;
    let d = u.dim();
    if k < d || k > m {
        return Err(Gf2Error::DimensionOutOfRange { k, lo: d, hi: m });
    }
    // The non-pivot columns of U coordinatize V/U.
    let free_cols: Vec<usize> = (0..m).filter(|&c| (u.pivot_mask() >> c) & 1 == 0).collect();
    Ok(rref_stream(m - d, k - d).map(move |rows| {
        let lifted = rows.into_iter().map(|r| scatter(r, &free_cols));
        Gf2Subspace::from_raw(m, u.basis.iter().copied().chain(lifted))
    }))
}

fn scatter(bits: u64, cols: &[usize]) -> u64 {
    cols.iter()
        .enumerate()
        .filter(|(i, _)| (bits >> i) & 1 == 1)
        .fold(0, |acc, (_, &c)| acc | (1u64 << c))
}

/// RREF bases of all `k`-subspaces of `F_2^m`: for each pivot set, every row
/// independently takes any values on the non-pivot columns right of its pivot.
fn rref_stream(m: usize, k: usize) -> impl Iterator<Item = Vec<u64>> {
    Combinations::new(m, k).flat_map(move |pivots| {
        let pivot_mask = pivots.iter().fold(0u64, |a, &p| a | (1 << p));
        let frees: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| {
                ((p + 1)..m)
                    .filter(|c| (pivot_mask >> c) & 1 == 0)
                    .collect()
            })
            .collect();
        let total: u32 = frees.iter().map(|f| f.len() as u32).sum();
        (0u64..(1u64 << total)).map(move |mut code| {
            pivots
                .iter()
                .zip(&frees)
                .map(|(&p, free)| {
                    let chunk = code & ((1u64 << free.len()) - 1);
                    code >>= free.len();
                    (1u64 << p) | scatter(chunk, free)
                })
                .collect()
        })
    })
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Count;
    use std::collections::HashSet;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    /// Count k-dimensional subspaces by brute force: distinct spans of all
    /// k-tuples of vectors.
    fn brute_subspace_count(m: usize, k: usize) -> usize {
        let mut seen = HashSet::new();
        fn rec(m: usize, k: usize, start: u64, acc: &mut Vec<u64>, seen: &mut HashSet<Vec<u64>>) {
            if acc.len() == k {
                let s = Gf2Subspace::from_raw(m, acc.iter().copied());
                if s.dim() == k {
                    seen.insert(s.basis);
                }
                return;
            }
            for v in start..(1u64 << m) {
                acc.push(v);
                rec(m, k, v + 1, acc, seen);
                acc.pop();
            }
        }
        rec(m, k, 1, &mut Vec::new(), &mut seen);
        seen.len()
    }

    /// Count invertible alpha x alpha matrices over F2 by enumeration.
    fn brute_gl_order(alpha: usize) -> u64 {
        let cells = alpha * alpha;
        (0u64..(1 << cells))
            .filter(|&code| {
                let rows: Vec<u64> = (0..alpha)
                    .map(|i| (code >> (i * alpha)) & ((1 << alpha) - 1))
                    .collect();
                Gf2Subspace::from_raw(alpha, rows).dim() == alpha
            })
            .count() as u64
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial::<u64>(5, 0), 1);
        assert_eq!(
            gaussian_binomial::<u64>(2, 1),
            brute_subspace_count(2, 1) as u64
        );
        assert_eq!(gaussian_binomial::<u64>(2, 1), 3);
        assert_eq!(brute_subspace_count(4, 2), 35);
        assert_eq!(gaussian_binomial::<Count>(4, 2), Count::from(35u32));
        assert_eq!(gaussian_binomial::<u64>(3, 4), 0);
        assert_eq!(gaussian_binomial::<u64>(3, -1), 0);
        assert_eq!(gaussian_binomial::<u64>(-1, 0), 0);
    }

    #[test]
    fn gaussian_binomial_matches_brute_force_small() {
        for m in 0..=4 {
            for k in 0..=m {
                assert_eq!(
                    gaussian_binomial::<u64>(m as i64, k as i64),
                    brute_subspace_count(m, k) as u64,
                    "m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl2_order::<u64>(0), 1);
        assert_eq!(gl2_order::<u64>(2), 6);
        assert_eq!(brute_gl_order(3), 168);
        assert_eq!(gl2_order::<u64>(3), 168);
        assert_eq!(gl2_order::<u64>(1), brute_gl_order(1));
        assert_eq!(gl2_order::<u64>(2), brute_gl_order(2));
    }

    #[test]
    fn rref_examples() {
        let s = rref(&[bv("110"), bv("011")]).unwrap();
        let basis: Vec<String> = s.basis().map(|b| b.to_string()).collect();
        // Column 1 is the pivot of 011, so 110 reduces to 101.
        assert_eq!(basis, ["101", "011"]);

        let z = rref_in(3, &[]).unwrap();
        assert_eq!(z.dim(), 0);
        let s = rref(&[bv("111"), bv("111")]).unwrap();
        assert_eq!(
            s.basis().map(|b| b.to_string()).collect::<Vec<_>>(),
            ["111"]
        );
        assert_eq!(
            rref(&[bv("11"), bv("110")]),
            Err(Gf2Error::MixedWidths(2, 3))
        );
    }

    #[test]
    fn enumerate_examples() {
        let subs: Vec<String> = enumerate_subspaces(2, 1)
            .unwrap()
            .map(|s| s.basis().next().unwrap().to_string())
            .collect::<Vec<_>>();
        let mut sorted = subs.clone();
        sorted.sort();
        assert_eq!(sorted, ["01", "10", "11"]);

        let full: Vec<_> = enumerate_subspaces(3, 3).unwrap().collect();
        assert_eq!(full, vec![Gf2Subspace::full(3).unwrap()]);
        assert_eq!(enumerate_subspaces(4, 2).unwrap().count(), 35);
        assert!(matches!(
            enumerate_subspaces(25, 1),
            Err(Gf2Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn oversubspace_examples() {
        let z = Gf2Subspace::zero(3).unwrap();
        assert_eq!(enumerate_oversubspaces(&z, 1).unwrap().count(), 7);
        let f = Gf2Subspace::full(3).unwrap();
        let only: Vec<_> = enumerate_oversubspaces(&f, 3).unwrap().collect();
        assert_eq!(only, vec![f.clone()]);
        let line = rref(&[bv("011")]).unwrap();
        let overs: Vec<_> = enumerate_oversubspaces(&line, 2).unwrap().collect();
        assert_eq!(overs.len(), 3);
        assert!(overs
            .iter()
            .all(|o| o.contains_subspace(&line) && o.dim() == 2));
        assert!(enumerate_oversubspaces(&f, 2).is_err());
    }

    #[test]
    fn enumeration_matches_binomial_and_is_canonical() {
        for m in 0..=8 {
            for k in 0..=m {
                let all: Vec<_> = enumerate_subspaces(m, k).unwrap().collect();
                assert_eq!(
                    all.len() as u64,
                    gaussian_binomial::<u64>(m as i64, k as i64)
                );
                if m <= 6 {
                    let distinct: HashSet<_> = all.iter().cloned().collect();
                    assert_eq!(distinct.len(), all.len());
                    for s in &all {
                        let again = rref_in(m, &s.basis().collect::<Vec<_>>()).unwrap();
                        assert_eq!(&again, s);
                    }
                }
            }
        }
    }

    #[test]
    fn oversubspace_counts() {
        for m in 1..=6 {
            for u in enumerate_subspaces(m, 2.min(m)).unwrap().take(5) {
                for k in u.dim()..=m {
                    let overs: Vec<_> = enumerate_oversubspaces(&u, k).unwrap().collect();
                    assert_eq!(
                        overs.len() as u64,
                        gaussian_binomial::<u64>((m - u.dim()) as i64, (k - u.dim()) as i64)
                    );
                    let distinct: HashSet<_> = overs.iter().collect();
                    assert_eq!(distinct.len(), overs.len());
                }
            }
        }
    }
}
