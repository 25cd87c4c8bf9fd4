//! Closed-form subgroup counts.
//!
//! Two families have explicit `s_k` formulas: `D8 x C2^(n-3)` and
//! `C4 x C2 x C2^(n-3)`. Groups with a Frattini subgroup of order 2 get their
//! elementary abelian section census from the `e_i` profile alone, and
//! Goursat counting lifts any section census of `A` to `s_k(A x C2^m)`.

use std::fmt;

use thiserror::Error;

use crate::gf2::{gaussian_binomial, gl2_order};
use crate::scalar::CountScalar;
use crate::tables::{CensusTable, EProfile, SectionCensus, SectionClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("closed forms need n >= 3, got {0}")]
    NTooSmall(u32),
    #[error("k = {k} is outside 0..={max}")]
    KOutOfRange { k: u32, max: u32 },
    #[error("census sizes differ: n = {0} vs n = {1}")]
    MismatchedN(u32, u32),
    #[error("section census is missing cell ({alpha}, {beta})")]
    IncompleteSections { alpha: u32, beta: u32 },
}

/// The two reference families of the abelian comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `D8 x C2^(n-3)`.
    D8,
    /// `C4 x C2 x C2^(n-3)`.
    C4C2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D8 => "D8",
            Family::C4C2 => "C4C2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormParams {
    pub family: Family,
    pub n: u32,
    pub k: u32,
}

impl ClosedFormParams {
    pub fn new(family: Family, n: u32, k: u32) -> Result<Self, FormulaError> {
        if n < 3 {
            return Err(FormulaError::NTooSmall(n));
        }
        if k > n {
            return Err(FormulaError::KOutOfRange { k, max: n });
        }
        Ok(Self { family, n, k })
    }
}

fn b<T: CountScalar>(n: u32, k: i64) -> T {
    gaussian_binomial(n as i64, k)
}

/// `2^e * x`, skipping the power when `x = 0` so that negative exponents
/// attached to vanishing binomials never need evaluating.
fn scaled<T: CountScalar>(e: i64, x: T) -> T {
    if x.is_zero() {
        return x;
    }
    let p = T::pow2_signed(e).expect("nonzero binomial forces a nonnegative exponent");
    p * x
}

/// The four aligned terms of the closed form, in order of the binomial
/// `binom(n-3, k - j)` they multiply, `j = 0..4`.
pub fn sk_terms<T: CountScalar>(p: ClosedFormParams) -> [T; 4] {
    let (n, k) = (p.n, p.k as i64);
    let m = n - 3;
    let nk = n as i64 - k;
    let first = b(m, k);
    let fourth = scaled(2 * nk, b(m, k - 3));
    match p.family {
        Family::D8 => [
            first,
            scaled(nk - 2, b::<T>(m, k - 1) * T::from(5)),
            {
                let bin = b::<T>(m, k - 2);
                if bin.is_zero() {
                    bin
                } else {
                    scaled(nk - 1, (T::pow2(nk as usize) + T::one()) * bin)
                }
            },
            fourth,
        ],
        Family::C4C2 => [
            first,
            scaled(nk - 2, b::<T>(m, k - 1) * T::from(3)),
            {
                let bin = b::<T>(m, k - 2);
                scaled(2 * nk - 2, bin.clone()) + scaled(nk, bin)
            },
            fourth,
        ],
    }
}

pub fn sk_closed_form<T: CountScalar>(p: ClosedFormParams) -> T {
    sk_terms::<T>(p).into_iter().fold(T::zero(), |a, b| a + b)
}

/// The full closed-form census of a family at order `2^n`.
pub fn family_census<T: CountScalar>(
    family: Family,
    n: u32,
) -> Result<CensusTable<T>, FormulaError> {
    ClosedFormParams::new(family, n, 0)?;
    Ok(CensusTable::from_fn(n, |k| {
        sk_closed_form(ClosedFormParams { family, n, k })
    }))
}

/// Which part `A2` of `C4 x C2` a Goursat quintuple uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `A2 = 1`.
    A,
    /// `A2` of order 2.
    B,
    /// `A2` cyclic of order 4.
    C,
    /// `A2` the Klein four subgroup.
    D,
    /// `A2` the whole group.
    E,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::A, Case::B, Case::C, Case::D, Case::E];
}

/// Subgroups of `C4 x C2 x C2^(n-3)` of order `2^k` in one case.
pub fn case_term<T: CountScalar>(case: Case, n: u32, k: u32) -> Result<T, FormulaError> {
    let p = ClosedFormParams::new(Family::C4C2, n, k.min(n))?;
    if k > n {
        return Ok(T::zero());
    }
    let (m, k, nk) = (p.n - 3, k as i64, p.n as i64 - k as i64);
    Ok(match case {
        Case::A => b(m, k),
        Case::B => scaled(nk - 2, b::<T>(m, k - 1) * T::from(3)),
        Case::C => scaled(nk, b(m, k - 2)),
        Case::D => scaled(2 * nk - 2, b(m, k - 2)),
        Case::E => scaled(2 * nk, b(m, k - 3)),
    })
}

/// `|L(G)|` from the `e_i` of an extraspecial group of order `2^(2r+1)`,
/// or of an almost extraspecial group of order `2^(2r+2)` when `almost`.
pub fn lattice_size_extraspecial<T: CountScalar>(r: u32, e: &EProfile<T>, almost: bool) -> T {
    let d = 2 * r + almost as u32;
    let over_frattini = (0..=d as i64).map(|i| gaussian_binomial::<T>(d as i64, i));
    let complements = (1..=r as usize).map(|i| e.get(i as i64 + 1) * T::pow2(i));
    over_frattini
        .chain(complements)
        .fold(T::one(), |a, b| a + b)
}

/// Elementary abelian section counts of a group of order `2^n` whose
/// Frattini subgroup `F` has order 2, split by [`SectionClass`].
///
/// * bottom over `F`: nested subspaces of `G/F`, `binom(n-1, β-1) binom(n-β, α)`
/// * trivial bottom: `e_α + e_(α+1) 2^α`
/// * top avoiding `F`: `e_(α+β+1) 2^(α+β) binom(α+β, β)`
/// * `F` in the top only: `e_(α+β) 2^β binom(α+β-1, β)`
pub fn section_class_counts<T: CountScalar>(
    e: &EProfile<T>,
    n: u32,
    alpha: u32,
    beta: u32,
) -> [T; 4] {
    let (a, bt) = (alpha as i64, beta as i64);
    let mut out: [T; 4] = std::array::from_fn(|_| T::zero());
    if alpha + beta > n {
        return out;
    }
    if beta == 0 {
        out[SectionClass::TrivialBottom.index()] =
            e.get(a) + e.get(a + 1) * T::pow2(alpha as usize);
        return out;
    }
    out[SectionClass::OverFrattini.index()] =
        gaussian_binomial::<T>(n as i64 - 1, bt - 1) * gaussian_binomial(n as i64 - bt, a);
    out[SectionClass::AvoidsFrattini.index()] =
        e.get(a + bt + 1) * T::pow2((alpha + beta) as usize) * gaussian_binomial(a + bt, bt);
    out[SectionClass::StraddlesFrattini.index()] =
        e.get(a + bt) * T::pow2(beta as usize) * gaussian_binomial(a + bt - 1, bt);
    out
}

/// The full split section census from an `e_i` profile.
pub fn section_census_formulas<T: CountScalar>(e: &EProfile<T>, n: u32) -> SectionCensus<T> {
    let mut out = SectionCensus::zeros(n, true);
    for alpha in 0..=n {
        for beta in 0..=n - alpha {
            for (c, count) in SectionClass::ALL
                .into_iter()
                .zip(section_class_counts(e, n, alpha, beta))
            {
                out.add(alpha, beta, Some(c), count);
            }
        }
    }
    out
}

/// `s_k(A x C2^m)` from the elementary abelian section census of `A`.
///
/// A subgroup is a quintuple `(A1, A2, B1, B2, φ)`; only elementary abelian
/// `A2/A1 ≅ C2^α` can match a section of `C2^m`, and `|A2||B1| = 2^k`.
pub fn goursat_count<T: CountScalar>(
    sections: &SectionCensus<T>,
    m: u32,
    k: u32,
) -> Result<T, FormulaError> {
    let q = sections.n();
    if k > q + m {
        return Err(FormulaError::KOutOfRange { k, max: q + m });
    }
    let mut total = T::zero();
    for (alpha, beta) in sections.cells() {
        let b1 = k as i64 - alpha as i64 - beta as i64;
        if b1 < 0 || b1 + alpha as i64 > m as i64 {
            continue;
        }
        let s = sections.get(alpha, beta);
        if s.is_zero() {
            continue;
        }
        total = total
            + s * gl2_order::<T>(alpha as usize)
                * gaussian_binomial(m as i64, b1)
                * gaussian_binomial(m as i64 - b1, alpha as i64);
    }
    Ok(total)
}

pub fn goursat_census<T: CountScalar>(sections: &SectionCensus<T>, m: u32) -> CensusTable<T> {
    let n = sections.n() + m;
    CensusTable::from_fn(n, |k| {
        goursat_count(sections, m, k).expect("k within range")
    })
}

/// Result of comparing two censuses entry by entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    pub first_violation: Option<u32>,
}

impl Dominance {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Whether `left.s(k) <= right.s(k)` for every `k`.
pub fn dominance_check<T: CountScalar>(
    left: &CensusTable<T>,
    right: &CensusTable<T>,
) -> Result<Dominance, FormulaError> {
    if left.n() != right.n() {
        return Err(FormulaError::MismatchedN(left.n(), right.n()));
    }
    Ok(Dominance {
        first_violation: (0..=left.n()).find(|&k| left.get(k) > right.get(k)),
    })
}
