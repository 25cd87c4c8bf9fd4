//! Count tables shared by the oracle and the formula paths.

use crate::scalar::CountScalar;
use crate::Count;

/// `s_k` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable<T = Count> {
    n: u32,
    s: Vec<T>,
}

impl<T: CountScalar> CensusTable<T> {
    /// `s` must have exactly `n + 1` entries.
    pub fn new(n: u32, s: Vec<T>) -> Self {
        assert_eq!(s.len(), n as usize + 1, "census needs n + 1 entries");
        Self { n, s }
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> T) -> Self {
        Self::new(n, (0..=n).map(&mut f).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, k: u32) -> T {
        self.s.get(k as usize).cloned().unwrap_or_else(T::zero)
    }

    pub fn counts(&self) -> &[T] {
        &self.s
    }

    /// `|L(G)|`.
    pub fn total(&self) -> T {
        self.s.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn map<U: CountScalar>(&self, f: impl Fn(&T) -> U) -> CensusTable<U> {
        CensusTable {
            n: self.n,
            s: self.s.iter().map(f).collect(),
        }
    }
}

/// `e_i`, the number of elementary abelian subgroups of order `2^i` that
/// contain the Frattini subgroup (assumed of order 2).
///
/// By convention `e_0 = 0` and `e_1 = 1` (the Frattini subgroup itself), and
/// indices past the stored range read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EProfile<T = Count> {
    e: Vec<T>,
}

impl<T: CountScalar> EProfile<T> {
    /// From `e_1, e_2, ...`; `e_0 = 0` is prepended.
    pub fn from_e1(values: impl IntoIterator<Item = T>) -> Self {
        let mut e = vec![T::zero()];
        e.extend(values);
        Self { e }
    }

    /// From `e_2, e_3, ...`; `e_0 = 0` and `e_1 = 1` are prepended.
    pub fn from_e2(values: impl IntoIterator<Item = T>) -> Self {
        Self::from_e1(std::iter::once(T::one()).chain(values))
    }

    pub fn get(&self, i: i64) -> T {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.e.get(i).cloned())
            .unwrap_or_else(T::zero)
    }

    /// Largest `i` with `e_i != 0`.
    pub fn max_index(&self) -> usize {
        self.e.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn values(&self) -> &[T] {
        &self.e
    }
}

/// The four classes of elementary abelian sections `H2/H1` relative to a
/// Frattini subgroup `F` of order 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionClass {
    /// `F <= H1`.
    OverFrattini,
    /// `H1 = 1`.
    TrivialBottom,
    /// `F` not in `H2`, `H1 != 1`.
    AvoidsFrattini,
    /// `F <= H2`, `F` not in `H1`, `H1 != 1`.
    StraddlesFrattini,
}

impl SectionClass {
    pub const ALL: [SectionClass; 4] = [
        SectionClass::OverFrattini,
        SectionClass::TrivialBottom,
        SectionClass::AvoidsFrattini,
        SectionClass::StraddlesFrattini,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// 1-based class number as the classes are conventionally numbered.
    pub fn number(self) -> usize {
        self.index() + 1
    }

    pub fn classify(frattini_in_bottom: bool, bottom_trivial: bool, frattini_in_top: bool) -> Self {
        if bottom_trivial {
            SectionClass::TrivialBottom
        } else if frattini_in_bottom {
            SectionClass::OverFrattini
        } else if frattini_in_top {
            SectionClass::StraddlesFrattini
        } else {
            SectionClass::AvoidsFrattini
        }
    }
}

/// Counts of elementary abelian sections `H2/H1 ~ C_2^alpha` with
/// `|H1| = 2^beta`, indexed by `(alpha, beta)` with `alpha + beta <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCensus<T = Count> {
    n: u32,
    total: Vec<Vec<T>>,
    classes: Option<Vec<Vec<[T; 4]>>>,
}

impl<T: CountScalar> SectionCensus<T> {
    pub fn zeros(n: u32, split: bool) -> Self {
        let grid = |_| {
            (0..=n)
                .map(|a| vec![T::zero(); (n - a) as usize + 1])
                .collect::<Vec<_>>()
        };
        Self {
            n,
            total: grid(()),
            classes: split.then(|| {
                (0..=n)
                    .map(|a| {
                        (0..=(n - a))
                            .map(|_| std::array::from_fn(|_| T::zero()))
                            .collect()
                    })
                    .collect()
            }),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_split(&self) -> bool {
        self.classes.is_some()
    }

    pub fn get(&self, alpha: u32, beta: u32) -> T {
        self.total
            .get(alpha as usize)
            .and_then(|row| row.get(beta as usize))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn class(&self, alpha: u32, beta: u32, class: SectionClass) -> Option<T> {
        let classes = self.classes.as_ref()?;
        Some(
            classes
                .get(alpha as usize)
                .and_then(|row| row.get(beta as usize))
                .map(|c| c[class.index()].clone())
                .unwrap_or_else(T::zero),
        )
    }

    pub fn add(&mut self, alpha: u32, beta: u32, class: Option<SectionClass>, count: T) {
        let (a, b) = (alpha as usize, beta as usize);
        let cell = &mut self.total[a][b];
        *cell = cell.clone() + count.clone();
        if let (Some(classes), Some(c)) = (self.classes.as_mut(), class) {
            let cell = &mut classes[a][b][c.index()];
            *cell = cell.clone() + count;
        }
    }

    /// All `(alpha, beta)` cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..=self.n).flat_map(move |a| (0..=(self.n - a)).map(move |b| (a, b)))
    }

    pub fn map<U: CountScalar>(&self, f: impl Fn(&T) -> U) -> SectionCensus<U> {
        SectionCensus {
            n: self.n,
            total: self
                .total
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
            classes: self.classes.as_ref().map(|cl| {
                cl.iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| std::array::from_fn(|i| f(&c[i])))
                            .collect()
                    })
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eprofile_conventions() {
        let e = EProfile::<u64>::from_e2([9, 6]);
        assert_eq!(e.get(0), 0);
        assert_eq!(e.get(1), 1);
        assert_eq!(e.get(2), 9);
        assert_eq!(e.get(3), 6);
        assert_eq!(e.get(4), 0);
        assert_eq!(e.get(-1), 0);
        assert_eq!(e.max_index(), 3);
    }

    #[test]
    fn section_class_partition() {
        use SectionClass::*;
        assert_eq!(SectionClass::classify(false, true, false), TrivialBottom);
        assert_eq!(SectionClass::classify(true, false, true), OverFrattini);
        assert_eq!(
            SectionClass::classify(false, false, true),
            StraddlesFrattini
        );
        assert_eq!(SectionClass::classify(false, false, false), AvoidsFrattini);
        assert_eq!(OverFrattini.number(), 1);
        assert_eq!(StraddlesFrattini.number(), 4);
    }

    #[test]
    fn census_totals() {
        let c = CensusTable::<u64>::new(3, vec![1, 5, 3, 1]);
        assert_eq!(c.total(), 10);
        assert_eq!(c.get(7), 0);
        let mut s = SectionCensus::<u64>::zeros(2, true);
        s.add(1, 1, Some(SectionClass::OverFrattini), 3);
        assert_eq!(s.get(1, 1), 3);
        assert_eq!(s.class(1, 1, SectionClass::OverFrattini), Some(3));
        assert_eq!(s.cells().count(), 6);
    }
}
