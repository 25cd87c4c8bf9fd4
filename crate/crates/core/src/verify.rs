//! Instance-level verification of the dominance inequalities over
//! constructible families of 2-groups.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::engine::{fastest, EngineError, Method};
use crate::formulas::{dominance_check, family_census, goursat_census, Family};
use crate::group::{build, GroupSpec, GroupTable};
use crate::oracle::{cyclic_census, enumerate_lattice_capped, section_census_capped};
use crate::tables::CensusTable;

/// Stated at the top of every report.
pub const REPORT_HEADER: &str =
    "Instances cover constructible families only (abelian partition groups, \
generalized extraspecial products, central products with cyclic and dihedral factors); \
no claim is made for 2-groups outside these families.";

/// Which inequality to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// `s_k(G) <= s_k(D8 x C2^(n-3))` for every `k`.
    Subgroups,
    /// `s_k(G) <= s_k(G/M x C2^r)` for every normal `M` of order `2^r`.
    Quotients,
    /// `|L_1(G)| <= 7 * 2^(n-3)`, with equality only for `D8 x C2^(n-3)`.
    CyclicSubgroups,
    /// `|L(G)| <= |L(D8 x C2^(n-3))|`.
    LatticeSize,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::Subgroups,
        Check::Quotients,
        Check::CyclicSubgroups,
        Check::LatticeSize,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Subgroups => "subgroups",
            Check::Quotients => "quotients",
            Check::CyclicSubgroups => "cyclic",
            Check::LatticeSize => "lattice",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InstanceFamily {
    /// Direct products of cyclic groups, at least one of order >= 4.
    Abelian,
    /// `E x C2^a` and `(E * C4) x C2^a` with `E` extraspecial.
    GeneralizedExtraspecial,
    /// Products built with `C8`, `C16` or non-central amalgamations.
    CentralProducts,
}

impl InstanceFamily {
    pub const ALL: [InstanceFamily; 3] = [
        InstanceFamily::Abelian,
        InstanceFamily::GeneralizedExtraspecial,
        InstanceFamily::CentralProducts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceFamily::Abelian => "abelian",
            InstanceFamily::GeneralizedExtraspecial => "genextra",
            InstanceFamily::CentralProducts => "central-products",
        }
    }
}

impl fmt::Display for InstanceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InstanceFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InstanceFamily::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub spec: GroupSpec,
    pub n: u32,
    pub family: InstanceFamily,
}

impl Instance {
    pub fn label(&self) -> String {
        self.spec.to_string()
    }
}

fn pad(base: GroupSpec, n: u32) -> Option<GroupSpec> {
    let q = base.log2_order();
    (q <= n).then(|| base.times_elementary(n - q))
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn extraspecial(r: u32, minus: bool) -> GroupSpec {
    match (minus, r) {
        (false, 1) => GroupSpec::Dihedral8,
        (false, r) => GroupSpec::central_power(GroupSpec::Dihedral8, r),
        (true, 1) => GroupSpec::Quaternion8,
        (true, 2) => GroupSpec::central(GroupSpec::Quaternion8, GroupSpec::Dihedral8),
        (true, r) => GroupSpec::central(
            GroupSpec::Quaternion8,
            GroupSpec::central_power(GroupSpec::Dihedral8, r - 1),
        ),
    }
}

/// Groups of order `2^n` in a family, in a fixed order.
pub fn instances(family: InstanceFamily, n: u32) -> Vec<Instance> {
    let specs: Vec<GroupSpec> = match family {
        InstanceFamily::Abelian => partitions(n, n)
            .into_iter()
            .filter(|p| p[0] >= 2)
            .map(|p| {
                let ones = p.iter().filter(|&&x| x == 1).count() as u32;
                let cyc = p.iter().filter(|&&x| x >= 2).map(|&x| GroupSpec::Cyclic(x));
                let base = cyc.reduce(GroupSpec::direct).expect("a part >= 2");
                base.times_elementary(ones)
            })
            .collect(),
        InstanceFamily::GeneralizedExtraspecial => {
            let mut out = Vec::new();
            for r in 1..=n.saturating_sub(1) / 2 {
                for minus in [false, true] {
                    out.extend(pad(extraspecial(r, minus), n));
                }
                out.extend(pad(
                    GroupSpec::central(extraspecial(r, false), GroupSpec::Cyclic(2)),
                    n,
                ));
            }
            out
        }
        InstanceFamily::CentralProducts => {
            use GroupSpec::{Cyclic, Dihedral8 as D8, Quaternion8 as Q8};
            let bases = [
                GroupSpec::central(D8, Cyclic(3)),
                GroupSpec::central(D8, Cyclic(4)),
                GroupSpec::central(GroupSpec::central(D8, D8), Cyclic(3)),
                GroupSpec::direct(D8, Cyclic(2)),
                GroupSpec::direct(Q8, Cyclic(2)),
                GroupSpec::direct(GroupSpec::central(D8, Cyclic(2)), Cyclic(2)),
                GroupSpec::direct(D8, Cyclic(3)),
                GroupSpec::direct(D8, D8),
                GroupSpec::direct(D8, Q8),
                GroupSpec::direct(Q8, Q8),
            ];
            bases.into_iter().filter_map(|b| pad(b, n)).collect()
        }
    };
    specs
        .into_iter()
        .map(|spec| Instance { spec, n, family })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The group violates the hypothesis (elementary abelian), so the
    /// inequality is not expected to hold.
    OutOfHypothesis,
    Skipped(String),
    Error(String),
}

impl Outcome {
    pub fn as_str(&self) -> &str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::OutOfHypothesis => "out-of-hypothesis",
            Outcome::Skipped(_) => "skipped",
            Outcome::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct InstanceResult {
    pub label: String,
    pub n: u32,
    pub family: Option<InstanceFamily>,
    pub method: Option<Method>,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub check: Check,
    pub header: &'static str,
    pub results: Vec<InstanceResult>,
}

impl VerifyReport {
    /// No instance failed or errored.
    pub fn passed(&self) -> bool {
        self.results
            .iter()
            .all(|r| !matches!(r.outcome, Outcome::Fail | Outcome::Error(_)))
    }

    pub fn count(&self, outcome: &str) -> usize {
        self.results
            .iter()
            .filter(|r| r.outcome.as_str() == outcome)
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n: RangeInclusive<u32>,
    pub families: Vec<InstanceFamily>,
    pub oracle_cap: usize,
    /// Also run `C2^n` through the check, expecting the hypothesis guard to fire.
    pub include_elementary: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n: 3..=6,
            families: InstanceFamily::ALL.to_vec(),
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
            include_elementary: false,
        }
    }
}

struct Job {
    spec: GroupSpec,
    n: u32,
    family: Option<InstanceFamily>,
}

pub fn run(check: Check, opts: &VerifyOptions) -> VerifyReport {
    let mut jobs = Vec::new();
    for n in opts.n.clone() {
        if opts.include_elementary {
            jobs.push(Job {
                spec: GroupSpec::Elementary(n),
                n,
                family: None,
            });
        }
        for &f in &opts.families {
            jobs.extend(instances(f, n).into_iter().map(|i| Job {
                spec: i.spec,
                n: i.n,
                family: Some(i.family),
            }));
        }
    }
    let results = jobs
        .par_iter()
        .map(|job| {
            let mut r = InstanceResult {
                label: job.spec.to_string(),
                n: job.n,
                family: job.family,
                method: None,
                outcome: Outcome::Pass,
                detail: String::new(),
            };
            if matches!(job.spec, GroupSpec::Elementary(_)) || job.n < 3 {
                r.outcome = Outcome::OutOfHypothesis;
                r.detail = "elementary abelian or order below 8".into();
                return r;
            }
            let res = match check {
                Check::Subgroups => check_subgroups(&job.spec, opts, &mut r),
                Check::LatticeSize => check_lattice(&job.spec, opts, &mut r),
                Check::CyclicSubgroups => check_cyclic(&job.spec, &mut r),
                Check::Quotients => check_quotients(&job.spec, opts, &mut r),
            };
            if let Err(e) = res {
                r.outcome = Outcome::Error(e.to_string());
                r.detail = e.to_string();
            }
            r
        })
        .collect();
    VerifyReport {
        check,
        header: REPORT_HEADER,
        results,
    }
}

fn reference(n: u32) -> Result<CensusTable, EngineError> {
    Ok(family_census(Family::D8, n)?)
}

fn check_subgroups(
    spec: &GroupSpec,
    opts: &VerifyOptions,
    r: &mut InstanceResult,
) -> Result<(), EngineError> {
    let got = fastest(spec, opts.oracle_cap)?;
    r.method = Some(got.method);
    let dom = dominance_check(&got.census, &reference(spec.log2_order())?)?;
    if let Some(k) = dom.first_violation {
        r.outcome = Outcome::Fail;
        r.detail = format!("s_{k} exceeds the D8 reference");
    } else {
        r.detail = got.detail;
    }
    Ok(())
}

fn check_lattice(
    spec: &GroupSpec,
    opts: &VerifyOptions,
    r: &mut InstanceResult,
) -> Result<(), EngineError> {
    let got = fastest(spec, opts.oracle_cap)?;
    r.method = Some(got.method);
    let (ours, theirs) = (got.census.total(), reference(spec.log2_order())?.total());
    r.detail = format!("|L(G)| = {ours}, reference {theirs}");
    if ours > theirs {
        r.outcome = Outcome::Fail;
    }
    Ok(())
}

/// Whether a spec is literally `D8 x C2^m` after folding elementary factors.
fn is_reference(spec: &GroupSpec) -> bool {
    crate::engine::split_elementary(spec).base == GroupSpec::Dihedral8
}

fn check_cyclic(spec: &GroupSpec, r: &mut InstanceResult) -> Result<(), EngineError> {
    let t = build(spec)?;
    r.method = Some(Method::Oracle);
    let n = t.log2_order();
    let total = cyclic_census(&t).total();
    let bound = 7u64 << (n - 3);
    let reference = is_reference(spec);
    r.detail = format!("|L_1(G)| = {total}, bound {bound}");
    if total > bound || (total == bound) != reference {
        r.outcome = Outcome::Fail;
        if total == bound {
            r.detail.push_str(", equality outside the reference family");
        } else if reference {
            r.detail.push_str(", reference group misses equality");
        }
    }
    Ok(())
}

fn check_quotients(
    spec: &GroupSpec,
    opts: &VerifyOptions,
    r: &mut InstanceResult,
) -> Result<(), EngineError> {
    if spec.log2_order() > opts.oracle_cap.ilog2() {
        r.outcome = Outcome::Skipped(format!("order above the oracle cap {}", opts.oracle_cap));
        r.detail = "above oracle cap".into();
        return Ok(());
    }
    let t = build(spec)?;
    r.method = Some(Method::Oracle);
    let lat = enumerate_lattice_capped(&t, opts.oracle_cap)?;
    let own = crate::oracle::census_of(&lat);
    let normals: Vec<_> = lat
        .iter()
        .filter(|(ix, _)| ix.0 > 0 && lat.is_normal(*ix))
        .map(|(_, h)| h.clone())
        .collect();
    let mut checked = 0;
    for m in &normals {
        let q = t.quotient(m)?;
        let sections = section_census_capped(&q.group, false, opts.oracle_cap)?;
        let bound = goursat_census(&sections, m.log2_len());
        if let Some(k) = dominance_check(&own, &bound)?.first_violation {
            r.outcome = Outcome::Fail;
            r.detail = format!(
                "s_{k} exceeds s_{k}(G/M x C2^{}) for |M| = {}",
                m.log2_len(),
                m.len()
            );
            return Ok(());
        }
        checked += 1;
    }
    r.detail = format!("{checked} normal subgroups");
    Ok(())
}

/// `|L_1|` relation for exponent-4 groups: `2^n = 1 + c_2 + 2 c_4`.
pub fn exponent_four_identity(t: &GroupTable) -> Option<bool> {
    if t.exponent() != 4 {
        return None;
    }
    let c = cyclic_census(t);
    Some(t.order() as u64 == 1 + c.c(2) + 2 * c.c(4))
}
