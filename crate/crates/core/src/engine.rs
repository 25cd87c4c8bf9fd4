//! Picks a counting path for a group spec and runs it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formulas::{
    family_census, goursat_census, section_census_formulas, Family, FormulaError,
};
use crate::gf2::gaussian_binomial;
use crate::group::{build, GroupError, GroupSpec};
use crate::oracle::{census_capped, section_census_capped, OracleError, DEFAULT_ORACLE_CAP};
use crate::quadform::{arf_classify, e_profile, form_of_group, FormType, QuadformError};
use crate::tables::{CensusTable, SectionCensus};
use crate::Count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Full lattice enumeration.
    Oracle,
    /// Closed forms, or `e_i`-driven section formulas lifted by Goursat.
    Formula,
    /// Enumerated section census of the non-elementary part, lifted by Goursat.
    Goursat,
    /// Oracle up to the cap, otherwise the cheapest applicable path.
    Auto,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Formula => "formula",
            Method::Goursat => "goursat",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "formula" => Ok(Method::Formula),
            "goursat" => Ok(Method::Goursat),
            "auto" => Ok(Method::Auto),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("method {method} does not apply to {label}: {reason}")]
    Infeasible {
        method: Method,
        label: String,
        reason: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Quadform(#[from] QuadformError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// `spec = base x C2^m` with every `C2` direct factor moved into `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub base: GroupSpec,
    pub m: u32,
}

pub fn split_elementary(spec: &GroupSpec) -> Decomposition {
    fn walk(s: &GroupSpec, rest: &mut Vec<GroupSpec>, m: &mut u32) {
        match s {
            GroupSpec::Direct(a, b) => {
                walk(a, rest, m);
                walk(b, rest, m);
            }
            GroupSpec::DirectPower(x, k) => {
                for _ in 0..*k {
                    walk(x, rest, m);
                }
            }
            GroupSpec::Elementary(j) => *m += j,
            GroupSpec::Cyclic(1) => *m += 1,
            other => rest.push(other.clone()),
        }
    }
    let (mut rest, mut m) = (Vec::new(), 0);
    walk(spec, &mut rest, &mut m);
    let base = rest
        .into_iter()
        .reduce(GroupSpec::direct)
        .unwrap_or(GroupSpec::Elementary(0));
    Decomposition { base, m }
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub census: CensusTable,
    /// The path actually taken; never [`Method::Auto`].
    pub method: Method,
    /// Short description of the path, e.g. the form type used.
    pub detail: String,
}

fn infeasible(method: Method, spec: &GroupSpec, reason: impl Into<String>) -> EngineError {
    EngineError::Infeasible {
        method,
        label: spec.to_string(),
        reason: reason.into(),
    }
}

/// Form type of a group with a central Frattini subgroup of order 2.
pub fn form_type_of(spec: &GroupSpec) -> Result<FormType, EngineError> {
    let t = build(spec)?;
    Ok(arf_classify(&form_of_group(&t)?))
}

fn formula_census(spec: &GroupSpec) -> Result<CensusResult, EngineError> {
    let Decomposition { base, m } = split_elementary(spec);
    let n = spec.log2_order();
    let done = |census, detail: String| {
        Ok(CensusResult {
            census,
            method: Method::Formula,
            detail,
        })
    };
    match &base {
        GroupSpec::Elementary(0) => {
            return done(
                CensusTable::from_fn(n, |k| gaussian_binomial(n as i64, k as i64)),
                "elementary abelian".into(),
            )
        }
        GroupSpec::Dihedral8 => {
            return done(family_census(Family::D8, n)?, "closed form D8".into())
        }
        GroupSpec::Cyclic(2) if m >= 1 => {
            return done(family_census(Family::C4C2, n)?, "closed form C4C2".into())
        }
        _ => {}
    }
    let ty = form_type_of(&base).map_err(|e| match e {
        EngineError::Quadform(q) => infeasible(Method::Formula, spec, q.to_string()),
        other => other,
    })?;
    let sections = section_census_formulas(&e_profile::<Count>(ty), base.log2_order());
    done(
        goursat_census(&sections, m),
        format!("form {ty}, Goursat m={m}"),
    )
}

/// Section census of `base` by enumeration.
pub fn enumerated_sections(
    base: &GroupSpec,
    oracle_cap: usize,
) -> Result<SectionCensus, EngineError> {
    let t = build(base)?;
    Ok(section_census_capped(&t, false, oracle_cap)?)
}

fn goursat_path(spec: &GroupSpec, oracle_cap: usize) -> Result<CensusResult, EngineError> {
    let Decomposition { base, m } = split_elementary(spec);
    if base.log2_order() > oracle_cap.ilog2() {
        return Err(infeasible(
            Method::Goursat,
            spec,
            format!("non-elementary part {base} exceeds the oracle cap {oracle_cap}"),
        ));
    }
    let sections = enumerated_sections(&base, oracle_cap)?;
    Ok(CensusResult {
        census: goursat_census(&sections, m),
        method: Method::Goursat,
        detail: format!("sections of {base}, m={m}"),
    })
}

fn oracle_path(spec: &GroupSpec, oracle_cap: usize) -> Result<CensusResult, EngineError> {
    let t = build(spec)?;
    Ok(CensusResult {
        census: census_capped(&t, oracle_cap)?,
        method: Method::Oracle,
        detail: "lattice enumeration".into(),
    })
}

pub fn compute_census(
    spec: &GroupSpec,
    method: Method,
    oracle_cap: usize,
) -> Result<CensusResult, EngineError> {
    match method {
        Method::Oracle => oracle_path(spec, oracle_cap),
        Method::Formula => formula_census(spec),
        Method::Goursat => goursat_path(spec, oracle_cap),
        Method::Auto => {
            if spec.log2_order() <= DEFAULT_ORACLE_CAP.min(oracle_cap).ilog2() {
                oracle_path(spec, oracle_cap)
            } else {
                fastest(spec, oracle_cap)
            }
        }
    }
}

/// Formula when it applies, otherwise Goursat, otherwise the oracle.
pub fn fastest(spec: &GroupSpec, oracle_cap: usize) -> Result<CensusResult, EngineError> {
    match formula_census(spec) {
        Ok(r) => Ok(r),
        Err(EngineError::Infeasible { .. }) => match goursat_path(spec, oracle_cap) {
            Err(EngineError::Infeasible { .. }) => oracle_path(spec, oracle_cap),
            other => other,
        },
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn splits_elementary_factors() {
        let d = split_elementary(&spec("D8 x C2 x C4 x C2^3"));
        assert_eq!(d.m, 4);
        assert_eq!(d.base, spec("D8 x C4"));
        let d = split_elementary(&spec("C2^5"));
        assert_eq!((d.base, d.m), (GroupSpec::Elementary(0), 5));
        let d = split_elementary(&spec("(Q8 x C2)^2"));
        assert_eq!((d.base, d.m), (spec("Q8 x Q8"), 2));
    }

    #[test]
    fn methods_agree_on_small_groups() {
        for s in [
            "D8 x C2^2",
            "C4 x C2^3",
            "Q8 * D8 x C2",
            "D8 * C4 x C2",
            "C2^4",
            "Q8 x C2",
        ] {
            let sp = spec(s);
            let o = compute_census(&sp, Method::Oracle, 256).unwrap();
            let f = compute_census(&sp, Method::Formula, 256).unwrap();
            let g = compute_census(&sp, Method::Goursat, 256).unwrap();
            assert_eq!(o.census, f.census, "{s} formula: {}", f.detail);
            assert_eq!(o.census, g.census, "{s} goursat");
        }
    }

    #[test]
    fn formula_rejects_large_frattini() {
        let err = compute_census(&spec("C4 x C4"), Method::Formula, 256).unwrap_err();
        assert!(matches!(
            err,
            EngineError::Infeasible {
                method: Method::Formula,
                ..
            }
        ));
        let r = compute_census(&spec("C4 x C4 x C2^6"), Method::Auto, 256).unwrap();
        assert_eq!(r.method, Method::Goursat);
    }

    #[test]
    fn auto_uses_the_oracle_up_to_the_cap() {
        let r = compute_census(&spec("D8 * C4"), Method::Auto, 256).unwrap();
        assert_eq!(r.method, Method::Oracle);
        assert_eq!(r.census.total(), Count::from(23u32));
        let r = compute_census(&spec("D8^{*3} x C2^3"), Method::Auto, 256).unwrap();
        assert_eq!(r.method, Method::Formula);
    }
}
