use std::time::Instant;

use anyhow::{bail, Context, Result};
use log::{info, warn};
use subgroup_census::engine::{compute_census, form_type_of, Method};
use subgroup_census::formulas::{lattice_size_extraspecial, section_census_formulas};
use subgroup_census::group::{build, classify, GroupSpec};
use subgroup_census::oracle::{census_of, enumerate_lattice_capped, section_census_capped};
use subgroup_census::quadform::{e_profile, FormType};
use subgroup_census::verify::{self, Check, InstanceFamily, VerifyOptions};
use subgroup_census::{Count, SectionCensus, SectionClass};

use crate::report::*;

/// Whether a command found every comparison in agreement.
pub type Verdict = bool;

fn parse_spec(s: &str) -> Result<GroupSpec> {
    s.parse::<GroupSpec>()
        .with_context(|| format!("cannot parse group `{s}`"))
}

pub struct CensusArgs {
    pub spec: String,
    pub method: Method,
    pub compare: Option<Method>,
    pub oracle_cap: usize,
    pub format: Format,
}

pub fn census(a: &CensusArgs) -> Result<Verdict> {
    let spec = parse_spec(&a.spec)?;
    let n = spec.log2_order();
    let t0 = Instant::now();
    let main = compute_census(&spec, a.method, a.oracle_cap)?;
    info!(
        "{spec}: {} ({}) in {:.3?}",
        main.method,
        main.detail,
        t0.elapsed()
    );
    let other = match a.compare {
        Some(m) => {
            let t0 = Instant::now();
            let r = compute_census(&spec, m, a.oracle_cap)?;
            info!(
                "{spec}: {} ({}) in {:.3?}",
                r.method,
                r.detail,
                t0.elapsed()
            );
            Some(r)
        }
        None => None,
    };

    let mut ok = true;
    let mut columns = vec!["label", "n", "k", "method", "count"];
    if other.is_some() {
        columns.extend(["compare_count", "status"]);
    }
    let mut table = Table::new("", columns);
    let mut rows = Vec::new();
    for k in 0..=n {
        let count = main.census.get(k);
        let (cmp, status) = match &other {
            Some(o) => {
                let c = o.census.get(k);
                let agree = c == count;
                ok &= agree;
                (
                    Some(c.to_string()),
                    Some(if agree { "ok" } else { "MISMATCH" }),
                )
            }
            None => (None, None),
        };
        let mut row = vec![
            spec.to_string(),
            n.to_string(),
            k.to_string(),
            main.method.to_string(),
            count.to_string(),
        ];
        if let (Some(c), Some(s)) = (&cmp, status) {
            row.extend([c.clone(), s.to_string()]);
        }
        table.push(row);
        rows.push(CensusRow {
            k,
            count: count.to_string(),
            compare_count: cmp,
            status,
        });
    }
    table.footer.push(format!("total {}", main.census.total()));
    if !ok {
        warn!(
            "{spec}: {} and {} disagree",
            main.method,
            other.as_ref().map(|o| o.method.as_str()).unwrap_or("")
        );
    }
    let json = CensusReport {
        label: spec.to_string(),
        n,
        rows,
        total: main.census.total().to_string(),
        method: main.method.to_string(),
        version: VERSION,
    };
    emit(a.format, &table, &json)?;
    Ok(ok)
}

pub struct SectionsArgs {
    pub spec: String,
    pub alpha: Option<u32>,
    pub beta: Option<u32>,
    pub split: bool,
    pub method: Method,
    pub oracle_cap: usize,
    pub format: Format,
}

fn formula_sections(spec: &GroupSpec) -> Result<SectionCensus> {
    let ty = form_type_of(spec)?;
    Ok(section_census_formulas(
        &e_profile::<Count>(ty),
        spec.log2_order(),
    ))
}

fn class_cells(s: &SectionCensus, a: u32, b: u32) -> Option<[Count; 4]> {
    if !s.is_split() {
        return None;
    }
    Some(SectionClass::ALL.map(|c| s.class(a, b, c).unwrap_or_default()))
}

pub fn sections(a: &SectionsArgs) -> Result<Verdict> {
    let spec = parse_spec(&a.spec)?;
    let n = spec.log2_order();
    let t = build(&spec)?;
    let in_hypothesis = classify(&t).is_almost_or_extraspecial();
    let method = match a.method {
        Method::Auto if t.order() <= a.oracle_cap => Method::Oracle,
        Method::Auto => Method::Formula,
        Method::Goursat => bail!("sections are computed by `oracle` or `formula`"),
        m => m,
    };
    let ours = match method {
        Method::Oracle => section_census_capped(&t, a.split, a.oracle_cap)?,
        _ => formula_sections(&spec)?,
    };
    // Cross-check the enumeration against the class formulas whenever they apply.
    let cross = match method {
        Method::Oracle if a.split => Some(formula_sections(&spec)?),
        _ => None,
    };
    let reference = (n >= 3).then(|| {
        let e = e_profile::<Count>(FormType::ExtraspecialTimesElementary(1, n - 3));
        section_census_formulas(&e, n)
    });
    let reference_label =
        (n >= 3).then(|| GroupSpec::Dihedral8.times_elementary(n - 3).to_string());

    let mut columns = vec!["alpha", "beta", "count"];
    if a.split {
        columns.extend(["s1", "s2", "s3", "s4"]);
    }
    if reference.is_some() {
        columns.extend(["reference", "dominated"]);
    }
    if cross.is_some() {
        columns.push("status");
    }
    let title = match &reference_label {
        Some(r) => format!("{spec} ({method}) against {r}"),
        None => format!("{spec} ({method})"),
    };
    let mut table = Table::new(title, columns);
    let mut rows = Vec::new();
    let mut ok = true;
    let mut violations = 0usize;
    for (al, be) in ours.cells() {
        if a.alpha.is_some_and(|x| x != al) || a.beta.is_some_and(|x| x != be) {
            continue;
        }
        let count = ours.get(al, be);
        let classes = if a.split {
            class_cells(&ours, al, be)
        } else {
            None
        };
        let (ref_count, ref_classes, dominated) = match &reference {
            Some(r) => {
                let rc = r.get(al, be);
                let rcl = class_cells(r, al, be);
                let mut dom = count <= rc;
                if let (Some(c), Some(rc)) = (&classes, &rcl) {
                    dom &= c.iter().zip(rc).all(|(x, y)| x <= y);
                }
                (Some(rc), if a.split { rcl } else { None }, Some(dom))
            }
            None => (None, None, None),
        };
        if dominated == Some(false) {
            violations += 1;
        }
        let status = cross.as_ref().map(|c| {
            let agree = c.get(al, be) == count && class_cells(c, al, be) == classes;
            ok &= agree;
            if agree {
                "ok"
            } else {
                "MISMATCH"
            }
        });

        let mut row = vec![al.to_string(), be.to_string(), count.to_string()];
        if let Some(c) = &classes {
            row.extend(c.iter().map(ToString::to_string));
        }
        if let (Some(rc), Some(d)) = (&ref_count, dominated) {
            let shown = match &ref_classes {
                Some(rcl) => format!(
                    "{rc} [{}]",
                    rcl.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                None => rc.to_string(),
            };
            row.extend([shown, if d { "<=" } else { "no" }.to_string()]);
        }
        if let Some(s) = status {
            row.push(s.to_string());
        }
        table.push(row);
        rows.push(SectionRow {
            alpha: al,
            beta: be,
            count: count.to_string(),
            classes: classes.map(|c| c.map(|x| x.to_string())),
            reference: ref_count.map(|x| x.to_string()),
            reference_classes: ref_classes.map(|c| c.map(|x| x.to_string())),
            dominated,
            status,
        });
    }
    if reference.is_some() {
        let note = if in_hypothesis {
            "(almost) extraspecial: every cell must be dominated"
        } else {
            "not (almost) extraspecial: dominance is reported only"
        };
        table
            .footer
            .push(format!("{violations} undominated cells; {note}"));
    }
    if in_hypothesis && violations > 0 {
        ok = false;
    }
    let json = SectionReport {
        label: spec.to_string(),
        n,
        method: method.to_string(),
        reference: reference_label,
        rows,
        version: VERSION,
    };
    emit(a.format, &table, &json)?;
    Ok(ok)
}

pub struct LatticeArgs {
    pub spec: String,
    pub oracle_cap: usize,
    pub format: Format,
}

pub fn lattice(a: &LatticeArgs) -> Result<Verdict> {
    let spec = parse_spec(&a.spec)?;
    let t = build(&spec)?;
    let t0 = Instant::now();
    let lat = enumerate_lattice_capped(&t, a.oracle_cap)?;
    info!("{spec}: {} subgroups in {:.3?}", lat.total(), t0.elapsed());
    let mut table = Table::new(
        spec.to_string(),
        vec!["k", "subgroups", "normal", "elementary_abelian"],
    );
    let mut rows = Vec::new();
    for (k, level) in lat.levels().iter().enumerate() {
        let normal = (0..level.len() as u32)
            .filter(|&i| lat.is_normal((k as u32, i)))
            .count();
        let elementary = level
            .iter()
            .filter(|h| t.is_elementary_abelian_set(h))
            .count();
        table.push(vec![
            k.to_string(),
            level.len().to_string(),
            normal.to_string(),
            elementary.to_string(),
        ]);
        rows.push(LatticeRow {
            k: k as u32,
            subgroups: level.len().to_string(),
            normal: normal.to_string(),
            elementary_abelian: elementary.to_string(),
        });
    }
    debug_assert_eq!(census_of(&lat).total(), Count::from(lat.total()));
    table.footer.push(format!("total {}", lat.total()));
    let json = LatticeReport {
        label: spec.to_string(),
        n: t.log2_order(),
        rows,
        total: lat.total().to_string(),
        method: "oracle",
        version: VERSION,
    };
    emit(a.format, &table, &json)?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormKind {
    Plus,
    Minus,
    Almost,
}

pub struct QuadformArgs {
    pub kind: FormKind,
    pub r: u32,
    pub m0: u32,
    pub max_d: Option<u32>,
    pub cross_check: bool,
    pub oracle_cap: usize,
    pub format: Format,
}

pub fn form_type(kind: FormKind, r: u32, m0: u32) -> Result<FormType> {
    if r == 0 {
        bail!("r must be at least 1");
    }
    Ok(match (kind, m0) {
        (FormKind::Plus, 0) => FormType::Plus(r),
        (FormKind::Minus, 0) => FormType::Minus(r),
        (FormKind::Almost, 0) => FormType::AlmostExtraspecial(r),
        (FormKind::Plus, m) => FormType::ExtraspecialTimesElementary(r, m),
        (FormKind::Minus, m) => FormType::MinusTimesElementary(r, m),
        (FormKind::Almost, m) => FormType::AlmostExtraspecialTimesElementary(r, m),
    })
}

pub fn quadform(a: &QuadformArgs) -> Result<Verdict> {
    let ty = form_type(a.kind, a.r, a.m0)?;
    let e = e_profile::<Count>(ty);
    let top = a
        .max_d
        .unwrap_or(ty.max_singular_dim())
        .min(ty.max_singular_dim());
    let mut table = Table::new(
        format!("{ty} on {} coordinates", ty.dim()),
        vec!["d", "i", "e_i"],
    );
    let mut rows = Vec::new();
    for d in 0..=top {
        let i = d + 1;
        let v = e.get(i as i64);
        table.push(vec![d.to_string(), i.to_string(), v.to_string()]);
        rows.push(QuadformRow {
            i,
            e: v.to_string(),
        });
    }
    let lattice_total =
        (a.m0 == 0).then(|| lattice_size_extraspecial(a.r, &e, a.kind == FormKind::Almost));
    if let Some(l) = &lattice_total {
        table.footer.push(format!("lattice size {l}"));
    }
    let group = ty.group_spec();
    let mut ok = true;
    let mut oracle_total = None;
    if a.cross_check {
        let Some(spec) = &group else {
            bail!("{ty} has no group realisation to check against");
        };
        let t = build(spec)?;
        let lat = enumerate_lattice_capped(&t, a.oracle_cap)?;
        let phi = t.frattini_subgroup();
        let oracle_e = subgroup_census::oracle::e_profile_of(&lat, &phi);
        for d in 0..=top {
            let i = d as i64 + 1;
            if oracle_e.get(i) != e.get(i) {
                ok = false;
                table
                    .footer
                    .push(format!("MISMATCH e_{i}: oracle {}", oracle_e.get(i)));
            }
        }
        if let Some(l) = &lattice_total {
            if *l != Count::from(lat.total()) {
                ok = false;
                table
                    .footer
                    .push(format!("MISMATCH lattice size: oracle {}", lat.total()));
            }
        }
        table.footer.push(format!(
            "oracle on {spec}: {} subgroups, {}",
            lat.total(),
            if ok { "ok" } else { "MISMATCH" }
        ));
        oracle_total = Some(lat.total().to_string());
    }
    let json = QuadformReport {
        form: ty.to_string(),
        group: group.map(|g| g.to_string()),
        dim: ty.dim(),
        rows,
        lattice_total: lattice_total.map(|l| l.to_string()),
        oracle_total,
        version: VERSION,
    };
    emit(a.format, &table, &json)?;
    Ok(ok)
}

pub struct VerifyArgs {
    pub check: Check,
    pub n: std::ops::RangeInclusive<u32>,
    pub families: Vec<InstanceFamily>,
    pub include_elementary: bool,
    pub oracle_cap: usize,
    pub format: Format,
}

pub fn run_verify(a: &VerifyArgs) -> Result<Verdict> {
    let opts = VerifyOptions {
        n: a.n.clone(),
        families: a.families.clone(),
        oracle_cap: a.oracle_cap,
        include_elementary: a.include_elementary,
    };
    let t0 = Instant::now();
    let report = verify::run(a.check, &opts);
    info!("{} instances in {:.3?}", report.results.len(), t0.elapsed());
    let mut table = Table::new(
        format!("{}\ncheck: {}", report.header, report.check),
        vec!["label", "n", "family", "method", "outcome", "detail"],
    );
    let mut rows = Vec::new();
    for r in &report.results {
        let family = r.family.map(|f| f.to_string());
        let method = r.method.map(|m| m.to_string());
        table.push(vec![
            r.label.clone(),
            r.n.to_string(),
            family.clone().unwrap_or_else(|| "-".into()),
            method.clone().unwrap_or_else(|| "-".into()),
            r.outcome.as_str().to_string(),
            r.detail.clone(),
        ]);
        rows.push(VerifyRow {
            label: r.label.clone(),
            n: r.n,
            family,
            method,
            outcome: r.outcome.as_str().to_string(),
            detail: r.detail.clone(),
        });
    }
    table.footer.push(format!(
        "{} pass, {} FAIL, {} out-of-hypothesis, {} skipped, {} error",
        report.count("pass"),
        report.count("FAIL"),
        report.count("out-of-hypothesis"),
        report.count("skipped"),
        report.count("error"),
    ));
    if a.format == Format::Csv {
        eprintln!("{}", report.header);
    }
    let json = VerifyJson {
        check: report.check.to_string(),
        header: report.header,
        passed: report.passed(),
        rows,
        version: VERSION,
    };
    emit(a.format, &table, &json)?;
    Ok(report.passed())
}
