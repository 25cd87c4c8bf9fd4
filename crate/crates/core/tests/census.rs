use subgroup_census::engine::enumerated_sections;
use subgroup_census::formulas::{family_census, goursat_census, Family};
use subgroup_census::group::{build, GroupSpec};
use subgroup_census::oracle::{census, elementary_abelian_over_frattini};
use subgroup_census::quadform::{e_profile, FormType};
use subgroup_census::Count;

fn spec(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

fn oracle(s: &GroupSpec) -> subgroup_census::CensusTable {
    census(&build(s).unwrap()).unwrap()
}

#[test]
fn closed_forms_match_enumeration() {
    for n in 3..=7 {
        let d8 = GroupSpec::Dihedral8.times_elementary(n - 3);
        assert_eq!(
            family_census::<Count>(Family::D8, n).unwrap(),
            oracle(&d8),
            "{d8}"
        );
        let c4 =
            GroupSpec::direct(GroupSpec::Cyclic(2), GroupSpec::Cyclic(1)).times_elementary(n - 3);
        assert_eq!(
            family_census::<Count>(Family::C4C2, n).unwrap(),
            oracle(&c4),
            "{c4}"
        );
    }
}

#[test]
fn goursat_lift_matches_enumeration() {
    for base in ["D8", "Q8", "C4 x C2", "D8 * C4", "C4 x C4", "C8"] {
        let b = spec(base);
        let sections = enumerated_sections(&b, 256).unwrap();
        for m in 0..=2 {
            let g = b.clone().times_elementary(m);
            assert_eq!(goursat_census(&sections, m), oracle(&g), "{g}");
        }
    }
}

#[test]
fn elementary_overgroup_counts_are_dominated_by_the_dihedral_family() {
    // e_i of every generalized extraspecial form of dimension n-1 against D8 x C2^(n-3).
    for n in 3..=14u32 {
        let reference =
            e_profile::<Count>(FormType::ExtraspecialTimesElementary(1, n - 3).normalized());
        let mut types = Vec::new();
        for r in 1..=(n - 1) / 2 {
            let m = n - 1 - 2 * r;
            types.push(FormType::ExtraspecialTimesElementary(r, m).normalized());
            types.push(FormType::MinusTimesElementary(r, m).normalized());
            if m >= 1 {
                types.push(FormType::AlmostExtraspecialTimesElementary(r, m - 1).normalized());
            }
        }
        for t in types {
            let e = e_profile::<Count>(t);
            for i in 1..=n as i64 {
                assert!(e.get(i) <= reference.get(i), "n={n} {t} e_{i}");
            }
        }
    }
}

#[test]
fn form_profiles_agree_with_enumeration() {
    for s in ["D8 * D8 x C2", "Q8 * D8", "D8 * C4 x C2^2", "Q8 x C2^3"] {
        let g = spec(s);
        let t = subgroup_census::engine::form_type_of(&g).unwrap();
        let from_form = e_profile::<Count>(t);
        let enumerated = elementary_abelian_over_frattini(&build(&g).unwrap()).unwrap();
        for i in 1..=g.log2_order() as i64 {
            assert_eq!(from_form.get(i), enumerated.get(i), "{s} e_{i}");
        }
    }
}

#[test]
fn central_products_are_associative() {
    for (a, b, c) in [
        ("D8", "D8", "C4"),
        ("Q8", "D8", "C4"),
        ("D8", "Q8", "D8"),
        ("D8", "C4", "C8"),
    ] {
        let (a, b, c) = (spec(a), spec(b), spec(c));
        let left = GroupSpec::central(GroupSpec::central(a.clone(), b.clone()), c.clone());
        let right = GroupSpec::central(a, GroupSpec::central(b, c));
        assert_eq!(oracle(&left), oracle(&right), "{left} vs {right}");
    }
}
