use proptest::prelude::*;

use prigid::pgroup::{
    commutator_subgroup, dimension_closed_form, dimension_subgroups, is_powerful, lower_p_series, power_subgroup,
    whole, GroupSpec, RootDepth, Subgroup, ThetaAbelianSpec,
};

fn theta(p: u64, k: u32, rho: usize, m: u32) -> Subgroup {
    let spec = ThetaAbelianSpec::new(p, RootDepth::Finite(k), rho, m).unwrap();
    whole(&GroupSpec::theta(spec).unwrap()).unwrap()
}

/// `[D_i, D_j] <= D_{i+j}` and `D_i^p <= D_{pi}` for all indices in range.
fn check_dimension_laws(g: &Subgroup, n_max: usize) {
    let p = g.owner().p() as usize;
    let d = dimension_subgroups(g, n_max).unwrap();
    let term = |n: usize| d.series.term(n).clone();
    for i in 1..n_max {
        assert!(term(i + 1).is_subgroup_of(&term(i)));
    }
    for i in 1..=n_max {
        for j in i..=n_max - i {
            let c = commutator_subgroup(&term(i), &term(j)).unwrap();
            assert!(c.is_subgroup_of(&term(i + j)), "[D_{i}, D_{j}] not in D_{}", i + j);
        }
        if p * i <= n_max {
            assert!(power_subgroup(&term(i), 1).is_subgroup_of(&term(p * i)));
        }
    }
}

#[test]
fn dimension_series_laws_theta() {
    check_dimension_laws(&theta(3, 1, 1, 3), 18);
}

#[test]
fn dimension_series_laws_unitriangular() {
    let g = whole(&GroupSpec::parse("ut(4,3,1)").unwrap()).unwrap();
    check_dimension_laws(&g, 12);
}

#[test]
fn dimension_closed_form_theta_5() {
    let g = theta(5, 1, 1, 2);
    let d = dimension_subgroups(&g, 25).unwrap();
    for n in 1..=25 {
        assert_eq!(d.series.term(n).elements(), dimension_closed_form(&g, n).elements(), "n = {n}");
    }
}

fn theta_params() -> impl Strategy<Value = (u64, u32, usize, u32)> {
    (prop_oneof![Just(3u64), Just(5u64)], 1u32..=2, 1usize..=2, 1u32..=3)
        .prop_filter("order bound", |&(p, _, rho, m)| p.pow(m * (rho as u32 + 1)) <= 3u64.pow(8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_groups_are_powerful_metabelian((p, k, rho, m) in theta_params()) {
        let g = theta(p, k, rho, m);
        prop_assert_eq!(g.order(), p.pow(m * (rho as u32 + 1)));
        prop_assert!(is_powerful(&g).unwrap().powerful);
        let derived = commutator_subgroup(&g, &g).unwrap();
        prop_assert!(derived.is_abelian());
        prop_assert!(derived.is_subgroup_of(&power_subgroup(&g, 1)));
    }

    #[test]
    fn lower_p_terms_are_power_subgroups((p, k, rho, m) in theta_params()) {
        let g = theta(p, k, rho, m);
        let lam = lower_p_series(&g, m as usize).unwrap();
        for n in 1..=m as usize {
            let pw = power_subgroup(&g, n as u32 - 1);
            prop_assert_eq!(lam.term(n).elements(), pw.elements());
        }
    }

    #[test]
    fn conjugation_is_theta((p, k, rho, m) in theta_params()) {
        let g = theta(p, k, rho, m);
        let owner = g.owner();
        let sigma = owner.sigma().unwrap();
        let theta = 1 + p.pow(k);
        for i in 1..=rho {
            let r = owner.rho(i).unwrap();
            prop_assert_eq!(owner.conjugate(sigma, r), owner.pow(r, theta));
        }
    }
}
