use serde::Serialize;

use super::series::lower_p_series;
use super::spec::{GroupSpec, RootDepth, ThetaAbelianSpec};
use super::subgroup::{
    closure, commutator_subgroup, extend, frattini, generator_rank, power_subgroup, product, whole, Subgroup,
};
use crate::error::{usage, Error, Result};
use crate::linalg::kernel;

/// Default bound on `d(G)` for maximal-subgroup enumeration.
pub const DEFAULT_RANK_BOUND: u32 = 4;

#[derive(Clone, Debug)]
pub struct PowerfulVerdict {
    pub powerful: bool,
    /// A generator commutator outside `G^p`, when not powerful.
    pub witness: Option<u32>,
    pub derived: Subgroup,
    pub pth_powers: Subgroup,
}

/// `[G, G] <= G^p` (`p` odd).
pub fn is_powerful(g: &Subgroup) -> Result<PowerfulVerdict> {
    let owner = g.owner();
    if owner.p() == 2 {
        return usage("powerfulness is only tested for odd p");
    }
    let derived = commutator_subgroup(g, g)?;
    let pth_powers = power_subgroup(g, 1);
    let powerful = derived.is_subgroup_of(&pth_powers);
    // G^p is normal, so if every generator commutator lies in it so does [G,G]
    let witness = if powerful {
        None
    } else {
        let gens = g.generators();
        gens.iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| owner.commutator(a, b))
            .find(|&c| !pth_powers.contains(c))
    };
    Ok(PowerfulVerdict { powerful, witness, derived, pth_powers })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniformVerdict {
    pub uniform: bool,
    pub powerful: bool,
    /// `|λ_i : λ_{i+1}|` for `i = 1..=depth`.
    pub indices: Vec<u64>,
    /// `λ_depth` is trivial, so the verdict says nothing beyond the truncation.
    pub vacuous: bool,
}

pub fn is_uniform(g: &Subgroup, depth: usize) -> Result<UniformVerdict> {
    if depth < 2 {
        return usage("uniformity needs depth >= 2");
    }
    let series = lower_p_series(g, depth + 1)?;
    let powerful = is_powerful(g)?.powerful;
    let indices = series.indices.clone();
    let vacuous = series.term(depth).is_trivial();
    let constant = indices.iter().all(|&i| i == indices[0]);
    let uniform = if vacuous { powerful } else { powerful && constant };
    Ok(UniformVerdict { uniform, powerful, indices, vacuous })
}

#[derive(Clone, Debug)]
pub struct TheoremAGroupTest {
    pub frattini_squared: Subgroup,
    pub lambda3: Subgroup,
    pub equal: bool,
}

fn check_truncation(g: &Subgroup) -> Result<()> {
    if let Some(spec) = g.owner().theta_spec() {
        if spec.m < 3 {
            return usage(format!("truncation m = {} is too shallow for λ_3; use m >= 3", spec.m));
        }
    }
    Ok(())
}

/// Compares `Φ(Φ(G))` with `λ_3(G) = Φ(G)^p [Φ(G), G]`.
pub fn theorem_a_group_test(g: &Subgroup) -> Result<TheoremAGroupTest> {
    check_truncation(g)?;
    let phi = frattini(g)?;
    let frattini_squared = frattini(&phi)?;
    let lambda3 = product(&power_subgroup(&phi, 1), &commutator_subgroup(&phi, g)?)?;
    let equal = frattini_squared == lambda3;
    Ok(TheoremAGroupTest { frattini_squared, lambda3, equal })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct JModuleTest {
    /// `|Φ(G) / Φ(Φ(G))|`.
    pub full_order: u64,
    /// `|Φ(G) / [G, Φ(G)] Φ(Φ(G))|`.
    pub invariant_order: u64,
    pub equal: bool,
}

pub fn j_module_test(g: &Subgroup) -> Result<JModuleTest> {
    check_truncation(g)?;
    let phi = frattini(g)?;
    let phi2 = frattini(&phi)?;
    let comm = commutator_subgroup(g, &phi)?;
    let invariant_denominator = product(&comm, &phi2)?;
    Ok(JModuleTest {
        full_order: phi.order() / phi2.order(),
        invariant_order: phi.order() / invariant_denominator.order(),
        equal: comm.is_subgroup_of(&phi2),
    })
}

#[derive(Clone, Debug)]
pub struct MaximalSubgroup {
    /// Normalized functional on `G/Φ(G)` whose kernel is this subgroup.
    pub functional: Vec<u64>,
    pub subgroup: Subgroup,
    pub rank: u32,
}

/// All index-`p` subgroups, as preimages of hyperplanes of `G/Φ(G)`.
pub fn maximal_subgroups(g: &Subgroup, rank_bound: u32) -> Result<Vec<MaximalSubgroup>> {
    let owner = g.owner();
    let p = owner.p();
    let phi = frattini(g)?;
    let mut basis = Vec::new();
    let mut span = phi.clone();
    for &x in g.generators() {
        if !span.contains(x) {
            basis.push(x);
            span = extend(&span, &[x]);
        }
    }
    let d = basis.len();
    if d as u32 > rank_bound {
        return Err(Error::ResourceBound { what: format!("d(G) = {d}"), bound: rank_bound as u128 });
    }
    let mut out = Vec::new();
    for code in 1..p.pow(d as u32) {
        let functional: Vec<u64> = (0..d).map(|i| (code / p.pow((d - 1 - i) as u32)) % p).collect();
        if functional.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let extra: Vec<u32> = kernel(std::slice::from_ref(&functional), d, p)
            .iter()
            .map(|v| {
                v.iter().zip(&basis).fold(owner.identity(), |acc, (&e, &b)| owner.mul(acc, owner.pow(b, e)))
            })
            .collect();
        let subgroup = extend(&phi, &extra);
        debug_assert_eq!(subgroup.order() * p, g.order());
        let rank = generator_rank(&subgroup)?;
        out.push(MaximalSubgroup { functional, subgroup, rank });
    }
    Ok(out)
}

/// Powerfulness of `<a, b>` for every pair of generators. A heuristic for
/// local powerfulness: it does not enumerate the subgroup lattice.
pub fn locally_powerful_pairs(g: &Subgroup) -> Result<bool> {
    let owner = g.owner();
    let gens = g.generators();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if !is_powerful(&closure(owner, &[a, b])?)?.powerful {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TowerGroupRecord {
    pub n: u32,
    pub order: u64,
    pub is_abelian: bool,
    pub exponent: u64,
    pub derived_order: u64,
    /// Abelianness predicted by the rule `n <= p^k + 1`.
    pub predicted_abelian_p_power_rule: Option<bool>,
    /// Abelianness predicted by `n <= k + 1` (action of `1 + p^k` trivial mod `p^{n-1}`).
    pub predicted_abelian_k_rule: Option<bool>,
}

/// Invariants of the affine model at depth `n - 1`, the Galois group of the
/// `n`-th Kummer tower level of a rigid field.
pub fn tower_group(base: &ThetaAbelianSpec, n: u32) -> Result<TowerGroupRecord> {
    if n == 0 {
        return usage("tower level n must be at least 1");
    }
    let spec = ThetaAbelianSpec::new(base.p, base.k, base.rho_count(), n - 1)?;
    let owner = GroupSpec::theta(spec)?;
    let g = whole(&owner)?;
    // exhaustive commutation for small groups, generators otherwise
    let is_abelian = if g.order() <= 729 {
        g.elements().iter().all(|&a| g.elements().iter().all(|&b| owner.mul(a, b) == owner.mul(b, a)))
    } else {
        g.is_abelian()
    };
    let exponent = g.elements().iter().map(|&x| owner.element_order(x)).max().unwrap_or(1);
    let derived_order = commutator_subgroup(&g, &g)?.order();
    let (rule_p, rule_k) = match base.k {
        RootDepth::Finite(k) => {
            let pk = base.p.checked_pow(k).unwrap_or(u64::MAX);
            (Some(n as u64 <= pk.saturating_add(1)), Some(n <= k + 1))
        }
        RootDepth::Infinite => (None, None),
    };
    Ok(TowerGroupRecord {
        n,
        order: g.order(),
        is_abelian,
        exponent,
        derived_order,
        predicted_abelian_p_power_rule: rule_p,
        predicted_abelian_k_rule: rule_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(desc: &str) -> Subgroup {
        whole(&GroupSpec::parse(desc).unwrap()).unwrap()
    }

    #[test]
    fn powerful_examples() {
        assert!(is_powerful(&g("theta(3,1,1,3)")).unwrap().powerful);
        assert!(is_powerful(&g("theta(3,inf,2,2)")).unwrap().powerful);
        let ut = g("ut(4,3,1)");
        let v = is_powerful(&ut).unwrap();
        assert!(!v.powerful);
        let w = ut.owner().decode(v.witness.unwrap());
        let mut e13 = vec![0; 6];
        e13[ut.owner().ut_index(0, 2)] = 1;
        assert_eq!(w.coords, e13);
        assert_eq!(v.pth_powers.order(), 3);
    }

    #[test]
    fn uniform_examples() {
        let v = is_uniform(&g("theta(3,1,1,4)"), 3).unwrap();
        assert!(v.uniform && !v.vacuous);
        assert_eq!(v.indices, vec![9, 9, 9]);
        assert!(!is_uniform(&g("ut(4,3,1)"), 3).unwrap().uniform);
        let t = is_uniform(&g("theta(3,1,1,0)"), 2).unwrap();
        assert!(t.uniform && t.vacuous);
    }

    #[test]
    fn theorem_a_examples() {
        let t = theorem_a_group_test(&g("theta(3,1,1,3)")).unwrap();
        assert!(t.equal);
        assert_eq!(t.lambda3.order(), 9);
        assert_eq!(t.lambda3, power_subgroup(&g("theta(3,1,1,3)"), 2));
        let u = theorem_a_group_test(&g("ut(4,3,1)")).unwrap();
        assert!(!u.equal);
        assert!(u.frattini_squared.is_trivial());
        assert_eq!(u.lambda3.order(), 3);
        let c = g("theta(3,inf,1,3)");
        let t = theorem_a_group_test(&c).unwrap();
        assert!(t.equal);
        assert_eq!(t.lambda3, power_subgroup(&c, 2));
        assert!(matches!(theorem_a_group_test(&g("theta(3,1,1,2)")), Err(Error::Usage(_))));
    }

    #[test]
    fn j_module_examples() {
        assert_eq!(
            j_module_test(&g("theta(3,1,1,3)")).unwrap(),
            JModuleTest { full_order: 9, invariant_order: 9, equal: true }
        );
        assert_eq!(
            j_module_test(&g("ut(4,3,1)")).unwrap(),
            JModuleTest { full_order: 27, invariant_order: 9, equal: false }
        );
        assert!(j_module_test(&g("theta(3,inf,2,3)")).unwrap().equal);
    }

    #[test]
    fn maximal_subgroup_counts() {
        let m = maximal_subgroups(&g("theta(3,1,1,3)"), DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|x| x.rank == 2 && x.subgroup.order() == 243));
        let u = maximal_subgroups(&g("ut(4,3,1)"), DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(u.len(), 13);
        assert!(u.iter().any(|x| x.rank != 3));
        assert_eq!(maximal_subgroups(&g("theta(3,inf,1,3)"), DEFAULT_RANK_BOUND).unwrap().len(), 1);
        assert!(matches!(maximal_subgroups(&g("ut(4,3,1)"), 2), Err(Error::ResourceBound { .. })));
    }

    #[test]
    fn tower_groups() {
        let base = ThetaAbelianSpec::new(3, RootDepth::Finite(1), 1, 1).unwrap();
        let t2 = tower_group(&base, 2).unwrap();
        assert_eq!((t2.order, t2.is_abelian), (9, true));
        let t1 = tower_group(&base, 1).unwrap();
        assert_eq!(t1.order, 1);
        let t3 = tower_group(&base, 3).unwrap();
        assert_eq!((t3.order, t3.is_abelian), (81, false));
        assert_eq!(t3.predicted_abelian_p_power_rule, Some(true));
        assert_eq!(t3.predicted_abelian_k_rule, Some(false));
        assert_eq!(t3.exponent, 9);
        assert_eq!(t3.derived_order, 3);
    }

    #[test]
    fn locally_powerful_heuristic() {
        assert!(locally_powerful_pairs(&g("theta(3,1,2,2)")).unwrap());
        assert!(!locally_powerful_pairs(&g("ut(4,3,1)")).unwrap());
    }
}
