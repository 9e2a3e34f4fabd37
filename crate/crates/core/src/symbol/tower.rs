use std::collections::HashSet;

use super::{default_basis, is_field_rigid, FieldDescriptor, FieldKind};
use crate::arith::{checked_pow, pow_mod};
use crate::error::{usage, Error, Result};
use crate::fq::{FqElem, FqField};
use crate::linalg::rank;
use crate::pgroup::{is_powerful, tower_group, whole, GroupSpec, RootDepth, ThetaAbelianSpec};
use crate::series::Laurent;

pub const DEFAULT_TOWER_BOUND: u32 = 4;

/// Level `n` of the Kummer tower of a rigid `F_q((t))`:
/// `F_{q^{p^{n-1}}}((t^{1/p^{n-1}}))`.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub n: u32,
    pub base: FieldDescriptor,
    /// Coefficient field `F_{q^{p^r}}`.
    pub r: u32,
    /// Uniformizer `z = t^{1/p^s}`.
    pub s: u32,
    pub coefficient_field: FqField,
    /// `zeta_{p^{k+n-1}}` in the coefficient field.
    pub zeta: FqElem,
    pub zeta_exponent: u32,
    /// `(Q - 1)/p` and its residue mod `p^{k+n-1}`; a nonzero residue is
    /// the exponent-arithmetic proof that `zeta` is not a `p`-th power.
    pub class_exponent: u128,
    pub class_exponent_residue: u128,
    /// `(base element, root degree)`: `zeta_{p^k}` and `t` with their roots.
    pub generators: Vec<(String, u128)>,
    pub class_dimension: usize,
    pub independent: bool,
    /// `zeta^{p^{n-1}}` equals the base field's `zeta_{p^k}` image.
    pub compatible: bool,
}

fn require_rigid_laurent(field: &FieldDescriptor) -> Result<()> {
    if !matches!(field.kind(), FieldKind::Laurent { .. }) {
        return usage("Kummer towers are built over Laurent fields");
    }
    if !is_field_rigid(field, &default_basis(field)?)?.rigid {
        return Err(Error::NonRigid(field.descriptor()));
    }
    Ok(())
}

/// Builds level `n` and checks that its class group is spanned by the
/// classes of `zeta_{p^{k+n-1}}` and `t^{1/p^{n-1}}`.
pub fn kummer_tower(field: &FieldDescriptor, n: u32, bound: u32) -> Result<TowerLevel> {
    require_rigid_laurent(field)?;
    if n == 0 {
        return usage("tower levels start at 1");
    }
    if n > bound {
        return Err(Error::ResourceBound { what: format!("tower level {n}"), bound: bound as u128 });
    }
    let p = field.p();
    let k = field.k();
    let f = field.base();
    let steps = n - 1;
    let pn = checked_pow(p as u128, steps).unwrap();
    let cf = FqField::new(f.characteristic(), f.degree() * pn as usize)?;
    let depth = cf.roots_of_unity_depth(p)?;
    let zeta_exponent = k + steps;
    if depth != zeta_exponent {
        return Err(Error::Verification(format!("roots-of-unity depth {depth} at level {n}, expected {zeta_exponent}")));
    }
    let zeta = cf.root_of_unity(p, zeta_exponent)?;
    let zeta_order = checked_pow(p as u128, zeta_exponent).unwrap();
    if cf.multiplicative_order(&zeta)? != zeta_order {
        return Err(Error::Verification("zeta has the wrong order".into()));
    }
    let class_exponent = (cf.order() - 1) / p as u128;
    let class_exponent_residue = class_exponent % zeta_order;
    let nonresidue = !cf.is_one(&cf.pow(&zeta, class_exponent));
    if nonresidue != (class_exponent_residue != 0) {
        return Err(Error::Verification("exponent arithmetic disagrees with direct exponentiation".into()));
    }
    // class coordinates over F_Q((z)): (class of leading coefficient, valuation)
    let level = field.with_base(cf.clone())?;
    let zeta_class = cf.power_residue_class(&zeta, p, level.zeta())?;
    let rows = vec![vec![zeta_class, 0], vec![0, 1]];
    let class_dimension = rank(&rows, p);
    let compatible = cf.pow(&zeta, pn) == cf.root_of_unity(p, k)?;
    Ok(TowerLevel {
        n,
        base: field.clone(),
        r: steps,
        s: steps,
        coefficient_field: cf,
        zeta,
        zeta_exponent,
        class_exponent,
        class_exponent_residue,
        generators: vec![(format!("zeta_{}", checked_pow(p as u128, k).unwrap()), pn), ("t".into(), pn)],
        class_dimension,
        independent: class_dimension == 2 && nonresidue,
        compatible,
    })
}

/// An automorphism of a tower level over the base: coefficients go through
/// `Frob_q^frobenius`, and `z -> z_factor * z` with `z_factor` a
/// `p^{n-1}`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelAutomorphism {
    pub frobenius: u64,
    pub z_factor: FqElem,
}

impl TowerLevel {
    pub fn p_power(&self) -> u64 {
        self.base.p().pow(self.n - 1)
    }

    fn frob(&self, x: &FqElem, a: u64) -> FqElem {
        self.coefficient_field.frobenius(x, (a as usize) * self.base.base().degree())
    }

    pub fn identity(&self) -> LevelAutomorphism {
        LevelAutomorphism { frobenius: 0, z_factor: self.coefficient_field.one() }
    }

    /// `g1 o g2`.
    pub fn compose(&self, g1: &LevelAutomorphism, g2: &LevelAutomorphism) -> LevelAutomorphism {
        let cf = &self.coefficient_field;
        let m = self.p_power();
        LevelAutomorphism {
            frobenius: (g1.frobenius + g2.frobenius) % m.max(1),
            z_factor: cf.mul(&self.frob(&g2.z_factor, g1.frobenius), &g1.z_factor),
        }
    }

    pub fn apply_to_elem(&self, g: &LevelAutomorphism, x: &FqElem) -> FqElem {
        self.frob(x, g.frobenius)
    }

    /// Applies `g` to a series in the uniformizer `z`.
    pub fn apply(&self, g: &LevelAutomorphism, x: &Laurent) -> Result<Laurent> {
        let cf = &self.coefficient_field;
        let terms: Vec<FqElem> = x
            .terms()
            .map(|(e, c)| Ok(cf.mul(&self.frob(c, g.frobenius), &cf.pow_signed(&g.z_factor, e)?)))
            .collect::<Result<_>>()?;
        let lo = x.valuation().unwrap_or(0);
        Ok(match x.abs_prec() {
            Some(p) => Laurent::with_prec(cf, lo, terms, p),
            None => Laurent::exact(cf, lo, terms),
        })
    }

    /// `rho`: `z -> zeta_{p^{n-1}} z`, trivial on coefficients.
    pub fn rho(&self) -> Result<LevelAutomorphism> {
        let h = self.n - 1;
        Ok(LevelAutomorphism { frobenius: 0, z_factor: self.coefficient_field.root_of_unity(self.base.p(), h)? })
    }

    /// `sigma = Frob_q^c` with `q^c = 1 + p^k` modulo `p^{k+n-1}`, so that
    /// `sigma` raises roots of unity to the power `1 + p^k`.
    pub fn sigma(&self) -> Result<LevelAutomorphism> {
        let p = self.base.p();
        let k = self.base.k();
        let m = p.pow(k + self.n - 1);
        let q = (self.base.base().order() % m as u128) as u64;
        let target = (1 + p.pow(k)) % m;
        let c = (0..self.p_power())
            .find(|&c| pow_mod(q, c, m) == target)
            .ok_or_else(|| Error::Verification("no Frobenius power acts as 1 + p^k".into()))?;
        Ok(LevelAutomorphism { frobenius: c, z_factor: self.coefficient_field.one() })
    }

    fn power(&self, g: &LevelAutomorphism, e: u64) -> LevelAutomorphism {
        (0..e).fold(self.identity(), |acc, _| self.compose(&acc, g))
    }

    fn inverse(&self, g: &LevelAutomorphism) -> LevelAutomorphism {
        let ord = self.p_power() * self.p_power();
        self.power(g, ord.max(1) - 1)
    }
}

#[derive(Clone, Debug)]
pub struct TowerGaloisGroup {
    pub spec: ThetaAbelianSpec,
    pub order: u64,
    pub is_abelian: bool,
    /// `c` with `sigma = Frob_q^c`.
    pub sigma_frobenius_power: u64,
    /// `sigma rho sigma^{-1} = rho^{1+p^k}` on the level's generators.
    pub relation_verified: bool,
    /// The affine model maps isomorphically onto the automorphism group.
    pub isomorphism_verified: bool,
    pub powerful: bool,
}

/// `Gal(F^(n)/F)` as the affine model `theta(p, k, 1, n-1)`, verified
/// against the automorphisms of the tower level acting on its generators.
pub fn tower_galois_group(field: &FieldDescriptor, n: u32) -> Result<TowerGaloisGroup> {
    let level = kummer_tower(field, n, DEFAULT_TOWER_BOUND.max(n))?;
    let p = field.p();
    let k = field.k();
    let spec = ThetaAbelianSpec::new(p, RootDepth::Finite(k), 1, n - 1)?;
    let group = GroupSpec::theta(spec)?;
    let g = whole(&group)?;
    let record = tower_group(&spec, n)?;
    let powerful = is_powerful(&g)?.powerful;
    if n == 1 {
        return Ok(TowerGaloisGroup {
            spec,
            order: 1,
            is_abelian: true,
            sigma_frobenius_power: 0,
            relation_verified: true,
            isomorphism_verified: true,
            powerful,
        });
    }
    let sigma = level.sigma()?;
    let rho = level.rho()?;
    // psi(s, v) = rho^v sigma^s
    let images: Vec<LevelAutomorphism> = (0..group.order() as u32)
        .map(|code| {
            let c = group.decode(code).coords;
            level.compose(&level.power(&rho, c[1]), &level.power(&sigma, c[0]))
        })
        .collect();
    let distinct: HashSet<&LevelAutomorphism> = images.iter().collect();
    let mut iso = distinct.len() == images.len();
    'outer: for x in 0..group.order() as u32 {
        for y in 0..group.order() as u32 {
            let lhs = &images[group.mul(x, y) as usize];
            if *lhs != level.compose(&images[x as usize], &images[y as usize]) {
                iso = false;
                break 'outer;
            }
        }
    }
    let conj = level.compose(&level.compose(&sigma, &rho), &level.inverse(&sigma));
    let relation_verified = conj == level.power(&rho, 1 + p.pow(k));
    Ok(TowerGaloisGroup {
        spec,
        order: g.order(),
        is_abelian: record.is_abelian,
        sigma_frobenius_power: sigma.frobenius,
        relation_verified,
        isomorphism_verified: iso,
        powerful,
    })
}

/// Whether `L(a^{1/p})/F` is Galois, for `a` in tower level `L`: every
/// automorphism `g` of `L/F` must have `g(a)/a` a `p`-th power in `L`.
/// Both conditions are decidable at a Laurent level.
pub fn galois_criterion_level(
    level: &TowerLevel,
    a: &Laurent,
    automorphisms: &[LevelAutomorphism],
) -> Result<super::GaloisVerdict> {
    let cf = &level.coefficient_field;
    let p = level.base.p();
    let prec = level.base.precision().unwrap();
    for g in automorphisms {
        let ratio = level.apply(g, a)?.div(cf, a, prec)?;
        let v = ratio.valuation().ok_or(Error::ZeroElement)?;
        let zeta = cf.root_of_unity(p, 1)?;
        let class = cf.power_residue_class(ratio.leading().unwrap(), p, &zeta)?;
        if v.rem_euclid(p as i64) != 0 || class != 0 {
            return Ok(super::GaloisVerdict::NonGalois {
                automorphism: format!("Frob^{} z->{}z", g.frobenius, cf.format_elem(&g.z_factor)),
                class: (class, v.rem_euclid(p as i64) as u64),
            });
        }
    }
    Ok(super::GaloisVerdict::Galois)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::GaloisVerdict;

    fn base() -> FieldDescriptor {
        FieldDescriptor::parse("laurent(7,64)", 3).unwrap()
    }

    #[test]
    fn level_two() {
        let l = kummer_tower(&base(), 2, DEFAULT_TOWER_BOUND).unwrap();
        assert_eq!(l.coefficient_field.order(), 343);
        assert_eq!(l.zeta_exponent, 2);
        assert_eq!(l.class_exponent, 114);
        assert_eq!(l.class_exponent_residue, 114 % 9);
        assert_eq!(l.class_dimension, 2);
        assert!(l.independent && l.compatible);
    }

    #[test]
    fn level_one_and_three() {
        let l1 = kummer_tower(&base(), 1, DEFAULT_TOWER_BOUND).unwrap();
        assert_eq!(l1.coefficient_field.order(), 7);
        assert_eq!(l1.zeta, l1.coefficient_field.from_u64(2));
        let l3 = kummer_tower(&base(), 3, DEFAULT_TOWER_BOUND).unwrap();
        assert_eq!(l3.coefficient_field.degree(), 9);
        assert_eq!(l3.zeta_exponent, 3);
        assert!(l3.independent && l3.compatible);
        assert!(matches!(kummer_tower(&base(), 5, DEFAULT_TOWER_BOUND), Err(Error::ResourceBound { .. })));
        let rat = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
        assert!(kummer_tower(&rat, 2, 4).is_err());
    }

    #[test]
    fn galois_groups() {
        let g1 = tower_galois_group(&base(), 1).unwrap();
        assert_eq!(g1.order, 1);
        let g2 = tower_galois_group(&base(), 2).unwrap();
        assert_eq!((g2.order, g2.is_abelian), (9, true));
        assert!(g2.isomorphism_verified && g2.relation_verified && g2.powerful);
        let g3 = tower_galois_group(&base(), 3).unwrap();
        assert_eq!((g3.order, g3.is_abelian), (81, false));
        assert!(g3.isomorphism_verified && g3.relation_verified && g3.powerful);
    }

    #[test]
    fn galois_criterion_on_level_two() {
        let l = kummer_tower(&base(), 2, DEFAULT_TOWER_BOUND).unwrap();
        let cf = &l.coefficient_field;
        let z = Laurent::monomial(cf, cf.one(), 1);
        let autos = vec![l.sigma().unwrap(), l.rho().unwrap()];
        assert_eq!(galois_criterion_level(&l, &z, &autos).unwrap(), GaloisVerdict::Galois);
        assert_eq!(galois_criterion_level(&l, &z, &[l.identity()]).unwrap(), GaloisVerdict::Galois);
        // sigma(zeta_9)/zeta_9 = zeta_9^3 is a cube in F_343
        let zeta9 = Laurent::constant(cf, l.zeta.clone());
        let a = zeta9.mul(cf, &Laurent::from_ints(cf, 0, &[1, 1])).mul(cf, &z);
        assert_eq!(galois_criterion_level(&l, &a, &autos).unwrap(), GaloisVerdict::Galois);
    }
}
