use std::sync::Arc;

use serde::Serialize;

use super::spec::{GroupElement, GroupSpec};
use crate::arith::exact_log;
use crate::error::{usage, Result};

/// A subgroup stored as its full, sorted set of element codes.
///
/// `generators` is the list of elements that actually enlarged the group
/// while it was being closed, so it is a (not necessarily minimal)
/// generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    owner: Arc<GroupSpec>,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.owner == *other.owner
    }
}

impl Eq for Subgroup {}

/// Incremental closure under right multiplication by a growing generator list.
struct Closure<'a> {
    g: &'a GroupSpec,
    member: Vec<bool>,
    elems: Vec<u32>,
    gens: Vec<u32>,
}

impl<'a> Closure<'a> {
    fn new(g: &'a GroupSpec) -> Self {
        let mut member = vec![false; g.order() as usize];
        member[0] = true;
        Closure { g, member, elems: vec![0], gens: Vec::new() }
    }

    fn from_subgroup(g: &'a GroupSpec, h: &Subgroup) -> Self {
        let mut member = vec![false; g.order() as usize];
        for &x in &h.elements {
            member[x as usize] = true;
        }
        Closure { g, member, elems: h.elements.clone(), gens: h.generators.clone() }
    }

    fn contains(&self, x: u32) -> bool {
        self.member[x as usize]
    }

    fn add(&mut self, x: u32) {
        if self.member[x as usize] {
            return;
        }
        self.gens.push(x);
        let mut queue: Vec<u32> = self.elems.iter().map(|&e| self.g.mul(e, x)).collect();
        while let Some(y) = queue.pop() {
            if self.member[y as usize] {
                continue;
            }
            self.member[y as usize] = true;
            self.elems.push(y);
            queue.extend(self.gens.iter().map(|&h| self.g.mul(y, h)));
        }
    }

    /// Closes under conjugation by `conj`; only generators need checking.
    fn normalize(&mut self, conj: &[u32]) {
        let mut i = 0;
        while i < self.gens.len() {
            let x = self.gens[i];
            for &c in conj {
                let y = self.g.conjugate(c, x);
                self.add(y);
            }
            i += 1;
        }
    }

    fn finish(self, owner: &Arc<GroupSpec>) -> Subgroup {
        let mut elements = self.elems;
        elements.sort_unstable();
        Subgroup { owner: owner.clone(), elements, generators: self.gens }
    }
}

impl Subgroup {
    pub fn owner(&self) -> &Arc<GroupSpec> {
        &self.owner
    }

    /// Sorted element codes.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `log_p |H|`.
    pub fn log_order(&self) -> u32 {
        exact_log(self.order() as u128, self.owner.p() as u128).expect("p-group order")
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `|other : self|` when `self <= other`.
    pub fn index_in(&self, other: &Subgroup) -> u64 {
        other.order() / self.order()
    }

    pub fn element_coords(&self) -> Vec<GroupElement> {
        self.elements.iter().map(|&x| self.owner.decode(x)).collect()
    }

    fn same_owner(&self, other: &Subgroup) -> Result<()> {
        if !Arc::ptr_eq(&self.owner, &other.owner) && *self.owner != *other.owner {
            return usage("subgroups belong to different groups");
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.owner;
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Normality spot check: conjugates of the generators by `by`'s generators.
    pub fn is_normalized_by(&self, by: &Subgroup) -> bool {
        let g = &self.owner;
        by.generators
            .iter()
            .all(|&c| self.generators.iter().all(|&x| self.contains(g.conjugate(c, x))))
    }

    pub fn summary(&self) -> SubgroupSummary {
        SubgroupSummary {
            order: self.order(),
            generators: self.generators.iter().map(|&x| self.owner.decode(x).coords).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
}

/// Smallest subgroup containing `gens`.
pub fn closure(owner: &Arc<GroupSpec>, gens: &[u32]) -> Result<Subgroup> {
    owner.check_bound()?;
    if let Some(&bad) = gens.iter().find(|&&x| x as u64 >= owner.order()) {
        return usage(format!("code {bad} is not an element of {}", owner.descriptor()));
    }
    let mut c = Closure::new(owner);
    for &x in gens {
        c.add(x);
    }
    Ok(c.finish(owner))
}

/// Closure of elements given by coordinates.
pub fn closure_of(owner: &Arc<GroupSpec>, gens: &[GroupElement]) -> Result<Subgroup> {
    let codes = gens.iter().map(|e| owner.encode(e)).collect::<Result<Vec<_>>>()?;
    closure(owner, &codes)
}

/// The whole group as a subgroup.
pub fn whole(owner: &Arc<GroupSpec>) -> Result<Subgroup> {
    closure(owner, &owner.generators())
}

pub fn trivial(owner: &Arc<GroupSpec>) -> Subgroup {
    Subgroup { owner: owner.clone(), elements: vec![0], generators: Vec::new() }
}

/// `[H, K]`, generated by `[h, k] = h k h^{-1} k^{-1}`.
///
/// Built from commutators of generators and then normal-closed under both
/// factors, which yields the same subgroup as using all pairs.
pub fn commutator_subgroup(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    h.same_owner(k)?;
    let g = &h.owner;
    let mut c = Closure::new(g);
    for &a in &h.generators {
        for &b in &k.generators {
            c.add(g.commutator(a, b));
        }
    }
    let conj: Vec<u32> = h.generators.iter().chain(&k.generators).copied().collect();
    c.normalize(&conj);
    Ok(c.finish(g))
}

/// `H^{p^j}`: generated by all `h^{p^j}`. `j = 0` returns `H`.
pub fn power_subgroup(h: &Subgroup, j: u32) -> Subgroup {
    if j == 0 {
        return h.clone();
    }
    let g = &h.owner;
    let e = g.p().pow(j);
    let mut c = Closure::new(g);
    for &x in &h.elements {
        let y = g.pow(x, e);
        if !c.contains(y) {
            c.add(y);
        }
    }
    c.finish(g)
}

/// Subgroup generated by `A` and `B` (equal to `AB` when one normalizes the other).
pub fn product(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.same_owner(b)?;
    let g = &a.owner;
    let mut c = Closure::from_subgroup(g, a);
    for &x in &b.generators {
        c.add(x);
    }
    Ok(c.finish(g))
}

pub fn product_all(parts: &[Subgroup]) -> Result<Subgroup> {
    let (first, rest) = parts.split_first().expect("at least one factor");
    rest.iter().try_fold(first.clone(), |acc, s| product(&acc, s))
}

/// Adds `extra` to `h` and closes.
pub fn extend(h: &Subgroup, extra: &[u32]) -> Subgroup {
    let g = &h.owner;
    let mut c = Closure::from_subgroup(g, h);
    for &x in extra {
        c.add(x);
    }
    c.finish(g)
}

/// `Φ(H) = H^p [H, H]`.
pub fn frattini(h: &Subgroup) -> Result<Subgroup> {
    product(&power_subgroup(h, 1), &commutator_subgroup(h, h)?)
}

/// `d(H) = log_p |H : Φ(H)|`.
pub fn generator_rank(h: &Subgroup) -> Result<u32> {
    Ok(h.log_order() - frattini(h)?.log_order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_commutator(h: &Subgroup, k: &Subgroup) -> Subgroup {
        let g = h.owner();
        let comms: Vec<u32> = h
            .elements()
            .iter()
            .flat_map(|&a| k.elements().iter().map(move |&b| g.commutator(a, b)))
            .collect();
        closure(g, &comms).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = GroupSpec::parse("theta(3,1,1,3)").unwrap();
        assert_eq!(closure(&g, &[0]).unwrap().order(), 1);
        let all = closure(&g, &[g.sigma().unwrap(), g.rho(1).unwrap()]).unwrap();
        assert_eq!(all.order(), 729);
        // BFS over (s, v) mod 27 reaches every pair
        assert_eq!(all.elements(), (0..729).collect::<Vec<u32>>().as_slice());
        let ut = GroupSpec::parse("ut(4,3,1)").unwrap();
        assert_eq!(whole(&ut).unwrap().order(), 729);
    }

    #[test]
    fn closure_is_idempotent_and_deterministic() {
        let g = GroupSpec::parse("ut(4,3,1)").unwrap();
        let h = closure(&g, &[5, 17, 100]).unwrap();
        let again = closure(&g, h.elements()).unwrap();
        assert_eq!(h.elements(), again.elements());
        assert_eq!(closure(&g, &[5, 17, 100]).unwrap().generators(), h.generators());
    }

    #[test]
    fn resource_bound() {
        let g = GroupSpec::parse("theta(3,1,1,3)").unwrap().with_bound(100);
        assert!(matches!(closure(&g, &[1]), Err(crate::Error::ResourceBound { bound: 100, .. })));
    }

    #[test]
    fn commutators_match_brute_force() {
        for desc in ["theta(3,1,1,3)", "ut(4,3,1)", "theta(3,1,2,2)"] {
            let g = GroupSpec::parse(desc).unwrap();
            let all = whole(&g).unwrap();
            let phi = frattini(&all).unwrap();
            assert_eq!(commutator_subgroup(&all, &all).unwrap(), brute_commutator(&all, &all), "{desc}");
            assert_eq!(commutator_subgroup(&phi, &all).unwrap(), brute_commutator(&phi, &all), "{desc}");
        }
    }

    #[test]
    fn theta_commutator_and_powers() {
        let g = GroupSpec::parse("theta(3,1,1,3)").unwrap();
        let all = whole(&g).unwrap();
        let gg = commutator_subgroup(&all, &all).unwrap();
        assert_eq!(gg.order(), 9);
        let expected: Vec<GroupElement> = (0..27).filter(|b| b % 3 == 0).map(|b| GroupElement { coords: vec![0, b] }).collect();
        assert_eq!(gg, closure_of(&g, &expected).unwrap());
        let gp = power_subgroup(&all, 1);
        assert_eq!(gp.order(), 81);
        assert!(gp.element_coords().iter().all(|e| e.coords.iter().all(|c| c % 3 == 0)));
        assert_eq!(power_subgroup(&all, 2).order(), 9);
        assert_eq!(frattini(&all).unwrap().order(), 81);
        assert_eq!(generator_rank(&all).unwrap(), 2);
    }

    #[test]
    fn unitriangular_commutator_and_frattini() {
        let g = GroupSpec::parse("ut(4,3,1)").unwrap();
        let all = whole(&g).unwrap();
        let gg = commutator_subgroup(&all, &all).unwrap();
        assert_eq!(gg.order(), 27);
        let (i12, i23, i34) = (g.ut_index(0, 1), g.ut_index(1, 2), g.ut_index(2, 3));
        assert!(gg.element_coords().iter().all(|e| e.coords[i12] == 0 && e.coords[i23] == 0 && e.coords[i34] == 0));
        assert_eq!(frattini(&all).unwrap().order(), 27);
        assert_eq!(generator_rank(&all).unwrap(), 3);
    }

    #[test]
    fn abelian_and_exponent_p_cases() {
        let z3: Vec<Vec<u32>> = (0..9u32)
            .map(|i| (0..9u32).map(|j| ((i % 3 + j % 3) % 3) + 3 * ((i / 3 + j / 3) % 3)).collect())
            .collect();
        let g = GroupSpec::from_table(z3).unwrap();
        let all = whole(&g).unwrap();
        assert!(commutator_subgroup(&all, &all).unwrap().is_trivial());
        assert!(power_subgroup(&all, 1).is_trivial());
        let cyc = GroupSpec::parse("theta(3,inf,1,1)").unwrap();
        assert!(frattini(&whole(&cyc).unwrap()).unwrap().is_trivial());
    }

    #[test]
    fn mismatched_owners() {
        let a = whole(&GroupSpec::parse("ut(4,3,1)").unwrap()).unwrap();
        let b = whole(&GroupSpec::parse("theta(3,1,1,3)").unwrap()).unwrap();
        assert!(matches!(commutator_subgroup(&a, &b), Err(crate::Error::Usage(_))));
    }
}
