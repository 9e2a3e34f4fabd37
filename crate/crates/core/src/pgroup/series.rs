use serde::Serialize;

use super::subgroup::{commutator_subgroup, frattini, power_subgroup, product, product_all, Subgroup};
use crate::error::{usage, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerP,
    LowerCentral,
    FrattiniIterate,
    Dimension,
}

/// A descending series `terms[0] >= terms[1] >= ...` with
/// `indices[i] = |terms[i] : terms[i+1]|`.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub indices: Vec<u64>,
}

impl SeriesReport {
    fn new(kind: SeriesKind, terms: Vec<Subgroup>) -> Self {
        let indices = terms.windows(2).map(|w| w[0].order() / w[1].order()).collect();
        SeriesReport { kind, terms, indices }
    }

    pub fn orders(&self) -> Vec<u64> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    /// Term `n` with 1-based numbering (`term(1)` is the first term).
    pub fn term(&self, n: usize) -> &Subgroup {
        &self.terms[n - 1]
    }

    /// Each term contains the next and is normalized by the first term.
    pub fn is_descending_normal(&self) -> bool {
        let top = &self.terms[0];
        self.terms.windows(2).all(|w| w[1].is_subgroup_of(&w[0])) && self.terms.iter().all(|t| t.is_normalized_by(top))
    }
}

/// `λ_1 = G`, `λ_{i+1} = λ_i^p [λ_i, G]`, for `i < n`.
pub fn lower_p_series(g: &Subgroup, n: usize) -> Result<SeriesReport> {
    if n == 0 {
        return usage("series length must be at least 1");
    }
    let mut terms = vec![g.clone()];
    while terms.len() < n {
        let last = terms.last().unwrap();
        let next = product(&power_subgroup(last, 1), &commutator_subgroup(last, g)?)?;
        terms.push(next);
    }
    Ok(SeriesReport::new(SeriesKind::LowerP, terms))
}

/// `γ_1 = G`, `γ_{i+1} = [γ_i, G]`.
pub fn lower_central_series(g: &Subgroup, n: usize) -> Result<SeriesReport> {
    if n == 0 {
        return usage("series length must be at least 1");
    }
    let mut terms = vec![g.clone()];
    while terms.len() < n {
        let next = commutator_subgroup(terms.last().unwrap(), g)?;
        terms.push(next);
    }
    Ok(SeriesReport::new(SeriesKind::LowerCentral, terms))
}

/// `G, Φ(G), Φ(Φ(G)), ...`: the group side of the iterated `p`-th root fields.
pub fn frattini_iterates(g: &Subgroup, n: usize) -> Result<SeriesReport> {
    if n == 0 {
        return usage("series length must be at least 1");
    }
    let mut terms = vec![g.clone()];
    while terms.len() < n {
        let next = frattini(terms.last().unwrap())?;
        terms.push(next);
    }
    Ok(SeriesReport::new(SeriesKind::FrattiniIterate, terms))
}

/// Dimension subgroups by Lazard's product formula
/// `D_n = prod_{i p^h >= n} γ_i^{p^h}`.
///
/// For each `i <= n` only the smallest admissible `h` matters, since
/// `γ_i^{p^{h+1}} <= γ_i^{p^h}`, and `γ_i <= γ_n` for `i > n`.
pub fn dimension_subgroups(g: &Subgroup, n_max: usize) -> Result<DimensionReport> {
    if n_max == 0 {
        return usage("n_max must be at least 1");
    }
    let p = g.owner().p() as usize;
    // one extra term so the last quotient D_{n_max}/D_{n_max+1} is available
    let gammas = lower_central_series(g, n_max + 1)?;
    let mut terms = Vec::with_capacity(n_max + 1);
    for n in 1..=n_max + 1 {
        let mut parts = Vec::new();
        for i in 1..=n {
            let gamma = gammas.term(i);
            if gamma.is_trivial() {
                break;
            }
            let mut h = 0u32;
            let mut reach = i;
            while reach < n {
                reach *= p;
                h += 1;
            }
            parts.push(power_subgroup(gamma, h));
        }
        terms.push(product_all(&parts)?);
    }
    let quotient_orders = terms.windows(2).map(|w| w[0].order() / w[1].order()).collect();
    terms.truncate(n_max);
    Ok(DimensionReport { series: SeriesReport::new(SeriesKind::Dimension, terms), quotient_orders })
}

#[derive(Clone, Debug)]
pub struct DimensionReport {
    pub series: SeriesReport,
    /// `|D_n / D_{n+1}|` for `n = 1..=n_max`.
    pub quotient_orders: Vec<u64>,
}

/// `G^{p^l}` with `l = ceil(log_p n)`: the closed form of `D_n` for
/// θ-abelian groups.
pub fn dimension_closed_form(g: &Subgroup, n: usize) -> Subgroup {
    let l = crate::arith::ceil_log(n as u64, g.owner().p());
    power_subgroup(g, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::{whole, GroupSpec};

    #[test]
    fn lower_p_theta_depth_four() {
        let g = whole(&GroupSpec::parse("theta(3,1,1,4)").unwrap()).unwrap();
        let s = lower_p_series(&g, 4).unwrap();
        let idx_in_g: Vec<u64> = s.orders().iter().map(|o| g.order() / o).collect();
        assert_eq!(idx_in_g, vec![1, 9, 81, 729]);
        for i in 2..=4 {
            assert_eq!(s.term(i), &power_subgroup(&g, i as u32 - 1));
        }
        assert!(s.is_descending_normal());
    }

    #[test]
    fn lower_p_unitriangular() {
        let g = whole(&GroupSpec::parse("ut(4,3,1)").unwrap()).unwrap();
        let s = lower_p_series(&g, 3).unwrap();
        let l3 = s.term(3);
        assert_eq!(l3.order(), 3);
        let i14 = g.owner().ut_index(0, 3);
        assert!(l3.element_coords().iter().all(|e| e.coords.iter().enumerate().all(|(j, &c)| j == i14 || c == 0)));
    }

    #[test]
    fn lower_central_examples() {
        let g = whole(&GroupSpec::parse("theta(3,1,1,4)").unwrap()).unwrap();
        let s = lower_central_series(&g, 3).unwrap();
        let n = g.owner().order() as u32;
        let _ = n;
        // γ_2 = {(0, 3b)}, γ_3 = {(0, 9b)} with entries mod 81
        assert_eq!(s.term(2).order(), 27);
        assert!(s.term(2).element_coords().iter().all(|e| e.coords[0] == 0 && e.coords[1] % 3 == 0));
        assert_eq!(s.term(3).order(), 9);
        assert!(s.term(3).element_coords().iter().all(|e| e.coords[0] == 0 && e.coords[1] % 9 == 0));
        let ut = whole(&GroupSpec::parse("ut(4,3,1)").unwrap()).unwrap();
        assert_eq!(lower_central_series(&ut, 4).unwrap().orders(), vec![729, 27, 3, 1]);
    }

    #[test]
    fn dimension_series_theta() {
        let g = whole(&GroupSpec::parse("theta(3,1,1,3)").unwrap()).unwrap();
        let r = dimension_subgroups(&g, 27).unwrap();
        let orders = r.series.orders();
        assert_eq!(&orders[..10], &[729, 81, 81, 9, 9, 9, 9, 9, 9, 1]);
        assert!(orders[9..].iter().all(|&o| o == 1));
        assert_eq!(r.quotient_orders[0], 9);
        assert_eq!(r.quotient_orders[2], 9);
        for n in 1..=27 {
            assert_eq!(r.series.term(n), &dimension_closed_form(&g, n), "n = {n}");
        }
    }
}
