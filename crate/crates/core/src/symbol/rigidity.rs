use std::collections::BTreeSet;

use super::{class_matrix, is_pth_power, power_class, symbol, FieldDescriptor, FieldElem, FieldKind, SymbolVector};
use crate::error::{usage, Error, Result};
use crate::fq::Poly;
use crate::linalg::{kernel, rank, solve_combination};
use crate::ratfunc::Place;

/// Canonical class-group basis: `{u*}` for `F_q`, `{u*, t}` for `F_q((t))`,
/// and the Steinberg pair `{t, 1 - t}` for `F_q(t)`.
pub fn default_basis(field: &FieldDescriptor) -> Result<Vec<FieldElem>> {
    let u = field.constant(field.ustar().clone());
    Ok(match field.kind() {
        FieldKind::Finite => vec![u],
        FieldKind::Laurent { .. } => vec![u, field.t()?],
        FieldKind::RatFunc => {
            let t = field.t()?;
            vec![t.clone(), field.one_minus(&t)?]
        }
    })
}

#[derive(Clone, Debug)]
pub struct ElementRigidity {
    /// `true` when the kernel of `b -> (a, b)` on the span is `<[a]>`.
    pub rigid: bool,
    /// `[a]` in basis coordinates.
    pub element_coords: Vec<u64>,
    /// Kernel basis in basis coordinates.
    pub kernel: Vec<Vec<u64>>,
    /// `(a, b_j)` for each basis element.
    pub symbols: Vec<SymbolVector>,
}

fn check_independent(field: &FieldDescriptor, basis: &[FieldElem]) -> Result<Vec<Vec<u64>>> {
    let (rows, _) = class_matrix(field, basis)?;
    if rank(&rows, field.p()) != basis.len() {
        return Err(Error::DependentBasis);
    }
    Ok(rows)
}

/// Symbol coordinates of several vectors, as the columns of a matrix whose
/// rows are places.
fn symbol_matrix(vectors: &[SymbolVector]) -> Vec<Vec<u64>> {
    let places: BTreeSet<&Place> = vectors.iter().flat_map(|v| v.entries.keys()).collect();
    places.into_iter().map(|pl| vectors.iter().map(|v| v.get(pl)).collect()).collect()
}

/// Kernel of `b -> (a, b)` on the span of `basis`.
pub fn is_element_rigid(field: &FieldDescriptor, a: &FieldElem, basis: &[FieldElem]) -> Result<ElementRigidity> {
    let p = field.p();
    if is_pth_power(field, a)?.is_some() {
        return Err(Error::IsPthPower { p });
    }
    check_independent(field, basis)?;
    let mut all = basis.to_vec();
    all.push(a.clone());
    let (rows, _) = class_matrix(field, &all)?;
    let (target, cols) = rows.split_last().unwrap();
    let element_coords = solve_combination(cols, target, p)
        .ok_or_else(|| Error::Usage("the basis does not span the class of the element".into()))?;
    let symbols = basis.iter().map(|b| symbol(field, a, b)).collect::<Result<Vec<_>>>()?;
    let mat = symbol_matrix(&symbols);
    let kernel = kernel(&mat, basis.len(), p);
    let pairs_to_zero = mat.iter().all(|row| row.iter().zip(&element_coords).map(|(x, y)| x * y).sum::<u64>() % p == 0);
    if !pairs_to_zero {
        return Err(Error::Verification("[a] does not pair to zero with itself".into()));
    }
    Ok(ElementRigidity { rigid: kernel.len() == 1, element_coords, kernel, symbols })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// The verdict covers the whole field.
    Complete,
    /// The verdict only covers the span of the given basis.
    SubspaceOnly,
    /// The class group has dimension at most 1: no wedges exist.
    Trivial,
}

#[derive(Clone, Debug)]
pub struct FieldRigidity {
    pub rigid: bool,
    pub completeness: Completeness,
    pub dimension: usize,
    /// Basis index pairs `(i, j)`, `i < j`, and their symbols.
    pub wedges: Vec<(usize, usize, SymbolVector)>,
    /// Rank of the wedge-to-symbol matrix.
    pub wedge_rank: usize,
    /// An independent pair with trivial symbol, when one was found.
    pub witness: Option<(usize, usize)>,
}

/// Injectivity of `Lambda^2(span) -> symbols` on the span of `basis`.
pub fn is_field_rigid(field: &FieldDescriptor, basis: &[FieldElem]) -> Result<FieldRigidity> {
    let p = field.p();
    check_independent(field, basis)?;
    let d = basis.len();
    let mut wedges = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            wedges.push((i, j, symbol(field, &basis[i], &basis[j])?));
        }
    }
    let vectors: Vec<SymbolVector> = wedges.iter().map(|w| w.2.clone()).collect();
    let mat = symbol_matrix(&vectors);
    let wedge_rank = if mat.is_empty() { 0 } else { rank(&mat, p) };
    let injective = wedge_rank == wedges.len();
    let witness = wedges.iter().find(|w| w.2.is_zero()).map(|w| (w.0, w.1));
    let (rigid, completeness) = match field.kind() {
        FieldKind::Finite => (true, Completeness::Trivial),
        FieldKind::Laurent { .. } if d == 2 => (injective, Completeness::Complete),
        FieldKind::Laurent { .. } if d < 2 => (true, Completeness::SubspaceOnly),
        FieldKind::Laurent { .. } => return Err(Error::DependentBasis),
        FieldKind::RatFunc if witness.is_some() => (false, Completeness::Complete),
        FieldKind::RatFunc => (injective, Completeness::SubspaceOnly),
    };
    Ok(FieldRigidity { rigid, completeness, dimension: d, wedges, wedge_rank, witness })
}

#[derive(Clone, Debug)]
pub struct SteinbergWitness {
    pub a: FieldElem,
    pub b: FieldElem,
    pub independent: bool,
    pub symbol: SymbolVector,
    /// `prod_j (1 - zeta^j X) = 1 - X^p`, so `1 - t` is the norm of
    /// `1 - t^{1/p}` from `F(t^{1/p})`.
    pub norm_identity_verified: bool,
}

/// The pair `(1 - t, t)`: independent classes whose symbol vanishes.
pub fn steinberg_witness(field: &FieldDescriptor) -> Result<SteinbergWitness> {
    if *field.kind() != FieldKind::RatFunc {
        return usage(format!("{} is rigid or has no Steinberg witness; use a rational function field", field.descriptor()));
    }
    let f = field.base();
    let b = field.t()?;
    let a = field.one_minus(&b)?;
    let (rows, _) = class_matrix(field, &[a.clone(), b.clone()])?;
    let independent = rank(&rows, field.p()) == 2;
    let symbol = symbol(field, &a, &b)?;
    let mut prod = Poly::constant(f.one());
    let mut z = f.one();
    for _ in 0..field.p() {
        prod = f.poly_mul(&prod, &Poly::new(vec![f.one(), f.neg(&z)]));
        z = f.mul(&z, field.zeta());
    }
    let mut target = vec![f.zero(); field.p() as usize + 1];
    target[0] = f.one();
    target[field.p() as usize] = f.neg(&f.one());
    let norm_identity_verified = prod == Poly::new(target);
    if !independent || !symbol.is_zero() || !norm_identity_verified {
        return Err(Error::Verification("Steinberg witness failed to verify".into()));
    }
    debug_assert!(!power_class(field, &a)?.is_zero());
    Ok(SteinbergWitness { a, b, independent, symbol, norm_identity_verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_is_rigid() {
        let f = FieldDescriptor::parse("laurent(7,64)", 3).unwrap();
        let basis = default_basis(&f).unwrap();
        let r = is_field_rigid(&f, &basis).unwrap();
        assert!(r.rigid);
        assert_eq!(r.completeness, Completeness::Complete);
        assert_eq!(r.wedges.len(), 1);
        assert_eq!(r.wedges[0].2.entries.values().copied().collect::<Vec<_>>(), vec![1]);
        let t = f.parse_elem("t").unwrap();
        let e = is_element_rigid(&f, &t, &basis).unwrap();
        assert!(e.rigid);
        assert_eq!(e.kernel, vec![vec![0, 1]]);
        let e3 = is_element_rigid(&f, &basis[0], &basis).unwrap();
        assert!(e3.rigid);
        assert_eq!(e3.kernel, vec![vec![1, 0]]);
        assert!(matches!(is_element_rigid(&f, &f.parse_elem("8").unwrap(), &basis), Err(Error::IsPthPower { .. })));
    }

    #[test]
    fn ratfunc_is_not_rigid() {
        let f = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
        let basis = default_basis(&f).unwrap();
        let r = is_field_rigid(&f, &basis).unwrap();
        assert!(!r.rigid);
        assert_eq!(r.witness, Some((0, 1)));
        let e = is_element_rigid(&f, &basis[0], &basis).unwrap();
        assert!(!e.rigid);
        assert_eq!(e.kernel.len(), 2);
        let s = steinberg_witness(&f).unwrap();
        assert!(s.independent && s.symbol.is_zero());
        let nineteen = FieldDescriptor::parse("ratfunc(19)", 3).unwrap();
        assert_eq!(nineteen.k(), 2);
        assert!(steinberg_witness(&nineteen).unwrap().symbol.is_zero());
        let l = FieldDescriptor::parse("laurent(7,64)", 3).unwrap();
        assert!(matches!(steinberg_witness(&l), Err(Error::Usage(_))));
    }

    #[test]
    fn finite_field_trivially_rigid() {
        let f = FieldDescriptor::parse("gf(7)", 3).unwrap();
        let r = is_field_rigid(&f, &default_basis(&f).unwrap()).unwrap();
        assert!(r.rigid && r.wedges.is_empty());
        assert_eq!(r.completeness, Completeness::Trivial);
        let two = vec![f.parse_elem("3").unwrap(), f.parse_elem("5").unwrap()];
        assert!(matches!(is_field_rigid(&f, &two), Err(Error::DependentBasis)));
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = FieldDescriptor::parse("laurent(7,64)", 3).unwrap();
        let basis = vec![f.parse_elem("t").unwrap(), f.parse_elem("t^4").unwrap()];
        assert!(matches!(is_field_rigid(&f, &basis), Err(Error::DependentBasis)));
    }
}
