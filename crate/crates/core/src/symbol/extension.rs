use serde::Serialize;

use super::{default_basis, is_field_rigid, is_pth_power, power_class, FieldDescriptor, FieldElem, FieldKind, PowerClass};
use crate::arith::ext_gcd;
use crate::error::{usage, Error, Result};
use crate::fq::{Embedding, FqElem, FqField};
use crate::series::Laurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    /// Coefficient field grows to `F_{q^p}`, uniformizer unchanged.
    Unramified,
    /// New uniformizer `s` with `t = twist * s^p`.
    Ramified,
}

/// `F_q((t))(a^{1/p})` rewritten as a Laurent field `F'((s))`.
#[derive(Clone, Debug)]
pub struct PthRootExtension {
    pub base: FieldDescriptor,
    pub field: FieldDescriptor,
    pub kind: ExtensionKind,
    pub embedding: Embedding,
    /// `t = twist * s^ramification`.
    pub twist: FqElem,
    pub ramification: i64,
    pub generator: Laurent,
    /// `a^{1/p}` in the new field.
    pub root: Laurent,
}

impl PthRootExtension {
    /// Re-expresses an element of the base field in the new field, exactly.
    pub fn embed(&self, x: &Laurent) -> Laurent {
        let to = self.field.base();
        let e = self.ramification;
        let terms: Vec<(i64, FqElem)> = x
            .terms()
            .map(|(i, c)| {
                let tw = to.pow_signed(&self.twist, i).expect("twist is a unit");
                (i * e, to.mul(&self.embedding.apply(c), &tw))
            })
            .collect();
        let Some(lo) = terms.first().map(|t| t.0) else {
            return match x.abs_prec() {
                Some(p) => Laurent::big_o(p * e),
                None => Laurent::zero(),
            };
        };
        let hi = terms.last().unwrap().0;
        let mut coeffs = vec![to.zero(); (hi - lo + 1) as usize];
        for (i, c) in terms {
            coeffs[(i - lo) as usize] = c;
        }
        match x.abs_prec() {
            Some(p) => Laurent::with_prec(to, lo, coeffs, p * e),
            None => Laurent::exact(to, lo, coeffs),
        }
    }
}

/// Adjoins a `p`-th root of a non-`p`-th power `a` of `F_q((t))`.
///
/// With `a = t^v c (1 + ...)`: if `p | v` the extension is unramified and
/// generated by `c^{1/p}`; otherwise pick `alpha v + beta p = 1` and set
/// `s^p = c^alpha t`, in which `a` becomes `(s^v c^beta (1 + ...)^{1/p})^p`.
pub fn extend_by_pth_root(field: &FieldDescriptor, a: &Laurent) -> Result<PthRootExtension> {
    let FieldKind::Laurent { .. } = field.kind() else {
        return usage("p-th root extensions are normalized for Laurent fields");
    };
    let p = field.p();
    let elem = FieldElem::Laurent(a.clone());
    let PowerClass::Laurent { u, v } = power_class(field, &elem)? else { unreachable!() };
    if u == 0 && v == 0 {
        return Err(Error::IsPthPower { p });
    }
    let f = field.base();
    let (kind, target, twist, ramification) = if v == 0 {
        let target = FqField::new(f.characteristic(), f.degree() * p as usize)?;
        let one = target.one();
        (ExtensionKind::Unramified, target, one, 1)
    } else {
        let val = a.valuation().unwrap();
        let (g, alpha, _beta) = ext_gcd(val, p as i64);
        debug_assert_eq!(g.abs(), 1);
        let alpha = alpha * g;
        let c = f.pow_signed(a.leading().unwrap(), alpha)?;
        (ExtensionKind::Ramified, f.clone(), f.inv(&c)?, p as i64)
    };
    let embedding = Embedding::new(f, &target)?;
    let new_field = field.with_base(target)?;
    let mut ext = PthRootExtension {
        base: field.clone(),
        field: new_field,
        kind,
        embedding,
        twist,
        ramification,
        generator: a.clone(),
        root: Laurent::zero(),
    };
    let image = ext.embed(a);
    match is_pth_power(&ext.field, &FieldElem::Laurent(image))? {
        Some(FieldElem::Laurent(r)) => ext.root = r,
        _ => return Err(Error::Verification("adjoined generator is not a p-th power in the extension".into())),
    }
    Ok(ext)
}

#[derive(Clone, Debug)]
pub struct HereditaryNode {
    /// Exponents `(i, j)` of the generator `u*^i t^j` in the parent's basis.
    pub line: (u64, u64),
    pub kind: ExtensionKind,
    pub field: String,
    pub rigid: bool,
    pub children: Vec<HereditaryNode>,
}

#[derive(Clone, Debug)]
pub struct HereditaryReport {
    pub base: String,
    pub depth: u32,
    pub base_rigid: bool,
    pub nodes: Vec<HereditaryNode>,
    /// Number of extensions at each depth.
    pub level_counts: Vec<usize>,
    pub all_rigid: bool,
}

/// Representatives `(1, 0)` and `(j, 1)` of the `p + 1` lines of `(Z/p)^2`.
fn lines(p: u64) -> Vec<(u64, u64)> {
    std::iter::once((1, 0)).chain((0..p).map(|j| (j, 1))).collect()
}

/// Extends by a `p`-th root of each `u*^i t^j` over the lines of the class
/// group, re-checks rigidity, and recurses.
pub fn hereditary_probe(field: &FieldDescriptor, depth: u32) -> Result<HereditaryReport> {
    if !matches!(field.kind(), FieldKind::Laurent { .. }) {
        return usage("the hereditary probe runs on Laurent fields");
    }
    if depth > 3 {
        return usage("hereditary probe depth is limited to 3");
    }
    let base_rigid = is_field_rigid(field, &default_basis(field)?)?.rigid;
    let mut level_counts = vec![0; depth as usize];
    let nodes = probe(field, depth, 0, &mut level_counts)?;
    fn all(nodes: &[HereditaryNode]) -> bool {
        nodes.iter().all(|n| n.rigid && all(&n.children))
    }
    let all_rigid = base_rigid && all(&nodes);
    Ok(HereditaryReport { base: field.descriptor(), depth, base_rigid, nodes, level_counts, all_rigid })
}

fn probe(field: &FieldDescriptor, remaining: u32, level: usize, counts: &mut [usize]) -> Result<Vec<HereditaryNode>> {
    if remaining == 0 {
        return Ok(Vec::new());
    }
    let f = field.base();
    let mut out = Vec::new();
    for (i, j) in lines(field.p()) {
        let gen = Laurent::monomial(f, f.pow(field.ustar(), i as u128), j as i64);
        let ext = extend_by_pth_root(field, &gen)?;
        let rigid = is_field_rigid(&ext.field, &default_basis(&ext.field)?)?.rigid;
        counts[level] += 1;
        let children = probe(&ext.field, remaining - 1, level + 1, counts)?;
        out.push(HereditaryNode { line: (i, j), kind: ext.kind, field: ext.field.descriptor(), rigid, children });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> FieldDescriptor {
        FieldDescriptor::parse("laurent(7,64)", 3).unwrap()
    }

    #[test]
    fn unramified_by_three() {
        let f = base();
        let a = Laurent::constant(f.base(), f.base().from_u64(3));
        let ext = extend_by_pth_root(&f, &a).unwrap();
        assert_eq!(ext.kind, ExtensionKind::Unramified);
        assert_eq!(ext.field.descriptor(), "laurent(7^3,64)");
        let r = &ext.root;
        assert_eq!(r.pow(ext.field.base(), 3), ext.embed(&a));
    }

    #[test]
    fn ramified_pure_and_twisted() {
        let f = base();
        let b = f.base();
        let t = Laurent::monomial(b, b.one(), 1);
        let ext = extend_by_pth_root(&f, &t).unwrap();
        assert_eq!(ext.kind, ExtensionKind::Ramified);
        assert_eq!(ext.twist, b.one());
        assert_eq!(ext.embed(&t), Laurent::monomial(b, b.one(), 3));

        let three_t = Laurent::monomial(b, b.from_u64(3), 1);
        let ext = extend_by_pth_root(&f, &three_t).unwrap();
        // t = 3^{-1} s^3
        assert_eq!(ext.twist, b.inv(&b.from_u64(3)).unwrap());
        let image = ext.embed(&three_t);
        assert_eq!(image, Laurent::monomial(b, b.one(), 3));
        let u = Laurent::from_ints(b, 0, &[1, 1]);
        let round = ext.embed(&u);
        assert_eq!(round, Laurent::from_ints(b, 0, &[1, 0, 0, 5]));
        assert!(matches!(extend_by_pth_root(&f, &Laurent::from_ints(b, 3, &[1])), Err(Error::IsPthPower { .. })));
    }

    #[test]
    fn hereditary_depths() {
        let f = base();
        let r0 = hereditary_probe(&f, 0).unwrap();
        assert!(r0.nodes.is_empty() && r0.all_rigid);
        let r1 = hereditary_probe(&f, 1).unwrap();
        assert_eq!(r1.level_counts, vec![4]);
        assert!(r1.all_rigid);
        assert_eq!(r1.nodes.iter().filter(|n| n.kind == ExtensionKind::Unramified).count(), 1);
    }
}
