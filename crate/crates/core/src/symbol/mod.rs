//! Power classes and degree-`p` tame symbols over `F_q`, `F_q((t))` and
//! `F_q(t)`, with the rigidity tests, Kummer towers and the Hilbert 90
//! non-rigidity witness built on top of them.
//!
//! Symbols take values in `Z/p`: a symbol is zero exactly when the
//! corresponding cyclic algebra splits. Over `F_q(t)` a symbol is a vector
//! of local values, one per place, and splitting means every local value
//! vanishes.
//!
//! ```
//! use prigid::symbol::{FieldDescriptor, tame_symbol_local};
//! let f = FieldDescriptor::parse("laurent(7,64)", 3).unwrap();
//! let three = f.parse_elem("3").unwrap();
//! let t = f.parse_elem("t").unwrap();
//! assert_eq!(tame_symbol_local(&f, &three, &t).unwrap(), 1);
//! ```

mod extension;
mod rigidity;
mod tower;
mod witness;

pub use extension::{extend_by_pth_root, hereditary_probe, ExtensionKind, HereditaryNode, HereditaryReport, PthRootExtension};
pub use rigidity::{
    default_basis, is_element_rigid, is_field_rigid, steinberg_witness, Completeness, ElementRigidity, FieldRigidity,
    SteinbergWitness,
};
pub use tower::{
    galois_criterion_level, kummer_tower, tower_galois_group, LevelAutomorphism, TowerGaloisGroup, TowerLevel,
    DEFAULT_TOWER_BOUND,
};
pub use witness::{
    galois_criterion_bicyclic, hilbert90_witness, AlgElem, BicyclicAlgebra, GaloisVerdict, ValuationCertificate,
    WitnessBundle, THETA_CANDIDATES,
};

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{exact_log, is_prime, prime_divisors};
use crate::error::{usage, Error, Result};
use crate::expr::parse_ratfunc;
use crate::fq::{FqElem, FqField, Poly};
use crate::ratfunc::{Place, RatFunc};
use crate::series::Laurent;

pub const DEFAULT_LAURENT_PRECISION: i64 = 64;
pub const MIN_LAURENT_PRECISION: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Finite,
    /// `F_q((t))`, series carried to `precision` terms past the leading one.
    Laurent { precision: i64 },
    RatFunc,
}

/// A field `F` together with the prime `p` and the data fixed by it: the
/// roots-of-unity depth `k`, the primitive `p`-th root `zeta`, and the
/// canonical non-residue `u*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    kind: FieldKind,
    base: FqField,
    p: u64,
    k: u32,
    zeta: FqElem,
    ustar: FqElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Fin(FqElem),
    Laurent(Laurent),
    Rat(RatFunc),
}

/// Coordinates of `[a]` in `F^* / F^{*p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerClass {
    Finite(u64),
    /// Class of the leading coefficient and valuation mod `p`.
    Laurent { u: u64, v: u64 },
    /// Leading-coefficient class and nonzero exponents mod `p` at places.
    RatFunc { leading: u64, places: BTreeMap<Place, u64> },
}

/// Local symbol values at places; only nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolVector {
    pub entries: BTreeMap<Place, u64>,
}

impl SymbolVector {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, place: &Place) -> u64 {
        self.entries.get(place).copied().unwrap_or(0)
    }

    pub fn sum(&self, p: u64) -> u64 {
        self.entries.values().fold(0, |a, v| (a + v) % p)
    }

    pub fn labeled(&self, f: &FqField) -> Vec<(String, u64)> {
        self.entries.iter().map(|(pl, v)| (pl.label(f), *v)).collect()
    }
}

/// The single place of `F_q((t))`, labelled like the place `t` of `F_q(t)`.
fn laurent_place(f: &FqField) -> Place {
    Place::Finite(f.poly_x())
}

fn parse_base(s: &str) -> Result<FqField> {
    let s = s.trim();
    match s.split_once('^') {
        Some((l, e)) => {
            let ell = l.trim().parse().map_err(|_| Error::Parse(format!("bad characteristic `{l}`")))?;
            let f = e.trim().parse().map_err(|_| Error::Parse(format!("bad degree `{e}`")))?;
            FqField::new(ell, f)
        }
        None => {
            let q: u64 = s.parse().map_err(|_| Error::Parse(format!("bad field size `{s}`")))?;
            match prime_divisors(q as u128).as_slice() {
                [ell] => FqField::new(*ell as u64, exact_log(q as u128, *ell).unwrap() as usize),
                _ => usage(format!("{q} is not a prime power")),
            }
        }
    }
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind, base: FqField, p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return usage(format!("p = {p} must be an odd prime"));
        }
        if p == base.characteristic() {
            return usage("p must differ from the characteristic");
        }
        if let FieldKind::Laurent { precision } = kind {
            if precision < MIN_LAURENT_PRECISION {
                return usage(format!("Laurent precision must be at least {MIN_LAURENT_PRECISION}"));
            }
        }
        let k = base.roots_of_unity_depth(p)?;
        let zeta = base.root_of_unity(p, 1)?;
        let ustar = base.canonical_nonresidue(p, &zeta)?;
        Ok(FieldDescriptor { kind, base, p, k, zeta, ustar })
    }

    /// `gf(7^3)`, `laurent(7,64)`, `laurent(7^3)`, `ratfunc(7)`.
    pub fn parse(s: &str, p: u64) -> Result<Self> {
        let s = s.trim();
        let (head, args) = s
            .strip_suffix(')')
            .and_then(|r| r.split_once('('))
            .ok_or_else(|| Error::Parse(format!("bad field descriptor `{s}`")))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        match (head.trim(), args.as_slice()) {
            ("gf", [q]) => Self::new(FieldKind::Finite, parse_base(q)?, p),
            ("ratfunc", [q]) => Self::new(FieldKind::RatFunc, parse_base(q)?, p),
            ("laurent", [q]) => {
                Self::new(FieldKind::Laurent { precision: DEFAULT_LAURENT_PRECISION }, parse_base(q)?, p)
            }
            ("laurent", [q, n]) => {
                let precision = n.parse().map_err(|_| Error::Parse(format!("bad precision `{n}`")))?;
                Self::new(FieldKind::Laurent { precision }, parse_base(q)?, p)
            }
            _ => Err(Error::Parse(format!("unknown field descriptor `{s}`"))),
        }
    }

    pub fn descriptor(&self) -> String {
        let q = if self.base.degree() == 1 {
            self.base.characteristic().to_string()
        } else {
            format!("{}^{}", self.base.characteristic(), self.base.degree())
        };
        match self.kind {
            FieldKind::Finite => format!("gf({q})"),
            FieldKind::Laurent { precision } => format!("laurent({q},{precision})"),
            FieldKind::RatFunc => format!("ratfunc({q})"),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn base(&self) -> &FqField {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Roots-of-unity depth: `mu_{p^k}` is in `F` and `mu_{p^{k+1}}` is not.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn zeta(&self) -> &FqElem {
        &self.zeta
    }

    /// Smallest-encoding unit of power-residue class 1.
    pub fn ustar(&self) -> &FqElem {
        &self.ustar
    }

    pub fn precision(&self) -> Option<i64> {
        match self.kind {
            FieldKind::Laurent { precision } => Some(precision),
            _ => None,
        }
    }

    /// The same field with a different coefficient field.
    pub fn with_base(&self, base: FqField) -> Result<Self> {
        Self::new(self.kind.clone(), base, self.p)
    }

    pub fn t(&self) -> Result<FieldElem> {
        match self.kind {
            FieldKind::Finite => usage("finite fields have no variable t"),
            FieldKind::Laurent { .. } => Ok(FieldElem::Laurent(Laurent::monomial(&self.base, self.base.one(), 1))),
            FieldKind::RatFunc => Ok(FieldElem::Rat(RatFunc::t(&self.base))),
        }
    }

    pub fn constant(&self, c: FqElem) -> FieldElem {
        match self.kind {
            FieldKind::Finite => FieldElem::Fin(c),
            FieldKind::Laurent { .. } => FieldElem::Laurent(Laurent::constant(&self.base, c)),
            FieldKind::RatFunc => FieldElem::Rat(RatFunc::constant(&self.base, c)),
        }
    }

    /// Parses an element. Laurent elements also accept `t^v * [c0,c1,...]`
    /// (exact unit part); rational functions use the expression syntax
    /// with `/`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let f = &self.base;
        match self.kind {
            FieldKind::Finite => Ok(FieldElem::Fin(f.parse_elem(s)?)),
            FieldKind::RatFunc => Ok(FieldElem::Rat(parse_ratfunc(f, s)?)),
            FieldKind::Laurent { precision } => {
                if let Some(l) = parse_unit_literal(f, s)? {
                    return Ok(FieldElem::Laurent(l));
                }
                let r = parse_ratfunc(f, s)?;
                Ok(FieldElem::Laurent(ratfunc_to_laurent(f, &r, precision)?))
            }
        }
    }

    pub fn format_elem(&self, x: &FieldElem) -> String {
        match x {
            FieldElem::Fin(c) => self.base.format_elem(c),
            FieldElem::Laurent(l) => l.format(&self.base, "t", 1),
            FieldElem::Rat(r) => r.format(&self.base),
        }
    }

    fn check_elem(&self, x: &FieldElem) -> Result<()> {
        match (&self.kind, x) {
            (FieldKind::Finite, FieldElem::Fin(c)) if self.base.is_zero(c) => Err(Error::ZeroElement),
            (FieldKind::Finite, FieldElem::Fin(_)) => Ok(()),
            (FieldKind::Laurent { precision }, FieldElem::Laurent(l)) => {
                if l.is_zero() {
                    return match l.abs_prec() {
                        None => Err(Error::ZeroElement),
                        Some(p) => Err(Error::Precision(format!("element is O(t^{p})"))),
                    };
                }
                match l.rel_prec() {
                    Some(r) if r < *precision => Err(Error::Precision(format!(
                        "element known to {r} terms, field precision is {precision}"
                    ))),
                    _ => Ok(()),
                }
            }
            (FieldKind::RatFunc, FieldElem::Rat(r)) if r.is_zero() => Err(Error::ZeroElement),
            (FieldKind::RatFunc, FieldElem::Rat(_)) => Ok(()),
            _ => usage(format!("element does not belong to {}", self.descriptor())),
        }
    }

    fn class_of(&self, c: &FqElem) -> Result<u64> {
        self.base.power_residue_class(c, self.p, &self.zeta)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let f = &self.base;
        Ok(match (a, b) {
            (FieldElem::Fin(x), FieldElem::Fin(y)) => FieldElem::Fin(f.mul(x, y)),
            (FieldElem::Laurent(x), FieldElem::Laurent(y)) => FieldElem::Laurent(x.mul(f, y)),
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x.mul(f, y)),
            _ => return usage("mixed element kinds"),
        })
    }

    pub fn pow(&self, a: &FieldElem, e: i64) -> Result<FieldElem> {
        let f = &self.base;
        Ok(match a {
            FieldElem::Fin(x) => FieldElem::Fin(f.pow_signed(x, e)?),
            FieldElem::Laurent(x) => {
                let base = if e < 0 { x.inv(f, self.precision().unwrap())? } else { x.clone() };
                FieldElem::Laurent(base.pow(f, e.unsigned_abs()))
            }
            FieldElem::Rat(x) => FieldElem::Rat(x.pow_signed(f, e)?),
        })
    }

    /// `1 - a`.
    pub fn one_minus(&self, a: &FieldElem) -> Result<FieldElem> {
        let f = &self.base;
        Ok(match a {
            FieldElem::Fin(x) => FieldElem::Fin(f.sub(&f.one(), x)),
            FieldElem::Laurent(x) => FieldElem::Laurent(Laurent::one(f).sub(f, x)),
            FieldElem::Rat(x) => FieldElem::Rat(RatFunc::from_int(f, 1).sub(f, x)),
        })
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let f = &self.base;
        match a {
            FieldElem::Fin(x) => FieldElem::Fin(f.neg(x)),
            FieldElem::Laurent(x) => FieldElem::Laurent(x.neg(f)),
            FieldElem::Rat(x) => FieldElem::Rat(x.neg(f)),
        }
    }
}

fn parse_unit_literal(f: &FqField, s: &str) -> Result<Option<Laurent>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (val, list) = if let Some(rest) = compact.strip_prefix("t^") {
        match rest.split_once("*[") {
            Some((v, l)) => (v.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent `{v}`")))?, l),
            None => return Ok(None),
        }
    } else if let Some(l) = compact.strip_prefix("t*[") {
        (1, l)
    } else if compact.starts_with("[[") || (f.degree() == 1 && compact.starts_with('[')) {
        (0, &compact[1..])
    } else {
        return Ok(None);
    };
    let inner = list.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unterminated list in `{s}`")))?;
    let mut coeffs = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                coeffs.push(f.parse_elem(&cur)?);
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        coeffs.push(f.parse_elem(&cur)?);
    }
    Ok(Some(Laurent::exact(f, val, coeffs)))
}

/// Expansion at `t = 0`; exact when the denominator is a monomial.
pub fn ratfunc_to_laurent(f: &FqField, r: &RatFunc, precision: i64) -> Result<Laurent> {
    let num = Laurent::from_poly(f, r.num());
    let den = Laurent::from_poly(f, r.den());
    num.div(f, &den, precision)
}

/// `[a]` in coordinates.
pub fn power_class(field: &FieldDescriptor, a: &FieldElem) -> Result<PowerClass> {
    field.check_elem(a)?;
    let p = field.p;
    match a {
        FieldElem::Fin(x) => Ok(PowerClass::Finite(field.class_of(x)?)),
        FieldElem::Laurent(l) => Ok(PowerClass::Laurent {
            u: field.class_of(l.leading().unwrap())?,
            v: l.valuation().unwrap().rem_euclid(p as i64) as u64,
        }),
        FieldElem::Rat(r) => {
            let leading = field.class_of(&r.leading_coefficient()?)?;
            let places = r
                .divisor(&field.base)?
                .into_iter()
                .filter_map(|(pl, e)| {
                    let m = e.rem_euclid(p as i64) as u64;
                    (m != 0).then_some((pl, m))
                })
                .collect();
            Ok(PowerClass::RatFunc { leading, places })
        }
    }
}

impl PowerClass {
    pub fn is_zero(&self) -> bool {
        match self {
            PowerClass::Finite(c) => *c == 0,
            PowerClass::Laurent { u, v } => *u == 0 && *v == 0,
            PowerClass::RatFunc { leading, places } => *leading == 0 && places.is_empty(),
        }
    }

    fn places(&self) -> Vec<Place> {
        match self {
            PowerClass::RatFunc { places, .. } => places.keys().cloned().collect(),
            _ => Vec::new(),
        }
    }

    /// Coordinate vector; for rational functions the coordinates are the
    /// leading class followed by the exponents at `places`.
    pub fn coordinates(&self, places: &[Place]) -> Vec<u64> {
        match self {
            PowerClass::Finite(c) => vec![*c],
            PowerClass::Laurent { u, v } => vec![*u, *v],
            PowerClass::RatFunc { leading, places: m } => {
                let mut out = vec![*leading];
                out.extend(places.iter().map(|pl| m.get(pl).copied().unwrap_or(0)));
                out
            }
        }
    }
}

/// Class coordinate vectors of several elements over a common place set.
pub fn class_matrix(field: &FieldDescriptor, elems: &[FieldElem]) -> Result<(Vec<Vec<u64>>, Vec<Place>)> {
    let classes = elems.iter().map(|e| power_class(field, e)).collect::<Result<Vec<_>>>()?;
    let places: BTreeSet<Place> = classes.iter().flat_map(PowerClass::places).collect();
    let places: Vec<Place> = places.into_iter().collect();
    Ok((classes.iter().map(|c| c.coordinates(&places)).collect(), places))
}

/// Tests `a` for being a `p`-th power, returning a root when it is one.
pub fn is_pth_power(field: &FieldDescriptor, a: &FieldElem) -> Result<Option<FieldElem>> {
    let class = power_class(field, a)?;
    if !class.is_zero() {
        return Ok(None);
    }
    let f = &field.base;
    let p = field.p;
    let root = match a {
        FieldElem::Fin(x) => FieldElem::Fin(f.pth_root(x, p)?),
        FieldElem::Laurent(l) => FieldElem::Laurent(l.pth_root(f, p, field.precision().unwrap())?),
        FieldElem::Rat(r) => {
            let mut acc = RatFunc::constant(f, f.pth_root(&r.leading_coefficient()?, p)?);
            for (pl, e) in r.divisor(f)? {
                if let Place::Finite(g) = pl {
                    acc = acc.mul(f, &RatFunc::from_poly(f, g).pow_signed(f, e / p as i64)?);
                }
            }
            FieldElem::Rat(acc)
        }
    };
    let back = field.pow(&root, p as i64)?;
    let agrees = match (&back, a) {
        (FieldElem::Laurent(x), FieldElem::Laurent(y)) => x.approx_eq(f, y),
        _ => back == *a,
    };
    if !agrees {
        return Err(Error::Verification("computed p-th root does not reproduce its input".into()));
    }
    Ok(Some(root))
}

/// `(-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}` on leading coefficients, as an
/// element of the coefficient field.
fn tame_value(f: &FqField, ca: &FqElem, va: i64, cb: &FqElem, vb: i64) -> Result<FqElem> {
    let mut x = f.mul(&f.pow_signed(ca, vb)?, &f.pow_signed(cb, -va)?);
    if (va * vb).rem_euclid(2) == 1 {
        x = f.neg(&x);
    }
    Ok(x)
}

/// Tame symbol `(a, b)` of `F_q((t))` in `Z/p`.
pub fn tame_symbol_local(field: &FieldDescriptor, a: &FieldElem, b: &FieldElem) -> Result<u64> {
    let (FieldElem::Laurent(x), FieldElem::Laurent(y)) = (a, b) else {
        return usage("the local tame symbol is defined on Laurent fields");
    };
    field.check_elem(a)?;
    field.check_elem(b)?;
    let v = tame_value(&field.base, x.leading().unwrap(), x.valuation().unwrap(), y.leading().unwrap(), y.valuation().unwrap())?;
    field.class_of(&v)
}

/// Local symbols of `(a, b)` at every place of `F_q(t)`, checked against
/// the reciprocity law (the values sum to zero).
pub fn symbol_vector_global(field: &FieldDescriptor, a: &FieldElem, b: &FieldElem) -> Result<SymbolVector> {
    let (FieldElem::Rat(x), FieldElem::Rat(y)) = (a, b) else {
        return usage("global symbol vectors are defined on rational function fields");
    };
    field.check_elem(a)?;
    field.check_elem(b)?;
    let f = &field.base;
    let p = field.p;
    let mut places: BTreeSet<Place> = x.divisor(f)?.into_iter().map(|(pl, _)| pl).collect();
    places.extend(y.divisor(f)?.into_iter().map(|(pl, _)| pl));
    places.insert(Place::Infinity);
    let mut out = SymbolVector::default();
    for place in places {
        let va = x.valuation(f, &place)?;
        let vb = y.valuation(f, &place)?;
        if va == 0 && vb == 0 {
            continue;
        }
        let mut w = x.pow_signed(f, vb)?.mul(f, &y.pow_signed(f, -va)?);
        if (va * vb).rem_euclid(2) == 1 {
            w = w.neg(f);
        }
        let value = match &place {
            Place::Infinity => field.class_of(&w.leading_coefficient()?)?,
            Place::Finite(g) => residue_class(field, &w.residue_at(f, g)?, g)?,
        };
        if value != 0 {
            out.entries.insert(place, value);
        }
    }
    if out.sum(p) != 0 {
        return Err(Error::Verification("symbol vector violates reciprocity".into()));
    }
    Ok(out)
}

/// Power-residue class of a residue in `F_q[t]/(g)`, normalized through the
/// norm to `F_q`: `r^{(q^d - 1)/p}` lies in `mu_p`.
fn residue_class(field: &FieldDescriptor, r: &Poly, g: &Poly) -> Result<u64> {
    let f = &field.base;
    let d = g.degree().unwrap() as u32;
    let qd = crate::arith::checked_pow(f.order(), d)
        .ok_or_else(|| Error::ResourceBound { what: "residue field size".into(), bound: u128::MAX })?;
    let e = (qd - 1) / field.p as u128;
    let y = f.poly_powmod(r, e, g);
    let c = match y.degree() {
        Some(0) => y.coeffs()[0].clone(),
        _ => return Err(Error::Verification("residue symbol escaped F_q".into())),
    };
    let mut z = f.one();
    for k in 0..field.p {
        if z == c {
            return Ok(k);
        }
        z = f.mul(&z, &field.zeta);
    }
    Err(Error::Verification("residue symbol escaped mu_p".into()))
}

/// The symbol of `(a, b)` in whichever form the field supports; the Brauer
/// group of a finite field is trivial, so those vectors are always zero.
pub fn symbol(field: &FieldDescriptor, a: &FieldElem, b: &FieldElem) -> Result<SymbolVector> {
    match field.kind {
        FieldKind::Finite => {
            field.check_elem(a)?;
            field.check_elem(b)?;
            Ok(SymbolVector::default())
        }
        FieldKind::Laurent { .. } => {
            let v = tame_symbol_local(field, a, b)?;
            let mut out = SymbolVector::default();
            if v != 0 {
                out.entries.insert(laurent_place(&field.base), v);
            }
            Ok(out)
        }
        FieldKind::RatFunc => symbol_vector_global(field, a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laurent7() -> FieldDescriptor {
        FieldDescriptor::parse("laurent(7,64)", 3).unwrap()
    }

    #[test]
    fn descriptors() {
        let f = laurent7();
        assert_eq!(f.k(), 1);
        assert_eq!(f.zeta(), &f.base().from_u64(2));
        assert_eq!(f.ustar(), &f.base().from_u64(3));
        assert_eq!(f.descriptor(), "laurent(7,64)");
        assert_eq!(FieldDescriptor::parse("gf(19)", 3).unwrap().k(), 2);
        assert!(matches!(FieldDescriptor::parse("laurent(7,4)", 3), Err(Error::Usage(_))));
        assert!(matches!(FieldDescriptor::parse("gf(5)", 3), Err(Error::Usage(_))));
        assert!(matches!(FieldDescriptor::parse("gf(7)", 2), Err(Error::Usage(_))));
        assert_eq!(FieldDescriptor::parse("ratfunc(4)", 3).unwrap().k(), 1);
    }

    #[test]
    fn laurent_classes() {
        let f = laurent7();
        let t = f.parse_elem("t").unwrap();
        assert_eq!(power_class(&f, &t).unwrap(), PowerClass::Laurent { u: 0, v: 1 });
        assert!(power_class(&f, &f.parse_elem("8t^3").unwrap()).unwrap().is_zero());
        assert_eq!(f.parse_elem("t^2 * [3, 1]").unwrap(), f.parse_elem("3t^2 + t^3").unwrap());
        let root = is_pth_power(&f, &f.parse_elem("1+t").unwrap()).unwrap().unwrap();
        let FieldElem::Laurent(r) = root else { panic!() };
        let b = f.base();
        assert_eq!((r.coeff(b, 0), r.coeff(b, 1), r.coeff(b, 2)), (b.from_u64(1), b.from_u64(5), b.from_u64(3)));
        assert!(is_pth_power(&f, &t).unwrap().is_none());
        assert!(is_pth_power(&f, &f.parse_elem("3").unwrap()).unwrap().is_none());
    }

    #[test]
    fn ratfunc_classes() {
        let f = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
        let b = f.base();
        let x = f.parse_elem("t(1-t)^2").unwrap();
        let PowerClass::RatFunc { leading, places } = power_class(&f, &x).unwrap() else { panic!() };
        assert_eq!(leading, 0);
        let expected: BTreeMap<Place, u64> =
            [(Place::Finite(b.poly_from_ints(&[0, 1])), 1), (Place::Finite(b.poly_from_ints(&[6, 1])), 2)]
                .into_iter()
                .collect();
        assert_eq!(places, expected);
        let cube = f.parse_elem("6(t+2)^3/t^6").unwrap();
        let root = is_pth_power(&f, &cube).unwrap().unwrap();
        assert_eq!(f.pow(&root, 3).unwrap(), cube);
    }

    #[test]
    fn local_symbol_examples() {
        let f = laurent7();
        let e = |s: &str| f.parse_elem(s).unwrap();
        assert_eq!(tame_symbol_local(&f, &e("t"), &e("t")).unwrap(), 0);
        assert_eq!(tame_symbol_local(&f, &e("3"), &e("t")).unwrap(), 1);
        assert_eq!(tame_symbol_local(&f, &e("t"), &e("3")).unwrap(), 2);
        assert_eq!(tame_symbol_local(&f, &e("3"), &e("5")).unwrap(), 0);
    }

    #[test]
    fn global_symbol_examples() {
        let f = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
        let e = |s: &str| f.parse_elem(s).unwrap();
        assert!(symbol_vector_global(&f, &e("t"), &e("1-t")).unwrap().is_zero());
        assert!(symbol_vector_global(&f, &e("t"), &e("t")).unwrap().is_zero());
        let v = symbol_vector_global(&f, &e("t"), &e("3")).unwrap();
        assert_eq!(v.get(&Place::Finite(f.base().poly_from_ints(&[0, 1]))), 2);
        assert_eq!(v.get(&Place::Infinity), 1);
        // a degree-2 place: t^2 + 1 is irreducible over F_7
        let w = symbol_vector_global(&f, &e("t^2+1"), &e("3")).unwrap();
        assert_eq!(w.sum(3), 0);
    }
}
