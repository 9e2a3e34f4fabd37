use super::{FieldDescriptor, FieldKind};
use crate::error::{usage, Error, Result};
use crate::fq::{FqElem, FqField};
use crate::ratfunc::RatFunc;
use crate::series::Laurent;

/// Resolvent seeds tried in order: `1, x, y, x+y, xy, x^2, y^2`, as
/// `(coefficient, i, j)` lists for `x^i y^j`.
pub const THETA_CANDIDATES: &[&[(i64, usize, usize)]] = &[
    &[(1, 0, 0)],
    &[(1, 1, 0)],
    &[(1, 0, 1)],
    &[(1, 1, 0), (1, 0, 1)],
    &[(1, 1, 1)],
    &[(1, 2, 0)],
    &[(1, 0, 2)],
];

/// `F(t)[x, y]/(x^p - b, y^p - a)`, a field of degree `p^2` over `F(t)`
/// when `[a]` and `[b]` are independent.
#[derive(Clone, Debug)]
pub struct BicyclicAlgebra {
    field: FqField,
    p: usize,
    a: RatFunc,
    b: RatFunc,
    zeta: FqElem,
}

/// `sum c[i*p + j] x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    c: Vec<RatFunc>,
}

impl AlgElem {
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RatFunc::is_zero)
    }
}

impl BicyclicAlgebra {
    pub fn new(field: &FqField, p: u64, a: RatFunc, b: RatFunc, zeta: FqElem) -> Self {
        BicyclicAlgebra { field: field.clone(), p: p as usize, a, b, zeta }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn descriptor(&self) -> String {
        let f = &self.field;
        format!("F(t)[x,y]/(x^{p} - ({}), y^{p} - ({}))", self.b.format(f), self.a.format(f), p = self.p)
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem { c: vec![RatFunc::from_int(&self.field, 0); self.p * self.p] }
    }

    pub fn scalar(&self, r: RatFunc) -> AlgElem {
        let mut e = self.zero();
        e.c[0] = r;
        e
    }

    pub fn one(&self) -> AlgElem {
        self.scalar(RatFunc::from_int(&self.field, 1))
    }

    /// `c x^i y^j`.
    pub fn monomial(&self, c: RatFunc, i: usize, j: usize) -> AlgElem {
        let mut e = self.zero();
        e.c[i * self.p + j] = c;
        e
    }

    pub fn x(&self) -> AlgElem {
        self.monomial(RatFunc::from_int(&self.field, 1), 1, 0)
    }

    pub fn y(&self) -> AlgElem {
        self.monomial(RatFunc::from_int(&self.field, 1), 0, 1)
    }

    pub fn from_terms(&self, terms: &[(i64, usize, usize)]) -> AlgElem {
        terms.iter().fold(self.zero(), |acc, &(c, i, j)| {
            self.add(&acc, &self.monomial(RatFunc::from_int(&self.field, c), i, j))
        })
    }

    pub fn add(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        AlgElem { c: u.c.iter().zip(&v.c).map(|(a, b)| a.add(&self.field, b)).collect() }
    }

    pub fn sub(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        AlgElem { c: u.c.iter().zip(&v.c).map(|(a, b)| a.sub(&self.field, b)).collect() }
    }

    pub fn mul(&self, u: &AlgElem, v: &AlgElem) -> AlgElem {
        let f = &self.field;
        let p = self.p;
        let mut out = self.zero();
        for (k1, a) in u.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k2, b) in v.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (i, j) = (k1 / p + k2 / p, k1 % p + k2 % p);
                let mut term = a.mul(f, b);
                if i >= p {
                    term = term.mul(f, &self.b);
                }
                if j >= p {
                    term = term.mul(f, &self.a);
                }
                let slot = (i % p) * p + j % p;
                out.c[slot] = out.c[slot].add(f, &term);
            }
        }
        out
    }

    /// `tau^e`: `x -> zeta^e x`, `y -> y`.
    pub fn tau(&self, u: &AlgElem, e: usize) -> AlgElem {
        self.twist(u, e, 0)
    }

    /// `x -> zeta^e1 x`, `y -> zeta^e2 y`.
    pub fn twist(&self, u: &AlgElem, e1: usize, e2: usize) -> AlgElem {
        let f = &self.field;
        let p = self.p;
        AlgElem {
            c: u.c
                .iter()
                .enumerate()
                .map(|(k, r)| r.scale(f, &f.pow(&self.zeta, ((k / p * e1 + k % p * e2) % p) as u128)))
                .collect(),
        }
    }

    /// Norm down to `F(t)`: the product of all `p^2` conjugates.
    pub fn norm(&self, u: &AlgElem) -> Result<RatFunc> {
        let n = self.conjugate_product(u);
        let full = self.mul(&n, u);
        if full.c.iter().skip(1).any(|r| !r.is_zero()) {
            return Err(Error::Verification("norm is not a scalar".into()));
        }
        Ok(full.c[0].clone())
    }

    fn conjugate_product(&self, u: &AlgElem) -> AlgElem {
        let mut acc = self.one();
        for e1 in 0..self.p {
            for e2 in 0..self.p {
                if e1 != 0 || e2 != 0 {
                    acc = self.mul(&acc, &self.twist(u, e1, e2));
                }
            }
        }
        acc
    }

    pub fn inv(&self, u: &AlgElem) -> Result<AlgElem> {
        let n = self.norm(u)?;
        let ni = n.inv(&self.field)?;
        let prod = self.conjugate_product(u);
        Ok(AlgElem { c: prod.c.iter().map(|r| r.mul(&self.field, &ni)).collect() })
    }

    /// Norm of `u` from `F(t)[x]` (the `tau`-orbit only).
    pub fn tau_norm(&self, u: &AlgElem) -> AlgElem {
        (0..self.p).fold(self.one(), |acc, e| self.mul(&acc, &self.tau(u, e)))
    }

    pub fn format(&self, u: &AlgElem) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (k, r) in u.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let (i, j) = (k / self.p, k % self.p);
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => pw("x", i),
                (0, j) => pw("y", j),
                (i, j) => format!("{}*{}", pw("x", i), pw("y", j)),
            };
            let coef = r.format(f);
            parts.push(match (mono.is_empty(), coef.as_str()) {
                (true, _) => format!("({coef})"),
                (false, "1") => mono,
                (false, _) => format!("({coef})*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn pw(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Valuations at the place `P` of `E` centred at `(x, y) = (1, 0)`, with
/// local parameter `y`, `t = 1 - y^p` and `x = (1 - y^p)^{1/p}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValuationCertificate {
    pub place: String,
    pub v_one_minus_x: i64,
    pub v_y: i64,
    pub v_beta: i64,
    pub v_gamma: i64,
}

/// Local expansion at the certificate place.
struct LocalExpansion<'a> {
    alg: &'a BicyclicAlgebra,
    t: Laurent,
    x: Laurent,
    y: Laurent,
    prec: i64,
}

impl<'a> LocalExpansion<'a> {
    fn new(alg: &'a BicyclicAlgebra, prec: i64) -> Result<Self> {
        let f = &alg.field;
        let p = alg.p as i64;
        let t = Laurent::one(f).sub(f, &Laurent::monomial(f, f.one(), p));
        let x = t.pth_root(f, alg.p as u64, prec)?;
        if !f.is_one(x.leading().unwrap()) {
            return Err(Error::Verification("local branch does not pass through x = 1".into()));
        }
        let y = Laurent::monomial(f, f.one(), 1);
        // the relations hold in F_q((y)), so this is a field embedding of E
        let a_loc = alg.a.substitute(f, &t, prec)?;
        let b_loc = alg.b.substitute(f, &t, prec)?;
        if !y.pow(f, alg.p as u64).approx_eq(f, &a_loc) || !x.pow(f, alg.p as u64).approx_eq(f, &b_loc) {
            return Err(Error::Verification("local parametrization does not satisfy the relations".into()));
        }
        Ok(LocalExpansion { alg, t, x, y, prec })
    }

    fn eval(&self, u: &AlgElem) -> Result<Laurent> {
        let f = &self.alg.field;
        let p = self.alg.p;
        let mut acc = Laurent::zero();
        for (k, r) in u.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let term = r
                .substitute(f, &self.t, self.prec)?
                .mul(f, &self.x.pow(f, (k / p) as u64))
                .mul(f, &self.y.pow(f, (k % p) as u64));
            acc = acc.add(f, &term);
        }
        Ok(acc)
    }

    fn valuation(&self, u: &AlgElem) -> Result<i64> {
        let s = self.eval(u)?;
        s.valuation().ok_or_else(|| Error::Precision("local expansion vanished to working precision".into()))
    }
}

#[derive(Clone, Debug)]
pub struct WitnessBundle {
    pub algebra: BicyclicAlgebra,
    pub a: RatFunc,
    pub b: RatFunc,
    pub delta: AlgElem,
    pub c: AlgElem,
    pub beta: AlgElem,
    /// Index into [`THETA_CANDIDATES`] of the seed used.
    pub theta_index: usize,
    pub gamma: AlgElem,
    pub norm_delta: AlgElem,
    pub norm_verified: bool,
    pub resolvent_verified: bool,
    pub certificate: ValuationCertificate,
}

const WITNESS_PRECISION: i64 = 64;

/// Builds `gamma` in `E = F(t)[x,y]/(x^p - t, y^p - (1 - t))` with
/// `tau(gamma) = beta gamma`, `beta = (1 - x)/y`, and certifies that
/// `beta` is not a `p`-th power in `E` by its valuation at `(1, 0)`.
pub fn hilbert90_witness(field: &FieldDescriptor) -> Result<WitnessBundle> {
    if *field.kind() != FieldKind::RatFunc {
        return usage("the Hilbert 90 witness lives over a rational function field");
    }
    let f = field.base();
    let p = field.p() as usize;
    let b = RatFunc::t(f);
    let a = RatFunc::from_int(f, 1).sub(f, &b);
    let alg = BicyclicAlgebra::new(f, field.p(), a.clone(), b.clone(), field.zeta().clone());
    let delta = alg.sub(&alg.one(), &alg.x());
    let c = alg.y();
    let norm_delta = alg.tau_norm(&delta);
    let norm_verified = norm_delta == alg.scalar(a.clone());
    let beta = alg.mul(&delta, &alg.inv(&c)?);
    // partial products A_i = prod_{j<i} tau^j(beta), coefficients c_i = A_i^{-1}
    let mut partial = vec![alg.one()];
    for j in 0..p - 1 {
        let next = alg.mul(partial.last().unwrap(), &alg.tau(&beta, j));
        partial.push(next);
    }
    let coeffs = partial.iter().map(|x| alg.inv(x)).collect::<Result<Vec<_>>>()?;
    let mut found = None;
    for (idx, terms) in THETA_CANDIDATES.iter().enumerate() {
        let theta = alg.from_terms(terms);
        let gamma = (0..p).fold(alg.zero(), |acc, i| alg.add(&acc, &alg.mul(&coeffs[i], &alg.tau(&theta, i))));
        if !gamma.is_zero() {
            found = Some((idx, gamma));
            break;
        }
    }
    let (theta_index, gamma) =
        found.ok_or_else(|| Error::Verification("every resolvent seed produced gamma = 0".into()))?;
    let resolvent_verified = alg.tau(&gamma, 1) == alg.mul(&beta, &gamma);
    let local = LocalExpansion::new(&alg, WITNESS_PRECISION)?;
    let certificate = ValuationCertificate {
        place: "(x, y) = (1, 0), local parameter y".into(),
        v_one_minus_x: local.valuation(&delta)?,
        v_y: local.valuation(&c)?,
        v_beta: local.valuation(&beta)?,
        v_gamma: local.valuation(&gamma)?,
    };
    if !norm_verified || !resolvent_verified || certificate.v_beta.rem_euclid(p as i64) == 0 {
        return Err(Error::Verification("Hilbert 90 witness failed to verify".into()));
    }
    Ok(WitnessBundle {
        algebra: alg,
        a,
        b,
        delta,
        c,
        beta,
        theta_index,
        gamma,
        norm_delta,
        norm_verified,
        resolvent_verified,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisVerdict {
    Galois,
    /// Decided at a Laurent level: `g(a)/a` has the given nonzero class
    /// `(unit class, valuation mod p)`.
    NonGalois { automorphism: String, class: (u64, u64) },
    /// `g(a)/a` has a valuation prime to `p` at a place of `E`.
    NonGaloisCertified { automorphism: String, place: String, valuation: i64 },
    Undecided { reason: String },
}

/// Galois criterion in the bicyclic algebra for the automorphisms
/// `x -> zeta^e1 x, y -> zeta^e2 y` listed in `automorphisms`.
pub fn galois_criterion_bicyclic(
    alg: &BicyclicAlgebra,
    a: &AlgElem,
    automorphisms: &[(usize, usize)],
) -> Result<GaloisVerdict> {
    let local = LocalExpansion::new(alg, WITNESS_PRECISION)?;
    let ainv = alg.inv(a)?;
    let mut undecided = Vec::new();
    for &(e1, e2) in automorphisms {
        let ratio = alg.mul(&alg.twist(a, e1, e2), &ainv);
        if ratio == alg.one() {
            continue;
        }
        let v = local.valuation(&ratio)?;
        if v.rem_euclid(alg.p as i64) != 0 {
            return Ok(GaloisVerdict::NonGaloisCertified {
                automorphism: format!("x -> zeta^{e1} x, y -> zeta^{e2} y"),
                place: "(x, y) = (1, 0)".into(),
                valuation: v,
            });
        }
        undecided.push(format!("({e1},{e2})"));
    }
    if undecided.is_empty() {
        Ok(GaloisVerdict::Galois)
    } else {
        Ok(GaloisVerdict::Undecided {
            reason: format!("no valuation obstruction for automorphisms {}", undecided.join(", ")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_over_f7() {
        let f = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
        let w = hilbert90_witness(&f).unwrap();
        assert!(w.norm_verified && w.resolvent_verified);
        assert_eq!(w.theta_index, 0);
        assert_eq!(w.certificate.v_one_minus_x, 3);
        assert_eq!(w.certificate.v_y, 1);
        assert_eq!(w.certificate.v_beta, 2);
        let alg = &w.algebra;
        assert_eq!(alg.mul(&w.beta, &w.c), w.delta);
        let v = galois_criterion_bicyclic(alg, &w.gamma, &[(1, 0)]).unwrap();
        assert!(matches!(v, GaloisVerdict::NonGaloisCertified { valuation: 2, .. }));
        assert_eq!(galois_criterion_bicyclic(alg, &w.gamma, &[]).unwrap(), GaloisVerdict::Galois);
        assert_eq!(galois_criterion_bicyclic(alg, &alg.scalar(RatFunc::t(f.base())), &[(1, 1)]).unwrap(), GaloisVerdict::Galois);
    }

    #[test]
    fn witness_over_f19() {
        let f = FieldDescriptor::parse("ratfunc(19)", 3).unwrap();
        let w = hilbert90_witness(&f).unwrap();
        assert_eq!((w.certificate.v_one_minus_x, w.certificate.v_beta), (3, 2));
    }

    #[test]
    fn algebra_inverse() {
        let f = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
        let w = hilbert90_witness(&f).unwrap();
        let alg = &w.algebra;
        let u = alg.add(&alg.x(), &alg.y());
        assert_eq!(alg.mul(&u, &alg.inv(&u).unwrap()), alg.one());
    }
}
