//! Newton-Puiseux roots over `F_q((t))` for polynomials whose splitting
//! field is a `p`-power extension, and their rewriting as non-nested
//! radicals.
//!
//! ```
//! use prigid::puiseux::{puiseux_roots, verify_root, SeriesPoly};
//! use prigid::symbol::FieldDescriptor;
//! let field = FieldDescriptor::parse("laurent(7)", 3).unwrap();
//! let f = SeriesPoly::parse(&field, "X^3 - (1 + t)").unwrap();
//! let roots = puiseux_roots(&field, &f, 3, 9).unwrap();
//! assert_eq!(roots.len(), 3);
//! assert!(roots.iter().any(|r| r.format() == "1 + 5*t + 3*t^2 + O(t^3)"));
//! for r in &roots {
//!     assert!(verify_root(field.base(), &f, r).unwrap().ok);
//! }
//! ```

mod radical;

use std::fmt;

use num_rational::Ratio;

use crate::arith::{checked_pow, exact_log};
use crate::error::{usage, Error, Result};
use crate::expr::parse_bivariate;
use crate::fq::{Embedding, FqElem, FqField, Poly};
use crate::ratfunc::RatFunc;
use crate::series::Laurent;
use crate::symbol::{ratfunc_to_laurent, FieldDescriptor, FieldKind};

pub use radical::{as_nonnested_radicals, splitting_descriptor, RadicalExpression, RadicalTerm, SplittingDescriptor};

/// Largest `r` for coefficient fields `F_{q^{p^r}}`.
pub const MAX_COEFFICIENT_STEPS: u32 = 3;

const MAX_NEWTON_STEPS: usize = 64;

/// Polynomial in `X` with Laurent coefficients; `coeffs[i]` multiplies `X^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<Laurent>,
}

impl SeriesPoly {
    pub fn new(mut coeffs: Vec<Laurent>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero() && c.is_exact()) {
            coeffs.pop();
        }
        match coeffs.last() {
            None => Err(Error::ZeroElement),
            Some(c) if c.is_zero() => Err(Error::Precision("leading coefficient vanishes to its precision".into())),
            Some(_) => Ok(SeriesPoly { coeffs }),
        }
    }

    /// Parses an expression in `X` and `t`, such as `X^3 - (1 + t)`.
    pub fn parse(field: &FieldDescriptor, s: &str) -> Result<Self> {
        let f = field.base();
        let prec = field.precision().unwrap_or(crate::symbol::DEFAULT_LAURENT_PRECISION);
        let bi = parse_bivariate(f, s)?;
        Self::new(bi.iter().map(|r| ratfunc_to_laurent(f, r, prec)).collect::<Result<_>>()?)
    }

    /// One Laurent literal per coefficient, constant term first.
    pub fn from_literals(field: &FieldDescriptor, lits: &[&str]) -> Result<Self> {
        let coeffs = lits
            .iter()
            .map(|s| match field.parse_elem(s)? {
                crate::symbol::FieldElem::Laurent(l) => Ok(l),
                _ => usage("polynomial coefficients must be Laurent series"),
            })
            .collect::<Result<_>>()?;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Laurent] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Laurent::is_exact)
    }

    /// `prod (X - r_i)`.
    pub fn from_roots(f: &FqField, roots: &[Laurent]) -> Result<Self> {
        let mut acc = vec![Laurent::one(f)];
        for r in roots {
            let mut next = vec![Laurent::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].add(f, c);
                next[i] = next[i].sub(f, &c.mul(f, r));
            }
            acc = next;
        }
        Self::new(acc)
    }

    pub fn mul(&self, f: &FqField, other: &Self) -> Self {
        let mut out = vec![Laurent::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(f, &a.mul(f, b));
            }
        }
        SeriesPoly { coeffs: out }
    }

    pub fn eval(&self, f: &FqField, x: &Laurent) -> Laurent {
        horner(f, &self.coeffs, x, None)
    }

    pub fn format(&self, f: &FqField) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && c.is_exact() {
                continue;
            }
            let x = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            let cs = c.format(f, "t", 1);
            parts.push(match (x.is_empty(), cs.as_str()) {
                (true, _) => format!("({cs})"),
                (false, "1") => x,
                (false, _) => format!("({cs})*{x}"),
            });
        }
        parts.join(" + ")
    }

    /// `a_i(t) -> a_i(z^e)` with coefficients moved along `emb`.
    fn lift(&self, emb: &Embedding, e: i64) -> Vec<Laurent> {
        self.coeffs
            .iter()
            .map(|a| a.substitute_power(&emb.source, e).map_coeffs(&emb.target, |c| emb.apply(c)))
            .collect()
    }
}

fn horner(f: &FqField, coeffs: &[Laurent], x: &Laurent, cap: Option<i64>) -> Laurent {
    let mut acc = Laurent::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(f, x).add(f, c);
        if let Some(cap) = cap {
            acc = acc.truncate(f, cap);
        }
    }
    acc
}

fn derivative(f: &FqField, coeffs: &[Laurent]) -> Vec<Laurent> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(f, &f.from_u64(i as u64))).collect()
}

/// One edge of the lower convex hull of `(i, v(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    /// Valuation of the roots attached to this edge (minus the edge slope).
    pub slope: Ratio<i64>,
    pub length: usize,
    pub start: usize,
    pub end: usize,
}

/// Edges from left to right, so root valuations decrease.
pub fn newton_polygon(f: &SeriesPoly) -> Result<Vec<NewtonSegment>> {
    segments(&f.coeffs)
}

fn segments(coeffs: &[Laurent]) -> Result<Vec<NewtonSegment>> {
    let pts: Vec<(i64, i64)> =
        coeffs.iter().enumerate().filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v))).collect();
    if pts.is_empty() {
        return Err(Error::ZeroElement);
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(hull
        .windows(2)
        .map(|w| NewtonSegment {
            slope: Ratio::new(w[0].1 - w[1].1, w[1].0 - w[0].0),
            length: (w[1].0 - w[0].0) as usize,
            start: w[0].0 as usize,
            end: w[1].0 as usize,
        })
        .collect())
}

/// A root `sum c_m z^m` with `z = t^{1/e}`, `e = p^s`, and coefficients in
/// the subfield `F_{q^{p^r}}` of `field`.
#[derive(Clone, Debug)]
pub struct PuiseuxRoot {
    pub e: u64,
    pub s: u32,
    pub r: u32,
    /// Field holding the coefficients; contains `F_{q^{p^r}}`.
    pub field: FqField,
    /// The root as a series in `z`.
    pub series: Laurent,
    /// Requested precision in powers of `t`.
    pub precision: i64,
}

impl PuiseuxRoot {
    /// Wraps a series in `z = t^{1/e}` over `field`; `r` and `s` are
    /// recomputed from the series.
    pub fn from_series(base: &FqField, field: &FqField, p: u64, e: u64, series: Laurent, precision: i64) -> Result<Self> {
        let s = exact_log(e as u128, p as u128).ok_or_else(|| Error::Usage(format!("ramification {e} is not a power of {p}")))?;
        let r = coefficient_steps(base, field, p, &series)?;
        Ok(PuiseuxRoot { e, s, r, field: field.clone(), series, precision })
    }

    /// `(m, c)` for the terms `c t^{m/e}`.
    pub fn terms(&self) -> Vec<(i64, FqElem)> {
        self.series.terms().filter(|(_, c)| !self.field.is_zero(c)).map(|(m, c)| (m, c.clone())).collect()
    }

    pub fn format(&self) -> String {
        self.series.format(&self.field, "t", self.e as i64)
    }

    /// Re-expresses the root in `z' = t^{1/e'}` for a multiple `e'` of `e`.
    pub fn series_in(&self, e: u64) -> Laurent {
        assert_eq!(e % self.e, 0);
        self.series.substitute_power(&self.field, (e / self.e) as i64)
    }
}

/// Smallest `r` with every coefficient in `F_{q^{p^r}}`.
fn coefficient_steps(base: &FqField, field: &FqField, p: u64, series: &Laurent) -> Result<u32> {
    let fdeg = base.degree();
    if !field.degree().is_multiple_of(fdeg) {
        return usage(format!("{field} does not contain {base}"));
    }
    let mut r = 0;
    for (_, c) in series.terms() {
        while field.frobenius(c, fdeg * p.pow(r) as usize) != *c {
            r += 1;
            if fdeg * p.pow(r) as usize > field.degree() {
                return Err(Error::Verification("coefficient outside the p-power subfields".into()));
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    /// The residual is exactly zero.
    Zero,
    /// Every known coefficient vanishes, up to `t^v`.
    AtLeast(Ratio<i64>),
    /// Leading term `t^v`.
    Exactly(Ratio<i64>),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Zero => write!(f, "exact"),
            Residual::AtLeast(v) => write!(f, ">= {v}"),
            Residual::Exactly(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCheck {
    pub residual: Residual,
    pub ok: bool,
    /// Exponent (numerator over `e`) of the first residual coefficient not
    /// known to vanish, when the check fails.
    pub offending_index: Option<i64>,
}

/// Substitutes the root into `f` and measures the residual in powers of `t`.
pub fn verify_root(base: &FqField, f: &SeriesPoly, root: &PuiseuxRoot) -> Result<RootCheck> {
    let emb = Embedding::new(base, &root.field)?;
    let e = root.e as i64;
    let coeffs = f.lift(&emb, e);
    let res = horner(&root.field, &coeffs, &root.series, None);
    let target = root.precision * e;
    let (residual, first) = match (res.valuation(), res.abs_prec()) {
        (None, None) => (Residual::Zero, None),
        (None, Some(p)) => (Residual::AtLeast(Ratio::new(p, e)), Some(p)),
        (Some(v), _) => (Residual::Exactly(Ratio::new(v, e)), Some(v)),
    };
    let ok = first.is_none_or(|i| i >= target) && !matches!(residual, Residual::Exactly(_));
    Ok(RootCheck { residual, ok, offending_index: if ok { None } else { first } })
}

/// Exact coefficients as rational functions; `None` for truncated input.
fn to_ratfuncs(f: &FqField, poly: &SeriesPoly) -> Option<Vec<RatFunc>> {
    poly.coeffs
        .iter()
        .map(|c| {
            if !c.is_exact() {
                return None;
            }
            let v = c.valuation().unwrap_or(0);
            let num = c.shift(-v).to_poly(f)?;
            let mut mono = vec![f.zero(); v.unsigned_abs() as usize];
            mono.push(f.one());
            let mono = Poly::new(mono);
            Some(if v >= 0 {
                RatFunc::from_poly(f, f.poly_mul(&num, &mono))
            } else {
                RatFunc::new(f, &num, &mono).ok()?
            })
        })
        .collect()
}

fn trim(mut a: Vec<RatFunc>) -> Vec<RatFunc> {
    while a.last().is_some_and(RatFunc::is_zero) {
        a.pop();
    }
    a
}

/// `a mod b` in `F_q(t)[X]`.
fn rem(f: &FqField, mut a: Vec<RatFunc>, b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let lead = b.last().unwrap().inv(f)?;
    while a.len() >= b.len() {
        let q = a.last().unwrap().mul(f, &lead);
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[i + shift] = a[i + shift].sub(f, &q.mul(f, c));
        }
        a.pop();
        a = trim(a);
    }
    Ok(a)
}

/// Squarefree if some specialization `t = c` keeps the degree and is
/// squarefree over `F_q(c)`: a square factor would survive it.
fn squarefree_by_specialization(f: &FqField, poly: &SeriesPoly) -> Option<bool> {
    let lo = poly.coeffs.iter().filter_map(Laurent::valuation).min()?;
    let polys: Vec<Poly> = poly.coeffs.iter().map(|c| c.shift(-lo).to_poly(f)).collect::<Option<_>>()?;
    for j in 1..=3 {
        let Ok(ext) = FqField::new(f.characteristic(), f.degree() * j) else { break };
        let Ok(emb) = Embedding::new(f, &ext) else { break };
        let lifted: Vec<Poly> =
            polys.iter().map(|p| Poly::new(p.coeffs().iter().map(|c| emb.apply(c)).collect())).collect();
        for c in ext.elements().take(64) {
            let spec = Poly::new(lifted.iter().map(|p| ext.poly_eval(p, &c)).collect());
            if spec.degree() != Some(poly.degree()) {
                continue;
            }
            let g = ext.poly_gcd(&spec, &ext.poly_derivative(&spec));
            if g.degree() == Some(0) {
                return Some(true);
            }
        }
    }
    None
}

/// Whether `gcd(f, f')` is constant, for exact input.
pub fn is_squarefree(f: &FqField, poly: &SeriesPoly) -> Option<bool> {
    if let Some(yes) = squarefree_by_specialization(f, poly) {
        return Some(yes);
    }
    let a = trim(to_ratfuncs(f, poly)?);
    let da: Vec<RatFunc> = trim(a.iter().enumerate().skip(1).map(|(i, c)| c.mul(f, &RatFunc::from_int(f, i as i64))).collect());
    if da.is_empty() {
        return Some(a.len() <= 1);
    }
    let (mut x, mut y) = (a, da);
    while !y.is_empty() {
        let r = rem(f, x, &y).ok()?;
        x = y;
        y = r;
    }
    Some(x.len() <= 1)
}

/// What the current coefficient field or ramification is missing.
#[derive(Clone, Copy, Debug)]
enum Need {
    Ramify(i64),
    Extend(usize),
}

struct Solver<'a> {
    f: &'a FqField,
}

fn binomials(n: usize, ell: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = (prev[j - 1] + prev[j]) % ell;
        }
        rows.push(row);
    }
    rows
}

impl Solver<'_> {
    /// `z^{-mu} g(z^gamma (c + Y))`, integral, truncated at `cap`.
    fn recentre(&self, g: &[Laurent], gamma: i64, mu: i64, c: &FqElem, cap: i64) -> Vec<Laurent> {
        let f = self.f;
        let binom = binomials(g.len(), f.characteristic());
        let cpow: Vec<FqElem> = (0..g.len()).map(|i| f.pow(c, i as u128)).collect();
        (0..g.len())
            .map(|j| {
                let mut acc = Laurent::zero();
                for (i, a) in g.iter().enumerate().skip(j) {
                    let k = f.mul(&f.from_u64(binom[i][j]), &cpow[i - j]);
                    if f.is_zero(&k) {
                        continue;
                    }
                    acc = acc.add(f, &a.shift(i as i64 * gamma - mu).scale(f, &k));
                }
                acc.truncate(f, cap)
            })
            .collect()
    }

    /// Roots of `g`; with `positive` only those of positive valuation,
    /// of which there must be `expect`.
    fn roots(&self, g: &[Laurent], cap: i64, positive: Option<usize>) -> Result<std::result::Result<Vec<Laurent>, Need>> {
        let f = self.f;
        if cap <= 0 {
            return Err(Error::Precision("roots are not separated at the working precision".into()));
        }
        let mut out = Vec::new();
        let mut g = g.to_vec();
        if g[0].is_zero() {
            if !g[0].is_exact() {
                if positive.is_some() && g.get(1).and_then(Laurent::valuation) == Some(0) {
                    let y = self.newton(&g, cap)?;
                    return Ok(Ok(vec![y]));
                }
                return Err(Error::Precision("constant coefficient vanishes to working precision".into()));
            }
            out.push(Laurent::zero());
            g.remove(0);
        }
        for seg in segments(&g)? {
            if positive.is_some() && *seg.slope.numer() <= 0 {
                continue;
            }
            if *seg.slope.denom() != 1 {
                return Ok(Err(Need::Ramify(*seg.slope.denom())));
            }
            let gamma = *seg.slope.numer();
            let mu = g[seg.start].valuation().unwrap() + seg.start as i64 * gamma;
            let mut phi = Vec::with_capacity(seg.length + 1);
            for (i, a) in g.iter().enumerate().take(seg.end + 1).skip(seg.start) {
                let exp = mu - i as i64 * gamma;
                if a.abs_prec().is_some_and(|p| p <= exp) {
                    return Err(Error::Precision(format!("coefficient of X^{i} is not known at t^{exp}")));
                }
                phi.push(a.coeff(f, exp));
            }
            let fac = f.factorize(&Poly::new(phi))?;
            for (h, mult) in &fac.factors {
                let d = h.degree().unwrap();
                if d == 1 && f.is_zero(&h.coeffs()[0]) {
                    continue;
                }
                if d > 1 {
                    return Ok(Err(Need::Extend(d)));
                }
                let c = f.neg(&h.coeffs()[0]);
                let sub = cap - gamma;
                let shifted = self.recentre(&g, gamma, mu, &c, sub);
                let ys = if *mult == 1 {
                    vec![self.newton(&shifted, sub)?]
                } else {
                    match self.roots(&shifted, sub, Some(*mult as usize))? {
                        Ok(ys) => ys,
                        Err(need) => return Ok(Err(need)),
                    }
                };
                for y in ys {
                    out.push(Laurent::constant(f, c.clone()).add(f, &y).shift(gamma));
                }
            }
        }
        if let Some(expect) = positive {
            if out.len() != expect {
                return Err(Error::Precision("repeated root does not separate at the working precision".into()));
            }
        }
        Ok(Ok(out))
    }

    /// Hensel lift of the simple root `0` of the reduction of `g`.
    fn newton(&self, g: &[Laurent], cap: i64) -> Result<Laurent> {
        let f = self.f;
        let dg = derivative(f, g);
        let mut y = Laurent::zero();
        for _ in 0..MAX_NEWTON_STEPS {
            let val = horner(f, g, &y, Some(cap));
            if val.is_zero() {
                return Ok(match val.abs_prec() {
                    Some(known) => y.add(f, &Laurent::big_o(known)),
                    None => y,
                });
            }
            let der = horner(f, &dg, &y, Some(cap));
            let delta = val.div(f, &der, cap)?;
            y = y.sub(f, &delta).truncate(f, cap);
        }
        Err(Error::Precision("Newton iteration did not settle".into()))
    }
}

fn p_power_log(n: u64, p: u64, what: &str) -> Result<u32> {
    exact_log(n as u128, p as u128)
        .ok_or_else(|| Error::OutOfScope(format!("{what} {n} is not a power of {p}; not a p-extension witness")))
}

/// All `deg f` roots of a squarefree `f` whose splitting field is
/// `F_{q^{p^r}}((t^{1/p^s}))`, to `precision` powers of `t`, sorted
/// canonically.
pub fn puiseux_roots(field: &FieldDescriptor, poly: &SeriesPoly, precision: i64, tame_bound: u64) -> Result<Vec<PuiseuxRoot>> {
    if !matches!(field.kind(), FieldKind::Laurent { .. }) {
        return usage("Puiseux roots are computed over Laurent fields");
    }
    if precision < 1 {
        return usage("precision must be positive");
    }
    let base = field.base();
    let p = field.p();
    if poly.degree() == 0 {
        return Ok(Vec::new());
    }
    if is_squarefree(base, poly) == Some(false) {
        return usage("polynomial is not squarefree");
    }
    let (mut r, mut s) = (0u32, 0u32);
    let mut extra = 4i64;
    loop {
        let e = p.pow(s);
        let target = FqField::new(base.characteristic(), base.degree() * p.pow(r) as usize)?;
        let emb = Embedding::new(base, &target)?;
        let g = poly.lift(&emb, e as i64);
        let cap = (precision + extra) * e as i64;
        let solver = Solver { f: &target };
        let found = match solver.roots(&g, cap, None) {
            Ok(x) => x,
            Err(Error::Precision(_)) if extra < 64 => {
                extra *= 2;
                continue;
            }
            Err(err) => return Err(err),
        };
        match found {
            Err(Need::Ramify(d)) => {
                s += p_power_log(d as u64, p, "slope denominator")?;
                if p.pow(s) > tame_bound {
                    return Err(Error::OutOfScope(format!("ramification {} exceeds the tame bound {tame_bound}", p.pow(s))));
                }
            }
            Err(Need::Extend(d)) => {
                r += p_power_log(d as u64, p, "residual factor degree")?;
                if r > MAX_COEFFICIENT_STEPS {
                    return Err(Error::ResourceBound {
                        what: "coefficient field degree".into(),
                        bound: checked_pow(p as u128, MAX_COEFFICIENT_STEPS).unwrap(),
                    });
                }
            }
            Ok(mut roots) => {
                if roots.len() != poly.degree() {
                    return Err(Error::Verification(format!("found {} roots of a degree-{} polynomial", roots.len(), poly.degree())));
                }
                roots.sort_by(|a, b| a.canonical_cmp(b));
                match finish(base, poly, &target, p, e, precision, roots) {
                    Ok(out) => return Ok(out),
                    Err(Error::Precision(_)) if extra < 64 => extra *= 2,
                    Err(err) => return Err(err),
                }
            }
        }
    }
}

/// Minimal ramification per root, then the shortest truncation that still
/// verifies.
fn finish(
    base: &FqField,
    poly: &SeriesPoly,
    field: &FqField,
    p: u64,
    e: u64,
    precision: i64,
    roots: Vec<Laurent>,
) -> Result<Vec<PuiseuxRoot>> {
    let mut out = Vec::with_capacity(roots.len());
    for x in roots {
        let mut er = e;
        let mut series = x;
        while er > 1 {
            match series.compress_power(field, p as i64) {
                Some(c) => {
                    series = c;
                    er /= p;
                }
                None => break,
            }
        }
        let mut root = PuiseuxRoot::from_series(base, field, p, er, series.clone(), precision)?;
        if !series.is_exact() {
            let avail = series.abs_prec().unwrap();
            let mut cut = precision * er as i64;
            loop {
                if cut > avail {
                    return Err(Error::Precision("root does not verify at the working precision".into()));
                }
                root.series = series.truncate(field, cut);
                if verify_root(base, poly, &root)?.ok {
                    break;
                }
                cut += 1;
            }
        } else if !verify_root(base, poly, &root)?.ok {
            return Err(Error::Verification("exact root fails to annihilate the polynomial".into()));
        }
        out.push(root);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stability {
    /// Stable under `t^{1/e} -> zeta_e t^{1/e}`.
    pub rotation: bool,
    /// Stable under the `q`-power Frobenius on coefficients.
    pub frobenius: bool,
}

/// Checks that the root set is a union of Galois orbits, comparing the
/// coefficients known in both series.
pub fn galois_stability(base: &FqField, p: u64, roots: &[PuiseuxRoot]) -> Result<Stability> {
    let Some(first) = roots.first() else {
        return Ok(Stability { rotation: true, frobenius: true });
    };
    let field = &first.field;
    let e = roots.iter().map(|r| r.e).max().unwrap();
    let series: Vec<Laurent> = roots.iter().map(|r| r.series_in(e)).collect();
    let h = exact_log(e as u128, p as u128).unwrap();
    let zeta = field.root_of_unity(p, h)?;
    let contains = |x: &Laurent| series.iter().any(|y| y.approx_eq(field, x));
    let rotate = |x: &Laurent| -> Result<Laurent> {
        let terms: Vec<FqElem> =
            x.terms().map(|(m, c)| Ok(field.mul(c, &field.pow_signed(&zeta, m)?))).collect::<Result<_>>()?;
        let lo = x.valuation().unwrap_or(0);
        Ok(match x.abs_prec() {
            Some(pr) => Laurent::with_prec(field, lo, terms, pr),
            None => Laurent::exact(field, lo, terms),
        })
    };
    let mut rotation = true;
    for x in &series {
        rotation &= contains(&rotate(x)?);
    }
    let frobenius = series.iter().all(|x| contains(&x.map_coeffs(field, |c| field.frobenius(c, base.degree()))));
    Ok(Stability { rotation, frobenius })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> FieldDescriptor {
        FieldDescriptor::parse("laurent(7,64)", 3).unwrap()
    }

    fn slopes(s: &str) -> Vec<(Ratio<i64>, usize)> {
        let f = SeriesPoly::parse(&base(), s).unwrap();
        newton_polygon(&f).unwrap().into_iter().map(|g| (g.slope, g.length)).collect()
    }

    #[test]
    fn polygons() {
        assert_eq!(slopes("X^3 - t"), vec![(Ratio::new(1, 3), 3)]);
        assert_eq!(slopes("X - t^2"), vec![(Ratio::from_integer(2), 1)]);
        assert_eq!(slopes("X^3 - (1 + t)"), vec![(Ratio::from_integer(0), 3)]);
        assert_eq!(slopes("X^2 - t*X + t^4"), vec![(Ratio::from_integer(3), 1), (Ratio::from_integer(1), 1)]);
        assert!(matches!(SeriesPoly::new(vec![Laurent::zero()]), Err(Error::ZeroElement)));
    }

    #[test]
    fn unit_cube_roots() {
        let field = base();
        let f = SeriesPoly::parse(&field, "X^3 - (1 + t)").unwrap();
        let roots = puiseux_roots(&field, &f, 3, 9).unwrap();
        let shown: Vec<String> = roots.iter().map(PuiseuxRoot::format).collect();
        assert_eq!(shown, vec!["1 + 5*t + 3*t^2 + O(t^3)", "2 + 3*t + 6*t^2 + O(t^3)", "4 + 6*t + 5*t^2 + O(t^3)"]);
        assert!(roots.iter().all(|r| (r.e, r.r) == (1, 0)));
    }

    #[test]
    fn pure_radicals() {
        let field = base();
        let f = SeriesPoly::parse(&field, "X^3 - t").unwrap();
        let roots = puiseux_roots(&field, &f, 4, 9).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert_eq!((r.e, r.r), (3, 0));
            assert!(r.series.is_exact());
            assert_eq!(verify_root(field.base(), &f, r).unwrap().residual, Residual::Zero);
        }
        let f9 = SeriesPoly::parse(&field, "X^9 - t").unwrap();
        let roots = puiseux_roots(&field, &f9, 2, 9).unwrap();
        assert_eq!(roots.len(), 9);
        assert_eq!(roots[0].field.degree(), 3);
        assert!(roots.iter().all(|r| r.e == 9));
        assert_eq!(roots.iter().filter(|r| r.r == 0).count(), 3);
        let st = galois_stability(field.base(), 3, &roots).unwrap();
        assert!(st.rotation && st.frobenius);
    }

    #[test]
    fn wrong_root_detected() {
        let field = base();
        let b = field.base();
        let f = SeriesPoly::parse(&field, "X^3 - t").unwrap();
        let bogus = PuiseuxRoot::from_series(b, b, 3, 1, Laurent::from_ints(b, 0, &[1, 1]), 3).unwrap();
        let chk = verify_root(b, &f, &bogus).unwrap();
        assert!(!chk.ok);
        assert_eq!(chk.residual, Residual::Exactly(Ratio::from_integer(0)));
        assert_eq!(chk.offending_index, Some(0));
    }

    #[test]
    fn out_of_scope_and_errors() {
        let field = base();
        let sq = SeriesPoly::parse(&field, "X^2 - t").unwrap();
        assert!(matches!(puiseux_roots(&field, &sq, 3, 9), Err(Error::OutOfScope(_))));
        let irr2 = SeriesPoly::parse(&field, "X^2 - 3").unwrap();
        assert!(matches!(puiseux_roots(&field, &irr2, 3, 9), Err(Error::OutOfScope(_))));
        let f27 = SeriesPoly::parse(&field, "X^27 - t").unwrap();
        assert!(matches!(puiseux_roots(&field, &f27, 2, 9), Err(Error::OutOfScope(_))));
        let rep = SeriesPoly::parse(&field, "(X - t)^2").unwrap();
        assert!(matches!(puiseux_roots(&field, &rep, 2, 9), Err(Error::Usage(_))));
        let lin = SeriesPoly::parse(&field, "X - 1").unwrap();
        let roots = puiseux_roots(&field, &lin, 2, 9).unwrap();
        assert!(roots[0].series.is_exact());
    }

    #[test]
    fn shifted_radicals() {
        let field = base();
        // (X - 1 - t)^3 - t^2 (1 + t)
        let f = SeriesPoly::parse(&field, "(X - 1 - t)^3 - t^2*(1 + t)").unwrap();
        let roots = puiseux_roots(&field, &f, 5, 9).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert_eq!(r.e, 3);
            assert!(verify_root(field.base(), &f, r).unwrap().ok);
        }
        let g = SeriesPoly::parse(&field, "(X^2 - 1 - t)*(X - 1 + t^2)").unwrap();
        assert_eq!(puiseux_roots(&field, &g, 6, 9).unwrap().len(), 3);
        // residual root 1 of multiplicity 3, separated only after recentring
        let h = SeriesPoly::parse(&field, "(X - 1 - t)*(X - 1 - 2*t)*(X - 1 - t^2)").unwrap();
        let roots = puiseux_roots(&field, &h, 6, 9).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.series.is_exact() || verify_root(field.base(), &h, r).unwrap().ok));
    }
}
