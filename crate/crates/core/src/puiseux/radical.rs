use super::{verify_root, PuiseuxRoot, SeriesPoly};
use crate::error::{Error, Result};
use crate::fq::{Embedding, FqElem, FqField, Poly};
use crate::linalg::solve_combination;
use crate::series::Laurent;
use crate::symbol::{kummer_tower, FieldDescriptor, FieldElem, DEFAULT_TOWER_BOUND};

/// `c(w) z^m` with `c` a polynomial over `F_q` of degree `< p^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalTerm {
    /// Exponent of `z = t^{1/e}`.
    pub z_exponent: i64,
    /// Coefficients of `1, w, w^2, ...` in `F_q`.
    pub w_coeffs: Vec<FqElem>,
}

/// A root written with `w = u*^{1/p^r}` and `z = t^{1/p^s}`, both radicals
/// of ground-field elements.
#[derive(Clone, Debug)]
pub struct RadicalExpression {
    /// `(base, root degree)`, e.g. `("3", 3)` and `("t", 9)`.
    pub generators: Vec<(String, u64)>,
    /// The generator bases as ground-field elements.
    pub bases: Vec<FieldElem>,
    pub w_degree: u64,
    pub e: u64,
    pub terms: Vec<RadicalTerm>,
    /// Absolute precision in powers of `z`; `None` when exact.
    pub precision: Option<i64>,
    /// `X^{p^r} - u*` has a root of degree exactly `p^r` over `F_q`.
    pub minimal_polynomial_verified: bool,
    /// Rebuilding the series from the terms gives back the root.
    pub round_trip_verified: bool,
}

impl RadicalExpression {
    /// Every generator base is an element of the ground field itself.
    pub fn is_non_nested(&self, field: &FieldDescriptor) -> bool {
        self.generators.len() == self.bases.len()
            && self.bases.iter().zip(&self.generators).all(|(b, (label, _))| {
                matches!(b, FieldElem::Laurent(_))
                    && field.parse_elem(label).is_ok_and(|x| x == *b)
                    && field.format_elem(b) == *label
            })
    }

    pub fn format(&self, base: &FqField) -> String {
        let w = |i: usize| match i {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{i}"),
        };
        let mut parts = Vec::new();
        for term in &self.terms {
            let coeff: Vec<String> = term
                .w_coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !base.is_zero(c))
                .map(|(i, c)| match (i, base.is_one(c)) {
                    (0, _) => base.format_elem(c),
                    (_, true) => w(i),
                    (_, false) => format!("{}*{}", base.format_elem(c), w(i)),
                })
                .collect();
            let coeff = if coeff.len() == 1 { coeff[0].clone() } else { format!("({})", coeff.join(" + ")) };
            let m = term.z_exponent;
            let var = if self.e == 1 { "t" } else { "z" };
            parts.push(match m {
                0 => coeff,
                1 if coeff == "1" => var.to_string(),
                1 => format!("{coeff}*{var}"),
                _ if coeff == "1" => format!("{var}^{m}"),
                _ => format!("{coeff}*{var}^{m}"),
            });
        }
        if let Some(p) = self.precision {
            let var = if self.e == 1 { "t" } else { "z" };
            parts.push(format!("O({var}^{p})"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn describe_generators(&self) -> String {
        let mut out = Vec::new();
        if self.w_degree > 1 {
            out.push(format!("w = {}^(1/{})", self.generators[0].0, self.w_degree));
        }
        if self.e > 1 {
            out.push(format!("z = t^(1/{})", self.e));
        }
        out.join(", ")
    }
}

/// Coordinates of `x` over `F_ell`, padded to the field degree.
fn coords(field: &FqField, x: &FqElem) -> Vec<u64> {
    let mut v = x.coeffs().to_vec();
    v.resize(field.degree(), 0);
    v
}

/// Rewrites a root over `F_q(u*^{1/p^r})((t^{1/p^s}))` as a polynomial in
/// `w = u*^{1/p^r}` and `z = t^{1/p^s}` with `F_q` coefficients.
pub fn as_nonnested_radicals(field: &FieldDescriptor, root: &PuiseuxRoot) -> Result<RadicalExpression> {
    let base = field.base();
    let big = &root.field;
    let p = field.p();
    let emb = Embedding::new(base, big)?;
    let wdeg = p.pow(root.r);
    let ustar = emb.apply(field.ustar());
    let (w, minimal_polynomial_verified) = if root.r == 0 {
        (big.one(), true)
    } else {
        let mut m = vec![big.neg(&ustar)];
        m.resize(wdeg as usize, big.zero());
        m.push(big.one());
        let w = big
            .roots(&Poly::new(m))?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Verification("u* has no p^r-th root in the coefficient field".into()))?;
        // orbit of w under x -> x^q has exactly p^r elements
        let fdeg = base.degree();
        let orbit = (1..=wdeg as usize).find(|&j| big.frobenius(&w, fdeg * j) == w);
        (w, orbit == Some(wdeg as usize))
    };
    // columns g^b w^i for the F_ell-basis g^b of F_q
    let gen = emb.apply(&base.generator());
    let fdeg = base.degree();
    let mut cols = Vec::new();
    for i in 0..wdeg {
        let wi = big.pow(&w, i as u128);
        for b in 0..fdeg {
            let gb = if fdeg == 1 { big.one() } else { big.pow(&gen, b as u128) };
            cols.push(coords(big, &big.mul(&gb, &wi)));
        }
    }
    let ell = base.characteristic();
    let mut terms = Vec::new();
    for (m, c) in root.terms() {
        let x = solve_combination(&cols, &coords(big, &c), ell)
            .ok_or_else(|| Error::Verification(format!("coefficient of z^{m} is outside F_q(w)")))?;
        let w_coeffs = x
            .chunks(fdeg)
            .map(|ch| base.from_coeffs(&ch.iter().map(|&v| v as i64).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        terms.push(RadicalTerm { z_exponent: m, w_coeffs });
    }
    // rebuild and compare
    let mut rebuilt = match root.series.abs_prec() {
        Some(pr) => Laurent::big_o(pr),
        None => Laurent::zero(),
    };
    for term in &terms {
        let mut c = big.zero();
        for (i, a) in term.w_coeffs.iter().enumerate() {
            c = big.add(&c, &big.mul(&emb.apply(a), &big.pow(&w, i as u128)));
        }
        rebuilt = rebuilt.add(big, &Laurent::monomial(big, c, term.z_exponent));
    }
    let round_trip_verified = rebuilt == root.series;
    let mut generators = Vec::new();
    let mut bases = Vec::new();
    if root.r > 0 {
        let u = field.constant(field.ustar().clone());
        generators.push((field.format_elem(&u), wdeg));
        bases.push(u);
    }
    if root.e > 1 {
        let t = field.t()?;
        generators.push((field.format_elem(&t), root.e));
        bases.push(t);
    }
    let expr = RadicalExpression {
        generators,
        bases,
        w_degree: wdeg,
        e: root.e,
        terms,
        precision: root.series.abs_prec(),
        minimal_polynomial_verified,
        round_trip_verified,
    };
    if !expr.minimal_polynomial_verified || !expr.round_trip_verified || !expr.is_non_nested(field) {
        return Err(Error::Verification("radical rewriting failed to verify".into()));
    }
    Ok(expr)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SplittingDescriptor {
    pub r: u32,
    pub s: u32,
    /// Tower level `n = max(r, s) + 1`.
    pub level: u32,
    pub coefficient_field_contained: bool,
    pub ramification_contained: bool,
    /// Every root, moved into the level, still annihilates the polynomial.
    pub roots_verified_in_level: bool,
    pub contained: bool,
}

/// The smallest `(r, s)` covering all roots, and the check that the
/// splitting field sits inside tower level `max(r, s) + 1`.
pub fn splitting_descriptor(field: &FieldDescriptor, poly: &SeriesPoly, roots: &[PuiseuxRoot]) -> Result<SplittingDescriptor> {
    let r = roots.iter().map(|x| x.r).max().unwrap_or(0);
    let s = roots.iter().map(|x| x.s).max().unwrap_or(0);
    let level_n = r.max(s) + 1;
    let level = kummer_tower(field, level_n, DEFAULT_TOWER_BOUND.max(level_n))?;
    let cf = &level.coefficient_field;
    let p = field.p();
    let coefficient_field_contained = level.r >= r;
    let ramification_contained = level.s >= s;
    let e_level = p.pow(level.s);
    let mut roots_verified_in_level = true;
    for root in roots {
        let Ok(emb) = Embedding::new(&root.field, cf) else {
            roots_verified_in_level = false;
            break;
        };
        let series = root.series_in(e_level.max(root.e)).map_coeffs(cf, |c| emb.apply(c));
        let moved = PuiseuxRoot::from_series(field.base(), cf, p, e_level, series, root.precision)?;
        roots_verified_in_level &= verify_root(field.base(), poly, &moved)?.ok;
    }
    Ok(SplittingDescriptor {
        r,
        s,
        level: level_n,
        coefficient_field_contained,
        ramification_contained,
        roots_verified_in_level,
        contained: coefficient_field_contained && ramification_contained && roots_verified_in_level,
    })
}

#[cfg(test)]
mod tests {
    use super::super::puiseux_roots;
    use super::*;

    fn base() -> FieldDescriptor {
        FieldDescriptor::parse("laurent(7,64)", 3).unwrap()
    }

    fn solve(s: &str, prec: i64) -> (SeriesPoly, Vec<PuiseuxRoot>) {
        let f = SeriesPoly::parse(&base(), s).unwrap();
        let roots = puiseux_roots(&base(), &f, prec, 9).unwrap();
        (f, roots)
    }

    #[test]
    fn cube_root_of_t() {
        let field = base();
        let (f, roots) = solve("X^3 - t", 3);
        let one = roots.iter().find(|r| field.base().is_one(r.series.leading().unwrap())).unwrap();
        let x = as_nonnested_radicals(&field, one).unwrap();
        assert_eq!(x.generators, vec![("t".to_string(), 3)]);
        assert_eq!(x.format(field.base()), "z");
        let d = splitting_descriptor(&field, &f, &roots).unwrap();
        assert_eq!((d.r, d.s, d.level), (0, 1, 2));
        assert!(d.contained);
    }

    #[test]
    fn unramified_root_needs_no_radicals() {
        let field = base();
        let (f, roots) = solve("X^3 - (1 + t)", 3);
        let x = as_nonnested_radicals(&field, &roots[0]).unwrap();
        assert!(x.generators.is_empty());
        assert_eq!(x.format(field.base()), "1 + 5*t + 3*t^2 + O(t^3)");
        let d = splitting_descriptor(&field, &f, &roots).unwrap();
        assert_eq!((d.r, d.s, d.level), (0, 0, 1));
    }

    #[test]
    fn ninth_roots() {
        let field = base();
        let (f, roots) = solve("X^9 - t", 2);
        let d = splitting_descriptor(&field, &f, &roots).unwrap();
        assert_eq!((d.r, d.s, d.level), (1, 2, 3));
        assert!(d.contained);
        let deep = roots.iter().find(|r| r.r == 1).unwrap();
        let x = as_nonnested_radicals(&field, deep).unwrap();
        assert_eq!(x.generators, vec![("3".to_string(), 3), ("t".to_string(), 9)]);
        assert!(x.is_non_nested(&field));
        let (g, lin) = solve("X - 1", 2);
        assert_eq!(splitting_descriptor(&field, &g, &lin).unwrap().level, 1);
    }
}
