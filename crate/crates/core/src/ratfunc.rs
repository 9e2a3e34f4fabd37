//! Rational functions in `t` over a finite field and their places.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField, Poly};
use crate::series::Laurent;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// A place of `F_q(t)`: a monic irreducible of `F_q[t]`, or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn label(&self, f: &FqField) -> String {
        match self {
            Place::Finite(p) => f.format_poly(p, "t"),
            Place::Infinity => "inf".into(),
        }
    }
}

/// Finite places by `(degree, coefficients)`, infinity last.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl RatFunc {
    pub fn new(f: &FqField, num: &Poly, den: &Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroElement);
        }
        let g = f.poly_gcd(num, den);
        let mut n = f.poly_div_exact(num, &g)?;
        let mut d = f.poly_div_exact(den, &g)?;
        let l = f.inv(d.leading().unwrap())?;
        n = f.poly_scale(&n, &l);
        d = f.poly_scale(&d, &l);
        if n.is_zero() {
            d = Poly::constant(f.one());
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_poly(f: &FqField, p: Poly) -> Self {
        RatFunc { num: p, den: Poly::constant(f.one()) }
    }

    pub fn constant(f: &FqField, c: FqElem) -> Self {
        Self::from_poly(f, Poly::constant(c))
    }

    pub fn from_int(f: &FqField, c: i64) -> Self {
        Self::constant(f, f.from_int(c))
    }

    /// The variable `t`.
    pub fn t(f: &FqField) -> Self {
        Self::from_poly(f, f.poly_x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn add(&self, f: &FqField, o: &Self) -> Self {
        let n = f.poly_add(&f.poly_mul(&self.num, &o.den), &f.poly_mul(&o.num, &self.den));
        Self::new(f, &n, &f.poly_mul(&self.den, &o.den)).expect("nonzero denominator")
    }

    pub fn neg(&self, f: &FqField) -> Self {
        RatFunc { num: f.poly_neg(&self.num), den: self.den.clone() }
    }

    pub fn sub(&self, f: &FqField, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn mul(&self, f: &FqField, o: &Self) -> Self {
        Self::new(f, &f.poly_mul(&self.num, &o.num), &f.poly_mul(&self.den, &o.den)).expect("nonzero denominator")
    }

    pub fn scale(&self, f: &FqField, c: &FqElem) -> Self {
        Self::new(f, &f.poly_scale(&self.num, c), &self.den).expect("nonzero denominator")
    }

    pub fn inv(&self, f: &FqField) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Self::new(f, &self.den, &self.num)
    }

    pub fn div(&self, f: &FqField, o: &Self) -> Result<Self> {
        Ok(self.mul(f, &o.inv(f)?))
    }

    pub fn pow_signed(&self, f: &FqField, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv(f)? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: f.poly_pow(&base.num, k), den: f.poly_pow(&base.den, k) })
    }

    /// `lc(num) / lc(den)`: the residue of the unit part at infinity.
    pub fn leading_coefficient(&self) -> Result<FqElem> {
        self.num.leading().cloned().ok_or(Error::ZeroElement)
    }

    /// Order of vanishing at the monic irreducible `p`.
    pub fn valuation_at(&self, f: &FqField, p: &Poly) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let count = |a: &Poly| {
            let mut a = a.clone();
            let mut k = 0i64;
            loop {
                let (q, r) = f.poly_divrem(&a, p).expect("nonzero place");
                if !r.is_zero() {
                    return k;
                }
                a = q;
                k += 1;
            }
        };
        Ok(count(&self.num) - count(&self.den))
    }

    /// `deg den - deg num`.
    pub fn valuation_inf(&self) -> Result<i64> {
        let n = self.num.degree().ok_or(Error::ZeroElement)?;
        Ok(self.den.degree().unwrap() as i64 - n as i64)
    }

    pub fn valuation(&self, f: &FqField, place: &Place) -> Result<i64> {
        match place {
            Place::Finite(p) => self.valuation_at(f, p),
            Place::Infinity => self.valuation_inf(),
        }
    }

    /// Image in the residue field `F_q[t]/(p)` of a function that is a unit at `p`.
    pub fn residue_at(&self, f: &FqField, p: &Poly) -> Result<Poly> {
        if self.valuation_at(f, p)? != 0 {
            return Err(Error::Usage("residue of a non-unit".into()));
        }
        let d = f.poly_inv_mod(&self.den, p)?;
        Ok(f.poly_mulmod(&self.num, &d, p))
    }

    /// Places where the function has a zero or pole, with valuations,
    /// in place order. Infinity is included when its valuation is nonzero.
    pub fn divisor(&self, f: &FqField) -> Result<Vec<(Place, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut out = Vec::new();
        for (poly, sign) in [(&self.num, 1i64), (&self.den, -1i64)] {
            if poly.degree().unwrap_or(0) > 0 {
                for (g, m) in f.factorize(poly)?.factors {
                    out.push((Place::Finite(g), sign * m as i64));
                }
            }
        }
        let vinf = self.valuation_inf()?;
        if vinf != 0 {
            out.push((Place::Infinity, vinf));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn eval(&self, f: &FqField, x: &FqElem) -> Result<FqElem> {
        f.div(&f.poly_eval(&self.num, x), &f.poly_eval(&self.den, x))
    }

    /// Substitutes an exact series for `t`.
    pub fn substitute(&self, f: &FqField, t: &Laurent, rel_prec: i64) -> Result<Laurent> {
        let horner = |p: &Poly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(Laurent::zero(), |acc, c| acc.mul(f, t).add(f, &Laurent::constant(f, c.clone())))
        };
        horner(&self.num).div(f, &horner(&self.den), rel_prec)
    }

    pub fn format(&self, f: &FqField) -> String {
        let n = f.format_poly(&self.num, "t");
        if self.den.degree() == Some(0) {
            return n;
        }
        format!("({n})/({})", f.format_poly(&self.den, "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_of_t_times_one_minus_t_squared() {
        let f = FqField::new(7, 1).unwrap();
        let t = RatFunc::t(&f);
        let one_minus_t = RatFunc::from_int(&f, 1).sub(&f, &t);
        let x = t.mul(&f, &one_minus_t.pow_signed(&f, 2).unwrap());
        let div = x.divisor(&f).unwrap();
        assert_eq!(div.len(), 3);
        assert_eq!(div[0], (Place::Finite(f.poly_from_ints(&[0, 1])), 1));
        assert_eq!(div[1], (Place::Finite(f.poly_from_ints(&[6, 1])), 2));
        assert_eq!(div[2], (Place::Infinity, -3));
        assert_eq!(x.leading_coefficient().unwrap(), f.one());
    }

    #[test]
    fn normal_form_and_residues() {
        let f = FqField::new(7, 1).unwrap();
        let a = RatFunc::new(&f, &f.poly_from_ints(&[0, 2, 2]), &f.poly_from_ints(&[0, 2])).unwrap();
        assert_eq!(a, RatFunc::from_poly(&f, f.poly_from_ints(&[1, 1])));
        let p = f.poly_from_ints(&[1, 0, 1]);
        let r = a.inv(&f).unwrap().residue_at(&f, &p).unwrap();
        assert_eq!(f.poly_mulmod(&r, &f.poly_from_ints(&[1, 1]), &p), f.poly_from_ints(&[1]));
        assert_eq!(a.valuation_at(&f, &f.poly_from_ints(&[1, 1])).unwrap(), 1);
        assert_eq!(a.format(&f), "t + 1");
    }
}
