//! Truncated Laurent series over a finite field.
//!
//! A [`Laurent`] is either exact (finitely many terms, no error term) or
//! known modulo `t^prec`. Arithmetic tracks the precision of its result, so
//! a value is never reported beyond what its inputs determine.
//!
//! ```
//! use prigid::fq::FqField;
//! use prigid::series::Laurent;
//! let f = FqField::new(7, 1).unwrap();
//! let u = Laurent::from_ints(&f, 0, &[1, 1]);
//! let r = u.pth_root(&f, 3, 3).unwrap();
//! assert_eq!(f.format_elem(&r.coeff(&f, 1)), "5");
//! assert_eq!(f.format_elem(&r.coeff(&f, 2)), "3");
//! ```

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    /// Exponent of `coeffs[0]`; `coeffs[0]` is nonzero whenever present.
    val: i64,
    coeffs: Vec<FqElem>,
    /// Absolute precision; `None` for an exact value.
    prec: Option<i64>,
}

impl Laurent {
    fn normalized(f: &FqField, mut val: i64, mut coeffs: Vec<FqElem>, prec: Option<i64>) -> Self {
        if let Some(p) = prec {
            let keep = (p - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !f.is_zero(c));
        match lead {
            None => Laurent { val: prec.unwrap_or(0), coeffs: Vec::new(), prec },
            Some(i) => {
                coeffs.drain(..i);
                val += i as i64;
                if prec.is_none() {
                    while coeffs.last().is_some_and(|c| f.is_zero(c)) {
                        coeffs.pop();
                    }
                }
                Laurent { val, coeffs, prec }
            }
        }
    }

    pub fn zero() -> Self {
        Laurent { val: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^prec)`.
    pub fn big_o(prec: i64) -> Self {
        Laurent { val: prec, coeffs: Vec::new(), prec: Some(prec) }
    }

    /// Exact `sum coeffs[i] t^(val + i)`.
    pub fn exact(f: &FqField, val: i64, coeffs: Vec<FqElem>) -> Self {
        Self::normalized(f, val, coeffs, None)
    }

    /// `sum coeffs[i] t^(val + i) + O(t^prec)`.
    pub fn with_prec(f: &FqField, val: i64, coeffs: Vec<FqElem>, prec: i64) -> Self {
        Self::normalized(f, val, coeffs, Some(prec))
    }

    pub fn from_ints(f: &FqField, val: i64, coeffs: &[i64]) -> Self {
        Self::exact(f, val, coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    pub fn constant(f: &FqField, c: FqElem) -> Self {
        Self::exact(f, 0, vec![c])
    }

    pub fn one(f: &FqField) -> Self {
        Self::constant(f, f.one())
    }

    pub fn monomial(f: &FqField, c: FqElem, e: i64) -> Self {
        Self::exact(f, e, vec![c])
    }

    pub fn from_poly(f: &FqField, p: &Poly) -> Self {
        Self::exact(f, 0, p.coeffs().to_vec())
    }

    /// Valuation of the first known nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn abs_prec(&self) -> Option<i64> {
        self.prec
    }

    /// Number of known coefficients from the leading term on.
    pub fn rel_prec(&self) -> Option<i64> {
        self.prec.map(|p| p - self.val)
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.first()
    }

    /// Known nonzero-or-zero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &FqElem)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.val + i as i64, c))
    }

    /// Coefficient of `t^i`; zero for exponents past the last stored term.
    pub fn coeff(&self, f: &FqField, i: i64) -> FqElem {
        if i < self.val {
            return f.zero();
        }
        self.coeffs.get((i - self.val) as usize).cloned().unwrap_or_else(|| f.zero())
    }

    /// Largest exponent for which [`Laurent::coeff`] is meaningful plus one.
    fn known_until(&self) -> i64 {
        self.prec.unwrap_or(self.val + self.coeffs.len() as i64)
    }

    pub fn truncate(&self, f: &FqField, prec: i64) -> Self {
        let p = match self.prec {
            Some(q) => q.min(prec),
            None if self.known_until() <= prec => return self.clone(),
            None => prec,
        };
        Self::normalized(f, self.val, self.coeffs.clone(), Some(p))
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, f: &FqField, other: &Self) -> Self {
        let prec = Self::min_prec(self.prec, other.prec);
        if self.is_zero() && other.is_zero() {
            return match prec {
                Some(p) => Self::big_o(p),
                None => Self::zero(),
            };
        }
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let hi = self.known_until().max(other.known_until());
        let hi = prec.map_or(hi, |p| hi.min(p));
        if hi <= lo {
            return Self::big_o(prec.unwrap());
        }
        let coeffs = (lo..hi).map(|i| f.add(&self.coeff(f, i), &other.coeff(f, i))).collect();
        Self::normalized(f, lo, coeffs, prec)
    }

    pub fn neg(&self, f: &FqField) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(), prec: self.prec }
    }

    pub fn sub(&self, f: &FqField, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &FqField, c: &FqElem) -> Self {
        if f.is_zero(c) {
            return match self.prec {
                Some(_) => Self::big_o(self.prec.unwrap().max(self.val)),
                None => Self::zero(),
            };
        }
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|x| f.mul(x, c)).collect(), prec: self.prec }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { val: self.val + k, coeffs: self.coeffs.clone(), prec: self.prec.map(|p| p + k) }
    }

    pub fn mul(&self, f: &FqField, other: &Self) -> Self {
        // precision of the product: each error term times the other's leading term
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(pa), None) => {
                if other.is_zero() {
                    return Self::zero();
                }
                Some(pa + other.val)
            }
            (None, Some(pb)) => {
                if self.is_zero() {
                    return Self::zero();
                }
                Some(pb + self.val)
            }
            (Some(pa), Some(pb)) => {
                let va = if self.is_zero() { pa } else { self.val };
                let vb = if other.is_zero() { pb } else { other.val };
                Some((pa + vb).min(pb + va))
            }
        };
        if self.is_zero() || other.is_zero() {
            return match prec {
                Some(p) => Self::big_o(p),
                None => Self::zero(),
            };
        }
        let val = self.val + other.val;
        let len = match prec {
            Some(p) => (p - val).max(0) as usize,
            None => self.coeffs.len() + other.coeffs.len() - 1,
        };
        let mut out = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::normalized(f, val, out, prec)
    }

    pub fn pow(&self, f: &FqField, mut e: u64) -> Self {
        let mut acc = Self::one(f);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(f, &b);
            }
        }
        acc
    }

    fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Inverse; exact inputs other than monomials are expanded to
    /// `rel_prec` terms.
    pub fn inv(&self, f: &FqField, rel_prec: i64) -> Result<Self> {
        if self.is_zero() {
            return match self.prec {
                None => Err(Error::ZeroElement),
                Some(p) => Err(Error::Precision(format!("cannot invert O(t^{p})"))),
            };
        }
        let c0 = f.inv(&self.coeffs[0])?;
        if self.is_exact() && self.is_monomial() {
            return Ok(Self::monomial(f, c0, -self.val));
        }
        let n = match self.rel_prec() {
            Some(r) => r,
            None => rel_prec,
        }
        .max(1) as usize;
        let mut b = Vec::with_capacity(n);
        b.push(c0.clone());
        for k in 1..n {
            let mut s = f.zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = f.add(&s, &f.mul(&self.coeffs[j], &b[k - j]));
            }
            b.push(f.neg(&f.mul(&c0, &s)));
        }
        Ok(Self::with_prec(f, -self.val, b, -self.val + n as i64))
    }

    pub fn div(&self, f: &FqField, other: &Self, rel_prec: i64) -> Result<Self> {
        Ok(self.mul(f, &other.inv(f, rel_prec)?))
    }

    /// Formal derivative with respect to `t`.
    pub fn derivative(&self, f: &FqField) -> Self {
        let coeffs = self.terms().map(|(e, c)| f.mul(c, &f.from_int(e))).collect();
        Self::normalized(f, self.val - 1, coeffs, self.prec.map(|p| p - 1))
    }

    /// `t -> t^e`.
    pub fn substitute_power(&self, f: &FqField, e: i64) -> Self {
        assert!(e > 0);
        let mut coeffs = vec![f.zero(); (self.coeffs.len().max(1) - 1) * e as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e as usize] = c.clone();
        }
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        Self::normalized(f, self.val * e, coeffs, self.prec.map(|p| p * e))
    }

    /// `t^e -> t`, when every exponent is a multiple of `e`.
    pub fn compress_power(&self, f: &FqField, e: i64) -> Option<Self> {
        assert!(e > 0);
        if self.terms().any(|(i, c)| !f.is_zero(c) && i.rem_euclid(e) != 0) {
            return None;
        }
        let prec = self.prec.map(|p| p.div_euclid(e) + i64::from(p.rem_euclid(e) != 0));
        if self.coeffs.is_empty() {
            return Some(match prec {
                Some(p) => Self::big_o(p),
                None => Self::zero(),
            });
        }
        let coeffs = self.coeffs.iter().step_by(e as usize).cloned().collect();
        Some(Self::normalized(f, self.val.div_euclid(e), coeffs, prec))
    }

    /// Applies `g` to every coefficient, moving the series into field `to`.
    pub fn map_coeffs(&self, to: &FqField, g: impl Fn(&FqElem) -> FqElem) -> Self {
        Self::normalized(to, self.val, self.coeffs.iter().map(g).collect(), self.prec)
    }

    /// A `p`-th root, taking the smallest-encoding root of the leading
    /// coefficient and `1` as the root of the remaining 1-unit.
    ///
    /// The 1-unit root comes from Newton's iteration
    /// `y <- y - (y^p - u) / (p y^(p-1))`, which needs `p` invertible in `f`.
    pub fn pth_root(&self, f: &FqField, p: u64, rel_prec: i64) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::ZeroElement);
        };
        if v.rem_euclid(p as i64) != 0 {
            return Err(Error::NotPthPower { p });
        }
        let c0 = &self.coeffs[0];
        let r0 = f.pth_root(c0, p)?;
        if f.is_zero(&r0) || f.pow(&r0, p as u128) != *c0 {
            return Err(Error::NotPthPower { p });
        }
        let unit = self.shift(-v).scale(f, &f.inv(c0)?);
        let n = unit.rel_prec().unwrap_or(rel_prec).max(1);
        let y = if unit.is_exact() && unit.is_monomial() {
            Self::one(f)
        } else {
            let target = unit.truncate(f, n);
            let p_inv = f.inv(&f.from_u64(p % f.characteristic()))?;
            let mut y = Self::with_prec(f, 0, vec![f.one()], n);
            let mut known = 1;
            while known < n {
                let yp1 = y.pow(f, p - 1);
                let resid = yp1.mul(f, &y).sub(f, &target);
                let corr = resid.div(f, &yp1, n)?.scale(f, &p_inv);
                y = y.sub(f, &corr).truncate(f, n);
                known *= 2;
            }
            y
        };
        let root = y.scale(f, &r0).shift(v / p as i64);
        if !root.pow(f, p).approx_eq(f, self) {
            return Err(Error::Verification("p-th root failed to reproduce its input".into()));
        }
        Ok(root)
    }

    /// Equality of all coefficients known in both series.
    pub fn approx_eq(&self, f: &FqField, other: &Self) -> bool {
        let d = self.sub(f, other);
        d.is_zero()
    }

    /// Value at `t = x` of an exact series with no negative exponents.
    pub fn to_poly(&self, f: &FqField) -> Option<Poly> {
        if !self.is_exact() || (self.val < 0 && !self.is_zero()) {
            return None;
        }
        let mut coeffs = vec![f.zero(); self.val.max(0) as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(Poly::new(coeffs))
    }

    /// Canonical comparison: valuation, then coefficients by encoding.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.valuation()
            .unwrap_or(i64::MAX)
            .cmp(&other.valuation().unwrap_or(i64::MAX))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// `c0 + c1*t + ... + O(t^n)` with the given variable name. Exponents
    /// are divided by `denom` and printed as fractions when not integral.
    pub fn format(&self, f: &FqField, var: &str, denom: i64) -> String {
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format_elem(c);
            let mono = match format_exponent(e, denom) {
                None => cs,
                Some(x) if f.is_one(c) => format!("{var}{x}"),
                Some(x) => format!("{cs}*{var}{x}"),
            };
            parts.push(mono);
        }
        if let Some(p) = self.prec {
            let o = match format_exponent(p, denom) {
                None => "O(1)".to_string(),
                Some(x) => format!("O({var}{x})"),
            };
            parts.push(o);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn format_exponent(e: i64, denom: i64) -> Option<String> {
    let g = crate::arith::gcd(e, denom);
    let (n, d) = (e / g, denom / g);
    match (n, d) {
        (0, _) => None,
        (1, 1) => Some(String::new()),
        (n, 1) => Some(format!("^{n}")),
        (n, d) => Some(format!("^({n}/{d})")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FqField {
        FqField::new(7, 1).unwrap()
    }

    #[test]
    fn cube_root_of_one_plus_t() {
        let f = f7();
        let u = Laurent::from_ints(&f, 0, &[1, 1]);
        let r = u.pth_root(&f, 3, 3).unwrap();
        assert_eq!(r, Laurent::with_prec(&f, 0, vec![f.from_u64(1), f.from_u64(5), f.from_u64(3)], 3));
        // (1 + 5t + 3t^2)^3 = 1 + t + 84t^2 + ..., and 84 = 0 mod 7
        let exact = Laurent::from_ints(&f, 0, &[1, 5, 3]).pow(&f, 3);
        assert_eq!(exact.coeff(&f, 1), f.one());
        assert_eq!(exact.coeff(&f, 2), f.zero());
        assert_eq!(r.format(&f, "t", 1), "1 + 5*t + 3*t^2 + O(t^3)");
    }

    #[test]
    fn inverse_and_precision() {
        let f = f7();
        let u = Laurent::from_ints(&f, 1, &[1, 1]);
        let inv = u.inv(&f, 10).unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.abs_prec(), Some(9));
        let prod = inv.mul(&f, &u);
        assert!(prod.approx_eq(&f, &Laurent::one(&f)));
        assert_eq!(prod.abs_prec(), Some(10));
        assert_eq!(Laurent::monomial(&f, f.from_u64(3), 2).inv(&f, 5).unwrap().abs_prec(), None);
        assert!(matches!(Laurent::big_o(4).inv(&f, 5), Err(Error::Precision(_))));
    }

    #[test]
    fn non_pth_powers_rejected() {
        let f = f7();
        assert!(matches!(Laurent::from_ints(&f, 1, &[1]).pth_root(&f, 3, 8), Err(Error::NotPthPower { .. })));
        assert!(matches!(Laurent::from_ints(&f, 0, &[3]).pth_root(&f, 3, 8), Err(Error::NotPthPower { .. })));
        let r = Laurent::from_ints(&f, 3, &[6, 2]).pth_root(&f, 3, 8).unwrap();
        assert_eq!(r.valuation(), Some(1));
        assert!(r.pow(&f, 3).approx_eq(&f, &Laurent::from_ints(&f, 3, &[6, 2])));
    }

    #[test]
    fn substitution_and_fraction_format() {
        let f = f7();
        let s = Laurent::from_ints(&f, 1, &[1, 2]).substitute_power(&f, 3);
        assert_eq!(s, Laurent::from_ints(&f, 3, &[1, 0, 0, 2]));
        assert_eq!(Laurent::from_ints(&f, 1, &[2]).format(&f, "t", 3), "2*t^(1/3)");
    }
}
