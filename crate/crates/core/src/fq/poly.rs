use std::cmp::Ordering;

use super::{FqElem, FqField};
use crate::error::{Error, Result};

/// Univariate polynomial over an [`FqField`], coefficients low-to-high with
/// trailing zeros stripped. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.coeffs().iter().all(|&x| x == 0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FqElem) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize, field: &FqField) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }
}

/// Orders by degree first, then by coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FqField {
    pub fn poly_x(&self) -> Poly {
        Poly::new(vec![self.zero(), self.one()])
    }

    /// Builds a polynomial from prime-field integer coefficients, low-to-high.
    pub fn poly_from_ints(&self, cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| self.from_int(c)).collect())
    }

    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.add(&a.coeff(i, self), &b.coeff(i, self))).collect())
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.sub(&a.coeff(i, self), &b.coeff(i, self))).collect())
    }

    pub fn poly_neg(&self, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().map(|c| self.neg(c)).collect())
    }

    pub fn poly_scale(&self, a: &Poly, c: &FqElem) -> Poly {
        Poly::new(a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn poly_pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::constant(self.one());
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_mul(&b, &b);
            }
        }
        acc
    }

    /// Euclidean division, `a = q b + r` with `deg r < deg b`.
    pub fn poly_divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let Some(db) = b.degree() else {
            return Err(Error::ZeroElement);
        };
        let lead_inv = self.inv(b.leading().unwrap())?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut q = vec![self.zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            let c = self.mul(&r[k], &lead_inv);
            if self.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k - db + j] = self.sub(&r[k - db + j], &self.mul(&c, bj));
            }
            q[k - db] = c;
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.poly_divrem(a, b)?.1)
    }

    /// Exact division; fails if `b` does not divide `a`.
    pub fn poly_div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (q, r) = self.poly_divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Verification("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn poly_monic(&self, a: &Poly) -> Poly {
        match a.leading() {
            None => Poly::zero(),
            Some(l) => self.poly_scale(a, &self.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Extended gcd: `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn poly_ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(self.one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(self.one()));
        while !r1.is_zero() {
            let (q, r) = self.poly_divrem(&r0, &r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.inv(l).unwrap();
                (self.poly_scale(&r0, &li), self.poly_scale(&s0, &li), self.poly_scale(&t0, &li))
            }
        }
    }

    /// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
    pub fn poly_inv_mod(&self, a: &Poly, m: &Poly) -> Result<Poly> {
        let (g, s, _) = self.poly_ext_gcd(a, m);
        if g.degree() != Some(0) {
            return Err(Error::ZeroElement);
        }
        self.poly_rem(&s, m)
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.poly_rem(&self.poly_mul(a, b), m).expect("nonzero modulus")
    }

    pub fn poly_powmod(&self, a: &Poly, mut e: u128, m: &Poly) -> Poly {
        let mut acc = self.poly_rem(&Poly::constant(self.one()), m).expect("nonzero modulus");
        let mut b = self.poly_rem(a, m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mulmod(&acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_mulmod(&b, &b, m);
            }
        }
        acc
    }

    pub fn poly_derivative(&self, a: &Poly) -> Poly {
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, i as u64))
                .collect(),
        )
    }

    pub fn poly_eval(&self, a: &Poly, x: &FqElem) -> FqElem {
        a.coeffs.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// `a(b(X))`.
    pub fn poly_compose(&self, a: &Poly, b: &Poly) -> Poly {
        a.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            self.poly_add(&self.poly_mul(&acc, b), &Poly::constant(c.clone()))
        })
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, a: &Poly, b: &Poly) -> FqElem {
        let (Some(_), Some(_)) = (a.degree(), b.degree()) else {
            return self.zero();
        };
        let mut sign_neg = false;
        let mut acc = self.one();
        let (mut f, mut g) = (a.clone(), b.clone());
        loop {
            let m = f.degree().unwrap();
            let n = g.degree().unwrap();
            if n == 0 {
                let c = self.pow(g.leading().unwrap(), m as u128);
                let r = self.mul(&acc, &c);
                return if sign_neg { self.neg(&r) } else { r };
            }
            let r = self.poly_rem(&f, &g).unwrap();
            let Some(dr) = r.degree() else {
                return self.zero();
            };
            // res(f, g) = (-1)^{mn} lc(g)^{m - deg r} res(g, r)
            if (m * n) % 2 == 1 {
                sign_neg = !sign_neg;
            }
            acc = self.mul(&acc, &self.pow(g.leading().unwrap(), (m - dr) as u128));
            f = g;
            g = r;
        }
    }

    pub fn format_poly(&self, a: &Poly, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let cs = self.format_elem(c);
            let mono = match i {
                0 => cs,
                1 if self.is_one(c) => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if self.is_one(c) => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            parts.push(mono);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FqField {
        FqField::new(7, 1).unwrap()
    }

    #[test]
    fn division_identity() {
        let f = f7();
        let a = f.poly_from_ints(&[1, 2, 3, 4, 5]);
        let b = f.poly_from_ints(&[3, 0, 1]);
        let (q, r) = f.poly_divrem(&a, &b).unwrap();
        assert_eq!(f.poly_add(&f.poly_mul(&q, &b), &r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_inverse() {
        let f = f7();
        let a = f.poly_mul(&f.poly_from_ints(&[-1, 1]), &f.poly_from_ints(&[-2, 1]));
        let b = f.poly_mul(&f.poly_from_ints(&[-1, 1]), &f.poly_from_ints(&[-3, 1]));
        assert_eq!(f.poly_gcd(&a, &b), f.poly_from_ints(&[-1, 1]));
        let m = f.poly_from_ints(&[2, 0, 0, 1]);
        let x = f.poly_from_ints(&[1, 1]);
        let xi = f.poly_inv_mod(&x, &m).unwrap();
        assert_eq!(f.poly_mulmod(&x, &xi, &m), f.poly_from_ints(&[1]));
    }

    #[test]
    fn resultant_matches_root_products() {
        let f = f7();
        // res(prod (X - a_i), prod (X - b_j)) = prod (a_i - b_j)
        let roots_a = [1i64, 2, 5];
        let roots_b = [3i64, 6];
        let pa = roots_a.iter().fold(f.poly_from_ints(&[1]), |acc, &r| f.poly_mul(&acc, &f.poly_from_ints(&[-r, 1])));
        let pb = roots_b.iter().fold(f.poly_from_ints(&[1]), |acc, &r| f.poly_mul(&acc, &f.poly_from_ints(&[-r, 1])));
        let mut expected = f.one();
        for a in roots_a {
            for b in roots_b {
                expected = f.mul(&expected, &f.from_int(a - b));
            }
        }
        assert_eq!(f.resultant(&pa, &pb), expected);
        let shared = f.poly_from_ints(&[-1, 1]);
        assert!(f.is_zero(&f.resultant(&pa, &shared)));
    }

    #[test]
    fn compose_and_eval() {
        let f = f7();
        let a = f.poly_from_ints(&[1, 0, 1]);
        let b = f.poly_from_ints(&[2, 1]);
        let c = f.poly_compose(&a, &b);
        for x in 0..7 {
            let xv = f.from_int(x);
            assert_eq!(f.poly_eval(&c, &xv), f.poly_eval(&a, &f.poly_eval(&b, &xv)));
        }
    }
}
