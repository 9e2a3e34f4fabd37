//! Squarefree decomposition, distinct-degree and equal-degree factorization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FqElem, FqField, Poly};
use crate::arith::prime_divisors;
use crate::error::{Error, Result};

/// Fixed seed for equal-degree splitting; every factorization is reproducible.
pub const EDF_SEED: u64 = 0x5eed_f00d_2024_0001;

/// Exhaustive root search is used up to this field size.
const EXHAUSTIVE_ROOT_LIMIT: u128 = 1_000_000;

/// `unit * prod factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl FqField {
    /// Complete factorization into monic irreducibles.
    pub fn factorize(&self, f: &Poly) -> Result<Factorization> {
        let Some(lead) = f.leading() else {
            return Err(Error::ZeroElement);
        };
        let unit = lead.clone();
        let monic = self.poly_monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        let mut factors = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition(&monic) {
            for (g, d) in self.distinct_degree(&sqf) {
                for h in self.equal_degree(&g, d, &mut rng) {
                    factors.push((h, mult));
                }
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    /// Multiplies a factorization back out.
    pub fn expand(&self, fac: &Factorization) -> Poly {
        let mut acc = Poly::constant(fac.unit.clone());
        for (g, m) in &fac.factors {
            acc = self.poly_mul(&acc, &self.poly_pow(g, *m as u64));
        }
        acc
    }

    /// Squarefree parts with multiplicities, for a monic input.
    pub fn squarefree_decomposition(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let one = Poly::constant(self.one());
        let d = self.poly_derivative(f);
        if d.is_zero() {
            let root = self.poly_ell_root(f);
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * self.characteristic() as u32));
            }
            return out;
        }
        let mut c = self.poly_gcd(f, &d);
        let mut w = self.poly_div_exact(f, &c).unwrap();
        let mut i = 1;
        while w != one {
            let y = self.poly_gcd(&w, &c);
            let fac = self.poly_div_exact(&w, &y).unwrap();
            if fac != one {
                out.push((fac, i));
            }
            i += 1;
            w = y;
            c = self.poly_div_exact(&c, &w).unwrap();
        }
        if c != one {
            let root = self.poly_ell_root(&c);
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * self.characteristic() as u32));
            }
        }
        out
    }

    /// `g` with `g^ell = f`, for `f` whose exponents are all multiples of ell.
    fn poly_ell_root(&self, f: &Poly) -> Poly {
        let ell = self.characteristic() as usize;
        let root_exp = self.order() / self.characteristic() as u128;
        Poly::new(f.coeffs().iter().step_by(ell).map(|c| self.pow(c, root_exp)).collect())
    }

    /// `(product of all irreducible factors of degree d, d)` for squarefree monic `f`.
    pub fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let one = Poly::constant(self.one());
        let x = self.poly_x();
        let mut rest = f.clone();
        let mut h = self.poly_rem(&x, &rest).unwrap_or_else(|_| Poly::zero());
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 2 * d {
            h = self.poly_powmod(&h, self.order(), &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if g != one {
                out.push((g.clone(), d));
                rest = self.poly_div_exact(&rest, &g).unwrap();
                h = self.poly_rem(&h, &rest).unwrap();
            }
            d += 1;
        }
        if let Some(dr) = rest.degree() {
            if dr > 0 {
                out.push((rest, dr));
            }
        }
        out
    }

    /// Splits a monic product of distinct degree-`d` irreducibles.
    pub fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.degree().unwrap_or(0);
        if n == 0 {
            return Vec::new();
        }
        if n == d {
            return vec![f.clone()];
        }
        let one = Poly::constant(self.one());
        loop {
            let a = Poly::new((0..n).map(|_| self.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.characteristic() == 2 {
                // absolute trace to F_2 of a in F_f[X]/(f) restricted to each factor
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..self.degree() * d {
                    t = self.poly_mulmod(&t, &t, f);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                // a^((q^d - 1)/2) = (a^(1 + q + ... + q^{d-1}))^((q-1)/2)
                let mut norm = a.clone();
                let mut frob = a.clone();
                for _ in 1..d {
                    frob = self.poly_powmod(&frob, self.order(), f);
                    norm = self.poly_mulmod(&norm, &frob, f);
                }
                let e = self.poly_powmod(&norm, (self.order() - 1) / 2, f);
                self.poly_sub(&e, &one)
            };
            let g = self.poly_gcd(f, &b);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.poly_div_exact(f, &g).unwrap();
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let Some(n) = f.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let m = self.poly_monic(f);
        let x = self.poly_x();
        let mut powers = vec![self.poly_rem(&x, &m).unwrap()];
        for _ in 0..n {
            let last = powers.last().unwrap();
            powers.push(self.poly_powmod(last, self.order(), &m));
        }
        if powers[n] != x {
            return false;
        }
        prime_divisors(n as u128).into_iter().all(|r| {
            let h = &powers[n / r as usize];
            self.poly_gcd(&m, &self.poly_sub(h, &x)).degree() == Some(0)
        })
    }

    /// Distinct roots in the field, in increasing encoding order.
    pub fn roots(&self, f: &Poly) -> Result<Vec<FqElem>> {
        if self.order() <= EXHAUSTIVE_ROOT_LIMIT {
            self.roots_exhaustive(f)
        } else {
            self.roots_by_splitting(f)
        }
    }

    pub fn roots_exhaustive(&self, f: &Poly) -> Result<Vec<FqElem>> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.elements().filter(|x| self.is_zero(&self.poly_eval(f, x))).collect())
    }

    /// Roots via `gcd(f, X^q - X)` and equal-degree splitting.
    pub fn roots_by_splitting(&self, f: &Poly) -> Result<Vec<FqElem>> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = self.poly_monic(f);
        if m.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let x = self.poly_x();
        let xq = self.poly_powmod(&x, self.order(), &m);
        let g = self.poly_gcd(&m, &self.poly_sub(&xq, &x));
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        let mut roots: Vec<FqElem> = self
            .equal_degree(&g, 1, &mut rng)
            .into_iter()
            .map(|lin| self.neg(&lin.coeffs()[0]))
            .collect();
        roots.sort();
        Ok(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_squared_minus_one() {
        let f = FqField::new(7, 1).unwrap();
        let fac = f.factorize(&f.poly_from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(f.poly_from_ints(&[1, 1]), 1), (f.poly_from_ints(&[-1, 1]), 1)]
        );
    }

    #[test]
    fn x_sixth_minus_one_splits_completely() {
        let f = FqField::new(7, 1).unwrap();
        let p = f.poly_from_ints(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = f.factorize(&p).unwrap();
        assert_eq!(fac.factors.len(), 6);
        assert!(fac.factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(f.expand(&fac), p);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = FqField::new(7, 1).unwrap();
        assert_eq!(f.factorize(&Poly::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = FqField::new(7, 1).unwrap();
        // (X^7 - 2)(X+1)^3 (X^2+1): X^7 - 2 = (X - 2)^7 in characteristic 7
        let a = f.poly_from_ints(&[-2, 0, 0, 0, 0, 0, 0, 1]);
        let b = f.poly_pow(&f.poly_from_ints(&[1, 1]), 3);
        let c = f.poly_from_ints(&[1, 0, 1]);
        let p = f.poly_scale(&f.poly_mul(&f.poly_mul(&a, &b), &c), &f.from_u64(3));
        let fac = f.factorize(&p).unwrap();
        assert_eq!(f.expand(&fac), p);
        assert!(fac.factors.contains(&(f.poly_from_ints(&[-2, 1]), 7)));
        assert!(fac.factors.contains(&(f.poly_from_ints(&[1, 1]), 3)));
        assert!(fac.factors.contains(&(c.clone(), 1)));
        assert!(fac.factors.iter().all(|(g, _)| f.is_irreducible(g)));
    }

    #[test]
    fn binary_field_factorization() {
        let f = FqField::new(2, 2).unwrap();
        // X^4 - X over F_4 splits into four linear factors
        let p = f.poly_from_ints(&[0, -1, 0, 0, 1]);
        let fac = f.factorize(&p).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert_eq!(f.expand(&fac), p);
    }

    #[test]
    fn root_routes_agree() {
        let f = FqField::new(7, 3).unwrap();
        let p = f.poly_from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let a = f.roots_exhaustive(&p).unwrap();
        let b = f.roots_by_splitting(&p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
    }
}
