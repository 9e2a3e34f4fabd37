//! Arithmetic in finite fields `F_q`, `q = ell^f`, and the power-residue map.
//!
//! A field is a plain value ([`FqField`]); its elements ([`FqElem`]) are
//! coefficient vectors over `Z/ell` with respect to the power basis of the
//! field's modulus, and all arithmetic goes through the field:
//!
//! ```
//! use prigid::fq::FqField;
//! let f = FqField::new(7, 3).unwrap();
//! let x = f.generator();
//! assert_eq!(f.pow(&x, 342), f.one());
//! ```

mod factor;
mod poly;

pub use factor::{Factorization, EDF_SEED};
pub use poly::Poly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::Rng;
use serde::Serialize;

use crate::arith::{is_prime, valuation};
use crate::error::{usage, Error, Result};

/// An element of some [`FqField`]: coefficients `c_0..c_{f-1}` of
/// `c_0 + c_1 X + ... + c_{f-1} X^{f-1}` modulo the field's modulus.
///
/// Elements are ordered by their canonical integer encoding
/// `sum c_i ell^i`, which is what every "smallest element" rule uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The finite field `F_{ell^f}` presented as `F_ell[X]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqField {
    ell: u64,
    degree: usize,
    /// Monic, low-to-high, length `degree + 1`.
    modulus: Vec<u64>,
    order: u128,
}

type ModulusCache = Mutex<HashMap<(u64, usize), Vec<u64>>>;

fn modulus_cache() -> &'static ModulusCache {
    static CACHE: OnceLock<ModulusCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FqField {
    /// Builds `F_{ell^f}` with the smallest monic irreducible modulus of
    /// degree `f`, where polynomials are compared by the integer encoding of
    /// their non-leading coefficients.
    pub fn new(ell: u64, f: usize) -> Result<Self> {
        if !is_prime(ell) {
            return usage(format!("characteristic {ell} is not prime"));
        }
        if ell >= 1 << 31 {
            return usage("characteristic too large for word arithmetic");
        }
        if f == 0 {
            return usage("extension degree must be at least 1");
        }
        let order = crate::arith::checked_pow(ell as u128, f as u32).ok_or_else(|| {
            Error::ResourceBound { what: format!("field order {ell}^{f}"), bound: u128::MAX }
        })?;
        if f == 1 {
            return Ok(FqField { ell, degree: 1, modulus: vec![0, 1], order });
        }
        if let Some(m) = modulus_cache().lock().unwrap().get(&(ell, f)) {
            return Ok(FqField { ell, degree: f, modulus: m.clone(), order });
        }
        let prime = FqField::new(ell, 1)?;
        let mut n: u128 = 1;
        let modulus = loop {
            let mut coeffs = Vec::with_capacity(f + 1);
            let mut m = n;
            for _ in 0..f {
                coeffs.push((m % ell as u128) as u64);
                m /= ell as u128;
            }
            coeffs.push(1);
            let cand = Poly::new(coeffs.iter().map(|&c| prime.from_u64(c)).collect());
            if coeffs[0] != 0 && prime.is_irreducible(&cand) {
                break coeffs;
            }
            n += 1;
        };
        modulus_cache().lock().unwrap().insert((ell, f), modulus.clone());
        Ok(FqField { ell, degree: f, modulus, order })
    }

    /// Parses `gf(7)` or `gf(7^3)`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected gf(ell^f), got `{s}`")))?;
        let (ell, f) = match inner.split_once('^') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (inner.trim(), "1"),
        };
        let ell = ell.parse().map_err(|_| Error::Parse(format!("bad characteristic `{ell}`")))?;
        let f = f.parse().map_err(|_| Error::Parse(format!("bad degree `{f}`")))?;
        FqField::new(ell, f)
    }

    pub fn characteristic(&self) -> u64 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Monic modulus, low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn descriptor(&self) -> String {
        if self.degree == 1 {
            format!("gf({})", self.ell)
        } else {
            format!("gf({}^{})", self.ell, self.degree)
        }
    }

    pub fn zero(&self) -> FqElem {
        FqElem { coeffs: vec![0; self.degree] }
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut coeffs = vec![0; self.degree];
        coeffs[0] = c % self.ell;
        FqElem { coeffs }
    }

    pub fn from_int(&self, c: i64) -> FqElem {
        self.from_u64(c.rem_euclid(self.ell as i64) as u64)
    }

    pub fn from_coeffs(&self, cs: &[i64]) -> Result<FqElem> {
        if cs.len() > self.degree {
            return usage(format!("{} coefficients given for a degree-{} field", cs.len(), self.degree));
        }
        let mut coeffs = vec![0; self.degree];
        for (slot, &c) in coeffs.iter_mut().zip(cs) {
            *slot = c.rem_euclid(self.ell as i64) as u64;
        }
        Ok(FqElem { coeffs })
    }

    /// The class of `X` (a primitive element only by accident).
    pub fn generator(&self) -> FqElem {
        if self.degree == 1 {
            // F_ell[X]/(X) convention: the generator is 0
            return self.zero();
        }
        let mut coeffs = vec![0; self.degree];
        coeffs[1] = 1;
        FqElem { coeffs }
    }

    pub fn encode(&self, x: &FqElem) -> u128 {
        x.coeffs.iter().rev().fold(0u128, |acc, &c| acc * self.ell as u128 + c as u128)
    }

    pub fn decode(&self, mut n: u128) -> FqElem {
        let mut coeffs = vec![0; self.degree];
        for c in coeffs.iter_mut() {
            *c = (n % self.ell as u128) as u64;
            n /= self.ell as u128;
        }
        FqElem { coeffs }
    }

    /// Parses an element literal: an integer, or `[c0,c1,...]`.
    pub fn parse_elem(&self, s: &str) -> Result<FqElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let cs = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            self.from_coeffs(&cs)
        } else {
            let c: i64 = s.parse().map_err(|_| Error::Parse(format!("bad element literal `{s}`")))?;
            Ok(self.from_int(c))
        }
    }

    pub fn format_elem(&self, x: &FqElem) -> String {
        if self.degree == 1 {
            x.coeffs[0].to_string()
        } else {
            let parts: Vec<String> = x.coeffs.iter().map(u64::to_string).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn is_zero(&self, x: &FqElem) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, x: &FqElem) -> bool {
        x.coeffs[0] == 1 && x.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True when `x` lies in the prime field.
    pub fn is_prime_field_elem(&self, x: &FqElem) -> bool {
        x.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let l = self.ell;
        FqElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % l).collect() }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let l = self.ell;
        FqElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + l - y) % l).collect() }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let l = self.ell;
        FqElem { coeffs: a.coeffs.iter().map(|x| (l - x) % l).collect() }
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let l = self.ell;
        let f = self.degree;
        if f == 1 {
            return FqElem { coeffs: vec![a.coeffs[0] * b.coeffs[0] % l] };
        }
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % l;
            }
        }
        for k in (f..2 * f - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // X^f = -(m_0 + ... + m_{f-1} X^{f-1})
            for i in 0..f {
                let m = self.modulus[i];
                if m != 0 {
                    prod[k - f + i] = (prod[k - f + i] + (l - m) * c) % l;
                }
            }
            prod[k] = 0;
        }
        prod.truncate(f);
        FqElem { coeffs: prod }
    }

    pub fn scale(&self, a: &FqElem, c: u64) -> FqElem {
        let l = self.ell;
        FqElem { coeffs: a.coeffs.iter().map(|x| x * (c % l) % l).collect() }
    }

    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// `a^e` for a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: &FqElem, e: i64) -> Result<FqElem> {
        if e >= 0 {
            Ok(self.pow(a, e as u128))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x -> x^(ell^j)`.
    pub fn frobenius(&self, a: &FqElem, j: usize) -> FqElem {
        let mut x = a.clone();
        for _ in 0..j % self.degree {
            x = self.pow(&x, self.ell as u128);
        }
        x
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FqElem {
        FqElem { coeffs: (0..self.degree).map(|_| rng.gen_range(0..self.ell)).collect() }
    }

    /// All elements in increasing encoding order; only sensible for small `q`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order).map(move |n| self.decode(n))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FqElem) -> Result<u128> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.order - 1;
        for r in crate::arith::prime_divisors(ord) {
            while ord.is_multiple_of(r) && self.is_one(&self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// `v_p(q - 1)`: the largest `h` with `mu_{p^h}` contained in the field.
    pub fn roots_of_unity_depth(&self, p: u64) -> Result<u32> {
        if p < 2 || !(self.order - 1).is_multiple_of(p as u128) {
            return usage(format!("{p} does not divide q - 1 = {}: the field lacks mu_{p}", self.order - 1));
        }
        Ok(valuation(self.order - 1, p as u128))
    }

    /// The canonical primitive `p^h`-th root of unity.
    ///
    /// `zeta_{p}` is the order-`p` element of smallest encoding, and each
    /// `zeta_{p^{h+1}}` is the smallest-encoding `p`-th root of `zeta_{p^h}`,
    /// so the system satisfies `zeta_{p^{h+1}}^p = zeta_{p^h}`.
    pub fn root_of_unity(&self, p: u64, h: u32) -> Result<FqElem> {
        let depth = self.roots_of_unity_depth(p)?;
        if h > depth {
            return usage(format!("mu_{{{p}^{h}}} is not contained in {}", self.descriptor()));
        }
        if h == 0 {
            return Ok(self.one());
        }
        let p128 = p as u128;
        let cof = (self.order - 1) / p128;
        let mut seed = 2u128;
        let primitive = loop {
            let z = self.pow(&self.decode(seed), cof);
            if !self.is_one(&z) {
                break z;
            }
            seed += 1;
        };
        let mut zeta = (1..p).map(|j| self.pow(&primitive, j as u128)).min().unwrap();
        for _ in 1..h {
            zeta = self.pth_root(&zeta, p)?;
        }
        Ok(zeta)
    }

    /// Class of `x` in `F_q^* / F_q^{*p}` as the discrete log of
    /// `x^((q-1)/p)` to base `zeta`.
    pub fn power_residue_class(&self, x: &FqElem, p: u64, zeta: &FqElem) -> Result<u64> {
        if self.is_zero(x) {
            return Err(Error::ZeroElement);
        }
        let p128 = p as u128;
        if !(self.order - 1).is_multiple_of(p128) {
            return usage(format!("{p} does not divide q - 1"));
        }
        if self.is_one(zeta) || !self.is_one(&self.pow(zeta, p128)) {
            return usage("zeta must have exact multiplicative order p");
        }
        let y = self.pow(x, (self.order - 1) / p128);
        let mut z = self.one();
        for c in 0..p {
            if z == y {
                return Ok(c);
            }
            z = self.mul(&z, zeta);
        }
        Err(Error::Verification("power residue symbol escaped mu_p".into()))
    }

    /// `p`-th root of `x`, choosing the smallest encoding among all roots.
    pub fn pth_root(&self, x: &FqElem, p: u64) -> Result<FqElem> {
        if self.is_zero(x) {
            return Ok(self.zero());
        }
        let mut coeffs = vec![self.neg(x)];
        coeffs.extend(std::iter::repeat_n(self.zero(), p as usize - 1));
        coeffs.push(self.one());
        let roots = self.roots(&Poly::new(coeffs))?;
        roots.into_iter().next().ok_or(Error::NotPthPower { p })
    }

    /// Smallest-encoding unit whose power-residue class is exactly 1.
    pub fn canonical_nonresidue(&self, p: u64, zeta: &FqElem) -> Result<FqElem> {
        for n in 2..self.order {
            let x = self.decode(n);
            if self.power_residue_class(&x, p, zeta)? == 1 {
                return Ok(x);
            }
        }
        usage("field has no p-th power non-residues")
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Field embedding `F_{ell^a} -> F_{ell^b}` (`a | b`) sending the source
/// generator to the smallest-encoding root of the source modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: FqField,
    pub target: FqField,
    image_of_generator: FqElem,
}

impl Embedding {
    pub fn new(source: &FqField, target: &FqField) -> Result<Self> {
        if source.ell != target.ell || !target.degree.is_multiple_of(source.degree) {
            return usage(format!("{source} does not embed in {target}"));
        }
        let image_of_generator = if source.degree == 1 {
            target.zero()
        } else {
            let m = Poly::new(source.modulus.iter().map(|&c| target.from_u64(c)).collect());
            target
                .roots(&m)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Verification("source modulus has no root in target".into()))?
        };
        Ok(Embedding { source: source.clone(), target: target.clone(), image_of_generator })
    }

    pub fn apply(&self, x: &FqElem) -> FqElem {
        if self.source.degree == 1 {
            return self.target.from_u64(x.coeffs[0]);
        }
        let t = &self.target;
        let mut acc = t.zero();
        for &c in x.coeffs.iter().rev() {
            acc = t.add(&t.mul(&acc, &self.image_of_generator), &t.from_u64(c));
        }
        acc
    }

    pub fn image_of_generator(&self) -> &FqElem {
        &self.image_of_generator
    }
}

/// Serializable summary of a field.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FieldSummary {
    pub descriptor: String,
    pub modulus: Vec<u64>,
    pub order: String,
}

impl From<&FqField> for FieldSummary {
    fn from(f: &FqField) -> Self {
        FieldSummary { descriptor: f.descriptor(), modulus: f.modulus.clone(), order: f.order.to_string() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FqField::new(7, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 7);
        let three = f.from_u64(3);
        assert_eq!(f.mul(&three, &three), f.from_u64(2));
        assert_eq!(f.inv(&three).unwrap(), f.from_u64(5));
        assert!(matches!(FqField::new(9, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn cubic_modulus_is_smallest_irreducible() {
        // sieve over monic cubics in encoding order with the root test
        // (a cubic is irreducible iff it has no root)
        let f7 = FqField::new(7, 1).unwrap();
        let mut expected = None;
        'outer: for n in 0..343u64 {
            let c = [n % 7, (n / 7) % 7, n / 49];
            for x in 0..7u64 {
                let v = (x * x * x + c[2] * x * x + c[1] * x + c[0]) % 7;
                if v == 0 {
                    continue 'outer;
                }
            }
            expected = Some(vec![c[0], c[1], c[2], 1]);
            break;
        }
        let f = FqField::new(7, 3).unwrap();
        assert_eq!(Some(f.modulus().to_vec()), expected);
        assert_eq!(f.modulus(), &[2, 0, 0, 1]);
        assert!(f7.is_irreducible(&Poly::new(f.modulus().iter().map(|&c| f7.from_u64(c)).collect())));
        // reproducible
        assert_eq!(FqField::new(7, 3).unwrap(), f);
    }

    #[test]
    fn binary_field_construction_succeeds() {
        let f = FqField::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        let f4 = FqField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn residue_class_examples() {
        let f = FqField::new(7, 1).unwrap();
        let z = f.from_u64(2);
        assert_eq!(f.root_of_unity(3, 1).unwrap(), z);
        assert_eq!(f.power_residue_class(&f.one(), 3, &z).unwrap(), 0);
        assert_eq!(f.power_residue_class(&f.from_u64(3), 3, &z).unwrap(), 1);
        assert_eq!(f.power_residue_class(&f.from_u64(6), 3, &z).unwrap(), 0);
        assert_eq!(f.power_residue_class(&f.zero(), 3, &z), Err(Error::ZeroElement));
        assert!(matches!(f.power_residue_class(&f.one(), 3, &f.from_u64(6)), Err(Error::Usage(_))));
    }

    #[test]
    fn pth_roots() {
        let f = FqField::new(7, 1).unwrap();
        assert_eq!(f.pth_root(&f.one(), 3).unwrap(), f.one());
        assert_eq!(f.pth_root(&f.from_u64(6), 3).unwrap(), f.from_u64(3));
        assert_eq!(f.pth_root(&f.from_u64(3), 3), Err(Error::NotPthPower { p: 3 }));
        let g = FqField::new(7, 3).unwrap();
        let three = g.from_u64(3);
        // 3^114 = 1 in F_7 since 114 = 6 * 19
        assert!(g.is_one(&g.pow(&three, 114)));
        let r = g.pth_root(&three, 3).unwrap();
        assert_eq!(g.pow(&r, 3), three);
    }

    #[test]
    fn depths() {
        assert_eq!(FqField::new(7, 1).unwrap().roots_of_unity_depth(3).unwrap(), 1);
        assert_eq!(FqField::new(19, 1).unwrap().roots_of_unity_depth(3).unwrap(), 2);
        assert_eq!(FqField::new(2, 2).unwrap().roots_of_unity_depth(3).unwrap(), 1);
        assert_eq!(FqField::new(7, 3).unwrap().roots_of_unity_depth(3).unwrap(), 2);
        assert!(FqField::new(5, 1).unwrap().roots_of_unity_depth(3).is_err());
    }

    #[test]
    fn compatible_roots_of_unity() {
        let f = FqField::new(7, 9).unwrap();
        let z27 = f.root_of_unity(3, 3).unwrap();
        let z9 = f.root_of_unity(3, 2).unwrap();
        let z3 = f.root_of_unity(3, 1).unwrap();
        assert_eq!(f.pow(&z27, 3), z9);
        assert_eq!(f.pow(&z9, 3), z3);
        assert_eq!(f.multiplicative_order(&z27).unwrap(), 27);
    }

    #[test]
    fn canonical_nonresidue_of_f7() {
        let f = FqField::new(7, 1).unwrap();
        let z = f.root_of_unity(3, 1).unwrap();
        assert_eq!(f.canonical_nonresidue(3, &z).unwrap(), f.from_u64(3));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let a = FqField::new(7, 3).unwrap();
        let b = FqField::new(7, 9).unwrap();
        let e = Embedding::new(&a, &b).unwrap();
        let x = a.from_coeffs(&[1, 2, 3]).unwrap();
        let y = a.from_coeffs(&[4, 0, 6]).unwrap();
        assert_eq!(e.apply(&a.mul(&x, &y)), b.mul(&e.apply(&x), &e.apply(&y)));
        assert_eq!(e.apply(&a.add(&x, &y)), b.add(&e.apply(&x), &e.apply(&y)));
    }

    #[test]
    fn literals() {
        let f = FqField::parse("gf(7^3)").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.parse_elem("[1,2]").unwrap(), f.from_coeffs(&[1, 2, 0]).unwrap());
        assert_eq!(FqField::parse("gf(7)").unwrap().parse_elem("-1").unwrap().coeffs(), &[6]);
        assert!(FqField::parse("gf7").is_err());
    }
}
