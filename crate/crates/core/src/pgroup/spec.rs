use std::fmt;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{checked_pow, is_prime, prime_divisors};
use crate::error::{usage, Error, Result};

/// Default bound on group orders handled by closure: `3^10`.
pub const DEFAULT_ORDER_BOUND: u64 = 59_049;
/// Default truncation-depth bound for θ-abelian models.
pub const DEFAULT_DEPTH_BOUND: u32 = 6;
/// Tables up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
/// Sampled associativity checks above that limit.
pub const ASSOCIATIVITY_SAMPLES: usize = 1000;

/// Depth `k` of `p`-power roots of unity: finite or `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootDepth {
    Finite(u32),
    Infinite,
}

impl fmt::Display for RootDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootDepth::Finite(k) => write!(f, "{k}"),
            RootDepth::Infinite => f.write_str("inf"),
        }
    }
}

/// Parameters of the θ-abelian model `<σ, ρ_i | σ ρ_i σ^{-1} = ρ_i^{1+p^k}, [ρ_i, ρ_j] = 1>`
/// truncated modulo `p^m`.
///
/// The descriptor `theta(p,k,i,m)` names `i = #{ρ_i}`; the minimal number of
/// generators is `d = i + 1` for finite `k`, and `d = i` when `k = inf` (σ
/// then acts trivially and is dropped).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ThetaAbelianSpec {
    pub p: u64,
    pub k: RootDepth,
    pub d: usize,
    pub m: u32,
}

impl ThetaAbelianSpec {
    /// `rho_count` is the number of `ρ_i`. `m = 0` gives the trivial truncation.
    pub fn new(p: u64, k: RootDepth, rho_count: usize, m: u32) -> Result<Self> {
        Self::with_depth_bound(p, k, rho_count, m, DEFAULT_DEPTH_BOUND)
    }

    pub fn with_depth_bound(p: u64, k: RootDepth, rho_count: usize, m: u32, bound: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return usage(format!("theta models need an odd prime, got {p}"));
        }
        if let RootDepth::Finite(0) = k {
            return usage("k must be at least 1");
        }
        if m > bound {
            return Err(Error::ResourceBound { what: format!("truncation depth m = {m}"), bound: bound as u128 });
        }
        let d = match k {
            RootDepth::Finite(_) => rho_count + 1,
            RootDepth::Infinite => rho_count,
        };
        if d == 0 {
            return usage("theta model needs at least one generator");
        }
        Ok(ThetaAbelianSpec { p, k, d, m })
    }

    pub fn rho_count(&self) -> usize {
        match self.k {
            RootDepth::Finite(_) => self.d - 1,
            RootDepth::Infinite => self.d,
        }
    }

    /// `p^m`.
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// The scalar `θ(σ) = 1 + p^k` reduced mod `p^m` (1 for `k = inf`).
    pub fn action_scalar(&self) -> u64 {
        let md = self.modulus();
        match self.k {
            RootDepth::Finite(k) => {
                let pk = checked_pow(self.p as u128, k).unwrap_or(0) % md as u128;
                ((1 + pk) % md as u128) as u64
            }
            RootDepth::Infinite => 1 % md,
        }
    }

    pub fn descriptor(&self) -> String {
        format!("theta({},{},{},{})", self.p, self.k, self.rho_count(), self.m)
    }
}

/// How the multiplication law is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `(s, v_1..v_{d-1})` mod `p^m` with `(s,v)(t,w) = (s+t, v + θ^s w)`.
    ThetaAbelianAffine(ThetaAbelianSpec),
    /// Upper unitriangular `n x n` matrices over `Z/p^e`.
    Unitriangular { n: usize, p: u64, e: u32 },
    /// Multiplication table, element 0 is the identity.
    ExplicitTable { table: Vec<Vec<u32>> },
}

/// A finite `p`-group with a multiplication oracle on dense codes
/// `0..order`; code 0 is always the identity.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    kind: GroupKind,
    p: u64,
    order: u64,
    bound: u64,
    theta_pows: Vec<u64>,
    table_inv: Vec<u32>,
    source: String,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

/// Coordinates of one element: `(s, v_1, ..)` for θ models, the strict upper
/// triangle row by row for unitriangular groups, `[index]` for tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupSpec {
    pub fn theta(spec: ThetaAbelianSpec) -> Result<Arc<Self>> {
        let md = spec.modulus();
        let order = checked_pow(md as u128, spec.d as u32)
            .filter(|&o| o <= u64::MAX as u128)
            .ok_or_else(|| Error::ResourceBound { what: "theta group order".into(), bound: u64::MAX as u128 })?
            as u64;
        let theta = spec.action_scalar();
        let mut theta_pows = Vec::with_capacity(md as usize);
        let mut acc = 1 % md;
        for _ in 0..md {
            theta_pows.push(acc);
            acc = acc * theta % md;
        }
        Ok(Arc::new(GroupSpec {
            kind: GroupKind::ThetaAbelianAffine(spec),
            p: spec.p,
            order,
            bound: DEFAULT_ORDER_BOUND,
            theta_pows,
            table_inv: Vec::new(),
            source: spec.descriptor(),
        }))
    }

    pub fn unitriangular(n: usize, p: u64, e: u32) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return usage(format!("{p} is not prime"));
        }
        if n < 1 || e < 1 {
            return usage("unitriangular groups need n >= 1 and e >= 1");
        }
        let entries = (n * (n - 1) / 2) as u32;
        let order = checked_pow(p as u128, e * entries)
            .filter(|&o| o <= u64::MAX as u128)
            .ok_or_else(|| Error::ResourceBound { what: "unitriangular group order".into(), bound: u64::MAX as u128 })?
            as u64;
        Ok(Arc::new(GroupSpec {
            kind: GroupKind::Unitriangular { n, p, e },
            p,
            order,
            bound: DEFAULT_ORDER_BOUND,
            theta_pows: Vec::new(),
            table_inv: Vec::new(),
            source: format!("ut({n},{p},{e})"),
        }))
    }

    /// Validates a multiplication table: identity row/column, inverses,
    /// associativity (exhaustive up to order 512, sampled above) and
    /// prime-power order.
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Arc<Self>> {
        let n = table.len();
        if n < 2 {
            return usage("a table group needs at least two elements");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
            return usage("multiplication table must be square with entries below its order");
        }
        let primes = prime_divisors(n as u128);
        if primes.len() != 1 {
            return usage(format!("table order {n} is not a prime power"));
        }
        let p = primes[0] as u64;
        for (i, row) in table.iter().enumerate() {
            if table[0][i] as usize != i || row[0] as usize != i {
                return usage("row and column 0 must be the identity");
            }
        }
        let mut table_inv = vec![0u32; n];
        for (i, row) in table.iter().enumerate() {
            let j = row.iter().position(|&x| x == 0).ok_or_else(|| Error::Usage(format!("element {i} has no inverse")))?;
            if table[j][i] != 0 {
                return usage(format!("element {i} has no two-sided inverse"));
            }
            table_inv[i] = j as u32;
        }
        let assoc = |a: usize, b: usize, c: usize| {
            table[table[a][b] as usize][c] == table[a][table[b][c] as usize]
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return usage(format!("table is not associative at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return usage(format!("table is not associative at ({a},{b},{c})"));
                }
            }
        }
        Ok(Arc::new(GroupSpec {
            kind: GroupKind::ExplicitTable { table },
            p,
            order: n as u64,
            bound: DEFAULT_ORDER_BOUND,
            theta_pows: Vec::new(),
            table_inv,
            source: "table".into(),
        }))
    }

    /// Reads a table file: one whitespace-separated row per element.
    pub fn from_table_file(path: &Path) -> Result<Arc<Self>> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        let table = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad table entry `{t}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Self::from_table(table)?;
        let mut g = Arc::try_unwrap(g).unwrap_or_else(|a| (*a).clone());
        g.source = format!("table:{}", path.display());
        Ok(Arc::new(g))
    }

    /// Parses `theta(p,k,i,m)`, `ut(n,p,e)` or `table:<path>`.
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("table:") {
            return Self::from_table_file(Path::new(path));
        }
        let (name, args) = s
            .strip_suffix(')')
            .and_then(|r| r.split_once('('))
            .ok_or_else(|| Error::Parse(format!("unrecognised group descriptor `{s}`")))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer `{t}` in `{s}`")));
        match (name.trim(), args.as_slice()) {
            ("theta", [p, k, i, m]) => {
                let k = if *k == "inf" { RootDepth::Infinite } else { RootDepth::Finite(num(k)? as u32) };
                Self::theta(ThetaAbelianSpec::new(num(p)?, k, num(i)? as usize, num(m)? as u32)?)
            }
            ("ut", [n, p, e]) => Self::unitriangular(num(n)? as usize, num(p)?, num(e)? as u32),
            _ => Err(Error::Parse(format!("unrecognised group descriptor `{s}`"))),
        }
    }

    /// Same group with a different closure order bound.
    pub fn with_bound(self: &Arc<Self>, bound: u64) -> Arc<Self> {
        let mut g = (**self).clone();
        g.bound = bound;
        Arc::new(g)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn descriptor(&self) -> &str {
        &self.source
    }

    pub fn theta_spec(&self) -> Option<&ThetaAbelianSpec> {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(s) => Some(s),
            _ => None,
        }
    }

    pub(crate) fn check_bound(&self) -> Result<()> {
        if self.order > self.bound {
            return Err(Error::ResourceBound { what: format!("order of {}", self.source), bound: self.bound as u128 });
        }
        Ok(())
    }

    fn radix(&self) -> (u64, usize) {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(s) => (s.modulus(), s.d),
            GroupKind::Unitriangular { n, p, e } => (p.pow(*e), n * (n - 1) / 2),
            GroupKind::ExplicitTable { table } => (table.len() as u64, 1),
        }
    }

    pub fn decode(&self, code: u32) -> GroupElement {
        let (base, len) = self.radix();
        let mut c = code as u64;
        let coords = (0..len)
            .map(|_| {
                let x = c % base;
                c /= base;
                x
            })
            .collect();
        GroupElement { coords }
    }

    pub fn encode(&self, e: &GroupElement) -> Result<u32> {
        let (base, len) = self.radix();
        if e.coords.len() != len || e.coords.iter().any(|&x| x >= base) {
            return usage(format!("element {:?} does not belong to {}", e.coords, self.source));
        }
        Ok(e.coords.iter().rev().fold(0u64, |acc, &x| acc * base + x) as u32)
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(spec) => {
                let md = spec.modulus();
                if md == 1 {
                    return 0;
                }
                let (mut x, mut y) = (a as u64, b as u64);
                let s = x % md;
                let t = y % md;
                x /= md;
                y /= md;
                let th = self.theta_pows[s as usize];
                let mut out = (s + t) % md;
                let mut scale = md;
                for _ in 1..spec.d {
                    let v = x % md;
                    let w = y % md;
                    x /= md;
                    y /= md;
                    out += ((v + th * w) % md) * scale;
                    scale *= md;
                }
                out as u32
            }
            GroupKind::Unitriangular { n, p, e } => {
                let md = p.pow(*e);
                let ma = self.ut_matrix(a, *n, md);
                let mb = self.ut_matrix(b, *n, md);
                let mut code = 0u64;
                let mut scale = 1u64;
                #[allow(clippy::needless_range_loop)]
                for i in 0..*n {
                    for j in i + 1..*n {
                        let s = (i..=j).fold(0u64, |s, k| (s + ma[i][k] * mb[k][j]) % md);
                        code += s * scale;
                        scale *= md;
                    }
                }
                code as u32
            }
            GroupKind::ExplicitTable { table } => table[a as usize][b as usize],
        }
    }

    fn ut_matrix(&self, code: u32, n: usize, md: u64) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; n]; n];
        let mut c = code as u64;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
            for x in row.iter_mut().skip(i + 1) {
                *x = c % md;
                c /= md;
            }
        }
        m
    }

    pub fn inv(&self, a: u32) -> u32 {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(spec) => {
                let md = spec.modulus();
                if md == 1 {
                    return 0;
                }
                let mut x = a as u64;
                let s = x % md;
                x /= md;
                let th = self.theta_pows[((md - s) % md) as usize];
                let mut out = (md - s) % md;
                let mut scale = md;
                for _ in 1..spec.d {
                    let v = x % md;
                    x /= md;
                    out += ((md - v * th % md) % md) * scale;
                    scale *= md;
                }
                out as u32
            }
            GroupKind::Unitriangular { .. } => {
                // x^{-1} = x^{order(x) - 1}; orders divide the exponent p^{e + n}
                let mut y = a;
                let mut prev = 0;
                while y != 0 {
                    prev = y;
                    y = self.mul(y, a);
                }
                if prev == 0 {
                    0
                } else {
                    prev
                }
            }
            GroupKind::ExplicitTable { .. } => self.table_inv[a as usize],
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 0;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(b, b);
            }
        }
        acc
    }

    /// `[a, b] = a b a^{-1} b^{-1}`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inv(a)), self.inv(b))
    }

    /// `c x c^{-1}`.
    pub fn conjugate(&self, c: u32, x: u32) -> u32 {
        self.mul(self.mul(c, x), self.inv(c))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut o = 1;
        let mut y = a;
        while y != 0 {
            y = self.pow(y, self.p);
            o *= self.p;
        }
        o
    }

    /// Standard generators: σ, ρ_1, .. for θ models; the elementary matrices
    /// `E_{i,i+1}` for unitriangular groups; a greedy generating set for tables.
    pub fn generators(&self) -> Vec<u32> {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(spec) => {
                let md = spec.modulus();
                if md == 1 {
                    return Vec::new();
                }
                (0..spec.d).map(|i| md.pow(i as u32) as u32).collect()
            }
            GroupKind::Unitriangular { n, .. } => (0..n.saturating_sub(1))
                .map(|i| {
                    let mut coords = vec![0u64; n * (n - 1) / 2];
                    coords[self.ut_index(i, i + 1)] = 1;
                    self.encode(&GroupElement { coords }).unwrap()
                })
                .collect(),
            GroupKind::ExplicitTable { table } => {
                let n = table.len();
                let mut member = vec![false; n];
                member[0] = true;
                let mut elems = vec![0u32];
                let mut gens = Vec::new();
                for x in 1..n as u32 {
                    if member[x as usize] {
                        continue;
                    }
                    gens.push(x);
                    let mut queue: Vec<u32> = elems.iter().map(|&e| self.mul(e, x)).collect();
                    while let Some(y) = queue.pop() {
                        if member[y as usize] {
                            continue;
                        }
                        member[y as usize] = true;
                        elems.push(y);
                        queue.extend(gens.iter().map(|&h| self.mul(y, h)));
                    }
                }
                gens
            }
        }
    }

    /// Position of entry `(i, j)`, `i < j`, in unitriangular coordinates.
    pub fn ut_index(&self, i: usize, j: usize) -> usize {
        let GroupKind::Unitriangular { n, .. } = &self.kind else {
            panic!("ut_index on a non-unitriangular group");
        };
        (0..i).map(|r| n - 1 - r).sum::<usize>() + (j - i - 1)
    }

    /// θ models: σ.
    pub fn sigma(&self) -> Option<u32> {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(spec) if spec.modulus() > 1 && spec.k != RootDepth::Infinite => Some(1),
            _ => None,
        }
    }

    /// θ models: ρ_i for `i` in `1..=rho_count`.
    pub fn rho(&self, i: usize) -> Option<u32> {
        match &self.kind {
            GroupKind::ThetaAbelianAffine(spec) if spec.modulus() > 1 => {
                let offset = match spec.k {
                    RootDepth::Finite(_) => 0,
                    RootDepth::Infinite => 1,
                };
                let pos = i.checked_sub(offset)?;
                (pos < spec.d && i >= 1).then(|| spec.modulus().pow(pos as u32) as u32)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_group_laws() {
        let g = GroupSpec::parse("theta(3,1,1,3)").unwrap();
        assert_eq!(g.order(), 729);
        let (s, r) = (g.sigma().unwrap(), g.rho(1).unwrap());
        // σ ρ σ^{-1} = ρ^{1+p^k}
        assert_eq!(g.conjugate(s, r), g.pow(r, 4));
        for a in (0..729).step_by(37) {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(g.inv(a), a), 0);
        }
    }

    #[test]
    fn associativity_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for desc in ["theta(3,1,1,3)", "theta(5,1,2,2)", "ut(4,3,1)", "ut(3,3,2)"] {
            let g = GroupSpec::parse(desc).unwrap();
            let n = g.order() as u32;
            for _ in 0..1000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{desc}");
            }
            for a in 0..n.min(500) {
                assert_eq!(g.mul(a, 0), a);
                assert_eq!(g.mul(a, g.inv(a)), 0);
            }
        }
    }

    #[test]
    fn descriptors_and_errors() {
        assert_eq!(GroupSpec::parse("ut(4,3,1)").unwrap().order(), 729);
        assert_eq!(GroupSpec::parse("theta(3,inf,1,3)").unwrap().order(), 27);
        assert!(matches!(GroupSpec::parse("theta(2,1,1,3)"), Err(Error::Usage(_))));
        assert!(matches!(GroupSpec::parse("theta(3,1,1,7)"), Err(Error::ResourceBound { .. })));
        assert!(matches!(GroupSpec::parse("foo(1)"), Err(Error::Parse(_))));
    }

    #[test]
    fn table_validation() {
        let z3: Vec<Vec<u32>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        assert_eq!(GroupSpec::from_table(z3).unwrap().p(), 3);
        let z6: Vec<Vec<u32>> = (0..6).map(|i| (0..6).map(|j| (i + j) % 6).collect()).collect();
        assert!(GroupSpec::from_table(z6).is_err());
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(GroupSpec::from_table(bad).is_err());
    }

    #[test]
    fn unitriangular_coordinates() {
        let g = GroupSpec::parse("ut(4,3,1)").unwrap();
        assert_eq!(g.ut_index(0, 1), 0);
        assert_eq!(g.ut_index(0, 3), 2);
        assert_eq!(g.ut_index(1, 2), 3);
        assert_eq!(g.ut_index(2, 3), 5);
        let gens = g.generators();
        let c = g.commutator(gens[0], gens[1]);
        let mut e13 = vec![0; 6];
        e13[g.ut_index(0, 2)] = 1;
        assert_eq!(g.decode(c).coords, e13);
    }
}
