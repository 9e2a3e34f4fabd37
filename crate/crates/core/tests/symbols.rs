use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prigid::fq::{FqField, Poly};
use prigid::ratfunc::{Place, RatFunc};
use prigid::series::Laurent;
use prigid::symbol::{power_class, symbol, tame_symbol_local, FieldDescriptor, FieldElem, PowerClass};

/// `c` with `x^((q-1)/p) = zeta^c`, by plain integer arithmetic mod `q`.
fn class_oracle(x: u64, q: u64, p: u64, zeta: u64) -> u64 {
    let pw = |b: u64, e: u64| (0..e).fold(1u64, |acc, _| acc * b % q);
    let y = pw(x, (q - 1) / p);
    (0..p).find(|&c| pw(zeta, c) == y).expect("residue is a p-th root of unity")
}

/// `(a, b) = [(-1)^{ab} c_a^{v_b} c_b^{-v_a}]` from valuations and leading
/// coefficients, with the class computed by the integer oracle.
fn tame_oracle(a: &Laurent, b: &Laurent, q: u64, p: u64, zeta: u64) -> u64 {
    let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
    let ca = a.leading().unwrap().coeffs()[0];
    let cb = b.leading().unwrap().coeffs()[0];
    let la = class_oracle(ca, q, p, zeta) as i64;
    let lb = class_oracle(cb, q, p, zeta) as i64;
    let lm = class_oracle(q - 1, q, p, zeta) as i64;
    (va * vb * lm + vb * la - va * lb).rem_euclid(p as i64) as u64
}

fn laurent_strategy(q: u64) -> impl Strategy<Value = (i64, u64, Vec<u64>)> {
    (-3i64..=3, 1..q, prop::collection::vec(0..q, 0..4))
}

fn build(f: &FqField, (v, c, rest): &(i64, u64, Vec<u64>)) -> Laurent {
    let mut coeffs = vec![f.from_u64(*c)];
    coeffs.extend(rest.iter().map(|&x| f.from_u64(x)));
    Laurent::exact(f, *v, coeffs)
}

fn local(field: &FieldDescriptor, a: &Laurent, b: &Laurent) -> u64 {
    tame_symbol_local(field, &FieldElem::Laurent(a.clone()), &FieldElem::Laurent(b.clone())).unwrap()
}

proptest! {
    #[test]
    fn residue_class_is_a_homomorphism(x in 1u128..343, y in 1u128..343) {
        let field = FieldDescriptor::parse("gf(7^3)", 3).unwrap();
        let f = field.base();
        let (a, b) = (f.decode(x), f.decode(y));
        let class = |e| match power_class(&field, &FieldElem::Fin(e)).unwrap() {
            PowerClass::Finite(c) => c,
            _ => unreachable!(),
        };
        let (ca, cb) = (class(a.clone()), class(b.clone()));
        prop_assert_eq!(class(f.mul(&a, &b)), (ca + cb) % 3);
        prop_assert_eq!(class(f.pow(&a, 3)), 0);
        prop_assert_eq!(f.pow(&a, (343 - 1) / 3), f.pow(field.zeta(), ca as u128));
    }

    #[test]
    fn local_symbol_matches_oracle_f7(a in laurent_strategy(7), b in laurent_strategy(7)) {
        let field = FieldDescriptor::parse("laurent(7,32)", 3).unwrap();
        let f = field.base();
        let (a, b) = (build(f, &a), build(f, &b));
        let zeta = field.zeta().coeffs()[0];
        prop_assert_eq!(local(&field, &a, &b), tame_oracle(&a, &b, 7, 3, zeta));
    }

    #[test]
    fn local_symbol_matches_oracle_f19(a in laurent_strategy(19), b in laurent_strategy(19)) {
        let field = FieldDescriptor::parse("laurent(19,32)", 3).unwrap();
        let f = field.base();
        let (a, b) = (build(f, &a), build(f, &b));
        let zeta = field.zeta().coeffs()[0];
        prop_assert_eq!(local(&field, &a, &b), tame_oracle(&a, &b, 19, 3, zeta));
    }

    #[test]
    fn symbol_is_bilinear_and_antisymmetric(
        a in laurent_strategy(7),
        b in laurent_strategy(7),
        c in laurent_strategy(7),
    ) {
        let field = FieldDescriptor::parse("laurent(7,32)", 3).unwrap();
        let f = field.base();
        let (a, b, c) = (build(f, &a), build(f, &b), build(f, &c));
        let ab = a.mul(f, &b);
        prop_assert_eq!(local(&field, &ab, &c), (local(&field, &a, &c) + local(&field, &b, &c)) % 3);
        prop_assert_eq!((local(&field, &a, &b) + local(&field, &b, &a)) % 3, 0);
        prop_assert_eq!(local(&field, &a, &a), 0);
    }

    #[test]
    fn steinberg_relation_holds(a in laurent_strategy(7)) {
        let field = FieldDescriptor::parse("laurent(7,32)", 3).unwrap();
        let f = field.base();
        let a = build(f, &a);
        let one_minus = Laurent::one(f).sub(f, &a);
        prop_assume!(!one_minus.is_zero());
        prop_assert_eq!(local(&field, &a, &one_minus), 0);
    }
}

fn random_ratfunc(f: &FqField, rng: &mut ChaCha8Rng) -> RatFunc {
    let deg_n = rng.gen_range(0..=3);
    let mut num: Vec<_> = (0..deg_n).map(|_| f.from_u64(rng.gen_range(0..7))).collect();
    num.push(f.from_u64(rng.gen_range(1..7)));
    let deg_d = rng.gen_range(0..=2);
    let mut den: Vec<_> = (0..deg_d).map(|_| f.from_u64(rng.gen_range(0..7))).collect();
    den.push(f.one());
    RatFunc::new(f, &Poly::new(num), &Poly::new(den)).unwrap()
}

/// The symbol at the degree-one place `t = c` (or at infinity), computed by
/// expanding both functions in a local parameter and using the Laurent path.
fn symbol_by_expansion(local_field: &FieldDescriptor, a: &RatFunc, b: &RatFunc, at: Option<u64>) -> u64 {
    let f = local_field.base();
    let param = match at {
        Some(c) => Laurent::from_ints(f, 0, &[c as i64, 1]),
        None => Laurent::monomial(f, f.one(), -1),
    };
    let la = a.substitute(f, &param, 40).unwrap();
    let lb = b.substitute(f, &param, 40).unwrap();
    local(local_field, &la, &lb)
}

#[test]
fn global_symbols_agree_with_local_expansions_and_reciprocity() {
    let field = FieldDescriptor::parse("ratfunc(7)", 3).unwrap();
    let local_field = FieldDescriptor::parse("laurent(7,32)", 3).unwrap();
    let f = field.base();
    let mut rng = ChaCha8Rng::seed_from_u64(7_0003);
    for _ in 0..100 {
        let a = random_ratfunc(f, &mut rng);
        let b = random_ratfunc(f, &mut rng);
        let s = symbol(&field, &FieldElem::Rat(a.clone()), &FieldElem::Rat(b.clone())).unwrap();
        assert_eq!(s.sum(3), 0, "reciprocity for {} and {}", a.format(f), b.format(f));
        for c in 0..7u64 {
            let place = Place::Finite(Poly::new(vec![f.neg(&f.from_u64(c)), f.one()]));
            assert_eq!(s.get(&place), symbol_by_expansion(&local_field, &a, &b, Some(c)));
        }
        assert_eq!(s.get(&Place::Infinity), symbol_by_expansion(&local_field, &a, &b, None));
    }
}
