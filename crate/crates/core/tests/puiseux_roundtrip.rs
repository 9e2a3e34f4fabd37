use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prigid::fq::FqField;
use prigid::puiseux::{galois_stability, is_squarefree, puiseux_roots, verify_root, SeriesPoly};
use prigid::series::Laurent;
use prigid::symbol::FieldDescriptor;

const PRECISION: i64 = 4;

struct Radical {
    shift: Laurent,
    /// `a = c t^v (1 + ...)`
    c: u64,
    v: i64,
    a: Laurent,
}

fn random_radical(f: &FqField, rng: &mut ChaCha8Rng) -> Radical {
    let shift = Laurent::exact(f, 0, (0..3).map(|_| f.from_u64(rng.gen_range(0..7))).collect());
    let c = rng.gen_range(1..7);
    let v = rng.gen_range(0..5);
    let mut coeffs = vec![f.from_u64(c)];
    coeffs.extend((0..2).map(|_| f.from_u64(rng.gen_range(0..7))));
    Radical { shift, c, v, a: Laurent::exact(f, v, coeffs) }
}

/// `(X - b)^n - a`.
fn shifted(f: &FqField, r: &Radical, n: u32) -> SeriesPoly {
    let lin = SeriesPoly::new(vec![r.shift.neg(f), Laurent::one(f)]).unwrap();
    let mut acc = lin.clone();
    for _ in 1..n {
        acc = acc.mul(f, &lin);
    }
    let mut coeffs = acc.coeffs().to_vec();
    coeffs[0] = coeffs[0].sub(f, &r.a);
    SeriesPoly::new(coeffs).unwrap()
}

fn is_cube_mod7(c: u64) -> bool {
    matches!(c, 1 | 6)
}

#[test]
fn hundred_seeded_radical_products() {
    let field = FieldDescriptor::parse("laurent(7,64)", 3).unwrap();
    let f = field.base();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0007_0003);
    let mut done = 0;
    let mut oracle_checked = 0;
    while done < 100 {
        let kind = rng.gen_range(0..10);
        let (poly, single) = match kind {
            0..=5 => {
                let r = random_radical(f, &mut rng);
                (shifted(f, &r, 3), Some(r))
            }
            6 | 7 => {
                let r = random_radical(f, &mut rng);
                (shifted(f, &r, 9), None)
            }
            _ => {
                let parts: Vec<_> = (0..3).map(|_| shifted(f, &random_radical(f, &mut rng), 3)).collect();
                (parts[0].mul(f, &parts[1]).mul(f, &parts[2]), None)
            }
        };
        if is_squarefree(f, &poly) != Some(true) {
            continue;
        }
        let roots = puiseux_roots(&field, &poly, PRECISION, 9)
            .unwrap_or_else(|e| panic!("{}: {e}", poly.format(f)));
        assert_eq!(roots.len(), poly.degree());
        for root in &roots {
            let chk = verify_root(f, &poly, root).unwrap();
            assert!(chk.ok, "{} at {}: residual {}", poly.format(f), root.format(), chk.residual);
        }
        let st = galois_stability(f, 3, &roots).unwrap();
        assert!(st.rotation && st.frobenius, "{}", poly.format(f));
        if let Some(r) = single {
            // ramified iff 3 does not divide v; needs F_343 iff c is not a cube
            for root in &roots {
                assert_eq!(root.s, u32::from(r.v % 3 != 0));
                assert_eq!(root.r, u32::from(!is_cube_mod7(r.c)));
            }
            if r.v % 3 == 0 && is_cube_mod7(r.c) {
                // b + zeta^j a^{1/3} from the Laurent p-th root
                let cube = r.a.pth_root(f, 3, PRECISION + 2).unwrap();
                for j in 0..3u128 {
                    let z = f.pow(field.zeta(), j);
                    let expected = r.shift.add(f, &cube.scale(f, &z)).truncate(f, PRECISION);
                    assert!(roots.iter().any(|x| x.series.approx_eq(f, &expected)));
                }
                oracle_checked += 1;
            }
        }
        done += 1;
    }
    assert!(oracle_checked > 0);
}
