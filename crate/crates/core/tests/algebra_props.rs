use bubblelab::algebra::{ComplexPolynomial, CycScalar, ExactPoly, RationalFunction};
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cyc() -> impl Strategy<Value = CycScalar> {
    prop::array::uniform4((-20i64..20, 1i64..9)).prop_map(|c| {
        let mut out = CycScalar::zero();
        let mut zp = CycScalar::one();
        for (n, d) in c {
            out += &zp * &CycScalar::ratio(n, d);
            zp *= CycScalar::zeta();
        }
        out
    })
}

/// Roots on a jittered circle keep pairwise separation well above 1e-10.
fn separated_roots(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let phase: f64 = rng.gen_range(0.0..1.0);
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * (k as f64 + phase + rng.gen_range(-0.2..0.2)) / n as f64;
            Complex64::from_polar(rng.gen_range(0.5..2.0), t)
        })
        .collect()
}

proptest! {
    #[test]
    fn exact_poly_display_parses_back(coeffs in prop::collection::vec(cyc(), 0..6)) {
        let p = ExactPoly::new(coeffs);
        prop_assert_eq!(p.to_string().parse::<ExactPoly>().unwrap(), p);
    }

    #[test]
    fn cyc_field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, CycScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycScalar::one());
        }
    }

    #[test]
    fn cyc_embedding_is_homomorphism(a in cyc(), b in cyc()) {
        let (x, y) = (a.to_complex(), b.to_complex());
        let scale = 1.0 + x.norm() * y.norm() + x.norm() + y.norm();
        prop_assert!(((&a + &b).to_complex() - (x + y)).norm() < 1e-12 * scale);
        prop_assert!(((&a * &b).to_complex() - x * y).norm() < 1e-12 * scale);
        prop_assert!((a.conj().to_complex() - x.conj()).norm() < 1e-12 * scale);
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn partial_fractions_reassemble(seed in any::<u64>(), n in 1usize..7, m in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots = separated_roots(&mut rng, n);
        let lc = Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
        let den = ComplexPolynomial::from_roots(lc, &roots);
        let num = ComplexPolynomial::new(
            (0..=m).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        );
        let r = RationalFunction::new(num, den).unwrap();
        let pf = r.partial_fractions().unwrap();
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if roots.iter().any(|p| (z - p).norm() < 0.05) {
                continue;
            }
            let exact = r.eval(z).unwrap();
            let rel = (pf.eval(z) - exact).norm() / exact.norm().max(1e-12);
            prop_assert!(rel < 1e-9, "rel error {rel} at {z}");
        }
    }

    #[test]
    fn derivative_matches_central_difference(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots = separated_roots(&mut rng, 3);
        let den = ComplexPolynomial::from_roots(Complex64::one(), &roots);
        let num = ComplexPolynomial::new(
            (0..4).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        );
        let r = RationalFunction::new(num, den).unwrap();
        let d = r.derive().unwrap();
        let h = 1e-5;
        for _ in 0..10 {
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if roots.iter().any(|p| (z - p).norm() < 0.3) {
                continue;
            }
            let fd = (r.eval(z + h).unwrap() - r.eval(z - h).unwrap()) / (2.0 * h);
            let exact = d.eval(z).unwrap();
            prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
        }
    }
}
