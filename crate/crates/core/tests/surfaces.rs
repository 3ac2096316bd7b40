use bubblelab::elliptic::{EllipticContext, DEFAULT_DEPTH};
use bubblelab::surfaces::*;
use bubblelab::vec3::{self, CVec3, Vec3, E_MINUS, E_PLUS, E_VERT};
use bubblelab::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P_DEFAULT: Vec3 = [4.0, 0.0, 1.0];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_points(seed: u64, n: usize, r_min: f64, r_max: f64, avoid: &[Complex64]) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let z = Complex64::from_polar(rng.gen_range(r_min..r_max), rng.gen_range(0.0..std::f64::consts::TAU));
        if avoid.iter().all(|p| (z - p).norm() > 0.05) {
            out.push(z);
        }
    }
    out
}

fn psi(mu: f64) -> RationalMinimal {
    family_psi_mu(FourEndedFamilyParams::new(mu)).unwrap()
}

fn cg() -> ChenGackstatterLocal {
    chen_gackstatter_local(&EllipticContext::square_lattice(DEFAULT_DEPTH).unwrap()).unwrap()
}

/// A model with a sampling annulus and points to avoid.
type Shipped = (Box<dyn Immersion>, f64, f64, Vec<Complex64>);

/// Every shipped model.
fn shipped() -> Vec<Shipped> {
    let mu = 0.3;
    let poles = FourEndedFamilyParams::new(mu).poles().to_vec();
    let zero = vec![c(0.0, 0.0)];
    vec![
        (Box::new(plane()), 0.0, 2.0, vec![]),
        (Box::new(enneper()), 0.0, 2.0, vec![]),
        (Box::new(lopez()), 0.2, 2.0, zero.clone()),
        (Box::new(psi(mu)), 0.0, 2.0, poles.clone()),
        (Box::new(cg()), 0.05, 0.45, zero.clone()),
        (Box::new(invert(enneper(), [0.0, 0.0, 2.0])), 0.0, 2.0, vec![]),
        (Box::new(invert(lopez(), P_DEFAULT)), 0.2, 2.0, zero.clone()),
        (Box::new(invert(psi(mu), P_DEFAULT)), 0.0, 2.0, poles),
        (Box::new(RoundSphere { center: [0.5, -1.0, 2.0], radius: 1.7 }), 0.0, 3.0, vec![]),
        (Box::new(Reciprocal { base: enneper() }), 0.3, 2.0, zero),
    ]
}

/// `2 Re(z/2 e₊ + z²/2 e₃ − z³/6 e₋)`.
fn enneper_closed_form(z: Complex64) -> Vec3 {
    let f = vec3::cadd(
        vec3::cadd(vec3::cscale(z / 2.0, E_PLUS), vec3::cscale(z * z / 2.0, E_VERT)),
        vec3::cscale(-z * z * z / 6.0, E_MINUS),
    );
    vec3::scale(2.0, vec3::re(f))
}

/// Closed form of the family primitive.
fn family_closed_form(mu: f64, a: f64, z: Complex64) -> CVec3 {
    let q = z * z + mu * z + mu * mu;
    let first = 3.0 / (2.0 * (z * z * z - mu * mu * mu));
    let second = a * a / 8.0 * (3.0 * mu * mu * (2.0 * z + mu) / q + z);
    let third = 1.5 * a * (z + mu) / q;
    vec3::cadd(
        vec3::cadd(vec3::cscale(first, E_PLUS), vec3::cscale(second, E_MINUS)),
        vec3::cscale(third, E_VERT),
    )
}

fn gauss_normal(g: Complex64) -> Vec3 {
    let d = 1.0 + g.norm_sqr();
    [2.0 * g.re / d, 2.0 * g.im / d, (g.norm_sqr() - 1.0) / d]
}

#[test]
fn enneper_frame_at_origin() {
    let f = frame(&enneper(), c(0.0, 0.0)).unwrap();
    assert_eq!(f.normal, [0.0, 0.0, -1.0]);
    assert!((f.conf_factor - 1.0).abs() < 1e-15);
    assert_eq!(f.h, 0.0);
    assert!((f.omega - c(-2.0, 0.0)).norm() < 1e-15);
    assert!((f.k + 4.0).abs() < 1e-14);
}

#[test]
fn enneper_matches_closed_form_and_conformal_factor() {
    for z in random_points(1, 50, 0.0, 3.0, &[]) {
        let f = frame(&enneper(), z).unwrap();
        assert!(vec3::max_abs_diff(f.phi, enneper_closed_form(z)) < 1e-12 * (1.0 + z.norm().powi(3)));
        let expected = 1.0 + z.norm_sqr();
        assert!((f.conf_factor - expected).abs() < 1e-12 * expected);
        // Ω = 2(PQ′ − P′Q) = −2 everywhere for P = z, Q = 1
        assert!((f.omega - c(-2.0, 0.0)).norm() < 1e-12 * expected);
    }
}

#[test]
fn enneper_hopf_modulus_peaks_at_origin() {
    let m = |z: Complex64| {
        let f = frame(&enneper(), z).unwrap();
        f.omega.norm() / f.conf_factor
    };
    assert!((m(c(0.0, 0.0)) - 2.0).abs() < 1e-15);
    let h = 1e-4;
    let dx = (m(c(h, 0.0)) - m(c(-h, 0.0))) / (2.0 * h);
    let dy = (m(c(0.0, h)) - m(c(0.0, -h))) / (2.0 * h);
    assert!(dx.abs() < 1e-8 && dy.abs() < 1e-8);
}

#[test]
fn weierstrass_pair_reproduces_enneper() {
    use bubblelab::algebra::{ComplexPolynomial, RationalFunction};
    let data = WeierstrassData {
        f: RationalFunction::constant(c(1.0, 0.0)),
        g: RationalFunction::polynomial(ComplexPolynomial::z()),
    };
    let model = weierstrass_model("w", &data, enneper().topology()).unwrap();
    for z in random_points(2, 20, 0.0, 2.0, &[]) {
        let a = model.jet(z).unwrap();
        let b = enneper().jet(z).unwrap();
        assert!(vec3::max_abs_diff(a.phi, b.phi) < 1e-12);
    }
}

#[test]
fn weierstrass_model_rejects_logarithmic_periods() {
    use bubblelab::algebra::{ComplexPolynomial, RationalFunction};
    // f = 1/z², g = z gives Φ_z₃ = 1/z, whose primitive is a logarithm
    let data = WeierstrassData {
        f: RationalFunction::new(ComplexPolynomial::one(), ComplexPolynomial::monomial(c(1.0, 0.0), 2)).unwrap(),
        g: RationalFunction::polynomial(ComplexPolynomial::z()),
    };
    assert!(matches!(
        weierstrass_model("catenoid", &data, Topology::sphere(vec![])),
        Err(Error::Period { .. })
    ));
}

#[test]
fn plane_is_flat() {
    for z in random_points(3, 20, 0.0, 5.0, &[]) {
        let f = frame(&plane(), z).unwrap();
        assert_eq!((f.h, f.k), (0.0, 0.0));
        assert_eq!(f.omega.norm(), 0.0);
        assert_eq!(f.normal, [0.0, 0.0, -1.0]);
    }
}

#[test]
fn family_poles_and_closed_form() {
    let params = FourEndedFamilyParams::new(0.3);
    let model = psi(0.3);
    for p in params.poles() {
        assert!(matches!(model.jet(p), Err(Error::SingularPoint(_))));
    }
    let j = FourEndedFamilyParams::j();
    assert!((params.poles()[1] - 0.3 * j).norm() < 1e-16);
    for z in random_points(4, 30, 0.0, 3.0, &params.poles()) {
        let f = model.primitive_at(z);
        let closed = family_closed_form(0.3, 3.0, z);
        let scale = vec3::cnorm_sqr(closed).sqrt();
        for k in 0..3 {
            assert!((f[k] - closed[k]).norm() < 1e-12 * scale, "{z}");
        }
    }
}

#[test]
fn family_constraints_hold_numerically() {
    let [a1, a2, a3, a4] = FourEndedFamilyParams::new(0.3).vectors();
    for v in [a1, a2, a3, a4] {
        assert!(vec3::cdot(v, v).norm() < 1e-12);
    }
    let d12 = vec3::cdot(a1, a2);
    assert!((vec3::cdot(a1, a3) - d12).norm() < 1e-12);
    assert!((vec3::cdot(a2, a3) - d12).norm() < 1e-12);
    let b = FourEndedFamilyParams::new(0.3).b();
    // a₄ = −b²/6 (1, −i, 0)
    let expected = vec3::cscale(-b * b / 6.0, E_MINUS);
    for k in 0..3 {
        assert!((a4[k] - expected[k]).norm() < 1e-12);
    }
}

#[test]
fn family_converges_to_lopez_away_from_origin() {
    let z = c(1.0, 0.0);
    let target = vec3::cadd(
        vec3::cadd(vec3::rscale(1.5, E_PLUS), vec3::rscale(9.0 / 8.0, E_MINUS)),
        vec3::rscale(4.5, E_VERT),
    );
    let mut last = f64::INFINITY;
    for mu in [0.1, 0.01, 0.001] {
        let f = psi(mu).primitive_at(z);
        let err = (0..3).map(|k| (f[k] - target[k]).norm()).fold(0.0, f64::max);
        assert!(err < last);
        last = err;
    }
    assert!(last < 1e-2);
    let l = lopez().primitive_at(z);
    for k in 0..3 {
        assert!((l[k] - target[k]).norm() < 1e-14);
    }
}

#[test]
fn lopez_pole_orders() {
    let l = lopez();
    let r4: Vec<f64> = [1e-2, 1e-3]
        .iter()
        .map(|&r| vec3::cnorm_sqr(l.jet(c(r, 0.0)).unwrap().phi_z).sqrt() * r.powi(4))
        .collect();
    assert!((r4[0] / r4[1] - 1.0).abs() < 1e-3, "Φ_z ~ z⁻⁴ at 0");
    let big: Vec<f64> = [1e3, 1e4]
        .iter()
        .map(|&r| vec3::norm(l.jet(c(r, 0.0)).unwrap().phi) / r)
        .collect();
    assert!((big[0] / big[1] - 1.0).abs() < 1e-3, "Φ ~ |z| at ∞");
}

#[test]
fn gauss_maps_reproduce_normals() {
    let poles = FourEndedFamilyParams::new(0.3).poles().to_vec();
    let models: Vec<(RationalMinimal, Vec<Complex64>)> = vec![
        (enneper(), vec![]),
        (lopez(), vec![c(0.0, 0.0)]),
        (psi(0.3), poles),
        (plane(), vec![]),
    ];
    for (m, avoid) in models {
        let g = m.gauss_map().unwrap();
        let mut avoid = avoid;
        avoid.push(c(0.0, 0.0));
        for z in random_points(5, 30, 0.0, 2.0, &avoid) {
            let n = frame(&m, z).unwrap().normal;
            let ng = gauss_normal(g.eval(z).unwrap());
            assert!(vec3::max_abs_diff(n, ng) < 1e-9, "{} at {z}", m.name());
        }
    }
    let deg = |m: &RationalMinimal| {
        let g = m.gauss_map().unwrap();
        g.numerator().degree().max(g.denominator().degree())
    };
    assert_eq!(deg(&enneper()), 1);
    assert_eq!(deg(&lopez()), 2);
    assert_eq!(deg(&psi(0.3)), 3);
}

#[test]
fn frame_invariants_on_every_model() {
    for (m, r0, r1, avoid) in shipped() {
        for z in random_points(6, 100, r0.max(1e-3), r1, &avoid) {
            let f = frame(&m, z).unwrap();
            let e2l = f.metric();
            assert!((vec3::norm(f.normal) - 1.0).abs() < 1e-10);
            assert!(vec3::dot(f.normal, vec3::re(f.phi_z)).abs() < 1e-9 * f.conf_factor);
            assert!(vec3::dot(f.normal, vec3::im(f.phi_z)).abs() < 1e-9 * f.conf_factor);
            assert!(vec3::cdot(f.phi_z, f.phi_z).norm() < 1e-9 * e2l, "{} at {z}", m.name());
            assert!((f.k - (f.h * f.h - f.omega.norm_sqr() / (e2l * e2l))).abs() <= 1e-12 * f.k.abs().max(1.0));
            if m.is_minimal() {
                assert!((f.a_traceless_sqr() + 2.0 * f.k).abs() <= 1e-9 * f.k.abs().max(1e-300));
            }
        }
    }
}

fn fd_order(m: &dyn Immersion, z: Complex64) -> (f64, f64) {
    // central differences along x for Φ (against 2 Re Φ_z) and Φ_z (against Φ_zz)
    let err = |h: f64| {
        let (p, q) = (m.jet(z + h).unwrap(), m.jet(z - h).unwrap());
        let j = m.jet(z).unwrap();
        let d_phi = vec3::scale(0.5 / h, vec3::sub(p.phi, q.phi));
        let e0 = vec3::max_abs_diff(d_phi, vec3::scale(2.0, vec3::re(j.phi_z)));
        // ∂_x Φ_z = Φ_zz + Φ_zz̄
        let d_phiz = vec3::rscale(0.5 / h, vec3::csub(p.phi_z, q.phi_z));
        let exact = vec3::cadd(j.phi_zz, vec3::complexify(j.phi_zzbar));
        let e1 = (0..3).map(|k| (d_phiz[k] - exact[k]).norm()).fold(0.0, f64::max);
        (e0, e1)
    };
    let (h1, h2) = (2e-3, 1e-3);
    let (a0, a1) = err(h1);
    let (b0, b1) = err(h2);
    // differences that are exact up to rounding carry no order information
    let scale = 1.0 + vec3::cnorm_sqr(m.jet(z).unwrap().phi_zz).sqrt();
    let slope = |a: f64, b: f64| if a < 1e-9 * scale { 2.0 } else { (a / b).log2() };
    (slope(a0, b0), slope(a1, b1))
}

#[test]
fn finite_differences_converge_at_second_order() {
    for (m, r0, r1, avoid) in shipped() {
        for z in random_points(7, 5, r0.max(0.1), r1, &avoid) {
            let (s0, s1) = fd_order(m.as_ref(), z);
            for s in [s0, s1] {
                assert!((1.8..=2.2).contains(&s), "{} at {z}: slope {s}", m.name());
            }
        }
    }
}

#[test]
fn normal_derivatives_match_curvature() {
    let h = 1e-5;
    for (m, r0, r1, avoid) in shipped() {
        for z in random_points(8, 10, r0.max(0.1), r1, &avoid) {
            let f = frame(&m, z).unwrap();
            let n = |w: Complex64| frame(&m, w).unwrap().normal;
            let nx = vec3::scale(0.5 / h, vec3::sub(n(z + h), n(z - h)));
            let ny = vec3::scale(0.5 / h, vec3::sub(n(z + c(0.0, h)), n(z - c(0.0, h))));
            let lhs = vec3::dot(nx, nx) + vec3::dot(ny, ny);
            let rhs = (4.0 * f.h * f.h - 2.0 * f.k) * f.metric();
            assert!((lhs - rhs).abs() <= 1e-6 * rhs.max(1e-12), "{} at {z}: {lhs} vs {rhs}", m.name());
        }
    }
}

#[test]
fn liouville_equation_cross_check() {
    // K = −e^{−2λ} Δλ, with the 5-point Laplacian Richardson-extrapolated
    for (m, r0, r1, avoid) in shipped() {
        for z in random_points(9, 5, r0.max(0.1), r1, &avoid) {
            let lam = |w: Complex64| frame(&m, w).unwrap().lambda();
            let lap = |h: f64| {
                (lam(z + h) + lam(z - h) + lam(z + c(0.0, h)) + lam(z - c(0.0, h)) - 4.0 * lam(z)) / (h * h)
            };
            let lap = (4.0 * lap(1e-3) - lap(2e-3)) / 3.0;
            let f = frame(&m, z).unwrap();
            let k = -lap / f.metric();
            let scale = f.k.abs().max(f.h * f.h).max(1e-6);
            assert!((k - f.k).abs() <= 1e-5 * scale, "{} at {z}: {k} vs {}", m.name(), f.k);
        }
    }
}

#[test]
fn inversion_transforms_frame() {
    let poles = FourEndedFamilyParams::new(0.3).poles().to_vec();
    let bases: Vec<(Box<dyn Immersion>, Vec<Complex64>)> = vec![
        (Box::new(lopez()), vec![c(0.0, 0.0)]),
        (Box::new(psi(0.3)), poles),
        (Box::new(RoundSphere { center: [0.0; 3], radius: 1.0 }), vec![]),
    ];
    for (base, avoid) in bases {
        let inv = invert(&base, P_DEFAULT);
        for z in random_points(10, 100, 0.1, 2.0, &avoid) {
            let a = frame(&base, z).unwrap();
            let b = frame(&inv, z).unwrap();
            let u = vec3::sub(a.phi, P_DEFAULT);
            let s = vec3::dot(u, u);
            let uh = vec3::scale(1.0 / s.sqrt(), u);
            assert!((b.conf_factor - a.conf_factor / s).abs() < 1e-10 * b.conf_factor);
            let reflected = vec3::sub(a.normal, vec3::scale(2.0 * vec3::dot(a.normal, uh), uh));
            assert!(vec3::max_abs_diff(b.normal, vec3::scale(-1.0, reflected)) < 1e-9);
            // Ω picks up the inverse square distance; Ωe^{−λ} is invariant
            assert!((b.omega.norm() - a.omega.norm() / s).abs() <= 1e-8 * b.metric());
            let inv_a = a.omega.norm() / a.conf_factor;
            assert!((b.omega.norm() / b.conf_factor - inv_a).abs() <= 1e-8 * inv_a.max(b.conf_factor));
            let da = a.a_traceless_sqr() * a.metric();
            let db = b.a_traceless_sqr() * b.metric();
            assert!((da - db).abs() <= 1e-8 * da.max(b.metric()));
            // H̃ = −(|u|²H + 2⟨u, n⟩)
            let expected = -(s * a.h + 2.0 * vec3::dot(u, a.normal));
            assert!((b.h - expected).abs() <= 1e-8 * expected.abs().max(1.0));
        }
    }
}

#[test]
fn inversion_does_not_preserve_bare_omega() {
    let z = c(0.5, 0.3);
    let a = frame(&lopez(), z).unwrap();
    let b = frame(&invert(lopez(), P_DEFAULT), z).unwrap();
    assert!((b.omega.norm() / a.omega.norm() - 1.0).abs() > 0.5);
}

#[test]
fn inverted_sphere_oracle_fixes_sign() {
    // unit sphere inverted about (3,0,0): image sphere of radius 1/8
    // centered at −3/8 e₁, with outward normal and H̃ = −8
    let inv = invert(RoundSphere { center: [0.0; 3], radius: 1.0 }, [3.0, 0.0, 0.0]);
    let center = [-3.0 / 8.0, 0.0, 0.0];
    for z in random_points(11, 20, 0.0, 3.0, &[]) {
        let f = frame(&inv, z).unwrap();
        let out = vec3::sub(f.phi, center);
        assert!((vec3::norm(out) - 0.125).abs() < 1e-12);
        assert!((vec3::dot(f.normal, out) / 0.125 - 1.0).abs() < 1e-9);
        assert!((f.h + 8.0).abs() < 1e-9);
    }
    let f = frame(&RoundSphere { center: [0.0; 3], radius: 2.0 }, c(0.3, 0.4)).unwrap();
    assert!((f.h - 0.5).abs() < 1e-12);
    assert!(vec3::dot(f.normal, f.phi) < 0.0);
}

#[test]
fn double_inversion_recovers_translate() {
    let p = [0.3, -0.2, 2.0];
    let twice = invert(invert(enneper(), p), [0.0; 3]);
    for z in random_points(12, 20, 0.0, 2.0, &[]) {
        let a = frame(&enneper(), z).unwrap();
        let b = frame(&twice, z).unwrap();
        assert!(vec3::max_abs_diff(vec3::sub(a.phi, p), b.phi) < 1e-9);
        assert!(vec3::max_abs_diff(a.normal, b.normal) < 1e-9);
        assert!((a.conf_factor - b.conf_factor).abs() < 1e-9 * a.conf_factor);
        assert!((a.omega - b.omega).norm() < 1e-8 * a.omega.norm());
        assert!(b.h.abs() < 1e-8);
    }
}

#[test]
fn inversion_center_on_surface() {
    let inv = invert(enneper(), [0.0; 3]);
    assert!(matches!(inv.jet(c(0.0, 0.0)), Err(Error::CenterOnSurface { .. })));
}

#[test]
fn inverted_topologies() {
    let gb = |t: Topology| t.gauss_bonnet() / std::f64::consts::PI;
    assert_eq!(gb(plane().topology()), 0.0);
    assert_eq!(gb(enneper().topology()), -4.0);
    assert_eq!(gb(lopez().topology()), -8.0);
    assert_eq!(gb(psi(0.3).topology()), -12.0);
    assert_eq!(gb(cg().topology()), -8.0);
    assert_eq!(gb(invert(lopez(), P_DEFAULT).topology()), 8.0);
    assert_eq!(gb(invert(psi(0.3), P_DEFAULT).topology()), 4.0);
    assert_eq!(gb(invert(enneper(), P_DEFAULT).topology()), 8.0);
}

#[test]
fn chen_gackstatter_leading_terms() {
    let m = cg();
    let a = m.context().a;
    for z in random_points(13, 20, 1e-2, 1.0001e-2, &[]) {
        let zb = z.conj();
        let lead = vec3::cadd(
            vec3::cadd(
                vec3::cscale(4.0 * a * a / (3.0 * zb * zb * zb) - 1.0 / z, E_PLUS),
                vec3::cscale(4.0 * a * a / (3.0 * z * z * z) - 1.0 / zb, E_MINUS),
            ),
            vec3::cscale(2.0 * a * (1.0 / (z * z) + 1.0 / (zb * zb)), E_VERT),
        );
        let phi = m.jet(z).unwrap().phi;
        let lead_re = vec3::re(lead);
        assert!(vec3::im(lead).iter().all(|x| x.abs() < 1e-6 * vec3::norm(lead_re)));
        let rel = vec3::norm(vec3::sub(phi, lead_re)) / vec3::norm(lead_re);
        assert!(rel < 1e-2, "{rel}");
    }
    let mut last = 1.0;
    for r in [1e-1, 1e-2, 1e-3] {
        let n = frame(&m, c(r, r)).unwrap().normal;
        let d = vec3::norm(vec3::sub(n, [0.0, 0.0, 1.0]));
        assert!(d < last);
        last = d;
    }
    assert!(last < 1e-2);
    assert!(matches!(m.jet(c(0.5, 0.0)), Err(Error::OutOfDomain { .. })));
}

#[test]
fn chen_gackstatter_support_leading_term() {
    let m = cg();
    let a = m.context().a;
    for z in random_points(14, 10, 1e-3, 1.0001e-3, &[]) {
        let s = support_function(&m, [0.0; 3], z).unwrap();
        let lead = (2.0 * a / (3.0 * z * z)).re * 2.0;
        assert!((s - lead).abs() < 10.0 / z.norm(), "{s} vs {lead}");
    }
}

#[test]
fn support_function_examples() {
    for z in random_points(15, 10, 0.0, 3.0, &[]) {
        assert_eq!(support_function(&plane(), [0.0; 3], z).unwrap(), 0.0);
    }
    // n(0) = (0,0,−1) and Φ(0) = 0, so ⟨n, Φ − p⟩ → c for p = (0,0,c)
    let s = support_function(&enneper(), [0.0, 0.0, 1.5], c(1e-6, 0.0)).unwrap();
    assert!((s - 1.5).abs() < 1e-6);
}

#[test]
fn rotation_rotates_frames() {
    let rot = Rotated::about_axis(lopez(), [1.0, 2.0, -0.5], 0.7);
    for z in random_points(16, 20, 0.2, 2.0, &[c(0.0, 0.0)]) {
        let a = frame(&lopez(), z).unwrap();
        let b = frame(&rot, z).unwrap();
        assert!(vec3::max_abs_diff(b.normal, vec3::mat_vec(&rot.matrix, a.normal)) < 1e-9);
        assert!((a.k - b.k).abs() < 1e-9 * a.k.abs());
        assert!((a.omega - b.omega).norm() < 1e-9 * a.omega.norm());
    }
}

#[test]
fn reciprocal_chart_is_the_same_surface() {
    for w in random_points(17, 20, 0.2, 2.0, &[]) {
        let a = frame(&enneper(), w.inv()).unwrap();
        let b = frame(&Reciprocal { base: enneper() }, w).unwrap();
        assert!(vec3::max_abs_diff(a.phi, b.phi) < 1e-12 * vec3::norm(a.phi).max(1.0));
        assert!((a.k - b.k).abs() < 1e-9 * a.k.abs());
        // densities transform with |dz/dw|² = |w|⁻⁴
        let da = a.densities()[3] / w.norm_sqr().powi(2);
        assert!((da - b.densities()[3]).abs() < 1e-9 * da.abs());
    }
}

#[test]
fn normalized_bubble_invariants() {
    use bubblelab::algebra::ComplexPolynomial;
    let e = NormalizedBubbleData::enneper();
    assert!(NormalizedBubbleData::new(e.p.clone(), e.q.clone(), e.theta).is_ok());
    let z0 = c(0.0, 0.0);
    assert_eq!(e.p.eval(z0), z0);
    assert_eq!(e.q.eval(z0), c(1.0, 0.0));
    assert_eq!(e.p.derivative().eval(z0), c(1.0, 0.0));
    assert_eq!(e.p.derivative().derivative().eval(z0), 2.0 * e.q.derivative().eval(z0));
    let z = ComplexPolynomial::z();
    assert!(NormalizedBubbleData::new(z.clone(), z.clone(), 2).is_err());
    assert!(NormalizedBubbleData::new(z.clone(), ComplexPolynomial::one(), 3).is_err());
    // with deg ≤ 2 the normalization forces P = zQ
    let q = ComplexPolynomial::from_real(&[1.0, 1.0]);
    let shared = ComplexPolynomial::from_real(&[0.0, 1.0, 1.0]);
    assert!(NormalizedBubbleData::new(shared, q.clone(), 4).is_err());
    let p = ComplexPolynomial::from_real(&[0.0, 1.0, 1.0, 1.0]);
    let data = NormalizedBubbleData::new(p, q, 6).expect("valid data");
    let m = data.model("bubble").unwrap();
    let f = frame(&m, c(0.0, 0.0)).unwrap();
    assert!((f.omega.norm() - 2.0).abs() < 1e-12);
}

#[test]
fn mesh_counts_and_symmetry() {
    let dir = std::env::temp_dir().join(format!("mesh-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("plane.obj");
    let grid = PolarGrid::new(0.5, 1.0, 2, 4);
    assert_eq!(export_mesh(&plane(), &grid, &path).unwrap(), (12, 16));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 16);
    assert!(!text.contains('\r'));
    assert!(text.lines().any(|l| l == "f 1 2 6"));

    // z ↦ −z̄ acts on Enneper as (x, y, z) ↦ (−x, y, z)
    let grid = PolarGrid::new(0.1, 2.0, 6, 12);
    let v = mesh_vertices(&enneper(), &grid).unwrap();
    for ring in 0..=6 {
        for j in 0..12 {
            let a = v[ring * 12 + j];
            let b = v[ring * 12 + (18 - j) % 12];
            assert!(vec3::max_abs_diff(a, [-b[0], b[1], b[2]]) < 1e-9);
        }
    }

    // inverted Lopez stays within 2/d(p, Ψ₀)
    let grid = PolarGrid::new(0.05, 5.0, 60, 48);
    let d = mesh_vertices(&lopez(), &grid)
        .unwrap()
        .iter()
        .map(|x| vec3::norm(vec3::sub(*x, P_DEFAULT)))
        .fold(f64::INFINITY, f64::min);
    let v = mesh_vertices(&invert(lopez(), P_DEFAULT), &grid).unwrap();
    let mut diam: f64 = 0.0;
    for a in &v {
        for b in &v {
            diam = diam.max(vec3::norm(vec3::sub(*a, *b)));
        }
    }
    assert!(diam < 2.0 / d, "{diam} vs {}", 2.0 / d);
    assert!(matches!(
        export_mesh(&lopez(), &PolarGrid::new(0.0, 1.0, 2, 4), &dir.join("x.obj")),
        Err(Error::SingularPoint(_))
    ));
    std::fs::remove_dir_all(&dir).ok();
}
