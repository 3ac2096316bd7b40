//! Small fixed-size vector helpers for ℝ³ and ℂ³.
//!
//! Complex vectors use the bilinear pairing `dot` (no conjugation), matching
//! the conformality condition ⟨Φ_z, Φ_z⟩ = 0; `hdot` is the Hermitian one.

use num_complex::Complex64;

pub type Vec3 = [f64; 3];
pub type CVec3 = [Complex64; 3];

pub const ZERO: Vec3 = [0.0; 3];
pub const CZERO: CVec3 = [Complex64::new(0.0, 0.0); 3];

/// (1, i, 0)
pub const E_PLUS: CVec3 = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, 0.0),
];
/// (1, -i, 0)
pub const E_MINUS: CVec3 = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, -1.0),
    Complex64::new(0.0, 0.0),
];
/// (0, 0, 1)
pub const E_VERT: CVec3 = [
    Complex64::new(0.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
];

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(s: f64, a: Vec3) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn cadd(a: CVec3, b: CVec3) -> CVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn csub(a: CVec3, b: CVec3) -> CVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cscale(s: Complex64, a: CVec3) -> CVec3 {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn rscale(s: f64, a: CVec3) -> CVec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Bilinear pairing Σ aₖbₖ.
pub fn cdot(a: CVec3, b: CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Pairing of a complex vector with a real one.
pub fn cdot_real(a: CVec3, b: Vec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Hermitian pairing Σ aₖ conj(bₖ).
pub fn hdot(a: CVec3, b: CVec3) -> Complex64 {
    a[0] * b[0].conj() + a[1] * b[1].conj() + a[2] * b[2].conj()
}

pub fn cnorm_sqr(a: CVec3) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum()
}

pub fn conj(a: CVec3) -> CVec3 {
    [a[0].conj(), a[1].conj(), a[2].conj()]
}

pub fn re(a: CVec3) -> Vec3 {
    [a[0].re, a[1].re, a[2].re]
}

pub fn im(a: CVec3) -> Vec3 {
    [a[0].im, a[1].im, a[2].im]
}

pub fn complexify(a: Vec3) -> CVec3 {
    [a[0].into(), a[1].into(), a[2].into()]
}

pub fn max_abs_diff(a: Vec3, b: Vec3) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max)
}

/// Matrix-vector product for a row-major 3×3 matrix.
pub fn mat_vec(m: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
}

pub fn mat_cvec(m: &[[f64; 3]; 3], v: CVec3) -> CVec3 {
    [
        cdot_real(v, m[0]),
        cdot_real(v, m[1]),
        cdot_real(v, m[2]),
    ]
}
