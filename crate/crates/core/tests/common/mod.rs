//! Shared helpers for the integration tests.
//!
//! Everything here is deliberately *independent* of the crate under test:
//! the Airy evaluator uses a Maclaurin series, the 2x2 helpers use plain
//! entry-wise matrix arithmetic (no Pauli-basis shortcuts), and the linear
//! solver is textbook Gaussian elimination. Tests compare crate output
//! against these re-derivations.

#![allow(dead_code)]

use qpii_core::C64;

// ---------------------------------------------------------------------------
// Airy function of the first kind (Maclaurin series).
// ---------------------------------------------------------------------------

/// High-precision seeds for the series y'' = x y.
pub const AIRY_AI_0: f64 = 0.355_028_053_887_817_24;
pub const AIRY_AI_PRIME_0: f64 = -0.258_819_403_792_806_8;

/// Ai(x) and Ai'(x) via the Maclaurin series of y'' = x y.
///
/// Coefficients satisfy (n+2)(n+1) c[n+2] = c[n-1] with c0 = Ai(0),
/// c1 = Ai'(0), c2 = 0. Only the last three coefficients are live at any
/// point, so they rotate through a 3-slot buffer. Accurate to ~1e-11 for
/// |x| <= 6, which covers every argument used in the tests.
pub fn airy_ai_with_prime(x: f64) -> (f64, f64) {
    assert!(x.abs() <= 8.0, "series accuracy window exceeded: {x}");
    let mut c = [AIRY_AI_0, AIRY_AI_PRIME_0, 0.0f64];
    let mut val = c[0] + c[1] * x;
    let mut deriv = c[1];
    let mut xm1 = x; // x^(m-1), starting at m = 2
    let mut m = 2usize;
    loop {
        let cm = c[m % 3];
        let xm = xm1 * x;
        val += cm * xm;
        deriv += cm * (m as f64) * xm1;
        // Slot (m+1) % 3 currently holds c[m-2]; replace it with
        // c[m+1] = c[m-2] / ((m+1) m).
        let next = c[(m + 1) % 3] / (((m + 1) * m) as f64);
        c[(m + 1) % 3] = next;
        if m > 8 && cm.abs() * xm.abs() < 1e-18 && next.abs() * xm.abs() * x.abs() < 1e-18 {
            break;
        }
        xm1 = xm;
        m += 1;
        assert!(m < 400, "series did not converge for x = {x}");
    }
    (val, deriv)
}

pub fn airy_ai(x: f64) -> f64 {
    airy_ai_with_prime(x).0
}

pub fn airy_ai_prime(x: f64) -> f64 {
    if x == 0.0 {
        return AIRY_AI_PRIME_0;
    }
    airy_ai_with_prime(x).1
}

// ---------------------------------------------------------------------------
// Dense 2x2 complex matrices: independent re-derivation of the matrix algebra.
// ---------------------------------------------------------------------------

/// Row-major dense 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct D2(pub [[C64; 2]; 2]);

pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl D2 {
    pub fn zero() -> Self {
        D2([[c(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        D2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
    }

    pub fn sigma1() -> Self {
        D2([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn sigma2() -> Self {
        D2([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn sigma3() -> Self {
        D2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
    }

    pub fn scale(self, s: C64) -> Self {
        let mut out = self;
        for row in out.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn add(self, other: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += other.0[i][j];
            }
        }
        out
    }

    pub fn sub(self, other: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] -= other.0[i][j];
            }
        }
        out
    }

    /// Plain entry-wise matrix product.
    pub fn mul(self, other: Self) -> Self {
        let a = self.0;
        let b = other.0;
        let mut out = D2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    pub fn commutator(self, other: Self) -> Self {
        self.mul(other).sub(other.mul(self))
    }

    pub fn fro_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Linear combination c0*I + c1*s1 + c2*s2 + c3*s3 as a dense matrix.
pub fn dense_from_coeffs(coeffs: [C64; 4]) -> D2 {
    D2::identity()
        .scale(coeffs[0])
        .add(D2::sigma1().scale(coeffs[1]))
        .add(D2::sigma2().scale(coeffs[2]))
        .add(D2::sigma3().scale(coeffs[3]))
}

/// Recover basis coefficients from a dense matrix by solving the 4x4
/// linear system entry-by-entry with Gaussian elimination (partial
/// pivoting). Independent of any closed-form inversion in the crate.
pub fn coeffs_from_dense(m: D2) -> [C64; 4] {
    // Unknowns x = [c0, c1, c2, c3]; equations: entries (0,0),(0,1),(1,0),(1,1).
    // (0,0) = c0 + c3, (0,1) = c1 - i c2, (1,0) = c1 + i c2, (1,1) = c0 - c3.
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let mut a = [
        [one, zero, zero, one, m.0[0][0]],
        [zero, one, -i, zero, m.0[0][1]],
        [zero, one, i, zero, m.0[1][0]],
        [one, zero, zero, -one, m.0[1][1]],
    ];
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&p, &q| a[p][col].norm().total_cmp(&a[q][col].norm()))
            .unwrap();
        a.swap(col, piv);
        assert!(a[col][col].norm() > 1e-300, "singular coefficient system");
        for row in 0..4 {
            if row == col {
                continue;
            }
            let factor = a[row][col] / a[col][col];
            for k in col..5 {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    [
        a[0][4] / a[0][0],
        a[1][4] / a[1][1],
        a[2][4] / a[2][2],
        a[3][4] / a[3][3],
    ]
}

// ---------------------------------------------------------------------------
// Free-particle Gaussian wave packet (closed form).
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct GaussianPacket {
    pub mass: f64,
    pub hbar: f64,
    pub sigma0: f64,
    pub k0: f64,
    pub x0: f64,
}

impl GaussianPacket {
    /// psi(x, t) for V = 0, normalized so that the L2 norm is 1 for all t.
    pub fn psi(&self, x: f64, t: f64) -> C64 {
        let i = c(0.0, 1.0);
        let s2 = self.sigma0 * self.sigma0;
        let a = c(1.0, 0.0) + i * self.hbar * t / (self.mass * s2);
        let v = self.hbar * self.k0 / self.mass;
        let dx = x - self.x0 - v * t;
        let norm = c(std::f64::consts::PI.powf(-0.25) / self.sigma0.sqrt(), 0.0);
        let phase = i * (self.k0 * (x - self.x0) - self.hbar * self.k0 * self.k0 * t / (2.0 * self.mass));
        norm / a.sqrt() * (-(dx * dx) / (2.0 * s2 * a) + phase).exp()
    }
}

// ---------------------------------------------------------------------------
// Deterministic RNG helpers.
// ---------------------------------------------------------------------------

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(r: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    use rand::Rng;
    r.gen_range(lo..hi)
}

pub fn complex_in_box(r: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    let re = uniform(r, lo, hi);
    let im = uniform(r, lo, hi);
    c(re, im)
}

/// Reference Airy values computed with 30-digit arbitrary-precision
/// arithmetic, used by the support self-checks.
pub const AIRY_TABLE: [(f64, f64, f64); 10] = [
    (-6.0, -0.32914517362982310523, 0.34593548728134289493),
    (-4.0, -0.070265532949289515099, -0.7906285753685813803),
    (-2.0, 0.22740742820168557599, 0.61825902074169104141),
    (-1.0, 0.5355608832923521188, -0.010160567116645209395),
    (-0.5, 0.4757280916105395888, -0.20408167033954738614),
    (0.0, 0.35502805388781723926, -0.25881940379280679841),
    (0.5, 0.23169360648083348977, -0.22491053266468389314),
    (1.0, 0.13529241631288141552, -0.15914744129679321279),
    (2.0, 0.034924130423274379135, -0.053090384433653631704),
    (3.0, 0.0065911393574607191443, -0.011912976705951318474),
];
