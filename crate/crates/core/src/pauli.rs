//! Complex 2×2 matrices in the Pauli basis.
//!
//! Every complex 2×2 matrix decomposes uniquely as
//!
//! ```text
//! M = c0·I + c1·σ1 + c2·σ2 + c3·σ3,       cμ ∈ ℂ,
//! ```
//!
//! with the standard Pauli matrices
//!
//! ```text
//! σ1 = [[0, 1], [1, 0]],   σ2 = [[0, -i], [i, 0]],   σ3 = [[1, 0], [0, -1]].
//! ```
//!
//! Products close under σj·σk = δjk·I + i·εjkl·σl, so multiplication,
//! commutators and anticommutators stay in coefficient space; the dense form
//! is materialized only on demand. The coefficients are complex, so these
//! matrices are general elements of gl(2, ℂ), not just Hermitian ones.

use num_complex::Complex64 as C64;

/// A complex 2×2 matrix stored as Pauli-basis coefficients `[c0, c1, c2, c3]`
/// (identity component first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliMatrix2 {
    /// Coefficients of (I, σ1, σ2, σ3), in that order.
    pub c: [C64; 4],
}

/// Dense row-major 2×2 complex matrix, the materialized form of a
/// [`PauliMatrix2`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dense2(pub [[C64; 2]; 2]);

impl PauliMatrix2 {
    pub const ZERO: PauliMatrix2 = PauliMatrix2 {
        c: [C64::new(0.0, 0.0); 4],
    };

    pub fn new(c0: C64, c1: C64, c2: C64, c3: C64) -> Self {
        PauliMatrix2 { c: [c0, c1, c2, c3] }
    }

    /// The identity component `c0`.
    pub fn c0(&self) -> C64 {
        self.c[0]
    }

    /// The σ-vector part `(c1, c2, c3)`.
    pub fn sigma_vec(&self) -> [C64; 3] {
        [self.c[1], self.c[2], self.c[3]]
    }

    /// The k-th basis element: `basis(0) = I`, `basis(k) = σk` for k = 1..3.
    pub fn basis(k: usize) -> Self {
        assert!(k < 4, "Pauli basis index must be 0..=3");
        let mut c = [C64::new(0.0, 0.0); 4];
        c[k] = C64::new(1.0, 0.0);
        PauliMatrix2 { c }
    }

    /// Materialize the dense 2×2 form
    /// `[[c0 + c3, c1 - i·c2], [c1 + i·c2, c0 - c3]]`.
    pub fn compose(&self) -> Dense2 {
        let [c0, c1, c2, c3] = self.c;
        let i = C64::i();
        Dense2([[c0 + c3, c1 - i * c2], [c1 + i * c2, c0 - c3]])
    }

    /// Recover Pauli coefficients from a dense matrix. Exact inverse of
    /// [`compose`](Self::compose) up to floating-point rounding: the basis
    /// change is linear with ±1/2, ±i/2 entries.
    pub fn decompose(m: &Dense2) -> Self {
        let [[m00, m01], [m10, m11]] = m.0;
        let half = C64::new(0.5, 0.0);
        let i = C64::i();
        PauliMatrix2::new(
            (m00 + m11) * half,
            (m01 + m10) * half,
            i * (m01 - m10) * half,
            (m00 - m11) * half,
        )
    }

    /// Matrix product via the Pauli closure relation:
    /// scalar part `a0·b0 + a⃗·b⃗`, vector part `a0·b⃗ + b0·a⃗ + i·a⃗×b⃗`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        let i = C64::i();
        let dot = a1 * b1 + a2 * b2 + a3 * b3;
        let cross = [
            a2 * b3 - a3 * b2,
            a3 * b1 - a1 * b3,
            a1 * b2 - a2 * b1,
        ];
        PauliMatrix2::new(
            a0 * b0 + dot,
            a0 * b1 + b0 * a1 + i * cross[0],
            a0 * b2 + b0 * a2 + i * cross[1],
            a0 * b3 + b0 * a3 + i * cross[2],
        )
    }

    /// Commutator `[A, B] = AB - BA`. The scalar parts cancel exactly;
    /// what remains is `2i·(a⃗×b⃗)·σ⃗`.
    pub fn comm(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Anticommutator `{A, B} = AB + BA`.
    pub fn acomm(&self, rhs: &Self) -> Self {
        self.mul(rhs).add(&rhs.mul(self))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut c = self.c;
        for (ck, rk) in c.iter_mut().zip(rhs.c.iter()) {
            *ck += rk;
        }
        PauliMatrix2 { c }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut c = self.c;
        for (ck, rk) in c.iter_mut().zip(rhs.c.iter()) {
            *ck -= rk;
        }
        PauliMatrix2 { c }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut c = self.c;
        for ck in c.iter_mut() {
            *ck *= s;
        }
        PauliMatrix2 { c }
    }

    /// Frobenius norm of the dense form, `sqrt(Σ |m_jk|²)`.
    ///
    /// Because tr(σμ σν) = 2δμν, this equals `sqrt(2·Σ |cμ|²)`; the dense
    /// route is used here and the coefficient identity is kept as a test.
    pub fn fro_norm(&self) -> f64 {
        self.compose().fro_norm()
    }

    /// True when every coefficient is finite (no NaN/∞ components).
    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Dense2 {
    pub fn fro_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|m| m.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}
