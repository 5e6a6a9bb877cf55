//! Weyl operator basis, maximally entangled states and Bell projectors.
//!
//! `U_nm = Σ_k ω^{kn} |k⟩⟨(k+m) mod d|` with `ω = e^{2πi/d}`. The `d²` Weyl
//! operators are unitary and trace-orthogonal, `Tr U_a† U_b = d·δ_ab`, so the
//! products `U_a ⊗ U_b` form an orthogonal basis of the bipartite operator
//! space with `⟨U_a⊗U_b, U_a⊗U_b⟩ = d²`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{BipartiteOperator, DensityMatrix, Matrix};

/// Coefficients below this magnitude count as structurally zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Index pair `(n, m)` of a Weyl operator, reduced mod `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylIndex {
    pub n: usize,
    pub m: usize,
}

impl WeylIndex {
    /// Negative entries wrap around, so `new(3, -1, 1)` is `(2, 1)`.
    pub fn new(d: usize, n: i64, m: i64) -> Self {
        assert!(d >= 1, "dimension must be positive");
        let d = d as i64;
        Self {
            n: n.rem_euclid(d) as usize,
            m: m.rem_euclid(d) as usize,
        }
    }

    pub const IDENTITY: WeylIndex = WeylIndex { n: 0, m: 0 };

    pub fn is_identity(self) -> bool {
        self.n == 0 && self.m == 0
    }

    /// `(-n mod d, m)`, the partner index appearing in Bell-diagonal operators.
    pub fn partner(self, d: usize) -> Self {
        Self::new(d, -(self.n as i64), self.m as i64)
    }

    /// All `d²` indices in row-major `(n, m)` order.
    pub fn all(d: usize) -> impl Iterator<Item = WeylIndex> {
        (0..d).flat_map(move |n| (0..d).map(move |m| WeylIndex { n, m }))
    }

    fn flat(self, d: usize) -> usize {
        self.n * d + self.m
    }
}

impl fmt::Display for WeylIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}{}", self.n, self.m)
    }
}

fn omega_pow(d: usize, e: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * ((e % d) as f64) / d as f64)
}

/// The Weyl operator `U_nm` on `C^d`.
pub fn weyl(d: usize, idx: WeylIndex) -> Matrix {
    assert!(d >= 2, "Weyl operators need d >= 2");
    let mut u = Matrix::zeros(d, d);
    for k in 0..d {
        u[(k, (k + idx.m) % d)] = omega_pow(d, k * idx.n);
    }
    u
}

/// `U_a ⊗ U_b` as a bipartite operator.
pub fn weyl_product(d: usize, a: WeylIndex, b: WeylIndex) -> BipartiteOperator {
    let mut expansion = WeylExpansion::zero(d);
    expansion.set(a, b, Complex64::new(1.0, 0.0));
    expansion.reconstruct()
}

/// `|φ⁺_d⟩ = d^{-1/2} Σ_j |j⟩⊗|j⟩`.
pub fn max_entangled(d: usize) -> Vec<Complex64> {
    assert!(d >= 2, "maximally entangled state needs d >= 2");
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        v[j * d + j] = amp;
    }
    v
}

/// Bell projector `P_nm = (U_nm⊗𝟙)|φ⁺⟩⟨φ⁺|(U_nm†⊗𝟙)`.
pub fn bell_projector(d: usize, idx: WeylIndex) -> DensityMatrix {
    let phi = max_entangled(d);
    let u = weyl(d, idx);
    // (U⊗𝟙)|φ⁺⟩ = d^{-1/2} Σ_j U|j⟩⊗|j⟩
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        let amp = phi[j * d + j];
        for i in 0..d {
            v[i * d + j] += u[(i, j)] * amp;
        }
    }
    let op = BipartiteOperator::projector(d, d, &v).expect("shape fixed by construction");
    DensityMatrix::new(op).expect("Bell projector is a pure state")
}

/// Coefficients of a bipartite operator in the `U_a ⊗ U_b` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylExpansion {
    d: usize,
    coeffs: Vec<Complex64>,
}

impl WeylExpansion {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            coeffs: vec![Complex64::new(0.0, 0.0); d.pow(4)],
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn slot(&self, a: WeylIndex, b: WeylIndex) -> usize {
        a.flat(self.d) * self.d * self.d + b.flat(self.d)
    }

    /// Coefficient of `U_a ⊗ U_b`.
    pub fn coeff(&self, a: WeylIndex, b: WeylIndex) -> Complex64 {
        self.coeffs[self.slot(a, b)]
    }

    pub fn set(&mut self, a: WeylIndex, b: WeylIndex, value: Complex64) {
        let s = self.slot(a, b);
        self.coeffs[s] = value;
    }

    /// Coefficient of `𝟙⊗𝟙`.
    pub fn identity_coeff(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Every `(a, b, coefficient)` triple, including zeros.
    pub fn iter(&self) -> impl Iterator<Item = (WeylIndex, WeylIndex, Complex64)> + '_ {
        let d = self.d;
        WeylIndex::all(d)
            .flat_map(move |a| WeylIndex::all(d).map(move |b| (a, b)))
            .map(move |(a, b)| (a, b, self.coeff(a, b)))
    }

    /// Terms whose magnitude exceeds `threshold`.
    pub fn significant(&self, threshold: f64) -> Vec<(WeylIndex, WeylIndex, Complex64)> {
        self.iter()
            .filter(|(_, _, c)| c.norm() > threshold)
            .collect()
    }

    /// `Σ c_ab U_a ⊗ U_b`.
    pub fn reconstruct(&self) -> BipartiteOperator {
        let d = self.d;
        let mut out = Matrix::zeros(d * d, d * d);
        for (a, b, c) in self.iter() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            // (U_a⊗U_b) maps row (i, j) to column (i+m_a, j+m_b) with phase ω^{i n_a + j n_b}
            for i in 0..d {
                for j in 0..d {
                    let r = i * d + j;
                    let col = ((i + a.m) % d) * d + (j + b.m) % d;
                    out[(r, col)] += c * omega_pow(d, i * a.n + j * b.n);
                }
            }
        }
        BipartiteOperator::new(d, d, out).expect("square by construction")
    }
}

/// Expands `x` as `Σ c_ab U_a⊗U_b` with `c_ab = ⟨U_a⊗U_b, x⟩ / d²`.
pub fn weyl_expand(x: &BipartiteOperator) -> Result<WeylExpansion> {
    let d = x.dim_a();
    if d != x.dim_b() {
        return Err(Error::DimensionMismatch(format!(
            "Weyl expansion needs equal subsystems, got {}x{}",
            x.dim_a(),
            x.dim_b()
        )));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(
            "Weyl expansion needs d >= 2".into(),
        ));
    }
    let e = x.entries();
    let norm = (d * d) as f64;
    let mut out = WeylExpansion::zero(d);
    for a in WeylIndex::all(d) {
        for b in WeylIndex::all(d) {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                for j in 0..d {
                    let r = i * d + j;
                    let col = ((i + a.m) % d) * d + (j + b.m) % d;
                    acc += omega_pow(d, i * a.n + j * b.n).conj() * e[(r, col)];
                }
            }
            out.set(a, b, acc / norm);
        }
    }
    Ok(out)
}
