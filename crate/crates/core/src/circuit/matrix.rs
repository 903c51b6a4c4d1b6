// Copyright 2026 The qsprep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

use num_complex::Complex64;

/// Complex 2x2 matrix, row major.
///
/// This is the payload of every parameterized gate. Unitarity is not checked
/// here; it is enforced when a gate enters a [`Circuit`](crate::circuit::Circuit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self([[a, zero], [zero, b]])
    }

    /// Bit flip.
    pub fn x() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self([[zero, one], [one, zero]])
    }

    /// Quarter-turn phase, `diag(1, i)`.
    pub fn s() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0))
    }

    /// Y rotation by `theta`.
    pub fn ry(theta: f64) -> Self {
        let (sin, cos) = (theta / 2.0).sin_cos();
        let c = Complex64::new(cos, 0.0);
        let s = Complex64::new(sin, 0.0);
        Self([[c, -s], [s, c]])
    }

    /// Z rotation by `theta`, `diag(e^{-i theta/2}, e^{i theta/2})`.
    pub fn rz(theta: f64) -> Self {
        Self::diag(
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::from_polar(1.0, theta / 2.0),
        )
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }

    pub fn adjoint(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `max|M†M - I|` over entries; zero for an exactly unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        let mut defect: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                let d = prod.0[i][j] - Complex64::new(expect, 0.0);
                defect = defect.max(d.norm());
            }
        }
        defect
    }

    /// Largest componentwise distance to `rhs`.
    pub fn max_diff(&self, rhs: &Matrix2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        d
    }

    /// True when the matrix is the plain bit flip to within `tol`.
    pub fn is_x(&self, tol: f64) -> bool {
        self.max_diff(&Matrix2::x()) <= tol
    }
}
