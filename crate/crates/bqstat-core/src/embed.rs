//! The embedding of binary quartic forms into pairs of ternary quadratic
//! forms, and the PGL2 -> SO(A1) representation it is equivariant for.
//!
//! Pairs are stored in the doubled convention: the matrices kept are
//! 2A and 2B, integral with even diagonal, so that half-integer
//! off-diagonal entries never appear.

use crate::forms::{CubicForm, QuarticForm, RationalMap, UnimodularMap};
use crate::zint::{Rat, Z};

/// Pair (A, B) of ternary quadratic forms in the doubled convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryQuadraticPair {
    /// 2A, symmetric with even diagonal.
    pub a2: [[Z; 3]; 3],
    /// 2B, symmetric with even diagonal.
    pub b2: [[Z; 3]; 3],
}

impl TernaryQuadraticPair {
    pub fn new(a2: [[Z; 3]; 3], b2: [[Z; 3]; 3]) -> Self {
        for m in [&a2, &b2] {
            for i in 0..3 {
                assert!(m[i][i] % 2 == 0, "doubled matrix needs even diagonal");
                for j in 0..i {
                    assert_eq!(m[i][j], m[j][i], "doubled matrix must be symmetric");
                }
            }
        }
        TernaryQuadraticPair { a2, b2 }
    }

    /// The binary cubic resolvent form 4 det(A x - B y), computed as
    /// det(2A x - 2B y) / 2.
    pub fn resolvent(&self) -> CubicForm {
        // det of a matrix of linear forms alpha x + beta y, expanded by the
        // Leibniz formula into a cubic in (x, y).
        let mut coeffs = [0i128; 4]; // x^3, x^2 y, x y^2, y^3
        const PERMS: [([usize; 3], Z); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        for (perm, sign) in PERMS {
            // product over rows i of (a2[i][perm[i]] x - b2[i][perm[i]] y)
            let mut prod = [0i128; 4];
            prod[0] = sign;
            let mut deg = 0;
            for (i, &pi) in perm.iter().enumerate() {
                let (al, be) = (self.a2[i][pi], -self.b2[i][pi]);
                let mut next = [0i128; 4];
                for k in 0..=deg {
                    next[k] += prod[k] * al;
                    next[k + 1] += prod[k] * be;
                }
                prod = next;
                deg += 1;
            }
            for k in 0..4 {
                coeffs[k] += prod[k];
            }
        }
        for c in &coeffs {
            assert!(c % 2 == 0, "pair resolvent must have even doubled coefficients");
        }
        CubicForm::new(coeffs[0] / 2, coeffs[1] / 2, coeffs[2] / 2, coeffs[3] / 2)
    }

    /// g . (A, B) = (g A g^T, g B g^T) for integral g.
    pub fn transform(&self, g: &[[Z; 3]; 3]) -> TernaryQuadraticPair {
        TernaryQuadraticPair {
            a2: congruence(g, &self.a2),
            b2: congruence(g, &self.b2),
        }
    }

    /// F-translation (A, B) -> (A, B + uA) on doubled matrices.
    pub fn f_translate(&self, u: Z) -> TernaryQuadraticPair {
        let mut b2 = self.b2;
        for i in 0..3 {
            for j in 0..3 {
                b2[i][j] += u * self.a2[i][j];
            }
        }
        TernaryQuadraticPair { a2: self.a2, b2 }
    }

    /// Unique F-translate with vanishing top-right entry of B; defined for
    /// pairs whose first form is A1.
    pub fn normalize_slice(&self) -> TernaryQuadraticPair {
        assert_eq!(self.a2, A1_DOUBLED, "slice normalization needs A = A1");
        self.f_translate(-self.b2[0][2])
    }

    /// The SL3 image of the GL2 substitution action, followed by the
    /// F-translation back into the corner-zero slice. In the row-vector
    /// convention f((x,y) gamma), the Veronese coordinates (x^2, xy, y^2)
    /// transform by the matrix `veronese_sl3(gamma)` = det(gamma) *
    /// rho(J gamma J) with J the antidiagonal flip; the sign dies in the
    /// congruence, and the congruence moves within the slice only up to
    /// an F-translation.
    pub fn apply_gl2(&self, gamma: &UnimodularMap) -> TernaryQuadraticPair {
        self.transform(&veronese_sl3(gamma)).normalize_slice()
    }
}

/// Matrix of (x^2, xy, y^2) -> Veronese of (x, y) gamma, acting on row
/// vectors; equals det(gamma) * rho(J gamma J).
pub fn veronese_sl3(gamma: &UnimodularMap) -> [[Z; 3]; 3] {
    let [[m11, m12], [m21, m22]] = gamma.m;
    [
        [m11 * m11, m11 * m12, m12 * m12],
        [2 * m11 * m21, m11 * m22 + m12 * m21, 2 * m12 * m22],
        [m21 * m21, m21 * m22, m22 * m22],
    ]
}

fn congruence(g: &[[Z; 3]; 3], m: &[[Z; 3]; 3]) -> [[Z; 3]; 3] {
    let mut gm = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                gm[i][j] += g[i][k] * m[k][j];
            }
        }
    }
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += gm[i][k] * g[j][k];
            }
        }
    }
    out
}

/// Doubled Gram matrix of the fixed conic A1 (the form q^2 - pr, det A1 = 1/4).
pub const A1_DOUBLED: [[Z; 3]; 3] = [[0, 0, 1], [0, -2, 0], [1, 0, 0]];

/// phi(f) = (A1, B_f): the quartic f embeds as the pair whose second form
/// has Gram matrix [[a, b/2, 0], [b/2, c, d/2], [0, d/2, e]].
pub fn phi_embed(f: &QuarticForm) -> TernaryQuadraticPair {
    TernaryQuadraticPair::new(
        A1_DOUBLED,
        [
            [2 * f.a, f.b, 0],
            [f.b, 2 * f.c, f.d],
            [0, f.d, 2 * f.e],
        ],
    )
}

/// rho(gamma) for gamma = [[a, b], [c, d]] with det +-1: the integral matrix
/// (1/det) [[d^2, cd, c^2], [2bd, ad+bc, 2ac], [b^2, ab, a^2]], which lands
/// in SO(A1) and has determinant 1.
pub fn rho(gamma: &UnimodularMap) -> [[Z; 3]; 3] {
    let [[a, b], [c, d]] = gamma.m;
    let det = gamma.det();
    let m = [
        [d * d, c * d, c * c],
        [2 * b * d, a * d + b * c, 2 * a * c],
        [b * b, a * b, a * a],
    ];
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[i][j] * det; // 1/det = det for det = +-1
        }
    }
    out
}

/// rho over the rationals, for twisted-action equivariance checks.
pub fn rho_rational(gamma: &RationalMap) -> [[Rat; 3]; 3] {
    let [[a, b], [c, d]] = gamma.m;
    let det = gamma.det();
    let two = Rat::from_integer(2);
    [
        [d * d / det, c * d / det, c * c / det],
        [two * b * d / det, (a * d + b * c) / det, two * a * c / det],
        [b * b / det, a * b / det, a * a / det],
    ]
}

/// det of an integral 3x3 matrix.
pub fn det3(m: &[[Z; 3]; 3]) -> Z {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat3_mul(a: &[[Z; 3]; 3], b: &[[Z; 3]; 3]) -> [[Z; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}
