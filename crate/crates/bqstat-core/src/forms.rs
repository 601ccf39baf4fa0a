//! Integral binary quartic and cubic forms, their invariants, and the
//! GL2 actions (untwisted on integral matrices, twisted on rational ones).
//!
//! Conventions: a quartic form is f(x,y) = ax^4 + bx^3y + cx^2y^2 + dxy^3 + ey^4,
//! a cubic form is g(x,y) = ax^3 + bx^2y + cxy^2 + dy^3. A matrix
//! gamma = [[m11, m12], [m21, m22]] acts by row-vector substitution,
//! (gamma . f)(x,y) = f((x,y) gamma) = f(m11 x + m21 y, m12 x + m22 y),
//! so that (g1 g2) . f = g1 . (g2 . f).

use crate::zint::{self, Rat, Z};
use std::fmt;

/// Integral binary quartic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarticForm {
    pub a: Z,
    pub b: Z,
    pub c: Z,
    pub d: Z,
    pub e: Z,
}

/// Integral binary cubic form; leading coefficient `a` is the index `n`
/// of the monogenized subring (monic means a = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicForm {
    pub a: Z,
    pub b: Z,
    pub c: Z,
    pub d: Z,
}

/// The invariant pair (I, J). Heights are carried as H4 = max(4|I|^3, J^2),
/// so H(I,J) < X is the integral comparison H4 < 4X.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantPair {
    pub i: Z,
    pub j: Z,
}

/// Number of real roots in P^1, with the definite case split by sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootType {
    /// 4 real roots (i = 0); positive discriminant.
    FourReal,
    /// 2 real roots (i = 1); negative discriminant.
    TwoReal,
    /// No real roots, positive definite (2+).
    NoneRealPositive,
    /// No real roots, negative definite (2-).
    NoneRealNegative,
}

impl RootType {
    pub fn label(self) -> &'static str {
        match self {
            RootType::FourReal => "0",
            RootType::TwoReal => "1",
            RootType::NoneRealPositive => "2+",
            RootType::NoneRealNegative => "2-",
        }
    }
}

impl QuarticForm {
    pub fn new(a: Z, b: Z, c: Z, d: Z, e: Z) -> Self {
        QuarticForm { a, b, c, d, e }
    }

    pub fn zero() -> Self {
        QuarticForm::new(0, 0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        *self == QuarticForm::zero()
    }

    pub fn coeffs(&self) -> [Z; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn from_coeffs(c: [Z; 5]) -> Self {
        QuarticForm::new(c[0], c[1], c[2], c[3], c[4])
    }

    pub fn eval(&self, x: Z, y: Z) -> Z {
        let x2 = x * x;
        let y2 = y * y;
        self.a * x2 * x2 + self.b * x2 * x * y + self.c * x2 * y2 + self.d * x * y2 * y
            + self.e * y2 * y2
    }

    /// I = 12ae - 3bd + c^2, J = 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3.
    pub fn invariants(&self) -> InvariantPair {
        let (i, j) = zint::quartic_invariants_wide(self.a, self.b, self.c, self.d, self.e);
        InvariantPair { i, j }
    }

    /// Discriminant (4I^3 - J^2)/27; panics if 27 fails to divide, which
    /// cannot happen for integral forms.
    pub fn disc(&self) -> Z {
        self.invariants().disc()
    }

    /// gcd of the coefficients (0 for the zero form).
    pub fn content(&self) -> Z {
        self.coeffs().iter().fold(0, |g, &c| zint::gcd(g, c))
    }

    /// Monic resolvent cubic X^3 + cX^2Y + (bd-4ae)XY^2 + (ad^2+b^2e-4ace)Y^3.
    /// Shares the invariants of `self`.
    pub fn resolvent_cubic(&self) -> CubicForm {
        let QuarticForm { a, b, c, d, e } = *self;
        CubicForm {
            a: 1,
            b: c,
            c: b * d - 4 * a * e,
            d: a * d * d + b * b * e - 4 * a * c * e,
        }
    }

    /// f(x + uy, y): translation leaves a fixed and shifts b by 4au.
    pub fn translated(&self, u: Z) -> QuarticForm {
        let QuarticForm { a, b, c, d, e } = *self;
        QuarticForm {
            a,
            b: 4 * a * u + b,
            c: 6 * a * u * u + 3 * b * u + c,
            d: 4 * a * u * u * u + 3 * b * u * u + 2 * c * u + d,
            e: a * u * u * u * u + b * u * u * u + c * u * u + d * u + e,
        }
    }

    pub fn neg(&self) -> QuarticForm {
        QuarticForm::new(-self.a, -self.b, -self.c, -self.d, -self.e)
    }

    /// Sum of squared coefficients; the reduction norm.
    pub fn norm2(&self) -> Z {
        self.coeffs().iter().map(|&c| c * c).sum()
    }
}

impl fmt::Display for QuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a, self.b, self.c, self.d, self.e
        )
    }
}

impl CubicForm {
    pub fn new(a: Z, b: Z, c: Z, d: Z) -> Self {
        CubicForm { a, b, c, d }
    }

    pub fn monic(r: Z, s: Z, t: Z) -> Self {
        CubicForm::new(1, r, s, t)
    }

    pub fn coeffs(&self) -> [Z; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn eval(&self, x: Z, y: Z) -> Z {
        self.a * x * x * x + self.b * x * x * y + self.c * x * y * y + self.d * y * y * y
    }

    /// The a-cleared invariant pair (P, Q) = (b^2 - 3ac, -2b^3 + 9abc - 27a^2 d),
    /// invariant under translation. For monic forms this is the (I, J) of the
    /// translation action; in general P = a^(2/3) I(g) and Q = a J(g) against
    /// the fractional invariants, so the form height max(|I|^3, J^2/4) reads
    /// max(|P|^3, Q^2/4) / a^2 in integral terms.
    pub fn invariants(&self) -> (Z, Z) {
        zint::cubic_invariants_wide(self.a, self.b, self.c, self.d)
    }

    pub fn invariant_pair(&self) -> InvariantPair {
        let (p, q) = self.invariants();
        InvariantPair { i: p, j: q }
    }

    /// 4P^3 - Q^2 = 27 a^2 disc(g); its sign is the sign of the discriminant.
    pub fn disc_numerator(&self) -> Z {
        let (p, q) = self.invariants();
        zint::disc_numerator_wide(p, q)
    }

    /// Discriminant of the form, disc = (4P^3 - Q^2) / (27 a^2).
    pub fn disc(&self) -> Z {
        let n = self.disc_numerator();
        let den = 27 * self.a * self.a;
        assert!(n % den == 0, "27a^2 must divide 4P^3 - Q^2");
        n / den
    }

    /// g(x + uy, y): leading coefficient fixed, b shifts by 3au.
    pub fn translated(&self, u: Z) -> CubicForm {
        let CubicForm { a, b, c, d } = *self;
        CubicForm {
            a,
            b: 3 * a * u + b,
            c: 3 * a * u * u + 2 * b * u + c,
            d: a * u * u * u + b * u * u + c * u + d,
        }
    }

    /// Is the form irreducible over Q? A cubic is reducible iff it has a
    /// rational root in P^1 (including [1:0] when a = 0).
    pub fn is_irreducible(&self) -> bool {
        if self.a == 0 {
            return false;
        }
        if self.d == 0 {
            return false; // root [0:1]
        }
        // Rational roots x/y = -q/p in lowest terms require p | a, q | d.
        for p in zint::divisors(self.a) {
            for q in zint::divisors(self.d) {
                if zint::gcd(p, q) != 1 {
                    continue;
                }
                if self.eval(q, p) == 0 || self.eval(-q, p) == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Lift to the quartic y * g(x,y); its invariants equal (P, Q) of g.
    pub fn lift_to_quartic(&self) -> QuarticForm {
        QuarticForm::new(0, self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.a, self.b, self.c, self.d)
    }
}

impl InvariantPair {
    pub fn new(i: Z, j: Z) -> Self {
        InvariantPair { i, j }
    }

    /// 4I^3 - J^2 = 27 * disc.
    pub fn disc_numerator(&self) -> Z {
        zint::disc_numerator_wide(self.i, self.j)
    }

    pub fn disc(&self) -> Z {
        let n = self.disc_numerator();
        assert!(n % 27 == 0, "27 must divide 4I^3 - J^2 for eligible pairs");
        n / 27
    }

    /// H4 = max(4|I|^3, J^2) = 4 H(I, J).
    pub fn height4(&self) -> Z {
        zint::height4_wide(self.i, self.j)
    }

    /// H(I,J) < X as an exact integral comparison.
    pub fn height_below(&self, x: Z) -> bool {
        self.height4() < 4 * x
    }

    /// Does (I, J) occur as the invariants of an integral binary quartic
    /// form? The congruence classes mod 9 and 27:
    /// (a) I = 0 mod 3, J = 0 mod 27; (b) I = 1 mod 9, J = +-2 mod 27;
    /// (c) I = 4 mod 9, J = +-16 mod 27; (d) I = 7 mod 9, J = +-7 mod 27.
    pub fn is_eligible(&self) -> bool {
        let i9 = zint::umod(self.i, 9);
        let j27 = zint::umod(self.j, 27);
        match i9 {
            0 | 3 | 6 => j27 == 0,
            1 => j27 == 2 || j27 == 25,
            4 => j27 == 16 || j27 == 11,
            7 => j27 == 7 || j27 == 20,
            _ => false,
        }
    }
}

impl fmt::Display for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// 2x2 integer matrix of determinant +-1, acting on forms by substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    pub m: [[Z; 2]; 2],
}

impl UnimodularMap {
    pub fn new(m: [[Z; 2]; 2]) -> Self {
        let g = UnimodularMap { m };
        assert!(
            g.det() == 1 || g.det() == -1,
            "unimodular matrix must have determinant +-1"
        );
        g
    }

    pub fn identity() -> Self {
        UnimodularMap { m: [[1, 0], [0, 1]] }
    }

    /// Variable swap (x, y) -> (y, x).
    pub fn swap() -> Self {
        UnimodularMap { m: [[0, 1], [1, 0]] }
    }

    /// Shear: f -> f(x + uy, y).
    pub fn shear(u: Z) -> Self {
        UnimodularMap { m: [[1, 0], [u, 1]] }
    }

    /// Sign flip (x, y) -> (-x, y).
    pub fn flip() -> Self {
        UnimodularMap { m: [[-1, 0], [0, 1]] }
    }

    pub fn det(&self) -> Z {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// self * other; acts as self after other: (self*other).f = self.(other.f).
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        let a = &self.m;
        let b = &other.m;
        UnimodularMap {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let det = self.det();
        let [[a, b], [c, d]] = self.m;
        // adj / det with det = +-1
        UnimodularMap {
            m: [[d * det, -b * det], [-c * det, a * det]],
        }
    }

    pub fn transpose(&self) -> UnimodularMap {
        let [[a, b], [c, d]] = self.m;
        UnimodularMap { m: [[a, c], [b, d]] }
    }

    /// Untwisted action (gamma . f)(x, y) = f((x, y) gamma); preserves (I, J).
    pub fn apply(&self, f: &QuarticForm) -> QuarticForm {
        let coeffs = substitute(&f.coeffs(), self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]);
        QuarticForm::from_coeffs(coeffs)
    }

    pub fn apply_cubic(&self, g: &CubicForm) -> CubicForm {
        let c = substitute_cubic(&g.coeffs(), self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]);
        CubicForm::new(c[0], c[1], c[2], c[3])
    }
}

/// Coefficients of f(m11 x + m21 y, m12 x + m22 y) for a quartic f.
fn substitute(f: &[Z; 5], m11: Z, m12: Z, m21: Z, m22: Z) -> [Z; 5] {
    // First argument is the linear form u = m11 x + m21 y, second v = m12 x + m22 y.
    // Accumulate sum of f[k] * u^(4-k) v^k using dense degree-4 polys in (x, y).
    let u = [m11, m21];
    let v = [m12, m22];
    let mut upow = [[0; 5]; 5]; // upow[k] = u^k as coefficient vector (x-degree descending)
    let mut vpow = [[0; 5]; 5];
    upow[0][0] = 1;
    vpow[0][0] = 1;
    for k in 1..5 {
        upow[k] = mul_linear(&upow[k - 1], u, k);
        vpow[k] = mul_linear(&vpow[k - 1], v, k);
    }
    let mut out = [0; 5];
    for k in 0..5 {
        if f[k] == 0 {
            continue;
        }
        // u^(4-k) * v^k
        let mut term = [0; 5];
        for (i, &ui) in upow[4 - k].iter().take(5 - k).enumerate() {
            for (j, &vj) in vpow[k].iter().take(k + 1).enumerate() {
                term[i + j] += ui * vj;
            }
        }
        for (o, t) in out.iter_mut().zip(term.iter()) {
            *o += f[k] * t;
        }
    }
    out
}

fn substitute_cubic(g: &[Z; 4], m11: Z, m12: Z, m21: Z, m22: Z) -> [Z; 4] {
    let u = [m11, m21];
    let v = [m12, m22];
    let mut upow = [[0; 4]; 4];
    let mut vpow = [[0; 4]; 4];
    upow[0][0] = 1;
    vpow[0][0] = 1;
    for k in 1..4 {
        let mut up = [0; 4];
        let mut vp = [0; 4];
        for i in 0..k {
            up[i] += upow[k - 1][i] * u[0];
            up[i + 1] += upow[k - 1][i] * u[1];
            vp[i] += vpow[k - 1][i] * v[0];
            vp[i + 1] += vpow[k - 1][i] * v[1];
        }
        upow[k] = up;
        vpow[k] = vp;
    }
    let mut out = [0; 4];
    for k in 0..4 {
        if g[k] == 0 {
            continue;
        }
        for i in 0..(4 - k) {
            for j in 0..=k {
                out[i + j] += g[k] * upow[3 - k][i] * vpow[k][j];
            }
        }
    }
    out
}

/// poly * (l0 x + l1 y) where poly has degree k-1 (k coefficients used).
fn mul_linear(poly: &[Z; 5], l: [Z; 2], k: usize) -> [Z; 5] {
    let mut out = [0; 5];
    for i in 0..k {
        out[i] += poly[i] * l[0];
        out[i + 1] += poly[i] * l[1];
    }
    out
}

/// Nonsingular rational 2x2 matrix for the twisted PGL2 action
/// (gamma . f)(x,y) = det(gamma)^{-2} f((x,y) gamma), which preserves (I, J)
/// exactly and kills the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMap {
    pub m: [[Rat; 2]; 2],
}

impl RationalMap {
    pub fn new(m: [[Rat; 2]; 2]) -> Self {
        let g = RationalMap { m };
        assert!(g.det() != Rat::from_integer(0), "rational map must be nonsingular");
        g
    }

    pub fn from_integers(m: [[Z; 2]; 2]) -> Self {
        RationalMap::new([
            [Rat::from_integer(m[0][0]), Rat::from_integer(m[0][1])],
            [Rat::from_integer(m[1][0]), Rat::from_integer(m[1][1])],
        ])
    }

    pub fn det(&self) -> Rat {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Twisted action; the result may have rational coefficients.
    pub fn apply_twisted(&self, f: &QuarticForm) -> QuarticFormQ {
        let fq = QuarticFormQ::from_integral(f);
        self.apply_twisted_q(&fq)
    }

    pub fn apply_twisted_q(&self, f: &QuarticFormQ) -> QuarticFormQ {
        let c = substitute_q(&f.coeffs, self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]);
        let s = self.det() * self.det();
        QuarticFormQ {
            coeffs: [c[0] / s, c[1] / s, c[2] / s, c[3] / s, c[4] / s],
        }
    }
}

fn substitute_q(f: &[Rat; 5], m11: Rat, m12: Rat, m21: Rat, m22: Rat) -> [Rat; 5] {
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    let u = [m11, m21];
    let v = [m12, m22];
    let mut upow = [[zero; 5]; 5];
    let mut vpow = [[zero; 5]; 5];
    upow[0][0] = one;
    vpow[0][0] = one;
    for k in 1..5 {
        for i in 0..k {
            let (pu, pv) = (upow[k - 1][i], vpow[k - 1][i]);
            upow[k][i] = upow[k][i] + pu * u[0];
            upow[k][i + 1] = upow[k][i + 1] + pu * u[1];
            vpow[k][i] = vpow[k][i] + pv * v[0];
            vpow[k][i + 1] = vpow[k][i + 1] + pv * v[1];
        }
    }
    let mut out = [zero; 5];
    for k in 0..5 {
        if f[k] == zero {
            continue;
        }
        for i in 0..(5 - k) {
            for j in 0..=k {
                out[i + j] = out[i + j] + f[k] * upow[4 - k][i] * vpow[k][j];
            }
        }
    }
    out
}

/// Binary quartic form with rational coefficients (output of the twisted action).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticFormQ {
    pub coeffs: [Rat; 5],
}

impl QuarticFormQ {
    pub fn from_integral(f: &QuarticForm) -> Self {
        let c = f.coeffs();
        QuarticFormQ {
            coeffs: [
                Rat::from_integer(c[0]),
                Rat::from_integer(c[1]),
                Rat::from_integer(c[2]),
                Rat::from_integer(c[3]),
                Rat::from_integer(c[4]),
            ],
        }
    }

    /// Exact rational (I, J).
    pub fn invariants(&self) -> (Rat, Rat) {
        let [a, b, c, d, e] = self.coeffs;
        let i = Rat::from_integer(12) * a * e - Rat::from_integer(3) * b * d + c * c;
        let j = Rat::from_integer(72) * a * c * e + Rat::from_integer(9) * b * c * d
            - Rat::from_integer(27) * a * d * d
            - Rat::from_integer(27) * e * b * b
            - Rat::from_integer(2) * c * c * c;
        (i, j)
    }

    pub fn as_integral(&self) -> Option<QuarticForm> {
        let mut c = [0; 5];
        for (k, r) in self.coeffs.iter().enumerate() {
            if !r.is_integer() {
                return None;
            }
            c[k] = r.to_integer();
        }
        Some(QuarticForm::from_coeffs(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: Z, b: Z, c: Z, d: Z, e: Z) -> QuarticForm {
        QuarticForm::new(a, b, c, d, e)
    }

    #[test]
    fn invariant_examples() {
        // x^3 y + x y^3 -> (-3, 0); x^3 y - x y^3 -> (3, 0); x^4 + y^4 -> (12, 0)
        assert_eq!(f(0, 1, 0, 1, 0).invariants(), InvariantPair::new(-3, 0));
        assert_eq!(f(0, 1, 0, -1, 0).invariants(), InvariantPair::new(3, 0));
        assert_eq!(f(1, 0, 0, 0, 1).invariants(), InvariantPair::new(12, 0));
        assert_eq!(QuarticForm::zero().invariants(), InvariantPair::new(0, 0));
    }

    #[test]
    fn disc_examples() {
        assert_eq!(f(0, 1, 0, -1, 0).disc(), 4);
        assert_eq!(f(0, 1, 0, 1, 0).disc(), -4);
        assert_eq!(f(1, 0, 0, 0, 1).disc(), 256);
    }

    #[test]
    fn height_examples() {
        assert_eq!(InvariantPair::new(0, 0).height4(), 0);
        assert_eq!(InvariantPair::new(3, 0).height4(), 108);
        assert_eq!(InvariantPair::new(-2, 7).height4(), 49);
        assert!(InvariantPair::new(-2, 7).height_below(13)); // H = 12.25 < 13
        assert!(!InvariantPair::new(-2, 7).height_below(12));
    }

    #[test]
    fn untwisted_action() {
        let id = UnimodularMap::identity();
        let g = f(1, 2, 3, 4, 5);
        assert_eq!(id.apply(&g), g);
        // swap: x^4 + 2y^4 -> 2x^4 + y^4
        let s = UnimodularMap::swap();
        assert_eq!(s.apply(&f(1, 0, 0, 0, 2)), f(2, 0, 0, 0, 1));
        // shear preserves invariants
        let t = UnimodularMap::shear(1);
        let h = f(0, 1, 0, 0, 0);
        assert_eq!(t.apply(&h).invariants(), h.invariants());
        assert_eq!(h.invariants(), InvariantPair::new(0, 0));
        // action is a left action: (g1 g2).f = g1.(g2.f)
        let g1 = UnimodularMap::new([[1, 2], [0, 1]]);
        let g2 = UnimodularMap::new([[0, -1], [1, 3]]);
        let ff = f(2, -1, 3, 0, -2);
        assert_eq!(g1.compose(&g2).apply(&ff), g1.apply(&g2.apply(&ff)));
        // shear matches translated()
        for u in -3..=3 {
            assert_eq!(UnimodularMap::shear(u).apply(&ff), ff.translated(u));
        }
    }

    #[test]
    fn twisted_action() {
        // gamma = diag(1,2) on 4x^4 + y^4 gives x^4 + 4y^4; both have I = 48.
        let g = RationalMap::from_integers([[1, 0], [0, 2]]);
        let out = g.apply_twisted(&f(4, 0, 0, 0, 1));
        assert_eq!(out.as_integral(), Some(f(1, 0, 0, 0, 4)));
        assert_eq!(f(4, 0, 0, 0, 1).invariants().i, 48);
        assert_eq!(f(1, 0, 0, 0, 4).invariants().i, 48);
        // scalar matrices act trivially
        let s = RationalMap::from_integers([[3, 0], [0, 3]]);
        let ff = f(1, -2, 0, 5, 7);
        assert_eq!(s.apply_twisted(&ff).as_integral(), Some(ff));
        // invariants preserved exactly for a non-integral map
        let r = RationalMap::new([
            [zint::rat(1, 2), zint::rat(1, 3)],
            [zint::rat(0, 1), zint::rat(2, 1)],
        ]);
        let out = r.apply_twisted(&ff);
        let (i, j) = out.invariants();
        let base = ff.invariants();
        assert_eq!(i, Rat::from_integer(base.i));
        assert_eq!(j, Rat::from_integer(base.j));
    }

    #[test]
    fn cubic_invariants_examples() {
        // X^3 - XY^2 -> (3, 0); X^3 - 4XY^2 + Y^3 -> (12, -27); 2x^3+7x^2y -> (49, -686)
        assert_eq!(CubicForm::monic(0, -1, 0).invariants(), (3, 0));
        assert_eq!(CubicForm::monic(0, -4, 1).invariants(), (12, -27));
        assert_eq!(CubicForm::new(2, 7, 0, 0).invariants(), (49, -686));
    }

    #[test]
    fn cubic_translation_invariance() {
        let g = CubicForm::new(2, 7, 0, 0);
        for u in -4..=4 {
            assert_eq!(g.translated(u).invariants(), g.invariants());
        }
        let monic = CubicForm::monic(1, -2, 5);
        for u in -4..=4 {
            assert_eq!(monic.translated(u).invariants(), monic.invariants());
        }
    }

    #[test]
    fn resolvent_examples() {
        assert_eq!(
            f(1, 0, 0, 0, 1).resolvent_cubic(),
            CubicForm::monic(0, -4, 0)
        );
        assert_eq!(
            f(0, 1, 0, -1, 0).resolvent_cubic(),
            CubicForm::monic(0, -1, 0)
        );
        // lift pattern: resolvent of x^3 y + r x^2 y^2 + s x y^3 + t y^4 is (1, r, s, t)
        for (r, s, t) in [(2, -3, 5), (0, 0, 1), (-1, 4, -4)] {
            let lift = f(0, 1, r, s, t);
            assert_eq!(lift.resolvent_cubic(), CubicForm::monic(r, s, t));
        }
    }

    #[test]
    fn resolvent_matches_invariants() {
        for form in [f(1, 2, 3, 4, 5), f(2, -1, 0, 3, -7), f(0, 1, 1, 1, 1)] {
            let g = form.resolvent_cubic();
            assert_eq!(g.invariants(), {
                let p = form.invariants();
                (p.i, p.j)
            });
        }
    }

    #[test]
    fn eligibility_cases() {
        assert!(InvariantPair::new(12, 0).is_eligible()); // case (a)
        assert!(InvariantPair::new(1, 2).is_eligible()); // case (b)
        assert!(!InvariantPair::new(2, 5).is_eligible()); // I = 2 mod 3
        assert!(InvariantPair::new(-2, 7).is_eligible()); // -2 = 7 mod 9, case (d)
        assert!(InvariantPair::new(4, -16).is_eligible()); // case (c), -16 = 11 mod 27
        assert!(!InvariantPair::new(1, 3).is_eligible());
    }

    #[test]
    fn forward_eligibility_always_holds() {
        // Invariants of any integral form are eligible (forward direction).
        let mut forms = Vec::new();
        for a in -2..=2_i128 {
            for b in -2..=2 {
                forms.push(f(a, b, 1 - a, b - 2, a + b));
                forms.push(f(b, a, a * b, 1, -a));
            }
        }
        for form in forms {
            assert!(
                form.invariants().is_eligible(),
                "form {form} has ineligible invariants {}",
                form.invariants()
            );
        }
    }

    #[test]
    fn cubic_irreducibility() {
        assert!(!CubicForm::monic(0, -1, 0).is_irreducible()); // X(X-Y)(X+Y)
        assert!(CubicForm::monic(0, -1, 1).is_irreducible()); // disc -23
        assert!(CubicForm::monic(1, -2, -1).is_irreducible()); // disc 49 cyclic
        assert!(!CubicForm::new(0, 1, 0, 0).is_irreducible()); // a = 0
        assert!(!CubicForm::new(2, 0, 0, 2).is_irreducible()); // 2(x+y)(x^2-xy+y^2)
        assert!(CubicForm::new(2, 0, 1, 1).is_irreducible());
    }

    #[test]
    fn unimodular_inverse_composes_to_identity() {
        let g = UnimodularMap::new([[3, 2], [4, 3]]);
        assert_eq!(g.compose(&g.inverse()), UnimodularMap::identity());
        let h = UnimodularMap::new([[0, 1], [1, 0]]);
        assert_eq!(h.inverse().compose(&h), UnimodularMap::identity());
    }
}
