//! Exact real-root counting (Sturm chains over the integers, widened to
//! `BigInt` internally) and rational factorization tests for quartics.

use crate::forms::{QuarticForm, RootType};
use crate::zint::{self, Z};
use crate::Error;
use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

/// Number of distinct real roots of f in P^1(R): Sturm on the
/// dehomogenization f(x, 1), plus the root at [1:0] when a = 0.
pub fn real_root_count_p1(f: &QuarticForm) -> usize {
    let coeffs: Vec<BigInt> = [f.e, f.d, f.c, f.b, f.a] // ascending powers of x
        .iter()
        .map(|&c| BigInt::from(c))
        .collect();
    let affine = sturm_real_roots(coeffs);
    affine + usize::from(f.a == 0)
}

/// Distinct real roots of the polynomial with ascending coefficients `poly`.
fn sturm_real_roots(mut poly: Vec<BigInt>) -> usize {
    trim(&mut poly);
    if poly.len() <= 1 {
        return 0; // constant (the zero form is rejected upstream)
    }
    let mut chain = Vec::new();
    let deriv: Vec<BigInt> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k as i64))
        .collect();
    chain.push(poly.clone());
    {
        let mut d = deriv;
        trim(&mut d);
        if d.is_empty() {
            return 0;
        }
        chain.push(d);
    }
    loop {
        let r = neg_signed_rem(&chain[chain.len() - 2], &chain[chain.len() - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    let v_neg = sign_changes(&chain, Sign::NegInf);
    let v_pos = sign_changes(&chain, Sign::PosInf);
    v_neg - v_pos
}

enum Sign {
    NegInf,
    PosInf,
}

fn sign_changes(chain: &[Vec<BigInt>], at: Sign) -> usize {
    let mut prev = 0i32;
    let mut changes = 0;
    for p in chain {
        let lc = p.last().unwrap();
        let deg = p.len() - 1;
        let mut s = if lc.is_positive() { 1 } else { -1 };
        if matches!(at, Sign::NegInf) && deg % 2 == 1 {
            s = -s;
        }
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// -(remainder of a by b), scaled by a positive constant and stripped of
/// content; sign-exact, which is all Sturm needs.
fn neg_signed_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lcb = b.last().unwrap().clone();
    let db = b.len() - 1;
    let mut scale_sign = 1i32;
    while r.len() > db {
        let dr = r.len() - 1;
        let lcr = r.last().unwrap().clone();
        if lcr.is_zero() {
            r.pop();
            continue;
        }
        // r := lcb * r - lcr * x^(dr-db) * b
        for c in r.iter_mut() {
            *c *= &lcb;
        }
        if lcb.is_negative() {
            scale_sign = -scale_sign;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &lcr * bc;
        }
        trim(&mut r);
        if r.is_empty() {
            return r;
        }
    }
    // strip content to keep growth down
    let mut g = BigInt::zero();
    for c in &r {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in r.iter_mut() {
            *c = &*c / &g;
        }
    }
    if scale_sign < 0 {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    for c in r.iter_mut() {
        *c = -&*c;
    }
    r
}

/// Root type of a nondegenerate form. Negative discriminant forces two
/// real roots; positive discriminant splits into four real roots or a
/// definite form, whose sign is read off its leading value.
pub fn root_type(f: &QuarticForm) -> Result<RootType, Error> {
    let pair = f.invariants();
    let dn = pair.disc_numerator();
    if dn == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    if dn < 0 {
        return Ok(RootType::TwoReal);
    }
    match real_root_count_p1(f) {
        4 => Ok(RootType::FourReal),
        0 => {
            // definite: a = f(1,0) != 0 since [1:0] would otherwise be a root
            debug_assert!(f.a != 0);
            if f.a > 0 {
                Ok(RootType::NoneRealPositive)
            } else {
                Ok(RootType::NoneRealNegative)
            }
        }
        n => unreachable!("positive discriminant with {n} real roots"),
    }
}

/// Is f irreducible over Q? Content is immaterial; a form with a = 0 or
/// e = 0 has a monomial factor; otherwise we search integral linear factors
/// px + qy with p | a, q | e and integral quadratic factorizations
/// (px^2+qxy+ry^2)(p'x^2+q'xy+r'y^2) with pp' = a, rr' = e.
pub fn is_irreducible_q(f: &QuarticForm) -> bool {
    assert!(!f.is_zero(), "irreducibility of the zero form is undefined");
    let ct = f.content();
    let g = QuarticForm::new(f.a / ct, f.b / ct, f.c / ct, f.d / ct, f.e / ct);
    if g.a == 0 || g.e == 0 {
        return false;
    }
    if has_rational_root(&g) {
        return false;
    }
    !has_quadratic_factor(&g)
}

fn has_rational_root(f: &QuarticForm) -> bool {
    // roots [x : y] = [-q : p] of px + qy with p | a, q | e
    for p in zint::divisors(f.a) {
        for q in zint::divisors(f.e) {
            if zint::gcd(p, q) != 1 {
                continue;
            }
            if f.eval(q, p) == 0 || f.eval(-q, p) == 0 {
                return true;
            }
        }
    }
    false
}

fn ext_gcd(a: Z, b: Z) -> (Z, Z, Z) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}

fn has_quadratic_factor(f: &QuarticForm) -> bool {
    let (a, b, c, d, e) = (f.a, f.b, f.c, f.d, f.e);
    for p in zint::divisors(a) {
        let pp = a / p; // p > 0, pp carries the sign of a
        for r0 in zint::divisors(e) {
            for r in [r0, -r0] {
                let rr = e / r;
                // q p' + q' p = b ; q r' + q' r = d ; q q' + p r' + p' r = c
                let det = pp * r - p * rr;
                if det != 0 {
                    let qn = b * r - d * p;
                    let qqn = pp * d - rr * b;
                    if qn % det != 0 || qqn % det != 0 {
                        continue;
                    }
                    let q = qn / det;
                    let qq = qqn / det;
                    if q * qq + p * rr + pp * r == c {
                        return true;
                    }
                } else {
                    // Singular system: p'r = pr'. Solve qp' + q'p = b, then the
                    // d-equation is automatic or contradictory, and the c-equation
                    // becomes an integer quadratic in the free parameter.
                    let (g, x, y) = ext_gcd(pp, p);
                    if b % g != 0 {
                        continue;
                    }
                    let q0 = x * (b / g);
                    let qq0 = y * (b / g);
                    if rr * q0 + r * qq0 != d {
                        continue;
                    }
                    // q = q0 + t p/g, q' = qq0 - t p'/g;  qq' = c - p r' - p' r
                    let target = c - p * rr - pp * r;
                    // -(p p'/g^2) t^2 + (qq0 p - q0 p')/g t + q0 qq0 - target = 0
                    let aa = -(p * pp) / (g * g);
                    let bb = (qq0 * p - q0 * pp) / g;
                    let cc = q0 * qq0 - target;
                    debug_assert!(aa != 0);
                    let disc = bb * bb - 4 * aa * cc;
                    if disc < 0 {
                        continue;
                    }
                    if let Some(s) = zint::isqrt_exact(disc) {
                        for sr in [s, -s] {
                            if (-bb + sr) % (2 * aa) == 0 {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}
