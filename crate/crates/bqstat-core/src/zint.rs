//! Integer and rational scalar types used across the crate.
//!
//! `Z = i128` gives 127 usable bits, ample for every quantity at the
//! supported heights (X <= 10^10 keeps J^2, 4I^3 and all enumeration
//! intermediates far below the limit). Overflow checks are enabled in all
//! profiles, so a genuine overflow aborts loudly instead of wrapping. The
//! invariant formulas additionally get a widening `BigInt` path so that
//! callers never see an overflow as long as the *result* fits in `Z`.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{Signed, ToPrimitive};

pub type Z = i128;
/// Exact rational scalar (twisted actions, densities, mass ratios).
pub type Rat = Ratio<Z>;

pub fn rat(n: Z, d: Z) -> Rat {
    Rat::new(n, d)
}

fn sq(x: Z) -> Option<Z> {
    x.checked_mul(x)
}

fn cb(x: Z) -> Option<Z> {
    x.checked_mul(x)?.checked_mul(x)
}

/// Floor of the non-negative square root.
pub fn isqrt_floor(n: Z) -> Z {
    assert!(n >= 0, "isqrt_floor of negative {n}");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as Z + 2;
    while sq(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while sq(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// Exact square root of a perfect square, else `None`.
pub fn isqrt_exact(n: Z) -> Option<Z> {
    if n < 0 {
        return None;
    }
    let r = isqrt_floor(n);
    (r * r == n).then_some(r)
}

/// Floor of the real cube root (valid for negative arguments).
pub fn icbrt_floor(n: Z) -> Z {
    if n < 0 {
        let r = icbrt_floor(-n);
        return if r * r * r == -n { -r } else { -r - 1 };
    }
    if n < 8 {
        return if n >= 1 { 1 } else { 0 };
    }
    let mut x = (n as f64).cbrt() as Z + 2;
    while cb(x).map_or(true, |c| c > n) {
        x -= 1;
    }
    while cb(x + 1).map_or(false, |c| c <= n) {
        x += 1;
    }
    x
}

/// Largest `r >= 0` with `r^6 <= n`.
pub fn iroot6_floor(n: Z) -> Z {
    assert!(n >= 0);
    let mut r = icbrt_floor(isqrt_floor(n));
    while (r + 1).checked_pow(6).map_or(false, |p| p <= n) {
        r += 1;
    }
    while r > 0 && r.checked_pow(6).map_or(true, |p| p > n) {
        r -= 1;
    }
    r
}

/// Non-negative representative of `a` mod `m` (`m > 0`).
pub fn umod(a: Z, m: Z) -> Z {
    debug_assert!(m > 0);
    let r = a % m;
    if r < 0 {
        r + m
    } else {
        r
    }
}

pub fn gcd(a: Z, b: Z) -> Z {
    num::integer::gcd(a, b)
}

/// p-adic valuation of `n != 0`.
pub fn valuation(mut n: Z, p: Z) -> u32 {
    assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// I = 12ae - 3bd + c^2, J = 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3,
/// computed with a widening fallback: the checked `i128` path is taken
/// first, and on overflow the whole computation reruns in `BigInt`. The
/// result must fit back in `i128`.
pub fn quartic_invariants_wide(a: Z, b: Z, c: Z, d: Z, e: Z) -> (Z, Z) {
    let narrow = || -> Option<(Z, Z)> {
        let i = 12i128
            .checked_mul(a)?
            .checked_mul(e)?
            .checked_sub(3i128.checked_mul(b)?.checked_mul(d)?)?
            .checked_add(sq(c)?)?;
        let t1 = 72i128.checked_mul(a)?.checked_mul(c)?.checked_mul(e)?;
        let t2 = 9i128.checked_mul(b)?.checked_mul(c)?.checked_mul(d)?;
        let t3 = 27i128.checked_mul(a)?.checked_mul(sq(d)?)?;
        let t4 = 27i128.checked_mul(e)?.checked_mul(sq(b)?)?;
        let t5 = 2i128.checked_mul(cb(c)?)?;
        let j = t1
            .checked_add(t2)?
            .checked_sub(t3)?
            .checked_sub(t4)?
            .checked_sub(t5)?;
        Some((i, j))
    };
    if let Some(ij) = narrow() {
        return ij;
    }
    let (a, b, c, d, e) = (
        BigInt::from(a),
        BigInt::from(b),
        BigInt::from(c),
        BigInt::from(d),
        BigInt::from(e),
    );
    let i = BigInt::from(12) * &a * &e - BigInt::from(3) * &b * &d + &c * &c;
    let j = BigInt::from(72) * &a * &c * &e + BigInt::from(9) * &b * &c * &d
        - BigInt::from(27) * &a * &d * &d
        - BigInt::from(27) * &e * &b * &b
        - BigInt::from(2) * &c * &c * &c;
    (
        i.to_i128().expect("invariant I exceeds 127 bits"),
        j.to_i128().expect("invariant J exceeds 127 bits"),
    )
}

/// P = b^2 - 3ac, Q = -2b^3 + 9abc - 27a^2 d, with the same widening scheme.
pub fn cubic_invariants_wide(a: Z, b: Z, c: Z, d: Z) -> (Z, Z) {
    let narrow = || -> Option<(Z, Z)> {
        let p = sq(b)?.checked_sub(3i128.checked_mul(a)?.checked_mul(c)?)?;
        let q = 9i128
            .checked_mul(a)?
            .checked_mul(b)?
            .checked_mul(c)?
            .checked_sub(2i128.checked_mul(cb(b)?)?)?
            .checked_sub(27i128.checked_mul(sq(a)?)?.checked_mul(d)?)?;
        Some((p, q))
    };
    if let Some(pq) = narrow() {
        return pq;
    }
    let (a, b, c, d) = (
        BigInt::from(a),
        BigInt::from(b),
        BigInt::from(c),
        BigInt::from(d),
    );
    let p = &b * &b - BigInt::from(3) * &a * &c;
    let q = BigInt::from(-2) * &b * &b * &b + BigInt::from(9) * &a * &b * &c - BigInt::from(27) * &a * &a * &d;
    (
        p.to_i128().expect("invariant P exceeds 127 bits"),
        q.to_i128().expect("invariant Q exceeds 127 bits"),
    )
}

/// 4I^3 - J^2 with widening; the sign decides the real-root dichotomy.
pub fn disc_numerator_wide(i: Z, j: Z) -> Z {
    if let Some(n) = cb(i).and_then(|c| c.checked_mul(4)).and_then(|l| {
        sq(j).and_then(|r| l.checked_sub(r))
    }) {
        return n;
    }
    let (i, j) = (BigInt::from(i), BigInt::from(j));
    (BigInt::from(4) * &i * &i * &i - &j * &j)
        .to_i128()
        .expect("4I^3 - J^2 exceeds 127 bits")
}

/// H4 = max(4|I|^3, J^2), the integral height representation (H = H4/4).
pub fn height4_wide(i: Z, j: Z) -> Z {
    match (cb(i.abs()).and_then(|c| c.checked_mul(4)), sq(j)) {
        (Some(l), Some(r)) => l.max(r),
        _ => {
            let l = BigInt::from(4) * BigInt::from(i).abs().pow(3u32);
            let r = BigInt::from(j) * BigInt::from(j);
            l.max(r).to_i128().expect("H4 exceeds 127 bits")
        }
    }
}

/// Legendre symbol (a/p) for odd prime p, as -1, 0, 1.
pub fn legendre(a: Z, p: Z) -> i32 {
    debug_assert!(p > 2);
    let a = umod(a, p);
    if a == 0 {
        return 0;
    }
    let mut result: Z = 1;
    let mut base = a;
    let mut exp = (p - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Is `n` (exact integer viewed in Z_p) a square in Z_p? Zero counts.
pub fn is_padic_square(n: Z, p: Z) -> bool {
    if n == 0 {
        return true;
    }
    let v = valuation(n, p);
    if v % 2 == 1 {
        return false;
    }
    let unit = n / p.pow(v);
    if p == 2 {
        umod(unit, 8) == 1
    } else {
        legendre(unit, p) == 1
    }
}

/// Trial-division factorization; fine for the desk-scale discriminants here.
pub fn factor(mut n: Z) -> Vec<(Z, u32)> {
    assert!(n != 0);
    n = n.abs();
    let mut out = Vec::new();
    let mut p: Z = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut v = 0;
            while n % p == 0 {
                n /= p;
                v += 1;
            }
            out.push((p, v));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n != 0`, unsorted.
pub fn divisors(n: Z) -> Vec<Z> {
    let mut out = vec![1];
    for (p, v) in factor(n) {
        let prev = out.clone();
        let mut pk = 1;
        for _ in 0..v {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out
}

pub fn is_prime(n: Z) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Checked power for small bases in density formulas.
pub fn zpow(base: Z, exp: u32) -> Z {
    base.checked_pow(exp).expect("zpow overflow")
}
