//! Splitting types over F_p, maximality criteria, and exact p-adic density
//! computation by exhaustive enumeration mod p (splitting data) or mod p^2
//! (maximality data), with closed-form cross-checks.
//!
//! Measures are normalized so the full coefficient space has mass 1; all
//! densities are exact rationals.

use crate::embed::TernaryQuadraticPair;
use crate::forms::{CubicForm, QuarticForm};
use crate::zint::{rat, umod, zpow, Rat, Z};
use crate::Error;
use rayon::prelude::*;
use std::fmt;

/// Splitting symbol (g, p) of a cubic form: degrees and multiplicities of
/// the roots of g mod p in P^1 over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicSplit {
    S111,
    S12,
    S3,
    /// (1^2 1): one double root and one simple root.
    S1e21,
    /// (1^3): a triple root.
    S1e3,
}

pub const CUBIC_SPLITS: [CubicSplit; 5] = [
    CubicSplit::S111,
    CubicSplit::S12,
    CubicSplit::S3,
    CubicSplit::S1e21,
    CubicSplit::S1e3,
];

impl fmt::Display for CubicSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CubicSplit::S111 => "(111)",
            CubicSplit::S12 => "(12)",
            CubicSplit::S3 => "(3)",
            CubicSplit::S1e21 => "(1^21)",
            CubicSplit::S1e3 => "(1^3)",
        };
        f.write_str(s)
    }
}

impl CubicSplit {
    pub fn parse(s: &str) -> Option<CubicSplit> {
        CUBIC_SPLITS.iter().copied().find(|t| t.to_string() == s)
    }
}

/// Splitting symbol (f, p) of a quartic form over P^1(F_p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuarticSplit {
    S1111,
    S112,
    S13,
    S22,
    S4,
    /// (1^2 11)
    S1e211,
    /// (1^2 2)
    S1e22,
    /// (1^2 1^2) - overramified
    S1e21e2,
    /// (2^2) - overramified
    S2e2,
    /// (1^3 1)
    S1e31,
    /// (1^4) - overramified
    S1e4,
}

pub const QUARTIC_SPLITS: [QuarticSplit; 11] = [
    QuarticSplit::S1111,
    QuarticSplit::S112,
    QuarticSplit::S13,
    QuarticSplit::S22,
    QuarticSplit::S4,
    QuarticSplit::S1e211,
    QuarticSplit::S1e22,
    QuarticSplit::S1e21e2,
    QuarticSplit::S2e2,
    QuarticSplit::S1e31,
    QuarticSplit::S1e4,
];

impl fmt::Display for QuarticSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuarticSplit::S1111 => "(1111)",
            QuarticSplit::S112 => "(112)",
            QuarticSplit::S13 => "(13)",
            QuarticSplit::S22 => "(22)",
            QuarticSplit::S4 => "(4)",
            QuarticSplit::S1e211 => "(1^211)",
            QuarticSplit::S1e22 => "(1^22)",
            QuarticSplit::S1e21e2 => "(1^21^2)",
            QuarticSplit::S2e2 => "(2^2)",
            QuarticSplit::S1e31 => "(1^31)",
            QuarticSplit::S1e4 => "(1^4)",
        };
        f.write_str(s)
    }
}

impl QuarticSplit {
    pub fn parse(s: &str) -> Option<QuarticSplit> {
        QUARTIC_SPLITS.iter().copied().find(|t| t.to_string() == s)
    }

    pub fn is_overramified(self) -> bool {
        matches!(
            self,
            QuarticSplit::S1e21e2 | QuarticSplit::S2e2 | QuarticSplit::S1e4
        )
    }
}

/// The map R from quartic splitting types to the splitting type of the
/// resolvent cubic ring; overramified types have no image.
pub fn split_map_r(theta: QuarticSplit) -> Option<CubicSplit> {
    use CubicSplit::*;
    use QuarticSplit::*;
    match theta {
        S1111 | S22 => Some(S111),
        S112 | S4 => Some(S12),
        S13 => Some(S3),
        S1e211 | S1e22 => Some(S1e21),
        S1e31 => Some(S1e3),
        S1e21e2 | S2e2 | S1e4 => None,
    }
}

/// Fiber R^{-1}(sigma) in Table 2 order.
pub fn r_inverse(sigma: CubicSplit) -> &'static [QuarticSplit] {
    use QuarticSplit::*;
    match sigma {
        CubicSplit::S111 => &[S1111, S22],
        CubicSplit::S12 => &[S112, S4],
        CubicSplit::S3 => &[S13],
        CubicSplit::S1e21 => &[S1e211, S1e22],
        CubicSplit::S1e3 => &[S1e31],
    }
}

// ---------------------------------------------------------------------------
// F_p[x] helpers (little-endian coefficient vectors, entries in [0, p))
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<Z>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[Z], b: &[Z], p: Z) -> Vec<Z> {
    let mut r: Vec<Z> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] * lb_inv % p;
        for (k, &bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = umod(r[idx] - factor * bc, p);
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[Z], b: &[Z], p: Z) -> Vec<Z> {
    let mut x: Vec<Z> = a.to_vec();
    let mut y: Vec<Z> = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    // monic normalization
    if let Some(&lc) = x.last() {
        let inv = mod_inv(lc, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

fn poly_mulmod(a: &[Z], b: &[Z], m: &[Z], p: Z) -> Vec<Z> {
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, m, p)
}

/// x^e mod (m, p).
fn poly_xpow(e: u64, m: &[Z], p: Z) -> Vec<Z> {
    let mut result = vec![1];
    let mut base = poly_rem(&[0, 1], m, p);
    let mut exp = e;
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mulmod(&result, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    result
}

fn mod_inv(a: Z, p: Z) -> Z {
    // p prime; Fermat
    let mut result: Z = 1;
    let mut base = umod(a, p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Root multiplicities over P^1(F_p) plus the root-free residual factor.
/// Returns (list of multiplicities, residual degree, residual poly).
fn p1_root_structure(coeffs_desc: &[Z], p: Z) -> (Vec<u32>, Vec<Z>) {
    // coeffs_desc: highest x-degree first, length = degree + 1 of the form
    let deg = coeffs_desc.len() - 1;
    let mut mults = Vec::new();
    // multiplicity at [1:0] = number of leading zero coefficients
    let minf = coeffs_desc
        .iter()
        .take_while(|&&c| umod(c, p) == 0)
        .count() as u32;
    debug_assert!((minf as usize) <= deg, "form vanishes mod p");
    if minf > 0 {
        mults.push(minf);
    }
    // affine polynomial: little-endian
    let mut u: Vec<Z> = coeffs_desc.iter().rev().map(|&c| umod(c, p)).collect();
    poly_trim(&mut u);
    // synthetic division by (x - r) per root
    for r in 0..p {
        let mut m = 0;
        loop {
            if u.len() <= 1 {
                break;
            }
            if eval_poly(&u, r, p) != 0 {
                break;
            }
            u = synth_div(&u, r, p);
            m += 1;
        }
        if m > 0 {
            mults.push(m);
        }
        if u.len() <= 1 {
            break;
        }
    }
    (mults, u)
}

fn eval_poly(u: &[Z], r: Z, p: Z) -> Z {
    let mut acc = 0;
    for &c in u.iter().rev() {
        acc = (acc * r + c) % p;
    }
    acc
}

fn synth_div(u: &[Z], r: Z, p: Z) -> Vec<Z> {
    // divide u by (x - r); exact by assumption
    let mut out = vec![0; u.len() - 1];
    let mut carry = 0;
    for k in (0..u.len()).rev() {
        let v = umod(u[k] + carry * r, p);
        if k == 0 {
            debug_assert_eq!(v, 0);
        } else {
            out[k - 1] = v;
            carry = v;
        }
    }
    out
}

/// Splitting type of a cubic form mod p; error if the form vanishes mod p.
pub fn splitting_type_cubic(g: &CubicForm, p: Z) -> Result<CubicSplit, Error> {
    let coeffs = [g.a, g.b, g.c, g.d];
    if coeffs.iter().all(|&c| umod(c, p) == 0) {
        return Err(Error::ZeroModP(p));
    }
    let (mut mults, residual) = p1_root_structure(&coeffs, p);
    mults.sort_unstable();
    let rdeg = residual.len().saturating_sub(1);
    Ok(match (mults.as_slice(), rdeg) {
        ([1, 1, 1], 0) => CubicSplit::S111,
        ([1], 2) => CubicSplit::S12,
        ([], 3) => CubicSplit::S3,
        ([1, 2], 0) => CubicSplit::S1e21,
        ([3], 0) => CubicSplit::S1e3,
        (m, d) => unreachable!("impossible cubic split {m:?} residual degree {d}"),
    })
}

/// Splitting type of a quartic form mod p; error if the form vanishes mod p.
pub fn splitting_type_quartic(f: &QuarticForm, p: Z) -> Result<QuarticSplit, Error> {
    let coeffs = f.coeffs();
    if coeffs.iter().all(|&c| umod(c, p) == 0) {
        return Err(Error::ZeroModP(p));
    }
    let (mut mults, residual) = p1_root_structure(&coeffs, p);
    mults.sort_unstable();
    let rdeg = residual.len().saturating_sub(1);
    Ok(match (mults.as_slice(), rdeg) {
        ([1, 1, 1, 1], 0) => QuarticSplit::S1111,
        ([1, 1], 2) => QuarticSplit::S112,
        ([1], 3) => QuarticSplit::S13,
        ([], 4) => quartic_residual_type(&residual, p),
        ([1, 1, 2], 0) => QuarticSplit::S1e211,
        ([2], 2) => QuarticSplit::S1e22,
        ([2, 2], 0) => QuarticSplit::S1e21e2,
        ([1, 3], 0) => QuarticSplit::S1e31,
        ([4], 0) => QuarticSplit::S1e4,
        (m, d) => unreachable!("impossible quartic split {m:?} residual degree {d}"),
    })
}

/// Classify a root-free degree-4 residual: (22), (2^2), or (4).
fn quartic_residual_type(w: &[Z], p: Z) -> QuarticSplit {
    let deriv: Vec<Z> = w
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| umod(c * (k as Z), p))
        .collect();
    let g = poly_gcd(w, &deriv, p);
    if g.len() > 1 {
        // repeated factor; root-free, so it is an irreducible quadratic squared
        return QuarticSplit::S2e2;
    }
    // squarefree: w splits into two irreducible quadratics iff
    // x^(p^2) = x mod w, i.e. every irreducible factor has degree <= 2
    let xp2 = poly_xpow((p * p) as u64, w, p);
    let mut diff = xp2;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = umod(diff[1] - 1, p);
    poly_trim(&mut diff);
    if diff.is_empty() {
        QuarticSplit::S22
    } else {
        QuarticSplit::S4
    }
}

// ---------------------------------------------------------------------------
// Maximality
// ---------------------------------------------------------------------------

/// Is the cubic ring of g maximal at p? Nonmaximality happens iff p divides
/// every coefficient, or some multiple root rbar of g mod p (the root [1:0]
/// is reached through the variable swap) satisfies p^2 | g(rbar, 1) - for
/// the swapped case, p^2 | a. The value g(r, 1) mod p^2 does not depend on
/// the choice of lift of rbar because g'(rbar) = 0 mod p.
pub fn is_maximal_cubic(g: &CubicForm, p: Z) -> bool {
    let coeffs = [g.a, g.b, g.c, g.d];
    if coeffs.iter().all(|&c| c % p == 0) {
        return false;
    }
    let p2 = p * p;
    // affine multiple roots of g mod p
    for r in 0..p {
        let v = umod(g.eval(r, 1), p);
        if v != 0 {
            continue;
        }
        // derivative in x: 3a r^2 + 2b r + c
        let dv = umod(3 * g.a * r * r + 2 * g.b * r + g.c, p);
        if dv != 0 {
            continue;
        }
        if umod(g.eval(r, 1), p2) == 0 {
            return false;
        }
    }
    // multiple root at [1:0]: needs p | a and p | b
    if g.a % p == 0 && g.b % p == 0 && umod(g.a, p2) == 0 {
        return false;
    }
    true
}

/// Strong maximality of a quartic at p: the resolvent cubic ring is maximal
/// at p (the quartic ring is then automatically maximal at p).
pub fn is_strongly_maximal_quartic(f: &QuarticForm, p: Z) -> bool {
    is_maximal_cubic(&f.resolvent_cubic(), p)
}

/// Strong maximality of a pair of ternary quadratic forms at p: the binary
/// cubic resolvent 4 det(Ax - By) is maximal at p.
pub fn is_strongly_maximal_pair(pair: &TernaryQuadraticPair, p: Z) -> bool {
    is_maximal_cubic(&pair.resolvent(), p)
}

// ---------------------------------------------------------------------------
// Exhaustive densities
// ---------------------------------------------------------------------------

/// Enumeration budgets: largest prime per family for the mod-p^2 scans.
pub const BUDGET_MONIC_CUBIC: Z = 13;
pub const BUDGET_QUARTIC: Z = 5;
pub const BUDGET_GENERAL_CUBIC: Z = 7;
pub const BUDGET_PAIRS: Z = 2;

/// Density of a splitting type among monic cubics: exact count over the p^3
/// tuples (r, s, t) mod p.
pub fn density_split_monic(p: Z, sigma: CubicSplit) -> Rat {
    let mut count = 0;
    for r in 0..p {
        for s in 0..p {
            for t in 0..p {
                let g = CubicForm::monic(r, s, t);
                if splitting_type_cubic(&g, p).ok() == Some(sigma) {
                    count += 1;
                }
            }
        }
    }
    rat(count, zpow(p, 3))
}

/// Density of a splitting type among all quartics: count over p^5 tuples,
/// forms vanishing mod p belong to no type.
pub fn density_split_quartic(p: Z, theta: QuarticSplit) -> Rat {
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    for e in 0..p {
                        let f = QuarticForm::new(a, b, c, d, e);
                        if splitting_type_quartic(&f, p).ok() == Some(theta) {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    rat(count, zpow(p, 5))
}

/// Density of maximal-at-p monic cubics, optionally intersected with a
/// splitting type: exact scan of the p^6 tuples mod p^2.
pub fn density_maximal_monic(p: Z, sigma: Option<CubicSplit>) -> Result<Rat, Error> {
    if p > BUDGET_MONIC_CUBIC {
        return Err(Error::BudgetExceeded(p, "monic-cubic"));
    }
    let p2 = p * p;
    let count: Z = (0..p2)
        .into_par_iter()
        .map(|r| {
            let mut local = 0;
            for s in 0..p2 {
                for t in 0..p2 {
                    let g = CubicForm::monic(r, s, t);
                    if let Some(sig) = sigma {
                        if splitting_type_cubic(&g, p).ok() != Some(sig) {
                            continue;
                        }
                    }
                    if is_maximal_cubic(&g, p) {
                        local += 1;
                    }
                }
            }
            local
        })
        .sum();
    Ok(rat(count, zpow(p, 6)))
}

/// Density of strongly-maximal-at-p quartics, optionally intersected with a
/// splitting type: exact scan of the p^10 tuples mod p^2, with the mod-p
/// splitting and multiple-root data memoized per mod-p class.
pub fn density_strongly_maximal_quartic(p: Z, theta: Option<QuarticSplit>) -> Result<Rat, Error> {
    if p > BUDGET_QUARTIC {
        return Err(Error::BudgetExceeded(p, "quartic"));
    }
    let p2 = p * p;
    let pu = p as usize;
    // memoize splitting type and resolvent multiple-root structure by f mod p
    // (the resolvent is monic, so only affine multiple roots occur)
    let classes = pu.pow(5);
    let mut split_table = vec![None; classes];
    let mut mult_roots: Vec<Vec<Z>> = vec![Vec::new(); classes];
    for key in 0..classes {
        let co = key_to_tuple(key, pu, 5);
        let f = QuarticForm::new(co[0], co[1], co[2], co[3], co[4]);
        split_table[key] = splitting_type_quartic(&f, p).ok();
        let res = f.resolvent_cubic();
        for r in 0..p {
            if umod(res.eval(r, 1), p) == 0 && umod(3 * r * r + 2 * res.b * r + res.c, p) == 0 {
                mult_roots[key].push(r);
            }
        }
    }
    let count: Z = (0..p2)
        .into_par_iter()
        .map(|a| {
            let mut local = 0;
            for b in 0..p2 {
                for c in 0..p2 {
                    for d in 0..p2 {
                        for e in 0..p2 {
                            let key = (((umod(a, p) as usize * pu + umod(b, p) as usize) * pu
                                + umod(c, p) as usize)
                                * pu
                                + umod(d, p) as usize)
                                * pu
                                + umod(e, p) as usize;
                            if let Some(th) = theta {
                                if split_table[key] != Some(th) {
                                    continue;
                                }
                            }
                            let f = QuarticForm::new(a, b, c, d, e);
                            let res = f.resolvent_cubic();
                            let mut ok = true;
                            for &r in &mult_roots[key] {
                                if umod(res.eval(r, 1), p2) == 0 {
                                    ok = false;
                                    break;
                                }
                            }
                            if ok && (theta.is_some() || split_table[key].is_some()) {
                                local += 1;
                            }
                        }
                    }
                }
            }
            local
        })
        .sum();
    Ok(rat(count, zpow(p, 10)))
}

/// Density of maximal-at-p general binary cubics, optionally intersected
/// with a splitting type: exact scan of the p^8 tuples mod p^2.
pub fn density_maximal_general_cubic(p: Z, sigma: Option<CubicSplit>) -> Result<Rat, Error> {
    if p > BUDGET_GENERAL_CUBIC {
        return Err(Error::BudgetExceeded(p, "general-cubic"));
    }
    let p2 = p * p;
    let count: Z = (0..p2)
        .into_par_iter()
        .map(|a| {
            let mut local = 0;
            for b in 0..p2 {
                for c in 0..p2 {
                    for d in 0..p2 {
                        let g = CubicForm::new(a, b, c, d);
                        if let Some(sig) = sigma {
                            if splitting_type_cubic(&g, p).ok() != Some(sig) {
                                continue;
                            }
                        }
                        if is_maximal_cubic(&g, p) {
                            local += 1;
                        }
                    }
                }
            }
            local
        })
        .sum();
    Ok(rat(count, zpow(p, 8)))
}

/// Density of strongly-maximal pairs of ternary quadratic forms at p = 2:
/// the 2^24 scan promised by the budget table. A stretch check of the
/// squared maximality formula.
pub fn density_strongly_maximal_pairs_p2() -> Rat {
    let p: Z = 2;
    let p2 = 4;
    let count: Z = (0..p2 * p2 * p2)
        .into_par_iter()
        .map(|outer| {
            let a11 = outer % p2;
            let a22 = (outer / p2) % p2;
            let a33 = outer / (p2 * p2);
            let mut local = 0;
            for a12 in 0..p2 {
                for a13 in 0..p2 {
                    for a23 in 0..p2 {
                        for b11 in 0..p2 {
                            for b12 in 0..p2 {
                                for b13 in 0..p2 {
                                    for b22 in 0..p2 {
                                        for b23 in 0..p2 {
                                            for b33 in 0..p2 {
                                                let pair = TernaryQuadraticPair::new(
                                                    [
                                                        [2 * a11, a12, a13],
                                                        [a12, 2 * a22, a23],
                                                        [a13, a23, 2 * a33],
                                                    ],
                                                    [
                                                        [2 * b11, b12, b13],
                                                        [b12, 2 * b22, b23],
                                                        [b13, b23, 2 * b33],
                                                    ],
                                                );
                                                if is_maximal_cubic(&pair.resolvent(), p) {
                                                    local += 1;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            local
        })
        .sum();
    rat(count, zpow(2, 24))
}

fn key_to_tuple(mut key: usize, p: usize, n: usize) -> Vec<Z> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = (key % p) as Z;
        key /= p;
    }
    out
}

// ---------------------------------------------------------------------------
// Closed forms and table identities
// ---------------------------------------------------------------------------

/// Splitting-type densities for monic cubics.
pub fn formula_split_monic(p: Z, sigma: CubicSplit) -> Rat {
    match sigma {
        CubicSplit::S111 => rat((p - 1) * (p - 2), 6 * p * p),
        CubicSplit::S12 => rat(p - 1, 2 * p),
        CubicSplit::S3 => rat(p * p - 1, 3 * p * p),
        CubicSplit::S1e21 => rat(p - 1, p * p),
        CubicSplit::S1e3 => rat(1, p * p),
    }
}

/// Splitting-and-maximal densities for monic cubics.
pub fn formula_maximal_split_monic(p: Z, sigma: CubicSplit) -> Rat {
    match sigma {
        CubicSplit::S111 | CubicSplit::S12 | CubicSplit::S3 => formula_split_monic(p, sigma),
        CubicSplit::S1e21 => rat((p - 1) * (p - 1), p * p * p),
        CubicSplit::S1e3 => rat(p - 1, p * p * p),
    }
}

/// Splitting-and-strongly-maximal densities for quartics.
pub fn formula_sm_split_quartic(p: Z, theta: QuarticSplit) -> Rat {
    let p4 = zpow(p, 4);
    let p5 = zpow(p, 5);
    match theta {
        QuarticSplit::S1111 => rat((p + 1) * (p - 1) * (p - 1) * (p - 2), 24 * p4),
        QuarticSplit::S112 | QuarticSplit::S4 => rat((p + 1) * (p - 1) * (p - 1), 4 * p * p * p),
        QuarticSplit::S13 => rat((p * p - 1) * (p * p - 1), 3 * p4),
        QuarticSplit::S22 => rat((p - 1) * (p - 1) * (p * p - p - 2), 8 * p4),
        QuarticSplit::S1e211 | QuarticSplit::S1e22 => {
            rat((p - 1) * (p - 1) * (p - 1) * (p + 1), 2 * p5)
        }
        QuarticSplit::S1e31 => rat((p - 1) * (p - 1) * (p + 1), p5),
        QuarticSplit::S1e21e2 | QuarticSplit::S2e2 | QuarticSplit::S1e4 => rat(0, 1),
    }
}

/// Total maximality density for monic cubics: (p^2 - 1)/p^2.
pub fn formula_maximal_monic(p: Z) -> Rat {
    rat(p * p - 1, p * p)
}

/// Total strong-maximality density for quartics: (p^2 - 1)^2/p^4.
pub fn formula_sm_quartic(p: Z) -> Rat {
    rat((p * p - 1) * (p * p - 1), zpow(p, 4))
}

/// Total maximality density for general binary cubics: (p^3-1)(p^2-1)/p^5.
pub fn formula_maximal_general_cubic(p: Z) -> Rat {
    rat((zpow(p, 3) - 1) * (p * p - 1), zpow(p, 5))
}

/// Total strong-maximality density for pairs: (p^3-1)^2 (p^2-1)^2 / p^10.
pub fn formula_sm_pairs(p: Z) -> Rat {
    let a = zpow(p, 3) - 1;
    let b = p * p - 1;
    rat(a * a * b * b, zpow(p, 10))
}

/// One row of the monogenized-side ratio table: left ratio, the R^{-1}
/// fiber, the per-theta right ratios, and the closed form they must equal.
pub struct TableRow {
    pub sigma: CubicSplit,
    pub left: Rat,
    pub right_parts: Vec<(QuarticSplit, Rat)>,
    pub closed_form: Rat,
}

/// Table of p-adic density ratios for monic cubics vs quartics; every row
/// satisfies left = sum(right) = closed form exactly.
pub fn table2_row(p: Z, sigma: CubicSplit) -> TableRow {
    let left = formula_maximal_split_monic(p, sigma) / formula_maximal_monic(p);
    let right_parts: Vec<(QuarticSplit, Rat)> = r_inverse(sigma)
        .iter()
        .map(|&t| (t, formula_sm_split_quartic(p, t) / formula_sm_quartic(p)))
        .collect();
    let closed_form = match sigma {
        CubicSplit::S111 => rat(p - 2, 6 * (p + 1)),
        CubicSplit::S12 => rat(p, 2 * (p + 1)),
        CubicSplit::S3 => rat(1, 3),
        CubicSplit::S1e21 => rat(p - 1, p * (p + 1)),
        CubicSplit::S1e3 => rat(1, p * (p + 1)),
    };
    TableRow {
        sigma,
        left,
        right_parts,
        closed_form,
    }
}

/// Table of p-adic density ratios for general cubics vs pairs of ternary
/// quadratic forms (the submonogenized side).
pub fn table4_row(p: Z, sigma: CubicSplit) -> TableRow {
    let q = p * p + p + 1;
    let (left, rights): (Rat, Vec<Rat>) = match sigma {
        CubicSplit::S111 => (rat(p * p, 6 * q), vec![rat(p * p, 24 * q), rat(p * p, 8 * q)]),
        CubicSplit::S12 => (rat(p * p, 2 * q), vec![rat(p * p, 4 * q), rat(p * p, 4 * q)]),
        CubicSplit::S3 => (rat(p * p, 3 * q), vec![rat(p * p, 3 * q)]),
        CubicSplit::S1e21 => (rat(p, q), vec![rat(p, 2 * q), rat(p, 2 * q)]),
        CubicSplit::S1e3 => (rat(1, q), vec![rat(1, q)]),
    };
    let right_parts = r_inverse(sigma)
        .iter()
        .copied()
        .zip(rights)
        .collect();
    TableRow {
        sigma,
        left,
        right_parts,
        closed_form: left,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_cubic_examples() {
        // X^3 - XY^2 = X(X-Y)(X+Y) at 5 -> (111); at 2 -> (1^2 1)
        let g = CubicForm::monic(0, -1, 0);
        assert_eq!(splitting_type_cubic(&g, 5).unwrap(), CubicSplit::S111);
        assert_eq!(splitting_type_cubic(&g, 2).unwrap(), CubicSplit::S1e21);
        // X^3 + XY^2 + Y^3 at 2 -> (3)
        let h = CubicForm::monic(0, 1, 1);
        assert_eq!(splitting_type_cubic(&h, 2).unwrap(), CubicSplit::S3);
        // a form vanishing mod p is rejected
        let z = CubicForm::new(5, 10, 0, 5);
        assert!(matches!(
            splitting_type_cubic(&z, 5),
            Err(Error::ZeroModP(5))
        ));
    }

    #[test]
    fn splitting_quartic_examples() {
        // x^4 + y^4 at 5 -> (22)
        let f = QuarticForm::new(1, 0, 0, 0, 1);
        assert_eq!(splitting_type_quartic(&f, 5).unwrap(), QuarticSplit::S22);
        // x^3y - xy^3 at 5 -> (1111): roots 0, inf, +-1
        let g = QuarticForm::new(0, 1, 0, -1, 0);
        assert_eq!(splitting_type_quartic(&g, 5).unwrap(), QuarticSplit::S1111);
        // x^3y + xy^3 at 3 -> (112)
        let h = QuarticForm::new(0, 1, 0, 1, 0);
        assert_eq!(splitting_type_quartic(&h, 3).unwrap(), QuarticSplit::S112);
        // x^4 + x^3y + x^2y^2 + xy^3 + y^4 at 2: irreducible (4)
        let q = QuarticForm::new(1, 1, 1, 1, 1);
        assert_eq!(splitting_type_quartic(&q, 2).unwrap(), QuarticSplit::S4);
        // (x^2 + xy + y^2)^2 mod 2 -> (2^2)
        let s = QuarticForm::new(1, 2, 3, 2, 1);
        assert_eq!(splitting_type_quartic(&s, 2).unwrap(), QuarticSplit::S2e2);
    }

    #[test]
    fn maximality_examples() {
        // X^3 - XY^2 nonmaximal at 2 (double root 1, g(1) = 0 mod 4)
        assert!(!is_maximal_cubic(&CubicForm::monic(0, -1, 0), 2));
        // X^3 - XY^2 + Y^3: disc -23 squarefree, maximal at 2 and 23
        let g = CubicForm::monic(0, -1, 1);
        assert!(is_maximal_cubic(&g, 2));
        assert!(is_maximal_cubic(&g, 23));
        // disc coprime to p implies maximal
        assert!(is_maximal_cubic(&CubicForm::monic(0, -1, 0), 5)); // disc 4
        // strong maximality composes through the resolvent
        let f = QuarticForm::new(0, 1, 0, -1, 0);
        assert!(!is_strongly_maximal_quartic(&f, 2));
        assert!(is_strongly_maximal_quartic(&f, 3));
    }

    #[test]
    fn split_map_table() {
        assert_eq!(split_map_r(QuarticSplit::S22), Some(CubicSplit::S111));
        assert_eq!(split_map_r(QuarticSplit::S13), Some(CubicSplit::S3));
        assert_eq!(split_map_r(QuarticSplit::S1e4), None);
        for sigma in CUBIC_SPLITS {
            for &theta in r_inverse(sigma) {
                assert_eq!(split_map_r(theta), Some(sigma));
            }
        }
    }

    #[test]
    fn monic_split_densities_match_formulas() {
        for p in [2, 3, 5, 7] {
            for sigma in CUBIC_SPLITS {
                assert_eq!(
                    density_split_monic(p, sigma),
                    formula_split_monic(p, sigma),
                    "monic split density mismatch at p={p} sigma={sigma}"
                );
            }
            // partition check: monic cubics never vanish mod p
            let total: Rat = CUBIC_SPLITS
                .iter()
                .map(|&s| density_split_monic(p, s))
                .sum();
            assert_eq!(total, rat(1, 1));
        }
    }

    #[test]
    fn quartic_split_densities_partition() {
        for p in [2, 3, 5] {
            let total: Rat = QUARTIC_SPLITS
                .iter()
                .map(|&t| density_split_quartic(p, t))
                .sum();
            assert_eq!(total, rat(zpow(p, 5) - 1, zpow(p, 5)));
        }
    }

    #[test]
    fn monic_maximal_densities_small_primes() {
        // p = 2: 48 of 64 tuples mod 4 are maximal -> 3/4
        assert_eq!(density_maximal_monic(2, None).unwrap(), rat(3, 4));
        assert_eq!(density_maximal_monic(3, None).unwrap(), rat(8, 9));
        for p in [2, 3] {
            for sigma in CUBIC_SPLITS {
                assert_eq!(
                    density_maximal_monic(p, Some(sigma)).unwrap(),
                    formula_maximal_split_monic(p, sigma),
                    "monic maximal split mismatch p={p} {sigma}"
                );
            }
        }
        assert!(matches!(
            density_maximal_monic(17, None),
            Err(Error::BudgetExceeded(17, _))
        ));
    }

    #[test]
    fn quartic_sm_density_p2_p3() {
        assert_eq!(
            density_strongly_maximal_quartic(2, None).unwrap(),
            rat(9, 16)
        );
        assert_eq!(
            density_strongly_maximal_quartic(3, None).unwrap(),
            rat(64, 81)
        );
    }

    #[test]
    fn general_cubic_maximal_density_p2() {
        // 21/32 at p = 2
        assert_eq!(
            density_maximal_general_cubic(2, None).unwrap(),
            rat(21, 32)
        );
        assert_eq!(
            formula_maximal_general_cubic(2),
            rat(21, 32)
        );
    }

    #[test]
    fn table_rows_are_exact_identities() {
        for p in [2, 3, 5, 7, 11, 97] {
            for sigma in CUBIC_SPLITS {
                let row = table2_row(p, sigma);
                let sum: Rat = row.right_parts.iter().map(|(_, r)| *r).sum();
                assert_eq!(row.left, sum, "table2 row {sigma} at p={p}");
                assert_eq!(row.left, row.closed_form, "table2 closed form {sigma} p={p}");
                let row4 = table4_row(p, sigma);
                let sum4: Rat = row4.right_parts.iter().map(|(_, r)| *r).sum();
                assert_eq!(row4.left, sum4, "table4 row {sigma} at p={p}");
            }
            // column sums: split-maximal monic sums to (p^2-1)/p^2,
            // sm quartic columns sum to (p^2-1)^2/p^4
            let monic_sum: Rat = CUBIC_SPLITS
                .iter()
                .map(|&s| formula_maximal_split_monic(p, s))
                .sum();
            assert_eq!(monic_sum, formula_maximal_monic(p));
            let quartic_sum: Rat = QUARTIC_SPLITS
                .iter()
                .map(|&t| formula_sm_split_quartic(p, t))
                .sum();
            assert_eq!(quartic_sum, formula_sm_quartic(p));
        }
        // spot checks
        let r = table2_row(5, CubicSplit::S111);
        assert_eq!(r.left, rat(1, 12));
        let r4 = table4_row(7, CubicSplit::S1e3);
        assert_eq!(r4.left, rat(1, 57));
    }

    #[test]
    fn sm_quartic_split_densities_p2() {
        for theta in QUARTIC_SPLITS {
            assert_eq!(
                density_strongly_maximal_quartic(2, Some(theta)).unwrap(),
                formula_sm_split_quartic(2, theta),
                "sm split density mismatch at p=2 {theta}"
            );
        }
    }
}

/// One-pass exhaustive census for monic cubics at p: per splitting type the
/// (split, split-and-maximal) counts over the p^6 tuples mod p^2, plus the
/// total maximal count. Exact rationals against denominators p^3 and p^6.
pub struct MonicCensus {
    pub p: Z,
    pub split: Vec<(CubicSplit, Rat)>,
    pub split_maximal: Vec<(CubicSplit, Rat)>,
    pub maximal: Rat,
}

pub fn monic_census(p: Z) -> Result<MonicCensus, Error> {
    if p > BUDGET_MONIC_CUBIC {
        return Err(Error::BudgetExceeded(p, "monic-cubic"));
    }
    let p2 = p * p;
    let acc = (0..p2)
        .into_par_iter()
        .map(|r| {
            let mut split = [0i128; 5];
            let mut split_max = [0i128; 5];
            for s in 0..p2 {
                for t in 0..p2 {
                    let g = CubicForm::monic(r, s, t);
                    let sigma = splitting_type_cubic(&g, p).expect("monic nonzero");
                    let k = CUBIC_SPLITS.iter().position(|&x| x == sigma).unwrap();
                    split[k] += 1;
                    if is_maximal_cubic(&g, p) {
                        split_max[k] += 1;
                    }
                }
            }
            (split, split_max)
        })
        .reduce(
            || ([0; 5], [0; 5]),
            |mut a, b| {
                for k in 0..5 {
                    a.0[k] += b.0[k];
                    a.1[k] += b.1[k];
                }
                a
            },
        );
    let p6 = zpow(p, 6);
    Ok(MonicCensus {
        p,
        split: CUBIC_SPLITS
            .iter()
            .zip(acc.0)
            .map(|(&s, c)| (s, rat(c, p6)))
            .collect(),
        split_maximal: CUBIC_SPLITS
            .iter()
            .zip(acc.1)
            .map(|(&s, c)| (s, rat(c, p6)))
            .collect(),
        maximal: rat(acc.1.iter().sum(), p6),
    })
}

/// One-pass census for quartics at p: per splitting type the strongly
/// maximal density over the p^10 tuples mod p^2.
pub struct QuarticCensus {
    pub p: Z,
    pub split_strongly_maximal: Vec<(QuarticSplit, Rat)>,
    pub strongly_maximal: Rat,
}

pub fn quartic_census(p: Z) -> Result<QuarticCensus, Error> {
    if p > BUDGET_QUARTIC {
        return Err(Error::BudgetExceeded(p, "quartic"));
    }
    let p2 = p * p;
    let pu = p as usize;
    let classes = pu.pow(5);
    let mut split_table = vec![usize::MAX; classes];
    let mut mult_roots: Vec<Vec<Z>> = vec![Vec::new(); classes];
    for key in 0..classes {
        let co = key_to_tuple(key, pu, 5);
        let f = QuarticForm::new(co[0], co[1], co[2], co[3], co[4]);
        if let Ok(theta) = splitting_type_quartic(&f, p) {
            split_table[key] = QUARTIC_SPLITS.iter().position(|&x| x == theta).unwrap();
        }
        let res = f.resolvent_cubic();
        for r in 0..p {
            if umod(res.eval(r, 1), p) == 0 && umod(3 * r * r + 2 * res.b * r + res.c, p) == 0 {
                mult_roots[key].push(r);
            }
        }
    }
    let counts = (0..p2)
        .into_par_iter()
        .map(|a| {
            let mut local = [0i128; 11];
            for b in 0..p2 {
                for c in 0..p2 {
                    for d in 0..p2 {
                        for e in 0..p2 {
                            let key = (((umod(a, p) as usize * pu + umod(b, p) as usize) * pu
                                + umod(c, p) as usize)
                                * pu
                                + umod(d, p) as usize)
                                * pu
                                + umod(e, p) as usize;
                            let kt = split_table[key];
                            if kt == usize::MAX {
                                continue;
                            }
                            let f = QuarticForm::new(a, b, c, d, e);
                            let res = f.resolvent_cubic();
                            let mut ok = true;
                            for &r in &mult_roots[key] {
                                if umod(res.eval(r, 1), p2) == 0 {
                                    ok = false;
                                    break;
                                }
                            }
                            if ok {
                                local[kt] += 1;
                            }
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || [0; 11],
            |mut a, b| {
                for k in 0..11 {
                    a[k] += b[k];
                }
                a
            },
        );
    let p10 = zpow(p, 10);
    Ok(QuarticCensus {
        p,
        split_strongly_maximal: QUARTIC_SPLITS
            .iter()
            .zip(counts)
            .map(|(&t, c)| (t, rat(c, p10)))
            .collect(),
        strongly_maximal: rat(counts.iter().sum(), p10),
    })
}

/// One-pass census for general binary cubics at p: per-sigma maximal
/// densities over the p^8 tuples mod p^2.
pub struct GeneralCubicCensus {
    pub p: Z,
    pub split_maximal: Vec<(CubicSplit, Rat)>,
    pub maximal: Rat,
}

pub fn general_cubic_census(p: Z) -> Result<GeneralCubicCensus, Error> {
    if p > BUDGET_GENERAL_CUBIC {
        return Err(Error::BudgetExceeded(p, "general-cubic"));
    }
    let p2 = p * p;
    let counts = (0..p2)
        .into_par_iter()
        .map(|a| {
            let mut local = [0i128; 5];
            for b in 0..p2 {
                for c in 0..p2 {
                    for d in 0..p2 {
                        let g = CubicForm::new(a, b, c, d);
                        if !is_maximal_cubic(&g, p) {
                            continue;
                        }
                        if let Ok(sigma) = splitting_type_cubic(&g, p) {
                            let k = CUBIC_SPLITS.iter().position(|&x| x == sigma).unwrap();
                            local[k] += 1;
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || [0; 5],
            |mut a, b| {
                for k in 0..5 {
                    a[k] += b[k];
                }
                a
            },
        );
    let p8 = zpow(p, 8);
    Ok(GeneralCubicCensus {
        p,
        split_maximal: CUBIC_SPLITS
            .iter()
            .zip(counts)
            .map(|(&s, c)| (s, rat(c, p8)))
            .collect(),
        maximal: rat(counts.iter().sum(), p8),
    })
}
