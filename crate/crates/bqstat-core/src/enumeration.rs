//! Streams of eligible invariant pairs, monic and n-leading cubic classes,
//! and complete per-(I, J) quartic class lists.
//!
//! The class search enumerates (a, b, c) over boxes scaled by H^(1/6) and
//! then solves the invariant equations exactly: e is linear in d from the
//! I-equation, which turns the J-equation into an integer quadratic in d.
//! Classes whose every representative has a = 0 (the integer-linear-factor
//! classes) are reached separately through cubic lifts y*g(x, y). Box
//! constants are empirical with a wide margin; every run can certify them
//! by re-running sampled fibers with enlarged boxes.

use crate::forms::{CubicForm, InvariantPair, QuarticForm, RootType};
use crate::local::is_maximal_cubic;
use crate::reduction::canonicalize;
use crate::roots::{is_irreducible_q, root_type};
use crate::zint::{self, Z};
use crate::Error;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscSign {
    Positive,
    Negative,
}

/// Eligible J-residues mod 27 for a given I (empty when I = 2 mod 3).
fn eligible_j_residues(i: Z) -> &'static [Z] {
    match zint::umod(i, 9) {
        0 | 3 | 6 => &[0],
        1 => &[2, 25],
        4 => &[16, 11],
        7 => &[7, 20],
        _ => &[],
    }
}

/// Visit every eligible (I, J) with H(I, J) < X, nonzero discriminant, and
/// the requested discriminant sign, ordered by I ascending then J ascending.
pub fn for_each_eligible_pair(x: Z, sign: DiscSign, visit: &mut impl FnMut(InvariantPair)) {
    assert!(x >= 1);
    let imax = zint::icbrt_floor(x - 1).max(0); // |I|^3 < X
    let jmax = zint::isqrt_floor(4 * x - 1); // J^2 < 4X
    for i in -imax..=imax {
        let i3x4 = 4 * i * i * i;
        let residues = eligible_j_residues(i);
        // merge the residue progressions in ascending J
        let mut heads: Vec<Z> = residues
            .iter()
            .map(|&j0| -jmax + zint::umod(j0 - (-jmax), 27))
            .collect();
        loop {
            let Some(k) = (0..heads.len())
                .filter(|&k| heads[k] <= jmax)
                .min_by_key(|&k| heads[k])
            else {
                break;
            };
            let j = heads[k];
            heads[k] += 27;
            let dn = i3x4 - j * j;
            let keep = match sign {
                DiscSign::Positive => dn > 0,
                DiscSign::Negative => dn < 0,
            };
            if keep {
                visit(InvariantPair::new(i, j));
            }
        }
    }
}

pub fn eligible_pairs_vec(x: Z, sign: DiscSign) -> Vec<InvariantPair> {
    let mut out = Vec::new();
    for_each_eligible_pair(x, sign, &mut |p| out.push(p));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EligibleCounts {
    pub plus: Z,
    pub minus: Z,
    pub zero_disc: Z,
}

/// Count eligible pairs with H < X by discriminant sign (parallel over I).
pub fn count_eligible_pairs(x: Z) -> EligibleCounts {
    assert!(x >= 1);
    let imax = zint::icbrt_floor(x - 1).max(0);
    let jmax = zint::isqrt_floor(4 * x - 1);
    let (plus, minus, zero_disc) = (-imax..=imax)
        .into_par_iter()
        .map(|i| {
            let i3x4 = 4 * i * i * i;
            let mut acc = (0, 0, 0);
            for &j0 in eligible_j_residues(i) {
                let start = -jmax + zint::umod(j0 - (-jmax), 27);
                let mut j = start;
                while j <= jmax {
                    let dn = i3x4 - j * j;
                    if dn > 0 {
                        acc.0 += 1;
                    } else if dn < 0 {
                        acc.1 += 1;
                    } else {
                        acc.2 += 1;
                    }
                    j += 27;
                }
            }
            acc
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    EligibleCounts {
        plus,
        minus,
        zero_disc,
    }
}

/// Number of eligible residue cells in (Z/9) x (Z/27); the census is 9 of 243.
pub fn eligible_census_243() -> usize {
    let mut count = 0;
    for i in 0..9 {
        for j in 0..27 {
            if InvariantPair::new(i, j).is_eligible() {
                count += 1;
            }
        }
    }
    count
}

/// Arithmetic count (no scan) of eligible pairs with H < X, discriminant
/// condition ignored: a lattice-point count over the 9 residue cells.
pub fn eligible_lattice_count(x: Z) -> Z {
    let imax = zint::icbrt_floor(x - 1).max(0);
    let jmax = zint::isqrt_floor(4 * x - 1);
    let mut total = 0;
    for i in -imax..=imax {
        for &j0 in eligible_j_residues(i) {
            // count j in [-jmax, jmax] with j = j0 mod 27
            let lo = -jmax + zint::umod(j0 - (-jmax), 27);
            if lo <= jmax {
                total += (jmax - lo) / 27 + 1;
            }
        }
    }
    total
}

/// The unique reduced monic cubic with invariants (I, J): r is pinned by
/// J mod 3, then s by I, then t by J.
pub fn monic_cubic_for(pair: InvariantPair) -> Result<CubicForm, Error> {
    if !pair.is_eligible() {
        return Err(Error::NotEligible(pair.i, pair.j));
    }
    let jm = zint::umod(pair.j, 3);
    let r = if jm == 2 { -1 } else { jm };
    let snum = r * r - pair.i;
    assert!(snum % 3 == 0, "eligibility must force 3 | r^2 - I");
    let s = snum / 3;
    let tnum = -2 * r * r * r + 9 * r * s - pair.j;
    assert!(tnum % 27 == 0, "eligibility must force 27 | -2r^3 + 9rs - J");
    let t = tnum / 27;
    let g = CubicForm::monic(r, s, t);
    debug_assert_eq!(g.invariants(), (pair.i, pair.j));
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct MonicClass {
    pub pair: InvariantPair,
    pub cubic: CubicForm,
    pub irreducible: bool,
}

/// One reduced monic cubic per eligible (I, J) with the requested
/// discriminant sign, nonzero discriminant, H < X.
pub fn monic_cubic_classes(x: Z, sign: DiscSign) -> Vec<MonicClass> {
    let mut out = Vec::new();
    for_each_eligible_pair(x, sign, &mut |pair| {
        let cubic = monic_cubic_for(pair).expect("eligible by construction");
        let irreducible = cubic.is_irreducible();
        out.push(MonicClass {
            pair,
            cubic,
            irreducible,
        });
    });
    out
}

/// Box constants for the class search. Bounds scale as H^(1/6) for a, b, c;
/// d and e are solved, not scanned. The defaults carry at least a 2x margin
/// over the maxima observed on oracle-validated fibers; `certify` re-runs a
/// 1% sample of fibers with 3/2-enlarged boxes and insists on identical
/// class lists.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub ca: Z,
    pub cb: Z,
    pub cc: Z,
    /// Bound scale for the leading coefficient of cubic lifts.
    pub clift: Z,
    pub certify: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            ca: 2,
            cb: 4,
            cc: 5,
            clift: 2,
            certify: true,
        }
    }
}

impl SearchConfig {
    pub fn enlarged(&self) -> SearchConfig {
        SearchConfig {
            ca: (3 * self.ca + 1) / 2,
            cb: (3 * self.cb + 1) / 2,
            cc: (3 * self.cc + 1) / 2,
            clift: (3 * self.clift + 1) / 2,
            certify: false,
        }
    }
}

/// A GL2(Z)-class with fixed invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticClass {
    /// Canonical representative.
    pub rep: QuarticForm,
    pub irreducible: bool,
    pub root_type: RootType,
}

/// The complete list of GL2(Z)-classes of integral quartics with the given
/// eligible invariants (nonzero discriminant), canonical representatives
/// sorted; reducible classes flagged.
pub fn classes_with_invariants(
    pair: InvariantPair,
    cfg: &SearchConfig,
) -> Result<Vec<QuarticClass>, Error> {
    if !pair.is_eligible() {
        return Err(Error::NotEligible(pair.i, pair.j));
    }
    if pair.disc_numerator() == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    let mut canons: HashMap<QuarticForm, ()> = HashMap::new();
    let r6 = zint::iroot6_floor(pair.height4() / 4) + 1;
    let amax = cfg.ca * r6 + 2;
    let bmax = cfg.cb * r6 + 2;
    let cmax = cfg.cc * r6 + 2;
    let (i, j) = (pair.i, pair.j);
    for aa in 1..=amax {
        for a in [aa, -aa] {
            // the x -> -x mirror fixes a and c and flips b, d: scan b >= 0
            for b in 0..=bmax {
                for c in -cmax..=cmax {
                    // 12a e = I - c^2 + 3b d;
                    // 12a J = (72ac - 27b^2)(I - c^2 + 3bd) + 108abcd - 324 a^2 d^2 - 24 a c^3
                    let qa = 324 * a * a;
                    let qb = -(324 * a * b * c - 81 * b * b * b);
                    let qc = 12 * a * j + 24 * a * c * c * c
                        - (72 * a * c - 27 * b * b) * (i - c * c);
                    // qa d^2 + qb d + qc = 0 (sign flipped from the display above)
                    let disc = qb * qb - 4 * qa * qc;
                    if disc < 0 {
                        continue;
                    }
                    let Some(s) = zint::isqrt_exact(disc) else {
                        continue;
                    };
                    for sr in [s, -s] {
                        let num = -qb + sr;
                        if num % (2 * qa) != 0 {
                            continue;
                        }
                        let d = num / (2 * qa);
                        let enum_ = i - c * c + 3 * b * d;
                        if enum_ % (12 * a) != 0 {
                            continue;
                        }
                        let e = enum_ / (12 * a);
                        let f = QuarticForm::new(a, b, c, d, e);
                        if f.invariants() != pair {
                            continue;
                        }
                        let (canon, _) = canonicalize(&f);
                        canons.entry(canon).or_insert(());
                        if sr == 0 {
                            break;
                        }
                    }
                }
            }
        }
    }
    // integer-linear-factor classes via cubic lifts y * g(x, y)
    let liftmax = cfg.clift * r6 + 2;
    for lb in 1..=liftmax {
        for c0 in 0..(3 * lb) {
            // P = c0^2 - 3 lb d0 = I; Q = -2 c0^3 + 9 lb c0 d0 - 27 lb^2 e0 = J
            let dnum = c0 * c0 - i;
            if dnum % (3 * lb) != 0 {
                continue;
            }
            let d0 = dnum / (3 * lb);
            let enum_ = -2 * c0 * c0 * c0 + 9 * lb * c0 * d0 - j;
            if enum_ % (27 * lb * lb) != 0 {
                continue;
            }
            let e0 = enum_ / (27 * lb * lb);
            let g = CubicForm::new(lb, c0, d0, e0);
            debug_assert_eq!(g.invariants(), (i, j));
            let f = g.lift_to_quartic();
            let (canon, _) = canonicalize(&f);
            canons.entry(canon).or_insert(());
        }
    }
    let mut out: Vec<QuarticClass> = canons
        .into_keys()
        .map(|rep| {
            let irreducible = is_irreducible_q(&rep);
            let rt = root_type(&rep).expect("nonzero discriminant");
            QuarticClass {
                rep,
                irreducible,
                root_type: rt,
            }
        })
        .collect();
    out.sort_by_key(|c| c.rep);
    Ok(out)
}

/// Maximality of the fiber: the monic cubic ring of (I, J) is maximal at
/// every prime (automatic wherever p^2 does not divide the discriminant).
pub fn fiber_is_maximal(pair: InvariantPair) -> Result<bool, Error> {
    let g = monic_cubic_for(pair)?;
    let disc = pair.disc();
    if disc == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    for (p, v) in zint::factor(disc) {
        if v >= 2 && !is_maximal_cubic(&g, p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Root-type filter for class counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeFilter {
    All,
    Only(RootType),
    /// Both definite types (i = 2).
    Definite,
}

impl TypeFilter {
    fn accepts(&self, rt: RootType) -> bool {
        match self {
            TypeFilter::All => true,
            TypeFilter::Only(t) => rt == *t,
            TypeFilter::Definite => {
                matches!(rt, RootType::NoneRealPositive | RootType::NoneRealNegative)
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ClassCounts {
    /// Irreducible classes by type: [FourReal, TwoReal, 2+, 2-].
    pub by_type: [Z; 4],
    /// Stabilizer-weighted counts (weight 1/r for stabilizer order 2r).
    pub weighted: [crate::zint::Rat; 4],
    pub fibers: usize,
    pub reducible_classes: Z,
}

pub fn type_index(rt: RootType) -> usize {
    match rt {
        RootType::FourReal => 0,
        RootType::TwoReal => 1,
        RootType::NoneRealPositive => 2,
        RootType::NoneRealNegative => 3,
    }
}

/// Count irreducible GL2(Z)-classes with H < X, fiber by fiber. With
/// `strongly_maximal` only maximal fibers contribute (strong maximality of
/// a quartic is a property of its fiber: the resolvent is the fiber cubic).
/// With `weighted`, classes are weighted by 1 / (stabilizer order / 2).
pub fn count_quartic_classes(
    x: Z,
    filter: TypeFilter,
    strongly_maximal: bool,
    weighted: bool,
    cfg: &SearchConfig,
) -> ClassCounts {
    let mut fibers = eligible_pairs_vec(x, DiscSign::Positive);
    fibers.extend(eligible_pairs_vec(x, DiscSign::Negative));
    count_classes_over_fibers(&fibers, filter, strongly_maximal, weighted, cfg)
}

pub fn count_classes_over_fibers(
    fibers: &[InvariantPair],
    filter: TypeFilter,
    strongly_maximal: bool,
    weighted: bool,
    cfg: &SearchConfig,
) -> ClassCounts {
    let zero = crate::zint::rat(0, 1);
    fibers
        .par_iter()
        .map(|&pair| {
            let mut counts = ClassCounts {
                weighted: [zero; 4],
                ..Default::default()
            };
            if strongly_maximal && !fiber_is_maximal(pair).unwrap_or(false) {
                return counts;
            }
            let classes = fiber_classes_certified(pair, cfg);
            counts.fibers = 1;
            for cl in &classes {
                if !cl.irreducible {
                    counts.reducible_classes += 1;
                    continue;
                }
                if !filter.accepts(cl.root_type) {
                    continue;
                }
                let idx = type_index(cl.root_type);
                counts.by_type[idx] += 1;
                if weighted {
                    let order = crate::reduction::stabilizer_order_z(&cl.rep) as Z;
                    counts.weighted[idx] = counts.weighted[idx] + crate::zint::rat(2, order);
                }
            }
            counts
        })
        .reduce(
            || ClassCounts {
                weighted: [zero; 4],
                ..Default::default()
            },
            |mut a, b| {
                for k in 0..4 {
                    a.by_type[k] += b.by_type[k];
                    a.weighted[k] = a.weighted[k] + b.weighted[k];
                }
                a.fibers += b.fibers;
                a.reducible_classes += b.reducible_classes;
                a
            },
        )
}

/// Class list with the per-run box certification: a deterministic 1% sample
/// of fibers is recomputed with 3/2-enlarged boxes and must agree exactly.
pub fn fiber_classes_certified(pair: InvariantPair, cfg: &SearchConfig) -> Vec<QuarticClass> {
    let classes = classes_with_invariants(pair, cfg).expect("eligible nondegenerate fiber");
    if cfg.certify && fiber_sampled(pair) {
        let big = classes_with_invariants(pair, &cfg.enlarged()).expect("enlarged rerun");
        assert_eq!(
            classes, big,
            "box certification failed at {pair}: enlarge the search constants"
        );
    }
    classes
}

/// Deterministic 1% fiber sample for certification.
fn fiber_sampled(pair: InvariantPair) -> bool {
    let mut h = (pair.i as u64).wrapping_mul(0x9e3779b97f4a7c15);
    h ^= (pair.j as u64).wrapping_mul(0xbf58476d1ce4e5b9);
    h ^= h >> 31;
    h.wrapping_mul(0x94d049bb133111eb) % 100 == 0
}

/// Counts of n-monogenized cubic classes: reduced forms in U_{Z,n} over
/// 1 <= n < X^delta with H(C, x) < X, irreducible, split by disc sign.
/// delta is the exact rational delta_num/delta_den in (0, 1/4]. The height
/// of the class of g in U_{Z,n} is max(|P|^3, Q^2/4)/n^2 with the a-cleared
/// pair (P, Q), so the bound reads H4(P, Q) < 4 n^2 X.
pub fn n_monogenized_counts(x: Z, delta_num: u32, delta_den: u32) -> Result<(Z, Z), Error> {
    if delta_num == 0 || 4 * delta_num > delta_den {
        return Err(Error::BadDelta);
    }
    assert!(x >= 1);
    let in_range = |n: Z| -> bool {
        // n < X^(num/den)  <=>  n^den < X^num
        match n.checked_pow(delta_den) {
            Some(nd) => match x.checked_pow(delta_num) {
                Some(xn) => nd < xn,
                None => true,
            },
            None => false,
        }
    };
    let mut ns = Vec::new();
    let mut n = 1;
    while in_range(n) {
        ns.push(n);
        n += 1;
    }
    let (plus, minus) = ns
        .par_iter()
        .map(|&n| {
            let mut acc = (0_i128, 0_i128);
            let h4bound = 4 * n * n * x;
            // |P| <= pmax, |Q| <= qmax
            let pmax = zint::icbrt_floor((h4bound - 1) / 4);
            let qmax = zint::isqrt_floor(h4bound - 1);
            for b in 0..(3 * n) {
                // P = b^2 - 3nc in [-pmax, pmax]
                let clo = (b * b - pmax).div_euclid(3 * n);
                let chi = (b * b + pmax).div_euclid(3 * n) + 1;
                for c in clo..=chi {
                    let pp = b * b - 3 * n * c;
                    if pp.abs() > pmax {
                        continue;
                    }
                    // Q = -2b^3 + 9nbc - 27 n^2 d in [-qmax, qmax]
                    let base = -2 * b * b * b + 9 * n * b * c;
                    let dlo = (base - qmax).div_euclid(27 * n * n);
                    let dhi = (base + qmax).div_euclid(27 * n * n) + 1;
                    for d in dlo..=dhi {
                        let qq = base - 27 * n * n * d;
                        if qq.abs() > qmax {
                            continue;
                        }
                        let h4 = zint::height4_wide(pp, qq);
                        if h4 >= h4bound {
                            continue;
                        }
                        let dn = zint::disc_numerator_wide(pp, qq);
                        if dn == 0 {
                            continue;
                        }
                        let g = CubicForm::new(n, b, c, d);
                        if !g.is_irreducible() {
                            continue;
                        }
                        if dn > 0 {
                            acc.0 += 1;
                        } else {
                            acc.1 += 1;
                        }
                    }
                }
            }
            acc
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((plus, minus))
}

/// Congruence predicates on monic cubic classes (conditions are evaluated
/// on the reduced representative from the (I, J) recipe).
#[derive(Debug, Clone)]
pub enum MonicPredicate {
    True,
    /// coefficient index (0 = r, 1 = s, 2 = t) = residue mod modulus
    CoeffResidue { index: usize, modulus: Z, residue: Z },
    MaximalAt(Z),
    SplitAt(Z, crate::local::CubicSplit),
}

impl MonicPredicate {
    pub fn eval(&self, g: &CubicForm) -> bool {
        match self {
            MonicPredicate::True => true,
            MonicPredicate::CoeffResidue {
                index,
                modulus,
                residue,
            } => {
                let c = [g.b, g.c, g.d][*index];
                zint::umod(c, *modulus) == zint::umod(*residue, *modulus)
            }
            MonicPredicate::MaximalAt(p) => is_maximal_cubic(g, *p),
            MonicPredicate::SplitAt(p, sigma) => {
                crate::local::splitting_type_cubic(g, *p).ok() == Some(*sigma)
            }
        }
    }
}

/// Filtered count of irreducible monic cubic classes with H < X (both disc
/// signs): (matching, total).
pub fn congruence_count(x: Z, pred: &MonicPredicate) -> (Z, Z) {
    let mut matching = 0;
    let mut total = 0;
    for sign in [DiscSign::Positive, DiscSign::Negative] {
        for_each_eligible_pair(x, sign, &mut |pair| {
            let g = monic_cubic_for(pair).expect("eligible");
            if !g.is_irreducible() {
                return;
            }
            total += 1;
            if pred.eval(&g) {
                matching += 1;
            }
        });
    }
    (matching, total)
}

/// One rung of the decay diagnostics ladder.
#[derive(Debug, Clone)]
pub struct DecayRow {
    pub x: Z,
    /// Reducible fraction among monic cubic classes with H < X.
    pub monic_reducible: (Z, Z),
    /// Reducible fraction among integral quartic forms sampled from the
    /// coefficient box |coeff| <= X^(1/6) (seeded, deterministic).
    pub quartic_box_reducible: (Z, Z),
    /// Fraction of irreducible classes with H < X whose GL2(Z)-stabilizer
    /// exceeds {+-1}.
    pub big_stabilizer: (Z, Z),
}

pub fn decay_diagnostics(ladder: &[Z], seed: u64, cfg: &SearchConfig) -> Vec<DecayRow> {
    ladder
        .iter()
        .map(|&x| {
            let mut red = 0;
            let mut tot = 0;
            for sign in [DiscSign::Positive, DiscSign::Negative] {
                for_each_eligible_pair(x, sign, &mut |pair| {
                    let g = monic_cubic_for(pair).expect("eligible");
                    tot += 1;
                    if !g.is_irreducible() {
                        red += 1;
                    }
                });
            }
            let y = zint::iroot6_floor(x) + 1;
            let samples = 20_000;
            let mut rng = SplitMix64::new(seed ^ (x as u64));
            let mut qred = 0;
            let mut qtot = 0;
            while qtot < samples {
                let f = QuarticForm::new(
                    rng.range(-y, y),
                    rng.range(-y, y),
                    rng.range(-y, y),
                    rng.range(-y, y),
                    rng.range(-y, y),
                );
                if f.is_zero() || f.invariants().disc_numerator() == 0 {
                    continue;
                }
                qtot += 1;
                if !is_irreducible_q(&f) {
                    qred += 1;
                }
            }
            let fibers: Vec<InvariantPair> = {
                let mut v = eligible_pairs_vec(x, DiscSign::Positive);
                v.extend(eligible_pairs_vec(x, DiscSign::Negative));
                v
            };
            let (bigc, totc) = fibers
                .par_iter()
                .map(|&pair| {
                    let mut acc = (0, 0);
                    for cl in fiber_classes_certified(pair, cfg) {
                        if cl.irreducible {
                            acc.1 += 1;
                            if crate::reduction::stabilizer_order_z(&cl.rep) > 2 {
                                acc.0 += 1;
                            }
                        }
                    }
                    acc
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            DecayRow {
                x,
                monic_reducible: (red, tot),
                quartic_box_reducible: (qred, qtot),
                big_stabilizer: (bigc, totc),
            }
        })
        .collect()
}

/// Tiny deterministic generator for the sampled diagnostics.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn range(&mut self, lo: Z, hi: Z) -> Z {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as Z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::brute_force_orbits;

    #[test]
    fn eligible_pairs_at_30() {
        let plus = eligible_pairs_vec(30, DiscSign::Positive);
        assert_eq!(plus, vec![InvariantPair::new(3, 0)]);
        let minus = eligible_pairs_vec(30, DiscSign::Negative);
        assert_eq!(
            minus,
            vec![
                InvariantPair::new(-3, 0),
                InvariantPair::new(-2, -7),
                InvariantPair::new(-2, 7),
            ]
        );
        let counts = count_eligible_pairs(30);
        assert_eq!(counts.plus, 1);
        assert_eq!(counts.minus, 3);
        // (0, 0) and (1, +-2) are the eligible zero-discriminant pairs below 30
        assert_eq!(counts.zero_disc, 3);
        // partition check against the arithmetic lattice count
        assert_eq!(
            counts.plus + counts.minus + counts.zero_disc,
            eligible_lattice_count(30)
        );
    }

    #[test]
    fn census_is_9_of_243() {
        assert_eq!(eligible_census_243(), 9);
    }

    #[test]
    fn lattice_count_matches_scan_on_ladder() {
        for x in [100, 1000, 12345] {
            let c = count_eligible_pairs(x);
            assert_eq!(c.plus + c.minus + c.zero_disc, eligible_lattice_count(x));
        }
    }

    #[test]
    fn monic_reconstruction_examples() {
        let g = monic_cubic_for(InvariantPair::new(3, -27)).unwrap();
        assert_eq!(g, CubicForm::monic(0, -1, 1));
        let g = monic_cubic_for(InvariantPair::new(7, 7)).unwrap();
        assert_eq!(g, CubicForm::monic(1, -2, -1));
        assert!(matches!(
            monic_cubic_for(InvariantPair::new(2, 5)),
            Err(Error::NotEligible(2, 5))
        ));
    }

    #[test]
    fn monic_classes_biject_with_eligible_pairs() {
        for x in [30, 500, 20_000] {
            let plus = monic_cubic_classes(x, DiscSign::Positive);
            assert_eq!(plus.len(), eligible_pairs_vec(x, DiscSign::Positive).len());
            let minus = monic_cubic_classes(x, DiscSign::Negative);
            assert_eq!(
                minus.len(),
                eligible_pairs_vec(x, DiscSign::Negative).len()
            );
        }
    }

    #[test]
    fn small_fibers_have_single_reducible_class() {
        let cfg = SearchConfig::default();
        // (3, -27): exactly one class, the reducible monic-cubic lift
        let classes = classes_with_invariants(InvariantPair::new(3, -27), &cfg).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(!classes[0].irreducible);
        // (7, 7): one reducible class (cyclic field of discriminant 49)
        let classes = classes_with_invariants(InvariantPair::new(7, 7), &cfg).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(!classes[0].irreducible);
        // every returned class carries the input invariants
        for cl in &classes {
            assert_eq!(cl.rep.invariants(), InvariantPair::new(7, 7));
        }
    }

    #[test]
    fn class_lists_match_box_oracle_below_30() {
        let cfg = SearchConfig::default();
        let oracle = brute_force_orbits(3);
        let mut fibers = eligible_pairs_vec(30, DiscSign::Positive);
        fibers.extend(eligible_pairs_vec(30, DiscSign::Negative));
        for pair in fibers {
            let classes = classes_with_invariants(pair, &cfg).unwrap();
            // oracle orbits in this fiber
            let oracle_orbits: Vec<&crate::reduction::BoxOrbit> = oracle
                .orbits
                .iter()
                .filter(|o| o.members[0].invariants() == pair)
                .collect();
            assert_eq!(
                classes.len(),
                oracle_orbits.len(),
                "class count mismatch at {pair}"
            );
            // each oracle orbit matches exactly one canonical rep
            for orb in oracle_orbits {
                let (canon, _) = canonicalize(&orb.members[0]);
                assert!(
                    classes.iter().any(|c| c.rep == canon),
                    "oracle orbit missing from class list at {pair}"
                );
            }
        }
    }

    #[test]
    fn nmono_delta_zero_limit_is_monic_count() {
        // X^delta < 2 keeps only n = 1, which is monic counting
        let x = 5000;
        let (n0, n1) = n_monogenized_counts(x, 1, 100).unwrap();
        let monic_plus = monic_cubic_classes(x, DiscSign::Positive)
            .iter()
            .filter(|m| m.irreducible)
            .count() as Z;
        let monic_minus = monic_cubic_classes(x, DiscSign::Negative)
            .iter()
            .filter(|m| m.irreducible)
            .count() as Z;
        assert_eq!(n0, monic_plus);
        assert_eq!(n1, monic_minus);
        assert!(matches!(
            n_monogenized_counts(x, 1, 2),
            Err(Error::BadDelta)
        ));
    }

    #[test]
    fn congruence_trivial_condition() {
        let (m, t) = congruence_count(2000, &MonicPredicate::True);
        assert_eq!(m, t);
        let (m2, t2) = congruence_count(
            2000,
            &MonicPredicate::CoeffResidue {
                index: 2,
                modulus: 2,
                residue: 0,
            },
        );
        assert_eq!(t2, t);
        // t-parity splits roughly in half
        assert!((2 * m2 - t2).abs() < t2 / 4, "t parity ratio off: {m2}/{t2}");
    }

    #[test]
    fn maximal_fiber_examples() {
        // disc -23 squarefree: maximal
        assert!(fiber_is_maximal(InvariantPair::new(3, -27)).unwrap());
        // (3, 0): cubic X^3 - XY^2, disc 4, nonmaximal at 2
        assert!(!fiber_is_maximal(InvariantPair::new(3, 0)).unwrap());
    }
}
