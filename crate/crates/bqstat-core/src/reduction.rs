//! Canonical representatives and equivalence testing for GL2(Z)-orbits of
//! quartics and translation orbits of cubics, plus the brute-force orbit
//! oracle used to validate everything at small coefficients.
//!
//! The quartic canon is a norm canon: steepest descent on the coefficient
//! norm under the generators, then a breadth-first closure of the orbit
//! region within `PLATEAU_MARGIN` times the best norm seen, and finally the
//! lexicographically least tuple among the minimum-norm forms found. The
//! closure margin makes the canon stable against local minima; the oracle
//! tests and the doubling self-check keep it honest.

use crate::forms::{CubicForm, QuarticForm, UnimodularMap};
use crate::roots::is_irreducible_q;
use crate::zint::{umod, Z};
use crate::Error;
use once_cell::sync::Lazy;
use std::collections::{HashMap, HashSet, VecDeque};

/// Norm-ball expansion factor for the plateau closure.
const PLATEAU_MARGIN: Z = 16;

/// Entry bound for the stabilizer search around the reduced representative.
const STAB_ENTRY_BOUND: Z = 64;

/// Coefficient expansion factor for the box oracle's BFS pruning.
pub const ORACLE_PRUNE_FACTOR: Z = 16;

/// Unique translate of a monic cubic with middle coefficient r in {-1, 0, 1}.
pub fn reduce_monic_cubic(g: &CubicForm) -> CubicForm {
    assert_eq!(g.a, 1, "reduce_monic_cubic needs a monic form");
    // translation by u sends r to r + 3u; balanced residue picks u
    let r = g.b;
    let target = r - 3 * ((r + 1).div_euclid(3));
    let u = (target - r) / 3;
    g.translated(u)
}

/// Unique translate of a leading-coefficient-n cubic with b in [0, 3n).
pub fn reduce_cubic_n(g: &CubicForm) -> CubicForm {
    assert!(g.a > 0, "reduce_cubic_n needs positive leading coefficient");
    let m = 3 * g.a;
    let b = umod(g.b, m);
    let u = (b - g.b) / m;
    g.translated(u)
}

/// Canonical representative of the GL2(Z)-orbit of f, with a witness gamma
/// satisfying gamma . f = canon. Demands a nondegenerate irreducible input;
/// the crate-internal [`canonicalize`] is the same algorithm without the
/// reducibility guard (class enumeration needs canons for reducible orbits
/// too, where termination follows from the nonzero discriminant alone).
pub fn reduce_quartic(f: &QuarticForm) -> Result<(QuarticForm, UnimodularMap), Error> {
    if f.invariants().disc_numerator() == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    if !is_irreducible_q(f) {
        return Err(Error::Reducible);
    }
    Ok(canonicalize(f))
}

/// Norm canon without the irreducibility guard (class enumeration and
/// fusion need canons for reducible orbits too); requires disc != 0 for
/// termination.
pub fn canonicalize(f: &QuarticForm) -> (QuarticForm, UnimodularMap) {
    canonicalize_margin(f, PLATEAU_MARGIN)
}

pub(crate) fn canonicalize_margin(f: &QuarticForm, margin: Z) -> (QuarticForm, UnimodularMap) {
    debug_assert!(f.invariants().disc_numerator() != 0);
    let (start, start_w) = descend(f);
    // Plateau closure: BFS the orbit region with norm <= margin * best.
    let mut best_norm = start.norm2();
    let mut visited: HashMap<QuarticForm, UnimodularMap> = HashMap::new();
    visited.insert(start, start_w);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    let gens = [
        UnimodularMap::shear(1),
        UnimodularMap::shear(-1),
        UnimodularMap::swap(),
        UnimodularMap::flip(),
    ];
    while let Some(x) = queue.pop_front() {
        if x.norm2() > margin * best_norm {
            continue;
        }
        let wx = visited[&x];
        for g in &gens {
            let y = g.apply(&x);
            if y.norm2() > margin * best_norm {
                continue;
            }
            if !visited.contains_key(&y) {
                best_norm = best_norm.min(y.norm2());
                visited.insert(y, g.compose(&wx));
                queue.push_back(y);
            }
        }
    }
    let canon = visited
        .keys()
        .filter(|x| x.norm2() == best_norm)
        .min()
        .copied()
        .expect("plateau set is nonempty");
    let witness = visited[&canon];
    debug_assert_eq!(witness.apply(f), canon);
    (canon, witness)
}

/// Steepest descent on the coefficient norm under shears, swap, and flip.
fn descend(f: &QuarticForm) -> (QuarticForm, UnimodularMap) {
    let mut x = *f;
    let mut w = UnimodularMap::identity();
    loop {
        let mut improved = false;
        // line search over translations in each direction
        for dir in [1, -1] {
            loop {
                let y = x.translated(dir);
                if y.norm2() < x.norm2() {
                    x = y;
                    w = UnimodularMap::shear(dir).compose(&w);
                    improved = true;
                } else {
                    break;
                }
            }
        }
        for g in [UnimodularMap::swap(), UnimodularMap::flip()] {
            let y = g.apply(&x);
            if y.norm2() < x.norm2() {
                x = y;
                w = g.compose(&w);
                improved = true;
            }
        }
        if !improved {
            return (x, w);
        }
    }
}

/// Witness gamma with gamma . f1 = f2, or None. Invariant mismatch
/// short-circuits; otherwise reduce and compare.
pub fn equivalent_quartics(f1: &QuarticForm, f2: &QuarticForm) -> Option<UnimodularMap> {
    if f1.invariants() != f2.invariants() {
        return None;
    }
    if f1.invariants().disc_numerator() == 0 {
        panic!("equivalence testing needs nonzero discriminant");
    }
    let (c1, w1) = canonicalize(f1);
    let (c2, w2) = canonicalize(f2);
    if c1 != c2 {
        return None;
    }
    let witness = w2.inverse().compose(&w1);
    debug_assert_eq!(witness.apply(f1), *f2);
    Some(witness)
}

/// Cross-validation mode: breadth-first search over generator words of
/// length at most `max_len`, with no reliance on the canon.
pub fn equivalent_quartics_bfs(
    f1: &QuarticForm,
    f2: &QuarticForm,
    max_len: usize,
) -> Option<UnimodularMap> {
    if f1 == f2 {
        return Some(UnimodularMap::identity());
    }
    let gens = [
        UnimodularMap::shear(1),
        UnimodularMap::shear(-1),
        UnimodularMap::swap(),
        UnimodularMap::flip(),
    ];
    let mut seen = HashSet::new();
    let mut frontier = vec![(*f1, UnimodularMap::identity())];
    seen.insert(*f1);
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (x, w) in frontier {
            for g in &gens {
                let y = g.apply(&x);
                if seen.insert(y) {
                    let wy = g.compose(&w);
                    if y == *f2 {
                        return Some(wy);
                    }
                    next.push((y, wy));
                }
            }
        }
        frontier = next;
    }
    None
}

/// Candidates grouped by first row (p, q): the leading coefficient of the
/// transformed form depends on the first row alone, so a whole group is
/// rejected with one evaluation.
static STAB_CANDIDATES: Lazy<Vec<((Z, Z), Vec<(Z, Z)>)>> = Lazy::new(|| {
    let e = STAB_ENTRY_BOUND;
    let mut groups: HashMap<(Z, Z), Vec<(Z, Z)>> = HashMap::new();
    for p in -e..=e {
        for q in -e..=e {
            for r in -e..=e {
                // p s - q r = +-1
                for target in [1i128, -1] {
                    let num = target + q * r;
                    if p != 0 {
                        if num % p == 0 {
                            let s = num / p;
                            if s.abs() <= e {
                                groups.entry((p, q)).or_default().push((r, s));
                            }
                        }
                    } else if q * r == -target {
                        // p = 0: s is free
                        for s in -e..=e {
                            groups.entry((0, q)).or_default().push((r, s));
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<((Z, Z), Vec<(Z, Z)>)> = groups.into_iter().collect();
    for (_, v) in out.iter_mut() {
        v.sort_unstable();
        v.dedup();
    }
    out.sort_unstable();
    out
});

/// Order of the GL2(Z)-stabilizer of f (always even: -id acts trivially).
/// Searches unimodular matrices with bounded entries around the reduced
/// representative; the real-stabilizer ceiling (8 for four or zero real
/// roots, 4 for two) is asserted on the result.
pub fn stabilizer_order_z(f: &QuarticForm) -> usize {
    let (canon, _) = canonicalize(f);
    let mut order = 0;
    for ((p, q), tails) in STAB_CANDIDATES.iter() {
        // the transformed leading coefficient is f(p, q)
        if canon.eval(*p, *q) != canon.a {
            continue;
        }
        for &(r, s) in tails {
            let g = UnimodularMap::new([[*p, *q], [r, s]]);
            if g.apply(&canon) == canon {
                order += 1;
            }
        }
    }
    assert!(order % 2 == 0, "stabilizer must contain +-id");
    let dn = f.invariants().disc_numerator();
    let ceiling = if dn < 0 { 4 } else { 8 };
    assert!(
        ceiling % order == 0,
        "stabilizer order {order} exceeds the real ceiling {ceiling}"
    );
    order
}

/// One orbit of the box oracle.
#[derive(Debug, Clone)]
pub struct BoxOrbit {
    /// In-box members, sorted; the first is the orbit label.
    pub members: Vec<QuarticForm>,
    pub irreducible: bool,
}

/// Orbit partition of all forms with |coefficients| <= box_bound,
/// nonzero discriminant, computed by generator closure with coefficient
/// pruning at `prune_factor * box_bound`.
pub struct BoxOrbits {
    pub box_bound: Z,
    pub orbits: Vec<BoxOrbit>,
    index: HashMap<QuarticForm, usize>,
}

impl BoxOrbits {
    pub fn orbit_of(&self, f: &QuarticForm) -> Option<usize> {
        self.index.get(f).copied()
    }
}

pub fn brute_force_orbits(box_bound: Z) -> BoxOrbits {
    brute_force_orbits_pruned(box_bound, ORACLE_PRUNE_FACTOR)
}

pub fn brute_force_orbits_pruned(box_bound: Z, prune_factor: Z) -> BoxOrbits {
    assert!(box_bound >= 1 && prune_factor >= 2);
    let cap = prune_factor * box_bound;
    let in_box = |f: &QuarticForm| f.coeffs().iter().all(|c| c.abs() <= box_bound);
    let in_cap = |f: &QuarticForm| f.coeffs().iter().all(|c| c.abs() <= cap);
    let gens = [
        UnimodularMap::swap(),
        UnimodularMap::shear(1),
        UnimodularMap::flip(),
    ];
    let mut assigned: HashSet<QuarticForm> = HashSet::new();
    let mut orbits = Vec::new();
    let mut index = HashMap::new();
    let b = box_bound;
    for a in -b..=b {
        for bc in -b..=b {
            for c in -b..=b {
                for d in -b..=b {
                    for e in -b..=b {
                        let f = QuarticForm::new(a, bc, c, d, e);
                        if assigned.contains(&f) || f.invariants().disc_numerator() == 0 {
                            continue;
                        }
                        // closure from f within the cap
                        let mut members = Vec::new();
                        let mut seen = HashSet::new();
                        let mut queue = VecDeque::new();
                        seen.insert(f);
                        queue.push_back(f);
                        while let Some(x) = queue.pop_front() {
                            if in_box(&x) {
                                members.push(x);
                            }
                            for g in &gens {
                                let y = g.apply(&x);
                                if in_cap(&y) && seen.insert(y) {
                                    queue.push_back(y);
                                }
                            }
                        }
                        members.sort();
                        let id = orbits.len();
                        for m in &members {
                            assigned.insert(*m);
                            index.insert(*m, id);
                        }
                        let irreducible = is_irreducible_q(&f);
                        orbits.push(BoxOrbit {
                            members,
                            irreducible,
                        });
                    }
                }
            }
        }
    }
    BoxOrbits {
        box_bound,
        orbits,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::InvariantPair;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f(a: Z, b: Z, c: Z, d: Z, e: Z) -> QuarticForm {
        QuarticForm::new(a, b, c, d, e)
    }

    fn random_word(rng: &mut StdRng, len: usize) -> UnimodularMap {
        let mut w = UnimodularMap::identity();
        for _ in 0..len {
            let g = match rng.gen_range(0..4) {
                0 => UnimodularMap::swap(),
                1 => UnimodularMap::shear(1),
                2 => UnimodularMap::shear(-1),
                _ => UnimodularMap::flip(),
            };
            w = g.compose(&w);
        }
        w
    }

    #[test]
    fn monic_cubic_reduction() {
        // X^3 + 4X^2Y -> X^3 + X^2Y - 5XY^2 + 3Y^3 via u = -1
        let g = CubicForm::monic(4, 0, 0);
        let r = reduce_monic_cubic(&g);
        assert_eq!(r, CubicForm::monic(1, -5, 3));
        assert_eq!(r.invariants(), g.invariants());
        // fixed point
        let h = CubicForm::monic(0, -1, 0);
        assert_eq!(reduce_monic_cubic(&h), h);
        // idempotent on random forms
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let g = CubicForm::monic(
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
                rng.gen_range(-30..30),
            );
            let r = reduce_monic_cubic(&g);
            assert!(r.b >= -1 && r.b <= 1);
            assert_eq!(reduce_monic_cubic(&r), r);
            assert_eq!(r.invariants(), g.invariants());
        }
    }

    #[test]
    fn cubic_n_reduction() {
        let g = CubicForm::new(2, 7, 0, 0);
        let r = reduce_cubic_n(&g);
        assert_eq!(r, CubicForm::new(2, 1, -8, 5));
        assert_eq!(r.invariants(), (49, -686));
        // already reduced
        assert_eq!(reduce_cubic_n(&r), r);
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..50 {
            let g = CubicForm::new(
                rng.gen_range(1..6),
                rng.gen_range(-40..40),
                rng.gen_range(-20..20),
                rng.gen_range(-20..20),
            );
            let r = reduce_cubic_n(&g);
            assert!(r.b >= 0 && r.b < 3 * r.a);
            assert_eq!(reduce_cubic_n(&r), r);
            assert_eq!(r.invariants(), g.invariants());
        }
    }

    #[test]
    fn reduce_is_orbit_constant() {
        let mut rng = StdRng::seed_from_u64(42);
        let bases = [
            f(1, 0, 0, 0, 1),
            f(1, 1, -3, 2, 2),
            f(2, -1, -4, 1, 1),
            f(1, 0, -5, 1, 1),
            f(-1, 2, 0, 1, -3),
        ];
        for base in bases {
            if base.invariants().disc_numerator() == 0 || !is_irreducible_q(&base) {
                continue;
            }
            let (canon, w) = reduce_quartic(&base).unwrap();
            assert_eq!(w.apply(&base), canon);
            for _ in 0..20 {
                let g = random_word(&mut rng, 8);
                let moved = g.apply(&base);
                let (canon2, w2) = reduce_quartic(&moved).unwrap();
                assert_eq!(canon2, canon, "canon differs along the orbit of {base}");
                assert_eq!(w2.apply(&moved), canon2);
            }
            // idempotent
            assert_eq!(reduce_quartic(&canon).unwrap().0, canon);
        }
    }

    #[test]
    fn reduce_rejects_bad_inputs() {
        assert!(matches!(
            reduce_quartic(&f(1, 0, 0, 0, 0)),
            Err(Error::ZeroDiscriminant)
        ));
        assert!(matches!(
            reduce_quartic(&f(1, 0, 0, 0, -1)),
            Err(Error::Reducible)
        ));
    }

    #[test]
    fn equivalence_and_witnesses() {
        let mut rng = StdRng::seed_from_u64(3);
        let base = f(1, 1, -3, 2, 2);
        for _ in 0..10 {
            let g = random_word(&mut rng, 6);
            let moved = g.apply(&base);
            let w = equivalent_quartics(&base, &moved).expect("same orbit");
            assert_eq!(w.apply(&base), moved);
            // BFS cross-validation agrees
            assert!(equivalent_quartics_bfs(&base, &moved, 8).is_some());
        }
        // invariant mismatch short-circuits: I differs (12 vs -12)
        assert!(equivalent_quartics(&f(1, 0, 0, 0, 1), &f(1, 0, 0, 0, -1)).is_none());
        // symmetric and transitive on a sample
        let g1 = random_word(&mut rng, 5).apply(&base);
        let g2 = random_word(&mut rng, 5).apply(&base);
        let w12 = equivalent_quartics(&g1, &g2).unwrap();
        let w21 = equivalent_quartics(&g2, &g1).unwrap();
        assert_eq!(w12.compose(&w21).apply(&g2), g2);
    }

    #[test]
    fn stabilizer_orders() {
        // generic irreducible: {+-id}
        assert_eq!(stabilizer_order_z(&f(1, 1, -3, 2, 2)), 2);
        // x^4 + y^4: swap and flips stabilize; order divisible by 4
        let s = stabilizer_order_z(&f(1, 0, 0, 0, 1));
        assert!(s % 4 == 0 && s >= 4, "got {s}");
        // x^3y - xy^3 is reducible but nondegenerate; internal canon only
        let (canon, _) = canonicalize(&f(0, 1, 0, -1, 0));
        assert_eq!(canon.invariants(), InvariantPair::new(3, 0));
    }

    #[test]
    fn box_oracle_small() {
        let orbits = brute_force_orbits(1);
        // every orbit's members share invariants and one orbit id
        for orb in &orbits.orbits {
            let pair = orb.members[0].invariants();
            for m in &orb.members {
                assert_eq!(m.invariants(), pair);
            }
        }
        // gamma . f co-partitioned with f when both in box
        let mut rng = StdRng::seed_from_u64(5);
        let mut checked = 0;
        for orb in &orbits.orbits {
            for m in orb.members.iter().take(2) {
                let g = random_word(&mut rng, 4);
                let moved = g.apply(m);
                if moved.coeffs().iter().all(|c| c.abs() <= 1) {
                    assert_eq!(orbits.orbit_of(&moved), orbits.orbit_of(m));
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn box_oracle_stable_under_prune_doubling() {
        let a = brute_force_orbits_pruned(2, ORACLE_PRUNE_FACTOR);
        let b = brute_force_orbits_pruned(2, 2 * ORACLE_PRUNE_FACTOR);
        let key = |o: &BoxOrbits| {
            let mut v: Vec<Vec<QuarticForm>> =
                o.orbits.iter().map(|orb| orb.members.clone()).collect();
            v.sort();
            v
        };
        assert_eq!(key(&a), key(&b), "partition must be prune-stable");
    }

    #[test]
    fn canon_agrees_with_box_oracle() {
        let orbits = brute_force_orbits(2);
        for orb in orbits.orbits.iter().filter(|o| o.irreducible) {
            let canons: HashSet<QuarticForm> = orb
                .members
                .iter()
                .map(|m| reduce_quartic(m).unwrap().0)
                .collect();
            assert_eq!(canons.len(), 1, "orbit {:?} got several canons", orb.members);
        }
        // distinct orbits with equal invariants stay distinct
        let mut by_pair: HashMap<InvariantPair, Vec<usize>> = HashMap::new();
        for (i, orb) in orbits.orbits.iter().enumerate() {
            by_pair
                .entry(orb.members[0].invariants())
                .or_default()
                .push(i);
        }
        let mut multi = 0;
        for (_, ids) in by_pair.iter().filter(|(_, v)| v.len() > 1) {
            let mut canons = HashSet::new();
            for &i in ids {
                if orbits.orbits[i].irreducible {
                    canons.insert(reduce_quartic(&orbits.orbits[i].members[0]).unwrap().0);
                }
            }
            if canons.len() > 1 {
                multi += 1;
                // equivalence testing must separate them
                let reps: Vec<QuarticForm> = ids
                    .iter()
                    .filter(|&&i| orbits.orbits[i].irreducible)
                    .map(|&i| orbits.orbits[i].members[0])
                    .collect();
                for i in 0..reps.len() {
                    for j in (i + 1)..reps.len() {
                        assert!(equivalent_quartics(&reps[i], &reps[j]).is_none());
                    }
                }
            }
        }
        assert!(multi > 0, "expected some invariant fibers with several classes");
    }
}
