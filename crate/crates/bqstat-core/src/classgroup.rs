//! Class-group 2-torsion statistics of monogenized cubic fields through
//! the quartic-class correspondence: on a maximal fiber the GL2(Z)-classes
//! with those invariants form the dual of the narrow 2-class group, with
//! the four-real-root classes cutting out the ordinary 2-class group.

use crate::enumeration::{
    classes_with_invariants, eligible_pairs_vec, fiber_is_maximal, monic_cubic_for, DiscSign,
    SearchConfig,
};
use crate::forms::{InvariantPair, RootType};
use crate::local::{splitting_type_cubic, CubicSplit};
use crate::zint::Z;
use crate::Error;
use rayon::prelude::*;

/// Sizes (#Cl2*, #Cl2+*) of one maximal monogenized fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cl2Counts {
    pub cl2: usize,
    pub cl2_plus: usize,
}

/// Class-group 2-torsion sizes from the fiber's quartic classes. The fiber
/// cubic must be irreducible (a field) and maximal (its ring of integers);
/// the counts include the reducible identity class and are asserted to be
/// powers of two with exactly one reducible class present.
pub fn cl2_counts(pair: InvariantPair, cfg: &SearchConfig) -> Result<Cl2Counts, Error> {
    let cubic = monic_cubic_for(pair)?;
    if pair.disc_numerator() == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    if !cubic.is_irreducible() {
        return Err(Error::BadClassGroupFiber(pair.i, pair.j, "reducible"));
    }
    if !fiber_is_maximal(pair)? {
        return Err(Error::BadClassGroupFiber(pair.i, pair.j, "nonmaximal"));
    }
    let classes = classes_with_invariants(pair, cfg)?;
    let total = classes.len();
    let reducible = classes.iter().filter(|c| !c.irreducible).count();
    assert_eq!(
        reducible, 1,
        "maximal fiber {pair} must carry exactly one reducible class"
    );
    assert!(
        total.is_power_of_two(),
        "class count {total} at maximal fiber {pair} is not a power of two"
    );
    let counts = if pair.disc_numerator() > 0 {
        let four = classes
            .iter()
            .filter(|c| c.root_type == RootType::FourReal)
            .count();
        assert!(
            four.is_power_of_two() && four <= total,
            "Cl2 subgroup count {four} of {total} malformed at {pair}"
        );
        Cl2Counts {
            cl2: four,
            cl2_plus: total,
        }
    } else {
        Cl2Counts {
            cl2: total,
            cl2_plus: total,
        }
    };
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    TotallyReal,
    Complex,
}

/// Splitting conditions imposed at finitely many primes.
pub type SplitConditions = Vec<(Z, CubicSplit)>;

/// Running averages over maximal monogenized cubic fields with H < X.
#[derive(Debug, Clone)]
pub struct MccStats {
    pub x: Z,
    pub fields: usize,
    pub sum_cl2: Z,
    pub sum_cl2_plus: Z,
    pub skipped_nonmaximal: usize,
    pub skipped_reducible: usize,
}

impl MccStats {
    pub fn mean_cl2(&self) -> f64 {
        self.sum_cl2 as f64 / self.fields as f64
    }

    pub fn mean_cl2_plus(&self) -> f64 {
        self.sum_cl2_plus as f64 / self.fields as f64
    }
}

/// Average 2-torsion (ordinary and narrow) over maximal monogenized cubic
/// fields of the given signature with H < X, optionally restricted by
/// splitting conditions at finitely many primes.
pub fn mcc_averages(
    x: Z,
    signature: Signature,
    conditions: &SplitConditions,
    cfg: &SearchConfig,
) -> MccStats {
    let sign = match signature {
        Signature::TotallyReal => DiscSign::Positive,
        Signature::Complex => DiscSign::Negative,
    };
    let fibers = eligible_pairs_vec(x, sign);
    let (fields, sum_cl2, sum_cl2_plus, skipped_nonmaximal, skipped_reducible) = fibers
        .par_iter()
        .map(|&pair| {
            let cubic = monic_cubic_for(pair).expect("eligible");
            if !cubic.is_irreducible() {
                return (0usize, 0, 0, 0usize, 1usize);
            }
            if !fiber_is_maximal(pair).unwrap_or(false) {
                return (0, 0, 0, 1, 0);
            }
            for &(p, sigma) in conditions {
                if splitting_type_cubic(&cubic, p).ok() != Some(sigma) {
                    return (0, 0, 0, 0, 0);
                }
            }
            let counts = cl2_counts(pair, cfg).expect("maximal irreducible fiber");
            (1, counts.cl2 as Z, counts.cl2_plus as Z, 0, 0)
        })
        .reduce(
            || (0, 0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3, a.4 + b.4),
        );
    MccStats {
        x,
        fields,
        sum_cl2,
        sum_cl2_plus,
        skipped_nonmaximal,
        skipped_reducible,
    }
}

/// Counts of irreducible strongly-maximal classes with H < X by root type:
/// the numerators of the class-group sieve.
#[derive(Debug, Clone, Copy)]
pub struct StronglyMaximalCounts {
    /// [FourReal, TwoReal, 2+, 2-]
    pub by_type: [Z; 4],
    pub maximal_fibers_plus: usize,
    pub maximal_fibers_minus: usize,
}

pub fn strongly_maximal_class_count(x: Z, cfg: &SearchConfig) -> StronglyMaximalCounts {
    let mut fibers = eligible_pairs_vec(x, DiscSign::Positive);
    fibers.extend(eligible_pairs_vec(x, DiscSign::Negative));
    let (by_type, plus, minus) = fibers
        .par_iter()
        .map(|&pair| {
            let mut acc = ([0i128; 4], 0usize, 0usize);
            let cubic = monic_cubic_for(pair).expect("eligible");
            if !cubic.is_irreducible() || !fiber_is_maximal(pair).unwrap_or(false) {
                return acc;
            }
            if pair.disc_numerator() > 0 {
                acc.1 = 1;
            } else {
                acc.2 = 1;
            }
            for cl in classes_with_invariants(pair, cfg).expect("maximal fiber") {
                if cl.irreducible {
                    acc.0[crate::enumeration::type_index(cl.root_type)] += 1;
                }
            }
            acc
        })
        .reduce(
            || ([0; 4], 0, 0),
            |mut a, b| {
                for k in 0..4 {
                    a.0[k] += b.0[k];
                }
                (a.0, a.1 + b.1, a.2 + b.2)
            },
        );
    StronglyMaximalCounts {
        by_type,
        maximal_fibers_plus: plus,
        maximal_fibers_minus: minus,
    }
}
