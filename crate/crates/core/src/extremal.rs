//! The largest possible number of maximum dissociation sets in a tree of
//! order n, the trees attaining it, and an exhaustive sweep that checks
//! both against every free tree of that order.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_code, CanonicalCode};
use crate::dissociation::{alpha3_count_u64, check_guard};
use crate::error::{Error, Result};
use crate::graph::Forest;
use crate::treegen::{free_trees, LevelSequence};

pub const SWEEP_LIMIT: usize = 18;

/// Closed-form maximum MDS count over trees of order `n`.
///
/// Orders 1 and 2 fall outside the closed form (it would need 3^-1); the
/// single tree of each order has exactly one MDS, so that is returned.
pub fn max_mds_formula(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    if n <= 2 {
        return Ok(BigUint::one());
    }
    let m = (n / 3) as u32;
    let three = BigUint::from(3u32);
    Ok(match n % 3 {
        0 => three.pow(m - 1) + BigUint::from(m) + 1u32,
        1 => three.pow(m - 1) + 1u32,
        _ => three.pow(m - 1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Leg {
    P2,
    P3,
    P4,
    K13,
}

impl Leg {
    /// Vertices added besides the shared hub.
    pub fn extra_vertices(self) -> usize {
        match self {
            Leg::P2 => 1,
            Leg::P3 => 2,
            Leg::P4 | Leg::K13 => 3,
        }
    }
}

/// Legs glued at a common leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegSpec {
    legs: Vec<Leg>,
}

impl LegSpec {
    pub fn new(legs: Vec<Leg>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidArgument("a star construction needs at least one leg".into()));
        }
        Ok(LegSpec { legs })
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn order(&self) -> usize {
        1 + self.legs.iter().map(|l| l.extra_vertices()).sum::<usize>()
    }
}

/// The tree obtained by identifying one leaf of every leg with hub 0.
pub fn star_construction(spec: &LegSpec) -> Forest {
    let mut edges = Vec::new();
    let mut next = 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for &leg in &spec.legs {
        match leg {
            Leg::P2 | Leg::P3 | Leg::P4 => {
                let mut prev = 0;
                for _ in 0..leg.extra_vertices() {
                    let v = fresh();
                    edges.push((prev, v));
                    prev = v;
                }
            }
            Leg::K13 => {
                let center = fresh();
                edges.push((0, center));
                for _ in 0..2 {
                    let leaf = fresh();
                    edges.push((center, leaf));
                }
            }
        }
    }
    Forest::new(spec.order(), edges).expect("star constructions are trees")
}

/// The path u0..u3 with a pendant vertex 4+i on each u_i.
pub fn lt8() -> Forest {
    Forest::new(8, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)]).unwrap()
}

/// One representative per isomorphism class of the trees of order `n`
/// predicted to attain `max_mds_formula(n)`, sorted by canonical code.
///
/// For n = 4 this is the generic rule evaluated at m = 1 (just P4), a case
/// the characterization does not cover; see `is_characterized`.
pub fn generate_extremal_family(n: usize) -> Result<Vec<Forest>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("extremal families start at order 3, got {n}")));
    }
    let m = n / 3;
    let heads: &[&[Leg]] = match n % 3 {
        0 => &[&[Leg::P3]],
        1 => &[&[Leg::P3, Leg::P2]],
        _ => &[&[Leg::P3, Leg::P3], &[Leg::P2; 4], &[Leg::P3, Leg::P2, Leg::P2]],
    };
    // n = 3m only uses P4 tails; otherwise each tail is P4 or K13
    let max_k13 = if n % 3 == 0 { 0 } else { m - 1 };
    let mut trees = Vec::new();
    for head in heads {
        for k13 in 0..=max_k13 {
            let mut legs = head.to_vec();
            legs.extend(std::iter::repeat_n(Leg::K13, k13));
            legs.extend(std::iter::repeat_n(Leg::P4, m - 1 - k13));
            trees.push(star_construction(&LegSpec::new(legs)?));
        }
    }
    if n == 8 {
        trees.push(lt8());
    }
    let mut keyed: Vec<(CanonicalCode, Forest)> = trees
        .into_iter()
        .map(|t| (canonical_code(&t).expect("tree"), t))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// Whether the extremal trees of order `n` are pinned down (all n >= 3
/// except n = 4).
pub fn is_characterized(n: usize) -> bool {
    n >= 3 && n != 4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub trees: usize,
    #[serde(serialize_with = "decimal")]
    pub formula_value: BigUint,
    #[serde(serialize_with = "decimal")]
    pub observed_max: BigUint,
    pub extremal_codes: Vec<CanonicalCode>,
    pub predicted_codes: Vec<CanonicalCode>,
    pub characterized: bool,
    /// Trees whose count is above the formula value.
    pub exceeding: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn decimal<S: serde::Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn predicted_codes(n: usize) -> Result<Vec<CanonicalCode>> {
    Ok(generate_extremal_family(n)?
        .iter()
        .map(|t| canonical_code(t).expect("tree"))
        .collect())
}

/// Sweeps every free tree of order `n` on `jobs` worker threads. The
/// report does not depend on `jobs`.
pub fn exhaustive_extremal_check(n: usize, jobs: usize) -> Result<ExtremalReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("extremal sweeps start at order 3, got {n}")));
    }
    check_guard("exhaustive_extremal_check", n, SWEEP_LIMIT)?;
    let mut gen = free_trees(n);
    let sequences: Vec<LevelSequence> = std::iter::from_fn(|| gen.next_sequence()).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let counts: Vec<u64> = pool.install(|| {
        sequences
            .par_iter()
            .map(|s| alpha3_count_u64(&s.to_forest()).map(|(_, c)| c))
            .collect::<Result<_>>()
    })?;

    let observed_max = counts.iter().copied().max().unwrap_or(0);
    let extremal: BTreeSet<CanonicalCode> = sequences
        .iter()
        .zip(&counts)
        .filter(|&(_, &c)| c == observed_max)
        .map(|(s, _)| canonical_code(&s.to_forest()).expect("tree"))
        .collect();
    let predicted = predicted_codes(n)?;
    let formula_value = max_mds_formula(n)?;
    let exceeding = counts.iter().filter(|&&c| BigUint::from(c) > formula_value).count();
    let observed_max = BigUint::from(observed_max);
    let extremal_codes: Vec<CanonicalCode> = extremal.into_iter().collect();
    let characterized = is_characterized(n);
    let matches = observed_max == formula_value && (!characterized || extremal_codes == predicted);
    Ok(ExtremalReport {
        n,
        trees: sequences.len(),
        formula_value,
        observed_max,
        extremal_codes,
        predicted_codes: predicted,
        characterized,
        exceeding,
        matches,
    })
}
