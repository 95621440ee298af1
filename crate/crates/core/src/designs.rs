//! Block-design checks: covalency, design strength and the binary designs.
//!
//! A collection of `k`-blocks on a point set is a `t`-design when every
//! `t`-subset of the points lies in the same number `λ_t` of blocks. All
//! checks here are exhaustive over the `t`-subsets, in lexicographic order,
//! stopping at the first subset whose count differs from the first one.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::{binomial, WorkLimit};
use crate::model::{Announcement, CardSet};

/// Outcome of a covalency scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Covalency {
    /// Every `t`-subset lies in exactly this many blocks.
    Constant(usize),
    /// `first` (the smallest `t`-subset) and `mismatch` (the smallest subset
    /// disagreeing with it) lie in different numbers of blocks.
    NotConstant {
        first: CardSet,
        first_count: usize,
        mismatch: CardSet,
        mismatch_count: usize,
    },
}

impl Covalency {
    pub fn value(self) -> Option<usize> {
        match self {
            Covalency::Constant(n) => Some(n),
            Covalency::NotConstant { .. } => None,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, Covalency::Constant(_))
    }
}

/// Scans every `t`-subset of `points` and counts the blocks containing it.
/// With fewer than `t` points there is nothing to scan and the result is `Constant(0)`.
pub fn covalency_scan(
    blocks: &[CardSet],
    points: CardSet,
    t: usize,
    limit: WorkLimit,
) -> Result<Covalency> {
    let pts = points.to_vec();
    let subsets = binomial(pts.len() as u128, t as u128);
    limit.check(subsets.saturating_mul(blocks.len().max(1) as u128))?;

    let count = |subset: CardSet| blocks.iter().filter(|b| subset.is_subset(**b)).count();
    let mut first: Option<(CardSet, usize)> = None;
    for combo in pts.iter().copied().combinations(t) {
        let subset = CardSet::from_mask(combo.iter().fold(0u64, |m, &c| m | 1u64 << c));
        let n = count(subset);
        match first {
            None => first = Some((subset, n)),
            Some((f, fc)) if fc != n => {
                return Ok(Covalency::NotConstant {
                    first: f,
                    first_count: fc,
                    mismatch: subset,
                    mismatch_count: n,
                })
            }
            Some(_) => {}
        }
    }
    Ok(Covalency::Constant(first.map_or(0, |(_, n)| n)))
}

/// `λ_t` of `ann` on the deck `{0, .., v-1}`, or `None` when it is not constant.
pub fn covalency(ann: &Announcement, v: usize, t: usize) -> Result<Option<usize>> {
    covalency_with_limit(ann, v, t, WorkLimit::default()).map(Covalency::value)
}

pub fn covalency_with_limit(
    ann: &Announcement,
    v: usize,
    t: usize,
    limit: WorkLimit,
) -> Result<Covalency> {
    let k = ann.block_size().ok_or(Error::EmptyAnnouncement)?;
    if t > k {
        return Err(Error::TupleTooLarge { t, k });
    }
    let deck = deck_for(ann, v)?;
    covalency_scan(ann.lines(), deck, t, limit)
}

fn deck_for(ann: &Announcement, v: usize) -> Result<CardSet> {
    if v > crate::model::MAX_DECK {
        return Err(Error::DeckTooLarge(v));
    }
    let deck = CardSet::full(v);
    if let Some(card) = ann.points().difference(deck).cards().next() {
        return Err(Error::CardOutOfRange { card, v });
    }
    Ok(deck)
}

/// Largest `t <= max_t` such that `λ_0, .., λ_t` are all constant on `points`.
pub fn strength_on(
    blocks: &[CardSet],
    points: CardSet,
    max_t: usize,
    limit: WorkLimit,
) -> Result<usize> {
    let mut strength = 0;
    for t in 1..=max_t {
        if !covalency_scan(blocks, points, t, limit)?.is_constant() {
            break;
        }
        strength = t;
    }
    Ok(strength)
}

/// Largest `t` with constant covalency on the deck `{0, .., v-1}`.
pub fn design_strength(ann: &Announcement, v: usize) -> Result<usize> {
    design_profile(ann, v, WorkLimit::default()).map(|p| p.strength)
}

/// Per-`t` covalencies of an announcement viewed as a block design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignProfile {
    pub v: usize,
    pub k: usize,
    /// `lambda[t]` for `t = 0..=k`; `None` when not constant.
    pub lambda: Vec<Option<usize>>,
    pub strength: usize,
}

impl DesignProfile {
    /// `{"v":…,"k":…,"lambda":{"0":…,"1":…},"strength":…}`; non-constant entries are `null`.
    pub fn to_json(&self) -> serde_json::Value {
        let lambda: BTreeMap<String, Option<usize>> = self
            .lambda
            .iter()
            .enumerate()
            .map(|(t, l)| (t.to_string(), *l))
            .collect();
        serde_json::json!({
            "v": self.v,
            "k": self.k,
            "lambda": lambda,
            "strength": self.strength,
        })
    }
}

/// Computes `λ_t` upward from `t = 0` until the first non-constant value;
/// every larger `t` is then non-constant as well, since a `t`-design is a
/// `(t-1)`-design.
pub fn design_profile(ann: &Announcement, v: usize, limit: WorkLimit) -> Result<DesignProfile> {
    let k = ann.block_size().ok_or(Error::EmptyAnnouncement)?;
    let deck = deck_for(ann, v)?;
    let mut lambda = vec![None; k + 1];
    let mut strength = 0;
    for (t, slot) in lambda.iter_mut().enumerate() {
        match covalency_scan(ann.lines(), deck, t, limit)? {
            Covalency::Constant(n) => {
                *slot = Some(n);
                strength = t;
            }
            Covalency::NotConstant { .. } => break,
        }
    }
    Ok(DesignProfile { v, k, lambda, strength })
}

/// Lines avoiding `x`, viewed as a design on the remaining points `Ω − {x}`.
pub fn residual(ann: &Announcement, v: usize, x: usize) -> (Vec<CardSet>, CardSet) {
    let point = CardSet::singleton(x);
    let lines = crate::axioms::lines_avoiding(ann, point);
    (lines, CardSet::full(v).difference(point))
}

/// GF(2) inner product of two bit vectors given as integers.
pub fn gf2_dot(x: u64, y: u64) -> u64 {
    u64::from((x & y).count_ones() % 2 == 1)
}

/// The binary design on `n` bits: for every nonzero `y`, the solutions of
/// `y·x = 0` and of `y·x = 1` over GF(2), each read as a set of points
/// `0..2^n`. Yields `2(2^n − 1)` lines of size `2^(n−1)`.
pub fn binary_design(n: u32) -> Result<Announcement> {
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidBits(n));
    }
    let size = 1u64 << n;
    let mut lines = Vec::with_capacity(2 * (size as usize - 1));
    for y in 1..size {
        let zeros = (0..size)
            .filter(|&x| gf2_dot(x, y) == 0)
            .fold(0u64, |m, x| m | 1u64 << x);
        let zeros = CardSet::from_mask(zeros);
        lines.push(zeros);
        lines.push(CardSet::full(size as usize).difference(zeros));
    }
    Announcement::new(lines)
}
