//! Exhaustive generation of good announcements and triple-point classification.
//!
//! Candidates are plain `k`-subsets of the `a`-sets, filtered by CA1–CA3 with
//! no isomorph rejection. Output is always in canonical order, independent of
//! how the work is split across threads.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::axioms::GoodnessChecker;
use crate::error::{Error, Result};
use crate::limits::{binomial, WorkLimit};
use crate::model::{enumerate_ksets, Announcement, CardSet, Parameters};

fn check_hand(params: &Parameters, hand: CardSet) -> Result<()> {
    if let Some(card) = hand.difference(params.deck()).cards().next() {
        return Err(Error::CardOutOfRange { card, v: params.v });
    }
    if hand.len() != params.a {
        return Err(Error::WrongLineSize {
            line: hand.to_compact(params.v),
            found: hand.len(),
            expected: params.a,
        });
    }
    Ok(())
}

/// Work estimate `C(C(v,a), k)` for enumerating `k`-line announcements.
pub fn enumeration_work(params: &Parameters, k: usize) -> u128 {
    let lines = binomial(params.v as u128, params.a as u128);
    binomial(lines, k as u128)
}

/// Every good `k`-line announcement, in canonical order.
pub fn enumerate_all_good(params: &Parameters, k: usize, limit: WorkLimit) -> Result<Vec<Announcement>> {
    limit.check(enumeration_work(params, k))?;
    let candidates = enumerate_ksets(params.v, params.a)?;
    Ok(filter_good(params, &candidates, &[], k))
}

/// Every good `k`-line announcement containing `hand`, in canonical order.
pub fn enumerate_good_announcements(
    params: &Parameters,
    hand: CardSet,
    k: usize,
    limit: WorkLimit,
) -> Result<Vec<Announcement>> {
    check_hand(params, hand)?;
    limit.check(enumeration_work(params, k))?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let candidates: Vec<CardSet> = enumerate_ksets(params.v, params.a)?
        .into_iter()
        .filter(|&l| l != hand)
        .collect();
    Ok(filter_good(params, &candidates, &[hand], k - 1))
}

/// Good announcements made of `fixed` plus `extra` lines drawn from `candidates`.
fn filter_good(
    params: &Parameters,
    candidates: &[CardSet],
    fixed: &[CardSet],
    extra: usize,
) -> Vec<Announcement> {
    let checker = GoodnessChecker::new(params);
    let keep = |chosen: &[CardSet]| -> Option<Announcement> {
        let mut lines: Vec<CardSet> = fixed.iter().chain(chosen).copied().collect();
        lines.sort();
        checker.is_good(&lines).then(|| Announcement::new(lines).expect("distinct equal-size lines"))
    };
    let mut found: Vec<Announcement> = if extra == 0 {
        keep(&[]).into_iter().collect()
    } else {
        // Split on the first chosen candidate so each task owns a disjoint slice.
        (0..candidates.len())
            .into_par_iter()
            .flat_map_iter(|first| {
                candidates[first + 1..]
                    .iter()
                    .copied()
                    .combinations(extra - 1)
                    .filter_map(move |mut rest| {
                        rest.push(candidates[first]);
                        keep(&rest)
                    })
            })
            .collect()
    };
    found.sort();
    found
}

/// Groups good `k`-line announcements by each hand they contain.
pub fn good_announcements_by_hand(
    params: &Parameters,
    k: usize,
    limit: WorkLimit,
) -> Result<BTreeMap<CardSet, Vec<Announcement>>> {
    let all = enumerate_all_good(params, k, limit)?;
    let mut table: BTreeMap<CardSet, Vec<Announcement>> = enumerate_ksets(params.v, params.a)?
        .into_iter()
        .map(|h| (h, Vec::new()))
        .collect();
    for ann in all {
        for line in ann.lines() {
            table.get_mut(line).expect("every line is an a-set").push(ann.clone());
        }
    }
    Ok(table)
}

/// Occurrence count of each card over the lines of `ann`.
pub fn card_occurrences(ann: &Announcement) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for line in ann.lines() {
        for card in line.cards() {
            *counts.entry(card).or_insert(0) += 1;
        }
    }
    counts
}

/// The card occurring in strictly more lines than any other card, if there is one.
pub fn triple_point(ann: &Announcement) -> Option<usize> {
    let counts = card_occurrences(ann);
    let max = *counts.values().max()?;
    let mut top = counts.iter().filter(|(_, &n)| n == max);
    match (top.next(), top.next()) {
        (Some((&card, _)), None) => Some(card),
        _ => None,
    }
}

/// Splits `anns` by whether their triple point lies in `hand`:
/// `(triple point in hand, triple point not in hand)`.
pub fn classify_by_triple(
    anns: &[Announcement],
    hand: CardSet,
) -> Result<(Vec<Announcement>, Vec<Announcement>)> {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for ann in anns {
        let point = triple_point(ann).ok_or_else(|| Error::NoTriplePoint(ann.to_string()))?;
        if hand.contains(point) {
            inside.push(ann.clone());
        } else {
            outside.push(ann.clone());
        }
    }
    Ok((inside, outside))
}

/// Good five-line `(3,3,1)` announcements containing `hand` whose triple point is `point`.
pub fn special_point_announcements(
    params: &Parameters,
    hand: CardSet,
    point: usize,
    limit: WorkLimit,
) -> Result<Vec<Announcement>> {
    if (params.a, params.b, params.c) != (3, 3, 1) {
        return Err(Error::Unsupported(format!(
            "special-point announcements are defined for (3,3,1), not {params}"
        )));
    }
    if point >= params.v {
        return Err(Error::CardOutOfRange { card: point, v: params.v });
    }
    Ok(enumerate_good_announcements(params, hand, 5, limit)?
        .into_iter()
        .filter(|a| triple_point(a) == Some(point))
        .collect())
}
