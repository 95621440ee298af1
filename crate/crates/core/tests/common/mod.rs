//! Test-only oracles. These deliberately avoid the library's bit-mask fast
//! paths: sets are plain sorted vectors and every quantifier is a literal loop.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cardeal::model::{parse_announcement, Announcement, CardSet, Deal, Parameters};
use cardeal::protocols::{Prob, Protocol};
use itertools::Itertools;
use num::Zero;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub const FIVE: &str = "012 034 056 135 246";
pub const SEVEN: &str = "012 034 056 135 146 236 245";
pub const BINARY3: &str = "0246 0145 0347 0123 0257 0167 0356 1357 2367 1256 4567 1346 2345 1247";

pub fn p331() -> Parameters {
    Parameters::new(3, 3, 1).unwrap()
}

pub fn p431() -> Parameters {
    Parameters::new(4, 3, 1).unwrap()
}

pub fn ann331(text: &str) -> Announcement {
    parse_announcement(text, &p331()).unwrap()
}

pub fn set(text: &str) -> CardSet {
    CardSet::from_cards(text.bytes().map(|b| (b - b'0') as usize), 10).unwrap()
}

fn vecs(ann: &Announcement) -> Vec<Vec<usize>> {
    ann.lines().iter().map(|l| l.to_vec()).collect()
}

fn disjoint(x: &[usize], y: &[usize]) -> bool {
    x.iter().all(|c| !y.contains(c))
}

/// Verdicts computed straight from the definitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveVerdicts {
    pub ca1: bool,
    pub ca2: bool,
    pub ca3: bool,
    pub ca4: bool,
    pub ca5: bool,
    /// `(X, |L(X̄)|, n_X)` for every c-set where the counts are constant.
    pub n: Vec<(Vec<usize>, usize, usize)>,
    pub m: Vec<(Vec<usize>, usize)>,
}

pub fn naive_axioms(ann: &Announcement, params: &Parameters) -> NaiveVerdicts {
    let lines = vecs(ann);
    let v = params.v;
    let ca1 = (0..v)
        .combinations(params.b)
        .all(|x| lines.iter().filter(|l| disjoint(l, &x)).count() <= 1);
    let (mut ca2, mut ca3, mut ca4, mut ca5) = (true, true, true, true);
    let mut n = Vec::new();
    let mut m = Vec::new();
    for x in (0..v).combinations(params.c) {
        let avoid: Vec<&Vec<usize>> = lines.iter().filter(|l| disjoint(l, &x)).collect();
        let rest: Vec<usize> = (0..v).filter(|y| !x.contains(y)).collect();
        // An empty family has no common card.
        if !avoid.is_empty() && rest.iter().any(|y| avoid.iter().all(|l| l.contains(y))) {
            ca2 = false;
        }
        if !rest.iter().all(|y| avoid.iter().any(|l| l.contains(y))) {
            ca3 = false;
        }
        let counts: Vec<usize> = rest
            .iter()
            .map(|y| avoid.iter().filter(|l| l.contains(y)).count())
            .collect();
        if counts.iter().all_equal() {
            n.push((x.clone(), avoid.len(), counts.first().copied().unwrap_or(0)));
        } else {
            ca4 = false;
        }
        let bsets: Vec<Vec<usize>> = avoid
            .iter()
            .map(|l| rest.iter().copied().filter(|y| !l.contains(y)).collect())
            .unique()
            .collect();
        let bcounts: Vec<usize> = rest
            .iter()
            .map(|y| bsets.iter().filter(|s| s.contains(y)).count())
            .collect();
        if bcounts.iter().all_equal() {
            m.push((x.clone(), bcounts.first().copied().unwrap_or(0)));
        } else {
            ca5 = false;
        }
    }
    NaiveVerdicts { ca1, ca2, ca3, ca4, ca5, n, m }
}

/// `λ_t` over `points`, or `None` when not constant.
pub fn naive_lambda(lines: &[CardSet], points: &[usize], t: usize) -> Option<usize> {
    let lines: Vec<Vec<usize>> = lines.iter().map(|l| l.to_vec()).collect();
    let counts: Vec<usize> = points
        .iter()
        .copied()
        .combinations(t)
        .map(|s| lines.iter().filter(|l| s.iter().all(|c| l.contains(c))).count())
        .collect();
    if counts.iter().all_equal() {
        Some(counts.first().copied().unwrap_or(0))
    } else {
        None
    }
}

/// Posterior over the lines of `ann` by summing over every deal consistent
/// with the observer holding `observer`, each deal weighted by the uniform
/// prior, the hand-class factor and `P(ann | Alice's hand)`.
pub fn joint_posterior(proto: &Protocol, ann: &Announcement, observer: CardSet) -> BTreeMap<CardSet, Prob> {
    let deals = Deal::all(&proto.params);
    let prior = Prob::new(1.into(), (deals.len() as i64).into());
    let mut mass: BTreeMap<CardSet, Prob> = ann.lines().iter().map(|l| (*l, Prob::zero())).collect();
    for deal in &deals {
        if !observer.is_subset(deal.cathy) {
            continue;
        }
        let entry = match proto.table.get(&deal.alice) {
            Some(dist) => dist.iter().find(|(a, _)| a == ann),
            None => None,
        };
        let Some((_, p)) = entry else { continue };
        let mut w = &prior * p;
        if let Some(cw) = &proto.class_weights {
            w *= cw.weight(deal.alice);
        }
        *mass.get_mut(&deal.alice).expect("support contains the hand") += w;
    }
    let total = mass.values().fold(Prob::zero(), |acc, p| acc + p);
    mass.into_iter().map(|(l, p)| (l, p / &total)).collect()
}

fn permute(line: CardSet, perm: &[usize]) -> CardSet {
    CardSet::from_cards(line.cards().map(|c| perm[c]), perm.len()).unwrap()
}

fn permuted(lines: &[CardSet], perm: &[usize]) -> Vec<CardSet> {
    lines.iter().map(|&l| permute(l, perm)).collect()
}

/// Random announcements mixing plain random line sets, cyclic developments
/// of random base blocks, and relabeled or combined copies of known designs,
/// so that both sides of each equivalence get exercised.
pub fn random_announcement<R: Rng>(rng: &mut R, params: &Parameters, seeds: &[Announcement]) -> Announcement {
    let all = cardeal::model::enumerate_ksets(params.v, params.a).unwrap();
    let mut perm: Vec<usize> = (0..params.v).collect();
    perm.shuffle(rng);
    let mut lines: Vec<CardSet> = match rng.random_range(0..10) {
        0 => {
            let v = params.v;
            let bases = rng.random_range(1..=2);
            let mut out = Vec::new();
            for _ in 0..bases {
                let base = *all.choose(rng).unwrap();
                out.extend((0..v).map(|s| CardSet::from_cards(base.cards().map(|c| (c + s) % v), v).unwrap()));
            }
            out
        }
        1..=3 => {
            let k = rng.random_range(1..=all.len());
            all.choose_multiple(rng, k).copied().collect()
        }
        4..=6 => {
            let seed = seeds.choose(rng).unwrap();
            permuted(seed.lines(), &perm)
        }
        7 => {
            let a = permuted(seeds.choose(rng).unwrap().lines(), &perm);
            perm.shuffle(rng);
            let b = permuted(seeds.choose(rng).unwrap().lines(), &perm);
            a.into_iter().chain(b).collect()
        }
        8 => {
            let seed = permuted(seeds.choose(rng).unwrap().lines(), &perm);
            all.iter().copied().filter(|l| !seed.contains(l)).collect()
        }
        _ => {
            let mut seed = permuted(seeds.choose(rng).unwrap().lines(), &perm);
            let drop = rng.random_range(0..seed.len());
            seed.remove(drop);
            if rng.random_bool(0.5) {
                seed.push(*all.choose(rng).unwrap());
            }
            seed
        }
    };
    lines.sort();
    lines.dedup();
    if lines.is_empty() {
        lines.push(all[0]);
    }
    Announcement::new(lines).unwrap()
}
