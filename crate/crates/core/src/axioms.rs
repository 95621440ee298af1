//! Elimination by a player's own cards and the combinatorial axioms CA1–CA5.
//!
//! For a set `X`, `lines_avoiding(ann, X)` is the sub-collection of lines
//! disjoint from `X`; these are the hands a player holding `X` still considers
//! possible for Alice. [`bob_sets`] turns each of them into the matching
//! candidate hand for Bob, `Ω − X − L`.
//!
//! [`check_axioms`] decides all five axioms by exhaustive quantification:
//! CA1 over every `b`-set, CA2–CA5 over every `c`-set. Failing axioms carry
//! witnesses; the first witness in each list is the lexicographically
//! smallest violating set.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::{binomial, WorkLimit};
use crate::model::{ksubsets, Announcement, CardSet, Parameters};

/// Lines of `ann` disjoint from `x`, in canonical order.
pub fn lines_avoiding(ann: &Announcement, x: CardSet) -> Vec<CardSet> {
    ann.lines()
        .iter()
        .copied()
        .filter(|l| l.is_disjoint(x))
        .collect()
}

/// Candidate hands for Bob seen by a holder of `x`: `Ω − x − L` for every line `L` avoiding `x`.
pub fn bob_sets(ann: &Announcement, x: CardSet, params: &Parameters) -> Vec<CardSet> {
    let rest = params.deck().difference(x);
    let mut sets: Vec<CardSet> = lines_avoiding(ann, x)
        .into_iter()
        .map(|l| rest.difference(l))
        .collect();
    sets.sort();
    sets.dedup();
    sets
}

/// Occurrences of each card of the deck among the lines avoiding `x`.
/// Cards in `x` map to zero.
pub fn cathy_card_counts(ann: &Announcement, x: CardSet, v: usize) -> BTreeMap<usize, usize> {
    occurrence_counts(&lines_avoiding(ann, x), v)
}

fn occurrence_counts(sets: &[CardSet], v: usize) -> BTreeMap<usize, usize> {
    let mut counts: BTreeMap<usize, usize> = (0..v).map(|card| (card, 0)).collect();
    for set in sets {
        for card in set.cards() {
            *counts.entry(card).or_default() += 1;
        }
    }
    counts
}

/// The unique line of `ann` avoiding Bob's hand.
pub fn bob_infer(ann: &Announcement, bob_hand: CardSet) -> Result<CardSet> {
    let mut avoiding = ann.lines().iter().filter(|l| l.is_disjoint(bob_hand));
    match (avoiding.next(), avoiding.next()) {
        (Some(line), None) => Ok(*line),
        (None, _) => Err(Error::NoLine(bob_hand.to_string())),
        (Some(first), Some(second)) => Err(Error::Ambiguous(first.to_string(), second.to_string())),
    }
}

/// What an eavesdropper holding `cathy` can conclude from the announcement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CathyView {
    pub candidates: Vec<CardSet>,
    /// Cards held by Alice in every remaining candidate.
    pub forced_alice: CardSet,
    /// Cards outside `cathy` that occur in no candidate, hence must be Bob's.
    pub forced_bob: CardSet,
}

pub fn cathy_view(ann: &Announcement, cathy: CardSet, params: &Parameters) -> CathyView {
    let candidates = lines_avoiding(ann, cathy);
    let union = candidates.iter().fold(CardSet::EMPTY, |u, l| u.union(*l));
    let forced_alice = match candidates.split_first() {
        Some((first, rest)) => rest.iter().fold(*first, |i, l| i.intersection(*l)),
        None => CardSet::EMPTY,
    };
    CathyView {
        forced_bob: params.deck().difference(cathy).difference(union),
        forced_alice,
        candidates,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ca1Witness {
    pub bset: CardSet,
    pub lines: Vec<CardSet>,
}

/// CA1: every `b`-set is avoided by at most one line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ca1Verdict {
    pub pass: bool,
    /// Number of violating `b`-sets.
    pub violations: usize,
    pub witness: Option<Ca1Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ca2Witness {
    pub cset: CardSet,
    pub common: CardSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ca3Witness {
    pub cset: CardSet,
    pub missing: CardSet,
}

/// A verdict quantified over `c`-sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetVerdict<W> {
    pub pass: bool,
    pub witnesses: Vec<W>,
}

impl<W> SetVerdict<W> {
    pub fn witness(&self) -> Option<&W> {
        self.witnesses.first()
    }
}

/// A `c`-set whose card counts are not all equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceWitness {
    pub cset: CardSet,
    /// Count for every card outside `cset`.
    pub counts: BTreeMap<usize, usize>,
}

/// CA4 / CA5: constant card counts per `c`-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceVerdict {
    pub pass: bool,
    /// The common count for every `c`-set where one exists (`n_X` or `m_X`).
    #[serde(serialize_with = "ser_set_map")]
    pub table: BTreeMap<CardSet, usize>,
    pub witnesses: Vec<BalanceWitness>,
}

impl BalanceVerdict {
    pub fn witness(&self) -> Option<&BalanceWitness> {
        self.witnesses.first()
    }
}

fn set_key(set: &CardSet) -> String {
    set.cards().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn ser_set_map<S: Serializer>(map: &BTreeMap<CardSet, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(map.iter().map(|(k, v)| (set_key(k), v)))
}

/// Axiom verdicts for one announcement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub params: Parameters,
    pub ca1: Ca1Verdict,
    pub ca2: SetVerdict<Ca2Witness>,
    pub ca3: SetVerdict<Ca3Witness>,
    pub ca4: BalanceVerdict,
    pub ca5: BalanceVerdict,
}

impl AxiomReport {
    pub fn is_good(&self) -> bool {
        self.ca1.pass && self.ca2.pass && self.ca3.pass
    }

    pub fn passes(&self, axiom: Axiom) -> bool {
        match axiom {
            Axiom::Ca1 => self.ca1.pass,
            Axiom::Ca2 => self.ca2.pass,
            Axiom::Ca3 => self.ca3.pass,
            Axiom::Ca4 => self.ca4.pass,
            Axiom::Ca5 => self.ca5.pass,
        }
    }

    /// JSON form: `{"ca1":…,"ca2":…,"ca3":…,"ca4":{"pass":…,"n":{…},"witness":…},"ca5":{…}}`.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let balance = |verdict: &BalanceVerdict, key: &str| {
            let table: serde_json::Map<String, serde_json::Value> = verdict
                .table
                .iter()
                .map(|(k, v)| (set_key(k), json!(v)))
                .collect();
            json!({
                "pass": verdict.pass,
                key: table,
                "witness": verdict.witness(),
                "witnesses": verdict.witnesses,
            })
        };
        json!({
            "params": self.params,
            "good": self.is_good(),
            "ca1": self.ca1,
            "ca2": {"pass": self.ca2.pass, "witness": self.ca2.witness(), "witnesses": self.ca2.witnesses},
            "ca3": {"pass": self.ca3.pass, "witness": self.ca3.witness(), "witnesses": self.ca3.witnesses},
            "ca4": balance(&self.ca4, "n"),
            "ca5": balance(&self.ca5, "m"),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Ca1,
    Ca2,
    Ca3,
    Ca4,
    Ca5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::Ca1, Axiom::Ca2, Axiom::Ca3, Axiom::Ca4, Axiom::Ca5];

    pub fn parse(name: &str) -> Result<Axiom> {
        match name.trim().to_ascii_lowercase().as_str() {
            "ca1" => Ok(Axiom::Ca1),
            "ca2" => Ok(Axiom::Ca2),
            "ca3" => Ok(Axiom::Ca3),
            "ca4" => Ok(Axiom::Ca4),
            "ca5" => Ok(Axiom::Ca5),
            other => Err(Error::Unsupported(format!("unknown axiom {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Ca1 => "CA1",
            Axiom::Ca2 => "CA2",
            Axiom::Ca3 => "CA3",
            Axiom::Ca4 => "CA4",
            Axiom::Ca5 => "CA5",
        }
    }
}

fn check_shape(ann: &Announcement, params: &Parameters) -> Result<()> {
    let deck = params.deck();
    for line in ann.lines() {
        if line.len() != params.a {
            return Err(Error::WrongLineSize {
                line: line.to_compact(params.v),
                found: line.len(),
                expected: params.a,
            });
        }
        if let Some(card) = line.difference(deck).cards().next() {
            return Err(Error::CardOutOfRange { card, v: params.v });
        }
    }
    Ok(())
}

/// Estimated number of set visits for [`check_axioms`].
pub fn axiom_work(params: &Parameters) -> u128 {
    let v = params.v as u128;
    binomial(v, params.b as u128).saturating_add(binomial(v, params.c as u128))
}

/// Decides CA1–CA5 for `ann`, refusing instances whose `C(v,b) + C(v,c)` exceeds `limit`.
pub fn check_axioms(ann: &Announcement, params: &Parameters, limit: WorkLimit) -> Result<AxiomReport> {
    check_shape(ann, params)?;
    limit.check(axiom_work(params))?;

    let ca1 = check_ca1(ann, params);

    let mut csets: Vec<CardSet> = ksubsets(params.v, params.c)?.collect();
    csets.sort();

    let mut ca2 = SetVerdict { pass: true, witnesses: Vec::new() };
    let mut ca3 = SetVerdict { pass: true, witnesses: Vec::new() };
    let mut ca4 = BalanceVerdict { pass: true, table: BTreeMap::new(), witnesses: Vec::new() };
    let mut ca5 = BalanceVerdict { pass: true, table: BTreeMap::new(), witnesses: Vec::new() };

    for x in csets {
        let view = cathy_view(ann, x, params);
        if !view.forced_alice.is_empty() {
            ca2.pass = false;
            ca2.witnesses.push(Ca2Witness { cset: x, common: view.forced_alice });
        }
        if !view.forced_bob.is_empty() {
            ca3.pass = false;
            ca3.witnesses.push(Ca3Witness { cset: x, missing: view.forced_bob });
        }
        record_balance(&mut ca4, x, &view.candidates, params);
        record_balance(&mut ca5, x, &bob_sets(ann, x, params), params);
    }

    Ok(AxiomReport { params: *params, ca1, ca2, ca3, ca4, ca5 })
}

fn record_balance(verdict: &mut BalanceVerdict, x: CardSet, sets: &[CardSet], params: &Parameters) {
    let counts: BTreeMap<usize, usize> = occurrence_counts(sets, params.v)
        .into_iter()
        .filter(|(card, _)| !x.contains(*card))
        .collect();
    let mut values = counts.values();
    let first = values.next().copied().unwrap_or(0);
    if values.all(|&n| n == first) {
        verdict.table.insert(x, first);
    } else {
        verdict.pass = false;
        verdict.witnesses.push(BalanceWitness { cset: x, counts });
    }
}

fn check_ca1(ann: &Announcement, params: &Parameters) -> Ca1Verdict {
    let mut violations = 0;
    let mut first: Option<CardSet> = None;
    for x in ksubsets(params.v, params.b).expect("b <= v") {
        let avoiding = ann.lines().iter().filter(|l| l.is_disjoint(x)).count();
        if avoiding > 1 {
            violations += 1;
            if first.is_none_or(|f| x < f) {
                first = Some(x);
            }
        }
    }
    Ca1Verdict {
        pass: violations == 0,
        violations,
        witness: first.map(|bset| Ca1Witness { bset, lines: lines_avoiding(ann, bset) }),
    }
}

/// CA1 ∧ CA2 ∧ CA3.
pub fn is_good(ann: &Announcement, params: &Parameters, limit: WorkLimit) -> Result<bool> {
    check_shape(ann, params)?;
    limit.check(axiom_work(params))?;
    Ok(GoodnessChecker::new(params).is_good(ann.lines()))
}

/// Early-exit CA1–CA3 test over precomputed `b`- and `c`-sets, for bulk filtering.
#[derive(Debug, Clone)]
pub struct GoodnessChecker {
    deck: CardSet,
    bsets: Vec<CardSet>,
    csets: Vec<CardSet>,
}

impl GoodnessChecker {
    pub fn new(params: &Parameters) -> Self {
        Self {
            deck: params.deck(),
            bsets: ksubsets(params.v, params.b).expect("b <= v").collect(),
            csets: ksubsets(params.v, params.c).expect("c <= v").collect(),
        }
    }

    /// `lines` must be distinct `a`-sets of the deck.
    pub fn is_good(&self, lines: &[CardSet]) -> bool {
        for &x in &self.csets {
            let mut union = 0u64;
            let mut inter = u64::MAX;
            for l in lines {
                if l.is_disjoint(x) {
                    union |= l.mask();
                    inter &= l.mask();
                }
            }
            // An empty family leaves `inter` full, which also fails CA3 below.
            if union == 0 || inter != 0 {
                return false;
            }
            if CardSet::from_mask(union) != self.deck.difference(x) {
                return false;
            }
        }
        self.bsets.iter().all(|&x| lines.iter().filter(|l| l.is_disjoint(x)).count() <= 1)
    }
}

impl Ca1Witness {
    /// True when the witness is a genuine CA1 violation of `ann`.
    pub fn recheck(&self, ann: &Announcement, params: &Parameters) -> bool {
        self.bset.len() == params.b && lines_avoiding(ann, self.bset).len() > 1
    }
}

impl Ca2Witness {
    pub fn recheck(&self, ann: &Announcement, params: &Parameters) -> bool {
        let lines = lines_avoiding(ann, self.cset);
        self.cset.len() == params.c
            && !lines.is_empty()
            && !self.common.is_empty()
            && lines.iter().all(|l| self.common.is_subset(*l))
    }
}

impl Ca3Witness {
    pub fn recheck(&self, ann: &Announcement, params: &Parameters) -> bool {
        let lines = lines_avoiding(ann, self.cset);
        self.cset.len() == params.c
            && !self.missing.is_empty()
            && self.missing.is_disjoint(self.cset)
            && lines.iter().all(|l| l.is_disjoint(self.missing))
    }
}

impl BalanceWitness {
    /// Recheck against CA4 (`bob_side == false`) or CA5 (`bob_side == true`).
    pub fn recheck(&self, ann: &Announcement, params: &Parameters, bob_side: bool) -> bool {
        let sets = if bob_side {
            bob_sets(ann, self.cset, params)
        } else {
            lines_avoiding(ann, self.cset)
        };
        let mut counts = (0..params.v)
            .filter(|&y| !self.cset.contains(y))
            .map(|y| sets.iter().filter(|s| s.contains(y)).count());
        let first = counts.next();
        self.cset.len() == params.c && counts.any(|n| Some(n) != first)
    }
}
