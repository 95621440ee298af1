//! Exact posterior analysis of a protocol under a uniform deal prior.
//!
//! Every deal is equally likely, so conditioning on an announcement and on an
//! observer's cards leaves, for each line `L` of the announcement, a weight
//! proportional to `P(announcement | hand = L)` when `L` misses the observer's
//! cards and zero otherwise. Under the literal special-point reading the
//! weight is further scaled by the hand-class factor.

use serde_json::{json, Value};

use num::{Signed, Zero};

use crate::enumeration::triple_point;
use crate::error::{Error, Result};
use crate::model::{Announcement, CardSet};
use crate::protocols::{ratio, Prob, Protocol, RationalDoc};

fn rational_json(p: &Prob) -> Value {
    serde_json::to_value(RationalDoc::from(p)).expect("plain data serializes")
}

/// Posterior over the lines of one announcement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosteriorTable {
    pub announcement: Announcement,
    pub observer: CardSet,
    /// `(line, P(hand = line | announcement, observer))` for every line, canonical order.
    pub posteriors: Vec<(CardSet, Prob)>,
    /// Class weights of the literal special-point reading were applied.
    pub literal_reading: bool,
}

impl PosteriorTable {
    pub fn of(&self, line: CardSet) -> Prob {
        self.posteriors
            .iter()
            .find(|(l, _)| *l == line)
            .map_or_else(Prob::zero, |(_, p)| p.clone())
    }

    /// Probability that `card` is in Alice's hand.
    pub fn card_posterior(&self, card: usize) -> Prob {
        self.posteriors
            .iter()
            .filter(|(l, _)| l.contains(card))
            .fold(Prob::zero(), |acc, (_, p)| acc + p)
    }

    pub fn total(&self) -> Prob {
        self.posteriors.iter().fold(Prob::zero(), |acc, (_, p)| acc + p)
    }

    pub fn to_json(&self, v: usize) -> Value {
        json!({
            "announcement": self.announcement.to_compact(v),
            "observer": self.observer,
            "literal_reading": self.literal_reading,
            "posteriors": self.posteriors.iter().map(|(l, p)| json!({
                "line": l.to_compact(v),
                "p": rational_json(p),
            })).collect::<Vec<_>>(),
        })
    }
}

fn hand_weight(proto: &Protocol, hand: CardSet, ann: &Announcement) -> Prob {
    let p = proto.probability(hand, ann);
    match &proto.class_weights {
        Some(w) => p * w.weight(hand),
        None => p,
    }
}

/// `P(hand = L | announcement, observer)` for every line `L` of `ann`.
pub fn posterior_lines(proto: &Protocol, ann: &Announcement, observer: CardSet) -> Result<PosteriorTable> {
    let weights: Vec<(CardSet, Prob)> = ann
        .lines()
        .iter()
        .map(|&l| {
            let w = if l.is_disjoint(observer) {
                hand_weight(proto, l, ann)
            } else {
                Prob::zero()
            };
            (l, w)
        })
        .collect();
    let total = weights.iter().fold(Prob::zero(), |acc, (_, w)| acc + w);
    if total.is_zero() {
        return Err(Error::NotInSupport(format!(
            "{} (observer {})",
            ann.to_compact(proto.params.v),
            observer.to_compact(proto.params.v)
        )));
    }
    Ok(PosteriorTable {
        announcement: ann.clone(),
        observer,
        posteriors: weights.into_iter().map(|(l, w)| (l, w / &total)).collect(),
        literal_reading: proto.class_weights.is_some(),
    })
}

/// Per-announcement summary inside a [`BiasReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnouncementBias {
    pub posterior: PosteriorTable,
    pub triple_point: Option<usize>,
    /// `P(triple point ∈ hand | announcement)`.
    pub triple_in_hand: Option<Prob>,
    /// Largest `|posterior − 1/#lines|` over the lines of the announcement.
    pub max_deviation: Prob,
}

/// Protocol-level bias summary; all quantities exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiasReport {
    pub protocol: String,
    pub observer: CardSet,
    pub literal_reading: bool,
    pub announcements: Vec<AnnouncementBias>,
    pub max_line_deviation: Prob,
    /// Joint probability, over deals and protocol coins, that the triple
    /// point of the produced announcement is one of Alice's cards.
    pub class_triple_in_hand: Prob,
    pub class_triple_not_in_hand: Prob,
}

impl BiasReport {
    /// Distinct values of `P(triple ∈ hand | announcement)`, ascending.
    pub fn triple_posteriors(&self) -> Vec<Prob> {
        let mut values: Vec<Prob> = self
            .announcements
            .iter()
            .filter_map(|a| a.triple_in_hand.clone())
            .collect();
        values.sort();
        values.dedup();
        values
    }

    pub fn to_json(&self, v: usize) -> Value {
        json!({
            "protocol": self.protocol,
            "observer": self.observer,
            "literal_reading": self.literal_reading,
            "announcement_count": self.announcements.len(),
            "max_line_deviation": rational_json(&self.max_line_deviation),
            "triple_posteriors": self.triple_posteriors().iter().map(rational_json).collect::<Vec<_>>(),
            "class_frequencies": {
                "triple_in_hand": rational_json(&self.class_triple_in_hand),
                "triple_not_in_hand": rational_json(&self.class_triple_not_in_hand),
            },
            "references": {
                "prior_point_in_hand": rational_json(&ratio(3, 7)),
                "uniform_triple_in_hand": rational_json(&ratio(3, 5)),
                "even": rational_json(&ratio(1, 2)),
            },
            "announcements": self.announcements.iter().map(|a| json!({
                "announcement": a.posterior.announcement.to_compact(v),
                "triple_point": a.triple_point,
                "triple_in_hand": a.triple_in_hand.as_ref().map(rational_json),
                "max_deviation": rational_json(&a.max_deviation),
                "posteriors": a.posterior.posteriors.iter().map(|(l, p)| json!({
                    "line": l.to_compact(v),
                    "p": rational_json(p),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Analyzes every announcement in the protocol's joint support as seen by a
/// holder of `observer` (empty for an outside observer). Announcements the
/// observer's cards rule out entirely are skipped.
pub fn bias_report_for(proto: &Protocol, observer: CardSet) -> Result<BiasReport> {
    let mut announcements = Vec::new();
    let mut max_line_deviation = Prob::zero();
    for ann in proto.joint_support() {
        let posterior = match posterior_lines(proto, &ann, observer) {
            Ok(p) => p,
            Err(Error::NotInSupport(_)) => continue,
            Err(e) => return Err(e),
        };
        let uniform = ratio(1, ann.len() as i64);
        let max_deviation = posterior
            .posteriors
            .iter()
            .map(|(_, p)| (p - &uniform).abs())
            .max()
            .unwrap_or_else(Prob::zero);
        if max_deviation > max_line_deviation {
            max_line_deviation = max_deviation.clone();
        }
        let triple = triple_point(&ann);
        let triple_in_hand = triple.map(|t| posterior.card_posterior(t));
        announcements.push(AnnouncementBias { posterior, triple_point: triple, triple_in_hand, max_deviation });
    }

    let mut inside = Prob::zero();
    let mut total = Prob::zero();
    for (&hand, dist) in &proto.table {
        let scale = proto
            .class_weights
            .as_ref()
            .map_or_else(|| ratio(1, 1), |w| w.weight(hand).clone());
        for (ann, p) in dist {
            let mass = p * &scale;
            if triple_point(ann).is_some_and(|t| hand.contains(t)) {
                inside += &mass;
            }
            total += mass;
        }
    }
    let (class_in, class_out) = if total.is_zero() {
        (Prob::zero(), Prob::zero())
    } else {
        let class_in = inside / &total;
        let class_out = ratio(1, 1) - &class_in;
        (class_in, class_out)
    };

    Ok(BiasReport {
        protocol: proto.name.clone(),
        observer,
        literal_reading: proto.class_weights.is_some(),
        announcements,
        max_line_deviation,
        class_triple_in_hand: class_in,
        class_triple_not_in_hand: class_out,
    })
}

/// [`bias_report_for`] with an outside observer.
pub fn bias_report(proto: &Protocol) -> Result<BiasReport> {
    bias_report_for(proto, CardSet::EMPTY)
}
