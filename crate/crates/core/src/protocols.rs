//! Announcement-producing protocols as explicit hand → distribution tables.
//!
//! Probabilities are exact rationals. The built-in protocols all work on
//! `(3,3,1)` five-line announcements:
//!
//! * `uniform60`: uniform over the 60 good announcements containing the hand.
//! * `fact1`: a fair coin between the announcements whose triple point is an
//!   actual card (36 of them) and the rest (24), uniform within each class.
//! * `fact2-conditional(p)`: uniform over the announcements containing the
//!   hand with triple point `p` (12 of them when `p` is in the hand, 6 otherwise).
//! * `fact2-literal(p)`: the same table, plus class weights 4/7 (hands holding
//!   `p`) and 3/7 (hands not holding `p`). A single hand only ever sees one of
//!   the two classes, so the weights cannot live inside the per-hand
//!   distribution; they are carried as metadata for the analyzer.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::axioms::GoodnessChecker;
use crate::enumeration::{classify_by_triple, good_announcements_by_hand, triple_point};
use crate::error::{Error, Result};
use crate::limits::WorkLimit;
use crate::model::{Announcement, CardSet, Parameters};

pub type Prob = BigRational;

pub fn ratio(num: i64, den: i64) -> Prob {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProtocolKind {
    Uniform60,
    Fact1,
    Fact2Conditional(usize),
    Fact2Literal(usize),
}

impl ProtocolKind {
    /// Parses `uniform60`, `fact1`, `fact2-conditional` or `fact2-literal`;
    /// the last two need the public point.
    pub fn parse(name: &str, point: Option<usize>) -> Result<Self> {
        let need_point = || {
            point.ok_or_else(|| Error::Unsupported(format!("protocol {name} needs a special point")))
        };
        match name.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "uniform60" => Ok(ProtocolKind::Uniform60),
            "fact1" => Ok(ProtocolKind::Fact1),
            "fact2-conditional" => Ok(ProtocolKind::Fact2Conditional(need_point()?)),
            "fact2-literal" => Ok(ProtocolKind::Fact2Literal(need_point()?)),
            other => Err(Error::Unsupported(format!("unknown protocol {other:?}"))),
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProtocolKind::Uniform60 => write!(f, "uniform60"),
            ProtocolKind::Fact1 => write!(f, "fact1"),
            ProtocolKind::Fact2Conditional(p) => write!(f, "fact2-conditional({p})"),
            ProtocolKind::Fact2Literal(p) => write!(f, "fact2-literal({p})"),
        }
    }
}

/// Hand-class weights for the literal reading of the special-point protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassWeights {
    pub point: usize,
    pub with_point: Prob,
    pub without_point: Prob,
}

impl ClassWeights {
    pub fn weight(&self, hand: CardSet) -> &Prob {
        if hand.contains(self.point) {
            &self.with_point
        } else {
            &self.without_point
        }
    }
}

/// A distribution over announcements for one hand.
pub type Distribution = Vec<(Announcement, Prob)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protocol {
    pub name: String,
    pub params: Parameters,
    pub table: BTreeMap<CardSet, Distribution>,
    pub class_weights: Option<ClassWeights>,
}

impl Protocol {
    pub fn distribution(&self, hand: CardSet) -> Result<&Distribution> {
        self.table
            .get(&hand)
            .ok_or_else(|| Error::UnknownHand(hand.to_compact(self.params.v)))
    }

    /// `P(announcement | hand)`, zero when outside the support.
    pub fn probability(&self, hand: CardSet, ann: &Announcement) -> Prob {
        self.table
            .get(&hand)
            .and_then(|d| d.iter().find(|(a, _)| a == ann))
            .map_or_else(Prob::zero, |(_, p)| p.clone())
    }

    /// Every announcement in some hand's support, canonical order.
    pub fn joint_support(&self) -> Vec<Announcement> {
        let mut anns: Vec<Announcement> = self
            .table
            .values()
            .flat_map(|d| d.iter().map(|(a, _)| a.clone()))
            .collect();
        anns.sort();
        anns.dedup();
        anns
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ProtocolDoc::from(self)).expect("plain data serializes")
    }
}

fn uniform(anns: &[Announcement], scale: &Prob) -> Distribution {
    let p = scale / BigInt::from(anns.len());
    anns.iter().map(|a| (a.clone(), p.clone())).collect()
}

fn require_331(params: &Parameters) -> Result<()> {
    if (params.a, params.b, params.c) == (3, 3, 1) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("protocols are defined for (3,3,1), not {params}")))
    }
}

/// Materializes one of the built-in protocols for `(3,3,1)`.
pub fn build_protocol(kind: ProtocolKind, params: &Parameters, limit: WorkLimit) -> Result<Protocol> {
    require_331(params)?;
    if let ProtocolKind::Fact2Conditional(p) | ProtocolKind::Fact2Literal(p) = kind {
        if p >= params.v {
            return Err(Error::CardOutOfRange { card: p, v: params.v });
        }
    }
    let by_hand = good_announcements_by_hand(params, 5, limit)?;
    let half = ratio(1, 2);
    let mut table = BTreeMap::new();
    for (hand, anns) in by_hand {
        let dist = match kind {
            ProtocolKind::Uniform60 => uniform(&anns, &Prob::one()),
            ProtocolKind::Fact1 => {
                let (inside, outside) = classify_by_triple(&anns, hand)?;
                let mut dist = uniform(&inside, &half);
                dist.extend(uniform(&outside, &half));
                dist.sort_by(|x, y| x.0.cmp(&y.0));
                dist
            }
            ProtocolKind::Fact2Conditional(p) | ProtocolKind::Fact2Literal(p) => {
                let special: Vec<Announcement> =
                    anns.into_iter().filter(|a| triple_point(a) == Some(p)).collect();
                uniform(&special, &Prob::one())
            }
        };
        table.insert(hand, dist);
    }
    let class_weights = match kind {
        ProtocolKind::Fact2Literal(point) => Some(ClassWeights {
            point,
            with_point: ratio(4, 7),
            without_point: ratio(3, 7),
        }),
        _ => None,
    };
    Ok(Protocol {
        name: kind.to_string(),
        params: *params,
        table,
        class_weights,
    })
}

/// Integer cumulative weights for one hand's distribution; draws are exact.
#[derive(Debug, Clone)]
pub struct HandSampler<'p> {
    entries: &'p Distribution,
    cumulative: Vec<u64>,
}

impl<'p> HandSampler<'p> {
    pub fn new(proto: &'p Protocol, hand: CardSet) -> Result<Self> {
        let entries = proto.distribution(hand)?;
        let den = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, p)| num::integer::lcm(acc, p.denom().clone()));
        let mut running = 0u64;
        let mut cumulative = Vec::with_capacity(entries.len());
        for (_, p) in entries {
            let w = (p * &den)
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Unsupported("probability weight does not fit in 64 bits".into()))?;
            running = running
                .checked_add(w)
                .ok_or_else(|| Error::Unsupported("total weight does not fit in 64 bits".into()))?;
            cumulative.push(running);
        }
        if running == 0 {
            return Err(Error::UnknownHand(hand.to_compact(proto.params.v)));
        }
        Ok(Self { entries, cumulative })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> &'p Announcement {
        let total = *self.cumulative.last().expect("non-empty");
        let x = rng.random_range(0..total);
        let idx = self.cumulative.partition_point(|&c| c <= x);
        &self.entries[idx].0
    }
}

/// Draws one announcement for `hand`.
pub fn sample<'p, R: Rng + ?Sized>(proto: &'p Protocol, hand: CardSet, rng: &mut R) -> Result<&'p Announcement> {
    Ok(HandSampler::new(proto, hand)?.draw(rng))
}

/// `n` draws for `hand` from a ChaCha generator seeded with `seed`.
pub fn sample_seeded(proto: &Protocol, hand: CardSet, seed: u64, n: usize) -> Result<Vec<Announcement>> {
    let sampler = HandSampler::new(proto, hand)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| sampler.draw(&mut rng).clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Untruthful { hand: CardSet, announcement: String },
    Unsafe { hand: CardSet, announcement: String },
    NonPositive { hand: CardSet, announcement: String, probability: String },
    NotNormalized { hand: CardSet, sum: String },
    DuplicateEntry { hand: CardSet, announcement: String },
    MalformedLine { hand: CardSet, announcement: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub protocol: String,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks truthfulness, CA1–CA3 safety and exact normalization of every table row.
pub fn validate_protocol(proto: &Protocol) -> ValidationReport {
    let params = &proto.params;
    let checker = GoodnessChecker::new(params);
    let deck = params.deck();
    let mut violations = Vec::new();
    for (&hand, dist) in &proto.table {
        let mut sum = Prob::zero();
        let mut seen: Vec<&Announcement> = Vec::new();
        for (ann, p) in dist {
            let text = ann.to_compact(params.v);
            if seen.contains(&ann) {
                violations.push(Violation::DuplicateEntry { hand, announcement: text.clone() });
            }
            seen.push(ann);
            if !p.is_positive() {
                violations.push(Violation::NonPositive {
                    hand,
                    announcement: text.clone(),
                    probability: p.to_string(),
                });
            }
            sum += p;
            if !ann.contains(hand) {
                violations.push(Violation::Untruthful { hand, announcement: text.clone() });
            }
            let well_formed = ann
                .lines()
                .iter()
                .all(|l| l.len() == params.a && l.is_subset(deck));
            if !well_formed {
                violations.push(Violation::MalformedLine { hand, announcement: text });
            } else if !checker.is_good(ann.lines()) {
                violations.push(Violation::Unsafe { hand, announcement: text });
            }
        }
        if !sum.is_one() {
            violations.push(Violation::NotNormalized { hand, sum: sum.to_string() });
        }
    }
    ValidationReport {
        protocol: proto.name.clone(),
        valid: violations.is_empty(),
        violations,
    }
}

/// Exact rational in JSON: `{"num":…,"den":…}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: serde_json::Number,
    pub den: serde_json::Number,
}

impl From<&Prob> for RationalDoc {
    fn from(p: &Prob) -> Self {
        let int = |x: &BigInt| {
            x.to_i64()
                .map(serde_json::Number::from)
                .or_else(|| serde_json::Number::from_str(&x.to_string()).ok())
                .expect("integer renders as a JSON number")
        };
        RationalDoc { num: int(p.numer()), den: int(p.denom()) }
    }
}

impl TryFrom<&RationalDoc> for Prob {
    type Error = Error;

    fn try_from(doc: &RationalDoc) -> Result<Prob> {
        let int = |n: &serde_json::Number| {
            BigInt::from_str(&n.to_string())
                .map_err(|_| Error::Unsupported(format!("{n} is not an integer")))
        };
        let den = int(&doc.den)?;
        if den.is_zero() {
            return Err(Error::Unsupported("zero denominator".into()));
        }
        Ok(BigRational::new(int(&doc.num)?, den))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryDoc {
    pub announcement: Vec<Vec<usize>>,
    pub p: RationalDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowDoc {
    pub hand: Vec<usize>,
    pub support: Vec<EntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassWeightsDoc {
    pub point: usize,
    pub with_point: RationalDoc,
    pub without_point: RationalDoc,
}

/// Serialized protocol table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolDoc {
    pub name: String,
    pub params: Parameters,
    pub class_weights: Option<ClassWeightsDoc>,
    pub table: Vec<RowDoc>,
}

impl From<&Protocol> for ProtocolDoc {
    fn from(proto: &Protocol) -> Self {
        ProtocolDoc {
            name: proto.name.clone(),
            params: proto.params,
            class_weights: proto.class_weights.as_ref().map(|w| ClassWeightsDoc {
                point: w.point,
                with_point: (&w.with_point).into(),
                without_point: (&w.without_point).into(),
            }),
            table: proto
                .table
                .iter()
                .map(|(hand, dist)| RowDoc {
                    hand: hand.to_vec(),
                    support: dist
                        .iter()
                        .map(|(a, p)| EntryDoc {
                            announcement: a.lines().iter().map(|l| l.to_vec()).collect(),
                            p: p.into(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ProtocolDoc> for Protocol {
    type Error = Error;

    fn try_from(doc: &ProtocolDoc) -> Result<Protocol> {
        let v = doc.params.v;
        let mut table = BTreeMap::new();
        for row in &doc.table {
            let hand = CardSet::from_cards(row.hand.iter().copied(), v)?;
            let mut dist = Vec::new();
            for entry in &row.support {
                let lines = entry
                    .announcement
                    .iter()
                    .map(|l| CardSet::from_cards(l.iter().copied(), v))
                    .collect::<Result<Vec<_>>>()?;
                dist.push((Announcement::new(lines)?, Prob::try_from(&entry.p)?));
            }
            table.insert(hand, dist);
        }
        let class_weights = match &doc.class_weights {
            Some(w) => Some(ClassWeights {
                point: w.point,
                with_point: Prob::try_from(&w.with_point)?,
                without_point: Prob::try_from(&w.without_point)?,
            }),
            None => None,
        };
        Ok(Protocol {
            name: doc.name.clone(),
            params: doc.params,
            table,
            class_weights,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_announcement;

    fn p331() -> Parameters {
        Parameters::new(3, 3, 1).unwrap()
    }

    fn set(text: &str) -> CardSet {
        CardSet::from_cards(text.bytes().map(|b| (b - b'0') as usize), 10).unwrap()
    }

    #[test]
    fn uniform_rows() {
        let proto = build_protocol(ProtocolKind::Uniform60, &p331(), WorkLimit::default()).unwrap();
        let row = proto.distribution(set("012")).unwrap();
        assert_eq!(row.len(), 60);
        assert!(row.iter().all(|(_, p)| *p == ratio(1, 60)));
        assert!(validate_protocol(&proto).valid);
    }

    #[test]
    fn fact1_rows() {
        let proto = build_protocol(ProtocolKind::Fact1, &p331(), WorkLimit::default()).unwrap();
        let row = proto.distribution(set("012")).unwrap();
        let small = row.iter().filter(|(_, p)| *p == ratio(1, 72)).count();
        let large = row.iter().filter(|(_, p)| *p == ratio(1, 48)).count();
        assert_eq!((small, large), (36, 24));
        assert!(validate_protocol(&proto).valid);
    }

    #[test]
    fn fact2_rows() {
        let proto =
            build_protocol(ProtocolKind::Fact2Conditional(0), &p331(), WorkLimit::default()).unwrap();
        let row = proto.distribution(set("135")).unwrap();
        assert_eq!(row.len(), 6);
        assert!(row.iter().all(|(_, p)| *p == ratio(1, 6)));
        assert_eq!(proto.distribution(set("012")).unwrap().len(), 12);
        let literal =
            build_protocol(ProtocolKind::Fact2Literal(0), &p331(), WorkLimit::default()).unwrap();
        assert_eq!(literal.table, proto.table);
        let w = literal.class_weights.as_ref().unwrap();
        assert_eq!(*w.weight(set("012")), ratio(4, 7));
        assert_eq!(*w.weight(set("135")), ratio(3, 7));
    }

    #[test]
    fn bad_requests() {
        let q = Parameters::new(4, 3, 1).unwrap();
        assert!(build_protocol(ProtocolKind::Uniform60, &q, WorkLimit::default()).is_err());
        assert!(build_protocol(ProtocolKind::Fact2Literal(7), &p331(), WorkLimit::default()).is_err());
        assert!(ProtocolKind::parse("fact2-literal", None).is_err());
        assert_eq!(
            ProtocolKind::parse("fact2_conditional", Some(3)).unwrap(),
            ProtocolKind::Fact2Conditional(3)
        );
    }

    #[test]
    fn violations_are_reported() {
        let p = p331();
        let good = parse_announcement("012 034 056 135 246", &p).unwrap();
        let lacking = parse_announcement("034 056 135 246 013", &p).unwrap();
        let mut table = BTreeMap::new();
        table.insert(set("012"), vec![(lacking, Prob::one())]);
        table.insert(set("034"), vec![(good, ratio(59, 60))]);
        let proto = Protocol { name: "custom".into(), params: p, table, class_weights: None };
        let report = validate_protocol(&proto);
        assert!(!report.valid);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Untruthful { hand, .. } if *hand == set("012"))));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotNormalized { sum, .. } if sum == "59/60")));
    }

    #[test]
    fn sampling_is_deterministic() {
        let proto = build_protocol(ProtocolKind::Fact1, &p331(), WorkLimit::default()).unwrap();
        let a = sample_seeded(&proto, set("012"), 7, 20).unwrap();
        let b = sample_seeded(&proto, set("012"), 7, 20).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|ann| ann.contains(set("012"))));
        assert!(sample_seeded(&proto, set("01"), 7, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let proto =
            build_protocol(ProtocolKind::Fact2Literal(0), &p331(), WorkLimit::default()).unwrap();
        let json = proto.to_json();
        assert_eq!(json["table"][0]["support"][0]["p"]["den"], 12);
        let doc: ProtocolDoc = serde_json::from_value(json).unwrap();
        assert_eq!(Protocol::try_from(&doc).unwrap(), proto);
    }
}
