//! Decks, card sets, announcements and their interchange formats.
//!
//! Cards are the integers `0..v`. A [`CardSet`] is stored as a 64-bit mask,
//! so every deck handled by this crate has at most 64 cards; larger decks are
//! rejected with [`Error::DeckTooLarge`] at construction time.
//!
//! Two text forms are understood:
//!
//! * compact: lines separated by whitespace; for `v <= 10` a line is written
//!   as concatenated digits (`012 034 056`), otherwise as comma separated
//!   decimals (`0,11 3,12`). Comma separated lines are accepted for any `v`.
//! * JSON: `{"params":[a,b,c],"lines":[[0,1,2],...]}`, or a bare array of
//!   arrays.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest deck size representable by a [`CardSet`].
pub const MAX_DECK: usize = 64;

/// The card-deal triple `(a, b, c)` together with the deck size `v = a + b + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Parameters {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub v: usize,
}

impl Parameters {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::InvalidParameters(format!(
                "({a},{b},{c}): every component must be at least 1"
            )));
        }
        let v = a + b + c;
        if v > MAX_DECK {
            return Err(Error::DeckTooLarge(v));
        }
        Ok(Self { a, b, c, v })
    }

    /// Parses `"a,b,c"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameters(format!(
                "expected a,b,c but got {text:?}"
            )));
        }
        let mut nums = [0usize; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| {
                Error::InvalidParameters(format!("{part:?} is not a non-negative integer"))
            })?;
        }
        Self::new(nums[0], nums[1], nums[2])
    }

    /// The full deck `{0, .., v-1}`.
    pub fn deck(&self) -> CardSet {
        CardSet::full(self.v)
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for Parameters {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b, self.c].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Parameters {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[usize; 3]>::deserialize(d)?;
        Parameters::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

/// Convenience wrapper around [`Parameters::new`].
pub fn make_parameters(a: usize, b: usize, c: usize) -> Result<Parameters> {
    Parameters::new(a, b, c)
}

/// A set of distinct cards, ordered lexicographically by its sorted member list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CardSet(u64);

impl CardSet {
    pub const EMPTY: CardSet = CardSet(0);

    /// Wraps a raw bit mask; bit `i` set means card `i` is a member.
    pub const fn from_mask(mask: u64) -> Self {
        CardSet(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// `{0, .., v-1}`. Panics if `v > 64`.
    pub fn full(v: usize) -> Self {
        assert!(v <= MAX_DECK, "deck size {v} exceeds {MAX_DECK}");
        if v == MAX_DECK {
            CardSet(u64::MAX)
        } else {
            CardSet((1u64 << v) - 1)
        }
    }

    /// Builds a set from cards in any order, rejecting duplicates and cards `>= v`.
    pub fn from_cards<I: IntoIterator<Item = usize>>(cards: I, v: usize) -> Result<Self> {
        if v > MAX_DECK {
            return Err(Error::DeckTooLarge(v));
        }
        let mut mask = 0u64;
        for card in cards {
            if card >= v {
                return Err(Error::CardOutOfRange { card, v });
            }
            let bit = 1u64 << card;
            if mask & bit != 0 {
                return Err(Error::DuplicateCard {
                    card,
                    line: CardSet(mask).to_compact(v),
                });
            }
            mask |= bit;
        }
        Ok(CardSet(mask))
    }

    pub fn singleton(card: usize) -> Self {
        assert!(card < MAX_DECK);
        CardSet(1u64 << card)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, card: usize) -> bool {
        card < MAX_DECK && self.0 & (1u64 << card) != 0
    }

    pub fn is_disjoint(self, other: CardSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: CardSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: CardSet) -> CardSet {
        CardSet(self.0 | other.0)
    }

    pub fn intersection(self, other: CardSet) -> CardSet {
        CardSet(self.0 & other.0)
    }

    pub fn difference(self, other: CardSet) -> CardSet {
        CardSet(self.0 & !other.0)
    }

    /// Largest member, if any.
    pub fn max_card(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn cards(self) -> Cards {
        Cards(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.cards().collect()
    }

    /// Compact notation for a deck of `v` cards: digits for `v <= 10`, commas otherwise.
    pub fn to_compact(self, v: usize) -> String {
        if v <= 10 {
            self.cards().map(|c| char::from(b'0' + c as u8)).collect()
        } else {
            self.cards().join(",")
        }
    }
}

/// Iterator over the members of a [`CardSet`].
#[derive(Debug, Clone)]
pub struct Cards(u64);

impl Iterator for Cards {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let card = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(card)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Cards {}

impl Ord for CardSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The sorted lists agree up to the lowest differing card `d`. The set
        // holding `d` is smaller unless the other set has nothing beyond `d`,
        // in which case the other set is a proper prefix.
        let d = diff.trailing_zeros();
        let above = u64::MAX.checked_shl(d + 1).unwrap_or(0);
        let (holder, rest) = if self.0 & (1u64 << d) != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if rest & above != 0 {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for CardSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CardSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.cards()).finish()
    }
}

impl fmt::Display for CardSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.max_card().map_or(0, |m| m + 1);
        f.write_str(&self.to_compact(v))
    }
}

impl Serialize for CardSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.cards())
    }
}

impl<'de> Deserialize<'de> for CardSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let cards = Vec::<usize>::deserialize(d)?;
        CardSet::from_cards(cards, MAX_DECK).map_err(serde::de::Error::custom)
    }
}

/// All `k`-subsets of `{0, .., v-1}` in lexicographic order.
pub fn enumerate_ksets(v: usize, k: usize) -> Result<Vec<CardSet>> {
    if v > MAX_DECK {
        return Err(Error::DeckTooLarge(v));
    }
    if k > v {
        return Err(Error::SetTooLarge { k, v });
    }
    Ok((0..v)
        .combinations(k)
        .map(|cards| CardSet(cards.into_iter().fold(0, |m, c| m | 1u64 << c)))
        .collect())
}

/// Lazily yields every `k`-subset of `{0, .., v-1}` in increasing mask order
/// (colexicographic). Use [`enumerate_ksets`] when lexicographic order matters.
pub fn ksubsets(v: usize, k: usize) -> Result<KSubsets> {
    if v > MAX_DECK {
        return Err(Error::DeckTooLarge(v));
    }
    if k > v {
        return Err(Error::SetTooLarge { k, v });
    }
    Ok(KSubsets {
        next: Some((1u128 << k) - 1),
        limit: 1u128 << v,
        k,
    })
}

/// Iterator returned by [`ksubsets`].
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
    k: usize,
}

impl Iterator for KSubsets {
    type Item = CardSet;

    fn next(&mut self) -> Option<CardSet> {
        let current = self.next?;
        if current >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if self.k == 0 {
            None
        } else {
            // Gosper's hack: next larger integer with the same popcount.
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            Some((((ripple ^ current) >> 2) / low) | ripple)
        };
        Some(CardSet(current as u64))
    }
}

/// `Ω \ x` for a deck of `v` cards.
pub fn complement_set(x: CardSet, v: usize) -> Result<CardSet> {
    if v > MAX_DECK {
        return Err(Error::DeckTooLarge(v));
    }
    if let Some(card) = x.difference(CardSet::full(v)).cards().next() {
        return Err(Error::CardOutOfRange { card, v });
    }
    Ok(CardSet::full(v).difference(x))
}

/// A collection of distinct, equally sized lines kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Announcement {
    lines: Vec<CardSet>,
}

impl Announcement {
    /// Sorts the lines and checks that they are distinct and of one size.
    /// An empty announcement is representable; operations that need lines
    /// reject it themselves.
    pub fn new(mut lines: Vec<CardSet>) -> Result<Self> {
        lines.sort();
        if let Some(first) = lines.first() {
            if lines.iter().any(|l| l.len() != first.len()) {
                return Err(Error::MixedBlockSizes);
            }
        }
        if let Some(w) = lines.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLine(w[0].to_string()));
        }
        Ok(Self { lines })
    }

    /// Like [`Announcement::new`], additionally checking every line against `params`.
    pub fn with_params(lines: Vec<CardSet>, params: &Parameters) -> Result<Self> {
        let deck = params.deck();
        for line in &lines {
            if let Some(card) = line.difference(deck).cards().next() {
                return Err(Error::CardOutOfRange { card, v: params.v });
            }
            if line.len() != params.a {
                return Err(Error::WrongLineSize {
                    line: line.to_compact(params.v),
                    found: line.len(),
                    expected: params.a,
                });
            }
        }
        let mut sorted = lines;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLine(w[0].to_compact(params.v)));
        }
        Ok(Self { lines: sorted })
    }

    pub fn lines(&self) -> &[CardSet] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn contains(&self, line: CardSet) -> bool {
        self.lines.binary_search(&line).is_ok()
    }

    /// Common line size, `None` when empty.
    pub fn block_size(&self) -> Option<usize> {
        self.lines.first().map(|l| l.len())
    }

    /// Union of all lines.
    pub fn points(&self) -> CardSet {
        self.lines.iter().fold(CardSet::EMPTY, |acc, l| acc.union(*l))
    }

    /// Compact text for a deck of `v` cards.
    pub fn to_compact(&self, v: usize) -> String {
        self.lines.iter().map(|l| l.to_compact(v)).join(" ")
    }
}

impl fmt::Display for Announcement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.points().max_card().map_or(0, |m| m + 1);
        f.write_str(&self.to_compact(v))
    }
}

/// JSON document form of an announcement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnouncementDoc {
    pub params: Parameters,
    pub lines: Vec<Vec<usize>>,
}

impl AnnouncementDoc {
    pub fn new(ann: &Announcement, params: &Parameters) -> Self {
        Self {
            params: *params,
            lines: ann.lines().iter().map(|l| l.to_vec()).collect(),
        }
    }
}

/// Parses an announcement in compact or JSON form and returns it in canonical order.
pub fn parse_announcement(text: &str, params: &Parameters) -> Result<Announcement> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let lines = if trimmed.starts_with('{') {
        let doc: AnnouncementDoc = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            column: offset + e.column(),
            message: e.to_string(),
        })?;
        if doc.params != *params {
            return Err(Error::InvalidParameters(format!(
                "document declares {} but {} was requested",
                doc.params, params
            )));
        }
        json_lines(doc.lines, params)?
    } else if trimmed.starts_with('[') {
        let raw: Vec<Vec<usize>> = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            column: offset + e.column(),
            message: e.to_string(),
        })?;
        json_lines(raw, params)?
    } else {
        compact_lines(text, params)?
    };
    if lines.is_empty() {
        return Err(Error::EmptyAnnouncement);
    }
    Announcement::with_params(lines, params)
}

fn json_lines(raw: Vec<Vec<usize>>, params: &Parameters) -> Result<Vec<CardSet>> {
    raw.into_iter()
        .map(|cards| CardSet::from_cards(cards, params.v))
        .collect()
}

fn compact_lines(text: &str, params: &Parameters) -> Result<Vec<CardSet>> {
    let mut lines = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = start;
        while let Some(&(i, ch)) = chars.peek() {
            if ch.is_whitespace() {
                break;
            }
            end = i + ch.len_utf8();
            chars.next();
        }
        lines.push(parse_compact_line(&text[start..end], start, params)?);
    }
    Ok(lines)
}

fn parse_compact_line(token: &str, start: usize, params: &Parameters) -> Result<CardSet> {
    let column = |i: usize| text_column(start + i);
    let mut cards = Vec::new();
    if token.contains(',') || params.v > 10 {
        let mut pos = 0;
        for part in token.split(',') {
            let card: usize = part.parse().map_err(|_| Error::Parse {
                column: column(pos),
                message: format!("expected a card number, found {part:?}"),
            })?;
            cards.push((card, pos));
            pos += part.len() + 1;
        }
    } else {
        for (i, ch) in token.char_indices() {
            let digit = ch.to_digit(10).ok_or_else(|| Error::Parse {
                column: column(i),
                message: format!("unexpected character {ch:?}"),
            })?;
            cards.push((digit as usize, i));
        }
    }
    let mut mask = 0u64;
    for (card, pos) in cards {
        if card >= params.v {
            return Err(Error::Parse {
                column: column(pos),
                message: Error::CardOutOfRange { card, v: params.v }.to_string(),
            });
        }
        if mask & (1u64 << card) != 0 {
            return Err(Error::DuplicateCard {
                card,
                line: token.to_string(),
            });
        }
        mask |= 1u64 << card;
    }
    Ok(CardSet(mask))
}

fn text_column(byte_offset: usize) -> usize {
    byte_offset + 1
}

/// Canonical compact text of `ann`.
pub fn format_announcement(ann: &Announcement, params: &Parameters) -> String {
    ann.to_compact(params.v)
}

/// JSON document text of `ann`.
pub fn format_announcement_json(ann: &Announcement, params: &Parameters) -> String {
    serde_json::to_string(&AnnouncementDoc::new(ann, params)).expect("plain data serializes")
}

/// A full deal: Alice's, Bob's and Cathy's hands partitioning the deck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Deal {
    pub alice: CardSet,
    pub bob: CardSet,
    pub cathy: CardSet,
}

impl Deal {
    pub fn new(alice: CardSet, bob: CardSet, cathy: CardSet, params: &Parameters) -> Result<Self> {
        let sizes = [
            ("alice", alice, params.a),
            ("bob", bob, params.b),
            ("cathy", cathy, params.c),
        ];
        for (who, hand, expected) in sizes {
            if hand.len() != expected {
                return Err(Error::InvalidDeal(format!(
                    "{who} holds {} cards, expected {expected}",
                    hand.len()
                )));
            }
        }
        if !alice.is_disjoint(bob) || !alice.is_disjoint(cathy) || !bob.is_disjoint(cathy) {
            return Err(Error::InvalidDeal("hands overlap".into()));
        }
        if alice.union(bob).union(cathy) != params.deck() {
            return Err(Error::InvalidDeal("hands do not cover the deck".into()));
        }
        Ok(Self { alice, bob, cathy })
    }

    /// Every deal for `params`, Alice's hand major, Bob's hand minor, lexicographically.
    pub fn all(params: &Parameters) -> Vec<Deal> {
        let deck = params.deck();
        let mut deals = Vec::new();
        for alice in enumerate_ksets(params.v, params.a).expect("a <= v") {
            for bob in enumerate_ksets(params.v, params.b).expect("b <= v") {
                if alice.is_disjoint(bob) {
                    let cathy = deck.difference(alice).difference(bob);
                    deals.push(Deal { alice, bob, cathy });
                }
            }
        }
        deals
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cards: &[usize]) -> CardSet {
        CardSet::from_cards(cards.iter().copied(), 64).unwrap()
    }

    #[test]
    fn parameters() {
        assert_eq!(make_parameters(3, 3, 1).unwrap().v, 7);
        assert_eq!(make_parameters(4, 3, 1).unwrap().v, 8);
        assert!(make_parameters(3, 3, 0).is_err());
        assert!(Parameters::parse("3,3").is_err());
        assert!(Parameters::parse("3,-1,1").is_err());
        assert_eq!(Parameters::parse(" 8, 6 ,2").unwrap().v, 16);
    }

    #[test]
    fn ksets() {
        assert_eq!(enumerate_ksets(7, 3).unwrap().len(), 35);
        assert_eq!(enumerate_ksets(7, 0).unwrap(), vec![CardSet::EMPTY]);
        let eight = enumerate_ksets(8, 4).unwrap();
        assert_eq!(eight.len(), 70);
        assert_eq!(eight[0], set(&[0, 1, 2, 3]));
        assert!(eight.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_ksets(3, 4).is_err());
    }

    #[test]
    fn lazy_ksubsets_match_eager() {
        for (v, k) in [(7, 3), (8, 4), (5, 0), (5, 5), (10, 1)] {
            let mut lazy: Vec<_> = ksubsets(v, k).unwrap().collect();
            lazy.sort();
            assert_eq!(lazy, enumerate_ksets(v, k).unwrap(), "v={v} k={k}");
        }
        assert_eq!(ksubsets(64, 63).unwrap().count(), 64);
        assert_eq!(ksubsets(64, 64).unwrap().count(), 1);
    }

    #[test]
    fn complement() {
        assert_eq!(complement_set(set(&[5]), 7).unwrap(), set(&[0, 1, 2, 3, 4, 6]));
        assert_eq!(complement_set(CardSet::EMPTY, 7).unwrap(), CardSet::full(7));
        assert_eq!(complement_set(CardSet::full(7), 7).unwrap(), CardSet::EMPTY);
        assert!(complement_set(set(&[7]), 7).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let mut sets = vec![set(&[1, 2]), set(&[0, 1, 2]), set(&[0, 1]), set(&[0, 3]), set(&[])];
        sets.sort();
        let want = vec![set(&[]), set(&[0, 1]), set(&[0, 1, 2]), set(&[0, 3]), set(&[1, 2])];
        assert_eq!(sets, want);
        assert!(set(&[63]) > set(&[62, 63]));
        assert!(set(&[0, 63]) < set(&[1]));
    }

    #[test]
    fn parse_listing_forms() {
        let p = make_parameters(3, 3, 1).unwrap();
        let ann = parse_announcement("012 034 056 135 246", &p).unwrap();
        assert_eq!(ann.len(), 5);
        let q = make_parameters(4, 3, 1).unwrap();
        let two = parse_announcement("0,2,4,6 1,3,5,7", &q).unwrap();
        assert_eq!(format_announcement(&two, &q), "0246 1357");
    }

    #[test]
    fn parse_errors() {
        let p = make_parameters(3, 3, 1).unwrap();
        assert!(matches!(
            parse_announcement("012 012", &p),
            Err(Error::DuplicateLine(_))
        ));
        assert!(matches!(
            parse_announcement("011", &p),
            Err(Error::DuplicateCard { card: 1, .. })
        ));
        assert!(matches!(
            parse_announcement("012 34", &p),
            Err(Error::WrongLineSize { found: 2, .. })
        ));
        assert!(matches!(
            parse_announcement("012 078", &p),
            Err(Error::Parse { column: 6, .. })
        ));
        assert!(matches!(
            parse_announcement("012 0x4", &p),
            Err(Error::Parse { column: 6, .. })
        ));
        assert!(matches!(parse_announcement("  ", &p), Err(Error::EmptyAnnouncement)));
    }

    #[test]
    fn format_is_canonical() {
        let p = make_parameters(3, 3, 1).unwrap();
        let ann = parse_announcement("034 012", &p).unwrap();
        assert_eq!(format_announcement(&ann, &p), "012 034");
        let seven = parse_announcement("245 236 146 135 056 034 012", &p).unwrap();
        assert_eq!(format_announcement(&seven, &p), "012 034 056 135 146 236 245");
    }

    #[test]
    fn wide_decks_use_commas() {
        let p = make_parameters(4, 4, 4).unwrap();
        let ann = parse_announcement("0,1,10,11 2,3,4,5", &p).unwrap();
        assert_eq!(format_announcement(&ann, &p), "0,1,10,11 2,3,4,5");
        assert!(parse_announcement("0123", &p).is_err());
    }

    #[test]
    fn json_forms() {
        let p = make_parameters(3, 3, 1).unwrap();
        let ann = parse_announcement("012 034", &p).unwrap();
        let doc = format_announcement_json(&ann, &p);
        assert_eq!(doc, r#"{"params":[3,3,1],"lines":[[0,1,2],[0,3,4]]}"#);
        assert_eq!(parse_announcement(&doc, &p).unwrap(), ann);
        assert_eq!(parse_announcement("[[0,3,4],[0,1,2]]", &p).unwrap(), ann);
        let q = make_parameters(4, 3, 1).unwrap();
        assert!(matches!(
            parse_announcement(&doc, &q),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn deals() {
        let p = make_parameters(3, 3, 1).unwrap();
        let all = Deal::all(&p);
        assert_eq!(all.len(), 140);
        assert!(Deal::new(set(&[0, 1, 2]), set(&[3, 4, 5]), set(&[6]), &p).is_ok());
        assert!(Deal::new(set(&[0, 1, 2]), set(&[2, 4, 5]), set(&[6]), &p).is_err());
        assert!(Deal::new(set(&[0, 1]), set(&[3, 4, 5]), set(&[6]), &p).is_err());
    }
}
