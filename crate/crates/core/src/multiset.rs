//! Symbols and finitely supported multisets over them.
//!
//! Multisets are the objects of the collective-token execution category: a
//! marking, an anti-marking and the generator count `χ(f)` of an execution are
//! all values of [`Multiset`]. The empty multiset is the monoidal unit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// An opaque, cheaply clonable identifier for a place or a transition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(name: impl AsRef<str>) -> Self {
        Sym(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Self {
        Sym::new(s)
    }
}

impl From<String> for Sym {
    fn from(s: String) -> Self {
        Sym(Arc::from(s))
    }
}

impl Serialize for Sym {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Sym {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d).map(Sym::from)
    }
}

/// A finitely supported map from symbols to positive counts.
///
/// Zero counts are never stored, so derived equality is multiset equality and
/// iteration is sorted by symbol.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset {
    entries: BTreeMap<Sym, u64>,
}

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(sym: impl Into<Sym>, count: u64) -> Self {
        let mut m = Self::new();
        m.insert(sym.into(), count);
        m
    }

    /// Builds a multiset from `(symbol, count)` pairs, summing repeats.
    pub fn from_counts<S: Into<Sym>>(pairs: impl IntoIterator<Item = (S, u64)>) -> Self {
        let mut m = Self::new();
        for (s, c) in pairs {
            m.insert(s.into(), c);
        }
        m
    }

    /// Adds `count` copies of `sym`.
    pub fn insert(&mut self, sym: Sym, count: u64) {
        if count == 0 {
            return;
        }
        let e = self.entries.entry(sym).or_insert(0);
        *e = e.checked_add(count).expect("multiset count overflow");
    }

    pub fn count(&self, sym: &Sym) -> u64 {
        self.entries.get(sym).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of elements counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, u64)> + '_ {
        self.entries.iter().map(|(s, c)| (s, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Sym> + '_ {
        self.entries.keys()
    }

    /// Pointwise sum `a ⊕ b`.
    pub fn sum(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.insert(s.clone(), c);
        }
        out
    }

    /// Pointwise difference `a ⊖ b`, defined only when `b ≤ a`.
    pub fn checked_sub(&self, other: &Multiset) -> Option<Multiset> {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            let e = out.entries.get_mut(s)?;
            match (*e).cmp(&c) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => {
                    out.entries.remove(s);
                }
                std::cmp::Ordering::Greater => *e -= c,
            }
        }
        Some(out)
    }

    /// Pointwise containment `self ≤ other`.
    pub fn is_sub(&self, other: &Multiset) -> bool {
        self.iter().all(|(s, c)| other.count(s) >= c)
    }

    /// The sorted, multiplicity-expanded string of this multiset.
    pub fn to_word(&self) -> Vec<Sym> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (s, c) in self.iter() {
            for _ in 0..c {
                out.push(s.clone());
            }
        }
        out
    }

    /// Renames every symbol, merging counts of symbols that collide.
    pub fn map_symbols(&self, mut f: impl FnMut(&Sym) -> Sym) -> Multiset {
        let mut out = Multiset::new();
        for (s, c) in self.iter() {
            out.insert(f(s), c);
        }
        out
    }

    /// Keeps only the entries whose symbol satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Sym) -> bool) -> Multiset {
        Multiset {
            entries: self
                .entries
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, c)| (s.clone(), *c))
                .collect(),
        }
    }
}

impl<S: Into<Sym>> FromIterator<S> for Multiset {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for s in iter {
            m.insert(s.into(), 1);
        }
        m
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}:{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the textual form `{sym:count, ...}`. A bare symbol counts once and
/// repeated symbols are summed.
impl FromStr for Multiset {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| {
                ParseError::new(0, format!("multiset must be enclosed in braces: `{t}`"))
            })?;
        let mut m = Multiset::new();
        let mut offset = 1;
        for item in inner.split(',') {
            let here = offset;
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (name, count) = match item.rsplit_once(':') {
                Some((n, c)) => {
                    let c = c
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| ParseError::new(here, format!("invalid count in `{item}`")))?;
                    (n.trim(), c)
                }
                None => (item, 1),
            };
            if name.is_empty() {
                return Err(ParseError::new(here, "empty symbol".to_string()));
            }
            m.insert(Sym::new(name), count);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ms(s: &str) -> Multiset {
        s.parse().unwrap()
    }

    #[test]
    fn laxator_example_sum() {
        assert_eq!(
            ms("{p1:1, p3:4}").sum(&ms("{p1:3, p2:3, p3:2}")),
            ms("{p1:4, p2:3, p3:6}")
        );
        assert_eq!(Multiset::new().sum(&ms("{a:2}")), ms("{a:2}"));
        assert_eq!(ms("{a:1,b:1}").sum(&ms("{b:1}")), ms("{a:1,b:2}"));
    }

    #[test]
    fn difference() {
        assert_eq!(
            ms("{a:1,b:1,c:1}").checked_sub(&ms("{a:1,b:1}")),
            Some(ms("{c:1}"))
        );
        assert_eq!(ms("{c:2}").checked_sub(&ms("{a:1,b:1}")), None);
        assert_eq!(ms("{c:2}").checked_sub(&Multiset::new()), Some(ms("{c:2}")));
    }

    #[test]
    fn containment() {
        assert!(ms("{a:1}").is_sub(&ms("{a:1,b:2}")));
        assert!(!ms("{a:2}").is_sub(&ms("{a:1}")));
        assert!(Multiset::new().is_sub(&ms("{z:3}")));
    }

    #[test]
    fn zero_counts_are_dropped() {
        assert_eq!(ms("{a:0, b:1}"), ms("{b:1}"));
        assert_eq!(ms("{a:1}").checked_sub(&ms("{a:1}")), Some(Multiset::new()));
        assert_eq!(ms("{}").to_string(), "{}");
        assert_eq!(ms("{b:2, a}").to_string(), "{a:1, b:2}");
    }

    #[test]
    fn bad_text() {
        assert!("a:1".parse::<Multiset>().is_err());
        assert!("{a:x}".parse::<Multiset>().is_err());
    }

    fn arb_multiset() -> impl Strategy<Value = Multiset> {
        prop::collection::btree_map(
            prop::sample::select(vec!["a", "b", "c", "d"]),
            0u64..5,
            0..4,
        )
        .prop_map(Multiset::from_counts)
    }

    proptest! {
        #[test]
        fn sum_then_sub_roundtrips(a in arb_multiset(), b in arb_multiset()) {
            prop_assert_eq!(a.sum(&b).checked_sub(&b), Some(a));
        }

        #[test]
        fn sub_defined_iff_contained(a in arb_multiset(), b in arb_multiset()) {
            prop_assert_eq!(a.checked_sub(&b).is_some(), b.is_sub(&a));
        }

        #[test]
        fn sum_is_commutative_monoid(a in arb_multiset(), b in arb_multiset(), c in arb_multiset()) {
            prop_assert_eq!(a.sum(&b), b.sum(&a));
            prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
            prop_assert_eq!(a.sum(&Multiset::new()), a.clone());
        }

        #[test]
        fn display_parses_back(a in arb_multiset()) {
            prop_assert_eq!(a.to_string().parse::<Multiset>().unwrap(), a);
        }
    }
}
