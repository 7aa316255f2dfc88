use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite set of forbidden adjacent differences. Always contains 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TSet {
    elements: Vec<u32>,
    member: Vec<bool>,
}

impl TSet {
    /// Builds a set from arbitrary elements; order and duplicates are irrelevant,
    /// but 0 must be present.
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut elements: Vec<u32> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::TSetEmpty);
        }
        elements.sort_unstable();
        elements.dedup();
        if elements[0] != 0 {
            return Err(Error::TSetMissingZero);
        }
        let r = *elements.last().unwrap() as usize;
        let mut member = vec![false; r + 1];
        for &e in &elements {
            member[e as usize] = true;
        }
        Ok(TSet { elements, member })
    }

    /// `{0, 1, ..., p-1}`, the set under which L(t,1) coincides with L(p,1).
    pub fn consecutive(p: u32) -> Result<Self> {
        Self::new(0..p.max(1))
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest forbidden difference.
    pub fn r(&self) -> u32 {
        *self.elements.last().unwrap()
    }

    /// Number of integers in `[0, r]` that are not in the set.
    pub fn sigma(&self) -> u32 {
        self.r() + 1 - self.elements.len() as u32
    }

    #[inline]
    pub fn contains(&self, diff: u32) -> bool {
        self.member.get(diff as usize).copied().unwrap_or(false)
    }

    /// The integers strictly between 0 and r absent from the set, ascending.
    pub fn missing_colours(&self) -> Vec<u32> {
        (1..self.r()).filter(|&d| !self.contains(d)).collect()
    }

    pub fn is_subset_of(&self, other: &TSet) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }
}

impl fmt::Display for TSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses the comma form `0,1,3`. Elements must be ascending and include 0.
impl FromStr for TSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let value: u32 = part.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("bad T element `{part}`"),
            })?;
            if let Some(&last) = elements.last() {
                if value <= last {
                    return Err(Error::TSetNotAscending(s.to_string()));
                }
            }
            elements.push(value);
        }
        if elements.first() != Some(&0) {
            return Err(Error::TSetMissingZero);
        }
        TSet::new(elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let t = TSet::new([0, 1, 3, 4, 8]).unwrap();
        assert_eq!(t.r(), 8);
        assert_eq!(t.sigma(), 4);
        assert_eq!(t.missing_colours(), vec![2, 5, 6, 7]);
        assert_eq!(TSet::new([0]).unwrap().sigma(), 0);
        assert_eq!(TSet::new([0, 2]).unwrap().missing_colours(), vec![1]);
        assert!(TSet::new([0, 1]).unwrap().missing_colours().is_empty());
    }

    #[test]
    fn rejects_missing_zero() {
        assert_eq!(TSet::new([1, 2]), Err(Error::TSetMissingZero));
        assert_eq!("1,2".parse::<TSet>(), Err(Error::TSetMissingZero));
        assert_eq!(TSet::new([]), Err(Error::TSetEmpty));
    }

    #[test]
    fn parse_comma_form() {
        let t: TSet = "0, 1,3".parse().unwrap();
        assert_eq!(t.elements(), &[0, 1, 3]);
        assert_eq!(t.to_string(), "0,1,3");
        assert!(matches!(
            "0,3,1".parse::<TSet>(),
            Err(Error::TSetNotAscending(_))
        ));
        assert!(matches!(
            "0,1,1".parse::<TSet>(),
            Err(Error::TSetNotAscending(_))
        ));
        assert!(matches!("0,x".parse::<TSet>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn membership_beyond_r() {
        let t = TSet::new([0, 2]).unwrap();
        assert!(t.contains(0) && t.contains(2));
        assert!(!t.contains(1) && !t.contains(3) && !t.contains(1000));
    }
}
