use crate::rational::Rational;
use serde::Serialize;
use std::fmt;

/// A finite union of closed rational intervals, kept sorted and disjoint.
/// Degenerate intervals `[x, x]` represent isolated points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IntervalSet {
    #[serde(serialize_with = "ser_parts")]
    parts: Vec<(Rational, Rational)>,
}

fn ser_parts<S: serde::Serializer>(
    parts: &[(Rational, Rational)],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(parts.len()))?;
    for (lo, hi) in parts {
        seq.serialize_element(&[lo.to_string(), hi.to_string()])?;
    }
    seq.end()
}

impl IntervalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_intervals<I: IntoIterator<Item = (Rational, Rational)>>(items: I) -> Self {
        let mut parts: Vec<(Rational, Rational)> = items.into_iter().filter(|(a, b)| a <= b).collect();
        parts.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Self { parts: merged }
    }

    pub fn insert(&mut self, lo: Rational, hi: Rational) {
        let mut items = std::mem::take(&mut self.parts);
        items.push((lo, hi));
        *self = Self::from_intervals(items);
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.parts.iter().chain(&other.parts).cloned())
    }

    pub fn parts(&self) -> &[(Rational, Rational)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let k = self.parts.partition_point(|(lo, _)| lo <= x);
        k > 0 && &self.parts[k - 1].1 >= x
    }

    /// Isolated points of the set.
    pub fn points(&self) -> impl Iterator<Item = &Rational> {
        self.parts.iter().filter(|(a, b)| a == b).map(|(a, _)| a)
    }

    /// The set with its isolated points removed.
    pub fn without_points(&self) -> Self {
        Self { parts: self.parts.iter().filter(|(a, b)| a < b).cloned().collect() }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        let items: Vec<String> = self
            .parts
            .iter()
            .map(|(a, b)| if a == b { format!("{{{a}}}") } else { format!("[{a}, {b}]") })
            .collect();
        f.write_str(&items.join(" U "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn merging() {
        let s = IntervalSet::from_intervals([
            (ratio(1, 2), ratio(3, 4)),
            (ratio(0, 1), ratio(1, 4)),
            (ratio(1, 4), ratio(1, 3)),
            (ratio(7, 8), ratio(7, 8)),
        ]);
        assert_eq!(s.parts().len(), 3);
        assert!(s.contains(&ratio(1, 3)));
        assert!(!s.contains(&ratio(2, 5)));
        assert!(s.contains(&ratio(7, 8)));
        assert_eq!(s.points().count(), 1);
        assert_eq!(s.to_string(), "[0, 1/3] U [1/2, 3/4] U {7/8}");
        assert_eq!(s.without_points().parts().len(), 2);
    }
}
