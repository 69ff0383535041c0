//! Vertex identifiers and vertex sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::BitXor;
use std::sync::Arc;

/// An opaque vertex id.
///
/// Ids are text tokens. Ordering is "natural": tokens made only of ASCII
/// digits compare numerically and sort before all other tokens, which compare
/// lexicographically. Ties between numerically equal tokens (`"7"`, `"07"`)
/// fall back to the string so that the order stays total and agrees with `Eq`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex(Arc<str>);

impl Vertex {
    pub fn new(id: impl AsRef<str>) -> Self {
        Vertex(Arc::from(id.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u128> {
        let s = self.as_str();
        if s.is_empty() || s.len() > 38 || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Vertex {
    fn from(s: &str) -> Self {
        Vertex::new(s)
    }
}

impl From<String> for Vertex {
    fn from(s: String) -> Self {
        Vertex(Arc::from(s))
    }
}

impl From<&String> for Vertex {
    fn from(s: &String) -> Self {
        Vertex::new(s)
    }
}

impl From<&Vertex> for Vertex {
    fn from(v: &Vertex) -> Self {
        v.clone()
    }
}

macro_rules! vertex_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Vertex {
            fn from(n: $t) -> Self {
                Vertex::from(n.to_string())
            }
        }
    )*};
}
vertex_from_int!(u8, u16, u32, u64, usize, i32, i64);

/// A finite set of vertices. `^` is symmetric difference.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: impl Into<Vertex>) -> bool {
        self.0.insert(v.into())
    }

    pub fn remove(&mut self, v: &Vertex) -> bool {
        self.0.remove(v)
    }

    /// Adds `v` if absent, removes it if present.
    pub fn toggle(&mut self, v: impl Into<Vertex>) {
        let v = v.into();
        if !self.0.remove(&v) {
            self.0.insert(v);
        }
    }

    /// Iterates in vertex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Vertex> + ExactSizeIterator {
        self.0.iter()
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl BitXor for &VertexSet {
    type Output = VertexSet;

    fn bitxor(self, rhs: &VertexSet) -> VertexSet {
        self.symmetric_difference(rhs)
    }
}

impl<V: Into<Vertex>> FromIterator<V> for VertexSet {
    fn from_iter<I: IntoIterator<Item = V>>(iter: I) -> Self {
        VertexSet(iter.into_iter().map(Into::into).collect())
    }
}

impl<V: Into<Vertex>> Extend<V> for VertexSet {
    fn extend<I: IntoIterator<Item = V>>(&mut self, iter: I) {
        self.0.extend(iter.into_iter().map(Into::into));
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::collections::btree_set::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Comma-separated, in vertex order; the empty set prints as nothing.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut vs: Vec<Vertex> = ["b", "10", "2", "a", "02", "1"]
            .into_iter()
            .map(Vertex::from)
            .collect();
        vs.sort();
        let got: Vec<&str> = vs.iter().map(Vertex::as_str).collect();
        assert_eq!(got, ["1", "02", "2", "10", "a", "b"]);
    }

    #[test]
    fn symmetric_difference() {
        let a: VertexSet = ["u", "v"].into_iter().collect();
        let b: VertexSet = ["v", "w"].into_iter().collect();
        let c = &a ^ &b;
        assert_eq!(c, ["u", "w"].into_iter().collect());
        assert!((&c ^ &c).is_empty());
        assert_eq!(c.to_string(), "u,w");
    }
}
