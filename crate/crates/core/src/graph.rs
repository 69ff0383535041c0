//! Graphs with optional self-loops, and the local operations on them.
//!
//! A [`Graph`] is stored as its adjacency matrix over GF(2) with labels in
//! vertex order; loops live on the diagonal. The graph is simple when the
//! diagonal is zero.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::bits;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::vertex::{Vertex, VertexSet};

/// Largest order accepted by [`Graph::is_isomorphic_small`].
pub const ISOMORPHISM_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Gf2Matrix,
}

impl Graph {
    /// Edgeless graph on `vertices` (duplicates collapse).
    pub fn new<I, V>(vertices: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<Vertex>,
    {
        let mut labels: Vec<Vertex> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        Graph {
            adj: Gf2Matrix::zeros_unchecked(labels),
        }
    }

    /// Graph spanned by a list of vertex pairs. A pair `(x, x)` is a loop.
    /// Repeated pairs are idempotent.
    pub fn from_edges<I, A, B>(edges: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Vertex>,
        B: Into<Vertex>,
    {
        let pairs: Vec<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        let mut g = Graph::new(pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]));
        for (a, b) in &pairs {
            let (i, j) = (g.idx(a).unwrap(), g.idx(b).unwrap());
            g.adj.set(i, j, true);
        }
        g
    }

    /// Takes a symmetric matrix as an adjacency matrix, sorting its labels
    /// into vertex order.
    pub fn from_matrix(m: &Gf2Matrix) -> Self {
        let mut g = Graph::new(m.labels().iter().cloned());
        let map: Vec<usize> = m.labels().iter().map(|l| g.idx(l).unwrap()).collect();
        for i in 0..m.order() {
            for j in i..m.order() {
                if m.get(i, j) {
                    g.adj.set(map[i], map[j], true);
                }
            }
        }
        g
    }

    /// `A(G)`.
    pub fn adjacency(&self) -> &Gf2Matrix {
        &self.adj
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.adj.labels()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().iter().cloned().collect()
    }

    pub fn order(&self) -> usize {
        self.adj.order()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.idx(v).is_some()
    }

    pub(crate) fn idx(&self, v: &Vertex) -> Option<usize> {
        self.vertices().binary_search(v).ok()
    }

    pub(crate) fn index(&self, v: &Vertex) -> Result<usize> {
        self.idx(v).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub(crate) fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices()[i]
    }

    /// Edgeless graph on the same vertices.
    pub(crate) fn edgeless_like(&self) -> Graph {
        Graph {
            adj: Gf2Matrix::zeros_unchecked(self.vertices().to_vec()),
        }
    }

    pub(crate) fn adj_mut(&mut self) -> &mut Gf2Matrix {
        &mut self.adj
    }

    /// Index mask of a vertex set.
    pub(crate) fn mask_of(&self, x: &VertexSet) -> Result<Vec<u64>> {
        let mut mask = vec![0; self.adj.stride()];
        for v in x {
            bits::set(&mut mask, self.index(v)?, true);
        }
        Ok(mask)
    }

    /// Adds an isolated vertex; returns false if it already exists.
    pub fn add_vertex(&mut self, v: impl Into<Vertex>) -> bool {
        let v = v.into();
        if self.contains(&v) {
            return false;
        }
        let mut labels = self.vertices().to_vec();
        labels.push(v);
        let old = std::mem::replace(self, Graph::new(labels));
        for (i, j) in old.entries() {
            let (a, b) = (
                self.idx(old.vertex(i)).unwrap(),
                self.idx(old.vertex(j)).unwrap(),
            );
            self.adj.set(a, b, true);
        }
        true
    }

    /// Upper-triangle nonzero entries `(i, j)`, `i <= j`.
    fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |i| {
            bits::ones(self.adj.row(i))
                .filter(move |&j| j >= i)
                .map(move |j| (i, j))
        })
    }

    /// Sets or clears the edge `xy`; `x == y` addresses the loop at `x`.
    pub fn set_edge(&mut self, x: &Vertex, y: &Vertex, present: bool) -> Result<()> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        self.adj.set(i, j, present);
        Ok(())
    }

    pub fn set_loop(&mut self, x: &Vertex, present: bool) -> Result<()> {
        let i = self.index(x)?;
        self.adj.set(i, i, present);
        Ok(())
    }

    /// No vertex carries a loop.
    pub fn is_simple(&self) -> bool {
        (0..self.order()).all(|i| !self.adj.get(i, i))
    }

    pub fn has_loop(&self, x: &Vertex) -> Result<bool> {
        let i = self.index(x)?;
        Ok(self.adj.get(i, i))
    }

    pub fn loops(&self) -> VertexSet {
        (0..self.order())
            .filter(|&i| self.adj.get(i, i))
            .map(|i| self.vertex(i).clone())
            .collect()
    }

    /// True iff `x ≠ y` and `xy` is an edge.
    pub fn has_edge(&self, x: &Vertex, y: &Vertex) -> Result<bool> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        Ok(i != j && self.adj.get(i, j))
    }

    /// Entry of the adjacency matrix; the diagonal holds the loops.
    pub fn adj_entry(&self, x: &Vertex, y: &Vertex) -> Result<bool> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        Ok(self.adj.get(i, j))
    }

    /// Edges `(x, y)` with `x < y`, sorted. Loops are not included.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.entries()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| (self.vertex(i).clone(), self.vertex(j).clone()))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.entries().filter(|(i, j)| i != j).count()
    }

    /// Open neighbourhood; a loop does not make a vertex its own neighbour.
    pub fn neighbours(&self, x: &Vertex) -> Result<VertexSet> {
        let i = self.index(x)?;
        Ok(bits::ones(self.adj.row(i))
            .filter(|&j| j != i)
            .map(|j| self.vertex(j).clone())
            .collect())
    }

    /// `x ~ y`: adjacent or equal. Only defined on simple graphs.
    pub fn sim(&self, x: &Vertex, y: &Vertex) -> Result<bool> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        Ok(i == j || self.adj.get(i, j))
    }

    /// Index form of `sim`, assuming a simple graph.
    #[inline]
    pub(crate) fn sim_idx(&self, i: usize, j: usize) -> bool {
        i == j || self.adj.get(i, j)
    }

    /// `G * u` on a simple graph: complements the edges inside `N(u)`.
    ///
    /// Graphs with loops are rejected; use [`Graph::loop_complement`], which
    /// also toggles the loops of the neighbours.
    pub fn local_complement(&self, u: &Vertex) -> Result<Graph> {
        let i = self.index(u)?;
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        let mut g = self.clone();
        g.local_complement_at(i);
        Ok(g)
    }

    fn local_complement_at(&mut self, u: usize) {
        let nbhd = self.adj.row(u).to_vec();
        for x in bits::ones(&nbhd) {
            let row = self.adj.row_mut(x);
            bits::xor_into(row, &nbhd);
            bits::flip(row, x);
        }
    }

    /// Local complementation at a looped vertex `u`: the graph of `A * {u}`.
    /// The neighbourhood is complemented and each neighbour's loop toggled;
    /// `u` keeps its loop.
    pub fn loop_complement(&self, u: &Vertex) -> Result<Graph> {
        let i = self.index(u)?;
        if !self.adj.get(i, i) {
            return Err(Error::NotLooped(u.clone()));
        }
        let mut g = self.clone();
        g.loop_complement_at(i);
        Ok(g)
    }

    pub(crate) fn loop_complement_at(&mut self, u: usize) {
        let mut nbhd = self.adj.row(u).to_vec();
        bits::set(&mut nbhd, u, false);
        for x in bits::ones(&nbhd).collect::<Vec<_>>() {
            bits::xor_into(self.adj.row_mut(x), &nbhd);
        }
    }

    /// Pivot `G[uv]` on the edge `uv`; both endpoints must be loop-free.
    ///
    /// With closed neighbourhoods `N'`, the classes are
    /// `V1 = N'(u) \ N'(v)`, `V2 = N'(v) \ N'(u)` and `V3 = N'(u) ∩ N'(v)`
    /// (so `u, v ∈ V3` and nothing is swapped). Every pair drawn from two
    /// different classes is toggled; loops are untouched.
    pub fn pivot(&self, u: &Vertex, v: &Vertex) -> Result<Graph> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        self.check_pivot(i, j)?;
        let mut g = self.clone();
        g.pivot_at(i, j);
        Ok(g)
    }

    pub(crate) fn check_pivot(&self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::DegeneratePivot(self.vertex(i).clone()));
        }
        if !self.adj.get(i, j) {
            return Err(Error::NotAnEdge {
                u: self.vertex(i).clone(),
                v: self.vertex(j).clone(),
            });
        }
        for k in [i, j] {
            if self.adj.get(k, k) {
                return Err(Error::LoopedEndpoint(self.vertex(k).clone()));
            }
        }
        Ok(())
    }

    pub(crate) fn pivot_at(&mut self, u: usize, v: usize) {
        let mut nu = self.adj.row(u).to_vec();
        let mut nv = self.adj.row(v).to_vec();
        bits::set(&mut nu, u, true);
        bits::set(&mut nv, v, true);
        let s = nu.len();
        let (mut v1, mut v2, mut v3) = (vec![0; s], vec![0; s], vec![0; s]);
        for w in 0..s {
            v1[w] = nu[w] & !nv[w];
            v2[w] = nv[w] & !nu[w];
            v3[w] = nu[w] & nv[w];
        }
        let union =
            |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| x | y).collect() };
        for (class, toggle) in [
            (&v1, union(&v2, &v3)),
            (&v2, union(&v1, &v3)),
            (&v3, union(&v1, &v2)),
        ] {
            for x in bits::ones(class) {
                bits::xor_into(self.adj.row_mut(x), &toggle);
            }
        }
    }

    /// `G[X]`.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph> {
        Ok(Graph {
            adj: self.adj.principal_submatrix(x)?,
        })
    }

    /// The graph with the vertices of `x` deleted.
    pub fn remove_vertices(&self, x: &VertexSet) -> Result<Graph> {
        for v in x {
            self.index(v)?;
        }
        let keep: VertexSet = self
            .vertices()
            .iter()
            .filter(|v| !x.contains(v))
            .cloned()
            .collect();
        self.induced_subgraph(&keep)
    }

    /// Brute-force isomorphism test (edges and loops) for graphs of at most
    /// [`ISOMORPHISM_CAP`] vertices. Graphs of different order are never
    /// isomorphic.
    pub fn is_isomorphic_small(&self, other: &Graph) -> Result<bool> {
        if self.order() != other.order() {
            return Ok(false);
        }
        let n = self.order();
        if n > ISOMORPHISM_CAP {
            return Err(Error::TooLarge {
                what: "isomorphism test",
                size: n,
                cap: ISOMORPHISM_CAP,
            });
        }
        if self.edge_count() != other.edge_count() || self.loops().len() != other.loops().len() {
            return Ok(false);
        }
        let degrees = |g: &Graph| -> Vec<usize> {
            (0..n)
                .map(|i| bits::count_ones(g.adj.row(i)))
                .sorted()
                .collect()
        };
        if degrees(self) != degrees(other) {
            return Ok(false);
        }
        Ok((0..n).permutations(n).any(|p| {
            (0..n).all(|i| (i..n).all(|j| self.adj.get(i, j) == other.adj.get(p[i], p[j])))
        }))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ V: {:?}, E: [", self.vertices())?;
        for (k, (x, y)) in self.edges().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}-{y}")?;
        }
        write!(f, "], loops: {:?} }}", self.loops())
    }
}

/// A word in which every symbol occurs exactly twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleOccurrenceWord {
    symbols: Vec<Vertex>,
}

impl DoubleOccurrenceWord {
    pub fn new<I, V>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vertex>,
    {
        let symbols: Vec<Vertex> = symbols.into_iter().map(Into::into).collect();
        let mut counts: BTreeMap<&Vertex, usize> = BTreeMap::new();
        for s in &symbols {
            *counts.entry(s).or_default() += 1;
        }
        if let Some((s, &c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::MalformedWord {
                symbol: (*s).clone(),
                count: c,
            });
        }
        Ok(DoubleOccurrenceWord { symbols })
    }

    /// Whitespace-separated symbols.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split_whitespace())
    }

    pub fn symbols(&self) -> &[Vertex] {
        &self.symbols
    }

    /// One vertex per symbol; `xy` is an edge iff exactly one occurrence of
    /// `y` lies between the two occurrences of `x` (the chords cross).
    pub fn overlap_graph(&self) -> Graph {
        let mut g = Graph::new(self.symbols.iter().cloned());
        let mut first: Vec<Option<usize>> = vec![None; g.order()];
        let mut span = vec![(0usize, 0usize); g.order()];
        for (pos, s) in self.symbols.iter().enumerate() {
            let i = g.idx(s).unwrap();
            match first[i] {
                None => first[i] = Some(pos),
                Some(p) => span[i] = (p, pos),
            }
        }
        for i in 0..g.order() {
            for j in i + 1..g.order() {
                let (a1, a2) = span[i];
                let (b1, b2) = span[j];
                if (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2) {
                    g.adj.set(i, j, true);
                }
            }
        }
        g
    }
}
