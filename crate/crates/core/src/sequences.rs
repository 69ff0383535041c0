//! Sequences of pivots and local complementations.
//!
//! The result of an applicable sequence depends only on its support, the
//! vertices occurring an odd number of times. Given a support `S`, an
//! applicable sequence exists iff `det A(G)[S] = 1`, and the resulting graph
//! can be read off principal minors of `A(G)` directly.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::vertex::{Vertex, VertexSet};

/// Default vertex cap for [`orbit`].
pub const ORBIT_CAP: usize = 12;
/// Default vertex cap for [`count_applicable_supports`].
pub const COUNT_CAP: usize = 24;
/// Subsets are enumerated as `u64` masks.
const MASK_LIMIT: usize = 63;

/// A single operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// Pivot on an edge with two loop-free endpoints.
    Pivot(Vertex, Vertex),
    /// Local complementation at a looped vertex.
    LocalComp(Vertex),
}

impl Op {
    pub fn pivot(u: impl Into<Vertex>, v: impl Into<Vertex>) -> Result<Op> {
        let (u, v) = (u.into(), v.into());
        if u == v {
            return Err(Error::DegeneratePivot(u));
        }
        Ok(Op::Pivot(u, v))
    }

    pub fn local(u: impl Into<Vertex>) -> Op {
        Op::LocalComp(u.into())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        let (a, b) = match self {
            Op::Pivot(u, v) => (u, Some(v)),
            Op::LocalComp(u) => (u, None),
        };
        std::iter::once(a).chain(b)
    }
}

/// `[u v]` for a pivot, `[u]` for a local complementation.
impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Pivot(u, v) => write!(f, "[{u} {v}]"),
            Op::LocalComp(u) => write!(f, "[{u}]"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpSeq(Vec<Op>);

impl OpSeq {
    pub fn new(ops: Vec<Op>) -> Result<Self> {
        for op in &ops {
            if let Op::Pivot(u, v) = op {
                if u == v {
                    return Err(Error::DegeneratePivot(u.clone()));
                }
            }
        }
        Ok(OpSeq(ops))
    }

    pub fn ops(&self) -> &[Op] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        if let Op::Pivot(u, v) = &op {
            if u == v {
                return Err(Error::DegeneratePivot(u.clone()));
            }
        }
        self.0.push(op);
        Ok(())
    }

    /// Vertices occurring an odd number of times over all operations.
    pub fn support(&self) -> VertexSet {
        let mut s = VertexSet::new();
        for v in self.0.iter().flat_map(Op::vertices) {
            s.toggle(v.clone());
        }
        s
    }

    /// No vertex occurs in more than one operation.
    pub fn is_reduced(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().flat_map(Op::vertices).all(|v| seen.insert(v))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Op> {
        self.0.iter()
    }
}

impl fmt::Display for OpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

impl FromIterator<Op> for OpSeq {
    /// Panics on a pivot with equal endpoints.
    fn from_iter<I: IntoIterator<Item = Op>>(iter: I) -> Self {
        OpSeq::new(iter.into_iter().collect()).expect("well-formed operations")
    }
}

impl<'a> IntoIterator for &'a OpSeq {
    type Item = &'a Op;
    type IntoIter = std::slice::Iter<'a, Op>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Bounds for the exponential subset enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetSearch {
    pub cap: usize,
    pub exec: Exec,
}

impl SubsetSearch {
    pub fn new(cap: usize) -> Self {
        SubsetSearch {
            cap,
            exec: Exec::default(),
        }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        SubsetSearch { exec, ..self }
    }

    fn check(&self, what: &'static str, n: usize) -> Result<()> {
        let cap = self.cap.min(MASK_LIMIT);
        if n > cap {
            return Err(Error::TooLarge { what, size: n, cap });
        }
        Ok(())
    }
}

fn resolve(g: &Graph, op: &Op) -> Result<(usize, Option<usize>)> {
    Ok(match op {
        Op::Pivot(u, v) => (g.index(u)?, Some(g.index(v)?)),
        Op::LocalComp(u) => (g.index(u)?, None),
    })
}

/// Applies one operation in place, or reports why it is not applicable.
fn step(h: &mut Graph, (i, j): (usize, Option<usize>)) -> Result<()> {
    match j {
        Some(j) => {
            h.check_pivot(i, j)?;
            h.pivot_at(i, j);
        }
        None => {
            if !h.adjacency().get(i, i) {
                return Err(Error::NotLooped(h.vertex(i).clone()));
            }
            h.loop_complement_at(i);
        }
    }
    Ok(())
}

fn resolve_all(g: &Graph, seq: &OpSeq) -> Result<Vec<(usize, Option<usize>)>> {
    seq.iter().map(|op| resolve(g, op)).collect()
}

/// Whether every operation is legal at the moment it is applied: a pivot
/// needs a current edge with loop-free endpoints, a local complementation a
/// currently looped vertex.
pub fn is_applicable(g: &Graph, seq: &OpSeq) -> Result<bool> {
    let steps = resolve_all(g, seq)?;
    let mut h = g.clone();
    Ok(steps.into_iter().all(|s| step(&mut h, s).is_ok()))
}

/// `Gφ`, applying the operations left to right.
pub fn apply(g: &Graph, seq: &OpSeq) -> Result<Graph> {
    let steps = resolve_all(g, seq)?;
    let mut h = g.clone();
    for (index, (s, op)) in steps.into_iter().zip(seq.iter()).enumerate() {
        step(&mut h, s).map_err(|reason| Error::NotApplicable {
            index,
            op: op.to_string(),
            reason: Box::new(reason),
        })?;
    }
    Ok(h)
}

/// Replays a sequence as gene-assembly rules: each operation is applied and
/// its vertices are then deleted (a local complementation is the positive
/// rule, a pivot the double rule).
pub fn apply_assembly_rules(g: &Graph, seq: &OpSeq) -> Result<Graph> {
    resolve_all(g, seq)?;
    let mut h = g.clone();
    for (index, op) in seq.iter().enumerate() {
        let wrap = |reason| Error::NotApplicable {
            index,
            op: op.to_string(),
            reason: Box::new(reason),
        };
        let s = resolve(&h, op).map_err(wrap)?;
        step(&mut h, s).map_err(wrap)?;
        h = h.remove_vertices(&op.vertices().cloned().collect())?;
    }
    Ok(h)
}

/// `det A(G)[S] = 1`: some (reduced) applicable sequence has support `S`.
pub fn is_support_applicable(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(g.adjacency().det_masked(&g.mask_of(s)?))
}

/// The graph reached by any applicable sequence with support `S`, computed
/// from principal minors of `A = A(G)`.
///
/// Off the diagonal, `b_xy = det A[S ⊕ {x,y}] ⊕ (b_xx ∧ b_yy)`; on it,
/// `b_xx = det A[S ⊕ {x}]`. For simple graphs the diagonal stays zero and the
/// edge test reduces to `det A[S ⊕ {x,y}] = 1`.
pub fn apply_support(g: &Graph, s: &VertexSet) -> Result<Graph> {
    apply_support_mask(g, &g.mask_of(s)?)
}

fn apply_support_mask(g: &Graph, s: &[u64]) -> Result<Graph> {
    let a = g.adjacency();
    if !a.det_masked(s) {
        return Err(Error::NoSequence);
    }
    let n = g.order();
    let mut out = g.edgeless_like();
    let mut mask = s.to_vec();
    let diag: Vec<bool> = if g.is_simple() {
        vec![false; n]
    } else {
        (0..n)
            .map(|x| {
                bits::flip(&mut mask, x);
                let d = a.det_masked(&mask);
                bits::flip(&mut mask, x);
                d
            })
            .collect()
    };
    let m = out.adj_mut();
    for x in 0..n {
        m.set(x, x, diag[x]);
        bits::flip(&mut mask, x);
        for y in x + 1..n {
            bits::flip(&mut mask, y);
            m.set(x, y, a.det_masked(&mask) ^ (diag[x] && diag[y]));
            bits::flip(&mut mask, y);
        }
        bits::flip(&mut mask, x);
    }
    Ok(out)
}

/// Greedily builds a reduced applicable sequence with support `S`.
///
/// At each step, within the remaining support, the smallest looped vertex is
/// locally complemented or, when there is none, the lexicographically
/// smallest edge is pivoted; its vertices then leave the support. With an
/// anchor, the first operation is chosen among those touching the anchor.
///
/// Fails with [`Error::NoSequence`] when `det A(G)[S] = 0`. On graphs with
/// loops an anchor can be unreachable (its only support neighbours are
/// looped), reported as [`Error::AnchorUnreachable`].
pub fn synthesize_reduced(g: &Graph, s: &VertexSet, anchor: Option<&Vertex>) -> Result<OpSeq> {
    let mut rem = g.mask_of(s)?;
    let anchor = match anchor {
        Some(a) => {
            let i = g.index(a)?;
            if !bits::get(&rem, i) {
                return Err(Error::AnchorNotInSupport(a.clone()));
            }
            Some(i)
        }
        None => None,
    };
    if !g.adjacency().det_masked(&rem) {
        return Err(Error::NoSequence);
    }
    let mut h = g.clone();
    let mut ops = Vec::new();
    let mut take = |h: &mut Graph, rem: &mut Vec<u64>, i: usize, j: Option<usize>| {
        step(h, (i, j)).expect("greedy choice is applicable");
        bits::set(rem, i, false);
        ops.push(match j {
            Some(j) => {
                bits::set(rem, j, false);
                Op::Pivot(h.vertex(i).clone(), h.vertex(j).clone())
            }
            None => Op::LocalComp(h.vertex(i).clone()),
        });
    };

    if let Some(a) = anchor {
        let m = h.adjacency();
        let choice = if m.get(a, a) {
            Some((a, None))
        } else {
            bits::ones(m.row(a))
                .filter(|&j| j != a && bits::get(&rem, j) && !m.get(j, j))
                .map(|j| (a.min(j), Some(a.max(j))))
                .next()
        };
        let Some((i, j)) = choice else {
            return Err(Error::AnchorUnreachable(g.vertex(a).clone()));
        };
        take(&mut h, &mut rem, i, j);
    }

    while rem.iter().any(|&w| w != 0) {
        let m = h.adjacency();
        let looped = bits::ones(&rem).find(|&i| m.get(i, i));
        let (i, j) = match looped {
            Some(i) => (i, None),
            None => {
                let edge = bits::ones(&rem).find_map(|i| {
                    bits::ones(m.row(i))
                        .find(|&j| j > i && bits::get(&rem, j))
                        .map(|j| (i, j))
                });
                // det A[rem] = 1 is preserved, so a loop-free remainder has an edge
                let (i, j) = edge.expect("nonsingular remainder contains an edge");
                (i, Some(j))
            }
        };
        take(&mut h, &mut rem, i, j);
    }
    Ok(OpSeq(ops))
}

/// A reduced sequence of assembly rules emptying a graph (loops mark the
/// positive vertices), or `None` when `det A(G) = 0`.
pub fn reduce_to_empty(g: &Graph) -> Option<OpSeq> {
    match synthesize_reduced(g, &g.vertex_set(), None) {
        Ok(seq) => Some(seq),
        Err(Error::NoSequence) => None,
        Err(e) => unreachable!("unanchored synthesis on V(G) failed: {e}"),
    }
}

/// All graphs `apply_support(G, S)` over supports with `det A(G)[S] = 1`,
/// deduplicated as labelled graphs. Always contains `G`.
pub fn orbit(g: &Graph) -> Result<BTreeSet<Graph>> {
    orbit_with(g, SubsetSearch::new(ORBIT_CAP))
}

pub fn orbit_with(g: &Graph, search: SubsetSearch) -> Result<BTreeSet<Graph>> {
    let n = g.order();
    search.check("orbit", n)?;
    Ok(exec::collect_masks(n, search.exec, |m| {
        apply_support_mask(g, &[m]).ok()
    }))
}

/// `|{S ⊆ V : det A(G)[S] = 1}|`, counting the empty set.
pub fn count_applicable_supports(g: &Graph) -> Result<u64> {
    count_applicable_supports_with(g, SubsetSearch::new(COUNT_CAP))
}

pub fn count_applicable_supports_with(g: &Graph, search: SubsetSearch) -> Result<u64> {
    let n = g.order();
    search.check("support count", n)?;
    let a = g.adjacency();
    Ok(exec::count_masks(n, search.exec, |m| a.det_masked_word(m)))
}

/// Whether two disjoint pivots `[uv]` and `[wz]` are applicable in both
/// orders. Needs four distinct loop-free vertices with `uv`, `wz` edges.
pub fn check_commutation(
    g: &Graph,
    u: &Vertex,
    v: &Vertex,
    w: &Vertex,
    z: &Vertex,
) -> Result<bool> {
    let idx = [g.index(u)?, g.index(v)?, g.index(w)?, g.index(z)?];
    let distinct = (0..4).all(|a| (a + 1..4).all(|b| idx[a] != idx[b]));
    let m = g.adjacency();
    if !distinct
        || !m.get(idx[0], idx[1])
        || !m.get(idx[2], idx[3])
        || idx.iter().any(|&i| m.get(i, i))
    {
        return Err(Error::CommutationPrecondition {
            first: format!("[{u} {v}]"),
            second: format!("[{w} {z}]"),
        });
    }
    let both = [
        [(idx[0], Some(idx[1])), (idx[2], Some(idx[3]))],
        [(idx[2], Some(idx[3])), (idx[0], Some(idx[1]))],
    ];
    Ok(both.into_iter().all(|order| {
        let mut h = g.clone();
        order.into_iter().all(|s| step(&mut h, s).is_ok())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::pm_parity;

    fn v(x: impl Into<Vertex>) -> Vertex {
        x.into()
    }

    fn set<V: Into<Vertex>>(xs: impl IntoIterator<Item = V>) -> VertexSet {
        xs.into_iter().collect()
    }

    fn pv(a: impl Into<Vertex>, b: impl Into<Vertex>) -> Op {
        Op::pivot(a, b).unwrap()
    }

    fn overlap_example() -> Graph {
        Graph::from_edges([
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 6),
            (3, 1),
            (4, 6),
            (5, 6),
            (6, 1),
        ])
    }

    fn pivoted_example() -> Graph {
        Graph::from_edges([
            (2, 3),
            (2, 4),
            (2, 6),
            (2, 1),
            (3, 4),
            (3, 5),
            (4, 5),
            (5, 1),
            (4, 1),
            (6, 1),
        ])
    }

    #[test]
    fn support_examples() {
        assert!(OpSeq::default().support().is_empty());
        let s: OpSeq = [pv("u", "v"), pv("v", "w")].into_iter().collect();
        assert_eq!(s.support(), set(["u", "w"]));
        let s: OpSeq = [pv("u", "v"), Op::local("w")].into_iter().collect();
        assert_eq!(s.support(), set(["u", "v", "w"]));
        assert_eq!(Op::pivot("a", "a"), Err(Error::DegeneratePivot(v("a"))));
        assert!(OpSeq::new(vec![Op::Pivot(v(1), v(1))]).is_err());
    }

    #[test]
    fn display() {
        let s: OpSeq = [pv(1, 2), Op::local(3)].into_iter().collect();
        assert_eq!(s.to_string(), "[1 2][3]");
        assert_eq!(OpSeq::default().to_string(), "");
    }

    #[test]
    fn reduced_predicate() {
        let s: OpSeq = [pv(1, 2), Op::local(3)].into_iter().collect();
        assert!(s.is_reduced());
        let s: OpSeq = [pv(1, 2), pv(2, 3)].into_iter().collect();
        assert!(!s.is_reduced());
    }

    #[test]
    fn applicability_examples() {
        let g = overlap_example();
        assert!(is_applicable(&g, &OpSeq::default()).unwrap());
        assert!(is_applicable(&g, &[pv(2, 3)].into_iter().collect()).unwrap());
        assert!(!is_applicable(&g, &[pv(2, 6)].into_iter().collect()).unwrap());
        assert!(!is_applicable(&g, &[Op::local(2)].into_iter().collect()).unwrap());
        assert_eq!(
            is_applicable(&g, &[pv(2, 9)].into_iter().collect()),
            Err(Error::UnknownVertex(v(9)))
        );
    }

    #[test]
    fn apply_examples() {
        let g = overlap_example();
        assert_eq!(apply(&g, &OpSeq::default()).unwrap(), g);
        assert_eq!(
            apply(&g, &[pv(2, 3)].into_iter().collect()).unwrap(),
            pivoted_example()
        );
        assert_eq!(
            apply(&g, &[pv(2, 3), pv(2, 3)].into_iter().collect()).unwrap(),
            g
        );
        let err = apply(&g, &[pv(2, 3), pv(5, 6)].into_iter().collect()).unwrap_err();
        assert_eq!(
            err,
            Error::NotApplicable {
                index: 1,
                op: "[5 6]".into(),
                reason: Box::new(Error::NotAnEdge { u: v(5), v: v(6) }),
            }
        );
    }

    #[test]
    fn apply_support_examples() {
        let g = overlap_example();
        assert_eq!(apply_support(&g, &VertexSet::new()).unwrap(), g);
        assert_eq!(apply_support(&g, &set([2, 3])).unwrap(), pivoted_example());
        let k3 = Graph::from_edges([("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(
            apply_support(&k3, &set(["a", "b", "c"])),
            Err(Error::NoSequence)
        );
    }

    #[test]
    fn support_applicability_examples() {
        let k3 = Graph::from_edges([("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(is_support_applicable(&k3, &VertexSet::new()).unwrap());
        assert!(is_support_applicable(&k3, &set(["a", "b"])).unwrap());
        assert!(!is_support_applicable(&k3, &set(["a", "b", "c"])).unwrap());
    }

    #[test]
    fn synthesize_examples() {
        let g = overlap_example();
        assert!(synthesize_reduced(&g, &VertexSet::new(), None)
            .unwrap()
            .is_empty());
        assert_eq!(
            synthesize_reduced(&g, &set([2, 3]), None).unwrap(),
            [pv(2, 3)].into_iter().collect()
        );
        // path u-v-z-w: [uv][wz] applicable; anchor z
        let c = Graph::from_edges([("u", "v"), ("w", "z"), ("v", "z")]);
        let s = set(["u", "v", "w", "z"]);
        let seq = synthesize_reduced(&c, &s, Some(&v("z"))).unwrap();
        assert!(seq.ops()[0].vertices().any(|x| x == &v("z")));
        assert!(seq.is_reduced());
        assert_eq!(seq.support(), s);
        assert_eq!(apply(&c, &seq).unwrap(), apply_support(&c, &s).unwrap());
        assert_eq!(
            synthesize_reduced(&c, &set(["u", "v"]), Some(&v("w"))),
            Err(Error::AnchorNotInSupport(v("w")))
        );
    }

    #[test]
    fn anchor_unreachable_with_loops() {
        // a is loop-free and its only support neighbour is looped
        let g = Graph::from_edges([("a", "w"), ("w", "w")]);
        let s = set(["a", "w"]);
        assert!(synthesize_reduced(&g, &s, None).is_ok());
        assert_eq!(
            synthesize_reduced(&g, &s, Some(&v("a"))),
            Err(Error::AnchorUnreachable(v("a")))
        );
    }

    #[test]
    fn greedy_prefers_loops_then_smallest_edge() {
        let g = Graph::from_edges([(1, 2), (3, 4), (5, 5), (1, 4)]);
        let seq = synthesize_reduced(&g, &g.vertex_set(), None).unwrap();
        assert_eq!(seq.ops()[0], Op::local(5));
        assert_eq!(seq.ops()[1], pv(1, 2));
    }

    #[test]
    fn reduce_to_empty_examples() {
        assert_eq!(
            reduce_to_empty(&Graph::new(Vec::<Vertex>::new())),
            Some(OpSeq::default())
        );
        let single = Graph::from_edges([("u", "u")]);
        assert_eq!(
            reduce_to_empty(&single),
            Some([Op::local("u")].into_iter().collect())
        );
        let k3 = Graph::from_edges([(1, 2), (2, 3), (1, 3)]);
        assert_eq!(reduce_to_empty(&k3), None);
        let g = Graph::from_edges([(1, 1), (1, 2), (2, 3), (3, 4)]);
        let seq = reduce_to_empty(&g).unwrap();
        assert_eq!(apply_assembly_rules(&g, &seq).unwrap().order(), 0);
    }

    #[test]
    fn orbit_examples() {
        let edgeless = Graph::new([1, 2, 3]);
        assert_eq!(
            orbit(&edgeless).unwrap(),
            [edgeless.clone()].into_iter().collect()
        );
        let k2 = Graph::from_edges([(1, 2)]);
        assert_eq!(orbit(&k2).unwrap(), [k2.clone()].into_iter().collect());
        let g = overlap_example();
        let o = orbit(&g).unwrap();
        assert!(o.contains(&g) && o.contains(&pivoted_example()));
        assert!(o.len() as u64 <= count_applicable_supports(&g).unwrap());
        let big = Graph::new(0..13);
        assert!(matches!(orbit(&big), Err(Error::TooLarge { cap: 12, .. })));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_applicable_supports(&Graph::new(0..5)).unwrap(), 1);
        assert_eq!(
            count_applicable_supports(&Graph::from_edges([(1, 2)])).unwrap(),
            2
        );
        let k3 = Graph::from_edges([(1, 2), (2, 3), (1, 3)]);
        assert_eq!(count_applicable_supports(&k3).unwrap(), 4);
        assert!(count_applicable_supports(&Graph::new(0..25)).is_err());
        let search = SubsetSearch::new(30);
        assert_eq!(
            count_applicable_supports_with(&Graph::new(0..25), search).unwrap(),
            1
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = overlap_example();
        let seq = SubsetSearch::new(12).with_exec(Exec::Sequential);
        let par = SubsetSearch::new(12).with_exec(Exec::Parallel);
        assert_eq!(orbit_with(&g, seq).unwrap(), orbit_with(&g, par).unwrap());
        assert_eq!(
            count_applicable_supports_with(&g, seq).unwrap(),
            count_applicable_supports_with(&g, par).unwrap()
        );
    }

    #[test]
    fn commutation_examples() {
        let two_edges = Graph::from_edges([("u", "v"), ("w", "z")]);
        let q = |g: &Graph| check_commutation(g, &v("u"), &v("v"), &v("w"), &v("z")).unwrap();
        assert!(q(&two_edges));
        let c4 = Graph::from_edges([("u", "v"), ("v", "z"), ("z", "w"), ("w", "u")]);
        assert!(!q(&c4));
        assert!(!pm_parity(&c4).unwrap());
        let k4 = Graph::from_edges([
            ("u", "v"),
            ("u", "w"),
            ("u", "z"),
            ("v", "w"),
            ("v", "z"),
            ("w", "z"),
        ]);
        assert!(q(&k4));
        assert!(matches!(
            check_commutation(&c4, &v("u"), &v("z"), &v("w"), &v("v")),
            Err(Error::CommutationPrecondition { .. })
        ));
    }
}
