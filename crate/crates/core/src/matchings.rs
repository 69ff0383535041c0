//! Perfect-matching parities and pairings.
//!
//! Over GF(2) the Pfaffian of a graph's adjacency matrix is the parity of its
//! perfect matchings and equals its determinant. The enumerating routines here
//! are the slow, literal side of that identity.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex::Vertex;

/// Largest argument list accepted by [`pm_multiset`] (13!! = 135135 pairings).
pub const PM_ARGUMENT_CAP: usize = 14;

/// Up to this order [`pm_parity`] enumerates matchings; above it the
/// determinant is used.
pub const PM_ENUMERATION_LIMIT: usize = 16;

/// A partition of the positions `0..n` into unordered pairs.
///
/// Pairs are stored as `(a, b)` with `a < b`, sorted by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of positions covered.
    pub fn size(&self) -> usize {
        self.pairs.len() * 2
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (a, b)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        f.write_str("}")
    }
}

/// Lazily yields every pairing of `0..n`, each exactly once; `(n-1)!!` in all.
///
/// A pairing is encoded by mixed-radix digits: digit `k` picks the partner of
/// the smallest still-unpaired position among the `n - 2k - 1` candidates.
#[derive(Clone, Debug)]
pub struct Pairings {
    n: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Pairings {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        let mut free: Vec<usize> = (0..self.n).collect();
        let mut pairs = Vec::with_capacity(self.n / 2);
        for &d in &self.digits {
            let a = free.remove(0);
            let b = free.remove(d);
            pairs.push((a, b));
        }
        // increment, least significant digit last
        self.done = true;
        for k in (0..self.digits.len()).rev() {
            let radix = self.n - 2 * k - 1;
            if self.digits[k] + 1 < radix {
                self.digits[k] += 1;
                self.done = false;
                break;
            }
            self.digits[k] = 0;
        }
        Some(Pairing { pairs })
    }
}

/// All pairings of `n` positions. `n = 0` yields the single empty pairing.
pub fn enumerate_pairings(n: usize) -> Result<Pairings> {
    if n % 2 == 1 {
        return Err(Error::OddCount(n));
    }
    Ok(Pairings {
        n,
        digits: vec![0; n / 2],
        done: false,
    })
}

/// Parity of the number of perfect matchings of a simple graph.
///
/// Enumerates for small graphs and falls back to `det A(G)` beyond
/// [`PM_ENUMERATION_LIMIT`] vertices.
pub fn pm_parity(g: &Graph) -> Result<bool> {
    if g.order() <= PM_ENUMERATION_LIMIT {
        pm_parity_by_enumeration(g)
    } else if g.is_simple() {
        Ok(g.adjacency().det())
    } else {
        Err(Error::NotSimple)
    }
}

/// Parity of the number of perfect matchings by exhaustive search: the
/// smallest unmatched vertex is matched to each neighbour in turn.
pub fn pm_parity_by_enumeration(g: &Graph) -> Result<bool> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let idx: Vec<usize> = (0..g.order()).collect();
    Ok(matchings_parity(
        &idx,
        &|i, j| g.adjacency().get(i, j),
        false,
    ))
}

/// Parity of the number of partitions of `V(G)` into edges and looped
/// singletons. Equals [`pm_parity`] on simple graphs.
pub fn general_pm_parity(g: &Graph) -> bool {
    let idx: Vec<usize> = (0..g.order()).collect();
    matchings_parity(&idx, &|i, j| g.adjacency().get(i, j), true)
}

/// XOR over pairings of `items` (positions, possibly repeating an index) of
/// the AND of `related` over the pairs. With `singletons`, an item may also
/// stand alone when `related(i, i)`.
fn matchings_parity(
    items: &[usize],
    related: &dyn Fn(usize, usize) -> bool,
    singletons: bool,
) -> bool {
    let Some((&first, rest)) = items.split_first() else {
        return true;
    };
    let mut acc = false;
    if singletons && related(first, first) {
        acc ^= matchings_parity(rest, related, singletons);
    }
    for k in 0..rest.len() {
        if related(first, rest[k]) {
            let mut remaining = Vec::with_capacity(rest.len() - 1);
            remaining.extend_from_slice(&rest[..k]);
            remaining.extend_from_slice(&rest[k + 1..]);
            acc ^= matchings_parity(&remaining, related, singletons);
        }
    }
    acc
}

/// `pm_G(x1, …, xn)`: XOR over pairings of the argument positions of the AND
/// of `x ~ y` over the pairs. Arguments may repeat. For distinct arguments
/// this is the matching parity of the induced subgraph.
pub fn pm_multiset(g: &Graph, args: &[Vertex]) -> Result<bool> {
    if args.len() % 2 == 1 {
        return Err(Error::OddCount(args.len()));
    }
    if args.len() > PM_ARGUMENT_CAP {
        return Err(Error::TooLarge {
            what: "argument list",
            size: args.len(),
            cap: PM_ARGUMENT_CAP,
        });
    }
    let idx = args
        .iter()
        .map(|a| g.index(a))
        .collect::<Result<Vec<_>>>()?;
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(matchings_parity(&idx, &|i, j| g.sim_idx(i, j), false))
}

/// Adjacency `x ~ y` in `G[uv][wz]`, from `G` alone.
///
/// The value is `x ~ y` XOR, over the pairings `{{x1,x2},{x3,x4}}` of the
/// positions `(u, v, w, z)` with `x1 ~ x2`, of
/// `(x ~ x3 ∧ y ~ x4) ⊕ (x ~ x4 ∧ y ~ x3)`. Requires `[uv][wz]` applicable.
pub fn double_pivot_sim(
    g: &Graph,
    [u, v, w, z]: [&Vertex; 4],
    x: &Vertex,
    y: &Vertex,
) -> Result<bool> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let (iu, iv, iw, iz) = (g.index(u)?, g.index(v)?, g.index(w)?, g.index(z)?);
    let (ix, iy) = (g.index(x)?, g.index(y)?);
    g.check_pivot(iu, iv)?;
    let mut after = g.clone();
    after.pivot_at(iu, iv);
    after.check_pivot(iw, iz)?;

    let s = |a: usize, b: usize| g.sim_idx(a, b);
    let four = [iu, iv, iw, iz];
    let mut acc = s(ix, iy);
    for p in enumerate_pairings(4)? {
        for (first, second) in [(0, 1), (1, 0)] {
            let (a1, a2) = p.pairs()[first];
            let (b1, b2) = p.pairs()[second];
            let (x1, x2, x3, x4) = (four[a1], four[a2], four[b1], four[b2]);
            if s(x1, x2) {
                acc ^= (s(ix, x3) && s(iy, x4)) ^ (s(ix, x4) && s(iy, x3));
            }
        }
    }
    Ok(acc)
}
