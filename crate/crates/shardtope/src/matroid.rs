//! Shard graphs, their cycle matroids and the signed simplex decomposition of
//! matroid polytopes through beta invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::basis::{self, Basis, CoeffVector};
use crate::bits::{self, Mask, UnionFind};
use crate::error::{Error, Result};
use crate::polytope::{self, FanFrame, SupportVector, VPolytope};
use crate::rat::{rat, Rat};
use crate::weak_order::Arc;

/// A labelled multigraph. Loops are kept so that the labels cover `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardGraph {
    pub n: usize,
    pub vertices: usize,
    /// `(u, v, label)`; a loop has `u == v`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl ShardGraph {
    /// Checks that labels are distinct, lie in `[n]` and endpoints exist.
    pub fn new(n: usize, vertices: usize, edges: Vec<(usize, usize, usize)>) -> Result<ShardGraph> {
        let mut seen = 0 as Mask;
        for &(u, v, l) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::Precondition(format!("edge {l} has an endpoint outside 0..{vertices}")));
            }
            if l == 0 || l > n || bits::has(seen, l) {
                return Err(Error::Precondition(format!("label {l} repeated or outside [{n}]")));
            }
            seen |= bits::bit(l);
        }
        Ok(ShardGraph { n, vertices, edges })
    }

    pub fn labels(&self) -> Mask {
        bits::from_iter(self.edges.iter().map(|e| e.2))
    }

    pub fn loops(&self) -> Mask {
        bits::from_iter(self.edges.iter().filter(|e| e.0 == e.1).map(|e| e.2))
    }

    fn loopless(&self) -> Vec<(usize, usize, usize)> {
        self.edges.iter().copied().filter(|e| e.0 != e.1).collect()
    }

    #[cfg(test)]
    fn edge(&self, label: usize) -> Option<(usize, usize)> {
        self.edges.iter().find(|e| e.2 == label).map(|e| (e.0, e.1))
    }

    /// Whether the edges with labels in `m` connect all vertices.
    fn connects(&self, m: Mask) -> bool {
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v, l) in &self.edges {
            if bits::has(m, l) {
                uf.union(u, v);
            }
        }
        let r = uf.find(0);
        (0..self.vertices).all(|x| uf.find(x) == r)
    }

    /// Edge list export: `{"vertices": k, "edges": [{"u","v","label"}]}`.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self.edges.iter().map(|&(u, v, l)| json!({"u": u, "v": v, "label": l})).collect();
        json!({"n": self.n, "vertices": self.vertices, "edges": edges})
    }
}

/// `Γ_α` on vertices `0..=|B|+1`: the edge `a_i` joins the gap `k` (with
/// `b_k < a_i < b_{k+1}`, `b_0 = a − 1`) to the last vertex, the edge `b_j`
/// joins `j − 1` to `j`, and labels outside `[a, b]` are loops on the last
/// vertex.
pub fn shard_graph(alpha: &Arc) -> ShardGraph {
    let bs: Vec<usize> = bits::elems(alpha.below | bits::bit(alpha.b)).collect();
    let top = bs.len();
    let mut edges = Vec::with_capacity(alpha.n);
    for l in 1..=alpha.n {
        if l < alpha.a || l > alpha.b {
            edges.push((top, top, l));
        } else if let Some(j) = bs.iter().position(|&x| x == l) {
            edges.push((j, j + 1, l));
        } else {
            let k = bs.iter().filter(|&&x| x < l).count();
            edges.push((k, top, l));
        }
    }
    ShardGraph { n: alpha.n, vertices: top + 1, edges }
}

/// Label sets of all spanning trees of the loopless part.
pub fn spanning_trees(g: &ShardGraph) -> Result<BTreeSet<Mask>> {
    let proper: Vec<usize> = g.loopless().iter().map(|e| e.2).collect();
    if !g.connects(bits::from_iter(proper.iter().copied())) {
        return Err(Error::Disconnected);
    }
    let need = g.vertices - 1;
    let mut out = BTreeSet::new();
    for sub in 0u32..1 << proper.len() {
        if sub.count_ones() as usize != need {
            continue;
        }
        let m = bits::from_iter((0..proper.len()).filter(|&i| sub >> i & 1 == 1).map(|i| proper[i]));
        if g.connects(m) {
            out.insert(m);
        }
    }
    Ok(out)
}

/// Compares the spanning trees of `Γ_α` with the vertices of
/// `SP(α) + 1_{B ∪ {b}}`.
pub fn verify_prop72(alpha: &Arc) -> bool {
    let Ok(trees) = spanning_trees(&shard_graph(alpha)) else {
        return false;
    };
    let shift: Vec<Rat> = (1..=alpha.n).map(|k| rat(i64::from(bits::has(alpha.right_set(), k)))).collect();
    let poly = crate::shards::shard_polytope(*alpha).translate(&shift);
    let mut verts = BTreeSet::new();
    for v in &poly.vertices {
        let mut m = 0;
        for (k, x) in v.iter().enumerate() {
            if *x == rat(1) {
                m |= bits::bit(k + 1);
            } else if !x.is_zero() {
                return false;
            }
        }
        verts.insert(m);
    }
    verts == trees
}

/// Whether the loopless part reduces to a single edge by deleting parallel
/// copies and suppressing vertices of degree two.
pub fn is_series_parallel(g: &ShardGraph) -> bool {
    let mut edges: Vec<(usize, usize)> = g.loopless().iter().map(|e| (e.0.min(e.1), e.0.max(e.1))).collect();
    if edges.is_empty() || !g.connects(g.labels() & !g.loops()) {
        return false;
    }
    loop {
        if edges.len() == 1 {
            return true;
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if edges.len() < before {
            continue;
        }
        let mut deg: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            deg.entry(u).or_default().push(i);
            deg.entry(v).or_default().push(i);
        }
        let Some((&x, inc)) = deg.iter().find(|(_, inc)| inc.len() == 2) else {
            return false;
        };
        let other = |i: usize| if edges[i].0 == x { edges[i].1 } else { edges[i].0 };
        let (p, q) = (other(inc[0]), other(inc[1]));
        let (i, j) = (inc[0].max(inc[1]), inc[0].min(inc[1]));
        edges.remove(i);
        edges.remove(j);
        edges.push((p.min(q), p.max(q)));
    }
}

/// Loopless part connected and without cut vertex.
pub fn is_2connected(g: &ShardGraph) -> bool {
    let proper = g.labels() & !g.loops();
    if !g.connects(proper) {
        return false;
    }
    if g.vertices <= 2 {
        return true;
    }
    (0..g.vertices).all(|cut| {
        let mut uf = UnionFind::new(g.vertices);
        for &(u, v, l) in &g.edges {
            if bits::has(proper, l) && u != cut && v != cut {
                uf.union(u, v);
            }
        }
        let rest: Vec<usize> = (0..g.vertices).filter(|&x| x != cut).collect();
        let r = uf.find(rest[0]);
        rest.iter().all(|&x| uf.find(x) == r)
    })
}

/// A matroid given by its ground set and the list of its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidView {
    pub n: usize,
    pub ground: Mask,
    pub bases: BTreeSet<Mask>,
}

impl MatroidView {
    /// Validates equicardinality and the basis exchange axiom.
    pub fn new(n: usize, ground: Mask, bases: BTreeSet<Mask>) -> Result<MatroidView> {
        let m = MatroidView { n, ground, bases };
        let Some(&first) = m.bases.iter().next() else {
            return Err(Error::Precondition("a matroid has at least one basis".into()));
        };
        if ground & !bits::closed(1, n) != 0 || m.bases.iter().any(|&b| b & !ground != 0 || bits::card(b) != bits::card(first)) {
            return Err(Error::Precondition("bases must be equicardinal subsets of the ground set".into()));
        }
        for &b1 in &m.bases {
            for &b2 in &m.bases {
                for x in bits::elems(b1 & !b2) {
                    if !bits::elems(b2 & !b1).any(|y| m.bases.contains(&(b1 & !bits::bit(x) | bits::bit(y)))) {
                        return Err(Error::Precondition("basis exchange fails".into()));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The cycle matroid: spanning forests of the loopless part, loops as
    /// loops.
    pub fn cycle(g: &ShardGraph) -> Result<MatroidView> {
        Ok(MatroidView { n: g.n, ground: g.labels(), bases: spanning_trees(g)? })
    }

    /// The uniform matroid `U_{k,m}` on `ground`.
    pub fn uniform(n: usize, k: usize, ground: Mask) -> MatroidView {
        let bases = (0..=ground).filter(|&b| b & !ground == 0 && bits::card(b) == k).collect();
        MatroidView { n, ground, bases }
    }

    pub fn rank(&self, x: Mask) -> usize {
        self.bases.iter().map(|&b| bits::card(b & x)).max().unwrap_or(0)
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground)
    }

    /// `M / K`, on the ground set `E ∖ K`.
    pub fn contract(&self, k: Mask) -> MatroidView {
        let k = k & self.ground;
        let rk = self.rank(k);
        let bases = self.bases.iter().filter(|&&b| bits::card(b & k) == rk).map(|&b| b & !k).collect();
        MatroidView { n: self.n, ground: self.ground & !k, bases }
    }

    /// Every pair of elements lies on a common circuit, tested through the
    /// connectivity function.
    pub fn is_connected(&self) -> bool {
        let r = self.full_rank();
        let g = self.ground;
        (1..g).filter(|&x| x & !g == 0).all(|x| self.rank(x) + self.rank(g & !x) > r)
    }

    /// Whether the ground set is a single loop.
    pub fn is_loop(&self) -> bool {
        bits::card(self.ground) == 1 && self.full_rank() == 0
    }

    pub fn polytope(&self) -> VPolytope {
        let pts = self.bases.iter().map(|&b| (1..=self.n).map(|k| rat(i64::from(bits::has(b, k)))).collect()).collect();
        VPolytope::from_extreme(self.n, pts)
    }
}

/// `β(M) = (−1)^{r(M)} Σ_{X ⊆ E} (−1)^{|X|} r(X)`.
pub fn beta(m: &MatroidView) -> i64 {
    let g = m.ground;
    let mut sum = 0i64;
    let mut x: Mask = 0;
    loop {
        let r = m.rank(x) as i64;
        sum += if bits::card(x) % 2 == 0 { r } else { -r };
        if x == g {
            break;
        }
        x = (x.wrapping_sub(g)) & g;
    }
    if m.full_rank() % 2 == 0 { sum } else { -sum }
}

/// `β̃(M) = (−1)^{r(M)+1} β(M)`.
pub fn signed_beta(m: &MatroidView) -> i64 {
    if m.full_rank() % 2 == 1 { beta(m) } else { -beta(m) }
}

fn submasks(g: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0 as Mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != g).then(|| cur.wrapping_sub(g) & g);
        Some(cur)
    })
}

/// All nonzero terms `E ∖ K ↦ β̃(M/K)`, singletons included.
pub fn abd_terms(m: &MatroidView) -> BTreeMap<Mask, i64> {
    submasks(m.ground)
        .filter(|&k| k != m.ground)
        .filter_map(|k| {
            let c = signed_beta(&m.contract(k));
            (c != 0).then_some((m.ground & !k, c))
        })
        .collect()
}

/// The coefficients `y_J = β̃(M / (E ∖ J))` of `P_M = Σ y_J Δ_J`. Matroids
/// whose decomposition involves a point `Δ_{j}` are rejected.
pub fn abd_decomposition(m: &MatroidView) -> Result<CoeffVector> {
    let mut y = CoeffVector::zero(Basis::Y, m.n);
    for (j, c) in abd_terms(m) {
        if bits::card(j) < 2 {
            return Err(Error::Precondition(format!("point term at {{{}}}", bits::key(j))));
        }
        y.try_set(j, rat(c))?;
    }
    Ok(y)
}

/// Support vector of `Σ_J β̃(M/(E∖J)) Δ_J`, points included.
pub fn abd_support(m: &MatroidView) -> SupportVector {
    let frame = FanFrame::A(m.n);
    let mut acc = SupportVector::zero(frame);
    for (j, c) in abd_terms(m) {
        let s = polytope::simplex_support(frame, j);
        for (a, b) in acc.values.iter_mut().zip(&s.values) {
            *a += b * rat(c);
        }
    }
    acc
}

/// Complements `E ∖ K` of the contractions `M/K` that are series-parallel
/// and connected, found by brute force.
pub fn connected_contractions(m: &MatroidView) -> BTreeSet<Mask> {
    submasks(m.ground)
        .filter(|&k| k != m.ground)
        .filter(|&k| {
            let c = m.contract(k);
            !c.is_loop() && c.is_connected() && beta(&c) == 1
        })
        .map(|k| m.ground & !k)
        .collect()
}

/// The sets `X ∪ (]min X, max X[ ∩ A)` with `X ⊆ B ∪ {a, b}`, `|X| ≥ 2`.
pub fn connected_contraction_closed_form(alpha: &Arc) -> BTreeSet<Mask> {
    let xs = alpha.below | bits::bit(alpha.a) | bits::bit(alpha.b);
    submasks(xs)
        .filter(|&x| bits::card(x) >= 2)
        .map(|x| x | bits::open(bits::min(x).unwrap(), bits::max(x).unwrap()) & alpha.above)
        .collect()
}

/// `y` from the shard matroid, for comparison with `s_to_y` of a unit.
pub fn shard_abd(alpha: &Arc) -> Result<CoeffVector> {
    abd_decomposition(&MatroidView::cycle(&shard_graph(alpha))?)
}

/// The unit shard coordinate of `α` converted to `y`.
pub fn shard_unit_y(alpha: &Arc) -> Result<CoeffVector> {
    basis::s_to_y(&CoeffVector::unit(Basis::S, alpha.n, basis::subset_of_arc(alpha))?)
}
