//! Type A quotientopes: Minkowski sums of shard polytopes over an arc ideal,
//! their closed-form vertices and heights, reference associahedra, and the
//! height-function quotientopes built from a forcing dominant function.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::basis::{self, arc_of_subset, subsets_ge2, Basis};
use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::polytope::{self, chamber_partition, support_from_vertices, ChamberPartition, FanFrame, SupportVector, VPolytope};
use crate::rat::{rat, Rat};
use crate::weak_order::{cambrian_ideal, congruence_classes, Arc, ArcIdeal, CongruencePartition, Permutation};

/// The vertex of `SP(α)` picked by the direction `t` (1-indexed positions
/// stored at `t[i - 1]`). Coordinates are in `{-1, 0, 1}`.
pub fn v_of<T: PartialOrd>(t: &[T], alpha: &Arc) -> Vec<i64> {
    let (a, b) = (alpha.a, alpha.b);
    let left = alpha.left_set();
    let right = alpha.right_set();
    let in_a = |x: usize| bits::has(alpha.above, x);
    let in_b = |x: usize| bits::has(alpha.below, x);
    let tv = |x: usize| &t[x - 1];
    let mut v = vec![0; alpha.n];
    for j in a..=b {
        if bits::has(left, j) {
            let shielded = (a..j)
                .filter(|&i| bits::has(left, i) && tv(i) > tv(j))
                .all(|i| (i + 1..j).any(|h| in_b(h) && tv(h) < tv(j)));
            let falls = (j + 1..=b)
                .any(|k| bits::has(right, k) && tv(j) > tv(k) && (j + 1..k).all(|l| !in_a(l) || tv(j) > tv(l)));
            if shielded && falls {
                v[j - 1] = 1;
            }
        } else {
            let reached = (a..j)
                .any(|i| bits::has(left, i) && tv(i) > tv(j) && (i + 1..j).all(|h| !in_b(h) || tv(h) > tv(j)));
            let shielded = (j + 1..=b)
                .filter(|&k| bits::has(right, k) && tv(j) > tv(k))
                .all(|k| (j + 1..k).any(|l| in_a(l) && tv(l) > tv(j)));
            if reached && shielded {
                v[j - 1] = -1;
            }
        }
    }
    v
}

pub fn v_of_ideal<T: PartialOrd>(t: &[T], ideal: &ArcIdeal) -> Vec<i64> {
    let mut v = vec![0; ideal.n];
    for x in &ideal.arcs {
        for (s, d) in v.iter_mut().zip(v_of(t, x)) {
            *s += d;
        }
    }
    v
}

/// Number of pairs `r < s` with `r ∈ ({a} ∪ A) ∩ R`, `s ∈ (B ∪ {b}) ∖ R` and
/// no point of `B Δ R` strictly between them: the maximum of `⟨1_R, ·⟩` on `SP(α)`.
pub fn h_of(r: Mask, alpha: &Arc) -> i64 {
    let left = alpha.left_set() & r;
    let right = alpha.right_set() & !r;
    let blockers = alpha.below ^ r;
    let mut count = 0;
    for x in bits::elems(left) {
        for y in bits::elems(right) {
            if x < y && blockers & bits::open(x, y) == 0 {
                count += 1;
            }
        }
    }
    count
}

pub fn h_of_ideal(r: Mask, ideal: &ArcIdeal) -> i64 {
    ideal.arcs.iter().map(|x| h_of(r, x)).sum()
}

/// `Σ_{α ∈ ideal} SP(α)` as a support vector.
pub fn quotientope(ideal: &ArcIdeal) -> Result<SupportVector> {
    quotientope_weighted(ideal, &BTreeMap::new())
}

/// `Σ s_α SP(α)`, with `s_α = 1` for arcs missing from `weights`.
pub fn quotientope_weighted(ideal: &ArcIdeal, weights: &BTreeMap<Arc, Rat>) -> Result<SupportVector> {
    let frame = FanFrame::A(ideal.n);
    frame.check_cap()?;
    if weights.values().any(|w| !w.is_positive()) {
        return Err(Error::NonpositiveWeight);
    }
    if let Some(x) = weights.keys().find(|x| !ideal.contains(x)) {
        return Err(Error::Precondition(format!("weight given for {x}, which is not in the ideal")));
    }
    let one = Rat::one();
    Ok(SupportVector::from_fn(frame, |k| {
        ideal.arcs.iter().map(|x| weights.get(x).unwrap_or(&one) * rat(h_of(k.pos, x))).sum()
    }))
}

/// The direction `π⁻¹`, which lies in the chamber of `π`.
pub fn direction_of(pi: &Permutation) -> Vec<i64> {
    pi.inverse().0.into_iter().map(|v| v as i64).collect()
}

/// One vertex per congruence class, read at the class minimum.
pub fn quotientope_vertices(ideal: &ArcIdeal) -> Vec<(Permutation, Vec<i64>)> {
    congruence_classes(ideal)
        .min_perms()
        .into_iter()
        .map(|pi| {
            let v = v_of_ideal(&direction_of(&pi), ideal);
            (pi, v)
        })
        .collect()
}

/// The congruence classes as a partition of the braid fan chambers.
pub fn class_partition(p: &CongruencePartition) -> ChamberPartition {
    ChamberPartition::from_labels(FanFrame::A(p.n), &p.class_of)
}

/// The normal fan of the quotientope is the quotient fan.
pub fn verify_cor50(ideal: &ArcIdeal) -> Result<bool> {
    let s = quotientope(ideal)?;
    Ok(chamber_partition(&s) == class_partition(&congruence_classes(ideal)))
}

/// Whether the inner normal `1_R` of a proper subset spans a ray of the
/// quotient fan: every gap of `R` between two of its points needs the down
/// arc over it, and every run of `R` between two outside points needs the up arc.
pub fn ray_check(ideal: &ArcIdeal, r: Mask) -> bool {
    let n = ideal.n;
    for a in 1..=n {
        for b in a + 1..=n {
            let inside = bits::open(a, b);
            let (ha, hb) = (bits::has(r, a), bits::has(r, b));
            if ha && hb && inside & r == 0 && !ideal.contains(&Arc::down(n, a, b)) {
                return false;
            }
            if !ha && !hb && inside & !r == 0 && !ideal.contains(&Arc::up(n, a, b)) {
                return false;
            }
        }
    }
    true
}

/// Outer normals `1_Q` of the facets of any quotientope of the ideal. The
/// support is read off `max`, so `Q` is the complement of an inner normal.
pub fn quotient_rays(ideal: &ArcIdeal) -> Vec<Mask> {
    let full = bits::closed(1, ideal.n);
    (1..full >> 1)
        .map(|m| m << 1)
        .filter(|&q| ray_check(ideal, full & !q))
        .collect()
}

/// Closed-form reference associahedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reference {
    /// The associahedron whose vertices are `ℓ(T, j) r(T, j)` over binary trees.
    Loday(usize),
    /// The α-associahedron of an arc.
    Hl(Arc),
}

impl Reference {
    pub fn n(&self) -> usize {
        match self {
            Reference::Loday(n) => *n,
            Reference::Hl(x) => x.n,
        }
    }

    fn ideal(&self) -> ArcIdeal {
        match self {
            Reference::Loday(n) => crate::weak_order::sylvester_ideal(*n),
            Reference::Hl(x) => cambrian_ideal(x),
        }
    }

    /// `u` with `reference = quotientope + u`.
    pub fn translation(&self) -> Vec<Rat> {
        match self {
            Reference::Loday(n) => (1..=*n as i64).map(rat).collect(),
            Reference::Hl(x) => (1..=x.n)
                .map(|i| if (x.a..=x.b).contains(&i) { rat((i - x.a + 1) as i64) } else { Rat::zero() })
                .collect(),
        }
    }
}

/// Loday coordinates at direction `t`: `(j − i)(k − j)`, with `i` the last
/// position left of `j` holding a larger value (or 0) and `k` the first
/// position right of `j` holding a larger value (or `n + 1`).
pub fn loday_vertex<T: PartialOrd>(t: &[T]) -> Vec<i64> {
    let n = t.len();
    (1..=n)
        .map(|j| {
            let i = (1..j).rev().find(|&h| t[h - 1] > t[j - 1]).unwrap_or(0);
            let k = (j + 1..=n).find(|&l| t[l - 1] > t[j - 1]).unwrap_or(n + 1);
            ((j - i) * (k - j)) as i64
        })
        .collect()
}

/// Leaves `(ℓ, r)` on either side of each node of the α-Cambrian tree of a
/// class. The tree is the Hasse diagram of the order `u < v` iff `t_u < t_v`
/// for every direction `t` of the class, restricted to `[a, b]`. A node of
/// `{a} ∪ A` counts its left and right descendant subtrees, a node of
/// `B ∪ {b}` its left and right ancestor subtrees; a subtree with `m` nodes has
/// `m + 1` leaves.
fn cambrian_tree_leaves(alpha: &Arc, class: &[Vec<i64>]) -> Result<Vec<(usize, usize)>> {
    let nodes: Vec<usize> = (alpha.a..=alpha.b).collect();
    let lt = |u: usize, v: usize| class.iter().all(|t| t[u - 1] < t[v - 1]);
    let mut adj: HashMap<usize, Vec<usize>> = nodes.iter().map(|&u| (u, Vec::new())).collect();
    let mut edges = 0;
    for &u in &nodes {
        for &v in &nodes {
            if u != v && lt(u, v) && !nodes.iter().any(|&w| lt(u, w) && lt(w, v)) {
                adj.get_mut(&u).unwrap().push(v);
                adj.get_mut(&v).unwrap().push(u);
                edges += 1;
            }
        }
    }
    if edges + 1 != nodes.len() {
        return Err(Error::Precondition("class order is not a tree".into()));
    }
    let component = |w: usize, cut: usize| {
        let mut seen = vec![cut, w];
        let mut stack = vec![w];
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        seen.len() - 1
    };
    Ok(nodes
        .iter()
        .map(|&j| {
            let down = bits::has(alpha.left_set(), j);
            let (mut l, mut r) = (1, 1);
            for &w in &adj[&j] {
                if lt(w, j) == down {
                    let size = component(w, j);
                    if w < j {
                        l += size;
                    } else {
                        r += size;
                    }
                }
            }
            (l, r)
        })
        .collect())
}

/// The reference associahedron, one vertex per class of its congruence.
pub fn reference_associahedron(kind: &Reference) -> Result<VPolytope> {
    let n = kind.n();
    let parts = congruence_classes(&kind.ideal());
    let mut pts = Vec::new();
    for block in parts.blocks() {
        let dirs: Vec<Vec<i64>> = block.iter().map(|&c| direction_of(&parts.perms[c])).collect();
        let v: Vec<Rat> = match kind {
            Reference::Loday(_) => loday_vertex(&dirs[0]).into_iter().map(rat).collect(),
            Reference::Hl(x) => {
                let leaves = cambrian_tree_leaves(x, &dirs)?;
                let top = (x.b - x.a + 2) as i64;
                let mut v = vec![Rat::zero(); n];
                for (j, (l, r)) in (x.a..=x.b).zip(leaves) {
                    let lr = (l * r) as i64;
                    v[j - 1] = rat(if bits::has(x.left_set(), j) { lr } else { top - lr });
                }
                v
            }
        };
        pts.push(v);
    }
    Ok(VPolytope::from_extreme(n, pts))
}

/// The sum of the α-associahedra of the minimal arcs realizes the quotient fan.
pub fn verify_thm1(ideal: &ArcIdeal) -> Result<bool> {
    let frame = FanFrame::A(ideal.n);
    let parts: Vec<SupportVector> =
        ideal.minimal_arcs().iter().map(|x| quotientope(&cambrian_ideal(x))).collect::<Result<_>>()?;
    let sum = polytope::sum_all(frame, &parts)?;
    Ok(chamber_partition(&sum) == class_partition(&congruence_classes(ideal)))
}

/// A positive function on the subsets of `[n]` with at least two elements.
pub type SubsetFn = BTreeMap<Mask, Rat>;

/// `R ≠ S` with `[min S, max S] ⊆ [min R, max R]` and the same points as `S`
/// strictly inside `]min S, max S[`: the arcs forced by `α_S`.
fn dominated_by(s: Mask, n: usize) -> impl Iterator<Item = Mask> {
    let (lo, hi) = (bits::min(s).unwrap(), bits::max(s).unwrap());
    let inner = bits::open(lo, hi);
    subsets_ge2(n).into_iter().filter(move |&r| {
        r != s && bits::min(r).unwrap() <= lo && bits::max(r).unwrap() >= hi && r & inner == s & inner
    })
}

/// `f(S) > Σ f(R)` over the arcs `R` forced by `S`, with `f` positive everywhere.
pub fn validate_forcing_dominant(f: &SubsetFn, n: usize) -> bool {
    let subsets = subsets_ge2(n);
    if subsets.iter().any(|s| !f.get(s).is_some_and(Rat::is_positive)) {
        return false;
    }
    subsets.iter().all(|&s| {
        let rest: Rat = dominated_by(s, n).map(|r| f[&r].clone()).sum();
        f[&s] > rest
    })
}

/// `(2^n + 1)^{n − 1 − (max S − min S)}`: fewer than `2^n` subsets compete with
/// any `S`, each weighing at most `f(S) / (2^n + 1)`.
pub fn default_forcing_function(n: usize) -> SubsetFn {
    let base = rat((1i64 << n) + 1);
    subsets_ge2(n)
        .into_iter()
        .map(|s| {
            let span = bits::max(s).unwrap() - bits::min(s).unwrap();
            (s, num_traits::pow(base.clone(), n - 1 - span))
        })
        .collect()
}

/// `(2^n + 1)^{max S − min S}`, growing with the span.
pub fn span_power_function(n: usize) -> SubsetFn {
    let base = rat((1i64 << n) + 1);
    subsets_ge2(n)
        .into_iter()
        .map(|s| (s, num_traits::pow(base.clone(), bits::max(s).unwrap() - bits::min(s).unwrap())))
        .collect()
}

/// Contribution of `S` to `R`: exactly one extremity of `S` lies in `R`, and
/// `R` agrees with `S` strictly between them.
pub fn gamma(s: Mask, r: Mask) -> bool {
    let (lo, hi) = (bits::min(s).unwrap(), bits::max(s).unwrap());
    let inner = bits::open(lo, hi);
    bits::has(r, lo) != bits::has(r, hi) && r & inner == s & inner
}

/// `γ(S, G) + γ(S, H) − γ(S, I) − γ(S, J)` with `G = I Δ [1, min I]`,
/// `H = I Δ [max I, n]` and `J = I Δ ([1, min I] ∪ [max I, n])`.
pub fn big_gamma(s: Mask, i: Mask, n: usize) -> i64 {
    let (lo, hi) = (bits::min(i).unwrap(), bits::max(i).unwrap());
    let g = i ^ bits::closed(1, lo);
    let h = i ^ bits::closed(hi, n);
    let j = g ^ bits::closed(hi, n);
    let c = |r| gamma(s, r) as i64;
    c(g) + c(h) - c(i) - c(j)
}

/// The subsets `S` with `α_S` in the ideal.
pub fn ideal_subsets(ideal: &ArcIdeal) -> Vec<Mask> {
    ideal.arcs.iter().map(basis::subset_of_arc).collect()
}

/// `h(R) = Σ_{S} f(S) γ(S, R)` for every nonempty `R ⊆ [n]`, keyed by mask.
pub fn ps_heights(ideal: &ArcIdeal, f: &SubsetFn) -> BTreeMap<Mask, Rat> {
    let subsets = ideal_subsets(ideal);
    (1..1u32 << ideal.n)
        .map(|m| m << 1)
        .map(|r| (r, subsets.iter().filter(|&&s| gamma(s, r)).map(|s| f[s].clone()).sum()))
        .collect()
}

/// The polytope `{⟨1, x⟩ = h([n]), ⟨r(R), x⟩ ≤ h(R)}` with `r(R) = |R|·1 − n·1_R`.
///
/// Since `⟨r(R), x⟩ = |R|·h([n]) − n⟨1_R, x⟩` on the hyperplane, each constraint
/// reads `⟨1_R, x⟩ ≥ z_R := (|R| h([n]) − h(R)) / n`. The point of chamber `σ`
/// makes the constraints of the bottom sets `{σ_1, …, σ_k}` tight; once every
/// such point is checked feasible, each one is the vertex maximizing the
/// chamber's direction.
pub fn ps_quotientope(ideal: &ArcIdeal, f: &SubsetFn) -> Result<SupportVector> {
    let n = ideal.n;
    let frame = FanFrame::A(n);
    frame.check_cap()?;
    if !validate_forcing_dominant(f, n) {
        return Err(Error::NotForcingDominant);
    }
    let h = ps_heights(ideal, f);
    let full = bits::closed(1, n);
    let total = h[&full].clone();
    let nn = rat(n as i64);
    let z: HashMap<Mask, Rat> =
        h.iter().map(|(&r, hr)| (r, (rat(bits::card(r) as i64) * &total - hr) / &nn)).collect();
    let zr = |r: Mask| if r == 0 { Rat::zero() } else { z[&r].clone() };
    let table = frame.chambers();
    let mut verts = Vec::with_capacity(table.words.len());
    for w in &table.words {
        let mut v = vec![Rat::zero(); n];
        let mut below = 0;
        for &x in w {
            let next = below | bits::bit(x as usize);
            v[x as usize - 1] = zr(next) - zr(below);
            below = next;
        }
        verts.push(v);
    }
    let feasible = verts.iter().all(|v| {
        z.iter().all(|(&r, zv)| bits::elems(r).map(|i| v[i - 1].clone()).sum::<Rat>() >= *zv)
    });
    if !feasible {
        return Err(Error::Precondition("height function is not tight".into()));
    }
    Ok(support_from_vertices(&VPolytope::from_points(n, verts)?, frame))
}

/// `s_I = (1/n) Σ_S f(S) Γ(S, I)` over the subsets of the ideal.
pub fn ps_shard_coefficient(ideal: &ArcIdeal, f: &SubsetFn, i: Mask) -> Rat {
    let n = ideal.n;
    let sum: Rat = ideal_subsets(ideal).iter().map(|s| &f[s] * rat(big_gamma(*s, i, n))).sum();
    sum / rat(n as i64)
}

/// The shard coefficients of the height-function quotientope are positive
/// exactly on the ideal and agree with the `Γ` accounting.
pub fn verify_prop100(ideal: &ArcIdeal, f: &SubsetFn) -> Result<bool> {
    let n = ideal.n;
    let s = basis::decompose(&ps_quotientope(ideal, f)?, Basis::S, true)?;
    Ok(subsets_ge2(n).into_iter().all(|i| {
        let c = s.get(i);
        let inside = arc_of_subset(i, n).map(|x| ideal.contains(&x)).unwrap_or(false);
        (if inside { c.is_positive() } else { c.is_zero() }) && c == ps_shard_coefficient(ideal, f, i)
    }))
}
