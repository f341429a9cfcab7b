//! Shard polytopes of type A arcs: alternating matchings, vertex and facet
//! descriptions, faces, symmetries, Minkowski identities and normal cones.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::polytope::{self, support_from_vertices, FanFrame, SupportVector, VPolytope};
use crate::rat::{rat, Rat};
use crate::weak_order::{cover_arc, forces, Arc, Permutation, PseudoArc};

/// An alternating matching `a_1 < b_1 < … < a_k < b_k` with `a_i ∈ {a} ∪ A`
/// and `b_i ∈ B ∪ {b}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pub elems: Vec<usize>,
}

impl Matching {
    pub fn empty() -> Matching {
        Matching { elems: Vec::new() }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.elems.chunks(2).map(|c| (c[0], c[1])).collect()
    }

    pub fn chi(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for (i, j) in self.pairs() {
            v[i - 1] += 1;
            v[j - 1] -= 1;
        }
        v
    }

    pub fn chi_rat(&self, n: usize) -> Vec<Rat> {
        self.chi(n).into_iter().map(rat).collect()
    }

    pub fn is_valid(&self, p: &PseudoArc) -> bool {
        self.elems.len() % 2 == 0
            && self.elems.windows(2).all(|w| w[0] < w[1])
            && self.elems.iter().enumerate().all(|(k, &e)| {
                bits::has(if k % 2 == 0 { p.left_set() } else { p.right_set() }, e)
            })
    }

    /// Dot rendering over `[a, b]`: `●` for used left points, `○` for used
    /// right points, `·` otherwise.
    pub fn dots(&self, p: &PseudoArc) -> String {
        (p.a..=p.b)
            .map(|i| match (self.elems.contains(&i), bits::has(p.left_set(), i)) {
                (true, true) => '●',
                (true, false) => '○',
                _ => '·',
            })
            .collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// All alternating matchings of a (pseudo)arc, sorted by element list.
pub fn enumerate_matchings(p: impl Into<PseudoArc>) -> Vec<Matching> {
    let p = p.into();
    let pts = p.support();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(p: &PseudoArc, pts: &[usize], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if cur.len() % 2 == 0 {
            out.push(Matching { elems: cur.clone() });
        }
        let want = if cur.len() % 2 == 0 { p.left_set() } else { p.right_set() };
        for k in from..pts.len() {
            if bits::has(want, pts[k]) {
                cur.push(pts[k]);
                go(p, pts, k + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(&p, &pts, 0, &mut cur, &mut out);
    out.sort();
    out
}

/// Number of matchings by the odd/even prefix recursion.
pub fn matching_count(p: impl Into<PseudoArc>) -> u64 {
    let p = p.into();
    let (mut v, mut w) = (1u64, 1u64);
    for &i in &p.support()[1..] {
        let nv = v + if bits::has(p.left_set(), i) { w } else { 0 };
        let nw = w + if bits::has(p.right_set(), i) { v } else { 0 };
        v = nv;
        w = nw;
    }
    w
}

/// `SP(α)`: the characteristic vectors of all alternating matchings, each a vertex.
pub fn shard_polytope(p: impl Into<PseudoArc>) -> VPolytope {
    let p = p.into();
    let pts = enumerate_matchings(p).iter().map(|m| m.chi_rat(p.n)).collect();
    VPolytope::from_extreme(p.n, pts)
}

pub fn shard_support(p: impl Into<PseudoArc>) -> SupportVector {
    let p = p.into();
    support_from_vertices(&shard_polytope(p), FanFrame::A(p.n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
    Ge,
}

/// `⟨coeffs, x⟩ rel rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<i64>,
    pub rel: Rel,
    pub rhs: i64,
}

impl Inequality {
    pub fn holds(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).filter(|(c, _)| **c != 0).map(|(c, v)| rat(*c) * v).sum();
        let r = rat(self.rhs);
        match self.rel {
            Rel::Eq => lhs == r,
            Rel::Le => lhs <= r,
            Rel::Ge => lhs >= r,
        }
    }

    pub fn tight(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).map(|(c, v)| rat(*c) * v).sum();
        lhs == rat(self.rhs)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => terms.push(format!("+x{}", i + 1)),
                -1 => terms.push(format!("-x{}", i + 1)),
                c => terms.push(format!("{c:+}x{}", i + 1)),
            }
        }
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" ").trim_start_matches('+').to_string() };
        let rel = match self.rel {
            Rel::Eq => "=",
            Rel::Le => "<=",
            Rel::Ge => ">=",
        };
        write!(f, "{lhs} {rel} {}", self.rhs)
    }
}

/// Inequality description of `SP(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDescription {
    pub equalities: Vec<Inequality>,
    /// One inequality per facet.
    pub facets: Vec<Inequality>,
}

impl HDescription {
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().chain(&self.facets).all(|c| c.holds(x))
    }
}

fn prefix(n: usize, j: usize) -> Vec<i64> {
    (1..=n).map(|i| i64::from(i <= j)).collect()
}

fn unit(n: usize, j: usize) -> Vec<i64> {
    (1..=n).map(|i| i64::from(i == j)).collect()
}

/// Sign constraints on `A` and `B`, `Σ_{i≤f} x_i ≤ 1` at falls and
/// `Σ_{i≤r} x_i ≥ 0` at rises, inside `Σ x_i = 0` with unused coordinates zero.
pub fn shard_polytope_facets(p: impl Into<PseudoArc>) -> HDescription {
    let p = p.into();
    let n = p.n;
    let used = p.left_set() | p.right_set();
    let mut equalities = vec![Inequality { coeffs: vec![1; n], rel: Rel::Eq, rhs: 0 }];
    for i in (1..=n).filter(|&i| !bits::has(used, i)) {
        equalities.push(Inequality { coeffs: unit(n, i), rel: Rel::Eq, rhs: 0 });
    }
    let mut facets = Vec::new();
    for i in bits::elems(p.above) {
        facets.push(Inequality { coeffs: unit(n, i), rel: Rel::Ge, rhs: 0 });
    }
    for i in bits::elems(p.below) {
        facets.push(Inequality { coeffs: unit(n, i), rel: Rel::Le, rhs: 0 });
    }
    for f in p.falls() {
        facets.push(Inequality { coeffs: prefix(n, f), rel: Rel::Le, rhs: 1 });
    }
    for r in p.rises() {
        facets.push(Inequality { coeffs: prefix(n, r), rel: Rel::Ge, rhs: 0 });
    }
    HDescription { equalities, facets }
}

/// Whether `x` lies in the shard `S(α)`: `x_a = x_b`, `x_a ≥ x_{a'}` on `A`,
/// `x_a ≤ x_{b'}` on `B`.
pub fn shard_contains(alpha: &Arc, x: &[Rat]) -> bool {
    let xa = &x[alpha.a - 1];
    *xa == x[alpha.b - 1]
        && bits::elems(alpha.above).all(|i| *xa >= x[i - 1])
        && bits::elems(alpha.below).all(|i| *xa <= x[i - 1])
}

/// Outcome of the wall-by-wall comparison between a polytope's normal fan and
/// the shards of the arcs forcing `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WallReport {
    /// Every braid wall separating distinct vertices is labelled by an arc forcing `α`.
    pub walls_in_forcing_shards: bool,
    /// Every braid wall labelled by `α` separates distinct vertices.
    pub shard_walls_separate: bool,
}

impl WallReport {
    pub fn ok(&self) -> bool {
        self.walls_in_forcing_shards && self.shard_walls_separate
    }
}

/// Compares the chamber vertices of `s` across every braid wall.
pub fn wall_report(s: &SupportVector, alpha: &Arc) -> WallReport {
    let frame = s.frame;
    let table = frame.chambers();
    let verts = s.chamber_vertices();
    let mut rep = WallReport { walls_in_forcing_shards: true, shard_walls_separate: true };
    for (c, w) in table.words.iter().enumerate() {
        let tau = Permutation(w.iter().map(|&v| v as usize).collect());
        for i in tau.descents() {
            let d = table.index[&tau.swapped(i).0.iter().map(|&v| v as i64).collect::<Vec<_>>()];
            let label = cover_arc(&tau, i).expect("descent");
            let distinct = verts[c] != verts[d];
            if distinct && !forces(&label, alpha) {
                rep.walls_in_forcing_shards = false;
            }
            if label == *alpha && !distinct {
                rep.shard_walls_separate = false;
            }
        }
    }
    rep
}

/// The wall test applied to `SP(α)` itself.
pub fn verify_prop48(alpha: &Arc) -> WallReport {
    wall_report(&shard_support(*alpha), alpha)
}

/// Whether `SP(α)` is (untranslated) a face of `SP(α')`.
pub fn face_criterion(alpha: &Arc, beta: &Arc) -> bool {
    forces(alpha, beta) && bits::has(beta.left_set(), alpha.a) && bits::has(beta.right_set(), alpha.b)
}

/// For `α` forcing `α'`, the translation `t` making `SP(α) + t` a face of `SP(α')`.
pub fn face_embedding(alpha: &Arc, beta: &Arc) -> Option<Vec<i64>> {
    if !forces(alpha, beta) {
        return None;
    }
    let mut t = vec![0i64; alpha.n];
    if bits::has(beta.below, alpha.a) {
        t[beta.a - 1] += 1;
        t[alpha.a - 1] -= 1;
    }
    if bits::has(beta.above, alpha.b) {
        t[alpha.b - 1] += 1;
        t[beta.b - 1] -= 1;
    }
    Some(t)
}

/// Checks that `SP(α) + t` really is a face of `SP(α')`.
pub fn face_embedding_check(alpha: &Arc, beta: &Arc) -> Option<bool> {
    let t = face_embedding(alpha, beta)?;
    let tr: Vec<Rat> = t.into_iter().map(rat).collect();
    let small = shard_polytope(*alpha).translate(&tr);
    Some(polytope::is_face(&shard_polytope(*beta), &small.vertices, Some(FanFrame::A(alpha.n))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// `(a, b, A, B) ↦ (a, b, B, A)`, paired with `x ↦ -x`.
    Phi,
    /// `i ↦ n + 1 - i`, paired with reversing coordinates.
    Psi,
}

pub fn symmetry_image(alpha: &Arc, which: Symmetry) -> Arc {
    let n = alpha.n;
    match which {
        Symmetry::Phi => Arc { above: alpha.below, below: alpha.above, ..*alpha },
        Symmetry::Psi => {
            let bar = |m: Mask| bits::from_iter(bits::elems(m).map(|i| n + 1 - i));
            Arc { n, a: n + 1 - alpha.b, b: n + 1 - alpha.a, above: bar(alpha.above), below: bar(alpha.below) }
        }
    }
}

/// `SP(φ(α)) = Φ(SP(α)) + e_a − e_b` and `SP(ψ(α)) = Ψ(SP(α)) − e_{ā} + e_{b̄}`.
pub fn symmetry_check(alpha: &Arc, which: Symmetry) -> bool {
    let n = alpha.n;
    let image = shard_polytope(symmetry_image(alpha, which));
    let mapped: Vec<Vec<Rat>> = shard_polytope(*alpha)
        .vertices
        .into_iter()
        .map(|v| {
            let mut w: Vec<Rat> = match which {
                Symmetry::Phi => v.into_iter().map(|x| -x).collect(),
                Symmetry::Psi => v.into_iter().rev().collect(),
            };
            let (plus, minus) = match which {
                Symmetry::Phi => (alpha.a, alpha.b),
                Symmetry::Psi => (n + 1 - alpha.b, n + 1 - alpha.a),
            };
            w[plus - 1] += rat(1);
            w[minus - 1] -= rat(1);
            w
        })
        .collect();
    image == VPolytope::from_extreme(n, mapped)
}

/// The two sides of the identity
/// `SP(α_x^A) + SP(α_x^B) = SP(α_x̄) + SP(α_{≤x}) + SP(α_{≥x})`.
pub fn theorem57_instance(alpha: &Arc, x: usize) -> Result<(SupportVector, SupportVector)> {
    if alpha.b < alpha.a + 2 || !(alpha.a < x && x < alpha.b) {
        return Err(Error::Precondition("need b - a >= 2 and a < x < b".into()));
    }
    let (n, a, b) = (alpha.n, alpha.a, alpha.b);
    let bx = bits::bit(x);
    let (above, below) = (alpha.above & !bx, alpha.below & !bx);
    let with_a = PseudoArc::new(n, a, b, above | bx, below)?;
    let with_b = PseudoArc::new(n, a, b, above, below | bx)?;
    let without = PseudoArc::new(n, a, b, above, below)?;
    let left = PseudoArc::new(n, a, x, alpha.above & bits::open(a, x), alpha.below & bits::open(a, x))?;
    let right = PseudoArc::new(n, x, b, alpha.above & bits::open(x, b), alpha.below & bits::open(x, b))?;
    let frame = FanFrame::A(n);
    let lhs = polytope::minkowski_sum(&shard_support(with_a), &shard_support(with_b))?;
    let rhs = polytope::sum_all(frame, [&shard_support(without), &shard_support(left), &shard_support(right)])?;
    Ok((lhs, rhs))
}

/// The sum of `SP(1, n, A, ]1,n[ ∖ A)` over all `A` against the zonotope
/// `Σ_{i<j} 2^{max(i−2,0)} 2^{max(n−j−1,0)} [0, e_i − e_j]`.
pub fn minimal_arc_zonotope(n: usize) -> Result<(SupportVector, SupportVector)> {
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let frame = FanFrame::A(n);
    let inner = bits::open(1, n);
    let mut lhs = SupportVector::zero(frame);
    for k in 0..1u32 << (n - 2) {
        let above = k << 2;
        let arc = Arc::from_masks(n, 1, n, above, inner & !above)?;
        lhs = polytope::minkowski_sum(&lhs, &shard_support(arc))?;
    }
    let mut rhs = SupportVector::zero(frame);
    for i in 1..=n {
        for j in i + 1..=n {
            let w = 1i64 << (i.saturating_sub(2) + (n - j).saturating_sub(1));
            rhs = polytope::minkowski_sum(&rhs, &polytope::scale(&polytope::segment_support(frame, i, j), &rat(w))?)?;
        }
    }
    Ok((lhs, rhs))
}

pub fn minimal_arc_zonotope_check(n: usize) -> Result<bool> {
    let (l, r) = minimal_arc_zonotope(n)?;
    Ok(l == r)
}

/// The four pair shapes that admit no other decomposition of their union.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialPair {
    /// `{H a' b' T, H T}`.
    Nested,
    /// `{H a' b₁ T, H a' b₂ T}`.
    SharedLeft,
    /// `{H a₁ b' T, H a₂ b' T}`.
    SharedRight,
    /// `{H a₁ b₁ a₂ b₂ T, H a₁ b₂ T}`.
    Bridged,
}

impl SpecialPair {
    pub fn number(&self) -> u8 {
        match self {
            SpecialPair::Nested => 1,
            SpecialPair::SharedLeft => 2,
            SpecialPair::SharedRight => 3,
            SpecialPair::Bridged => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairDecomposition {
    /// Two other matchings with the same multiset union.
    Pair(Matching, Matching),
    /// No other decomposition; the common head `H` and tail `T` are reported.
    Special { family: SpecialPair, head: Matching, tail: Matching },
}

/// The common prefix and suffix (in whole pairs) of two matchings.
pub fn common_head_tail(m1: &Matching, m2: &Matching) -> (Matching, Matching) {
    let (p1, p2) = (m1.pairs(), m2.pairs());
    let h = p1.iter().zip(&p2).take_while(|(x, y)| x == y).count();
    let room = p1.len().min(p2.len()) - h;
    let t = p1.iter().rev().zip(p2.iter().rev()).take(room).take_while(|(x, y)| x == y).count();
    let flat = |ps: &[(usize, usize)]| Matching { elems: ps.iter().flat_map(|&(a, b)| [a, b]).collect() };
    (flat(&p1[..h]), flat(&p1[p1.len() - t..]))
}

/// Running balance of left points minus right points over the distinct
/// elements of a multiset union.
fn balance_profile(p: &PseudoArc, elems: &[usize]) -> Vec<i64> {
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    for &e in elems {
        *counts.entry(e).or_default() += 1;
    }
    let mut acc = 0;
    counts
        .into_iter()
        .map(|(e, c)| {
            acc += if bits::has(p.left_set(), e) { c } else { -c };
            acc
        })
        .collect()
}

/// Another pair of matchings with the same multiset union as `{M₁, M₂}`, or
/// the special shape explaining why none exists.
pub fn decompose_matching_pair(p: impl Into<PseudoArc>, m1: &Matching, m2: &Matching) -> Result<PairDecomposition> {
    let p = p.into();
    if m1 == m2 || !m1.is_valid(&p) || !m2.is_valid(&p) {
        return Err(Error::Precondition("need two distinct alternating matchings".into()));
    }
    let mut union: Vec<usize> = m1.elems.iter().chain(&m2.elems).copied().collect();
    union.sort_unstable();
    let mut singles = Vec::new();
    let mut doubles = Vec::new();
    let mut k = 0;
    while k < union.len() {
        if k + 1 < union.len() && union[k] == union[k + 1] {
            doubles.push(union[k]);
            k += 2;
        } else {
            singles.push(union[k]);
            k += 1;
        }
    }
    for mask in 0..1u64 << singles.len() {
        let mut x = doubles.clone();
        let mut y = doubles.clone();
        for (i, &e) in singles.iter().enumerate() {
            if mask >> i & 1 == 1 { x.push(e) } else { y.push(e) }
        }
        x.sort_unstable();
        y.sort_unstable();
        let (m3, m4) = (Matching { elems: x }, Matching { elems: y });
        if m3 <= m4 && m3.is_valid(&p) && m4.is_valid(&p) && ![&m3, &m4].iter().any(|m| **m == *m1 || **m == *m2) {
            return Ok(PairDecomposition::Pair(m3, m4));
        }
    }
    let (head, tail) = common_head_tail(m1, m2);
    let strip = |m: &Matching| -> Vec<usize> { m.elems[head.elems.len()..m.elems.len() - tail.elems.len()].to_vec() };
    let core: Vec<usize> = strip(m1).into_iter().chain(strip(m2)).collect();
    let family = match balance_profile(&p, &core).as_slice() {
        [1, 0] => SpecialPair::Nested,
        [2, 1, 0] => SpecialPair::SharedLeft,
        [1, 2, 0] => SpecialPair::SharedRight,
        [2, 1, 2, 0] => SpecialPair::Bridged,
        other => return Err(Error::Precondition(format!("undecomposable pair with balance profile {other:?}"))),
    };
    Ok(PairDecomposition::Special { family, head, tail })
}

fn tau(t: &[Rat], m: &Matching) -> Rat {
    m.pairs().iter().map(|&(i, j)| &t[i - 1] - &t[j - 1]).sum()
}

/// Matchings at distance two from `M` (symmetric difference of size two).
pub fn matching_neighbors(p: impl Into<PseudoArc>, m: &Matching) -> Vec<Matching> {
    let p = p.into();
    let pts = p.support();
    let mut out = Vec::new();
    let toggle = |m: &Matching, x: usize, y: usize| -> Matching {
        let mut e: Vec<usize> = m.elems.iter().copied().filter(|&v| v != x && v != y).collect();
        for v in [x, y] {
            if !m.elems.contains(&v) {
                e.push(v);
            }
        }
        e.sort_unstable();
        Matching { elems: e }
    };
    for (k, &x) in pts.iter().enumerate() {
        for &y in &pts[k + 1..] {
            let m2 = toggle(m, x, y);
            if m2.is_valid(&p) && m2 != *m {
                out.push(m2);
            }
        }
    }
    out
}

/// Whether `χ(M)` maximizes `t` over `SP(α)`, via the inequalities
/// `τ(M) ≥ τ(M')` over its neighbours in the graph of `SP(α)`.
pub fn normal_cone_contains(p: impl Into<PseudoArc>, m: &Matching, t: &[Rat]) -> bool {
    let p = p.into();
    let base = tau(t, m);
    matching_neighbors(p, m).iter().all(|m2| tau(t, m2) <= base)
}

/// Whether `t` lies in the normal cone of some vertex whose matching contains
/// the pair `(i, j)`, by the explicit system on `t`.
pub fn pair_normal_cone_contains(alpha: &Arc, i: usize, j: usize, t: &[Rat]) -> bool {
    let (l, r) = (alpha.left_set(), alpha.right_set());
    if !(i < j && bits::has(l, i) && bits::has(r, j)) {
        return false;
    }
    let tv = |k: usize| &t[k - 1];
    if tv(i) < tv(j) {
        return false;
    }
    for k in i + 1..j {
        if bits::has(alpha.above, k) && tv(i) < tv(k) {
            return false;
        }
        if bits::has(alpha.below, k) && tv(k) < tv(j) {
            return false;
        }
    }
    for jp in i + 1..j {
        for ip in jp + 1..j {
            if bits::has(alpha.below, jp) && bits::has(alpha.above, ip) && tv(ip) > tv(jp) {
                return false;
            }
        }
    }
    for ip in (alpha.a..i).filter(|&x| bits::has(l, x)) {
        if tv(ip) > tv(i) && !(ip + 1..i).any(|h| bits::has(alpha.below, h) && tv(i) >= tv(h)) {
            return false;
        }
    }
    for jp in (j + 1..=alpha.b).filter(|&x| bits::has(r, x)) {
        if tv(jp) < tv(j) && !(j + 1..jp).any(|h| bits::has(alpha.above, h) && tv(h) >= tv(j)) {
            return false;
        }
    }
    true
}

/// Whether `t` lies in the normal cone of an edge of `SP(α)` in direction `e_i − e_j`.
pub fn edge_normal_cone_contains(alpha: &Arc, i: usize, j: usize, t: &[Rat]) -> bool {
    if !(i < j) || t[i - 1] != t[j - 1] {
        return false;
    }
    let (l, r) = (alpha.left_set(), alpha.right_set());
    let cone = |x: usize, y: usize| pair_normal_cone_contains(alpha, x, y, t);
    match (bits::has(l, i), bits::has(r, i), bits::has(l, j), bits::has(r, j)) {
        (true, _, _, true) => cone(i, j),
        (_, true, true, _) => {
            (alpha.a..i).any(|x| bits::has(l, x) && (j + 1..=alpha.b).any(|y| bits::has(r, y) && cone(x, y)))
        }
        (true, _, true, _) => (j + 1..=alpha.b).any(|y| bits::has(r, y) && cone(i, y)),
        (_, true, _, true) => (alpha.a..i).any(|x| bits::has(l, x) && cone(x, j)),
        _ => false,
    }
}

/// Matchings whose characteristic vectors maximize `t`.
pub fn maximizing_matchings(p: impl Into<PseudoArc>, t: &[Rat]) -> Vec<Matching> {
    let ms = enumerate_matchings(p);
    let vals: Vec<Rat> = ms.iter().map(|m| tau(t, m)).collect();
    let best = vals.iter().max().cloned().unwrap_or_else(Rat::zero);
    ms.into_iter().zip(vals).filter(|(_, v)| *v == best).map(|(m, _)| m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{facets, is_indecomposable, mcmullen_check, summand_space_dim, vertices_from_support};
    use crate::weak_order::enumerate_arcs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arc(s: &str, n: usize) -> Arc {
        Arc::parse(s, n).unwrap()
    }

    fn m(e: &[usize]) -> Matching {
        Matching { elems: e.to_vec() }
    }

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn matchings_small() {
        assert_eq!(enumerate_matchings(arc("1-2|A=|B=", 2)), vec![m(&[]), m(&[1, 2])]);
        let ms = enumerate_matchings(arc("1-4|A=2|B=3", 4));
        assert_eq!(ms, vec![m(&[]), m(&[1, 3]), m(&[1, 4]), m(&[2, 3]), m(&[2, 4])]);
        let ms = enumerate_matchings(arc("1-4|A=2,3|B=", 4));
        assert_eq!(ms, vec![m(&[]), m(&[1, 4]), m(&[2, 4]), m(&[3, 4])]);
        assert_eq!(m(&[1, 4]).dots(&arc("1-4|A=2|B=3", 4).as_pseudo()), "●··○");
    }

    #[test]
    fn matching_count_recursion() {
        for n in 2..=7 {
            for a in enumerate_arcs(n) {
                assert_eq!(matching_count(a), enumerate_matchings(a).len() as u64, "{a}");
                if a.is_up() {
                    assert_eq!(matching_count(a), (a.b - a.a + 1) as u64);
                }
            }
        }
    }

    #[test]
    fn small_shard_polytopes() {
        let s = shard_polytope(arc("1-2|A=|B=", 2));
        assert_eq!(s.vertices, vec![pt(&[0, 0]), pt(&[1, -1])]);
        let s = shard_polytope(arc("1-3|A=2|B=", 3));
        assert_eq!(s.vertices, vec![pt(&[0, 0, 0]), pt(&[0, 1, -1]), pt(&[1, 0, -1])]);
    }

    #[test]
    fn every_matching_is_a_vertex() {
        for n in 2..=5 {
            for a in enumerate_arcs(n) {
                let pts: Vec<Vec<Rat>> = enumerate_matchings(a).iter().map(|x| x.chi_rat(n)).collect();
                let v = VPolytope::from_points(n, pts.clone()).unwrap();
                assert_eq!(v.len(), pts.len(), "{a}");
                assert_eq!(v.dim(), (a.b - a.a) as isize);
            }
        }
    }

    #[test]
    fn facet_example() {
        let h = shard_polytope_facets(arc("1-4|A=2|B=3", 4));
        let shown: Vec<String> = h.facets.iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, vec!["x2 >= 0", "x3 <= 0", "x1 +x2 <= 1", "x1 >= 0", "x1 +x2 +x3 >= 0"]);
        assert_eq!(shard_polytope_facets(arc("1-2|A=|B=", 2)).facets.len(), 2);
    }

    /// Each listed inequality is tight on a facet of the hull and vice versa,
    /// and the system cuts out no extra lattice points.
    #[test]
    fn h_and_v_descriptions_agree() {
        for n in 2..=6 {
            for a in enumerate_arcs(n) {
                let v = shard_polytope(a);
                let h = shard_polytope_facets(a);
                assert_eq!(h.facets.len(), a.b - a.a + 1 + a.axis_crossings());
                assert!(v.vertices.iter().all(|x| h.contains(x)));
                let mut tight_sets: Vec<Vec<usize>> = h
                    .facets
                    .iter()
                    .map(|f| (0..v.len()).filter(|&i| f.tight(&v.vertices[i])).collect())
                    .collect();
                tight_sets.sort();
                tight_sets.dedup();
                assert_eq!(tight_sets.len(), h.facets.len(), "{a}");
                if n <= 5 {
                    let mut hull = facets(&v, Some(FanFrame::A(n)));
                    hull.sort();
                    assert_eq!(hull, tight_sets, "{a}");
                    assert_eq!(a.crosses_axis(), v.len() != a.b - a.a + 1, "simplex test {a}");
                }
                // lattice points of the box satisfying the system are exactly the vertices
                if n <= 5 {
                    let mut count = 0;
                    let len = a.b - a.a + 1;
                    for code in 0..3usize.pow(len as u32) {
                        let mut x = vec![rat(0); n];
                        let mut c = code;
                        for k in 0..len {
                            x[a.a - 1 + k] = rat((c % 3) as i64 - 1);
                            c /= 3;
                        }
                        if h.contains(&x) {
                            count += 1;
                            assert!(v.contains_vertex(&x));
                        }
                    }
                    assert_eq!(count, v.len());
                }
            }
        }
    }

    #[test]
    fn pseudoshard_descriptions() {
        let p = PseudoArc::new(5, 1, 5, bits::bit(2), bits::bit(4)).unwrap();
        let v = shard_polytope(p);
        let h = shard_polytope_facets(p);
        assert!(v.vertices.iter().all(|x| h.contains(x)));
        assert_eq!(h.equalities.len(), 2);
        let hull = facets(&v, None);
        assert_eq!(hull.len(), h.facets.len());
    }

    #[test]
    fn edges_are_symmetric_difference_two() {
        for n in 2..=5 {
            for a in enumerate_arcs(n) {
                let ms = enumerate_matchings(a);
                let v = shard_polytope(a);
                for x in 0..ms.len() {
                    for y in x + 1..ms.len() {
                        let (cx, cy) = (ms[x].chi_rat(n), ms[y].chi_rat(n));
                        let is_edge = mcmullen_check(&v, &cx, &cy, Some(FanFrame::A(n))).is_ok();
                        let sd = ms[x].elems.iter().filter(|e| !ms[y].elems.contains(e)).count()
                            + ms[y].elems.iter().filter(|e| !ms[x].elems.contains(e)).count();
                        assert_eq!(is_edge, sd == 2, "{a} {} {}", ms[x], ms[y]);
                        if is_edge {
                            let d: Vec<i64> = cx.iter().zip(&cy).map(|(p, q)| crate::rat::to_i64(&(p - q)).unwrap()).collect();
                            let nz: Vec<usize> = (0..n).filter(|&k| d[k] != 0).collect();
                            assert_eq!(nz.len(), 2);
                            assert!(nz[0] + 1 >= a.a && nz[1] < a.b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shard_membership() {
        let a = arc("1-3|A=|B=2", 3);
        // midpoint of chamber directions of 132 and 312
        let x = [rat(2), rat(3), rat(2)];
        assert!(shard_contains(&a, &x));
        assert!(shard_contains(&a, &[rat(0), rat(0), rat(0)]));
        assert!(!shard_contains(&arc("1-3|A=2|B=", 3), &[rat(1), rat(-2), rat(1)].map(|v| -v)));
        assert!(!shard_contains(&arc("1-3|A=2|B=", 3), &[rat(1), rat(0), rat(-1)]));
    }

    #[test]
    fn wall_containment() {
        for n in 2..=4 {
            for a in enumerate_arcs(n) {
                assert!(verify_prop48(&a).ok(), "{a}");
            }
        }
        // a simplex that is not a shard polytope fails the first check
        let a = arc("1-3|A=|B=2", 3);
        let rep = wall_report(&polytope::simplex_support(FanFrame::A(3), 0b1110), &a);
        assert!(!rep.walls_in_forcing_shards);
    }

    #[test]
    fn faces_and_embeddings() {
        let a = arc("2-3|A=|B=", 4);
        let b = arc("1-4|A=2|B=3", 4);
        assert_eq!(face_embedding(&a, &b), Some(vec![0, 0, 0, 0]));
        assert_eq!(face_embedding_check(&a, &b), Some(true));
        let c = arc("1-4|A=3|B=2", 4);
        assert_eq!(face_embedding(&a, &c), Some(vec![1, -1, 1, -1]));
        assert_eq!(face_embedding_check(&a, &c), Some(true));
        assert_eq!(face_embedding(&b, &a), None);
        for n in 2..=5 {
            let arcs = enumerate_arcs(n);
            for x in &arcs {
                assert_eq!(face_embedding(x, x), Some(vec![0; n]));
                for y in &arcs {
                    if forces(x, y) {
                        assert_eq!(face_embedding_check(x, y), Some(true), "{x} {y}");
                    }
                    let untranslated = polytope::is_face(&shard_polytope(*y), &shard_polytope(*x).vertices, Some(FanFrame::A(n)));
                    assert_eq!(face_criterion(x, y), untranslated, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn hull_of_forcing_faces() {
        for n in 2..=5 {
            let arcs = enumerate_arcs(n);
            for y in &arcs {
                let mut pts = vec![vec![rat(0); n]];
                let mut ab = vec![rat(0); n];
                ab[y.a - 1] = rat(1);
                ab[y.b - 1] = rat(-1);
                pts.push(ab);
                for x in arcs.iter().filter(|x| forces(x, y)) {
                    let t: Vec<Rat> = face_embedding(x, y).unwrap().into_iter().map(rat).collect();
                    pts.extend(shard_polytope(*x).translate(&t).vertices);
                }
                assert_eq!(VPolytope::from_points(n, pts).unwrap(), shard_polytope(*y));
            }
        }
    }

    /// The facet `x_i = 0` is the pseudoshard without `i`; the other facets
    /// split as a product of the coordinates up to `j` and those after `j`.
    #[test]
    fn facets_are_products() {
        for n in 2..=6 {
            for a in enumerate_arcs(n) {
                let v = shard_polytope(a);
                for f in shard_polytope_facets(a).facets {
                    let face: Vec<Vec<Rat>> = v.vertices.iter().filter(|x| f.tight(x)).cloned().collect();
                    let nz = f.coeffs.iter().filter(|&&c| c != 0).count();
                    if nz == 1 && f.coeffs[0] == 0 {
                        let i = f.coeffs.iter().position(|&c| c != 0).unwrap() + 1;
                        let q = PseudoArc::new(n, a.a, a.b, a.above & !bits::bit(i), a.below & !bits::bit(i)).unwrap();
                        assert_eq!(VPolytope::from_extreme(n, face), shard_polytope(q), "{a} {f}");
                        continue;
                    }
                    let j = nz;
                    let split = |x: &Vec<Rat>, low: bool| -> Vec<Rat> {
                        x.iter().enumerate().map(|(k, v)| if (k < j) == low { v.clone() } else { rat(0) }).collect()
                    };
                    let mut lo: Vec<Vec<Rat>> = face.iter().map(|x| split(x, true)).collect();
                    let mut hi: Vec<Vec<Rat>> = face.iter().map(|x| split(x, false)).collect();
                    lo.sort();
                    lo.dedup();
                    hi.sort();
                    hi.dedup();
                    assert_eq!(lo.len() * hi.len(), face.len(), "{a} {f}");
                    // each factor is a translate of the shard polytope of the arc cut at j
                    let piece = |lo_end: usize, hi_end: usize| -> Option<VPolytope> {
                        let m = bits::open(lo_end, hi_end);
                        PseudoArc::new(n, lo_end, hi_end, a.above & m, a.below & m).ok().map(shard_polytope)
                    };
                    for (part, cut) in [(lo, piece(a.a, j)), (hi, piece(j + 1, a.b))] {
                        let part = VPolytope::from_extreme(n, part);
                        match cut {
                            None => assert_eq!(part.len(), 1),
                            Some(c) => {
                                let d: Vec<Rat> = part.vertices[0].iter().zip(&c.vertices[0]).map(|(x, y)| x - y).collect();
                                assert_eq!(c.translate(&d), part, "{a} {f}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetries() {
        assert_eq!(symmetry_image(&arc("1-3|A=2|B=", 3), Symmetry::Phi), arc("1-3|A=|B=2", 3));
        assert_eq!(symmetry_image(&arc("1-2|A=|B=", 3), Symmetry::Psi), arc("2-3|A=|B=", 3));
        for n in 2..=5 {
            for a in enumerate_arcs(n) {
                assert!(symmetry_check(&a, Symmetry::Phi), "{a}");
                assert!(symmetry_check(&a, Symmetry::Psi), "{a}");
            }
        }
    }

    #[test]
    fn minkowski_identity() {
        let a = arc("1-3|A=2|B=", 3);
        let (l, r) = theorem57_instance(&a, 2).unwrap();
        assert_eq!(l, r);
        assert!(theorem57_instance(&arc("1-2|A=|B=", 3), 2).is_err());
        for n in 3..=5 {
            for a in enumerate_arcs(n).into_iter().filter(|a| a.b >= a.a + 2) {
                for x in a.a + 1..a.b {
                    let (l, r) = theorem57_instance(&a, x).unwrap();
                    assert_eq!(l, r, "{a} x={x}");
                }
            }
        }
    }

    #[test]
    fn zonotope_of_minimal_arcs() {
        for n in 2..=5 {
            assert!(minimal_arc_zonotope_check(n).unwrap(), "n={n}");
        }
        let (_, r) = minimal_arc_zonotope(4).unwrap();
        // segments [0, e2 - e3] and [0, e2 - e4], each of weight 1
        assert_eq!(*r.get(polytope::RayKey::set(0b00100)), rat(2));
    }

    fn brute_decomposable(ms: &[Matching], m1: &Matching, m2: &Matching) -> bool {
        let mut u: Vec<usize> = m1.elems.iter().chain(&m2.elems).copied().collect();
        u.sort_unstable();
        ms.iter().any(|x| {
            ms.iter().any(|y| {
                x != m1 && x != m2 && y != m1 && y != m2 && {
                    let mut w: Vec<usize> = x.elems.iter().chain(&y.elems).copied().collect();
                    w.sort_unstable();
                    w == u
                }
            })
        })
    }

    #[test]
    fn matching_pairs() {
        for n in 2..=6 {
            for a in enumerate_arcs(n) {
                let ms = enumerate_matchings(a);
                for x in 0..ms.len() {
                    for y in x + 1..ms.len() {
                        let (m1, m2) = (&ms[x], &ms[y]);
                        let brute = brute_decomposable(&ms, m1, m2);
                        match decompose_matching_pair(a, m1, m2).unwrap() {
                            PairDecomposition::Pair(m3, m4) => {
                                assert!(brute);
                                let mut u: Vec<usize> = m1.elems.iter().chain(&m2.elems).copied().collect();
                                let mut w: Vec<usize> = m3.elems.iter().chain(&m4.elems).copied().collect();
                                u.sort_unstable();
                                w.sort_unstable();
                                assert_eq!(u, w);
                            }
                            PairDecomposition::Special { family, head, tail } => {
                                assert!(!brute, "{a} {m1} {m2}");
                                for mm in [m1, m2] {
                                    assert!(mm.elems.starts_with(&head.elems) && mm.elems.ends_with(&tail.elems));
                                }
                                let core = |mm: &Matching| mm.elems[head.elems.len()..mm.elems.len() - tail.elems.len()].to_vec();
                                let mut lens = [core(m1).len(), core(m2).len()];
                                lens.sort_unstable();
                                let want = match family {
                                    SpecialPair::Nested => [0, 2],
                                    SpecialPair::SharedLeft | SpecialPair::SharedRight => [2, 2],
                                    SpecialPair::Bridged => [2, 4],
                                };
                                assert_eq!(lens, want);
                            }
                        }
                    }
                }
            }
        }
        // a nested pair
        let a = arc("1-4|A=2|B=3", 4);
        let r = decompose_matching_pair(a, &m(&[2, 3]), &m(&[])).unwrap();
        assert!(matches!(r, PairDecomposition::Special { family: SpecialPair::Nested, .. }));
        // {1,3} and {2,4} recombine into {1,4} and {2,3}
        let r = decompose_matching_pair(a, &m(&[1, 3]), &m(&[2, 4])).unwrap();
        assert_eq!(r, PairDecomposition::Pair(m(&[1, 4]), m(&[2, 3])));
    }

    #[test]
    fn normal_cones() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            for a in enumerate_arcs(n) {
                let ms = enumerate_matchings(a);
                // the characteristic direction of each matching selects it alone
                for x in &ms {
                    let mut t: Vec<i64> = x.chi(n).iter().map(|v| 2 * v).collect();
                    for i in bits::elems(a.left_set()) {
                        t[i - 1] -= 1;
                    }
                    for i in bits::elems(a.right_set()) {
                        t[i - 1] += 1;
                    }
                    let t: Vec<Rat> = t.into_iter().map(rat).collect();
                    assert_eq!(maximizing_matchings(a, &t), vec![x.clone()]);
                    assert!(normal_cone_contains(a, x, &t));
                    assert!(normal_cone_contains(a, x, &vec![rat(0); n]));
                }
                for _ in 0..60 {
                    let t: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect();
                    let best = maximizing_matchings(a, &t);
                    for x in &ms {
                        assert_eq!(normal_cone_contains(a, x, &t), best.contains(x));
                    }
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let by_def = best.iter().any(|x| x.pairs().contains(&(i, j)));
                            let applicable = bits::has(a.left_set(), i) && bits::has(a.right_set(), j);
                            assert_eq!(pair_normal_cone_contains(&a, i, j, &t), applicable && by_def, "{a} ({i},{j}) {t:?}");
                            let edge_def = best.iter().any(|x| {
                                best.iter().any(|y| {
                                    let sd: Vec<usize> = x.elems.iter().filter(|e| !y.elems.contains(e)).chain(y.elems.iter().filter(|e| !x.elems.contains(e))).copied().collect();
                                    let mut sd = sd;
                                    sd.sort_unstable();
                                    sd == vec![i, j]
                                })
                            });
                            assert_eq!(edge_normal_cone_contains(&a, i, j, &t), edge_def, "edge {a} ({i},{j}) {t:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn indecomposable_shards() {
        for n in 2..=4 {
            for a in enumerate_arcs(n) {
                let s = shard_support(a);
                assert!(is_indecomposable(&s), "{a}");
                assert_eq!(summand_space_dim(&s), 1);
                let v = vertices_from_support(&s).unwrap();
                let mut ab = vec![rat(0); n];
                ab[a.a - 1] = rat(1);
                ab[a.b - 1] = rat(-1);
                assert!(mcmullen_check(&v, &vec![rat(0); n], &ab, Some(FanFrame::A(n))).unwrap());
            }
        }
    }

    #[test]
    fn caged_shard_shifts_by_right_set() {
        for n in 2..=5 {
            for a in enumerate_arcs(n) {
                let t: Vec<Rat> = (1..=n).map(|i| rat(i64::from(bits::has(a.right_set(), i)))).collect();
                assert_eq!(polytope::caged_translate(&shard_polytope(a)), shard_polytope(a).translate(&t));
            }
        }
    }
}
