//! Exact polyhedral engine for coarsenings of the braid fan (type A) and of
//! the type B Coxeter fan.
//!
//! A polytope is stored by its support vector `s(R) = max ⟨1_R, x⟩` over the
//! rays `1_R` of the fan, where `R` is a nonempty subset of `[n]` (type A,
//! including `R = [n]`, which records the coordinate sum) or a nonempty signed
//! subset (type B, with `1_{-i} = -e_i`). The vertex of chamber `σ` is read off
//! by a triangular solve along the rays `σ([k, n])`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc as Shared, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask, UnionFind};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rat::{factorial, rat, Rat};

/// Hard size caps for polytope operations.
pub const MAX_N_A: usize = 8;
pub const MAX_N_B: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FanFrame {
    /// Braid fan in `R^n`.
    A(usize),
    /// Type B Coxeter fan in `R^n`.
    B(usize),
}

/// A signed subset of `[n]`: `pos` holds `i`, `neg` holds `-i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayKey {
    pub pos: Mask,
    pub neg: Mask,
}

impl RayKey {
    pub fn set(pos: Mask) -> RayKey {
        RayKey { pos, neg: 0 }
    }

    pub fn from_signed(elems: &[i64]) -> RayKey {
        let mut k = RayKey { pos: 0, neg: 0 };
        for &e in elems {
            if e > 0 {
                k.pos |= bits::bit(e as usize);
            } else {
                k.neg |= bits::bit((-e) as usize);
            }
        }
        k
    }

    pub fn is_empty(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    /// Members in increasing order, negatives first.
    pub fn elems(&self) -> Vec<i64> {
        let mut v: Vec<i64> = bits::elems(self.neg).map(|i| -(i as i64)).collect();
        v.sort_unstable();
        v.extend(bits::elems(self.pos).map(|i| i as i64));
        v
    }

    pub fn negate(&self) -> RayKey {
        RayKey { pos: self.neg, neg: self.pos }
    }

    pub fn parse(s: &str) -> Result<RayKey> {
        let elems: Vec<i64> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad subset key {s:?}"))))
            .collect::<Result<_>>()?;
        if elems.contains(&0) {
            return Err(Error::Parse(format!("bad subset key {s:?}")));
        }
        let k = RayKey::from_signed(&elems);
        if k.pos & k.neg != 0 {
            return Err(Error::Parse(format!("subset key {s:?} holds both i and -i")));
        }
        Ok(k)
    }
}

impl fmt::Display for RayKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.elems().iter().map(|e| e.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Precomputed chambers of a fan frame.
#[derive(Debug)]
pub struct ChamberTable {
    /// Chamber words: permutations (A) or signed permutations (B).
    pub words: Vec<Vec<i64>>,
    /// Ray slots of `σ([k, n])` for `k = 1..n`.
    pub rays: Vec<Vec<usize>>,
    /// Adjacent chambers, by index.
    pub neighbors: Vec<Vec<usize>>,
    pub index: HashMap<Vec<i64>, usize>,
}

fn lex_perms(n: usize) -> Vec<Vec<i64>> {
    crate::weak_order::Permutation::all(n)
        .into_iter()
        .map(|p| p.0.into_iter().map(|v| v as i64).collect())
        .collect()
}

impl FanFrame {
    pub fn n(&self) -> usize {
        match *self {
            FanFrame::A(n) | FanFrame::B(n) => n,
        }
    }

    pub fn is_b(&self) -> bool {
        matches!(self, FanFrame::B(_))
    }

    pub fn check_cap(&self) -> Result<()> {
        match *self {
            FanFrame::A(n) if n > MAX_N_A => Err(Error::SizeCap(format!("type A polytope operations need n <= {MAX_N_A}"))),
            FanFrame::B(n) if n > MAX_N_B => Err(Error::SizeCap(format!("type B polytope operations need n <= {MAX_N_B}"))),
            _ => Ok(()),
        }
    }

    /// Number of slots in a support vector (slot 0 is the empty set).
    pub fn slots(&self) -> usize {
        match *self {
            FanFrame::A(n) => 1 << n,
            FanFrame::B(n) => 3usize.pow(n as u32),
        }
    }

    pub fn index(&self, k: RayKey) -> usize {
        match *self {
            FanFrame::A(_) => (k.pos >> 1) as usize,
            FanFrame::B(n) => (1..=n).rev().fold(0, |acc, i| {
                acc * 3 + if bits::has(k.pos, i) { 1 } else if bits::has(k.neg, i) { 2 } else { 0 }
            }),
        }
    }

    pub fn key(&self, mut idx: usize) -> RayKey {
        match *self {
            FanFrame::A(_) => RayKey::set((idx as Mask) << 1),
            FanFrame::B(n) => {
                let mut k = RayKey { pos: 0, neg: 0 };
                for i in 1..=n {
                    match idx % 3 {
                        1 => k.pos |= bits::bit(i),
                        2 => k.neg |= bits::bit(i),
                        _ => {}
                    }
                    idx /= 3;
                }
                k
            }
        }
    }

    /// Keys of all nonempty slots.
    pub fn all_keys(&self) -> Vec<RayKey> {
        (1..self.slots()).map(|i| self.key(i)).collect()
    }

    /// Rays that can support facets: proper subsets (A) or all nonempty signed subsets (B).
    pub fn proper_keys(&self) -> Vec<RayKey> {
        let full = bits::closed(1, self.n());
        self.all_keys().into_iter().filter(|k| self.is_b() || k.pos != full).collect()
    }

    pub fn ray_vector(&self, k: RayKey) -> Vec<i64> {
        (1..=self.n())
            .map(|i| if bits::has(k.pos, i) { 1 } else if bits::has(k.neg, i) { -1 } else { 0 })
            .collect()
    }

    pub fn dot(&self, k: RayKey, x: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for i in bits::elems(k.pos) {
            s += &x[i - 1];
        }
        for i in bits::elems(k.neg) {
            s -= &x[i - 1];
        }
        s
    }

    /// Dimension of a full-dimensional polytope of this frame.
    pub fn full_dim(&self) -> usize {
        match *self {
            FanFrame::A(n) => n.saturating_sub(1),
            FanFrame::B(n) => n,
        }
    }

    /// An interior direction of the chamber `σ`: `x_{σ_k} = k`.
    pub fn interior_direction(word: &[i64]) -> Vec<Rat> {
        let mut t = vec![Rat::zero(); word.len()];
        for (k, &v) in word.iter().enumerate() {
            t[v.unsigned_abs() as usize - 1] = rat(v.signum() * (k as i64 + 1));
        }
        t
    }

    pub fn chambers(&self) -> Shared<ChamberTable> {
        static CACHE: OnceLock<Mutex<HashMap<FanFrame, Shared<ChamberTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().unwrap().get(self) {
            return t.clone();
        }
        let t = Shared::new(self.build_chambers());
        cache.lock().unwrap().insert(*self, t.clone());
        t
    }

    fn build_chambers(&self) -> ChamberTable {
        let n = self.n();
        let words: Vec<Vec<i64>> = match *self {
            FanFrame::A(_) => lex_perms(n),
            FanFrame::B(_) => {
                let mut out = Vec::new();
                for p in lex_perms(n) {
                    for signs in 0..1u32 << n {
                        out.push(p.iter().enumerate().map(|(k, &v)| if signs >> k & 1 == 1 { -v } else { v }).collect());
                    }
                }
                out
            }
        };
        let index: HashMap<Vec<i64>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let rays = words
            .iter()
            .map(|w| (0..n).map(|k| self.index(RayKey::from_signed(&w[k..]))).collect())
            .collect();
        let neighbors = words
            .iter()
            .map(|w| {
                let mut out = Vec::new();
                if self.is_b() && n > 0 {
                    let mut v = w.clone();
                    v[0] = -v[0];
                    out.push(index[&v]);
                }
                for i in 0..n.saturating_sub(1) {
                    let mut v = w.clone();
                    v.swap(i, i + 1);
                    out.push(index[&v]);
                }
                out
            })
            .collect();
        ChamberTable { words, rays, neighbors, index }
    }
}

/// A polytope given by its values `s(R) = max ⟨1_R, x⟩` on the fan rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportVector {
    pub frame: FanFrame,
    pub values: Vec<Rat>,
}

impl SupportVector {
    pub fn zero(frame: FanFrame) -> SupportVector {
        SupportVector { frame, values: vec![Rat::zero(); frame.slots()] }
    }

    pub fn from_fn(frame: FanFrame, mut f: impl FnMut(RayKey) -> Rat) -> SupportVector {
        let mut values = vec![Rat::zero(); frame.slots()];
        for (i, v) in values.iter_mut().enumerate().skip(1) {
            *v = f(frame.key(i));
        }
        SupportVector { frame, values }
    }

    pub fn get(&self, k: RayKey) -> &Rat {
        &self.values[self.frame.index(k)]
    }

    /// The vertex of chamber `c` of the frame's chamber table.
    pub fn chamber_vertex(&self, table: &ChamberTable, c: usize) -> Vec<Rat> {
        let n = self.frame.n();
        let w = &table.words[c];
        let r = &table.rays[c];
        let mut v = vec![Rat::zero(); n];
        for k in 0..n {
            let mut x = self.values[r[k]].clone();
            if k + 1 < n {
                x -= &self.values[r[k + 1]];
            }
            let j = w[k].unsigned_abs() as usize - 1;
            v[j] = if w[k] > 0 { x } else { -x };
        }
        v
    }

    pub fn chamber_vertices(&self) -> Vec<Vec<Rat>> {
        let table = self.frame.chambers();
        (0..table.words.len()).map(|c| self.chamber_vertex(&table, c)).collect()
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        (1..self.values.len())
            .map(|i| (self.frame.key(i).to_string(), crate::rat::fmt_rat(&self.values[i])))
            .collect()
    }
}

/// A deduplicated, lexicographically sorted list of extreme points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPolytope {
    pub n: usize,
    pub vertices: Vec<Vec<Rat>>,
}

impl VPolytope {
    /// Keeps the extreme points of `points`.
    pub fn from_points(n: usize, points: Vec<Vec<Rat>>) -> Result<VPolytope> {
        if points.is_empty() {
            return Err(Error::Precondition("empty point set".into()));
        }
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::Precondition("point of the wrong dimension".into()));
        }
        let pts: Vec<Vec<Rat>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let keep: Vec<Vec<Rat>> = (0..pts.len())
            .filter(|&i| {
                let others: Vec<&Vec<Rat>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
                !in_convex_hull(&pts[i], &others)
            })
            .map(|i| pts[i].clone())
            .collect();
        Ok(VPolytope { n, vertices: keep })
    }

    /// Points already known to be extreme, e.g. unique maximizers of some direction.
    pub fn from_extreme(n: usize, points: Vec<Vec<Rat>>) -> VPolytope {
        let vertices = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        VPolytope { n, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        let refs: Vec<&Vec<Rat>> = self.vertices.iter().collect();
        linalg::affine_dim(&refs)
    }

    pub fn translate(&self, t: &[Rat]) -> VPolytope {
        let vs = self.vertices.iter().map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect()).collect();
        VPolytope::from_extreme(self.n, vs)
    }

    pub fn contains_vertex(&self, v: &[Rat]) -> bool {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).is_ok()
    }
}

/// Whether `p` is a convex combination of `qs`, by an exact phase one simplex.
pub fn in_convex_hull(p: &[Rat], qs: &[&Vec<Rat>]) -> bool {
    if qs.is_empty() {
        return false;
    }
    let d = p.len();
    let m = qs.len();
    let rows = d + 1;
    // tableau columns: m lambdas, rows artificials, rhs
    let cols = m + rows + 1;
    let mut t: Matrix = vec![vec![Rat::zero(); cols]; rows];
    for r in 0..rows {
        let (coef, rhs): (Vec<Rat>, Rat) = if r < d {
            (qs.iter().map(|q| q[r].clone()).collect(), p[r].clone())
        } else {
            (vec![rat(1); m], rat(1))
        };
        let flip = rhs.is_negative();
        for j in 0..m {
            t[r][j] = if flip { -coef[j].clone() } else { coef[j].clone() };
        }
        t[r][m + r] = rat(1);
        t[r][cols - 1] = if flip { -rhs } else { rhs };
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();
    // objective: minimize the sum of artificials, reduced costs over lambdas
    loop {
        let reduced = |j: usize, t: &Matrix, basis: &[usize]| -> Rat {
            let cj = if j >= m && j < m + rows { rat(1) } else { Rat::zero() };
            let mut z = Rat::zero();
            for (r, &b) in basis.iter().enumerate() {
                if b >= m && b < m + rows {
                    z += &t[r][j];
                }
            }
            cj - z
        };
        let Some(enter) = (0..m + rows).find(|&j| !basis.contains(&j) && reduced(j, &t, &basis).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else { break };
        let piv = t[lr][enter].clone();
        for x in t[lr].iter_mut() {
            *x /= &piv;
        }
        let prow = t[lr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != lr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        basis[lr] = enter;
    }
    let infeasibility: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= m)
        .map(|(r, _)| t[r][cols - 1].clone())
        .sum();
    infeasibility.is_zero()
}

pub fn support_from_vertices(v: &VPolytope, frame: FanFrame) -> SupportVector {
    SupportVector::from_fn(frame, |k| {
        v.vertices.iter().map(|x| frame.dot(k, x)).max().expect("nonempty polytope")
    })
}

/// Vertices read off chamber by chamber, checked against the support.
pub fn vertices_from_support(s: &SupportVector) -> Result<VPolytope> {
    let v = VPolytope::from_extreme(s.frame.n(), s.chamber_vertices());
    if support_from_vertices(&v, s.frame) != *s {
        return Err(Error::NotTight);
    }
    Ok(v)
}

/// `f(R) + f(S) ≥ f(R ∪ S) + f(R ∩ S)` for type A; the local wall-crossing
/// inequalities for type B.
pub fn is_deformed_permutahedron(s: &SupportVector) -> bool {
    match s.frame {
        FanFrame::A(n) => {
            let f = |m: Mask| -> &Rat { &s.values[(m >> 1) as usize] };
            let full = 1u32 << n;
            for r in 0..full {
                for t in r + 1..full {
                    let (rm, tm) = (r << 1, t << 1);
                    if f(rm) + f(tm) < f(rm | tm) + f(rm & tm) {
                        return false;
                    }
                }
            }
            true
        }
        FanFrame::B(_) => wall_crossing_ok(s),
    }
}

/// Each chamber vertex satisfies the support inequality of every neighbouring ray.
pub fn wall_crossing_ok(s: &SupportVector) -> bool {
    let table = s.frame.chambers();
    let verts = s.chamber_vertices();
    for c in 0..table.words.len() {
        for &d in &table.neighbors[c] {
            for &r in &table.rays[d] {
                if s.frame.dot(s.frame.key(r), &verts[c]) > s.values[r] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn minkowski_sum(a: &SupportVector, b: &SupportVector) -> Result<SupportVector> {
    if a.frame != b.frame {
        return Err(Error::FrameMismatch);
    }
    Ok(SupportVector { frame: a.frame, values: a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect() })
}

pub fn sum_all<'a>(frame: FanFrame, items: impl IntoIterator<Item = &'a SupportVector>) -> Result<SupportVector> {
    items.into_iter().try_fold(SupportVector::zero(frame), |acc, s| minkowski_sum(&acc, s))
}

pub fn scale(s: &SupportVector, lambda: &Rat) -> Result<SupportVector> {
    if lambda.is_negative() {
        return Err(Error::NegativeScale);
    }
    Ok(SupportVector { frame: s.frame, values: s.values.iter().map(|x| x * lambda).collect() })
}

pub fn translate(s: &SupportVector, t: &[Rat]) -> SupportVector {
    let mut out = s.clone();
    for i in 1..out.values.len() {
        out.values[i] += s.frame.dot(s.frame.key(i), t);
    }
    out
}

/// Chambers grouped by the vertex they select.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberPartition {
    pub frame: FanFrame,
    /// Block label per chamber, numbered by first appearance.
    pub block_of: Vec<usize>,
}

impl ChamberPartition {
    pub fn from_labels(frame: FanFrame, labels: &[usize]) -> ChamberPartition {
        let mut map = HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        ChamberPartition { frame, block_of }
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Every block is connected through adjacent chambers.
    pub fn blocks_connected(&self) -> bool {
        let table = self.frame.chambers();
        let mut uf = UnionFind::new(self.block_of.len());
        for c in 0..self.block_of.len() {
            for &d in &table.neighbors[c] {
                if self.block_of[c] == self.block_of[d] {
                    uf.union(c, d);
                }
            }
        }
        let comps = uf.labels();
        comps.iter().max().map_or(0, |m| m + 1) == self.num_blocks()
    }
}

pub fn chamber_partition(s: &SupportVector) -> ChamberPartition {
    let verts = s.chamber_vertices();
    let mut ids: HashMap<&Vec<Rat>, usize> = HashMap::new();
    let block_of = verts
        .iter()
        .map(|v| {
            let next = ids.len();
            *ids.entry(v).or_insert(next)
        })
        .collect();
    ChamberPartition { frame: s.frame, block_of }
}

/// True iff every block of `q` lies inside a block of `p`.
pub fn coarsens(p: &ChamberPartition, q: &ChamberPartition) -> Result<bool> {
    if p.frame != q.frame {
        return Err(Error::FrameMismatch);
    }
    let mut image: HashMap<usize, usize> = HashMap::new();
    for (bq, bp) in q.block_of.iter().zip(&p.block_of) {
        if *image.entry(*bq).or_insert(*bp) != *bp {
            return Ok(false);
        }
    }
    Ok(true)
}

fn argmax_face(frame: FanFrame, k: RayKey, verts: &[Vec<Rat>]) -> Vec<usize> {
    let vals: Vec<Rat> = verts.iter().map(|v| frame.dot(k, v)).collect();
    let best = vals.iter().max().unwrap().clone();
    (0..verts.len()).filter(|&i| vals[i] == best).collect()
}

fn face_dim(verts: &[Vec<Rat>], face: &[usize]) -> isize {
    let refs: Vec<&Vec<Rat>> = face.iter().map(|&i| &verts[i]).collect();
    linalg::affine_dim(&refs)
}

/// Rays `R` whose maximizing face has codimension one in the fan's ambient slice.
pub fn facet_directions(s: &SupportVector) -> Result<Vec<RayKey>> {
    let v = vertices_from_support(s)?;
    let target = s.frame.full_dim() as isize - 1;
    Ok(s.frame
        .proper_keys()
        .into_iter()
        .filter(|&k| face_dim(&v.vertices, &argmax_face(s.frame, k, &v.vertices)) == target)
        .collect())
}

/// Translates so that every coordinate has minimum zero over the vertices.
pub fn caged_translate(v: &VPolytope) -> VPolytope {
    let mins: Vec<Rat> = (0..v.n).map(|i| -v.vertices.iter().map(|x| x[i].clone()).min().unwrap()).collect();
    v.translate(&mins)
}

/// Facets (as vertex index sets, relative to the affine hull) of `v`.
///
/// With a frame, candidate normals are the fan rays; the result is accepted
/// when every ridge lies in exactly two facets, and otherwise recomputed by
/// brute force over hyperplanes spanned by vertices.
pub fn facets(v: &VPolytope, frame: Option<FanFrame>) -> Vec<Vec<usize>> {
    let d = v.dim();
    if d <= 0 {
        return Vec::new();
    }
    if let Some(frame) = frame {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for k in frame.all_keys() {
            for key in [k, k.negate()] {
                if frame.is_b() && key != k {
                    continue;
                }
                let face = argmax_face(frame, key, &v.vertices);
                if face_dim(&v.vertices, &face) == d - 1 {
                    found.insert(face);
                }
            }
        }
        // in type A, -1_R also helps for lower-dimensional input
        let found: Vec<Vec<usize>> = found.into_iter().collect();
        if d == 1 || ridges_closed(v, &found, d) {
            return found;
        }
    }
    facets_bruteforce(v)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

/// Maximal proper faces of `face` (of dimension `k`) among intersections with facets.
fn subfaces(v: &VPolytope, face: &[usize], k: isize, facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let g = intersect(face, f);
        if g.len() < face.len() && !g.is_empty() && face_dim(&v.vertices, &g) == k - 1 {
            out.insert(g);
        }
    }
    out.into_iter().collect()
}

fn ridges_closed(v: &VPolytope, facets: &[Vec<usize>], d: isize) -> bool {
    let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
    for f in facets {
        for r in subfaces(v, f, d - 1, facets) {
            *count.entry(r).or_default() += 1;
        }
    }
    !count.is_empty() && count.values().all(|&c| c == 2)
}

fn facets_bruteforce(v: &VPolytope) -> Vec<Vec<usize>> {
    let d = v.dim() as usize;
    let pts = &v.vertices;
    let m = pts.len();
    // coordinates of the affine hull
    let p0 = &pts[0];
    let diffs: Matrix = pts.iter().map(|p| p.iter().zip(p0).map(|(x, y)| x - y).collect()).collect();
    // pivot coordinates of the difference space give an injective chart
    let mut basis_rows = diffs.clone();
    let cols = linalg::rref(&mut basis_rows);
    let local: Vec<Vec<Rat>> = diffs.iter().map(|p| cols.iter().map(|&c| p[c].clone()).collect()).collect();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        let base = &local[combo[0]];
        let rows: Matrix = combo[1..].iter().map(|&i| local[i].iter().zip(base).map(|(x, y)| x - y).collect()).collect();
        let ns = linalg::nullspace(&rows, d);
        if ns.len() == 1 {
            let nrm = &ns[0];
            let h: Vec<Rat> = local.iter().map(|p| p.iter().zip(nrm).map(|(x, y)| x * y).sum()).collect();
            let c = h[combo[0]].clone();
            let above = h.iter().any(|x| *x > c);
            let below = h.iter().any(|x| *x < c);
            if !(above && below) {
                let face: Vec<usize> = (0..m).filter(|&i| h[i] == c).collect();
                out.insert(face);
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return out.into_iter().filter(|f| face_dim(pts, f) == d as isize - 1).collect();
            }
            i -= 1;
            if combo[i] < m - d + i {
                combo[i] += 1;
                for j in i + 1..d {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Whether the segment between vertices `u` and `w` is an edge, and if so
/// whether every facet contains one of its endpoints.
pub fn mcmullen_check(v: &VPolytope, u: &[Rat], w: &[Rat], frame: Option<FanFrame>) -> Result<bool> {
    let iu = v.vertices.iter().position(|x| x.as_slice() == u).ok_or(Error::NotAnEdge)?;
    let iw = v.vertices.iter().position(|x| x.as_slice() == w).ok_or(Error::NotAnEdge)?;
    let fs = facets(v, frame);
    let mut face: Vec<usize> = (0..v.len()).collect();
    for f in fs.iter().filter(|f| f.contains(&iu) && f.contains(&iw)) {
        face = intersect(&face, f);
    }
    if iu == iw || face.len() != 2 {
        return Err(Error::NotAnEdge);
    }
    Ok(fs.iter().all(|f| f.contains(&iu) || f.contains(&iw)))
}

/// Whether `pts` is exactly the vertex set of a face of `v`: the
/// intersection of the facets containing `pts` must give back `pts`.
pub fn is_face(v: &VPolytope, pts: &[Vec<Rat>], frame: Option<FanFrame>) -> bool {
    let mut idx: Vec<usize> = Vec::new();
    for p in pts {
        match v.vertices.iter().position(|x| x == p) {
            Some(i) => idx.push(i),
            None => return false,
        }
    }
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() {
        return true;
    }
    let mut face: Vec<usize> = (0..v.len()).collect();
    for f in facets(v, frame).iter().filter(|f| idx.iter().all(|i| f.contains(i))) {
        face = intersect(&face, f);
    }
    face == idx
}

fn project(frame: FanFrame, v: &[Rat]) -> Vec<Rat> {
    match frame {
        FanFrame::A(n) => v[..n - 1].to_vec(),
        FanFrame::B(_) => v.to_vec(),
    }
}

/// Exact volume: type A after dropping the last coordinate, type B in `R^n`.
/// Lower-dimensional input has volume zero.
pub fn volume(v: &VPolytope, frame: FanFrame) -> Rat {
    let d = frame.full_dim();
    if d == 0 || v.dim() < d as isize {
        return if d == 0 { rat(1) } else { Rat::zero() };
    }
    let fs = facets(v, Some(frame));
    let pts: Vec<Vec<Rat>> = v.vertices.iter().map(|x| project(frame, x)).collect();
    let all: Vec<usize> = (0..v.len()).collect();
    let mut total = Rat::zero();
    for simplex in triangulate(v, &all, d as isize, &fs) {
        let base = &pts[simplex[0]];
        let m: Matrix = simplex[1..].iter().map(|&i| pts[i].iter().zip(base).map(|(x, y)| x - y).collect()).collect();
        total += linalg::det(&m).abs();
    }
    total / factorial(d)
}

/// Pulling triangulation of a face from its lowest vertex.
fn triangulate(v: &VPolytope, face: &[usize], k: isize, facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for g in subfaces(v, face, k, facets) {
        if g.contains(&apex) {
            continue;
        }
        for mut s in triangulate(v, &g, k - 1, facets) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

pub fn volume_of_support(s: &SupportVector) -> Result<Rat> {
    Ok(volume(&vertices_from_support(s)?, s.frame))
}

/// Mixed volume of `d = n - 1` type A polytopes: the coefficient of
/// `y_1 ⋯ y_d` in `Vol(Σ y_i P_i)`, divided by `d!`, extracted exactly from
/// the volumes of the partial sums.
pub fn mixed_volume_oracle(parts: &[SupportVector]) -> Result<Rat> {
    let frame = parts.first().ok_or_else(|| Error::Precondition("no polytopes".into()))?.frame;
    let d = frame.full_dim();
    if parts.len() != d || parts.iter().any(|p| p.frame != frame) {
        return Err(Error::Precondition(format!("need {d} polytopes of the same frame")));
    }
    let mut coef = Rat::zero();
    for sub in 1u32..1 << d {
        let sum = sum_all(frame, (0..d).filter(|&i| sub >> i & 1 == 1).map(|i| &parts[i]))?;
        let vol = volume_of_support(&sum)?;
        if (d - sub.count_ones() as usize) % 2 == 0 {
            coef += vol;
        } else {
            coef -= vol;
        }
    }
    Ok(coef / factorial(d))
}

/// `Vol(y_1 P_1 + … + y_d P_d)` at a rational point `y ≥ 0`.
pub fn scaled_sum_volume(parts: &[SupportVector], y: &[Rat]) -> Result<Rat> {
    let frame = parts[0].frame;
    let mut acc = SupportVector::zero(frame);
    for (p, yi) in parts.iter().zip(y) {
        acc = minkowski_sum(&acc, &scale(p, yi)?)?;
    }
    volume_of_support(&acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightConvention {
    /// `s(R) = max ⟨1_R, x⟩`, the internal form.
    Outer,
    /// `z(R) = min ⟨1_R, x⟩ = s([n]) - s([n] ∖ R)`.
    Inner,
}

/// Converts a type A support vector between outer maxima and inner minima.
/// The map is an involution.
pub fn support_convert(s: &SupportVector) -> Result<SupportVector> {
    let FanFrame::A(n) = s.frame else {
        return Err(Error::Precondition("height conversion is defined for type A".into()));
    };
    let full = bits::closed(1, n);
    let total = s.get(RayKey::set(full)).clone();
    Ok(SupportVector::from_fn(s.frame, |k| {
        let rest = full & !k.pos;
        if rest == 0 {
            total.clone()
        } else {
            &total - s.get(RayKey::set(rest))
        }
    }))
}

/// Dimension of the space of polytopes whose vertices agree wherever those of
/// `s` do (weak Minkowski summands up to scaling), minus translations.
pub fn summand_space_dim(s: &SupportVector) -> usize {
    let frame = s.frame;
    let n = frame.n();
    let table = frame.chambers();
    let part = chamber_partition(s);
    let cols = frame.slots() - 1;
    let coeffs = |c: usize| -> Vec<Vec<(usize, i64)>> {
        // coordinate j of the vertex of chamber c as a combination of slots
        let w = &table.words[c];
        let r = &table.rays[c];
        let mut out = vec![Vec::new(); n];
        for k in 0..n {
            let sign = w[k].signum();
            let j = w[k].unsigned_abs() as usize - 1;
            out[j].push((r[k] - 1, sign));
            if k + 1 < n {
                out[j].push((r[k + 1] - 1, -sign));
            }
        }
        out
    };
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for c in 0..table.words.len() {
        for &d in &table.neighbors[c] {
            if d < c || part.block_of[c] != part.block_of[d] {
                continue;
            }
            let (x, y) = (coeffs(c), coeffs(d));
            for j in 0..n {
                let mut row = vec![0i64; cols];
                for &(i, v) in &x[j] {
                    row[i] += v;
                }
                for &(i, v) in &y[j] {
                    row[i] -= v;
                }
                if row.iter().any(|&e| e != 0) {
                    rows.push(row.into_iter().map(rat).collect());
                }
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { linalg::rank(&rows) };
    cols - rank - n
}

pub fn is_indecomposable(s: &SupportVector) -> bool {
    summand_space_dim(s) == 1
}

/// The polytope `conv(v)` for lattice points given as integers.
pub fn vpoly_i64(n: usize, pts: &[Vec<i64>]) -> VPolytope {
    VPolytope::from_extreme(n, pts.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect())
}

/// Support of the permutahedron `conv{(σ_1, …, σ_n)}`: the sum of the `|R|`
/// largest values of `1..n` (type A), or its signed analogue (type B).
pub fn permutahedron_support(frame: FanFrame) -> SupportVector {
    let n = frame.n() as i64;
    SupportVector::from_fn(frame, |k| {
        let m = (bits::card(k.pos) + bits::card(k.neg)) as i64;
        rat((0..m).map(|i| n - i).sum())
    })
}

/// Support of `Σ_{i<j} [0, e_i − e_j]`-type zonotopes with the given weights.
pub fn segment_support(frame: FanFrame, i: usize, j: usize) -> SupportVector {
    SupportVector::from_fn(frame, |k| {
        let v = frame.dot(k, &{
            let mut x = vec![Rat::zero(); frame.n()];
            x[i - 1] = rat(1);
            x[j - 1] = rat(-1);
            x
        });
        v.max(Rat::zero())
    })
}

/// Support of the simplex `conv{e_j : j ∈ J}`.
pub fn simplex_support(frame: FanFrame, j: Mask) -> SupportVector {
    let pts: Vec<Vec<i64>> = bits::elems(j)
        .map(|i| (1..=frame.n()).map(|t| i64::from(t == i)).collect())
        .collect();
    support_from_vertices(&vpoly_i64(frame.n(), &pts), frame)
}
