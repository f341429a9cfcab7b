//! Type A combinatorics: permutations, arcs, noncrossing arc diagrams,
//! forcing, arc ideals and lattice congruences of the weak order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask, UnionFind};
use crate::error::{Error, Result};

/// An arc `(a, b, A, B)` on `[n]`: a curve from `a` to `b` passing above the
/// points of `A` and below the points of `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub above: Mask,
    pub below: Mask,
}

impl Arc {
    pub fn new(n: usize, a: usize, b: usize, above: &[usize], below: &[usize]) -> Result<Arc> {
        Arc::from_masks(n, a, b, bits::from_iter(above.iter().copied()), bits::from_iter(below.iter().copied()))
    }

    pub fn from_masks(n: usize, a: usize, b: usize, above: Mask, below: Mask) -> Result<Arc> {
        let arc = Arc { n, a, b, above, below };
        if n > 31 || !(1 <= a && a < b && b <= n) {
            return Err(Error::InvalidArc(format!("endpoints {a},{b} out of range for n={n}")));
        }
        if above & below != 0 || above | below != bits::open(a, b) {
            return Err(Error::InvalidArc(format!("{arc}: A and B must partition ]a,b[")));
        }
        Ok(arc)
    }

    /// The up arc `(a, b, ]a,b[, ∅)`.
    pub fn up(n: usize, a: usize, b: usize) -> Arc {
        Arc { n, a, b, above: bits::open(a, b), below: 0 }
    }

    /// The down arc `(a, b, ∅, ]a,b[)`.
    pub fn down(n: usize, a: usize, b: usize) -> Arc {
        Arc { n, a, b, above: 0, below: bits::open(a, b) }
    }

    pub fn is_up(&self) -> bool {
        self.below == 0
    }

    pub fn is_down(&self) -> bool {
        self.above == 0
    }

    /// `{a} ∪ A`.
    pub fn left_set(&self) -> Mask {
        self.above | bits::bit(self.a)
    }

    /// `B ∪ {b}`.
    pub fn right_set(&self) -> Mask {
        self.below | bits::bit(self.b)
    }

    fn ends(&self) -> Mask {
        bits::bit(self.a) | bits::bit(self.b)
    }

    pub fn as_pseudo(&self) -> PseudoArc {
        PseudoArc { n: self.n, a: self.a, b: self.b, above: self.above, below: self.below }
    }

    /// Whether the arc passes from one side of the horizontal axis to the other.
    pub fn crosses_axis(&self) -> bool {
        self.as_pseudo().falls().len() + self.as_pseudo().rises().len() > 2
    }

    /// Number of times the arc crosses the horizontal axis.
    pub fn axis_crossings(&self) -> usize {
        self.as_pseudo().falls().len() + self.as_pseudo().rises().len() - 2
    }
}

impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Arc {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.a, self.b, self.above, self.below).cmp(&(other.n, other.a, other.b, other.above, other.below))
    }
}

fn fmt_list(m: Mask) -> String {
    bits::key(m)
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}|A={}|B={}", self.a, self.b, fmt_list(self.above), fmt_list(self.below))
    }
}

pub(crate) fn parse_arc_text(s: &str) -> Result<(i64, i64, Vec<i64>, Vec<i64>)> {
    let bad = || Error::Parse(format!("bad arc spec {s:?}, expected a-b|A=..|B=.."));
    let mut parts = s.trim().split('|');
    let ends = parts.next().ok_or_else(bad)?;
    let aspec = parts.next().ok_or_else(bad)?.trim();
    let bspec = parts.next().ok_or_else(bad)?.trim();
    if parts.next().is_some() {
        return Err(bad());
    }
    // endpoints may be negative, so split on the '-' that follows a digit
    let bytes = ends.trim().as_bytes();
    let cut = (1..bytes.len())
        .find(|&i| bytes[i] == b'-' && bytes[i - 1].is_ascii_digit())
        .ok_or_else(bad)?;
    let e = ends.trim();
    let a: i64 = e[..cut].parse().map_err(|_| bad())?;
    let b: i64 = e[cut + 1..].parse().map_err(|_| bad())?;
    let list = |spec: &str, tag: &str| -> Result<Vec<i64>> {
        let body = spec.strip_prefix(tag).ok_or_else(bad)?;
        body.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect()
    };
    Ok((a, b, list(aspec, "A=")?, list(bspec, "B=")?))
}

impl Arc {
    /// Parses the text form `a-b|A=i,j|B=k` on `[n]`.
    pub fn parse(s: &str, n: usize) -> Result<Arc> {
        let (a, b, above, below) = parse_arc_text(s)?;
        let conv = |v: i64| usize::try_from(v).map_err(|_| Error::InvalidArc(format!("negative index in {s:?}")));
        let above: Vec<usize> = above.into_iter().map(conv).collect::<Result<_>>()?;
        let below: Vec<usize> = below.into_iter().map(conv).collect::<Result<_>>()?;
        Arc::new(n, conv(a)?, conv(b)?, &above, &below)
    }
}

/// An arc whose interior labels need not cover `]a,b[`; the points missing
/// from `A ⊔ B` are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PseudoArc {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub above: Mask,
    pub below: Mask,
}

impl PseudoArc {
    pub fn new(n: usize, a: usize, b: usize, above: Mask, below: Mask) -> Result<PseudoArc> {
        if n > 31 || !(1 <= a && a < b && b <= n) {
            return Err(Error::InvalidArc(format!("endpoints {a},{b} out of range for n={n}")));
        }
        if above & below != 0 || (above | below) & !bits::open(a, b) != 0 {
            return Err(Error::InvalidArc("A and B must be disjoint subsets of ]a,b[".into()));
        }
        Ok(PseudoArc { n, a, b, above, below })
    }

    pub fn left_set(&self) -> Mask {
        self.above | bits::bit(self.a)
    }

    pub fn right_set(&self) -> Mask {
        self.below | bits::bit(self.b)
    }

    /// The points actually visited, `{a} ∪ A ∪ B ∪ {b}`, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        bits::elems(self.left_set() | self.right_set()).collect()
    }

    /// Positions `j` (among visited points) where the arc goes from `{a} ∪ A`
    /// to `B ∪ {b}` at the next visited point.
    pub fn falls(&self) -> Vec<usize> {
        let pts = self.support();
        pts.windows(2)
            .filter(|w| bits::has(self.left_set(), w[0]) && bits::has(self.right_set(), w[1]))
            .map(|w| w[0])
            .collect()
    }

    /// Positions `j` where the arc goes from `{a} ∪ B` to `A ∪ {b}`.
    pub fn rises(&self) -> Vec<usize> {
        let pts = self.support();
        let from = self.below | bits::bit(self.a);
        let to = self.above | bits::bit(self.b);
        pts.windows(2)
            .filter(|w| bits::has(from, w[0]) && bits::has(to, w[1]))
            .map(|w| w[0])
            .collect()
    }
}

impl From<Arc> for PseudoArc {
    fn from(a: Arc) -> Self {
        a.as_pseudo()
    }
}

impl fmt::Display for PseudoArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}|A={}|B={}", self.a, self.b, fmt_list(self.above), fmt_list(self.below))
    }
}

/// All arcs on `[n]`, ordered by `(a, b)` and then by the bitmask of `A`.
pub fn enumerate_arcs(n: usize) -> Vec<Arc> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let inner = bits::open(a, b);
            let k = b - a - 1;
            let mut subs: Vec<Mask> = (0..1u32 << k).map(|s| s << (a + 1)).collect();
            subs.sort_unstable();
            for above in subs {
                out.push(Arc { n, a, b, above, below: inner & !above });
            }
        }
    }
    out
}

/// Whether the interiors of the two arcs intersect.
pub fn arcs_cross(x: &Arc, y: &Arc) -> bool {
    let first = (x.above & y.below) | (x.ends() & y.below) | (x.above & y.ends());
    let second = (x.below & y.above) | (x.ends() & y.above) | (x.below & y.ends());
    first != 0 && second != 0
}

/// Whether `x` forces `y`: `y.a ≤ x.a < x.b ≤ y.b`, `A ⊆ A'` and `B ⊆ B'`.
pub fn forces(x: &Arc, y: &Arc) -> bool {
    y.a <= x.a && x.b <= y.b && x.above & !y.above == 0 && x.below & !y.below == 0
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Permutation> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// 1-based positions `i` with `σ_i > σ_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    pub fn ascents(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.at(i) < self.at(i + 1)).collect()
    }

    /// Swaps positions `i` and `i + 1`.
    pub fn swapped(&self, i: usize) -> Permutation {
        let mut w = self.0.clone();
        w.swap(i - 1, i);
        Permutation(w)
    }

    /// Index in lexicographic (Lehmer code) order.
    pub fn rank(&self) -> usize {
        let w = &self.0;
        let n = w.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = (i + 1..n).filter(|&j| w[j] < w[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut w: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(w.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| w[i - 1] < w[i]) else { break };
            let j = (i..n).rev().find(|&j| w[j] > w[i - 1]).unwrap();
            w.swap(i - 1, j);
            w[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { " " } else { "" };
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(s.into())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(s.into())))
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NoncrossingDiagram {
    pub n: usize,
    pub arcs: Vec<Arc>,
    pub color: Color,
}

fn between(w: &[usize], lo: usize, hi: usize) -> Mask {
    w.iter().filter(|&&v| lo < v && v < hi).fold(0, |m, &v| m | bits::bit(v))
}

/// The arc of the adjacent pair at 1-based positions `i`, `i + 1`.
pub(crate) fn adjacent_arc(w: &[usize], i: usize) -> Arc {
    let (x, y) = (w[i - 1], w[i]);
    let (lo, hi) = (x.min(y), x.max(y));
    Arc {
        n: w.len(),
        a: lo,
        b: hi,
        above: between(&w[..i - 1], lo, hi),
        below: between(&w[i + 1..], lo, hi),
    }
}

/// Descent arcs (down) or ascent arcs (up) of `σ`.
pub fn perm_to_diagram(sigma: &Permutation, color: Color) -> NoncrossingDiagram {
    let pos = match color {
        Color::Down => sigma.descents(),
        Color::Up => sigma.ascents(),
    };
    let mut arcs: Vec<Arc> = pos.into_iter().map(|i| adjacent_arc(&sigma.0, i)).collect();
    arcs.sort();
    NoncrossingDiagram { n: sigma.len(), arcs, color }
}

/// Inverse of [`perm_to_diagram`].
pub fn diagram_to_perm(d: &NoncrossingDiagram) -> Result<Permutation> {
    let n = d.n;
    for (i, x) in d.arcs.iter().enumerate() {
        if x.n != n {
            return Err(Error::InvalidDiagram(format!("arc {x} lives on a different n")));
        }
        for y in &d.arcs[i + 1..] {
            if x.a == y.a || x.b == y.b {
                return Err(Error::InvalidDiagram(format!("arcs {x} and {y} share an endpoint side")));
            }
            if arcs_cross(x, y) {
                return Err(Error::InvalidDiagram(format!("arcs {x} and {y} cross")));
            }
        }
    }
    let mut uf = UnionFind::new(n + 1);
    for x in &d.arcs {
        uf.union(x.a, x.b);
    }
    let comp: Vec<usize> = (0..=n).map(|v| uf.find(v)).collect();
    let roots: BTreeSet<usize> = (1..=n).map(|v| comp[v]).collect();
    let members: BTreeMap<usize, Vec<usize>> =
        roots.iter().map(|&r| (r, (1..=n).filter(|&v| comp[v] == r).collect())).collect();
    // X must be placed before Y
    let mut preds: BTreeMap<usize, BTreeSet<usize>> = roots.iter().map(|&r| (r, BTreeSet::new())).collect();
    for x in &d.arcs {
        let y = comp[x.a];
        for v in bits::elems(x.above) {
            if comp[v] != y {
                preds.get_mut(&y).unwrap().insert(comp[v]);
            }
        }
        for v in bits::elems(x.below) {
            if comp[v] != y {
                preds.get_mut(&comp[v]).unwrap().insert(y);
            }
        }
    }
    let mut placed = BTreeSet::new();
    let mut word = Vec::with_capacity(n);
    while placed.len() < roots.len() {
        let avail = roots.iter().filter(|r| !placed.contains(*r) && preds[r].is_subset(&placed));
        let next = match d.color {
            Color::Down => avail.min_by_key(|r| members[r][0]),
            Color::Up => avail.max_by_key(|r| *members[r].last().unwrap()),
        }
        .copied()
        .ok_or_else(|| Error::InvalidDiagram("cyclic priorities".into()))?;
        placed.insert(next);
        let mut vals = members[&next].clone();
        if d.color == Color::Down {
            vals.reverse();
        }
        word.extend(vals);
    }
    let sigma = Permutation(word);
    let mut sorted = d.arcs.clone();
    sorted.sort();
    if perm_to_diagram(&sigma, d.color).arcs != sorted {
        return Err(Error::InvalidDiagram("diagram is not realized by a permutation".into()));
    }
    Ok(sigma)
}

/// The join-irreducible permutation `[1..a-1, A, b, a, B, b+1..n]`.
pub fn arc_to_join_irreducible(x: &Arc) -> Permutation {
    let mut w: Vec<usize> = (1..x.a).collect();
    w.extend(bits::elems(x.above));
    w.push(x.b);
    w.push(x.a);
    w.extend(bits::elems(x.below));
    w.extend(x.b + 1..=x.n);
    Permutation(w)
}

/// The arc labeling the cover obtained by sorting positions `i`, `i + 1` of `τ`.
pub fn cover_arc(tau: &Permutation, i: usize) -> Result<Arc> {
    if i == 0 || i >= tau.len() || tau.at(i) < tau.at(i + 1) {
        return Err(Error::NotADescent(i));
    }
    Ok(adjacent_arc(&tau.0, i))
}

/// A set of uncontracted arcs, closed under taking arcs that force a member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcIdeal {
    pub n: usize,
    pub arcs: BTreeSet<Arc>,
}

impl ArcIdeal {
    pub fn empty(n: usize) -> ArcIdeal {
        ArcIdeal { n, arcs: BTreeSet::new() }
    }

    pub fn full(n: usize) -> ArcIdeal {
        ArcIdeal { n, arcs: enumerate_arcs(n).into_iter().collect() }
    }

    /// Checks closure; use [`close_upward`] to build one from generators.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<ArcIdeal> {
        let ideal = ArcIdeal { n, arcs: arcs.into_iter().collect() };
        if let Some(x) = ideal.arcs.iter().find(|x| x.n != n) {
            return Err(Error::NotAnIdeal(format!("arc {x} is not on [{n}]")));
        }
        if ideal != close_upward(ideal.arcs.iter().copied(), n) {
            return Err(Error::NotAnIdeal("not closed under forcing".into()));
        }
        Ok(ideal)
    }

    pub fn contains(&self, x: &Arc) -> bool {
        self.arcs.contains(x)
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Members that force no other member: the generators of the ideal.
    pub fn minimal_arcs(&self) -> Vec<Arc> {
        self.arcs
            .iter()
            .filter(|x| !self.arcs.iter().any(|y| y != *x && forces(x, y)))
            .copied()
            .collect()
    }

    /// Arcs outside the ideal that no other arc outside the ideal forces.
    pub fn maximal_contracted_arcs(&self) -> Vec<Arc> {
        let rest: Vec<Arc> = enumerate_arcs(self.n).into_iter().filter(|x| !self.contains(x)).collect();
        rest.iter().filter(|x| !rest.iter().any(|y| y != *x && forces(y, x))).copied().collect()
    }

    /// One arc per line in the text form.
    pub fn to_lines(&self) -> String {
        self.arcs.iter().map(|x| format!("{x}\n")).collect()
    }
}

/// The smallest ideal containing `seed`.
pub fn close_upward(seed: impl IntoIterator<Item = Arc>, n: usize) -> ArcIdeal {
    let seed: Vec<Arc> = seed.into_iter().collect();
    let arcs = enumerate_arcs(n).into_iter().filter(|y| seed.iter().any(|x| forces(y, x))).collect();
    ArcIdeal { n, arcs }
}

/// All arcs forcing `x`.
pub fn cambrian_ideal(x: &Arc) -> ArcIdeal {
    close_upward([*x], x.n)
}

/// The up arcs.
pub fn sylvester_ideal(n: usize) -> ArcIdeal {
    ArcIdeal { n, arcs: enumerate_arcs(n).into_iter().filter(Arc::is_up).collect() }
}

/// Every ideal exactly once. Arcs are decided shortest first, so an arc may
/// be kept only when all arcs forcing it already are.
pub fn enumerate_arc_ideals(n: usize) -> Vec<ArcIdeal> {
    let mut arcs = enumerate_arcs(n);
    arcs.sort_by_key(|x| (x.b - x.a, *x));
    let forcers: Vec<Vec<usize>> = arcs
        .iter()
        .enumerate()
        .map(|(i, x)| (0..i).filter(|&j| forces(&arcs[j], x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut keep = vec![false; arcs.len()];
    fn rec(i: usize, keep: &mut Vec<bool>, arcs: &[Arc], forcers: &[Vec<usize>], n: usize, out: &mut Vec<ArcIdeal>) {
        if i == arcs.len() {
            let set = arcs.iter().zip(keep.iter()).filter(|(_, &k)| k).map(|(x, _)| *x).collect();
            out.push(ArcIdeal { n, arcs: set });
            return;
        }
        keep[i] = false;
        rec(i + 1, keep, arcs, forcers, n, out);
        if forcers[i].iter().all(|&j| keep[j]) {
            keep[i] = true;
            rec(i + 1, keep, arcs, forcers, n, out);
            keep[i] = false;
        }
    }
    rec(0, &mut keep, &arcs, &forcers, n, &mut out);
    out
}

/// A partition of `𝔖_n` into congruence classes.
#[derive(Clone, Debug)]
pub struct CongruencePartition {
    pub n: usize,
    /// All permutations, lexicographic order.
    pub perms: Vec<Permutation>,
    /// Class label of each permutation, numbered by first appearance.
    pub class_of: Vec<usize>,
    /// Index into `perms` of the weak order minimum of each class.
    pub class_min: Vec<usize>,
}

impl CongruencePartition {
    pub fn num_classes(&self) -> usize {
        self.class_min.len()
    }

    pub fn class_of_perm(&self, sigma: &Permutation) -> usize {
        self.class_of[sigma.rank()]
    }

    pub fn min_perms(&self) -> Vec<Permutation> {
        self.class_min.iter().map(|&i| self.perms[i].clone()).collect()
    }

    /// Classes as sets of permutation indices.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// Classes of the congruence with the given uncontracted arcs: components of
/// the weak order Hasse diagram restricted to covers labeled outside the ideal.
pub fn congruence_classes(ideal: &ArcIdeal) -> CongruencePartition {
    let n = ideal.n;
    let perms = Permutation::all(n);
    let mut uf = UnionFind::new(perms.len());
    for (k, tau) in perms.iter().enumerate() {
        for i in tau.descents() {
            let x = adjacent_arc(&tau.0, i);
            if !ideal.contains(&x) {
                uf.union(k, tau.swapped(i).rank());
            }
        }
    }
    let class_of = uf.labels();
    let ncls = class_of.iter().max().map_or(0, |m| m + 1);
    let mut class_min = vec![usize::MAX; ncls];
    let lengths: Vec<usize> = perms.iter().map(Permutation::length).collect();
    for (k, &c) in class_of.iter().enumerate() {
        if class_min[c] == usize::MAX || lengths[k] < lengths[class_min[c]] {
            class_min[c] = k;
        }
    }
    CongruencePartition { n, perms, class_of, class_min }
}

/// The minimal element of the class of `σ`. Sorting a descent whose arc is
/// contracted stays in the class, and a permutation whose descent arcs are all
/// kept is the minimum of its class.
pub fn pi_down(sigma: &Permutation, ideal: &ArcIdeal) -> Permutation {
    let mut tau = sigma.clone();
    while let Some(i) = tau.descents().into_iter().find(|&i| !ideal.contains(&adjacent_arc(&tau.0, i))) {
        tau = tau.swapped(i);
    }
    tau
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// All classes have the same number of neighbours in the quotient graph.
    pub hasse_regular: bool,
    /// Every maximal contracted arc is an up arc or a down arc.
    pub hm_criterion: bool,
}

/// Degrees of the classes in the Hasse diagram of the quotient.
pub fn quotient_degrees(p: &CongruencePartition) -> Vec<usize> {
    let mut nbrs = vec![BTreeSet::new(); p.num_classes()];
    for (k, tau) in p.perms.iter().enumerate() {
        for i in tau.descents() {
            let (c, d) = (p.class_of[k], p.class_of[tau.swapped(i).rank()]);
            if c != d {
                nbrs[c].insert(d);
                nbrs[d].insert(c);
            }
        }
    }
    nbrs.iter().map(BTreeSet::len).collect()
}

pub fn regularity_check(ideal: &ArcIdeal) -> RegularityReport {
    let degs = quotient_degrees(&congruence_classes(ideal));
    let hasse_regular = degs.windows(2).all(|w| w[0] == w[1]);
    let hm_criterion = ideal.maximal_contracted_arcs().iter().all(|x| x.is_up() || x.is_down());
    RegularityReport { hasse_regular, hm_criterion }
}
