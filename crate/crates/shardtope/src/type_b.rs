//! Type B: signed permutations, B-arcs and their forcing order, B-arc ideals
//! and congruences, folding, and type B shard polytopes and quotientopes.
//!
//! Arcs on `[±n]` are stored as type A arcs on `[2n]`. The point `v > 0`
//! sits at position `n + v` and `v < 0` at position `n + 1 + v`, so the
//! central symmetry `v ↦ −v` is `p ↦ 2n + 1 − p`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bits::{self, Mask, UnionFind};
use crate::error::{Error, Result};
use crate::polytope::{chamber_partition, ChamberPartition, FanFrame, RayKey, SupportVector, VPolytope};
use crate::rat::{rat, Rat};
use crate::shards::{enumerate_matchings, WallReport};
use crate::weak_order::{
    adjacent_arc, arcs_cross, close_upward, diagram_to_perm, enumerate_arcs, forces, parse_arc_text, perm_to_diagram,
    Arc, ArcIdeal, Color, NoncrossingDiagram, Permutation,
};

/// Largest `n` for exhaustive sweeps over B-arc ideals.
pub const MAX_N_B_SWEEP: usize = 3;

/// Position of `v ∈ [±n]` in `[2n]`.
pub fn pos(n: usize, v: i64) -> usize {
    if v > 0 {
        n + v as usize
    } else {
        (n as i64 + 1 + v) as usize
    }
}

/// The point of `[±n]` at position `p` of `[2n]`.
pub fn signed(n: usize, p: usize) -> i64 {
    if p > n {
        (p - n) as i64
    } else {
        p as i64 - n as i64 - 1
    }
}

/// `[lo, hi] ∖ {0}`.
fn span(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|&v| v != 0)
}

fn mirror_mask(m: usize, mask: Mask) -> Mask {
    bits::elems(mask).fold(0, |acc, p| acc | bits::bit(m + 1 - p))
}

/// The image `−α` of an arc on `[2n]` under the central symmetry. Points
/// above `α` end up below `−α`.
pub fn mirror_arc(x: &Arc) -> Arc {
    let m = x.n;
    Arc { n: m, a: m + 1 - x.b, b: m + 1 - x.a, above: mirror_mask(m, x.below), below: mirror_mask(m, x.above) }
}

/// Whether `(−α, α)` is a B-arc: `α` is centrally symmetric, or its endpoints
/// are not opposite and `α`, `−α` do not cross.
pub fn centrally_symmetrizable(x: &Arc) -> bool {
    if x.n % 2 != 0 {
        return false;
    }
    let y = mirror_arc(x);
    *x == y || (x.a + x.b != x.n + 1 && !arcs_cross(x, &y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BClass {
    /// Both endpoints positive.
    Separated,
    /// A centrally symmetric arc from `−b` to `b`.
    Singular,
    /// Endpoints `a < 0 < −a < b`.
    Overlapped,
}

/// A B-arc `(−α, α)`, kept through its representative `α`: the one with the
/// larger right endpoint (both have `b > 0` when overlapped).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BArc {
    pub n: usize,
    /// Representative on `[2n]`.
    pub rep: Arc,
    pub class: BClass,
}

fn upper_shape(x: &Arc) -> bool {
    let m = x.n;
    let neg_a = m + 1 - x.a;
    bits::has(x.above, neg_a)
        && bits::elems(x.below & bits::open(x.a, neg_a)).all(|p| bits::has(x.above, m + 1 - p))
}

#[cfg(test)]
fn lower_shape(x: &Arc) -> bool {
    let m = x.n;
    let neg_a = m + 1 - x.a;
    bits::has(x.below, neg_a)
        && bits::elems(x.above & bits::open(x.a, neg_a)).all(|p| bits::has(x.below, m + 1 - p))
}

impl BArc {
    /// The B-arc `(−α, α)` of a centrally symmetrizable arc on `[2n]`.
    pub fn from_arc(x: &Arc) -> Result<BArc> {
        if !centrally_symmetrizable(x) {
            return Err(Error::InvalidArc(format!("{x} is not centrally symmetrizable")));
        }
        let n = x.n / 2;
        let y = mirror_arc(x);
        // the right endpoint of −α is −a
        let rep = if signed(n, x.b) >= -signed(n, x.a) { *x } else { y };
        let (a, b) = (signed(n, rep.a), signed(n, rep.b));
        let class = if a > 0 {
            BClass::Separated
        } else if a == -b {
            BClass::Singular
        } else {
            BClass::Overlapped
        };
        Ok(BArc { n, rep, class })
    }

    /// From signed endpoints and signed interior sets, either arc of the pair.
    pub fn from_signed(n: usize, a: i64, b: i64, above: &[i64], below: &[i64]) -> Result<BArc> {
        let ok = |v: i64| v != 0 && v.unsigned_abs() as usize <= n;
        if n == 0 || !above.iter().chain(below).chain([&a, &b]).all(|&v| ok(v)) || a >= b {
            return Err(Error::InvalidArc(format!("signed arc {a}-{b} is not on [±{n}]")));
        }
        let p = |s: &[i64]| s.iter().map(|&v| pos(n, v)).collect::<Vec<_>>();
        BArc::from_arc(&Arc::new(2 * n, pos(n, a), pos(n, b), &p(above), &p(below))?)
    }

    /// Parses `a-b|A=..|B=..` with signed entries, for instance `-2-3|A=-1,1,2|B=`.
    pub fn parse(s: &str, n: usize) -> Result<BArc> {
        let (a, b, above, below) = parse_arc_text(s)?;
        BArc::from_signed(n, a, b, &above, &below)
    }

    pub fn mirror(&self) -> Arc {
        mirror_arc(&self.rep)
    }

    /// `α` and `−α` (equal when singular).
    pub fn arcs(&self) -> [Arc; 2] {
        [self.rep, self.mirror()]
    }

    pub fn a(&self) -> i64 {
        signed(self.n, self.rep.a)
    }

    pub fn b(&self) -> i64 {
        signed(self.n, self.rep.b)
    }

    pub fn above(&self) -> Vec<i64> {
        bits::elems(self.rep.above).map(|p| signed(self.n, p)).collect()
    }

    pub fn below(&self) -> Vec<i64> {
        bits::elems(self.rep.below).map(|p| signed(self.n, p)).collect()
    }

    /// For an overlapped B-arc, whether the representative is the upper arc.
    pub fn upper_is_rep(&self) -> Option<bool> {
        (self.class == BClass::Overlapped).then(|| upper_shape(&self.rep))
    }

    /// The upper arc of an overlapped B-arc, the representative otherwise.
    pub fn upper_arc(&self) -> Arc {
        match self.upper_is_rep() {
            Some(false) => self.mirror(),
            _ => self.rep,
        }
    }

    pub fn length(&self) -> usize {
        self.rep.b - self.rep.a
    }
}

impl fmt::Display for BArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: Vec<i64>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}-{}|A={}|B={}", self.a(), self.b(), list(self.above()), list(self.below()))
    }
}

/// All B-arcs on `[±n]`, shortest first.
pub fn enumerate_b_arcs(n: usize) -> Vec<BArc> {
    let mut out: Vec<BArc> = enumerate_arcs(2 * n)
        .iter()
        .filter(|x| centrally_symmetrizable(x))
        .filter_map(|x| BArc::from_arc(x).ok().filter(|b| b.rep == *x))
        .collect();
    out.sort_by_key(|b| (b.length(), *b));
    out
}

/// `β` forces `β'`. An overlapped `β` forces only overlapped B-arcs, through
/// the upper arcs; otherwise some arc of `β` forces some arc of `β'`.
pub fn b_forces(x: &BArc, y: &BArc) -> bool {
    if x.class == BClass::Overlapped {
        return y.class == BClass::Overlapped && forces(&x.upper_arc(), &y.upper_arc());
    }
    x.arcs().iter().any(|u| y.arcs().iter().any(|v| forces(u, v)))
}

/// A set of uncontracted B-arcs, closed under taking B-arcs that force a member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BArcIdeal {
    pub n: usize,
    pub barcs: BTreeSet<BArc>,
}

impl BArcIdeal {
    pub fn empty(n: usize) -> BArcIdeal {
        BArcIdeal { n, barcs: BTreeSet::new() }
    }

    pub fn full(n: usize) -> BArcIdeal {
        BArcIdeal { n, barcs: enumerate_b_arcs(n).into_iter().collect() }
    }

    /// Checks closure under forcing.
    pub fn new(n: usize, barcs: impl IntoIterator<Item = BArc>) -> Result<BArcIdeal> {
        let ideal = BArcIdeal { n, barcs: barcs.into_iter().collect() };
        if let Some(x) = ideal.barcs.iter().find(|x| x.n != n) {
            return Err(Error::InvalidArc(format!("{x} lives on a different n")));
        }
        for y in &ideal.barcs {
            if let Some(x) = enumerate_b_arcs(n).iter().find(|x| b_forces(x, y) && !ideal.contains(x)) {
                return Err(Error::NotAnIdeal(format!("{x} forces {y} but is missing")));
            }
        }
        Ok(ideal)
    }

    /// The smallest ideal containing `seed`.
    pub fn generated(n: usize, seed: &[BArc]) -> BArcIdeal {
        let barcs = enumerate_b_arcs(n).into_iter().filter(|x| seed.iter().any(|y| b_forces(x, y))).collect();
        BArcIdeal { n, barcs }
    }

    pub fn contains(&self, x: &BArc) -> bool {
        self.barcs.contains(x)
    }

    pub fn len(&self) -> usize {
        self.barcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.barcs.is_empty()
    }

    /// Contracted B-arcs not forced by another contracted B-arc.
    pub fn maximal_contracted_barcs(&self) -> Vec<BArc> {
        let rest: Vec<BArc> = enumerate_b_arcs(self.n).into_iter().filter(|x| !self.contains(x)).collect();
        rest.iter().filter(|x| !rest.iter().any(|y| y != *x && b_forces(y, x))).copied().collect()
    }

    /// Both arcs of every member, as arcs on `[2n]`.
    pub fn a_arcs(&self) -> BTreeSet<Arc> {
        self.barcs.iter().flat_map(|b| b.arcs()).collect()
    }

    pub fn to_lines(&self) -> String {
        self.barcs.iter().map(|x| format!("{x}\n")).collect()
    }
}

/// Every B-arc ideal exactly once, deciding B-arcs shortest first.
pub fn enumerate_b_ideals(n: usize) -> Result<Vec<BArcIdeal>> {
    if n > MAX_N_B_SWEEP {
        return Err(Error::SizeCap(format!("B-arc ideal enumeration needs n <= {MAX_N_B_SWEEP}")));
    }
    let arcs = enumerate_b_arcs(n);
    let forcers: Vec<Vec<usize>> =
        arcs.iter().enumerate().map(|(i, x)| (0..i).filter(|&j| b_forces(&arcs[j], x)).collect()).collect();
    let mut out = Vec::new();
    let mut keep = vec![false; arcs.len()];
    fn rec(i: usize, keep: &mut Vec<bool>, arcs: &[BArc], forcers: &[Vec<usize>], n: usize, out: &mut Vec<BArcIdeal>) {
        if i == arcs.len() {
            let barcs = arcs.iter().zip(keep.iter()).filter(|(_, &k)| k).map(|(x, _)| *x).collect();
            out.push(BArcIdeal { n, barcs });
            return;
        }
        rec(i + 1, keep, arcs, forcers, n, out);
        if forcers[i].iter().all(|&j| keep[j]) {
            keep[i] = true;
            rec(i + 1, keep, arcs, forcers, n, out);
            keep[i] = false;
        }
    }
    rec(0, &mut keep, &arcs, &forcers, n, &mut out);
    Ok(out)
}

/// `{(−α, α) : α ∈ ideal centrally symmetrizable}` for an arc ideal on `[2n]`.
pub fn symmetrize_ideal(ideal: &ArcIdeal) -> Result<BArcIdeal> {
    if ideal.n % 2 != 0 {
        return Err(Error::Precondition(format!("arc ideal on [{}] is not on some [±n]", ideal.n)));
    }
    let barcs: Vec<BArc> = ideal.arcs.iter().filter_map(|x| BArc::from_arc(x).ok()).collect();
    BArcIdeal::new(ideal.n / 2, barcs)
}

/// The smallest arc ideal on `[2n]` holding both arcs of every member.
pub fn symmetric_closure(ideal: &BArcIdeal) -> ArcIdeal {
    close_upward(ideal.a_arcs(), 2 * ideal.n)
}

/// Whether the ideal arises from some arc ideal on `[2n]` by symmetrizing.
/// The union of an arc ideal with its mirror image symmetrizes to the same
/// B-arcs, so the symmetric closure is the only candidate.
pub fn is_symmetrized(ideal: &BArcIdeal) -> bool {
    let c = symmetric_closure(ideal);
    c.arcs.iter().filter_map(|x| BArc::from_arc(x).ok()).collect::<BTreeSet<_>>() == ideal.barcs
}

/// A signed permutation `σ_1 … σ_n`, extended by `σ(−i) = −σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedPermutation(pub Vec<i64>);

impl SignedPermutation {
    pub fn new(word: Vec<i64>) -> Result<SignedPermutation> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let k = v.unsigned_abs() as usize;
            if v == 0 || k > n || seen[k] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[k] = true;
        }
        Ok(SignedPermutation(word))
    }

    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation((1..=n as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(i)` for `i ∈ [±n]`.
    pub fn at(&self, i: i64) -> i64 {
        let v = self.0[i.unsigned_abs() as usize - 1];
        if i > 0 {
            v
        } else {
            -v
        }
    }

    /// All signed permutations, in the chamber order of the type B fan.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        FanFrame::B(n).chambers().words.iter().cloned().map(SignedPermutation).collect()
    }

    /// The centrally symmetric permutation of `[2n]`.
    pub fn unfold(&self) -> Permutation {
        let n = self.len();
        Permutation((1..=2 * n).map(|p| pos(n, self.at(signed(n, p)))).collect())
    }

    pub fn from_unfolded(w: &Permutation) -> Result<SignedPermutation> {
        let m = w.len();
        if m % 2 != 0 || (1..=m).any(|p| w.at(m + 1 - p) != m + 1 - w.at(p)) {
            return Err(Error::AsymmetricInverse);
        }
        let n = m / 2;
        Ok(SignedPermutation((1..=n).map(|i| signed(n, w.at(n + i))).collect()))
    }

    /// `0` when `σ_1 < 0`, and every `i` with `σ_i > σ_{i+1}`.
    pub fn b_descents(&self) -> Vec<usize> {
        let w = &self.0;
        let first = (!w.is_empty() && w[0] < 0).then_some(0);
        first.into_iter().chain((1..w.len()).filter(|&i| w[i - 1] > w[i])).collect()
    }

    pub fn b_ascents(&self) -> Vec<usize> {
        let d = self.b_descents();
        (0..self.len()).filter(|i| !d.contains(i)).collect()
    }

    /// The neighbour across wall `i`: the sign of `σ_1` flips for `i = 0`,
    /// positions `i` and `i + 1` swap otherwise.
    pub fn flipped(&self, i: usize) -> SignedPermutation {
        let mut w = self.0.clone();
        if i == 0 {
            w[0] = -w[0];
        } else {
            w.swap(i - 1, i);
        }
        SignedPermutation(w)
    }

    /// Size of the type B inversion set.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let n = w.len();
        let mut c = 0;
        for a in 0..n {
            for b in a..n {
                if b > a && w[a] > w[b] {
                    c += 1;
                }
                if -w[a] > w[b] {
                    c += 1;
                }
            }
        }
        c
    }

    /// The B-arc crossed by the wall `i` (a descent or an ascent).
    pub fn wall_barc(&self, i: usize) -> BArc {
        let n = self.len();
        BArc::from_arc(&adjacent_arc(&self.unfold().0, n + i)).expect("adjacent pairs give B-arcs")
    }

    /// The B-arc labelling the cover below `σ` at descent `i`.
    pub fn cover_barc(&self, i: usize) -> Result<BArc> {
        if !self.b_descents().contains(&i) {
            return Err(Error::NotADescent(i));
        }
        Ok(self.wall_barc(i))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(s.into())))
            .collect::<Result<_>>()?;
        SignedPermutation::new(word)
    }
}

/// Descent B-arcs (down) or ascent B-arcs (up) of `σ`, from the diagram of
/// the unfolded permutation.
pub fn b_perm_to_diagram(sigma: &SignedPermutation, color: Color) -> Vec<BArc> {
    let d = perm_to_diagram(&sigma.unfold(), color);
    let set: BTreeSet<BArc> = d.arcs.iter().map(|x| BArc::from_arc(x).expect("symmetric diagram")).collect();
    set.into_iter().collect()
}

/// Inverse of [`b_perm_to_diagram`], through the type A inverse on the
/// centrally symmetric diagram.
pub fn b_diagram_to_perm(n: usize, barcs: &[BArc], color: Color) -> Result<SignedPermutation> {
    if let Some(x) = barcs.iter().find(|x| x.n != n) {
        return Err(Error::InvalidDiagram(format!("B-arc {x} lives on a different n")));
    }
    let arcs: BTreeSet<Arc> = barcs.iter().flat_map(|b| b.arcs()).collect();
    let d = NoncrossingDiagram { n: 2 * n, arcs: arcs.into_iter().collect(), color };
    SignedPermutation::from_unfolded(&diagram_to_perm(&d)?)
}

/// The join-irreducible signed permutation with the single descent B-arc `β`.
pub fn barc_to_join_irreducible(beta: &BArc) -> SignedPermutation {
    let n = beta.n as i64;
    let (a, b) = (beta.a(), beta.b());
    let (aa, bb) = (beta.above(), beta.below());
    let neg_rev = |s: &[i64]| s.iter().rev().map(|v| -v).collect::<Vec<_>>();
    let mut full: Vec<i64> = Vec::new();
    match beta.class {
        BClass::Singular => {
            full.extend(span(-n, a - 1));
            full.extend(&aa);
            full.extend([b, a]);
            full.extend(&bb);
            full.extend(span(b + 1, n));
        }
        BClass::Separated => {
            full.extend(span(-n, -b - 1));
            full.extend(neg_rev(&bb));
            full.extend([-a, -b]);
            full.extend(neg_rev(&aa));
            full.extend(span(-a + 1, -1));
            full.extend(span(1, a - 1));
            full.extend(&aa);
            full.extend([b, a]);
            full.extend(&bb);
            full.extend(span(b + 1, n));
        }
        BClass::Overlapped if aa.contains(&-a) => {
            // values v with v, −v ∉ B, apart from ±a
            let c: Vec<i64> = span(-b + 1, b - 1)
                .filter(|&v| v != a && v != -a && !bb.contains(&v) && !bb.contains(&-v))
                .collect();
            full.extend(span(-n, -b - 1));
            full.extend(neg_rev(&bb));
            full.extend([-a, -b]);
            full.extend(&c);
            full.extend([b, a]);
            full.extend(&bb);
            full.extend(span(b + 1, n));
        }
        BClass::Overlapped => {
            let c: Vec<i64> = bb.iter().copied().filter(|v| bb.contains(&-v)).collect();
            let d: Vec<i64> = bb.iter().copied().filter(|&v| -a < v && v < b).collect();
            full.extend(span(-n, -b - 1));
            full.extend(neg_rev(&d));
            full.extend(&aa);
            full.extend([b, a]);
            full.extend(&c);
            full.extend([-a, -b]);
            full.extend(neg_rev(&aa));
            full.extend(&d);
            full.extend(span(b + 1, n));
        }
    }
    let nn = beta.n;
    let w = Permutation::new(full.iter().map(|&v| pos(nn, v)).collect()).expect("a permutation of [±n]");
    SignedPermutation::from_unfolded(&w).expect("centrally symmetric")
}

/// A partition of the signed permutations, in chamber order, into classes.
#[derive(Clone, Debug)]
pub struct BCongruencePartition {
    pub n: usize,
    pub perms: Vec<SignedPermutation>,
    /// Class label per permutation, numbered by first appearance.
    pub class_of: Vec<usize>,
    /// Index of the weak order minimum of each class.
    pub class_min: Vec<usize>,
}

impl BCongruencePartition {
    pub fn num_classes(&self) -> usize {
        self.class_min.len()
    }

    pub fn min_perms(&self) -> Vec<SignedPermutation> {
        self.class_min.iter().map(|&i| self.perms[i].clone()).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn as_chamber_partition(&self) -> ChamberPartition {
        ChamberPartition::from_labels(FanFrame::B(self.n), &self.class_of)
    }
}

/// Components of the type B weak order restricted to covers whose B-arc is
/// contracted.
pub fn b_congruence_classes(ideal: &BArcIdeal) -> BCongruencePartition {
    let n = ideal.n;
    let table = FanFrame::B(n).chambers();
    let perms = SignedPermutation::all(n);
    let mut uf = UnionFind::new(perms.len());
    for (k, s) in perms.iter().enumerate() {
        for i in s.b_descents() {
            if !ideal.contains(&s.wall_barc(i)) {
                uf.union(k, table.index[&s.flipped(i).0]);
            }
        }
    }
    let class_of = uf.labels();
    let ncls = class_of.iter().max().map_or(0, |m| m + 1);
    let lengths: Vec<usize> = perms.iter().map(SignedPermutation::length).collect();
    let mut class_min = vec![usize::MAX; ncls];
    for (k, &c) in class_of.iter().enumerate() {
        if class_min[c] == usize::MAX || lengths[k] < lengths[class_min[c]] {
            class_min[c] = k;
        }
    }
    BCongruencePartition { n, perms, class_of, class_min }
}

/// Degrees of the classes in the Hasse diagram of the quotient.
pub fn b_quotient_degrees(p: &BCongruencePartition) -> Vec<usize> {
    let table = FanFrame::B(p.n).chambers();
    let mut nbrs = vec![BTreeSet::new(); p.num_classes()];
    for (k, nb) in table.neighbors.iter().enumerate() {
        for &d in nb {
            let (c, e) = (p.class_of[k], p.class_of[d]);
            if c != e {
                nbrs[c].insert(e);
            }
        }
    }
    nbrs.iter().map(BTreeSet::len).collect()
}

/// `ρ^B`: the coordinate `i` of the image is `x_i − x_{−i}`.
pub fn fold_point(x: &[Rat]) -> Vec<Rat> {
    let n = x.len() / 2;
    (1..=n as i64).map(|i| &x[pos(n, i) - 1] - &x[pos(n, -i) - 1]).collect()
}

fn fold_i64(x: &[i64]) -> Vec<i64> {
    let n = x.len() / 2;
    (1..=n as i64).map(|i| x[pos(n, i) - 1] - x[pos(n, -i) - 1]).collect()
}

/// The image of a polytope in `R^{[±n]}` (coordinates in position order) under `ρ^B`.
pub fn rho_b_project(v: &VPolytope) -> Result<VPolytope> {
    if v.n % 2 != 0 {
        return Err(Error::Precondition(format!("{} coordinates are not indexed by some [±n]", v.n)));
    }
    VPolytope::from_points(v.n / 2, v.vertices.iter().map(|x| fold_point(x)).collect())
}

fn folded_matchings(beta: &BArc) -> Vec<Vec<i64>> {
    let m = 2 * beta.n;
    let pts: BTreeSet<Vec<i64>> = enumerate_matchings(beta.rep).iter().map(|mt| fold_i64(&mt.chi(m))).collect();
    pts.into_iter().collect()
}

/// `SP(β)`: the folded characteristic vectors of the representative's matchings.
pub fn b_shard_polytope(beta: &BArc) -> VPolytope {
    let pts = folded_matchings(beta).into_iter().map(|p| p.into_iter().map(rat).collect()).collect();
    VPolytope::from_points(beta.n, pts).expect("nonempty point set")
}

fn key_dot(k: RayKey, x: &[i64]) -> i64 {
    bits::elems(k.pos).map(|i| x[i - 1]).sum::<i64>() - bits::elems(k.neg).map(|i| x[i - 1]).sum::<i64>()
}

fn support_slots(frame: FanFrame, pts: &[Vec<i64>]) -> Vec<i64> {
    (0..frame.slots())
        .map(|i| if i == 0 { 0 } else { pts.iter().map(|x| key_dot(frame.key(i), x)).max().unwrap() })
        .collect()
}

fn to_support(frame: FanFrame, slots: &[i64]) -> SupportVector {
    SupportVector { frame, values: slots.iter().map(|&v| rat(v)).collect() }
}

pub fn b_shard_support(beta: &BArc) -> SupportVector {
    let frame = FanFrame::B(beta.n);
    to_support(frame, &support_slots(frame, &folded_matchings(beta)))
}

/// Whether `x ∈ R^n` lies in the shard of `β`: `x_a = x_b`, `x_a ≥ x_i` on
/// `A` and `x_a ≤ x_i` on `B`, reading `x_{−i} = −x_i`.
pub fn b_shard_contains(beta: &BArc, x: &[Rat]) -> bool {
    let at = |v: i64| {
        let y = x[v.unsigned_abs() as usize - 1].clone();
        if v > 0 {
            y
        } else {
            -y
        }
    };
    let xa = at(beta.a());
    xa == at(beta.b()) && beta.above().iter().all(|&i| xa >= at(i)) && beta.below().iter().all(|&i| xa <= at(i))
}

/// `Σ_{β ∈ ideal} SP(β)`.
pub fn b_quotientope(ideal: &BArcIdeal) -> Result<SupportVector> {
    let frame = FanFrame::B(ideal.n);
    frame.check_cap()?;
    let mut total = vec![0i64; frame.slots()];
    for beta in &ideal.barcs {
        for (t, v) in total.iter_mut().zip(support_slots(frame, &folded_matchings(beta))) {
            *t += v;
        }
    }
    Ok(to_support(frame, &total))
}

/// `Σ s_β SP(β)`, with `s_β = 1` for B-arcs missing from `weights`.
pub fn b_quotientope_weighted(ideal: &BArcIdeal, weights: &BTreeMap<BArc, Rat>) -> Result<SupportVector> {
    let frame = FanFrame::B(ideal.n);
    frame.check_cap()?;
    if weights.values().any(|w| !w.is_positive()) {
        return Err(Error::NonpositiveWeight);
    }
    if let Some(x) = weights.keys().find(|x| !ideal.contains(x)) {
        return Err(Error::Precondition(format!("weight given for {x}, which is not in the ideal")));
    }
    let mut total = vec![Rat::zero(); frame.slots()];
    for beta in &ideal.barcs {
        let w = weights.get(beta).cloned().unwrap_or_else(|| rat(1));
        for (t, v) in total.iter_mut().zip(support_slots(frame, &folded_matchings(beta))) {
            *t += &w * rat(v);
        }
    }
    Ok(SupportVector { frame, values: total })
}

/// The normal fan of the B-quotientope is the quotient fan.
pub fn verify_cor131(ideal: &BArcIdeal) -> Result<bool> {
    let s = b_quotientope(ideal)?;
    Ok(chamber_partition(&s) == b_congruence_classes(ideal).as_chamber_partition())
}

/// The B-arcs whose shards contain the inner normal `1_R` (with
/// `1_{−i} = −e_i`) in their relative interior: consecutive points of equal
/// level, passing above the higher points and below the lower ones, where the
/// level of `v ∈ [±n]` is `1`, `−1` or `0` as `v ∈ R`, `v ∈ −R` or neither.
pub fn ray_barcs(n: usize, r: RayKey) -> Vec<BArc> {
    let level = |v: i64| -> i8 {
        let (i, pos_side) = (v.unsigned_abs() as usize, v > 0);
        let (inr, innr) = if pos_side { (r.pos, r.neg) } else { (r.neg, r.pos) };
        if bits::has(inr, i) {
            1
        } else if bits::has(innr, i) {
            -1
        } else {
            0
        }
    };
    let m = 2 * n;
    let lv: Vec<i8> = (0..=m).map(|p| if p == 0 { 0 } else { level(signed(n, p)) }).collect();
    let mut out = BTreeSet::new();
    for a in 1..=m {
        let next = (a + 1..=m).find(|&p| lv[p] == lv[a]);
        if let Some(b) = next {
            let above = (a + 1..b).filter(|&p| lv[p] > lv[a]).fold(0, |s, p| s | bits::bit(p));
            let below = bits::open(a, b) & !above;
            let x = Arc { n: m, a, b, above, below };
            out.insert(BArc::from_arc(&x).expect("ray arcs are centrally symmetrizable"));
        }
    }
    out.into_iter().collect()
}

/// Whether the ray `1_R` of the type B fan is a ray of the quotient fan.
pub fn b_ray_check(ideal: &BArcIdeal, r: RayKey) -> bool {
    ray_barcs(ideal.n, r).iter().all(|x| ideal.contains(x))
}

/// Outer normals of the facets of the B-quotientope, the negatives of the
/// inner normals accepted by [`b_ray_check`].
pub fn b_quotient_rays(ideal: &BArcIdeal) -> Vec<RayKey> {
    FanFrame::B(ideal.n).all_keys().into_iter().filter(|k| b_ray_check(ideal, k.negate())).collect()
}

/// Compares the chamber vertices of `s` across every wall of the type B fan.
pub fn b_wall_report(s: &SupportVector, beta: &BArc) -> WallReport {
    let table = s.frame.chambers();
    let verts = s.chamber_vertices();
    let mut rep = WallReport { walls_in_forcing_shards: true, shard_walls_separate: true };
    for (c, w) in table.words.iter().enumerate() {
        let sigma = SignedPermutation(w.clone());
        for i in sigma.b_descents() {
            let d = table.index[&sigma.flipped(i).0];
            let label = sigma.wall_barc(i);
            let distinct = verts[c] != verts[d];
            if distinct && !b_forces(&label, beta) {
                rep.walls_in_forcing_shards = false;
            }
            if label == *beta && !distinct {
                rep.shard_walls_separate = false;
            }
        }
    }
    rep
}

/// The wall test applied to `SP(β)`.
pub fn verify_prop130(beta: &BArc) -> WallReport {
    b_wall_report(&b_shard_support(beta), beta)
}

/// `summand_space_dim(SP(β))` for every B-arc.
pub fn b_indecomposability_report(n: usize) -> Result<Vec<(BArc, usize)>> {
    FanFrame::B(n).check_cap()?;
    Ok(enumerate_b_arcs(n).into_iter().map(|b| (b, crate::polytope::summand_space_dim(&b_shard_support(&b)))).collect())
}

/// Gaps `(p, p + 1)` of `[2n]` where the arc changes sides.
fn crossing_gaps(x: &Arc) -> Vec<usize> {
    (x.a + 1..x.b.saturating_sub(1))
        .filter(|&p| bits::has(x.above, p) != bits::has(x.above, p + 1))
        .collect()
}

/// Contracted B-arcs that force no other contracted B-arc.
pub fn extremal_contracted_barcs(ideal: &BArcIdeal) -> Vec<BArc> {
    let rest: Vec<BArc> = enumerate_b_arcs(ideal.n).into_iter().filter(|x| !ideal.contains(x)).collect();
    rest.iter().filter(|x| !rest.iter().any(|y| y != *x && b_forces(x, y))).copied().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BRegularity {
    /// All classes have the same degree in the quotient's Hasse diagram.
    pub hasse_regular: bool,
    /// Some extremal contracted B-arc is not singular and crosses the axis.
    pub cond_i: bool,
    /// No extremal contracted B-arc crosses the axis.
    pub cond_ii: bool,
}

/// Regularity of the quotient next to the two crossing conditions, taken
/// over [`extremal_contracted_barcs`].
pub fn b_regularity_check(ideal: &BArcIdeal) -> BRegularity {
    let degs = b_quotient_degrees(&b_congruence_classes(ideal));
    let ext = extremal_contracted_barcs(ideal);
    BRegularity {
        hasse_regular: degs.windows(2).all(|w| w[0] == w[1]),
        cond_i: ext.iter().any(|b| b.class != BClass::Singular && !crossing_gaps(&b.rep).is_empty()),
        cond_ii: ext.iter().all(|b| crossing_gaps(&b.rep).is_empty()),
    }
}

/// Counts over all B-arc ideals. Nothing is asserted here: the two
/// conditions are compared with regularity and the counts reported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BRegularitySummary {
    pub ideals: usize,
    pub regular: usize,
    pub cond_i: usize,
    pub cond_ii: usize,
    /// Irregular quotients without condition (i).
    pub irregular_without_i: usize,
    /// Regular quotients with condition (i).
    pub regular_with_i: usize,
    /// Irregular quotients with condition (ii).
    pub irregular_with_ii: usize,
    /// Regular quotients without condition (ii).
    pub regular_without_ii: usize,
}

pub fn b_regularity_experiment(n: usize) -> Result<BRegularitySummary> {
    let mut s = BRegularitySummary::default();
    for ideal in enumerate_b_ideals(n)? {
        let r = b_regularity_check(&ideal);
        let reg = r.hasse_regular;
        s.ideals += 1;
        s.regular += reg as usize;
        s.cond_i += r.cond_i as usize;
        s.cond_ii += r.cond_ii as usize;
        s.irregular_without_i += (!reg && !r.cond_i) as usize;
        s.regular_with_i += (reg && r.cond_i) as usize;
        s.irregular_with_ii += (!reg && r.cond_ii) as usize;
        s.regular_without_ii += (reg && !r.cond_ii) as usize;
    }
    Ok(s)
}

/// For each signed permutation, its class under an arc ideal on `[2n]`
/// applied to the unfolded permutation.
pub fn unfolded_classes(ideal: &ArcIdeal) -> Vec<usize> {
    let n = ideal.n / 2;
    let p = crate::weak_order::congruence_classes(ideal);
    let labels: Vec<usize> = SignedPermutation::all(n).iter().map(|s| p.class_of_perm(&s.unfold())).collect();
    let mut ids = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = ids.len();
            *ids.entry(*l).or_insert(next)
        })
        .collect()
}
