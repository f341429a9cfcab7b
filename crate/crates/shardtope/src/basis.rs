//! Three coordinate systems on caged deformed permutahedra: shard
//! coefficients `s`, simplex coefficients `y` and inner heights `z`, all
//! indexed by the subsets of `[n]` with at least two elements.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polytope::{self, FanFrame, SupportVector};
use crate::rat::{fmt_rat, parse_rat, rat, Rat};
use crate::shards::shard_support;
use crate::weak_order::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    S,
    Y,
    Z,
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::S => "s",
            Basis::Y => "y",
            Basis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "s" => Ok(Basis::S),
            "y" => Ok(Basis::Y),
            "z" => Ok(Basis::Z),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// Sort key `(max − min, −|I|)`, ties broken lexicographically on the elements.
pub fn canonical_key(m: Mask) -> (usize, isize, Vec<usize>) {
    let (lo, hi) = (bits::min(m).unwrap_or(0), bits::max(m).unwrap_or(0));
    (hi - lo, -(bits::card(m) as isize), bits::elems(m).collect())
}

/// All subsets of `[n]` of size at least two, in canonical order.
pub fn subsets_ge2(n: usize) -> Vec<Mask> {
    let mut v: Vec<Mask> = bits::subsets_at_least(n, 2).collect();
    v.sort_by_key(|&m| canonical_key(m));
    v
}

/// A coefficient family indexed by subsets of size at least two; absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    pub basis: Basis,
    pub n: usize,
    entries: BTreeMap<Mask, Rat>,
}

impl CoeffVector {
    pub fn zero(basis: Basis, n: usize) -> CoeffVector {
        CoeffVector { basis, n, entries: BTreeMap::new() }
    }

    pub fn from_fn(basis: Basis, n: usize, mut f: impl FnMut(Mask) -> Rat) -> CoeffVector {
        let mut c = CoeffVector::zero(basis, n);
        for m in subsets_ge2(n) {
            c.set(m, f(m));
        }
        c
    }

    pub fn unit(basis: Basis, n: usize, m: Mask) -> Result<CoeffVector> {
        let mut c = CoeffVector::zero(basis, n);
        c.try_set(m, Rat::one())?;
        Ok(c)
    }

    fn check_key(&self, m: Mask) -> Result<()> {
        if bits::card(m) < 2 || m & !bits::closed(1, self.n) != 0 {
            return Err(Error::Precondition(format!("key {{{}}} is not a subset of [{}] of size >= 2", bits::key(m), self.n)));
        }
        Ok(())
    }

    pub fn try_set(&mut self, m: Mask, v: Rat) -> Result<()> {
        self.check_key(m)?;
        self.set(m, v);
        Ok(())
    }

    fn set(&mut self, m: Mask, v: Rat) {
        if v.is_zero() {
            self.entries.remove(&m);
        } else {
            self.entries.insert(m, v);
        }
    }

    pub fn get(&self, m: Mask) -> Rat {
        self.entries.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero entries in canonical order.
    pub fn nonzero(&self) -> Vec<(Mask, Rat)> {
        let mut v: Vec<(Mask, Rat)> = self.entries.iter().map(|(k, x)| (*k, x.clone())).collect();
        v.sort_by_key(|(m, _)| canonical_key(*m));
        v
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        subsets_ge2(self.n).into_iter().map(|m| self.get(m)).collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: serde_json::Map<String, Value> =
            self.nonzero().into_iter().map(|(m, v)| (bits::key(m), Value::String(fmt_rat(&v)))).collect();
        json!({ "basis": self.basis.name(), "n": self.n, "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<CoeffVector> {
        let bad = |what: &str| Error::Parse(format!("coefficient vector: {what}"));
        let basis = Basis::parse(v["basis"].as_str().ok_or_else(|| bad("missing basis"))?)?;
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        if !(2..=30).contains(&n) {
            return Err(bad("n out of range"));
        }
        let mut c = CoeffVector::zero(basis, n);
        for (k, x) in v["entries"].as_object().ok_or_else(|| bad("missing entries"))? {
            let elems: Vec<usize> = k
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad("bad key")))
                .collect::<Result<_>>()?;
            let m = bits::from_iter(elems.iter().copied());
            if bits::card(m) != elems.len() || elems.contains(&0) {
                return Err(bad("bad key"));
            }
            let val = parse_rat(x.as_str().ok_or_else(|| bad("values must be strings"))?)?;
            c.try_set(m, val)?;
        }
        Ok(c)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzero().iter().map(|(m, v)| format!("{}_{{{}}}={}", self.basis.name(), bits::key(*m), fmt_rat(v))).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// `α_I = (min I, max I, ]min I, max I[ ∩ I, ]min I, max I[ ∖ I)`.
pub fn arc_of_subset(i: Mask, n: usize) -> Result<Arc> {
    if bits::card(i) < 2 {
        return Err(Error::Precondition("need |I| >= 2".into()));
    }
    let (a, b) = (bits::min(i).unwrap(), bits::max(i).unwrap());
    let inner = bits::open(a, b);
    Arc::from_masks(n, a, b, i & inner, inner & !i)
}

/// Inverse of [`arc_of_subset`]: `{a} ∪ A ∪ {b}`.
pub fn subset_of_arc(alpha: &Arc) -> Mask {
    alpha.above | bits::bit(alpha.a) | bits::bit(alpha.b)
}

fn ends(m: Mask) -> Mask {
    bits::bit(bits::min(m).unwrap()) | bits::bit(bits::max(m).unwrap())
}

/// `I ▷ J`: both extremes of `J` lie in `]min I, max I[ Δ I`, and
/// `]min J, max J[ ∩ I ⊆ J`.
pub fn triangle(i: Mask, j: Mask) -> bool {
    let (ia, ib) = (bits::min(i).unwrap(), bits::max(i).unwrap());
    let (ja, jb) = (bits::min(j).unwrap(), bits::max(j).unwrap());
    let sym = bits::open(ia, ib) ^ i;
    ends(j) & !sym == 0 && bits::open(ja, jb) & i & !j == 0
}

/// `|J|_I = |J ∖ ({min J, max J} ∪ I)|`.
pub fn weight(j: Mask, i: Mask) -> usize {
    bits::card(j & !(ends(j) | i))
}

fn sign(k: usize) -> Rat {
    if k % 2 == 0 { Rat::one() } else { -Rat::one() }
}

/// `SP(α_I) + 1_{B_I ∪ {b_I}}`, the caged shard polytope of `I`.
pub fn translated_shard_support(i: Mask, n: usize) -> Result<SupportVector> {
    let alpha = arc_of_subset(i, n)?;
    let t: Vec<Rat> = (1..=n).map(|k| rat(i64::from(bits::has(alpha.right_set(), k)))).collect();
    Ok(polytope::translate(&shard_support(alpha), &t))
}

/// `Δ_J = conv{e_j : j ∈ J}`.
pub fn simplex_support(j: Mask, n: usize) -> Result<SupportVector> {
    if bits::card(j) < 2 || j & !bits::closed(1, n) != 0 {
        return Err(Error::Precondition("need J ⊆ [n] with |J| >= 2".into()));
    }
    Ok(polytope::simplex_support(FanFrame::A(n), j))
}

fn expect(c: &CoeffVector, b: Basis) -> Result<()> {
    if c.basis != b {
        return Err(Error::Precondition(format!("expected basis {}, got {}", b.name(), c.basis.name())));
    }
    Ok(())
}

/// `y_J = Σ_{I ▷ J} (−1)^{|J|_I} s_I`.
pub fn s_to_y(s: &CoeffVector) -> Result<CoeffVector> {
    expect(s, Basis::S)?;
    let mut y = CoeffVector::zero(Basis::Y, s.n);
    for (i, v) in s.nonzero() {
        for j in subsets_ge2(s.n).into_iter().filter(|&j| triangle(i, j)) {
            let cur = y.get(j);
            y.set(j, cur + sign(weight(j, i)) * &v);
        }
    }
    Ok(y)
}

/// `s_I = Σ_{J ▷ I} (−1)^{|{min I, max I} ∩ {min J, max J}|} y_J`.
pub fn y_to_s(y: &CoeffVector) -> Result<CoeffVector> {
    expect(y, Basis::Y)?;
    let mut s = CoeffVector::zero(Basis::S, y.n);
    for (j, v) in y.nonzero() {
        for i in subsets_ge2(y.n).into_iter().filter(|&i| triangle(j, i)) {
            let cur = s.get(i);
            s.set(i, cur + sign(bits::card(ends(i) & ends(j))) * &v);
        }
    }
    Ok(s)
}

/// `z_R = Σ_{J ⊆ R} y_J`.
pub fn y_to_z(y: &CoeffVector) -> Result<CoeffVector> {
    expect(y, Basis::Y)?;
    let ys = y.nonzero();
    Ok(CoeffVector::from_fn(Basis::Z, y.n, |r| ys.iter().filter(|(j, _)| j & !r == 0).map(|(_, v)| v.clone()).sum()))
}

/// `y_J = Σ_{R ⊆ J} (−1)^{|J ∖ R|} z_R`.
pub fn z_to_y(z: &CoeffVector) -> Result<CoeffVector> {
    expect(z, Basis::Z)?;
    let zs = z.nonzero();
    Ok(CoeffVector::from_fn(Basis::Y, z.n, |j| {
        zs.iter().filter(|(r, _)| r & !j == 0).map(|(r, v)| sign(bits::card(j & !r)) * v).sum()
    }))
}

/// Number of pairs `r < s` in `(B_I ∪ {min I, max I}) ∩ R` with
/// `]r, s[ ∩ I = ]r, s[ ∩ R`.
pub fn pair_multiplicity(i: Mask, r: Mask) -> usize {
    let (a, b) = (bits::min(i).unwrap(), bits::max(i).unwrap());
    let pts: Vec<usize> = bits::elems((bits::open(a, b) ^ i) & r).collect();
    let mut count = 0;
    for (k, &x) in pts.iter().enumerate() {
        for &y in &pts[k + 1..] {
            let mid = bits::open(x, y);
            if mid & i == mid & r {
                count += 1;
            }
        }
    }
    count
}

/// `z_R = Σ_I m(I, R) s_I`.
pub fn s_to_z(s: &CoeffVector) -> Result<CoeffVector> {
    expect(s, Basis::S)?;
    let ss = s.nonzero();
    Ok(CoeffVector::from_fn(Basis::Z, s.n, |r| {
        ss.iter().map(|(i, v)| rat(pair_multiplicity(*i, r) as i64) * v).sum()
    }))
}

/// The four subsets `I`, `I Δ [1, min I]`, `I Δ [max I, n]` and
/// `I Δ ([1, min I] ∪ [max I, n])`, with signs `+ − − +`.
pub fn height_stencil(i: Mask, n: usize) -> [(Mask, i64); 4] {
    let (a, b) = (bits::min(i).unwrap(), bits::max(i).unwrap());
    let (lo, hi) = (bits::closed(1, a), bits::closed(b, n));
    [(i, 1), (i ^ lo, -1), (i ^ hi, -1), (i ^ lo ^ hi, 1)]
}

/// `s_I = z_I − z_{I Δ [1,min I]} − z_{I Δ [max I,n]} + z_{I Δ ([1,min I] ∪ [max I,n])}`,
/// with `z_R = 0` for `|R| ≤ 1`.
pub fn z_to_s(z: &CoeffVector) -> Result<CoeffVector> {
    expect(z, Basis::Z)?;
    Ok(CoeffVector::from_fn(Basis::S, z.n, |i| {
        height_stencil(i, z.n)
            .iter()
            .filter(|(r, _)| bits::card(*r) >= 2)
            .map(|(r, c)| rat(*c) * z.get(*r))
            .sum()
    }))
}

/// Converts between any two bases.
pub fn convert(c: &CoeffVector, to: Basis) -> Result<CoeffVector> {
    use Basis::*;
    match (c.basis, to) {
        (a, b) if a == b => Ok(c.clone()),
        (S, Y) => s_to_y(c),
        (Y, S) => y_to_s(c),
        (Y, Z) => y_to_z(c),
        (Z, Y) => z_to_y(c),
        (S, Z) => s_to_z(c),
        (Z, S) => z_to_s(c),
        _ => unreachable!(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    /// `y = M s`.
    YOfS,
    /// `s = M y`.
    SOfY,
    /// `z = M s`.
    ZOfS,
    /// `s = M z`.
    SOfZ,
}

/// The conversion matrix with rows and columns in canonical subset order.
pub fn build_matrix(kind: MatrixKind, n: usize) -> Result<Matrix> {
    if !(2..=6).contains(&n) {
        return Err(Error::SizeCap("conversion matrices need 2 <= n <= 6".into()));
    }
    let (from, to) = match kind {
        MatrixKind::YOfS => (Basis::S, Basis::Y),
        MatrixKind::SOfY => (Basis::Y, Basis::S),
        MatrixKind::ZOfS => (Basis::S, Basis::Z),
        MatrixKind::SOfZ => (Basis::Z, Basis::S),
    };
    let keys = subsets_ge2(n);
    let cols: Vec<Vec<Rat>> = keys
        .iter()
        .map(|&k| Ok(convert(&CoeffVector::unit(from, n, k)?, to)?.to_dense()))
        .collect::<Result<_>>()?;
    Ok((0..keys.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

/// Monic minimal polynomial of a square matrix, coefficients from the constant term up.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Rat> {
    let d = m.len();
    let flat = |a: &Matrix| -> Vec<Rat> { a.iter().flatten().cloned().collect() };
    let mut powers = vec![linalg::identity(d)];
    loop {
        let k = powers.len();
        let next = linalg::mat_mul(powers.last().unwrap(), m);
        // solve Σ_{i<k} c_i M^i = −M^k
        let cols: Vec<Vec<Rat>> = powers.iter().map(flat).collect();
        let target: Vec<Rat> = flat(&next).into_iter().map(|x| -x).collect();
        let a: Matrix = (0..d * d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        if let Some(c) = linalg::solve_any(&a, &target) {
            let mut p = c;
            p.push(Rat::one());
            return p;
        }
        powers.push(next);
        debug_assert!(k <= d);
    }
}

/// Characteristic polynomial `det(xI − M)` by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &Matrix) -> Vec<Rat> {
    let d = m.len();
    let mut coeffs = vec![Rat::zero(); d + 1];
    coeffs[d] = Rat::one();
    let mut mk = vec![vec![Rat::zero(); d]; d];
    for k in 1..=d {
        // M_k = M M_{k−1} + c_{d−k+1} I, c_{d−k} = −tr(M M_k)/k
        let mut next = linalg::mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[d - k + 1];
        }
        mk = next;
        let prod = linalg::mat_mul(m, &mk);
        let tr: Rat = (0..d).map(|i| prod[i][i].clone()).sum();
        coeffs[d - k] = -tr / rat(k as i64);
    }
    coeffs
}

/// Product of polynomials given by coefficients from the constant term up.
pub fn poly_mul(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn poly_pow(p: &[Rat], k: usize) -> Vec<Rat> {
    (0..k).fold(vec![Rat::one()], |acc, _| poly_mul(&acc, p))
}

/// Pretty form such as `x^2 - 3x + 1`.
pub fn fmt_poly(p: &[Rat]) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coef = if mag.is_one() && k > 0 { String::new() } else { fmt_rat(&mag) };
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        let sgn = if c.is_negative() { "-" } else { "+" };
        terms.push((sgn, format!("{coef}{var}")));
    }
    let mut out = String::new();
    for (idx, (sgn, t)) in terms.iter().enumerate() {
        if idx == 0 {
            if *sgn == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sgn} "));
        }
        out.push_str(t);
    }
    if out.is_empty() { "0".into() } else { out }
}

/// A support vector built from coefficients, flagged when it is only virtual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub support: SupportVector,
    pub is_virtual: bool,
}

/// The caged (virtual) deformed permutahedron with these coefficients, as the
/// formal support `s(Q) = z_{[n]} − z_{[n] ∖ Q}`.
pub fn realize(c: &CoeffVector) -> Result<Realization> {
    let z = convert(c, Basis::Z)?;
    let n = c.n;
    let full = bits::closed(1, n);
    let zr = |r: Mask| if bits::card(r) >= 2 { z.get(r) } else { Rat::zero() };
    let support = SupportVector::from_fn(FanFrame::A(n), |k| zr(full) - zr(full & !k.pos));
    let is_virtual = !polytope::is_deformed_permutahedron(&support);
    Ok(Realization { support, is_virtual })
}

/// Inner heights `z_R = min ⟨1_R, x⟩ = s([n]) − s([n] ∖ R)`.
pub fn heights(s: &SupportVector) -> CoeffVector {
    let n = s.frame.n();
    let full = bits::closed(1, n);
    let h = |m: Mask| -> Rat { if m == 0 { Rat::zero() } else { s.values[(m >> 1) as usize].clone() } };
    CoeffVector::from_fn(Basis::Z, n, |r| h(full) - h(full & !r))
}

/// Whether every coordinate has minimum zero.
pub fn is_caged(s: &SupportVector) -> bool {
    let n = s.frame.n();
    let full = bits::closed(1, n);
    let h = |m: Mask| -> Rat { s.values[(m >> 1) as usize].clone() };
    (1..=n).all(|i| (h(full) - h(full & !bits::bit(i))).is_zero() || (n == 1 && h(full).is_zero()))
}

/// Translates so that every coordinate has minimum zero.
pub fn cage(s: &SupportVector) -> SupportVector {
    let n = s.frame.n();
    let full = bits::closed(1, n);
    let h = |m: Mask| -> Rat { s.values[(m >> 1) as usize].clone() };
    let t: Vec<Rat> = (1..=n).map(|i| h(full & !bits::bit(i)) - h(full)).collect();
    polytope::translate(s, &t)
}

/// The unique coefficients of a caged deformed permutahedron in the target basis.
pub fn decompose(s: &SupportVector, target: Basis, auto_cage: bool) -> Result<CoeffVector> {
    if s.frame.is_b() || !polytope::is_deformed_permutahedron(s) {
        return Err(Error::NotDeformedPermutahedron);
    }
    let caged = if is_caged(s) {
        s.clone()
    } else if auto_cage {
        cage(s)
    } else {
        return Err(Error::NotCaged);
    };
    convert(&heights(&caged), target)
}

/// `(min I − 2)(n − max I − 1)`: the shard coefficients of `Σ_{i<j} Δ_{ij}`.
pub fn permutahedron_s(n: usize) -> CoeffVector {
    CoeffVector::from_fn(Basis::S, n, |i| {
        let (a, b) = (bits::min(i).unwrap() as i64, bits::max(i).unwrap() as i64);
        rat((a - 2) * (n as i64 - b - 1))
    })
}

/// `s ≡ 1` on the arc ideal generated by `α`.
pub fn cambrian_s(alpha: &Arc) -> CoeffVector {
    let ideal = crate::weak_order::cambrian_ideal(alpha);
    let mut c = CoeffVector::zero(Basis::S, alpha.n);
    for x in &ideal.arcs {
        c.set(subset_of_arc(x), Rat::one());
    }
    c
}

/// `y_J` (for `|J| ≥ 2`) of the α-associahedron by the closed-form case split:
/// zero unless `J ⊆ [a, b]` and `A ∩ ]min J, max J[ ⊆ J`, and otherwise
/// `(−1)^{|J ∖ ({min J, max J} ∪ A)|}` times a factor `min J − a + 1` when
/// `min J ∉ A` and a factor `b − max J + 1` when `max J ∉ A`.
pub fn cambrian_y_closed_form(alpha: &Arc, j: Mask) -> Rat {
    let (a, b) = (alpha.a, alpha.b);
    let (lo, hi) = (bits::min(j).unwrap(), bits::max(j).unwrap());
    if lo < a || hi > b || alpha.above & bits::open(lo, hi) & !j != 0 {
        return Rat::zero();
    }
    let mut v = sign(weight(j, alpha.above));
    if !bits::has(alpha.above, lo) {
        v *= rat((lo - a + 1) as i64);
    }
    if !bits::has(alpha.above, hi) {
        v *= rat((b - hi + 1) as i64);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{permutahedron_support, vertices_from_support};
    use crate::weak_order::enumerate_arcs;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> Mask {
        bits::from_iter(v.iter().copied())
    }

    fn ints(rows: &[&str]) -> Matrix {
        rows.iter()
            .map(|r| r.split_whitespace().map(|t| rat(t.parse().unwrap())).collect())
            .collect()
    }

    #[test]
    fn canonical_order() {
        let names: Vec<String> = subsets_ge2(4).into_iter().map(|m| bits::elems(m).map(|i| i.to_string()).collect()).collect();
        assert_eq!(names, ["12", "23", "34", "123", "234", "13", "24", "1234", "124", "134", "14"]);
        assert_eq!(subsets_ge2(6).len(), 64 - 7);
    }

    #[test]
    fn subsets_and_arcs() {
        let a = arc_of_subset(set(&[1, 3, 4]), 4).unwrap();
        assert_eq!(a, Arc::new(4, 1, 4, &[3], &[2]).unwrap());
        for n in 2..=6 {
            for x in enumerate_arcs(n) {
                assert_eq!(arc_of_subset(subset_of_arc(&x), n).unwrap(), x);
            }
        }
        assert!(triangle(set(&[1, 2, 3]), set(&[1, 2, 3])));
        assert!(!triangle(set(&[1, 3]), set(&[2, 4])));
    }

    #[test]
    fn caged_shards_and_simplices() {
        for i in 1..4 {
            let s = translated_shard_support(set(&[i, i + 1]), 4).unwrap();
            assert_eq!(s, simplex_support(set(&[i, i + 1]), 4).unwrap());
        }
        // an up arc gives a simplex
        let s = translated_shard_support(set(&[1, 2, 3, 4]), 4).unwrap();
        assert_eq!(s, simplex_support(set(&[1, 2, 3, 4]), 4).unwrap());
        assert!(simplex_support(set(&[2]), 4).is_err());
    }

    fn realize_y(y: &CoeffVector) -> SupportVector {
        let mut acc = SupportVector::zero(FanFrame::A(y.n));
        for (j, v) in y.nonzero() {
            let part = simplex_support(j, y.n).unwrap();
            acc.values.iter_mut().zip(&part.values).for_each(|(a, p)| *a += &v * p);
        }
        acc
    }

    fn realize_s(s: &CoeffVector) -> SupportVector {
        let mut acc = SupportVector::zero(FanFrame::A(s.n));
        for (i, v) in s.nonzero() {
            let part = translated_shard_support(i, s.n).unwrap();
            acc.values.iter_mut().zip(&part.values).for_each(|(a, p)| *a += &v * p);
        }
        acc
    }

    #[test]
    fn shard_as_simplices() {
        let y = s_to_y(&CoeffVector::unit(Basis::S, 4, set(&[1, 3, 4])).unwrap()).unwrap();
        let got: Vec<(Mask, Rat)> = y.nonzero();
        let want = vec![(set(&[1, 2]), rat(1)), (set(&[2, 3, 4]), rat(1)), (set(&[1, 3, 4]), rat(1)), (set(&[1, 2, 3, 4]), rat(-1))];
        let mut g = got.clone();
        let mut w = want.clone();
        g.sort();
        w.sort();
        assert_eq!(g, w);
        // geometric check of every unit for n <= 5
        for n in 2..=5 {
            for i in subsets_ge2(n) {
                let s = CoeffVector::unit(Basis::S, n, i).unwrap();
                assert_eq!(realize_y(&s_to_y(&s).unwrap()), translated_shard_support(i, n).unwrap());
            }
        }
    }

    #[test]
    fn simplex_as_shards() {
        let s = y_to_s(&CoeffVector::unit(Basis::Y, 4, set(&[1, 2, 4])).unwrap()).unwrap();
        let mut got = s.nonzero();
        got.sort();
        let mut want = vec![(set(&[1, 2, 4]), rat(1)), (set(&[1, 2, 3, 4]), rat(1)), (set(&[3, 4]), rat(-1)), (set(&[1, 2, 3]), rat(-1))];
        want.sort();
        assert_eq!(got, want);
        for n in 2..=5 {
            for j in subsets_ge2(n) {
                let y = CoeffVector::unit(Basis::Y, n, j).unwrap();
                assert_eq!(realize_s(&y_to_s(&y).unwrap()), simplex_support(j, n).unwrap());
            }
        }
    }

    #[test]
    fn published_matrices() {
        let m = build_matrix(MatrixKind::SOfY, 3).unwrap();
        assert_eq!(m, ints(&["1 0 0 -1", "0 1 0 -1", "0 0 1 1", "0 0 0 1"]));
        let m4 = build_matrix(MatrixKind::SOfY, 4).unwrap();
        assert_eq!(
            m4,
            ints(&[
                "1 0 0 0 0 -1 0 0 0 -1 -1",
                "0 1 0 0 0 -1 -1 0 0 0 1",
                "0 0 1 0 0 0 -1 0 -1 0 -1",
                "0 0 0 1 0 1 0 0 -1 0 -1",
                "0 0 0 0 1 0 1 0 0 -1 -1",
                "0 0 0 0 0 1 0 0 0 0 -1",
                "0 0 0 0 0 0 1 0 0 0 -1",
                "0 0 0 0 0 0 0 1 1 1 1",
                "0 0 0 0 0 0 0 0 1 0 1",
                "0 0 0 0 0 0 0 0 0 1 1",
                "0 0 0 0 0 0 0 0 0 0 1",
            ])
        );
        let z3 = build_matrix(MatrixKind::ZOfS, 3).unwrap();
        assert_eq!(z3, ints(&["1 0 0 1", "0 1 0 1", "1 1 1 2", "0 0 0 1"]));
        let z4 = build_matrix(MatrixKind::ZOfS, 4).unwrap();
        assert_eq!(
            z4,
            ints(&[
                "1 0 0 0 0 1 0 0 0 1 1",
                "0 1 0 0 0 1 1 0 0 0 1",
                "0 0 1 0 0 0 1 0 1 0 1",
                "1 1 0 1 0 2 1 0 1 1 2",
                "0 1 1 0 1 1 2 0 1 1 2",
                "0 0 0 0 0 1 0 0 0 0 1",
                "0 0 0 0 0 0 1 0 0 0 1",
                "1 1 1 1 1 2 2 1 2 2 3",
                "1 0 0 0 0 1 1 0 1 1 2",
                "0 0 1 0 0 1 1 0 1 1 2",
                "0 0 0 0 0 0 0 0 0 0 1",
            ])
        );
        let sz3 = build_matrix(MatrixKind::SOfZ, 3).unwrap();
        assert_eq!(sz3, ints(&["1 0 0 -1", "0 1 0 -1", "-1 -1 1 0", "0 0 0 1"]));
        for n in 2..=5 {
            let a = build_matrix(MatrixKind::ZOfS, n).unwrap();
            let b = build_matrix(MatrixKind::SOfZ, n).unwrap();
            assert_eq!(linalg::mat_mul(&a, &b), linalg::identity(a.len()));
            let c = build_matrix(MatrixKind::YOfS, n).unwrap();
            let d = build_matrix(MatrixKind::SOfY, n).unwrap();
            assert_eq!(linalg::mat_mul(&c, &d), linalg::identity(a.len()));
        }
        assert!(build_matrix(MatrixKind::ZOfS, 7).is_err());
    }

    #[test]
    fn worked_height_examples() {
        // z_234 in terms of s
        let r = set(&[2, 3, 4]);
        let coeff = |i: &[usize]| pair_multiplicity(set(i), r);
        let want = [
            (vec![2, 3], 1),
            (vec![3, 4], 1),
            (vec![2, 3, 4], 1),
            (vec![1, 3], 1),
            (vec![2, 4], 2),
            (vec![1, 2, 4], 1),
            (vec![1, 3, 4], 1),
            (vec![1, 4], 2),
            (vec![1, 2], 0),
            (vec![1, 2, 3], 0),
            (vec![1, 2, 3, 4], 0),
        ];
        for (i, c) in want {
            assert_eq!(coeff(&i), c, "{i:?}");
        }
        // s_234 = z_234 + z_13 − z_23 − z_134
        let mut st: Vec<(Mask, i64)> = height_stencil(set(&[2, 3, 4]), 4).to_vec();
        st.sort();
        let mut w = vec![(set(&[2, 3, 4]), 1), (set(&[1, 3]), 1), (set(&[2, 3]), -1), (set(&[1, 3, 4]), -1)];
        w.sort();
        assert_eq!(st, w);
    }

    /// Heights read directly off the caged shard polytope.
    #[test]
    fn heights_match_geometry() {
        for n in 2..=5 {
            for i in subsets_ge2(n) {
                let sv = translated_shard_support(i, n).unwrap();
                assert!(is_caged(&sv));
                let z = heights(&sv);
                let z2 = s_to_z(&CoeffVector::unit(Basis::S, n, i).unwrap()).unwrap();
                assert_eq!(z, z2, "I={{{}}}", bits::key(i));
            }
        }
    }

    /// The product `(x−1)^7 (x²−3x+1)(x²−x+1)` is the characteristic
    /// polynomial; the factor `x − 1` has only multiplicity five in the
    /// minimal polynomial (checked independently with a computer algebra system).
    #[test]
    fn matrix_polynomials_n4() {
        let m = build_matrix(MatrixKind::ZOfS, 4).unwrap();
        let quad = poly_mul(&[rat(1), rat(-3), rat(1)], &[rat(1), rat(-1), rat(1)]);
        let lin = [rat(-1), rat(1)];
        assert_eq!(characteristic_polynomial(&m), poly_mul(&poly_pow(&lin, 7), &quad));
        assert_eq!(minimal_polynomial(&m), poly_mul(&poly_pow(&lin, 5), &quad));
        assert_eq!(fmt_poly(&[rat(1), rat(-3), rat(1)]), "x^2 - 3x + 1");
        // the minimal polynomial annihilates the matrix and no proper divisor does
        let eval = |p: &[Rat]| -> Matrix {
            let d = m.len();
            let mut acc = vec![vec![Rat::zero(); d]; d];
            for c in p.iter().rev() {
                acc = linalg::mat_mul(&acc, &m);
                for (i, row) in acc.iter_mut().enumerate() {
                    row[i] += c;
                }
            }
            acc
        };
        let zero = vec![vec![Rat::zero(); m.len()]; m.len()];
        assert_eq!(eval(&minimal_polynomial(&m)), zero);
        assert_ne!(eval(&poly_mul(&poly_pow(&lin, 4), &quad)), zero);
        assert_ne!(eval(&poly_mul(&poly_pow(&lin, 5), &[rat(1), rat(-3), rat(1)])), zero);
        assert_eq!(minimal_polynomial(&linalg::identity(3)), vec![rat(-1), rat(1)]);
        assert_eq!(characteristic_polynomial(&linalg::identity(2)), vec![rat(1), rat(-2), rat(1)]);
    }

    #[test]
    fn permutahedron_coordinates() {
        for n in 2..=5 {
            let s = permutahedron_s(n);
            let perm = permutahedron_support(FanFrame::A(n));
            let caged = cage(&perm);
            assert_eq!(decompose(&perm, Basis::S, true).unwrap(), s);
            assert_eq!(decompose(&perm, Basis::S, false), Err(Error::NotCaged));
            let y = decompose(&caged, Basis::Y, false).unwrap();
            assert_eq!(y, CoeffVector::from_fn(Basis::Y, n, |j| rat(i64::from(bits::card(j) == 2))));
            let r = realize(&s).unwrap();
            assert!(!r.is_virtual);
            assert_eq!(r.support, caged);
            if n >= 4 {
                assert!(s.nonzero().iter().any(|(_, v)| v.is_negative()));
            }
        }
        let s4 = permutahedron_s(4);
        let neg: Vec<Mask> = s4.nonzero().into_iter().filter(|(_, v)| v.is_negative()).map(|(m, _)| m).collect();
        assert_eq!(neg, vec![set(&[1, 2]), set(&[3, 4])]);
        let pos: Vec<Mask> = s4.nonzero().into_iter().filter(|(_, v)| v.is_positive()).map(|(m, _)| m).collect();
        assert_eq!(pos, vec![set(&[1, 2, 3, 4]), set(&[1, 2, 4]), set(&[1, 3, 4]), set(&[1, 4])]);
        let mut p3 = CoeffVector::zero(Basis::S, 3);
        p3.try_set(set(&[1, 2, 3]), rat(1)).unwrap();
        p3.try_set(set(&[1, 3]), rat(1)).unwrap();
        assert_eq!(permutahedron_s(3), p3);
    }

    #[test]
    fn realize_and_virtual() {
        let r = realize(&CoeffVector::zero(Basis::S, 4)).unwrap();
        assert!(!r.is_virtual);
        assert_eq!(vertices_from_support(&r.support).unwrap().len(), 1);
        let mut c = CoeffVector::zero(Basis::S, 3);
        c.try_set(set(&[1, 2]), rat(-1)).unwrap();
        assert!(realize(&c).unwrap().is_virtual);
        assert!(c.try_set(set(&[2]), rat(1)).is_err());
        assert!(decompose(&r.support, Basis::S, false).unwrap().nonzero().is_empty());
    }

    #[test]
    fn cambrian_simplex_coefficients() {
        for n in 2..=6 {
            for alpha in enumerate_arcs(n) {
                let y = s_to_y(&cambrian_s(&alpha)).unwrap();
                for j in subsets_ge2(n) {
                    assert_eq!(y.get(j), cambrian_y_closed_form(&alpha, j), "{alpha} J={{{}}}", bits::key(j));
                }
            }
        }
    }

    #[test]
    fn caged_shards_form_a_basis() {
        for n in 2..=5 {
            let rows: Matrix = subsets_ge2(n).into_iter().map(|i| translated_shard_support(i, n).unwrap().values).collect();
            assert_eq!(linalg::rank(&rows), (1 << n) - n - 1);
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut c = CoeffVector::zero(Basis::S, 4);
        c.try_set(set(&[1, 3, 4]), rat(1)).unwrap();
        let v = c.to_json();
        assert_eq!(v.to_string(), r#"{"basis":"s","entries":{"1,3,4":"1"},"n":4}"#);
        assert_eq!(CoeffVector::from_json(&v).unwrap(), c);
        assert!(CoeffVector::from_json(&json!({"basis":"q","n":4,"entries":{}})).is_err());
        assert!(CoeffVector::from_json(&json!({"basis":"s","n":4,"entries":{"2":"1"}})).is_err());
    }

    fn coeffs(n: usize) -> impl Strategy<Value = CoeffVector> {
        let len = subsets_ge2(n).len();
        proptest::collection::vec(-3i64..=3, len).prop_map(move |v| {
            let keys = subsets_ge2(n);
            let mut c = CoeffVector::zero(Basis::S, n);
            for (k, x) in keys.into_iter().zip(v) {
                c.set(k, rat(x));
            }
            c
        })
    }

    proptest! {
        #[test]
        fn conversions_commute(s in (2usize..=5).prop_flat_map(coeffs)) {
            let y = s_to_y(&s).unwrap();
            prop_assert_eq!(y_to_s(&y).unwrap(), s.clone());
            let z = s_to_z(&s).unwrap();
            prop_assert_eq!(&z, &y_to_z(&y).unwrap());
            prop_assert_eq!(z_to_y(&z).unwrap(), y.clone());
            prop_assert_eq!(z_to_s(&z).unwrap(), s.clone());
            let mut yz = y.clone();
            yz.basis = Basis::Z;
            prop_assert_eq!(y_to_z(&z_to_y(&z).unwrap()).unwrap(), z);
            let _ = yz;
        }

        #[test]
        fn nonnegative_combinations_are_real(s in (2usize..=4).prop_flat_map(coeffs)) {
            let mut p = s.clone();
            for (k, v) in s.nonzero() {
                p.set(k, v.abs());
            }
            let r = realize(&p).unwrap();
            prop_assert!(!r.is_virtual);
            prop_assert_eq!(decompose(&r.support, Basis::S, false).unwrap(), p);
        }
    }
}
