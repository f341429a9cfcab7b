//! Small subsets of `1..=31` packed into a `u32`, bit `i` for element `i`.

pub type Mask = u32;

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

/// Elements of the closed interval `[lo, hi]`.
#[inline]
pub fn closed(lo: usize, hi: usize) -> Mask {
    if lo > hi {
        return 0;
    }
    (((1u64 << (hi + 1)) - 1) as Mask) & !((1 << lo) - 1)
}

/// Elements of the open interval `]lo, hi[`.
#[inline]
pub fn open(lo: usize, hi: usize) -> Mask {
    if hi <= lo + 1 {
        return 0;
    }
    closed(lo + 1, hi - 1)
}

#[inline]
pub fn has(m: Mask, i: usize) -> bool {
    m >> i & 1 == 1
}

pub fn elems(m: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| has(m, i))
}

pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Mask {
    it.into_iter().fold(0, |m, i| m | bit(i))
}

#[inline]
pub fn card(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn min(m: Mask) -> Option<usize> {
    (m != 0).then(|| m.trailing_zeros() as usize)
}

pub fn max(m: Mask) -> Option<usize> {
    (m != 0).then(|| 31 - m.leading_zeros() as usize)
}

/// All subsets of `[n]` with at least `k` elements, as masks.
pub fn subsets_at_least(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    (0..(1u32 << n)).map(|m| m << 1).filter(move |&m| card(m) >= k)
}

/// Comma list, e.g. `"1,3,4"`.
pub fn key(m: Mask) -> String {
    elems(m).map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx.max(ry)] = rx.min(ry);
        }
    }

    /// Block label per element, numbered by first appearance.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out.push(label[r]);
        }
        out
    }
}
