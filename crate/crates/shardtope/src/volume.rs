//! Mixed volumes of simplex faces and of shard polytopes.

use num_traits::Zero;

use crate::basis::{self, subset_of_arc, subsets_ge2};
use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use crate::weak_order::Arc;

fn factorial(d: usize) -> Rat {
    rat((1..=d as i64).product())
}

/// Hall-type condition: any `k` of the sets cover at least `k + 1` points.
pub fn dragon_marriage(js: &[Mask]) -> bool {
    let k = js.len();
    (1u32..1 << k).all(|sub| {
        let union = (0..k).filter(|&i| sub >> i & 1 == 1).fold(0, |u, i| u | js[i]);
        bits::card(union) > sub.count_ones() as usize
    })
}

/// For every `j ∈ [n]`, a system of distinct representatives avoiding `j`.
pub fn dragon_marriage_sdr(js: &[Mask], n: usize) -> bool {
    (1..=n).all(|j| {
        let allowed: Vec<Mask> = js.iter().map(|&m| m & !bits::bit(j)).collect();
        has_sdr(&allowed, 0, 0)
    })
}

fn has_sdr(sets: &[Mask], i: usize, used: Mask) -> bool {
    i == sets.len() || bits::elems(sets[i] & !used).any(|x| has_sdr(sets, i + 1, used | bits::bit(x)))
}

/// A choice of pairs `{a_i, b_i} ⊆ J_i` forming a spanning tree of `K_n`.
pub fn dragon_marriage_tree(js: &[Mask], n: usize) -> bool {
    fn go(js: &[Mask], i: usize, comp: &mut Vec<usize>) -> bool {
        if i == js.len() {
            return true;
        }
        let el: Vec<usize> = bits::elems(js[i]).collect();
        for (p, &x) in el.iter().enumerate() {
            for &y in &el[p + 1..] {
                let (cx, cy) = (comp[x], comp[y]);
                if cx == cy {
                    continue;
                }
                let saved = comp.clone();
                for c in comp.iter_mut() {
                    if *c == cy {
                        *c = cx;
                    }
                }
                if go(js, i + 1, comp) {
                    return true;
                }
                *comp = saved;
            }
        }
        false
    }
    js.len() + 1 == n && go(js, 0, &mut (0..=n).collect())
}

/// `1/(n−1)!` under the dragon marriage condition, `0` otherwise.
pub fn simplex_mixed_volume(js: &[Mask]) -> Rat {
    if dragon_marriage(js) {
        rat(1) / factorial(js.len())
    } else {
        Rat::zero()
    }
}

/// The sets `J` with `I ▷ J`, paired with `(−1)^{|J|_I}`.
fn admissible(alpha: &Arc) -> Vec<(Mask, i64)> {
    let i = subset_of_arc(alpha);
    subsets_ge2(alpha.n)
        .into_iter()
        .filter(|&j| basis::triangle(i, j))
        .map(|j| (j, if basis::weight(j, i) % 2 == 0 { 1 } else { -1 }))
        .collect()
}

/// Signed count of admissible collections satisfying the dragon marriage
/// condition, built one set at a time with Hall pruning.
fn signed_count(choices: &[Vec<(Mask, i64)>], i: usize, chosen: &mut Vec<Mask>) -> i64 {
    if i == choices.len() {
        return 1;
    }
    let mut total = 0;
    for &(j, s) in &choices[i] {
        chosen.push(j);
        let k = chosen.len();
        let ok = (0u32..1 << (k - 1)).all(|sub| {
            let union = (0..k - 1).filter(|&t| sub >> t & 1 == 1).fold(j, |u, t| u | chosen[t]);
            bits::card(union) > sub.count_ones() as usize + 1
        });
        if ok {
            total += s * signed_count(choices, i + 1, chosen);
        }
        chosen.pop();
    }
    total
}

/// Mixed volume of `SP(α_1), …, SP(α_{n−1})` as a signed count of dragon
/// marriages among the simplex faces of their decompositions.
pub fn shard_mixed_volume(arcs: &[Arc]) -> Result<Rat> {
    let n = arcs.first().ok_or_else(|| Error::Precondition("no arcs".into()))?.n;
    if arcs.len() + 1 != n || arcs.iter().any(|a| a.n != n) {
        return Err(Error::Precondition(format!("need {} arcs on [{n}]", n.saturating_sub(1))));
    }
    let choices: Vec<Vec<(Mask, i64)>> = arcs.iter().map(admissible).collect();
    Ok(rat(signed_count(&choices, 0, &mut Vec::new())) / factorial(n - 1))
}

/// `Vol(SP(α))`, zero unless `α` spans `[1, n]`.
pub fn shard_volume(alpha: &Arc) -> Rat {
    if alpha.n < 2 || alpha.b - alpha.a != alpha.n - 1 {
        return Rat::zero();
    }
    shard_mixed_volume(&vec![*alpha; alpha.n - 1]).expect("arity matches")
}
