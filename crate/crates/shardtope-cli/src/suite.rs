//! The checks behind `verify all`, one line each.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use shardtope::basis::{self, build_matrix, Basis, MatrixKind};
use shardtope::linalg::{identity, mat_mul};
use shardtope::matroid::{self, verify_prop72};
use shardtope::polytope::{self, chamber_partition, facet_directions, FanFrame, RayKey};
use shardtope::quotientope::{
    class_partition, default_forcing_function, quotient_rays, quotientope, reference_associahedron, verify_cor50,
    verify_prop100, Reference,
};
use shardtope::rat::fmt_rat;
use shardtope::shards::{
    decompose_matching_pair, enumerate_matchings, minimal_arc_zonotope_check, shard_polytope, shard_support,
    theorem57_instance, verify_prop48, PairDecomposition,
};
use shardtope::type_b::{
    b_quotient_rays, b_quotientope, b_regularity_experiment, b_shard_support, enumerate_b_arcs, enumerate_b_ideals,
    is_symmetrized, verify_cor131, verify_prop130, BArcIdeal,
};
use shardtope::volume::{shard_mixed_volume, shard_volume};
use shardtope::weak_order::{
    cambrian_ideal, close_upward, congruence_classes, enumerate_arc_ideals, enumerate_arcs, sylvester_ideal, ArcIdeal,
};
use shardtope::Error;

use crate::io::Kind;

/// Largest sizes `verify all` accepts.
pub const MAX_VERIFY_A: usize = 5;
pub const MAX_VERIFY_B: usize = 3;
/// Up to this size every ideal is checked; above it a seeded sample.
const FULL_SWEEP_A: usize = 4;

pub struct Line {
    pub name: &'static str,
    pub ok: Option<bool>,
    pub detail: String,
}

impl Line {
    fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Line {
        Line { name, ok: Some(ok), detail: detail.into() }
    }

    fn info(name: &'static str, detail: impl Into<String>) -> Line {
        Line { name, ok: None, detail: detail.into() }
    }

    fn failed(name: &'static str, e: impl std::fmt::Display) -> Line {
        Line::check(name, false, format!("error: {e}"))
    }

    pub fn render(&self) -> String {
        let tag = match self.ok {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

type Check = Box<dyn Fn() -> Line + Send + Sync>;

pub fn run(kind: Kind, n: usize, seed: u64, samples: usize) -> Result<Vec<Line>, Error> {
    let checks: Vec<Check> = match kind {
        Kind::A => {
            if !(2..=MAX_VERIFY_A).contains(&n) {
                return Err(Error::SizeCap(format!("verify all --type A needs 2 <= n <= {MAX_VERIFY_A}")));
            }
            a_checks(n, seed, samples)
        }
        Kind::B => {
            if !(1..=MAX_VERIFY_B).contains(&n) {
                return Err(Error::SizeCap(format!("verify all --type B needs 1 <= n <= {MAX_VERIFY_B}")));
            }
            b_checks(n)
        }
    };
    let mut lines: Vec<Line> = checks.par_iter().map(|c| c()).collect();
    lines.sort_by_key(|l| l.name);
    Ok(lines)
}

fn count_line(name: &'static str, what: &str, bad: Vec<String>, total: usize) -> Line {
    match bad.first() {
        None => Line::check(name, true, format!("{total} {what}")),
        Some(first) => Line::check(name, false, format!("{} of {total} {what} fail, first {first}", bad.len())),
    }
}

/// All ideals up to the sweep size, otherwise `samples` ideals generated by
/// random arc sets.
fn ideals(n: usize, seed: u64, samples: usize) -> Vec<ArcIdeal> {
    if n <= FULL_SWEEP_A {
        return enumerate_arc_ideals(n);
    }
    let arcs = enumerate_arcs(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ArcIdeal> = vec![ArcIdeal::empty(n), ArcIdeal::full(n), sylvester_ideal(n)];
    while out.len() < samples.max(3) {
        let k = rng.gen_range(1..=3);
        let seed_arcs: Vec<_> = arcs.choose_multiple(&mut rng, k).copied().collect();
        out.push(close_upward(seed_arcs, n));
    }
    out
}

fn a_checks(n: usize, seed: u64, samples: usize) -> Vec<Check> {
    let mut v: Vec<Check> = Vec::new();
    v.push(Box::new(move || {
        let got = enumerate_arcs(n).len();
        let want = (1usize << n) - n - 1;
        Line::check("arcs.count", got == want, format!("{got} arcs, expected {want}"))
    }));
    v.push(Box::new(move || {
        let all = ideals(n, seed, samples);
        let bad: Vec<String> = all
            .par_iter()
            .filter(|i| !matches!(verify_cor50(i), Ok(true)))
            .map(|i| format!("{{{}}}", i.to_lines().trim().replace('\n', " ")))
            .collect();
        count_line("fan.partition", "ideals", bad, all.len())
    }));
    v.push(Box::new(move || {
        let all = ideals(n, seed, samples);
        let bad: Vec<String> = all
            .par_iter()
            .filter(|i| {
                let rays: BTreeSet<RayKey> = quotient_rays(i).into_iter().map(RayKey::set).collect();
                let facets = quotientope(i).and_then(|s| facet_directions(&s));
                !matches!(facets, Ok(ref f) if f.iter().copied().collect::<BTreeSet<_>>() == rays)
            })
            .map(|i| format!("{{{}}}", i.to_lines().trim().replace('\n', " ")))
            .collect();
        count_line("fan.rays", "ideals", bad, all.len())
    }));
    v.push(Box::new(move || {
        let refs: Vec<Reference> =
            std::iter::once(Reference::Loday(n)).chain(enumerate_arcs(n).into_iter().map(Reference::Hl)).collect();
        let bad: Vec<String> = refs
            .par_iter()
            .filter(|r| {
                let ideal = match r {
                    Reference::Loday(n) => sylvester_ideal(*n),
                    Reference::Hl(x) => cambrian_ideal(x),
                };
                let built = quotientope(&ideal)
                    .and_then(|s| polytope::vertices_from_support(&s))
                    .map(|p| p.translate(&r.translation()));
                !matches!((built, reference_associahedron(r)), (Ok(a), Ok(b)) if a == b)
            })
            .map(|r| format!("{r:?}"))
            .collect();
        count_line("associahedra", "references", bad, refs.len())
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_arcs(n);
        let bad: Vec<String> = arcs.par_iter().filter(|x| !verify_prop48(x).ok()).map(|x| x.to_string()).collect();
        count_line("shards.walls", "arcs", bad, arcs.len())
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_arcs(n);
        let bad: Vec<String> = arcs
            .par_iter()
            .filter(|x| {
                let g = matroid::shard_graph(x);
                let beta_ok = matches!(matroid::MatroidView::cycle(&g), Ok(m) if matroid::beta(&m.contract(g.loops())) == 1)
                    && (g.loops() != 0 || matroid::is_series_parallel(&g));
                !(verify_prop72(x) && beta_ok && matches!(matroid::shard_abd(x), Ok(c) if Ok(c.clone()) == matroid::shard_unit_y(x)))
            })
            .map(|x| x.to_string())
            .collect();
        count_line("matroids", "arcs", bad, arcs.len())
    }));
    v.push(Box::new(move || {
        let inverse = |a: MatrixKind, b: MatrixKind| -> bool {
            match (build_matrix(a, n), build_matrix(b, n)) {
                (Ok(x), Ok(y)) => mat_mul(&x, &y) == identity(x.len()),
                _ => false,
            }
        };
        let ys = inverse(MatrixKind::SOfY, MatrixKind::YOfS);
        let zs = inverse(MatrixKind::SOfZ, MatrixKind::ZOfS);
        Line::check("basis.inverses", ys && zs, format!("y: {ys}, z: {zs}"))
    }));
    v.push(Box::new(move || {
        let perm = polytope::permutahedron_support(FanFrame::A(n));
        match basis::decompose(&perm, Basis::S, true) {
            Ok(c) => {
                let min = c.to_dense().into_iter().min().unwrap_or_default();
                Line::check("basis.permutahedron", c == basis::permutahedron_s(n), format!("smallest coefficient {}", fmt_rat(&min)))
            }
            Err(e) => Line::failed("basis.permutahedron", e),
        }
    }));
    v.push(Box::new(move || {
        let arcs: Vec<_> = enumerate_arcs(n).into_iter().filter(|x| x.b - x.a == n - 1).collect();
        let bad: Vec<String> = arcs
            .par_iter()
            .filter(|x| shard_volume(x) != polytope::volume(&shard_polytope(**x), FanFrame::A(n)))
            .map(|x| x.to_string())
            .collect();
        count_line("volume.shards", "full arcs", bad, arcs.len())
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_arcs(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let tuples: Vec<Vec<_>> =
            (0..samples).map(|_| (0..n - 1).map(|_| *arcs.choose(&mut rng).unwrap()).collect()).collect();
        let bad: Vec<String> = tuples
            .par_iter()
            .filter(|t| {
                let parts: Vec<_> = t.iter().map(|x| shard_support(*x)).collect();
                !matches!((shard_mixed_volume(t), polytope::mixed_volume_oracle(&parts)), (Ok(a), Ok(b)) if a == b)
            })
            .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        count_line("volume.mixed", "sampled tuples", bad, tuples.len())
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_arcs(n);
        let bad: Vec<String> = arcs
            .par_iter()
            .filter(|x| polytope::summand_space_dim(&shard_support(**x)) != 1)
            .map(|x| x.to_string())
            .collect();
        let perm = polytope::summand_space_dim(&polytope::permutahedron_support(FanFrame::A(n)));
        let want = (1usize << n) - n - 1;
        let mut line = count_line("indecomposable", "arcs", bad, arcs.len());
        if perm != want {
            line = Line::check("indecomposable", false, format!("permutahedron summand space {perm}, expected {want}"));
        }
        line
    }));
    v.push(Box::new(move || {
        let cases: Vec<_> = enumerate_arcs(n).into_iter().flat_map(|x| (x.a + 1..x.b).map(move |c| (x, c))).collect();
        let mut bad: Vec<String> = cases
            .par_iter()
            .filter(|(x, c)| !matches!(theorem57_instance(x, *c), Ok((l, r)) if l == r))
            .map(|(x, c)| format!("{x} at {c}"))
            .collect();
        if !matches!(minimal_arc_zonotope_check(n), Ok(true)) {
            bad.push("zonotope identity".into());
        }
        count_line("identities", "instances", bad, cases.len() + 1)
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_arcs(n);
        let bad: Vec<String> = arcs
            .par_iter()
            .filter(|x| {
                let ms = enumerate_matchings(**x);
                ms.iter().enumerate().any(|(i, m1)| {
                    ms[i + 1..].iter().any(|m2| match decompose_matching_pair(**x, m1, m2) {
                        Ok(PairDecomposition::Pair(m3, m4)) => {
                            let mut u: Vec<usize> = m1.elems.iter().chain(&m2.elems).copied().collect();
                            let mut w: Vec<usize> = m3.elems.iter().chain(&m4.elems).copied().collect();
                            u.sort_unstable();
                            w.sort_unstable();
                            u != w
                        }
                        Ok(PairDecomposition::Special { .. }) => false,
                        Err(_) => true,
                    })
                })
            })
            .map(|x| x.to_string())
            .collect();
        count_line("matching.pairs", "arcs", bad, arcs.len())
    }));
    v.push(Box::new(move || {
        let f = default_forcing_function(n);
        let all = ideals(n, seed, samples);
        let bad: Vec<String> = all
            .par_iter()
            .filter(|i| {
                let same = polytope_partition(i, &f);
                !(matches!(verify_prop100(i, &f), Ok(true)) && same)
            })
            .map(|i| format!("{{{}}}", i.to_lines().trim().replace('\n', " ")))
            .collect();
        count_line("ps.quotientopes", "ideals", bad, all.len())
    }));
    v
}

fn polytope_partition(ideal: &ArcIdeal, f: &shardtope::quotientope::SubsetFn) -> bool {
    match shardtope::quotientope::ps_quotientope(ideal, f) {
        Ok(s) => chamber_partition(&s) == class_partition(&congruence_classes(ideal)),
        Err(_) => false,
    }
}

fn b_checks(n: usize) -> Vec<Check> {
    let mut v: Vec<Check> = Vec::new();
    v.push(Box::new(move || {
        let got = enumerate_b_arcs(n).len();
        let want = 3usize.pow(n as u32) - n - 1;
        Line::check("arcs.count", got == want, format!("{got} B-arcs, expected {want}"))
    }));
    v.push(Box::new(move || match enumerate_b_ideals(n) {
        Ok(all) => {
            let sym = all.iter().filter(|i| is_symmetrized(i)).count();
            Line::info("ideals.count", format!("{} ideals, {sym} symmetrized", all.len()))
        }
        Err(e) => Line::failed("ideals.count", e),
    }));
    v.push(Box::new(move || {
        let all = match enumerate_b_ideals(n) {
            Ok(a) => a,
            Err(e) => return Line::failed("fan.partition", e),
        };
        let bad: Vec<String> =
            all.par_iter().filter(|i| !matches!(verify_cor131(i), Ok(true))).map(b_ideal_text).collect();
        count_line("fan.partition", "ideals", bad, all.len())
    }));
    v.push(Box::new(move || {
        let all = match enumerate_b_ideals(n) {
            Ok(a) => a,
            Err(e) => return Line::failed("fan.rays", e),
        };
        let bad: Vec<String> = all
            .par_iter()
            .filter(|i| {
                let rays: BTreeSet<RayKey> = b_quotient_rays(i).into_iter().collect();
                let facets = b_quotientope(i).and_then(|s| facet_directions(&s));
                !matches!(facets, Ok(ref f) if f.iter().copied().collect::<BTreeSet<_>>() == rays)
            })
            .map(b_ideal_text)
            .collect();
        count_line("fan.rays", "ideals", bad, all.len())
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_b_arcs(n);
        let bad: Vec<String> = arcs.par_iter().filter(|x| !verify_prop130(x).ok()).map(|x| x.to_string()).collect();
        count_line("shards.walls", "B-arcs", bad, arcs.len())
    }));
    v.push(Box::new(move || {
        let arcs = enumerate_b_arcs(n);
        let bad: Vec<String> = arcs
            .par_iter()
            .filter(|x| polytope::summand_space_dim(&b_shard_support(x)) != 1)
            .map(|x| x.to_string())
            .collect();
        count_line("indecomposable", "B-arcs", bad, arcs.len())
    }));
    v.push(Box::new(move || match b_regularity_experiment(n) {
        Ok(s) => Line::info("regularity", serde_json::to_string(&s).unwrap_or_default()),
        Err(e) => Line::failed("regularity", e),
    }));
    v
}

fn b_ideal_text(i: &BArcIdeal) -> String {
    format!("{{{}}}", i.to_lines().trim().replace('\n', " "))
}
