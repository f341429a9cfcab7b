//! The thirteen acceptance criteria, run at full size with exact arithmetic.
//! Each prints one PASS/FAIL line; the test fails if any criterion does.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shardtope::basis::{self, build_matrix, minimal_polynomial, poly_mul, poly_pow, Basis, MatrixKind};
use shardtope::linalg::{identity, mat_mul};
use shardtope::matroid::{self, beta, is_series_parallel, shard_graph, verify_prop72, MatroidView};
use shardtope::polytope::{
    self, chamber_partition, facet_directions, mcmullen_check, mixed_volume_oracle, summand_space_dim,
    vertices_from_support, FanFrame, RayKey,
};
use shardtope::quotientope::{
    class_partition, default_forcing_function, ps_quotientope, quotient_rays, quotientope, reference_associahedron,
    validate_forcing_dominant, verify_cor50, verify_prop100, Reference,
};
use shardtope::rat::{fmt_rat, rat};
use shardtope::shards::{
    decompose_matching_pair, enumerate_matchings, minimal_arc_zonotope_check, shard_polytope, shard_support,
    theorem57_instance, verify_prop48, Matching, PairDecomposition,
};
use shardtope::type_b::{
    b_shard_support, enumerate_b_arcs, enumerate_b_ideals, is_symmetrized, verify_cor131, verify_prop130,
};
use shardtope::volume::{shard_mixed_volume, shard_volume};
use shardtope::weak_order::{cambrian_ideal, congruence_classes, enumerate_arc_ideals, enumerate_arcs, sylvester_ideal, Arc};
use shardtope::{bits, Rat};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Collects failure descriptions, keeping the first few.
#[derive(Default)]
struct Misses {
    count: usize,
    first: Vec<String>,
}

impl Misses {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.count += 1;
            if self.first.len() < 3 {
                self.first.push(what());
            }
        }
    }

    fn outcome(self, summary: String) -> Outcome {
        if self.count == 0 {
            outcome(true, summary)
        } else {
            outcome(false, format!("{summary}; {} failures, e.g. {}", self.count, self.first.join("; ")))
        }
    }
}

fn counting() -> Outcome {
    let mut m = Misses::default();
    for n in 1..=10 {
        let got = enumerate_arcs(n).len();
        m.check(got == (1 << n) - n - 1, || format!("|A_{n}| = {got}"));
    }
    for n in 1..=6 {
        let got = enumerate_b_arcs(n).len();
        m.check(got == 3usize.pow(n as u32) - n - 1, || format!("|A^B_{n}| = {got}"));
    }
    m.outcome("arc counts for n <= 10, B-arc counts for n <= 6".into())
}

fn census() -> Outcome {
    let mut m = Misses::default();
    let mut parts = Vec::new();
    for (n, total, sym) in [(2, 19, 12), (3, 8368, 1370)] {
        let all = enumerate_b_ideals(n).unwrap();
        let s = all.iter().filter(|i| is_symmetrized(i)).count();
        m.check(all.len() == total && s == sym, || format!("n={n}: {} ideals, {s} symmetrized", all.len()));
        parts.push(format!("n={n}: {}/{s}", all.len()));
    }
    m.outcome(parts.join(", "))
}

fn fan_type_a() -> Outcome {
    let mut m = Misses::default();
    let mut total = 0;
    for n in 1..=4 {
        for ideal in enumerate_arc_ideals(n) {
            total += 1;
            m.check(verify_cor50(&ideal).unwrap(), || format!("partition {}", ideal.to_lines().replace('\n', " ")));
            let rays: BTreeSet<RayKey> = quotient_rays(&ideal).into_iter().map(RayKey::set).collect();
            let facets: BTreeSet<RayKey> = facet_directions(&quotientope(&ideal).unwrap()).unwrap().into_iter().collect();
            m.check(rays == facets, || format!("rays {}", ideal.to_lines().replace('\n', " ")));
        }
    }
    m.outcome(format!("{total} ideals with n <= 4"))
}

fn fan_type_b() -> Outcome {
    let mut m = Misses::default();
    let chambers = FanFrame::B(3).chambers().words.len();
    m.check(chambers == 48, || format!("{chambers} chambers"));
    let all = enumerate_b_ideals(3).unwrap();
    for ideal in &all {
        m.check(verify_cor131(ideal).unwrap(), || ideal.to_lines().replace('\n', " "));
    }
    m.outcome(format!("{} ideals over {chambers} chambers", all.len()))
}

fn binom2(k: usize) -> Rat {
    rat((k * (k - 1) / 2) as i64)
}

fn associahedra() -> Outcome {
    let mut m = Misses::default();
    for n in 1..=6 {
        let s = quotientope(&sylvester_ideal(n)).unwrap();
        let shifted = vertices_from_support(&s).unwrap().translate(&(1..=n as i64).map(rat).collect::<Vec<_>>());
        let reference = reference_associahedron(&Reference::Loday(n)).unwrap();
        m.check(shifted == reference, || format!("Loday vertices, n={n}"));
        // min over the polytope of Σ_{i<=k<=j} x_k is binom(j-i+2, 2)
        for i in 1..=n {
            for j in i..=n {
                let low = shifted.vertices.iter().map(|v| v[i - 1..j].iter().sum::<Rat>()).min().unwrap();
                m.check(low == binom2(j - i + 2), || format!("n={n}, [{i},{j}] has {}", fmt_rat(&low)));
            }
        }
        // those intervals are the facets
        if n >= 2 {
            let full = bits::closed(1, n);
            let want: BTreeSet<RayKey> = (1..=n)
                .flat_map(|i| (i..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| j - i + 1 < n)
                .map(|(i, j)| RayKey::set(full & !bits::closed(i, j)))
                .collect();
            let got: BTreeSet<RayKey> = facet_directions(&s).unwrap().into_iter().collect();
            m.check(got == want, || format!("facets of the n={n} associahedron"));
        }
    }
    let mut hl = 0;
    for n in 2..=4 {
        for x in enumerate_arcs(n) {
            hl += 1;
            let r = Reference::Hl(x);
            let built = vertices_from_support(&quotientope(&cambrian_ideal(&x)).unwrap()).unwrap().translate(&r.translation());
            m.check(built == reference_associahedron(&r).unwrap(), || format!("associahedron of {x}"));
        }
    }
    m.outcome(format!("Loday for n <= 6, {hl} arc associahedra for n <= 4"))
}

fn basis_algebra() -> Outcome {
    let mut m = Misses::default();
    for n in 2..=5 {
        let inv = |a, b| {
            let (x, y) = (build_matrix(a, n).unwrap(), build_matrix(b, n).unwrap());
            mat_mul(&x, &y) == identity(x.len())
        };
        m.check(inv(MatrixKind::SOfY, MatrixKind::YOfS), || format!("M_s^y M_y^s at n={n}"));
        m.check(inv(MatrixKind::SOfZ, MatrixKind::ZOfS), || format!("M_s^z M_z^s at n={n}"));
    }
    let mz = build_matrix(MatrixKind::ZOfS, 4).unwrap();
    let got = minimal_polynomial(&mz);
    let x_minus_1 = vec![rat(-1), rat(1)];
    let quad = poly_mul(&[rat(1), rat(-3), rat(1)], &[rat(1), rat(-1), rat(1)]);
    let want = poly_mul(&poly_pow(&x_minus_1, 7), &quad);
    m.check(got == want, || {
        let five = if got == poly_mul(&poly_pow(&x_minus_1, 5), &quad) { " = (x-1)^5(x^2-3x+1)(x^2-x+1)" } else { "" };
        format!("minimal polynomial of M_z^s at n=4 is {}{five}, expected {}", basis::fmt_poly(&got), basis::fmt_poly(&want))
    });
    for n in 2..=6 {
        let perm = polytope::permutahedron_support(FanFrame::A(n));
        let s = basis::decompose(&perm, Basis::S, true).unwrap();
        let closed = basis::CoeffVector::from_fn(Basis::S, n, |i| {
            let (a, b) = (bits::min(i).unwrap() as i64, bits::max(i).unwrap() as i64);
            rat((a - 2) * (n as i64 - b - 1))
        });
        m.check(s == closed, || format!("permutahedron coefficients at n={n}"));
        if n == 4 || n == 5 {
            m.check(s.to_dense().iter().any(Signed::is_negative), || format!("no negative coefficient at n={n}"));
        }
    }
    m.outcome("inverses for n <= 5, minimal polynomial at n=4, permutahedron for n <= 6".into())
}

fn matroid_bridge() -> Outcome {
    let mut m = Misses::default();
    let mut arcs = 0;
    for n in 2..=7 {
        for x in enumerate_arcs(n) {
            arcs += 1;
            m.check(verify_prop72(&x), || format!("bases of {x}"));
            let g = shard_graph(&x);
            let stripped = MatroidView::cycle(&g).unwrap().contract(g.loops());
            m.check(beta(&stripped) == 1, || format!("beta of {x}"));
            if g.loops() == 0 {
                m.check(is_series_parallel(&g), || format!("series-parallel {x}"));
            }
            if n <= 5 {
                m.check(matroid::shard_abd(&x).unwrap() == matroid::shard_unit_y(&x).unwrap(), || format!("decomposition of {x}"));
            }
        }
    }
    m.outcome(format!("{arcs} arcs with n <= 7"))
}

fn multiset(a: &Matching, b: &Matching) -> Vec<usize> {
    let mut u: Vec<usize> = a.elems.iter().chain(&b.elems).copied().collect();
    u.sort_unstable();
    u
}

fn identities() -> Outcome {
    let mut m = Misses::default();
    let (mut t57, mut pairs) = (0, 0);
    for n in 2..=5 {
        for x in enumerate_arcs(n) {
            for c in x.a + 1..x.b {
                t57 += 1;
                let (l, r) = theorem57_instance(&x, c).unwrap();
                m.check(l == r, || format!("{x} at {c}"));
            }
        }
        m.check(minimal_arc_zonotope_check(n).unwrap(), || format!("zonotope at n={n}"));
    }
    for n in 2..=6 {
        for x in enumerate_arcs(n) {
            let ms = enumerate_matchings(x);
            for (i, m1) in ms.iter().enumerate() {
                for m2 in &ms[i + 1..] {
                    pairs += 1;
                    let u = multiset(m1, m2);
                    let other = ms.iter().enumerate().any(|(k, a)| {
                        ms[k..].iter().any(|b| a != m1 && a != m2 && multiset(a, b) == u)
                    });
                    match decompose_matching_pair(x, m1, m2).unwrap() {
                        PairDecomposition::Pair(a, b) => {
                            m.check(other && multiset(&a, &b) == u && a != *m1 && a != *m2, || format!("pair in {x}"))
                        }
                        PairDecomposition::Special { head, tail, .. } => m.check(
                            !other
                                && [m1, m2].iter().all(|mm| mm.elems.starts_with(&head.elems) && mm.elems.ends_with(&tail.elems)),
                            || format!("tag in {x}"),
                        ),
                    }
                }
            }
        }
    }
    m.outcome(format!("{t57} instances of the shard identity, zonotopes for n <= 5, {pairs} matching pairs for n <= 6"))
}

fn volumes() -> Outcome {
    let mut m = Misses::default();
    for n in 2..=5 {
        for x in enumerate_arcs(n).into_iter().filter(|x| x.b - x.a == n - 1) {
            m.check(shard_volume(&x) == polytope::volume(&shard_polytope(x), FanFrame::A(n)), || format!("volume of {x}"));
        }
    }
    let arcs4 = enumerate_arcs(4);
    let supports: Vec<_> = arcs4.iter().map(|x| shard_support(*x)).collect();
    let mut triples = 0;
    for i in 0..arcs4.len() {
        for j in 0..arcs4.len() {
            for k in 0..arcs4.len() {
                triples += 1;
                let comb = shard_mixed_volume(&[arcs4[i], arcs4[j], arcs4[k]]).unwrap();
                let geo = mixed_volume_oracle(&[supports[i].clone(), supports[j].clone(), supports[k].clone()]).unwrap();
                m.check(comb == geo, || format!("{} {} {}", arcs4[i], arcs4[j], arcs4[k]));
            }
        }
    }
    let arcs5 = enumerate_arcs(5);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let q: Vec<Arc> = (0..4).map(|_| *arcs5.choose(&mut rng).unwrap()).collect();
        let parts: Vec<_> = q.iter().map(|x| shard_support(*x)).collect();
        m.check(shard_mixed_volume(&q).unwrap() == mixed_volume_oracle(&parts).unwrap(), || format!("{q:?}"));
    }
    m.outcome(format!("full arcs for n <= 5, {triples} triples at n=4, 200 quadruples at n=5"))
}

fn indecomposability() -> Outcome {
    let mut m = Misses::default();
    for n in 2..=5 {
        for x in enumerate_arcs(n) {
            let s = shard_support(x);
            m.check(summand_space_dim(&s) == 1, || format!("summands of {x}"));
            let v = vertices_from_support(&s).unwrap();
            let mut ab = vec![Rat::zero(); n];
            ab[x.a - 1] = Rat::one();
            ab[x.b - 1] = -Rat::one();
            m.check(mcmullen_check(&v, &vec![Rat::zero(); n], &ab, Some(FanFrame::A(n))).unwrap_or(false), || {
                format!("edge of {x}")
            });
        }
        let perm = summand_space_dim(&polytope::permutahedron_support(FanFrame::A(n)));
        m.check(perm == (1 << n) - n - 1, || format!("permutahedron at n={n} has {perm}"));
    }
    for n in 1..=3 {
        for b in enumerate_b_arcs(n) {
            m.check(summand_space_dim(&b_shard_support(&b)) == 1, || format!("summands of {b}"));
        }
    }
    m.outcome("shards for n <= 5, B-shards for n <= 3, permutahedra for n <= 5".into())
}

fn walls() -> Outcome {
    let mut m = Misses::default();
    for n in 2..=4 {
        for x in enumerate_arcs(n) {
            m.check(verify_prop48(&x).ok(), || x.to_string());
        }
    }
    for n in 1..=3 {
        for b in enumerate_b_arcs(n) {
            m.check(verify_prop130(&b).ok(), || b.to_string());
        }
    }
    m.outcome("arcs for n <= 4, B-arcs for n <= 3".into())
}

fn ps_quotientopes() -> Outcome {
    let mut m = Misses::default();
    let mut total = 0;
    for n in 2..=4 {
        let f = default_forcing_function(n);
        m.check(validate_forcing_dominant(&f, n), || format!("f at n={n}"));
        for ideal in enumerate_arc_ideals(n) {
            total += 1;
            m.check(verify_prop100(&ideal, &f).unwrap(), || format!("coefficients {}", ideal.to_lines().replace('\n', " ")));
            let s = ps_quotientope(&ideal, &f).unwrap();
            m.check(chamber_partition(&s) == class_partition(&congruence_classes(&ideal)), || {
                format!("fan {}", ideal.to_lines().replace('\n', " "))
            });
        }
    }
    m.outcome(format!("{total} ideals with n <= 4"))
}

/// The pictured polytopes, checked through their face counts.
fn pictured() -> Outcome {
    let mut m = Misses::default();
    let count = |s: &polytope::SupportVector| {
        let v = vertices_from_support(s).unwrap();
        (v.len(), polytope::facets(&v, Some(s.frame)).len())
    };
    let asso = count(&quotientope(&sylvester_ideal(4)).unwrap());
    m.check(asso == (14, 9), || format!("associahedron {asso:?}"));
    let perm = count(&polytope::permutahedron_support(FanFrame::A(4)));
    m.check(perm == (24, 14), || format!("permutahedron {perm:?}"));
    for x in enumerate_arcs(4) {
        let h = shardtope::shards::shard_polytope_facets(x);
        let v = shard_polytope(x);
        m.check(v.vertices.iter().all(|p| h.contains(p)), || format!("inequalities of {x}"));
        m.check(h.facets.len() == polytope::facets(&v, Some(FanFrame::A(4))).len(), || format!("facets of {x}"));
    }
    m.outcome("face counts of the pictured polytopes at n=4".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("counting", counting),
        ("congruence census", census),
        ("fan realization, type A", fan_type_a),
        ("fan realization, type B", fan_type_b),
        ("associahedra", associahedra),
        ("basis algebra", basis_algebra),
        ("matroid bridge", matroid_bridge),
        ("identities", identities),
        ("volumes", volumes),
        ("indecomposability", indecomposability),
        ("wall containment", walls),
        ("height function quotientopes", ps_quotientopes),
        ("pictured polytopes", pictured),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {} ({:.1}s)", k + 1, o.detail, t.elapsed().as_secs_f64());
        if !o.ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
