mod io;
mod suite;
mod svg;

use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use shardtope::basis::{self, build_matrix, fmt_poly, minimal_polynomial, Basis, CoeffVector, MatrixKind};
use shardtope::matroid;
use shardtope::polytope::{self, chamber_partition, facet_directions, RayKey};
use shardtope::quotientope::{
    class_partition, default_forcing_function, ps_quotientope, quotient_rays, quotientope_weighted,
    span_power_function, validate_forcing_dominant, verify_prop100,
};
use shardtope::rat::fmt_rat;
use shardtope::shards::{
    self, enumerate_matchings, shard_polytope, shard_polytope_facets, symmetry_check, symmetry_image, Symmetry,
};
use shardtope::type_b::{
    b_congruence_classes, b_forces, b_quotient_rays, b_quotientope_weighted, b_regularity_check,
    b_regularity_experiment, b_shard_polytope, enumerate_b_arcs, enumerate_b_ideals, signed,
};
use shardtope::volume::{shard_mixed_volume, shard_volume};
use shardtope::weak_order::{
    congruence_classes, enumerate_arc_ideals, enumerate_arcs, forces, regularity_check, Arc,
};
use shardtope::{Error, Rat};

use io::{AnyArc, AnyIdeal, Kind};

/// Exact shard polytopes, quotientopes and Minkowski bases.
#[derive(Parser)]
#[command(name = "shardtope", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate arcs or their forcing order.
    Arcs {
        #[arg(value_enum)]
        action: ArcsAction,
        #[command(flatten)]
        size: Size,
    },
    /// Close, enumerate and inspect arc ideals.
    Ideal {
        #[arg(value_enum)]
        action: IdealAction,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "type", value_enum)]
        kind: Option<Kind>,
        /// Ideal file or a named ideal such as sylvester(4).
        #[arg(long)]
        ideal: Option<String>,
        /// Generating arcs for `close`.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        arcs: Vec<String>,
        /// Print only the number of ideals.
        #[arg(long)]
        count: bool,
    },
    /// Shard polytope of a single arc.
    Shard {
        #[arg(value_enum)]
        action: ShardAction,
        #[arg(long, allow_hyphen_values = true)]
        arc: String,
        #[command(flatten)]
        size: Size,
    },
    /// Quotientopes of arc ideals.
    Quotientope {
        #[arg(value_enum)]
        action: QuotAction,
        #[arg(long)]
        ideal: String,
        /// JSON object from arc text to a positive rational.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long = "type", value_enum)]
        kind: Option<Kind>,
    },
    /// Shard, simplex and height coordinates.
    Basis {
        #[command(subcommand)]
        action: BasisCmd,
    },
    /// Quotientope from a forcing dominant height function.
    PsQuotientope {
        #[arg(long)]
        ideal: String,
        /// JSON file {"n", "values": {"1,3": "p/q"}}, or `default` or `span-power`.
        #[arg(long)]
        f: String,
        /// Also check the shard coefficients and the normal fan.
        #[arg(long)]
        check: bool,
    },
    /// Volumes and mixed volumes.
    Volume {
        #[arg(value_enum)]
        action: VolumeAction,
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        arcs: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        polytope: Option<String>,
    },
    /// Run the verification suite at one size.
    Verify {
        #[arg(value_enum)]
        action: VerifyAction,
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_enum, default_value = "a")]
        kind: Kind,
        /// Seed for the sampled parts of the suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled tuples and ideals.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Static SVG pictures.
    Render {
        #[arg(value_enum)]
        action: RenderAction,
        /// An arc for `arc`, a polytope file for `polytope2d`.
        #[arg(long = "in", allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        svg: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "type", value_enum, default_value = "a")]
        kind: Kind,
    },
}

#[derive(Args)]
struct Size {
    #[arg(long)]
    n: usize,
    #[arg(long = "type", value_enum, default_value = "a")]
    kind: Kind,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArcsAction {
    List,
    Poset,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealAction {
    Close,
    Enumerate,
    Classes,
    Regularity,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShardAction {
    Poly,
    Facets,
    Matchings,
    Matroid,
    Symmetry,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuotAction {
    Build,
    Verify,
    Rays,
}

#[derive(Clone, Copy, ValueEnum)]
enum VolumeAction {
    Shard,
    Mixed,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyAction {
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderAction {
    Arc,
    Polytope2d,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisName {
    S,
    Y,
    Z,
}

impl From<BasisName> for Basis {
    fn from(b: BasisName) -> Basis {
        match b {
            BasisName::S => Basis::S,
            BasisName::Y => Basis::Y,
            BasisName::Z => Basis::Z,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "y_of_s")]
    YOfS,
    #[value(name = "s_of_y")]
    SOfY,
    #[value(name = "z_of_s")]
    ZOfS,
    #[value(name = "s_of_z")]
    SOfZ,
}

#[derive(Subcommand)]
enum BasisCmd {
    /// Rewrite a coefficient vector file in another basis.
    Convert {
        #[arg(long, value_enum)]
        from: BasisName,
        #[arg(long, value_enum)]
        to: BasisName,
        #[arg(long = "in")]
        input: String,
    },
    /// A conversion matrix in canonical subset order.
    Matrix {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
        /// Also print the minimal polynomial.
        #[arg(long)]
        minpoly: bool,
    },
    /// Coefficients of a deformed permutahedron, caged first if needed.
    Decompose {
        #[arg(long)]
        polytope: String,
        #[arg(long, value_enum)]
        to: BasisName,
    },
}

/// A check ran and failed; reported with exit code 1.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for Failed {}

const MAX_LIST_A: usize = 20;
const MAX_LIST_B: usize = 12;
const MAX_IDEALS_A: usize = 5;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string().trim() }));
            return ExitCode::from(2);
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Failed>().is_some() {
        return 1;
    }
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::SizeCap(_)) => 3,
        _ => 2,
    }
}

fn need<T>(v: Option<T>, flag: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("missing --{flag}")).into())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn cap(n: usize, max: usize, what: &str) -> anyhow::Result<()> {
    if n > max {
        bail!(Error::SizeCap(format!("{what} needs n <= {max}")));
    }
    Ok(())
}

fn run(cmd: Cmd) -> anyhow::Result<String> {
    match cmd {
        Cmd::Arcs { action, size } => arcs_cmd(action, size),
        Cmd::Ideal { action, n, kind, ideal, arcs, count } => ideal_cmd(action, n, kind, ideal, &arcs, count),
        Cmd::Shard { action, arc, size } => shard_cmd(action, &arc, size),
        Cmd::Quotientope { action, ideal, weights, kind } => quotientope_cmd(action, &ideal, weights, kind),
        Cmd::Basis { action } => basis_cmd(action),
        Cmd::PsQuotientope { ideal, f, check } => ps_cmd(&ideal, &f, check),
        Cmd::Volume { action, arcs, n, polytope } => volume_cmd(action, &arcs, n, polytope),
        Cmd::Verify { action: VerifyAction::All, n, kind, seed, samples } => {
            let lines = suite::run(kind, n, seed, samples)?;
            let mut out = format!("seed {seed}\n");
            for l in &lines {
                out += &l.render();
                out.push('\n');
            }
            if lines.iter().any(|l| l.ok == Some(false)) {
                print!("{out}");
                bail!(Failed("see the FAIL lines".into()));
            }
            Ok(out)
        }
        Cmd::Render { action, input, svg, n, kind } => {
            let pic = match action {
                RenderAction::Arc => {
                    let n = need(n, "n")?;
                    match io::parse_arc(kind, &input, n)? {
                        AnyArc::A(x) => svg::arcs(n, &[x], &(1..=n).map(|i| i.to_string()).collect::<Vec<_>>()),
                        AnyArc::B(b) => {
                            let labels: Vec<String> = (1..=2 * n).map(|p| signed(n, p).to_string()).collect();
                            let both = b.arcs();
                            let drawn = if both[0] == both[1] { &both[..1] } else { &both[..] };
                            svg::arcs(2 * n, drawn, &labels)
                        }
                    }
                }
                RenderAction::Polytope2d => svg::polygon(&io::load_polytope(&input)?.vertices.vertices)?,
            };
            fs::write(&svg, pic).with_context(|| format!("writing {svg}"))?;
            Ok(String::new())
        }
    }
}

fn arcs_cmd(action: ArcsAction, size: Size) -> anyhow::Result<String> {
    let n = size.n;
    match (action, size.kind) {
        (ArcsAction::List, Kind::A) => {
            cap(n, MAX_LIST_A, "arcs list")?;
            Ok(lines(enumerate_arcs(n)))
        }
        (ArcsAction::List, Kind::B) => {
            cap(n, MAX_LIST_B, "arcs list --type B")?;
            Ok(lines(enumerate_b_arcs(n)))
        }
        (ArcsAction::Poset, Kind::A) => {
            cap(n, polytope::MAX_N_A, "arcs poset")?;
            Ok(covers(&enumerate_arcs(n), forces))
        }
        (ArcsAction::Poset, Kind::B) => {
            cap(n, polytope::MAX_N_B, "arcs poset --type B")?;
            Ok(covers(&enumerate_b_arcs(n), b_forces))
        }
    }
}

/// Cover relations `x y` of the forcing order, `x` forcing `y`.
fn covers<T: PartialEq + std::fmt::Display>(all: &[T], f: fn(&T, &T) -> bool) -> String {
    let mut out = String::new();
    for x in all {
        for y in all {
            if x != y && f(x, y) && !all.iter().any(|z| z != x && z != y && f(x, z) && f(z, y)) {
                out += &format!("{x} {y}\n");
            }
        }
    }
    out
}

fn ideal_arcs(i: &AnyIdeal) -> Vec<String> {
    match i {
        AnyIdeal::A(i) => i.arcs.iter().map(|x| x.to_string()).collect(),
        AnyIdeal::B(i) => i.barcs.iter().map(|x| x.to_string()).collect(),
    }
}

fn ideal_cmd(
    action: IdealAction,
    n: Option<usize>,
    kind: Option<Kind>,
    ideal: Option<String>,
    arcs: &[String],
    count: bool,
) -> anyhow::Result<String> {
    let k = kind.unwrap_or(Kind::A);
    match action {
        IdealAction::Close => {
            let n = need(n, "n")?;
            let seed: Vec<AnyArc> = arcs.iter().map(|s| io::parse_arc(k, s, n)).collect::<anyhow::Result<_>>()?;
            Ok(io::close(k, n, &seed).to_text())
        }
        IdealAction::Enumerate => {
            let n = need(n, "n")?;
            let all: Vec<AnyIdeal> = match k {
                Kind::A => {
                    cap(n, MAX_IDEALS_A, "ideal enumerate")?;
                    enumerate_arc_ideals(n).into_iter().map(AnyIdeal::A).collect()
                }
                Kind::B => enumerate_b_ideals(n)?.into_iter().map(AnyIdeal::B).collect(),
            };
            if count {
                return Ok(format!("{}\n", all.len()));
            }
            let ideals: Vec<Value> = all.iter().map(|i| json!(ideal_arcs(i))).collect();
            Ok(pretty(&json!({ "n": n, "type": k.name(), "count": all.len(), "ideals": ideals })))
        }
        IdealAction::Classes => {
            let ideal = io::load_ideal(&need(ideal, "ideal")?, kind)?;
            let (mins, blocks): (Vec<String>, Vec<Vec<String>>) = match &ideal {
                AnyIdeal::A(i) => {
                    cap(i.n, polytope::MAX_N_A, "ideal classes")?;
                    let p = congruence_classes(i);
                    let blocks = p.blocks().iter().map(|b| b.iter().map(|&j| p.perms[j].to_string()).collect()).collect();
                    (p.min_perms().iter().map(|x| x.to_string()).collect(), blocks)
                }
                AnyIdeal::B(i) => {
                    cap(i.n, polytope::MAX_N_B, "ideal classes --type B")?;
                    let p = b_congruence_classes(i);
                    let blocks = p.blocks().iter().map(|b| b.iter().map(|&j| p.perms[j].to_string()).collect()).collect();
                    (p.min_perms().iter().map(|x| x.to_string()).collect(), blocks)
                }
            };
            Ok(pretty(&json!({
                "n": ideal.n(),
                "type": ideal.kind().name(),
                "classes": mins.len(),
                "bottoms": mins,
                "blocks": blocks,
            })))
        }
        IdealAction::Regularity => match ideal {
            Some(spec) => match io::load_ideal(&spec, kind)? {
                AnyIdeal::A(i) => {
                    cap(i.n, polytope::MAX_N_A, "ideal regularity")?;
                    Ok(pretty(&serde_json::to_value(regularity_check(&i))?))
                }
                AnyIdeal::B(i) => {
                    cap(i.n, polytope::MAX_N_B, "ideal regularity --type B")?;
                    Ok(pretty(&serde_json::to_value(b_regularity_check(&i))?))
                }
            },
            None => {
                let n = need(n, "n")?;
                match k {
                    Kind::A => {
                        cap(n, MAX_IDEALS_A, "ideal regularity")?;
                        let reports: Vec<_> = enumerate_arc_ideals(n).iter().map(regularity_check).collect();
                        let regular = reports.iter().filter(|r| r.hasse_regular).count();
                        let crit = reports.iter().filter(|r| r.hm_criterion).count();
                        let agree = reports.iter().filter(|r| r.hasse_regular == r.hm_criterion).count();
                        Ok(pretty(&json!({ "ideals": reports.len(), "regular": regular, "hm_criterion": crit, "agree": agree })))
                    }
                    Kind::B => Ok(pretty(&serde_json::to_value(b_regularity_experiment(n)?)?)),
                }
            }
        },
    }
}

fn only_a(arc: AnyArc, what: &str) -> anyhow::Result<Arc> {
    match arc {
        AnyArc::A(x) => Ok(x),
        AnyArc::B(_) => bail!(Error::Precondition(format!("{what} is only available in type A"))),
    }
}

fn shard_cmd(action: ShardAction, spec: &str, size: Size) -> anyhow::Result<String> {
    let n = size.n;
    size.kind.frame(n).check_cap()?;
    let arc = io::parse_arc(size.kind, spec, n)?;
    match action {
        ShardAction::Poly => Ok(match arc {
            AnyArc::A(x) => pretty(&io::polytope_json(&shard_polytope(x), size.kind.frame(n))),
            AnyArc::B(b) => pretty(&io::polytope_json(&b_shard_polytope(&b), size.kind.frame(n))),
        }),
        ShardAction::Facets => {
            let h = shard_polytope_facets(only_a(arc, "shard facets")?);
            Ok(lines(h.equalities.iter().chain(&h.facets)))
        }
        ShardAction::Matchings => {
            let x = only_a(arc, "shard matchings")?;
            let p = x.as_pseudo();
            let fmt_chi = |m: &shards::Matching| m.chi(n).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            Ok(lines(enumerate_matchings(x).iter().map(|m| format!("{m}\t{}\t{}", m.dots(&p), fmt_chi(m)))))
        }
        ShardAction::Matroid => {
            let x = only_a(arc, "shard matroid")?;
            let g = matroid::shard_graph(&x);
            let m = matroid::MatroidView::cycle(&g)?;
            let loops: Vec<usize> = shardtope::bits::elems(g.loops()).collect();
            Ok(pretty(&json!({
                "graph": g.to_json(),
                "loops": loops,
                "bases": matroid::spanning_trees(&g)?.len(),
                "beta": matroid::beta(&m),
                "series_parallel": matroid::is_series_parallel(&g),
                "bases_match_matchings": matroid::verify_prop72(&x),
                "abd": matroid::shard_abd(&x)?.to_json(),
            })))
        }
        ShardAction::Symmetry => {
            let x = only_a(arc, "shard symmetry")?;
            let phi = symmetry_check(&x, Symmetry::Phi);
            let psi = symmetry_check(&x, Symmetry::Psi);
            let out = pretty(&json!({
                "phi": { "image": symmetry_image(&x, Symmetry::Phi).to_string(), "holds": phi },
                "psi": { "image": symmetry_image(&x, Symmetry::Psi).to_string(), "holds": psi },
            }));
            if !(phi && psi) {
                print!("{out}");
                bail!(Failed("symmetry".into()));
            }
            Ok(out)
        }
    }
}

fn quotientope_cmd(action: QuotAction, spec: &str, weights: Option<String>, kind: Option<Kind>) -> anyhow::Result<String> {
    let ideal = io::load_ideal(spec, kind)?;
    let n = ideal.n();
    let wjson = weights.as_deref().map(io::read_json).transpose()?;
    let support = match &ideal {
        AnyIdeal::A(i) => {
            let w = wjson.as_ref().map(|v| io::weights_a(v, n)).transpose()?.unwrap_or_default();
            quotientope_weighted(i, &w)?
        }
        AnyIdeal::B(i) => {
            let w = wjson.as_ref().map(|v| io::weights_b(v, n)).transpose()?.unwrap_or_default();
            b_quotientope_weighted(i, &w)?
        }
    };
    let rays: Vec<RayKey> = match &ideal {
        AnyIdeal::A(i) => quotient_rays(i).into_iter().map(RayKey::set).collect(),
        AnyIdeal::B(i) => b_quotient_rays(i),
    };
    match action {
        QuotAction::Build => Ok(pretty(&io::support_json(&support)?)),
        QuotAction::Rays => Ok(lines(rays)),
        QuotAction::Verify => {
            let classes = match &ideal {
                AnyIdeal::A(i) => class_partition(&congruence_classes(i)),
                AnyIdeal::B(i) => b_congruence_classes(i).as_chamber_partition(),
            };
            let partition = chamber_partition(&support) == classes;
            let mut facets = facet_directions(&support)?;
            let mut want = rays;
            facets.sort();
            want.sort();
            let ray_ok = facets == want;
            let out = pretty(&json!({
                "type": ideal.kind().name(),
                "n": n,
                "classes": classes.num_blocks(),
                "partition": partition,
                "rays": ray_ok,
            }));
            if !(partition && ray_ok) {
                print!("{out}");
                bail!(Failed("quotient fan".into()));
            }
            Ok(out)
        }
    }
}

fn basis_cmd(action: BasisCmd) -> anyhow::Result<String> {
    match action {
        BasisCmd::Convert { from, to, input } => {
            let c = CoeffVector::from_json(&io::read_json(&input)?)?;
            if c.basis != Basis::from(from) {
                bail!(Error::Parse(format!("{input} holds {} coordinates", c.basis.name())));
            }
            Ok(pretty(&basis::convert(&c, to.into())?.to_json()))
        }
        BasisCmd::Matrix { which, n, minpoly } => {
            let kind = match which {
                Which::YOfS => MatrixKind::YOfS,
                Which::SOfY => MatrixKind::SOfY,
                Which::ZOfS => MatrixKind::ZOfS,
                Which::SOfZ => MatrixKind::SOfZ,
            };
            let m = build_matrix(kind, n)?;
            let index: Vec<String> = basis::subsets_ge2(n).into_iter().map(shardtope::bits::key).collect();
            let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
            let mut v = json!({ "n": n, "index": index, "rows": rows });
            if minpoly {
                v["minimal_polynomial"] = Value::String(fmt_poly(&minimal_polynomial(&m)));
            }
            Ok(pretty(&v))
        }
        BasisCmd::Decompose { polytope, to } => {
            let p = io::load_polytope(&polytope)?;
            Ok(pretty(&basis::decompose(&p.support, to.into(), true)?.to_json()))
        }
    }
}

fn ps_cmd(spec: &str, f: &str, check: bool) -> anyhow::Result<String> {
    let ideal = match io::load_ideal(spec, Some(Kind::A))? {
        AnyIdeal::A(i) => i,
        AnyIdeal::B(_) => bail!(Error::Precondition("ps-quotientope is only available in type A".into())),
    };
    let n = ideal.n;
    polytope::FanFrame::A(n).check_cap()?;
    let func = match f {
        "default" => default_forcing_function(n),
        "span-power" => span_power_function(n),
        path => {
            let (fn_n, func) = io::subset_fn(&io::read_json(path)?)?;
            if fn_n != n {
                bail!(Error::Precondition(format!("function is on [{fn_n}], ideal on [{n}]")));
            }
            func
        }
    };
    if !validate_forcing_dominant(&func, n) {
        bail!(Error::NotForcingDominant);
    }
    let s = ps_quotientope(&ideal, &func)?;
    let out = pretty(&io::support_json(&s)?);
    if check {
        let ok = verify_prop100(&ideal, &func)?
            && chamber_partition(&s) == class_partition(&congruence_classes(&ideal));
        if !ok {
            print!("{out}");
            bail!(Failed("height function quotientope".into()));
        }
    }
    Ok(out)
}

fn volume_cmd(action: VolumeAction, specs: &[String], n: Option<usize>, path: Option<String>) -> anyhow::Result<String> {
    let parse = |n: usize| -> anyhow::Result<Vec<Arc>> {
        if specs.is_empty() {
            bail!(Error::Precondition("missing --arcs".into()));
        }
        Ok(specs.iter().map(|s| Arc::parse(s, n)).collect::<Result<_, _>>()?)
    };
    match action {
        VolumeAction::Shard => {
            let n = need(n, "n")?;
            cap(n, polytope::MAX_N_A, "volume shard")?;
            Ok(lines(parse(n)?.iter().map(|x| format!("{x}\t{}", fmt_rat(&shard_volume(x))))))
        }
        VolumeAction::Mixed => {
            let n = need(n, "n")?;
            cap(n, polytope::MAX_N_A, "volume mixed")?;
            Ok(format!("{}\n", fmt_rat(&shard_mixed_volume(&parse(n)?)?)))
        }
        VolumeAction::Oracle => {
            let p = io::load_polytope(&need(path, "polytope")?)?;
            let v: Rat = polytope::volume(&p.vertices, p.frame);
            Ok(format!("{}\n", fmt_rat(&v)))
        }
    }
}
