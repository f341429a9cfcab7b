//! Text and JSON formats read and written by the command line.

use std::collections::BTreeMap;
use std::fs;

use anyhow::{bail, Context};
use serde_json::{json, Map, Value};
use shardtope::polytope::{self, FanFrame, RayKey, SupportVector, VPolytope};
use shardtope::quotientope::SubsetFn;
use shardtope::rat::{fmt_rat, parse_rat};
use shardtope::type_b::{symmetrize_ideal, BArc, BArcIdeal};
use shardtope::weak_order::{cambrian_ideal, close_upward, sylvester_ideal, Arc, ArcIdeal};
use shardtope::{bits, Error, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    A,
    B,
}

impl Kind {
    pub fn frame(self, n: usize) -> FanFrame {
        match self {
            Kind::A => FanFrame::A(n),
            Kind::B => FanFrame::B(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::A => "A",
            Kind::B => "B",
        }
    }

    fn parse(s: &str) -> anyhow::Result<Kind> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "B" | "b" => Ok(Kind::B),
            other => Err(Error::Parse(format!("unknown type {other:?}")).into()),
        }
    }
}

pub enum AnyIdeal {
    A(ArcIdeal),
    B(BArcIdeal),
}

impl AnyIdeal {
    pub fn n(&self) -> usize {
        match self {
            AnyIdeal::A(i) => i.n,
            AnyIdeal::B(i) => i.n,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            AnyIdeal::A(_) => Kind::A,
            AnyIdeal::B(_) => Kind::B,
        }
    }

    /// The file form read back by [`load_ideal`].
    pub fn to_text(&self) -> String {
        let body = match self {
            AnyIdeal::A(i) => i.to_lines(),
            AnyIdeal::B(i) => i.to_lines(),
        };
        format!("n={}\ntype={}\n{body}", self.n(), self.kind().name())
    }
}

fn parse_n(s: &str) -> anyhow::Result<usize> {
    let n: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad size {s:?}")))?;
    if n == 0 {
        bail!(Error::Parse("n must be positive".into()));
    }
    Ok(n)
}

pub fn parse_arc(kind: Kind, spec: &str, n: usize) -> anyhow::Result<AnyArc> {
    Ok(match kind {
        Kind::A => AnyArc::A(Arc::parse(spec, n)?),
        Kind::B => AnyArc::B(BArc::parse(spec, n)?),
    })
}

#[derive(Clone, Copy)]
pub enum AnyArc {
    A(Arc),
    B(BArc),
}

/// Builds the ideal of the given type generated by `seed`.
pub fn close(kind: Kind, n: usize, seed: &[AnyArc]) -> AnyIdeal {
    match kind {
        Kind::A => AnyIdeal::A(close_upward(seed.iter().filter_map(|x| if let AnyArc::A(a) = x { Some(*a) } else { None }), n)),
        Kind::B => {
            let s: Vec<BArc> = seed.iter().filter_map(|x| if let AnyArc::B(b) = x { Some(*b) } else { None }).collect();
            AnyIdeal::B(BArcIdeal::generated(n, &s))
        }
    }
}

/// Named ideals `sylvester(N)`, `full(N)`, `empty(N)` and `cambrian(N:ARC)`,
/// or a file holding `n=N`, an optional `type=A|B` and one arc per line.
pub fn load_ideal(spec: &str, kind: Option<Kind>) -> anyhow::Result<AnyIdeal> {
    if let Some((name, rest)) = spec.split_once('(') {
        if let Some(args) = rest.strip_suffix(')') {
            return named_ideal(name.trim(), args, kind.unwrap_or(Kind::A));
        }
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading ideal file {spec}"))?;
    parse_ideal_text(&text, kind)
}

fn named_ideal(name: &str, args: &str, kind: Kind) -> anyhow::Result<AnyIdeal> {
    let ideal = match (name, kind) {
        ("sylvester", Kind::A) => AnyIdeal::A(sylvester_ideal(parse_n(args)?)),
        ("sylvester", Kind::B) => AnyIdeal::B(symmetrize_ideal(&sylvester_ideal(2 * parse_n(args)?))?),
        ("full", Kind::A) => AnyIdeal::A(ArcIdeal::full(parse_n(args)?)),
        ("full", Kind::B) => AnyIdeal::B(BArcIdeal::full(parse_n(args)?)),
        ("empty", Kind::A) => AnyIdeal::A(ArcIdeal::empty(parse_n(args)?)),
        ("empty", Kind::B) => AnyIdeal::B(BArcIdeal::empty(parse_n(args)?)),
        ("cambrian", _) => {
            let (n, arc) = args.split_once(':').ok_or_else(|| Error::Parse("expected cambrian(N:ARC)".into()))?;
            let n = parse_n(n)?;
            match parse_arc(kind, arc, n)? {
                AnyArc::A(x) => AnyIdeal::A(cambrian_ideal(&x)),
                b => close(Kind::B, n, &[b]),
            }
        }
        _ => bail!(Error::Parse(format!("unknown ideal {name:?}"))),
    };
    Ok(ideal)
}

pub fn parse_ideal_text(text: &str, kind: Option<Kind>) -> anyhow::Result<AnyIdeal> {
    let mut n = None;
    let mut file_kind = None;
    let mut lines = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(v) = line.strip_prefix("n=") {
            n = Some(parse_n(v)?);
        } else if let Some(v) = line.strip_prefix("type=") {
            file_kind = Some(Kind::parse(v)?);
        } else {
            lines.push(line);
        }
    }
    let n = n.ok_or_else(|| Error::Parse("ideal file needs a line n=N".into()))?;
    let kind = match (file_kind, kind) {
        (Some(f), Some(k)) if f != k => bail!(Error::Parse(format!("file holds a type {} ideal", f.name()))),
        (f, k) => f.or(k).unwrap_or(Kind::A),
    };
    Ok(match kind {
        Kind::A => {
            let arcs: Vec<Arc> = lines.iter().map(|l| Arc::parse(l, n)).collect::<Result<_, _>>()?;
            AnyIdeal::A(ArcIdeal::new(n, arcs)?)
        }
        Kind::B => {
            let arcs: Vec<BArc> = lines.iter().map(|l| BArc::parse(l, n)).collect::<Result<_, _>>()?;
            AnyIdeal::B(BArcIdeal::new(n, arcs)?)
        }
    })
}

pub fn read_json(path: &str) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let v = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Ok(v)
}

fn rat_value(v: &Value) -> anyhow::Result<Rat> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(x) if x.is_i64() => Ok(Rat::from_integer(x.as_i64().unwrap().into())),
        _ => bail!(Error::Parse(format!("expected a rational string, got {v}"))),
    }
}

/// Weights as a JSON object from arc text to rationals.
pub fn weights_a(v: &Value, n: usize) -> anyhow::Result<BTreeMap<Arc, Rat>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("weights must be an object".into()))?;
    obj.iter().map(|(k, x)| Ok((Arc::parse(k, n)?, rat_value(x)?))).collect()
}

pub fn weights_b(v: &Value, n: usize) -> anyhow::Result<BTreeMap<BArc, Rat>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("weights must be an object".into()))?;
    obj.iter().map(|(k, x)| Ok((BArc::parse(k, n)?, rat_value(x)?))).collect()
}

fn subset_key(s: &str) -> anyhow::Result<bits::Mask> {
    let elems: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad subset {s:?}"))))
        .collect::<Result<_, _>>()?;
    if elems.iter().any(|&e| e == 0 || e > 30) {
        bail!(Error::Parse(format!("bad subset {s:?}")));
    }
    let m = bits::from_iter(elems.iter().copied());
    if bits::card(m) != elems.len() {
        bail!(Error::Parse(format!("bad subset {s:?}")));
    }
    Ok(m)
}

/// `{"n": N, "values": {"1,3": "p/q", …}}`.
pub fn subset_fn(v: &Value) -> anyhow::Result<(usize, SubsetFn)> {
    let n = v["n"].as_u64().ok_or_else(|| Error::Parse("function file needs n".into()))? as usize;
    let obj = v["values"].as_object().ok_or_else(|| Error::Parse("function file needs values".into()))?;
    let f = obj.iter().map(|(k, x)| Ok((subset_key(k)?, rat_value(x)?))).collect::<anyhow::Result<_>>()?;
    Ok((n, f))
}

pub fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

/// `{"n", "kind", "vertices": [["p/q"]], "support": {"R-key": "p/q"}}`.
pub fn polytope_json(v: &VPolytope, frame: FanFrame) -> Value {
    let s = polytope::support_from_vertices(v, frame);
    let support: Map<String, Value> = s.to_map().into_iter().map(|(k, x)| (k, Value::String(x))).collect();
    let kind = if frame.is_b() { "B" } else { "A" };
    json!({
        "n": frame.n(),
        "kind": kind,
        "vertices": v.vertices.iter().map(|p| rats_json(p)).collect::<Vec<_>>(),
        "support": support,
    })
}

pub fn support_json(s: &SupportVector) -> anyhow::Result<Value> {
    Ok(polytope_json(&polytope::vertices_from_support(s)?, s.frame))
}

pub struct LoadedPolytope {
    pub frame: FanFrame,
    pub vertices: VPolytope,
    pub support: SupportVector,
}

/// Reads the polytope schema. Either field may be omitted; when both are
/// present they must agree.
pub fn load_polytope(path: &str) -> anyhow::Result<LoadedPolytope> {
    let v = read_json(path)?;
    let n = v["n"].as_u64().ok_or_else(|| Error::Parse("polytope needs n".into()))? as usize;
    let kind = match &v["kind"] {
        Value::Null => Kind::A,
        Value::String(s) => Kind::parse(s)?,
        _ => bail!(Error::Parse("kind must be \"A\" or \"B\"".into())),
    };
    let frame = kind.frame(n);
    frame.check_cap()?;
    let support = match v["support"].as_object() {
        Some(obj) => {
            let mut map = BTreeMap::new();
            for (k, x) in obj {
                map.insert(RayKey::parse(k)?, rat_value(x)?);
            }
            let mut missing = None;
            let s = SupportVector::from_fn(frame, |k| {
                map.get(&k).cloned().unwrap_or_else(|| {
                    missing.get_or_insert(k);
                    Rat::from_integer(0.into())
                })
            });
            if let Some(k) = missing {
                bail!(Error::Parse(format!("support is missing the key {k}")));
            }
            Some(s)
        }
        None => None,
    };
    let vertices = match v["vertices"].as_array() {
        Some(rows) => {
            let pts: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| {
                    let r = r.as_array().ok_or_else(|| Error::Parse("vertex must be an array".into()))?;
                    if r.len() != n {
                        bail!(Error::Parse(format!("vertex of length {} in dimension {n}", r.len())));
                    }
                    r.iter().map(rat_value).collect()
                })
                .collect::<anyhow::Result<_>>()?;
            if pts.is_empty() {
                bail!(Error::Parse("no vertices".into()));
            }
            Some(VPolytope::from_points(n, pts)?)
        }
        None => None,
    };
    let (vertices, support) = match (vertices, support) {
        (Some(v), Some(s)) => {
            if polytope::support_from_vertices(&v, frame) != s {
                bail!(Error::Parse("support does not match the vertices".into()));
            }
            (v, s)
        }
        (Some(v), None) => {
            let s = polytope::support_from_vertices(&v, frame);
            (v, s)
        }
        (None, Some(s)) => (polytope::vertices_from_support(&s)?, s),
        (None, None) => bail!(Error::Parse("polytope needs vertices or support".into())),
    };
    Ok(LoadedPolytope { frame, vertices, support })
}
