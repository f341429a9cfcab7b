//! Static SVG pictures. Presentation only, so floating point is fine here.

use std::fmt::Write;

use anyhow::bail;
use num_traits::ToPrimitive;
use shardtope::weak_order::Arc;
use shardtope::{bits, Error, Rat};

const STEP: f64 = 48.0;
const BASE: f64 = 90.0;
const BEND: f64 = 32.0;

fn header(w: f64, h: f64) -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n")
}

fn arc_path(x: &Arc, dash: bool) -> String {
    // through the points, dipping under `A` and rising over `B`
    let px = |i: usize| STEP * i as f64;
    let mut d = format!("M {} {BASE}", px(x.a));
    for c in x.a + 1..x.b {
        let y = if bits::has(x.above, c) { BASE + BEND } else { BASE - BEND };
        let _ = write!(d, " L {} {y}", px(c));
    }
    let _ = write!(d, " L {} {BASE}", px(x.b));
    let style = if dash { " stroke-dasharray=\"6 4\"" } else { "" };
    format!("<path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-linejoin=\"round\"{style}/>\n")
}

/// One or two arcs on `n` labelled points.
pub fn arcs(n: usize, arcs: &[Arc], labels: &[String]) -> String {
    let w = STEP * (n as f64 + 1.0);
    let mut out = header(w, 2.0 * BASE);
    for (k, x) in arcs.iter().enumerate() {
        out += &arc_path(x, k > 0);
    }
    for i in 1..=n {
        let x = STEP * i as f64;
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{BASE}\" r=\"4\" fill=\"black\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{x}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>",
            BASE + BEND + 28.0,
            labels[i - 1]
        );
    }
    out + "</svg>\n"
}

fn to_f64(v: &[Rat]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect()
}

/// A polygon drawn in an orthonormal frame of its affine hull.
pub fn polygon(vertices: &[Vec<Rat>]) -> anyhow::Result<String> {
    let pts: Vec<Vec<f64>> = vertices.iter().map(|v| to_f64(v)).collect();
    let o = pts[0].clone();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for p in &pts[1..] {
        let mut d: Vec<f64> = p.iter().zip(&o).map(|(a, b)| a - b).collect();
        for e in &basis {
            let t: f64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
            d.iter_mut().zip(e).for_each(|(a, b)| *a -= t * b);
        }
        let norm = d.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-9 {
            if basis.len() == 2 {
                bail!(Error::Precondition("polytope2d needs a polytope of dimension at most 2".into()));
            }
            basis.push(d.iter().map(|a| a / norm).collect());
        }
    }
    let flat: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| {
            let d: Vec<f64> = p.iter().zip(&o).map(|(a, b)| a - b).collect();
            let c = |k: usize| basis.get(k).map_or(0.0, |e| d.iter().zip(e).map(|(a, b)| a * b).sum());
            (c(0), -c(1))
        })
        .collect();
    let cx = flat.iter().map(|p| p.0).sum::<f64>() / flat.len() as f64;
    let cy = flat.iter().map(|p| p.1).sum::<f64>() / flat.len() as f64;
    let mut order: Vec<usize> = (0..flat.len()).collect();
    order.sort_by(|&i, &j| {
        let ai = (flat[i].1 - cy).atan2(flat[i].0 - cx);
        let aj = (flat[j].1 - cy).atan2(flat[j].0 - cx);
        ai.total_cmp(&aj)
    });
    let (minx, maxx) = flat.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (miny, maxy) = flat.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let span = (maxx - minx).max(maxy - miny).max(1e-9);
    let scale = 360.0 / span;
    let map = |p: (f64, f64)| (20.0 + (p.0 - minx) * scale, 20.0 + (p.1 - miny) * scale);
    let mut out = header(400.0, 400.0);
    let poly: Vec<String> = order
        .iter()
        .map(|&i| {
            let (x, y) = map(flat[i]);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(out, "<polygon points=\"{}\" fill=\"#dde6f5\" stroke=\"black\" stroke-width=\"2\"/>", poly.join(" "));
    for &i in &order {
        let (x, y) = map(flat[i]);
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
    }
    Ok(out + "</svg>\n")
}
