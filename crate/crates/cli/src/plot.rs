//! SVG pictures of arrangements of dimension at most two.

use std::fmt::Write;

use hypero::arrangement::{Arrangement, CategoryODatum};
use hypero::{Error, SignVector};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const SHADE: &str = "#c9dcf2";

struct Geometry {
    n: usize,
    /// Rows of the basis matrix: hyperplane `i` is `t[i] + b[i] . c = 0`.
    b: Vec<Vec<f64>>,
    t: Vec<f64>,
    m: Vec<f64>,
    bounded: Vec<SignVector>,
}

impl Geometry {
    fn new(arr: &Arrangement) -> Self {
        let b = arr.basis_matrix();
        let d = arr.dim();
        Geometry {
            n: arr.n(),
            b: (0..arr.n()).map(|i| (0..d).map(|j| b.get(i, j).to_f64()).collect()).collect(),
            t: arr.datum.t_lift.iter().map(|x| x.to_f64()).collect(),
            m: arr.m_intrinsic().iter().map(|x| x.to_f64()).collect(),
            bounded: arr.bounded(),
        }
    }

    fn value(&self, i: usize, c: &[f64]) -> f64 {
        self.t[i] + self.b[i].iter().zip(c).map(|(x, y)| x * y).sum::<f64>()
    }

    fn sign_vector(&self, c: &[f64]) -> SignVector {
        let signs: Vec<bool> = (0..self.n).map(|i| self.value(i, c) > 0.0).collect();
        SignVector::from_signs(&signs)
    }
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="black"/></marker></defs>"#
    );
}

fn label(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(out, r#"<text class="label" x="{x:.2}" y="{y:.2}" text-anchor="middle">{text}</text>"#);
}

/// Renders the arrangement in `V(t)` with chambers labeled by sign vectors,
/// bounded feasible chambers shaded and an arrow along `m`.
pub fn render(datum: &CategoryODatum) -> Result<String, Error> {
    let arr = Arrangement::new(datum);
    match arr.dim() {
        0 => Ok(render_point(&arr)),
        1 => Ok(render_line(&arr)),
        2 => Ok(render_plane(&arr)),
        d => Err(Error::DimensionTooHigh(d)),
    }
}

fn render_point(arr: &Arrangement) -> String {
    let g = Geometry::new(arr);
    let mut out = String::new();
    header(&mut out, 200.0, 120.0);
    let alpha = g.sign_vector(&[]);
    let fill = if g.bounded.contains(&alpha) { SHADE } else { "white" };
    let _ = writeln!(out, r#"<circle class="point" cx="100" cy="60" r="5" fill="{fill}" stroke="black"/>"#);
    label(&mut out, 100.0, 45.0, &alpha.to_string());
    out.push_str("</svg>\n");
    out
}

fn render_line(arr: &Arrangement) -> String {
    let g = Geometry::new(arr);
    let mut cuts: Vec<(f64, Vec<usize>)> = Vec::new();
    for i in 0..g.n {
        if g.b[i][0] == 0.0 {
            continue;
        }
        let x = -g.t[i] / g.b[i][0];
        match cuts.iter_mut().find(|(y, _)| (y - x).abs() < 1e-9) {
            Some((_, hs)) => hs.push(i),
            None => cuts.push((x, vec![i])),
        }
    }
    cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (lo, hi) = match (cuts.first(), cuts.last()) {
        (Some(a), Some(b)) => {
            let pad = ((b.0 - a.0) * 0.5).max(1.0);
            (a.0 - pad, b.0 + pad)
        }
        _ => (-1.0, 1.0),
    };
    let h = 140.0;
    let y = 70.0;
    let px = |x: f64| MARGIN + (x - lo) / (hi - lo) * (SIZE - 2.0 * MARGIN);
    let mut out = String::new();
    header(&mut out, SIZE, h);
    let mut breaks = vec![lo];
    breaks.extend(cuts.iter().map(|c| c.0));
    breaks.push(hi);
    for w in breaks.windows(2) {
        let mid = (w[0] + w[1]) / 2.0;
        let alpha = g.sign_vector(&[mid]);
        let class = if g.bounded.contains(&alpha) { "chamber bounded" } else { "chamber" };
        let fill = if g.bounded.contains(&alpha) { SHADE } else { "none" };
        let _ = writeln!(
            out,
            r#"<rect class="{class}" x="{:.2}" y="{:.2}" width="{:.2}" height="12" fill="{fill}"/>"#,
            px(w[0]),
            y - 6.0,
            px(w[1]) - px(w[0])
        );
        label(&mut out, px(mid), y - 14.0, &alpha.to_string());
    }
    let _ = writeln!(out, r#"<line x1="{:.2}" y1="{y}" x2="{:.2}" y2="{y}" stroke="black"/>"#, px(lo), px(hi));
    for (x, hs) in &cuts {
        let _ = writeln!(out, r#"<circle class="point" cx="{:.2}" cy="{y}" r="4" fill="black"/>"#, px(*x));
        let names: Vec<String> = hs.iter().map(|i| format!("H{}", i + 1)).collect();
        label(&mut out, px(*x), y + 22.0, &names.join(","));
    }
    if g.m[0] != 0.0 {
        let (x0, x1) = if g.m[0] > 0.0 { (SIZE - 120.0, SIZE - 60.0) } else { (120.0, 60.0) };
        let _ = writeln!(
            out,
            r#"<line class="mass" x1="{x0}" y1="{}" x2="{x1}" y2="{}" stroke="black" marker-end="url(#head)"/>"#,
            h - 20.0,
            h - 20.0
        );
        label(&mut out, (x0 + x1) / 2.0, h - 26.0, "m");
    }
    out.push_str("</svg>\n");
    out
}

/// Sutherland-Hodgman clip of a convex polygon against `t + b . c >= 0`.
fn clip(poly: &[[f64; 2]], t: f64, b: [f64; 2]) -> Vec<[f64; 2]> {
    let f = |p: &[f64; 2]| t + b[0] * p[0] + b[1] * p[1];
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fp, fq) = (f(&p), f(&q));
        if fp >= 0.0 {
            out.push(p);
        }
        if (fp >= 0.0) != (fq >= 0.0) {
            let s = fp / (fp - fq);
            out.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
        }
    }
    out
}

fn area(poly: &[[f64; 2]]) -> f64 {
    let mut a = 0.0;
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        a += p[0] * q[1] - q[0] * p[1];
    }
    a.abs() / 2.0
}

fn render_plane(arr: &Arrangement) -> String {
    let g = Geometry::new(arr);
    let mut pts: Vec<[f64; 2]> =
        arr.vertices().iter().map(|v| [v.intrinsic[0].to_f64(), v.intrinsic[1].to_f64()]).collect();
    if pts.is_empty() {
        for i in 0..g.n {
            let nn = g.b[i][0] * g.b[i][0] + g.b[i][1] * g.b[i][1];
            if nn > 0.0 {
                pts.push([-g.t[i] * g.b[i][0] / nn, -g.t[i] * g.b[i][1] / nn]);
            }
        }
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let pad = ((x1 - x0).max(y1 - y0) * 0.4).max(1.0);
    let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
    let scale = ((SIZE - 2.0 * MARGIN) / (x1 - x0)).min((SIZE - 2.0 * MARGIN) / (y1 - y0));
    let px = |p: &[f64; 2]| (MARGIN + (p[0] - x0) * scale, SIZE - MARGIN - (p[1] - y0) * scale);
    let frame = [[x0, y0], [x1, y0], [x1, y1], [x0, y1]];

    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    for alpha in arr.feasible() {
        let mut poly = frame.to_vec();
        for i in 0..g.n {
            let s = if alpha.is_plus(i) { 1.0 } else { -1.0 };
            poly = clip(&poly, s * g.t[i], [s * g.b[i][0], s * g.b[i][1]]);
            if poly.is_empty() {
                break;
            }
        }
        if poly.len() < 3 || area(&poly) < 1e-9 {
            continue;
        }
        let bounded = g.bounded.contains(&alpha);
        let class = if bounded { "chamber bounded" } else { "chamber" };
        let fill = if bounded { SHADE } else { "none" };
        let d: Vec<String> = poly.iter().map(|p| px(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(out, r#"<polygon class="{class}" points="{}" fill="{fill}" stroke="none"/>"#, d.join(" "));
        let cx = poly.iter().map(|p| p[0]).sum::<f64>() / poly.len() as f64;
        let cy = poly.iter().map(|p| p[1]).sum::<f64>() / poly.len() as f64;
        let (lx, ly) = px(&[cx, cy]);
        label(&mut out, lx, ly, &alpha.to_string());
    }
    for i in 0..g.n {
        // the two crossings of the line with the frame boundary
        let mut ends: Vec<[f64; 2]> = Vec::new();
        for k in 0..4 {
            let (p, q) = (frame[k], frame[(k + 1) % 4]);
            let (fp, fq) = (g.value(i, &p), g.value(i, &q));
            if (fp >= 0.0) != (fq >= 0.0) {
                let s = fp / (fp - fq);
                ends.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
            }
        }
        if ends.len() < 2 {
            continue;
        }
        let ((ax, ay), (bx, by)) = (px(&ends[0]), px(&ends[1]));
        let _ = writeln!(out, r#"<line class="hyperplane" x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="black"/>"#);
        label(&mut out, bx, by - 4.0, &format!("H{}", i + 1));
    }
    let norm = (g.m[0] * g.m[0] + g.m[1] * g.m[1]).sqrt();
    if norm > 0.0 {
        let (ux, uy) = (g.m[0] / norm, -g.m[1] / norm);
        let (sx, sy) = (MARGIN + 30.0, MARGIN + 30.0);
        let _ = writeln!(
            out,
            r#"<line class="mass" x1="{sx}" y1="{sy}" x2="{:.2}" y2="{:.2}" stroke="black" marker-end="url(#head)"/>"#,
            sx + 25.0 * ux,
            sy + 25.0 * uy
        );
        label(&mut out, sx - 12.0, sy - 12.0, "m");
    }
    out.push_str("</svg>\n");
    out
}
