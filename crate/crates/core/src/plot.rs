//! SVG pictures of alcoves for rank-2 data.

use std::fmt::Write as _;

use crate::affine::{AffineWeylGroup, Element};
use crate::alcove::VDatum;
use crate::error::{Error, Result};
use crate::expr::format_element;
use crate::Rational;

type P2 = [f64; 2];

const SIZE: f64 = 640.0;

fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Upper factor `U` with `gram = U^T U`, so `|U p|` is the invariant norm.
fn embedding(g: &AffineWeylGroup) -> [[f64; 2]; 2] {
    let gm = g.datum().gram();
    let mut a = [[0.0; 2]; 2];
    for (r, row) in a.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = to_f64(&gm[(r, c)]);
        }
    }
    // a degenerate form (central directions) gets the standard one added
    if a[0][0] <= 1e-12 || a[0][0] * a[1][1] - a[0][1] * a[1][0] <= 1e-12 {
        a[0][0] += 1.0;
        a[1][1] += 1.0;
    }
    let u00 = a[0][0].sqrt();
    let u01 = a[0][1] / u00;
    let u11 = (a[1][1] - u01 * u01).sqrt();
    [[u00, u01], [0.0, u11]]
}

/// Keeps the part of `poly` where `a . p <= k`.
fn clip(poly: &[P2], a: [f64; 2], k: f64) -> Vec<P2> {
    let f = |p: &P2| a[0] * p[0] + a[1] * p[1] - k;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (f(&p), f(&q));
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

/// Segment of the line `a . p = k` inside a convex polygon.
fn chord(poly: &[P2], a: [f64; 2], k: f64) -> Option<(P2, P2)> {
    let mut pts = Vec::new();
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let fp = a[0] * p[0] + a[1] * p[1] - k;
        let fq = a[0] * q[0] + a[1] * q[1] - k;
        if fp == 0.0 {
            pts.push(p);
        } else if fp * fq < 0.0 {
            let t = fp / (fp - fq);
            pts.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    let dir = [-a[1], a[0]];
    let key = |p: &P2| p[0] * dir[0] + p[1] * dir[1];
    let lo = pts.iter().copied().min_by(|x, y| key(x).total_cmp(&key(y)))?;
    let hi = pts.iter().copied().max_by(|x, y| key(x).total_cmp(&key(y)))?;
    (key(&hi) - key(&lo) > 1e-9).then_some((lo, hi))
}

fn affine_image(x: &Element, p: P2) -> P2 {
    let w = x.finite_part().matrix();
    let t = x.translation_part();
    let mut out = [t[0] as f64, t[1] as f64];
    for (r, slot) in out.iter_mut().enumerate() {
        *slot += w[(r, 0)] as f64 * p[0] + w[(r, 1)] as f64 * p[1];
    }
    out
}

fn centroid(poly: &[P2]) -> P2 {
    let n = poly.len().max(1) as f64;
    let s = poly.iter().fold([0.0, 0.0], |a, p| [a[0] + p[0], a[1] + p[1]]);
    [s[0] / n, s[1] / n]
}

struct Canvas {
    /// Half-width of the visible square in embedded coordinates.
    radius: f64,
    body: String,
}

impl Canvas {
    fn screen(&self, e: P2) -> P2 {
        let k = SIZE / (2.0 * self.radius);
        [20.0 + (e[0] + self.radius) * k, 20.0 + (self.radius - e[1]) * k]
    }

    fn polygon(&mut self, poly: &[P2], style: &str) {
        if poly.len() < 3 {
            return;
        }
        let pts: Vec<String> = poly
            .iter()
            .map(|&p| {
                let s = self.screen(p);
                format!("{:.2},{:.2}", s[0], s[1])
            })
            .collect();
        let _ = writeln!(self.body, r#"<polygon points="{}" {style}/>"#, pts.join(" "));
    }

    fn line(&mut self, (a, b): (P2, P2), style: &str) {
        let (p, q) = (self.screen(a), self.screen(b));
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            p[0], p[1], q[0], q[1]
        );
    }

    fn text(&mut self, at: P2, s: &str, style: &str) {
        let p = self.screen(at);
        let esc = s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" {style}>{esc}</text>"#,
            p[0], p[1]
        );
    }
}

/// Draws `⟨α, ·⟩ = k` for `|k| <= window`, the base alcove, the image alcoves
/// of `elements`, their separating walls, and walls violating the P-alcove
/// condition for `vdatum`.
pub fn plot_rank2(g: &AffineWeylGroup, elements: &[Element], vdatum: Option<&VDatum>, window: i64) -> Result<String> {
    let d = g.datum();
    if d.rank() != 2 {
        return Err(Error::NotRank2(d.label().to_string()));
    }
    let u = embedding(g);
    let embed = |p: P2| [u[0][0] * p[0] + u[0][1] * p[1], u[1][1] * p[1]];
    // a root as a functional on embedded coordinates: alpha o U^{-1}
    let functional = |a: [f64; 2]| {
        let c0 = a[0] / u[0][0];
        [c0, (a[1] - c0 * u[0][1]) / u[1][1]]
    };
    let roots: Vec<(usize, [f64; 2])> = d
        .positive_indices()
        .map(|i| (i, functional([d.root(i)[0] as f64, d.root(i)[1] as f64])))
        .collect();

    let big = 1e4;
    let mut base = vec![[-big, -big], [big, -big], [big, big], [-big, big]];
    for &(_, a) in &roots {
        base = clip(&base, a, 0.0);
        base = clip(&base, [-a[0], -a[1]], 1.0);
    }
    let to_p = |e: P2| {
        let p1 = e[1] / u[1][1];
        [(e[0] - u[0][1] * p1) / u[0][0], p1]
    };
    let images: Vec<Vec<P2>> = elements
        .iter()
        .map(|x| base.iter().map(|&e| embed(affine_image(x, to_p(e)))).collect())
        .collect();

    let norm = |a: &[f64; 2]| (a[0] * a[0] + a[1] * a[1]).sqrt();
    let mut radius = roots
        .iter()
        .map(|(_, a)| (window.max(1) as f64 + 0.5) / norm(a))
        .fold(0.0, f64::max);
    for x in elements {
        let t = x.translation_part();
        let c = embed([t[0] as f64, t[1] as f64]);
        let reach = roots.iter().map(|(_, a)| 1.5 / norm(a)).fold(0.0, f64::max);
        radius = radius.max(c[0].abs() + reach).max(c[1].abs() + reach);
    }
    let view = vec![[-radius, -radius], [radius, -radius], [radius, radius], [-radius, radius]];
    let mut c = Canvas {
        radius,
        body: String::new(),
    };

    c.polygon(&view, r##"fill="#ffffff" stroke="#bbbbbb""##);
    for &(_, a) in &roots {
        for k in -window..=window {
            if let Some(seg) = chord(&view, a, k as f64) {
                c.line(seg, r##"stroke="#cccccc" stroke-width="1""##);
            }
        }
    }
    let shown = clip_to(&base, &view);
    c.polygon(&shown, r##"fill="#9ecae1" stroke="#3182bd""##);
    c.text(centroid(&shown), "base", r#"font-size="10" text-anchor="middle""#);

    for (x, img) in elements.iter().zip(&images) {
        let m = g.m_all(x);
        let img = clip_to(img, &view);
        c.polygon(&img, r##"fill="#fdd0a2" fill-opacity="0.7" stroke="#e6550d""##);
        for &(i, a) in &roots {
            let mi = m[i];
            let ks: Vec<i64> = if mi >= 0 { (0..=mi).collect() } else { (mi + 1..=-1).collect() };
            for k in ks {
                if let Some(seg) = chord(&view, a, k as f64) {
                    c.line(seg, r##"stroke="#636363" stroke-width="1.5" stroke-dasharray="4 2""##);
                }
            }
        }
        if let Some(vd) = vdatum {
            for &i in &vd.plus {
                let need = if d.is_positive(i) { -1 } else { 0 };
                if m[i] < need {
                    let a = functional([d.root(i)[0] as f64, d.root(i)[1] as f64]);
                    if let Some(seg) = chord(&view, a, (m[i] + 1) as f64) {
                        c.line(seg, r##"stroke="#de2d26" stroke-width="2.5""##);
                    }
                }
            }
        }
        c.text(centroid(&img), &format_element(g, x), r#"font-size="11" text-anchor="middle""#);
    }
    if let Some(vd) = vdatum {
        let v = embed([to_f64(&vd.v[0]), to_f64(&vd.v[1])]);
        let s = c.screen(v);
        let _ = writeln!(c.body, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#de2d26"/>"##, s[0], s[1]);
    }

    let total = SIZE + 40.0;
    Ok(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n<title>{}</title>\n{}</svg>\n",
        d.label(),
        c.body
    ))
}

fn clip_to(poly: &[P2], convex: &[P2]) -> Vec<P2> {
    let mut out = poly.to_vec();
    // convex is counterclockwise, so each edge bounds a left half-plane
    for i in 0..convex.len() {
        let p = convex[i];
        let q = convex[(i + 1) % convex.len()];
        let normal = [q[1] - p[1], p[0] - q[0]];
        out = clip(&out, normal, normal[0] * p[0] + normal[1] * p[1]);
        if out.is_empty() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    fn count(svg: &str, pat: &str) -> usize {
        svg.matches(pat).count()
    }

    #[test]
    fn rejects_other_ranks() {
        let g = AffineWeylGroup::from_key("SL2").unwrap();
        assert!(matches!(plot_rank2(&g, &[], None, 2), Err(Error::NotRank2(_))));
    }

    #[test]
    fn identity_shows_base_only() {
        let g = AffineWeylGroup::from_key("SL3").unwrap();
        let svg = plot_rank2(&g, &[], None, 2).unwrap();
        assert_eq!(count(&svg, "#9ecae1"), 1);
        assert_eq!(count(&svg, "stroke-dasharray"), 0);
        assert_eq!(svg, plot_rank2(&g, &[], None, 2).unwrap());
    }

    #[test]
    fn separating_walls_match_length() {
        let g = AffineWeylGroup::from_key("GL2").unwrap();
        let x = parse_element(&g, "t[1,0]").unwrap();
        let svg = plot_rank2(&g, &[x], None, 3).unwrap();
        assert_eq!(count(&svg, "stroke-dasharray"), 1);
        let g = AffineWeylGroup::from_key("SL3").unwrap();
        let x = parse_element(&g, "s0*s1*s2").unwrap();
        assert_eq!(g.length(&x), 3);
        let svg = plot_rank2(&g, &[x], None, 3).unwrap();
        assert_eq!(count(&svg, "stroke-dasharray"), 3);
    }

    #[test]
    fn violations_highlighted() {
        let g = AffineWeylGroup::from_key("SL3").unwrap();
        let mut seen = [false; 2];
        for lit in ["s1", "s0", "s1*s2", "s0*s1*s2*s1"] {
            let x = parse_element(&g, lit).unwrap();
            for vd in crate::alcove::stable_v_data(&g, &x) {
                let ok = crate::alcove::is_p_alcove(&g, &x, &vd);
                let svg = plot_rank2(&g, &[x.clone()], Some(&vd), 2).unwrap();
                assert_eq!(!ok, svg.contains("#de2d26\" stroke-width"), "{lit}");
                seen[usize::from(ok)] = true;
            }
        }
        assert_eq!(seen, [true, true]);
    }
}
