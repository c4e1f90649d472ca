//! Quick-look plots: a fixed-size terminal rendering and a dependency-free
//! SVG writer.

use std::fmt::Write as _;

pub const ASCII_WIDTH: usize = 80;
pub const ASCII_HEIGHT: usize = 24;

/// Glyphs from faint to full, indexed by how much of a character cell the
/// column fills.
const RAMP: [char; 8] = ['.', ':', '-', '=', '+', '*', '#', '@'];

/// Render `(x, y)` data as a bar chart of exactly 80 x 24 characters
/// (including the axis rows), one newline after each row.
///
/// The first row carries the title and the y range, the last carries the x
/// range. Columns average the y values that fall into each x bin.
pub fn ascii_plot(xs: &[f64], ys: &[f64], title: &str) -> String {
    assert_eq!(xs.len(), ys.len());
    let rows = ASCII_HEIGHT - 2;
    let cols = ASCII_WIDTH;
    let (x_lo, x_hi) = bounds(xs);
    let y_hi = ys.iter().cloned().fold(0.0f64, f64::max).max(1e-300);

    // average the samples per column
    let mut sums = vec![0.0f64; cols];
    let mut counts = vec![0usize; cols];
    let x_span = (x_hi - x_lo).max(1e-300);
    for (&x, &y) in xs.iter().zip(ys) {
        let c = (((x - x_lo) / x_span) * cols as f64) as usize;
        let c = c.min(cols - 1);
        sums[c] += y;
        counts[c] += 1;
    }

    let mut grid = vec![vec![' '; cols]; rows];
    for c in 0..cols {
        if counts[c] == 0 {
            continue;
        }
        let level = (sums[c] / counts[c] as f64 / y_hi).clamp(0.0, 1.0);
        // how many character cells this column fills, in eighths
        let eighths = (level * (rows * 8) as f64).round() as usize;
        let full = eighths / 8;
        let rem = eighths % 8;
        for r in 0..full.min(rows) {
            grid[rows - 1 - r][c] = '@';
        }
        if full < rows && rem > 0 {
            grid[rows - 1 - full][c] = RAMP[rem - 1];
        }
    }

    let mut out = String::with_capacity((ASCII_WIDTH + 1) * ASCII_HEIGHT);
    let header = format!("{title}  [0 .. {y_hi:.3}]");
    out.push_str(&pad(&header, cols));
    out.push('\n');
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    let footer = format!("{x_lo:.4} .. {x_hi:.4}");
    out.push_str(&pad(&footer, cols));
    out.push('\n');
    out
}

fn pad(s: &str, width: usize) -> String {
    let mut t: String = s.chars().take(width).collect();
    while t.chars().count() < width {
        t.push(' ');
    }
    t
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() && lo < hi {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

/// A single polyline with axes and tick labels, as a standalone SVG 1.1
/// document string.
pub fn svg_plot(xs: &[f64], ys: &[f64], title: &str, x_label: &str, y_label: &str) -> String {
    assert_eq!(xs.len(), ys.len());
    let (w, h) = (640.0, 480.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 50.0);
    let (x_lo, x_hi) = bounds(xs);
    let y_hi = ys.iter().cloned().fold(0.0f64, f64::max).max(1e-300) * 1.05;
    let px = |x: f64| ml + (x - x_lo) / (x_hi - x_lo).max(1e-300) * (w - ml - mr);
    let py = |y: f64| h - mb - (y / y_hi) * (h - mt - mb);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        w / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        s,
        r#"<path d="M {ml} {mt} L {ml} {y0} L {x1} {y0}" stroke="black" fill="none"/>"#,
        y0 = h - mb,
        x1 = w - mr
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x_lo + f * (x_hi - x_lo);
        let yv = f * y_hi;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{:.3}</text>"#,
            px(xv),
            h - mb + 18.0,
            xv
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.1}" text-anchor="end" font-family="sans-serif" font-size="11">{:.2}</text>"#,
            ml - 6.0,
            py(yv) + 4.0,
            yv
        );
        let _ = writeln!(
            s,
            r#"<line x1="{0:.1}" y1="{1}" x2="{0:.1}" y2="{2}" stroke="black"/>"#,
            px(xv),
            h - mb,
            h - mb + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        (ml + w - mr) / 2.0,
        h - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {})">{}</text>"#,
        (mt + h - mb) / 2.0,
        (mt + h - mb) / 2.0,
        escape(y_label)
    );
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y.max(0.0))))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" stroke="steelblue" stroke-width="1.5" fill="none"/>"#,
        points.join(" ")
    );
    let _ = writeln!(s, "</svg>");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
