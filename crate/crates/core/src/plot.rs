//! Static SVG plots of eigenvalues on the complex plane.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{enumerate_roots, RootClass, Spectrum};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 32.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// One marker group: a label and its points.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<Complex64>,
}

/// Every member of every class, one series per class.
pub fn root_class_series(sp: &Spectrum<RootClass>) -> Vec<Series> {
    sp.iter()
        .map(|c| Series {
            label: format!("λ^{} = {:.6}{:+.6}i", c.order, c.base.re, c.base.im),
            points: enumerate_roots(c),
        })
        .collect()
}

pub fn value_series(values: &[Complex64], label: &str) -> Vec<Series> {
    vec![Series {
        label: label.to_string(),
        points: values.to_vec(),
    }]
}

/// Renders the series with axes and the unit circle. The view is square,
/// centred at the origin, and fits every point and the unit circle.
pub fn render_svg(series: &[Series], title: &str) -> Result<String> {
    let total: usize = series.iter().map(|s| s.points.len()).sum();
    if total == 0 {
        return Err(Error::EmptySpectrum);
    }
    let reach = series
        .iter()
        .flat_map(|s| s.points.iter())
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(1.0f64, f64::max)
        * 1.15;
    if !reach.is_finite() {
        return Err(Error::NonFinite("plot points"));
    }
    let half = SIZE / 2.0;
    let scale = (half - MARGIN) / reach;
    let px = |z: Complex64| (half + z.re * scale, half - z.im * scale);

    let mut out = String::new();
    let w = &mut out;
    // writes into a String cannot fail
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(w, "<title>{}</title>", escape(title));
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        w,
        r##"<line class="axis" x1="{m}" y1="{half}" x2="{e}" y2="{half}" stroke="#888" stroke-width="1"/>"##,
        m = MARGIN / 2.0,
        e = SIZE - MARGIN / 2.0
    );
    let _ = writeln!(
        w,
        r##"<line class="axis" x1="{half}" y1="{m}" x2="{half}" y2="{e}" stroke="#888" stroke-width="1"/>"##,
        m = MARGIN / 2.0,
        e = SIZE - MARGIN / 2.0
    );
    let _ = writeln!(
        w,
        r##"<circle class="unit" cx="{half}" cy="{half}" r="{:.3}" fill="none" stroke="#bbb" stroke-dasharray="4 3"/>"##,
        scale
    );
    let _ = writeln!(
        w,
        r##"<text x="{:.3}" y="{:.3}" font-size="11" fill="#666">1</text>"##,
        half + scale + 3.0,
        half - 3.0
    );
    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(w, r#"<g class="series" fill="{colour}"><title>{}</title>"#, escape(&s.label));
        for &z in &s.points {
            let (x, y) = px(z);
            let _ = writeln!(w, r#"<circle class="marker" cx="{x:.3}" cy="{y:.3}" r="4"/>"#);
        }
        let _ = writeln!(w, "</g>");
    }
    let _ = writeln!(w, "</svg>");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn write_plot(path: impl AsRef<Path>, series: &[Series], title: &str) -> Result<()> {
    let svg = render_svg(series, title)?;
    std::fs::write(path, svg).map_err(Error::from)
}
