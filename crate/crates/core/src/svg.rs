//! Barcode diagrams as standalone SVG.

use std::fmt::Write;

use crate::io::fmt_sig_digits;

/// One bar to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub essential: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Dimensions to draw, one panel each, in the given order.
    pub dims: Vec<usize>,
    /// When set, only bars with `death - birth` strictly above this are drawn.
    pub min_persistence: Option<f64>,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            dims: vec![0, 1, 2, 3],
            min_persistence: None,
            title: None,
        }
    }
}

const WIDTH: f64 = 640.0;
const MARGIN_LEFT: f64 = 48.0;
const MARGIN_RIGHT: f64 = 24.0;
const PANEL_GAP: f64 = 36.0;
const AXIS_HEIGHT: f64 = 28.0;
const BAR_STEP: f64 = 3.0;
const MIN_PLOT: f64 = 40.0;
const MAX_PLOT: f64 = 360.0;

fn num(x: f64) -> String {
    fmt_sig_digits(x, 6)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders one panel per requested dimension with the x-axis spanning weights
/// 0 to 1. Bars are stacked by birth, then death. Essential bars run to x = 1 and
/// end in a filled marker. Identical input gives identical bytes.
pub fn render_barcode_svg(bars: &[Bar], opts: &SvgOptions) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let x_of = |w: f64| MARGIN_LEFT + w.clamp(0.0, 1.0) * plot_w;

    let panels: Vec<(usize, Vec<Bar>)> = opts
        .dims
        .iter()
        .map(|&d| {
            let mut list: Vec<Bar> = bars
                .iter()
                .filter(|b| b.dim == d)
                .filter(|b| opts.min_persistence.is_none_or(|m| b.death - b.birth > m))
                .copied()
                .collect();
            list.sort_by(|a, b| {
                a.birth
                    .total_cmp(&b.birth)
                    .then(a.death.total_cmp(&b.death))
                    .then(a.essential.cmp(&b.essential))
            });
            (d, list)
        })
        .collect();

    let title_h = if opts.title.is_some() { 24.0 } else { 0.0 };
    let heights: Vec<f64> = panels
        .iter()
        .map(|(_, list)| (list.len() as f64 * BAR_STEP + 8.0).clamp(MIN_PLOT, MAX_PLOT))
        .collect();
    let total_h = title_h
        + 12.0
        + heights.iter().map(|h| h + AXIS_HEIGHT + PANEL_GAP).sum::<f64>();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="11">"#,
        num(WIDTH),
        num(total_h),
        num(WIDTH),
        num(total_h)
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(t) = &opts.title {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>"#,
            num(WIDTH / 2.0),
            escape(t)
        );
    }

    let mut top = title_h + 12.0 + PANEL_GAP / 2.0;
    for ((dim, list), &h) in panels.iter().zip(&heights) {
        let _ = writeln!(svg, r#"<g class="panel" data-dim="{dim}">"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12">H{dim}</text>"#,
            num(8.0),
            num(top + 12.0)
        );
        let _ = writeln!(
            svg,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
            num(MARGIN_LEFT),
            num(top),
            num(plot_w),
            num(h)
        );
        // Bars are compressed to fit when there are more than the panel holds.
        let step = if list.is_empty() {
            BAR_STEP
        } else {
            ((h - 8.0) / list.len() as f64).min(BAR_STEP)
        };
        for (i, b) in list.iter().enumerate() {
            let y = top + 4.0 + (i as f64 + 0.5) * step;
            let colour = if b.essential { "#b2182b" } else { "#2166ac" };
            let x2 = if b.essential { 1.0 } else { b.death };
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="{}"/>"#,
                num(x_of(b.birth)),
                num(y),
                num(x_of(x2)),
                num(y),
                num((step * 0.7).max(0.5))
            );
            if b.essential {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="{colour}"/>"#,
                    num(x_of(1.0)),
                    num(y),
                    num((step * 0.6).clamp(0.8, 2.5))
                );
            }
        }
        let axis_y = top + h;
        for t in 0..=5 {
            let w = t as f64 / 5.0;
            let x = x_of(w);
            let _ = writeln!(
                svg,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333"/>"##,
                num(x),
                num(axis_y),
                num(x),
                num(axis_y + 4.0)
            );
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                num(x),
                num(axis_y + 16.0),
                num(w)
            );
        }
        let _ = writeln!(svg, "</g>");
        top += h + AXIS_HEIGHT + PANEL_GAP;
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_barcode_draws_axes() {
        let svg = render_barcode_svg(&[], &SvgOptions { dims: vec![0], ..Default::default() });
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"data-dim="0""#));
        assert_eq!(svg.matches("<circle").count(), 0);
        assert!(svg.contains(">1</text>"));
    }

    #[test]
    fn c4_two_full_bars() {
        let bars = [
            Bar { dim: 0, birth: 0.5, death: 1.0, essential: true },
            Bar { dim: 1, birth: 0.5, death: 1.0, essential: true },
            Bar { dim: 0, birth: 0.5, death: 0.5, essential: false },
        ];
        let opts = SvgOptions { dims: vec![0, 1], min_persistence: Some(0.0), title: Some("C4".into()) };
        let svg = render_barcode_svg(&bars, &opts);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("stroke=\"#b2182b\"").count(), 2);
        // zero-length bar suppressed
        assert_eq!(svg.matches("stroke=\"#2166ac\"").count(), 0);
        let all = render_barcode_svg(&bars, &SvgOptions { dims: vec![0, 1], ..Default::default() });
        assert_eq!(all.matches("stroke=\"#2166ac\"").count(), 1);
        assert_eq!(svg, render_barcode_svg(&bars, &opts));
    }
}
