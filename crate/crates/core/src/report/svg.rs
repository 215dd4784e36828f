//! Minimal self-contained SVG writer: axes, lines, stacked bars.
//!
//! Coordinates are written with two decimals and labels with six
//! significant digits, so output is byte-stable for identical inputs.

use std::fmt::Write as _;

use super::fmt_sig;

#[derive(Debug, Clone, Copy)]
pub struct Scale {
    pub lo: f64,
    pub hi: f64,
    pub log: bool,
    pub px_lo: f64,
    pub px_hi: f64,
}

impl Scale {
    /// Scale covering `values`, padded out to whole decades when logarithmic.
    pub fn fit(values: impl IntoIterator<Item = f64>, log: bool, px_lo: f64, px_hi: f64) -> Scale {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            if !v.is_finite() || (log && v <= 0.0) {
                continue;
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = if log { (1.0, 10.0) } else { (0.0, 1.0) };
        }
        if log {
            lo = 10f64.powf(lo.log10().floor());
            hi = 10f64.powf(hi.log10().ceil());
            if hi <= lo {
                hi = lo * 10.0;
            }
        } else {
            lo = lo.min(0.0);
            if hi <= lo {
                hi = lo + 1.0;
            }
            hi *= 1.05;
        }
        Scale { lo, hi, log, px_lo, px_hi }
    }

    pub fn map(&self, v: f64) -> f64 {
        let t = if self.log {
            let v = v.max(self.lo * 1e-3);
            (v.log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10())
        } else {
            (v - self.lo) / (self.hi - self.lo)
        };
        self.px_lo + t * (self.px_hi - self.px_lo)
    }

    pub fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.log10().round() as i32, self.hi.log10().round() as i32);
            let step = ((b - a) as f64 / 8.0).ceil().max(1.0) as i32;
            (a..=b).step_by(step as usize).map(|e| 10f64.powi(e)).collect()
        } else {
            (0..=5).map(|i| self.lo + (self.hi - self.lo) * i as f64 / 5.0).collect()
        }
    }
}

pub struct Svg {
    width: f64,
    height: f64,
    body: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Svg {
        let mut svg = Svg { width, height, body: String::new() };
        svg.rect(0.0, 0.0, width, height, "#ffffff", 1.0);
        svg
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64, dash: bool) {
        let dash = if dash { " stroke-dasharray=\"6 4\"" } else { "" };
        let _ = writeln!(
            self.body,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{stroke}\" stroke-width=\"{width:.2}\"{dash}/>"
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64) {
        let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.2}\"/>",
            pts.join(" ")
        );
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, opacity: f64) {
        let _ = writeln!(
            self.body,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\" fill-opacity=\"{opacity:.2}\"/>",
            w.max(0.0),
            h.max(0.0)
        );
    }

    /// Rectangle filled with diagonal hatching over a light base.
    pub fn hatched_rect(&mut self, x: f64, y: f64, w: f64, h: f64, color: &str) {
        self.rect(x, y, w, h, color, 0.25);
        let _ = writeln!(
            self.body,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"url(#hatch)\" stroke=\"{color}\"/>",
            w.max(0.0),
            h.max(0.0)
        );
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str, stroke: &str) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"{fill}\" stroke=\"{stroke}\"/>"
        );
    }

    pub fn text(&mut self, x: f64, y: f64, s: &str, size: f64, anchor: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size:.1}\" text-anchor=\"{anchor}\">{}</text>",
            escape(s)
        );
    }

    pub fn vtext(&mut self, x: f64, y: f64, s: &str, size: f64) {
        let _ = writeln!(
            self.body,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 {x:.2} {y:.2})\">{}</text>",
            escape(s)
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\" font-family=\"sans-serif\">\n\
             <defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\
             <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555555\" stroke-width=\"1\"/></pattern></defs>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height,
        )
    }
}

/// A plotting area inside an [`Svg`].
pub struct Frame {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl Frame {
    pub fn right(&self) -> f64 {
        self.left + self.width
    }

    pub fn bottom(&self) -> f64 {
        self.top + self.height
    }

    pub fn x_scale(&self, values: impl IntoIterator<Item = f64>, log: bool) -> Scale {
        Scale::fit(values, log, self.left, self.right())
    }

    pub fn y_scale(&self, values: impl IntoIterator<Item = f64>, log: bool) -> Scale {
        Scale::fit(values, log, self.bottom(), self.top)
    }
}

pub fn axes(svg: &mut Svg, frame: &Frame, x: Option<&Scale>, y: &Scale, title: &str, xlabel: &str, ylabel: &str) {
    svg.line(frame.left, frame.bottom(), frame.right(), frame.bottom(), "#000000", 1.0, false);
    svg.line(frame.left, frame.top, frame.left, frame.bottom(), "#000000", 1.0, false);
    for t in y.ticks() {
        let py = y.map(t);
        svg.line(frame.left, py, frame.right(), py, "#dddddd", 0.5, false);
        svg.text(frame.left - 4.0, py + 3.0, &fmt_sig(t, 3), 9.0, "end");
    }
    if let Some(x) = x {
        for t in x.ticks() {
            let px = x.map(t);
            svg.line(px, frame.bottom(), px, frame.bottom() + 4.0, "#000000", 1.0, false);
            svg.text(px, frame.bottom() + 14.0, &fmt_sig(t, 3), 9.0, "middle");
        }
    }
    svg.text(frame.left + frame.width / 2.0, frame.top - 8.0, title, 12.0, "middle");
    svg.text(frame.left + frame.width / 2.0, frame.bottom() + 30.0, xlabel, 10.0, "middle");
    svg.vtext(frame.left - 48.0, frame.top + frame.height / 2.0, ylabel, 10.0);
}

pub fn legend(svg: &mut Svg, x: f64, y: f64, entries: &[(&str, &str)]) {
    for (i, (name, color)) in entries.iter().enumerate() {
        let yy = y + i as f64 * 14.0;
        svg.rect(x, yy - 8.0, 10.0, 10.0, color, 1.0);
        svg.text(x + 14.0, yy + 1.0, name, 9.0, "start");
    }
}

/// One stacked bar segment.
pub struct Segment {
    pub value: f64,
    pub color: &'static str,
    pub hatched: bool,
}

/// Bars sharing one x label; each bar is a stack of segments.
pub struct BarGroup {
    pub label: String,
    pub bars: Vec<Vec<Segment>>,
}

/// Horizontal reference line or band.
pub struct Reference {
    pub label: String,
    pub value: f64,
    pub color: &'static str,
    /// Shade everything below `value`.
    pub band: bool,
}

pub fn bar_panel(
    svg: &mut Svg,
    frame: &Frame,
    title: &str,
    ylabel: &str,
    groups: &[BarGroup],
    log_y: bool,
    refs: &[Reference],
) {
    let totals = groups
        .iter()
        .flat_map(|g| g.bars.iter().map(|b| b.iter().map(|s| s.value).sum::<f64>()));
    let mins = groups.iter().flat_map(|g| g.bars.iter().filter_map(|b| b.first().map(|s| s.value)));
    let y = frame.y_scale(
        totals.chain(mins).chain(refs.iter().map(|r| r.value)),
        log_y,
    );
    for r in refs.iter().filter(|r| r.band) {
        let top = y.map(r.value).max(frame.top);
        svg.rect(frame.left, top, frame.width, frame.bottom() - top, r.color, 0.3);
    }
    axes(svg, frame, None, &y, title, "", ylabel);
    let slot = frame.width / groups.len().max(1) as f64;
    for (gi, g) in groups.iter().enumerate() {
        let x0 = frame.left + gi as f64 * slot;
        let bar_w = slot * 0.8 / g.bars.len().max(1) as f64;
        for (bi, bar) in g.bars.iter().enumerate() {
            let x = x0 + slot * 0.1 + bi as f64 * bar_w;
            let mut acc = if log_y { y.lo } else { 0.0 };
            let mut base = 0.0;
            for seg in bar {
                let lo_px = y.map(acc);
                base += seg.value;
                acc = base;
                let hi_px = y.map(acc);
                if seg.hatched {
                    svg.hatched_rect(x, hi_px, bar_w * 0.9, lo_px - hi_px, seg.color);
                } else {
                    svg.rect(x, hi_px, bar_w * 0.9, lo_px - hi_px, seg.color, 1.0);
                }
            }
        }
        svg.text(x0 + slot / 2.0, frame.bottom() + 14.0, &g.label, 9.0, "middle");
    }
    for r in refs.iter().filter(|r| !r.band) {
        let py = y.map(r.value);
        svg.line(frame.left, py, frame.right(), py, r.color, 1.2, true);
        svg.text(frame.right() - 2.0, py - 3.0, &r.label, 9.0, "end");
    }
    for r in refs.iter().filter(|r| r.band) {
        svg.text(frame.right() - 2.0, y.map(r.value).max(frame.top) + 11.0, &r.label, 9.0, "end");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_scale_maps_decades() {
        let s = Scale::fit([3.0, 700.0], true, 0.0, 300.0);
        assert_eq!((s.lo, s.hi), (1.0, 1000.0));
        assert_eq!(s.map(1.0), 0.0);
        assert!((s.map(10.0) - 100.0).abs() < 1e-9);
        assert_eq!(s.ticks(), vec![1.0, 10.0, 100.0, 1000.0]);
    }

    #[test]
    fn text_is_escaped() {
        let mut svg = Svg::new(10.0, 10.0);
        svg.text(0.0, 0.0, "a<b&c", 9.0, "start");
        assert!(svg.finish().contains("a&lt;b&amp;c"));
    }
}
