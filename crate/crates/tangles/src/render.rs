//! Deterministic diagrams of tangles: wires as y-monotone polylines over
//! horizontal layers, as plain text or SVG.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::tangle::{Layer, Tangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Debug)]
pub struct RenderOptions {
    pub format: RenderFormat,
    /// Horizontal distance between neighboring wire columns, SVG units.
    pub col_width: u32,
    /// Vertical distance between layers, SVG units.
    pub row_height: u32,
    /// Wires drawn with the accent stroke.
    pub highlight: BTreeSet<u16>,
    /// Labels drawn at the top of selected wires (for example gadget roles).
    pub labels: BTreeMap<u16, String>,
}

impl RenderOptions {
    pub fn new(format: RenderFormat) -> Self {
        RenderOptions {
            format,
            col_width: 36,
            row_height: 28,
            highlight: BTreeSet::new(),
            labels: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("column width and row height must be positive")]
    InvalidDimensions,
    #[error("line {line}: bad layer row `{text}`")]
    BadLayerRow { line: usize, text: String },
    #[error("layer rows do not form a tangle")]
    NotATangle,
}

/// Renders one row per layer; wires sit in the column of their position and
/// swaps cross between rows. Byte-identical output for identical inputs.
pub fn render_tangle(tangle: &Tangle, opts: &RenderOptions) -> Result<String, RenderError> {
    if opts.col_width == 0 || opts.row_height == 0 {
        return Err(RenderError::InvalidDimensions);
    }
    match opts.format {
        RenderFormat::Ascii => Ok(render_ascii(tangle, opts)),
        RenderFormat::Svg => Ok(render_svg(tangle, opts)),
    }
}

fn render_ascii(tangle: &Tangle, opts: &RenderOptions) -> String {
    let n = tangle.wires() as usize;
    let width = tangle.wires().to_string().len();
    let col = |k: usize| (k - 1) * (width + 1); // leftmost char of column k
    let mut out = String::new();
    for (wire, label) in &opts.labels {
        writeln!(out, "# {wire} = {label}").unwrap();
    }
    let layers = tangle.layers();
    for (row, layer) in layers.iter().enumerate() {
        if row > 0 {
            // crossing row: X in the gap of each swapped pair, | under the rest
            let mv = &tangle.moves()[row - 1];
            let mut marks = vec![b' '; col(n) + width];
            for k in 1..=n {
                marks[col(k) + width - 1] = b'|';
            }
            for &p in mv.positions() {
                let p = p as usize;
                marks[col(p) + width - 1] = b' ';
                marks[col(p + 1) + width - 1] = b' ';
                marks[col(p + 1) - 1] = b'X';
            }
            let line = String::from_utf8(marks).unwrap();
            writeln!(out, "{}", line.trim_end()).unwrap();
        }
        let mut line = String::new();
        for (k, w) in layer.wires().iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            write!(line, "{:>width$}", w.get()).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    out
}

fn xml_escape(text: &str) -> String {
    text.chars()
        .map(|c| match c {
            '&' => "&amp;".to_string(),
            '<' => "&lt;".to_string(),
            '>' => "&gt;".to_string(),
            '"' => "&quot;".to_string(),
            '\'' => "&apos;".to_string(),
            other => other.to_string(),
        })
        .collect()
}

fn render_svg(tangle: &Tangle, opts: &RenderOptions) -> String {
    const MARGIN: u32 = 24;
    let n = tangle.wires() as u32;
    let layers = tangle.layers();
    let height = layers.len() as u32;
    let x = |position: u32| MARGIN + (position - 1) * opts.col_width;
    let y = |row: u32| MARGIN + row * opts.row_height;
    let total_w = 2 * MARGIN + (n - 1) * opts.col_width;
    let total_h = 2 * MARGIN + (height - 1) * opts.row_height;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}">"#
    )
    .unwrap();
    for row in 0..height {
        writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d9d9d9" stroke-width="9"/>"##,
            x(1).saturating_sub(MARGIN / 2),
            y(row),
            x(n) + MARGIN / 2,
            y(row)
        )
        .unwrap();
    }
    // one path per wire, following its position through the layers
    for wire in 1..=n as u16 {
        let mut d = String::new();
        for (row, layer) in layers.iter().enumerate() {
            let position = layer
                .wires()
                .iter()
                .position(|w| w.get() == wire)
                .expect("layer is a permutation")
                + 1;
            let cmd = if row == 0 { 'M' } else { 'L' };
            write!(d, "{}{} {}", cmd, x(position as u32), y(row as u32)).unwrap();
            if row + 1 < layers.len() {
                d.push(' ');
            }
        }
        let stroke = if opts.highlight.contains(&wire) {
            "#c03028"
        } else {
            "#20609f"
        };
        writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="{stroke}" stroke-width="2"/>"#
        )
        .unwrap();
    }
    for wire in 1..=n as u16 {
        let position = tangle
            .start()
            .wires()
            .iter()
            .position(|w| w.get() == wire)
            .unwrap()
            + 1;
        let label = match opts.labels.get(&wire) {
            Some(label) => xml_escape(label),
            None => wire.to_string(),
        };
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{label}</text>"#,
            x(position as u32),
            MARGIN - 10
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

/// Reads the layer rows back out of an ASCII rendering, ignoring comments
/// and crossing rows.
pub fn parse_ascii(text: &str) -> Result<Vec<Layer>, RenderError> {
    let mut layers = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.is_empty()
            || line.starts_with('#')
            || line.contains('X')
            || line.contains('|')
        {
            continue;
        }
        let wires: Vec<u16> = line
            .split_whitespace()
            .map(|t| t.parse::<u16>())
            .collect::<Result<_, _>>()
            .map_err(|_| RenderError::BadLayerRow {
                line: idx + 1,
                text: line.to_string(),
            })?;
        layers.push(Layer::new(wires).map_err(|_| RenderError::BadLayerRow {
            line: idx + 1,
            text: line.to_string(),
        })?);
    }
    Ok(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Move;

    fn fig1_tangle() -> Tangle {
        Tangle::new(
            Layer::identity(3),
            vec![Move::new(vec![1]).unwrap(), Move::new(vec![2]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn single_layer_ascii() {
        let t = Tangle::identity(3);
        let text = render_tangle(&t, &RenderOptions::new(RenderFormat::Ascii)).unwrap();
        assert_eq!(text, "1 2 3\n");
    }

    #[test]
    fn fig1_ascii_rows() {
        let text = render_tangle(&fig1_tangle(), &RenderOptions::new(RenderFormat::Ascii)).unwrap();
        assert_eq!(text, "1 2 3\n X  |\n2 1 3\n|  X\n2 3 1\n");
    }

    #[test]
    fn ascii_round_trips_layer_sequence() {
        let t = fig1_tangle();
        let text = render_tangle(&t, &RenderOptions::new(RenderFormat::Ascii)).unwrap();
        assert_eq!(parse_ascii(&text).unwrap(), t.layers());
    }

    #[test]
    fn ascii_round_trips_with_labels() {
        let mut opts = RenderOptions::new(RenderFormat::Ascii);
        opts.labels.insert(1, "lambda".to_string());
        let t = fig1_tangle();
        let text = render_tangle(&t, &opts).unwrap();
        assert!(text.starts_with("# 1 = lambda\n"));
        assert_eq!(parse_ascii(&text).unwrap(), t.layers());
    }

    #[test]
    fn svg_has_one_path_per_wire() {
        let text = render_tangle(&fig1_tangle(), &RenderOptions::new(RenderFormat::Svg)).unwrap();
        assert_eq!(text.matches("<path ").count(), 3);
        assert!(text.starts_with("<?xml"));
        assert!(text.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn rendering_is_reproducible() {
        let opts = RenderOptions::new(RenderFormat::Svg);
        let a = render_tangle(&fig1_tangle(), &opts).unwrap();
        let b = render_tangle(&fig1_tangle(), &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_dimensions_are_rejected() {
        let mut opts = RenderOptions::new(RenderFormat::Svg);
        opts.row_height = 0;
        assert_eq!(
            render_tangle(&fig1_tangle(), &opts).unwrap_err(),
            RenderError::InvalidDimensions
        );
    }

    #[test]
    fn two_digit_wire_ids_stay_aligned() {
        let t = Tangle::new(Layer::identity(10), vec![Move::new(vec![9]).unwrap()]).unwrap();
        let text = render_tangle(&t, &RenderOptions::new(RenderFormat::Ascii)).unwrap();
        let parsed = parse_ascii(&text).unwrap();
        assert_eq!(parsed, t.layers());
    }
}
