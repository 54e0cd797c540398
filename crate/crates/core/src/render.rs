//! Strand-diagram rendering.
//!
//! A word acts on a tree of positions; each letter becomes one row of the
//! diagram.  A crossing exchanges the position blocks `[(i)#, (i+1)#)` and
//! `[(i+1)#, (i+2)#)` by homotheties, where `(k)# = 1 - 2^{1-k}`; a
//! rescaling contracts block `i` onto its left half, slides block `i+1`
//! next to it and dilates everything beyond.  Strand x-coordinates are
//! exact dyadics; backends scale them onto an SVG canvas or a monospaced
//! grid.

use crate::error::{Error, Result};
use crate::trees::{act_tree, tree_dyadics, Dyadic, Tree};
use crate::words::{Family, Letter, Sign, Word};

/// The geometry of a diagram: strand `s` visits `strands[s][r]` at the top
/// of row `r` (and `strands[s][rows.len()]` at the bottom); `crossings`
/// lists the crossing rows in order with their over/under orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramLayout {
    pub rows: Vec<Letter>,
    pub strands: Vec<Vec<Dyadic>>,
    pub crossings: Vec<Crossing>,
}

/// One crossing row: the strands leaving block `index` pass over those
/// entering it exactly when `first_family_over` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub row: usize,
    pub index: u32,
    pub first_family_over: bool,
}

/// `(k)# = 1 - 2^{1-k}`, the left edge of block `k`.
fn block_edge(k: u32) -> Result<Dyadic> {
    if k == 1 {
        return Ok(Dyadic::zero());
    }
    Dyadic::one().sub(Dyadic::new(1, k - 1)?)
}

/// Where the position map of `l` sends `x`.
fn letter_position_map(l: Letter, x: Dyadic) -> Result<Dyadic> {
    let i = l.index;
    let lo = block_edge(i)?;
    let mid = block_edge(i + 1)?;
    let hi = block_edge(i + 2)?;
    match l.family {
        Family::Sigma => {
            // Both signs exchange the blocks; the sign only picks the
            // over-strand.
            if x >= lo && x < mid {
                mid.add(x.sub(lo)?.mul_pow2(-1)?)
            } else if x >= mid && x < hi {
                lo.add(x.sub(mid)?.mul_pow2(1)?)
            } else {
                Ok(x)
            }
        }
        Family::A => {
            let shift = mid.sub(lo)?.mul_pow2(-1)?; // 2^{-i-1}
            match l.sign {
                Sign::Pos => {
                    if x >= lo && x < mid {
                        lo.add(x.sub(lo)?.mul_pow2(-1)?)
                    } else if x >= mid && x < hi {
                        x.sub(shift)
                    } else if x >= hi {
                        Dyadic::one().sub(Dyadic::one().sub(x)?.mul_pow2(1)?)
                    } else {
                        Ok(x)
                    }
                }
                Sign::Neg => {
                    let inner = lo.add(shift)?; // (i,1)#
                    if x >= lo && x < inner {
                        lo.add(x.sub(lo)?.mul_pow2(1)?)
                    } else if x >= inner && x < mid {
                        x.add(shift)
                    } else if x >= mid {
                        Dyadic::one().sub(Dyadic::one().sub(x)?.mul_pow2(-1)?)
                    } else {
                        Ok(x)
                    }
                }
            }
        }
    }
}

/// Computes the layout of the diagram of `w` drawn on `t`.
pub fn layout(t: &Tree, w: &Word) -> Result<DiagramLayout> {
    let ds = tree_dyadics(t)?;
    let mut strands: Vec<Vec<Dyadic>> =
        ds[..ds.len() - 2].iter().map(|&d| vec![d]).collect();
    let mut crossings = Vec::new();
    let mut cur = t.clone();
    for (r, &l) in w.letters().iter().enumerate() {
        cur = act_tree(&cur, &Word::single(l))
            .map_err(|_| Error::Partial { pos: r + 1, letter: l.to_string() })?;
        for strand in &mut strands {
            let x = *strand.last().unwrap();
            strand.push(letter_position_map(l, x)?);
        }
        if l.family == Family::Sigma {
            crossings.push(Crossing {
                row: r,
                index: l.index,
                first_family_over: l.sign == Sign::Pos,
            });
        }
    }
    Ok(DiagramLayout { rows: w.letters().to_vec(), strands, crossings })
}

/// Render format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

/// Renders the diagram of `w` drawn on `t`; the output bytes depend only on
/// the inputs.
pub fn render_diagram(t: &Tree, w: &Word, format: RenderFormat) -> Result<Vec<u8>> {
    let l = layout(t, w)?;
    Ok(match format {
        RenderFormat::Svg => render_svg(&l).into_bytes(),
        RenderFormat::Ascii => render_ascii(&l).into_bytes(),
    })
}

const ROW_HEIGHT: f64 = 40.0;
const MARGIN: f64 = 40.0;
const WIDTH: f64 = 800.0;
const GAP: f64 = 6.0;

fn fx(d: Dyadic) -> f64 {
    d.to_f64() * WIDTH
}

fn svg_line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
    out.push_str(&format!(
        "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" {style}/>\n"
    ));
}

/// Splits the unit parameter interval of an under-strand at its crossings
/// with the over-strands, leaving a fixed-length gap around each.
fn cut_segments(ux: (f64, f64), overs: &[(f64, f64)], length: f64) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = Vec::new();
    for &(ox0, ox1) in overs {
        let denom = (ux.1 - ux.0) - (ox1 - ox0);
        if denom.abs() < 1e-9 {
            continue;
        }
        let t = (ox0 - ux.0) / denom;
        if t > 0.0 && t < 1.0 {
            cuts.push(t);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let half = (GAP / 2.0) / length;
    let mut pieces = Vec::new();
    let mut start = 0.0;
    for t in cuts {
        if t - half > start {
            pieces.push((start, t - half));
        }
        start = (t + half).max(start);
    }
    if start < 1.0 {
        pieces.push((start, 1.0));
    }
    pieces
}

fn render_svg(l: &DiagramLayout) -> String {
    let height = ROW_HEIGHT * l.rows.len() as f64 + 2.0 * MARGIN;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"{height:.0}\" \
         viewBox=\"0 0 800 {height:.0}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0.5\" y=\"0.5\" width=\"799\" height=\"{:.0}\" fill=\"white\" \
         stroke=\"black\"/>\n",
        height - 1.0
    ));
    let strand_style = "stroke=\"black\" stroke-width=\"2\"";
    let guide_style = "stroke=\"grey\" stroke-width=\"1\" stroke-dasharray=\"4 4\"";
    // Margins: vertical stubs above the first and below the last row.
    for strand in &l.strands {
        let x0 = fx(strand[0]);
        svg_line(&mut out, x0, 0.0, x0, MARGIN, strand_style);
        let xn = fx(*strand.last().unwrap());
        svg_line(&mut out, xn, height - MARGIN, xn, height, strand_style);
    }
    for (r, &letter) in l.rows.iter().enumerate() {
        let y0 = MARGIN + ROW_HEIGHT * r as f64;
        let y1 = y0 + ROW_HEIGHT;
        out.push_str(&format!(
            "  <text x=\"8\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\" \
             fill=\"grey\">{}</text>\n",
            (y0 + y1) / 2.0,
            letter
        ));
        let crossing = l.crossings.iter().find(|c| c.row == r);
        if letter.family == Family::A {
            // Grey guides at the block edges the rescaling reshapes.
            for k in [letter.index, letter.index + 1, letter.index + 2] {
                if let Ok(e) = block_edge(k) {
                    svg_line(&mut out, fx(e), y0, fx(e), y1, guide_style);
                }
            }
        }
        let segs: Vec<(f64, f64)> =
            l.strands.iter().map(|s| (fx(s[r]), fx(s[r + 1]))).collect();
        match crossing {
            None => {
                for &(x0, x1) in &segs {
                    svg_line(&mut out, x0, y0, x1, y1, strand_style);
                }
            }
            Some(c) => {
                // The first family moves right (block i to block i+1).
                let moving_right: Vec<usize> =
                    (0..segs.len()).filter(|&s| segs[s].1 > segs[s].0).collect();
                let over: Vec<usize> = if c.first_family_over {
                    moving_right.clone()
                } else {
                    (0..segs.len()).filter(|s| !moving_right.contains(s)).collect()
                };
                let over_segs: Vec<(f64, f64)> =
                    over.iter().map(|&s| segs[s]).collect();
                for (s, &(x0, x1)) in segs.iter().enumerate() {
                    if over.contains(&s) || x0 == x1 {
                        svg_line(&mut out, x0, y0, x1, y1, strand_style);
                    } else {
                        let length = ((x1 - x0).powi(2) + ROW_HEIGHT.powi(2)).sqrt();
                        for (t0, t1) in cut_segments((x0, x1), &over_segs, length) {
                            svg_line(
                                &mut out,
                                x0 + (x1 - x0) * t0,
                                y0 + ROW_HEIGHT * t0,
                                x0 + (x1 - x0) * t1,
                                y0 + ROW_HEIGHT * t1,
                                strand_style,
                            );
                        }
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

const ASCII_COLS: usize = 65;
const SUBROWS: usize = 4;

fn ascii_col(x: f64) -> usize {
    ((x * (ASCII_COLS - 1) as f64).round() as usize).min(ASCII_COLS - 1)
}

fn render_ascii(l: &DiagramLayout) -> String {
    let margin = 6;
    let marker_line = |xs: &[Dyadic]| -> String {
        let mut line = vec![b'-'; ASCII_COLS];
        for &x in xs {
            line[ascii_col(x.to_f64())] = b'+';
        }
        format!("{}{}", " ".repeat(margin), String::from_utf8(line).unwrap())
    };
    let tops: Vec<Dyadic> = l.strands.iter().map(|s| s[0]).collect();
    let mut out = String::new();
    out.push_str(&marker_line(&tops));
    out.push('\n');
    for (r, &letter) in l.rows.iter().enumerate() {
        let crossing = l.crossings.iter().find(|c| c.row == r);
        let segs: Vec<(f64, f64)> = l
            .strands
            .iter()
            .map(|s| (s[r].to_f64(), s[r + 1].to_f64()))
            .collect();
        // Under strands first so over strands overwrite them at collisions.
        let mut order: Vec<usize> = (0..segs.len()).collect();
        if let Some(c) = crossing {
            order.sort_by_key(|&s| {
                let moving_right = segs[s].1 > segs[s].0;
                moving_right == c.first_family_over
            });
        }
        for j in 0..SUBROWS {
            let t = (j as f64 + 0.5) / SUBROWS as f64;
            let mut line = vec![b' '; ASCII_COLS];
            for &s in &order {
                let (x0, x1) = segs[s];
                let c = if x1 > x0 {
                    b'\\'
                } else if x1 < x0 {
                    b'/'
                } else {
                    b'|'
                };
                line[ascii_col(x0 + (x1 - x0) * t)] = c;
            }
            let label = if j == SUBROWS / 2 { format!("{letter}") } else { String::new() };
            out.push_str(&format!(
                "{label:<margin$}{}\n",
                String::from_utf8(line).unwrap()
            ));
        }
        let bottoms: Vec<Dyadic> = l.strands.iter().map(|s| s[r + 1]).collect();
        out.push_str(&marker_line(&bottoms));
        out.push('\n');
    }
    if l.rows.is_empty() {
        // A frame needs a bottom edge even with no rows.
        out.push_str(&marker_line(&tops));
        out.push('\n');
    }
    out
}
