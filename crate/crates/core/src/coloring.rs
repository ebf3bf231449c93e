//! Total colorings of a grid and their text format.
//!
//! The text format is line oriented:
//!
//! ```text
//! <rows> <cols> <palette>
//! c c c ...      (rows lines of cols 0-based color indices)
//! ```
//!
//! Lines end with LF and carry no trailing whitespace.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grid::{GridError, GridGraph, Symmetry, Vertex};

pub type Color = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("palette size must be between 1 and 255")]
    BadPalette,
    #[error("expected {expected} colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("color {color} at ({row},{col}) is outside palette of size {palette}")]
    ColorOutOfRange {
        row: usize,
        col: usize,
        color: Color,
        palette: Color,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> ColoringError {
    ColoringError::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    grid: GridGraph,
    palette: Color,
    colors: Vec<Color>,
}

impl Coloring {
    /// Build from row-major colors.
    pub fn new(grid: GridGraph, palette: Color, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if palette == 0 {
            return Err(ColoringError::BadPalette);
        }
        if colors.len() != grid.vertex_count() {
            return Err(ColoringError::WrongLength {
                expected: grid.vertex_count(),
                got: colors.len(),
            });
        }
        if let Some(i) = colors.iter().position(|&c| c >= palette) {
            let v = grid.vertex(i);
            return Err(ColoringError::ColorOutOfRange {
                row: v.row,
                col: v.col,
                color: colors[i],
                palette,
            });
        }
        Ok(Coloring {
            grid,
            palette,
            colors,
        })
    }

    /// Build from nested rows; the grid shape is taken from the input.
    pub fn from_rows(palette: Color, rows: &[Vec<Color>]) -> Result<Self, ColoringError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let grid = GridGraph::new(m, n)?;
        let flat: Vec<Color> = rows.iter().flatten().copied().collect();
        Coloring::new(grid, palette, flat)
    }

    pub fn grid(&self) -> GridGraph {
        self.grid
    }

    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[self.grid.index(v)]
    }

    pub fn color_at(&self, i: usize) -> Color {
        self.colors[i]
    }

    pub fn rows(&self) -> Vec<Vec<Color>> {
        self.colors
            .chunks(self.grid.cols)
            .map(<[Color]>::to_vec)
            .collect()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = [false; 256];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&b| b).count()
    }

    pub fn is_proper(&self) -> bool {
        self.monochromatic_edge().is_none()
    }

    /// First monochromatic edge in row-major edge order.
    pub fn monochromatic_edge(&self) -> Option<(Vertex, Vertex)> {
        self.grid
            .edges()
            .find(|&(u, v)| self.color(u) == self.color(v))
    }

    /// The coloring transported along `t`, living on `t.target_grid(grid)`.
    pub fn transformed(&self, t: Symmetry) -> Coloring {
        let target = t.target_grid(self.grid);
        let mut colors = vec![0; self.colors.len()];
        for v in self.grid.vertices() {
            colors[target.index(t.map(self.grid, v))] = self.color(v);
        }
        Coloring {
            grid: target,
            palette: self.palette,
            colors,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.grid.rows, self.grid.cols, self.palette);
        for row in self.colors.chunks(self.grid.cols) {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the text format. Errors carry 1-based line and column.
    pub fn parse(text: &str) -> Result<Self, ColoringError> {
        let mut lines = text.split('\n').enumerate();
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
        let header = header.strip_suffix('\r').unwrap_or(header);
        let fields = tokens(header);
        if fields.len() != 3 {
            return Err(parse_err(
                1,
                1,
                "header must be \"<rows> <cols> <palette>\"",
            ));
        }
        let mut nums = [0usize; 3];
        for (slot, (col, tok)) in nums.iter_mut().zip(&fields) {
            *slot = tok
                .parse()
                .map_err(|_| parse_err(1, *col, format!("invalid number {tok:?}")))?;
        }
        let [rows, cols, palette] = nums;
        if rows == 0 || cols == 0 {
            return Err(parse_err(1, 1, "grid dimensions must be positive"));
        }
        if palette == 0 || palette > 255 {
            return Err(parse_err(1, fields[2].0, "palette must be in 1..=255"));
        }
        let grid = GridGraph::new(rows, cols)?;
        let mut colors = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (lineno, line) = lines
                .next()
                .map(|(i, l)| (i + 1, l))
                .ok_or_else(|| parse_err(r + 2, 1, format!("missing row {r}")))?;
            let line = line.strip_suffix('\r').unwrap_or(line);
            let toks = tokens(line);
            if toks.len() != cols {
                return Err(parse_err(
                    lineno,
                    toks.get(cols).map_or(line.len() + 1, |t| t.0),
                    format!("expected {cols} colors, found {}", toks.len()),
                ));
            }
            for (col, tok) in toks {
                let c: usize = tok
                    .parse()
                    .map_err(|_| parse_err(lineno, col, format!("invalid color {tok:?}")))?;
                if c >= palette {
                    return Err(parse_err(
                        lineno,
                        col,
                        format!("color {c} outside palette of size {palette}"),
                    ));
                }
                colors.push(c as Color);
            }
        }
        for (i, rest) in lines {
            if !rest.trim().is_empty() {
                return Err(parse_err(i + 1, 1, "unexpected trailing content"));
            }
        }
        Coloring::new(grid, palette as Color, colors)
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// One character per cell, rows on separate lines.
pub fn render_ascii(col: &Coloring) -> String {
    let mut out = String::new();
    for row in col.colors.chunks(col.grid.cols) {
        for &c in row {
            out.push(if c < 10 {
                (b'0' + c) as char
            } else {
                (b'a' + c - 10) as char
            });
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ascii(self))
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Coloring", 4)?;
        s.serialize_field("rows", &self.grid.rows)?;
        s.serialize_field("cols", &self.grid.cols)?;
        s.serialize_field("palette", &self.palette)?;
        s.serialize_field("colors", &self.rows())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn properness_examples() {
        let cb = Coloring::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(cb.is_proper());
        let mono = Coloring::from_rows(2, &[vec![0, 0]]).unwrap();
        assert!(!mono.is_proper());
        assert_eq!(
            mono.monochromatic_edge(),
            Some((Vertex::new(0, 0), Vertex::new(0, 1)))
        );
        let pattern =
            Coloring::from_rows(3, &[vec![0, 1, 2, 0, 1, 2], vec![1, 2, 0, 1, 2, 0]]).unwrap();
        assert!(pattern.is_proper());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let text = "2 6 3\n0 1 2 0 1 2\n1 2 0 1 2 0\n";
        let col = Coloring::parse(text).unwrap();
        assert_eq!(col.to_text(), text);
        assert_eq!(col.grid(), GridGraph::new(2, 6).unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Coloring::parse("2 2 2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            ColoringError::Parse {
                line: 3,
                column: 3,
                message: "invalid color \"x\"".into()
            }
        );
        match Coloring::parse("2 2 2\n0 1\n1 2\n").unwrap_err() {
            ColoringError::Parse { line, column, .. } => assert_eq!((line, column), (3, 3)),
            e => panic!("{e}"),
        }
        match Coloring::parse("2 2 2\n0 1 0\n1 0\n").unwrap_err() {
            ColoringError::Parse { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("{e}"),
        }
        assert!(matches!(
            Coloring::parse("2 2\n").unwrap_err(),
            ColoringError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            Coloring::parse("2 2 2\n0 1\n").unwrap_err(),
            ColoringError::Parse { line: 3, .. }
        ));
    }

    #[test]
    fn constructor_rejects_out_of_range() {
        let g = GridGraph::new(1, 2).unwrap();
        assert!(matches!(
            Coloring::new(g, 2, vec![0, 2]),
            Err(ColoringError::ColorOutOfRange { col: 1, .. })
        ));
        assert!(matches!(
            Coloring::new(g, 2, vec![0]),
            Err(ColoringError::WrongLength { .. })
        ));
    }

    #[test]
    fn transform_moves_colors() {
        let col = Coloring::from_rows(3, &[vec![0, 1, 2], vec![1, 2, 0]]).unwrap();
        let flipped = col.transformed(Symmetry::FlipH);
        assert_eq!(flipped.rows(), vec![vec![2, 1, 0], vec![0, 2, 1]]);
        let turned = col.transformed(Symmetry::Rot90);
        assert_eq!(turned.grid(), GridGraph::new(3, 2).unwrap());
        assert_eq!(turned.rows(), vec![vec![1, 0], vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn ascii_rendering() {
        let col = Coloring::from_rows(3, &[vec![0, 1, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(render_ascii(&col), "012\n120\n");
    }
}
