//! Output helpers: aligned text tables and number formatting.
//!
//! Text tables print values at six significant digits; CSV and JSON carry
//! full precision (shortest round-trip scientific notation).

/// Full-precision scientific notation for machine-readable output.
pub fn full(x: f64) -> String {
    format!("{x:e}")
}

/// Six-digit scientific notation for human tables.
pub fn short(x: f64) -> String {
    format!("{x:.6e}")
}

/// A right-aligned text table with a two-space column gap.
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.headers.len(), "table row width mismatch");
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], widths: &[usize], out: &mut String| {
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                for _ in 0..widths[i].saturating_sub(cell.len()) {
                    out.push(' ');
                }
                out.push_str(cell);
            }
            out.push('\n');
        };
        line(&self.headers, &widths, &mut out);
        for row in &self.rows {
            line(row, &widths, &mut out);
        }
        out
    }
}
