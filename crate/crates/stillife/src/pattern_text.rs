//! Boards as text: one line per row, `#` for a live cell and `.` for a dead
//! one, each line newline-terminated.

use stillife_core::Pattern;

use crate::ParseError;

pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let mut words = Vec::new();
    let mut cols = None;
    for (k, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let lineno = k + 1;
        if line.is_empty() {
            if text.lines().skip(k).all(|l| l.trim().is_empty()) {
                break;
            }
            return Err(ParseError::new(lineno, "empty row"));
        }
        let width = line.chars().count();
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => {
                return Err(ParseError::new(
                    lineno,
                    format!("row has {width} cells, expected {c}"),
                ));
            }
            Some(_) => {}
        }
        if width > stillife_core::life::MAX_SIDE {
            return Err(ParseError::new(
                lineno,
                format!(
                    "rows wider than {} cells are not supported",
                    stillife_core::life::MAX_SIDE
                ),
            ));
        }
        let mut word = 0u64;
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '#' => word |= 1 << j,
                '.' => {}
                other => {
                    return Err(ParseError::new(
                        lineno,
                        format!("unexpected character {other:?} (use '#' or '.')"),
                    ));
                }
            }
        }
        words.push(word);
    }
    let cols = cols.ok_or_else(|| ParseError::new(1, "no rows"))?;
    Pattern::from_rows(cols, words).map_err(|e| ParseError::new(1, e.to_string()))
}

pub fn format_pattern(p: &Pattern) -> String {
    let mut out = String::with_capacity(p.rows() * (p.cols() + 1));
    for line in pattern_lines(p) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// The rows of `p` as `#`/`.` strings.
pub fn pattern_lines(p: &Pattern) -> Vec<String> {
    (1..=p.rows())
        .map(|i| {
            let w = p.row(i);
            (0..p.cols())
                .map(|j| if w >> j & 1 == 1 { '#' } else { '.' })
                .collect()
        })
        .collect()
}
