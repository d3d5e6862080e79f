//! Plain-text line files: one line `a b c` per row (meaning `ax + by + c = 0`),
//! rationals written `p/q` or as integers, `#` starts a comment.

use super::{ExactScalar, GeomError, ProjLine};

pub fn parse_lines(text: &str) -> Result<Vec<ProjLine>, GeomError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let row = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GeomError::Parse {
                row,
                message: format!("expected 3 coefficients, found {}", fields.len()),
            });
        }
        let mut coeffs = Vec::with_capacity(3);
        for f in fields {
            let q: ExactScalar = f.parse().map_err(|_| GeomError::Parse {
                row,
                message: format!("invalid rational `{f}`"),
            })?;
            coeffs.push(q);
        }
        let [a, b, c]: [ExactScalar; 3] = coeffs.try_into().expect("three fields");
        let line = ProjLine::new(a, b, c).map_err(|_| GeomError::Parse {
            row,
            message: "all coefficients are zero".into(),
        })?;
        if line.is_line_at_infinity() {
            return Err(GeomError::Parse {
                row,
                message: "`0 0 c` is the line at infinity, not an affine line".into(),
            });
        }
        lines.push(line);
    }
    Ok(lines)
}

pub fn format_lines(lines: &[ProjLine]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&format!("{} {} {}\n", l.a(), l.b(), l.c()));
    }
    out
}
