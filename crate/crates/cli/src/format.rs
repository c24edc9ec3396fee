//! The `.mspace` text format.
//!
//! ```text
//! # comment
//! field 3          # a prime p, or Q
//! n 2
//! offset           # optional: n rows follow, makes the file affine
//! 1 0
//! 0 1
//! space 1          # k, then k matrices of n rows each
//! 0 1
//! 0 0
//! ```
//!
//! Entries are integers or fractions `a/b`; over `F_p` they are reduced mod
//! `p`. Blank lines and everything after `#` are ignored.

use mspace_core::{AffineSpace, FieldDesc, Matrix, MatrixSubspace, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: `{token}` is not a value of the field")]
    ValueOutOfField { line: usize, token: String },
    #[error("line {line}: {source}")]
    Core { line: usize, source: mspace_core::Error },
}

/// Parsed file: a linear space, or an affine one when `offset` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MSpace {
    Linear(MatrixSubspace),
    Affine(AffineSpace),
}

impl MSpace {
    pub fn field(&self) -> FieldDesc {
        match self {
            MSpace::Linear(v) => v.field(),
            MSpace::Affine(a) => a.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MSpace::Linear(v) => v.n(),
            MSpace::Affine(a) => a.n(),
        }
    }

    /// A linear space `V` is read as `I + V`.
    pub fn into_affine(self) -> mspace_core::Result<AffineSpace> {
        match self {
            MSpace::Linear(v) => AffineSpace::new(Matrix::identity(v.field(), v.n()), v),
            MSpace::Affine(a) => Ok(a),
        }
    }
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let toks: Vec<&str> = body.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        let last_line = text.lines().count().max(1);
        Lines { items, pos: 0, last_line }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let item = self.items.get(self.pos).cloned().ok_or_else(|| ParseError::Syntax {
            line: self.last_line,
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    /// `keyword value` line.
    fn keyed(&mut self, keyword: &str) -> Result<(usize, &'a str), ParseError> {
        let (line, toks) = self.next(&format!("`{keyword}`"))?;
        match toks.as_slice() {
            [k, v] if *k == keyword => Ok((line, *v)),
            _ => Err(ParseError::Syntax { line, msg: format!("expected `{keyword} <value>`") }),
        }
    }

    fn matrix(&mut self, field: FieldDesc, n: usize) -> Result<Matrix, ParseError> {
        let mut entries: Vec<Scalar> = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (line, toks) = self.next("a matrix row")?;
            if toks.len() != n {
                return Err(ParseError::Syntax { line, msg: format!("expected {n} entries, found {}", toks.len()) });
            }
            for tok in toks {
                let s = field
                    .parse_scalar(tok)
                    .ok_or_else(|| ParseError::ValueOutOfField { line, token: tok.to_string() })?;
                entries.push(s);
            }
        }
        Ok(Matrix::from_scalars(field, n, n, &entries).expect("entry count matches"))
    }
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax { line, msg: format!("{what} must be a non-negative integer, got `{tok}`") })
}

pub fn parse_mspace(text: &str) -> Result<MSpace, ParseError> {
    let mut lines = Lines::new(text);
    let (line, f) = lines.keyed("field")?;
    let field = if f == "Q" {
        FieldDesc::rational()
    } else {
        let p: u64 = f
            .parse()
            .map_err(|_| ParseError::Syntax { line, msg: format!("field must be a prime or Q, got `{f}`") })?;
        FieldDesc::prime(p).map_err(|source| ParseError::Core { line, source })?
    };
    let (line, n) = lines.keyed("n")?;
    let n = parse_count(line, n, "n")?;
    if n == 0 {
        return Err(ParseError::Syntax { line, msg: "n must be positive".into() });
    }
    let offset = match lines.peek() {
        Some((_, toks)) if toks.as_slice() == ["offset"] => {
            lines.pos += 1;
            Some(lines.matrix(field, n)?)
        }
        _ => None,
    };
    let (line, k) = lines.keyed("space")?;
    let k = parse_count(line, k, "space")?;
    let mut gens = Vec::with_capacity(k);
    for _ in 0..k {
        gens.push(lines.matrix(field, n)?);
    }
    if let Some((line, _)) = lines.peek() {
        return Err(ParseError::Syntax { line: *line, msg: "trailing content".into() });
    }
    let space = MatrixSubspace::span(field, n, &gens).expect("matrices share field and size");
    Ok(match offset {
        Some(o) => MSpace::Affine(AffineSpace::new(o, space).expect("offset matches the space")),
        None => MSpace::Linear(space),
    })
}

fn write_matrix(out: &mut String, m: &Matrix) {
    for row in m.to_scalar_rows() {
        let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Canonical text: the echelon basis of the space, and the reduced offset.
pub fn write_mspace(space: &MSpace) -> String {
    let mut out = String::new();
    let field = match space.field() {
        FieldDesc::Prime(p) => p.to_string(),
        FieldDesc::Rational => "Q".into(),
    };
    out.push_str(&format!("field {field}\nn {}\n", space.n()));
    let linear = match space {
        MSpace::Affine(a) => {
            out.push_str("offset\n");
            write_matrix(&mut out, a.offset());
            a.translation()
        }
        MSpace::Linear(v) => v,
    };
    let basis = linear.basis();
    out.push_str(&format!("space {}\n", basis.len()));
    for (i, m) in basis.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_matrix(&mut out, m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_example() {
        let k = FieldDesc::prime(3).unwrap();
        let got = parse_mspace("field 3\nn 2\nspace 1\n0 1\n2 0\n").unwrap();
        let m = Matrix::from_i64(k, &[[0, 1], [2, 0]]);
        assert_eq!(got, MSpace::Linear(MatrixSubspace::span(k, 2, &[m]).unwrap()));
    }

    #[test]
    fn affine_example() {
        let k = FieldDesc::prime(3).unwrap();
        let got = parse_mspace("field 3\nn 2\noffset\n1 0\n0 1\nspace 1\n0 1\n0 0\n").unwrap();
        let nt2 = MatrixSubspace::span(k, 2, &[Matrix::unit(k, 2, 0, 1)]).unwrap();
        assert_eq!(got, MSpace::Affine(AffineSpace::new(Matrix::identity(k, 2), nt2).unwrap()));
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(
            parse_mspace("field 4\nn 2\nspace 0\n"),
            Err(ParseError::Core { line: 1, source: mspace_core::Error::NotPrime(4) })
        ));
        assert_eq!(
            parse_mspace("field 3\nn 2\nspace 1\n0 x\n0 0\n"),
            Err(ParseError::ValueOutOfField { line: 4, token: "x".into() })
        );
        assert!(matches!(parse_mspace("field 3\nn 2\nspace 1\n0 1 2\n"), Err(ParseError::Syntax { line: 4, .. })));
        assert!(matches!(parse_mspace("field 3\nn 2\nspace 1\n0 1\n"), Err(ParseError::Syntax { line: 4, .. })));
        assert!(matches!(parse_mspace("field 3\nn 2\nspace 0\nextra\n"), Err(ParseError::Syntax { line: 4, .. })));
    }

    #[test]
    fn forgiving_entries() {
        let text = "# header\nfield 5\n\nn 1 # size\nspace 2\n7\n\n1/2\n";
        let v = parse_mspace(text).unwrap();
        assert_eq!(write_mspace(&v), "field 5\nn 1\nspace 1\n1\n");
        let q = parse_mspace("field Q\nn 1\nspace 1\n-4/6\n").unwrap();
        assert_eq!(write_mspace(&q), "field Q\nn 1\nspace 1\n1\n");
    }
}
