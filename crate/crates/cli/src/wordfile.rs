//! The line-oriented cobordism word format.
//!
//! ```text
//! # S^1 x Σ_2 in the zero Spin^c structure
//! genus 2
//! degree 0
//! chamber +
//! eta 1/2
//! moves:
//! h1
//! twist 1 0 0 0 0 0 ... (row-major, at the current genus)
//! h2
//! glue 1 0 0 0 0 1 0 0 0 0 1 0 0 0 0 1
//! ```
//!
//! Keywords are case-insensitive, `#` starts a comment, and both LF and CRLF
//! line endings are accepted. `eta` defaults to `d + 1` (chamber `+`) or
//! `d - 1` (chamber `-`); `glue` defaults to the identity.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use swtqft::surface::MAX_GENUS;
use swtqft::{Chamber, CobordismWord, Error as CoreError, Move, SpMatrix, SpincParams, Surface};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at line {}, column {}",
            self.message, self.line, self.column
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    text: &line[b..byte],
                    column: c + 1,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            column: c + 1,
        });
    }
    tokens
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Parses `p/q`, `-p/q` or a plain integer.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix('-')
                .or_else(|| s.strip_prefix('+'))
                .unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_int<T: std::str::FromStr>(
    tok: &Token<'_>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    tok.text
        .parse()
        .map_err(|_| err(line, tok.column, format!("malformed {what} '{}'", tok.text)))
}

fn single_arg<'a>(
    tokens: &[Token<'a>],
    line: usize,
    keyword: &str,
) -> Result<Token<'a>, ParseError> {
    match tokens {
        [_, arg] => Ok(*arg),
        [kw] => Err(err(line, kw.column, format!("'{keyword}' needs a value"))),
        [_, _, extra, ..] => Err(err(
            line,
            extra.column,
            format!("unexpected token '{}'", extra.text),
        )),
        [] => unreachable!("blank lines are skipped"),
    }
}

fn symplectic_matrix(
    tokens: &[Token<'_>],
    line: usize,
    genus: usize,
    what: &str,
) -> Result<SpMatrix, ParseError> {
    let entries = tokens
        .iter()
        .map(|t| parse_int::<i64>(t, line, "integer"))
        .collect::<Result<Vec<_>, _>>()?;
    let column = tokens.first().map_or(1, |t| t.column);
    let surface = Surface::new(genus);
    let n = surface.rank();
    if entries.len() != n * n {
        return Err(err(
            line,
            column,
            format!(
                "{what} at genus {genus} needs {} integers, found {}",
                n * n,
                entries.len()
            ),
        ));
    }
    SpMatrix::from_row_major(surface, &entries).map_err(|e| match e {
        CoreError::NotSymplectic {
            row,
            col,
            found,
            expected,
        } => err(
            line,
            column,
            format!(
                "{what} matrix is not symplectic: (M^T Q M)[{row}][{col}] = {found}, expected {expected}"
            ),
        ),
        other => err(line, column, format!("{what} matrix: {other}")),
    })
}

/// Parses the text of a word file into a validated [`CobordismWord`].
pub fn parse_word_file(text: &str) -> Result<CobordismWord, ParseError> {
    let mut genus: Option<usize> = None;
    let mut degree: Option<(i64, usize)> = None;
    let mut chamber: Option<Chamber> = None;
    let mut eta: Option<(BigRational, usize, usize)> = None;
    let mut moves_line: Option<usize> = None;
    let mut moves: Vec<Move> = Vec::new();
    let mut glue: Option<SpMatrix> = None;
    let mut current_genus = 0usize;
    let mut last_line = 0usize;
    let mut last_move_line: Option<usize> = None;

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        last_line = line_no;
        let head = tokens[0];
        let keyword = head.text.to_ascii_lowercase();
        let duplicate = |name: &str| err(line_no, head.column, format!("duplicate '{name}'"));
        match keyword.as_str() {
            "genus" => {
                if genus.is_some() {
                    return Err(duplicate("genus"));
                }
                if moves_line.is_some() {
                    return Err(err(line_no, head.column, "'genus' must precede 'moves:'"));
                }
                let arg = single_arg(&tokens, line_no, "genus")?;
                let g: usize = parse_int(&arg, line_no, "genus")?;
                if g > MAX_GENUS {
                    return Err(err(
                        line_no,
                        arg.column,
                        format!("genus {g} exceeds {MAX_GENUS}"),
                    ));
                }
                genus = Some(g);
                current_genus = g;
            }
            "degree" => {
                if degree.is_some() {
                    return Err(duplicate("degree"));
                }
                let arg = single_arg(&tokens, line_no, "degree")?;
                degree = Some((parse_int(&arg, line_no, "degree")?, line_no));
            }
            "chamber" => {
                if chamber.is_some() {
                    return Err(duplicate("chamber"));
                }
                let arg = single_arg(&tokens, line_no, "chamber")?;
                chamber = Some(match arg.text {
                    "+" => Chamber::Plus,
                    "-" => Chamber::Minus,
                    other => {
                        return Err(err(
                            line_no,
                            arg.column,
                            format!("chamber must be '+' or '-', found '{other}'"),
                        ))
                    }
                });
            }
            "eta" => {
                if eta.is_some() {
                    return Err(duplicate("eta"));
                }
                let arg = single_arg(&tokens, line_no, "eta")?;
                let value = parse_rational(arg.text).ok_or_else(|| {
                    err(
                        line_no,
                        arg.column,
                        format!("malformed rational '{}'", arg.text),
                    )
                })?;
                eta = Some((value, line_no, arg.column));
            }
            "moves:" => {
                if moves_line.is_some() {
                    return Err(duplicate("moves:"));
                }
                if tokens.len() > 1 {
                    return Err(err(
                        line_no,
                        tokens[1].column,
                        "'moves:' takes no arguments",
                    ));
                }
                if genus.is_none() {
                    return Err(err(line_no, head.column, "'genus' must precede 'moves:'"));
                }
                moves_line = Some(line_no);
            }
            "h1" | "h2" | "twist" => {
                if moves_line.is_none() {
                    return Err(err(
                        line_no,
                        head.column,
                        format!("'{keyword}' outside the 'moves:' section"),
                    ));
                }
                let mv = match keyword.as_str() {
                    "twist" => Move::Twist(symplectic_matrix(
                        &tokens[1..],
                        line_no,
                        current_genus,
                        "twist",
                    )?),
                    _ if tokens.len() > 1 => {
                        return Err(err(
                            line_no,
                            tokens[1].column,
                            format!("'{keyword}' takes no arguments"),
                        ))
                    }
                    "h1" => Move::H1,
                    _ => Move::H2,
                };
                current_genus = match mv.genus_after(current_genus) {
                    Some(g) if g <= MAX_GENUS => g,
                    Some(g) => {
                        return Err(err(
                            line_no,
                            head.column,
                            format!("genus {g} exceeds {MAX_GENUS}"),
                        ))
                    }
                    None => return Err(err(line_no, head.column, "genus underflow")),
                };
                moves.push(mv);
                last_move_line = Some(line_no);
            }
            "glue" => {
                if glue.is_some() {
                    return Err(duplicate("glue"));
                }
                let g = genus
                    .ok_or_else(|| err(line_no, head.column, "'genus' must precede 'glue'"))?;
                glue = Some(symplectic_matrix(&tokens[1..], line_no, g, "glue")?);
            }
            other => {
                return Err(err(
                    line_no,
                    head.column,
                    format!("unknown keyword '{other}'"),
                ));
            }
        }
    }

    let end = last_line.max(1);
    let genus = genus.ok_or_else(|| err(end, 1, "missing 'genus'"))?;
    let (d, degree_line) = degree.ok_or_else(|| err(end, 1, "missing 'degree'"))?;
    let chamber = chamber.ok_or_else(|| err(end, 1, "missing 'chamber'"))?;
    if current_genus != genus {
        let at = last_move_line.or(moves_line).unwrap_or(end);
        return Err(err(
            at,
            1,
            format!("unclosed word: genus trail ends at {current_genus}, expected {genus}"),
        ));
    }
    let params = match eta {
        Some((value, line, column)) => {
            SpincParams::new(d, chamber, value).map_err(|e| err(line, column, e.to_string()))?
        }
        None => SpincParams::with_default_eta(d, chamber)
            .map_err(|e| err(degree_line, 1, e.to_string()))?,
    };
    let glue = glue.unwrap_or_else(|| SpMatrix::identity(Surface::new(genus)));
    CobordismWord::new(genus, params, moves, glue).map_err(|e| err(end, 1, e.to_string()))
}

fn write_ints(out: &mut String, keyword: &str, entries: &[i64]) {
    out.push_str(keyword);
    for x in entries {
        let _ = write!(out, " {x}");
    }
    out.push('\n');
}

/// Canonical text form: every field explicit, lower-case keywords, LF endings.
pub fn serialize_word(word: &CobordismWord) -> String {
    let p = word.params();
    let mut out = String::new();
    let _ = writeln!(out, "genus {}", word.start_genus());
    let _ = writeln!(out, "degree {}", p.d);
    let _ = writeln!(out, "chamber {}", p.chamber);
    let _ = writeln!(out, "eta {}", p.eta_bar);
    out.push_str("moves:\n");
    for mv in word.moves() {
        match mv {
            Move::H1 => out.push_str("h1\n"),
            Move::H2 => out.push_str("h2\n"),
            Move::Twist(m) => write_ints(&mut out, "twist", m.row_major()),
        }
    }
    write_ints(&mut out, "glue", word.glue().row_major());
    out
}
