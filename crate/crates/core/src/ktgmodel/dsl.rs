use std::fmt;

use super::{Ktg, KtgError, Move, MoveSequence};
use crate::qsymbols::Sign;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownId(String),
    IllegalMove(KtgError),
}

/// A parse or replay failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "{m}"),
            ParseErrorKind::UnknownId(id) => write!(f, "unknown id {id}"),
            ParseErrorKind::IllegalMove(e) => write!(f, "{e}"),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

/// Splits a statement into whitespace-separated tokens with 1-based columns.
fn tokens(s: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push(Token {
                    text: &s[b..i],
                    col: offset + b + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn parse_id(tok: &Token, prefix: char, line: usize) -> Result<u32, ParseError> {
    let err = || ParseError {
        line,
        col: tok.col,
        kind: ParseErrorKind::Syntax(format!("expected {prefix}<number>, found '{}'", tok.text)),
    };
    let rest = tok.text.strip_prefix(prefix).ok_or_else(err)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    rest.parse().map_err(|_| err())
}

fn parse_move(toks: &[Token], line: usize) -> Result<(Move, usize), ParseError> {
    let syntax = |col: usize, m: String| ParseError {
        line,
        col,
        kind: ParseErrorKind::Syntax(m),
    };
    let head = &toks[0];
    let arity = |n: usize| {
        if toks.len() < n {
            Err(syntax(head.col, format!("'{}' needs a target", head.text)))
        } else if toks.len() > n {
            Err(syntax(toks[n].col, format!("unexpected '{}'", toks[n].text)))
        } else {
            Ok(())
        }
    };
    match head.text {
        "A" => {
            arity(2)?;
            Ok((Move::Triangle(parse_id(&toks[1], 'v', line)?), toks[1].col))
        }
        "H+" | "H-" => {
            arity(2)?;
            let sign = if head.text == "H+" { Sign::Plus } else { Sign::Minus };
            Ok((Move::HalfTwist(parse_id(&toks[1], 'e', line)?, sign), toks[1].col))
        }
        "U" => {
            if toks.len() < 2 {
                arity(2)?;
            }
            let edge = parse_id(&toks[1], 'e', line)?;
            let rings = match toks.get(2) {
                None => 0,
                Some(t) => {
                    let n = t
                        .text
                        .strip_prefix("rings=")
                        .ok_or_else(|| syntax(t.col, format!("unexpected '{}'", t.text)))?;
                    if toks.len() > 3 {
                        return Err(syntax(toks[3].col, format!("unexpected '{}'", toks[3].text)));
                    }
                    n.parse()
                        .map_err(|_| syntax(t.col + 6, format!("bad ring count '{n}'")))?
                }
            };
            Ok((Move::Unzip { edge, rings }, toks[1].col))
        }
        other => Err(syntax(head.col, format!("unknown move '{other}'"))),
    }
}

/// Parses a move file and replays it, rejecting moves whose target does not
/// exist at that point. Statements are separated by newlines or `;`.
pub fn parse_sequence(text: &str) -> Result<MoveSequence, ParseError> {
    let mut header_seen = false;
    let mut moves = Vec::new();
    let mut g = Ktg::standard_tetrahedron();
    for (ln, raw) in text.split('\n').enumerate() {
        let line = ln + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in body.split(';') {
            let toks = tokens(stmt, offset);
            offset += stmt.len() + 1;
            if toks.is_empty() {
                continue;
            }
            if !header_seen {
                if toks.len() == 1 && toks[0].text == "tet" {
                    header_seen = true;
                    continue;
                }
                return Err(ParseError {
                    line,
                    col: toks[0].col,
                    kind: ParseErrorKind::Syntax("expected header 'tet'".into()),
                });
            }
            let (m, id_col) = parse_move(&toks, line)?;
            g = g.apply_move(&m).map_err(|e| ParseError {
                line,
                col: id_col,
                kind: match e {
                    KtgError::BadTarget(_) => ParseErrorKind::UnknownId(toks[1].text.to_string()),
                    other => ParseErrorKind::IllegalMove(other),
                },
            })?;
            moves.push(m);
        }
    }
    if !header_seen {
        return Err(ParseError {
            line: 1,
            col: 1,
            kind: ParseErrorKind::Syntax("expected header 'tet'".into()),
        });
    }
    Ok(MoveSequence::new(moves))
}

pub fn format_move(m: &Move) -> String {
    match *m {
        Move::Triangle(v) => format!("A v{v}"),
        Move::HalfTwist(e, Sign::Plus) => format!("H+ e{e}"),
        Move::HalfTwist(e, Sign::Minus) => format!("H- e{e}"),
        Move::Unzip { edge, rings: 0 } => format!("U e{edge}"),
        Move::Unzip { edge, rings } => format!("U e{edge} rings={rings}"),
    }
}

/// Canonical text: header, then one move per line, each line LF-terminated.
pub fn serialize(seq: &MoveSequence) -> String {
    let mut out = String::from("tet\n");
    for m in &seq.moves {
        out.push_str(&format_move(m));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_example() {
        let s = parse_sequence("tet\nA v1\nH+ e2\nU e5 rings=1").unwrap();
        assert_eq!(
            s.moves,
            vec![
                Move::Triangle(1),
                Move::HalfTwist(2, Sign::Plus),
                Move::Unzip { edge: 5, rings: 1 }
            ]
        );
        assert_eq!(serialize(&s), "tet\nA v1\nH+ e2\nU e5 rings=1\n");
    }

    #[test]
    fn comments_crlf_and_separators() {
        let s = parse_sequence("# a comment\r\ntet\r\nA v1 ; H- e2 # trailing\r\n\r\nU e5 rings=0\r\n").unwrap();
        assert_eq!(serialize(&s), "tet\nA v1\nH- e2\nU e5\n");
    }

    #[test]
    fn unknown_id_is_positioned() {
        let e = parse_sequence("tet\nU e99").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownId("e99".into()));
        let e = parse_sequence("tet\nA v1\nA v1").unwrap_err();
        assert_eq!((e.line, e.col), (3, 3));
    }

    #[test]
    fn syntax_errors() {
        for bad in ["A v1", "tet\nB v1", "tet\nA e1", "tet\nU e1 ring=2", "tet\nH+", "tet\nA v1 v2", "tet\nU e1 rings=x"] {
            assert!(matches!(parse_sequence(bad).unwrap_err().kind, ParseErrorKind::Syntax(_)), "{bad}");
        }
    }
}
