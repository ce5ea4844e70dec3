//! Reader for the term grammar
//!
//! ```text
//! term := "x" INT | "[" term ("," term){n-1} "]"
//! ```
//!
//! Whitespace between tokens is skipped. The `Display` impl of [`Term`]
//! writes the same grammar without whitespace.

use thiserror::Error;

use crate::term::{Generator, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arity mismatch at byte {pos}: bracket has {found} components, expected {expected}")]
    Arity {
        pos: usize,
        expected: usize,
        found: usize,
    },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.error("expected generator index after 'x'");
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let index: u32 = match digits.parse() {
                    Ok(i) => i,
                    Err(_) => {
                        return Err(ParseError::Syntax {
                            pos: start,
                            msg: "generator index out of range".into(),
                        })
                    }
                };
                match Generator::new(index) {
                    Some(g) => Ok(Term::leaf(g)),
                    None => Err(ParseError::Syntax {
                        pos: start,
                        msg: "generator index must be at least 1".into(),
                    }),
                }
            }
            Some(b'[') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = vec![self.term()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.term()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        Some(c) => return self.error(format!("unexpected '{}'", c as char)),
                        None => return self.error("unterminated bracket"),
                    }
                }
                if children.len() != self.n {
                    return Err(ParseError::Arity {
                        pos: open,
                        expected: self.n,
                        found: children.len(),
                    });
                }
                Ok(Term::bracket(children))
            }
            Some(c) => self.error(format!("unexpected '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` as a term whose brackets all have arity `n`.
pub fn parse(text: &str, n: usize) -> Result<Term, ParseError> {
    if n < 2 {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: format!("arity must be at least 2, got {n}"),
        });
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaf_and_bracket() {
        assert_eq!(parse("x3", 3).unwrap(), Term::x(3));
        let t = parse("[x3,x2,x1]", 3).unwrap();
        assert_eq!(t, Term::bracket(vec![Term::x(3), Term::x(2), Term::x(1)]));
        assert_eq!(parse(" [ x3 , x2,x1 ] ", 3).unwrap(), t);
    }

    #[test]
    fn arity_mismatch_reports_position() {
        assert_eq!(
            parse("[x3,x2]", 3),
            Err(ParseError::Arity {
                pos: 0,
                expected: 3,
                found: 2
            })
        );
        assert!(matches!(
            parse("[[x1,x2],x3,x4]", 3),
            Err(ParseError::Arity { pos: 1, .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse("", 2),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse("x", 2),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(parse("x0", 2), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("[x1,x2", 2), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse("[x1;x2]", 2),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse("x1 x2", 2),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
    }

    #[test]
    fn nested_round_trip() {
        let s = "[[x3,x2,x1],x1,[x2,x1,x3]]";
        assert_eq!(parse(s, 3).unwrap().to_string(), s);
    }
}
