//! Minimal S-expression reader shared by the proof, λ-term, and derivation
//! front ends.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

impl Sexpr {
    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(s) => Some(s),
            Sexpr::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexpr]> {
        match self {
            Sexpr::Atom(_) => None,
            Sexpr::List(items) => Some(items),
        }
    }
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Atom(s) => write!(f, "{s}"),
            Sexpr::List(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                // Line comments start with ';'.
                Some(b';') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexpr, SyntaxError> {
        self.skip_trivia();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => return Err(self.error("unclosed '('")),
                        Some(b')') => {
                            self.bump();
                            return Ok(Sexpr::List(items));
                        }
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(b')') => Err(self.error("unexpected ')'")),
            Some(_) => {
                let mut atom = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b';' {
                        break;
                    }
                    atom.push(self.bump().unwrap() as char);
                }
                Ok(Sexpr::Atom(atom))
            }
        }
    }
}

/// Reads a single S-expression; trailing input (other than whitespace and
/// comments) is an error.
pub fn parse_one(src: &str) -> Result<Sexpr, SyntaxError> {
    let mut r = Reader::new(src);
    let e = r.read()?;
    r.skip_trivia();
    if r.peek().is_some() {
        return Err(r.error("trailing input after expression"));
    }
    Ok(e)
}

/// Reads every S-expression in the input.
pub fn parse_many(src: &str) -> Result<Vec<Sexpr>, SyntaxError> {
    let mut r = Reader::new(src);
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.peek().is_none() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists() {
        let e = parse_one("(eps x (= x (succ 0)))").unwrap();
        let items = e.list().unwrap();
        assert_eq!(items[0].atom(), Some("eps"));
        assert_eq!(items.len(), 3);
    }

    #[test]
    fn reports_position() {
        let err = parse_one("(a\n  (b").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn skips_comments() {
        let es = parse_many("; header\n(a) ; trailing\n(b)").unwrap();
        assert_eq!(es.len(), 2);
    }
}
