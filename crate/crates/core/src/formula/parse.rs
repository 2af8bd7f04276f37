use super::Formula;
use crate::{Error, Result};

/// Parses the ASCII formula syntax.
///
/// ```text
/// formula := iff
/// iff     := imp ("<->" imp)*
/// imp     := or ("->" imp)?
/// or      := and ("|" and)*
/// and     := unary ("&" unary)*
/// unary   := "~" unary | "[]" unary | "<>" unary | atom
/// atom    := "false" | "true" | VAR | "(" formula ")"
/// VAR     := "x" [1-9][0-9]*
/// ```
///
/// Derived connectives are expanded as they are read.
pub fn parse(text: &str) -> Result<Formula> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = parser.iff()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, offset: usize, message: &str) -> Error {
        Error::Syntax {
            offset,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Consumes `token` if it comes next.
    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn peek(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(token.as_bytes())
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.eat("<->") {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat("->") {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat("|") {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::neg(self.unary()?));
        }
        if self.eat("[]") {
            return Ok(Formula::boxed(self.unary()?));
        }
        // `<->` never starts an operand, so `<>` is unambiguous here.
        if self.peek("<>") {
            self.pos += 2;
            return Ok(Formula::diamond(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let inner = self.iff()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        let word_end = self.src[start..]
            .iter()
            .position(|b| !b.is_ascii_alphanumeric() && *b != b'_')
            .map_or(self.src.len(), |p| start + p);
        let word = &self.src[start..word_end];
        match word {
            b"" => Err(self.error("expected a formula")),
            b"false" => {
                self.pos = word_end;
                Ok(Formula::Falsum)
            }
            b"true" => {
                self.pos = word_end;
                Ok(Formula::top())
            }
            [b'x', digits @ ..] if !digits.is_empty() && digits.iter().all(u8::is_ascii_digit) => {
                if digits[0] == b'0' {
                    return Err(self.error_at(start, "variable indices start at 1"));
                }
                let index = std::str::from_utf8(digits)
                    .ok()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| self.error_at(start, "variable index too large"))?;
                self.pos = word_end;
                Ok(Formula::Var(index))
            }
            _ => Err(self.error_at(start, "expected a variable, `true`, `false` or `(`")),
        }
    }
}
