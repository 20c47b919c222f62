use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown operator `{token}` at {line}:{column}")]
    UnknownOperator {
        token: String,
        line: usize,
        column: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Until,
    Next,
    Eventually,
    Globally,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            column += i - start;
            let tok = match word.as_str() {
                "true" => Tok::True,
                "false" => Tok::False,
                "U" => Tok::Until,
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Globally,
                _ => Tok::Ident(word),
            };
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
            continue;
        }
        // Greedily take a run of punctuation so the error names the whole operator.
        let start = i;
        while i < chars.len()
            && !chars[i].is_whitespace()
            && !chars[i].is_ascii_alphanumeric()
            && !"()!&|_".contains(chars[i])
        {
            i += 1;
        }
        return Err(ParseError::UnknownOperator {
            token: chars[start..i.max(start + 1)].iter().collect(),
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    // until := or ('U' until)?
    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Until {
            self.bump();
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Next => Formula::next,
            Tok::Eventually => Formula::eventually,
            Tok::Globally => Formula::globally,
            _ => return self.primary(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.until()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(f)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            other => Err(self.error(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses the textual formula grammar.
///
/// Precedence from loosest to tightest: `U` (right associative), `|`, `&`,
/// then the prefix operators `!`, `X`, `F`, `G`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.until()?;
    if *p.peek() != Tok::End {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::render;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("a | (b & c)").unwrap(),
            Formula::or(a("a"), Formula::and(a("b"), a("c")))
        );
        assert_eq!(
            parse("F (a & b) | G (c & d)").unwrap(),
            Formula::or(
                Formula::eventually(Formula::and(a("a"), a("b"))),
                Formula::globally(Formula::and(a("c"), a("d")))
            )
        );
        assert!(matches!(parse("a U"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("a U b U c").unwrap(),
            Formula::until(a("a"), Formula::until(a("b"), a("c")))
        );
        assert_eq!(
            parse("a | b & c U d").unwrap(),
            Formula::until(Formula::or(a("a"), Formula::and(a("b"), a("c"))), a("d"))
        );
        assert_eq!(
            parse("!F a & X b").unwrap(),
            Formula::and(
                Formula::not(Formula::eventually(a("a"))),
                Formula::next(a("b"))
            )
        );
        assert_eq!(
            parse("  true\n& false ").unwrap(),
            Formula::and(Formula::True, Formula::False)
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse("a &\n  ) ") {
            Err(ParseError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse("a -> b") {
            Err(ParseError::UnknownOperator { token, column, .. }) => {
                assert_eq!(token, "->");
                assert_eq!(column, 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("(a | b").is_err());
        assert!(parse("a b").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn render_is_reparsable() {
        for s in [
            "a & (b & c)",
            "(a U b) U c",
            "!(a | b) & X F c",
            "G !p | F q",
            "a U (b | c)",
        ] {
            let f = parse(s).unwrap();
            assert_eq!(parse(&render(&f)).unwrap(), f, "{s}");
        }
    }
}
