//! Parser for the rule DSL.
//!
//! Grammar (whitespace between tokens is insignificant, `#` starts a comment
//! that runs to end of line, input is UTF-8 but identifiers are ASCII):
//!
//! ```text
//! base      := statement*
//! statement := literal ( "," literal )* "->" literal "." | literal "."
//! literal   := "!"? identifier
//! identifier:= [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Empty input — including input that is only whitespace and comments — is a
//! valid, empty rule base. Duplicate statements are silently collapsed.

use crate::error::ParseError;
use crate::model::{Atom, Literal, Rule, RuleBase};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Bang,
    Comma,
    Arrow,
    Period,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier \"{name}\""),
            Token::Bang => "'!'".to_string(),
            Token::Comma => "','".to_string(),
            Token::Arrow => "'->'".to_string(),
            Token::Period => "'.'".to_string(),
        }
    }
}

/// A token plus the 1-based position where it starts.
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    /// Next token, or `Ok(None)` at end of input.
    fn next_token(&mut self) -> Result<Option<Spanned>, ParseError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        let token = match c {
            '!' => {
                self.bump();
                Token::Bang
            }
            ',' => {
                self.bump();
                Token::Comma
            }
            '.' => {
                self.bump();
                Token::Period
            }
            '-' => {
                self.bump();
                match self.chars.peek() {
                    Some('>') => {
                        self.bump();
                        Token::Arrow
                    }
                    _ => {
                        return Err(ParseError {
                            line,
                            column,
                            message: "expected '->' after '-'".to_string(),
                        })
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Token::Ident(name)
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    message: format!(
                        "unexpected character {other:?}; expected '!', an identifier, \
                         ',', '->', or '.'"
                    ),
                })
            }
        };
        Ok(Some(Spanned {
            token,
            line,
            column,
        }))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<Spanned>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(text);
        let lookahead = lexer.next_token()?;
        Ok(Parser { lexer, lookahead })
    }

    fn advance(&mut self) -> Result<Option<Spanned>, ParseError> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.lookahead, next))
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match &self.lookahead {
            Some(sp) => ParseError {
                line: sp.line,
                column: sp.column,
                message: format!("expected {expected}, found {}", sp.token.describe()),
            },
            None => ParseError {
                line: self.lexer.line,
                column: self.lexer.column,
                message: format!("expected {expected}, found end of input"),
            },
        }
    }

    fn parse_literal(&mut self) -> Result<Literal, ParseError> {
        let mut positive = true;
        if matches!(self.lookahead.as_ref().map(|s| &s.token), Some(Token::Bang)) {
            self.advance()?;
            positive = false;
        }
        match self.advance()? {
            Some(Spanned {
                token: Token::Ident(name),
                line,
                column,
            }) => {
                let atom = Atom::new(name).map_err(|_| ParseError {
                    line,
                    column,
                    message: "invalid identifier".to_string(),
                })?;
                Ok(Literal::new(atom, positive))
            }
            other => {
                self.lookahead = other;
                Err(self.error_here("an identifier"))
            }
        }
    }

    fn parse_statement(&mut self) -> Result<Rule, ParseError> {
        let first = self.parse_literal()?;
        let mut body = vec![first];
        loop {
            match self.lookahead.as_ref().map(|s| &s.token) {
                Some(Token::Period) => {
                    // `lit.` is a fact; a multi-literal list needs an arrow
                    // before the period.
                    if body.len() == 1 {
                        self.advance()?;
                        return Ok(Rule::fact(body.pop().expect("one literal")));
                    }
                    return Err(self.error_here("'->'"));
                }
                Some(Token::Comma) => {
                    self.advance()?;
                    let lit = self.parse_literal()?;
                    body.push(lit);
                }
                Some(Token::Arrow) => {
                    self.advance()?;
                    let head = self.parse_literal()?;
                    match self.advance()? {
                        Some(Spanned {
                            token: Token::Period,
                            ..
                        }) => {
                            return Ok(Rule::new(body, head));
                        }
                        other => {
                            self.lookahead = other;
                            return Err(self.error_here("'.'"));
                        }
                    }
                }
                _ => return Err(self.error_here("',', '->', or '.'")),
            }
        }
    }

    fn parse_base(&mut self) -> Result<RuleBase, ParseError> {
        let mut rules = Vec::new();
        while self.lookahead.is_some() {
            rules.push(self.parse_statement()?);
        }
        Ok(RuleBase::new(rules))
    }
}

/// Parses DSL text into a rule base.
pub fn parse_rule_base(text: &str) -> Result<RuleBase, ParseError> {
    Parser::new(text)?.parse_base()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_facts_and_rules() {
        let base = parse_rule_base(
            "platinumCustomer. mentalCondition.\n\
             platinumCustomer -> creditWorthy.\n\
             mentalCondition -> !creditWorthy.",
        )
        .unwrap();
        assert_eq!(base.len(), 4);
        assert_eq!(base.facts().count(), 2);
        assert_eq!(base.rules_only().count(), 2);
    }

    #[test]
    fn whitespace_and_comments_are_insignificant() {
        let a = parse_rule_base("a,b->c. # trailing note\n# full line\n\n  d .").unwrap();
        let b = parse_rule_base("a, b -> c. d.").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_input_is_the_empty_base() {
        assert!(parse_rule_base("").unwrap().is_empty());
        assert!(parse_rule_base("   \n\t").unwrap().is_empty());
        assert!(parse_rule_base("# only a comment").unwrap().is_empty());
    }

    #[test]
    fn round_trips_canonical_text() {
        let base = parse_rule_base("b, !a -> c. a. !a. x -> y.").unwrap();
        let text = base.to_text();
        assert_eq!(parse_rule_base(&text).unwrap(), base);
        assert_eq!(text, "!a.\na.\n!a, b -> c.\nx -> y.\n");
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_rule_base("a.\n b -> .").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
        assert!(err.message.contains("identifier"), "{}", err.message);

        let err = parse_rule_base("a").unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        assert!(err.message.contains("end of input"), "{}", err.message);

        let err = parse_rule_base("a & b.").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));

        let err = parse_rule_base("a, b.").unwrap_err();
        assert!(err.message.contains("'->'"), "{}", err.message);

        let err = parse_rule_base("a -> b -> c.").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
    }

    #[test]
    fn missing_period_is_rejected() {
        assert!(parse_rule_base("a -> b").is_err());
        assert!(parse_rule_base(". a.").is_err());
    }

    #[test]
    fn non_ascii_identifiers_are_rejected() {
        assert!(parse_rule_base("é.").is_err());
        // ...but non-ASCII text may appear in comments.
        assert!(parse_rule_base("# café\na.").is_ok());
    }
}
