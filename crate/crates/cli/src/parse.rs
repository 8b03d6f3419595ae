//! Text grammars for derivative signatures and partitions.
//!
//! Signature: whitespace-separated factors `x<i>` or `x<i>^<k>`, ids and
//! exponents positive, e.g. `"x1^4 x5^2 x7 x8"`. Repeated factors for the
//! same variable accumulate.
//!
//! Partition: bracketed blocks of the same factors, e.g.
//! `"[x1^2 x5][x1^2 x5][x7 x8]"`. Repeated blocks accumulate multiplicity.

use faadibruno::multiset::{Multiset, VarId};
use faadibruno::multiset_partition::MultisetPartition;

/// A grammar error with a 1-based character position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(input: &str) -> Self {
        Self {
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos + 1,
            message: message.into(),
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected {what}")));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value: u32 = text.parse().map_err(|_| ParseError {
            position: start + 1,
            message: format!("{what} {text} is out of range"),
        })?;
        if value == 0 {
            return Err(ParseError {
                position: start + 1,
                message: format!("{what} must be at least 1"),
            });
        }
        Ok(value)
    }

    /// `x<i>` or `x<i>^<k>`.
    fn factor(&mut self) -> Result<(VarId, u32), ParseError> {
        match self.peek() {
            Some('x') => {
                self.bump();
            }
            _ => return Err(self.error("expected 'x'")),
        }
        let var = self.number("variable id")?;
        let count = if self.peek() == Some('^') {
            self.bump();
            self.number("exponent")?
        } else {
            1
        };
        Ok((var, count))
    }
}

/// Parse a derivative signature; empty input is the empty signature.
pub fn parse_signature(input: &str) -> Result<Multiset, ParseError> {
    let mut scanner = Scanner::new(input);
    let mut tau = Multiset::new();
    loop {
        scanner.skip_ws();
        if scanner.peek().is_none() {
            return Ok(tau);
        }
        let (var, count) = scanner.factor()?;
        tau.insert(var, count);
    }
}

/// Parse a bracketed partition; empty input is the empty partition.
pub fn parse_partition(input: &str) -> Result<MultisetPartition, ParseError> {
    let mut scanner = Scanner::new(input);
    let mut parts: Vec<Multiset> = Vec::new();
    loop {
        scanner.skip_ws();
        match scanner.peek() {
            None => {
                return Ok(MultisetPartition::from_parts(parts)
                    .expect("blocks are checked non-empty"));
            }
            Some('[') => {
                scanner.bump();
                let mut part = Multiset::new();
                loop {
                    scanner.skip_ws();
                    match scanner.peek() {
                        Some(']') => {
                            scanner.bump();
                            break;
                        }
                        None => return Err(scanner.error("expected ']'")),
                        _ => {
                            let (var, count) = scanner.factor()?;
                            part.insert(var, count);
                        }
                    }
                }
                if part.is_empty() {
                    return Err(scanner.error("empty block"));
                }
                parts.push(part);
            }
            Some(_) => return Err(scanner.error("expected '['")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_grammar() {
        assert_eq!(
            parse_signature("x1^4 x5^2 x7 x8").unwrap(),
            Multiset::from_entries([(1, 4), (5, 2), (7, 1), (8, 1)])
        );
        assert_eq!(parse_signature("  ").unwrap(), Multiset::new());
        // repeated factors accumulate
        assert_eq!(
            parse_signature("x2 x2^2").unwrap(),
            Multiset::from_entries([(2, 3)])
        );
    }

    #[test]
    fn signature_errors_carry_positions() {
        let err = parse_signature("x1 y2").unwrap_err();
        assert_eq!(err.position, 4);
        assert_eq!(err.message, "expected 'x'");
        let err = parse_signature("x0").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_signature("x1^0").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_signature("x").unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn partition_grammar() {
        let mp = parse_partition("[x1^2 x5][x1^2 x5][x7 x8]").unwrap();
        assert_eq!(mp.part_count(), 3);
        assert_eq!(mp.distinct_part_count(), 2);
        assert_eq!(
            mp.total(),
            Multiset::from_entries([(1, 4), (5, 2), (7, 1), (8, 1)])
        );
        assert_eq!(parse_partition("").unwrap(), MultisetPartition::empty());
    }

    #[test]
    fn partition_errors() {
        assert!(parse_partition("[x1").is_err());
        assert!(parse_partition("[]").is_err());
        assert!(parse_partition("x1").is_err());
        let err = parse_partition("[x1] [q]").unwrap_err();
        assert_eq!(err.position, 7);
    }
}
