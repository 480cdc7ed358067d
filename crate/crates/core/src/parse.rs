//! Text syntax for summation trees.
//!
//! ```text
//! expr  := label | '(' expr '+' expr ')'
//! label := [A-Za-z_][A-Za-z0-9_]* | [0-9]+
//! ```
//!
//! Spaces and tabs between tokens are ignored. Serialization is the
//! `Display` impl of [`Tree`](crate::tree::Tree).

use thiserror::Error;

use crate::tree::{is_label_char, Label, Shape, SumTree, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {found:?} at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: char,
        expected: &'static str,
    },
    #[error("unbalanced parenthesis: input ended at position {pos}, expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("invalid label {text:?} at position {pos}")]
    BadLabel { pos: usize, text: String },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
    #[error("duplicate leaf label {label:?}")]
    DuplicateLabel { label: String },
}

impl ParseError {
    /// Byte offset of the error, where one applies.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Unexpected { pos, .. }
            | ParseError::UnexpectedEnd { pos, .. }
            | ParseError::BadLabel { pos, .. }
            | ParseError::Trailing { pos } => Some(*pos),
            ParseError::Empty | ParseError::DuplicateLabel { .. } => None,
        }
    }
}

/// Parses a labeled summation. Leaf labels must be pairwise distinct.
pub fn parse(text: &str) -> Result<SumTree, ParseError> {
    let tree = parse_labels(text)?;
    if let Some(dup) = tree.duplicate_label() {
        return Err(ParseError::DuplicateLabel {
            label: dup.to_string(),
        });
    }
    Ok(tree)
}

/// Parses the grammar without the distinct-label requirement.
pub fn parse_labels(text: &str) -> Result<SumTree, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(ParseError::Empty);
    }
    let tree = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(ParseError::Trailing { pos: p.pos });
    }
    Ok(tree)
}

/// Parses an expression and erases its labels. Labels may repeat, so
/// `((x+x)+x)` is accepted.
pub fn parse_shape(text: &str) -> Result<Shape, ParseError> {
    parse_labels(text).map(|t| t.shape())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == ' ' || c == '\t' || c == '\n' || c == '\r' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char, expected: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(ParseError::Unexpected {
                pos: self.pos,
                found,
                expected,
            }),
            None => Err(ParseError::UnexpectedEnd {
                pos: self.pos,
                expected,
            }),
        }
    }

    fn expr(&mut self) -> Result<SumTree, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let left = self.expr()?;
                self.expect('+', "'+'")?;
                let right = self.expr()?;
                self.expect(')', "')'")?;
                Ok(Tree::node(left, right))
            }
            Some(c) if is_label_char(c) => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if is_label_char(c)) {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                Label::new(text)
                    .map(Tree::leaf)
                    .map_err(|_| ParseError::BadLabel {
                        pos: start,
                        text: text.to_string(),
                    })
            }
            Some(found) => Err(ParseError::Unexpected {
                pos: self.pos,
                found,
                expected: "'(' or a label",
            }),
            None => Err(ParseError::UnexpectedEnd {
                pos: self.pos,
                expected: "'(' or a label",
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_of_four() {
        let t = parse("(((a+b)+c)+d)").unwrap();
        assert_eq!(t.leaf_count(), 4);
        let order: Vec<&str> = t.leaves().iter().map(|l| l.as_str()).collect();
        assert_eq!(order, ["a", "b", "c", "d"]);
        assert_eq!(t.s_node_count(), 1);
    }

    #[test]
    fn single_leaf() {
        let t = parse("x").unwrap();
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.serialize(), "x");
    }

    #[test]
    fn whitespace_is_ignored() {
        let t = parse("  ( ( a + b )\t+ 12 ) ").unwrap();
        assert_eq!(t.serialize(), "((a+b)+12)");
    }

    #[test]
    fn unbalanced_parenthesis() {
        let err = parse("((a+b)+(c+d)").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnexpectedEnd {
                pos: 12,
                expected: "')'"
            }
        );
        assert!(err.to_string().contains("unbalanced"));
    }

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(parse("").unwrap_err(), ParseError::Empty);
        assert_eq!(parse("   ").unwrap_err(), ParseError::Empty);
        assert_eq!(parse("(a*b)").unwrap_err().position(), Some(2));
        assert_eq!(
            parse("(a+b))").unwrap_err(),
            ParseError::Trailing { pos: 5 }
        );
        assert_eq!(parse("a b").unwrap_err(), ParseError::Trailing { pos: 2 });
        assert!(matches!(
            parse("(9a+b)").unwrap_err(),
            ParseError::BadLabel { pos: 1, .. }
        ));
        assert!(matches!(
            parse("(a+)").unwrap_err(),
            ParseError::Unexpected { pos: 3, .. }
        ));
    }

    #[test]
    fn duplicate_labels_rejected_for_summations_only() {
        assert_eq!(
            parse("((a+b)+a)").unwrap_err(),
            ParseError::DuplicateLabel { label: "a".into() }
        );
        let s = parse_shape("((x+x)+x)").unwrap();
        assert_eq!(s.serialize(), "((x+x)+x)");
    }
}
