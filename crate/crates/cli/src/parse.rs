//! Text formats for groups and element lists.
//!
//! Groups are written `Z4xZ3` (the `Z` and `x` are case-insensitive) or as a
//! bare comma list `4,3`. Element lists are comma-separated tuples such as
//! `(1,0),(3,0)`; in a rank-1 group a bare integer also names an element.
//! Negative coordinates are reduced modulo the factor size.

use cayley_spectra::group::{AbelianGroup, ElementSet};
use cayley_spectra::spectrum::ConnectionSet;
use thiserror::Error;

use crate::error::CliError;

/// A syntax error. `column` is 1-based and counts characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} of {input:?}")]
pub struct ParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, chars: input.chars().collect(), pos: 0 }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError { input: self.input.to_string(), column: pos + 1, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, pred: impl Fn(char) -> bool) -> bool {
        match self.peek() {
            Some(c) if pred(c) => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.chars.len()
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(match self.peek() {
                Some(c) => format!("expected a number, found {c:?}"),
                None => "expected a number, found end of input".to_string(),
            }));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn modulus(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let text = self.digits()?;
        match text.parse::<i64>() {
            Ok(0) => Err(self.error_at(start, "cyclic factor must be at least 1")),
            Ok(m) => Ok(m),
            Err(_) => Err(self.error_at(start, "cyclic factor is too large")),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let negative = self.eat(|c| c == '-');
        let text = self.digits()?;
        let value: i64 = text.parse().map_err(|_| self.error_at(start, "coordinate is too large"))?;
        Ok(if negative { -value } else { value })
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {:?}", self.peek().unwrap())))
        }
    }
}

pub fn parse_group_spec(s: &str) -> Result<AbelianGroup, ParseError> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    let z_form = matches!(cur.peek(), Some('z' | 'Z'));
    let mut moduli = Vec::new();
    loop {
        cur.skip_ws();
        if z_form && !cur.eat(|c| c == 'z' || c == 'Z') {
            return Err(cur.error("expected 'Z'"));
        }
        moduli.push(cur.modulus()?);
        cur.skip_ws();
        let more = if z_form { cur.eat(|c| c == 'x' || c == 'X') } else { cur.eat(|c| c == ',') };
        if !more {
            break;
        }
    }
    cur.expect_end()?;
    AbelianGroup::new(&moduli).map_err(|e| cur.error_at(0, e.to_string()))
}

pub fn format_group_spec(group: &AbelianGroup) -> String {
    group.to_string()
}

/// Parses an element list for `group`. The empty string is the empty set.
pub fn parse_element_list(group: &AbelianGroup, s: &str) -> Result<ElementSet, ParseError> {
    let mut cur = Cursor::new(s);
    let mut out = ElementSet::new();
    cur.skip_ws();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        cur.skip_ws();
        let start = cur.pos;
        let coords = if cur.eat(|c| c == '(') {
            let mut coords = Vec::new();
            loop {
                cur.skip_ws();
                coords.push(cur.integer()?);
                cur.skip_ws();
                if cur.eat(|c| c == ')') {
                    break;
                }
                if !cur.eat(|c| c == ',') {
                    return Err(cur.error("expected ',' or ')'"));
                }
            }
            coords
        } else if group.rank() == 1 {
            vec![cur.integer()?]
        } else {
            return Err(cur.error(format!("expected '(' (elements of {group} have {} coordinates)", group.rank())));
        };
        if coords.len() != group.rank() {
            return Err(cur.error_at(
                start,
                format!("element has {} coordinates but {group} needs {}", coords.len(), group.rank()),
            ));
        }
        out.insert(group.element(&coords).map_err(|e| cur.error_at(start, e.to_string()))?);
        cur.skip_ws();
        if !cur.eat(|c| c == ',') {
            break;
        }
    }
    cur.expect_end()?;
    Ok(out)
}

pub fn format_element_list(set: &ElementSet) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Builds a connection set from either `A`/`B` lists or a single `S` list
/// that is split into its symmetric and antisymmetric parts.
pub fn parse_set_spec(
    group: &AbelianGroup,
    a: Option<&str>,
    b: Option<&str>,
    s: Option<&str>,
) -> Result<ConnectionSet, CliError> {
    match (a, b, s) {
        (None, None, None) => Err(CliError::Usage("a connection set is required: give --A/--B or --S".into())),
        (_, _, Some(_)) if a.is_some() || b.is_some() => {
            Err(CliError::Usage("--S cannot be combined with --A or --B".into()))
        }
        (_, _, Some(s)) => Ok(ConnectionSet::split(group, &parse_element_list(group, s)?)?),
        (a, b, None) => {
            let a = parse_element_list(group, a.unwrap_or(""))?;
            let b = parse_element_list(group, b.unwrap_or(""))?;
            Ok(ConnectionSet::new(group, a, b)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cayley_spectra::group::groups_up_to_order;

    fn set(g: &AbelianGroup, elems: &[&[i64]]) -> ElementSet {
        elems.iter().map(|c| g.element(c).unwrap()).collect()
    }

    #[test]
    fn group_specs() {
        assert_eq!(parse_group_spec("Z4xZ3").unwrap().moduli(), &[4, 3]);
        assert_eq!(parse_group_spec("z4XZ3").unwrap().moduli(), &[4, 3]);
        assert_eq!(parse_group_spec(" 4, 3 ").unwrap().moduli(), &[4, 3]);
        assert_eq!(parse_group_spec("5").unwrap().moduli(), &[5]);
        assert_eq!(parse_group_spec("Z1").unwrap().order(), 1);
    }

    #[test]
    fn group_spec_errors_carry_a_column() {
        let e = parse_group_spec("Z0").unwrap_err();
        assert_eq!(e.column, 2);
        assert!(e.message.contains("at least 1"));
        assert_eq!(parse_group_spec("Z4xY3").unwrap_err().column, 4);
        assert_eq!(parse_group_spec("4,").unwrap_err().column, 3);
        assert_eq!(parse_group_spec("").unwrap_err().column, 1);
        assert_eq!(parse_group_spec("4,3)").unwrap_err().column, 4);
        assert_eq!(parse_group_spec("Z4,3").unwrap_err().column, 3);
        assert!(parse_group_spec("99999999999999999999").is_err());
    }

    #[test]
    fn group_spec_round_trip() {
        for g in groups_up_to_order(30) {
            assert_eq!(parse_group_spec(&format_group_spec(&g)).unwrap(), g);
        }
    }

    #[test]
    fn element_lists() {
        let g = AbelianGroup::new(&[4, 3]).unwrap();
        assert_eq!(parse_element_list(&g, "(1,0),(3,0)").unwrap(), set(&g, &[&[1, 0], &[3, 0]]));
        assert_eq!(parse_element_list(&g, " ( -1 , 5 ) ").unwrap(), set(&g, &[&[3, 2]]));
        assert!(parse_element_list(&g, "").unwrap().is_empty());
        let c4 = AbelianGroup::new(&[4]).unwrap();
        assert_eq!(parse_element_list(&c4, "1,(2),-1").unwrap(), set(&c4, &[&[1], &[2], &[3]]));
    }

    #[test]
    fn element_list_errors() {
        let g = AbelianGroup::new(&[4, 3]).unwrap();
        assert_eq!(parse_element_list(&g, "(1,0),(1)").unwrap_err().column, 7);
        assert_eq!(parse_element_list(&g, "1").unwrap_err().column, 1);
        assert_eq!(parse_element_list(&g, "(1,0").unwrap_err().column, 5);
        assert_eq!(parse_element_list(&g, "(1,0),").unwrap_err().column, 7);
        assert_eq!(parse_element_list(&g, "(1,0) x").unwrap_err().column, 7);
    }

    #[test]
    fn element_list_round_trip() {
        let g = AbelianGroup::new(&[2, 6]).unwrap();
        let all: ElementSet = g.elements().collect();
        assert_eq!(parse_element_list(&g, &format_element_list(&all)).unwrap(), all);
        let c5 = AbelianGroup::new(&[5]).unwrap();
        let s = set(&c5, &[&[1], &[4]]);
        assert_eq!(parse_element_list(&c5, &format_element_list(&s)).unwrap(), s);
    }

    #[test]
    fn set_specs() {
        let g = AbelianGroup::new(&[4]).unwrap();
        let cs = parse_set_spec(&g, Some("2"), Some("1"), None).unwrap();
        assert_eq!(cs.undirected(), &set(&g, &[&[2]]));
        assert_eq!(cs.directed(), &set(&g, &[&[1]]));
        assert_eq!(parse_set_spec(&g, None, None, Some("1,2")).unwrap(), cs);
        assert_eq!(parse_set_spec(&g, None, Some("1,3"), None).unwrap_err().exit_code(), 2);
        assert_eq!(parse_set_spec(&g, Some("1"), None, None).unwrap_err().exit_code(), 2);
        assert_eq!(parse_set_spec(&g, Some("2"), None, Some("1")).unwrap_err().exit_code(), 1);
        assert_eq!(parse_set_spec(&g, None, None, None).unwrap_err().exit_code(), 1);
        assert_eq!(parse_set_spec(&g, Some("(1"), None, None).unwrap_err().exit_code(), 1);
        let empty = parse_set_spec(&g, None, None, Some("")).unwrap();
        assert!(empty.union().is_empty());
    }
}
