//! Text grammars for group specifications and element strings.
//!
//! Groups: `Z`, `Z^d`, `F<k>`, `C<m>`, products joined by `x`, e.g.
//! `Z^2 x C3`. Whitespace is ignored. Elements: `3` or `(1,-2)` for `Z^d`,
//! words such as `a b^-1 a` (identity `e`) for `F_k`, residues for `C_m`,
//! and `[x | y]` for products.

use super::{GroupElement, GroupSpec, FREE_LETTERS};
use crate::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Byte offset of the next significant character (or end of input).
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.offset();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(Error::parse(start, "expected a number"));
        }
        digits
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn signed(&mut self) -> Result<i64> {
        let start = self.offset();
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let magnitude = self.unsigned()?;
        let magnitude =
            i64::try_from(magnitude).map_err(|_| Error::parse(start, "number out of range"))?;
        Ok(if negative { -magnitude } else { magnitude })
    }
}

pub(super) fn parse_group(src: &str) -> Result<GroupSpec> {
    let mut cur = Cursor::new(src);
    let mut factors = Vec::new();
    loop {
        factors.push(parse_factor(&mut cur)?);
        match cur.peek() {
            None => break,
            Some('x') | Some('X') | Some('×') => {
                cur.bump();
            }
            Some(c) => {
                return Err(Error::parse(
                    cur.offset(),
                    format!("unexpected '{c}', expected 'x' or end of input"),
                ))
            }
        }
    }
    let spec = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        GroupSpec::DirectProduct(factors)
    };
    spec.validate()
        .map_err(|e| Error::parse(0, e.to_string()))?;
    Ok(spec)
}

fn parse_factor(cur: &mut Cursor<'_>) -> Result<GroupSpec> {
    let start = cur.offset();
    let positive = |cur: &mut Cursor<'_>, what: &str| -> Result<u64> {
        let at = cur.offset();
        let v = cur.unsigned()?;
        if v == 0 {
            return Err(Error::parse(at, format!("{what} must be positive")));
        }
        Ok(v)
    };
    match cur.bump() {
        Some('Z') | Some('ℤ') => {
            if cur.eat('^') {
                Ok(GroupSpec::FreeAbelian(positive(cur, "rank")? as usize))
            } else {
                Ok(GroupSpec::FreeAbelian(1))
            }
        }
        Some('F') => {
            cur.eat('_');
            let at = cur.offset();
            let k = positive(cur, "rank")? as usize;
            if k > FREE_LETTERS.len() {
                return Err(Error::parse(
                    at,
                    format!("free rank at most {} is supported", FREE_LETTERS.len()),
                ));
            }
            Ok(GroupSpec::Free(k))
        }
        Some('C') => {
            cur.eat('_');
            Ok(GroupSpec::FiniteCyclic(positive(cur, "order")?))
        }
        Some(c) => Err(Error::parse(
            start,
            format!("unexpected '{c}', expected one of Z, F, C"),
        )),
        None => Err(Error::parse(start, "unexpected end of input")),
    }
}

pub(super) fn parse_element(group: &GroupSpec, src: &str) -> Result<GroupElement> {
    let mut cur = Cursor::new(src);
    let x = parse_element_at(group, &mut cur, true)?;
    if let Some(c) = cur.peek() {
        return Err(Error::parse(cur.offset(), format!("unexpected '{c}'")));
    }
    Ok(x)
}

fn parse_element_at(group: &GroupSpec, cur: &mut Cursor<'_>, top: bool) -> Result<GroupElement> {
    match group {
        GroupSpec::FreeAbelian(d) => {
            let start = cur.offset();
            let paren = cur.eat('(');
            let mut coords = vec![cur.signed()?];
            while cur.eat(',') {
                coords.push(cur.signed()?);
            }
            if paren && !cur.eat(')') {
                return Err(Error::parse(cur.offset(), "expected ')'"));
            }
            if coords.len() != *d {
                return Err(Error::parse(
                    start,
                    format!("expected {d} coordinates, found {}", coords.len()),
                ));
            }
            Ok(GroupElement::abelian(&coords))
        }
        GroupSpec::Free(k) => parse_word(*k, cur),
        GroupSpec::FiniteCyclic(m) => {
            let r = cur.signed()?;
            Ok(GroupElement::Cyclic(r.rem_euclid(*m as i64) as u64))
        }
        GroupSpec::DirectProduct(fs) => {
            let start = cur.offset();
            let bracket = cur.eat('[');
            if !bracket && !top {
                return Err(Error::parse(start, "nested product elements need brackets"));
            }
            let mut xs = Vec::with_capacity(fs.len());
            for (i, f) in fs.iter().enumerate() {
                if i > 0 && !cur.eat('|') {
                    return Err(Error::parse(cur.offset(), "expected '|'"));
                }
                xs.push(parse_element_at(f, cur, false)?);
            }
            if bracket && !cur.eat(']') {
                return Err(Error::parse(cur.offset(), "expected ']'"));
            }
            Ok(GroupElement::Product(xs))
        }
    }
}

fn parse_word(rank: usize, cur: &mut Cursor<'_>) -> Result<GroupElement> {
    let mut letters = Vec::new();
    let stop = |c: char| matches!(c, '|' | ']' | ',');
    if matches!(cur.peek(), Some('e') | Some('1')) {
        cur.bump();
        return Ok(GroupElement::free_word(&[]));
    }
    while let Some(c) = cur.peek() {
        if stop(c) {
            break;
        }
        let at = cur.offset();
        let index = FREE_LETTERS
            .iter()
            .position(|&l| l as char == c)
            .filter(|&i| i < rank)
            .ok_or_else(|| Error::parse(at, format!("'{c}' is not a generator of F{rank}")))?;
        cur.bump();
        let exp = if cur.eat('^') { cur.signed()? } else { 1 };
        let letter = (index + 1) as i32 * if exp < 0 { -1 } else { 1 };
        letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    Ok(GroupElement::free_word(&letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_grammar() {
        assert_eq!(parse_group("Z").unwrap(), GroupSpec::FreeAbelian(1));
        assert_eq!(parse_group(" Z ^ 3 ").unwrap(), GroupSpec::FreeAbelian(3));
        assert_eq!(parse_group("F2").unwrap(), GroupSpec::Free(2));
        assert_eq!(parse_group("C6").unwrap(), GroupSpec::FiniteCyclic(6));
        assert_eq!(
            parse_group("Z^2 x C3").unwrap(),
            GroupSpec::DirectProduct(vec![GroupSpec::FreeAbelian(2), GroupSpec::FiniteCyclic(3)])
        );
        assert_eq!(
            parse_group("Z^2xC3").unwrap(),
            parse_group("Z^2 x C3").unwrap()
        );
    }

    #[test]
    fn group_grammar_errors_report_position() {
        match parse_group("Z x Q").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 4),
            e => panic!("unexpected {e:?}"),
        }
        match parse_group("C0").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 1),
            e => panic!("unexpected {e:?}"),
        }
        assert!(parse_group("").is_err());
        assert!(parse_group("Z x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["Z", "Z^2", "F3", "C6", "Z^2 x C3", "F2 x Z x C2"] {
            assert_eq!(parse_group(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn element_grammar() {
        let f2 = GroupSpec::Free(2);
        let w = parse_element(&f2, "a b^-1 a").unwrap();
        assert_eq!(w, GroupElement::free_word(&[1, -2, 1]));
        assert_eq!(parse_element(&f2, "a a^-1").unwrap(), f2.identity());
        assert_eq!(parse_element(&f2, "e").unwrap(), f2.identity());
        assert_eq!(
            f2.format_element(&parse_element(&f2, "a a b^-1").unwrap()),
            "a^2 b^-1"
        );
        assert!(parse_element(&f2, "c").is_err());

        let z2 = GroupSpec::FreeAbelian(2);
        assert_eq!(
            parse_element(&z2, "(1,-2)").unwrap(),
            GroupElement::abelian(&[1, -2])
        );
        assert_eq!(
            parse_element(&z2, "1, -2").unwrap(),
            GroupElement::abelian(&[1, -2])
        );
        assert!(parse_element(&z2, "3").is_err());

        let c6 = GroupSpec::FiniteCyclic(6);
        assert_eq!(parse_element(&c6, "-1").unwrap(), GroupElement::Cyclic(5));

        let p = parse_group("Z x F2").unwrap();
        let x = parse_element(&p, "[3 | a b]").unwrap();
        assert_eq!(p.format_element(&x), "[3 | a b]");
        assert_eq!(parse_element(&p, "3 | a b").unwrap(), x);
    }
}
