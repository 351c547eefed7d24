//! Element literals: `t[1,0]*s1*s0*tau`, and the `{"t": .., "w_word": ..}` JSON form.
//!
//! `s0` is the first affine simple reflection, `s1..sk` the finite simple
//! reflections and `s{k+1}..` the affine reflections of further components.
//! `tau`, `tau1`, `tau[2]` pick a generator of the length-zero subgroup.

use serde_json::{json, Value};

use crate::affine::{AffineWeylGroup, Element};
use crate::error::{Error, Result};
use crate::root_datum::WeylElement;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "expected an integer".into(),
        })
    }

    fn index(&mut self) -> Result<Option<usize>> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse().map(Some).map_err(|_| Error::Syntax {
            pos: start,
            msg: "index too large".into(),
        })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }
}

pub fn parse_element(g: &AffineWeylGroup, literal: &str) -> Result<Element> {
    let mut p = Parser {
        src: literal.as_bytes(),
        pos: 0,
    };
    let mut acc = g.identity();
    let mut omega_gens: Option<Vec<Element>> = None;
    loop {
        p.skip_ws();
        let start = p.pos;
        let factor = if p.keyword("tau") {
            let idx = if p.peek() == Some(b'[') {
                p.pos += 1;
                let i = p.int()?;
                p.eat(b']')?;
                usize::try_from(i).map_err(|_| Error::IndexOutOfRange { pos: start, index: 0 })?
            } else {
                p.index()?.unwrap_or(0)
            };
            let gens = omega_gens.get_or_insert_with(|| g.omega_generators());
            gens.get(idx)
                .cloned()
                .ok_or(Error::IndexOutOfRange { pos: start, index: idx })?
        } else if p.keyword("t") {
            p.eat(b'[')?;
            let mut v = vec![p.int()?];
            loop {
                p.skip_ws();
                match p.peek() {
                    Some(b',') => {
                        p.pos += 1;
                        v.push(p.int()?);
                    }
                    Some(b']') => {
                        p.pos += 1;
                        break;
                    }
                    _ => return Err(p.err("expected `,` or `]`")),
                }
            }
            if v.len() != g.rank() {
                return Err(Error::Arity {
                    pos: start,
                    expected: g.rank(),
                    found: v.len(),
                });
            }
            Element::translation(v)
        } else if p.keyword("s") {
            let idx = p.index()?.ok_or_else(|| p.err("expected a reflection index"))?;
            let pos = g
                .position_of_literal(idx)
                .ok_or(Error::IndexOutOfRange { pos: start, index: idx })?;
            g.simple_element(pos).clone()
        } else if p.keyword("1") || p.keyword("id") {
            g.identity()
        } else {
            return Err(p.err("expected `t[..]`, `s<i>` or `tau`"));
        };
        acc = acc.mul(&factor);
        p.skip_ws();
        match p.peek() {
            None => return Ok(acc),
            Some(b'*') => p.pos += 1,
            Some(_) => return Err(p.err("expected `*`")),
        }
    }
}

/// Reduced word of the finite part as literal indices.
pub fn finite_word(g: &AffineWeylGroup, x: &Element) -> Vec<usize> {
    x.finite_part()
        .reduced_word(g.datum())
        .into_iter()
        .map(|k| k + 1)
        .collect()
}

/// Canonical literal `t[..]*s_i*...` with the finite part as a reduced word.
pub fn format_element(g: &AffineWeylGroup, x: &Element) -> String {
    let t: Vec<String> = x.translation_part().iter().map(|c| c.to_string()).collect();
    let mut out = format!("t[{}]", t.join(","));
    for i in finite_word(g, x) {
        out.push_str(&format!("*s{i}"));
    }
    out
}

pub fn to_json(g: &AffineWeylGroup, x: &Element) -> Value {
    json!({ "t": x.translation_part(), "w_word": finite_word(g, x) })
}

pub fn from_json(g: &AffineWeylGroup, v: &Value) -> Result<Element> {
    let bad = |m: &str| Error::Syntax {
        pos: 0,
        msg: m.to_string(),
    };
    let t: Vec<i64> = v["t"]
        .as_array()
        .ok_or_else(|| bad("missing `t`"))?
        .iter()
        .map(|c| c.as_i64().ok_or_else(|| bad("non-integer translation")))
        .collect::<Result<_>>()?;
    if t.len() != g.rank() {
        return Err(Error::Arity {
            pos: 0,
            expected: g.rank(),
            found: t.len(),
        });
    }
    let k = g.datum().simple_indices().len();
    let word: Vec<usize> = v["w_word"]
        .as_array()
        .ok_or_else(|| bad("missing `w_word`"))?
        .iter()
        .map(|c| match c.as_u64() {
            Some(i) if (1..=k as u64).contains(&i) => Ok(i as usize - 1),
            _ => Err(bad("bad finite reflection index")),
        })
        .collect::<Result<_>>()?;
    Ok(Element::new(t, WeylElement::from_word(g.datum(), &word)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let gl2 = AffineWeylGroup::from_key("GL2").unwrap();
        assert_eq!(parse_element(&gl2, "t[1,0]").unwrap(), Element::translation(vec![1, 0]));
        let sl2 = AffineWeylGroup::from_key("SL2").unwrap();
        let x = parse_element(&sl2, "s1*s0").unwrap();
        assert_eq!(sl2.length(&x), 2);
        assert!(matches!(
            parse_element(&gl2, "t[1]"),
            Err(Error::Arity { expected: 2, found: 1, .. })
        ));
        let tau = parse_element(&gl2, "tau").unwrap();
        assert_eq!(gl2.length(&tau), 0);
        assert_eq!(parse_element(&gl2, "tau[0] * tau0").unwrap(), Element::translation(vec![1, 1]));
    }

    #[test]
    fn errors_carry_positions() {
        let sl2 = AffineWeylGroup::from_key("SL2").unwrap();
        assert_eq!(
            parse_element(&sl2, "s1*s7"),
            Err(Error::IndexOutOfRange { pos: 3, index: 7 })
        );
        assert!(matches!(parse_element(&sl2, "s1*"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_element(&sl2, "s1 x"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_element(&sl2, "tau"), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn format_roundtrip() {
        let g = AffineWeylGroup::from_key("G2-sc").unwrap();
        let x = parse_element(&g, "s0*s1*s2*s1*s0").unwrap();
        let lit = format_element(&g, &x);
        assert_eq!(parse_element(&g, &lit).unwrap(), x);
        assert_eq!(from_json(&g, &to_json(&g, &x)).unwrap(), x);
        assert_eq!(format_element(&g, &g.identity()), "t[0,0]");
    }
}
