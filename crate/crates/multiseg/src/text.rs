//! Text grammar for segments and multisegments.
//!
//! ```text
//! segment      := "[" int "," int "]" | "[" int "]"
//! multisegment := "{" (segment ("*" count)? ("," segment ("*" count)?)*)? "}"
//! ```
//!
//! Whitespace is allowed between tokens. Error positions are byte offsets.

use crate::error::{Error, Result};
use crate::hd_classes::SpehParams;
use crate::multiseg::Multisegment;
use crate::segment::Segment;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i32> {
        self.skip_ws();
        let begin = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = begin;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[begin..self.pos]).unwrap_or("");
        text.parse::<i32>().map_err(|_| Error::Parse {
            pos: begin,
            msg: format!("integer out of range: {text}"),
        })
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(x) => self.err(format!("unexpected trailing '{}'", x as char)),
        }
    }

    fn segment(&mut self) -> Result<Segment> {
        self.expect(b'[')?;
        self.skip_ws();
        let at = self.pos;
        let a = self.int()?;
        let b = if self.eat(b',') { self.int()? } else { a };
        self.expect(b']')?;
        if a > b {
            return Err(Error::Parse {
                pos: at,
                msg: format!("segment start {a} exceeds end {b}"),
            });
        }
        Ok(Segment::of(a, b))
    }

    fn multisegment(&mut self) -> Result<Multisegment> {
        self.expect(b'{')?;
        let mut out = Vec::new();
        if self.eat(b'}') {
            return Ok(Multisegment::new());
        }
        loop {
            let s = self.segment()?;
            let mut k = 1;
            if self.eat(b'*') {
                self.skip_ws();
                let at = self.pos;
                let c = self.int()?;
                if c < 1 {
                    return Err(Error::Parse { pos: at, msg: "count must be at least 1".into() });
                }
                k = c as usize;
            }
            out.extend(std::iter::repeat(s).take(k));
            if self.eat(b',') {
                continue;
            }
            self.expect(b'}')?;
            break;
        }
        Ok(Multisegment::from_segments(out))
    }

    fn speh(&mut self) -> Result<SpehParams> {
        self.expect(b'(')?;
        self.skip_ws();
        let at = self.pos;
        let top = self.int()?;
        self.expect(b',')?;
        let d = self.int()?;
        self.expect(b',')?;
        let m = self.int()?;
        self.expect(b')')?;
        SpehParams::new(top, d, m).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
    }
}

pub fn parse_segment(s: &str) -> Result<Segment> {
    let mut c = Cursor::new(s);
    let seg = c.segment()?;
    c.finish()?;
    Ok(seg)
}

pub fn parse_multisegment(s: &str) -> Result<Multisegment> {
    let mut c = Cursor::new(s);
    let m = c.multisegment()?;
    c.finish()?;
    Ok(m)
}

/// A single `(top,d,m)` triple.
pub fn parse_speh(s: &str) -> Result<SpehParams> {
    let mut c = Cursor::new(s);
    let p = c.speh()?;
    c.finish()?;
    Ok(p)
}

/// A comma separated list of `(top,d,m)` triples, optionally wrapped in
/// square brackets.
pub fn parse_speh_list(s: &str) -> Result<Vec<SpehParams>> {
    let mut c = Cursor::new(s);
    let bracketed = c.eat(b'[');
    let mut out = Vec::new();
    if !(bracketed && c.peek() == Some(b']')) {
        loop {
            out.push(c.speh()?);
            if !c.eat(b',') {
                break;
            }
        }
    }
    if bracketed {
        c.expect(b']')?;
    }
    c.finish()?;
    Ok(out)
}

pub fn format_speh_list(ps: &[SpehParams]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let h = parse_multisegment("{[0,4],[2,5],[2,3],[2]}").unwrap();
        assert_eq!(h, Multisegment::from_pairs(&[(0, 4), (2, 5), (2, 3), (2, 2)]));
        let d = parse_multisegment("{[1,2]*2}").unwrap();
        assert_eq!(d.count(&Segment::of(1, 2)), 2);
        assert_eq!(parse_multisegment(" { } ").unwrap(), Multisegment::new());
        assert_eq!(parse_segment("[-3, 2]").unwrap(), Segment::of(-3, 2));
    }

    #[test]
    fn rejects_bad_input_with_position() {
        match parse_multisegment("{[3,1]}") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_multisegment("{[0,1],}") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_multisegment("{[0,1]").is_err());
        assert!(parse_multisegment("{[0,1]*0}").is_err());
        assert!(parse_segment("[0,1] x").is_err());
    }

    #[test]
    fn speh_lists() {
        let v = parse_speh_list("(3,3,2),(5,5,2)").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(format_speh_list(&v), "(3,3,2),(5,5,2)");
        assert_eq!(parse_speh_list("[(1,1,2), (2,3,1)]").unwrap().len(), 2);
        assert!(parse_speh("(1,0,2)").is_err());
    }
}
