//! Reader for the plain-text form produced by the text renderer, also
//! accepting the looser hand-written style
//! `xi(2s-4)^2/(xi(2s) xi(2s-3)) B_m(5/2-s) B_n(5/2-s)`.

use super::{BFactor, ChargeSlot, CoeffExpr, TermExpr, XiProduct};
use crate::affine::{AffineArg, ParseError};
use crate::rootsys::Node;

/// Parse a sum of terms.  `slots` binds each charge name to its node.
pub fn parse_coeff(text: &str, slots: &[(&str, Node)]) -> Result<CoeffExpr, ParseError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars == ['0'] {
        return Ok(CoeffExpr::default());
    }
    let mut terms = Vec::new();
    for piece in split_top_level(&chars, '+') {
        let mut p = TermParser {
            chars: piece,
            pos: 0,
            src: text,
            slots,
        };
        terms.extend(p.term()?);
    }
    Ok(CoeffExpr::new(terms))
}

fn split_top_level(chars: &[char], sep: char) -> Vec<&[char]> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&chars[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&chars[start..]);
    out
}

struct TermParser<'a> {
    chars: &'a [char],
    pos: usize,
    src: &'a str,
    slots: &'a [(&'a str, Node)],
}

impl TermParser<'_> {
    fn err(&self, why: impl Into<String>) -> ParseError {
        ParseError::new(self.src, why)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let s: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}` at offset {}", self.pos)))
        }
    }

    /// Text up to the parenthesis closing the one just consumed.
    fn balanced(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let mut depth = 1;
        while let Some(c) = self.peek() {
            self.pos += 1;
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(self.chars[start..self.pos - 1].iter().collect());
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unbalanced parentheses"))
    }

    fn affine(&self, s: &str) -> Result<AffineArg, ParseError> {
        s.parse::<AffineArg>().map_err(|e| self.err(e.reason))
    }

    fn slot(&self, name: &str) -> Result<ChargeSlot, ParseError> {
        self.slots
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(n, node)| ChargeSlot::new(node, n))
            .ok_or_else(|| self.err(format!("unknown charge `{name}`")))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '\'') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    /// A product, expanded into a sum when a factor is a parenthesized sum.
    fn term(&mut self) -> Result<Vec<TermExpr>, ParseError> {
        if self.chars.is_empty() {
            return Err(self.err("empty term"));
        }
        let mut acc: Vec<(XiProduct, Vec<BFactor>)> = vec![(XiProduct::one(), vec![])];
        while self.pos < self.chars.len() {
            if self.eat("*") {
                continue;
            }
            if self.eat("/") {
                let d = self.factor()?;
                let [(d, b)] = d.as_slice() else {
                    return Err(self.err("sum in a denominator"));
                };
                if !b.is_empty() {
                    return Err(self.err("block factor in a denominator"));
                }
                for (xi, _) in &mut acc {
                    *xi = xi.div(d);
                }
                continue;
            }
            let f = self.factor()?;
            acc = acc
                .iter()
                .flat_map(|(xi, bf)| {
                    f.iter().map(move |(p, b)| {
                        let mut bf = bf.clone();
                        bf.extend(b.iter().cloned());
                        (xi.mul(p), bf)
                    })
                })
                .collect();
        }
        Ok(acc
            .into_iter()
            .map(|(xi, bf)| TermExpr::new(xi, bf))
            .collect())
    }

    /// One factor: `1`, `xi(..)^k`, `B_m(..)`, `B_{m,n}(..,..)` or a
    /// parenthesized product or sum.  A sum comes back as its summands.
    fn factor(&mut self) -> Result<Vec<(XiProduct, Vec<BFactor>)>, ParseError> {
        if self.eat("xi(") {
            let inner = self.balanced()?;
            let arg = self.affine(&inner)?;
            let mut exp = 1;
            if self.eat("^") {
                let braced = self.eat("{");
                let start = self.pos;
                if self.peek() == Some('-') {
                    self.pos += 1;
                }
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                exp = s.parse().map_err(|_| self.err("bad exponent"))?;
                if braced {
                    self.expect('}')?;
                }
            }
            return Ok(vec![(XiProduct::xi_pow(arg, exp), vec![])]);
        }
        if self.eat("B_") {
            let names: Vec<String> = if self.eat("{") {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c != '}') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                self.expect('}')?;
                s.split(',').map(str::to_string).collect()
            } else {
                vec![self.ident()]
            };
            self.expect('(')?;
            let inner: Vec<char> = self.balanced()?.chars().collect();
            let args: Vec<String> = split_top_level(&inner, ',')
                .into_iter()
                .map(|a| a.iter().collect())
                .collect();
            if args.len() != names.len() {
                return Err(self.err("block arity does not match its charges"));
            }
            let b = match names.len() {
                1 => BFactor::A1 {
                    slot: self.slot(&names[0])?,
                    param: self.affine(&args[0])?,
                },
                2 => BFactor::A2 {
                    slots: [self.slot(&names[0])?, self.slot(&names[1])?],
                    params: [self.affine(&args[0])?, self.affine(&args[1])?],
                },
                _ => return Err(self.err("blocks take one or two charges")),
            };
            return Ok(vec![(XiProduct::one(), vec![b])]);
        }
        if self.eat("(") {
            let inner: Vec<char> = self.balanced()?.chars().collect();
            let mut out = Vec::new();
            for piece in split_top_level(&inner, '+') {
                let mut sub = TermParser {
                    chars: piece,
                    pos: 0,
                    src: self.src,
                    slots: self.slots,
                };
                out.extend(sub.term()?.into_iter().map(|t| (t.xi, t.bfactors)));
            }
            return Ok(out);
        }
        if self.eat("1") {
            return Ok(vec![(XiProduct::one(), vec![])]);
        }
        Err(self.err(format!("unexpected input at offset {}", self.pos)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symzeta::RenderFormat;

    const SLOTS: &[(&str, Node)] = &[("m", 4), ("n", 5)];

    #[test]
    fn hand_written_and_rendered_forms_agree() {
        let a = parse_coeff("xi(2s-4)^2/(xi(2s) xi(2s-3)) B_m(5/2-s) B_n(5/2-s)", SLOTS).unwrap();
        let text = a.render(RenderFormat::Text);
        let b = parse_coeff(&text, SLOTS).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.terms[0].xi.len(), 3);
    }

    #[test]
    fn sums_and_rank_two_blocks() {
        let c = parse_coeff(
            "xi(2s-8)/(xi(2s)xi(2s-9)) B_{m,n}(6-s, 19/2-s) + 1/xi(2s) B_{m,n}(s-1, 2)",
            SLOTS,
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        assert!(matches!(c.terms[1].bfactors[0], BFactor::A2 { .. }));
        assert!(parse_coeff("0", SLOTS).unwrap().is_empty());
    }

    #[test]
    fn parenthesized_sums_distribute() {
        let c = parse_coeff(
            "xi(2s-11)^2 (xi(2s-13) + xi(2(s-6)))/(xi(2s) xi(2s-9)) B_m(6-s)",
            SLOTS,
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.terms[1].xi.exponent(&"2s-12".parse().unwrap()), 1);
        assert!(parse_coeff("1/(xi(s) + xi(2s))", SLOTS).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_coeff("B_q(s)", SLOTS).is_err());
        assert!(parse_coeff("xi(2s", SLOTS).is_err());
        assert!(parse_coeff("1/B_m(s)", SLOTS).is_err());
        assert!(parse_coeff("B_{m,n}(s)", SLOTS).is_err());
    }
}
