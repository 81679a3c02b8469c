//! Text grammars for terms and algebra elements.
//!
//! Terms:
//!
//! ```text
//! sum     := ['+'|'-'] signed (('+'|'-') signed)*
//! signed  := [scalar '*'] product
//! product := atom (atom | op)*          left-associative juxtaposition
//! op      := 'R[' sum ']' | 'L[' sum ']' | 'V[' sum ',' sum ']'
//! atom    := 'x' digits | '(' sum ')' | '(' sum ',' sum ',' sum ')' | '[' sum ',' sum ']'
//! ```
//!
//! `[a,b]` is the commutator and `(a,b,c)` the associator. Operators act on
//! everything to their left in the same product: `x1 R[x2] V[x3,x4]` is
//! `(x3 (x1 x2)) x4`.
//!
//! Elements: `3/2*a11 - c1`, names may contain letters, digits, `_` and `.`;
//! a number directly followed by `*` is a coefficient.

use crate::error::{Error, Result};
use crate::free::{Term, TermSum};
use crate::scalar::{Field, Scalar};

pub fn parse_terms(field: Field, text: &str) -> Result<TermSum> {
    let mut p = Parser::new(field, text);
    let s = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(s)
}

/// Parses a linear combination of basis names. `0` is the empty combination.
pub fn parse_linear_combination(field: Field, text: &str) -> Result<Vec<(Scalar, String)>> {
    let mut p = Parser::new(field, text);
    let mut out = Vec::new();
    p.skip_ws();
    if p.src[p.pos..].trim() == "0" {
        return Ok(out);
    }
    let mut first = true;
    loop {
        p.skip_ws();
        if p.pos >= p.src.len() {
            if first {
                return Err(p.error("empty expression"));
            }
            break;
        }
        let mut sign = field.one();
        if p.eat('-') {
            sign = -sign;
        } else if !p.eat('+') && !first {
            return Err(p.error("expected `+` or `-`"));
        }
        p.skip_ws();
        let coeff = match p.scalar_prefix()? {
            Some(c) => c,
            None => field.one(),
        };
        p.skip_ws();
        let name = p.identifier().ok_or_else(|| p.error("expected a basis name"))?;
        out.push((&sign * &coeff, name));
        first = false;
    }
    Ok(out)
}

/// Nesting and expansion limits keep hostile input from exhausting the stack
/// or memory.
const MAX_DEPTH: usize = 200;
const MAX_EXPANDED_TERMS: usize = 1 << 16;

struct Parser<'a> {
    field: Field,
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(field: Field, src: &'a str) -> Self {
        Parser {
            field,
            src,
            pos: 0,
            depth: 0,
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    /// Consumes `digits[/digits] *` if present.
    fn scalar_prefix(&mut self) -> Result<Option<Scalar>> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let num_len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if num_len == 0 {
            return Ok(None);
        }
        let mut end = start + num_len;
        if self.src[end..].starts_with('/') {
            let den_len = self.src[end + 1..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .count();
            if den_len == 0 {
                self.pos = end;
                return Err(self.error("expected a denominator"));
            }
            end += 1 + den_len;
        }
        let literal = &self.src[start..end];
        self.pos = end;
        if !self.eat('*') {
            // Not a coefficient; basis names such as `1.c1` may start with digits.
            self.pos = start;
            return Ok(None);
        }
        self.field.parse_scalar(literal).map(Some)
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        match rest.char_indices().next() {
            Some((_, c)) if c.is_ascii_alphanumeric() || c == '_' => {}
            _ => return None,
        }
        let len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_' || c == '.'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += len;
        Some(rest[..len].to_string())
    }

    fn sum(&mut self) -> Result<TermSum> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        let out = self.sum_inner();
        self.depth -= 1;
        out
    }

    fn mul(&self, a: &TermSum, b: &TermSum) -> Result<TermSum> {
        if a.len().saturating_mul(b.len()) > MAX_EXPANDED_TERMS {
            Err(self.error("expression expands to too many terms"))
        } else {
            Ok(a.mul(b))
        }
    }

    fn sum_inner(&mut self) -> Result<TermSum> {
        let mut acc = TermSum::zero(self.field);
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            let mut t = self.signed()?;
            if negative {
                t = t.scale(&-self.field.one());
            }
            acc = acc.add(&t);
            first = false;
        }
        Ok(acc)
    }

    fn signed(&mut self) -> Result<TermSum> {
        let c = self.scalar_prefix()?;
        let p = self.product()?;
        Ok(match c {
            Some(c) => p.scale(&c),
            None => p,
        })
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some('x') | Some('(') | Some('['))
    }

    fn starts_op(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        ["R[", "L[", "V["].iter().any(|p| rest.starts_with(p))
    }

    fn product(&mut self) -> Result<TermSum> {
        if !self.starts_atom() {
            return Err(self.error("expected a term"));
        }
        let mut acc = self.atom()?;
        loop {
            if self.starts_op() {
                let op = self.peek().unwrap();
                self.pos += 2;
                match op {
                    'R' => {
                        let y = self.sum()?;
                        self.expect(']')?;
                        acc = self.mul(&acc, &y)?;
                    }
                    'L' => {
                        let y = self.sum()?;
                        self.expect(']')?;
                        acc = self.mul(&y, &acc)?;
                    }
                    _ => {
                        let y = self.sum()?;
                        self.expect(',')?;
                        let z = self.sum()?;
                        self.expect(']')?;
                        acc = self.mul(&self.mul(&y, &acc)?, &z)?;
                    }
                }
            } else if self.starts_atom() {
                let rhs = self.atom()?;
                acc = self.mul(&acc, &rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<TermSum> {
        self.skip_ws();
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let digits: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                if digits.is_empty() {
                    return Err(self.error("expected a variable index"));
                }
                self.pos += digits.len();
                let i: u32 = digits
                    .parse()
                    .map_err(|_| self.error("variable index too large"))?;
                if i == 0 {
                    return Err(self.error("variable indices start at 1"));
                }
                Ok(TermSum::from_term(self.field, Term::var(i)))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.sum()?;
                if self.eat(',') {
                    let b = self.sum()?;
                    self.expect(',')?;
                    let c = self.sum()?;
                    self.expect(')')?;
                    let ab = self.mul(&a, &b)?;
                    let bc = self.mul(&b, &c)?;
                    let left = self.mul(&ab, &c)?;
                    let right = self.mul(&a, &bc)?;
                    Ok(left.add(&right.scale(&-self.field.one())))
                } else {
                    self.expect(')')?;
                    Ok(a)
                }
            }
            Some('[') => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                let ab = self.mul(&a, &b)?;
                let ba = self.mul(&b, &a)?;
                Ok(ab.add(&ba.scale(&-self.field.one())))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
