//! Text form `order M; terms [(p, q, k), ...]` meaning Σ (p/q)·ξ_M^k.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Cyclo, CycloError};

/// Canonical literal: the reduced power-basis coefficients at the stored order.
pub fn format_literal(z: &Cyclo) -> String {
    let terms: Vec<String> = z
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("({}, {}, {})", c.numer(), c.denom(), k))
        .collect();
    format!("order {}; terms [{}]", z.order(), terms.join(", "))
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> CycloError {
        CycloError::Parse {
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), CycloError> {
        self.ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<BigInt, CycloError> {
        self.ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        txt.parse::<BigInt>().map_err(|_| CycloError::Parse {
            col: start + 1,
            msg: "expected an integer".into(),
        })
    }
}

/// Parse a literal. Exponents are taken mod M and terms need not be reduced.
pub fn parse_literal(text: &str) -> Result<Cyclo, CycloError> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
    };
    c.expect("order")?;
    let at = c.pos;
    let m = c.int()?;
    let m: u32 = u32::try_from(&m)
        .ok()
        .filter(|&m| m > 0)
        .ok_or(CycloError::Parse {
            col: at + 2,
            msg: "order must be a positive integer".into(),
        })?;
    c.expect(";")?;
    c.expect("terms")?;
    c.expect("[")?;
    let mut terms = Vec::new();
    if c.peek() != Some(b']') {
        loop {
            c.expect("(")?;
            let p = c.int()?;
            c.expect(",")?;
            let qpos = c.pos;
            let q = c.int()?;
            if q.is_zero() {
                return Err(CycloError::Parse {
                    col: qpos + 2,
                    msg: "zero denominator".into(),
                });
            }
            c.expect(",")?;
            let kpos = c.pos;
            let k = c.int()?;
            let k = i64::try_from(&k).map_err(|_| CycloError::Parse {
                col: kpos + 2,
                msg: "exponent out of range".into(),
            })?;
            c.expect(")")?;
            terms.push((BigRational::new(p, q), k));
            match c.peek() {
                Some(b',') => c.pos += 1,
                _ => break,
            }
        }
    }
    c.expect("]")?;
    if c.peek().is_some() {
        return Err(c.err("trailing input"));
    }
    Cyclo::from_terms(m, &terms).map_err(|e| match e {
        CycloError::Parse { .. } => e,
        other => CycloError::Parse {
            col: 1,
            msg: other.to_string(),
        },
    })
}

impl std::fmt::Display for Cyclo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_literal(self))
    }
}
