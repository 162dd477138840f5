//! Text syntax for formulas: `a`, `~a`, `a(x)`, `A*B` (⊗), `A@B` (⅋), `A&B`,
//! `A(+)B`, `!A`, `?A`, `forall x:{0,1}. A`, `exists x. A`. Binary
//! connectives share one precedence level and associate to the right; `~`
//! applied to a compound formula negates it.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Arg, Formula, DEFAULT_VALUE_DOMAIN};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "formula syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for FormulaError {}

pub fn parse_formula(src: &str) -> Result<Formula, FormulaError> {
    parse_formula_with(src, &DEFAULT_VALUE_DOMAIN)
}

/// Parses with `default_domain` for quantifiers written without a domain.
pub fn parse_formula_with(src: &str, default_domain: &[u32]) -> Result<Formula, FormulaError> {
    let mut p = P { s: src.as_bytes(), i: 0, default_domain };
    let f = p.formula()?;
    p.ws();
    if p.i < p.s.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

struct P<'a> {
    s: &'a [u8],
    i: usize,
    default_domain: &'a [u32],
}

impl P<'_> {
    fn err<T>(&self, m: &str) -> Result<T, FormulaError> {
        Err(FormulaError { offset: self.i, message: m.to_string() })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(tok.as_bytes()) {
            self.i += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), FormulaError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(&format!("expected `{tok}`"))
        }
    }

    fn ident(&mut self) -> Result<String, FormulaError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        if start == self.i || self.s[start].is_ascii_digit() {
            self.i = start;
            return self.err("expected identifier");
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
    }

    fn number(&mut self) -> Result<u32, FormulaError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        core::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .map_or_else(
                || {
                    self.i = start;
                    self.err("expected number")
                },
                Ok,
            )
    }

    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let left = self.unary()?;
        let mk: fn(Formula, Formula) -> Formula = if self.eat("(+)") {
            Formula::plus
        } else if self.eat("*") {
            Formula::tensor
        } else if self.eat("@") {
            Formula::par
        } else if self.eat("&") {
            Formula::with
        } else {
            return Ok(left);
        };
        let right = self.formula()?;
        Ok(mk(left, right))
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.eat("~") {
            return Ok(self.unary()?.negate());
        }
        if self.eat("!") {
            return Ok(Formula::bang(self.unary()?));
        }
        if self.eat("?") {
            return Ok(Formula::quest(self.unary()?));
        }
        self.ws();
        if self.s[self.i..].starts_with(b"(+)") {
            return self.err("missing left operand");
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        let name = self.ident()?;
        if name == "forall" || name == "exists" {
            let var = self.ident()?;
            let domain = if self.eat(":") {
                self.expect("{")?;
                let mut d = Vec::new();
                if !self.eat("}") {
                    loop {
                        d.push(self.number()?);
                        if self.eat("}") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                d
            } else {
                self.default_domain.to_vec()
            };
            if domain.is_empty() {
                return self.err("empty value domain");
            }
            self.expect(".")?;
            let body = Box::new(self.formula()?);
            return Ok(if name == "forall" {
                Formula::Forall { var, domain, body }
            } else {
                Formula::Exists { var, domain, body }
            });
        }
        self.ws();
        let save = self.i;
        let arg = if !self.s[save..].starts_with(b"(+)") && self.eat("(") {
            self.ws();
            let a = if self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                Arg::Val(self.number()?)
            } else {
                Arg::Var(self.ident()?)
            };
            self.expect(")")?;
            Some(a)
        } else {
            self.i = save;
            None
        };
        Ok(Formula::Atom { name, arg, neg: false })
    }
}

pub fn print_formula(f: &Formula) -> String {
    match f {
        Formula::Atom { name, arg, neg } => {
            let mut s = String::new();
            if *neg {
                s.push('~');
            }
            s.push_str(name);
            match arg {
                Some(Arg::Var(x)) => s.push_str(&format!("({x})")),
                Some(Arg::Val(v)) => s.push_str(&format!("({v})")),
                None => {}
            }
            s
        }
        Formula::Tensor(a, b) => binary(a, "*", b),
        Formula::Par(a, b) => binary(a, "@", b),
        Formula::With(a, b) => binary(a, "&", b),
        Formula::Plus(a, b) => binary(a, "(+)", b),
        Formula::Bang(a) => format!("!{}", operand(a)),
        Formula::Quest(a) => format!("?{}", operand(a)),
        Formula::Forall { var, domain, body } => quant("forall", var, domain, body),
        Formula::Exists { var, domain, body } => quant("exists", var, domain, body),
    }
}

fn quant(kw: &str, var: &str, domain: &[u32], body: &Formula) -> String {
    let d: Vec<String> = domain.iter().map(|v| v.to_string()).collect();
    format!("{kw} {var}:{{{}}}. {}", d.join(","), print_formula(body))
}

fn operand(f: &Formula) -> String {
    match f {
        Formula::Atom { .. } | Formula::Bang(_) | Formula::Quest(_) => print_formula(f),
        _ => format!("({})", print_formula(f)),
    }
}

fn binary(a: &Formula, op: &str, b: &Formula) -> String {
    format!("{} {op} {}", operand(a), operand(b))
}
