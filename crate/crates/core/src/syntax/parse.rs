use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::{Term, Value};
use crate::combinators;
use crate::names::{Action, Label, Name, NameError, Registry, Renaming, Restriction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    Unbound(String),
    TauGuardInSum,
    UnguardedSummand,
    Name(NameError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "{m}"),
            ParseErrorKind::Unbound(x) => write!(f, "unbound identifier {x}"),
            ParseErrorKind::TauGuardInSum => write!(f, "tau guard inside a sum"),
            ParseErrorKind::UnguardedSummand => write!(f, "summand is not guarded by an action"),
            ParseErrorKind::Name(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ParseError {}

/// A file of named bindings `name = term;`. Later bindings may refer to earlier ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub bindings: Vec<(String, Term)>,
}

impl Program {
    pub fn get(&self, name: &str) -> Option<&Term> {
        self.bindings.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// The binding called `main`, or else the last one.
    pub fn main(&self) -> Option<&Term> {
        self.get("main").or_else(|| self.bindings.last().map(|(_, t)| t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

const SYMBOLS: [&str; 17] = [
    "->", "{", "}", "(", ")", ".", ",", "+", "|", "\\", "[", "]", "~", "#", ";", "=", "_",
];

fn lex(src: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        if c.is_ascii_alphabetic() || (c == '_' && chars.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric())) {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            toks.push((Tok::Ident(s), start.0, start.1));
            continue;
        }
        if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                    .ok_or(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::Syntax("number too large".into()),
                    })?;
                i += 1;
                col += 1;
            }
            toks.push((Tok::Num(v), start.0, start.1));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                toks.push((Tok::Sym(s), start.0, start.1));
            }
            None => {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::Syntax(format!("unexpected character {c:?}")),
                })
            }
        }
    }
    Ok(Lexed { toks, end: (line, col) })
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
    pos: usize,
    reg: &'a mut Registry,
    bindings: BTreeMap<String, Term>,
    rec_vars: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

const BUILDERS: [&str; 10] = [
    "tensor", "lapp", "rapp", "seq", "pair", "inl", "inr", "bang", "choice", "wire",
];

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, off: usize) -> Option<&Tok> {
        self.toks.get(self.pos + off).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError { line, col, kind })
    }

    fn syntax<T>(&self, msg: &str) -> PResult<T> {
        let found = match self.peek() {
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Num(n)) => format!("`{n}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
            None => "end of input".into(),
        };
        self.err(ParseErrorKind::Syntax(format!("expected {msg}, found {found}")))
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> PResult<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.syntax(&format!("`{sym}`"))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.syntax("identifier"),
        }
    }

    fn number(&mut self) -> PResult<u64> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.syntax("number"),
        }
    }

    fn name_err<T>(&self, r: Result<T, NameError>) -> PResult<T> {
        r.or_else(|e| self.err(ParseErrorKind::Name(e)))
    }

    // term := sum ('|' sum)*
    fn term(&mut self) -> PResult<Term> {
        if self.is_kw("rec") {
            self.pos += 1;
            let x = self.ident()?;
            self.expect(".")?;
            self.rec_vars.push(x.clone());
            let body = self.term();
            self.rec_vars.pop();
            return Ok(Term::rec(&x, body?));
        }
        let mut t = self.sum()?;
        while self.eat("|") {
            let rhs = if self.is_kw("rec") { self.term()? } else { self.sum()? };
            t = Term::par(t, rhs);
        }
        Ok(t)
    }

    // sum := postfix ('+' postfix)*
    fn sum(&mut self) -> PResult<Term> {
        let first = self.postfix()?;
        if !matches!(self.peek(), Some(Tok::Sym("+"))) {
            return Ok(first);
        }
        let mut branches: Vec<(Action, Arc<Term>)> = Vec::new();
        let mut summand = first;
        loop {
            match summand {
                Term::Prefix(a, p) => {
                    if a.is_tau() {
                        return self.err(ParseErrorKind::TauGuardInSum);
                    }
                    branches.push((a, p));
                }
                Term::Sum(bs) => branches.extend(bs),
                _ => return self.err(ParseErrorKind::UnguardedSummand),
            }
            if !self.eat("+") {
                break;
            }
            summand = self.postfix()?;
        }
        Ok(Term::Sum(branches))
    }

    // postfix := primary ('\' restriction | '[' renaming ']')*
    fn postfix(&mut self) -> PResult<Term> {
        let mut t = self.primary()?;
        loop {
            if self.eat("\\") {
                let l = self.restriction()?;
                t = Term::restrict(t, l);
            } else if self.eat("[") {
                let f = self.renaming()?;
                self.expect("]")?;
                t = Term::rename(t, f);
            } else {
                return Ok(t);
            }
        }
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(0)) => {
                self.pos += 1;
                Ok(Term::nil())
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Some(Tok::Sym("{")) => {
                let a = self.action()?;
                self.expect(".")?;
                let p = self.postfix()?;
                Ok(Term::prefix(a, p))
            }
            Some(Tok::Ident(kw)) if kw == "in" || kw == "out" => {
                self.pos += 1;
                let s = self.name()?;
                self.expect("(")?;
                let t = if kw == "in" {
                    let x = self.ident()?;
                    self.expect(")")?;
                    self.expect(".")?;
                    Term::Input(s, x, Arc::new(self.postfix()?))
                } else {
                    let v = match self.peek() {
                        Some(Tok::Num(_)) => {
                            let n = self.number()?;
                            Value::Lit(u32::try_from(n).or_else(|_| self.syntax("value below 2^32"))?)
                        }
                        _ => Value::Var(self.ident()?),
                    };
                    self.expect(")")?;
                    self.expect(".")?;
                    Term::Output(s, v, Arc::new(self.postfix()?))
                };
                Ok(t)
            }
            Some(Tok::Ident(id)) => {
                if BUILDERS.contains(&id.as_str()) && self.peek_at(1) == Some(&Tok::Sym("(")) {
                    return self.builder(&id);
                }
                self.pos += 1;
                if self.rec_vars.contains(&id) {
                    return Ok(Term::Var(id));
                }
                match self.bindings.get(&id) {
                    Some(t) => Ok(t.clone()),
                    None => {
                        self.pos -= 1;
                        self.err(ParseErrorKind::Unbound(id))
                    }
                }
            }
            _ => self.syntax("a process term"),
        }
    }

    fn builder(&mut self, id: &str) -> PResult<Term> {
        self.pos += 1;
        self.expect("(")?;
        if id == "wire" {
            let mut names = BTreeSet::new();
            self.expect("{")?;
            if !self.eat("}") {
                loop {
                    names.insert(self.name()?);
                    if self.eat("}") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            self.expect(")")?;
            return match combinators::try_identity_wire(&names, combinators::DEFAULT_WIRE_CAP) {
                Ok(t) => Ok(t),
                Err(e) => self.err(ParseErrorKind::Syntax(e.to_string())),
            };
        }
        let mut args = Vec::new();
        loop {
            args.push(self.term()?);
            if self.eat(")") {
                break;
            }
            self.expect(",")?;
        }
        let arity = match id {
            "inl" | "inr" | "bang" => 1,
            _ => 2,
        };
        if args.len() != arity {
            return self.err(ParseErrorKind::Syntax(format!(
                "{id} takes {arity} argument(s), got {}",
                args.len()
            )));
        }
        let mut it = args.into_iter();
        let a = it.next().unwrap();
        Ok(match id {
            "inl" => combinators::inj_l(a),
            "inr" => combinators::inj_r(a),
            "bang" => combinators::bang(a),
            _ => {
                let b = it.next().unwrap();
                match id {
                    "tensor" => combinators::tensor(a, b),
                    "lapp" => combinators::lapp(a, b),
                    "rapp" => combinators::rapp(a, b),
                    "seq" => combinators::seq(a, b),
                    "pair" => combinators::pairing(a, b),
                    _ => combinators::choice(a, b),
                }
            }
        })
    }

    fn action(&mut self) -> PResult<Action> {
        self.expect("{")?;
        let mut labels = Vec::new();
        if !self.eat("}") {
            loop {
                labels.push(self.label()?);
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(Action::new(labels))
    }

    fn label(&mut self) -> PResult<Label> {
        let co = self.eat("~");
        Ok(Label::new(self.name()?, co))
    }

    // name := ident | '#' num | ('l'|'r'|'n1'|'n2'|'n3') '(' name ')'
    fn name(&mut self) -> PResult<Name> {
        if self.eat("#") {
            return Ok(Name(self.number()?));
        }
        let id = self.ident()?;
        let coder = match id.as_str() {
            "l" => Some(Renaming::lcode()),
            "r" => Some(Renaming::rcode()),
            "n1" => Some(Renaming::kway(3, 0)),
            "n2" => Some(Renaming::kway(3, 1)),
            "n3" => Some(Renaming::kway(3, 2)),
            _ => None,
        };
        if let Some(f) = coder {
            if self.eat("(") {
                let inner = self.name()?;
                self.expect(")")?;
                return match f.apply_name(inner) {
                    Some(n) => Ok(n),
                    None => self.syntax("a name whose code fits in 64 bits"),
                };
            }
        }
        let r = self.reg.intern(&id);
        self.name_err(r)
    }

    fn restriction(&mut self) -> PResult<Restriction> {
        if matches!(self.peek(), Some(Tok::Sym("{"))) {
            self.pos += 1;
            let mut ns = BTreeSet::new();
            if !self.eat("}") {
                loop {
                    self.eat("~");
                    ns.insert(self.name()?);
                    if self.eat("}") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            return Ok(Restriction::Names(ns));
        }
        let id = self.ident()?;
        Ok(match id.as_str() {
            "Ll" => Restriction::left(),
            "Lr" => Restriction::right(),
            "N1" => Restriction::third(1),
            "N2" => Restriction::third(2),
            "N3" => Restriction::third(3),
            "all" => Restriction::All,
            "mod" => {
                self.expect("(")?;
                let m = self.number()?;
                self.expect(",")?;
                let r = self.number()?;
                self.expect(")")?;
                if m == 0 || r >= m {
                    self.pos -= 1;
                    return self.syntax("residue below a positive modulus");
                }
                Restriction::Class { modulus: m, residue: r }
            }
            "union" => {
                self.expect("(")?;
                let mut rs = Vec::new();
                loop {
                    rs.push(self.restriction()?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
                Restriction::Union(rs)
            }
            _ => {
                self.pos -= 1;
                return self.syntax("a restriction set");
            }
        })
    }

    fn renaming(&mut self) -> PResult<Renaming> {
        let id = self.ident()?;
        Ok(match id.as_str() {
            "id" => Renaming::Identity,
            "l" => Renaming::lcode(),
            "r" => Renaming::rcode(),
            "kway" | "phi" => {
                self.expect("(")?;
                let a = self.number()?;
                self.expect(",")?;
                let b = self.number()?;
                self.expect(")")?;
                if id == "kway" {
                    if a == 0 || b >= a {
                        self.pos -= 1;
                        return self.syntax("offset below a positive modulus");
                    }
                    Renaming::KWay { k: a, offset: b }
                } else {
                    if !(1..=3).contains(&a) || !(1..=3).contains(&b) || a == b {
                        self.pos -= 1;
                        return self.syntax("distinct indices in 1..=3");
                    }
                    Renaming::phi(a, b)
                }
            }
            "split" => {
                self.expect("(")?;
                let mut parts = Vec::new();
                if !self.eat(")") {
                    loop {
                        parts.push(self.renaming()?);
                        if self.eat(")") {
                            break;
                        }
                        self.expect(";")?;
                    }
                }
                Renaming::Split(parts)
            }
            "map" => {
                self.expect("(")?;
                let mut m = BTreeMap::new();
                if !self.eat(")") {
                    loop {
                        let a = self.name()?;
                        self.expect("->")?;
                        let b = self.name()?;
                        m.insert(a, b);
                        if self.eat(")") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                Renaming::Map(m)
            }
            "inv" => {
                self.expect("(")?;
                let f = self.renaming()?;
                self.expect(")")?;
                Renaming::Inverse(Arc::new(f))
            }
            "comp" => {
                self.expect("(")?;
                let f = self.renaming()?;
                self.expect(",")?;
                let g = self.renaming()?;
                self.expect(")")?;
                Renaming::Compose(Arc::new(f), Arc::new(g))
            }
            _ => {
                self.pos -= 1;
                return self.syntax("a renaming");
            }
        })
    }
}

fn parser<'a>(src: &str, reg: &'a mut Registry) -> PResult<Parser<'a>> {
    let lexed = lex(src)?;
    Ok(Parser {
        toks: lexed.toks,
        end: lexed.end,
        pos: 0,
        reg,
        bindings: BTreeMap::new(),
        rec_vars: Vec::new(),
    })
}

/// Parses a single term. Free identifiers other than `rec`-bound variables are errors.
pub fn parse_term(src: &str, reg: &mut Registry) -> Result<Term, ParseError> {
    let mut p = parser(src, reg)?;
    let t = p.term()?;
    if p.peek().is_some() {
        return p.syntax("end of input");
    }
    Ok(t)
}

/// Parses either a sequence of bindings `name = term;` or a single bare term,
/// which is returned as the binding `main`.
pub fn parse_program(src: &str, reg: &mut Registry) -> Result<Program, ParseError> {
    let mut p = parser(src, reg)?;
    let is_bindings = matches!(p.peek(), Some(Tok::Ident(_))) && p.peek_at(1) == Some(&Tok::Sym("="));
    if !is_bindings {
        let t = p.term()?;
        p.eat(";");
        if p.peek().is_some() {
            return p.syntax("end of input");
        }
        return Ok(Program { bindings: alloc::vec![("main".to_string(), t)] });
    }
    let mut bindings = Vec::new();
    while p.peek().is_some() {
        let name = p.ident()?;
        p.expect("=")?;
        let t = p.term()?;
        p.expect(";")?;
        p.bindings.insert(name.clone(), t.clone());
        bindings.push((name, t));
    }
    Ok(Program { bindings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_term;

    fn roundtrip(src: &str) {
        let mut reg = Registry::new();
        let t = parse_term(src, &mut reg).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = print_term(&t, &reg);
        let t2 = parse_term(&printed, &mut reg).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(t, t2, "{src} printed as {printed}");
    }

    #[test]
    fn parses_basic_forms() {
        let mut reg = Registry::new();
        let t = parse_term("{a, ~b}.0", &mut reg).unwrap();
        let a = reg.lookup("a").unwrap();
        let b = reg.lookup("b").unwrap();
        assert_eq!(t, Term::prefix(Action::new([a.positive(), b.negative()]), Term::nil()));
        assert_eq!(parse_term("{}.0", &mut reg).unwrap(), Term::prefix(Action::tau(), Term::nil()));
        let s = parse_term("{a}.0 + {b}.0 + 0", &mut reg).unwrap();
        assert!(matches!(s, Term::Sum(ref bs) if bs.len() == 2));
    }

    #[test]
    fn postfix_binds_tighter_than_prefix_body_boundary() {
        let mut reg = Registry::new();
        let t = parse_term("{a}.0 \\ {a}", &mut reg).unwrap();
        assert!(matches!(t, Term::Prefix(_, ref p) if matches!(**p, Term::Restrict(..))));
        let t = parse_term("({a}.0) \\ {a}", &mut reg).unwrap();
        assert!(matches!(t, Term::Restrict(..)));
    }

    #[test]
    fn coded_names() {
        let mut reg = Registry::new();
        let t = parse_term("{l(a), r(~b)}.0", &mut reg);
        assert!(t.is_err());
        let t = parse_term("{l(a), ~r(b), #7}.0", &mut reg).unwrap();
        let a = reg.lookup("a").unwrap();
        let b = reg.lookup("b").unwrap();
        let expect = Action::new([a.l_code().positive(), b.r_code().negative(), Name(7).positive()]);
        assert_eq!(t, Term::prefix(expect, Term::nil()));
    }

    #[test]
    fn errors_carry_positions() {
        let mut reg = Registry::new();
        let e = parse_term("{a}.0 +\n  {}.0", &mut reg).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::TauGuardInSum);
        let e = parse_term("{a}.0 | X", &mut reg).unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (1, 9, ParseErrorKind::Unbound("X".into())));
        let e = parse_term("{a}.0 + ({b}.0 | 0)", &mut reg).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnguardedSummand);
        assert!(parse_term("{a}.0 )", &mut reg).is_err());
        assert!(parse_term("P [kway(2, 5)]", &mut reg).is_err());
    }

    #[test]
    fn roundtrips() {
        for src in [
            "0",
            "{a}.{~b}.0",
            "{a}.0 + {b}.0",
            "({a}.0 + 0) | {~a}.0",
            "({a}.0 | {~a}.0) \\ {a}",
            "{a}.0 | {b}.0 | {c}.0",
            "{a}.0 | ({b}.0 | {c}.0)",
            "rec X. {a}.X + {b}.(X [l])",
            "({a}.0) [phi(1, 3)] [inv(phi(1, 3))]",
            "({a}.0) [comp(l, map(a -> b))] \\ union(Ll, mod(3, 2), {c}, all)",
            "in s(x).out a(x).0 | out s(3).0",
            "{}.(rec X. {a}.X) | {#9, ~l(r(#9))}.0",
            "({a}.0) [split(kway(3, 0); r; id)]",
        ] {
            roundtrip(src);
        }
    }

    #[test]
    fn programs() {
        let mut reg = Registry::new();
        let prog = parse_program("p = {a}.0;\nq = p | p; // comment\n", &mut reg).unwrap();
        let p = prog.get("p").unwrap().clone();
        assert_eq!(prog.main(), Some(&Term::par(p.clone(), p)));
        let single = parse_program("{a}.0", &mut reg).unwrap();
        assert_eq!(single.bindings.len(), 1);
    }
}
