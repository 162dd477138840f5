use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Term, Value};
use crate::names::{Registry, Renaming, Restriction};

/// Prints a term in the concrete syntax accepted by [`super::parse_term`].
pub fn print_term(t: &Term, reg: &Registry) -> String {
    top(t, reg)
}

fn top(t: &Term, reg: &Registry) -> String {
    match t {
        Term::Rec(x, b) => format!("rec {x}. {}", top(b, reg)),
        Term::Par(p, q) => {
            let left = if matches!(**p, Term::Par(..)) { top(p, reg) } else { sum_level(p, reg) };
            format!("{left} | {}", sum_level(q, reg))
        }
        Term::Sum(bs) if !bs.is_empty() => sum(bs, reg),
        _ => postfix(t, reg),
    }
}

fn sum_level(t: &Term, reg: &Registry) -> String {
    match t {
        Term::Sum(bs) if !bs.is_empty() => sum(bs, reg),
        Term::Par(..) | Term::Rec(..) => format!("({})", top(t, reg)),
        _ => postfix(t, reg),
    }
}

fn sum(bs: &[(crate::names::Action, alloc::sync::Arc<Term>)], reg: &Registry) -> String {
    let mut parts: Vec<String> = bs
        .iter()
        .map(|(a, p)| format!("{}.{}", reg.action_string(a), postfix(p, reg)))
        .collect();
    if parts.len() == 1 {
        parts.push("0".into());
    }
    parts.join(" + ")
}

fn postfix(t: &Term, reg: &Registry) -> String {
    match t {
        Term::Restrict(p, l) => format!("{} \\ {}", operand(p, reg), print_restriction(l, reg)),
        Term::Rename(p, f) => format!("{} [{}]", operand(p, reg), print_renaming(f, reg)),
        Term::Prefix(a, p) => format!("{}.{}", reg.action_string(a), postfix(p, reg)),
        Term::Input(s, x, p) => format!("in {}({x}).{}", reg.name_string(*s), postfix(p, reg)),
        Term::Output(s, v, p) => {
            let v = match v {
                Value::Lit(n) => n.to_string(),
                Value::Var(x) => x.clone(),
            };
            format!("out {}({v}).{}", reg.name_string(*s), postfix(p, reg))
        }
        _ => atom(t, reg),
    }
}

fn operand(t: &Term, reg: &Registry) -> String {
    match t {
        Term::Restrict(..) | Term::Rename(..) => postfix(t, reg),
        _ => atom(t, reg),
    }
}

fn atom(t: &Term, reg: &Registry) -> String {
    match t {
        Term::Sum(bs) if bs.is_empty() => "0".into(),
        Term::Var(x) => x.clone(),
        _ => format!("({})", top(t, reg)),
    }
}

pub fn print_restriction(l: &Restriction, reg: &Registry) -> String {
    match l {
        Restriction::Names(ns) => {
            let items: Vec<String> = ns.iter().map(|n| reg.name_string(*n)).collect();
            format!("{{{}}}", items.join(", "))
        }
        Restriction::Class { modulus: 2, residue: 0 } => "Ll".into(),
        Restriction::Class { modulus: 2, residue: 1 } => "Lr".into(),
        Restriction::Class { modulus, residue } => format!("mod({modulus}, {residue})"),
        Restriction::All => "all".into(),
        Restriction::Union(rs) => {
            let items: Vec<String> = rs.iter().map(|r| print_restriction(r, reg)).collect();
            format!("union({})", items.join(", "))
        }
    }
}

pub fn print_renaming(f: &Renaming, reg: &Registry) -> String {
    match f {
        Renaming::Identity => "id".into(),
        Renaming::KWay { k: 2, offset: 0 } => "l".into(),
        Renaming::KWay { k: 2, offset: 1 } => "r".into(),
        Renaming::KWay { k, offset } => format!("kway({k}, {offset})"),
        Renaming::Split(parts) => {
            let items: Vec<String> = parts.iter().map(|p| print_renaming(p, reg)).collect();
            format!("split({})", items.join("; "))
        }
        Renaming::Map(m) => {
            let items: Vec<String> = m
                .iter()
                .map(|(a, b)| format!("{} -> {}", reg.name_string(*a), reg.name_string(*b)))
                .collect();
            format!("map({})", items.join(", "))
        }
        Renaming::Inverse(g) => format!("inv({})", print_renaming(g, reg)),
        Renaming::Compose(g, h) => {
            format!("comp({}, {})", print_renaming(g, reg), print_renaming(h, reg))
        }
    }
}
