use std::iter::Peekable;
use std::str::CharIndices;

use super::{Coeff, Laurent};
use crate::error::{Error, Result};

struct Term {
    coeff: String,
    vars: Vec<(usize, i32)>,
}

fn err(input: &str, reason: impl Into<String>) -> Error {
    Error::PolyParse { input: input.to_string(), reason: reason.into() }
}

fn skip_ws(it: &mut Peekable<CharIndices<'_>>) {
    while it.peek().is_some_and(|(_, c)| c.is_whitespace()) {
        it.next();
    }
}

fn digits(it: &mut Peekable<CharIndices<'_>>) -> String {
    let mut s = String::new();
    while let Some(&(_, c)) = it.peek() {
        if c.is_ascii_digit() {
            s.push(c);
            it.next();
        } else {
            break;
        }
    }
    s
}

fn lex(input: &str) -> Result<Vec<(bool, Term)>> {
    let mut it = input.char_indices().peekable();
    let mut out = Vec::new();
    skip_ws(&mut it);
    if it.peek().is_none() {
        return Err(err(input, "empty"));
    }
    let mut first = true;
    loop {
        skip_ws(&mut it);
        let mut negative = false;
        match it.peek() {
            Some(&(_, '+')) => {
                it.next();
            }
            Some(&(_, '-')) => {
                negative = true;
                it.next();
            }
            Some(_) if first => {}
            Some(&(i, c)) => return Err(err(input, format!("expected '+' or '-' at {i}, found {c:?}"))),
            None => break,
        }
        first = false;
        let mut term = Term { coeff: String::new(), vars: Vec::new() };
        loop {
            skip_ws(&mut it);
            match it.peek() {
                Some(&(_, c)) if c.is_ascii_digit() => {
                    let d = digits(&mut it);
                    if term.coeff.is_empty() {
                        term.coeff = d;
                    } else {
                        // repeated numeric factors multiply
                        let a: u128 = term.coeff.parse().map_err(|_| err(input, "coefficient too large"))?;
                        let b: u128 = d.parse().map_err(|_| err(input, "coefficient too large"))?;
                        term.coeff = a.checked_mul(b).ok_or_else(|| err(input, "coefficient too large"))?.to_string();
                    }
                }
                Some(&(_, 't')) => {
                    it.next();
                    let idx = digits(&mut it);
                    let idx: usize = idx.parse().map_err(|_| err(input, "variable needs an index, e.g. t1"))?;
                    if idx == 0 {
                        return Err(err(input, "variables are numbered from t1"));
                    }
                    skip_ws(&mut it);
                    let mut exp = 1i32;
                    if it.peek().is_some_and(|&(_, c)| c == '^') {
                        it.next();
                        skip_ws(&mut it);
                        let mut sign = 1;
                        if it.peek().is_some_and(|&(_, c)| c == '-') {
                            sign = -1;
                            it.next();
                        }
                        let e = digits(&mut it);
                        exp = sign * e.parse::<i32>().map_err(|_| err(input, "bad exponent"))?;
                    }
                    term.vars.push((idx, exp));
                }
                Some(&(i, c)) => return Err(err(input, format!("unexpected {c:?} at {i}"))),
                None => return Err(err(input, "dangling sign")),
            }
            skip_ws(&mut it);
            if it.peek().is_some_and(|&(_, c)| c == '*') {
                it.next();
                continue;
            }
            break;
        }
        out.push((negative, term));
    }
    Ok(out)
}

fn build<C: Coeff>(mu: usize, input: &str, terms: Vec<(bool, Term)>) -> Result<Laurent<C>> {
    let mut out = Laurent::zero(mu);
    for (negative, term) in terms {
        let mut exps = vec![0i32; mu];
        for (idx, e) in term.vars {
            if idx > mu {
                return Err(err(input, format!("t{idx} exceeds variable count {mu}")));
            }
            exps[idx - 1] += e;
        }
        let digits = if term.coeff.is_empty() { "1" } else { term.coeff.as_str() };
        let mut c = C::from_str_radix(digits, 10).map_err(|_| err(input, "bad coefficient"))?;
        if negative {
            c = -c;
        }
        out.add_term(super::Monomial(exps), c);
    }
    Ok(out)
}

pub(super) fn parse<C: Coeff>(mu: usize, input: &str) -> Result<Laurent<C>> {
    let terms = lex(input)?;
    build(mu, input, terms)
}

pub(super) fn parse_infer<C: Coeff>(input: &str) -> Result<Laurent<C>> {
    let terms = lex(input)?;
    let mu = terms.iter().flat_map(|(_, t)| t.vars.iter().map(|(i, _)| *i)).max().unwrap_or(0);
    build(mu, input, terms)
}
