//! Plain-text and LaTeX rendering.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::coeff::{Coeff, GaussianRational, Rational};
use super::lambda::LambdaPoly;
use super::monomial::{Alphabet, Monomial, Var};
use super::op::LinDiffOp;
use super::poly::Poly;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Style {
    Text,
    Latex,
}

/// How a coefficient is printed in front of a monomial.
pub struct CoeffParts {
    pub negative: bool,
    /// `None` when the magnitude is one and a monomial follows.
    pub body: Option<String>,
}

pub trait CoeffFormat: Coeff {
    fn parts(&self, style: Style, standalone: bool) -> CoeffParts;
}

fn frac(n: &BigInt, d: &BigInt, style: Style, standalone: bool) -> String {
    match style {
        Style::Latex => format!("\\frac{{{n}}}{{{d}}}"),
        Style::Text if standalone => format!("{n}/{d}"),
        Style::Text => format!("({n}/{d})"),
    }
}

fn rational_parts(r: &Rational, style: Style, standalone: bool) -> CoeffParts {
    let negative = r.is_negative();
    let a = r.abs();
    let body = if a.is_one() && !standalone {
        None
    } else if a.is_integer() {
        Some(a.numer().to_string())
    } else {
        Some(frac(a.numer(), a.denom(), style, standalone))
    };
    CoeffParts { negative, body }
}

impl CoeffFormat for Rational {
    fn parts(&self, style: Style, standalone: bool) -> CoeffParts {
        rational_parts(self, style, standalone)
    }
}

impl CoeffFormat for GaussianRational {
    fn parts(&self, style: Style, standalone: bool) -> CoeffParts {
        if self.im.is_zero() {
            return rational_parts(&self.re, style, standalone);
        }
        if self.re.is_zero() {
            let negative = self.im.is_negative();
            let a = self.im.abs();
            let num = if a.numer().is_one() { "i".to_string() } else { format!("{}i", a.numer()) };
            let body = if a.is_integer() {
                num
            } else {
                match style {
                    Style::Latex => format!("\\frac{{{num}}}{{{}}}", a.denom()),
                    Style::Text => format!("({num}/{})", a.denom()),
                }
            };
            return CoeffParts { negative, body: Some(body) };
        }
        CoeffParts { negative: false, body: Some(format!("({self})")) }
    }
}

fn var_name<A: Alphabet>(v: Var, style: Style) -> String {
    let name = A::NAMES[v.field as usize];
    match (v.order, style) {
        (0, _) => name.to_string(),
        (k @ 1..=3, _) => format!("{name}{}", "'".repeat(k as usize)),
        (k, Style::Text) => format!("{name}^({k})"),
        (k, Style::Latex) => format!("{name}^{{({k})}}"),
    }
}

fn monomial_string<A: Alphabet>(m: &Monomial, style: Style) -> String {
    let mut s = String::new();
    for &(v, e) in m.factors() {
        let base = var_name::<A>(v, style);
        if e == 1 {
            s.push_str(&base);
            continue;
        }
        let base = if v.order == 0 { base } else { format!("({base})") };
        match style {
            Style::Text => s.push_str(&format!("{base}^{e}")),
            Style::Latex => s.push_str(&format!("{base}^{{{e}}}")),
        }
    }
    s
}

/// A single signed term: `(negative, magnitude text)`.
fn term_string<C: CoeffFormat, A: Alphabet>(m: &Monomial, c: &C, style: Style) -> (bool, String) {
    let parts = c.parts(style, m.is_one());
    let mono = monomial_string::<A>(m, style);
    let body = match parts.body {
        Some(b) => format!("{b}{mono}"),
        None => mono,
    };
    (parts.negative, body)
}

fn join(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl<C: CoeffFormat, A: Alphabet> Poly<C, A> {
    pub fn render(&self, style: Style) -> String {
        join(self.terms().map(|(m, c)| term_string::<C, A>(m, c, style)))
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    /// Signed rendering used when this polynomial multiplies something else.
    fn factor(&self, style: Style) -> (bool, Option<String>) {
        if self.len() == 1 {
            let (m, c) = self.terms().next().unwrap();
            if m.is_one() {
                let p = c.parts(style, false);
                return (p.negative, p.body);
            }
            let (neg, body) = term_string::<C, A>(m, c, style);
            return (neg, Some(body));
        }
        let inner = self.render(style);
        match style {
            Style::Text => (false, Some(format!("({inner})"))),
            Style::Latex => (false, Some(format!("\\left({inner}\\right)"))),
        }
    }
}

impl<C: CoeffFormat, A: Alphabet> fmt::Display for Poly<C, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl<C: CoeffFormat, A: Alphabet> LambdaPoly<C, A> {
    /// Descending powers of the spectral parameter.
    pub fn render(&self, style: Style) -> String {
        let lam = match style {
            Style::Text => "lambda",
            Style::Latex => "\\lambda",
        };
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                let (neg, body) = c.factor(style);
                let body = body.unwrap_or_else(|| "1".into());
                terms.push((neg, body));
                continue;
            }
            let power = match (i, style) {
                (1, _) => lam.to_string(),
                (k, Style::Text) => format!("{lam}^{k}"),
                (k, Style::Latex) => format!("{lam}^{{{k}}}"),
            };
            let (neg, body) = c.factor(style);
            let body = match body {
                Some(b) => format!("{b} {power}"),
                None => power,
            };
            terms.push((neg, body));
        }
        join(terms)
    }
}

impl<C: CoeffFormat, A: Alphabet> fmt::Display for LambdaPoly<C, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl<C: CoeffFormat, A: Alphabet> LinDiffOp<C, A> {
    pub fn render(&self, style: Style) -> String {
        let mut terms = Vec::new();
        for (c, k) in self.terms() {
            let d = match k {
                0 => String::new(),
                1 => "D".to_string(),
                k => match style {
                    Style::Text => format!("D^{k}"),
                    Style::Latex => format!("D^{{{k}}}"),
                },
            };
            let (neg, body) = c.factor(style);
            let body = match (body, d.is_empty()) {
                (Some(b), _) => format!("{b}{d}"),
                (None, true) => "1".to_string(),
                (None, false) => d,
            };
            terms.push((neg, body));
        }
        join(terms)
    }
}

impl<C: CoeffFormat, A: Alphabet> fmt::Display for LinDiffOp<C, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}
