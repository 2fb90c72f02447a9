//! Expression and operator-spec parsing.
//!
//! The expression grammar covers rationals `p/q`, variables `x1..xn`,
//! `+ - * ^` with integer (possibly negative) exponents, and
//! parentheses. Precedence is `^` above unary minus above `*` above the
//! binary additive operators; exponents are integer literals only.
//! Operator specs are comma-separated generator assignments:
//! `derivation: D(x1)=..., D(x2)=...` or `endo: phi(x1)=..., ...`
//! (`ederivation:` names the map 1 - phi by the same images).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operators::{Derivation, EDerivation, Endomorphism, Operator};
use crate::rings::{
    FieldChar, LaurentPoly, LocalizedSeries, MultiIndex, Scalar, TruncSeries,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(BigInt, BigInt),
    /// 0-based variable index (x1 is Var(0)).
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// Highest variable index occurring, as a 1-based count.
    pub fn min_nvars(&self) -> usize {
        match self {
            Expr::Rational(_, _) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(e) => e.min_nvars(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.min_nvars().max(b.min_nvars())
            }
            Expr::Pow(a, _) => a.min_nvars(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Int(s.parse().unwrap()), tline, tcol));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), tline, tcol));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(Error::Parse {
                            line,
                            col,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                chars.next();
                col += 1;
                toks.push((tok, tline, tcol));
            }
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {tok:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.advance() {
                Some(Tok::Int(n)) => {
                    let e: i64 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(self.err("exponent must be an integer literal")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.advance() {
            Some(Tok::Int(n)) => {
                // rational literal p/q
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.advance() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(self.err("zero denominator"));
                            }
                            Ok(Expr::Rational(n, d))
                        }
                        _ => Err(self.err("expected a denominator")),
                    }
                } else {
                    Ok(Expr::Rational(n, BigInt::from(1)))
                }
            }
            Some(Tok::Ident(name)) => {
                let idx = name
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| self.err(format!("unknown variable `{name}`")))?;
                Ok(Expr::Var(idx - 1))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or parenthesized expression")),
        }
    }
}

/// Parses an expression; errors carry line and column.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let lexer = lex(text)?;
    let mut parser = Parser {
        toks: lexer.toks,
        pos: 0,
    };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(e)
}

fn check_var(idx: usize, nvars: usize) -> Result<()> {
    if idx >= nvars {
        return Err(Error::InvalidInput(format!(
            "variable x{} exceeds the declared count {nvars}",
            idx + 1
        )));
    }
    Ok(())
}

/// Evaluates in the Laurent polynomial ring.
pub fn eval_laurent(expr: &Expr, nvars: usize, ch: FieldChar) -> Result<LaurentPoly> {
    match expr {
        Expr::Rational(n, d) => {
            let num = Scalar::from_bigint(n, ch);
            let den = Scalar::from_bigint(d, ch);
            Ok(LaurentPoly::constant(num.div(&den)?, nvars))
        }
        Expr::Var(i) => {
            check_var(*i, nvars)?;
            Ok(LaurentPoly::variable(nvars, *i, ch))
        }
        Expr::Neg(e) => Ok(eval_laurent(e, nvars, ch)?.neg()),
        Expr::Add(a, b) => eval_laurent(a, nvars, ch)?.add(&eval_laurent(b, nvars, ch)?),
        Expr::Sub(a, b) => eval_laurent(a, nvars, ch)?.sub(&eval_laurent(b, nvars, ch)?),
        Expr::Mul(a, b) => eval_laurent(a, nvars, ch)?.mul(&eval_laurent(b, nvars, ch)?),
        Expr::Pow(a, e) => eval_laurent(a, nvars, ch)?.pow_i64(*e),
    }
}

/// Evaluates in the truncated power series ring. Negative powers invert
/// units; a base vanishing at 0 is rejected.
pub fn eval_series(expr: &Expr, nvars: usize, ch: FieldChar, order: i64) -> Result<TruncSeries> {
    match expr {
        Expr::Rational(n, d) => {
            let num = Scalar::from_bigint(n, ch);
            let den = Scalar::from_bigint(d, ch);
            Ok(TruncSeries::constant(num.div(&den)?, nvars, order))
        }
        Expr::Var(i) => {
            check_var(*i, nvars)?;
            Ok(TruncSeries::variable(nvars, *i, ch, order))
        }
        Expr::Neg(e) => Ok(eval_series(e, nvars, ch, order)?.neg()),
        Expr::Add(a, b) => {
            eval_series(a, nvars, ch, order)?.add(&eval_series(b, nvars, ch, order)?)
        }
        Expr::Sub(a, b) => {
            eval_series(a, nvars, ch, order)?.sub(&eval_series(b, nvars, ch, order)?)
        }
        Expr::Mul(a, b) => {
            eval_series(a, nvars, ch, order)?.mul(&eval_series(b, nvars, ch, order)?)
        }
        Expr::Pow(a, e) => {
            let base = eval_series(a, nvars, ch, order)?;
            if *e >= 0 {
                Ok(base.pow(*e as u64))
            } else {
                let inv = base.inverse().map_err(|_| {
                    Error::InvalidInput(format!(
                        "negative exponent in a power-series context: {base} is not \
                         a unit of k[[x]]"
                    ))
                })?;
                Ok(inv.pow(e.unsigned_abs()))
            }
        }
    }
}

/// Evaluates in the localization k\[\[x\]\]\[x^-1\].
pub fn eval_localized(
    expr: &Expr,
    nvars: usize,
    ch: FieldChar,
    order: i64,
) -> Result<LocalizedSeries> {
    match expr {
        Expr::Rational(n, d) => {
            let num = Scalar::from_bigint(n, ch);
            let den = Scalar::from_bigint(d, ch);
            Ok(LocalizedSeries::from_series(TruncSeries::constant(
                num.div(&den)?,
                nvars,
                order,
            )))
        }
        Expr::Var(i) => {
            check_var(*i, nvars)?;
            Ok(LocalizedSeries::monomial(
                MultiIndex::unit(nvars, *i),
                Scalar::one(ch),
                order,
            ))
        }
        Expr::Neg(e) => Ok(eval_localized(e, nvars, ch, order)?.neg()),
        Expr::Add(a, b) => {
            eval_localized(a, nvars, ch, order)?.add(&eval_localized(b, nvars, ch, order)?)
        }
        Expr::Sub(a, b) => {
            eval_localized(a, nvars, ch, order)?.sub(&eval_localized(b, nvars, ch, order)?)
        }
        Expr::Mul(a, b) => {
            eval_localized(a, nvars, ch, order)?.mul(&eval_localized(b, nvars, ch, order)?)
        }
        Expr::Pow(a, e) => eval_localized(a, nvars, ch, order)?.pow_i64(*e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Derivation,
    Endomorphism,
    EDerivation,
}

/// A parsed operator description: per-variable expressions, either
/// derivation coefficients or generator images.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub entries: Vec<Expr>,
}

impl OperatorSpec {
    pub fn min_nvars(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.min_nvars())
            .max()
            .unwrap_or(0)
            .max(self.entries.len())
    }

    pub fn to_laurent_operator(
        &self,
        nvars: usize,
        ch: FieldChar,
    ) -> Result<Operator<LaurentPoly>> {
        let elems: Vec<LaurentPoly> = self
            .entries
            .iter()
            .map(|e| eval_laurent(e, nvars, ch))
            .collect::<Result<_>>()?;
        match self.kind {
            OperatorKind::Derivation => Ok(Operator::Derivation(Derivation::new(elems)?)),
            OperatorKind::Endomorphism => Ok(Operator::Endomorphism(Endomorphism::new(elems)?)),
            OperatorKind::EDerivation => Ok(Operator::EDerivation(EDerivation::new(
                Endomorphism::new(elems)?,
            ))),
        }
    }

    pub fn to_series_operator(
        &self,
        nvars: usize,
        ch: FieldChar,
        order: i64,
    ) -> Result<Operator<TruncSeries>> {
        let elems: Vec<TruncSeries> = self
            .entries
            .iter()
            .map(|e| eval_series(e, nvars, ch, order))
            .collect::<Result<_>>()?;
        match self.kind {
            OperatorKind::Derivation => Ok(Operator::Derivation(Derivation::new(elems)?)),
            OperatorKind::Endomorphism => Ok(Operator::Endomorphism(
                crate::operators::series_endomorphism(elems)?,
            )),
            OperatorKind::EDerivation => Ok(Operator::EDerivation(EDerivation::new(
                crate::operators::series_endomorphism(elems)?,
            ))),
        }
    }
}

/// Parses `derivation: D(x1)=..., ...` / `endo: phi(x1)=..., ...` /
/// `ederivation: phi(x1)=..., ...`. The kind prefix may be omitted when
/// `default_kind` is given (flags like --endo supply it).
pub fn parse_operator_spec(text: &str, default_kind: Option<OperatorKind>) -> Result<OperatorSpec> {
    let text = text.trim();
    let (kind, rest) = if let Some(r) = text.strip_prefix("derivation:") {
        (OperatorKind::Derivation, r)
    } else if let Some(r) = text.strip_prefix("endo:") {
        (OperatorKind::Endomorphism, r)
    } else if let Some(r) = text.strip_prefix("ederivation:") {
        (OperatorKind::EDerivation, r)
    } else if let Some(kind) = default_kind {
        (kind, text)
    } else {
        return Err(Error::InvalidInput(
            "operator spec must start with `derivation:`, `endo:` or `ederivation:`".into(),
        ));
    };
    let expected_lhs = match kind {
        OperatorKind::Derivation => "D",
        OperatorKind::Endomorphism | OperatorKind::EDerivation => "phi",
    };
    let mut entries: Vec<Option<Expr>> = Vec::new();
    for part in rest.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (lhs, rhs) = part.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("expected `{expected_lhs}(xi)=expr`, got `{part}`"))
        })?;
        let lhs = lhs.trim();
        let var_idx = lhs
            .strip_prefix(expected_lhs)
            .and_then(|r| r.trim().strip_prefix('('))
            .and_then(|r| r.trim_end().strip_suffix(')'))
            .map(str::trim)
            .and_then(|v| v.strip_prefix('x'))
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "expected `{expected_lhs}(xi)` on the left side, got `{lhs}`"
                ))
            })?;
        let expr = parse_expr(rhs)?;
        if entries.len() < var_idx {
            entries.resize(var_idx, None);
        }
        if entries[var_idx - 1].is_some() {
            return Err(Error::InvalidInput(format!(
                "duplicate assignment for x{var_idx}"
            )));
        }
        entries[var_idx - 1] = Some(expr);
    }
    let entries: Vec<Expr> = entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or_else(|| Error::InvalidInput(format!("missing assignment for x{}", i + 1)))
        })
        .collect::<Result<_>>()?;
    if entries.is_empty() {
        return Err(Error::InvalidInput("empty operator spec".into()));
    }
    Ok(OperatorSpec { kind, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    #[test]
    fn parses_the_canonical_example() {
        let e = parse_expr("3/2*x1^2*x2^-1 - x1 + 5").unwrap();
        let p = eval_laurent(&e, 2, q()).unwrap();
        assert_eq!(p.to_string(), "5 - x1 + 3/2*x1^2*x2^-1");
        // round trip: parse the canonical print again
        let p2 = eval_laurent(&parse_expr(&p.to_string()).unwrap(), 2, q()).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn binomial_cube_expands() {
        let e = parse_expr("(1+x1)^3").unwrap();
        let p = eval_laurent(&e, 1, q()).unwrap();
        assert_eq!(p.to_string(), "1 + 3*x1 + 3*x1^2 + x1^3");
    }

    #[test]
    fn negative_exponent_in_series_context_is_rejected() {
        let e = parse_expr("x1^-1").unwrap();
        let err = eval_series(&e, 1, q(), 8).unwrap_err();
        assert!(err
            .to_string()
            .contains("negative exponent in a power-series context"));
    }

    #[test]
    fn series_inverse_of_unit_is_fine() {
        let e = parse_expr("(1-x1)^-1").unwrap();
        let s = eval_series(&e, 1, q(), 5).unwrap();
        assert_eq!(s.to_string(), "1 + x1 + x1^2 + x1^3 + x1^4 + x1^5");
    }

    #[test]
    fn localized_inverse_of_variable() {
        let e = parse_expr("x1^-1 + x2").unwrap();
        let l = eval_localized(&e, 2, q(), 6).unwrap();
        assert_eq!(
            l.coeff_at(&MultiIndex::new(vec![-1, 0])).unwrap(),
            Scalar::one(q())
        );
        assert_eq!(
            l.coeff_at(&MultiIndex::new(vec![0, 1])).unwrap(),
            Scalar::one(q())
        );
    }

    #[test]
    fn parenthesized_inverse_monomial() {
        let e = parse_expr("x1+x2+(x1*x2)^-1").unwrap();
        let p = eval_laurent(&e, 2, q()).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(
            p.coeff(&MultiIndex::new(vec![-1, -1])),
            Scalar::one(q())
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_expr("x1 + @") {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 6);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_expr("y1 + 1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_expr("x1 ^ x2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn precedence_binds_caret_above_unary_minus() {
        // -x1^2 is -(x1^2)
        let p = eval_laurent(&parse_expr("-x1^2").unwrap(), 1, q()).unwrap();
        assert_eq!(
            p.coeff(&MultiIndex::new(vec![2])),
            Scalar::from_int(-1, q())
        );
    }

    #[test]
    fn operator_spec_roundtrip() {
        let spec =
            parse_operator_spec("endo: phi(x1)=2*x1, phi(x2)=3*x2", None).unwrap();
        assert_eq!(spec.kind, OperatorKind::Endomorphism);
        assert_eq!(spec.entries.len(), 2);
        let op = spec.to_laurent_operator(2, q()).unwrap();
        let f = eval_laurent(&parse_expr("x1*x2^-1").unwrap(), 2, q()).unwrap();
        assert_eq!(
            op.apply(&f).unwrap(),
            f.scalar_mul(&Scalar::rational(2, 3))
        );
    }

    #[test]
    fn operator_spec_default_kind_and_errors() {
        let spec = parse_operator_spec("phi(x1)=x1", Some(OperatorKind::EDerivation)).unwrap();
        assert_eq!(spec.kind, OperatorKind::EDerivation);
        assert!(parse_operator_spec("phi(x1)=x1", None).is_err());
        assert!(parse_operator_spec("endo: phi(x1)=x1, phi(x1)=x2", None).is_err());
        assert!(parse_operator_spec("endo: phi(x2)=x1", None).is_err());
        assert!(parse_operator_spec("derivation: phi(x1)=x1", None).is_err());
    }

    #[test]
    fn series_operator_validation() {
        let spec = parse_operator_spec("endo: phi(x1)=1+x1", None).unwrap();
        assert!(spec.to_series_operator(1, q(), 8).is_err());
        let ok = parse_operator_spec("endo: phi(x1)=x1+x1^2", None).unwrap();
        assert!(ok.to_series_operator(1, q(), 8).is_ok());
    }
}
