//! Expression language for polynomials in `z` and `conj(z)`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?          right-associative
//! atom  := number | 'i' | 'z' | 'zbar' | 'conj' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Numbers are unsigned decimals (`3`, `0.25`, `1e-3`) or ratios written
//! without spaces (`3/2`). There is no division operator and no implicit
//! multiplication. Exponents must fold to a non-negative integer.

mod lexer;

use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{BiPoly, Coefficient, GaussianRational};
use lexer::{tokenize, Tok, Token, ATOM_START};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected one of {}, found {found}", expected.join(", "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("exponent at byte {offset} is not an integer")]
    NonIntegerExponent { offset: usize },
    #[error("exponent at byte {offset} is negative")]
    NegativeExponent { offset: usize },
    #[error("exponent at byte {offset} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { offset: usize },
    #[error("invalid numeric literal `{text}` at byte {offset}")]
    InvalidLiteral { offset: usize, text: String },
}

/// Parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Unsigned real literal, kept as written so it can be lowered exactly.
    Number(String),
    ImaginaryUnit,
    Z,
    Conj(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Direct interpretation at `w`, without lowering to a polynomial.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        match self {
            Expr::Number(s) => Complex64::from_literal(s).unwrap_or(Complex64::new(f64::NAN, 0.0)),
            Expr::ImaginaryUnit => Complex64::i(),
            Expr::Z => w,
            Expr::Conj(e) => e.eval(w).conj(),
            Expr::Neg(e) => -e.eval(w),
            Expr::Add(a, b) => a.eval(w) + b.eval(w),
            Expr::Sub(a, b) => a.eval(w) - b.eval(w),
            Expr::Mul(a, b) => a.eval(w) * b.eval(w),
            Expr::Pow(e, n) => e.eval(w).powu(*n),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(s) => f.write_str(s),
            Expr::ImaginaryUnit => f.write_str("i"),
            Expr::Z => f.write_str("z"),
            Expr::Conj(e) => write!(f, "conj({e})"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(e, n) => write!(f, "({e})^{n}"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    parser.expect_end()?;
    Ok(expr)
}

/// Lowers an expression to a polynomial, pushing conjugation to the leaves.
///
/// Literals are validated by [`parse`], so lowering cannot fail for a parsed
/// expression.
pub fn lower<C: Coefficient>(expr: &Expr) -> BiPoly<C> {
    match expr {
        Expr::Number(s) => {
            BiPoly::constant(C::from_literal(s).expect("literal validated by parse"))
        }
        Expr::ImaginaryUnit => BiPoly::constant(C::imaginary_unit()),
        Expr::Z => BiPoly::z(),
        Expr::Conj(e) => lower::<C>(e).conj(),
        Expr::Neg(e) => -lower::<C>(e),
        Expr::Add(a, b) => lower::<C>(a) + lower::<C>(b),
        Expr::Sub(a, b) => lower::<C>(a) - lower::<C>(b),
        Expr::Mul(a, b) => lower::<C>(a) * lower::<C>(b),
        Expr::Pow(e, n) => lower::<C>(e).pow(*n),
    }
}

/// Parses and lowers with double-precision coefficients.
pub fn parse_poly(src: &str) -> Result<BiPoly, ParseError> {
    parse(src).map(|e| lower(&e))
}

/// Parses and lowers with exact Gaussian-rational coefficients.
pub fn parse_poly_exact(src: &str) -> Result<BiPoly<GaussianRational>, ParseError> {
    parse(src).map(|e| lower(&e))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            offset: t.offset,
            expected: expected.to_vec(),
            found: t.tok.describe(),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::End => Ok(()),
            _ => Err(self.error(&["`+`", "`-`", "`*`", "`^`", "end of input"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let offset = self.peek().offset;
        let exponent = self.unary()?;
        Ok(Expr::Pow(Box::new(base), fold_exponent(&exponent, offset)?))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Number(text) => {
                if GaussianRational::from_literal(&text).is_none()
                    || Complex64::from_literal(&text).is_none()
                {
                    return Err(ParseError::InvalidLiteral {
                        offset: token.offset,
                        text,
                    });
                }
                self.bump();
                Ok(Expr::Number(text))
            }
            Tok::I => {
                self.bump();
                Ok(Expr::ImaginaryUnit)
            }
            Tok::Z => {
                self.bump();
                Ok(Expr::Z)
            }
            Tok::Zbar => {
                self.bump();
                Ok(Expr::Conj(Box::new(Expr::Z)))
            }
            Tok::Conj => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Conj(Box::new(inner)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }
}

/// Exponents are constant expressions evaluated exactly.
fn fold_exponent(expr: &Expr, offset: usize) -> Result<u32, ParseError> {
    let value = lower::<GaussianRational>(expr);
    if value.degree() > 0 {
        return Err(ParseError::NonIntegerExponent { offset });
    }
    let c = value
        .coeff(0, 0)
        .cloned()
        .unwrap_or_else(GaussianRational::zero);
    if !c.im.is_zero() || !c.re.is_integer() {
        return Err(ParseError::NonIntegerExponent { offset });
    }
    let n = c.re.to_integer();
    if n < 0.into() {
        return Err(ParseError::NegativeExponent { offset });
    }
    n.to_u32()
        .filter(|&n| n <= MAX_EXPONENT)
        .ok_or(ParseError::ExponentTooLarge { offset })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(terms: &[(u32, u32, f64, f64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(p, q, re, im)| ((p, q), c(re, im))))
    }

    #[test]
    fn worked_example_numerator() {
        let p = parse_poly("z*conj(z)^4 + z*conj(z)^2 + 3").unwrap();
        assert_eq!(
            p,
            poly(&[(1, 4, 1.0, 0.0), (1, 2, 1.0, 0.0), (0, 0, 3.0, 0.0)])
        );
    }

    #[test]
    fn zbar_synonym() {
        let p = parse_poly("3*z^3 + zbar").unwrap();
        assert_eq!(p, poly(&[(3, 0, 3.0, 0.0), (0, 1, 1.0, 0.0)]));
        assert_eq!(p, parse_poly("3 * z ^ 3 + conj( z )").unwrap());
    }

    #[test]
    fn negative_exponent_rejected() {
        assert_eq!(
            parse("z^(-1)"),
            Err(ParseError::NegativeExponent { offset: 2 })
        );
        assert_eq!(
            parse("z^-1"),
            Err(ParseError::NegativeExponent { offset: 2 })
        );
    }

    #[test]
    fn non_integer_exponents_rejected() {
        assert_eq!(
            parse("z^0.5"),
            Err(ParseError::NonIntegerExponent { offset: 2 })
        );
        assert_eq!(
            parse("z^i"),
            Err(ParseError::NonIntegerExponent { offset: 2 })
        );
        assert_eq!(
            parse("z^z"),
            Err(ParseError::NonIntegerExponent { offset: 2 })
        );
        assert_eq!(parse("z^(3/2*2)").map(|_| ()), Ok(()));
        assert!(matches!(
            parse("z^99999"),
            Err(ParseError::ExponentTooLarge { .. })
        ));
    }

    #[test]
    fn conjugation_rules() {
        assert_eq!(
            parse_poly("conj(z^2 + i)").unwrap(),
            poly(&[(0, 2, 1.0, 0.0), (0, 0, 0.0, -1.0)])
        );
        assert_eq!(
            parse_poly("conj(z*conj(z))").unwrap(),
            poly(&[(1, 1, 1.0, 0.0)])
        );
    }

    #[test]
    fn binomial_cube() {
        // Oracle: binomial coefficients C(3, k).
        let binom = [1.0, 3.0, 3.0, 1.0];
        let expected = BiPoly::from_terms((0..4).map(|k| ((k as u32, 0), c(binom[k], 0.0))));
        assert_eq!(parse_poly("(z+1)^3").unwrap(), expected);
    }

    #[test]
    fn precedence() {
        // -z^2 is -(z^2); ^ is right-associative.
        assert_eq!(parse_poly("-z^2").unwrap(), poly(&[(2, 0, -1.0, 0.0)]));
        assert_eq!(parse_poly("z^2^2").unwrap(), poly(&[(4, 0, 1.0, 0.0)]));
        assert_eq!(parse_poly("2*z - 3*z").unwrap(), poly(&[(1, 0, -1.0, 0.0)]));
        assert_eq!(parse_poly("1 - 2 - 3").unwrap(), poly(&[(0, 0, -4.0, 0.0)]));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("2z") {
            Err(ParseError::Syntax {
                offset, expected, ..
            }) => {
                assert_eq!(offset, 1);
                assert!(expected.contains(&"`*`"));
            }
            other => panic!("{other:?}"),
        }
        match parse("z + ") {
            Err(ParseError::Syntax {
                offset, expected, ..
            }) => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"`z`"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("conj z"),
            Err(ParseError::Syntax { offset: 5, .. })
        ));
        assert!(matches!(
            parse("(z"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse("z/2"),
            Err(ParseError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            parse("1/0"),
            Err(ParseError::InvalidLiteral { offset: 0, .. })
        ));
    }

    #[test]
    fn exact_mode_keeps_rationals() {
        let p = parse_poly_exact("3/2*z + 0.1").unwrap();
        assert_eq!(p.to_string(), "3/2*z + 1/10");
        assert_eq!(
            lower::<GaussianRational>(&parse(&p.to_string()).unwrap()),
            p
        );
    }

    #[test]
    fn complex_literal_forms() {
        assert_eq!(parse_poly("2*i").unwrap(), poly(&[(0, 0, 0.0, 2.0)]));
        assert_eq!(parse_poly("1.5+2*i").unwrap(), poly(&[(0, 0, 1.5, 2.0)]));
        assert_eq!(parse_poly("(1-i)*z").unwrap(), poly(&[(1, 0, 1.0, -1.0)]));
    }
}
