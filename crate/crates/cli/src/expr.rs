//! Coefficient expressions: polynomials and trigonometric functions of `t`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/')? unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := number | 't' | 'pi' | 'i' | func '(' expr ')' | '(' expr ')'
//! func  := sin | cos | tan
//! ```

use std::fmt;
use std::str::FromStr;

use spq_numerics::C64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(C64),
    Time,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, t: f64) -> C64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Time => C64::from(t),
            Expr::Neg(a) => -a.eval(t),
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Sub(a, b) => a.eval(t) - b.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Div(a, b) => a.eval(t) / b.eval(t),
            Expr::Pow(a, k) => a.eval(t).powu(*k),
            Expr::Call(f, a) => {
                let x = a.eval(t);
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                }
            }
        }
    }

    pub fn depends_on_time(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Time => true,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.depends_on_time(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.depends_on_time() || b.depends_on_time()
            }
        }
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, ExprError> {
        let tokens = lex(s)?;
        let mut p = Parser { tokens, pos: 0, end: s.chars().count() + 1 };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some((col, tok)) => Err(ExprError { column: col, message: format!("unexpected {tok}") }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Op(c) => write!(f, "'{c}'"),
        }
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut j = k + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    k = j;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let text: String = chars[start..k].iter().collect();
            let x = text.parse::<f64>().map_err(|_| ExprError { column: col, message: format!("bad number '{text}'") })?;
            out.push((col, Tok::Num(x)));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            k += 1;
        } else {
            return Err(ExprError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.tokens.get(self.pos).map(|(c, t)| (*c, t))
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end, |(c, _)| c)
    }

    fn eat(&mut self, op: char) -> bool {
        if matches!(self.peek(), Some((_, Tok::Op(c))) if *c == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { column: self.column(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some((_, Tok::Num(_) | Tok::Ident(_))) | Some((_, Tok::Op('(')))) {
                // juxtaposition, as in `2t` or `3 sin(t)`
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some((_, Tok::Num(x))) if *x >= 0.0 && x.fract() == 0.0 && *x <= 64.0 => {
                let k = *x as u32;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => self.fail("exponent must be an integer between 0 and 64"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let Some((_, tok)) = self.peek() else {
            return self.fail("unexpected end of expression");
        };
        let tok = tok.clone();
        match tok {
            Tok::Num(x) => {
                self.pos += 1;
                Ok(Expr::Const(C64::from(x)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected ')'");
                }
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "t" => {
                        self.pos += 1;
                        return Ok(Expr::Time);
                    }
                    "pi" => {
                        self.pos += 1;
                        return Ok(Expr::Const(C64::from(std::f64::consts::PI)));
                    }
                    "i" => {
                        self.pos += 1;
                        return Ok(Expr::Const(C64::i()));
                    }
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "tan" => Func::Tan,
                    _ => return self.fail(format!("unknown name '{name}'")),
                };
                self.pos += 1;
                if !self.eat('(') {
                    return self.fail(format!("expected '(' after {name}"));
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected ')'");
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            other => self.fail(format!("unexpected {other}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, t: f64) -> C64 {
        s.parse::<Expr>().unwrap().eval(t)
    }

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(ev("1 + 2*t^2", 3.0), C64::from(19.0));
        assert_eq!(ev("-t^2", 2.0), C64::from(-4.0));
        assert_eq!(ev("2t", 1.5), C64::from(3.0));
        assert_eq!(ev("(1 + t)(1 - t)", 0.5), C64::from(0.75));
        assert_eq!(ev("3 - 2 - 1", 0.0), C64::from(0.0));
        assert_eq!(ev("0.05 i", 0.0), C64::new(0.0, 0.05));
        assert_eq!(ev("1e-3 t", 2.0), C64::from(2e-3));
        assert!((ev("cos(pi t)", 1.0) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn time_dependence() {
        assert!(!"2 sin(0.3)".parse::<Expr>().unwrap().depends_on_time());
        assert!("1 + 0 t".parse::<Expr>().unwrap().depends_on_time());
    }

    #[test]
    fn errors_carry_columns() {
        let e = "1 + exp(t)".parse::<Expr>().unwrap_err();
        assert_eq!(e.column, 5);
        assert_eq!("t^0.5".parse::<Expr>().unwrap_err().column, 3);
        assert_eq!("(1 + t".parse::<Expr>().unwrap_err().column, 7);
        assert_eq!("1 $ 2".parse::<Expr>().unwrap_err().column, 3);
        assert!("".parse::<Expr>().is_err());
        assert!("1 +".parse::<Expr>().is_err());
    }
}
