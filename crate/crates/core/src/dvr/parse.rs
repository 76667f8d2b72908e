//! Tiny expression language shared by element and descriptor syntax:
//! integers, one variable, `+ - * / ^`, parentheses, and implicit
//! multiplication after a number (`4x^3`).

use num_bigint::BigInt;

use super::DvrError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, DvrError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("ascii digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(DvrError::Parse(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, what: &str) -> DvrError {
        DvrError::Parse(format!("{what} in \"{}\"", self.src))
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, DvrError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, DvrError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::Op('(')))
                && matches!(self.tokens.get(self.pos - 1), Some(Token::Int(_)) | Some(Token::Op(')')))
            {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, DvrError> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DvrError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let exp = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), exp))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, DvrError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(e)
            }
            Some(tok) => Err(self.err(&format!("unexpected token {tok:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_expr(s: &str) -> Result<Expr, DvrError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(DvrError::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0, src: s };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(e)
}

/// Evaluate into a ring-like target.
pub(crate) trait Evaluator {
    type Out;
    fn int(&self, n: &BigInt) -> Result<Self::Out, DvrError>;
    fn var(&self, name: &str) -> Result<Self::Out, DvrError>;
    fn add(&self, a: Self::Out, b: Self::Out) -> Self::Out;
    fn sub(&self, a: Self::Out, b: Self::Out) -> Self::Out;
    fn mul(&self, a: Self::Out, b: Self::Out) -> Self::Out;
    fn div(&self, a: Self::Out, b: Self::Out) -> Result<Self::Out, DvrError>;
    fn neg(&self, a: Self::Out) -> Self::Out;
    fn one(&self) -> Self::Out;

    fn eval(&self, e: &Expr) -> Result<Self::Out, DvrError> {
        Ok(match e {
            Expr::Int(n) => self.int(n)?,
            Expr::Var(v) => self.var(v)?,
            Expr::Neg(a) => self.neg(self.eval(a)?),
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?),
            Expr::Sub(a, b) => self.sub(self.eval(a)?, self.eval(b)?),
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?),
            Expr::Div(a, b) => self.div(self.eval(a)?, self.eval(b)?)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                let mut acc = self.one();
                for _ in 0..*k {
                    acc = self.mul(acc, self.clone_out(&base));
                }
                acc
            }
        })
    }

    fn clone_out(&self, a: &Self::Out) -> Self::Out;
}

/// Evaluates to an integer polynomial in `x` (ascending coefficients).
pub(crate) struct IntPolyEval;

impl Evaluator for IntPolyEval {
    type Out = Vec<BigInt>;

    fn int(&self, n: &BigInt) -> Result<Self::Out, DvrError> {
        Ok(vec![n.clone()])
    }

    fn var(&self, name: &str) -> Result<Self::Out, DvrError> {
        if name == "x" {
            Ok(vec![BigInt::from(0), BigInt::from(1)])
        } else {
            Err(DvrError::Parse(format!("unknown variable '{name}', expected 'x'")))
        }
    }

    fn add(&self, a: Self::Out, b: Self::Out) -> Self::Out {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect()
    }

    fn sub(&self, a: Self::Out, b: Self::Out) -> Self::Out {
        self.add(a, self.neg(b))
    }

    fn mul(&self, a: Self::Out, b: Self::Out) -> Self::Out {
        let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn div(&self, _: Self::Out, _: Self::Out) -> Result<Self::Out, DvrError> {
        Err(DvrError::Parse("division is not allowed in an integer polynomial".into()))
    }

    fn neg(&self, a: Self::Out) -> Self::Out {
        a.into_iter().map(|c| -c).collect()
    }

    fn one(&self) -> Self::Out {
        vec![BigInt::from(1)]
    }

    fn clone_out(&self, a: &Self::Out) -> Self::Out {
        a.clone()
    }
}
