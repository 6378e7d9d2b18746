//! Text expressions over an algebra: lexer, precedence-climbing parser and
//! evaluator.
//!
//! Precedence, loosest first: `+ -`, then `* /`, then unary minus, then `^`.
//! `[A, B]` is the commutator and `{A, B}` the anticommutator.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::clifford_family::{intertwiner_phi, jucys_murphy, z_element};
use crate::engine::{Algebra, Element, Kind, Letter};
use crate::error::{Error, Result};
use crate::scalar::{QOmega, Scalar};
use crate::spin_family::{frak_z, intertwiner_psi, odd_jm};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|c| c.1).collect())));
        } else if "+-*/^()[]{},".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            k += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character {ch:?}") });
        }
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Omega,
    U,
    /// Generator or distinguished element: name, integer arguments, position.
    Gen { name: String, args: Vec<usize>, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
    Commutator(Box<Expr>, Box<Expr>),
    Anticommutator(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected '{op}'"))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.k += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Op('^')) {
            return Ok(base);
        }
        let pos = self.pos();
        self.k += 1;
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.k += 1;
                let e: i64 = i64::try_from(v).or_else(|_| self.err("exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, pos))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn index(&mut self) -> Result<usize> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.k += 1;
                usize::try_from(v).or_else(|_| self.err("index too large"))
            }
            _ => self.err("expected an index"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.k += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Op('(')) => {
                self.k += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(open @ ('[' | '{'))) => {
                self.k += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                if open == '[' {
                    self.expect(']')?;
                    Ok(Expr::Commutator(Box::new(a), Box::new(b)))
                } else {
                    self.expect('}')?;
                    Ok(Expr::Anticommutator(Box::new(a), Box::new(b)))
                }
            }
            Some(Tok::Ident(id)) => {
                self.k += 1;
                self.identifier(id, pos)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn identifier(&mut self, id: String, pos: usize) -> Result<Expr> {
        match id.as_str() {
            "w" => return Ok(Expr::Omega),
            "u" => return Ok(Expr::U),
            _ => {}
        }
        let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
        let (name, digits) = id.split_at(split);
        if !digits.is_empty() {
            if !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse { pos, msg: format!("malformed generator {id:?}") });
            }
            // `s12` is the transposition (1 2); every other token takes one index
            let args: Vec<usize> = if name == "s" && digits.len() == 2 {
                digits.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
            } else {
                vec![digits.parse().map_err(|_| Error::Parse { pos, msg: format!("index too large in {id:?}") })?]
            };
            return Ok(Expr::Gen { name: name.to_string(), args, pos });
        }
        if self.eat('(') {
            let mut args = vec![self.index()?];
            while self.eat(',') {
                args.push(self.index()?);
            }
            self.expect(')')?;
            return Ok(Expr::Gen { name: id, args, pos });
        }
        Err(Error::Parse { pos, msg: format!("unknown symbol {id:?}") })
    }
}

/// Parses `text` into an expression tree without consulting any algebra.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, k: 0, end: text.len() };
    let e = p.sum()?;
    if p.k < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses and evaluates `text` in `alg`.
pub fn parse_element(alg: &Arc<Algebra>, text: &str) -> Result<Element> {
    let e = parse_expression(text)?;
    e.validate(alg)?;
    e.eval(alg)
}

enum Token {
    Letter(Letter),
    Element(Element),
}

fn unknown(name: &str, args: &[usize], alg: &Algebra) -> Error {
    let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    Error::UnknownGenerator { generator: format!("{name}({})", args.join(",")), algebra: alg.name() }
}

fn one_based(alg: &Algebra, what: &str, i: usize, max: usize) -> Result<u8> {
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { what: what.to_string(), index: i, n: alg.n() });
    }
    Ok((i - 1) as u8)
}

/// Resolves a generator token, optionally building distinguished elements.
fn resolve(alg: &Arc<Algebra>, name: &str, args: &[usize], build: bool) -> Result<Token> {
    let n = alg.n();
    let kind = alg.kind();
    let single = |f: fn(u8) -> Letter, max: usize| -> Result<Token> {
        match args {
            [i] => {
                let l = f(one_based(alg, name, *i, max)?);
                alg.check_letter(l)?;
                Ok(Token::Letter(l))
            }
            _ => Err(unknown(name, args, alg)),
        }
    };
    let special = |ok: bool, f: &dyn Fn() -> Result<Element>| -> Result<Token> {
        if !ok {
            return Err(unknown(name, args, alg));
        }
        if build {
            f().map(Token::Element)
        } else {
            Ok(Token::Element(alg.zero()))
        }
    };
    let arg = |k: usize| args.get(k).copied().unwrap_or(0);
    let tensor = alg.signature().tensor;
    match (name, args.len()) {
        ("x", 1) => single(Letter::X, n),
        ("y", 1) => single(Letter::Y, n),
        ("yinv", 1) => single(Letter::YInv, n),
        ("a", 1) => single(Letter::A, n),
        ("b", 1) => single(Letter::B, n),
        ("xi", 1) => single(Letter::Xi, n),
        ("e", 1) => single(Letter::E, n),
        ("einv", 1) => single(Letter::EInv, n),
        ("epsv", 1) => single(Letter::EpsV, n),
        ("zeta", 1) => single(Letter::Zeta, n),
        ("c", 1) if tensor => single(Letter::Outer, n),
        ("c", 1) => single(Letter::C, n),
        ("t", 1) => single(Letter::T, n.saturating_sub(1)),
        ("s", 1) => single(Letter::S, n.saturating_sub(1)),
        ("s", 2) => special(!kind.is_spin(), &|| alg.transposition(arg(0), arg(1))),
        ("tr", 2) => special(kind.is_spin(), &|| alg.odd_transposition(arg(0), arg(1))),
        ("M", 1) => special(kind.has_clifford(), &|| jucys_murphy(alg, arg(0))),
        ("z", 1) => special(kind == Kind::DaHCa, &|| z_element(alg, arg(0))),
        ("phi", 1) => special(kind == Kind::AffineHC, &|| intertwiner_phi(alg, arg(0))),
        ("Ms", 1) => special(kind.is_spin(), &|| odd_jm(alg, arg(0))),
        ("fz", 1) => special(kind == Kind::SDaHa, &|| frak_z(alg, arg(0))),
        ("psi", 1) => special(kind == Kind::SpinAffine, &|| intertwiner_psi(alg, arg(0))),
        _ => Err(unknown(name, args, alg)),
    }
}

fn check_indices(alg: &Algebra, name: &str, args: &[usize]) -> Result<()> {
    let max = match name {
        "phi" | "psi" => alg.n().saturating_sub(1),
        _ => alg.n(),
    };
    for &i in args {
        one_based(alg, name, i, max)?;
    }
    if name == "s" || name == "tr" {
        if let [i, j] = args {
            if i == j {
                return Err(Error::Invalid(format!("{name}({i},{j}) needs distinct indices")));
            }
        }
    }
    Ok(())
}

fn as_scalar(e: &Element, pos: usize, what: &str) -> Result<Scalar> {
    e.as_scalar().ok_or_else(|| Error::Parse { pos, msg: format!("{what} must be a scalar") })
}

impl Expr {
    /// Checks every generator token against `alg` without building
    /// anything expensive.
    pub fn validate(&self, alg: &Arc<Algebra>) -> Result<()> {
        match self {
            Expr::Int(_) | Expr::Omega | Expr::U => Ok(()),
            Expr::Gen { name, args, .. } => {
                check_indices(alg, name, args)?;
                resolve(alg, name, args, false).map(|_| ())
            }
            Expr::Neg(a) | Expr::Pow(a, _, _) => a.validate(alg),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) | Expr::Commutator(a, b) | Expr::Anticommutator(a, b) => {
                a.validate(alg)?;
                b.validate(alg)
            }
        }
    }

    pub fn eval(&self, alg: &Arc<Algebra>) -> Result<Element> {
        Ok(match self {
            Expr::Int(v) => alg.scalar(Scalar::constant(QOmega::new(BigRational::from_integer(v.clone()), BigRational::zero()))),
            Expr::Omega => alg.scalar(Scalar::omega()),
            Expr::U => alg.scalar(Scalar::u()),
            Expr::Gen { name, args, .. } => {
                check_indices(alg, name, args)?;
                match resolve(alg, name, args, true)? {
                    Token::Letter(l) => alg.letter(l)?,
                    Token::Element(e) => e,
                }
            }
            Expr::Neg(a) => -&a.eval(alg)?,
            Expr::Add(a, b) => &a.eval(alg)? + &b.eval(alg)?,
            Expr::Sub(a, b) => &a.eval(alg)? - &b.eval(alg)?,
            Expr::Mul(a, b) => &a.eval(alg)? * &b.eval(alg)?,
            Expr::Div(a, b, pos) => {
                let d = as_scalar(&b.eval(alg)?, *pos, "divisor")?;
                a.eval(alg)?.scale(&d.inv()?)
            }
            Expr::Pow(a, k, pos) => power(alg, a, *k, *pos)?,
            Expr::Commutator(a, b) => a.eval(alg)?.bracket(&b.eval(alg)?),
            Expr::Anticommutator(a, b) => a.eval(alg)?.anticommutator(&b.eval(alg)?),
        })
    }
}

fn power(alg: &Arc<Algebra>, base: &Expr, k: i64, pos: usize) -> Result<Element> {
    let b = base.eval(alg)?;
    let exp = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
    if k >= 0 {
        return Ok(b.pow(exp));
    }
    if let Some(s) = b.as_scalar() {
        return Ok(alg.scalar(s.pow(k as i32)?));
    }
    // a single invertible generator
    if let Expr::Gen { name, args, .. } = base {
        if let Ok(Token::Letter(l)) = resolve(alg, name, args, false) {
            if let Some(inv) = l.inverse() {
                if alg.has_letter(inv) {
                    return Ok(alg.letter(inv)?.pow(exp));
                }
            }
        }
    }
    Err(Error::NotInvertible(format!("negative power of {b}")))
}
