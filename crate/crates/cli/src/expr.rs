//! Element expressions.
//!
//! ```text
//! sum    := tensor (('+' | '-') tensor)*
//! tensor := prod ('(x)' prod)?
//! prod   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | GEN | '(' sum ')' | ('bock' | 'cop' | 'psi') '(' sum ')'
//! ```
//!
//! Generator tokens are `x6`, `zeta5`, `rho11` and `C{3,5}`. Evaluation
//! happens in a context: a single prime, or the integral ring.

use std::fmt;

use nearhopf::integral::PsiMode;
use nearhopf::{
    Element, HopfAlgebra, IntegralElement, IntegralRing, IntegralTensor, Monomial, Symbol,
    TensorElement,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Bock,
    Cop,
    Psi,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::Bock => "bock",
            Op::Cop => "cop",
            Op::Psi => "psi",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Gen(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Box<Expr>, Box<Expr>),
    Apply(Op, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator '{token}' at position {pos}")]
    UnknownGenerator { pos: usize, token: String },
    #[error("{0}")]
    Eval(String),
}

impl From<nearhopf::Error> for ExprError {
    fn from(e: nearhopf::Error) -> Self {
        ExprError::Eval(e.to_string())
    }
}

type Res<T> = Result<T, ExprError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Gen(Symbol, String),
    Op(Op),
    Plus,
    Minus,
    Star,
    Caret,
    Otimes,
    LParen,
    RParen,
    End,
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Res<T> {
    Err(ExprError::Syntax {
        pos,
        msg: msg.into(),
    })
}

fn lex(src: &str) -> Res<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if src[i..].starts_with("(x)") {
            out.push((start, Tok::Otimes));
            i += 3;
            continue;
        }
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i]
                .parse()
                .or_else(|_| syntax(start, "integer too large"))?;
            out.push((start, Tok::Int(n)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            if &src[start..i] == "C" && i < b.len() && b[i] == b'{' {
                match src[i..].find('}') {
                    Some(k) => i += k + 1,
                    None => return syntax(i, "unclosed '{'"),
                }
            }
            let word = &src[start..i];
            let tok = match word {
                "bock" => Tok::Op(Op::Bock),
                "cop" => Tok::Op(Op::Cop),
                "psi" => Tok::Op(Op::Psi),
                _ => match Symbol::parse(word) {
                    Some(s) => Tok::Gen(s, word.to_string()),
                    None => {
                        return Err(ExprError::UnknownGenerator {
                            pos: start,
                            token: word.to_string(),
                        })
                    }
                },
            };
            out.push((start, tok));
            continue;
        }
        return syntax(
            start,
            format!(
                "unexpected character '{}'",
                src[start..].chars().next().unwrap_or(' ')
            ),
        );
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Res<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            syntax(self.pos(), format!("expected {what}"))
        }
    }

    fn sum(&mut self) -> Res<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn tensor(&mut self) -> Res<Expr> {
        let lhs = self.prod()?;
        if *self.peek() == Tok::Otimes {
            self.bump();
            let rhs = self.prod()?;
            if *self.peek() == Tok::Otimes {
                return syntax(self.pos(), "only two tensor factors are supported");
            }
            return Ok(Expr::Tensor(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Res<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Res<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Res<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            return match self.bump() {
                Tok::Int(n) => {
                    let n = u32::try_from(n).or_else(|_| syntax(pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => syntax(pos, "expected an exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Res<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Gen(s, _) => Ok(Expr::Gen(s)),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Op(op) => {
                self.expect(Tok::LParen, "'(' after operator")?;
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Apply(op, Box::new(e)))
            }
            Tok::End => syntax(pos, "unexpected end of input"),
            t => syntax(pos, format!("unexpected {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::Otimes => "'(x)'",
        Tok::RParen => "')'",
        _ => "token",
    }
}

/// Parses an expression without checking generators against a context.
pub fn parse(src: &str) -> Res<Expr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return syntax(p.pos(), "trailing input");
    }
    Ok(e)
}

/// Parses and checks every generator against the context.
pub fn parse_in(src: &str, ctx: &Context<'_>) -> Res<Expr> {
    let toks = lex(src)?;
    for (pos, t) in &toks {
        if let Tok::Gen(s, token) = t {
            if !ctx.knows(s) {
                return Err(ExprError::UnknownGenerator {
                    pos: *pos,
                    token: token.clone(),
                });
            }
        }
    }
    let mut p = Parser { toks, at: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return syntax(p.pos(), "trailing input");
    }
    Ok(e)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Tensor(..) => 2,
            Expr::Mul(..) => 3,
            Expr::Neg(_) => 4,
            Expr::Pow(..) => 5,
            Expr::Int(_) | Expr::Gen(_) | Expr::Apply(..) => 6,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Gen(s) => write!(f, "{s}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(
                    f,
                    " {} ",
                    if matches!(self, Expr::Add(..)) {
                        '+'
                    } else {
                        '-'
                    }
                )?;
                b.write_at(f, 2)
            }
            Expr::Tensor(a, b) => {
                a.write_at(f, 3)?;
                write!(f, " (x) ")?;
                b.write_at(f, 3)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 3)?;
                write!(f, "*")?;
                b.write_at(f, 4)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 6)?;
                write!(f, "^{n}")
            }
            Expr::Apply(op, e) => {
                write!(f, "{}(", op.name())?;
                e.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Where an expression is evaluated.
pub enum Context<'a> {
    ModP(&'a HopfAlgebra),
    Integral(&'a IntegralRing),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Elem(Element),
    Tensor(TensorElement),
    IElem(IntegralElement),
    ITensor(IntegralTensor),
}

fn eval_err<T>(msg: impl Into<String>) -> Res<T> {
    Err(ExprError::Eval(msg.into()))
}

impl Context<'_> {
    fn knows(&self, s: &Symbol) -> bool {
        match self {
            Context::ModP(h) => h.algebra().index_of(s).is_some(),
            Context::Integral(r) => !matches!(s, Symbol::Zeta(_)) && r.embed(s).is_ok(),
        }
    }

    pub fn eval(&self, e: &Expr) -> Res<Value> {
        match self {
            Context::ModP(h) => self.eval_mod(h, e),
            Context::Integral(r) => self.eval_int(r, e),
        }
    }

    fn eval_mod(&self, h: &HopfAlgebra, e: &Expr) -> Res<Value> {
        let alg = h.algebra();
        Ok(match e {
            Expr::Int(n) => Value::Elem(alg.scalar(*n)),
            Expr::Gen(s) => Value::Elem(h.symbol(s)?),
            Expr::Neg(a) => match self.eval_mod(h, a)? {
                Value::Elem(x) => Value::Elem(x.neg()),
                Value::Tensor(t) => Value::Tensor(t.neg()),
                _ => unreachable!(),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sign = if matches!(e, Expr::Add(..)) { 1 } else { -1 };
                match (self.eval_mod(h, a)?, self.eval_mod(h, b)?) {
                    (Value::Elem(mut x), Value::Elem(y)) => {
                        x.add_scaled(&y, sign);
                        Value::Elem(x)
                    }
                    (Value::Tensor(mut x), Value::Tensor(y)) => {
                        x.add_scaled(&y, sign);
                        Value::Tensor(x)
                    }
                    _ => return eval_err("cannot add an element and a tensor"),
                }
            }
            Expr::Mul(a, b) => match (self.eval_mod(h, a)?, self.eval_mod(h, b)?) {
                (Value::Elem(x), Value::Elem(y)) => Value::Elem(alg.multiply(&x, &y)),
                (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(alg.tensor_multiply(&x, &y)),
                (Value::Elem(x), Value::Tensor(t)) | (Value::Tensor(t), Value::Elem(x))
                    if alg.degree(&x) == Some(0) =>
                {
                    Value::Tensor(t.scaled(x.coefficient(&Monomial::one(alg.ngens()))))
                }
                _ => return eval_err("cannot multiply an element and a tensor"),
            },
            Expr::Pow(a, n) => match self.eval_mod(h, a)? {
                Value::Elem(x) => Value::Elem(alg.power(&x, *n)),
                Value::Tensor(t) => {
                    let mut acc = alg.tensor(&alg.one(), &alg.one());
                    for _ in 0..*n {
                        acc = alg.tensor_multiply(&acc, &t);
                    }
                    Value::Tensor(acc)
                }
                _ => unreachable!(),
            },
            Expr::Tensor(a, b) => match (self.eval_mod(h, a)?, self.eval_mod(h, b)?) {
                (Value::Elem(x), Value::Elem(y)) => Value::Tensor(alg.tensor(&x, &y)),
                _ => return eval_err("tensor factors must be elements"),
            },
            Expr::Apply(op, a) => match (op, self.eval_mod(h, a)?) {
                (Op::Bock, Value::Elem(x)) => Value::Elem(h.bockstein(&x)),
                (Op::Bock, Value::Tensor(t)) => Value::Tensor(h.bockstein_tensor(&t)),
                (Op::Cop, Value::Elem(x)) => Value::Tensor(h.coproduct(&x)),
                (Op::Psi, Value::Elem(x)) => Value::Tensor(h.reduced_coproduct(&x)?),
                (_, _) => return eval_err(format!("{} takes an element", op.name())),
            },
        })
    }

    fn eval_int(&self, r: &IntegralRing, e: &Expr) -> Res<Value> {
        Ok(match e {
            Expr::Int(n) => Value::IElem(r.one().scaled(*n)),
            Expr::Gen(s) => Value::IElem(r.embed(s)?),
            Expr::Neg(a) => match self.eval_int(r, a)? {
                Value::IElem(x) => Value::IElem(x.scaled(-1)),
                Value::ITensor(t) => Value::ITensor(t.scaled(-1)),
                _ => unreachable!(),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sign = if matches!(e, Expr::Add(..)) { 1 } else { -1 };
                match (self.eval_int(r, a)?, self.eval_int(r, b)?) {
                    (Value::IElem(x), Value::IElem(y)) => Value::IElem(x.plus(&y.scaled(sign))),
                    (Value::ITensor(x), Value::ITensor(y)) => {
                        Value::ITensor(x.plus(&y.scaled(sign)))
                    }
                    _ => return eval_err("cannot add an element and a tensor"),
                }
            }
            Expr::Mul(a, b) => match (self.eval_int(r, a)?, self.eval_int(r, b)?) {
                (Value::IElem(x), Value::IElem(y)) => Value::IElem(r.multiply(&x, &y)),
                (Value::ITensor(x), Value::ITensor(y)) => Value::ITensor(tensor_product(r, &x, &y)),
                _ => return eval_err("cannot multiply an element and a tensor"),
            },
            Expr::Pow(a, n) => match self.eval_int(r, a)? {
                Value::IElem(x) => {
                    let mut acc = r.one();
                    for _ in 0..*n {
                        acc = r.multiply(&acc, &x);
                    }
                    Value::IElem(acc)
                }
                _ => return eval_err("powers of tensors are only supported mod p"),
            },
            Expr::Tensor(a, b) => match (self.eval_int(r, a)?, self.eval_int(r, b)?) {
                (Value::IElem(x), Value::IElem(y)) => Value::ITensor(r.cross(&x, &y)),
                _ => return eval_err("tensor factors must be elements"),
            },
            Expr::Apply(op, a) => match (op, self.eval_int(r, a)?) {
                (Op::Psi, Value::IElem(x)) => Value::ITensor(r.psi(&x, PsiMode::General)?),
                (Op::Cop, Value::IElem(x)) => {
                    let mut t = r.psi(&x, PsiMode::General)?;
                    t.add_scaled(&r.cross(&x, &r.one()), 1);
                    t.add_scaled(&r.cross(&r.one(), &x), 1);
                    Value::ITensor(t)
                }
                (Op::Bock, _) => return eval_err("bock needs a prime context"),
                (_, _) => return eval_err(format!("{} takes an element", op.name())),
            },
        })
    }
}

fn tensor_product(r: &IntegralRing, x: &IntegralTensor, y: &IntegralTensor) -> IntegralTensor {
    let mut out = r.tensor_zero();
    out.free = r.rational().tensor_multiply(&x.free, &y.free);
    for h in r.primes() {
        let p = h.prime();
        out.shadows.insert(
            p,
            h.algebra().tensor_multiply(&x.shadows[&p], &y.shadows[&p]),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("-x6*zeta5 + 2*zeta3^2 (x) 1").unwrap();
        assert_eq!(e.to_string(), "-x6*zeta5 + 2*zeta3^2 (x) 1");
        assert_eq!(
            parse("a + (x) b").unwrap_err(),
            ExprError::UnknownGenerator {
                pos: 0,
                token: "a".into()
            }
        );
        assert_eq!(
            parse("x6 - (x6 - zeta3)").unwrap().to_string(),
            "x6 - (x6 - zeta3)"
        );
        assert_eq!(
            parse("(x6 - x6) - zeta3").unwrap().to_string(),
            "x6 - x6 - zeta3"
        );
    }

    #[test]
    fn positions() {
        match parse("x6 * (zeta5 + ").unwrap_err() {
            ExprError::Syntax { pos, .. } => assert_eq!(pos, 14),
            e => panic!("{e}"),
        }
        match parse("x6 $ zeta5").unwrap_err() {
            ExprError::Syntax { pos, .. } => assert_eq!(pos, 3),
            e => panic!("{e}"),
        }
    }
}
