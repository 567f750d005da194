//! Compact text notation for stored formulas.
//!
//! A formula is a signed sum of terms. Each term is either a tensor
//! `c*left (x) right`, a plain power product `c*word`, or a Bockstein
//! block `c*beta[...]` / `c*deltaP[...]` enclosing a sum of tensor terms.
//! Words are `*`-separated generator powers such as `x6^2*zeta5`.

use serde::{Deserialize, Serialize};

use crate::algebra::Symbol;

/// A power product written in a stated order.
pub type Word = Vec<(Symbol, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub coeff: i64,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaTerm {
    Tensor(TensorTerm),
    /// `coeff * beta(inner)` when `prime` is `None` (mod-p tables), or
    /// `coeff * delta_p(inner)` for integral formulas.
    Bock {
        prime: Option<u32>,
        coeff: i64,
        inner: Vec<TensorTerm>,
    },
}

pub type Formula = Vec<FormulaTerm>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotationError(pub String);

impl std::fmt::Display for NotationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bad formula notation: {}", self.0)
    }
}

impl std::error::Error for NotationError {}

type Res<T> = std::result::Result<T, NotationError>;

fn err<T>(msg: impl Into<String>) -> Res<T> {
    Err(NotationError(msg.into()))
}

/// Splits a sum at top-level `+`/`-`, returning signed pieces.
fn split_sum(src: &str) -> Res<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1;
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '[' | '(' | '{' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' | '}' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                } else if !out.is_empty() {
                    return err(format!("dangling operator in '{src}'"));
                }
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return err(format!("unbalanced brackets in '{src}'"));
    }
    if cur.trim().is_empty() {
        if !out.is_empty() || sign == -1 {
            return err(format!("trailing operator in '{src}'"));
        }
    } else {
        out.push((sign, cur.trim().to_string()));
    }
    Ok(out)
}

/// Strips a leading `c*` integer coefficient.
fn split_coeff(s: &str) -> (i64, &str) {
    let s = s.trim();
    let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return (1, s);
    }
    let rest = s[digits.len()..].trim_start();
    let c: i64 = digits.parse().unwrap_or(1);
    match rest.strip_prefix('*') {
        Some(r) => (c, r.trim()),
        None if rest.is_empty() => (c, "1"),
        None => (1, s),
    }
}

pub fn parse_word(s: &str) -> Res<Word> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => match e.trim().parse::<u32>() {
                Ok(e) => (b.trim(), e),
                Err(_) => return err(format!("bad exponent in '{factor}'")),
            },
            None => (factor, 1),
        };
        let sym =
            Symbol::parse(base).ok_or_else(|| NotationError(format!("unknown symbol '{base}'")))?;
        if exp > 0 {
            word.push((sym, exp));
        }
    }
    Ok(word)
}

pub fn parse_terms(src: &str) -> Res<Vec<Term>> {
    if src.trim() == "0" {
        return Ok(Vec::new());
    }
    split_sum(src)?
        .into_iter()
        .map(|(sign, piece)| {
            let (c, rest) = split_coeff(&piece);
            Ok(Term {
                coeff: sign * c,
                word: parse_word(rest)?,
            })
        })
        .collect()
}

fn parse_tensor_term(sign: i64, piece: &str) -> Res<TensorTerm> {
    let (c, rest) = split_coeff(piece);
    let (l, r) = rest
        .split_once("(x)")
        .ok_or_else(|| NotationError(format!("expected a tensor in '{piece}'")))?;
    Ok(TensorTerm {
        coeff: sign * c,
        left: parse_word(l)?,
        right: parse_word(r)?,
    })
}

pub fn parse_tensor_terms(src: &str) -> Res<Vec<TensorTerm>> {
    if src.trim() == "0" {
        return Ok(Vec::new());
    }
    split_sum(src)?
        .into_iter()
        .map(|(s, p)| parse_tensor_term(s, &p))
        .collect()
}

pub fn parse_formula(src: &str) -> Res<Formula> {
    if src.trim() == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (sign, piece) in split_sum(src)? {
        let (c, rest) = split_coeff(&piece);
        if let Some(open) = rest.find('[') {
            let head = &rest[..open];
            let inner = rest[open + 1..]
                .strip_suffix(']')
                .ok_or_else(|| NotationError(format!("unclosed block in '{piece}'")))?;
            let prime = if head == "beta" {
                None
            } else if let Some(p) = head.strip_prefix("delta") {
                Some(
                    p.parse()
                        .map_err(|_| NotationError(format!("bad prime in '{head}'")))?,
                )
            } else {
                return err(format!("unknown operator '{head}'"));
            };
            out.push(FormulaTerm::Bock {
                prime,
                coeff: sign * c,
                inner: parse_tensor_terms(inner)?,
            });
        } else {
            out.push(FormulaTerm::Tensor(parse_tensor_term(sign, &piece)?));
        }
    }
    Ok(out)
}

pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|(s, e)| {
            if *e == 1 {
                s.to_string()
            } else {
                format!("{s}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn push_signed(out: &mut String, c: i64, body: &str) {
    let (neg, a) = if c < 0 { (true, -c) } else { (false, c) };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if a != 1 {
        out.push_str(&format!("{a}*"));
    }
    out.push_str(body);
}

pub fn format_terms(terms: &[Term]) -> String {
    let mut out = String::new();
    for t in terms {
        push_signed(&mut out, t.coeff, &format_word(&t.word));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn format_tensor_terms(terms: &[TensorTerm]) -> String {
    let mut out = String::new();
    for t in terms {
        let body = format!("{} (x) {}", format_word(&t.left), format_word(&t.right));
        push_signed(&mut out, t.coeff, &body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn format_formula(f: &Formula) -> String {
    let mut out = String::new();
    for t in f {
        match t {
            FormulaTerm::Tensor(tt) => {
                let body = format!("{} (x) {}", format_word(&tt.left), format_word(&tt.right));
                push_signed(&mut out, tt.coeff, &body);
            }
            FormulaTerm::Bock {
                prime,
                coeff,
                inner,
            } => {
                let head = match prime {
                    None => "beta".to_string(),
                    Some(p) => format!("delta{p}"),
                };
                push_signed(
                    &mut out,
                    *coeff,
                    &format!("{head}[{}]", format_tensor_terms(inner)),
                );
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_formula() {
        let f =
            parse_formula("x12 (x) zeta23 + beta[3*x12*zeta11 (x) zeta11 - zeta11 (x) zeta11*x12]")
                .unwrap();
        assert_eq!(f.len(), 2);
        match &f[1] {
            FormulaTerm::Bock {
                prime: None,
                coeff: 1,
                inner,
            } => {
                assert_eq!(inner.len(), 2);
                assert_eq!(inner[0].coeff, 3);
                assert_eq!(inner[1].coeff, -1);
                assert_eq!(
                    inner[1].right,
                    vec![(Symbol::Zeta(11), 1), (Symbol::X(12), 1)]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn leading_minus_and_delta() {
        let f = parse_formula("-2*delta5[zeta11 (x) zeta11] + x8 (x) rho3").unwrap();
        assert!(matches!(
            &f[0],
            FormulaTerm::Bock {
                prime: Some(5),
                coeff: -2,
                ..
            }
        ));
        assert_eq!(
            format_formula(&f),
            "-2*delta5[zeta11 (x) zeta11] + x8 (x) rho3"
        );
    }

    #[test]
    fn words_and_terms() {
        assert_eq!(
            parse_word("x6^2*zeta5").unwrap(),
            vec![(Symbol::X(6), 2), (Symbol::Zeta(5), 1)]
        );
        assert_eq!(parse_word("1").unwrap(), vec![]);
        let t = parse_terms("x20^2*C{4,10}").unwrap();
        assert_eq!(t[0].word[1].0, Symbol::C(vec![4, 10]));
        assert!(parse_terms("0").unwrap().is_empty());
        assert!(parse_word("y7").is_err());
        assert!(parse_formula("x6 (x) zeta5 +").is_err());
    }
}
