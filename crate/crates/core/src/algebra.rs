//! Graded-commutative monomial algebras.
//!
//! An [`Algebra`] is a tensor product of bounded generators: exterior
//! generators, truncated polynomial generators `x^h = 0`, and generators
//! whose square rewrites to a stated element (`zeta3^2 = x6`). Every element
//! is stored in monomial normal form with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

/// Coefficient field of an algebra.
///
/// Over the rationals the coefficients are kept as integers: every operation
/// in this crate is a ring operation, so integral coefficients stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Prime(p) => p,
            Field::Rational => 0,
        }
    }

    #[inline]
    pub fn normalize(self, c: i64) -> i64 {
        match self {
            Field::Prime(p) => c.rem_euclid(p as i64),
            Field::Rational => c,
        }
    }

    #[inline]
    pub fn add(self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    #[inline]
    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            Field::Prime(p) => (a * b).rem_euclid(p as i64),
            Field::Rational => a.checked_mul(b).expect("integer coefficient overflow"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

/// Names of generators and of integral ring generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    X(u32),
    Zeta(u32),
    Rho(u32),
    /// The Bockstein class `C_I`, indexed by a subset of `e(G,p)`.
    C(Vec<u32>),
}

impl Symbol {
    /// Canonical generator ordering: x-generators first, then the odd ones.
    fn order_key(&self) -> (u8, u32) {
        match self {
            Symbol::X(i) => (0, *i),
            Symbol::Zeta(i) | Symbol::Rho(i) => (1, *i),
            Symbol::C(_) => (2, 0),
        }
    }

    pub fn parse(s: &str) -> Option<Symbol> {
        let num = |t: &str| -> Option<u32> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            t.parse().ok()
        };
        if let Some(rest) = s.strip_prefix("zeta") {
            return num(rest).map(Symbol::Zeta);
        }
        if let Some(rest) = s.strip_prefix("rho") {
            return num(rest).map(Symbol::Rho);
        }
        if let Some(rest) = s.strip_prefix('x') {
            return num(rest).map(Symbol::X);
        }
        if let Some(rest) = s.strip_prefix("C{") {
            let inner = rest.strip_suffix('}')?;
            let mut set = Vec::new();
            for part in inner.split(',') {
                set.push(num(part.trim())?);
            }
            if set.is_empty() {
                return None;
            }
            set.sort_unstable();
            set.dedup();
            return Some(Symbol::C(set));
        }
        None
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X(i) => write!(f, "x{i}"),
            Symbol::Zeta(i) => write!(f, "zeta{i}"),
            Symbol::Rho(i) => write!(f, "rho{i}"),
            Symbol::C(set) => {
                write!(f, "C{{")?;
                for (k, s) in set.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Square is zero.
    Exterior,
    /// The h-th power is zero.
    Truncated(u32),
    /// The square rewrites to the given normal-form element.
    SquareTo(Element),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorsionOrder {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub symbol: Symbol,
    pub degree: u32,
    pub rule: Rule,
    pub torsion_order: TorsionOrder,
}

impl GeneratorSpec {
    /// Largest exponent allowed in a normal-form monomial, plus one.
    pub fn bound(&self) -> u32 {
        match self.rule {
            Rule::Exterior | Rule::SquareTo(_) => 2,
            Rule::Truncated(h) => h,
        }
    }
}

/// A normal-form exponent vector, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }
}

/// A sparse linear combination of normal-form monomials.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    field: Field,
    terms: BTreeMap<Monomial, i64>,
}

impl Element {
    pub fn zero(field: Field) -> Element {
        Element {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(field: Field, m: Monomial, c: i64) -> Element {
        let mut e = Element::zero(field);
        e.add_term(m, c);
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        let c = self.field.normalize(c);
        if c == 0 {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: i64) {
        for (m, d) in other.terms() {
            self.add_term(m.clone(), self.field.mul(c, d));
        }
    }

    pub fn scaled(&self, c: i64) -> Element {
        let mut out = Element::zero(self.field);
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    pub fn neg(&self) -> Element {
        self.scaled(-1)
    }
}

/// A graded-commutative algebra presented by bounded generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    group: Group,
    field: Field,
    gens: Vec<GeneratorSpec>,
}

impl Algebra {
    pub fn new(group: Group, field: Field, gens: Vec<GeneratorSpec>) -> Result<Algebra> {
        let bad = |msg: String| Err(Error::InvalidPresentation(msg));
        for w in gens.windows(2) {
            if w[0].symbol.order_key() >= w[1].symbol.order_key() {
                return bad(format!(
                    "generators {} and {} out of canonical order",
                    w[0].symbol, w[1].symbol
                ));
            }
        }
        for g in &gens {
            if g.degree == 0 {
                return bad(format!("{} has degree 0", g.symbol));
            }
            if let Field::Prime(p) = field {
                if g.torsion_order != TorsionOrder::Finite(p) {
                    return bad(format!("{} torsion order must be {p} over F{p}", g.symbol));
                }
            }
            match &g.rule {
                Rule::Truncated(h) if *h < 2 => {
                    return bad(format!("{} truncated at {h}", g.symbol))
                }
                Rule::SquareTo(t)
                    if g.degree % 2 == 1 && field != Field::Prime(2) && !t.is_zero() =>
                {
                    return bad(format!(
                        "odd {} squares to nonzero outside characteristic 2",
                        g.symbol
                    ));
                }
                _ => {}
            }
        }
        let alg = Algebra { group, field, gens };
        for g in &alg.gens {
            if let Rule::SquareTo(t) = &g.rule {
                if t.field() != field {
                    return bad(format!(
                        "square target of {} over the wrong field",
                        g.symbol
                    ));
                }
                for (m, _) in t.terms() {
                    if m.0.len() != alg.gens.len() || !alg.is_normal(m) {
                        return bad(format!("square target of {} not in normal form", g.symbol));
                    }
                    if alg.monomial_degree(m) != 2 * g.degree {
                        return bad(format!(
                            "square target of {} has the wrong degree",
                            g.symbol
                        ));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.gens.iter().position(|g| &g.symbol == s)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field)
    }

    pub fn one(&self) -> Element {
        Element::from_monomial(self.field, Monomial::one(self.ngens()), 1)
    }

    pub fn scalar(&self, c: i64) -> Element {
        Element::from_monomial(self.field, Monomial::one(self.ngens()), c)
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        let mut v = vec![0; self.ngens()];
        v[i] = 1;
        Monomial(v)
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::from_monomial(self.field, self.generator_monomial(i), 1)
    }

    pub fn generator_by_symbol(&self, s: &Symbol) -> Option<Element> {
        self.index_of(s).map(|i| self.generator(i))
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.0.iter()
            .zip(&self.gens)
            .all(|(&e, g)| (e as u32) < g.bound())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as u32 * g.degree)
            .sum()
    }

    /// Degree of a homogeneous nonzero element; `None` for zero or mixed degrees.
    pub fn degree(&self, e: &Element) -> Option<u32> {
        let mut degs = e.terms().map(|(m, _)| self.monomial_degree(m));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self, e: &Element) -> bool {
        e.is_zero() || self.degree(e).is_some()
    }

    /// Normal form of an arbitrary power product, written in generator order.
    pub fn reduce_monomial(&self, raw: &[u32]) -> Element {
        assert_eq!(raw.len(), self.ngens(), "exponent vector length");
        for (i, g) in self.gens.iter().enumerate() {
            let e = raw[i];
            match &g.rule {
                Rule::Exterior if e >= 2 => return self.zero(),
                Rule::Truncated(h) if e >= *h => return self.zero(),
                Rule::SquareTo(t) if e >= 2 => {
                    // g^2 has even degree, hence is central.
                    let mut rest = raw.to_vec();
                    rest[i] -= 2;
                    let head = self.reduce_monomial(&rest);
                    return self.multiply(&head, t);
                }
                _ => {}
            }
        }
        let m = Monomial(raw.iter().map(|&e| e as u8).collect());
        Element::from_monomial(self.field, m, 1)
    }

    /// Koszul sign of writing `a * b` in canonical generator order.
    pub fn product_sign(&self, a: &Monomial, b: &Monomial) -> i64 {
        let mut parity = 0u32;
        let mut odd_after = 0u32;
        for i in (0..self.ngens()).rev() {
            if self.gens[i].degree % 2 == 1 {
                parity += b.0[i] as u32 * odd_after;
                odd_after += a.0[i] as u32;
            }
        }
        if parity.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        let sign = self.product_sign(a, b);
        let raw: Vec<u32> =
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| x as u32 + y as u32)
                .collect();
        let prod = self.reduce_monomial(&raw);
        if sign == 1 {
            prod
        } else {
            prod.neg()
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = self.zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let c = self.field.mul(ca, cb);
                out.add_scaled(&self.multiply_monomials(ma, mb), c);
            }
        }
        out
    }

    pub fn power(&self, a: &Element, n: u32) -> Element {
        let mut out = self.one();
        for _ in 0..n {
            out = self.multiply(&out, a);
        }
        out
    }

    /// Normal-form monomials of exactly the given degree, in canonical order.
    pub fn monomial_basis(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; self.ngens()];
        self.enumerate(0, degree, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let g = &self.gens[i];
        for e in 0..g.bound() {
            let d = e * g.degree;
            if d > remaining {
                break;
            }
            cur[i] = e as u8;
            self.enumerate(i + 1, remaining - d, cur, out);
        }
        cur[i] = 0;
    }

    pub fn poincare(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree)
            .map(|d| self.monomial_basis(d).len())
            .collect()
    }

    /// Highest degree carrying a nonzero monomial.
    pub fn top_degree(&self) -> u32 {
        self.gens.iter().map(|g| (g.bound() - 1) * g.degree).sum()
    }

    /// Number of normal-form monomials, i.e. the product of the bounds.
    pub fn total_dimension(&self) -> usize {
        self.gens.iter().map(|g| g.bound() as usize).product()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (g, &e) in self.gens.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => parts.push(g.symbol.to_string()),
                _ => parts.push(format!("{}^{e}", g.symbol)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, e: &Element) -> String {
        format_terms(
            e.terms()
                .map(|(m, c)| (self.format_monomial(m), c))
                .collect(),
        )
    }
}

/// Joins `(monomial text, coefficient)` pairs into `a + 2*b - c` form.
///
/// Terms arrive in ascending key order and are printed in descending order.
pub(crate) fn format_terms(terms: Vec<(String, i64)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (mono, c)) in terms.into_iter().rev().enumerate() {
        let (neg, a) = if c < 0 { (true, -c) } else { (false, c) };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono == "1" {
            out.push_str(&a.to_string());
        } else if a == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2_mod2() -> Algebra {
        let x6 = GeneratorSpec {
            symbol: Symbol::X(6),
            degree: 6,
            rule: Rule::Truncated(2),
            torsion_order: TorsionOrder::Finite(2),
        };
        let target = Element::from_monomial(Field::Prime(2), Monomial(vec![1, 0, 0]), 1);
        let z3 = GeneratorSpec {
            symbol: Symbol::Zeta(3),
            degree: 3,
            rule: Rule::SquareTo(target),
            torsion_order: TorsionOrder::Finite(2),
        };
        let z5 = GeneratorSpec {
            symbol: Symbol::Zeta(5),
            degree: 5,
            rule: Rule::Exterior,
            torsion_order: TorsionOrder::Finite(2),
        };
        Algebra::new(Group::G2, Field::Prime(2), vec![x6, z3, z5]).unwrap()
    }

    #[test]
    fn square_rewrites_and_truncates() {
        let a = g2_mod2();
        assert_eq!(a.reduce_monomial(&[0, 2, 0]), a.generator(0));
        assert!(a.reduce_monomial(&[2, 0, 0]).is_zero());
        assert!(a.reduce_monomial(&[0, 4, 0]).is_zero());
        assert!(a.reduce_monomial(&[0, 0, 2]).is_zero());
    }

    #[test]
    fn basis_counts() {
        let a = g2_mod2();
        assert_eq!(a.monomial_basis(11), vec![Monomial(vec![1, 0, 1])]);
        assert_eq!(a.monomial_basis(0), vec![Monomial::one(3)]);
        assert_eq!(a.poincare(a.top_degree()).iter().sum::<usize>(), 8);
        assert_eq!(a.total_dimension(), 8);
    }

    #[test]
    fn symbols_round_trip() {
        for s in ["x6", "zeta23", "rho59", "C{4,10}"] {
            assert_eq!(Symbol::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Symbol::parse("C{10, 4}"), Some(Symbol::C(vec![4, 10])));
        assert_eq!(Symbol::parse("x"), None);
        assert_eq!(Symbol::parse("y6"), None);
    }

    #[test]
    fn rejects_out_of_order_generators() {
        let z = GeneratorSpec {
            symbol: Symbol::Zeta(3),
            degree: 3,
            rule: Rule::Exterior,
            torsion_order: TorsionOrder::Infinite,
        };
        let x = GeneratorSpec {
            symbol: Symbol::X(6),
            degree: 6,
            rule: Rule::Truncated(2),
            torsion_order: TorsionOrder::Infinite,
        };
        assert!(Algebra::new(Group::G2, Field::Rational, vec![z, x]).is_err());
    }

    #[test]
    fn formatting() {
        let a = g2_mod2();
        let e = a
            .generator(0)
            .plus(&a.multiply(&a.generator(0), &a.generator(2)));
        assert_eq!(a.format(&e), "x6*zeta5 + x6");
        assert_eq!(a.format(&a.zero()), "0");
    }
}
