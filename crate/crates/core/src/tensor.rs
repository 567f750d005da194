//! Tensor squares and cubes of an [`Algebra`] with Koszul-signed products.

use std::collections::BTreeMap;

use crate::algebra::{format_terms, Algebra, Element, Field, Monomial};

/// Sparse sum over tuples (pairs or triples) of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    field: Field,
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, i64>,
}

impl TensorElement {
    pub fn zero(field: Field, arity: usize) -> TensorElement {
        assert!(arity == 2 || arity == 3, "tensor arity must be 2 or 3");
        TensorElement {
            field,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], i64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn coefficient(&self, key: &[Monomial]) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, c: i64) {
        debug_assert_eq!(key.len(), self.arity);
        let c = self.field.normalize(c);
        if c == 0 {
            return;
        }
        let s = self
            .field
            .add(self.terms.get(&key).copied().unwrap_or(0), c);
        if s == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: i64) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        for (k, d) in other.terms() {
            self.add_term(k.to_vec(), self.field.mul(c, d));
        }
    }

    pub fn scaled(&self, c: i64) -> TensorElement {
        let mut out = TensorElement::zero(self.field, self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    pub fn neg(&self) -> TensorElement {
        self.scaled(-1)
    }
}

fn parity_sign(parity: u32) -> i64 {
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Algebra {
    pub fn tensor_zero(&self) -> TensorElement {
        TensorElement::zero(self.field(), 2)
    }

    /// `a (x) b`.
    pub fn tensor(&self, a: &Element, b: &Element) -> TensorElement {
        let mut out = self.tensor_zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term(vec![ma.clone(), mb.clone()], self.field().mul(ca, cb));
            }
        }
        out
    }

    pub fn tensor3(&self, a: &Element, b: &Element, c: &Element) -> TensorElement {
        let mut out = TensorElement::zero(self.field(), 3);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                for (mc, cc) in c.terms() {
                    let k = self.field().mul(self.field().mul(ca, cb), cc);
                    out.add_term(vec![ma.clone(), mb.clone(), mc.clone()], k);
                }
            }
        }
        out
    }

    pub fn embed_left(&self, a: &Element) -> TensorElement {
        self.tensor(a, &self.one())
    }

    pub fn embed_right(&self, a: &Element) -> TensorElement {
        self.tensor(&self.one(), a)
    }

    pub fn tensor_degree(&self, key: &[Monomial]) -> u32 {
        key.iter().map(|m| self.monomial_degree(m)).sum()
    }

    /// Common total degree of a nonzero homogeneous tensor.
    pub fn tensor_total_degree(&self, u: &TensorElement) -> Option<u32> {
        let mut degs = u.terms().map(|(k, _)| self.tensor_degree(k));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Componentwise product with the sign `(a(x)b)(c(x)d) = (-1)^{|b||c|} ac(x)bd`.
    pub fn tensor_multiply(&self, u: &TensorElement, v: &TensorElement) -> TensorElement {
        assert_eq!(u.arity(), v.arity(), "tensor arity mismatch");
        let n = u.arity();
        let mut out = TensorElement::zero(self.field(), n);
        for (ku, cu) in u.terms() {
            let du: Vec<u32> = ku.iter().map(|m| self.monomial_degree(m)).collect();
            for (kv, cv) in v.terms() {
                let mut parity = 0;
                for j in 0..n {
                    let dv = self.monomial_degree(&kv[j]);
                    let later: u32 = du[j + 1..].iter().sum();
                    parity += dv * later;
                }
                let mut c = self.field().mul(cu, cv);
                c = self.field().mul(c, parity_sign(parity));
                let parts: Vec<Element> = (0..n)
                    .map(|j| self.multiply_monomials(&ku[j], &kv[j]))
                    .collect();
                if parts.iter().any(Element::is_zero) {
                    continue;
                }
                let prod = if n == 2 {
                    self.tensor(&parts[0], &parts[1])
                } else {
                    self.tensor3(&parts[0], &parts[1], &parts[2])
                };
                out.add_scaled(&prod, c);
            }
        }
        out
    }

    /// Leibniz extension `d(a(x)b) = d(a)(x)b + (-1)^{|a|} a(x)d(b)` of a
    /// degree +1 derivation given on monomials.
    pub fn apply_componentwise_derivation<F>(&self, d: F, u: &TensorElement) -> TensorElement
    where
        F: Fn(&Monomial) -> Element,
    {
        let n = u.arity();
        let mut out = TensorElement::zero(self.field(), n);
        for (k, c) in u.terms() {
            let mut before = 0;
            for j in 0..n {
                let dj = d(&k[j]);
                let sign = parity_sign(before);
                for (m, e) in dj.terms() {
                    let mut key = k.to_vec();
                    key[j] = m.clone();
                    out.add_term(key, self.field().mul(self.field().mul(c, e), sign));
                }
                before += self.monomial_degree(&k[j]);
            }
        }
        out
    }

    pub fn format_tensor(&self, u: &TensorElement) -> String {
        format_terms(
            u.terms()
                .map(|(k, c)| {
                    let legs: Vec<String> = k.iter().map(|m| self.format_monomial(m)).collect();
                    (legs.join(" (x) "), c)
                })
                .collect(),
        )
    }
}
