//! Integral cohomology of `G` and `G x G` as shadow tuples.
//!
//! A class is stored as its image in `H*(-;Q)` (the free part, an element of
//! the exterior algebra on the rho-generators) together with its reduction
//! mod every torsion prime of the group. All torsion of `H*(G)` and
//! `H*(G x G)` has prime order and reduces injectively, so the tuple
//! determines the class and products, coproducts and equality can all be
//! computed component-wise.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Algebra, Element, Field, Monomial, Symbol};
use crate::catalog::{entry, CatalogEntry};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hopf::HopfAlgebra;
use crate::notation::{Formula, FormulaTerm, Term, Word};
use crate::presentation::{make_algebra, Model};
use crate::tensor::TensorElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralElement {
    pub free: Element,
    pub shadows: BTreeMap<u32, Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralTensor {
    pub free: TensorElement,
    pub shadows: BTreeMap<u32, TensorElement>,
}

impl IntegralElement {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.shadows.values().all(Element::is_zero)
    }

    pub fn shadow(&self, p: u32) -> Option<&Element> {
        self.shadows.get(&p)
    }

    pub fn scaled(&self, c: i64) -> IntegralElement {
        IntegralElement {
            free: self.free.scaled(c),
            shadows: self
                .shadows
                .iter()
                .map(|(&p, s)| (p, s.scaled(c)))
                .collect(),
        }
    }

    pub fn plus(&self, other: &IntegralElement) -> IntegralElement {
        IntegralElement {
            free: self.free.plus(&other.free),
            shadows: self
                .shadows
                .iter()
                .map(|(&p, s)| (p, s.plus(&other.shadows[&p])))
                .collect(),
        }
    }

    pub fn minus(&self, other: &IntegralElement) -> IntegralElement {
        self.plus(&other.scaled(-1))
    }
}

impl IntegralTensor {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.shadows.values().all(TensorElement::is_zero)
    }

    pub fn shadow(&self, p: u32) -> Option<&TensorElement> {
        self.shadows.get(&p)
    }

    pub fn add_scaled(&mut self, other: &IntegralTensor, c: i64) {
        self.free.add_scaled(&other.free, c);
        for (p, s) in self.shadows.iter_mut() {
            s.add_scaled(&other.shadows[p], c);
        }
    }

    pub fn scaled(&self, c: i64) -> IntegralTensor {
        let mut out = self.clone();
        out.free = self.free.scaled(c);
        for (p, s) in out.shadows.iter_mut() {
            *s = self.shadows[p].scaled(c);
        }
        out
    }

    pub fn plus(&self, other: &IntegralTensor) -> IntegralTensor {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &IntegralTensor) -> IntegralTensor {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }
}

/// How [`IntegralRing::psi`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiMode {
    /// Pull back `psi_p(r_p z)` along the Bockstein lift for every prime; the
    /// free part is zero. Valid for ring generators, whose reduced coproduct
    /// is torsion.
    Generator,
    /// Full `mu(z) - z (x) 1 - 1 (x) z`, including the rational part.
    General,
}

#[derive(Debug)]
pub struct IntegralRing {
    entry: Arc<CatalogEntry>,
    rational: Algebra,
    primes: Vec<HopfAlgebra>,
}

impl IntegralRing {
    pub fn new(entry: Arc<CatalogEntry>) -> Result<IntegralRing> {
        let rational = make_algebra(&entry, Field::Rational, Model::Strict)?;
        let primes = entry
            .torsion_primes()
            .into_iter()
            .map(|p| HopfAlgebra::new(entry.clone(), p, Model::Strict))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegralRing {
            entry,
            rational,
            primes,
        })
    }

    pub fn for_group(group: Group) -> Result<IntegralRing> {
        IntegralRing::new(Arc::new(entry(group)?))
    }

    pub fn entry(&self) -> &CatalogEntry {
        &self.entry
    }

    pub fn group(&self) -> Group {
        self.entry.group
    }

    pub fn rational(&self) -> &Algebra {
        &self.rational
    }

    pub fn primes(&self) -> impl Iterator<Item = &HopfAlgebra> {
        self.primes.iter()
    }

    pub fn hopf(&self, p: u32) -> Result<&HopfAlgebra> {
        self.primes
            .iter()
            .find(|h| h.prime() == p)
            .ok_or(Error::UnknownPair {
                group: self.group(),
                coeff: format!("F{p}"),
            })
    }

    pub fn zero(&self) -> IntegralElement {
        IntegralElement {
            free: self.rational.zero(),
            shadows: self
                .primes
                .iter()
                .map(|h| (h.prime(), h.algebra().zero()))
                .collect(),
        }
    }

    pub fn one(&self) -> IntegralElement {
        IntegralElement {
            free: self.rational.one(),
            shadows: self
                .primes
                .iter()
                .map(|h| (h.prime(), h.algebra().one()))
                .collect(),
        }
    }

    pub fn tensor_zero(&self) -> IntegralTensor {
        IntegralTensor {
            free: self.rational.tensor_zero(),
            shadows: self
                .primes
                .iter()
                .map(|h| (h.prime(), h.algebra().tensor_zero()))
                .collect(),
        }
    }

    /// A ring generator `rho_i`, `C_I`, or a torsion class `x_i`.
    pub fn embed(&self, s: &Symbol) -> Result<IntegralElement> {
        let free = match s {
            Symbol::Rho(_) => self
                .rational
                .generator_by_symbol(s)
                .ok_or_else(|| Error::unknown(s))?,
            Symbol::X(_) | Symbol::C(_) => self.rational.zero(),
            Symbol::Zeta(_) => return Err(Error::unknown(s)),
        };
        let mut shadows = BTreeMap::new();
        for h in &self.primes {
            shadows.insert(h.prime(), h.reduction_image(s)?);
        }
        if matches!(s, Symbol::X(_) | Symbol::C(_)) && self.entry.symbol_degree(s).is_none() {
            return Err(Error::unknown(s));
        }
        Ok(IntegralElement { free, shadows })
    }

    pub fn embed_word(&self, w: &Word) -> Result<IntegralElement> {
        let mut out = self.one();
        for (s, e) in w {
            let g = self.embed(s)?;
            for _ in 0..*e {
                out = self.multiply(&out, &g);
            }
        }
        Ok(out)
    }

    pub fn embed_terms(&self, terms: &[Term]) -> Result<IntegralElement> {
        let mut out = self.zero();
        for t in terms {
            out = out.plus(&self.embed_word(&t.word)?.scaled(t.coeff));
        }
        Ok(out)
    }

    /// Product, computed in every component.
    pub fn multiply(&self, a: &IntegralElement, b: &IntegralElement) -> IntegralElement {
        IntegralElement {
            free: self.rational.multiply(&a.free, &b.free),
            shadows: self
                .primes
                .iter()
                .map(|h| {
                    let p = h.prime();
                    (p, h.algebra().multiply(&a.shadows[&p], &b.shadows[&p]))
                })
                .collect(),
        }
    }

    /// The cross product `a x b` in `H*(G x G)`.
    pub fn cross(&self, a: &IntegralElement, b: &IntegralElement) -> IntegralTensor {
        IntegralTensor {
            free: self.rational.tensor(&a.free, &b.free),
            shadows: self
                .primes
                .iter()
                .map(|h| {
                    let p = h.prime();
                    (p, h.algebra().tensor(&a.shadows[&p], &b.shadows[&p]))
                })
                .collect(),
        }
    }

    /// `delta_p = r_p^{-1} o beta_p`: the torsion class whose mod-p image is `t`.
    pub fn delta_lift(&self, p: u32, t: &TensorElement) -> Result<IntegralTensor> {
        let h = self.hopf(p)?;
        if !t.is_zero() {
            h.bockstein_preimage(t)?;
        }
        let mut out = self.tensor_zero();
        out.shadows.insert(p, t.clone());
        Ok(out)
    }

    /// `delta_p(u)` for a tensor `u` over `F_p`.
    pub fn delta(&self, p: u32, u: &TensorElement) -> Result<IntegralTensor> {
        let h = self.hopf(p)?;
        let mut out = self.tensor_zero();
        out.shadows.insert(p, h.bockstein_tensor(u));
        Ok(out)
    }

    fn rational_coproduct_monomial(&self, m: &Monomial) -> TensorElement {
        let q = &self.rational;
        let mut out = q.tensor(&q.one(), &q.one());
        for (i, &e) in m.0.iter().enumerate() {
            let g = q.generator(i);
            let prim = q.embed_left(&g).plus(&q.embed_right(&g));
            for _ in 0..e {
                out = q.tensor_multiply(&out, &prim);
            }
        }
        out
    }

    /// Reduced coproduct of the free part; the rho-generators are rationally primitive.
    pub fn rational_reduced_coproduct(&self, x: &Element) -> TensorElement {
        let q = &self.rational;
        let mut out = q.tensor_zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.rational_coproduct_monomial(m), c);
        }
        out.minus(&q.embed_left(x)).minus(&q.embed_right(x))
    }

    /// The reduced coproduct `psi(z)`, assembled from the mod-p coproducts.
    pub fn psi(&self, z: &IntegralElement, mode: PsiMode) -> Result<IntegralTensor> {
        let mut out = self.tensor_zero();
        if mode == PsiMode::General {
            out.free = self.rational_reduced_coproduct(&z.free);
        }
        for h in &self.primes {
            let p = h.prime();
            let t = h.reduced_coproduct(&z.shadows[&p])?;
            if mode == PsiMode::Generator {
                out.add_scaled(&self.delta_lift(p, &t)?, 1);
            } else {
                out.shadows.insert(p, t);
            }
        }
        Ok(out)
    }

    pub fn is_primitive(&self, z: &IntegralElement) -> Result<bool> {
        Ok(self.psi(z, PsiMode::General)?.is_zero())
    }

    /// Evaluates an integral formula: cross products of integral words and
    /// `deltaP[...]` blocks over `F_p`.
    pub fn eval_formula(&self, f: &Formula) -> Result<IntegralTensor> {
        let mut out = self.tensor_zero();
        for term in f {
            match term {
                FormulaTerm::Tensor(t) => {
                    let l = self.embed_word(&t.left)?;
                    let r = self.embed_word(&t.right)?;
                    out.add_scaled(&self.cross(&l, &r), t.coeff);
                }
                FormulaTerm::Bock {
                    prime: Some(p),
                    coeff,
                    inner,
                } => {
                    let u = self.hopf(*p)?.eval_tensor_terms(inner)?;
                    out.add_scaled(&self.delta(*p, &u)?, *coeff);
                }
                FormulaTerm::Bock { prime: None, .. } => {
                    return Err(Error::InvalidPresentation(
                        "mod-p beta[...] in an integral formula".into(),
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Component-wise text, e.g. `Q: rho3 | mod 2: zeta3`.
    pub fn format(&self, z: &IntegralElement) -> String {
        let mut out = format!("Q: {}", self.rational.format(&z.free));
        for h in &self.primes {
            let _ = write!(
                out,
                " | mod {}: {}",
                h.prime(),
                h.algebra().format(&z.shadows[&h.prime()])
            );
        }
        out
    }

    pub fn format_tensor(&self, t: &IntegralTensor) -> String {
        let mut out = format!("Q: {}", self.rational.format_tensor(&t.free));
        for h in &self.primes {
            let _ = write!(
                out,
                " | mod {}: {}",
                h.prime(),
                h.algebra().format_tensor(&t.shadows[&h.prime()])
            );
        }
        out
    }

    /// Display form: the free part followed by `delta_p(...)` for each torsion
    /// component, writing each component as the Bockstein of a preimage.
    pub fn display_tensor(&self, t: &IntegralTensor) -> String {
        let mut parts = Vec::new();
        if !t.free.is_zero() {
            parts.push(self.rational.format_tensor(&t.free));
        }
        for h in &self.primes {
            let s = &t.shadows[&h.prime()];
            if s.is_zero() {
                continue;
            }
            match h.bockstein_preimage(s) {
                Ok(u) => parts.push(format!(
                    "delta_{}({})",
                    h.prime(),
                    h.algebra().format_tensor(&u)
                )),
                Err(_) => parts.push(format!(
                    "[mod {}] {}",
                    h.prime(),
                    h.algebra().format_tensor(s)
                )),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_formula, parse_tensor_terms, parse_word};

    fn ring(g: Group) -> IntegralRing {
        IntegralRing::for_group(g).unwrap()
    }

    fn word(r: &IntegralRing, w: &str) -> IntegralElement {
        r.embed_word(&parse_word(w).unwrap()).unwrap()
    }

    fn shadow_tensor(r: &IntegralRing, p: u32, s: &str) -> TensorElement {
        r.hopf(p)
            .unwrap()
            .eval_tensor_terms(&parse_tensor_terms(s).unwrap())
            .unwrap()
    }

    #[test]
    fn embeddings() {
        let g2 = ring(Group::G2);
        let r11 = word(&g2, "rho11");
        assert_eq!(g2.format(&r11), "Q: rho11 | mod 2: x6*zeta5");
        let x6 = word(&g2, "x6");
        assert!(x6.free.is_zero());
        assert_eq!(g2.format(&x6), "Q: 0 | mod 2: x6");
        let e8 = ring(Group::E8);
        let c = word(&e8, "C{4,10}");
        let h3 = e8.hopf(3).unwrap();
        let zeta = h3.element(&parse_word("zeta7*zeta19").unwrap()).unwrap();
        assert_eq!(c.shadows[&3], h3.bockstein(&zeta));
        assert!(c.shadows[&2].is_zero() && c.shadows[&5].is_zero());
        assert!(g2.embed(&Symbol::X(8)).is_err());
        assert!(g2.embed(&Symbol::C(vec![4])).is_err());
    }

    #[test]
    fn relations_emerge() {
        let g2 = ring(Group::G2);
        assert_eq!(
            g2.multiply(&word(&g2, "rho3"), &word(&g2, "rho3")),
            word(&g2, "x6")
        );
        let f4 = ring(Group::F4);
        assert!(f4.multiply(&word(&f4, "x8"), &word(&f4, "rho23")).is_zero());
    }

    #[test]
    fn lifts() {
        let g2 = ring(Group::G2);
        let t = shadow_tensor(&g2, 2, "x6 (x) zeta5 + zeta5 (x) x6");
        let lifted = g2.delta_lift(2, &t).unwrap();
        let stated = g2
            .eval_formula(&parse_formula("delta2[zeta5 (x) zeta5]").unwrap())
            .unwrap();
        assert_eq!(lifted, stated);
        assert!(g2
            .delta_lift(2, &g2.hopf(2).unwrap().algebra().tensor_zero())
            .unwrap()
            .is_zero());
        let f4 = ring(Group::F4);
        let t = shadow_tensor(&f4, 3, "x8 (x) zeta3");
        let stated = f4
            .eval_formula(&parse_formula("x8 (x) rho3").unwrap())
            .unwrap();
        assert_eq!(f4.delta_lift(3, &t).unwrap(), stated);
    }

    #[test]
    fn pull_back_coproducts() {
        let g2 = ring(Group::G2);
        let psi = g2.psi(&word(&g2, "rho11"), PsiMode::Generator).unwrap();
        assert_eq!(
            psi,
            g2.eval_formula(&parse_formula("delta2[zeta5 (x) zeta5]").unwrap())
                .unwrap()
        );
        assert_eq!(g2.display_tensor(&psi), "delta_2(zeta5 (x) zeta5)");
        assert!(g2
            .psi(&word(&g2, "rho3"), PsiMode::Generator)
            .unwrap()
            .is_zero());
        let f4 = ring(Group::F4);
        let psi = f4.psi(&word(&f4, "rho11"), PsiMode::Generator).unwrap();
        let stated = parse_formula("delta2[zeta5 (x) zeta5] + x8 (x) rho3").unwrap();
        assert_eq!(psi, f4.eval_formula(&stated).unwrap());
    }

    #[test]
    fn primitives() {
        let e8 = ring(Group::E8);
        assert!(e8.is_primitive(&word(&e8, "x12")).unwrap());
        assert!(!e8.is_primitive(&word(&e8, "rho15")).unwrap());
        let g2 = ring(Group::G2);
        assert!(g2.is_primitive(&word(&g2, "x6")).unwrap());
        // a product of primitives of positive degree is not primitive rationally
        assert!(!g2.is_primitive(&word(&g2, "rho3*rho11")).unwrap());
    }
}
