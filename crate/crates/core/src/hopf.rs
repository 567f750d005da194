//! The mod-p Hopf structure: Bockstein, coproduct and reduced coproduct.
//!
//! The coproduct table stores the reduced coproduct of every zeta-generator
//! as written in the catalog, with `beta[...]` blocks expanded through the
//! tensor Bockstein. Coproducts of x-generators are derived: an x-generator
//! hit by the Bockstein gets `mu(x) = s * beta(mu(zeta))`, any other one
//! must be the square of a zeta-generator.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{Algebra, Element, Field, Monomial, Rule, Symbol};
use crate::catalog::{c_degree, CatalogEntry};
use crate::error::{Error, Result};
use crate::lift::Contraction;
use crate::notation::{Formula, FormulaTerm, TensorTerm, Word};
use crate::presentation::{make_algebra, terms_element, word_element, Model};
use crate::tensor::TensorElement;

/// A Bockstein class `C_I` as seen from `H*(G;F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiClass {
    pub set: Vec<u32>,
    pub prime: u32,
    pub degree: u32,
    /// `zeta_I`, the ordered product of `zeta_{2s-1}`, `s` in `I`.
    pub zeta: Element,
    /// `r_p(C_I) = beta_p(zeta_I)`.
    pub image: Element,
}

#[derive(Debug)]
pub struct HopfAlgebra {
    entry: Arc<CatalogEntry>,
    alg: Algebra,
    prime: u32,
    sign: i64,
    exterior_model: bool,
    beta_gen: Vec<Element>,
    psi_gen: Vec<TensorElement>,
    cop_gen: Vec<TensorElement>,
    cop_cache: RwLock<HashMap<Monomial, TensorElement>>,
    pub(crate) contraction: Contraction,
}

fn corrupt(entry: &CatalogEntry, reason: String) -> Error {
    Error::CorruptData {
        group: entry.group,
        reason,
    }
}

impl HopfAlgebra {
    pub fn new(entry: Arc<CatalogEntry>, prime: u32, model: Model) -> Result<HopfAlgebra> {
        let field = Field::Prime(prime);
        let alg = make_algebra(&entry, field, model)?;
        let exterior_model = entry.mod_p(prime).is_none();
        let sign = entry.bockstein_sign;
        let n = alg.ngens();

        let mut beta_gen = vec![alg.zero(); n];
        if !exterior_model {
            let e = entry.e(prime).unwrap_or(&[]);
            for &s in e {
                let z = alg.index_of(&Symbol::Zeta(2 * s - 1)).ok_or_else(|| {
                    corrupt(&entry, format!("zeta{} missing mod {prime}", 2 * s - 1))
                })?;
                let x = alg
                    .generator_by_symbol(&Symbol::X(2 * s))
                    .ok_or_else(|| corrupt(&entry, format!("x{} missing mod {prime}", 2 * s)))?;
                beta_gen[z] = x.scaled(sign);
            }
        }

        let mut hopf = HopfAlgebra {
            contraction: Contraction::new(alg.top_degree()),
            entry: entry.clone(),
            alg,
            prime,
            sign,
            exterior_model,
            beta_gen,
            psi_gen: Vec::new(),
            cop_gen: Vec::new(),
            cop_cache: RwLock::new(HashMap::new()),
        };

        let alg = &hopf.alg;
        let mut psi_gen: Vec<Option<TensorElement>> = vec![None; n];
        let mut cop_gen: Vec<Option<TensorElement>> = vec![None; n];
        for (i, g) in alg.generators().iter().enumerate() {
            if let Symbol::Zeta(z) = g.symbol {
                let psi = if exterior_model {
                    alg.tensor_zero()
                } else {
                    let data = entry.mod_p(prime).expect("checked above");
                    let stored =
                        data.psi.iter().find(|p| p.zeta == z).ok_or_else(|| {
                            corrupt(&entry, format!("no psi_{prime}(zeta{z}) entry"))
                        })?;
                    hopf.eval_formula(&stored.formula)?
                };
                let gi = alg.generator(i);
                let mut cop = alg.embed_left(&gi).plus(&alg.embed_right(&gi));
                cop.add_scaled(&psi, 1);
                psi_gen[i] = Some(psi);
                cop_gen[i] = Some(cop);
            }
        }
        for (i, g) in alg.generators().iter().enumerate() {
            if let Symbol::X(x) = g.symbol {
                let gi = alg.generator(i);
                let source = (x % 2 == 0)
                    .then(|| alg.index_of(&Symbol::Zeta(x - 1)))
                    .flatten()
                    .filter(|&z| hopf.beta_gen[z] == gi.scaled(sign));
                let cop = if let Some(z) = source {
                    let mu = cop_gen[z].as_ref().expect("zeta coproducts computed first");
                    hopf.bockstein_tensor(mu).scaled(sign)
                } else {
                    let root = alg.generators().iter().position(|h| match &h.rule {
                        Rule::SquareTo(t) => *t == gi,
                        _ => false,
                    });
                    let root = root.ok_or_else(|| {
                        corrupt(
                            &entry,
                            format!("x{x} is neither a Bockstein image nor a square mod {prime}"),
                        )
                    })?;
                    let mu = cop_gen[root]
                        .as_ref()
                        .expect("zeta coproducts computed first");
                    alg.tensor_multiply(mu, mu)
                };
                let psi = cop.minus(&alg.embed_left(&gi)).minus(&alg.embed_right(&gi));
                psi_gen[i] = Some(psi);
                cop_gen[i] = Some(cop);
            }
        }
        hopf.psi_gen = psi_gen
            .into_iter()
            .map(|p| p.expect("every generator covered"))
            .collect();
        hopf.cop_gen = cop_gen
            .into_iter()
            .map(|p| p.expect("every generator covered"))
            .collect();
        Ok(hopf)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn entry(&self) -> &CatalogEntry {
        &self.entry
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    /// Sign `s` of `beta(zeta_{2t-1}) = s * x_{2t}`.
    pub fn bockstein_sign(&self) -> i64 {
        self.sign
    }

    pub fn is_exterior_model(&self) -> bool {
        self.exterior_model
    }

    pub fn bockstein_generator(&self, i: usize) -> &Element {
        &self.beta_gen[i]
    }

    /// Reduced coproduct of the i-th generator.
    pub fn generator_psi(&self, i: usize) -> &TensorElement {
        &self.psi_gen[i]
    }

    pub fn generator_coproduct(&self, i: usize) -> &TensorElement {
        &self.cop_gen[i]
    }

    pub fn stored_psi(&self, zeta: u32) -> Option<&Formula> {
        self.entry
            .mod_p(self.prime)?
            .psi
            .iter()
            .find(|p| p.zeta == zeta)
            .map(|p| &p.formula)
    }

    pub fn element(&self, word: &Word) -> Result<Element> {
        word_element(&self.alg, word)
    }

    pub fn symbol(&self, s: &Symbol) -> Result<Element> {
        self.alg
            .generator_by_symbol(s)
            .ok_or_else(|| Error::unknown(s))
    }

    pub fn bockstein_monomial(&self, m: &Monomial) -> Element {
        let alg = &self.alg;
        let mut out = alg.zero();
        let mut prefix = Monomial::one(alg.ngens());
        let mut prefix_degree = 0;
        for i in 0..alg.ngens() {
            let e = m.0[i];
            if e > 0 && !self.beta_gen[i].is_zero() {
                debug_assert_eq!(
                    e, 1,
                    "Bockstein source generators are exterior or squared away"
                );
                let mut suffix = m.clone();
                for s in suffix.0.iter_mut().take(i + 1) {
                    *s = 0;
                }
                let head = Element::from_monomial(alg.field(), prefix.clone(), 1);
                let tail = Element::from_monomial(alg.field(), suffix, 1);
                let term = alg.multiply(&alg.multiply(&head, &self.beta_gen[i]), &tail);
                out.add_scaled(&term, if prefix_degree % 2 == 0 { 1 } else { -1 });
            }
            prefix.0[i] = e;
            prefix_degree += e as u32 * alg.generators()[i].degree;
        }
        out
    }

    /// The Bockstein, extended to all of `H*(G;F_p)` as a signed derivation.
    pub fn bockstein(&self, x: &Element) -> Element {
        let mut out = self.alg.zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.bockstein_monomial(m), c);
        }
        out
    }

    /// Leibniz extension of the Bockstein to tensors.
    pub fn bockstein_tensor(&self, u: &TensorElement) -> TensorElement {
        self.alg
            .apply_componentwise_derivation(|m| self.bockstein_monomial(m), u)
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> TensorElement {
        if m.is_one() {
            return self.alg.tensor(&self.alg.one(), &self.alg.one());
        }
        if let Some(hit) = self.cop_cache.read().expect("cache lock").get(m) {
            return hit.clone();
        }
        let last = m.0.iter().rposition(|&e| e > 0).expect("non-unit monomial");
        let mut rest = m.clone();
        rest.0[last] -= 1;
        let value = self
            .alg
            .tensor_multiply(&self.coproduct_monomial(&rest), &self.cop_gen[last]);
        self.cop_cache
            .write()
            .expect("cache lock")
            .insert(m.clone(), value.clone());
        value
    }

    /// `mu_p^*`, the ring map extending the generator table.
    pub fn coproduct(&self, x: &Element) -> TensorElement {
        let mut out = self.alg.tensor_zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.coproduct_monomial(m), c);
        }
        out
    }

    /// `psi(x) = mu(x) - x (x) 1 - 1 (x) x` for homogeneous `x` of positive degree.
    pub fn reduced_coproduct(&self, x: &Element) -> Result<TensorElement> {
        if x.is_zero() {
            return Ok(self.alg.tensor_zero());
        }
        match self.alg.degree(x) {
            None => Err(Error::NonHomogeneous),
            Some(0) => Err(Error::DegreeZero),
            Some(_) => Ok(self
                .coproduct(x)
                .minus(&self.alg.embed_left(x))
                .minus(&self.alg.embed_right(x))),
        }
    }

    pub fn is_primitive(&self, x: &Element) -> Result<bool> {
        Ok(self.reduced_coproduct(x)?.is_zero())
    }

    /// The augmentation: the coefficient of the unit.
    pub fn counit(&self, x: &Element) -> i64 {
        x.coefficient(&Monomial::one(self.alg.ngens()))
    }

    /// `(eps (x) id)(u)`.
    pub fn counit_left(&self, u: &TensorElement) -> Element {
        let mut out = self.alg.zero();
        for (k, c) in u.terms() {
            if k[0].is_one() {
                out.add_term(k[1].clone(), c);
            }
        }
        out
    }

    /// `(id (x) eps)(u)`.
    pub fn counit_right(&self, u: &TensorElement) -> Element {
        let mut out = self.alg.zero();
        for (k, c) in u.terms() {
            if k[1].is_one() {
                out.add_term(k[0].clone(), c);
            }
        }
        out
    }

    /// `(mu (x) id)(u)`, as a triple tensor.
    pub fn coproduct_on_left(&self, u: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.field(), 3);
        for (k, c) in u.terms() {
            for (l, d) in self.coproduct_monomial(&k[0]).terms() {
                out.add_term(
                    vec![l[0].clone(), l[1].clone(), k[1].clone()],
                    self.field().mul(c, d),
                );
            }
        }
        out
    }

    /// `(id (x) mu)(u)`, as a triple tensor.
    pub fn coproduct_on_right(&self, u: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.field(), 3);
        for (k, c) in u.terms() {
            for (r, d) in self.coproduct_monomial(&k[1]).terms() {
                out.add_term(
                    vec![k[0].clone(), r[0].clone(), r[1].clone()],
                    self.field().mul(c, d),
                );
            }
        }
        out
    }

    pub fn eval_tensor_terms(&self, terms: &[TensorTerm]) -> Result<TensorElement> {
        let mut out = self.alg.tensor_zero();
        for t in terms {
            let l = self.element(&t.left)?;
            let r = self.element(&t.right)?;
            out.add_scaled(&self.alg.tensor(&l, &r), t.coeff);
        }
        Ok(out)
    }

    /// Expands a mod-p formula; `beta[...]` blocks become tensor Bocksteins.
    pub fn eval_formula(&self, f: &Formula) -> Result<TensorElement> {
        let mut out = self.alg.tensor_zero();
        for term in f {
            match term {
                FormulaTerm::Tensor(t) => {
                    out.add_scaled(&self.eval_tensor_terms(std::slice::from_ref(t))?, 1)
                }
                FormulaTerm::Bock {
                    prime: None,
                    coeff,
                    inner,
                } => {
                    let u = self.eval_tensor_terms(inner)?;
                    out.add_scaled(&self.bockstein_tensor(&u), *coeff);
                }
                FormulaTerm::Bock { prime: Some(p), .. } => {
                    return Err(Error::InvalidPresentation(format!(
                        "integral delta{p}[...] inside a mod {} formula",
                        self.prime
                    )))
                }
            }
        }
        Ok(out)
    }

    /// `C_I` for a non-empty `I` contained in `e(G,p)`.
    pub fn class_ci(&self, set: &[u32]) -> Result<CiClass> {
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        let e = self.entry.e(self.prime).unwrap_or(&[]);
        if set.is_empty() || self.exterior_model || !set.iter().all(|s| e.contains(s)) {
            return Err(Error::NotInE {
                group: self.entry.group,
                prime: self.prime,
                set,
            });
        }
        let word: Word = set.iter().map(|s| (Symbol::Zeta(2 * s - 1), 1)).collect();
        let zeta = self.element(&word)?;
        let image = self.bockstein(&zeta);
        Ok(CiClass {
            degree: c_degree(&set),
            set,
            prime: self.prime,
            zeta,
            image,
        })
    }

    /// `r_p` of an integral generator: a rho-generator, an x-class or a `C_I`.
    pub fn reduction_image(&self, s: &Symbol) -> Result<Element> {
        match s {
            Symbol::Rho(_) if self.exterior_model => Err(Error::unknown(s)),
            Symbol::Rho(i) => {
                let row = self
                    .entry
                    .reduction(*i, self.prime)
                    .ok_or_else(|| Error::unknown(s))?;
                terms_element(&self.alg, &row.image)
            }
            Symbol::X(i) => match self.entry.x_class(*i) {
                Some(x) if x.prime == self.prime => self.symbol(s),
                Some(_) => Ok(self.alg.zero()),
                None => Err(Error::unknown(s)),
            },
            Symbol::C(set) => match self.entry.prime_of_index_set(set) {
                Some(p) if p == self.prime => Ok(self.class_ci(set)?.image),
                Some(_) => Ok(self.alg.zero()),
                None => Err(Error::unknown(s)),
            },
            Symbol::Zeta(_) => Err(Error::unknown(s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::group::Group;
    use crate::notation::{parse_tensor_terms, parse_word};

    fn hopf(g: Group, p: u32) -> HopfAlgebra {
        HopfAlgebra::new(Arc::new(entry(g).unwrap()), p, Model::Strict).unwrap()
    }

    fn el(h: &HopfAlgebra, w: &str) -> Element {
        h.element(&parse_word(w).unwrap()).unwrap()
    }

    fn ten(h: &HopfAlgebra, s: &str) -> TensorElement {
        h.eval_tensor_terms(&parse_tensor_terms(s).unwrap())
            .unwrap()
    }

    #[test]
    fn bockstein_values() {
        let f4 = hopf(Group::F4, 3);
        assert_eq!(f4.bockstein(&el(&f4, "zeta7")), el(&f4, "x8").scaled(2));
        let g2 = hopf(Group::G2, 2);
        assert!(g2.bockstein(&el(&g2, "zeta3")).is_zero());
        let e7 = hopf(Group::E7, 2);
        let got = e7.bockstein(&el(&e7, "zeta5*zeta9"));
        assert_eq!(got, el(&e7, "x6*zeta9").plus(&el(&e7, "x10*zeta5")));
    }

    #[test]
    fn tensor_bockstein_leibniz_signs() {
        let e7 = hopf(Group::E7, 2);
        let got = e7.bockstein_tensor(&ten(&e7, "zeta9 (x) zeta5"));
        assert_eq!(got, ten(&e7, "x10 (x) zeta5 + zeta9 (x) x6"));
        let e8 = hopf(Group::E8, 5);
        let got = e8.bockstein_tensor(&ten(&e8, "zeta11 (x) zeta11"));
        assert_eq!(got, ten(&e8, "-x12 (x) zeta11 + zeta11 (x) x12"));
        assert!(e8.bockstein_tensor(&ten(&e8, "1 (x) 1")).is_zero());
    }

    #[test]
    fn coproducts_of_low_classes() {
        let g2 = hopf(Group::G2, 2);
        assert_eq!(
            g2.coproduct(&el(&g2, "zeta3")),
            ten(&g2, "zeta3 (x) 1 + 1 (x) zeta3")
        );
        assert_eq!(
            g2.coproduct(&el(&g2, "x6")),
            ten(&g2, "x6 (x) 1 + 1 (x) x6")
        );
        assert_eq!(g2.coproduct(&g2.algebra().one()), ten(&g2, "1 (x) 1"));
    }

    #[test]
    fn reduced_coproducts() {
        let e7 = hopf(Group::E7, 2);
        let got = e7.reduced_coproduct(&el(&e7, "zeta15")).unwrap();
        assert_eq!(got, ten(&e7, "x10 (x) zeta5 + zeta9 (x) x6"));
        let e8 = hopf(Group::E8, 5);
        let got = e8.reduced_coproduct(&el(&e8, "zeta23")).unwrap();
        assert_eq!(got, ten(&e8, "3*x12 (x) zeta11 + 2*zeta11 (x) x12"));
        let e8 = hopf(Group::E8, 2);
        let got = e8.reduced_coproduct(&el(&e8, "zeta29")).unwrap();
        assert_eq!(
            got,
            ten(&e8, "x10^2 (x) zeta9 + zeta17 (x) x6^2 + x6^4 (x) zeta5")
        );
        let mixed = el(&e8, "zeta3").plus(&el(&e8, "zeta5"));
        assert_eq!(e8.reduced_coproduct(&mixed), Err(Error::NonHomogeneous));
    }

    #[test]
    fn primitivity() {
        let g2 = hopf(Group::G2, 2);
        assert!(g2.is_primitive(&el(&g2, "zeta3")).unwrap());
        let f4 = hopf(Group::F4, 3);
        assert!(!f4.is_primitive(&el(&f4, "zeta11")).unwrap());
        let e8 = hopf(Group::E8, 5);
        assert!(e8.is_primitive(&el(&e8, "x12")).unwrap());
        let ext =
            HopfAlgebra::new(Arc::new(entry(Group::G2).unwrap()), 3, Model::AllowExterior).unwrap();
        assert!(ext.is_primitive(&el(&ext, "zeta11")).unwrap());
    }

    #[test]
    fn reductions_and_ci() {
        let e8 = hopf(Group::E8, 2);
        assert_eq!(
            e8.reduction_image(&Symbol::Rho(59)).unwrap(),
            el(&e8, "x30*zeta29")
        );
        let f4 = hopf(Group::F4, 2);
        assert!(f4.reduction_image(&Symbol::X(8)).unwrap().is_zero());
        let e7 = hopf(Group::E7, 2);
        let c = e7.class_ci(&[3, 5]).unwrap();
        assert_eq!(c.degree, 15);
        assert_eq!(c.image, el(&e7, "x6*zeta9").plus(&el(&e7, "x10*zeta5")));
        let e8 = hopf(Group::E8, 3);
        assert_eq!(e8.class_ci(&[4, 10]).unwrap().degree, 27);
        let g2 = hopf(Group::G2, 2);
        let c = g2.class_ci(&[3]).unwrap();
        assert_eq!((c.degree, c.image), (6, el(&g2, "x6")));
        assert!(matches!(g2.class_ci(&[2]), Err(Error::NotInE { .. })));
    }
}
