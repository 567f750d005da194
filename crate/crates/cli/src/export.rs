//! JSON export of a catalog entry.
//!
//! The document carries expanded term lists for machine consumption plus the
//! stored entry itself, so that an export can be reloaded losslessly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use nearhopf::catalog::{CatalogEntry, CATALOG_VERSION};
use nearhopf::notation::{format_formula, format_terms};
use nearhopf::{Algebra, Element, Group, IntegralRing, Rule, TensorElement};

pub const SCHEMA: &str = "nearhopf-catalog/1";

#[derive(Debug, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub catalog_version: String,
    pub group: Group,
    pub primes: Vec<u32>,
    pub algebras: Vec<AlgebraDoc>,
    pub integral: IntegralDoc,
    pub entry: CatalogEntry,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
    pub rule: String,
    pub bound: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square: Option<Vec<TermDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: i64,
    pub monomial: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TensorTermDoc {
    pub coeff: i64,
    pub monomial_left: String,
    pub monomial_right: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PsiDoc {
    pub generator: String,
    pub terms: Vec<TensorTermDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BocksteinDoc {
    pub generator: String,
    pub image: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub prime: u32,
    pub generators: Vec<GeneratorDoc>,
    pub psi: Vec<PsiDoc>,
    pub bockstein: Vec<BocksteinDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FreeGeneratorDoc {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RelationDoc {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IntegralPsiDoc {
    pub generator: String,
    pub display: String,
    /// Expanded torsion components, one list per prime.
    pub shadows: Vec<(u32, Vec<TensorTermDoc>)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IntegralDoc {
    pub free_generators: Vec<FreeGeneratorDoc>,
    pub relations: Vec<RelationDoc>,
    pub psi_formulas: Vec<IntegralPsiDoc>,
    pub primitives: Vec<String>,
}

fn terms(alg: &Algebra, x: &Element) -> Vec<TermDoc> {
    x.terms()
        .map(|(m, c)| TermDoc {
            coeff: c,
            monomial: alg.format_monomial(m),
        })
        .collect()
}

fn tensor_terms(alg: &Algebra, t: &TensorElement) -> Vec<TensorTermDoc> {
    t.terms()
        .map(|(k, c)| TensorTermDoc {
            coeff: c,
            monomial_left: alg.format_monomial(&k[0]),
            monomial_right: alg.format_monomial(&k[1]),
        })
        .collect()
}

pub fn build(entry: CatalogEntry) -> nearhopf::Result<Document> {
    let ring = IntegralRing::new(Arc::new(entry.clone()))?;
    let mut algebras = Vec::new();
    for h in ring.primes() {
        let alg = h.algebra();
        let mut generators = Vec::new();
        let mut psi = Vec::new();
        let mut bockstein = Vec::new();
        for (i, g) in alg.generators().iter().enumerate() {
            let (rule, square) = match &g.rule {
                Rule::Exterior => ("exterior", None),
                Rule::Truncated(_) => ("truncated", None),
                Rule::SquareTo(t) => ("square", Some(terms(alg, t))),
            };
            generators.push(GeneratorDoc {
                name: g.symbol.to_string(),
                degree: g.degree,
                rule: rule.into(),
                bound: g.bound(),
                square,
            });
            let display = match g.symbol {
                nearhopf::Symbol::Zeta(z) => h.stored_psi(z).map(format_formula),
                _ => None,
            };
            psi.push(PsiDoc {
                generator: g.symbol.to_string(),
                terms: tensor_terms(alg, h.generator_psi(i)),
                display,
            });
            bockstein.push(BocksteinDoc {
                generator: g.symbol.to_string(),
                image: terms(alg, h.bockstein_generator(i)),
            });
        }
        algebras.push(AlgebraDoc {
            prime: h.prime(),
            generators,
            psi,
            bockstein,
        });
    }
    let q = ring.rational();
    let free_generators = q
        .generators()
        .iter()
        .map(|g| FreeGeneratorDoc {
            name: g.symbol.to_string(),
            degree: g.degree,
        })
        .collect();
    let relations = entry
        .relations
        .iter()
        .map(|r| RelationDoc {
            id: r.id.clone(),
            lhs: format_terms(&r.lhs),
            rhs: format_terms(&r.rhs),
        })
        .collect();
    let mut psi_formulas = Vec::new();
    for f in &entry.psi_formulas {
        let t = ring.eval_formula(&f.formula)?;
        let shadows = ring
            .primes()
            .map(|h| (h.prime(), tensor_terms(h.algebra(), &t.shadows[&h.prime()])))
            .collect();
        psi_formulas.push(IntegralPsiDoc {
            generator: format!("rho{}", f.rho),
            display: format_formula(&f.formula),
            shadows,
        });
    }
    Ok(Document {
        schema: SCHEMA.into(),
        catalog_version: CATALOG_VERSION.into(),
        group: entry.group,
        primes: entry.torsion_primes(),
        algebras,
        integral: IntegralDoc {
            free_generators,
            relations,
            psi_formulas,
            primitives: entry.primitives.iter().map(ToString::to_string).collect(),
        },
        entry,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema '{0}'")]
    Schema(String),
    #[error(transparent)]
    Catalog(#[from] nearhopf::Error),
}

/// Reloads the stored entry of an exported document and validates it.
pub fn load(text: &str) -> Result<CatalogEntry, LoadError> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.schema != SCHEMA {
        return Err(LoadError::Schema(doc.schema));
    }
    doc.entry.validate()?;
    Ok(doc.entry)
}
