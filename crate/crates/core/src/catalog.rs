//! Tabulated cohomology data of the exceptional Lie groups.
//!
//! Everything the engine knows about a group lives in its [`CatalogEntry`]:
//! invariant degrees, torsion primes with their generalized invariant degrees,
//! the mod-p presentations and coproduct tables, the mod-p reduction of the
//! integral generators, and the stated integral relations, coproduct formulas
//! and primitive classes. Formulas are stored in the compact notation of
//! [`crate::notation`] and validated for degree homogeneity on load.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::Symbol;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::notation::{parse_formula, parse_terms, Formula, FormulaTerm, TensorTerm, Term, Word};

/// Version of the catalog contents; bumped whenever stored data changes.
pub const CATALOG_VERSION: &str = "1.0.0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPrime {
    pub prime: u32,
    /// Degrees of the generalized invariants, `r(G,p)`.
    pub r: Vec<u32>,
    /// The subset `e(G,p)` whose generators carry a nonzero Bockstein.
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialClass {
    pub degree: u32,
    /// Weyl coordinate of the Schubert class, kept as an opaque string.
    pub weyl: String,
}

/// A torsion class `x_i` of the subring generated in filtration zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XClass {
    pub index: u32,
    pub prime: u32,
    /// Smallest vanishing power.
    pub height: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareRule {
    pub zeta: u32,
    pub target: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiEntry {
    pub zeta: u32,
    pub formula: Formula,
}

/// Presentation and reduced coproduct of `H*(G;F_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPData {
    pub prime: u32,
    /// Truncation heights of the x-generators as written in the presentation.
    pub x_heights: Vec<(u32, u32)>,
    pub squares: Vec<SquareRule>,
    /// One entry per zeta-generator; `beta[...]` blocks are kept symbolic.
    pub psi: Vec<PsiEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRow {
    pub rho: u32,
    pub prime: u32,
    pub image: Vec<Term>,
}

/// Additive shape of a stated torsion summand `tau_p(G)`: positive-degree
/// monomials in bounded classes modulo monomial relations, tensored with an
/// exterior (or square-free) module on integral generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPresentation {
    pub prime: u32,
    pub classes: Vec<(Symbol, u32)>,
    pub monomial_relations: Vec<Word>,
    pub square_free: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatedRelation {
    pub id: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatedPsi {
    pub rho: u32,
    pub formula: Formula,
}

/// A statement about a mod-p reduced coproduct made alongside the integral
/// results, e.g. `psi_2(zeta29) = ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModStatement {
    pub prime: u32,
    pub zeta: u32,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub group: Group,
    pub invariant_degrees: Vec<u32>,
    pub torsion: Vec<TorsionPrime>,
    pub special_classes: Vec<SpecialClass>,
    pub x_classes: Vec<XClass>,
    pub mod_p: Vec<ModPData>,
    /// Sign `s` in `beta_p(zeta_{2t-1}) = s * x_{2t}` for `t` in `e(G,p)`.
    pub bockstein_sign: i64,
    pub reductions: Vec<ReductionRow>,
    /// Free generators with a nonzero stated square (`Delta_Z`).
    pub free_square: Vec<u32>,
    /// Free generators generating an exterior algebra (`Lambda_Z`).
    pub free_exterior: Vec<u32>,
    pub torsion_presentations: Vec<TorsionPresentation>,
    pub relations: Vec<StatedRelation>,
    pub psi_formulas: Vec<StatedPsi>,
    pub primitives: Vec<Symbol>,
    pub mod_statements: Vec<ModStatement>,
}

/// Identifier of one stored formula, used for census and report bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaId {
    Reduction { rho: u32, prime: u32 },
    ModPsi { prime: u32, zeta: u32 },
    Square { prime: u32, zeta: u32 },
    Relation(String),
    IntegralPsi { rho: u32 },
    Primitive(Symbol),
    ModStatement { prime: u32, zeta: u32 },
}

/// Location of one stored integer coefficient, for mutation testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSite {
    Reduction {
        row: usize,
        term: usize,
    },
    ModPsi {
        algebra: usize,
        entry: usize,
        term: usize,
        inner: Option<usize>,
    },
    Relation {
        relation: usize,
        rhs: bool,
        term: usize,
    },
    IntegralPsi {
        formula: usize,
        term: usize,
        inner: Option<usize>,
    },
    ModStatement {
        statement: usize,
        term: usize,
        inner: Option<usize>,
    },
}

impl CatalogEntry {
    pub fn rho_generators(&self) -> Vec<u32> {
        self.invariant_degrees.iter().map(|i| 2 * i - 1).collect()
    }

    pub fn torsion_primes(&self) -> Vec<u32> {
        self.torsion.iter().map(|t| t.prime).collect()
    }

    pub fn torsion_prime(&self, p: u32) -> Option<&TorsionPrime> {
        self.torsion.iter().find(|t| t.prime == p)
    }

    pub fn r(&self, p: u32) -> Option<&[u32]> {
        self.torsion_prime(p).map(|t| t.r.as_slice())
    }

    pub fn e(&self, p: u32) -> Option<&[u32]> {
        self.torsion_prime(p).map(|t| t.e.as_slice())
    }

    pub fn mod_p(&self, p: u32) -> Option<&ModPData> {
        self.mod_p.iter().find(|m| m.prime == p)
    }

    pub fn x_class(&self, index: u32) -> Option<&XClass> {
        self.x_classes.iter().find(|x| x.index == index)
    }

    pub fn reduction(&self, rho: u32, prime: u32) -> Option<&ReductionRow> {
        self.reductions
            .iter()
            .find(|r| r.rho == rho && r.prime == prime)
    }

    /// The prime `p` with `set ⊆ e(G,p)`, if any.
    pub fn prime_of_index_set(&self, set: &[u32]) -> Option<u32> {
        if set.is_empty() {
            return None;
        }
        self.torsion
            .iter()
            .find(|t| set.iter().all(|s| t.e.contains(s)))
            .map(|t| t.prime)
    }

    /// Every stored formula of the entry.
    pub fn formula_census(&self) -> BTreeSet<FormulaId> {
        let mut out = BTreeSet::new();
        for r in &self.reductions {
            out.insert(FormulaId::Reduction {
                rho: r.rho,
                prime: r.prime,
            });
        }
        for m in &self.mod_p {
            for e in &m.psi {
                out.insert(FormulaId::ModPsi {
                    prime: m.prime,
                    zeta: e.zeta,
                });
            }
            for s in &m.squares {
                out.insert(FormulaId::Square {
                    prime: m.prime,
                    zeta: s.zeta,
                });
            }
        }
        for r in &self.relations {
            out.insert(FormulaId::Relation(r.id.clone()));
        }
        for f in &self.psi_formulas {
            out.insert(FormulaId::IntegralPsi { rho: f.rho });
        }
        for s in &self.primitives {
            out.insert(FormulaId::Primitive(s.clone()));
        }
        for s in &self.mod_statements {
            out.insert(FormulaId::ModStatement {
                prime: s.prime,
                zeta: s.zeta,
            });
        }
        out
    }

    pub fn coefficient_sites(&self) -> Vec<CoefficientSite> {
        fn formula_sites(f: &Formula, mut push: impl FnMut(usize, Option<usize>)) {
            for (t, term) in f.iter().enumerate() {
                match term {
                    FormulaTerm::Tensor(_) => push(t, None),
                    FormulaTerm::Bock { inner, .. } => {
                        push(t, None);
                        for i in 0..inner.len() {
                            push(t, Some(i));
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (row, r) in self.reductions.iter().enumerate() {
            for term in 0..r.image.len() {
                out.push(CoefficientSite::Reduction { row, term });
            }
        }
        for (algebra, m) in self.mod_p.iter().enumerate() {
            for (entry, e) in m.psi.iter().enumerate() {
                formula_sites(&e.formula, |term, inner| {
                    out.push(CoefficientSite::ModPsi {
                        algebra,
                        entry,
                        term,
                        inner,
                    })
                });
            }
        }
        for (relation, r) in self.relations.iter().enumerate() {
            for term in 0..r.lhs.len() {
                out.push(CoefficientSite::Relation {
                    relation,
                    rhs: false,
                    term,
                });
            }
            for term in 0..r.rhs.len() {
                out.push(CoefficientSite::Relation {
                    relation,
                    rhs: true,
                    term,
                });
            }
        }
        for (formula, f) in self.psi_formulas.iter().enumerate() {
            formula_sites(&f.formula, |term, inner| {
                out.push(CoefficientSite::IntegralPsi {
                    formula,
                    term,
                    inner,
                })
            });
        }
        for (statement, s) in self.mod_statements.iter().enumerate() {
            formula_sites(&s.formula, |term, inner| {
                out.push(CoefficientSite::ModStatement {
                    statement,
                    term,
                    inner,
                })
            });
        }
        out
    }

    /// Adds `delta` to the coefficient at `site`.
    pub fn mutate_coefficient(&mut self, site: &CoefficientSite, delta: i64) {
        fn in_formula(f: &mut Formula, term: usize, inner: Option<usize>, delta: i64) {
            match (&mut f[term], inner) {
                (FormulaTerm::Tensor(t), None) => t.coeff += delta,
                (FormulaTerm::Bock { coeff, .. }, None) => *coeff += delta,
                (FormulaTerm::Bock { inner: terms, .. }, Some(i)) => terms[i].coeff += delta,
                (FormulaTerm::Tensor(_), Some(_)) => panic!("tensor term has no inner terms"),
            }
        }
        match *site {
            CoefficientSite::Reduction { row, term } => {
                self.reductions[row].image[term].coeff += delta
            }
            CoefficientSite::ModPsi {
                algebra,
                entry,
                term,
                inner,
            } => in_formula(
                &mut self.mod_p[algebra].psi[entry].formula,
                term,
                inner,
                delta,
            ),
            CoefficientSite::Relation {
                relation,
                rhs,
                term,
            } => {
                let r = &mut self.relations[relation];
                let side = if rhs { &mut r.rhs } else { &mut r.lhs };
                side[term].coeff += delta;
            }
            CoefficientSite::IntegralPsi {
                formula,
                term,
                inner,
            } => in_formula(&mut self.psi_formulas[formula].formula, term, inner, delta),
            CoefficientSite::ModStatement {
                statement,
                term,
                inner,
            } => in_formula(
                &mut self.mod_statements[statement].formula,
                term,
                inner,
                delta,
            ),
        }
    }

    /// Checks the structural and degree invariants of the stored data.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::CorruptData {
                group: self.group,
                reason,
            })
        };
        let rhos = self.rho_generators();
        let primes = self.torsion_primes();

        for t in &self.torsion {
            if !t.e.iter().all(|s| t.r.contains(s)) {
                return fail(format!(
                    "e(G,{}) is not contained in r(G,{})",
                    t.prime, t.prime
                ));
            }
            if self.mod_p(t.prime).is_none() {
                return fail(format!("no mod {} presentation", t.prime));
            }
        }
        let mut free: Vec<u32> = self
            .free_square
            .iter()
            .chain(&self.free_exterior)
            .copied()
            .collect();
        free.sort_unstable();
        if free != rhos {
            return fail("free generators do not match the invariant degrees".into());
        }
        for x in &self.x_classes {
            if !primes.contains(&x.prime) {
                return fail(format!("x{} has non-torsion prime {}", x.index, x.prime));
            }
        }
        // truncation heights agree between the integral and mod-p tables
        for m in &self.mod_p {
            for &(i, h) in &m.x_heights {
                match self.x_class(i) {
                    Some(x) if x.prime == m.prime && x.height == h => {}
                    _ => {
                        return fail(format!(
                            "x{i}^{h} in the mod {} presentation disagrees",
                            m.prime
                        ))
                    }
                }
            }
            let expected: Vec<u32> = self
                .x_classes
                .iter()
                .filter(|x| x.prime == m.prime)
                .map(|x| x.index)
                .collect();
            let present: Vec<u32> = m.x_heights.iter().map(|&(i, _)| i).collect();
            if expected != present {
                return fail(format!("x-generators of the mod {} presentation", m.prime));
            }
        }
        // reductions exist exactly for torsion primes
        for &rho in &rhos {
            for &p in &primes {
                if self.reduction(rho, p).is_none() {
                    return fail(format!("missing mod {p} reduction of rho{rho}"));
                }
            }
        }
        for r in &self.reductions {
            if !rhos.contains(&r.rho) || !primes.contains(&r.prime) {
                return fail(format!("stray reduction row rho{} mod {}", r.rho, r.prime));
            }
        }

        let deg = |w: &Word| -> std::result::Result<u32, String> { self.word_degree(w) };
        let sum_degree = |terms: &[Term], what: &str| -> std::result::Result<Option<u32>, String> {
            let mut d = None;
            for t in terms {
                let x = deg(&t.word)?;
                if d.is_some_and(|d| d != x) {
                    return Err(format!("{what} is not homogeneous"));
                }
                d = Some(x);
            }
            Ok(d)
        };
        let tensor_degree = |t: &TensorTerm| -> std::result::Result<(u32, u32), String> {
            Ok((deg(&t.left)?, deg(&t.right)?))
        };
        let check_formula = |f: &Formula,
                             total: u32,
                             what: &str,
                             reduced: bool|
         -> std::result::Result<(), String> {
            for term in f {
                match term {
                    FormulaTerm::Tensor(t) => {
                        let (l, r) = tensor_degree(t)?;
                        if l + r != total {
                            return Err(format!(
                                "{what}: term of degree {} instead of {total}",
                                l + r
                            ));
                        }
                        if reduced && (l == 0 || r == 0) {
                            return Err(format!("{what}: term with a unit leg"));
                        }
                    }
                    FormulaTerm::Bock { inner, .. } => {
                        for t in inner {
                            let (l, r) = tensor_degree(t)?;
                            if l + r + 1 != total {
                                return Err(format!(
                                        "{what}: Bockstein argument {} (x) {} of degree {} instead of {}",
                                        crate::notation::format_word(&t.left),
                                        crate::notation::format_word(&t.right),
                                        l + r,
                                        total - 1
                                    ));
                            }
                        }
                    }
                }
            }
            Ok(())
        };

        let run = || -> std::result::Result<(), String> {
            for r in &self.reductions {
                if let Some(d) = sum_degree(&r.image, &format!("r_{}(rho{})", r.prime, r.rho))? {
                    if d != r.rho {
                        return Err(format!("r_{}(rho{}) has degree {d}", r.prime, r.rho));
                    }
                }
            }
            for m in &self.mod_p {
                for s in &m.squares {
                    if let Some(d) = sum_degree(&s.target, "square target")? {
                        if d != 2 * s.zeta {
                            return Err(format!("zeta{}^2 target has degree {d}", s.zeta));
                        }
                    }
                }
                for e in &m.psi {
                    check_formula(
                        &e.formula,
                        e.zeta,
                        &format!("psi_{}(zeta{})", m.prime, e.zeta),
                        true,
                    )?;
                }
            }
            for r in &self.relations {
                let l = sum_degree(&r.lhs, &r.id)?;
                let rr = sum_degree(&r.rhs, &r.id)?;
                if let (Some(a), Some(b)) = (l, rr) {
                    if a != b {
                        return Err(format!("relation {} mixes degrees {a} and {b}", r.id));
                    }
                }
            }
            for f in &self.psi_formulas {
                check_formula(&f.formula, f.rho, &format!("psi(rho{})", f.rho), true)?;
            }
            for s in &self.mod_statements {
                check_formula(
                    &s.formula,
                    s.zeta,
                    &format!("psi_{}(zeta{})", s.prime, s.zeta),
                    true,
                )?;
            }
            for s in &self.primitives {
                deg(&vec![(s.clone(), 1)])?;
            }
            Ok(())
        };
        run().or_else(fail)
    }

    /// Degree of a word over the entry's symbols, validating every symbol.
    pub fn word_degree(&self, w: &Word) -> std::result::Result<u32, String> {
        let mut d = 0;
        for (s, e) in w {
            d += e * self
                .symbol_degree(s)
                .ok_or_else(|| format!("undeclared symbol {s}"))?;
        }
        Ok(d)
    }

    pub fn symbol_degree(&self, s: &Symbol) -> Option<u32> {
        match s {
            Symbol::X(i) => self.x_class(*i).map(|_| *i),
            Symbol::Rho(i) => self.rho_generators().contains(i).then_some(*i),
            Symbol::Zeta(i) => {
                let t = i.div_ceil(2);
                (i % 2 == 1 && self.torsion.iter().any(|tp| tp.r.contains(&t))).then_some(*i)
            }
            Symbol::C(set) => {
                self.prime_of_index_set(set)?;
                Some(c_degree(set))
            }
        }
    }
}

/// `deg C_I = 2(i_1 + ... + i_k) - k + 1`.
pub fn c_degree(set: &[u32]) -> u32 {
    2 * set.iter().sum::<u32>() - set.len() as u32 + 1
}

/// Reduction of the integral generators, one row per generator and prime.
const REDUCTION_TABLE: &[(u32, &str, &str, &str)] = &[
    (3, "zeta3", "zeta3", "zeta3"),
    (9, "zeta9", "zeta9", "zeta9"),
    (11, "x6*zeta5", "-zeta11", "2*zeta11"),
    (15, "zeta15", "zeta15", "zeta15"),
    (17, "zeta17", "zeta17", "zeta17"),
    (19, "x10*zeta9", "-zeta19", "2*zeta19"),
    (23, "zeta23", "-x8^2*zeta7", "2*zeta23"),
    (27, "zeta27", "zeta27", "zeta27"),
    (35, "x18*zeta17", "-zeta35", "2*zeta35"),
    (39, "x10^3*zeta9", "-zeta39", "2*zeta39"),
    (47, "x6^7*zeta5", "-zeta47", "2*zeta47"),
    (59, "x30*zeta29", "-x20^2*zeta19", "2*x12^4*zeta11"),
];

struct Source {
    group: Group,
    invariant_degrees: &'static [u32],
    torsion: &'static [(u32, &'static [u32], &'static [u32])],
    special: &'static [(u32, &'static str)],
    x_classes: &'static [(u32, u32, u32)],
    mod_p: &'static [ModSource],
    free_square: &'static [u32],
    free_exterior: &'static [u32],
    torsion_presentations: &'static [TorsionSource],
    relations: &'static [(&'static str, &'static str, &'static str)],
    psi: &'static [(u32, &'static str)],
    primitives: &'static [&'static str],
    mod_statements: &'static [(u32, u32, &'static str)],
}

struct ModSource {
    prime: u32,
    x_heights: &'static [(u32, u32)],
    squares: &'static [(u32, &'static str)],
    psi: &'static [(u32, &'static str)],
}

struct TorsionSource {
    prime: u32,
    classes: &'static [(&'static str, u32)],
    relations: &'static [&'static str],
    square_free: &'static [u32],
}

const G2: Source = Source {
    group: Group::G2,
    invariant_degrees: &[2, 6],
    torsion: &[(2, &[2, 3], &[3])],
    special: &[(6, "[1,2,1]")],
    x_classes: &[(6, 2, 2)],
    mod_p: &[ModSource {
        prime: 2,
        x_heights: &[(6, 2)],
        squares: &[(3, "x6")],
        psi: &[(3, "0"), (5, "0")],
    }],
    free_square: &[3],
    free_exterior: &[11],
    torsion_presentations: &[TorsionSource {
        prime: 2,
        classes: &[("x6", 2)],
        relations: &[],
        square_free: &[3],
    }],
    relations: &[("rho3^2", "rho3^2", "x6"), ("x6*rho11", "x6*rho11", "0")],
    psi: &[(11, "delta2[zeta5 (x) zeta5]")],
    primitives: &["rho3", "x6"],
    mod_statements: &[],
};

const F4: Source = Source {
    group: Group::F4,
    invariant_degrees: &[2, 6, 8, 12],
    torsion: &[(2, &[2, 3, 8, 12], &[3]), (3, &[2, 4, 6, 8], &[4])],
    special: &[(6, "[3,2,1]"), (8, "[4,3,2,1]")],
    x_classes: &[(6, 2, 2), (8, 3, 3)],
    mod_p: &[
        ModSource {
            prime: 2,
            x_heights: &[(6, 2)],
            squares: &[(3, "x6")],
            psi: &[(3, "0"), (5, "0"), (15, "0"), (23, "0")],
        },
        ModSource {
            prime: 3,
            x_heights: &[(8, 3)],
            squares: &[],
            psi: &[
                (3, "0"),
                (7, "0"),
                (11, "-x8 (x) zeta3"),
                (15, "-beta[zeta7 (x) zeta7]"),
            ],
        },
    ],
    free_square: &[3],
    free_exterior: &[11, 15, 23],
    torsion_presentations: &[
        TorsionSource {
            prime: 2,
            classes: &[("x6", 2)],
            relations: &[],
            square_free: &[3, 15, 23],
        },
        TorsionSource {
            prime: 3,
            classes: &[("x8", 3)],
            relations: &[],
            square_free: &[3, 11, 15],
        },
    ],
    relations: &[
        ("rho3^2", "rho3^2", "x6"),
        ("x6*rho11", "x6*rho11", "0"),
        ("x8*rho23", "x8*rho23", "0"),
    ],
    psi: &[
        (11, "delta2[zeta5 (x) zeta5] + x8 (x) rho3"),
        (15, "-delta3[zeta7 (x) zeta7]"),
        (23, "delta3[zeta7 (x) zeta7*x8 - zeta7*x8 (x) zeta7]"),
    ],
    primitives: &["rho3", "x6", "x8"],
    mod_statements: &[],
};

const E6: Source = Source {
    group: Group::E6,
    invariant_degrees: &[2, 5, 6, 8, 9, 12],
    torsion: &[
        (2, &[2, 3, 5, 8, 9, 12], &[3]),
        (3, &[2, 4, 5, 6, 8, 9], &[4]),
    ],
    special: &[(6, "[5,4,2]"), (8, "[6,5,4,2]")],
    x_classes: &[(6, 2, 2), (8, 3, 3)],
    mod_p: &[
        ModSource {
            prime: 2,
            x_heights: &[(6, 2)],
            squares: &[(3, "x6")],
            psi: &[
                (3, "0"),
                (5, "0"),
                (9, "0"),
                (15, "x6 (x) zeta9"),
                (17, "0"),
                (23, "x6 (x) zeta17"),
            ],
        },
        ModSource {
            prime: 3,
            x_heights: &[(8, 3)],
            squares: &[],
            psi: &[
                (3, "0"),
                (7, "0"),
                (9, "0"),
                (11, "-x8 (x) zeta3"),
                (15, "-beta[zeta7 (x) zeta7]"),
                (17, "0"),
            ],
        },
    ],
    free_square: &[3],
    free_exterior: &[9, 11, 15, 17, 23],
    torsion_presentations: &[
        TorsionSource {
            prime: 2,
            classes: &[("x6", 2)],
            relations: &[],
            square_free: &[3, 9, 15, 17, 23],
        },
        TorsionSource {
            prime: 3,
            classes: &[("x8", 3)],
            relations: &[],
            square_free: &[3, 9, 11, 15, 17],
        },
    ],
    relations: &[
        ("rho3^2", "rho3^2", "x6"),
        ("x6*rho11", "x6*rho11", "0"),
        ("x8*rho23", "x8*rho23", "0"),
    ],
    psi: &[
        (11, "delta2[zeta5 (x) zeta5] + x8 (x) rho3"),
        (15, "x6 (x) rho9 - delta3[zeta7 (x) zeta7]"),
        (
            23,
            "x6 (x) rho17 + delta3[zeta7*x8 (x) zeta7 - zeta7 (x) zeta7*x8]",
        ),
    ],
    primitives: &["rho3", "rho9", "rho17", "x6", "x8"],
    mod_statements: &[],
};

const E7: Source = Source {
    group: Group::E7,
    invariant_degrees: &[2, 6, 8, 10, 12, 14, 18],
    torsion: &[
        (2, &[2, 3, 5, 8, 9, 12, 14], &[3, 5, 9]),
        (3, &[2, 4, 6, 8, 10, 14, 18], &[4]),
    ],
    special: &[
        (6, "[5,4,2]"),
        (8, "[6,5,4,2]"),
        (10, "[7,6,5,4,2]"),
        (18, "[1,5,4,3,7,6,5,4,2]"),
    ],
    x_classes: &[(6, 2, 2), (8, 3, 3), (10, 2, 2), (18, 2, 2)],
    mod_p: &[
        ModSource {
            prime: 2,
            x_heights: &[(6, 2), (10, 2), (18, 2)],
            squares: &[(3, "x6"), (5, "x10"), (9, "x18")],
            psi: &[
                (3, "0"),
                (5, "0"),
                (9, "0"),
                (15, "beta[zeta9 (x) zeta5]"),
                (17, "0"),
                (23, "beta[zeta17 (x) zeta5]"),
                (27, "beta[zeta17 (x) zeta9]"),
            ],
        },
        ModSource {
            prime: 3,
            x_heights: &[(8, 3)],
            squares: &[],
            psi: &[
                (3, "0"),
                (7, "0"),
                (11, "-x8 (x) zeta3"),
                (15, "-beta[zeta7 (x) zeta7]"),
                (19, "0"),
                (27, "-beta[zeta7 (x) zeta19]"),
                (35, "zeta27 (x) x8 - x8 (x) zeta27 - x8 (x) x8*zeta19"),
            ],
        },
    ],
    free_square: &[3],
    free_exterior: &[11, 15, 19, 23, 27, 35],
    torsion_presentations: &[TorsionSource {
        prime: 3,
        classes: &[("x8", 3)],
        relations: &[],
        square_free: &[3, 11, 15, 19, 27, 35],
    }],
    relations: &[("rho3^2", "rho3^2", "x6"), ("x8*rho23", "x8*rho23", "0")],
    psi: &[
        (11, "delta2[zeta5 (x) zeta5] + x8 (x) rho3"),
        (15, "delta2[zeta9 (x) zeta5] + delta3[zeta7 (x) zeta7]"),
        (19, "delta2[zeta9 (x) zeta9]"),
        (
            23,
            "delta2[zeta17 (x) zeta5] + delta3[zeta7*x8 (x) zeta7 - zeta7 (x) zeta7*x8]",
        ),
        (27, "delta2[zeta17 (x) zeta9] - delta3[zeta7 (x) zeta19]"),
        (
            35,
            "delta2[zeta17 (x) zeta17] + x8 (x) rho27 - rho27 (x) x8 + x8 (x) x8*rho19",
        ),
    ],
    primitives: &["rho3", "x6", "x8", "x10", "x18"],
    mod_statements: &[(2, 5, "0"), (2, 9, "0"), (2, 17, "0")],
};

const E8: Source = Source {
    group: Group::E8,
    invariant_degrees: &[2, 8, 12, 14, 18, 20, 24, 30],
    torsion: &[
        (2, &[2, 3, 5, 8, 9, 12, 14, 15], &[3, 5, 9, 15]),
        (3, &[2, 4, 8, 10, 14, 18, 20, 24], &[4, 10]),
        (5, &[2, 6, 8, 12, 14, 18, 20, 24], &[6]),
    ],
    special: &[
        (6, "[5,4,2]"),
        (8, "[6,5,4,2]"),
        (10, "[7,6,5,4,2]"),
        (12, "[1,3,6,5,4,2]"),
        (18, "[1,5,4,3,7,6,5,4,2]"),
        (20, "[1,6,5,4,3,7,6,5,4,2]"),
        (30, "[5,4,2,3,1,6,5,4,3,8,7,6,5,4,2]"),
    ],
    x_classes: &[(6, 2, 8), (8, 3, 3), (10, 2, 4), (12, 5, 5), (18, 2, 2), (20, 3, 3), (30, 2, 2)],
    mod_p: &[
        ModSource {
            prime: 2,
            x_heights: &[(6, 8), (10, 4), (18, 2), (30, 2)],
            squares: &[(3, "x6"), (5, "x10"), (9, "x18"), (15, "x30"), (23, "x6^6*x10")],
            psi: &[
                (3, "0"),
                (5, "0"),
                (9, "0"),
                (15, "beta[zeta9 (x) zeta5] + x6^2 (x) zeta3"),
                (17, "0"),
                (
                    23,
                    "beta[zeta17 (x) zeta5] + beta[zeta5 (x) x6^2*zeta5 + x6*zeta5 (x) x6*zeta5 \
                     + x6^2*zeta5 (x) zeta5] + x10^2 (x) zeta3",
                ),
                (27, "beta[zeta17 (x) zeta9] + x6^4 (x) zeta3"),
                (29, "x10^2 (x) zeta9 + zeta17 (x) x6^2 + x6^4 (x) zeta5"),
            ],
        },
        ModSource {
            prime: 3,
            x_heights: &[(8, 3), (20, 3)],
            squares: &[],
            psi: &[
                (3, "0"),
                (7, "0"),
                (15, "-beta[zeta7 (x) zeta7]"),
                (19, "0"),
                (27, "beta[zeta19 (x) zeta7]"),
                (35, "zeta27 (x) x8 - x8 (x) zeta27 - x20 (x) zeta15 - beta[x8*zeta19 (x) zeta7]"),
                (39, "beta[zeta19 (x) zeta19]"),
                (47, "x20 (x) zeta27 - zeta39 (x) x8 - beta[x20*zeta19 (x) zeta7]"),
            ],
        },
        ModSource {
            prime: 5,
            x_heights: &[(12, 5)],
            squares: &[],
            psi: &[
                (3, "0"),
                (11, "0"),
                (15, "x12 (x) zeta3"),
                (23, "2*beta[zeta11 (x) zeta11]"),
                (27, "-x12 (x) zeta15 + 2*x12^2 (x) zeta3"),
                (35, "x12 (x) zeta23 + beta[3*x12*zeta11 (x) zeta11 - zeta11 (x) zeta11*x12]"),
                (39, "3*x12 (x) zeta27 + x12^2 (x) zeta15 + 2*x12^3 (x) zeta3"),
                (
                    47,
                    "x12 (x) zeta35 - 2*x12^2 (x) zeta23 + beta[zeta11 (x) x12^2*zeta11 \
                     + 3*x12*zeta11 (x) x12*zeta11 + 3*x12^2*zeta11 (x) zeta11]",
                ),
            ],
        },
    ],
    free_square: &[3, 15, 23],
    free_exterior: &[27, 35, 39, 47, 59],
    torsion_presentations: &[
        TorsionSource {
            prime: 3,
            classes: &[("x8", 3), ("x20", 3), ("C{4,10}", 2)],
            relations: &["x8^2*x20^2*C{4,10}"],
            square_free: &[3, 15, 27, 35, 39, 47],
        },
        TorsionSource { prime: 5, classes: &[("x12", 5)], relations: &[], square_free: &[3, 15, 23, 27, 35, 39, 47] },
    ],
    relations: &[
        ("rho3^2", "rho3^2", "x6"),
        ("rho15^2", "rho15^2", "x30"),
        ("rho23^2", "rho23^2", "x6^6*x10"),
        ("x8*rho23", "x8*rho23", "0"),
        ("x10*rho39", "x10*rho39", "0"),
        ("x8*rho59", "x8*rho59", "x20^2*C{4,10}"),
        ("x20*rho23", "x20*rho23", "x8^2*C{4,10}"),
        ("x12*rho59", "x12*rho59", "0"),
    ],
    psi: &[
        (15, "delta2[zeta9 (x) zeta5] + x6^2 (x) rho3 - delta3[zeta7 (x) zeta7] + x12 (x) rho3"),
        (
            23,
            "delta2[zeta17 (x) zeta5 + zeta5 (x) x6^2*zeta5 + x6*zeta5 (x) x6*zeta5 + x6^2*zeta5 (x) zeta5] \
             + x10^2 (x) rho3 + delta3[x8*zeta7 (x) zeta7 - zeta7 (x) zeta7*x8] - delta5[zeta11 (x) zeta11]",
        ),
        (
            27,
            "delta2[zeta17 (x) zeta9] + delta3[zeta19 (x) zeta7] - x12 (x) rho15 + x6^4 (x) rho3 \
             + 2*x12^2 (x) rho3",
        ),
        (
            35,
            "delta2[zeta17 (x) zeta17] - rho27 (x) x8 + x8 (x) rho27 + x20 (x) rho15 \
             + delta3[x8*zeta19 (x) zeta7] + 2*x12 (x) rho23 \
             + delta5[x12*zeta11 (x) zeta11 + 3*zeta11 (x) zeta11*x12]",
        ),
        (
            39,
            "delta2[zeta9 (x) x10^2*zeta9 + x10*zeta9 (x) x10*zeta9 + x10^2*zeta9 (x) zeta9] \
             - delta3[zeta19 (x) zeta19] + x12 (x) rho27 + 2*x12^2 (x) rho15 - x12^3 (x) rho3",
        ),
        (
            47,
            "delta2[zeta5 (x) x6^6*zeta5 + x6*zeta5 (x) x6^5*zeta5 + x6^2*zeta5 (x) x6^4*zeta5 \
             + x6^3*zeta5 (x) x6^3*zeta5 + x6^4*zeta5 (x) x6^2*zeta5 + x6^5*zeta5 (x) x6*zeta5 \
             + x6^6*zeta5 (x) zeta5] - x20 (x) rho27 + rho39 (x) x8 + delta3[x20*zeta19 (x) zeta7] \
             + 2*x12 (x) rho35 + x12^2 (x) rho23 + delta5[zeta11 (x) x12^2*zeta11 \
             + zeta11 (x) x12^2*zeta11 + x12*zeta11 (x) x12*zeta11 + x12^2*zeta11 (x) zeta11]",
        ),
        (59, E8_RHO59),
    ],
    primitives: &["rho3", "x6", "x8", "x10", "x12", "x18", "x20"],
    mod_statements: &[
        (2, 5, "0"),
        (2, 9, "0"),
        (2, 17, "0"),
        (3, 7, "0"),
        (3, 19, "0"),
        (5, 11, "0"),
        (2, 29, "x10^2 (x) zeta9 + zeta17 (x) x6^2 + x6^4 (x) zeta5"),
    ],
};

const E8_RHO59: &str = "delta2[x10^2*zeta29 (x) zeta9 + x30*zeta17 (x) zeta5*x6 + x18*zeta29 (x) zeta5*x6 \
     + x6^4*zeta29 (x) zeta5 + zeta29 (x) zeta29 + x10^2*zeta17 (x) zeta9*x6^2 + zeta17 (x) x6^2*zeta29 \
     + x6^4*zeta17 (x) zeta5*x6^2 + x18*zeta17 (x) zeta5*x6^3 + x6^4*x10^2 (x) zeta5*zeta9 \
     + x10^2 (x) zeta9*zeta29 + x6^4 (x) zeta5*zeta29] \
     + delta3[zeta19 (x) x20*zeta19 - x20*zeta19 (x) zeta19] \
     + 2*delta5[zeta11 (x) x12^3*zeta11 - x12*zeta11 (x) x12^2*zeta11 + x12^2*zeta11 (x) x12*zeta11 \
     - x12^3*zeta11 (x) zeta11]";

fn source(group: Group) -> &'static Source {
    match group {
        Group::G2 => &G2,
        Group::F4 => &F4,
        Group::E6 => &E6,
        Group::E7 => &E7,
        Group::E8 => &E8,
    }
}

fn parse_static<T>(
    r: std::result::Result<T, crate::notation::NotationError>,
    group: Group,
) -> Result<T> {
    r.map_err(|e| Error::CorruptData {
        group,
        reason: e.to_string(),
    })
}

fn build(src: &Source) -> Result<CatalogEntry> {
    let g = src.group;
    let word = |s: &str| parse_static(crate::notation::parse_word(s), g);
    let terms = |s: &str| parse_static(parse_terms(s), g);
    let formula = |s: &str| parse_static(parse_formula(s), g);

    let torsion: Vec<TorsionPrime> = src
        .torsion
        .iter()
        .map(|&(prime, r, e)| TorsionPrime {
            prime,
            r: r.to_vec(),
            e: e.to_vec(),
        })
        .collect();
    let rhos: Vec<u32> = src.invariant_degrees.iter().map(|i| 2 * i - 1).collect();

    let mut reductions = Vec::new();
    for &rho in &rhos {
        let row =
            REDUCTION_TABLE
                .iter()
                .find(|r| r.0 == rho)
                .ok_or_else(|| Error::CorruptData {
                    group: g,
                    reason: format!("no reduction row for rho{rho}"),
                })?;
        for t in &torsion {
            let text = match t.prime {
                2 => row.1,
                3 => row.2,
                _ => row.3,
            };
            reductions.push(ReductionRow {
                rho,
                prime: t.prime,
                image: terms(text)?,
            });
        }
    }

    let mut mod_p = Vec::new();
    for m in src.mod_p {
        let mut squares = Vec::new();
        for &(zeta, t) in m.squares {
            squares.push(SquareRule {
                zeta,
                target: terms(t)?,
            });
        }
        let mut psi = Vec::new();
        for &(zeta, f) in m.psi {
            psi.push(PsiEntry {
                zeta,
                formula: formula(f)?,
            });
        }
        mod_p.push(ModPData {
            prime: m.prime,
            x_heights: m.x_heights.to_vec(),
            squares,
            psi,
        });
    }

    let mut torsion_presentations = Vec::new();
    for t in src.torsion_presentations {
        let mut classes = Vec::new();
        for &(s, h) in t.classes {
            let sym = Symbol::parse(s).ok_or_else(|| Error::CorruptData {
                group: g,
                reason: format!("bad symbol {s}"),
            })?;
            classes.push((sym, h));
        }
        let mut monomial_relations = Vec::new();
        for r in t.relations {
            monomial_relations.push(word(r)?);
        }
        torsion_presentations.push(TorsionPresentation {
            prime: t.prime,
            classes,
            monomial_relations,
            square_free: t.square_free.to_vec(),
        });
    }

    let mut relations = Vec::new();
    for &(id, l, r) in src.relations {
        relations.push(StatedRelation {
            id: id.to_string(),
            lhs: terms(l)?,
            rhs: terms(r)?,
        });
    }
    let mut psi_formulas = Vec::new();
    for &(rho, f) in src.psi {
        psi_formulas.push(StatedPsi {
            rho,
            formula: formula(f)?,
        });
    }
    let mut primitives = Vec::new();
    for p in src.primitives {
        primitives.push(Symbol::parse(p).ok_or_else(|| Error::CorruptData {
            group: g,
            reason: format!("bad symbol {p}"),
        })?);
    }
    let mut mod_statements = Vec::new();
    for &(prime, zeta, f) in src.mod_statements {
        mod_statements.push(ModStatement {
            prime,
            zeta,
            formula: formula(f)?,
        });
    }

    let entry = CatalogEntry {
        group: g,
        invariant_degrees: src.invariant_degrees.to_vec(),
        torsion,
        special_classes: src
            .special
            .iter()
            .map(|&(degree, w)| SpecialClass {
                degree,
                weyl: format!("sigma{w}"),
            })
            .collect(),
        x_classes: src
            .x_classes
            .iter()
            .map(|&(index, prime, height)| XClass {
                index,
                prime,
                height,
            })
            .collect(),
        mod_p,
        bockstein_sign: -1,
        reductions,
        free_square: src.free_square.to_vec(),
        free_exterior: src.free_exterior.to_vec(),
        torsion_presentations,
        relations,
        psi_formulas,
        primitives,
        mod_statements,
    };
    entry.validate()?;
    Ok(entry)
}

/// The catalog entry of a group; validated on every load.
pub fn entry(group: Group) -> Result<CatalogEntry> {
    build(source(group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_load() {
        for g in Group::ALL {
            entry(g).unwrap_or_else(|e| panic!("{g}: {e}"));
        }
    }

    #[test]
    fn tabulated_values() {
        let e7 = entry(Group::E7).unwrap();
        assert_eq!(e7.e(2).unwrap(), &[3, 5, 9]);
        let e8 = entry(Group::E8).unwrap();
        assert_eq!(e8.invariant_degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
        let g2 = entry(Group::G2).unwrap();
        assert_eq!(
            g2.special_classes,
            vec![SpecialClass {
                degree: 6,
                weyl: "sigma[1,2,1]".into()
            }]
        );
    }

    #[test]
    fn c_degrees() {
        assert_eq!(c_degree(&[3, 5]), 15);
        assert_eq!(c_degree(&[4, 10]), 27);
        assert_eq!(c_degree(&[3]), 6);
    }

    #[test]
    fn validator_rejects_inhomogeneous_formula() {
        let mut e = entry(Group::G2).unwrap();
        e.psi_formulas[0].formula = parse_formula("delta2[zeta5 (x) x6]").unwrap();
        assert!(matches!(e.validate(), Err(Error::CorruptData { .. })));
        let mut e = entry(Group::G2).unwrap();
        e.reductions[1].image = parse_terms("zeta5").unwrap();
        assert!(e.validate().is_err());
    }

    #[test]
    fn validator_rejects_undeclared_symbol() {
        let mut e = entry(Group::G2).unwrap();
        e.relations[0].rhs = parse_terms("x8").unwrap();
        assert!(e.validate().is_err());
    }
}
