//! The consistency suite.
//!
//! Checks, per group:
//!
//! * **A** table consistency: load-time validation, degree audit of every
//!   reduction row, `e ⊆ r`, truncation heights across tables.
//! * **B** the coproduct respects every defining relation of `H*(G;F_p)`.
//! * **C** coassociativity and counit.
//! * **D** `beta^2 = 0`, the Leibniz rule, and `mu beta = beta mu`.
//! * **E** the stated integral relations hold in every shadow.
//! * **F** the pulled-back `psi(rho)` equals the stated formula.
//! * **G** stated primitives are primitive, the other rho-generators with a
//!   stated nonzero coproduct are not, and stated mod-p coproducts agree
//!   with the tables.
//! * **H** `delta_p psi_p = psi delta_p` on every `C_I`.
//! * **I** the rational Poincaré series.
//! * **J** mod-p dimension counts, Bockstein homology ranks, and the additive
//!   shape of the stated torsion summands.
//! * **K** the degree formula for `C_I`.
//!
//! Every stored formula is attached to exactly one item. Mismatches carry
//! both sides in canonical expanded form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Symbol};
use crate::catalog::{c_degree, entry, CatalogEntry, FormulaId, CATALOG_VERSION};
use crate::error::Error;
use crate::group::Group;
use crate::hopf::HopfAlgebra;
use crate::integral::{IntegralRing, IntegralTensor, PsiMode};
use crate::notation::FormulaTerm;
use crate::presentation::terms_element;
use crate::tensor::TensorElement;

/// Degree bound for the basis-wide checks.
pub const BASIS_DEGREE: u32 = 60;
/// Total-degree bound for the Leibniz check on pairs.
pub const LEIBNIZ_DEGREE: u32 = 60;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// `primes` lists the components that differ (0 for the free part).
    Mismatch {
        lhs: String,
        rhs: String,
        primes: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub id: String,
    pub check: char,
    pub subject: String,
    pub prime: Option<u32>,
    pub formula: Option<FormulaId>,
    pub status: Status,
    pub elapsed_micros: u64,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Finding ids `GROUP/CHECK/SUBJECT/PRIME`, one per differing component.
    pub fn findings(&self, group: Group) -> Vec<String> {
        match &self.status {
            Status::Pass => Vec::new(),
            Status::Mismatch { primes, .. } if primes.is_empty() => {
                vec![finding_id(group, self.check, &self.subject, self.prime)]
            }
            Status::Mismatch { primes, .. } => primes
                .iter()
                .map(|&p| finding_id(group, self.check, &self.subject, Some(p)))
                .collect(),
        }
    }
}

fn finding_id(group: Group, check: char, subject: &str, prime: Option<u32>) -> String {
    let p = prime.map_or("Z".to_string(), |p| p.to_string());
    format!("{group}/{check}/{subject}/{p}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub group: Group,
    pub catalog_version: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed())
    }

    pub fn findings(&self) -> BTreeSet<String> {
        self.items
            .iter()
            .flat_map(|i| i.findings(self.group))
            .collect()
    }

    pub fn unexpected(&self, allow: &AllowList) -> BTreeSet<String> {
        self.findings()
            .into_iter()
            .filter(|f| !allow.contains(f))
            .collect()
    }

    /// The report with timing fields zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> CheckReport {
        let mut out = self.clone();
        for i in out.items.iter_mut() {
            i.elapsed_micros = 0;
        }
        out
    }

    pub fn item(&self, id: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.id == id)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            match &i.status {
                Status::Pass => writeln!(f, "pass      {}", i.id)?,
                Status::Mismatch { lhs, rhs, .. } => {
                    writeln!(f, "MISMATCH  {}", i.id)?;
                    writeln!(f, "    lhs: {lhs}")?;
                    writeln!(f, "    rhs: {rhs}")?;
                }
            }
        }
        let bad = self.mismatches().count();
        write!(
            f,
            "{}: {} items, {} mismatches",
            self.group,
            self.items.len(),
            bad
        )
    }
}

/// Finding ids tolerated by an aggregate run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AllowList {
    ids: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowListError {
    pub line: usize,
    pub text: String,
}

impl fmt::Display for AllowListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "allow-list line {}: expected GROUP/CHECK/SUBJECT/PRIME, got '{}'",
            self.line, self.text
        )
    }
}

impl std::error::Error for AllowListError {}

impl AllowList {
    /// One id per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<AllowList, AllowListError> {
        let mut ids = BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('/').collect();
            let ok = parts.len() == 4
                && parts[0].parse::<Group>().is_ok()
                && parts[1].len() == 1
                && !parts[2].is_empty()
                && !parts[3].is_empty();
            if !ok {
                return Err(AllowListError {
                    line: n + 1,
                    text: line.to_string(),
                });
            }
            ids.insert(line.to_string());
        }
        Ok(AllowList { ids })
    }

    pub fn from_ids<I: IntoIterator<Item = S>, S: Into<String>>(ids: I) -> AllowList {
        AllowList {
            ids: ids.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.ids.contains(id)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Whether every finding of every report is allow-listed.
pub fn aggregate_pass(reports: &[CheckReport], allow: &AllowList) -> bool {
    reports.iter().all(|r| r.unexpected(allow).is_empty())
}

struct Suite<'a> {
    group: Group,
    ring: &'a IntegralRing,
    items: Vec<CheckItem>,
}

fn mod_mismatch(h: &HopfAlgebra, lhs: &TensorElement, rhs: &TensorElement) -> Status {
    if lhs == rhs {
        Status::Pass
    } else {
        let alg = h.algebra();
        Status::Mismatch {
            lhs: alg.format_tensor(lhs),
            rhs: alg.format_tensor(rhs),
            primes: vec![h.prime()],
        }
    }
}

fn element_mismatch(h: &HopfAlgebra, lhs: &Element, rhs: &Element) -> Status {
    if lhs == rhs {
        Status::Pass
    } else {
        let alg = h.algebra();
        Status::Mismatch {
            lhs: alg.format(lhs),
            rhs: alg.format(rhs),
            primes: vec![h.prime()],
        }
    }
}

fn fact(ok: bool, lhs: impl Into<String>, rhs: impl Into<String>, prime: Option<u32>) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Mismatch {
            lhs: lhs.into(),
            rhs: rhs.into(),
            primes: prime.into_iter().collect(),
        }
    }
}

fn error_status(e: &Error, rhs: String, prime: Option<u32>) -> Status {
    Status::Mismatch {
        lhs: format!("error: {e}"),
        rhs,
        primes: prime.into_iter().collect(),
    }
}

impl<'a> Suite<'a> {
    fn push(
        &mut self,
        check: char,
        subject: impl Into<String>,
        prime: Option<u32>,
        formula: Option<FormulaId>,
        run: impl FnOnce() -> Status,
    ) {
        let subject = subject.into();
        let start = Instant::now();
        let status = run();
        let elapsed_micros = start.elapsed().as_micros() as u64;
        self.items.push(CheckItem {
            id: finding_id(self.group, check, &subject, prime),
            check,
            subject,
            prime,
            formula,
            status,
            elapsed_micros,
        });
    }

    fn entry(&self) -> &'a CatalogEntry {
        self.ring.entry()
    }

    fn integral_status(&self, lhs: &IntegralTensor, rhs: &IntegralTensor) -> Status {
        integral_status(self.ring, lhs, rhs)
    }
}

fn integral_status(ring: &IntegralRing, lhs: &IntegralTensor, rhs: &IntegralTensor) -> Status {
    {
        let mut l = Vec::new();
        let mut r = Vec::new();
        let mut primes = Vec::new();
        if lhs.free != rhs.free {
            let q = ring.rational();
            l.push(format!("Q: {}", q.format_tensor(&lhs.free)));
            r.push(format!("Q: {}", q.format_tensor(&rhs.free)));
            primes.push(0);
        }
        for h in ring.primes() {
            let p = h.prime();
            if lhs.shadows[&p] != rhs.shadows[&p] {
                l.push(format!(
                    "mod {p}: {}",
                    h.algebra().format_tensor(&lhs.shadows[&p])
                ));
                r.push(format!(
                    "mod {p}: {}",
                    h.algebra().format_tensor(&rhs.shadows[&p])
                ));
                primes.push(p);
            }
        }
        if primes.is_empty() {
            Status::Pass
        } else {
            Status::Mismatch {
                lhs: l.join(" | "),
                rhs: r.join(" | "),
                primes,
            }
        }
    }
}

impl<'a> Suite<'a> {
    fn check_a(&mut self) {
        let entry = self.entry();
        self.push('A', "catalog", None, None, || match entry.validate() {
            Ok(()) => Status::Pass,
            Err(e) => error_status(&e, "valid catalog".into(), None),
        });
        for t in &entry.torsion {
            let (p, r, e) = (t.prime, t.r.clone(), t.e.clone());
            self.push('A', "e-in-r", Some(p), None, || {
                fact(
                    e.iter().all(|s| r.contains(s)),
                    format!("e = {e:?}"),
                    format!("r = {r:?}"),
                    Some(p),
                )
            });
        }
        for x in &entry.x_classes {
            let ring = self.ring;
            self.push(
                'A',
                format!("height-x{}", x.index),
                Some(x.prime),
                None,
                || {
                    let stated = entry
                        .mod_p(x.prime)
                        .and_then(|m| m.x_heights.iter().find(|&&(i, _)| i == x.index))
                        .map(|&(_, h)| h);
                    let built = ring.hopf(x.prime).ok().and_then(|h| {
                        let alg = h.algebra();
                        let i = alg.index_of(&Symbol::X(x.index))?;
                        Some(alg.generators()[i].bound())
                    });
                    fact(
                        stated == Some(x.height) && built == Some(x.height),
                        format!("x{}^{} (integral table)", x.index, x.height),
                        format!("mod-p table {stated:?}, presentation {built:?}"),
                        Some(x.prime),
                    )
                },
            );
        }
        for row in &entry.reductions {
            let ring = self.ring;
            let id = FormulaId::Reduction {
                rho: row.rho,
                prime: row.prime,
            };
            self.push(
                'A',
                format!("r-rho{}", row.rho),
                Some(row.prime),
                Some(id),
                || {
                    let h = match ring.hopf(row.prime) {
                        Ok(h) => h,
                        Err(e) => {
                            return error_status(&e, format!("degree {}", row.rho), Some(row.prime))
                        }
                    };
                    match terms_element(h.algebra(), &row.image) {
                        Ok(v) => {
                            let d = h.algebra().degree(&v);
                            fact(
                                d == Some(row.rho),
                                format!("degree {d:?}"),
                                format!("degree {}", row.rho),
                                Some(row.prime),
                            )
                        }
                        Err(e) => error_status(&e, format!("degree {}", row.rho), Some(row.prime)),
                    }
                },
            );
        }
    }

    fn check_b(&mut self, h: &HopfAlgebra) {
        let p = h.prime();
        let alg = h.algebra();
        for (i, g) in alg.generators().iter().enumerate() {
            let mu = h.generator_coproduct(i);
            match &g.rule {
                crate::algebra::Rule::SquareTo(target) => {
                    let Symbol::Zeta(z) = g.symbol else { continue };
                    let id = Some(FormulaId::Square { prime: p, zeta: z });
                    self.push('B', format!("square-zeta{z}"), Some(p), id, || {
                        mod_mismatch(h, &alg.tensor_multiply(mu, mu), &h.coproduct(target))
                    });
                }
                crate::algebra::Rule::Exterior => {
                    self.push('B', format!("square-{}", g.symbol), Some(p), None, || {
                        mod_mismatch(h, &alg.tensor_multiply(mu, mu), &alg.tensor_zero())
                    });
                }
                crate::algebra::Rule::Truncated(height) => {
                    self.push('B', format!("power-{}", g.symbol), Some(p), None, || {
                        let mut acc = alg.tensor(&alg.one(), &alg.one());
                        for _ in 0..*height {
                            acc = alg.tensor_multiply(&acc, mu);
                        }
                        mod_mismatch(h, &acc, &alg.tensor_zero())
                    });
                }
            }
        }
    }

    fn check_c(&mut self, h: &HopfAlgebra) {
        let p = h.prime();
        let alg = h.algebra();
        for (i, g) in alg.generators().iter().enumerate() {
            let formula = match g.symbol {
                Symbol::Zeta(z) if h.stored_psi(z).is_some() => {
                    Some(FormulaId::ModPsi { prime: p, zeta: z })
                }
                _ => None,
            };
            let mu = h.generator_coproduct(i);
            self.push(
                'C',
                format!("coassoc-{}", g.symbol),
                Some(p),
                formula,
                || mod_mismatch(h, &h.coproduct_on_left(mu), &h.coproduct_on_right(mu)),
            );
            let gi = alg.generator(i);
            self.push('C', format!("counit-{}", g.symbol), Some(p), None, || {
                let l = h.counit_left(mu);
                let r = h.counit_right(mu);
                let ok = l == gi && r == gi;
                fact(
                    ok,
                    format!("{} ; {}", alg.format(&l), alg.format(&r)),
                    alg.format(&gi),
                    Some(p),
                )
            });
        }
        self.push(
            'C',
            format!("counit-basis-{BASIS_DEGREE}"),
            Some(p),
            None,
            || {
                for d in 0..=BASIS_DEGREE {
                    for m in alg.monomial_basis(d) {
                        let mu = h.coproduct_monomial(&m);
                        let x = Element::from_monomial(alg.field(), m.clone(), 1);
                        if h.counit_left(&mu) != x || h.counit_right(&mu) != x {
                            return fact(false, alg.format(&x), "counit identity", Some(p));
                        }
                    }
                }
                Status::Pass
            },
        );
    }

    fn check_d(&mut self, h: &HopfAlgebra) {
        let p = h.prime();
        let alg = h.algebra();
        self.push(
            'D',
            format!("beta-squared-{BASIS_DEGREE}"),
            Some(p),
            None,
            || {
                for d in 0..=BASIS_DEGREE {
                    for m in alg.monomial_basis(d) {
                        let bb = h.bockstein(&h.bockstein_monomial(&m));
                        if !bb.is_zero() {
                            let x = Element::from_monomial(alg.field(), m, 1);
                            return element_mismatch(h, &bb, &alg.zero())
                                .with_context(&alg.format(&x));
                        }
                    }
                }
                Status::Pass
            },
        );
        self.push(
            'D',
            format!("leibniz-{LEIBNIZ_DEGREE}"),
            Some(p),
            None,
            || {
                let bases: Vec<_> = (0..=LEIBNIZ_DEGREE)
                    .map(|d| alg.monomial_basis(d))
                    .collect();
                for da in 0..=LEIBNIZ_DEGREE {
                    for db in 0..=LEIBNIZ_DEGREE - da {
                        for ma in &bases[da as usize] {
                            let a = Element::from_monomial(alg.field(), ma.clone(), 1);
                            let ba = h.bockstein(&a);
                            for mb in &bases[db as usize] {
                                let b = Element::from_monomial(alg.field(), mb.clone(), 1);
                                let lhs = h.bockstein(&alg.multiply(&a, &b));
                                let mut rhs = alg.multiply(&ba, &b);
                                let sign = if da % 2 == 0 { 1 } else { -1 };
                                rhs.add_scaled(&alg.multiply(&a, &h.bockstein(&b)), sign);
                                if lhs != rhs {
                                    let ctx = format!("{} * {}", alg.format(&a), alg.format(&b));
                                    return element_mismatch(h, &lhs, &rhs).with_context(&ctx);
                                }
                            }
                        }
                    }
                }
                Status::Pass
            },
        );
        for (i, g) in alg.generators().iter().enumerate() {
            self.push('D', format!("natural-{}", g.symbol), Some(p), None, || {
                let lhs = h.coproduct(h.bockstein_generator(i));
                let rhs = h.bockstein_tensor(h.generator_coproduct(i));
                mod_mismatch(h, &lhs, &rhs)
            });
        }
    }

    fn check_e(&mut self) {
        let ring = self.ring;
        for r in &self.entry().relations {
            self.push(
                'E',
                r.id.clone(),
                None,
                Some(FormulaId::Relation(r.id.clone())),
                || {
                    let lhs = ring.embed_terms(&r.lhs);
                    let rhs = ring.embed_terms(&r.rhs);
                    match (lhs, rhs) {
                        (Ok(l), Ok(rr)) => {
                            let lt = IntegralTensor {
                                free: ring.rational().tensor(&l.free, &ring.rational().one()),
                                shadows: l
                                    .shadows
                                    .iter()
                                    .map(|(&p, s)| {
                                        let a = ring.hopf(p).expect("torsion prime").algebra();
                                        (p, a.tensor(s, &a.one()))
                                    })
                                    .collect(),
                            };
                            let rt = IntegralTensor {
                                free: ring.rational().tensor(&rr.free, &ring.rational().one()),
                                shadows: rr
                                    .shadows
                                    .iter()
                                    .map(|(&p, s)| {
                                        let a = ring.hopf(p).expect("torsion prime").algebra();
                                        (p, a.tensor(s, &a.one()))
                                    })
                                    .collect(),
                            };
                            if lt == rt {
                                Status::Pass
                            } else {
                                let mut primes = Vec::new();
                                if l.free != rr.free {
                                    primes.push(0);
                                }
                                primes.extend(
                                    ring.primes()
                                        .map(|h| h.prime())
                                        .filter(|p| l.shadows[p] != rr.shadows[p]),
                                );
                                Status::Mismatch {
                                    lhs: ring.format(&l),
                                    rhs: ring.format(&rr),
                                    primes,
                                }
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => error_status(&e, "relation".into(), None),
                    }
                },
            );
        }
    }

    fn check_f(&mut self) {
        let ring = self.ring;
        for f in &self.entry().psi_formulas {
            let subject = format!("rho{}", f.rho);
            let id = Some(FormulaId::IntegralPsi { rho: f.rho });
            let rho = f.rho;
            let formula = f.formula.clone();
            let mut status = Status::Pass;
            let start = Instant::now();
            let computed = ring
                .embed(&Symbol::Rho(rho))
                .and_then(|z| ring.psi(&z, PsiMode::Generator));
            let stated = ring.eval_formula(&formula);
            match (computed, stated) {
                (Ok(c), Ok(s)) => status = self.integral_status(&c, &s),
                (Err(e), _) | (_, Err(e)) => {
                    status = error_status(&e, "psi".into(), None).or(status)
                }
            }
            let elapsed = start.elapsed().as_micros() as u64;
            self.items.push(CheckItem {
                id: finding_id(self.group, 'F', &subject, None),
                check: 'F',
                subject,
                prime: None,
                formula: id,
                status,
                elapsed_micros: elapsed,
            });
        }
    }

    fn check_g(&mut self) {
        let ring = self.ring;
        let entry = self.entry();
        for s in &entry.primitives {
            self.push(
                'G',
                format!("primitive-{s}"),
                None,
                Some(FormulaId::Primitive(s.clone())),
                || match ring.embed(s).and_then(|z| ring.psi(&z, PsiMode::General)) {
                    Ok(t) => {
                        let zero = ring.tensor_zero();
                        integral_status(ring, &t, &zero)
                    }
                    Err(e) => error_status(&e, "0".into(), None),
                },
            );
        }
        for f in &entry.psi_formulas {
            let sym = Symbol::Rho(f.rho);
            if entry.primitives.contains(&sym) {
                continue;
            }
            let nonzero = ring
                .eval_formula(&f.formula)
                .map(|t| !t.is_zero())
                .unwrap_or(false);
            if !nonzero {
                continue;
            }
            self.push(
                'G',
                format!("nonprimitive-rho{}", f.rho),
                None,
                None,
                || match ring.embed(&sym).and_then(|z| ring.is_primitive(&z)) {
                    Ok(prim) => fact(!prim, "psi = 0", "psi != 0", None),
                    Err(e) => error_status(&e, "psi != 0".into(), None),
                },
            );
        }
        for st in &entry.mod_statements {
            let id = Some(FormulaId::ModStatement {
                prime: st.prime,
                zeta: st.zeta,
            });
            self.push(
                'G',
                format!("stated-psi-zeta{}", st.zeta),
                Some(st.prime),
                id,
                || {
                    let h = match ring.hopf(st.prime) {
                        Ok(h) => h,
                        Err(e) => return error_status(&e, "statement".into(), Some(st.prime)),
                    };
                    let computed = h
                        .symbol(&Symbol::Zeta(st.zeta))
                        .and_then(|z| h.reduced_coproduct(&z));
                    match (computed, h.eval_formula(&st.formula)) {
                        (Ok(c), Ok(s)) => mod_mismatch(h, &c, &s),
                        (Err(e), _) | (_, Err(e)) => {
                            error_status(&e, "statement".into(), Some(st.prime))
                        }
                    }
                },
            );
        }
    }

    fn check_h_k(&mut self, h: &HopfAlgebra) {
        let p = h.prime();
        let ring = self.ring;
        let e = self.entry().e(p).unwrap_or(&[]).to_vec();
        for mask in 1u32..(1 << e.len()) {
            let set: Vec<u32> = (0..e.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| e[i])
                .collect();
            let name = format!(
                "C{}",
                Symbol::C(set.clone()).to_string().trim_start_matches('C')
            );
            self.push('H', name.clone(), Some(p), None, || {
                let c = match h.class_ci(&set) {
                    Ok(c) => c,
                    Err(err) => return error_status(&err, "C_I".into(), Some(p)),
                };
                let natural_l = h.coproduct(&c.image);
                let natural_r = h.bockstein_tensor(&h.coproduct(&c.zeta));
                if natural_l != natural_r {
                    return mod_mismatch(h, &natural_l, &natural_r);
                }
                let computed = ring
                    .embed(&Symbol::C(set.clone()))
                    .and_then(|z| ring.psi(&z, PsiMode::Generator));
                let stated = h.reduced_coproduct(&c.zeta).and_then(|u| ring.delta(p, &u));
                match (computed, stated) {
                    (Ok(a), Ok(b)) => integral_status(ring, &a, &b),
                    (Err(err), _) | (_, Err(err)) => {
                        error_status(&err, "delta psi".into(), Some(p))
                    }
                }
            });
            self.push('K', format!("degree-{name}"), Some(p), None, || {
                match h.class_ci(&set) {
                    Ok(c) => {
                        let direct = h.algebra().degree(&c.zeta).map(|d| d + 1);
                        let image = h.algebra().degree(&c.image);
                        let formula = c_degree(&set);
                        let ok = direct == Some(formula)
                            && (c.image.is_zero() || image == Some(formula));
                        fact(
                            ok,
                            format!("formula {formula}"),
                            format!("direct {direct:?}, image {image:?}"),
                            Some(p),
                        )
                    }
                    Err(err) => error_status(&err, "degree".into(), Some(p)),
                }
            });
        }
        for &s in &e {
            self.push('K', format!("singleton-C{{{s}}}"), Some(p), None, || {
                let c = match h.class_ci(&[s]) {
                    Ok(c) => c,
                    Err(err) => return error_status(&err, "x".into(), Some(p)),
                };
                let x = match h.symbol(&Symbol::X(2 * s)) {
                    Ok(x) => x,
                    Err(err) => return error_status(&err, "x".into(), Some(p)),
                };
                let ok = c.image == x || c.image == x.neg();
                fact(
                    ok,
                    h.algebra().format(&c.image),
                    format!("+-{}", h.algebra().format(&x)),
                    Some(p),
                )
            });
        }
    }

    fn check_i(&mut self) {
        let ring = self.ring;
        let degrees = self.entry().invariant_degrees.clone();
        self.push('I', "rational-poincare", None, None, || {
            let q = ring.rational();
            let top = q.top_degree();
            let mut expect = vec![0usize; top as usize + 1];
            expect[0] = 1;
            for i in &degrees {
                let d = (2 * i - 1) as usize;
                for k in (d..expect.len()).rev() {
                    expect[k] += expect[k - d];
                }
            }
            let got = q.poincare(top);
            fact(
                got == expect,
                format!("{got:?}"),
                format!("{expect:?}"),
                None,
            )
        });
    }

    fn check_j(&mut self, h: &HopfAlgebra) {
        let p = h.prime();
        let entry = self.entry();
        let ring = self.ring;
        self.push('J', "total-dimension", Some(p), None, || {
            let data = entry.mod_p(p).expect("torsion prime");
            let mut count: usize = data.x_heights.iter().map(|&(_, h)| h as usize).product();
            count <<= entry.r(p).map_or(0, <[u32]>::len);
            let alg = h.algebra();
            let enumerated: usize = (0..=alg.top_degree())
                .map(|d| alg.monomial_basis(d).len())
                .sum();
            fact(
                enumerated == count,
                format!("{enumerated} enumerated"),
                format!("{count} counted"),
                Some(p),
            )
        });
        self.push(
            'J',
            format!("bockstein-homology-{BASIS_DEGREE}"),
            Some(p),
            None,
            || {
                let betti = ring.rational().poincare(BASIS_DEGREE);
                let ranks: Vec<usize> = (0..=BASIS_DEGREE)
                    .map(|n| h.bockstein_homology_rank(n))
                    .collect();
                fact(
                    ranks == betti,
                    format!("{ranks:?}"),
                    format!("{betti:?}"),
                    Some(p),
                )
            },
        );
        for t in entry.torsion_presentations.iter().filter(|t| t.prime == p) {
            self.push('J', "torsion-summand", Some(p), None, || {
                let alg = h.algebra();
                let top = alg.top_degree();
                let stated = torsion_series(entry, t, top);
                let image: Vec<usize> = (0..=top).map(|n| h.boundary_rank(n)).collect();
                fact(
                    stated == image,
                    format!("{stated:?}"),
                    format!("{image:?}"),
                    Some(p),
                )
            });
        }
    }
}

trait WithContext {
    fn with_context(self, ctx: &str) -> Status;
}

impl WithContext for Status {
    fn with_context(self, ctx: &str) -> Status {
        match self {
            Status::Mismatch { lhs, rhs, primes } => Status::Mismatch {
                lhs: format!("[{ctx}] {lhs}"),
                rhs,
                primes,
            },
            s => s,
        }
    }
}

impl Status {
    fn or(self, other: Status) -> Status {
        match self {
            Status::Pass => other,
            s => s,
        }
    }
}

/// Poincaré series of a stated torsion summand: positive-degree monomials in
/// the bounded classes avoiding the monomial relations, times square-free
/// monomials in the listed rho-generators.
fn torsion_series(
    entry: &CatalogEntry,
    t: &crate::catalog::TorsionPresentation,
    top: u32,
) -> Vec<usize> {
    let len = top as usize + 1;
    let mut classes = vec![0usize; len];
    let degs: Vec<u32> = t
        .classes
        .iter()
        .map(|(s, _)| entry.symbol_degree(s).unwrap_or(0))
        .collect();
    let bounds: Vec<u32> = t.classes.iter().map(|&(_, h)| h).collect();
    let relations: Vec<Vec<u32>> = t
        .monomial_relations
        .iter()
        .map(|w| {
            t.classes
                .iter()
                .map(|(s, _)| w.iter().filter(|(x, _)| x == s).map(|(_, e)| *e).sum())
                .collect()
        })
        .collect();
    let mut exps = vec![0u32; degs.len()];
    loop {
        let deg: u32 = exps.iter().zip(&degs).map(|(e, d)| e * d).sum();
        let positive = exps.iter().any(|&e| e > 0);
        let killed = relations
            .iter()
            .any(|r| r.iter().zip(&exps).all(|(a, b)| b >= a));
        if positive && !killed && (deg as usize) < len {
            classes[deg as usize] += 1;
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                let mut out = classes;
                for &r in &t.square_free {
                    for k in (r as usize..len).rev() {
                        out[k] += out[k - r as usize];
                    }
                }
                return out;
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Runs checks A–K on a catalog entry.
pub fn run_suite_on(entry: CatalogEntry) -> CheckReport {
    let group = entry.group;
    let ring = match IntegralRing::new(Arc::new(entry)) {
        Ok(r) => r,
        Err(e) => {
            return CheckReport {
                group,
                catalog_version: CATALOG_VERSION.into(),
                items: vec![CheckItem {
                    id: finding_id(group, 'A', "catalog", None),
                    check: 'A',
                    subject: "catalog".into(),
                    prime: None,
                    formula: None,
                    status: error_status(&e, "valid catalog".into(), None),
                    elapsed_micros: 0,
                }],
            }
        }
    };
    let mut suite = Suite {
        group,
        ring: &ring,
        items: Vec::new(),
    };
    suite.check_a();
    for h in ring.primes() {
        suite.check_b(h);
        suite.check_c(h);
        suite.check_d(h);
    }
    suite.check_e();
    suite.check_f();
    suite.check_g();
    for h in ring.primes() {
        suite.check_h_k(h);
    }
    suite.check_i();
    for h in ring.primes() {
        suite.check_j(h);
    }
    let mut items = suite.items;
    items.sort_by(|a, b| (a.check, &a.id).cmp(&(b.check, &b.id)));
    let report = CheckReport {
        group,
        catalog_version: CATALOG_VERSION.into(),
        items,
    };
    assert_complete(ring.entry(), &report);
    report
}

/// Every catalogued formula is attached to exactly one item.
fn assert_complete(entry: &CatalogEntry, report: &CheckReport) {
    let mut seen: BTreeMap<&FormulaId, usize> = BTreeMap::new();
    for i in &report.items {
        if let Some(f) = &i.formula {
            *seen.entry(f).or_default() += 1;
        }
    }
    let census = entry.formula_census();
    assert!(
        seen.values().all(|&n| n == 1),
        "{}: a formula is checked twice",
        entry.group
    );
    let checked: BTreeSet<FormulaId> = seen.keys().map(|f| (*f).clone()).collect();
    assert_eq!(
        checked, census,
        "{}: checked formulas differ from the census",
        entry.group
    );
}

pub fn run_suite(group: Group) -> CheckReport {
    match entry(group) {
        Ok(e) => run_suite_on(e),
        Err(e) => CheckReport {
            group,
            catalog_version: CATALOG_VERSION.into(),
            items: vec![CheckItem {
                id: finding_id(group, 'A', "catalog", None),
                check: 'A',
                subject: "catalog".into(),
                prime: None,
                formula: None,
                status: error_status(&e, "valid catalog".into(), None),
                elapsed_micros: 0,
            }],
        },
    }
}

/// All five groups, one thread each, in group order.
pub fn run_all() -> Vec<CheckReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = Group::ALL
            .iter()
            .map(|&g| s.spawn(move || run_suite(g)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread"))
            .collect()
    })
}

/// Whether a formula term contributes nothing in any component, so that
/// changing its coefficient cannot be observed.
pub fn is_neutral_site(entry: &CatalogEntry, site: &crate::catalog::CoefficientSite) -> bool {
    use crate::catalog::CoefficientSite as S;
    let Ok(ring) = IntegralRing::new(Arc::new(entry.clone())) else {
        return false;
    };
    let bock_neutral =
        |h: &HopfAlgebra, f: &crate::notation::Formula, term: usize, inner: Option<usize>| match (
            &f[term], inner,
        ) {
            (FormulaTerm::Tensor(t), _) => h
                .eval_tensor_terms(std::slice::from_ref(t))
                .map(|v| v.is_zero())
                .unwrap_or(false),
            (FormulaTerm::Bock { inner: terms, .. }, None) => h
                .eval_tensor_terms(terms)
                .map(|u| h.bockstein_tensor(&u).is_zero())
                .unwrap_or(false),
            (FormulaTerm::Bock { inner: terms, .. }, Some(i)) => h
                .eval_tensor_terms(std::slice::from_ref(&terms[i]))
                .map(|u| h.bockstein_tensor(&u).is_zero())
                .unwrap_or(false),
        };
    match *site {
        S::Reduction { row, term } => {
            let r = &entry.reductions[row];
            ring.hopf(r.prime)
                .and_then(|h| terms_element(h.algebra(), std::slice::from_ref(&r.image[term])))
                .map(|v| v.is_zero())
                .unwrap_or(false)
        }
        S::ModPsi {
            algebra,
            entry: e,
            term,
            inner,
        } => {
            let m = &entry.mod_p[algebra];
            ring.hopf(m.prime)
                .map(|h| bock_neutral(h, &m.psi[e].formula, term, inner))
                .unwrap_or(false)
        }
        S::ModStatement {
            statement,
            term,
            inner,
        } => {
            let s = &entry.mod_statements[statement];
            ring.hopf(s.prime)
                .map(|h| bock_neutral(h, &s.formula, term, inner))
                .unwrap_or(false)
        }
        S::Relation {
            relation,
            rhs,
            term,
        } => {
            let r = &entry.relations[relation];
            let side = if rhs { &r.rhs } else { &r.lhs };
            ring.embed_terms(std::slice::from_ref(&side[term]))
                .map(|v| v.is_zero())
                .unwrap_or(false)
        }
        S::IntegralPsi {
            formula,
            term,
            inner,
        } => {
            let f = &entry.psi_formulas[formula].formula;
            let single = match (&f[term], inner) {
                (FormulaTerm::Tensor(_), _) | (FormulaTerm::Bock { .. }, None) => {
                    vec![f[term].clone()]
                }
                (
                    FormulaTerm::Bock {
                        prime,
                        coeff,
                        inner: terms,
                    },
                    Some(i),
                ) => {
                    vec![FormulaTerm::Bock {
                        prime: *prime,
                        coeff: *coeff,
                        inner: vec![terms[i].clone()],
                    }]
                }
            };
            ring.eval_formula(&single)
                .map(|v| v.is_zero())
                .unwrap_or(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allow_list_parsing() {
        let a = AllowList::parse("# findings\nE7/F/rho15/3\n\n  G2/C/coassoc-zeta3/2  # note\n")
            .unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.contains("E7/F/rho15/3"));
        assert!(AllowList::parse("E7/F/rho15").is_err());
        assert!(AllowList::parse("E9/F/rho15/3").is_err());
    }

    #[test]
    fn g2_suite_passes() {
        let r = run_suite(Group::G2);
        assert!(r.mismatches().next().is_none(), "{r}");
        assert!(r.item("G2/F/rho11/Z").is_some());
    }

    #[test]
    fn torsion_series_of_g2() {
        let e = entry(Group::G2).unwrap();
        let s = torsion_series(&e, &e.torsion_presentations[0], 14);
        let nonzero: Vec<usize> = (0..=14).filter(|&d| s[d] > 0).collect();
        assert_eq!(nonzero, [6, 9]);
    }
}
