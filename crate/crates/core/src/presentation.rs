//! Concrete algebras built from catalog entries.

use crate::algebra::{
    Algebra, Element, Field, GeneratorSpec, Monomial, Rule, Symbol, TorsionOrder,
};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::notation::{Term, Word};

/// Which model to build for a prime without torsion in the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Model {
    /// Only catalogued torsion pairs are accepted.
    #[default]
    Strict,
    /// A prime without torsion yields the exterior algebra on `zeta_{2i-1}`,
    /// `i` in the invariant degrees.
    AllowExterior,
}

fn unknown_pair(entry: &CatalogEntry, field: Field) -> Error {
    Error::UnknownPair {
        group: entry.group,
        coeff: field.to_string(),
    }
}

/// The presentation of `H*(G;F_p)` or of the free part `H*(G;Q)`.
pub fn make_algebra(entry: &CatalogEntry, field: Field, model: Model) -> Result<Algebra> {
    match field {
        Field::Rational => {
            let gens = entry
                .rho_generators()
                .into_iter()
                .map(|d| GeneratorSpec {
                    symbol: Symbol::Rho(d),
                    degree: d,
                    rule: Rule::Exterior,
                    torsion_order: TorsionOrder::Infinite,
                })
                .collect();
            Algebra::new(entry.group, field, gens)
        }
        Field::Prime(p) if ![2, 3, 5].contains(&p) => Err(unknown_pair(entry, field)),
        Field::Prime(p) => match entry.mod_p(p) {
            Some(data) => {
                let mut specs: Vec<GeneratorSpec> = data
                    .x_heights
                    .iter()
                    .map(|&(i, h)| GeneratorSpec {
                        symbol: Symbol::X(i),
                        degree: i,
                        rule: Rule::Truncated(h),
                        torsion_order: TorsionOrder::Finite(p),
                    })
                    .collect();
                let r = entry.r(p).expect("mod-p data implies torsion");
                let mut zetas: Vec<u32> = r.iter().map(|s| 2 * s - 1).collect();
                zetas.sort_unstable();
                for z in zetas {
                    specs.push(GeneratorSpec {
                        symbol: Symbol::Zeta(z),
                        degree: z,
                        rule: Rule::Exterior,
                        torsion_order: TorsionOrder::Finite(p),
                    });
                }
                // square targets only involve x-generators, so they can be
                // written down against the final generator list directly
                let symbols: Vec<Symbol> = specs.iter().map(|g| g.symbol.clone()).collect();
                for sq in &data.squares {
                    let mut target = Element::zero(field);
                    for t in &sq.target {
                        let mut exps = vec![0u8; symbols.len()];
                        for (s, e) in &t.word {
                            let i = symbols
                                .iter()
                                .position(|x| x == s)
                                .ok_or_else(|| Error::unknown(s))?;
                            exps[i] += *e as u8;
                        }
                        target.add_term(Monomial(exps), t.coeff);
                    }
                    let i = symbols
                        .iter()
                        .position(|x| *x == Symbol::Zeta(sq.zeta))
                        .ok_or_else(|| Error::unknown(&Symbol::Zeta(sq.zeta)))?;
                    specs[i].rule = Rule::SquareTo(target);
                }
                Algebra::new(entry.group, field, specs)
            }
            None if model == Model::AllowExterior => {
                let gens = entry
                    .rho_generators()
                    .into_iter()
                    .map(|d| GeneratorSpec {
                        symbol: Symbol::Zeta(d),
                        degree: d,
                        rule: Rule::Exterior,
                        torsion_order: TorsionOrder::Finite(p),
                    })
                    .collect();
                Algebra::new(entry.group, field, gens)
            }
            None => Err(unknown_pair(entry, field)),
        },
    }
}

/// The product of a word's factors, multiplied in the written order.
pub fn word_element(alg: &Algebra, word: &Word) -> Result<Element> {
    let mut out = alg.one();
    for (s, e) in word {
        let g = alg
            .generator_by_symbol(s)
            .ok_or_else(|| Error::unknown(s))?;
        out = alg.multiply(&out, &alg.power(&g, *e));
    }
    Ok(out)
}

pub fn terms_element(alg: &Algebra, terms: &[Term]) -> Result<Element> {
    let mut out = alg.zero();
    for t in terms {
        out.add_scaled(&word_element(alg, &t.word)?, t.coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::group::Group;

    fn names(alg: &Algebra) -> Vec<String> {
        alg.generators()
            .iter()
            .map(|g| g.symbol.to_string())
            .collect()
    }

    #[test]
    fn g2_mod_2() {
        let alg = make_algebra(&entry(Group::G2).unwrap(), Field::Prime(2), Model::Strict).unwrap();
        assert_eq!(names(&alg), ["x6", "zeta3", "zeta5"]);
        assert_eq!(alg.generators()[0].rule, Rule::Truncated(2));
        let z3 = alg.generator(1);
        assert_eq!(alg.multiply(&z3, &z3), alg.generator(0));
        assert_eq!(alg.generators()[2].rule, Rule::Exterior);
        assert_eq!(alg.total_dimension(), 8);
        assert_eq!(alg.monomial_basis(11), vec![Monomial(vec![1, 0, 1])]);
    }

    #[test]
    fn e8_mod_5() {
        let alg = make_algebra(&entry(Group::E8).unwrap(), Field::Prime(5), Model::Strict).unwrap();
        assert_eq!(
            names(&alg),
            [
                "x12", "zeta3", "zeta11", "zeta15", "zeta23", "zeta27", "zeta35", "zeta39",
                "zeta47"
            ]
        );
        assert_eq!(alg.generators()[0].rule, Rule::Truncated(5));
        assert!(alg.generators()[1..]
            .iter()
            .all(|g| g.rule == Rule::Exterior));
    }

    #[test]
    fn rational_and_unknown_pairs() {
        let g2 = entry(Group::G2).unwrap();
        let q = make_algebra(&g2, Field::Rational, Model::Strict).unwrap();
        assert_eq!(names(&q), ["rho3", "rho11"]);
        let dims = q.poincare(14);
        let nonzero: Vec<usize> = (0..=14).filter(|&d| dims[d] > 0).collect();
        assert_eq!(nonzero, [0, 3, 11, 14]);
        assert!(matches!(
            make_algebra(&g2, Field::Prime(5), Model::Strict),
            Err(Error::UnknownPair { .. })
        ));
        let ext = make_algebra(&g2, Field::Prime(3), Model::AllowExterior).unwrap();
        assert_eq!(names(&ext), ["zeta3", "zeta11"]);
        assert!(make_algebra(&g2, Field::Prime(7), Model::AllowExterior).is_err());
    }

    #[test]
    fn squares_and_counts() {
        let e8 = make_algebra(&entry(Group::E8).unwrap(), Field::Prime(2), Model::Strict).unwrap();
        let z23 = e8.generator_by_symbol(&Symbol::Zeta(23)).unwrap();
        let x6 = e8.generator_by_symbol(&Symbol::X(6)).unwrap();
        let x10 = e8.generator_by_symbol(&Symbol::X(10)).unwrap();
        assert_eq!(
            e8.multiply(&z23, &z23),
            e8.multiply(&e8.power(&x6, 6), &x10)
        );
        let f4 = make_algebra(&entry(Group::F4).unwrap(), Field::Prime(3), Model::Strict).unwrap();
        assert_eq!(f4.total_dimension(), 48);
    }
}
