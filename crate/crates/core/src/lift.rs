//! Exact preimages under the tensor Bockstein.
//!
//! Every torsion class of `H*(G x G)` has order `p`, so its mod-p image lies
//! in the image of the tensor Bockstein and determines it. To decide
//! membership and produce a preimage, each degree of `A = H*(G;F_p)` is
//! split as `A_n = H_n + B_n + C_n` with `B_n = im beta`, `H_n + B_n = ker beta`
//! and `beta: C_n -> B_{n+1}` an isomorphism. Let `ip` project onto `H` and
//! let `h` invert `beta` on `B` (zero on `H + C`). Then
//! `beta h + h beta = 1 - ip`, and on tensors
//! `H(a (x) b) = h(a) (x) b + (-1)^|a| ip(a) (x) h(b)` satisfies
//! `beta H + H beta = 1 - ip (x) ip`. A cycle `t` is a boundary iff
//! `(ip (x) ip) t = 0`, in which case `beta(H t) = t`.
//!
//! The per-degree data are built on first use and then shared read-only.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::tensor::TensorElement;

#[derive(Debug)]
struct Degree {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Basis positions whose Bocksteins are independent; they span `C_n`.
    pivots: Vec<usize>,
}

#[derive(Debug)]
struct Split {
    /// Inverse of the change of basis `[H | B | C]`.
    inverse: Vec<Vec<i64>>,
    harmonic: Vec<Vec<i64>>,
    /// For the k-th basis vector of `B_n`, its preimage monomial in degree `n-1`.
    preimages: Vec<Monomial>,
}

#[derive(Debug)]
pub struct Contraction {
    degrees: Vec<OnceLock<Degree>>,
    splits: Vec<OnceLock<Split>>,
}

impl Contraction {
    pub(crate) fn new(top_degree: u32) -> Contraction {
        let n = top_degree as usize + 2;
        Contraction {
            degrees: (0..n).map(|_| OnceLock::new()).collect(),
            splits: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }
}

fn modp(c: i64, p: i64) -> i64 {
    c.rem_euclid(p)
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    // p is prime, so a^(p-2) inverts a
    let mut r = 1;
    for _ in 0..p - 2 {
        r = r * a % p;
    }
    r
}

/// Incremental row echelon form over `F_p`, used for independence tests.
struct Echelon {
    p: i64,
    rows: Vec<(usize, Vec<i64>)>,
}

impl Echelon {
    fn new(p: i64) -> Echelon {
        Echelon {
            p,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [i64]) {
        for (lead, row) in &self.rows {
            let c = v[*lead];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = modp(*x - c * r, self.p);
                }
            }
        }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<i64>) -> bool {
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inverse_mod(v[lead], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[lead];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = modp(*x - c * r, self.p);
                }
            }
        }
        self.rows.push((lead, v));
        true
    }
}

/// Kernel basis of the linear map whose columns are `cols` (each of length `rows`).
fn kernel(cols: &[Vec<i64>], rows: usize, p: i64) -> Vec<Vec<i64>> {
    let n = cols.len();
    let mut m: Vec<Vec<i64>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inverse_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = modp(*x - f * y, p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = modp(-m[i][free], p);
        }
        out.push(v);
    }
    out
}

/// Inverse of a square matrix given by columns, or `None` if singular.
fn invert(cols: &[Vec<i64>], p: i64) -> Option<Vec<Vec<i64>>> {
    let n = cols.len();
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            let mut row: Vec<i64> = cols.iter().map(|c| c[r]).collect();
            row.extend((0..n).map(|j| i64::from(j == r)));
            row
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| m[i][c] != 0)?;
        m.swap(c, pr);
        let inv = inverse_mod(m[c][c], p);
        for x in m[c].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != c && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = modp(*x - f * y, p);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl HopfAlgebra {
    fn p(&self) -> i64 {
        self.prime() as i64
    }

    fn degree_data(&self, n: u32) -> Option<&Degree> {
        let slot = self.contraction.degrees.get(n as usize)?;
        Some(slot.get_or_init(|| {
            let basis = self.algebra().monomial_basis(n);
            let index = basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let mut pivots = Vec::new();
            let mut ech = Echelon::new(self.p());
            if let Some(next) = self.degree_data_basis(n + 1) {
                for (j, m) in basis.iter().enumerate() {
                    let v = self.to_vector(&self.bockstein_monomial(m), &next);
                    if ech.insert(v) {
                        pivots.push(j);
                    }
                }
            }
            Degree {
                basis,
                index,
                pivots,
            }
        }))
    }

    /// Basis index of degree `n` without computing its pivots.
    fn degree_data_basis(&self, n: u32) -> Option<HashMap<Monomial, usize>> {
        if n as usize >= self.contraction.degrees.len() {
            return None;
        }
        if let Some(d) = self.contraction.degrees[n as usize].get() {
            return Some(d.index.clone());
        }
        Some(
            self.algebra()
                .monomial_basis(n)
                .into_iter()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect(),
        )
    }

    fn to_vector(&self, e: &Element, index: &HashMap<Monomial, usize>) -> Vec<i64> {
        let mut v = vec![0; index.len()];
        for (m, c) in e.terms() {
            v[index[m]] = c;
        }
        v
    }

    fn split(&self, n: u32) -> Option<&Split> {
        let slot = self.contraction.splits.get(n as usize)?;
        Some(slot.get_or_init(|| {
            let p = self.p();
            let here = self.degree_data(n).expect("degree in range");
            let dim = here.basis.len();
            // B_n: images of the pivots one degree down
            let mut boundary = Vec::new();
            let mut preimages = Vec::new();
            if n > 0 {
                let below = self.degree_data(n - 1).expect("degree in range");
                for &j in &below.pivots {
                    let m = &below.basis[j];
                    boundary.push(self.to_vector(&self.bockstein_monomial(m), &here.index));
                    preimages.push(m.clone());
                }
            }
            // H_n: extend B_n to a basis of the cycles
            let cols: Vec<Vec<i64>> = match self.degree_data_basis(n + 1) {
                Some(next) => here
                    .basis
                    .iter()
                    .map(|m| self.to_vector(&self.bockstein_monomial(m), &next))
                    .collect(),
                None => vec![Vec::new(); dim],
            };
            let rows = cols.first().map_or(0, Vec::len);
            let cycles = kernel(&cols, rows, p);
            let mut ech = Echelon::new(p);
            for b in &boundary {
                assert!(ech.insert(b.clone()), "boundary basis is independent");
            }
            let mut harmonic = Vec::new();
            for z in cycles {
                if ech.insert(z.clone()) {
                    harmonic.push(z);
                }
            }
            let mut change: Vec<Vec<i64>> = harmonic.clone();
            change.extend(boundary.iter().cloned());
            for &j in &here.pivots {
                let mut e = vec![0; dim];
                e[j] = 1;
                change.push(e);
            }
            assert_eq!(change.len(), dim, "H + B + C spans degree {n}");
            let inverse = invert(&change, p).expect("H + B + C is a basis");
            Split {
                inverse,
                harmonic,
                preimages,
            }
        }))
    }

    /// Coordinates of a monomial in the basis `[H | B | C]` of its degree.
    fn coordinates(&self, m: &Monomial) -> (&Split, Vec<i64>) {
        let n = self.algebra().monomial_degree(m);
        let here = self.degree_data(n).expect("degree in range");
        let split = self.split(n).expect("degree in range");
        let j = here.index[m];
        (split, split.inverse.iter().map(|row| row[j]).collect())
    }

    /// Projection onto the chosen complement of the boundaries in the cycles.
    pub fn harmonic_projection(&self, m: &Monomial) -> Element {
        let n = self.algebra().monomial_degree(m);
        let here = self.degree_data(n).expect("degree in range");
        let (split, coords) = self.coordinates(m);
        let mut out = self.algebra().zero();
        for (k, z) in split.harmonic.iter().enumerate() {
            if coords[k] != 0 {
                for (j, &c) in z.iter().enumerate() {
                    out.add_term(here.basis[j].clone(), coords[k] * c);
                }
            }
        }
        out
    }

    /// The homotopy `h`: inverse Bockstein on boundaries, zero elsewhere.
    pub fn homotopy(&self, m: &Monomial) -> Element {
        let (split, coords) = self.coordinates(m);
        let nh = split.harmonic.len();
        let mut out = self.algebra().zero();
        for (k, pre) in split.preimages.iter().enumerate() {
            out.add_term(pre.clone(), coords[nh + k]);
        }
        out
    }

    /// Dimension of the Bockstein cohomology in degree `n`.
    pub fn bockstein_homology_rank(&self, n: u32) -> usize {
        self.split(n).map_or(0, |s| s.harmonic.len())
    }

    /// Dimension of the image of the Bockstein in degree `n`.
    pub fn boundary_rank(&self, n: u32) -> usize {
        self.split(n).map_or(0, |s| s.preimages.len())
    }

    fn tensor_homotopy(&self, t: &TensorElement) -> TensorElement {
        let alg = self.algebra();
        let mut out = alg.tensor_zero();
        for (k, c) in t.terms() {
            let ha = self.homotopy(&k[0]);
            let b = Element::from_monomial(alg.field(), k[1].clone(), 1);
            out.add_scaled(&alg.tensor(&ha, &b), c);
            let hb = self.homotopy(&k[1]);
            if !hb.is_zero() {
                let ia = self.harmonic_projection(&k[0]);
                let sign = if alg.monomial_degree(&k[0]).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                out.add_scaled(&alg.tensor(&ia, &hb), c * sign);
            }
        }
        out
    }

    fn harmonic_part(&self, t: &TensorElement) -> TensorElement {
        let alg = self.algebra();
        let mut out = alg.tensor_zero();
        for (k, c) in t.terms() {
            let a = self.harmonic_projection(&k[0]);
            if a.is_zero() {
                continue;
            }
            let b = self.harmonic_projection(&k[1]);
            out.add_scaled(&alg.tensor(&a, &b), c);
        }
        out
    }

    /// Whether `t` lies in the image of the tensor Bockstein.
    pub fn in_bockstein_image(&self, t: &TensorElement) -> bool {
        self.bockstein_tensor(t).is_zero() && self.harmonic_part(t).is_zero()
    }

    /// Some `u` with `beta(u) = t`.
    pub fn bockstein_preimage(&self, t: &TensorElement) -> Result<TensorElement> {
        if t.is_zero() {
            return Ok(self.algebra().tensor_zero());
        }
        let degree = self
            .algebra()
            .tensor_total_degree(t)
            .ok_or(Error::NonHomogeneous)?;
        if !self.in_bockstein_image(t) {
            return Err(Error::NotInTorsionImage {
                prime: self.prime(),
                degree,
            });
        }
        let u = self.tensor_homotopy(t);
        assert_eq!(&self.bockstein_tensor(&u), t, "contraction identity");
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::entry;
    use crate::group::Group;
    use crate::notation::parse_tensor_terms;
    use crate::presentation::Model;

    fn hopf(g: Group, p: u32) -> HopfAlgebra {
        HopfAlgebra::new(Arc::new(entry(g).unwrap()), p, Model::Strict).unwrap()
    }

    fn ten(h: &HopfAlgebra, s: &str) -> TensorElement {
        h.eval_tensor_terms(&parse_tensor_terms(s).unwrap())
            .unwrap()
    }

    #[test]
    fn lifts_a_boundary() {
        let g2 = hopf(Group::G2, 2);
        let t = ten(&g2, "x6 (x) zeta5 + zeta5 (x) x6");
        let u = g2.bockstein_preimage(&t).unwrap();
        assert_eq!(g2.bockstein_tensor(&u), t);
        assert!(g2
            .bockstein_preimage(&g2.algebra().tensor_zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rejects_non_boundaries() {
        let g2 = hopf(Group::G2, 2);
        // a cycle carrying Bockstein cohomology
        let t = ten(&g2, "zeta3 (x) zeta3");
        assert!(matches!(
            g2.bockstein_preimage(&t),
            Err(Error::NotInTorsionImage {
                prime: 2,
                degree: 6
            })
        ));
        // not even a cycle
        let t = ten(&g2, "zeta5 (x) zeta3");
        assert!(g2.bockstein_preimage(&t).is_err());
    }

    #[test]
    fn torsion_tensor_is_a_boundary() {
        let f4 = hopf(Group::F4, 3);
        let t = ten(&f4, "x8 (x) zeta3");
        assert!(f4.in_bockstein_image(&t));
    }

    #[test]
    fn homology_matches_rational_ranks() {
        // Bockstein cohomology of G2 mod 2 is an exterior algebra on classes of degree 3 and 11
        let g2 = hopf(Group::G2, 2);
        let ranks: Vec<usize> = (0..=14).map(|n| g2.bockstein_homology_rank(n)).collect();
        let expect: Vec<usize> = (0..=14)
            .map(|n| usize::from([0, 3, 11, 14].contains(&n)))
            .collect();
        assert_eq!(ranks, expect);
    }
}
