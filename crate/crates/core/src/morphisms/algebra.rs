//! The real endomorphism algebra `End(A)` with rational structure
//! constants, its radical and a locality test.

use num_traits::Zero;
use serde::Serialize;

use super::poly::{has_negative_discriminant, QPoly};
use super::{hom_basis, MorphismBasis};
use crate::error::Result;
use crate::linalg::{kernel, solve, QMatrix};
use crate::matrix::CMatrix;
use crate::representation::MatrixRepresentation;
use crate::scalar::{int, Rational};

#[derive(Clone, Debug)]
pub struct EndAlgebra {
    basis: MorphismBasis,
    /// `b_i·b_j = Σ_k structure[i][j][k]·b_k`, where `·` is composition
    /// (`b_j` first).
    structure: Vec<Vec<Vec<Rational>>>,
    identity: Vec<Rational>,
}

/// What the radical quotient `End/rad` reveals about locality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalTest {
    /// `End/rad ≅ ℝ`: local.
    Real,
    /// `End/rad ≅ ℂ`: local.
    Complex,
    /// `End/rad ≅ ℝ × ℝ`: not local.
    Split,
    /// Quotient of dimension ≥ 3 (or a zero algebra); not decided here.
    Undecided,
}

impl LocalTest {
    pub fn is_local(self) -> bool {
        matches!(self, LocalTest::Real | LocalTest::Complex)
    }
}

pub fn end_algebra(a: &MatrixRepresentation) -> Result<EndAlgebra> {
    let basis = hom_basis(a, a)?;
    let n = basis.dim();
    let mut structure = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<CMatrix> = basis.basis()[i].iter().zip(&basis.basis()[j]).map(|(x, y)| x * y).collect();
            structure[i][j] = basis.coordinates(&prod).expect("End is closed under composition");
        }
    }
    let id: Vec<CMatrix> = a.dims().0.iter().map(|&d| CMatrix::identity(d)).collect();
    let identity = basis.coordinates(&id).expect("identity is an endomorphism");
    Ok(EndAlgebra { basis, structure, identity })
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &MorphismBasis {
        &self.basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.structure
    }

    pub fn identity(&self) -> &[Rational] {
        &self.identity
    }

    /// The endomorphism tuple with the given coordinates.
    pub fn element(&self, coords: &[Rational]) -> Vec<CMatrix> {
        self.basis.combine(coords)
    }

    /// Matrix of left multiplication by `x`.
    fn left_mul(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        m
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.left_mul(x).apply(y)
    }

    /// Monic minimal polynomial of `x` over ℚ.
    pub fn minimal_polynomial(&self, x: &[Rational]) -> QPoly {
        let l = self.left_mul(x);
        let mut powers = vec![self.identity.clone()];
        loop {
            let next = l.apply(powers.last().expect("nonempty"));
            let k = powers.len();
            let mut cols = QMatrix::zeros(self.dim(), k);
            for (j, p) in powers.iter().enumerate() {
                for (i, v) in p.iter().enumerate() {
                    cols[(i, j)] = v.clone();
                }
            }
            if let Some(c) = solve(&cols, &next) {
                let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
                coeffs.push(int(1));
                return QPoly::new(coeffs);
            }
            powers.push(next);
        }
    }

    /// `p(x)` in coordinates.
    pub fn eval_poly(&self, p: &QPoly, x: &[Rational]) -> Vec<Rational> {
        let l = self.left_mul(x);
        let mut acc = vec![int(0); self.dim()];
        for c in p.coeffs().iter().rev() {
            acc = l.apply(&acc);
            for (a, e) in acc.iter_mut().zip(&self.identity) {
                *a += c * e;
            }
        }
        acc
    }

    /// Basis of the Jacobson radical: the kernel of the trace form
    /// `(x, y) ↦ tr(L_x·L_y)` (valid in characteristic zero).
    pub fn radical(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mults: Vec<QMatrix> = (0..n)
            .map(|i| {
                let mut e = vec![int(0); n];
                e[i] = int(1);
                self.left_mul(&e)
            })
            .collect();
        let mut form = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut t = Rational::zero();
                for r in 0..n {
                    for s in 0..n {
                        let a = &mults[i][(r, s)];
                        if !a.is_zero() {
                            t += a * &mults[j][(s, r)];
                        }
                    }
                }
                form[(i, j)] = t.clone();
                form[(j, i)] = t;
            }
        }
        kernel(&form).basis
    }

    pub fn local_test(&self) -> LocalTest {
        let n = self.dim();
        let rad = self.radical();
        match n - rad.len() {
            1 => LocalTest::Real,
            2 => {
                // x outside span(1, rad); find x² ≡ βx + γ mod rad
                let span_rank = |vs: &[&Vec<Rational>]| {
                    let mut m = QMatrix::zeros(vs.len(), n);
                    for (r, v) in vs.iter().enumerate() {
                        for (c, e) in v.iter().enumerate() {
                            m[(r, c)] = e.clone();
                        }
                    }
                    m.rank()
                };
                let mut base: Vec<&Vec<Rational>> = rad.iter().collect();
                base.push(&self.identity);
                let base_rank = span_rank(&base);
                let unit = |i: usize| {
                    let mut e = vec![int(0); n];
                    e[i] = int(1);
                    e
                };
                let x = (0..n).map(unit).find(|e| {
                    let mut with = base.clone();
                    with.push(e);
                    span_rank(&with) > base_rank
                });
                let Some(x) = x else { return LocalTest::Undecided };
                let x2 = self.mul(&x, &x);
                let mut m = QMatrix::zeros(n, 2 + rad.len());
                for i in 0..n {
                    m[(i, 0)] = x[i].clone();
                    m[(i, 1)] = self.identity[i].clone();
                    for (j, r) in rad.iter().enumerate() {
                        m[(i, 2 + j)] = r[i].clone();
                    }
                }
                let Some(sol) = solve(&m, &x2) else { return LocalTest::Undecided };
                let (beta, gamma) = (&sol[0], &sol[1]);
                if has_negative_discriminant(&-beta, &-gamma) {
                    LocalTest::Complex
                } else {
                    LocalTest::Split
                }
            }
            _ => LocalTest::Undecided,
        }
    }

    /// Coordinates of an endomorphism tuple.
    pub fn coordinates(&self, f: &[CMatrix]) -> Option<Vec<Rational>> {
        self.basis.coordinates(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Biquiver;

    fn loop_rep(dashed: bool, m: CMatrix) -> MatrixRepresentation {
        let g = Biquiver::from_edges(1, &[(1, 1, dashed)]).unwrap();
        MatrixRepresentation::new(g, vec![m.rows()].into(), vec![m]).unwrap()
    }

    #[test]
    fn complex_numbers_from_zero_loop() {
        let e = end_algebra(&loop_rep(false, CMatrix::zeros(1, 1))).unwrap();
        assert_eq!(e.dim(), 2);
        // the non-identity basis element squares to −1
        let i_coords: Vec<Rational> = (0..2).map(|k| if e.identity()[k].is_zero() { int(1) } else { int(0) }).collect();
        let sq = e.mul(&i_coords, &i_coords);
        let minus_one: Vec<Rational> = e.identity().iter().map(|x| -x).collect();
        assert_eq!(sq, minus_one);
        assert_eq!(e.local_test(), LocalTest::Complex);
    }

    #[test]
    fn algebra_examples() {
        let r = end_algebra(&loop_rep(true, CMatrix::from_ints(&[&[1]]))).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.local_test(), LocalTest::Real);

        let d = end_algebra(&loop_rep(false, CMatrix::from_ints(&[&[1, 0], &[0, 2]]))).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(d.radical().is_empty());
        assert_eq!(d.local_test(), LocalTest::Undecided);

        let j = end_algebra(&loop_rep(false, CMatrix::from_ints(&[&[0, 1], &[0, 0]]))).unwrap();
        assert_eq!(j.dim(), 4);
        assert_eq!(j.radical().len(), 2);
        assert_eq!(j.local_test(), LocalTest::Complex);

        // consimilarity class of 0 in dimension 1 over a dashed loop: End = ℂ
        let z = end_algebra(&loop_rep(true, CMatrix::zeros(1, 1))).unwrap();
        assert_eq!(z.local_test(), LocalTest::Complex);
    }

    #[test]
    fn associativity() {
        let g = Biquiver::from_edges(2, &[(1, 2, true), (1, 2, false)]).unwrap();
        let a = crate::representation::random_representation(&g, &vec![1, 2].into(), 2, 3).unwrap();
        let e = end_algebra(&a).unwrap();
        let n = e.dim();
        let unit = |i: usize| (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect::<Vec<_>>();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
                }
            }
        }
        let p = e.minimal_polynomial(&e.identity().to_vec());
        assert_eq!(p.degree(), Some(1));
    }
}
