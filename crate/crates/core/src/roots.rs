//! Nonnegative integer vectors on a level set of the Tits form.
//!
//! Enumeration is a depth-first search over `z_1, z_2, …` in increasing
//! order. At depth `k` the unfixed coordinates are minimised out over the
//! reals: when the trailing principal block `R` of the Gram matrix is
//! positive definite, `min_y q(x, y)` is the quadratic form given by the
//! Schur complement `Q_xx − Q_xy R⁻¹ Q_yx`. It is a lower bound for every
//! completion, so a branch is cut as soon as it exceeds the target value.
//! For positive definite forms every level is bounded this way and the
//! search needs no external bound.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::classifier::{representation_type, RepKind};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::model::{Biquiver, DimensionVector};
use crate::scalar::{int, Rational};
use crate::tits::{definiteness, gram_matrix, Definiteness, TitsGram};

/// All nonzero `z ≥ 0` with `q_G(z) = value`, in lexicographic order.
///
/// `bound` caps every coordinate; it is ignored for positive definite
/// forms (the level set is finite) and required otherwise.
pub fn roots_with_value(g: &Biquiver, value: i64, bound: Option<usize>) -> Result<Vec<DimensionVector>> {
    g.require_connected()?;
    let gram = gram_matrix(g);
    let bound = match definiteness(&gram) {
        Definiteness::PositiveDefinite => None,
        _ if bound.is_none() => {
            return Err(Error::BoundRequired("the Tits form is not positive definite"));
        }
        _ => bound,
    };
    let search = Search::new(&gram, value, bound);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(gram.size());
    search.descend(&mut prefix, &mut out);
    debug_assert!(out.iter().all(|z| crate::tits::evaluate(g, z).ok() == Some(value)));
    Ok(out)
}

/// Number of positive roots (`q = 1`) of a representation-finite biquiver,
/// which is the number of indecomposables up to isomorphism.
pub fn positive_root_count(g: &Biquiver) -> Result<usize> {
    if representation_type(g)?.kind != RepKind::Finite {
        return Err(Error::NotFinite);
    }
    Ok(roots_with_value(g, 1, None)?.len())
}

struct Search {
    target: Rational,
    bound: Option<i64>,
    /// Schur complement onto the first `k + 1` coordinates, when the
    /// trailing block is positive definite.
    schur: Vec<Option<QMatrix>>,
}

impl Search {
    fn new(gram: &TitsGram, value: i64, bound: Option<usize>) -> Self {
        let q = gram.matrix();
        let t = q.rows;
        let schur = (0..t)
            .map(|k| {
                let head: Vec<usize> = (0..=k).collect();
                let tail: Vec<usize> = (k + 1..t).collect();
                if tail.is_empty() {
                    return Some(q.clone());
                }
                let r = q.principal(&tail);
                let r_gram = TitsGram::from_matrix(r.clone()).expect("principal block is symmetric");
                if definiteness(&r_gram) != Definiteness::PositiveDefinite {
                    return None;
                }
                let r_inv = r.inverse().expect("definite block is invertible");
                let mut q_xy = QMatrix::zeros(head.len(), tail.len());
                for (i, &a) in head.iter().enumerate() {
                    for (j, &b) in tail.iter().enumerate() {
                        q_xy[(i, j)] = q[(a, b)].clone();
                    }
                }
                let q_yx = {
                    let mut m = QMatrix::zeros(tail.len(), head.len());
                    for i in 0..head.len() {
                        for j in 0..tail.len() {
                            m[(j, i)] = q_xy[(i, j)].clone();
                        }
                    }
                    m
                };
                let correction = q_xy.mul(&r_inv).mul(&q_yx);
                let mut s = q.principal(&head);
                for (x, y) in s.data.iter_mut().zip(&correction.data) {
                    *x -= y;
                }
                Some(s)
            })
            .collect();
        Self { target: int(value), bound: bound.map(|b| b as i64), schur }
    }

    fn descend(&self, prefix: &mut Vec<i64>, out: &mut Vec<DimensionVector>) {
        let k = prefix.len();
        let last = k + 1 == self.schur.len();
        for z in self.candidates(prefix) {
            prefix.push(z);
            if last {
                if prefix.iter().any(|&x| x != 0) && self.value_at(prefix) == self.target {
                    out.push(DimensionVector(prefix.iter().map(|&x| x as usize).collect()));
                }
            } else {
                self.descend(prefix, out);
            }
            prefix.pop();
        }
    }

    /// Exact value of the level-`k` lower bound at a full prefix.
    fn value_at(&self, prefix: &[i64]) -> Rational {
        let s = self.schur[prefix.len() - 1].as_ref().expect("last level is the form itself");
        let x: Vec<Rational> = prefix.iter().map(|&v| int(v)).collect();
        s.apply(&x).iter().zip(&x).map(|(a, b)| a * b).sum()
    }

    /// Values of the next coordinate that keep the lower bound ≤ target,
    /// ascending.
    fn candidates(&self, prefix: &[i64]) -> Vec<i64> {
        let k = prefix.len();
        let Some(s) = &self.schur[k] else {
            let b = self.bound.expect("bound present when pruning is unavailable");
            return (0..=b).collect();
        };
        // f(z) = a z² + b z + c
        let a = s[(k, k)].clone();
        let mut b = Rational::zero();
        let mut c = Rational::zero();
        for i in 0..k {
            b += &s[(k, i)] * int(2 * prefix[i]);
            for j in 0..k {
                c += &s[(i, j)] * int(prefix[i] * prefix[j]);
            }
        }
        let f = |z: i64| -> Rational { &a * int(z * z) + &b * int(z) + &c };
        let fits = |z: i64| f(z) <= self.target;
        let upper = self.bound.unwrap_or(i64::MAX);

        if !a.is_positive() {
            let hi = self.bound.expect("only definite levels lack a bound, and those have a > 0");
            return (0..=hi).filter(|&z| fits(z)).collect();
        }
        // convex: scan outwards from the vertex −b / 2a
        let vertex = (-&b / (&a * int(2))).floor().to_integer().to_i64().unwrap_or(0);
        let start = vertex.clamp(0, upper);
        let mut out = Vec::new();
        let mut z = start;
        while z >= 0 && fits(z) {
            out.push(z);
            z -= 1;
        }
        out.reverse();
        let mut z = start + 1;
        while z <= upper && fits(z) {
            out.push(z);
            z += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[usize]) -> DimensionVector {
        DimensionVector(v.to_vec())
    }

    #[test]
    fn a2_roots() {
        let g = Biquiver::from_edges(2, &[(1, 2, true)]).unwrap();
        assert_eq!(roots_with_value(&g, 1, None).unwrap(), vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1])]);
        // the bound is ignored for definite forms
        assert_eq!(roots_with_value(&g, 1, Some(0)).unwrap().len(), 3);
    }

    #[test]
    fn kronecker_radical_multiples() {
        let g = Biquiver::from_edges(2, &[(1, 2, false), (1, 2, true)]).unwrap();
        assert_eq!(roots_with_value(&g, 0, Some(3)).unwrap(), vec![dv(&[1, 1]), dv(&[2, 2]), dv(&[3, 3])]);
        assert!(matches!(roots_with_value(&g, 0, None), Err(Error::BoundRequired(_))));
    }

    #[test]
    fn loop_form_is_identically_zero() {
        let g = Biquiver::from_edges(1, &[(1, 1, false)]).unwrap();
        assert!(roots_with_value(&g, 1, Some(3)).unwrap().is_empty());
        assert_eq!(roots_with_value(&g, 0, Some(2)).unwrap(), vec![dv(&[1]), dv(&[2])]);
    }

    #[test]
    fn wild_needs_bound() {
        let g = Biquiver::from_edges(1, &[(1, 1, false), (1, 1, true)]).unwrap();
        assert!(matches!(roots_with_value(&g, 1, None), Err(Error::BoundRequired(_))));
        // q = −x², never 1
        assert!(roots_with_value(&g, 1, Some(4)).unwrap().is_empty());
        assert_eq!(roots_with_value(&g, -4, Some(4)).unwrap(), vec![dv(&[2])]);
    }

    #[test]
    fn root_count_requires_finite_type() {
        let g = Biquiver::from_edges(2, &[(1, 2, false), (1, 2, true)]).unwrap();
        assert_eq!(positive_root_count(&g), Err(Error::NotFinite));
        let a3 = Biquiver::from_edges(3, &[(1, 2, true), (3, 2, false)]).unwrap();
        assert_eq!(positive_root_count(&a3).unwrap(), 6);
    }
}
