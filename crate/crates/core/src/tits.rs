//! The Tits quadratic form `q(x) = Σ x_v² − Σ_{arrows u→v} x_u x_v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel, QMatrix};
use crate::model::{Biquiver, DimensionVector};
use crate::scalar::{int, rational, Rational};

/// Symmetric Gram matrix of the Tits form: `q(z) = zᵀ·Q·z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsGram {
    q: QMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite and singular.
    PositiveSemidefinite,
    /// Not positive semidefinite.
    Indefinite,
}

impl Definiteness {
    pub fn is_psd(self) -> bool {
        self != Definiteness::Indefinite
    }
}

impl TitsGram {
    /// Wraps an arbitrary square rational matrix, rejecting asymmetric input.
    pub fn from_matrix(q: QMatrix) -> Result<Self> {
        if !q.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { q })
    }

    pub fn size(&self) -> usize {
        self.q.rows
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.q
    }

    /// `zᵀ Q z`, exact.
    pub fn quadratic_value(&self, z: &[i64]) -> Rational {
        let zq: Vec<Rational> = z.iter().map(|&x| int(x)).collect();
        self.q.apply(&zq).iter().zip(&zq).map(|(a, b)| a * b).sum()
    }

    /// Entries as canonical rational strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.q.rows).map(|r| self.q.row(r).iter().map(ToString::to_string).collect()).collect()
    }
}

pub fn gram_matrix(g: &Biquiver) -> TitsGram {
    let t = g.vertex_count();
    let mut q = QMatrix::identity(t);
    let half = rational(1, 2);
    for a in g.arrows() {
        if a.is_loop() {
            q[(a.from, a.from)] -= int(1);
        } else {
            q[(a.from, a.to)] -= &half;
            q[(a.to, a.from)] -= &half;
        }
    }
    TitsGram { q }
}

/// `q_G(z)`, computed directly from the arrows.
pub fn evaluate(g: &Biquiver, z: &DimensionVector) -> Result<i64> {
    z.check_len(g.vertex_count())?;
    let x: Vec<i128> = z.0.iter().map(|&v| v as i128).collect();
    let mut value: i128 = x.iter().map(|v| v * v).sum();
    for a in g.arrows() {
        value -= x[a.from] * x[a.to];
    }
    debug_assert_eq!(
        gram_matrix(g).quadratic_value(&z.0.iter().map(|&v| v as i64).collect::<Vec<_>>()),
        Rational::from_integer(BigInt::from(value)),
        "Tits form value must match its Gram matrix"
    );
    value.try_into().map_err(|_| Error::InvalidArgument("Tits form value overflows i64".into()))
}

/// Coefficients `[1, c₁, …, c_t]` of `det(λI − Q) = λᵗ + c₁λᵗ⁻¹ + … + c_t`
/// by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(q: &QMatrix) -> Vec<Rational> {
    let n = q.rows;
    let mut coeffs = vec![Rational::one()];
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = Q·M_{k−1} + c_{k−1}·I
        m = q.mul(&m);
        for i in 0..n {
            m[(i, i)] += &coeffs[k - 1];
        }
        let c = -q.mul(&m).trace() / int(k as i64);
        coeffs.push(c);
    }
    coeffs
}

/// Exact three-way verdict from the signs of the characteristic-polynomial
/// coefficients. With `det(λI − Q) = Σ (−1)ᵏ e_k λ^{t−k}`, a real symmetric
/// matrix is psd iff every elementary symmetric function `e_k` of its
/// eigenvalues is nonnegative, and definite iff moreover `e_t > 0`.
pub fn definiteness(gram: &TitsGram) -> Definiteness {
    let signs: Vec<i8> = match doubled_char_poly(&gram.q) {
        Some(coeffs) => coeffs.iter().map(|c| c.signum() as i8).collect(),
        None => characteristic_polynomial(&gram.q)
            .iter()
            .map(|c| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 })
            .collect(),
    };
    let e: Vec<i8> = signs.iter().enumerate().map(|(k, &s)| if k % 2 == 0 { s } else { -s }).collect();
    if e.iter().any(|&s| s < 0) {
        Definiteness::Indefinite
    } else if e.last().is_some_and(|&s| s > 0) {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::PositiveSemidefinite
    }
}

/// Characteristic polynomial of the integer matrix `2Q` in machine
/// integers; `None` if an entry is not a half-integer or a step overflows.
/// Coefficient signs agree with those of `Q`'s polynomial.
fn doubled_char_poly(q: &QMatrix) -> Option<Vec<i128>> {
    let n = q.rows;
    let mut a = vec![0i128; n * n];
    for (slot, x) in a.iter_mut().zip(&q.data) {
        let d = x * int(2);
        if !d.is_integer() {
            return None;
        }
        *slot = d.to_integer().to_i64()? as i128;
    }
    let mul = |x: &[i128], y: &[i128]| -> Option<Vec<i128>> {
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j].checked_add(xik.checked_mul(y[k * n + j])?)?;
                }
            }
        }
        Some(out)
    };
    let mut coeffs = vec![1i128];
    let mut m = vec![0i128; n * n];
    for k in 1..=n {
        m = mul(&a, &m)?;
        for i in 0..n {
            m[i * n + i] = m[i * n + i].checked_add(coeffs[k - 1])?;
        }
        let am = mul(&a, &m)?;
        let trace = (0..n).try_fold(0i128, |acc, i| acc.checked_add(am[i * n + i]))?;
        coeffs.push(-trace / k as i128);
    }
    Some(coeffs)
}

/// The primitive positive generator of a one-dimensional radical of a
/// singular positive semidefinite form.
pub fn radical_vector(gram: &TitsGram) -> Option<DimensionVector> {
    if definiteness(gram) != Definiteness::PositiveSemidefinite {
        return None;
    }
    let ker = kernel(&gram.q);
    if ker.dim() != 1 {
        return None;
    }
    let v = &ker.basis[0];
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    for x in &mut ints {
        *x /= &gcd;
    }
    if ints.iter().all(|x| !x.is_positive()) {
        ints.iter_mut().for_each(|x| *x = -x.clone());
    }
    if ints.iter().any(|x| !x.is_positive()) {
        return None;
    }
    Some(DimensionVector(ints.iter().map(|x| x.to_usize().expect("small radical")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Biquiver {
        Biquiver::from_edges(2, &[(1, 2, false)]).unwrap()
    }

    fn kronecker() -> Biquiver {
        Biquiver::from_edges(2, &[(1, 2, false), (2, 1, true)]).unwrap()
    }

    fn gram_of(rows: &[&[Rational]]) -> TitsGram {
        TitsGram::from_matrix(QMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())).unwrap()
    }

    #[test]
    fn gram_examples() {
        let h = rational(-1, 2);
        assert_eq!(gram_matrix(&a2()).matrix(), &QMatrix::from_rows(vec![vec![int(1), h.clone()], vec![h, int(1)]]));
        let one_loop = Biquiver::from_edges(1, &[(1, 1, false)]).unwrap();
        assert_eq!(gram_matrix(&one_loop).matrix()[(0, 0)], int(0));
        let two_dashed_loops = Biquiver::from_edges(1, &[(1, 1, true), (1, 1, true)]).unwrap();
        assert_eq!(gram_matrix(&two_dashed_loops).matrix()[(0, 0)], int(-1));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&a2(), &vec![1, 1].into()).unwrap(), 1);
        let one_loop = Biquiver::from_edges(1, &[(1, 1, false)]).unwrap();
        assert_eq!(evaluate(&one_loop, &vec![3].into()).unwrap(), 0);
        assert_eq!(evaluate(&kronecker(), &vec![1, 1].into()).unwrap(), 0);
        assert!(matches!(evaluate(&a2(), &vec![1].into()), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn definiteness_examples() {
        let h = rational(-1, 2);
        assert_eq!(definiteness(&gram_of(&[&[int(1), h.clone()], &[h, int(1)]])), Definiteness::PositiveDefinite);
        assert_eq!(
            definiteness(&gram_of(&[&[int(1), int(-1)], &[int(-1), int(1)]])),
            Definiteness::PositiveSemidefinite
        );
        assert_eq!(definiteness(&gram_of(&[&[int(-1)]])), Definiteness::Indefinite);
        // negative definite is not psd either
        assert_eq!(definiteness(&gram_of(&[&[int(-1), int(0)], &[int(0), int(-2)]])), Definiteness::Indefinite);
    }

    #[test]
    fn rejects_asymmetric() {
        let q = QMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        assert_eq!(TitsGram::from_matrix(q), Err(Error::NotSymmetric));
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let q = gram_of(&[&[int(1), rational(-3, 2), int(0)], &[rational(-3, 2), int(1), rational(-1, 2)], &[int(0), rational(-1, 2), int(-1)]]);
        let fast = doubled_char_poly(q.matrix()).unwrap();
        let slow = characteristic_polynomial(q.matrix());
        for (k, (f, s)) in fast.iter().zip(&slow).enumerate() {
            assert_eq!(int(*f as i64), s * int(1 << k));
        }
    }

    #[test]
    fn faddeev_leverrier_on_small_matrix() {
        // [[2,1],[1,2]]: λ² − 4λ + 3
        let q = QMatrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]);
        assert_eq!(characteristic_polynomial(&q), vec![int(1), int(-4), int(3)]);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical_vector(&gram_matrix(&kronecker())), Some(vec![1, 1].into()));
        assert_eq!(radical_vector(&gram_matrix(&a2())), None);
        let one_loop = Biquiver::from_edges(1, &[(1, 1, true)]).unwrap();
        assert_eq!(radical_vector(&gram_matrix(&one_loop)), Some(vec![1].into()));
        // D̃4: centre 2, leaves 1
        let d4t = Biquiver::from_edges(5, &[(1, 2, false), (1, 3, true), (4, 1, false), (5, 1, true)]).unwrap();
        assert_eq!(radical_vector(&gram_matrix(&d4t)), Some(vec![2, 1, 1, 1, 1].into()));
    }
}
