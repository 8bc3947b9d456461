//! Univariate polynomials over ℚ, coefficients lowest degree first.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn one() -> Self {
        Self(vec![Rational::one()])
    }

    pub fn x() -> Self {
        Self(vec![Rational::zero(), Rational::one()])
    }

    /// `x − r`
    pub fn linear(r: Rational) -> Self {
        Self(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Self(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        Self::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) + rhs.0.get(k).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        Self::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) - rhs.0.get(k).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dn = d.0.len();
        if r.len() < dn {
            return (Self(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dn + 1];
        let lead = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + dn - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(dn - 1);
        (Self::new(q), Self::new(r))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·rhs = g = gcd`, `g` monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(), Self(Vec::new()));
        let (mut t0, mut t1) = (Self(Vec::new()), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            (r0, r1) = (r1, r);
            let s = s0.sub(&q.mul(&s1));
            (s0, s1) = (s1, s);
            let t = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, t);
        }
        let l = r0.lead().clone();
        let scale = |p: &Self| Self(p.0.iter().map(|c| c / &l).collect());
        (scale(&r0), scale(&s0), scale(&t0))
    }

    /// Yun's algorithm: monic squarefree `a_1, a_2, …` with `monic(self) = Π a_i^i`.
    pub fn squarefree_parts(&self) -> Vec<Self> {
        let f = self.monic();
        let mut out = Vec::new();
        let g = f.gcd(&f.derivative());
        let mut b = f.divrem(&g).0;
        let mut c = g;
        while !b.is_constant() {
            let d = b.gcd(&c);
            out.push(b.divrem(&d).0.monic());
            c = c.divrem(&d).0;
            b = d;
        }
        out
    }

    /// The largest factor of `self` coprime to `f`.
    pub fn coprime_part(&self, f: &Self) -> Self {
        let mut m = self.monic();
        loop {
            let g = m.gcd(f);
            if g.is_constant() {
                return m;
            }
            m = m.divrem(&g).0;
        }
    }

    fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Approximate complex roots (Durand–Kerner).
    pub fn roots_f64(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else { return Vec::new() };
        if n == 0 {
            return Vec::new();
        }
        let c = self.monic().to_f64();
        if c.iter().any(|x| !x.is_finite()) {
            return Vec::new();
        }
        let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
        let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(1e6).max(1.0)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                if den.norm() == 0.0 {
                    den = Complex64::new(1e-12, 0.0);
                }
                let step = eval(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm() / (1.0 + z[i].norm()));
            }
            if delta < 1e-15 {
                break;
            }
        }
        z
    }
}

/// Continued-fraction convergents of `x` with denominator at most `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() || x.abs() > 1e15 {
        return out;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = a as i128;
        let h = ai * h1 + h0;
        let k = ai * k1 + k0;
        if k > max_den as i128 || h.abs() > i64::MAX as i128 {
            break;
        }
        out.push(Rational::new((h as i64).into(), (k as i64).into()));
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// The convergent closest to `x` within a relative tolerance.
fn rationalize(x: f64) -> Option<Rational> {
    let tol = 1e-7 * x.abs().max(1.0);
    convergents(x, 1_000_000_000)
        .into_iter()
        .find(|r| (r.to_f64().unwrap_or(f64::NAN) - x).abs() <= tol)
}

/// A monic factor of `p` over ℚ that is neither constant nor `p` itself,
/// guessed from numeric roots and confirmed by exact division.
///
/// `p` should be squarefree. Candidate factors are products of real roots
/// and conjugate pairs; both rational-root extraction (single roots) and
/// higher-degree factors are covered.
pub fn rational_factor(p: &QPoly) -> Option<QPoly> {
    let n = p.degree()?;
    if n < 2 {
        return None;
    }
    let roots = p.roots_f64();
    if roots.len() != n {
        return None;
    }
    let scale = roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    // group into real roots and conjugate pairs
    let mut units: Vec<Vec<Complex64>> = Vec::new();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        if roots[i].im.abs() <= 1e-7 * scale {
            units.push(vec![Complex64::new(roots[i].re, 0.0)]);
            continue;
        }
        let partner = (0..n)
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                let da = (roots[a] - roots[i].conj()).norm();
                let db = (roots[b] - roots[i].conj()).norm();
                da.total_cmp(&db)
            });
        match partner {
            Some(j) => {
                used[j] = true;
                units.push(vec![roots[i], roots[i].conj()]);
            }
            None => return None,
        }
    }

    // exact rational roots first: try every convergent of each real root
    for u in units.iter().filter(|u| u.len() == 1) {
        for r in convergents(u[0].re, 1_000_000_000).into_iter().rev() {
            let f = QPoly::linear(r);
            if p.divrem(&f).1.is_zero() {
                return Some(f);
            }
        }
    }

    let m = units.len();
    if m > 16 {
        return None;
    }
    let mut masks: Vec<u32> = (1..(1u32 << m) - 1).collect();
    masks.sort_by_key(|s| s.count_ones());
    for mask in masks {
        let members: Vec<&Complex64> = (0..m).filter(|k| mask & (1 << k) != 0).flat_map(|k| &units[k]).collect();
        if members.len() > n / 2 {
            continue;
        }
        let mut prod = vec![Complex64::new(1.0, 0.0)];
        for &&z in &members {
            let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * z;
            }
            prod = next;
        }
        let Some(coeffs) = prod.iter().map(|c| rationalize(c.re)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let f = QPoly::new(coeffs);
        if !f.is_constant() && f.degree() < Some(n) && p.divrem(&f).1.is_zero() {
            return Some(f);
        }
    }
    None
}

/// Splits `m` as `m₁·m₂` with coprime nonconstant monic factors, if a
/// rational splitting can be found.
pub fn coprime_split(m: &QPoly) -> Option<(QPoly, QPoly)> {
    let m = m.monic();
    let parts = m.squarefree_parts();
    let nonconstant: Vec<(usize, &QPoly)> = parts.iter().enumerate().filter(|(_, p)| !p.is_constant()).collect();
    let factor = if nonconstant.len() >= 2 {
        let (i, p) = nonconstant[0];
        p.pow(i + 1)
    } else {
        let (_, p) = *nonconstant.first()?;
        rational_factor(p)?
    };
    let m2 = m.coprime_part(&factor);
    let m1 = m.divrem(&m2).0.monic();
    (!m1.is_constant() && !m2.is_constant()).then_some((m1, m2))
}

/// `b² − 4c` sign test for a monic quadratic `x² + bx + c`: true when it has
/// no real roots.
pub fn has_negative_discriminant(b: &Rational, c: &Rational) -> bool {
    (b * b - c * int(4)).is_negative()
}
