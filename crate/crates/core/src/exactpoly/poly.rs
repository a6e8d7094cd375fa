use super::int::Int;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Laurent polynomial in one variable with integer coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so equality
/// is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, Int)>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<(i32, Int)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson { coeffs: self.terms.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        Ok(LaurentPoly::from_terms(raw.coeffs))
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The variable itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: impl Into<Int>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// merging repeated exponents.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<Int>,
    {
        let mut v: Vec<(i32, Int)> = it.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut terms: Vec<(i32, Int)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match terms.last_mut() {
                Some(last) if last.0 == e => last.1 = &last.1 + &c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(i32, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, exp: i32) -> Int {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar map `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Specialization at `q = 1`.
    pub fn eval_at_one(&self) -> Int {
        self.terms.iter().map(|t| t.1.clone()).sum()
    }

    /// `p(q) -> p(t^2)`, read as a polynomial in `t`.
    pub fn exponent_double(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (2 * e, c.clone())).collect(),
        }
    }

    /// Substitution `q -> q^d`.
    pub fn dilate(&self, d: i32) -> Self {
        assert!(d > 0);
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (d * e, c.clone())).collect(),
        }
    }

    /// Inverse of [`dilate`](Self::dilate); `None` if some exponent is not a
    /// multiple of `d`.
    pub fn contract(&self, d: i32) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e % d != 0 {
                return None;
            }
            terms.push((e / d, c.clone()));
        }
        Some(LaurentPoly { terms })
    }

    /// All strictly negative terms, in exponent order.
    pub fn negativity_report(&self) -> Vec<(i32, Int)> {
        self.terms.iter().filter(|t| t.1.is_negative()).cloned().collect()
    }

    /// Terms with positive exponent.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect(),
        }
    }

    /// Terms with negative exponent.
    pub fn negative_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 < 0).cloned().collect(),
        }
    }

    pub fn in_q_zq(&self) -> bool {
        self.terms.iter().all(|t| t.0 > 0)
    }

    pub fn in_qinv_zqinv(&self) -> bool {
        self.terms.iter().all(|t| t.0 < 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; fails with `NotDivisible` on a nonzero remainder.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::NotDivisible(format!("{self} / 0")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if d.terms.len() == 1 {
            let (de, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let qc = c
                    .div_exact(dc)
                    .ok_or_else(|| Error::NotDivisible(format!("{self} / {d}")))?;
                terms.push((e - de, qc));
            }
            return Ok(LaurentPoly { terms });
        }
        let (dmax, dlead) = d.terms.last().cloned().unwrap();
        let dmin = d.terms[0].0;
        let floor = self.terms[0].0 - dmin;
        let mut rem = self.clone();
        let mut quot: Vec<(i32, Int)> = Vec::new();
        while let Some((rmax, rlead)) = rem.terms.last().cloned() {
            let e = rmax - dmax;
            if e < floor {
                return Err(Error::NotDivisible(format!("{self} / {d}")));
            }
            let c = rlead
                .div_exact(&dlead)
                .ok_or_else(|| Error::NotDivisible(format!("{self} / {d}")))?;
            rem -= &LaurentPoly::monomial(e, c.clone()).mul_ref(d);
            quot.push((e, c));
        }
        quot.reverse();
        Ok(LaurentPoly { terms: quot })
    }

    fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return LaurentPoly {
                terms: other.terms.iter().map(|(f, d)| (e + f, c * d)).collect(),
            };
        }
        if other.terms.len() == 1 {
            return other.mul_ref(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut buf = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let slot = &mut buf[(e + f - lo) as usize];
                *slot = &*slot + &(c * d);
            }
        }
        LaurentPoly {
            terms: buf
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i32, c))
                .collect(),
        }
    }

    fn merge(&self, other: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { terms: out }
    }

    /// Quantum integer `[m]` in the variable `q^d`: `(q^{dm} - q^{-dm}) / (q^d - q^{-d})`.
    pub fn q_int(m: u32, d: i32) -> Self {
        let m = m as i32;
        LaurentPoly::from_terms((0..m).map(|j| (d * (m - 1 - 2 * j), 1)))
    }

    /// Quantum factorial `[m]!` in the variable `q^d`.
    pub fn q_factorial(m: u32, d: i32) -> Self {
        (1..=m).fold(Self::one(), |acc, j| &acc * &Self::q_int(j, d))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, true);
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `q^2 - q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, 1), (-1, -1)]);
        let b = p(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn factorization_division() {
        let num = p(&[(2, 1), (0, -1)]);
        let den = p(&[(1, 1), (0, -1)]);
        assert_eq!(num.div_exact(&den).unwrap(), p(&[(1, 1), (0, 1)]));
        assert!(p(&[(2, 1), (0, 1)]).div_exact(&den).is_err());
    }

    #[test]
    fn additive_identity() {
        let x = p(&[(3, 2), (-4, 7)]);
        assert_eq!(&LaurentPoly::zero() + &x, x);
    }

    #[test]
    fn bar_and_eval() {
        assert_eq!(p(&[(2, 1), (1, 3)]).bar(), p(&[(-2, 1), (-1, 3)]));
        assert_eq!(LaurentPoly::constant(5).bar(), LaurentPoly::constant(5));
        assert_eq!(p(&[(1, 1), (-1, 1)]).eval_at_one(), Int::from(2));
        assert_eq!(p(&[(2, 1)]).eval_at_one(), Int::from(1));
        assert_eq!(LaurentPoly::zero().eval_at_one(), Int::ZERO);
    }

    #[test]
    fn doubling() {
        assert_eq!(LaurentPoly::q().exponent_double(), p(&[(2, 1)]));
        assert_eq!(p(&[(-1, 1), (0, 1)]).exponent_double(), p(&[(-2, 1), (0, 1)]));
        assert!(LaurentPoly::zero().exponent_double().is_zero());
    }

    #[test]
    fn negativity() {
        assert_eq!(p(&[(1, 1), (-1, -1)]).negativity_report(), vec![(-1, Int::from(-1))]);
        assert!(p(&[(2, 1), (1, 1)]).negativity_report().is_empty());
        assert_eq!(LaurentPoly::constant(-3).negativity_report(), vec![(0, Int::from(-3))]);
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(LaurentPoly::q_int(2, 1), p(&[(1, 1), (-1, 1)]));
        assert_eq!(LaurentPoly::q_int(3, 2), p(&[(4, 1), (0, 1), (-4, 1)]));
        let f3 = LaurentPoly::q_factorial(3, 1);
        assert_eq!(f3.eval_at_one(), Int::from(6));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(2, 1), (-2, -1)]).to_string(), "q^2 - q^-2");
        assert_eq!(p(&[(0, -3)]).to_string(), "-3");
        assert_eq!(p(&[(1, 2), (0, 1)]).to_string(), "2q + 1");
    }

    #[test]
    fn json_shape() {
        let x = p(&[(2, 1), (-1, -4)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"coeffs":[[-1,-4],[2,1]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
