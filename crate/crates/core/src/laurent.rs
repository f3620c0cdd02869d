//! Integer Laurent polynomials in one variable `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Sparse `Σ c_d v^d` with no zero coefficients stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(deg: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, coeff);
        p
    }

    /// `Σ_k coeffs[k] v^{lowest + k}`.
    pub fn from_coeffs(lowest: i32, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(lowest + k as i32, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, deg: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(deg).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&deg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg: i32) -> i64 {
        self.terms.get(&deg).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&d, &c)| (d, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (-d, c)))
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn shift(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (d + k, c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (d, c * k)))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// All exponents are strictly positive (an element of `vZ[v]`).
    pub fn in_v_z_v(&self) -> bool {
        self.terms.keys().all(|&d| d > 0)
    }

    /// `[[deg, coeff], ...]` in increasing degree.
    pub fn to_pairs(&self) -> Vec<[i64; 2]> {
        self.terms().map(|(d, c)| [d as i64, c]).collect()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<[i64; 2]> = Vec::deserialize(d)?;
        Ok(Self::from_terms(pairs.into_iter().map(|[d, c]| (d as i32, c))))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (a, d) {
                (_, 0) => format!("{a}"),
                (1, 1) => "v".to_string(),
                (1, _) => format!("v^{d}"),
                (_, 1) => format!("{a}v"),
                _ => format!("{a}v^{d}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (d, c) in rhs.terms() {
            self.add_term(d, -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i32..5, -3i64..4), 0..5).prop_map(LaurentPoly::from_terms)
    }

    #[test]
    fn display_and_bar() {
        let p = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
        assert_eq!(p.to_string(), "v^-1-v");
        assert_eq!(p.bar(), p.scale(-1));
        assert_eq!(LaurentPoly::from_terms([(1, 2), (1, -2)]), LaurentPoly::zero());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!(a.bar().bar(), a);
        }
    }
}
