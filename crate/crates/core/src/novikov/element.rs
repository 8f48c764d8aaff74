//! Truncated elements of the universal Novikov ring with integer
//! coefficients and rational exponents.
//!
//! An element is a finite sum `Σ cᵢ·T^{rᵢ}` (cᵢ nonzero integers, rᵢ
//! strictly increasing rationals) together with a truncation: either
//! `Exact` (the sum is the element) or `Finite(τ)`, in which case the data
//! represents a residue class modulo `T^τ` and every stored exponent is
//! `< τ`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::NovikovError;
#[allow(unused_imports)]
use num_integer::Integer as _;
#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, Zero as _};
use crate::scalar::{IntScalar, Rational};

/// Truncation window of a Novikov element or matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Truncation<I: IntScalar> {
    /// Residue class modulo `T^τ`.
    Finite(Rational<I>),
    /// No truncation; the finite sum is exact.
    Exact,
}

impl<I: IntScalar> Truncation<I> {
    pub fn finite(&self) -> Option<&Rational<I>> {
        match self {
            Truncation::Finite(t) => Some(t),
            Truncation::Exact => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Truncation::Exact)
    }

    /// `min` of two windows, `Exact` acting as `+∞`.
    pub fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (Truncation::Exact, t) => t.clone(),
            (t, Truncation::Exact) => t.clone(),
            (Truncation::Finite(a), Truncation::Finite(b)) => {
                Truncation::Finite(a.clone().min(b.clone()))
            }
        }
    }

    /// Is the exponent `r` inside the window?
    pub fn admits(&self, r: &Rational<I>) -> bool {
        match self {
            Truncation::Exact => true,
            Truncation::Finite(t) => r < t,
        }
    }
}

impl<I: IntScalar> PartialOrd for Truncation<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: IntScalar> Ord for Truncation<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Truncation::Exact, Truncation::Exact) => Ordering::Equal,
            (Truncation::Exact, _) => Ordering::Greater,
            (_, Truncation::Exact) => Ordering::Less,
            (Truncation::Finite(a), Truncation::Finite(b)) => a.cmp(b),
        }
    }
}

impl<I: IntScalar> fmt::Display for Truncation<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Exact => write!(f, "exact"),
            Truncation::Finite(t) => write!(f, "mod T^({})", t),
        }
    }
}

/// Element of `Λ^univ_Z`, possibly as a residue class modulo `T^τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NovikovElement<I: IntScalar> {
    terms: Vec<(I, Rational<I>)>,
    truncation: Truncation<I>,
}

impl<I: IntScalar> NovikovElement<I> {
    /// Build from raw terms; sorts, merges like exponents, drops zeros and
    /// anything at or beyond the truncation.
    pub fn new(terms: Vec<(I, Rational<I>)>, truncation: Truncation<I>) -> Self {
        let mut el = NovikovElement { terms, truncation };
        el.normalize();
        el
    }

    pub fn zero(truncation: Truncation<I>) -> Self {
        NovikovElement { terms: Vec::new(), truncation }
    }

    pub fn one(truncation: Truncation<I>) -> Self {
        Self::monomial(I::one(), Rational::zero(), truncation)
    }

    pub fn monomial(coeff: I, exponent: Rational<I>, truncation: Truncation<I>) -> Self {
        Self::new(vec![(coeff, exponent)], truncation)
    }

    pub fn from_integer(n: i64, truncation: Truncation<I>) -> Self {
        Self::monomial(crate::scalar::int(n), Rational::zero(), truncation)
    }

    fn normalize(&mut self) {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(I, Rational<I>)> = Vec::with_capacity(self.terms.len());
        for (c, r) in self.terms.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.1 == r {
                    last.0 += c;
                    continue;
                }
            }
            merged.push((c, r));
        }
        merged.retain(|(c, r)| !c.is_zero() && self.truncation.admits(r));
        self.terms = merged;
    }

    pub fn terms(&self) -> &[(I, Rational<I>)] {
        &self.terms
    }

    pub fn truncation(&self) -> &Truncation<I> {
        &self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent; `None` encodes `+∞` (the zero element).
    pub fn valuation(&self) -> Option<Rational<I>> {
        self.terms.first().map(|(_, r)| r.clone())
    }

    /// Coefficient of the smallest exponent.
    pub fn leading_coeff(&self) -> Option<&I> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn coeff_at(&self, r: &Rational<I>) -> I {
        match self.terms.binary_search_by(|t| t.1.cmp(r)) {
            Ok(i) => self.terms[i].0.clone(),
            Err(_) => I::zero(),
        }
    }

    /// Re-truncate to a (possibly) smaller window.
    pub fn truncated(&self, truncation: Truncation<I>) -> Self {
        Self::new(self.terms.clone(), truncation)
    }

    /// The same terms viewed as an exact finite sum (canonical lift of the
    /// residue class).
    pub fn lift(&self) -> Self {
        NovikovElement { terms: self.terms.clone(), truncation: Truncation::Exact }
    }

    pub fn neg(&self) -> Self {
        NovikovElement {
            terms: self.terms.iter().map(|(c, r)| (-c.clone(), r.clone())).collect(),
            truncation: self.truncation.clone(),
        }
    }

    /// Termwise sum, truncated at the meet of the two windows.
    pub fn add(&self, other: &Self) -> Self {
        let truncation = self.truncation.meet(&other.truncation);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms, truncation)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. At a finite truncation both factors must have
    /// valuation `≥ 0`, otherwise the residue class of the product is not
    /// determined by the residue classes of the factors.
    pub fn mul(&self, other: &Self) -> Result<Self, NovikovError> {
        let truncation = self.truncation.meet(&other.truncation);
        if truncation != Truncation::Exact {
            for x in [self, other] {
                if let Some(v) = x.valuation() {
                    if v < Rational::zero() {
                        return Err(NovikovError::TruncationTooCoarse {
                            detail: format!(
                                "product with negative-valuation factor (val {}) at finite truncation",
                                v
                            ),
                        });
                    }
                }
            }
        }
        Ok(self.mul_unchecked(other, truncation))
    }

    /// Cauchy product without the valuation guard; used internally where
    /// the caller tracks the window itself.
    pub(crate) fn mul_unchecked(&self, other: &Self, truncation: Truncation<I>) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, r) in &self.terms {
            for (b, s) in &other.terms {
                let e = r.clone() + s.clone();
                if truncation.admits(&e) {
                    terms.push((a.clone() * b.clone(), e));
                }
            }
        }
        Self::new(terms, truncation)
    }

    /// Multiply by the monomial `c·T^r` exactly (window kept as is; the
    /// diagonalization workspace tracks precision separately).
    pub fn mul_monomial(&self, c: &I, r: &Rational<I>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, s)| (a.clone() * c.clone(), s.clone() + r.clone()))
            .collect();
        Self::new(terms, self.truncation.clone())
    }

    pub fn scale(&self, c: &I) -> Self {
        self.mul_monomial(c, &Rational::zero())
    }

    /// Exact division by a nonzero integer; `None` when some coefficient is
    /// not divisible.
    pub fn div_integer(&self, n: &I) -> Option<Self> {
        if n.is_zero() {
            return None;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, r) in &self.terms {
            let (q, rem) = c.div_rem(n);
            if !rem.is_zero() {
                return None;
            }
            terms.push((q, r.clone()));
        }
        Some(NovikovElement { terms, truncation: self.truncation.clone() })
    }

    /// Is this element a unit: leading coefficient `±1`? (`T^r` is
    /// invertible for every `r`, integers other than `±1` are not.)
    pub fn is_unit(&self) -> bool {
        self.leading_coeff().map(|c| c.abs().is_one()).unwrap_or(false)
    }

    /// Inverse at the element's truncation. Factors `a = ±T^r·(1+u)` with
    /// `val(u) > 0` and expands the geometric series inside the window.
    pub fn invert(&self) -> Result<Self, NovikovError> {
        let (lead, val) = match self.terms.first() {
            Some((c, r)) => (c.clone(), r.clone()),
            None => return Err(NovikovError::NotAUnit { detail: "zero element".into() }),
        };
        if !lead.abs().is_one() {
            return Err(NovikovError::NotAUnit {
                detail: format!("leading coefficient {} is not ±1", lead),
            });
        }
        // u = ±T^{-r}·a − 1, so val(u) > 0.
        let sign = lead;
        let shifted = self.mul_monomial(&sign, &(-val.clone())); // = 1 + u
        let one = Self::one(self.truncation.clone());
        let u = shifted.sub(&one);
        if u.is_zero() {
            // a = ±T^r exactly.
            return Ok(Self::monomial(sign, -val, self.truncation.clone()));
        }
        let width = match &self.truncation {
            Truncation::Finite(t) => t.clone(),
            Truncation::Exact => {
                return Err(NovikovError::TruncationTooCoarse {
                    detail: "non-monomial unit needs a finite truncation to invert".into(),
                })
            }
        };
        let inv_unit = geometric_inverse(&u, &width);
        // (1+u)^{-1}·(±T^{-r}) inverts ±T^r(1+u).
        Ok(inv_unit.mul_monomial(&sign, &(-val)))
    }

    /// Textual form `c1*T^(r1) + ...`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if r.is_zero() {
                out.push_str(&format!("{}", c));
            } else if r.is_integer() {
                out.push_str(&format!("{}*T^{}", c, r.numer()));
            } else {
                out.push_str(&format!("{}*T^({}/{})", c, r.numer(), r.denom()));
            }
        }
        out
    }
}

/// `(1+u)^{-1} = Σ (−u)^k` with all exponents kept below `width`.
/// Requires `val(u) > 0`, which makes the sum finite.
pub(crate) fn geometric_inverse<I: IntScalar>(
    u: &NovikovElement<I>,
    width: &Rational<I>,
) -> NovikovElement<I> {
    debug_assert!(u.valuation().map(|v| v > Rational::zero()).unwrap_or(true));
    let window = Truncation::Finite(width.clone());
    let u = u.truncated(window.clone());
    let one = NovikovElement::one(window.clone());
    let mut acc = one.clone();
    let mut power = one.clone();
    loop {
        power = power.mul_unchecked(&u.neg(), window.clone());
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    acc
}

impl<I: IntScalar> fmt::Display for NovikovElement<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type E = NovikovElement<i64>;
    type T = Truncation<i64>;

    fn exact() -> T {
        Truncation::Exact
    }

    fn fin(n: i64, d: i64) -> T {
        Truncation::Finite(rat(n, d))
    }

    fn el(terms: &[(i64, (i64, i64))], t: T) -> E {
        E::new(terms.iter().map(|&(c, (p, q))| (c, rat(p, q))).collect(), t)
    }

    #[test]
    fn add_additive_inverse() {
        let a = E::from_integer(1, exact());
        let b = E::from_integer(-1, exact());
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn add_collects_like_terms() {
        // (1 + T) + T = 1 + 2T
        let a = el(&[(1, (0, 1)), (1, (1, 1))], exact());
        let b = el(&[(1, (1, 1))], exact());
        assert_eq!(a.add(&b), el(&[(1, (0, 1)), (2, (1, 1))], exact()));
    }

    #[test]
    fn add_respects_truncation() {
        // (1 + T^3) mod T^2  +  T^{1/2}  =  1 + T^{1/2} mod T^2
        let a = el(&[(1, (0, 1)), (1, (3, 1))], fin(2, 1));
        let b = el(&[(1, (1, 2))], exact());
        let sum = a.add(&b);
        assert_eq!(sum, el(&[(1, (0, 1)), (1, (1, 2))], fin(2, 1)));
        assert_eq!(sum.truncation(), &fin(2, 1));
    }

    #[test]
    fn mul_difference_of_squares() {
        // (1 + T^{1/2})(1 − T^{1/2}) = 1 − T
        let a = el(&[(1, (0, 1)), (1, (1, 2))], exact());
        let b = el(&[(1, (0, 1)), (-1, (1, 2))], exact());
        assert_eq!(a.mul(&b).unwrap(), el(&[(1, (0, 1)), (-1, (1, 1))], exact()));
    }

    #[test]
    fn mul_monomials_add_exponents() {
        let a = el(&[(2, (1, 3))], exact());
        let b = el(&[(3, (2, 3))], exact());
        assert_eq!(a.mul(&b).unwrap(), el(&[(6, (1, 1))], exact()));
    }

    #[test]
    fn mul_truncates_product() {
        // (1+T)(1+T+T²) at truncation 2 → 1 + 2T
        let a = el(&[(1, (0, 1)), (1, (1, 1))], fin(2, 1));
        let b = el(&[(1, (0, 1)), (1, (1, 1)), (1, (2, 1))], fin(2, 1));
        assert_eq!(a.mul(&b).unwrap(), el(&[(1, (0, 1)), (2, (1, 1))], fin(2, 1)));
    }

    #[test]
    fn mul_rejects_negative_valuation_at_finite_truncation() {
        let a = el(&[(1, (-1, 1))], fin(2, 1));
        let b = el(&[(1, (0, 1))], fin(2, 1));
        assert!(matches!(a.mul(&b), Err(NovikovError::TruncationTooCoarse { .. })));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(E::zero(exact()).valuation(), None);
        let a = el(&[(5, (3, 2)), (1, (2, 1))], exact());
        assert_eq!(a.valuation(), Some(rat(3, 2)));
        let b = el(&[(1, (0, 1)), (-1, (1, 1))], exact());
        assert_eq!(b.valuation(), Some(rat(0, 1)));
    }

    #[test]
    fn invert_one() {
        let one = E::one(exact());
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_geometric_series() {
        // (1 − T)^{-1} at truncation 3 → 1 + T + T²
        let a = el(&[(1, (0, 1)), (-1, (1, 1))], fin(3, 1));
        let inv = a.invert().unwrap();
        assert_eq!(inv, el(&[(1, (0, 1)), (1, (1, 1)), (1, (2, 1))], fin(3, 1)));
        assert_eq!(a.mul(&inv).unwrap(), E::one(fin(3, 1)));
    }

    #[test]
    fn invert_negative_leading() {
        // (−1 + T^{1/2})^{-1} at truncation 3/2 → −1 − T^{1/2} − T
        let a = el(&[(-1, (0, 1)), (1, (1, 2))], fin(3, 2));
        let inv = a.invert().unwrap();
        assert_eq!(inv, el(&[(-1, (0, 1)), (-1, (1, 2)), (-1, (1, 1))], fin(3, 2)));
        assert_eq!(a.mul(&inv).unwrap(), E::one(fin(3, 2)));
    }

    #[test]
    fn invert_rejects_non_units() {
        let two = E::from_integer(2, fin(3, 1));
        assert!(matches!(two.invert(), Err(NovikovError::NotAUnit { .. })));
    }

    #[test]
    fn div_integer_exact_or_none() {
        let a = el(&[(4, (0, 1)), (-6, (1, 2))], exact());
        assert_eq!(a.div_integer(&2).unwrap(), el(&[(2, (0, 1)), (-3, (1, 2))], exact()));
        assert!(a.div_integer(&4).is_none());
    }
}
