//! Numbers beyond the dyadics, written in Conway normal form.
//!
//! A [`NormalForm`] is a finite sum `Σ ω^(yᵢ)·rᵢ` with strictly decreasing
//! surreal exponents `yᵢ` and nonzero rational coefficients `rᵢ`. The
//! [`Surreal`] type ties both tiers together: a value that is a dyadic is
//! only ever stored as [`Surreal::Dyadic`], which keeps equality structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dyadic::{Birthday, Dyadic};

/// Coefficients of normal forms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is not strictly positive")]
    NotPositive(String),
    #[error("{0} is not an ordinal")]
    NotOrdinal(String),
}

/// One monomial `ω^exponent · coeff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Surreal,
    pub coeff: Rational,
}

/// A sum of monomials with strictly decreasing exponents and nonzero
/// coefficients, which is not itself a dyadic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    terms: Vec<Term>,
}

impl NormalForm {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
}

/// A surreal number in its canonical tier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Surreal {
    Dyadic(Dyadic),
    Form(NormalForm),
}

impl Surreal {
    pub fn zero() -> Self {
        Surreal::Dyadic(Dyadic::zero())
    }

    pub fn one() -> Self {
        Surreal::Dyadic(Dyadic::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Surreal::Dyadic(Dyadic::integer(n))
    }

    /// `ω` itself.
    pub fn omega() -> Self {
        omega_pow(&Surreal::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        match Dyadic::from_rational(&r) {
            Some(d) => Surreal::Dyadic(d),
            None => Surreal::Form(NormalForm {
                terms: vec![Term {
                    exponent: Surreal::zero(),
                    coeff: r,
                }],
            }),
        }
    }

    /// Builds the canonical number from arbitrary `(exponent, coeff)` pairs,
    /// merging equal exponents and dropping zero coefficients.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Surreal, Rational)>,
    {
        let mut acc: BTreeMap<Surreal, Rational> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Surreal, Rational>) -> Self {
        let terms: Vec<Term> = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coeff)| Term { exponent, coeff })
            .collect();
        match terms.as_slice() {
            [] => Surreal::zero(),
            [t] if t.exponent.is_zero() => Surreal::from_rational(t.coeff.clone()),
            _ => Surreal::Form(NormalForm { terms }),
        }
    }

    /// Terms of the normal form, with dyadics seen as `ω^0 · d`.
    pub fn terms(&self) -> Vec<Term> {
        match self {
            Surreal::Dyadic(d) if d.is_zero() => Vec::new(),
            Surreal::Dyadic(d) => vec![Term {
                exponent: Surreal::zero(),
                coeff: d.to_rational(),
            }],
            Surreal::Form(f) => f.terms.clone(),
        }
    }

    pub fn as_dyadic(&self) -> Option<&Dyadic> {
        match self {
            Surreal::Dyadic(d) => Some(d),
            Surreal::Form(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Surreal::Dyadic(d) if d.is_zero())
    }

    fn leading(&self) -> Option<(Surreal, Rational)> {
        match self {
            Surreal::Dyadic(d) if d.is_zero() => None,
            Surreal::Dyadic(d) => Some((Surreal::zero(), d.to_rational())),
            Surreal::Form(f) => f
                .terms
                .first()
                .map(|t| (t.exponent.clone(), t.coeff.clone())),
        }
    }

    /// Exponent of the leading term; `None` for 0.
    pub fn leading_exponent(&self) -> Option<Surreal> {
        self.leading().map(|(e, _)| e)
    }

    pub fn signum(&self) -> i32 {
        match self {
            Surreal::Dyadic(d) => d.signum(),
            Surreal::Form(f) => {
                if f.terms[0].coeff.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Surreal {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Bounded by some integer in absolute value.
    pub fn is_finite(&self) -> bool {
        match self.leading_exponent() {
            None => true,
            Some(e) => !e.is_positive(),
        }
    }

    /// The real (here rational) number infinitely close to a finite value.
    pub fn standard_part(&self) -> Option<Rational> {
        if !self.is_finite() {
            return None;
        }
        let st = self
            .terms()
            .into_iter()
            .find(|t| t.exponent.is_zero())
            .map(|t| t.coeff)
            .unwrap_or_else(Rational::zero);
        Some(st)
    }

    /// Greatest integer not above a finite value.
    pub fn floor(&self) -> Option<BigInt> {
        if let Surreal::Dyadic(d) = self {
            return Some(d.floor());
        }
        let st = self.standard_part()?;
        let fl = st.floor().to_integer();
        if st.is_integer() && *self < Surreal::from_rational(st) {
            Some(fl - 1)
        } else {
            Some(fl)
        }
    }

    pub fn birthday(&self) -> Birthday {
        match self {
            Surreal::Dyadic(d) => d.birthday(),
            Surreal::Form(_) => Birthday::OmegaOrLater,
        }
    }

    /// `1/self` for monomials; a dyadic counts as the monomial `ω^0 · d`.
    pub fn inverse(&self) -> Result<Surreal, FormError> {
        match self {
            Surreal::Dyadic(d) if d.is_zero() => Err(FormError::ZeroDivision),
            Surreal::Dyadic(d) => Ok(Surreal::from_rational(d.to_rational().recip())),
            Surreal::Form(f) => match f.terms.as_slice() {
                [t] => Ok(Surreal::from_terms([(-&t.exponent, t.coeff.recip())])),
                _ => Err(FormError::Unsupported(format!(
                    "inverse of the {}-term form {self} is an infinite series",
                    f.terms.len()
                ))),
            },
        }
    }

    /// Exact quotient; the divisor has to be a monomial.
    pub fn checked_div(&self, divisor: &Surreal) -> Result<Surreal, FormError> {
        Ok(self * &divisor.inverse()?)
    }
}

/// The monomial `ω^a`.
pub fn omega_pow(a: &Surreal) -> Surreal {
    Surreal::from_terms([(a.clone(), Rational::one())])
}

fn require_positive(x: &Surreal) -> Result<(), FormError> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(FormError::NotPositive(x.to_string()))
    }
}

/// Same order of magnitude: each is bounded by an integer multiple of the other.
pub fn commensurable(a: &Surreal, b: &Surreal) -> Result<bool, FormError> {
    require_positive(a)?;
    require_positive(b)?;
    Ok(a.leading_exponent() == b.leading_exponent())
}

/// `a << b`: `n·a < b` for every natural `n`.
pub fn much_less(a: &Surreal, b: &Surreal) -> Result<bool, FormError> {
    require_positive(a)?;
    require_positive(b)?;
    Ok(a.leading_exponent() < b.leading_exponent())
}

/// The monomial `ω^y` commensurable with `x`.
pub fn leading_magnitude(x: &Surreal) -> Result<Surreal, FormError> {
    require_positive(x)?;
    Ok(omega_pow(
        &x.leading_exponent()
            .expect("positive numbers have a leading term"),
    ))
}

/// Dyadics and single terms `ω^0 · r`.
pub fn is_real(a: &Surreal) -> bool {
    match a {
        Surreal::Dyadic(_) => true,
        Surreal::Form(f) => f.terms.len() == 1 && f.terms[0].exponent.is_zero(),
    }
}

/// Cantor normal form shape: positive integer coefficients, ordinal exponents.
pub fn is_ordinal(a: &Surreal) -> bool {
    match a {
        Surreal::Dyadic(d) => d.is_integer() && !d.is_negative(),
        Surreal::Form(f) => f
            .terms
            .iter()
            .all(|t| t.coeff.is_integer() && t.coeff.is_positive() && is_ordinal(&t.exponent)),
    }
}

/// Hessenberg sum of two ordinals. This is surreal addition, which is
/// commutative and therefore not ordinal addition.
pub fn natural_sum(a: &Surreal, b: &Surreal) -> Result<Surreal, FormError> {
    for x in [a, b] {
        if !is_ordinal(x) {
            return Err(FormError::NotOrdinal(x.to_string()));
        }
    }
    Ok(a + b)
}

fn cmp_terms(a: &[Term], b: &[Term]) -> Ordering {
    let sign = |c: &Rational| c.cmp(&Rational::zero());
    let (mut ai, mut bi) = (a.iter(), b.iter());
    loop {
        match (ai.next(), bi.next()) {
            (None, None) => return Ordering::Equal,
            (Some(s), None) => return sign(&s.coeff),
            (None, Some(t)) => return sign(&t.coeff).reverse(),
            (Some(s), Some(t)) => match s.exponent.cmp(&t.exponent) {
                Ordering::Greater => return sign(&s.coeff),
                Ordering::Less => return sign(&t.coeff).reverse(),
                Ordering::Equal => match s.coeff.cmp(&t.coeff) {
                    Ordering::Equal => {}
                    o => return o,
                },
            },
        }
    }
}

impl Ord for Surreal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Surreal::Dyadic(a), Surreal::Dyadic(b)) => a.cmp(b),
            _ => cmp_terms(&self.terms(), &other.terms()),
        }
    }
}

impl PartialOrd for Surreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Surreal> for &'a Surreal {
    type Output = Surreal;
    fn add(self, rhs: &'a Surreal) -> Surreal {
        match (self, rhs) {
            (Surreal::Dyadic(a), Surreal::Dyadic(b)) => Surreal::Dyadic(a + b),
            _ => Surreal::from_terms(
                self.terms()
                    .into_iter()
                    .chain(rhs.terms())
                    .map(|t| (t.exponent, t.coeff)),
            ),
        }
    }
}

impl<'a> Sub<&'a Surreal> for &'a Surreal {
    type Output = Surreal;
    fn sub(self, rhs: &'a Surreal) -> Surreal {
        self + &-rhs
    }
}

impl<'a> Mul<&'a Surreal> for &'a Surreal {
    type Output = Surreal;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'a Surreal) -> Surreal {
        match (self, rhs) {
            (Surreal::Dyadic(a), Surreal::Dyadic(b)) => Surreal::Dyadic(a * b),
            _ => {
                let (xs, ys) = (self.terms(), rhs.terms());
                Surreal::from_terms(xs.iter().flat_map(|x| {
                    ys.iter()
                        .map(move |y| (&x.exponent + &y.exponent, &x.coeff * &y.coeff))
                }))
            }
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Surreal> for Surreal {
            type Output = Surreal;
            fn $m(self, rhs: Surreal) -> Surreal {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Surreal> for Surreal {
            type Output = Surreal;
            fn $m(self, rhs: &'a Surreal) -> Surreal {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for &Surreal {
    type Output = Surreal;
    fn neg(self) -> Surreal {
        match self {
            Surreal::Dyadic(d) => Surreal::Dyadic(-d),
            Surreal::Form(f) => Surreal::Form(NormalForm {
                terms: f
                    .terms
                    .iter()
                    .map(|t| Term {
                        exponent: t.exponent.clone(),
                        coeff: -&t.coeff,
                    })
                    .collect(),
            }),
        }
    }
}

impl Neg for Surreal {
    type Output = Surreal;
    fn neg(self) -> Surreal {
        -&self
    }
}

impl From<Dyadic> for Surreal {
    fn from(d: Dyadic) -> Self {
        Surreal::Dyadic(d)
    }
}

impl From<i64> for Surreal {
    fn from(n: i64) -> Self {
        Surreal::integer(n)
    }
}

impl Default for Surreal {
    fn default() -> Self {
        Surreal::zero()
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, exponent: &Surreal, coeff: &Rational) -> fmt::Result {
    if exponent.is_zero() {
        return write!(f, "{coeff}");
    }
    if exponent == &Surreal::one() {
        f.write_str("w")?;
    } else {
        write!(f, "w^({exponent})")?;
    }
    if !coeff.is_one() {
        write!(f, "*{coeff}")?;
    }
    Ok(())
}

impl fmt::Display for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = match self {
            Surreal::Dyadic(d) => return write!(f, "{d}"),
            Surreal::Form(form) => form,
        };
        for (i, t) in form.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            fmt_monomial(f, &t.exponent, &t.coeff.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surreal({self})")
    }
}
