//! Finite-birthday surreal numbers.
//!
//! Every surreal number born on a finite day is a dyadic rational `k/2^h`,
//! and every dyadic rational is born on a finite day. This module holds the
//! canonical representation of those numbers together with their
//! genealogy: birthday, sign expansion, parent, children and lineage.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("0 is the root of the tree and has no parent")]
    ZeroHasNoParent,
    #[error("empty interval: {lo} is not below {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("{0} is not a power of two, the quotient would leave the dyadics")]
    NotPowerOfTwo(String),
    #[error("cannot parse dyadic literal {0:?}")]
    Parse(String),
}

/// A dyadic rational `num / 2^exp`, always fully reduced.
///
/// Either `exp == 0` or `num` is odd, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    /// The canonical dyadic equal to `num / 2^exp`.
    pub fn new(num: impl Into<BigInt>, exp: u64) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        match num.trailing_zeros() {
            None => exp = 0,
            Some(tz) => {
                let shift = tz.min(exp);
                if shift > 0 {
                    num >>= shift as usize;
                    exp -= shift;
                }
            }
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Dyadic {
            num: n.into(),
            exp: 0,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Power of two in the denominator.
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::one() << self.exp as usize
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Greatest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        // arithmetic shift rounds towards negative infinity
        &self.num >> self.exp as usize
    }

    /// Least integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        -((-&self.num) >> self.exp as usize)
    }

    /// `self * 2^j`.
    pub fn mul_pow2(&self, j: u64) -> Dyadic {
        if j <= self.exp {
            Dyadic::new(self.num.clone(), self.exp - j)
        } else {
            Dyadic::new(&self.num << (j - self.exp) as usize, 0)
        }
    }

    /// `self / 2^j`.
    pub fn div_pow2(&self, j: u64) -> Dyadic {
        Dyadic::new(self.num.clone(), self.exp + j)
    }

    /// Exact division, defined only when the divisor is `±2^j`.
    pub fn checked_div(&self, divisor: &Dyadic) -> Result<Dyadic, DyadicError> {
        let mag = divisor.num.magnitude();
        if mag.count_ones() != 1 {
            return Err(DyadicError::NotPowerOfTwo(divisor.to_string()));
        }
        let j = mag.trailing_zeros().unwrap_or(0);
        let q = self.mul_pow2(divisor.exp).div_pow2(j);
        Ok(if divisor.is_negative() { -q } else { q })
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.denominator())
    }

    /// The dyadic equal to `r`, if its reduced denominator is a power of two.
    pub fn from_rational(r: &BigRational) -> Option<Dyadic> {
        let den = r.denom().magnitude();
        if den.count_ones() != 1 {
            return None;
        }
        let exp = den.trailing_zeros().unwrap_or(0);
        Some(Dyadic::new(r.numer().clone(), exp))
    }

    /// Day on which this number is born.
    pub fn birthday(&self) -> Birthday {
        Birthday::Finite(self.birthday_value())
    }

    fn birthday_value(&self) -> BigUint {
        let mag = self.num.magnitude();
        if self.exp == 0 {
            mag.clone()
        } else {
            (mag >> self.exp as usize) + BigUint::one() + BigUint::from(self.exp)
        }
    }

    /// Birthday as a machine integer, when it fits.
    pub fn birthday_u64(&self) -> Option<u64> {
        self.birthday_value().to_u64()
    }

    /// Path from 0 to `self` in the genealogical tree.
    ///
    /// Allocates one sign per generation, so the integer part has to fit
    /// in memory.
    pub fn sign_expansion(&self) -> SignExpansion {
        let mag = self.num.magnitude();
        let int_part = (mag >> self.exp as usize)
            .to_usize()
            .expect("integer part too large to expand");
        let (toward, away) = if self.is_negative() {
            (Sign::Minus, Sign::Plus)
        } else {
            (Sign::Plus, Sign::Minus)
        };
        let mut signs = Vec::with_capacity(int_part + self.exp as usize + 1);
        if self.exp == 0 {
            signs.resize(int_part, toward);
        } else {
            // int_part + 1 steps outward, one back, then the binary digits
            // of the fraction except the final 1
            signs.resize(int_part + 1, toward);
            signs.push(away);
            for i in (1..self.exp).rev() {
                signs.push(if mag.bit(i) { toward } else { away });
            }
        }
        SignExpansion(signs)
    }

    /// The number whose sign expansion is ours minus its last sign.
    pub fn parent(&self) -> Result<Dyadic, DyadicError> {
        if self.is_zero() {
            return Err(DyadicError::ZeroHasNoParent);
        }
        if self.exp == 0 {
            return Ok(Dyadic::integer(&self.num - BigInt::from(self.signum())));
        }
        let step = Dyadic::new(1, self.exp);
        let below = self - &step;
        let above = self + &step;
        // of the two neighbours on the grid 2^-exp, the younger is the parent
        if below.birthday_value() > above.birthday_value() {
            Ok(below)
        } else {
            Ok(above)
        }
    }

    /// The two numbers born the day after `self` from it, `(minus, plus)`.
    pub fn children(&self) -> (Dyadic, Dyadic) {
        if self.exp == 0 {
            let one = Dyadic::one();
            let half = Dyadic::new(1, 1);
            return match self.signum() {
                0 => (-one.clone(), one),
                1 => (self - &half, self + &one),
                _ => (self - &one, self + &half),
            };
        }
        let step = Dyadic::new(1, self.exp + 1);
        (self - &step, self + &step)
    }

    /// Strict ancestors, oldest first, starting from 0. Empty for 0.
    pub fn lineage(&self) -> Vec<Dyadic> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while let Ok(p) = cur.parent() {
            out.push(p.clone());
            cur = p;
        }
        out.reverse();
        out
    }

    /// Nearest strict ancestors on either side: `(greatest below, least above)`.
    ///
    /// These are the options of the canonical singleton name of `self`.
    pub fn nearest_ancestors(&self) -> (Option<Dyadic>, Option<Dyadic>) {
        if self.exp == 0 {
            let one = Dyadic::one();
            return match self.signum() {
                0 => (None, None),
                1 => (Some(self - &one), None),
                _ => (None, Some(self + &one)),
            };
        }
        let step = Dyadic::new(1, self.exp);
        (Some(self - &step), Some(self + &step))
    }

    /// All dyadics born on or before day `n`, in increasing order.
    pub fn up_to_birthday(n: u32) -> Vec<Dyadic> {
        let mut all = Vec::with_capacity((1usize << (n + 1)) - 1);
        let mut gen = vec![Dyadic::zero()];
        for _ in 0..=n {
            let next: Vec<Dyadic> = gen
                .iter()
                .flat_map(|d| {
                    let (l, r) = d.children();
                    [l, r]
                })
                .collect();
            all.append(&mut gen);
            gen = next;
        }
        all.sort();
        all
    }

    /// All dyadics born exactly on day `n`, in increasing order.
    pub fn generation(n: u32) -> Vec<Dyadic> {
        let mut gen = vec![Dyadic::zero()];
        for _ in 0..n {
            gen = gen
                .iter()
                .flat_map(|d| {
                    let (l, r) = d.children();
                    [l, r]
                })
                .collect();
        }
        gen
    }
}

/// The oldest dyadic strictly between `lo` and `hi`; a missing bound is
/// unbounded on that side.
pub fn simplest_in_interval(
    lo: Option<&Dyadic>,
    hi: Option<&Dyadic>,
) -> Result<Dyadic, DyadicError> {
    match (lo, hi) {
        (None, None) => Ok(Dyadic::zero()),
        (Some(l), None) => Ok(if l.is_negative() {
            Dyadic::zero()
        } else {
            Dyadic::integer(l.floor() + 1)
        }),
        (None, Some(h)) => Ok(if h.is_positive() {
            Dyadic::zero()
        } else {
            Dyadic::integer(h.ceil() - 1)
        }),
        (Some(l), Some(h)) => {
            if l >= h {
                return Err(DyadicError::EmptyInterval {
                    lo: l.to_string(),
                    hi: h.to_string(),
                });
            }
            if l.is_negative() && h.is_positive() {
                return Ok(Dyadic::zero());
            }
            if h.signum() <= 0 {
                return simplest_in_interval(Some(&-h), Some(&-l)).map(|d| -d);
            }
            let n = Dyadic::integer(l.floor() + 1);
            if &n < h {
                return Ok(n);
            }
            // (l, h) sits inside one unit interval; refine the grid until a point lands inside
            let mut e = 1u64;
            loop {
                let cand = Dyadic::new(l.mul_pow2(e).floor() + 1, e);
                if &cand < h {
                    return Ok(cand);
                }
                e += 1;
            }
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => self.num.cmp(&other.num),
            Ordering::Less => (&self.num << (other.exp - self.exp) as usize).cmp(&other.num),
            Ordering::Greater => self
                .num
                .cmp(&(&other.num << (self.exp - other.exp) as usize)),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = &self.num << (exp - self.exp) as usize;
        let b = &rhs.num << (exp - rhs.exp) as usize;
        Dyadic::new(a + b, exp)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        self + &-rhs
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &'a Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic::one()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::integer(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic::integer(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

impl FromStr for Dyadic {
    type Err = DyadicError;

    /// Accepts `k` or `k/d` where `d` is a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DyadicError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        match d {
            None => Ok(Dyadic::integer(num)),
            Some(d) => {
                let den: BigInt = d.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Dyadic::from_rational(&BigRational::new(num, den)).ok_or_else(bad)
            }
        }
    }
}

/// Generation of a number: finite for dyadics, at least ω otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Birthday {
    Finite(BigUint),
    OmegaOrLater,
}

impl Birthday {
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Birthday::Finite(n) => n.to_u64(),
            Birthday::OmegaOrLater => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Birthday::Finite(_))
    }
}

impl fmt::Display for Birthday {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Birthday::Finite(n) => write!(f, "{n}"),
            Birthday::OmegaOrLater => f.write_str(">=w"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn rank(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

/// Finite sequence of signs; the empty sequence is 0.
///
/// Ordered lexicographically with an implicit neutral sign, between minus
/// and plus, after the end, which makes the order agree with numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignExpansion(Vec<Sign>);

impl SignExpansion {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignExpansion(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Sign) {
        self.0.push(s);
    }

    /// Decodes the path back into its number.
    pub fn value(&self) -> Dyadic {
        let Some(&first) = self.0.first() else {
            return Dyadic::zero();
        };
        let run = self.0.iter().take_while(|&&s| s == first).count();
        let mut acc = BigInt::from(run as u64) * first.rank();
        let rest = &self.0[run..];
        for s in rest {
            acc = (acc << 1usize) + s.rank();
        }
        Dyadic::new(acc, rest.len() as u64)
    }
}

impl Ord for SignExpansion {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |v: &[Sign], i: usize| v.get(i).map_or(0, |s| s.rank());
        let n = self.0.len().max(other.0.len());
        (0..n)
            .map(|i| rank(&self.0, i).cmp(&rank(&other.0, i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for SignExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignExpansion {
    type Err = DyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                _ => Err(DyadicError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignExpansion)
    }
}
