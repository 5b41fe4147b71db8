//! Names `{X | Y}` and the genetic operations defined through them.
//!
//! A name is any pair of finite sets of numbers with `X < Y`. It designates
//! its mediator, the unique oldest number strictly between the two sides.
//! Negation, addition and multiplication are then defined recursively on
//! names of the operands; [`GeneticEngine`] evaluates those recursions with
//! memoization and is checked against the closed-form dyadic arithmetic.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::dyadic::{self, Dyadic};
use crate::normalform::Surreal;

/// Default bound on the birthday of operands handed to the genetic engine.
pub const DEFAULT_RECURSION_CAP: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("invalid name: {0}")]
    InvalidName(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operand {operand} is born on day {birthday}, above the recursion cap {cap}")]
    RecursionCap {
        operand: String,
        birthday: String,
        cap: u64,
    },
    #[error("{0} is not strictly positive")]
    NotPositive(String),
}

/// A pair of finite sets `{X | Y}` with every element of `X` below every
/// element of `Y`. Both sides are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Name {
    left: Vec<Surreal>,
    right: Vec<Surreal>,
}

impl Name {
    pub fn new<L, R>(left: L, right: R) -> Result<Self, NameError>
    where
        L: IntoIterator<Item = Surreal>,
        R: IntoIterator<Item = Surreal>,
    {
        let mut left: Vec<Surreal> = left.into_iter().collect();
        let mut right: Vec<Surreal> = right.into_iter().collect();
        left.sort();
        left.dedup();
        right.sort();
        right.dedup();
        let name = Name { left, right };
        if let (Some(x), Some(y)) = (name.max_left(), name.min_right()) {
            if x >= y {
                return Err(NameError::InvalidName(format!(
                    "{name}: left element {x} is not below right element {y}"
                )));
            }
        }
        Ok(name)
    }

    /// Name built from dyadic sides.
    pub fn from_dyadics<L, R>(left: L, right: R) -> Result<Self, NameError>
    where
        L: IntoIterator<Item = Dyadic>,
        R: IntoIterator<Item = Dyadic>,
    {
        Name::new(
            left.into_iter().map(Surreal::Dyadic),
            right.into_iter().map(Surreal::Dyadic),
        )
    }

    pub fn empty() -> Self {
        Name {
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    pub fn left(&self) -> &[Surreal] {
        &self.left
    }

    pub fn right(&self) -> &[Surreal] {
        &self.right
    }

    pub fn max_left(&self) -> Option<&Surreal> {
        self.left.last()
    }

    pub fn min_right(&self) -> Option<&Surreal> {
        self.right.first()
    }

    /// `{-Y | -X}`.
    pub fn negated(&self) -> Name {
        Name {
            left: self.right.iter().rev().map(|y| -y).collect(),
            right: self.left.iter().rev().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Surreal]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match (self.left.is_empty(), self.right.is_empty()) {
            (true, true) => f.write_str("{ | }"),
            (false, true) => write!(f, "{{{} | }}", join(&self.left)),
            (true, false) => write!(f, "{{ | {}}}", join(&self.right)),
            (false, false) => write!(f, "{{{} | {}}}", join(&self.left), join(&self.right)),
        }
    }
}

/// The oldest dyadic strictly between two arbitrary bounds, if any dyadic
/// lies there at all.
///
/// Bounds may be normal forms. Infinite bounds on the far side act as no
/// bound; bounds with equal standard parts leave room for at most one
/// dyadic.
pub fn simplest_dyadic_between(lo: Option<&Surreal>, hi: Option<&Surreal>) -> Option<Dyadic> {
    if lo.is_some_and(|l| !l.is_finite() && l.is_positive())
        || hi.is_some_and(|h| !h.is_finite() && h.is_negative())
    {
        return None;
    }
    let lo = lo.filter(|l| l.is_finite());
    let hi = hi.filter(|h| h.is_finite());
    if let (Some(l), Some(h)) = (lo, hi) {
        if l >= h {
            return None;
        }
        let sl = l.standard_part().expect("finite");
        let sh = h.standard_part().expect("finite");
        if sl == sh {
            let s = Surreal::from_rational(sl);
            return match s {
                Surreal::Dyadic(d) if l < &s && &s < h => Some(d),
                _ => None,
            };
        }
    }
    let zero = Surreal::zero();
    if lo.is_none_or(|l| l < &zero) && hi.is_none_or(|h| h > &zero) {
        return Some(Dyadic::zero());
    }
    if let Some(h) = hi.filter(|h| *h <= &zero) {
        let nl = -h;
        let nh = lo.map(|l| -l);
        return simplest_dyadic_between(Some(&nl), nh.as_ref()).map(|d| -d);
    }
    let l = lo.expect("lower bound is nonnegative here");
    let n = Dyadic::integer(l.floor().expect("finite") + 1);
    let Some(h) = hi else {
        return Some(n);
    };
    if &Surreal::Dyadic(n.clone()) < h {
        return Some(n);
    }
    // bisect the unit interval below n
    let mut a = &n - &Dyadic::one();
    let mut b = n;
    loop {
        let mid = (&a + &b).div_pow2(1);
        let m = Surreal::Dyadic(mid.clone());
        if &m <= l {
            a = mid;
        } else if &m >= h {
            b = mid;
        } else {
            return Some(mid);
        }
    }
}

/// The mediator of a name.
pub fn resolve(name: &Name) -> Result<Surreal, NameError> {
    let lo = name.max_left();
    let hi = name.min_right();
    let lo_d = lo.map(|x| x.as_dyadic());
    let hi_d = hi.map(|x| x.as_dyadic());
    match (lo_d, hi_d) {
        (Some(None), _) | (_, Some(None)) => simplest_dyadic_between(lo, hi)
            .map(Surreal::Dyadic)
            .ok_or_else(|| {
                NameError::Unsupported(format!(
                    "no dyadic lies strictly inside {name}, its mediator is not finitely born"
                ))
            }),
        (l, h) => dyadic::simplest_in_interval(l.flatten(), h.flatten())
            .map(Surreal::Dyadic)
            .map_err(|e| NameError::InvalidName(e.to_string())),
    }
}

/// Whether `name` designates `a`: `X < a < Y` and the sides reach the
/// nearest ancestors of `a` on either side.
pub fn is_name_of(name: &Name, a: &Surreal) -> Result<bool, NameError> {
    let Surreal::Dyadic(d) = a else {
        return Err(NameError::Unsupported(format!(
            "{a} has no finite genealogy"
        )));
    };
    let between = name.max_left().is_none_or(|x| x < a) && name.min_right().is_none_or(|y| a < y);
    if !between {
        return Ok(false);
    }
    let (below, above) = d.nearest_ancestors();
    let left_ok = match below {
        None => true,
        Some(t) => name.max_left().is_some_and(|x| x >= &Surreal::Dyadic(t)),
    };
    let right_ok = match above {
        None => true,
        Some(t) => name.min_right().is_some_and(|y| y <= &Surreal::Dyadic(t)),
    };
    Ok(left_ok && right_ok)
}

pub fn synonymous(n1: &Name, n2: &Name) -> Result<bool, NameError> {
    Ok(resolve(n1)? == resolve(n2)?)
}

/// The smallest name of `a` that is cofinal with its defining cut: the
/// nearest strict ancestor on each side.
pub fn intime_name(a: &Dyadic) -> Name {
    let (l, r) = a.nearest_ancestors();
    Name::from_dyadics(l, r).expect("ancestors straddle the number")
}

/// A name `{X | Y}` of `a > 0` with `0 < X < a < Y`.
pub fn dextronome(a: &Surreal) -> Result<Name, NameError> {
    let Surreal::Dyadic(d) = a else {
        return Err(NameError::Unsupported(format!(
            "{a} has no finite genealogy"
        )));
    };
    if !d.is_positive() {
        return Err(NameError::NotPositive(d.to_string()));
    }
    let (below, above) = d.nearest_ancestors();
    // the nearest left ancestor is 0 exactly for 2^-k; a/2 is then cofinal
    let left = match below {
        Some(b) if b.is_positive() => b,
        _ => d.div_pow2(1),
    };
    Name::from_dyadics([left], above)
}

/// Name `{E | F}` of `1/a`, with `E` and `F` drawn from the `probe` set.
///
/// `E` keeps the positive probes `z` with `z·t < 1` for every `t` in the
/// left options of `a` together with `a`, `F` those with `z·t > 1` for
/// every `t` in the right options together with `a`.
pub fn genetic_inverse_name(a: &Dyadic, probe: &[Dyadic]) -> Result<Name, NameError> {
    if !a.is_positive() {
        return Err(NameError::NotPositive(a.to_string()));
    }
    let (below, above) = a.nearest_ancestors();
    let lower: Vec<Dyadic> = below.into_iter().chain([a.clone()]).collect();
    let upper: Vec<Dyadic> = above.into_iter().chain([a.clone()]).collect();
    let one = Dyadic::one();
    let positive = probe.iter().filter(|z| z.is_positive());
    let e = positive
        .clone()
        .filter(|z| lower.iter().all(|t| *z * t < one))
        .cloned();
    let f = positive
        .filter(|z| upper.iter().all(|t| *z * t > one))
        .cloned();
    Name::from_dyadics(e, f)
}

/// `1/a` through [`genetic_inverse_name`], when the result is exact.
pub fn genetic_inverse(a: &Dyadic, probe: &[Dyadic]) -> Result<Dyadic, NameError> {
    let name = genetic_inverse_name(a, probe)?;
    let r = resolve(&name)?;
    match r {
        Surreal::Dyadic(r) if &r * a == Dyadic::one() => Ok(r),
        _ => Err(NameError::Unsupported(format!(
            "1/{a} is not a dyadic or the probe set is too coarse (mediator {r})"
        ))),
    }
}

/// Which options the recursions use for each operand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OptionSet {
    /// Nearest strict ancestors on each side, at most one per side.
    #[default]
    Canonical,
    /// Every older number, split by side. Exponential; for cross-checks.
    Full,
}

type Pair = (Dyadic, Dyadic);

/// Memoized evaluator for the genetic recursions on finitely born numbers.
///
/// The caches live inside the engine, so one engine belongs to one thread.
#[derive(Debug, Clone)]
pub struct GeneticEngine {
    cap: u64,
    options: OptionSet,
    older: HashMap<u64, Vec<Dyadic>>,
    neg_memo: HashMap<Dyadic, Dyadic>,
    add_memo: HashMap<Pair, Dyadic>,
    mul_memo: HashMap<Pair, Dyadic>,
}

impl Default for GeneticEngine {
    fn default() -> Self {
        GeneticEngine::new(DEFAULT_RECURSION_CAP)
    }
}

impl GeneticEngine {
    pub fn new(cap: u64) -> Self {
        GeneticEngine {
            cap,
            options: OptionSet::Canonical,
            older: HashMap::new(),
            neg_memo: HashMap::new(),
            add_memo: HashMap::new(),
            mul_memo: HashMap::new(),
        }
    }

    pub fn with_options(mut self, options: OptionSet) -> Self {
        self.options = options;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    fn check_cap(&self, a: &Dyadic) -> Result<(), NameError> {
        match a.birthday_u64() {
            Some(b) if b <= self.cap => Ok(()),
            _ => Err(NameError::RecursionCap {
                operand: a.to_string(),
                birthday: a.birthday().to_string(),
                cap: self.cap,
            }),
        }
    }

    pub fn neg(&mut self, a: &Dyadic) -> Result<Dyadic, NameError> {
        self.check_cap(a)?;
        self.neg_rec(a)
    }

    pub fn add(&mut self, a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
        self.check_cap(a)?;
        self.check_cap(b)?;
        self.add_rec(a, b)
    }

    pub fn sub(&mut self, a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
        self.check_cap(a)?;
        self.check_cap(b)?;
        let nb = self.neg_rec(b)?;
        self.add_rec(a, &nb)
    }

    pub fn mul(&mut self, a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
        self.check_cap(a)?;
        self.check_cap(b)?;
        self.mul_rec(a, b)
    }

    fn options_of(&mut self, a: &Dyadic) -> (Vec<Dyadic>, Vec<Dyadic>) {
        match self.options {
            OptionSet::Canonical => {
                let (l, r) = a.nearest_ancestors();
                (l.into_iter().collect(), r.into_iter().collect())
            }
            OptionSet::Full => {
                let g = a.birthday_u64().expect("operand birthday fits in u64");
                if g == 0 {
                    return (Vec::new(), Vec::new());
                }
                let older = self
                    .older
                    .entry(g)
                    .or_insert_with(|| Dyadic::up_to_birthday((g - 1) as u32));
                let left = older.iter().filter(|t| *t < a).cloned().collect();
                let right = older.iter().filter(|t| *t > a).cloned().collect();
                (left, right)
            }
        }
    }

    fn mediate(left: &[Dyadic], right: &[Dyadic]) -> Result<Dyadic, NameError> {
        let lo = left.iter().max();
        let hi = right.iter().min();
        dyadic::simplest_in_interval(lo, hi).map_err(|e| NameError::InvalidName(e.to_string()))
    }

    fn neg_rec(&mut self, a: &Dyadic) -> Result<Dyadic, NameError> {
        if let Some(v) = self.neg_memo.get(a) {
            return Ok(v.clone());
        }
        let (al, ar) = self.options_of(a);
        let left = ar
            .iter()
            .map(|x| self.neg_rec(x))
            .collect::<Result<Vec<_>, _>>()?;
        let right = al
            .iter()
            .map(|x| self.neg_rec(x))
            .collect::<Result<Vec<_>, _>>()?;
        let v = Self::mediate(&left, &right)?;
        self.neg_memo.insert(a.clone(), v.clone());
        Ok(v)
    }

    fn add_rec(&mut self, a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.add_memo.get(&key) {
            return Ok(v.clone());
        }
        let (al, ar) = self.options_of(a);
        let (bl, br) = self.options_of(b);
        let mut left = Vec::with_capacity(al.len() + bl.len());
        let mut right = Vec::with_capacity(ar.len() + br.len());
        for x in &al {
            left.push(self.add_rec(x, b)?);
        }
        for y in &bl {
            left.push(self.add_rec(a, y)?);
        }
        for x in &ar {
            right.push(self.add_rec(x, b)?);
        }
        for y in &br {
            right.push(self.add_rec(a, y)?);
        }
        let v = Self::mediate(&left, &right)?;
        self.add_memo.insert(key, v.clone());
        Ok(v)
    }

    /// `x'·b + a·y' − x'·y'` for options `x'` of `a` and `y'` of `b`.
    fn product_option(
        &mut self,
        a: &Dyadic,
        b: &Dyadic,
        x: &Dyadic,
        y: &Dyadic,
    ) -> Result<Dyadic, NameError> {
        let xb = self.mul_rec(x, b)?;
        let ay = self.mul_rec(a, y)?;
        let xy = self.mul_rec(x, y)?;
        let s = self.add_rec(&xb, &ay)?;
        let nxy = self.neg_rec(&xy)?;
        self.add_rec(&s, &nxy)
    }

    fn mul_rec(&mut self, a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.mul_memo.get(&key) {
            return Ok(v.clone());
        }
        let (al, ar) = self.options_of(a);
        let (bl, br) = self.options_of(b);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (xs, ys, side) in [
            (&al, &bl, true),
            (&ar, &br, true),
            (&al, &br, false),
            (&ar, &bl, false),
        ] {
            for x in xs {
                for y in ys {
                    let v = self.product_option(a, b, x, y)?;
                    if side {
                        left.push(v);
                    } else {
                        right.push(v);
                    }
                }
            }
        }
        let v = Self::mediate(&left, &right)?;
        self.mul_memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Genetic negation with a fresh engine and the default cap.
pub fn genetic_neg(a: &Dyadic) -> Result<Dyadic, NameError> {
    GeneticEngine::default().neg(a)
}

/// Genetic sum with a fresh engine and the default cap.
pub fn genetic_add(a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
    GeneticEngine::default().add(a, b)
}

/// Genetic product with a fresh engine and the default cap.
pub fn genetic_mul(a: &Dyadic, b: &Dyadic) -> Result<Dyadic, NameError> {
    GeneticEngine::default().mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn s(x: &str) -> Surreal {
        Surreal::Dyadic(d(x))
    }

    fn name(l: &[&str], r: &[&str]) -> Name {
        Name::new(l.iter().map(|x| s(x)), r.iter().map(|x| s(x))).unwrap()
    }

    #[test]
    fn resolving() {
        assert_eq!(resolve(&Name::empty()).unwrap(), s("0"));
        assert_eq!(resolve(&name(&["-2", "-1", "0"], &["2"])).unwrap(), s("1"));
        assert_eq!(resolve(&name(&["1/8"], &["7/8"])).unwrap(), s("1/2"));
        assert_eq!(resolve(&name(&["-1", "0"], &["1"])).unwrap(), s("1/2"));
    }

    #[test]
    fn invalid_names() {
        let r = Name::new([s("1")], [s("1")]);
        assert!(matches!(r, Err(NameError::InvalidName(_))));
        assert!(Name::new([s("2"), s("0")], [s("1")]).is_err());
    }

    #[test]
    fn names_of() {
        assert!(is_name_of(&name(&["-1", "0"], &["1"]), &s("1/2")).unwrap());
        assert!(!is_name_of(&name(&["0"], &["1"]), &s("3/4")).unwrap());
        for x in ["0", "2", "-3", "1/2", "5/8", "-7/4"] {
            assert!(is_name_of(&intime_name(&d(x)), &s(x)).unwrap());
        }
        let w = Surreal::omega();
        assert!(matches!(
            is_name_of(&Name::empty(), &w),
            Err(NameError::Unsupported(_))
        ));
    }

    #[test]
    fn synonyms() {
        let a = name(&["-1", "0"], &["1"]);
        assert!(synonymous(&a, &name(&["0"], &["1"])).unwrap());
        assert!(synonymous(&a, &a).unwrap());
        assert!(!synonymous(&a, &name(&["0"], &[])).unwrap());
        // keep only x >= u and y <= v for some u in X, v in Y
        let big = name(&["-3", "-1", "1/4", "1/2"], &["5/8", "3/4", "2"]);
        let thinned = name(&["1/4", "1/2"], &["5/8", "3/4"]);
        assert!(synonymous(&big, &thinned).unwrap());
    }

    #[test]
    fn intime() {
        assert_eq!(intime_name(&d("0")), Name::empty());
        assert_eq!(intime_name(&d("2")), name(&["1"], &[]));
        assert_eq!(intime_name(&d("1/2")), name(&["0"], &["1"]));
        assert_eq!(intime_name(&d("-2")), name(&[], &["-1"]));
        assert_eq!(intime_name(&d("5/8")).to_string(), "{1/2 | 3/4}");
    }

    #[test]
    fn dextronomes() {
        assert_eq!(dextronome(&s("1")).unwrap(), name(&["1/2"], &[]));
        assert_eq!(dextronome(&s("2")).unwrap(), name(&["1"], &[]));
        assert_eq!(dextronome(&s("1/2")).unwrap(), name(&["1/4"], &["1"]));
        for x in ["1", "2", "1/2", "1/4", "3/4", "7/2", "13/8"] {
            let n = dextronome(&s(x)).unwrap();
            assert!(n.left().iter().all(|l| l.is_positive()));
            assert!(is_name_of(&n, &s(x)).unwrap(), "{x}");
        }
        assert!(matches!(
            dextronome(&s("0")),
            Err(NameError::NotPositive(_))
        ));
        assert!(dextronome(&s("-1")).is_err());
    }

    #[test]
    fn genetic_small() {
        assert_eq!(genetic_neg(&d("0")).unwrap(), d("0"));
        assert_eq!(genetic_neg(&d("2")).unwrap(), d("-2"));
        assert_eq!(genetic_neg(&d("3/4")).unwrap(), d("-3/4"));
        assert_eq!(genetic_add(&d("0"), &d("0")).unwrap(), d("0"));
        assert_eq!(genetic_add(&d("1/2"), &d("1/2")).unwrap(), d("1"));
        assert_eq!(genetic_add(&d("3/4"), &d("-1/4")).unwrap(), d("1/2"));
        assert_eq!(genetic_mul(&d("0"), &d("5/8")).unwrap(), d("0"));
        assert_eq!(genetic_mul(&d("1"), &d("-3/4")).unwrap(), d("-3/4"));
        assert_eq!(genetic_mul(&d("1/2"), &d("1/2")).unwrap(), d("1/4"));
        assert_eq!(genetic_mul(&d("3/2"), &d("3/2")).unwrap(), d("9/4"));
    }

    #[test]
    fn recursion_cap() {
        let mut e = GeneticEngine::new(3);
        assert!(e.add(&d("3"), &d("-3")).is_ok());
        assert!(matches!(
            e.add(&d("4"), &d("0")),
            Err(NameError::RecursionCap { cap: 3, .. })
        ));
        assert!(e.neg(&d("7/8")).is_err());
    }

    #[test]
    fn inverse_names() {
        let probe = [d("1/2"), d("1"), d("2")];
        let n = genetic_inverse_name(&d("1"), &probe).unwrap();
        assert_eq!(resolve(&n).unwrap(), s("1"));
        let grid: Vec<Dyadic> = (1..=64).map(|k| Dyadic::new(k, 4)).collect();
        assert_eq!(genetic_inverse(&d("2"), &grid).unwrap(), d("1/2"));
        assert_eq!(genetic_inverse(&d("1/4"), &grid).unwrap(), d("4"));
        assert!(matches!(
            genetic_inverse(&d("3/4"), &grid),
            Err(NameError::Unsupported(_))
        ));
        assert!(matches!(
            genetic_inverse_name(&d("0"), &grid),
            Err(NameError::NotPositive(_))
        ));
    }

    #[test]
    fn tier_two_bounds() {
        let third = Surreal::from_rational(num_rational::BigRational::new(1.into(), 3.into()));
        let n = Name::new([third.clone()], [s("1/2")]).unwrap();
        assert_eq!(resolve(&n).unwrap(), s("3/8"));
        let w = Surreal::omega();
        assert_eq!(
            resolve(&Name::new([], [w.clone()]).unwrap()).unwrap(),
            s("0")
        );
        assert_eq!(
            resolve(&Name::new([s("5/2")], [w.clone()]).unwrap()).unwrap(),
            s("3")
        );
        assert!(matches!(
            resolve(&Name::new([w], []).unwrap()),
            Err(NameError::Unsupported(_))
        ));
        let eps = crate::normalform::omega_pow(&s("-1"));
        assert!(resolve(&Name::new([s("0")], [eps.clone()]).unwrap()).is_err());
        let around = Name::new([&s("1/2") - &eps], [&s("1/2") + &eps]).unwrap();
        assert_eq!(resolve(&around).unwrap(), s("1/2"));
        let below = Name::new([&s("-3") - &eps], [s("-2")]).unwrap();
        assert_eq!(resolve(&below).unwrap(), s("-3"));
        let tight = Name::new([&s("-3") + &eps], [s("-2")]).unwrap();
        assert_eq!(resolve(&tight).unwrap(), s("-5/2"));
    }
}
