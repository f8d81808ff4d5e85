//! Sparse multivariate polynomials with named variables.
//!
//! `PolyNat` (coefficients in ℕ) is the free commutative semiring on its
//! variables: two expressions built from `⊕` and `⊙` agree under every
//! weighting in every commutative semiring exactly when their `PolyNat`
//! expansions are identical. That makes it the universal oracle for the
//! relation checks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Ring, Semiring, SemiringError};

fn interner() -> &'static Mutex<HashSet<Arc<str>>> {
    static INTERNER: OnceLock<Mutex<HashSet<Arc<str>>>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// An interned variable name. Ordering is lexicographic on the name.
#[derive(Clone)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        let mut set = interner().lock().expect("interner poisoned");
        if let Some(existing) = set.get(name) {
            return Var(existing.clone());
        }
        let arc: Arc<str> = Arc::from(name);
        set.insert(arc.clone());
        Var(arc)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn is_valid_name(name: &str) -> bool {
        let Some(first) = name.chars().next() else {
            return false;
        };
        !(first.is_ascii_digit() || first == '-')
            && !name
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '+' | '·' | '^' | '*'))
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A power product of variables, kept sorted by variable with no zero exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Coefficient rings for [`Poly`].
pub trait Coefficient:
    Clone + Eq + fmt::Debug + fmt::Display + FromStr + Zero + One + for<'a> Add<&'a Self, Output = Self>
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self>,
{
    const NAME: &'static str;

    fn from_u64(k: u64) -> Self;
}

impl Coefficient for BigUint {
    const NAME: &'static str = "PolyNat";

    fn from_u64(k: u64) -> Self {
        BigUint::from(k)
    }
}

impl Coefficient for BigInt {
    const NAME: &'static str = "PolyInt";

    fn from_u64(k: u64) -> Self {
        BigInt::from(k)
    }
}

/// A polynomial `Σ c_m · m` in canonical form: monomials in their natural
/// order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    terms: BTreeMap<Monomial, C>,
}

/// Polynomials with natural-number coefficients.
pub type PolyNat = Poly<BigUint>;

/// Polynomials with integer coefficients (a commutative ring).
pub type PolyInt = Poly<BigInt>;

impl<C> Poly<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    pub fn zero_poly() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> Self {
        Self::term(C::one(), Monomial::var(Var::new(name)))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            Self::add_term(&mut terms, m.clone(), c.clone());
        }
        Poly { terms }
    }

    pub fn times(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                Self::add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Poly { terms }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::add_term(&mut terms, m.clone(), c * k);
        }
        Poly { terms }
    }

    /// Parses the canonical text form, e.g. `2·x·y^2 + z`.
    pub fn parse(s: &str) -> Result<Self, SemiringError> {
        let err = |reason: &str| SemiringError::Parse {
            carrier: C::NAME.into(),
            input: s.into(),
            reason: reason.into(),
        };
        let s = s.trim();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        if s == "0" {
            return Ok(Self::zero_poly());
        }
        let mut terms = BTreeMap::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = C::one();
            let mut powers = Vec::new();
            for (k, factor) in raw.split(['·', '*']).enumerate() {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                let numeric = factor.starts_with('-') || factor.chars().next().unwrap().is_ascii_digit();
                if numeric {
                    if k != 0 {
                        return Err(err("coefficient must lead its term"));
                    }
                    coeff = C::from_str(factor).map_err(|_| err("bad coefficient"))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                if !Var::is_valid_name(name) {
                    return Err(err("bad variable name"));
                }
                powers.push((Var::new(name), exp));
            }
            Self::add_term(&mut terms, Monomial::from_powers(powers), coeff);
        }
        Ok(Poly { terms })
    }
}

impl PolyNat {
    /// Substitutes a value for every variable and reduces in `S`.
    /// Returns `None` only for the zero polynomial over a carrier without `0̲`.
    pub fn evaluate<S: Semiring>(&self, assign: impl Fn(&Var) -> S) -> Result<Option<S>, SemiringError> {
        let mut acc: Option<S> = None;
        for (m, c) in &self.terms {
            let mut value = S::one();
            for (v, e) in m.powers() {
                let x = assign(v);
                for _ in 0..*e {
                    value = value.mul(&x);
                }
            }
            let k = c
                .to_u64()
                .ok_or_else(|| SemiringError::Domain(format!("coefficient {c} too large")))?;
            let scaled = value.nat_scale(k)?;
            acc = Some(match acc {
                None => scaled,
                Some(a) => a.add(&scaled),
            });
        }
        Ok(acc.or_else(S::zero))
    }
}

impl PolyInt {
    pub fn evaluate_ring<R: Ring>(&self, assign: impl Fn(&Var) -> R) -> Result<R, SemiringError> {
        let mut acc = R::zero_elem();
        for (m, c) in &self.terms {
            let mut value = R::one();
            for (v, e) in m.powers() {
                let x = assign(v);
                for _ in 0..*e {
                    value = value.mul(&x);
                }
            }
            let k = c
                .abs()
                .to_u64()
                .ok_or_else(|| SemiringError::Domain(format!("coefficient {c} too large")))?;
            let scaled = value.nat_scale(k)?;
            acc = if c.is_negative() { acc.sub(&scaled) } else { acc.add(&scaled) };
        }
        Ok(acc)
    }
}

impl From<&PolyNat> for PolyInt {
    fn from(p: &PolyNat) -> Self {
        Poly {
            terms: p.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(c.clone()))).collect(),
        }
    }
}

impl<C> Semiring for Poly<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    fn add(&self, rhs: &Self) -> Self {
        self.plus(rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.times(rhs)
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn zero() -> Option<Self> {
        Some(Self::zero_poly())
    }

    fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        Ok(self.scale(&C::from_u64(k)))
    }
}

impl Ring for PolyInt {
    fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone().neg())).collect(),
        }
    }
}

impl<C> fmt::Display for Poly<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}·{m}")?;
            }
        }
        Ok(())
    }
}

impl<C> fmt::Debug for Poly<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<C> FromStr for Poly<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
