use std::fmt;

use super::Semiring;

/// A carrier extended by an extra neutral element `∗` with `∗ ⊕ a = a` and
/// `∗ ⊙ a = ∗`. `Starred(None)` is `∗`.
///
/// `∗` behaves as an absorbing additive identity, so `Starred<S>` always has a
/// zero even when `S` does not.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Starred<S>(pub Option<S>);

impl<S> Starred<S> {
    pub fn star() -> Self {
        Starred(None)
    }

    pub fn value(v: S) -> Self {
        Starred(Some(v))
    }

    pub fn is_star(&self) -> bool {
        self.0.is_none()
    }

    pub fn into_inner(self) -> Option<S> {
        self.0
    }

    pub fn as_ref(&self) -> Option<&S> {
        self.0.as_ref()
    }
}

impl<S: Semiring> Starred<S> {
    /// Replaces `∗` by `0̲` when the inner carrier has one.
    pub fn flatten_zero(self) -> Self {
        match self.0 {
            None => Starred(S::zero()),
            some => Starred(some),
        }
    }
}

impl<S> From<Option<S>> for Starred<S> {
    fn from(v: Option<S>) -> Self {
        Starred(v)
    }
}

impl<S: Semiring> Semiring for Starred<S> {
    fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (None, _) => rhs.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => Starred(Some(a.add(b))),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => Starred(Some(a.mul(b))),
            _ => Starred(None),
        }
    }

    fn one() -> Self {
        Starred(Some(S::one()))
    }

    fn zero() -> Option<Self> {
        Some(Starred(None))
    }
}

impl<S: fmt::Display> fmt::Display for Starred<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("*"),
            Some(v) => v.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::TropicalInt;

    #[test]
    fn star_laws() {
        let seven = Starred::value(TropicalInt::from(7));
        let star = Starred::<TropicalInt>::star();
        assert_eq!(star.add(&seven), seven);
        assert_eq!(seven.add(&star), seven);
        assert_eq!(star.mul(&seven), star);
        assert_eq!(star.mul(&star), star);
        assert_eq!(star.add(&star), star);
    }

    #[test]
    fn flatten_zero_uses_inner_zero() {
        let s = Starred::<num_bigint::BigInt>::star().flatten_zero();
        assert_eq!(s, Starred::value(0.into()));
        let t = Starred::<TropicalInt>::star().flatten_zero();
        assert!(t.is_star());
    }
}
