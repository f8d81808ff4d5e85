use crate::subset::Subset;

use super::RelationError;

/// Places `[p+q]` inside `[n]`: a set `X` of fixed extra indices and a set `Y`
/// of size `p+q`, disjoint from `X`, with `γ : [p+q] → Y` order preserving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Instantiation {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub x: Subset,
    pub y: Subset,
}

impl Instantiation {
    pub fn new(n: usize, p: usize, q: usize, x: Subset, y: Subset) -> Result<Self, RelationError> {
        if y.len() != p + q {
            return Err(RelationError::BadInstantiation(format!(
                "|Y| = {} but p + q = {}",
                y.len(),
                p + q
            )));
        }
        if !x.is_disjoint(y) {
            return Err(RelationError::BadInstantiation(format!("X = {x} meets Y = {y}")));
        }
        if x.union(y).max().is_some_and(|m| m > n) {
            return Err(RelationError::BadInstantiation(format!("X ∪ Y exceeds [{n}]")));
        }
        Ok(Instantiation { n, p, q, x, y })
    }

    /// `X = ∅`, `Y = [p+q]`.
    pub fn standard(p: usize, q: usize) -> Self {
        Instantiation {
            n: p + q,
            p,
            q,
            x: Subset::EMPTY,
            y: Subset::full(p + q),
        }
    }

    /// `γ(A)`.
    pub fn gamma(&self, a: Subset) -> Subset {
        a.map_through(&self.y.to_vec())
    }

    /// `γ(i)` for a single element.
    pub fn gamma_elem(&self, i: usize) -> usize {
        self.y.nth(i).expect("element of [p+q]")
    }

    /// `γ⁻¹(e)`, if `e ∈ Y`.
    pub fn gamma_inv(&self, e: usize) -> Option<usize> {
        self.y.rank(e)
    }

    /// `Ā = [p+q] ∖ A`.
    pub fn complement(&self, a: Subset) -> Subset {
        a.complement(self.p + self.q)
    }

    /// `I(A) = X ∪ γ(A)`.
    pub fn i_of(&self, a: Subset) -> Subset {
        self.x.union(self.gamma(a))
    }

    /// `J(A) = X ∪ γ(Ā)`.
    pub fn j_of(&self, a: Subset) -> Subset {
        self.x.union(self.gamma(self.complement(a)))
    }

    /// Every valid `(X, Y)` inside `[n]` for the given `p, q`.
    pub fn all(n: usize, p: usize, q: usize) -> Vec<Instantiation> {
        let mut out = Vec::new();
        for y in Subset::k_subsets(n, p + q) {
            for x in y.complement(n).subsets() {
                out.push(Instantiation { n, p, q, x, y });
            }
        }
        out
    }
}
