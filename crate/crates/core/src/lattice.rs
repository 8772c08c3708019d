//! Finite complete lattices given by an explicit order relation.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Dense element id. Ids follow the canonical (input) order of a definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Elem(u32);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("order relation has {got} entries, expected {expected}")]
    BadShape { expected: usize, got: usize },
    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("order is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("order pair references element {0} outside 0..{1}")]
    OutOfRange(usize, usize),
}

/// A finite lattice with precomputed binary join and meet tables.
///
/// Finiteness makes every lattice with a bottom and top complete, so
/// arbitrary joins are folds of the binary table starting at bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Builds a lattice from a full `n x n` order matrix (row-major, `leq[a*n+b]` iff a <= b).
    pub fn from_order(n: usize, leq: Vec<bool>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if leq.len() != n * n {
            return Err(LatticeError::BadShape { expected: n * n, got: leq.len() });
        }
        for a in 0..n {
            if !leq[a * n + a] {
                return Err(LatticeError::NotReflexive(a));
            }
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::NotAntisymmetric(a, b));
                }
                if !leq[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b * n + c] && !leq[a * n + c] {
                        return Err(LatticeError::NotTransitive(a, b, c));
                    }
                }
            }
        }

        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> =
                    (0..n).filter(|&u| leq[a * n + u] && leq[b * n + u]).collect();
                let least = ub.iter().copied().find(|&u| ub.iter().all(|&v| leq[u * n + v]));
                join[a * n + b] = Elem::new(least.ok_or(LatticeError::NoJoin(a, b))?);
                let lb: Vec<usize> =
                    (0..n).filter(|&l| leq[l * n + a] && leq[l * n + b]).collect();
                let greatest = lb.iter().copied().find(|&l| lb.iter().all(|&v| leq[v * n + l]));
                meet[a * n + b] = Elem::new(greatest.ok_or(LatticeError::NoMeet(a, b))?);
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b * n + x]));
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x * n + t]));
        // A finite poset with all binary joins and meets has both extremes.
        let bottom = Elem::new(bottom.expect("finite lattice has a bottom"));
        let top = Elem::new(top.expect("finite lattice has a top"));
        Ok(FiniteLattice { n, leq, join, meet, bottom, top })
    }

    /// Builds a lattice from a generating relation; the reflexive-transitive closure is taken.
    pub fn from_generators(n: usize, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n {
                return Err(LatticeError::OutOfRange(a, n));
            }
            if b >= n {
                return Err(LatticeError::OutOfRange(b, n));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        Self::from_order(n, leq)
    }

    /// The chain 0 < 1 < ... < n-1.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        Self::from_order(n, leq)
    }

    /// Componentwise product; element `(a, b)` gets id `a * other.len() + b`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq[(x / n2) * n1 + y / n2] && other.leq[(x % n2) * n2 + y % n2];
            }
        }
        Self::from_order(n, leq).expect("product of lattices is a lattice")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.n).map(Elem::new)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.n + b.index()]
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    /// Elements below `q`, in canonical order.
    pub fn down_set(&self, q: Elem) -> Vec<Elem> {
        self.elements().filter(|&p| self.leq(p, q)).collect()
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        covering_pairs(self.n, |a, b| self.leq[a * self.n + b])
    }

    /// The sublattice-order restricted to `subset` (ids are positions in `subset`).
    pub fn restrict(&self, subset: &[Elem]) -> Result<FiniteLattice, LatticeError> {
        let m = subset.len();
        let mut leq = vec![false; m * m];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                leq[i * m + j] = self.leq(a, b);
            }
        }
        Self::from_order(m, leq)
    }
}

/// Hasse edges of an arbitrary finite partial order given as a predicate.
pub fn covering_pairs(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq(a, b) {
                continue;
            }
            let between = (0..n).any(|c| c != a && c != b && leq(a, c) && leq(c, b));
            if !between {
                out.push((Elem::new(a), Elem::new(b)));
            }
        }
    }
    out
}

/// Iterates over all subsets of `items` as bitmasks (requires `items.len() < 64`).
pub(crate) fn subsets<T: Copy>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    assert!(items.len() < 64);
    (0u64..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1u64 << i) != 0)
            .map(|(_, &x)| x)
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Elem {
        Elem::new(i)
    }

    #[test]
    fn chain_tables() {
        let l = FiniteLattice::chain(4).unwrap();
        assert_eq!(l.bottom(), e(0));
        assert_eq!(l.top(), e(3));
        assert_eq!(l.join(e(1), e(2)), e(2));
        assert_eq!(l.meet(e(1), e(2)), e(1));
        assert_eq!(l.join_all([]), e(0));
        assert_eq!(l.meet_all([]), e(3));
        assert_eq!(l.covers().len(), 3);
    }

    #[test]
    fn generators_take_closure() {
        let l = FiniteLattice::from_generators(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(l.leq(e(0), e(2)));
        assert_eq!(l.covers(), vec![(e(0), e(1)), (e(1), e(2))]);
    }

    #[test]
    fn rejects_non_lattices() {
        // two incomparable maxima: no join
        let err = FiniteLattice::from_generators(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(err, LatticeError::NoJoin(1, 2));
        let err = FiniteLattice::from_generators(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, LatticeError::NotAntisymmetric(0, 1));
        assert_eq!(FiniteLattice::chain(0).unwrap_err(), LatticeError::Empty);
        assert!(matches!(
            FiniteLattice::from_generators(2, &[(0, 5)]),
            Err(LatticeError::OutOfRange(5, 2))
        ));
    }

    #[test]
    fn diamond_m3() {
        let l = FiniteLattice::from_generators(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap();
        assert_eq!(l.join(e(1), e(2)), e(4));
        assert_eq!(l.meet(e(1), e(2)), e(0));
    }

    #[test]
    fn product_of_chains() {
        let a = FiniteLattice::chain(2).unwrap();
        let sq = a.product(&a);
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.join(e(1), e(2)), e(3));
        assert_eq!(sq.meet(e(1), e(2)), e(0));
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(subsets(&[1, 2, 3]).count(), 8);
        assert_eq!(subsets::<u8>(&[]).collect::<Vec<_>>(), vec![Vec::<u8>::new()]);
    }
}
