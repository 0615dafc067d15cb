//! Finite probability distributions with exact weights.
//!
//! A [`Dist`] is a multiset of `(value, weight)` pairs whose weights sum to
//! exactly one. [`Dist::bind`] is the literal multiset union of
//! weight-scaled sub-distributions, so duplicate values are kept as separate
//! entries. Equality between distributions goes through [`Canonical`], the
//! collapsed form keyed by the value order.

use std::collections::BTreeMap;

use crate::prob::Prob;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistError {
    #[error("cannot draw uniformly from an empty support")]
    EmptySupport,
    #[error("uniform support contains a repeated element")]
    DuplicateElement,
    #[error("weights sum to {0}, not 1")]
    NotNormalized(Prob),
}

#[derive(Debug, Clone)]
pub struct Dist<V> {
    entries: Vec<(V, Prob)>,
}

impl<V> Dist<V> {
    /// The point mass `{(a, 1)}`.
    pub fn pure(a: V) -> Self {
        Dist {
            entries: vec![(a, Prob::one())],
        }
    }

    /// Each element of `items` with weight `1/|items|`.
    pub fn uniform<I>(items: I) -> Result<Self, DistError>
    where
        I: IntoIterator<Item = V>,
        V: Ord,
    {
        let items: Vec<V> = items.into_iter().collect();
        if items.is_empty() {
            return Err(DistError::EmptySupport);
        }
        let mut refs: Vec<&V> = items.iter().collect();
        refs.sort();
        if refs.windows(2).any(|w| w[0] == w[1]) {
            return Err(DistError::DuplicateElement);
        }
        let w = Prob::reciprocal(items.len());
        Ok(Dist {
            entries: items.into_iter().map(|v| (v, w.clone())).collect(),
        })
    }

    /// Builds a distribution from explicit weights. Zero weights are dropped;
    /// the remaining weights must sum to exactly one.
    pub fn from_entries(entries: Vec<(V, Prob)>) -> Result<Self, DistError> {
        let entries: Vec<(V, Prob)> = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let total: Prob = entries.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(DistError::NotNormalized(total));
        }
        Ok(Dist { entries })
    }

    /// `x <- self; f(x)`.
    pub fn bind<W, F>(&self, mut f: F) -> Dist<W>
    where
        F: FnMut(&V) -> Dist<W>,
    {
        let mut out = Vec::with_capacity(self.entries.len());
        for (v, p) in &self.entries {
            let sub = f(v);
            if p.is_one() {
                out.extend(sub.entries);
            } else {
                out.extend(sub.entries.into_iter().map(|(w, q)| (w, p * &q)));
            }
        }
        Dist { entries: out }
    }

    /// `x <- self; return f(x)`.
    pub fn map<W, F>(&self, mut f: F) -> Dist<W>
    where
        F: FnMut(&V) -> W,
    {
        Dist {
            entries: self.entries.iter().map(|(v, p)| (f(v), p.clone())).collect(),
        }
    }

    pub fn entries(&self) -> &[(V, Prob)] {
        &self.entries
    }

    /// Number of multiset entries (not distinct values).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> Prob {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    /// Probability that `pred` holds of a value drawn from `self`.
    pub fn pr<P>(&self, mut pred: P) -> Prob
    where
        P: FnMut(&V) -> bool,
    {
        self.entries.iter().filter(|(v, _)| pred(v)).map(|(_, p)| p).sum()
    }

    pub fn canonicalize(&self) -> Canonical<V>
    where
        V: Ord + Clone,
    {
        let mut pairs: BTreeMap<V, Prob> = BTreeMap::new();
        for (v, p) in &self.entries {
            match pairs.get_mut(v) {
                Some(acc) => *acc = &*acc + p,
                None => {
                    pairs.insert(v.clone(), p.clone());
                }
            }
        }
        Canonical { pairs }
    }
}

impl Dist<bool> {
    /// `true` with probability `p`.
    pub fn bernoulli(p: Prob) -> Self {
        let q = p.complement();
        let entries = vec![(true, p), (false, q)]
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .collect();
        Dist { entries }
    }
}

/// Collapsed form of a distribution: distinct values in ascending order,
/// each with its total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical<V: Ord> {
    pairs: BTreeMap<V, Prob>,
}

impl<V: Ord> Canonical<V> {
    pub fn get(&self, v: &V) -> Prob {
        self.pairs.get(v).cloned().unwrap_or_else(Prob::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, &Prob)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The single support value, if the distribution is a point mass.
    pub fn point(&self) -> Option<&V> {
        match self.pairs.len() {
            1 => self.pairs.keys().next(),
            _ => None,
        }
    }

    /// The smallest value whose weight differs between `self` and `other`,
    /// with the weight on each side.
    pub fn first_difference<'a>(&'a self, other: &'a Canonical<V>) -> Option<(&'a V, Prob, Prob)> {
        let mut keys: Vec<&V> = self.pairs.keys().chain(other.pairs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let (l, r) = (self.get(k), other.get(k));
            (l != r).then_some((k, l, r))
        })
    }
}

/// True iff the two distributions have identical canonical forms.
pub fn dist_eq<V: Ord + Clone>(d1: &Dist<V>, d2: &Dist<V>) -> bool {
    d1.canonicalize() == d2.canonicalize()
}

/// `d1` and `d2` are indistinguishable modulo `eps` with respect to `pred`:
/// `|Pr[pred(d1)] - Pr[pred(d2)]| <= eps`.
pub fn indist<V, P>(d1: &Dist<V>, d2: &Dist<V>, mut pred: P, eps: &Prob) -> bool
where
    P: FnMut(&V) -> bool,
{
    let l = d1.pr(&mut pred);
    let r = d2.pr(&mut pred);
    l.abs_diff(&r) <= *eps
}

/// `|Pr[d = true] - 1/2|`, the edge over a coin flip.
pub fn advantage(d: &Dist<bool>) -> Prob {
    d.pr(|b| *b).abs_diff(&Prob::half())
}

/// Compares `x <- S; phi(f(x))` against `x <- T; phi(x)`, both with uniform
/// draws. Equal whenever `f` is a bijection or a surjective N-to-one map.
pub fn resample_check<S, T, W, F, Phi>(domain: Vec<S>, codomain: Vec<T>, f: F, mut phi: Phi) -> Result<bool, DistError>
where
    S: Ord,
    T: Ord,
    W: Ord + Clone,
    F: Fn(&S) -> T,
    Phi: FnMut(&T) -> Dist<W>,
{
    let left = Dist::uniform(domain)?.bind(|x| phi(&f(x)));
    let right = Dist::uniform(codomain)?.bind(|x| phi(x));
    Ok(dist_eq(&left, &right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, d: u64) -> Prob {
        Prob::new(n, d).unwrap()
    }

    #[test]
    fn pure_is_point_mass() {
        let d = Dist::pure(true);
        assert_eq!(d.entries(), &[(true, Prob::one())]);
        assert_eq!(Dist::pure(7).pr(|x| *x == 7), Prob::one());
        assert!(dist_eq(&Dist::pure(0), &Dist::uniform([0]).unwrap()));
    }

    #[test]
    fn uniform_errors() {
        assert_eq!(Dist::<u8>::uniform([]).unwrap_err(), DistError::EmptySupport);
        assert_eq!(Dist::uniform([1, 2, 1]).unwrap_err(), DistError::DuplicateElement);
        let d = Dist::uniform([1u64, 4, 16]).unwrap();
        assert!(d.entries().iter().all(|(_, w)| *w == p(1, 3)));
        let c = Dist::uniform([true, false]).unwrap().canonicalize();
        assert_eq!(c.get(&true), Prob::half());
        assert_eq!(c.get(&false), Prob::half());
    }

    #[test]
    fn bind_relabels_and_expands() {
        let flipped = Dist::uniform([0u8, 1]).unwrap().bind(|b| Dist::pure(1 - b));
        let c = flipped.canonicalize();
        assert_eq!(c.get(&0), Prob::half());
        assert_eq!(c.get(&1), Prob::half());

        // By hand: 1/3 * 1/2 for each of {1,11,2,12,4,14}.
        let d = Dist::uniform([1u32, 2, 4])
            .unwrap()
            .bind(|&x| Dist::uniform([x, x + 10]).unwrap());
        assert_eq!(d.len(), 6);
        let mut values: Vec<u32> = d.entries().iter().map(|(v, _)| *v).collect();
        values.sort();
        assert_eq!(values, vec![1, 2, 4, 11, 12, 14]);
        assert!(d.entries().iter().all(|(_, w)| *w == p(1, 6)));
    }

    #[test]
    fn bind_keeps_multiset_entries() {
        let d = Dist::uniform([0u8, 1]).unwrap().bind(|_| Dist::pure(0u8));
        assert_eq!(d.len(), 2);
        assert_eq!(d.canonicalize().point(), Some(&0));
    }

    #[test]
    fn canonical_merges_duplicates() {
        let d = Dist::from_entries(vec![(0u8, Prob::half()), (0, Prob::half())]).unwrap();
        assert_eq!(d.canonicalize().get(&0), Prob::one());
        let d = Dist::from_entries(vec![(1u8, p(1, 4)), (0, p(1, 2)), (1, p(1, 4))]).unwrap();
        let c = d.canonicalize();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get(&0), Prob::half());
        assert_eq!(c.get(&1), Prob::half());
    }

    #[test]
    fn from_entries_validates_mass() {
        assert!(matches!(
            Dist::from_entries(vec![(0u8, p(1, 3))]),
            Err(DistError::NotNormalized(_))
        ));
        let d = Dist::from_entries(vec![(0u8, Prob::zero()), (1, Prob::one())]).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn pr_of_units_in_qr21() {
        // 3 of the 12 units mod 21 are squares.
        let units = [1u64, 2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20];
        let d = Dist::uniform(units).unwrap();
        assert_eq!(d.pr(|x| [1, 4, 16].contains(x)), p(1, 4));
        assert_eq!(d.pr(|_| true), Prob::one());
        let squares = d.bind(|x| Dist::pure(x * x % 21));
        assert!(dist_eq(&squares, &Dist::uniform([1u64, 4, 16]).unwrap()));
    }

    #[test]
    fn dist_eq_detects_difference() {
        assert!(!dist_eq(&Dist::uniform([0u8, 1]).unwrap(), &Dist::pure(0)));
    }

    #[test]
    fn indist_examples() {
        let coin = Dist::uniform([true, false]).unwrap();
        let yes = Dist::pure(true);
        assert!(indist(&coin, &coin, |b| *b, &Prob::zero()));
        assert!(indist(&yes, &coin, |b| *b, &Prob::half()));
        assert!(!indist(&yes, &coin, |b| *b, &p(1, 4)));
    }

    #[test]
    fn advantage_examples() {
        assert_eq!(advantage(&Dist::uniform([true, false]).unwrap()), Prob::zero());
        assert_eq!(advantage(&Dist::pure(true)), Prob::half());
        assert_eq!(advantage(&Dist::pure(false)), Prob::half());
        assert_eq!(advantage(&Dist::bernoulli(p(3, 4))), p(1, 4));
    }

    #[test]
    fn resample_examples() {
        assert!(resample_check(vec![0u8, 1], vec![0u8, 1], |x| *x, |x| Dist::pure(*x)).unwrap());
        let units = vec![1u64, 2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20];
        assert!(resample_check(units, vec![1u64, 4, 16], |x| x * x % 21, |x| Dist::pure(*x)).unwrap());
        assert!(!resample_check(vec![0u8, 1, 2], vec![0u8, 1], |x| (*x).min(1), |x| Dist::pure(*x)).unwrap());
    }

    #[test]
    fn first_difference_reports_smallest_key() {
        let a = Dist::uniform([true, false]).unwrap().canonicalize();
        let b = Dist::pure(true).canonicalize();
        let (v, l, r) = a.first_difference(&b).unwrap();
        assert!(!*v);
        assert_eq!((l, r), (Prob::half(), Prob::zero()));
        assert!(a.first_difference(&a).is_none());
    }
}
