//! Subspaces of `F_q^n`, indexed in rank order by echelon form.
//!
//! [`AvoidingLattice`] enumerates the subspaces `U` with `U ∩ Z = 0` for a fixed
//! subspace `Z`; with `Z = 0` this is the whole lattice. Such a `U` is the graph of a
//! linear map from its projection `Ū` onto a coordinate complement `C` of `Z`
//! into `Z`, so it is determined by the reduced echelon basis of `Ū` and the
//! images of those basis vectors.

use crate::field::Field;
use crate::linalg::Subspace;

/// `[n choose k]_q`, saturating.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Number of subspaces of `F_q^n`.
pub fn subspace_count(n: usize, q: u64) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, q)))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// The `idx`-th `k`-subset of `0..n` in lexicographic order.
fn unrank_combination(n: usize, k: usize, mut idx: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for slot in 0..k {
        for c in start..n {
            let rest = binomial(n - c - 1, k - slot - 1);
            if idx < rest {
                out.push(c);
                start = c + 1;
                break;
            }
            idx -= rest;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct AvoidingLattice<F: Field> {
    field: F,
    q: u64,
    ambient: usize,
    /// Coordinates spanning the complement `C`.
    complement: Vec<usize>,
    avoid: Vec<F::Vector>,
    /// Count of subspaces of each dimension.
    by_dim: Vec<u128>,
}

impl<F: Field> AvoidingLattice<F> {
    pub fn new(avoid: &Subspace<F>) -> Self {
        let field = avoid.field().clone();
        let q = field.size().expect("subspace lattices need a finite field");
        let complement = avoid.non_pivots();
        let c = complement.len();
        let z = avoid.dim();
        let by_dim = (0..=c)
            .map(|d| {
                gaussian_binomial(c, d, q)
                    .saturating_mul((q as u128).saturating_pow((d * z) as u32))
            })
            .collect();
        AvoidingLattice {
            field,
            q,
            ambient: avoid.ambient(),
            complement,
            avoid: avoid.basis().to_vec(),
            by_dim,
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::new(&Subspace::zero(field, ambient))
    }

    pub fn count(&self) -> u128 {
        self.by_dim.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Basis of the `idx`-th subspace; lower dimensions come first.
    pub fn unrank(&self, mut idx: u128) -> Vec<F::Vector> {
        let f = &self.field;
        let c = self.complement.len();
        let z = self.avoid.len();
        let mut d = 0;
        while idx >= self.by_dim[d] {
            idx -= self.by_dim[d];
            d += 1;
        }
        let tail = (self.q as u128).saturating_pow((d * z) as u32);
        let mut pivots = Vec::new();
        for k in 0..binomial(c, d) {
            let piv = unrank_combination(c, d, k);
            let free: usize = piv
                .iter()
                .enumerate()
                .map(|(i, &p)| c - p - 1 - (d - i - 1))
                .sum();
            let block = (self.q as u128).saturating_pow(free as u32).saturating_mul(tail);
            if idx < block {
                pivots = piv;
                break;
            }
            idx -= block;
        }
        let mut digit = || {
            let x = (idx % self.q as u128) as u64;
            idx /= self.q as u128;
            f.element(x)
        };
        let mut basis = Vec::with_capacity(d);
        for (i, &p) in pivots.iter().enumerate() {
            let mut v = f.zeros(self.ambient);
            f.set(&mut v, self.complement[p], f.one());
            for j in p + 1..c {
                if pivots[i + 1..].contains(&j) {
                    continue;
                }
                let x = digit();
                if !f.is_zero(&x) {
                    f.set(&mut v, self.complement[j], x);
                }
            }
            basis.push(v);
        }
        for v in basis.iter_mut() {
            for zk in &self.avoid {
                let x = digit();
                if !f.is_zero(&x) {
                    f.axpy(v, &x, zk);
                }
            }
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, PrimeField};
    use std::collections::HashSet;

    #[test]
    fn gaussian_counts() {
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(4, 2), 67);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(subspace_count(8, 2), 417199);
    }

    fn distinct<F: Field>(lat: &AvoidingLattice<F>) -> usize {
        let f = &lat.field;
        let mut seen = HashSet::new();
        for i in 0..lat.count() {
            let s = Subspace::span(f, lat.ambient(), lat.unrank(i));
            seen.insert(s.basis().to_vec());
        }
        seen.len()
    }

    #[test]
    fn full_lattice_is_duplicate_free() {
        for n in 0..=4 {
            let lat = AvoidingLattice::full(&Gf2, n);
            assert_eq!(lat.count(), subspace_count(n, 2));
            assert_eq!(distinct(&lat) as u128, lat.count());
        }
        let f3 = PrimeField::new(3).unwrap();
        let lat = AvoidingLattice::full(&f3, 3);
        assert_eq!(lat.count(), 28);
        assert_eq!(distinct(&lat), 28);
    }

    #[test]
    fn avoiding_lattice_meets_trivially() {
        let f = Gf2;
        let z = Subspace::span(&f, 4, vec![f.from_elems(&[1, 1, 0, 0].map(|x| f.from_i64(x))), f.unit(4, 3)]);
        let lat = AvoidingLattice::new(&z);
        let mut brute = 0;
        for i in 0..subspace_count(4, 2) {
            let u = Subspace::span(&f, 4, AvoidingLattice::full(&f, 4).unrank(i));
            if u.intersect(&z).dim() == 0 {
                brute += 1;
            }
        }
        assert_eq!(lat.count(), brute);
        assert_eq!(distinct(&lat) as u128, lat.count());
        for i in 0..lat.count() {
            let u = Subspace::span(&f, 4, lat.unrank(i));
            assert_eq!(u.intersect(&z).dim(), 0);
        }
    }
}
