//! K'⊗K: the tensor product of a split composition algebra and a normed
//! division algebra, multiplied factorwise, `(A⊗a)(B⊗b) = AB ⊗ ab`.
//!
//! Elements are dense 8×8 coefficient grids over `E_A ⊗ e_a` (row index is
//! the split factor, column the normed one). The pair's masks decide which
//! entries may be non-zero.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::composition_algebra::{AlgebraId, CAElem, Parent, Rank, SignatureCounts};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A (K', K) pair: split family on the left, normed on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairId {
    k_prime: AlgebraId,
    k: AlgebraId,
}

impl PairId {
    pub fn new(k_prime: Rank, k: Rank) -> Self {
        PairId { k_prime: AlgebraId::split(k_prime), k: AlgebraId::normed(k) }
    }

    /// All 16 pairs, row-major over K' = R', C', H', O' and K = R, C, H, O.
    pub fn all() -> Vec<PairId> {
        Rank::ALL
            .iter()
            .flat_map(|&kp| Rank::ALL.iter().map(move |&k| PairId::new(kp, k)))
            .collect()
    }

    pub fn k_prime(&self) -> AlgebraId {
        self.k_prime
    }

    pub fn k(&self) -> AlgebraId {
        self.k
    }

    pub fn counts(&self) -> SignatureCounts {
        SignatureCounts::new(self.k_prime, self.k)
    }

    /// n = κ + κ'
    pub fn n(&self) -> usize {
        self.k.dim() + self.k_prime.dim()
    }

    pub fn dim(&self) -> usize {
        self.k.dim() * self.k_prime.dim()
    }

    pub fn contains(&self, a_prime: usize, a: usize) -> bool {
        self.k_prime.contains_slot(a_prime) && self.k.contains_slot(a)
    }

    pub fn ensure_same(&self, other: &PairId) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::PairMismatch { left: *self, right: *other })
        }
    }
}

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k_prime, self.k)
    }
}

/// Which tensor factor a single-factor element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// K', embedded as `E ⊗ 1`
    Split,
    /// K, embedded as `1 ⊗ e`
    Normed,
}

impl Factor {
    pub fn parent(self) -> Parent {
        match self {
            Factor::Split => Parent::SplitOctonion,
            Factor::Normed => Parent::Octonion,
        }
    }
}

/// A basis unit of one factor, `E_slot ⊗ 1` or `1 ⊗ e_slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisUnit {
    pub factor: Factor,
    pub slot: usize,
}

impl BasisUnit {
    pub fn is_real(&self) -> bool {
        self.slot == 0
    }

    pub fn label(&self) -> &'static str {
        self.factor.parent().labels()[self.slot]
    }

    /// |e|² of the unit inside its own factor (±1).
    pub fn norm_sign(&self) -> i8 {
        self.factor.parent().table().norm_sign(self.slot)
    }

    pub fn to_tensor<S: Scalar>(&self, pair: PairId) -> TensorElem<S> {
        TensorElem::lift(pair, self.factor, &CAElem::unit(self.factor.parent(), self.slot))
            .expect("basis unit is in its parent")
    }
}

/// Element of K'⊗K.
#[derive(Clone, PartialEq)]
pub struct TensorElem<S> {
    pair: PairId,
    coeffs: [[S; 8]; 8],
}

impl<S: Scalar> TensorElem<S> {
    pub fn zero(pair: PairId) -> Self {
        TensorElem { pair, coeffs: std::array::from_fn(|_| std::array::from_fn(|_| S::zero())) }
    }

    pub fn one(pair: PairId) -> Self {
        Self::real(pair, S::one())
    }

    pub fn real(pair: PairId, value: S) -> Self {
        let mut t = Self::zero(pair);
        t.coeffs[0][0] = value;
        t
    }

    /// Builds from a full grid, rejecting entries outside the pair's masks.
    pub fn from_grid(pair: PairId, coeffs: [[S; 8]; 8]) -> Result<Self> {
        for (ap, row) in coeffs.iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                if !c.is_zero() && !pair.contains(ap, a) {
                    let (algebra, slot) = if pair.k_prime.contains_slot(ap) {
                        (pair.k.to_string(), a)
                    } else {
                        (pair.k_prime.to_string(), ap)
                    };
                    return Err(Error::OutsideSubalgebra { algebra, slot });
                }
            }
        }
        Ok(TensorElem { pair, coeffs })
    }

    /// Embeds a factor element as `A ⊗ 1` or `1 ⊗ a`.
    pub fn lift(pair: PairId, factor: Factor, x: &CAElem<S>) -> Result<Self> {
        let alg = match factor {
            Factor::Split => pair.k_prime,
            Factor::Normed => pair.k,
        };
        x.check_in(alg)?;
        let mut t = Self::zero(pair);
        for (slot, c) in x.coeffs().iter().enumerate() {
            match factor {
                Factor::Split => t.coeffs[slot][0] = c.clone(),
                Factor::Normed => t.coeffs[0][slot] = c.clone(),
            }
        }
        Ok(t)
    }

    /// Elementary tensor `A ⊗ a`.
    pub fn tensor(pair: PairId, a_prime: &CAElem<S>, a: &CAElem<S>) -> Result<Self> {
        a_prime.check_in(pair.k_prime)?;
        a.check_in(pair.k)?;
        let coeffs = std::array::from_fn(|i| std::array::from_fn(|j| a_prime.coeff(i).clone() * a.coeff(j).clone()));
        Ok(TensorElem { pair, coeffs })
    }

    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn coeff(&self, a_prime: usize, a: usize) -> &S {
        &self.coeffs[a_prime][a]
    }

    pub fn grid(&self) -> &[[S; 8]; 8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    /// The `E_A ⊗ 1` column, read back as an element of K'.
    pub fn split_part(&self) -> CAElem<S> {
        CAElem::new(Parent::SplitOctonion, std::array::from_fn(|i| self.coeffs[i][0].clone()))
    }

    /// The `1 ⊗ e_a` row, read back as an element of K.
    pub fn normed_part(&self) -> CAElem<S> {
        CAElem::new(Parent::Octonion, self.coeffs[0].clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|c| c.clone() * k.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TensorElem<T> {
        TensorElem { pair: self.pair, coeffs: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.coeffs[i][j]))) }
    }

    fn terms(&self) -> Vec<(usize, usize, &S)> {
        let mut out = Vec::new();
        for (ap, row) in self.coeffs.iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((ap, a, c));
                }
            }
        }
        out
    }

    /// Factorwise bilinear product.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.pair.ensure_same(&rhs.pair)?;
        let split = Parent::SplitOctonion.table();
        let normed = Parent::Octonion.table();
        let rhs_terms = rhs.terms();
        let mut out = Self::zero(self.pair);
        for (ap, a, x) in self.terms() {
            for &(bp, b, y) in &rhs_terms {
                let (s1, cp) = split.product(ap, bp);
                let (s2, c) = normed.product(a, b);
                let term = x.clone() * y.clone();
                let slot = &mut out.coeffs[cp][c];
                *slot = if s1 * s2 > 0 { slot.clone() + term } else { slot.clone() - term };
            }
        }
        Ok(out)
    }

    /// Conjugates both factors: coefficient (A, a) picks up sign(A)·sign(a).
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for (ap, row) in out.coeffs.iter_mut().enumerate() {
            for (a, c) in row.iter_mut().enumerate() {
                if (ap == 0) != (a == 0) {
                    *c = -c.clone();
                }
            }
        }
        out
    }

    /// Conjugates only the split factor (the `*` operation on K').
    pub fn conj_split(&self) -> Self {
        let mut out = self.clone();
        for row in out.coeffs.iter_mut().skip(1) {
            for c in row.iter_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    /// Conjugates only the normed factor (the bar operation on K).
    pub fn conj_normed(&self) -> Self {
        let mut out = self.clone();
        for row in out.coeffs.iter_mut() {
            for c in row.iter_mut().skip(1) {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn commutes_with(&self, rhs: &Self) -> Result<bool> {
        Ok(self.product(rhs)? == rhs.product(self)?)
    }

    pub fn associator(&self, v: &Self, w: &Self) -> Result<Self> {
        Ok(self.product(v)?.product(w)? - self.product(&v.product(w)?)?)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .zip(rhs.coeffs.iter().flatten())
            .map(|(a, b)| (a.clone() - b.clone()).abs_f64())
            .fold(0.0, f64::max)
    }
}

/// Whether two single-factor basis units commute in `pair`.
pub fn t_commutes(pair: PairId, u: BasisUnit, v: BasisUnit) -> bool {
    if u.is_real() || v.is_real() || u.factor != v.factor || u.slot == v.slot {
        return true;
    }
    // same factor, distinct imaginary units
    let a: TensorElem<f64> = u.to_tensor(pair);
    let b: TensorElem<f64> = v.to_tensor(pair);
    a.commutes_with(&b).expect("same pair")
}

impl<S: Scalar> Add for TensorElem<S> {
    type Output = TensorElem<S>;

    /// Panics if the pairs differ.
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.pair, rhs.pair, "adding tensor elements of different pairs");
        for (a, b) in self.coeffs.iter_mut().flatten().zip(rhs.coeffs.into_iter().flatten()) {
            *a = a.clone() + b;
        }
        self
    }
}

impl<S: Scalar> Sub for TensorElem<S> {
    type Output = TensorElem<S>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for TensorElem<S> {
    type Output = TensorElem<S>;

    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> fmt::Debug for TensorElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for TensorElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let split = Parent::SplitOctonion.labels();
        let normed = Parent::Octonion.labels();
        let mut first = true;
        for (ap, a, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?}){}⊗{}", split[ap], normed[a])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use num::BigRational;
    use proptest::prelude::*;

    use super::*;

    type T = TensorElem<BigRational>;

    const OO: PairId = PairId { k_prime: AlgebraId::split(Rank::O), k: AlgebraId::normed(Rank::O) };

    fn split(slot: usize) -> T {
        BasisUnit { factor: Factor::Split, slot }.to_tensor(OO)
    }

    fn normed(slot: usize) -> T {
        BasisUnit { factor: Factor::Normed, slot }.to_tensor(OO)
    }

    fn units() -> Vec<BasisUnit> {
        let mut v: Vec<BasisUnit> = (0..8).map(|slot| BasisUnit { factor: Factor::Split, slot }).collect();
        v.extend((1..8).map(|slot| BasisUnit { factor: Factor::Normed, slot }));
        v
    }

    fn grid_in(pair: PairId, vals: Vec<i64>) -> T {
        let mut it = vals.into_iter();
        let coeffs = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let v = it.next().unwrap_or(0);
                BigRational::from_i64(if pair.contains(i, j) { v } else { 0 })
            })
        });
        TensorElem::from_grid(pair, coeffs).unwrap()
    }

    #[test]
    fn sixteen_pairs() {
        let all = PairId::all();
        assert_eq!(all.len(), 16);
        assert_eq!(all[15].dim(), 64);
        assert_eq!(all[15].n(), 16);
        assert_eq!(all[15].to_string(), "(O',O)");
        assert_eq!(PairId::new(Rank::C, Rank::O).n(), 10);
    }

    #[test]
    fn worked_products() {
        // (L⊗1)(L⊗1) = 1⊗1
        assert_eq!(split(7).product(&split(7)).unwrap(), T::one(OO));
        // (1⊗i)(L⊗1) = L⊗i = (L⊗1)(1⊗i)
        let li = T::tensor(OO, &CAElem::unit(Parent::SplitOctonion, 7), &CAElem::unit(Parent::Octonion, 1)).unwrap();
        assert_eq!(normed(1).product(&split(7)).unwrap(), li);
        assert_eq!(split(7).product(&normed(1)).unwrap(), li);
        // (I⊗j)(J⊗k) = K⊗i
        let ij = split(1).product(&normed(2)).unwrap();
        let jk = split(2).product(&normed(3)).unwrap();
        let ki = split(3).product(&normed(1)).unwrap();
        assert_eq!(ij.product(&jk).unwrap(), ki);
    }

    #[test]
    fn conjugation_signs() {
        let li = split(7).product(&normed(1)).unwrap();
        assert_eq!(li.conj(), li);
        assert_eq!(normed(1).conj(), -normed(1));
        assert_eq!(split(7).conj_split(), -split(7));
        assert_eq!(li.conj_normed(), -li.clone());
    }

    #[test]
    fn pair_mismatch_and_mask_violations() {
        let small = PairId::new(Rank::C, Rank::C);
        let a: T = T::one(small);
        assert!(matches!(a.product(&T::one(OO)), Err(Error::PairMismatch { .. })));
        // j is not in C
        assert!(T::lift(small, Factor::Normed, &CAElem::unit(Parent::Octonion, 2)).is_err());
        // K is not in C'
        assert!(T::lift(small, Factor::Split, &CAElem::unit(Parent::SplitOctonion, 3)).is_err());
        assert!(T::lift(small, Factor::Split, &CAElem::unit(Parent::SplitOctonion, 7)).is_ok());
    }

    #[test]
    fn commutation_dispatch() {
        let i = BasisUnit { factor: Factor::Normed, slot: 1 };
        let j = BasisUnit { factor: Factor::Normed, slot: 2 };
        let l = BasisUnit { factor: Factor::Split, slot: 7 };
        let one = BasisUnit { factor: Factor::Normed, slot: 0 };
        assert!(t_commutes(OO, i, l));
        assert!(!t_commutes(OO, i, j));
        for u in units() {
            assert!(t_commutes(OO, one, u));
        }
    }

    #[test]
    fn unit_law_and_cross_factor_commutativity() {
        for u in units() {
            let t: T = u.to_tensor(OO);
            assert_eq!(T::one(OO).product(&t).unwrap(), t);
            assert_eq!(t.product(&T::one(OO)).unwrap(), t);
        }
        for a in 0..8 {
            for b in 0..8 {
                let e = T::tensor(OO, &CAElem::unit(Parent::SplitOctonion, a), &CAElem::unit(Parent::Octonion, b)).unwrap();
                assert_eq!(split(a).product(&normed(b)).unwrap(), e);
                assert_eq!(normed(b).product(&split(a)).unwrap(), e);
            }
        }
    }

    #[test]
    fn commuting_units_associate_with_every_unit() {
        for u in units() {
            for v in units() {
                if !t_commutes(OO, u, v) {
                    continue;
                }
                let (tu, tv): (T, T) = (u.to_tensor(OO), v.to_tensor(OO));
                for w in units() {
                    assert!(tu.associator(&tv, &w.to_tensor(OO)).unwrap().is_zero(), "{u:?} {v:?} {w:?}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn conj_reverses_products_on_associative_pairs(
            a in prop::collection::vec(-4i64..=4, 64),
            b in prop::collection::vec(-4i64..=4, 64),
            kp in 0usize..3,
            k in 0usize..3,
        ) {
            let pair = PairId::new(Rank::ALL[kp], Rank::ALL[k]);
            let u = grid_in(pair, a);
            let v = grid_in(pair, b);
            prop_assert_eq!(u.product(&v).unwrap().conj(), v.conj().product(&u.conj()).unwrap());
            prop_assert_eq!(u.conj().conj(), u);
        }
    }
}
