//! Octonions, split octonions and their composition subalgebras.
//!
//! Every element lives in one of the two 8-dimensional parents and carries
//! its coefficients over a fixed ordered basis:
//!
//! ```text
//! normed: 1, i, j, k, kl, jl, il, l
//! split:  1, I, J, K, KL, JL, IL, L
//! ```
//!
//! The smaller algebras (R, C, H and C', H') are index masks over their
//! parent rather than separate types, so C ⊂ H ⊂ O are literal subspaces.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Normed,
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    R,
    C,
    H,
    O,
}

impl Rank {
    pub const ALL: [Rank; 4] = [Rank::R, Rank::C, Rank::H, Rank::O];

    pub fn dim(self) -> usize {
        match self {
            Rank::R => 1,
            Rank::C => 2,
            Rank::H => 4,
            Rank::O => 8,
        }
    }

    fn letter(self) -> char {
        match self {
            Rank::R => 'R',
            Rank::C => 'C',
            Rank::H => 'H',
            Rank::O => 'O',
        }
    }
}

/// The two 8-dimensional parents. Elements of different parents never mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parent {
    /// O, basis (1, i, j, k, kl, jl, il, l)
    Octonion,
    /// O', basis (1, I, J, K, KL, JL, IL, L)
    SplitOctonion,
}

impl Parent {
    pub fn family(self) -> Family {
        match self {
            Parent::Octonion => Family::Normed,
            Parent::SplitOctonion => Family::Split,
        }
    }

    pub fn table(self) -> &'static StructureTable {
        match self {
            Parent::Octonion => &NORMED,
            Parent::SplitOctonion => &SPLIT,
        }
    }

    /// Basis labels in table order, ASCII (`l` stands for ℓ).
    pub fn labels(self) -> [&'static str; 8] {
        match self {
            Parent::Octonion => ["1", "i", "j", "k", "kl", "jl", "il", "l"],
            Parent::SplitOctonion => ["1", "I", "J", "K", "KL", "JL", "IL", "L"],
        }
    }
}

/// One of the seven composition algebras (R appears in both families).
#[derive(Debug, Clone, Copy, Eq)]
pub struct AlgebraId {
    pub family: Family,
    pub rank: Rank,
}

impl PartialEq for AlgebraId {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && (self.rank == Rank::R || self.family == other.family)
    }
}

const MASK_R: &[usize] = &[0];
const MASK_C: &[usize] = &[0, 1];
const MASK_H: &[usize] = &[0, 1, 2, 3];
const MASK_FULL: &[usize] = &[0, 1, 2, 3, 4, 5, 6, 7];
const MASK_SPLIT_C: &[usize] = &[0, 7];
const MASK_SPLIT_H: &[usize] = &[0, 3, 4, 7];

impl AlgebraId {
    pub const fn normed(rank: Rank) -> Self {
        AlgebraId { family: Family::Normed, rank }
    }

    pub const fn split(rank: Rank) -> Self {
        AlgebraId { family: Family::Split, rank }
    }

    pub fn dim(&self) -> usize {
        self.rank.dim()
    }

    pub fn parent(&self) -> Parent {
        match self.family {
            Family::Normed => Parent::Octonion,
            Family::Split => Parent::SplitOctonion,
        }
    }

    /// Parent basis slots spanning this subalgebra, ascending.
    pub fn indices(&self) -> &'static [usize] {
        match (self.family, self.rank) {
            (_, Rank::R) => MASK_R,
            (_, Rank::O) => MASK_FULL,
            (Family::Normed, Rank::C) => MASK_C,
            (Family::Normed, Rank::H) => MASK_H,
            (Family::Split, Rank::C) => MASK_SPLIT_C,
            (Family::Split, Rank::H) => MASK_SPLIT_H,
        }
    }

    pub fn contains_slot(&self, slot: usize) -> bool {
        self.indices().contains(&slot)
    }

    /// Unit vectors of the subalgebra as elements of the parent.
    pub fn basis<S: Scalar>(&self) -> Vec<CAElem<S>> {
        self.indices().iter().map(|&i| CAElem::unit(self.parent(), i)).collect()
    }

    /// κ for a normed algebra; (κ'₊, κ'₋) for a split one.
    pub fn signature_counts(&self) -> (usize, usize) {
        let table = self.parent().table();
        let plus = self.indices().iter().filter(|&&i| table.norm_sign(i) > 0).count();
        (plus, self.dim() - plus)
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Normed => write!(f, "{}", self.rank.letter()),
            Family::Split => write!(f, "{}'", self.rank.letter()),
        }
    }
}

/// Signature bookkeeping for a pair (K', K): κ = |K|, κ'₊ + κ'₋ = |K'|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureCounts {
    pub kappa: usize,
    pub kappa_plus: usize,
    pub kappa_minus: usize,
}

impl SignatureCounts {
    pub fn new(k_prime: AlgebraId, k: AlgebraId) -> Self {
        let (kappa_plus, kappa_minus) = k_prime.signature_counts();
        SignatureCounts { kappa: k.dim(), kappa_plus, kappa_minus }
    }

    pub fn n(&self) -> usize {
        self.kappa + self.kappa_plus + self.kappa_minus
    }

    /// (κ + κ'₊, κ'₋)
    pub fn signature(&self) -> (usize, usize) {
        (self.kappa + self.kappa_plus, self.kappa_minus)
    }
}

/// Signed product of basis units: `e_p e_q = sign · e_index`.
#[derive(Debug)]
pub struct StructureTable {
    entries: [[(i8, u8); 8]; 8],
}

impl StructureTable {
    pub fn product(&self, p: usize, q: usize) -> (i8, usize) {
        let (s, r) = self.entries[p][q];
        (s, r as usize)
    }

    /// Sign of |e_p|² (the real coefficient of e_p · conj(e_p)).
    pub fn norm_sign(&self, p: usize) -> i8 {
        if p == 0 {
            1
        } else {
            // e_p conj(e_p) = -e_p e_p
            -self.entries[p][p].0
        }
    }
}

// Rows are the left factor. i(il) = j(jl) = k(kl) = -l.
static NORMED: StructureTable = StructureTable {
    entries: [
        [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1), (-1, 6), (-1, 7), (1, 4), (1, 5)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0), (-1, 7), (1, 6), (-1, 5), (1, 4)],
        [(1, 4), (-1, 5), (1, 6), (1, 7), (-1, 0), (1, 1), (-1, 2), (-1, 3)],
        [(1, 5), (1, 4), (1, 7), (-1, 6), (-1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 6), (1, 7), (-1, 4), (1, 5), (1, 2), (-1, 3), (-1, 0), (-1, 1)],
        [(1, 7), (-1, 6), (-1, 5), (-1, 4), (1, 3), (1, 2), (1, 1), (-1, 0)],
    ],
};

static SPLIT: StructureTable = StructureTable {
    entries: [
        [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1), (-1, 6), (-1, 7), (1, 4), (1, 5)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0), (-1, 7), (1, 6), (-1, 5), (1, 4)],
        [(1, 4), (-1, 5), (1, 6), (1, 7), (1, 0), (-1, 1), (1, 2), (1, 3)],
        [(1, 5), (1, 4), (1, 7), (-1, 6), (1, 1), (1, 0), (-1, 3), (1, 2)],
        [(1, 6), (1, 7), (-1, 4), (1, 5), (-1, 2), (1, 3), (1, 0), (1, 1)],
        [(1, 7), (-1, 6), (-1, 5), (-1, 4), (-1, 3), (-1, 2), (-1, 1), (1, 0)],
    ],
};

/// Element of O or O' as 8 coefficients over the parent's basis.
#[derive(Clone, PartialEq)]
pub struct CAElem<S> {
    parent: Parent,
    coeffs: [S; 8],
}

impl<S: Scalar> CAElem<S> {
    pub fn new(parent: Parent, coeffs: [S; 8]) -> Self {
        CAElem { parent, coeffs }
    }

    pub fn zero(parent: Parent) -> Self {
        CAElem { parent, coeffs: std::array::from_fn(|_| S::zero()) }
    }

    pub fn one(parent: Parent) -> Self {
        Self::unit(parent, 0)
    }

    /// The basis unit at `slot` (0 is the multiplicative unit).
    pub fn unit(parent: Parent, slot: usize) -> Self {
        let mut e = Self::zero(parent);
        e.coeffs[slot] = S::one();
        e
    }

    pub fn from_i64(parent: Parent, coeffs: [i64; 8]) -> Self {
        CAElem { parent, coeffs: coeffs.map(S::from_i64) }
    }

    pub fn parent(&self) -> Parent {
        self.parent
    }

    pub fn coeffs(&self) -> &[S; 8] {
        &self.coeffs
    }

    pub fn coeff(&self, slot: usize) -> &S {
        &self.coeffs[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn re(&self) -> &S {
        &self.coeffs[0]
    }

    /// True iff all coefficients outside `alg`'s mask vanish.
    pub fn in_subalgebra(&self, alg: AlgebraId) -> bool {
        alg.parent() == self.parent
            && self.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || alg.contains_slot(i))
    }

    /// Errors with the first offending slot if `self` is not in `alg`.
    pub fn check_in(&self, alg: AlgebraId) -> Result<()> {
        if alg.parent() != self.parent {
            return Err(Error::AlgebraMismatch { left: self.parent, right: alg.parent() });
        }
        match (0..8).find(|&i| !self.coeffs[i].is_zero() && !alg.contains_slot(i)) {
            None => Ok(()),
            Some(slot) => Err(Error::OutsideSubalgebra { algebra: alg.to_string(), slot }),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        CAElem { parent: self.parent, coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * k.clone()) }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CAElem<T> {
        CAElem { parent: self.parent, coeffs: std::array::from_fn(|i| f(&self.coeffs[i])) }
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch { left: self.parent, right: other.parent })
        }
    }

    /// Bilinear extension of the structure table.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.same_parent(rhs)?;
        let table = self.parent.table();
        let mut out = Self::zero(self.parent);
        for (p, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in rhs.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (sign, r) = table.product(p, q);
                let term = x.clone() * y.clone();
                out.coeffs[r] = if sign > 0 {
                    out.coeffs[r].clone() + term
                } else {
                    out.coeffs[r].clone() - term
                };
            }
        }
        Ok(out)
    }

    /// Fixes 1, negates every imaginary unit.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().skip(1) {
            *c = -c.clone();
        }
        out
    }

    /// |x|² = Re(x conj(x)), computed from the signed sum of squares.
    pub fn norm(&self) -> S {
        let table = self.parent.table();
        self.coeffs.iter().enumerate().fold(S::zero(), |acc, (p, c)| {
            let sq = c.clone() * c.clone();
            if table.norm_sign(p) > 0 {
                acc + sq
            } else {
                acc - sq
            }
        })
    }

    /// (x, y) = Re(x conj(y)).
    pub fn inner(&self, rhs: &Self) -> Result<S> {
        self.same_parent(rhs)?;
        let table = self.parent.table();
        Ok(self.coeffs.iter().zip(rhs.coeffs.iter()).enumerate().fold(S::zero(), |acc, (p, (a, b))| {
            let t = a.clone() * b.clone();
            if table.norm_sign(p) > 0 {
                acc + t
            } else {
                acc - t
            }
        }))
    }

    /// conj(x) / |x|²; null elements of the split algebras have no inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        let conj = self.conj();
        Ok(CAElem { parent: self.parent, coeffs: conj.coeffs.map(|c| c / n.clone()) })
    }

    /// Associator [x, y, z] = (xy)z - x(yz).
    pub fn associator(&self, y: &Self, z: &Self) -> Result<Self> {
        let left = self.product(y)?.product(z)?;
        let right = self.product(&y.product(z)?)?;
        Ok(left - right)
    }

    /// Commutator xy - yx.
    pub fn commutator(&self, y: &Self) -> Result<Self> {
        Ok(self.product(y)? - y.product(self)?)
    }
}

/// (xx)y = x(xy), (xy)x = x(yx) and (yx)x = y(xx), all exactly.
pub fn check_alternative<S: Scalar>(x: &CAElem<S>, y: &CAElem<S>) -> Result<bool> {
    let xx = x.product(x)?;
    let left = xx.product(y)? == x.product(&x.product(y)?)?;
    let flexible = x.product(y)?.product(x)? == x.product(&y.product(x)?)?;
    let right = y.product(x)?.product(x)? == y.product(&xx)?;
    Ok(left && flexible && right)
}

/// Moufang identity p(q(pr)) = ((pq)p)r.
pub fn check_moufang<S: Scalar>(p: &CAElem<S>, q: &CAElem<S>, r: &CAElem<S>) -> Result<bool> {
    let lhs = p.product(&q.product(&p.product(r)?)?)?;
    let rhs = p.product(q)?.product(p)?.product(r)?;
    Ok(lhs == rhs)
}

impl<S: Scalar> Add for CAElem<S> {
    type Output = CAElem<S>;

    /// Panics if the parents differ.
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.parent, rhs.parent, "adding elements of different parents");
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            *a = a.clone() + b;
        }
        out
    }
}

impl<S: Scalar> Sub for CAElem<S> {
    type Output = CAElem<S>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for CAElem<S> {
    type Output = CAElem<S>;

    fn neg(self) -> Self {
        CAElem { parent: self.parent, coeffs: self.coeffs.map(|c| -c) }
    }
}

impl<S: Scalar> fmt::Debug for CAElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for CAElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.parent.labels();
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?}){label}")?;
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
    use crate::scalar::rat;

    type Q = CAElem<BigRational>;

    const O: Parent = Parent::Octonion;
    const OS: Parent = Parent::SplitOctonion;

    fn e(parent: Parent, slot: usize) -> Q {
        CAElem::unit(parent, slot)
    }

    fn int_coeffs() -> impl Strategy<Value = [i64; 8]> {
        prop::array::uniform8(-6i64..=6)
    }

    fn algebras() -> Vec<AlgebraId> {
        let mut v: Vec<AlgebraId> = Rank::ALL.iter().map(|&r| AlgebraId::normed(r)).collect();
        v.extend(Rank::ALL.iter().map(|&r| AlgebraId::split(r)));
        v
    }

    fn masked(parent: Parent, alg: AlgebraId, c: [i64; 8]) -> Q {
        let mut c = c;
        for (i, v) in c.iter_mut().enumerate() {
            if !alg.contains_slot(i) {
                *v = 0;
            }
        }
        CAElem::from_i64(parent, c)
    }

    #[test]
    fn spot_products() {
        // j(il) = kl = -(il)j
        assert_eq!(e(O, 2).product(&e(O, 6)).unwrap(), e(O, 4));
        assert_eq!(e(O, 6).product(&e(O, 2)).unwrap(), -e(O, 4));
        // KL KL = 1, L L = 1, KL JL = -I
        assert_eq!(e(OS, 4).product(&e(OS, 4)).unwrap(), e(OS, 0));
        assert_eq!(e(OS, 7).product(&e(OS, 7)).unwrap(), e(OS, 0));
        assert_eq!(e(OS, 4).product(&e(OS, 5)).unwrap(), -e(OS, 1));
    }

    #[test]
    fn table_unit_row_and_diagonal() {
        for parent in [O, OS] {
            let t = parent.table();
            for p in 0..8 {
                assert_eq!(t.product(0, p), (1, p));
                assert_eq!(t.product(p, 0), (1, p));
            }
            for p in 1..8 {
                let expected = if parent == OS && p >= 4 { 1 } else { -1 };
                assert_eq!(t.product(p, p), (expected, 0), "{parent:?} slot {p}");
            }
        }
    }

    #[test]
    fn imaginary_units_anticommute() {
        for parent in [O, OS] {
            let t = parent.table();
            for p in 1..8 {
                for q in 1..8 {
                    if p != q {
                        let (s1, r1) = t.product(p, q);
                        let (s2, r2) = t.product(q, p);
                        assert_eq!((r1, s1), (r2, -s2), "{parent:?} {p} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_parents_are_rejected() {
        let err = e(O, 1).product(&e(OS, 1)).unwrap_err();
        assert!(matches!(err, Error::AlgebraMismatch { .. }));
        assert!(e(O, 1).inner(&e(OS, 1)).is_err());
    }

    #[test]
    fn conjugation_on_basis() {
        let x = e(O, 0) + e(O, 1);
        assert_eq!(x.conj(), e(O, 0) - e(O, 1));
        for parent in [O, OS] {
            for p in 0..8 {
                for q in 0..8 {
                    let lhs = e(parent, p).product(&e(parent, q)).unwrap().conj();
                    let rhs = e(parent, q).conj().product(&e(parent, p).conj()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norms_and_inner_products() {
        assert_eq!((e(O, 0) + e(O, 1)).norm(), rat(2, 1));
        assert_eq!(e(OS, 7).norm(), rat(-1, 1));
        assert_eq!(e(O, 1).inner(&e(O, 2)).unwrap(), rat(0, 1));
        assert_eq!(e(OS, 4).inner(&e(OS, 4)).unwrap(), rat(-1, 1));
        for parent in [O, OS] {
            for p in 0..8 {
                let u = e(parent, p);
                let re = u.product(&u.conj()).unwrap();
                assert_eq!(re, CAElem::one(parent).scale(&u.norm()));
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(e(O, 1).inverse().unwrap(), -e(O, 1));
        assert_eq!(e(OS, 7).inverse().unwrap(), e(OS, 7));
        assert_eq!((e(OS, 0) + e(OS, 7)).inverse().unwrap_err(), Error::NotInvertible);
        let x: Q = CAElem::from_i64(OS, [1, 2, 0, -1, 3, 0, 1, 1]);
        let inv = x.inverse().unwrap();
        assert_eq!(x.product(&inv).unwrap(), CAElem::one(OS));
        assert_eq!(inv.product(&x).unwrap(), CAElem::one(OS));
    }

    #[test]
    fn alternativity_on_basis_pair() {
        let (i, j) = (e(O, 1), e(O, 2));
        let left = i.product(&i).unwrap().product(&j).unwrap();
        let right = i.product(&i.product(&j).unwrap()).unwrap();
        assert_eq!(left, -j.clone());
        assert_eq!(right, -j.clone());
        assert!(check_alternative(&i, &j).unwrap());
    }

    #[test]
    fn octonions_are_not_associative() {
        // (ij)l = kl but i(jl) = -kl
        let a = e(O, 1).associator(&e(O, 2), &e(O, 7)).unwrap();
        assert!(!a.is_zero());
    }

    #[test]
    fn moufang_on_all_basis_triples() {
        for parent in [O, OS] {
            for p in 0..8 {
                for q in 0..8 {
                    for r in 0..8 {
                        assert!(check_moufang(&e(parent, p), &e(parent, q), &e(parent, r)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn subalgebras_close_under_products() {
        for alg in algebras() {
            let parent = alg.parent();
            for &p in alg.indices() {
                for &q in alg.indices() {
                    assert!(e(parent, p).product(&e(parent, q)).unwrap().in_subalgebra(alg), "{alg} {p} {q}");
                }
            }
        }
    }

    #[test]
    fn artin_two_generated_subalgebras_associate() {
        for parent in [O, OS] {
            for u in 0..8 {
                for v in 0..8 {
                    let (eu, ev) = (e(parent, u), e(parent, v));
                    let gens = [CAElem::one(parent), eu.clone(), ev.clone(), eu.product(&ev).unwrap()];
                    for a in &gens {
                        for b in &gens {
                            for c in &gens {
                                assert!(a.associator(b, c).unwrap().is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signature_counts_follow_masks() {
        let counts: Vec<_> = Rank::ALL.iter().map(|&r| AlgebraId::split(r).signature_counts()).collect();
        assert_eq!(counts, vec![(1, 0), (1, 1), (2, 2), (4, 4)]);
        assert_eq!(AlgebraId::normed(Rank::R), AlgebraId::split(Rank::R));
        assert_ne!(AlgebraId::normed(Rank::C), AlgebraId::split(Rank::C));
        assert!(e(OS, 3).check_in(AlgebraId::split(Rank::C)).is_err());
    }

    proptest! {
        #[test]
        fn composition_property(a in int_coeffs(), b in int_coeffs(), which in 0usize..8) {
            let alg = algebras()[which];
            let x = masked(alg.parent(), alg, a);
            let y = masked(alg.parent(), alg, b);
            let xy = x.product(&y).unwrap();
            prop_assert_eq!(xy.norm(), x.norm() * y.norm());
            prop_assert!(xy.in_subalgebra(alg));
        }

        #[test]
        fn alternative_and_anti_automorphic(a in int_coeffs(), b in int_coeffs(), split in any::<bool>()) {
            let parent = if split { OS } else { O };
            let x: Q = CAElem::from_i64(parent, a);
            let y: Q = CAElem::from_i64(parent, b);
            prop_assert!(check_alternative(&x, &y).unwrap());
            prop_assert_eq!(x.product(&y).unwrap().conj(), y.conj().product(&x.conj()).unwrap());
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(CAElem::one(parent).product(&x).unwrap(), x.clone());
            // polarization: 2(x,y) = |x+y|² - |x|² - |y|²
            let two = rat(2, 1);
            prop_assert_eq!(two * x.inner(&y).unwrap(), (x.clone() + y.clone()).norm() - x.norm() - y.norm());
        }
    }
}
