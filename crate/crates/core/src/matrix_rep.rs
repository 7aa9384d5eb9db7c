//! The vector representation V₂ of K'⊕K as 2×2 matrices
//!
//! ```text
//! X = | A    ā  |      A ∈ K', a ∈ K
//!     | a   -A* |
//! ```
//!
//! together with trace reversal and the off-diagonal 4×4 lift
//! `Γ(X) = [[0, X], [X̃, 0]]`.
//!
//! Matrix products never reassociate: a chain must be parenthesized by the
//! caller, one binary [`Mat::product`] at a time.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::composition_algebra::{CAElem, Parent};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor_algebra::{BasisUnit, Factor, PairId, TensorElem};

/// Basis unit behind coordinate slot `p` (0-based).
///
/// Slots run over K in basis order, then the positive-norm units of K'
/// (1, I, J, K as present), then the negative-norm ones (KL, JL, IL, L as
/// present), so the metric is always `diag(+1, ..., +1, -1, ..., -1)`.
pub fn coord_unit(pair: PairId, p: usize) -> Result<BasisUnit> {
    let k = pair.k().indices();
    let kp = pair.k_prime().indices();
    if p < k.len() {
        Ok(BasisUnit { factor: Factor::Normed, slot: k[p] })
    } else if p < k.len() + kp.len() {
        // mask order already lists positive-norm split units first
        Ok(BasisUnit { factor: Factor::Split, slot: kp[p - k.len()] })
    } else {
        Err(Error::CoordLength { expected: pair.n(), found: p + 1 })
    }
}

/// Element of V₂, stored as the pair (A, a).
#[derive(Clone, PartialEq)]
pub struct HermX<S> {
    pair: PairId,
    big_a: CAElem<S>,
    little_a: CAElem<S>,
}

impl<S: Scalar> HermX<S> {
    pub fn new(pair: PairId, big_a: CAElem<S>, little_a: CAElem<S>) -> Result<Self> {
        big_a.check_in(pair.k_prime())?;
        little_a.check_in(pair.k())?;
        Ok(HermX { pair, big_a, little_a })
    }

    pub fn zero(pair: PairId) -> Self {
        HermX { pair, big_a: CAElem::zero(Parent::SplitOctonion), little_a: CAElem::zero(Parent::Octonion) }
    }

    pub fn from_coords(pair: PairId, x: &[S]) -> Result<Self> {
        if x.len() != pair.n() {
            return Err(Error::CoordLength { expected: pair.n(), found: x.len() });
        }
        let mut out = Self::zero(pair);
        for (p, v) in x.iter().enumerate() {
            let unit = coord_unit(pair, p)?;
            let term = CAElem::unit(unit.factor.parent(), unit.slot).scale(v);
            match unit.factor {
                Factor::Split => out.big_a = out.big_a + term,
                Factor::Normed => out.little_a = out.little_a + term,
            }
        }
        Ok(out)
    }

    pub fn coords(&self) -> Vec<S> {
        (0..self.pair.n())
            .map(|p| {
                let unit = coord_unit(self.pair, p).expect("slot in range");
                match unit.factor {
                    Factor::Split => self.big_a.coeff(unit.slot).clone(),
                    Factor::Normed => self.little_a.coeff(unit.slot).clone(),
                }
            })
            .collect()
    }

    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn big_a(&self) -> &CAElem<S> {
        &self.big_a
    }

    pub fn little_a(&self) -> &CAElem<S> {
        &self.little_a
    }

    /// |X|² = -det X = |A|² + |a|².
    pub fn norm(&self) -> S {
        self.big_a.norm() + self.little_a.norm()
    }

    /// Polarized norm g(X, Y).
    pub fn inner(&self, rhs: &Self) -> Result<S> {
        self.pair.ensure_same(&rhs.pair)?;
        Ok(self.big_a.inner(&rhs.big_a)? + self.little_a.inner(&rhs.little_a)?)
    }

    pub fn to_mat2(&self) -> Mat2<S> {
        let pair = self.pair;
        let lift = |f, x: &CAElem<S>| TensorElem::lift(pair, f, x).expect("checked on construction");
        Mat {
            pair,
            entries: [
                [lift(Factor::Split, &self.big_a), lift(Factor::Normed, &self.little_a.conj())],
                [lift(Factor::Normed, &self.little_a), -lift(Factor::Split, &self.big_a.conj())],
            ],
        }
    }

    /// X̃ = X - tr(X) I.
    pub fn trace_reversed(&self) -> Mat2<S> {
        self.to_mat2().trace_reversed()
    }

    pub fn scale(&self, k: &S) -> Self {
        HermX { pair: self.pair, big_a: self.big_a.scale(k), little_a: self.little_a.scale(k) }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HermX<T> {
        HermX { pair: self.pair, big_a: self.big_a.map(&f), little_a: self.little_a.map(&f) }
    }

    /// Reads (A, a) back out of a 2×2 matrix and reports how far the matrix
    /// is from the reconstructed element of V₂ (max absolute coefficient).
    pub fn extract(m: &Mat2<S>) -> (Self, f64) {
        let pair = m.pair;
        let mut big_a = m.entries[0][0].split_part();
        let mut little_a = m.entries[1][0].normed_part();
        // drop anything outside the masks; it shows up in the residual
        for slot in 0..8 {
            if !pair.k_prime().contains_slot(slot) {
                big_a = big_a.clone() - CAElem::unit(Parent::SplitOctonion, slot).scale(big_a.coeff(slot));
            }
            if !pair.k().contains_slot(slot) {
                little_a = little_a.clone() - CAElem::unit(Parent::Octonion, slot).scale(little_a.coeff(slot));
            }
        }
        let x = HermX { pair, big_a, little_a };
        let residual = x.to_mat2().max_abs_diff(m);
        (x, residual)
    }
}

impl<S: Scalar> Add for HermX<S> {
    type Output = HermX<S>;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.pair, rhs.pair, "adding elements of different pairs");
        HermX { pair: self.pair, big_a: self.big_a + rhs.big_a, little_a: self.little_a + rhs.little_a }
    }
}

impl<S: Scalar> Sub for HermX<S> {
    type Output = HermX<S>;

    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.pair, rhs.pair, "subtracting elements of different pairs");
        HermX { pair: self.pair, big_a: self.big_a - rhs.big_a, little_a: self.little_a - rhs.little_a }
    }
}

impl<S: Scalar> fmt::Debug for HermX<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermX{} {{ A: {}, a: {} }}", self.pair, self.big_a, self.little_a)
    }
}

/// The generalized Pauli matrices S_p, one per coordinate slot.
pub fn pauli_basis<S: Scalar>(pair: PairId) -> Vec<HermX<S>> {
    (0..pair.n())
        .map(|p| {
            let mut x = vec![S::zero(); pair.n()];
            x[p] = S::one();
            HermX::from_coords(pair, &x).expect("length n")
        })
        .collect()
}

/// Square matrix over K'⊗K. All entries share `pair`.
#[derive(Clone, PartialEq)]
pub struct Mat<S, const N: usize> {
    pair: PairId,
    entries: [[TensorElem<S>; N]; N],
}

pub type Mat2<S> = Mat<S, 2>;
pub type Mat4<S> = Mat<S, 4>;

impl<S: Scalar, const N: usize> Mat<S, N> {
    pub fn zero(pair: PairId) -> Self {
        Mat { pair, entries: std::array::from_fn(|_| std::array::from_fn(|_| TensorElem::zero(pair))) }
    }

    pub fn identity(pair: PairId) -> Self {
        Self::scalar(TensorElem::one(pair))
    }

    /// `t · I`
    pub fn scalar(t: TensorElem<S>) -> Self {
        let pair = t.pair();
        Mat {
            pair,
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { t.clone() } else { TensorElem::zero(pair) })
            }),
        }
    }

    pub fn from_entries(entries: [[TensorElem<S>; N]; N]) -> Result<Self> {
        let pair = entries[0][0].pair();
        for e in entries.iter().flatten() {
            pair.ensure_same(&e.pair())?;
        }
        Ok(Mat { pair, entries })
    }

    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn entry(&self, i: usize, j: usize) -> &TensorElem<S> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[TensorElem<S>; N]; N] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Ordinary matrix product with entry products in K'⊗K.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.pair.ensure_same(&rhs.pair)?;
        let mut out = Self::zero(self.pair);
        for i in 0..N {
            for j in 0..N {
                let mut acc = TensorElem::zero(self.pair);
                for k in 0..N {
                    if self.entries[i][k].is_zero() || rhs.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc + self.entries[i][k].product(&rhs.entries[k][j])?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// `{P, Q} = PQ + QP`
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        Ok(self.product(rhs)? + rhs.product(self)?)
    }

    /// Entrywise `t · m_ij`, i.e. `(t I) M`.
    pub fn left_mul_scalar(&self, t: &TensorElem<S>) -> Result<Self> {
        self.pair.ensure_same(&t.pair())?;
        self.try_map_entries(|e| t.product(e))
    }

    /// Entrywise `m_ij · t`, i.e. `M (t I)`.
    pub fn right_mul_scalar(&self, t: &TensorElem<S>) -> Result<Self> {
        self.pair.ensure_same(&t.pair())?;
        self.try_map_entries(|e| e.product(t))
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|c| c.clone() * k.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T, N> {
        Mat { pair: self.pair, entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].map(&f))) }
    }

    fn try_map_entries(&self, f: impl Fn(&TensorElem<S>) -> Result<TensorElem<S>>) -> Result<Self> {
        let mut out = Self::zero(self.pair);
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] = f(&self.entries[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> TensorElem<S> {
        (0..N).fold(TensorElem::zero(self.pair), |acc, i| acc + self.entries[i][i].clone())
    }

    /// `M - tr(M) I`
    pub fn trace_reversed(&self) -> Self {
        self.clone() - Self::scalar(self.trace())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|e| e.max_abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(rhs.entries.iter().flatten())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Machine-readable form: a JSON array of rows, each entry an 8×8 grid
    /// of coefficients (row = split basis slot, column = normed slot).
    pub fn to_json(&self) -> String {
        let grid = |t: &TensorElem<S>| {
            let rows: Vec<String> = t
                .grid()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|c| format_float(c.to_f64_lossy())).collect::<Vec<_>>().join(",")))
                .collect();
            format!("[{}]", rows.join(","))
        };
        let rows: Vec<String> =
            self.entries.iter().map(|r| format!("[{}]", r.iter().map(grid).collect::<Vec<_>>().join(","))).collect();
        format!("[{}]", rows.join(","))
    }
}

/// Fixed 17-significant-digit float formatting used in every export.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        // avoid "-0"
        return "0.0000000000000000e0".to_string();
    }
    format!("{v:.16e}")
}

/// Compound block matrix `[[a, b], [c, d]]` from 2×2 blocks.
pub fn blocks<S: Scalar>(a: &Mat2<S>, b: &Mat2<S>, c: &Mat2<S>, d: &Mat2<S>) -> Result<Mat4<S>> {
    let pair = a.pair;
    for m in [b, c, d] {
        pair.ensure_same(&m.pair)?;
    }
    let mut out = Mat4::zero(pair);
    for (bi, bj, m) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
        for i in 0..2 {
            for j in 0..2 {
                out.entries[2 * bi + i][2 * bj + j] = m.entries[i][j].clone();
            }
        }
    }
    Ok(out)
}

impl<S: Scalar> Mat4<S> {
    /// The 2×2 block at (`bi`, `bj`).
    pub fn block(&self, bi: usize, bj: usize) -> Mat2<S> {
        Mat {
            pair: self.pair,
            entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[2 * bi + i][2 * bj + j].clone())),
        }
    }
}

impl<S: Scalar, const N: usize> Add for Mat<S, N> {
    type Output = Mat<S, N>;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.pair, rhs.pair, "adding matrices of different pairs");
        let mut out = self;
        for (a, b) in out.entries.iter_mut().flatten().zip(rhs.entries.into_iter().flatten()) {
            *a = a.clone() + b;
        }
        out
    }
}

impl<S: Scalar, const N: usize> Sub for Mat<S, N> {
    type Output = Mat<S, N>;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar, const N: usize> Neg for Mat<S, N> {
    type Output = Mat<S, N>;

    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar, const N: usize> fmt::Debug for Mat<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar, const N: usize> fmt::Display for Mat<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[ {} ]", cells.join(" | "))?;
        }
        Ok(())
    }
}

/// `Γ(X) = [[0, X], [X̃, 0]]`, kept together with the X it came from.
#[derive(Clone, PartialEq)]
pub struct GammaMat<S> {
    x: HermX<S>,
    mat: Mat4<S>,
}

impl<S: Scalar> GammaMat<S> {
    pub fn x(&self) -> &HermX<S> {
        &self.x
    }

    pub fn mat(&self) -> &Mat4<S> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat4<S> {
        self.mat
    }

    /// Recovers the element of Γ(V₂) closest to `m`, failing if the block
    /// structure is off by more than `tol`.
    pub fn from_mat4(m: &Mat4<S>, tol: f64) -> Result<Self> {
        let (x, residual) = Self::extract(m);
        if residual > tol {
            return Err(Error::NotInGammaImage { residual });
        }
        Ok(x)
    }

    /// Like [`GammaMat::from_mat4`] but returns the residual instead of checking it.
    pub fn extract(m: &Mat4<S>) -> (Self, f64) {
        let (x, _) = HermX::extract(&m.block(0, 1));
        let g = gamma(&x);
        let residual = g.mat.max_abs_diff(m);
        (g, residual)
    }
}

impl<S: Scalar> fmt::Debug for GammaMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ({:?})", self.x)
    }
}

/// X̃ = X - tr(X) I.
pub fn trace_reverse<S: Scalar>(x: &HermX<S>) -> Mat2<S> {
    x.trace_reversed()
}

/// P = Γ(X).
pub fn gamma<S: Scalar>(x: &HermX<S>) -> GammaMat<S> {
    let pair = x.pair();
    let zero = Mat2::zero(pair);
    let mat = blocks(&zero, &x.to_mat2(), &x.trace_reversed(), &zero).expect("single pair");
    GammaMat { x: x.clone(), mat }
}

/// -det X = |A|² + |a|².
pub fn norm_x<S: Scalar>(x: &HermX<S>) -> S {
    x.norm()
}

pub fn mat_mul2<S: Scalar>(x: &Mat2<S>, y: &Mat2<S>) -> Result<Mat2<S>> {
    x.product(y)
}

pub fn mat_mul4<S: Scalar>(p: &Mat4<S>, q: &Mat4<S>) -> Result<Mat4<S>> {
    p.product(q)
}

#[cfg(test)]
mod tests {
    use num::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::composition_algebra::Rank;
    use crate::scalar::rat;

    type Q = BigRational;

    fn oo() -> PairId {
        PairId::new(Rank::O, Rank::O)
    }

    fn t(pair: PairId, f: Factor, slot: usize, c: i64) -> TensorElem<Q> {
        BasisUnit { factor: f, slot }.to_tensor::<Q>(pair).scale(&Q::from_i64(c))
    }

    fn m2(pair: PairId, e: [[TensorElem<Q>; 2]; 2]) -> Mat2<Q> {
        let _ = pair;
        Mat::from_entries(e).unwrap()
    }

    fn coords_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-5i64..=5, n)
    }

    #[test]
    fn classical_pauli_matrices() {
        let pair = PairId::new(Rank::R, Rank::C);
        let s: Vec<HermX<Q>> = pauli_basis(pair);
        assert_eq!(s.len(), 3);
        let one = |c| t(pair, Factor::Normed, 0, c);
        let i = |c| t(pair, Factor::Normed, 1, c);
        let z = TensorElem::zero(pair);
        assert_eq!(s[0].to_mat2(), m2(pair, [[z.clone(), one(1)], [one(1), z.clone()]]));
        assert_eq!(s[1].to_mat2(), m2(pair, [[z.clone(), i(-1)], [i(1), z.clone()]]));
        // the K' real unit gives diag(1, -1)
        assert_eq!(s[2].to_mat2(), m2(pair, [[one(1), z.clone()], [z, one(-1)]]));
    }

    #[test]
    fn split_unit_pauli_is_scalar_and_flips_under_trace_reversal() {
        let pair = oo();
        let s: Vec<HermX<Q>> = pauli_basis(pair);
        let l = t(pair, Factor::Split, 7, 1);
        let s_l = &s[15];
        assert_eq!(s_l.to_mat2(), Mat2::scalar(l.clone()));
        assert_eq!(s_l.trace_reversed(), Mat2::scalar(-l));
        // trace reversal equals K'-conjugation on every S_p
        for sp in &s {
            let conj = HermX::new(pair, sp.big_a().conj(), sp.little_a().clone()).unwrap();
            assert_eq!(sp.trace_reversed(), conj.to_mat2());
        }
    }

    #[test]
    fn coordinate_order_for_sub_pairs() {
        let pair = PairId::new(Rank::H, Rank::C);
        let units: Vec<_> = (0..pair.n()).map(|p| coord_unit(pair, p).unwrap()).collect();
        let labels: Vec<_> = units.iter().map(|u| u.label()).collect();
        assert_eq!(labels, ["1", "i", "1", "K", "KL", "L"]);
        assert!(coord_unit(pair, 6).is_err());
        assert!(HermX::<Q>::from_coords(pair, &[rat(1, 1)]).is_err());
    }

    #[test]
    fn traceless_x_is_unchanged_by_trace_reversal() {
        let pair = oo();
        let x = HermX::<Q>::new(pair, CAElem::zero(Parent::SplitOctonion), CAElem::from_i64(Parent::Octonion, [1, 2, 0, 0, 0, 0, 3, 0])).unwrap();
        assert_eq!(x.trace_reversed(), x.to_mat2());
        let s9 = &pauli_basis::<Q>(pair)[8];
        assert_eq!(s9.trace_reversed(), s9.to_mat2());
    }

    #[test]
    fn gamma_worked_examples() {
        let pair = oo();
        let s: Vec<HermX<Q>> = pauli_basis(pair);
        let g1 = gamma(&s[0]);
        let sx = s[0].to_mat2();
        let z = Mat2::zero(pair);
        assert_eq!(g1.mat(), &blocks(&z, &sx, &sx, &z).unwrap());
        let gl = gamma(&s[15]);
        let l = Mat2::scalar(t(pair, Factor::Split, 7, 1));
        assert_eq!(gl.mat(), &blocks(&z, &l, &(-l.clone()), &z).unwrap());
        assert!(gamma(&HermX::<Q>::zero(pair)).mat().is_zero());
    }

    #[test]
    fn norms() {
        let pair = oo();
        let x = |a: [i64; 8], b: [i64; 8]| {
            HermX::<Q>::new(pair, CAElem::from_i64(Parent::SplitOctonion, a), CAElem::from_i64(Parent::Octonion, b)).unwrap()
        };
        assert_eq!(norm_x(&x([0; 8], [1, 0, 0, 0, 0, 0, 0, 0])), rat(1, 1));
        assert_eq!(norm_x(&x([0, 0, 0, 0, 0, 0, 0, 1], [0; 8])), rat(-1, 1));
        assert_eq!(norm_x(&x([1, 0, 0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0, 0, 0])), rat(1, 1));
    }

    #[test]
    fn anticommuting_pauli_lifts() {
        let pair = PairId::new(Rank::R, Rank::C);
        let s: Vec<HermX<Q>> = pauli_basis(pair);
        let (g1, g2) = (gamma(&s[0]), gamma(&s[1]));
        assert!(g1.mat().anticommutator(g2.mat()).unwrap().is_zero());
        let id = Mat4::identity(pair);
        assert_eq!(mat_mul4(&id, g1.mat()).unwrap(), g1.mat().clone());
    }

    #[test]
    fn extraction_rejects_non_gamma_matrices() {
        let pair = oo();
        let id: Mat4<Q> = Mat4::identity(pair);
        assert!(matches!(GammaMat::from_mat4(&id, 0.0), Err(Error::NotInGammaImage { .. })));
        let g = gamma(&pauli_basis::<Q>(pair)[3]);
        assert_eq!(GammaMat::from_mat4(g.mat(), 0.0).unwrap(), g);
    }

    #[test]
    fn json_export_shape() {
        let pair = PairId::new(Rank::R, Rank::R);
        let g = gamma(&pauli_basis::<f64>(pair)[0]);
        let json = g.mat().to_json();
        assert!(json.starts_with("[[[["));
        assert_eq!(json.matches("1.0000000000000000e0").count(), 4);
        assert_eq!(json, g.mat().clone().to_json());
    }

    proptest! {
        #[test]
        fn gamma_squares_to_norm(v in coords_strategy(16), which in 0usize..16) {
            let pair = PairId::all()[which];
            let x = HermX::<Q>::from_coords(pair, &v[..pair.n()].iter().map(|&c| Q::from_i64(c)).collect::<Vec<_>>()).unwrap();
            let p = gamma(&x);
            let sq = mat_mul4(p.mat(), p.mat()).unwrap();
            prop_assert_eq!(sq, Mat4::scalar(TensorElem::real(pair, norm_x(&x))));
            // -det X via the closed form, and the signed coordinate sum
            let g: Q = x.coords().iter().enumerate().fold(Q::from_i64(0), |acc, (p, c)| {
                let s = coord_unit(pair, p).unwrap().norm_sign();
                acc + Q::from_i64(s as i64) * c.clone() * c.clone()
            });
            prop_assert_eq!(norm_x(&x), g);
            prop_assert_eq!(HermX::from_coords(pair, &x.coords()).unwrap(), x);
        }
    }
}
