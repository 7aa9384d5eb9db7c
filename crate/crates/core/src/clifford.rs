//! Gamma matrices, the metric they induce, and reflections in Γ(V₂).

use num::BigRational;

use crate::error::{Error, Result};
use crate::matrix_rep::{coord_unit, gamma, pauli_basis, GammaMat, Mat4};
use crate::scalar::Scalar;
use crate::tensor_algebra::{PairId, TensorElem};

/// Diagonal metric `g` on the coordinate slots of a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    pair: PairId,
    g: Vec<i8>,
}

impl Metric {
    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn diag(&self) -> &[i8] {
        &self.g
    }

    pub fn get(&self, p: usize) -> i8 {
        self.g[p]
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    /// (number of +1, number of -1)
    pub fn signature(&self) -> (usize, usize) {
        let plus = self.g.iter().filter(|&&s| s > 0).count();
        (plus, self.g.len() - plus)
    }
}

pub fn metric(pair: PairId) -> Metric {
    let g = (0..pair.n()).map(|p| coord_unit(pair, p).expect("slot in range").norm_sign()).collect();
    Metric { pair, g }
}

/// Γ_p = Γ(S_p) for every coordinate slot.
#[derive(Clone)]
pub struct GammaBasis<S> {
    pair: PairId,
    gammas: Vec<GammaMat<S>>,
}

impl<S: Scalar> std::fmt::Debug for GammaBasis<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GammaBasis").field("pair", &self.pair).field("gammas", &self.gammas).finish()
    }
}

impl<S: Scalar> GammaBasis<S> {
    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn gammas(&self) -> &[GammaMat<S>] {
        &self.gammas
    }

    pub fn get(&self, p: usize) -> &GammaMat<S> {
        &self.gammas[p]
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

pub fn gamma_basis<S: Scalar>(pair: PairId) -> GammaBasis<S> {
    GammaBasis { pair, gammas: pauli_basis(pair).iter().map(gamma).collect() }
}

/// Outcome of checking `{Γ_p, Γ_q} = 2 g_pq I` over all `p ≤ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordReport {
    pub pair: PairId,
    pub n: usize,
    pub checked: usize,
    /// 0-based slot pairs whose relation failed.
    pub failures: Vec<(usize, usize)>,
}

impl CliffordReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check of the Clifford relations.
pub fn check_clifford(pair: PairId) -> CliffordReport {
    let basis = gamma_basis::<BigRational>(pair);
    let g = metric(pair);
    let n = pair.n();
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in 0..n {
        for q in p..n {
            checked += 1;
            let (gp, gq) = (basis.get(p).mat(), basis.get(q).mat());
            let lhs = gp.anticommutator(gq).expect("single pair");
            let expected = if p == q { 2 * i64::from(g.get(p)) } else { 0 };
            let rhs = Mat4::scalar(TensorElem::real(pair, BigRational::from_i64(expected)));
            if lhs != rhs {
                failures.push((p, q));
            }
        }
    }
    CliffordReport { pair, n, checked, failures }
}

/// `P_L(Q) = PQ`
pub fn left_action<S: Scalar>(p: &GammaMat<S>, q: &Mat4<S>) -> Result<Mat4<S>> {
    p.mat().product(q)
}

/// `P⁻¹ = P / normX`
pub fn inverse<S: Scalar>(p: &GammaMat<S>) -> Result<Mat4<S>> {
    let n = p.x().norm();
    if n.is_zero() {
        return Err(Error::NotInvertible);
    }
    Ok(p.mat().map(|c| c.clone() / n.clone()))
}

/// `-(PQ)P⁻¹` as a raw matrix, without projecting back onto Γ(V₂).
pub fn reflect_raw<S: Scalar>(p: &GammaMat<S>, q: &Mat4<S>) -> Result<Mat4<S>> {
    let p_inv = inverse(p)?;
    Ok(-left_action(p, q)?.product(&p_inv)?)
}

/// Reflection of `Q` along the axis `P`: `R_P(Q) = -(PQ)P⁻¹`.
///
/// `P` must have nonzero norm. The result is read back as an element of
/// Γ(V₂); a residual above `1e-12` relative to the result scale is an error.
pub fn reflect<S: Scalar>(p: &GammaMat<S>, q: &GammaMat<S>) -> Result<GammaMat<S>> {
    let raw = reflect_raw(p, q.mat())?;
    let tol = crate::tolerances::MEMBERSHIP * raw.max_abs().max(1.0);
    GammaMat::from_mat4(&raw, tol)
}
