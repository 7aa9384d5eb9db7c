//! Rotations and boosts of V₂ in a single coordinate plane.
//!
//! Two generator algorithms are provided. When the basis units `e_p`, `e_q`
//! of a plane commute, the plane is acted on by the exponential
//! `M = exp(-Γ_p Γ_q θ/2)` as `P ↦ (M P) M⁻¹`. When they anticommute, two
//! nested flips are used instead, with
//!
//! ```text
//! M₁ = -e_p,   M₂ = e_p c(θ/2) + e_q s(θ/2)
//! ```
//!
//! each applied entrywise as `y ↦ (m y) m⁻¹`. Here `(c, s)` is `(cos, sin)`
//! for rotations (`g_pp g_qq = +1`) and `(cosh, sinh)` for boosts.
//!
//! Floating-point only; exactness of the underlying identities lives in
//! [`crate::clifford`] and [`crate::matrix_rep`].

use std::fmt;

use nalgebra::DMatrix;

use crate::clifford::{gamma_basis, metric, Metric};
use crate::composition_algebra::{CAElem, Parent, Rank};
use crate::error::{Error, Result};
use crate::matrix_rep::{coord_unit, gamma, pauli_basis, GammaMat, HermX, Mat, Mat2, Mat4};
use crate::scalar::Scalar;
use crate::tensor_algebra::{t_commutes, BasisUnit, Factor, PairId, TensorElem};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exponential,
    NestedFlip,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exponential => "exponential",
            Method::NestedFlip => "nested-flip",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Rotation,
    Boost,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Rotation => "rotation",
            Kind::Boost => "boost",
        })
    }
}

/// `(cos, sin)` or `(cosh, sinh)` of one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigPair {
    pub c: f64,
    pub s: f64,
}

impl TrigPair {
    pub fn new(kind: Kind, angle: f64) -> Self {
        match kind {
            Kind::Rotation => TrigPair { c: angle.cos(), s: angle.sin() },
            Kind::Boost => TrigPair { c: angle.cosh(), s: angle.sinh() },
        }
    }

    /// Deviation from `c² ± s² = 1`.
    pub fn residual(&self, kind: Kind) -> f64 {
        let one = match kind {
            Kind::Rotation => self.c * self.c + self.s * self.s,
            Kind::Boost => self.c * self.c - self.s * self.s,
        };
        (one - 1.0).abs()
    }
}

/// A one-parameter transformation in the coordinate plane (p, q), 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pair: PairId,
    p: usize,
    q: usize,
    theta: f64,
}

impl GeneratorSpec {
    pub fn new(pair: PairId, p: usize, q: usize, theta: f64) -> Result<Self> {
        let n = pair.n();
        if p == q || p >= n || q >= n {
            return Err(Error::InvalidPlane { p, q, n });
        }
        Ok(GeneratorSpec { pair, p, q, theta })
    }

    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        GeneratorSpec { theta, ..*self }
    }

    pub fn units(&self) -> (BasisUnit, BasisUnit) {
        let unit = |p| coord_unit(self.pair, p).expect("validated on construction");
        (unit(self.p), unit(self.q))
    }

    pub fn g_pp(&self) -> f64 {
        f64::from(self.units().0.norm_sign())
    }

    pub fn g_qq(&self) -> f64 {
        f64::from(self.units().1.norm_sign())
    }

    pub fn kind(&self) -> Kind {
        if self.g_pp() * self.g_qq() > 0.0 {
            Kind::Rotation
        } else {
            Kind::Boost
        }
    }

    pub fn method(&self) -> Method {
        let (u, v) = self.units();
        if t_commutes(self.pair, u, v) {
            Method::Exponential
        } else {
            Method::NestedFlip
        }
    }

    fn half(&self) -> TrigPair {
        TrigPair::new(self.kind(), self.theta / 2.0)
    }

    fn full(&self) -> TrigPair {
        TrigPair::new(self.kind(), self.theta)
    }

    fn require(&self, required: Method) -> Result<()> {
        let actual = self.method();
        if actual != required {
            return Err(Error::MethodDispatch { required, actual });
        }
        Ok(())
    }
}

fn membership_tol(scale: f64) -> f64 {
    tolerances::MEMBERSHIP * scale.max(1.0)
}

fn extract_x(m: &Mat2<f64>) -> Result<HermX<f64>> {
    let (x, residual) = HermX::extract(m);
    if residual > membership_tol(m.max_abs()) {
        return Err(Error::NotInGammaImage { residual });
    }
    Ok(x)
}

fn extract_gamma(m: &Mat4<f64>) -> Result<GammaMat<f64>> {
    GammaMat::from_mat4(m, membership_tol(m.max_abs()))
}

// ---------------------------------------------------------------------------
// exponential method

/// `M = I c - Γ_p Γ_q s` and `M⁻¹ = I c + Γ_p Γ_q s` at half angle.
fn exp_rotor_4x4(spec: &GeneratorSpec) -> Result<(Mat4<f64>, Mat4<f64>)> {
    let basis = gamma_basis::<f64>(spec.pair);
    let b = basis.get(spec.p).mat().product(basis.get(spec.q).mat())?;
    let TrigPair { c, s } = spec.half();
    let id = Mat4::identity(spec.pair).scale(&c);
    Ok((id.clone() - b.scale(&s), id + b.scale(&s)))
}

/// `(M P) M⁻¹` with no method check and no projection onto Γ(V₂).
pub fn act_exp_4x4_raw(spec: &GeneratorSpec, p: &Mat4<f64>) -> Result<Mat4<f64>> {
    let (m, m_inv) = exp_rotor_4x4(spec)?;
    m.product(p)?.product(&m_inv)
}

/// Exponential action on Γ(V₂); requires commuting units.
pub fn act_exp_4x4(spec: &GeneratorSpec, p: &GammaMat<f64>) -> Result<GammaMat<f64>> {
    spec.require(Method::Exponential)?;
    extract_gamma(&act_exp_4x4_raw(spec, p.mat())?)
}

/// `(L X) R` with `L = I c - S_p S̃_q s`, `R = I c + S̃_p S_q s` at half angle.
pub fn act_exp_2x2_raw(spec: &GeneratorSpec, x: &Mat2<f64>) -> Result<Mat2<f64>> {
    let s_basis = pauli_basis::<f64>(spec.pair);
    let (sp, sq) = (&s_basis[spec.p], &s_basis[spec.q]);
    let left_gen = sp.to_mat2().product(&sq.trace_reversed())?;
    let right_gen = sp.trace_reversed().product(&sq.to_mat2())?;
    let TrigPair { c, s } = spec.half();
    let id = Mat2::identity(spec.pair).scale(&c);
    let l = id.clone() - left_gen.scale(&s);
    let r = id + right_gen.scale(&s);
    l.product(x)?.product(&r)
}

// ---------------------------------------------------------------------------
// flips

fn factor_of(parent: Parent) -> Factor {
    match parent {
        Parent::SplitOctonion => Factor::Split,
        Parent::Octonion => Factor::Normed,
    }
}

/// Entrywise `y ↦ (m y) m⁻¹` for a single-factor element `m`.
pub fn sandwich<S: Scalar, const N: usize>(m: &CAElem<S>, mat: &Mat<S, N>) -> Result<Mat<S, N>> {
    let pair = mat.pair();
    let factor = factor_of(m.parent());
    let t = TensorElem::lift(pair, factor, m)?;
    let t_inv = TensorElem::lift(pair, factor, &m.inverse()?)?;
    mat.left_mul_scalar(&t)?.right_mul_scalar(&t_inv)
}

fn unit_elem<S: Scalar>(u: BasisUnit) -> CAElem<S> {
    CAElem::unit(u.factor.parent(), u.slot)
}

fn check_flip_unit(u: BasisUnit) -> Result<()> {
    if u.is_real() {
        return Err(Error::Precondition(format!("flip needs an imaginary unit, got {}", u.label())));
    }
    Ok(())
}

/// The flip `X ↦ e X e⁻¹` about an imaginary basis unit.
pub fn flip<S: Scalar>(u: BasisUnit, x: &HermX<S>) -> Result<HermX<S>> {
    check_flip_unit(u)?;
    let out = sandwich(&unit_elem(u), &x.to_mat2())?;
    let (y, residual) = HermX::extract(&out);
    if residual > membership_tol(out.max_abs()) {
        return Err(Error::NotInGammaImage { residual });
    }
    Ok(y)
}

/// The flip applied to `P = Γ(X)` entrywise.
pub fn flip_gamma<S: Scalar>(u: BasisUnit, p: &GammaMat<S>) -> Result<GammaMat<S>> {
    check_flip_unit(u)?;
    let out = sandwich(&unit_elem(u), p.mat())?;
    GammaMat::from_mat4(&out, membership_tol(out.max_abs()))
}

/// `M₂(M₁ Y M₁⁻¹)M₂⁻¹` entrywise, no method check.
pub fn nested_raw<const N: usize>(spec: &GeneratorSpec, y: &Mat<f64, N>) -> Result<Mat<f64, N>> {
    let (u, v) = spec.units();
    let (ep, eq) = (unit_elem::<f64>(u), unit_elem::<f64>(v));
    if ep.parent() != eq.parent() {
        return Err(Error::Precondition("nested flips need both units in one factor".into()));
    }
    let TrigPair { c, s } = spec.half();
    let m1 = -ep.clone();
    let m2 = ep.scale(&c) + eq.scale(&s);
    sandwich(&m2, &sandwich(&m1, y)?)
}

/// Nested flips on V₂; requires anticommuting units.
pub fn act_nested_2flip(spec: &GeneratorSpec, x: &HermX<f64>) -> Result<HermX<f64>> {
    spec.require(Method::NestedFlip)?;
    extract_x(&nested_raw(spec, &x.to_mat2())?)
}

/// Nested flips on Γ(V₂); requires anticommuting units.
pub fn act_nested_2flip_4x4(spec: &GeneratorSpec, p: &GammaMat<f64>) -> Result<GammaMat<f64>> {
    spec.require(Method::NestedFlip)?;
    extract_gamma(&nested_raw(spec, p.mat())?)
}

/// The generator's action on V₂, through the 2×2 form for commuting units
/// and nested flips otherwise.
pub fn act_generator(spec: &GeneratorSpec, x: &HermX<f64>) -> Result<HermX<f64>> {
    spec.pair.ensure_same(&x.pair())?;
    match spec.method() {
        Method::Exponential => extract_x(&act_exp_2x2_raw(spec, &x.to_mat2())?),
        Method::NestedFlip => act_nested_2flip(spec, x),
    }
}

// ---------------------------------------------------------------------------
// induced matrices

/// Real n×n matrix together with the metric it should preserve.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoMat {
    pair: PairId,
    m: DMatrix<f64>,
    metric: Metric,
}

impl OrthoMat {
    pub fn identity(pair: PairId) -> Self {
        OrthoMat { pair, m: DMatrix::identity(pair.n(), pair.n()), metric: metric(pair) }
    }

    pub fn pair(&self) -> PairId {
        self.pair
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    fn g(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.metric.n(),
            self.metric.diag().iter().map(|&s| f64::from(s)),
        ))
    }

    /// `max |mᵀ G m - G|`
    pub fn isometry_residual(&self) -> f64 {
        let g = self.g();
        (self.m.transpose() * &g * &self.m - g).amax()
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    /// `self · rhs`
    pub fn product(&self, rhs: &OrthoMat) -> Result<OrthoMat> {
        self.pair.ensure_same(&rhs.pair)?;
        Ok(OrthoMat { pair: self.pair, m: &self.m * &rhs.m, metric: self.metric.clone() })
    }
}

/// Matrix of `act_generator(spec, ·)` in the coordinate basis.
pub fn so_matrix(spec: &GeneratorSpec) -> Result<OrthoMat> {
    let n = spec.pair.n();
    let mut m = DMatrix::zeros(n, n);
    for (j, s) in pauli_basis::<f64>(spec.pair).iter().enumerate() {
        let image = act_generator(spec, s)?.coords();
        m.set_column(j, &nalgebra::DVector::from_vec(image));
    }
    Ok(OrthoMat { pair: spec.pair, m, metric: metric(spec.pair) })
}

/// Closed-form Givens-type matrix for a plane:
///
/// ```text
/// exponential:  x'p = xp c - xq s g_qq,         x'q = xq c + xp s g_pp
/// nested flip:  x'p = xp c - xq s g_pp g_qq,    x'q = xq c + xp s
/// ```
pub fn block_formula(spec: &GeneratorSpec) -> DMatrix<f64> {
    let n = spec.pair.n();
    let (p, q) = (spec.p, spec.q);
    let (gp, gq) = (spec.g_pp(), spec.g_qq());
    let TrigPair { c, s } = spec.full();
    let mut m = DMatrix::identity(n, n);
    m[(p, p)] = c;
    m[(q, q)] = c;
    match spec.method() {
        Method::Exponential => {
            m[(p, q)] = -s * gq;
            m[(q, p)] = s * gp;
        }
        Method::NestedFlip => {
            m[(p, q)] = -s * gp * gq;
            m[(q, p)] = s;
        }
    }
    m
}

/// Applies `specs` in list order: the result is `M_k ⋯ M_2 M_1`.
pub fn compose(pair: PairId, specs: &[GeneratorSpec]) -> Result<OrthoMat> {
    let mut acc = OrthoMat::identity(pair);
    for spec in specs {
        pair.ensure_same(&spec.pair)?;
        acc = so_matrix(spec)?.product(&acc)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// checks

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivReport {
    pub max_deviation: f64,
}

/// Compares `Γ(act₂ₓ₂(X))` with the 4×4 exponential action on `Γ(X)`.
pub fn equiv_4x4_2x2(spec: &GeneratorSpec, x: &HermX<f64>) -> Result<EquivReport> {
    spec.require(Method::Exponential)?;
    let two = gamma(&act_generator(spec, x)?);
    let four = act_exp_4x4_raw(spec, gamma(x).mat())?;
    Ok(EquivReport { max_deviation: two.mat().max_abs_diff(&four) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Same,
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionReport {
    /// θ-orientation under which nested flips match the exponential action.
    pub orientation: Orientation,
    /// `max |M₂M₁ - g_pp exp(-g_pp Γ_pΓ_q θ/2)|` over 4×4 entries.
    pub scalar_deviation: f64,
    /// Largest coordinate gap between the two actions over the basis of V₂.
    pub action_deviation: f64,
}

/// On an associative sub-pair, checks that nested flips equal the exponential
/// action with θ replaced by `g_pp θ`.
pub fn assoc_reduction_check(spec: &GeneratorSpec) -> Result<ReductionReport> {
    let pair = spec.pair;
    if pair.k().rank > Rank::H || pair.k_prime().rank > Rank::H {
        return Err(Error::Precondition(format!("{pair} is not an associative sub-pair")));
    }
    spec.require(Method::NestedFlip)?;
    let gp = spec.g_pp();
    let (u, v) = spec.units();
    let factor = u.factor;
    let (ep, eq) = (unit_elem::<f64>(u), unit_elem::<f64>(v));

    let TrigPair { c, s } = spec.half();
    let m1 = TensorElem::lift(pair, factor, &-ep.clone())?;
    let m2 = TensorElem::lift(pair, factor, &(ep.scale(&c) + eq.scale(&s)))?;
    let lhs = Mat4::scalar(m2.product(&m1)?);

    let basis = gamma_basis::<f64>(pair);
    let b = basis.get(spec.p).mat().product(basis.get(spec.q).mat())?;
    let rhs = (Mat4::identity(pair).scale(&c) - b.scale(&(gp * s))).scale(&gp);
    let scalar_deviation = lhs.max_abs_diff(&rhs);

    let exp_spec = spec.with_theta(gp * spec.theta);
    let mut action_deviation: f64 = 0.0;
    for x in pauli_basis::<f64>(pair) {
        let nested = extract_x(&nested_raw(spec, &x.to_mat2())?)?;
        let expo = extract_x(&act_exp_2x2_raw(&exp_spec, &x.to_mat2())?)?;
        for (a, b) in nested.coords().iter().zip(expo.coords()) {
            action_deviation = action_deviation.max((a - b).abs());
        }
    }
    let orientation = if gp > 0.0 { Orientation::Same } else { Orientation::Reversed };
    Ok(ReductionReport { orientation, scalar_deviation, action_deviation })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieRankReport {
    pub pair: PairId,
    pub generators: usize,
    pub rank: usize,
    /// Largest distance of a generator commutator from the generator span.
    pub closure_residual: f64,
}

/// Rank of the span of the numerically differentiated plane generators.
pub fn lie_algebra_rank(pair: PairId) -> Result<LieRankReport> {
    let n = pair.n();
    let h = tolerances::DERIVATIVE_STEP;
    let mut gens = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let spec = GeneratorSpec::new(pair, p, q, h)?;
            let plus = so_matrix(&spec)?;
            let minus = so_matrix(&spec.with_theta(-h))?;
            gens.push((plus.matrix() - minus.matrix()) / (2.0 * h));
        }
    }
    let stacked = DMatrix::from_fn(n * n, gens.len(), |r, c| gens[c].as_slice()[r]);
    let svd = stacked.svd(true, false);
    let sigma_max = svd.singular_values.max();
    let u = svd.u.expect("requested U");
    let kept: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tolerances::RANK_RELATIVE * sigma_max)
        .collect();
    let basis = u.select_columns(kept.iter());

    let mut closure_residual: f64 = 0.0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let comm = &gens[i] * &gens[j] - &gens[j] * &gens[i];
            let v = nalgebra::DVector::from_column_slice(comm.as_slice());
            let proj = &basis * (basis.transpose() * &v);
            closure_residual = closure_residual.max((v - proj).amax());
        }
    }
    Ok(LieRankReport { pair, generators: gens.len(), rank: kept.len(), closure_residual })
}

/// `(plus, minus)` counts of the metric.
pub fn signature(pair: PairId) -> (usize, usize) {
    metric(pair).signature()
}

/// Real forms of the 2×2 magic square, rows K' = R', C', H', O' and columns
/// K = R, C, H, O, as `so(plus, minus)`.
pub const MAGIC_SQUARE: [[(usize, usize); 4]; 4] = [
    [(2, 0), (3, 0), (5, 0), (9, 0)],
    [(2, 1), (3, 1), (5, 1), (9, 1)],
    [(3, 2), (4, 2), (6, 2), (10, 2)],
    [(5, 4), (6, 4), (8, 4), (12, 4)],
];

pub fn expected_signature(pair: PairId) -> (usize, usize) {
    let idx = |r: Rank| Rank::ALL.iter().position(|&x| x == r).expect("known rank");
    MAGIC_SQUARE[idx(pair.k_prime().rank)][idx(pair.k().rank)]
}

/// `so(p,q)`, or `so(p)` when compact.
pub fn so_label((plus, minus): (usize, usize)) -> String {
    if minus == 0 {
        format!("so({plus})")
    } else {
        format!("so({plus},{minus})")
    }
}
