//! The complexes `X(γ)`, `X(σ)` and `EX(γ)`, simple systems of interval
//! elements, and the exact cone geometry around them.

pub mod cone;
pub mod flag;

pub use cone::{cone_membership, cone_membership_exhaustive};
pub use flag::{sphere_check, ExtIndex, FlagComplex, Simplex, SphereReport};

use crate::absorder::GroupElement;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsystem::{RootSystem, RootVector};
use crate::scalar::{FieldElement, Scalar, Sign};

impl RootSystem {
    /// Index in `1..=nh/2` of the reflection `R(ρ_i)` for any integer `i`.
    pub fn reflection_index(&self, i: i64) -> usize {
        self.positive_index(self.rho(i))
            .expect("every root is ± a positive root")
    }

    /// `R(ρ_i)` for any integer `i`.
    pub fn reflection_at(&self, i: i64) -> &GroupElement {
        self.reflection_of(self.reflection_index(i))
    }
}

/// `R(ρ_i)R(ρ_j) ≤ γ⁻¹` for the smaller index first, excluding antipodal pairs.
pub fn edge_test(sys: &RootSystem, i: ExtIndex, j: ExtIndex) -> bool {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    if i == j || *sys.rho(i.0) == sys.rho(j.0).neg() {
        return false;
    }
    let product = sys.reflection_at(i.0).compose(sys.reflection_at(j.0));
    sys.leq(&product, sys.gamma_inverse())
}

/// `X(γ)` on the positive roots `ρ_1, …, ρ_{nh/2}`.
pub fn build_x(sys: &RootSystem) -> FlagComplex {
    let vertices: Vec<ExtIndex> = (1..=sys.positive_count() as i64).map(ExtIndex).collect();
    let v = vertices.clone();
    FlagComplex::from_edge_fn(vertices, |a, b| edge_test(sys, v[a], v[b]))
}

/// `X(σ)`: the subcomplex of `X(γ)` induced on `P_σ`.
pub fn build_x_sigma(sys: &RootSystem, sigma: &GroupElement) -> Result<FlagComplex> {
    let p = sys.reflection_set(sigma)?;
    Ok(induced_on(&build_x(sys), &p))
}

/// Restricts `X(γ)` to a set of positive root indices.
pub fn induced_on(x: &FlagComplex, indices: &[usize]) -> FlagComplex {
    let keep: Vec<ExtIndex> = indices.iter().map(|&i| ExtIndex(i as i64)).collect();
    x.induced(&keep)
}

/// Extended vertex range `-n+s+1 ..= nh/2+s`.
pub fn ex_vertices(sys: &RootSystem) -> Vec<ExtIndex> {
    let n = sys.rank() as i64;
    let s = sys.s() as i64;
    let half = sys.positive_count() as i64;
    (-n + s + 1..=half + s).map(ExtIndex).collect()
}

/// `EX(γ)`: positive roots together with the negative simple roots.
pub fn build_ex(sys: &RootSystem) -> FlagComplex {
    let vertices = ex_vertices(sys);
    let v = vertices.clone();
    FlagComplex::from_edge_fn(vertices, |a, b| edge_test(sys, v[a], v[b]))
}

/// The ordered simple system of `σ` with the derived `ε` and `θ` sequences.
/// All entries are Steinberg indices of positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSystemData {
    /// `P_σ = {τ_1 < … < τ_t}`.
    pub p: Vec<usize>,
    pub delta: Vec<usize>,
    pub epsilon: Vec<usize>,
    pub theta: Vec<usize>,
}

impl SimpleSystemData {
    pub fn k(&self) -> usize {
        self.delta.len()
    }

    /// 1-based position in `P_σ` of a Steinberg index (its `τ` subscript).
    pub fn tau(&self, rho_index: usize) -> Option<usize> {
        self.p.iter().position(|&r| r == rho_index).map(|i| i + 1)
    }

    /// Checks `σ = R(ε_k)⋯R(ε_1) = R(θ_k)⋯R(θ_1)`.
    pub fn factorisations_hold(&self, sys: &RootSystem, sigma: &GroupElement) -> bool {
        let eps = sys.word_product(&self.epsilon);
        let th = sys.word_product(&self.theta);
        matches!((eps, th), (Ok(a), Ok(b)) if &a == sigma && &b == sigma)
    }
}

fn fixed_normals(sys: &RootSystem, w: &GroupElement) -> Vec<Vec<FieldElement>> {
    w.matrix()
        .minus_identity()
        .nullspace()
        .iter()
        .map(|f| sys.gram().mul_vec(f))
        .collect()
}

fn in_moved_space(normals: &[Vec<FieldElement>], v: &RootVector) -> bool {
    normals.iter().all(|bf| linalg::dot(&v.0, bf).is_zero())
}

/// Extracts `δ_k, …, δ_1` by taking, at each step, the last positive root in
/// `M(σR(δ_k)⋯R(δ_{i+1}))`, then forms `ε_i = R(δ_1)⋯R(δ_{i-1})δ_i` and `θ`.
pub fn simple_system(sys: &RootSystem, sigma: &GroupElement) -> Result<SimpleSystemData> {
    let p = sys.reflection_set(sigma)?;
    let k = sigma.reflection_length();
    if k == 0 {
        return Err(Error::TrivialElement);
    }
    let mut delta = vec![0; k];
    let mut cur = sigma.clone();
    for i in (0..k).rev() {
        let normals = fixed_normals(sys, &cur);
        let last = (1..=sys.positive_count())
            .rev()
            .find(|&r| in_moved_space(&normals, sys.rho(r as i64)))
            .ok_or_else(|| Error::Internal("moved space contains no positive root".into()))?;
        delta[i] = last;
        cur = cur.compose(sys.reflection_of(last));
    }
    if !cur.is_identity() {
        return Err(Error::Internal("simple system does not factor sigma".into()));
    }

    let mut epsilon = Vec::with_capacity(k);
    let mut acc = sys.identity();
    for &d in &delta {
        let e = acc.apply(sys.rho(d as i64));
        let idx = sys
            .root_index(&e)
            .filter(|&i| i <= sys.positive_count())
            .ok_or_else(|| Error::Internal("epsilon is not a positive root".into()))?;
        epsilon.push(idx);
        acc = acc.compose(sys.reflection_of(d));
    }
    let mut theta = epsilon.clone();
    theta.sort_unstable();
    Ok(SimpleSystemData {
        p,
        delta,
        epsilon,
        theta,
    })
}

/// `⟨θ_1, …, θ_k⟩`, confirmed to be the lexicographically first top simplex of `X(σ)`.
pub fn first_facet(sys: &RootSystem, sigma: &GroupElement) -> Result<Simplex> {
    let x = build_x_sigma(sys, sigma)?;
    if sigma.is_identity() {
        return Ok(Simplex::new(Vec::new()));
    }
    let ss = simple_system(sys, sigma)?;
    let theta = Simplex::new(ss.theta.iter().map(|&i| ExtIndex(i as i64)).collect());
    match x.first_top_simplex() {
        Some(first) if first == theta => Ok(theta),
        other => Err(Error::Internal(format!(
            "theta simplex {:?} differs from the first facet {:?}",
            theta.indices(),
            other.map(|s| s.indices())
        ))),
    }
}

/// Cone membership for root vectors.
pub fn root_cone_membership(generators: &[RootVector], x: &RootVector) -> Option<Vec<FieldElement>> {
    let gens: Vec<Vec<FieldElement>> = generators.iter().map(|g| g.0.clone()).collect();
    cone_membership(&gens, &x.0)
}

/// `M(σ) ∩ μ(θ_1)⁺ ∩ ⋯ ∩ μ(θ_k)⁺` as a membership test.
#[derive(Debug, Clone)]
pub struct HalfspaceRealization {
    fixed_normals: Vec<Vec<FieldElement>>,
    mu_normals: Vec<Vec<FieldElement>>,
}

impl HalfspaceRealization {
    pub fn contains(&self, x: &RootVector) -> bool {
        in_moved_space(&self.fixed_normals, x)
            && self
                .mu_normals
                .iter()
                .all(|bm| linalg::dot(&x.0, bm).sign() != Sign::Negative)
    }

    /// Number of linear equations cutting out `M(σ)`.
    pub fn equation_count(&self) -> usize {
        self.fixed_normals.len()
    }
}

pub fn halfspace_realization(sys: &RootSystem, sigma: &GroupElement) -> Result<HalfspaceRealization> {
    let ss = simple_system(sys, sigma)?;
    Ok(HalfspaceRealization {
        fixed_normals: fixed_normals(sys, sigma),
        mu_normals: ss
            .theta
            .iter()
            .map(|&t| sys.gram().mul_vec(&sys.mu(t as i64).0))
            .collect(),
    })
}

/// `μ'(τ)`: the orthogonal projection of `μ(τ)` onto `M(σ)`.
pub fn project_mu(sys: &RootSystem, sigma: &GroupElement, tau: usize) -> Result<RootVector> {
    let p = sys.reflection_set(sigma)?;
    if !p.contains(&tau) {
        return Err(Error::NotInReflectionSet(tau));
    }
    let basis = sigma.matrix().minus_identity().column_space();
    let mu = &sys.mu(tau as i64).0;
    let b = sys.gram();
    let bq: Vec<Vec<FieldElement>> = basis.iter().map(|q| b.mul_vec(q)).collect();
    let g = linalg::Matrix::from_rows(
        basis
            .iter()
            .map(|qi| bq.iter().map(|bqj| linalg::dot(qi, bqj)).collect())
            .collect(),
    );
    let rhs: Vec<FieldElement> = bq.iter().map(|bqi| linalg::dot(bqi, mu)).collect();
    let c = g.solve(&rhs).ok_or(Error::Singular)?;
    let mut out = RootVector::zero(sys.field(), sys.rank());
    for (q, ci) in basis.iter().zip(&c) {
        out = out.add(&RootVector(linalg::scale_vec(ci, q)));
    }
    Ok(out)
}
