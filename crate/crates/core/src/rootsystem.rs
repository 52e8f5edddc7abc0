//! Coxeter data, the bipartite simple system and the Steinberg ordering of roots.
//!
//! Everything is expressed in simple-root coordinates; inner products go
//! through the Gram matrix `B_ij = -cos(π/m_ij)`, so all roots are unit vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::absorder::GroupElement;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{FieldElement, NumberField, Scalar, Sign};
use crate::FieldMatrix;

/// Cap on the power iteration that finds the Coxeter number.
pub const ORDER_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

/// A parsed type symbol such as `A3`, `H4` or `I2(7)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
    /// The dihedral label `m` of `I2(m)`.
    pub dihedral: Option<u32>,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dihedral {
            Some(m) => write!(f, "I2({m})"),
            None => write!(f, "{:?}{}", self.family, self.rank),
        }
    }
}

impl TypeLabel {
    pub fn parse(symbol: &str) -> Result<TypeLabel> {
        let err = |reason: &str| Error::Parse {
            symbol: symbol.to_string(),
            reason: reason.to_string(),
        };
        let s = symbol.trim();
        if let Some(rest) = s.strip_prefix("I2(") {
            let digits = rest.strip_suffix(')').ok_or_else(|| err("expected `I2(<m>)`"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("dihedral label must be a positive integer"));
            }
            let m: u32 = digits.parse().map_err(|_| err("dihedral label out of range"))?;
            if m < 3 {
                return Err(err("I2(m) requires m >= 3"));
            }
            return Ok(TypeLabel {
                family: Family::I,
                rank: 2,
                dihedral: Some(m),
            });
        }
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| err("empty symbol"))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected `<letter><rank>` or `I2(<m>)`"));
        }
        let rank: usize = digits.parse().map_err(|_| err("rank out of range"))?;
        let (family, ok) = match letter {
            'A' => (Family::A, rank >= 1),
            'B' => (Family::B, rank >= 2),
            'C' => (Family::C, rank >= 2),
            'D' => (Family::D, rank >= 4),
            'E' => (Family::E, (6..=8).contains(&rank)),
            'F' => (Family::F, rank == 4),
            'G' => (Family::G, rank == 2),
            'H' => (Family::H, (3..=4).contains(&rank)),
            'I' => return Err(err("dihedral types are written `I2(<m>)`")),
            _ => return Err(err("unknown family letter")),
        };
        if !ok {
            return Err(err("rank out of range for this family"));
        }
        Ok(TypeLabel {
            family,
            rank,
            dihedral: None,
        })
    }

    /// The standard Coxeter matrix; `H_n` carries its 5 on the last edge.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank;
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, label: u32| {
            m[i][j] = label;
            m[j][i] = label;
        };
        match self.family {
            Family::A => (0..n.saturating_sub(1)).for_each(|i| edge(i, i + 1, 3)),
            Family::B | Family::C => {
                edge(0, 1, 4);
                (1..n - 1).for_each(|i| edge(i, i + 1, 3));
            }
            Family::D => {
                (0..n - 2).for_each(|i| edge(i, i + 1, 3));
                edge(n - 3, n - 1, 3);
            }
            Family::E => {
                // 0-2-3-4-..., with node 1 attached to node 3
                edge(0, 2, 3);
                edge(1, 3, 3);
                (2..n - 1).for_each(|i| edge(i, i + 1, 3));
            }
            Family::F => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
            Family::G => edge(0, 1, 6),
            Family::H => {
                (0..n - 2).for_each(|i| edge(i, i + 1, 3));
                edge(n - 2, n - 1, 5);
            }
            Family::I => edge(0, 1, self.dihedral.unwrap_or(3)),
        }
        m
    }

    pub fn is_crystallographic(&self) -> bool {
        match self.family {
            Family::H => false,
            Family::I => matches!(self.dihedral, Some(3 | 4 | 6)),
            _ => true,
        }
    }
}

/// Rank, Coxeter matrix and scalar field of an irreducible finite Coxeter group.
#[derive(Debug, Clone)]
pub struct CoxeterDatum {
    rank: usize,
    coxeter_matrix: Vec<Vec<u32>>,
    field: Arc<NumberField>,
    label: Option<TypeLabel>,
}

/// Parses a type symbol into its datum.
pub fn parse_type(symbol: &str) -> Result<CoxeterDatum> {
    let label = TypeLabel::parse(symbol)?;
    CoxeterDatum::from_matrix(label.coxeter_matrix(), Some(label))
}

impl CoxeterDatum {
    /// Builds a datum from an explicit Coxeter matrix; the field is `Q(2cos(π/m))`
    /// where `m` is the least common multiple of the labels above 3.
    pub fn from_matrix(matrix: Vec<Vec<u32>>, label: Option<TypeLabel>) -> Result<CoxeterDatum> {
        let n = matrix.len();
        let bad = |s: &str| Error::InvalidCoxeterMatrix(s.to_string());
        if n == 0 {
            return Err(bad("empty matrix"));
        }
        for i in 0..n {
            if matrix[i].len() != n {
                return Err(bad("matrix is not square"));
            }
            if matrix[i][i] != 1 {
                return Err(bad("diagonal entries must be 1"));
            }
            for j in 0..n {
                if i != j && (matrix[i][j] < 2 || matrix[i][j] != matrix[j][i]) {
                    return Err(bad("off-diagonal entries must be symmetric and at least 2"));
                }
            }
        }
        if !is_connected(&matrix) {
            return Err(bad("Coxeter graph is not connected"));
        }
        let order = matrix
            .iter()
            .flatten()
            .filter(|&&m| m > 3)
            .fold(3u32, |acc, &m| if acc == 3 { m } else { lcm(acc, m) });
        let field = NumberField::new(order)?;
        Ok(CoxeterDatum {
            rank: n,
            coxeter_matrix: matrix,
            field,
            label,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn label(&self) -> Option<TypeLabel> {
        self.label
    }

    pub fn is_crystallographic(&self) -> bool {
        self.coxeter_matrix.iter().flatten().all(|m| matches!(m, 1 | 2 | 3 | 4 | 6))
    }

    fn reindexed(&self, order: &[usize]) -> CoxeterDatum {
        let matrix = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.coxeter_matrix[i][j]).collect())
            .collect();
        CoxeterDatum {
            rank: self.rank,
            coxeter_matrix: matrix,
            field: self.field.clone(),
            label: self.label,
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn is_connected(m: &[Vec<u32>]) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && m[i][j] > 2 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Simple roots reordered so the first `s` and the last `n - s` are pairwise orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    /// `order[k]` is the original index of the simple root placed at position `k`.
    pub order: Vec<usize>,
    pub s: usize,
}

/// Two-colours the Coxeter graph: the colour class holding the smallest original
/// index comes first, members keep their original relative order.
pub fn bipartition(datum: &CoxeterDatum) -> Result<Bipartition> {
    let n = datum.rank;
    let m = &datum.coxeter_matrix;
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let c = colour[i].unwrap_or(false);
            for j in 0..n {
                if i == j || m[i][j] <= 2 {
                    continue;
                }
                match colour[j] {
                    None => {
                        colour[j] = Some(!c);
                        stack.push(j);
                    }
                    Some(cj) if cj == c => return Err(Error::NotBipartite),
                    Some(_) => {}
                }
            }
        }
    }
    let first: Vec<usize> = (0..n).filter(|&i| colour[i] == Some(false)).collect();
    let second: Vec<usize> = (0..n).filter(|&i| colour[i] == Some(true)).collect();
    let s = first.len();
    Ok(Bipartition {
        order: first.into_iter().chain(second).collect(),
        s,
    })
}

/// Gram matrix of the unit simple roots, `B_ij = -cos(π/m_ij)`.
pub fn gram(datum: &CoxeterDatum) -> Result<FieldMatrix> {
    let n = datum.rank;
    let f = &datum.field;
    let minus_half = FieldElement::from_rational(f, BigRational::new((-1).into(), 2.into()));
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let label = datum.coxeter_matrix[i][j];
            if label == 1 {
                row.push(FieldElement::one(f));
            } else {
                row.push(&minus_half * &FieldElement::two_cos_pi_over(f, label)?);
            }
        }
        rows.push(row);
    }
    let b = Matrix::from_rows(rows);
    if !b.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(b)
}

/// A vector in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<FieldElement>);

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl RootVector {
    pub fn zero(field: &Arc<NumberField>, n: usize) -> Self {
        RootVector(vec![FieldElement::zero(field); n])
    }

    pub fn basis(field: &Arc<NumberField>, n: usize, i: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.0[i] = FieldElement::one(field);
        v
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    /// All coordinates nonnegative and at least one positive.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|c| c.sign() != Sign::Negative)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|c| c.sign() != Sign::Positive)
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &RootVector) -> Self {
        RootVector(linalg::add_vec(&self.0, &other.0))
    }

    pub fn sub(&self, other: &RootVector) -> Self {
        RootVector(linalg::sub_vec(&self.0, &other.0))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        RootVector(linalg::scale_vec(c, &self.0))
    }
}

/// `xᵀ B y`.
pub fn dot(gram: &FieldMatrix, x: &RootVector, y: &RootVector) -> FieldElement {
    linalg::dot(&x.0, &gram.mul_vec(&y.0))
}

/// `β_i` is column `i` of `B⁻¹`, so that `β_i · α_j = δ_ij`.
pub fn dual_basis(gram: &FieldMatrix) -> Result<Vec<RootVector>> {
    let inv = gram.inverse().ok_or(Error::Singular)?;
    Ok((0..gram.cols()).map(|i| RootVector(inv.column(i))).collect())
}

/// The Steinberg sequences `ρ_1..ρ_nh` and `μ_1..μ_nh` for `γ = R_1 ⋯ R_n`.
#[derive(Debug, Clone)]
pub struct SteinbergData {
    pub s: usize,
    pub h: usize,
    rho: Vec<RootVector>,
    mu: Vec<RootVector>,
    pub gamma: GroupElement,
}

impl SteinbergData {
    pub fn rank(&self) -> usize {
        self.gamma.rank()
    }

    /// `nh`, the number of roots.
    pub fn root_count(&self) -> usize {
        self.rho.len()
    }

    /// `nh / 2`, the number of positive roots.
    pub fn positive_count(&self) -> usize {
        self.rho.len() / 2
    }

    /// `ρ_i` for any integer `i`, read cyclically (`ρ_{-k} = ρ_{nh-k}`).
    pub fn rho(&self, i: i64) -> &RootVector {
        &self.rho[self.wrap(i)]
    }

    pub fn mu(&self, i: i64) -> &RootVector {
        &self.mu[self.wrap(i)]
    }

    fn wrap(&self, i: i64) -> usize {
        let nh = self.rho.len() as i64;
        ((i - 1).rem_euclid(nh)) as usize
    }

    pub fn rhos(&self) -> &[RootVector] {
        &self.rho
    }

    pub fn mus(&self) -> &[RootVector] {
        &self.mu
    }
}

/// Computes `γ`, `h`, `ρ` and `μ` for a bipartite-ordered datum and checks the
/// closed forms and the positivity split.
pub fn steinberg(
    datum: &CoxeterDatum,
    s: usize,
    gram: &FieldMatrix,
    dual: &[RootVector],
) -> Result<SteinbergData> {
    let n = datum.rank;
    let f = &datum.field;
    let simple: Vec<RootVector> = (0..n).map(|i| RootVector::basis(f, n, i)).collect();
    let refl: Vec<GroupElement> = simple
        .iter()
        .map(|a| GroupElement::reflection(gram, a))
        .collect::<Result<_>>()?;
    let identity = GroupElement::identity(f, n);
    let gamma = refl.iter().fold(identity.clone(), |acc, r| acc.compose(r));

    let mut h = 0;
    let mut power = gamma.clone();
    for k in 1..=ORDER_CAP {
        if power.is_identity() {
            h = k;
            break;
        }
        power = power.compose(&gamma);
    }
    if h == 0 {
        return Err(Error::OrderCapExceeded(ORDER_CAP));
    }

    let nh = n * h;
    let mut rho = Vec::with_capacity(nh);
    let mut mu = Vec::with_capacity(nh);
    let mut prefix = identity;
    for i in 0..nh {
        let k = i % n;
        rho.push(prefix.apply(&simple[k]));
        mu.push(prefix.apply(&dual[k]));
        prefix = prefix.compose(&refl[k]);
    }

    let internal = |what: &str| Error::Internal(format!("Steinberg closed form failed: {what}"));
    for i in 0..n {
        let expect = if i < s {
            simple[i].clone()
        } else {
            gamma.apply(&simple[i]).neg()
        };
        if rho[i] != expect {
            return Err(internal("rho_i for i <= n"));
        }
        if mu[i] != dual[i] {
            return Err(internal("mu_i = beta_i"));
        }
    }
    for i in n..nh {
        if rho[i] != gamma.apply(&rho[i - n]) || mu[i] != gamma.apply(&mu[i - n]) {
            return Err(internal("cyclic recursion"));
        }
    }
    let half = nh / 2;
    for (i, r) in rho.iter().enumerate() {
        let ok = if i < half { r.is_positive() } else { r.is_negative() };
        if !ok {
            return Err(Error::PositivityViolated(i + 1));
        }
    }
    let mut tail: Vec<&RootVector> = rho[half - (n - s)..half].iter().collect();
    let mut s2: Vec<&RootVector> = simple[s..].iter().collect();
    tail.sort_by(|a, b| cmp_vec(a, b));
    s2.sort_by(|a, b| cmp_vec(a, b));
    if tail != s2 {
        return Err(internal("last n - s positive roots are not a permutation of S2"));
    }

    Ok(SteinbergData {
        s,
        h,
        rho,
        mu,
        gamma,
    })
}

fn cmp_vec(a: &RootVector, b: &RootVector) -> std::cmp::Ordering {
    a.0.iter()
        .zip(&b.0)
        .map(|(x, y)| x.canonical_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// The matrix `[μ_i · ρ_j]` for `1 ≤ i, j ≤ nh/2`.
pub fn dot_table(gram: &FieldMatrix, sd: &SteinbergData) -> Vec<Vec<FieldElement>> {
    let half = sd.positive_count();
    let b_rho: Vec<Vec<FieldElement>> = sd.rho[..half].iter().map(|r| gram.mul_vec(&r.0)).collect();
    sd.mu[..half]
        .iter()
        .map(|m| b_rho.iter().map(|br| linalg::dot(&m.0, br)).collect())
        .collect()
}

/// A finite irreducible reflection group with its bipartite simple system,
/// Coxeter element and Steinberg-ordered roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    datum: CoxeterDatum,
    bipartition: Bipartition,
    gram: FieldMatrix,
    gram_inv: FieldMatrix,
    dual: Vec<RootVector>,
    steinberg: SteinbergData,
    gamma_inv: GroupElement,
    // (γ - I)⁻¹, used for μ(σ) = -2(γ - I)⁻¹σ
    gamma_minus_one_inv: FieldMatrix,
    reflections: Vec<GroupElement>,
    root_index: HashMap<RootVector, usize>,
}

impl RootSystem {
    pub fn from_symbol(symbol: &str) -> Result<RootSystem> {
        RootSystem::new(parse_type(symbol)?)
    }

    /// Reorders the datum bipartitely and computes all Steinberg data.
    pub fn new(datum: CoxeterDatum) -> Result<RootSystem> {
        let bip = bipartition(&datum)?;
        let datum = datum.reindexed(&bip.order);
        let gram = gram(&datum)?;
        let gram_inv = gram.inverse().ok_or(Error::Singular)?;
        let dual = dual_basis(&gram)?;
        let sd = steinberg(&datum, bip.s, &gram, &dual)?;
        let gamma_inv = sd.gamma.inverse(&gram, &gram_inv);
        let gamma_minus_one_inv = sd
            .gamma
            .matrix()
            .minus_identity()
            .inverse()
            .ok_or_else(|| Error::Internal("γ - I is singular".into()))?;
        let half = sd.positive_count();
        let reflections = sd.rho[..half]
            .iter()
            .map(|r| GroupElement::reflection(&gram, r))
            .collect::<Result<Vec<_>>>()?;
        let root_index = sd.rho.iter().enumerate().map(|(i, r)| (r.clone(), i + 1)).collect();
        Ok(RootSystem {
            datum,
            bipartition: bip,
            gram,
            gram_inv,
            dual,
            steinberg: sd,
            gamma_inv,
            gamma_minus_one_inv,
            reflections,
            root_index,
        })
    }

    /// The datum after bipartite reordering.
    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn bipartition(&self) -> &Bipartition {
        &self.bipartition
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn s(&self) -> usize {
        self.steinberg.s
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.datum.field
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &FieldMatrix {
        &self.gram_inv
    }

    pub fn dual_basis(&self) -> &[RootVector] {
        &self.dual
    }

    pub fn steinberg(&self) -> &SteinbergData {
        &self.steinberg
    }

    pub fn coxeter_number(&self) -> usize {
        self.steinberg.h
    }

    pub fn gamma(&self) -> &GroupElement {
        &self.steinberg.gamma
    }

    pub fn gamma_inverse(&self) -> &GroupElement {
        &self.gamma_inv
    }

    /// `nh / 2`.
    pub fn positive_count(&self) -> usize {
        self.steinberg.positive_count()
    }

    /// `ρ_i`, indices taken cyclically.
    pub fn rho(&self, i: i64) -> &RootVector {
        self.steinberg.rho(i)
    }

    pub fn mu(&self, i: i64) -> &RootVector {
        self.steinberg.mu(i)
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        RootVector::basis(self.field(), self.rank(), i)
    }

    pub fn dot(&self, x: &RootVector, y: &RootVector) -> FieldElement {
        dot(&self.gram, x, y)
    }

    pub fn dot_table(&self) -> Vec<Vec<FieldElement>> {
        dot_table(&self.gram, &self.steinberg)
    }

    /// `R(ρ_i)` for a positive Steinberg index `1 ≤ i ≤ nh/2`.
    pub fn reflection_of(&self, i: usize) -> &GroupElement {
        &self.reflections[i - 1]
    }

    pub fn reflections(&self) -> &[GroupElement] {
        &self.reflections
    }

    /// Steinberg index in `1..=nh` of a root.
    pub fn root_index(&self, v: &RootVector) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// Index in `1..=nh/2` of the positive root among `±v`.
    pub fn positive_index(&self, v: &RootVector) -> Option<usize> {
        let half = self.positive_count();
        match self.root_index(v)? {
            i if i <= half => Some(i),
            _ => self.root_index(&v.neg()).filter(|&i| i <= half),
        }
    }

    /// `μ(σ) = -2(γ - I)⁻¹σ`; equals `μ_i` when `σ = ρ_i`.
    pub fn mu_of(&self, v: &RootVector) -> RootVector {
        let x = self.gamma_minus_one_inv.mul_vec(&v.0);
        let minus_two = FieldElement::from_integer(self.field(), -2);
        RootVector(linalg::scale_vec(&minus_two, &x))
    }

    pub fn is_crystallographic(&self) -> bool {
        self.datum.is_crystallographic()
    }

    pub fn label(&self) -> String {
        self.datum
            .label
            .map(|l| l.to_string())
            .unwrap_or_else(|| format!("rank-{} custom", self.rank()))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.field(), self.rank())
    }

    /// Positive roots generated by closing the simple roots under the simple reflections.
    pub fn positive_roots_by_closure(&self) -> Vec<RootVector> {
        let n = self.rank();
        let simple_refl: Vec<GroupElement> = (0..n)
            .map(|i| GroupElement::reflection(&self.gram, &self.simple_root(i)).expect("unit simple root"))
            .collect();
        let mut seen: std::collections::HashSet<RootVector> = (0..n).map(|i| self.simple_root(i)).collect();
        let mut stack: Vec<RootVector> = seen.iter().cloned().collect();
        while let Some(v) = stack.pop() {
            for r in &simple_refl {
                let w = r.apply(&v);
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        let mut pos: Vec<RootVector> = seen.into_iter().filter(RootVector::is_positive).collect();
        pos.sort_by(cmp_vec);
        pos
    }
}

/// Canonical (coefficient-lexicographic) comparison of vectors.
pub fn canonical_cmp(a: &RootVector, b: &RootVector) -> std::cmp::Ordering {
    cmp_vec(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_rank_limits() {
        assert_eq!(parse_type("A1").unwrap().rank(), 1);
        assert_eq!(parse_type("I2(7)").unwrap().field().generator_order(), 7);
        assert_eq!(parse_type("H3").unwrap().field().generator_order(), 5);
        assert_eq!(parse_type("B4").unwrap().field().generator_order(), 4);
        assert_eq!(parse_type("G2").unwrap().field().generator_order(), 6);
        assert!(parse_type("E6").unwrap().field().is_rational());
        for bad in ["", "X3", "A0", "B1", "D3", "E9", "F3", "G3", "H5", "I2(2)", "I3", "I2(x)", "A-1"] {
            assert!(parse_type(bad).is_err(), "{bad} should not parse");
        }
        assert!(matches!(
            parse_type("I2(31)"),
            Err(Error::UnsupportedGeneratorOrder(31))
        ));
    }

    #[test]
    fn bipartition_examples() {
        let h3 = parse_type("H3").unwrap();
        let b = bipartition(&h3).unwrap();
        assert_eq!(b, Bipartition { order: vec![0, 2, 1], s: 2 });
        let a1 = parse_type("A1").unwrap();
        assert_eq!(bipartition(&a1).unwrap().s, 1);
    }

    #[test]
    fn gram_entries() {
        let a2 = gram(&parse_type("A2").unwrap()).unwrap();
        let f = NumberField::rational();
        let mh = FieldElement::from_rational(&f, BigRational::new((-1).into(), 2.into()));
        assert_eq!(a2.get(0, 1), &mh);
        assert_eq!(a2.get(1, 1), &FieldElement::one(&f));
        let h3 = gram(&parse_type("H3").unwrap()).unwrap();
        let field = NumberField::new(5).unwrap();
        let tau = FieldElement::generator(&field);
        let minus_half = FieldElement::from_rational(&field, BigRational::new((-1).into(), 2.into()));
        assert_eq!(h3.get(1, 2), &(&minus_half * &tau));
        assert!(h3.get(0, 2).is_zero());
    }

    #[test]
    fn coxeter_numbers() {
        for (sym, h) in [("A1", 2), ("A3", 4), ("B4", 8), ("D4", 6), ("F4", 12), ("G2", 6), ("H3", 10), ("H4", 30), ("I2(7)", 7), ("E6", 12)] {
            let sys = RootSystem::from_symbol(sym).unwrap();
            assert_eq!(sys.coxeter_number(), h, "{sym}");
        }
    }

    #[test]
    fn disconnected_matrix_is_rejected() {
        let m = vec![vec![1, 2], vec![2, 1]];
        assert!(matches!(
            CoxeterDatum::from_matrix(m, None),
            Err(Error::InvalidCoxeterMatrix(_))
        ));
    }
}
