//! Exact membership in finitely generated cones.

use crate::linalg::{self, Matrix};
use crate::scalar::{Scalar, Sign};

/// Nonnegative `c` with `Σ c_i g_i = x`, if any.
///
/// Linearly independent generators are handled by a direct solve; otherwise an
/// exact phase-one simplex with Bland's rule decides feasibility.
pub fn cone_membership<T: Scalar>(generators: &[Vec<T>], x: &[T]) -> Option<Vec<T>> {
    if generators.is_empty() {
        return x.iter().all(Scalar::is_zero).then(Vec::new);
    }
    if linalg::independent(generators) {
        let a = Matrix::from_columns(generators);
        let c = a.solve_any(x)?;
        return c.iter().all(|v| v.sign() != Sign::Negative).then_some(c);
    }
    phase_one(generators, x)
}

/// Reference decision by trying every linearly independent subset of the generators.
/// Exponential; meant for small inputs and cross-checks.
pub fn cone_membership_exhaustive<T: Scalar>(generators: &[Vec<T>], x: &[T]) -> Option<Vec<T>> {
    let k = generators.len();
    if x.iter().all(Scalar::is_zero) {
        let zero = x.first().map(|v| v.zero_like());
        return Some(zero.map(|z| vec![z; k]).unwrap_or_default());
    }
    let dim = x.len();
    let mut chosen = Vec::new();
    search_subsets(generators, x, 0, dim, &mut chosen)
}

fn search_subsets<T: Scalar>(
    gens: &[Vec<T>],
    x: &[T],
    start: usize,
    dim: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<T>> {
    if !chosen.is_empty() {
        let cols: Vec<Vec<T>> = chosen.iter().map(|&i| gens[i].clone()).collect();
        if !linalg::independent(&cols) {
            return None;
        }
        if let Some(c) = Matrix::from_columns(&cols).solve_any(x) {
            if c.iter().all(|v| v.sign() != Sign::Negative) {
                let zero = x[0].zero_like();
                let mut full = vec![zero; gens.len()];
                for (slot, v) in chosen.iter().zip(c) {
                    full[*slot] = v;
                }
                return Some(full);
            }
        }
    }
    if chosen.len() == dim {
        return None;
    }
    for i in start..gens.len() {
        chosen.push(i);
        let found = search_subsets(gens, x, i + 1, dim, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn phase_one<T: Scalar>(generators: &[Vec<T>], x: &[T]) -> Option<Vec<T>> {
    let m = x.len();
    let k = generators.len();
    let zero = x[0].zero_like();
    let one = x[0].one_like();
    let width = k + m;
    // tableau rows: [A | I | b], rows negated so that b ≥ 0
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = x[i].sign() == Sign::Negative;
        let mut row: Vec<T> = generators
            .iter()
            .map(|g| if flip { g[i].neg_ref() } else { g[i].clone() })
            .collect();
        row.extend((0..m).map(|j| if j == i { one.clone() } else { zero.clone() }));
        row.push(if flip { x[i].neg_ref() } else { x[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..width).collect();
    let cost = |j: usize| if j >= k { one.clone() } else { zero.clone() };

    loop {
        // reduced cost r_j = c_j - Σ_i c_{B_i} t_ij; Bland: lowest index with r_j < 0
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = cost(j);
            for (i, &b) in basis.iter().enumerate() {
                if b >= k {
                    r = r.sub_ref(&t[i][j]);
                }
            }
            r.sign() == Sign::Negative
        });
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if t[i][e].sign() != Sign::Positive {
                continue;
            }
            let ratio = t[i][width].div_ref(&t[i][e]).expect("positive pivot");
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => match ratio.sub_ref(&lr).sign() {
                    Sign::Negative => Some((i, ratio)),
                    Sign::Zero if basis[i] < basis[li] => Some((i, ratio)),
                    _ => Some((li, lr)),
                },
            };
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur in phase one
            break;
        };
        let inv = t[r][e].inverse().expect("positive pivot");
        for v in t[r].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.sub_ref(&f.mul_ref(p));
                }
            }
        }
        basis[r] = e;
    }

    let infeasible = basis
        .iter()
        .enumerate()
        .any(|(i, &b)| b >= k && !t[i][width].is_zero());
    if infeasible {
        return None;
    }
    let mut c = vec![zero; k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            c[b] = t[i][width].clone();
        }
    }
    Some(c)
}
