mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflection_lattice::complexes::{build_x_sigma, halfspace_realization, root_cone_membership};
use reflection_lattice::{FieldElement, RootSystem, RootVector, Scalar, Sign};

/// Joined roots `i < j` meet at a non-acute angle; `R(ρ_i)R(ρ_j) ≤ γ` with `i > j` gives a non-obtuse one.
#[test]
fn root_angles() {
    for sym in common::rank_at_most_four() {
        let sys = RootSystem::from_symbol(&sym).unwrap();
        let half = sys.positive_count();
        for i in 1..=half {
            for j in 1..=half {
                if i == j {
                    continue;
                }
                let w = sys.reflection_of(i).compose(sys.reflection_of(j));
                if !sys.below_gamma(&w) {
                    continue;
                }
                let s = sys.dot(sys.rho(i as i64), sys.rho(j as i64)).sign();
                if i < j {
                    assert_ne!(s, Sign::Positive, "{sym} ({i}, {j})");
                } else {
                    assert_ne!(s, Sign::Negative, "{sym} ({i}, {j})");
                }
            }
        }
    }
}

fn combination(sys: &RootSystem, roots: &[usize], coeffs: &[i64]) -> RootVector {
    roots.iter().zip(coeffs).fold(RootVector::zero(sys.field(), sys.rank()), |acc, (&r, &c)| {
        acc.add(&sys.rho(r as i64).scale(&FieldElement::from_integer(sys.field(), c)))
    })
}

/// The halfspace description, the positive cone on `P_σ` and the union of facet
/// cones of `X(σ)` agree on random vectors of `M(σ)`.
#[test]
fn three_descriptions_of_the_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for sym in ["A3", "B3", "H3", "I2(7)", "B4", "D4"] {
        let sys = RootSystem::from_symbol(sym).unwrap();
        let p = sys.interval();
        let mut inside = 0;
        for w in 1..p.len() {
            let sigma = p.element(w);
            let tau = sys.reflection_set(sigma).unwrap();
            let x = build_x_sigma(&sys, sigma).unwrap();
            let facets: Vec<Vec<RootVector>> = x
                .facets()
                .iter()
                .map(|f| f.indices().iter().map(|&i| sys.rho(i).clone()).collect())
                .collect();
            let all: Vec<RootVector> = tau.iter().map(|&t| sys.rho(t as i64).clone()).collect();
            let h = halfspace_realization(&sys, sigma).unwrap();
            for &t in &tau {
                assert!(h.contains(sys.rho(t as i64)), "{sym} element {w} root {t}");
            }
            for trial in 0..8 {
                let lo = if trial % 2 == 0 { 0 } else { -2 };
                let c: Vec<i64> = tau.iter().map(|_| rng.gen_range(lo..=3)).collect();
                let v = combination(&sys, &tau, &c);
                let in_cone = root_cone_membership(&all, &v).is_some();
                let in_facet = facets.iter().any(|f| root_cone_membership(f, &v).is_some());
                assert_eq!(h.contains(&v), in_cone, "{sym} element {w} {c:?}");
                assert_eq!(in_facet, in_cone, "{sym} element {w} {c:?}");
                inside += usize::from(in_cone);
            }
        }
        assert!(inside > 0, "{sym}: no sample landed in the cone");
    }
}

/// Facet cones of `X(σ)` are simplicial and have disjoint interiors.
#[test]
fn facet_cones_are_simplicial() {
    for sym in ["A3", "B3", "H3", "A4"] {
        let sys = RootSystem::from_symbol(sym).unwrap();
        let p = sys.interval();
        for w in 1..p.len() {
            let x = build_x_sigma(&sys, p.element(w)).unwrap();
            let facets: Vec<Vec<i64>> = x.facets().iter().map(|f| f.indices()).collect();
            let k = p.length(w);
            for f in &facets {
                assert_eq!(f.len(), k, "{sym} element {w}");
                let interior = f.iter().fold(RootVector::zero(sys.field(), sys.rank()), |acc, &i| acc.add(sys.rho(i)));
                for g in &facets {
                    if g != f {
                        let gens: Vec<RootVector> = g.iter().map(|&i| sys.rho(i).clone()).collect();
                        assert!(root_cone_membership(&gens, &interior).is_none(), "{sym} element {w}: {f:?} inside {g:?}");
                    }
                }
            }
        }
    }
}
