#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use reflection_lattice::linalg::Matrix;
use reflection_lattice::rootsystem::CoxeterDatum;
use reflection_lattice::{FieldElement, NumberField, RootSystem, RootVector};
use serde_json::Value;

/// Types named by the Petrie, sign and facet criteria.
pub fn petrie_types() -> Vec<String> {
    let mut v: Vec<String> = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "G2", "H3", "H4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    v.extend((3..=12).map(|m| format!("I2({m})")));
    v.push("E6".into());
    v
}

pub fn rank_at_most_four() -> Vec<String> {
    petrie_types()
        .into_iter()
        .filter(|t| RootSystem::from_symbol(t).unwrap().rank() <= 4)
        .collect()
}

pub fn fixture(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("fixture is valid JSON")
}

pub fn field_of(v: &Value) -> Arc<NumberField> {
    NumberField::new(v["generator_order"].as_u64().unwrap() as u32).unwrap()
}

pub fn parse(f: &Arc<NumberField>, s: &str) -> FieldElement {
    FieldElement::parse(f, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// A `{scale, coords}` fixture entry as an exact ambient vector.
pub fn ambient(f: &Arc<NumberField>, v: &Value) -> Vec<FieldElement> {
    let scale = parse(f, v["scale"].as_str().unwrap());
    v["coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| &scale * &parse(f, c.as_str().unwrap()))
        .collect()
}

pub fn coxeter_matrix(v: &Value) -> Vec<Vec<u32>> {
    v["coxeter_matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect())
        .collect()
}

pub fn system_of(v: &Value) -> RootSystem {
    RootSystem::new(CoxeterDatum::from_matrix(coxeter_matrix(v), None).unwrap()).unwrap()
}

/// Ambient vectors of a fixed simple system, for conversion in both directions.
pub struct Ambient {
    pub field: Arc<NumberField>,
    /// Columns are the simple roots.
    pub basis: Matrix<FieldElement>,
}

impl Ambient {
    pub fn new(field: Arc<NumberField>, alphas: Vec<Vec<FieldElement>>) -> Self {
        Ambient {
            basis: Matrix::from_columns(&alphas),
            field,
        }
    }

    /// `Σ c_i α_i`.
    pub fn embed(&self, v: &RootVector) -> Vec<FieldElement> {
        self.basis.mul_vec(v.coords())
    }

    /// The simple-root coordinates of an ambient vector in their span.
    pub fn coordinates(&self, x: &[FieldElement]) -> RootVector {
        RootVector(self.basis.solve_any(x).expect("vector lies in the span of the simple roots"))
    }

    pub fn dot(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        x.iter()
            .zip(y)
            .fold(FieldElement::zero(&self.field), |acc, (a, b)| &acc + &(a * b))
    }
}

pub fn int_matrix(f: &Arc<NumberField>, v: &Value) -> Vec<Vec<FieldElement>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| FieldElement::from_integer(f, x.as_i64().unwrap()))
                .collect()
        })
        .collect()
}

pub fn apply_rows(m: &[Vec<FieldElement>], x: &[FieldElement]) -> Vec<FieldElement> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(FieldElement::zero(x[0].field()), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

/// `|W|` from the degrees of the basic invariants, an oracle independent of any enumeration.
pub fn group_order(symbol: &str) -> u64 {
    degrees(symbol).iter().product()
}

/// `Π (h + d_i) / d_i`, the number of noncrossing elements.
pub fn catalan(symbol: &str) -> u64 {
    let d = degrees(symbol);
    let h = *d.iter().max().unwrap();
    let num: u64 = d.iter().map(|x| h + x).product();
    let den: u64 = d.iter().product();
    num / den
}

pub fn degrees(symbol: &str) -> Vec<u64> {
    if let Some(m) = symbol.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        return vec![2, m.parse().unwrap()];
    }
    let (family, rank) = symbol.split_at(1);
    let n: u64 = rank.parse().unwrap();
    match family {
        "A" => (2..=n + 1).collect(),
        "B" | "C" => (1..=n).map(|i| 2 * i).collect(),
        "D" => (1..n).map(|i| 2 * i).chain([n]).collect(),
        "E" => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        "F" => vec![2, 6, 8, 12],
        "G" => vec![2, 6],
        "H" if n == 3 => vec![2, 6, 10],
        "H" => vec![2, 12, 20, 30],
        _ => panic!("no degrees for {symbol}"),
    }
}
