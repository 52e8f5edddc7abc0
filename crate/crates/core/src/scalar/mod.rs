//! Exact arithmetic in the real field `Q(θ)`, `θ = 2cos(π/m)`.
//!
//! Elements are stored in the power basis `1, θ, …, θ^(d-1)` with reduced
//! rationals, so equality and hashing are coefficient-wise. Signs are decided
//! by bisecting a rational isolating interval for `θ` until an interval
//! evaluation of the element excludes zero.

mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) use poly::IntPoly;

/// Largest supported `m` for `Q(2cos(π/m))`.
pub const MAX_GENERATOR_ORDER: u32 = 30;
const SIGN_BISECTION_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i32() * rhs.as_i32() {
            0 => Sign::Zero,
            1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// An exact ordered field usable by the generic linear algebra.
///
/// Constants are produced from an existing value (`zero_like`, `one_like`)
/// because a runtime number field cannot conjure its own zero.
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn sign(&self) -> Sign;
    fn from_rational_like(&self, q: &BigRational) -> Self;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul_ref(&inv))
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn sign(&self) -> Sign {
        if Zero::is_zero(self) {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        q.clone()
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Q(θ)` with `θ = 2cos(π/m)`.
#[derive(Debug)]
pub struct NumberField {
    generator_order: u32,
    min_poly: IntPoly,
    isolating_interval: (BigRational, BigRational),
    // narrowed copy of the isolating interval used as the starting point for sign queries
    narrow: (BigRational, BigRational),
}

impl NumberField {
    /// The field `Q(2cos(π/m))` for `2 ≤ m ≤ 30`, built once per `m` and shared.
    pub fn new(m: u32) -> Result<Arc<NumberField>> {
        static TABLE: [OnceLock<Arc<NumberField>>; MAX_GENERATOR_ORDER as usize + 1] =
            [const { OnceLock::new() }; MAX_GENERATOR_ORDER as usize + 1];
        if !(2..=MAX_GENERATOR_ORDER).contains(&m) {
            return Err(Error::UnsupportedGeneratorOrder(m));
        }
        if let Some(f) = TABLE[m as usize].get() {
            return Ok(f.clone());
        }
        let built = Self::build(m)?;
        Ok(TABLE[m as usize].get_or_init(|| built).clone())
    }

    fn build(m: u32) -> Result<Arc<NumberField>> {
        let min_poly = poly::min_poly_2cos(2 * m);
        let isolating_interval = if min_poly.len() == 2 {
            let root = BigRational::from_integer(-min_poly[0].clone());
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (&root - &half, &root + &half)
        } else {
            isolate_largest_root(&min_poly)?
        };
        let mut narrow = isolating_interval.clone();
        let target = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
        while &narrow.1 - &narrow.0 > target {
            narrow = bisect_toward_root(&min_poly, &narrow);
        }
        Ok(Arc::new(NumberField {
            generator_order: m,
            min_poly,
            isolating_interval,
            narrow,
        }))
    }

    /// The rational numbers, presented as `Q(2cos(π/3))`.
    pub fn rational() -> Arc<NumberField> {
        NumberField::new(3).expect("m = 3 is always supported")
    }

    pub fn generator_order(&self) -> u32 {
        self.generator_order
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Monic minimal polynomial of `θ`, coefficients low degree first.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn isolating_interval(&self) -> (&BigRational, &BigRational) {
        (&self.isolating_interval.0, &self.isolating_interval.1)
    }

    /// Number of real roots of the minimal polynomial inside the closed isolating interval.
    pub fn roots_in_isolating_interval(&self) -> usize {
        let (lo, hi) = &self.isolating_interval;
        let at_lo = usize::from(Zero::is_zero(&poly::eval_int(&self.min_poly, lo)));
        poly::count_roots(&self.min_poly, lo, hi) + at_lo
    }

    pub fn min_poly_at(&self, x: &BigRational) -> BigRational {
        poly::eval_int(&self.min_poly, x)
    }

    pub fn generator_f64(&self) -> f64 {
        let mid = (&self.narrow.0 + &self.narrow.1) / rat(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

fn isolate_largest_root(p: &IntPoly) -> Result<(BigRational, BigRational)> {
    // every root of the 2cos minimal polynomial lies in (-2, 2)
    let hi = rat(2);
    let mut below = rat(-2);
    let mut above = rat(2);
    for _ in 0..SIGN_BISECTION_CAP {
        let mid = (&below + &above) / rat(2);
        match poly::count_roots(p, &mid, &hi) {
            1 if !Zero::is_zero(&poly::eval_int(p, &mid)) => return Ok((mid, hi)),
            0 => above = mid,
            _ => below = mid,
        }
    }
    Err(Error::Internal("failed to isolate 2cos(pi/m)".into()))
}

fn bisect_toward_root(p: &IntPoly, iv: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let mid = (&iv.0 + &iv.1) / rat(2);
    let at_lo = poly::eval_int(p, &iv.0);
    let at_mid = poly::eval_int(p, &mid);
    if Zero::is_zero(&at_mid) {
        // only possible for degree-1 fields, which never get here with an irrational root
        (mid.clone(), mid)
    } else if at_lo.is_positive() == at_mid.is_positive() {
        (mid, iv.1.clone())
    } else {
        (iv.0.clone(), mid)
    }
}

/// Closed rational interval.
#[derive(Debug, Clone)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn mul(&self, other: &Interval) -> Interval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        Interval { lo, hi }
    }

    fn shift(mut self, c: &BigRational) -> Interval {
        self.lo += c;
        self.hi += c;
        self
    }

    fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Element of a [`NumberField`] in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic entry point: reports mixed fields and division by zero as errors.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.check_field(b)?;
    Ok(match op {
        ArithOp::Add => a.add_ref(b),
        ArithOp::Sub => a.sub_ref(b),
        ArithOp::Mul => a.mul_ref(b),
        ArithOp::Div => a.div_ref(b).ok_or(Error::DivisionByZero)?,
    })
}

impl FieldElement {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = q;
        e
    }

    /// `θ` itself; for a degree-1 field this is the rational value `2cos(π/m)`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.is_rational() {
            Self::from_rational(field, BigRational::from_integer(-field.min_poly[0].clone()))
        } else {
            let mut e = Self::zero(field);
            e.coeffs[1] = BigRational::one();
            e
        }
    }

    /// Builds an element from power-basis coefficients, reducing modulo the minimal polynomial.
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let mut c = coeffs;
        if c.is_empty() {
            c.push(BigRational::zero());
        }
        reduce_into(field, c)
    }

    /// Reads the display form back, e.g. `1/2*t+1/2`, `-t^2+3`, `2/3`.
    /// Spaces are ignored and higher powers are reduced.
    pub fn parse(field: &Arc<NumberField>, text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            symbol: text.to_string(),
            reason: reason.to_string(),
        };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty value"));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for end in 1..=bytes.len() {
            if end < bytes.len() && !(matches!(bytes[end], b'+' | b'-') && bytes[end - 1] != b'/') {
                continue;
            }
            let term = &s[start..end];
            start = end;
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, power) = match body.find('t') {
                None => (body, 0usize),
                Some(pos) => {
                    let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    if pos > 0 && !body[..pos].ends_with('*') {
                        return Err(bad("expected '*' before t"));
                    }
                    let power = match &body[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|p| p.parse().ok())
                            .ok_or_else(|| bad("bad exponent"))?,
                    };
                    (if coef.is_empty() { "1" } else { coef }, power)
                }
            };
            let mut c: BigRational = coef.parse().map_err(|_| bad("bad coefficient"))?;
            if neg {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += c;
        }
        Ok(Self::from_coeffs(field, coeffs))
    }

    /// `2cos(π/label)` when it lies in the field.
    pub fn two_cos_pi_over(field: &Arc<NumberField>, label: u32) -> Result<Self> {
        let order = field.generator_order;
        match label {
            2 => Ok(Self::zero(field)),
            3 => Ok(Self::one(field)),
            _ if label >= 2 && order % label == 0 => {
                // 2cos(kπ/order) = P_k(θ) with k = order / label
                let cheb = poly::chebyshev_2cos((order / label) as usize);
                let theta = Self::generator(field);
                let mut acc = Self::zero(field);
                for c in cheb.iter().rev() {
                    acc = &(&acc * &theta) + &Self::from_rational(field, BigRational::from_integer(c.clone()));
                }
                Ok(acc)
            }
            _ => Err(Error::NotExpressible { label, order }),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.generator_order == other.field.generator_order
    }

    fn check_field(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.generator_order, other.field.generator_order))
        }
    }

    fn assert_field(&self, other: &FieldElement) {
        if let Err(e) = self.check_field(other) {
            panic!("{e}");
        }
    }

    /// Sign under the real embedding fixed by the isolating interval.
    pub fn try_sign(&self) -> Result<Sign> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Scalar::sign(q));
        }
        let mut iv = self.field.narrow.clone();
        for _ in 0..SIGN_BISECTION_CAP {
            let theta = Interval { lo: iv.0.clone(), hi: iv.1.clone() };
            let mut acc = Interval::point(self.coeffs[self.coeffs.len() - 1].clone());
            for c in self.coeffs.iter().rev().skip(1) {
                acc = acc.mul(&theta).shift(c);
            }
            if let Some(s) = acc.sign() {
                return Ok(s);
            }
            iv = bisect_toward_root(&self.field.min_poly, &iv);
        }
        Err(Error::Internal("sign bisection exceeded 256 iterations".into()))
    }

    /// Floating-point value, for export only.
    pub fn to_f64(&self) -> f64 {
        let theta = self.field.generator_f64();
        if self.field.is_rational() {
            return self.coeffs[0].to_f64().unwrap_or(f64::NAN);
        }
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * theta + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Total order on coefficient vectors (not the numeric order); used for canonical sorting.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        self.field
            .generator_order
            .cmp(&other.field.generator_order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Numeric comparison via the sign of the difference.
    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    fn mul_coeffs(&self, other: &FieldElement) -> FieldElement {
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_into(&self.field, prod)
    }

    fn invert(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        if d == 1 {
            return Some(FieldElement {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // solve (multiplication-by-self matrix) x = e_0 over Q
        let mut basis = FieldElement::one(&self.field);
        let theta = FieldElement::generator(&self.field);
        let mut columns = Vec::with_capacity(d);
        for _ in 0..d {
            columns.push(self.mul_coeffs(&basis).coeffs);
            basis = basis.mul_coeffs(&theta);
        }
        let rows: Vec<Vec<BigRational>> = (0..d)
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        let m = crate::linalg::Matrix::from_rows(rows);
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        m.solve(&rhs).map(|coeffs| FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }
}

fn reduce_into(field: &Arc<NumberField>, mut c: Vec<BigRational>) -> FieldElement {
    let d = field.degree();
    let mp = &field.min_poly;
    if c.len() > d {
        for k in (d..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if Zero::is_zero(&lead) {
                continue;
            }
            for j in 0..d {
                if !mp[j].is_zero() {
                    c[k - d + j] -= &lead * BigRational::from_integer(mp[j].clone());
                }
            }
        }
        c.truncate(d);
    }
    c.resize(d, BigRational::zero());
    FieldElement {
        field: field.clone(),
        coeffs: c,
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.generator_order == other.field.generator_order && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical polynomial string in `t`, highest degree first, e.g. `1/2*t+1/2`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let term = if k == 0 {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i > 0 && !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(t);
        }
        write!(f, "{out}")
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.assert_field(rhs);
        if self.coeffs.len() == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        self.mul_coeffs(rhs)
    }
    fn neg_ref(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        self.invert()
    }
    fn sign(&self) -> Sign {
        self.try_sign().expect("sign bisection cap reached; minimal-polynomial table is corrupt")
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        FieldElement::from_rational(&self.field, q.clone())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                Scalar::$body(self, rhs)
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                Scalar::$body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`field_arith`] for a checked quotient.
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self.assert_field(rhs);
        self.div_ref(rhs).expect("division by zero")
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
