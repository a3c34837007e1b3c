//! Linearly ordered target structures and linear betweenness.
//!
//! An [`OrderValue`] is a value of one of four order shapes: the rationals,
//! the lexicographic plane, the double arrow `ℝ·2` (pairs ordered by real
//! part, then side bit), and lexicographic sums whose components are ordered
//! by an integer label. Values of different shapes are incomparable;
//! comparison reports [`OrderError::ShapeMismatch`] rather than inventing an
//! order across shapes.
//!
//! Linear betweenness is the order-theoretic one: `x` is between `a` and `b`
//! iff `a ≤ x ≤ b` or `b ≤ x ≤ a`.

use std::cmp::Ordering;
use std::fmt;

use serde::de;
use serde::{Deserialize, Deserializer, Serialize};

use crate::rational::Rational;

/// A value in one of the supported linear orders.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderValue {
    /// A rational number with its usual order.
    #[serde(rename = "rat")]
    Rat(Rational),
    /// A point of the lexicographically ordered plane.
    #[serde(rename = "lex")]
    LexPair(Rational, Rational),
    /// A point of the double arrow `ℝ·2`: real part, then side bit.
    #[serde(rename = "da")]
    DoubleArrow(Rational, #[serde(deserialize_with = "de_bit")] u8),
    /// A point of a lexicographic sum: component label, then inner value.
    #[serde(rename = "sum")]
    LexSum(u32, Box<OrderValue>),
}

fn de_bit<'de, D: Deserializer<'de>>(d: D) -> Result<u8, D::Error> {
    let b = u8::deserialize(d)?;
    if b > 1 {
        return Err(de::Error::custom("double-arrow side must be 0 or 1"));
    }
    Ok(b)
}

impl OrderValue {
    pub fn rat(v: impl Into<Rational>) -> Self {
        OrderValue::Rat(v.into())
    }

    pub fn lex(a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        OrderValue::LexPair(a.into(), b.into())
    }

    /// `side` must be 0 or 1.
    pub fn double_arrow(real: impl Into<Rational>, side: u8) -> Self {
        assert!(side <= 1, "double-arrow side must be 0 or 1");
        OrderValue::DoubleArrow(real.into(), side)
    }

    pub fn sum(label: u32, inner: OrderValue) -> Self {
        OrderValue::LexSum(label, Box::new(inner))
    }

    /// Human-readable shape tag, used in mismatch errors.
    pub fn shape(&self) -> String {
        match self {
            OrderValue::Rat(_) => "rat".into(),
            OrderValue::LexPair(_, _) => "lex".into(),
            OrderValue::DoubleArrow(_, _) => "da".into(),
            OrderValue::LexSum(label, inner) => format!("sum[{label}, {}]", inner.shape()),
        }
    }
}

impl fmt::Debug for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Rat(v) => write!(f, "Rat({v})"),
            OrderValue::LexPair(a, b) => write!(f, "Lex({a}, {b})"),
            OrderValue::DoubleArrow(r, s) => write!(f, "DA({r}, {s})"),
            OrderValue::LexSum(l, inner) => write!(f, "Sum({l}, {inner:?})"),
        }
    }
}

/// Errors from order comparisons and interval plumbing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("cannot compare order values of shapes {0} and {1}")]
    ShapeMismatch(String, String),
    #[error("empty interval: lower bound must be strictly below upper bound")]
    EmptyInterval,
}

/// Total-order comparison of two values of the same shape.
///
/// Lexicographic pairs compare first coordinate then second; the double
/// arrow compares real part then side; sums compare label then inner value
/// (inner values only need matching shapes when the labels are equal).
pub fn compare(u: &OrderValue, v: &OrderValue) -> Result<Ordering, OrderError> {
    use OrderValue::*;
    match (u, v) {
        (Rat(a), Rat(b)) => Ok(a.cmp(b)),
        (LexPair(a1, a2), LexPair(b1, b2)) => Ok(a1.cmp(b1).then_with(|| a2.cmp(b2))),
        (DoubleArrow(a, s), DoubleArrow(b, t)) => Ok(a.cmp(b).then_with(|| s.cmp(t))),
        (LexSum(i, a), LexSum(j, b)) => {
            if i != j {
                Ok(i.cmp(j))
            } else {
                compare(a, b)
            }
        }
        _ => Err(OrderError::ShapeMismatch(u.shape(), v.shape())),
    }
}

/// Order-theoretic betweenness: `a ≤ x ≤ b` or `b ≤ x ≤ a`.
pub fn linear_between(a: &OrderValue, x: &OrderValue, b: &OrderValue) -> Result<bool, OrderError> {
    let ax = compare(a, x)?;
    let xb = compare(x, b)?;
    let ascending = ax != Ordering::Greater && xb != Ordering::Greater;
    let descending = ax != Ordering::Less && xb != Ordering::Less;
    Ok(ascending || descending)
}

/// Strictly increasing bijection from the rationals onto a subset of `(0,1)`:
/// `x ↦ (1 + x/(1+|x|))/2`. Exact; never reaches the endpoints.
pub fn squash(x: &Rational) -> Rational {
    let one = Rational::one();
    let t = x.clone() / (&one + x.abs());
    (one + t) * Rational::new(1, 2)
}

/// Affine rescaling of `x` from `(0,1)` onto `(lo, hi)`: `lo + (hi−lo)·x`.
///
/// Strictly increasing in `x`; lands strictly inside `(lo, hi)` whenever
/// `x ∈ (0,1)`. Fails if `lo ≥ hi`.
pub fn rescale(x: &Rational, lo: &Rational, hi: &Rational) -> Result<Rational, OrderError> {
    if lo >= hi {
        return Err(OrderError::EmptyInterval);
    }
    Ok(lo.clone() + (hi - lo) * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn lex_compare() {
        let u = OrderValue::lex(1, 5);
        let v = OrderValue::lex(2, 0);
        assert_eq!(compare(&u, &v).unwrap(), Ordering::Less);
        assert_eq!(compare(&u, &u).unwrap(), Ordering::Equal);
        assert_eq!(compare(&v, &u).unwrap(), Ordering::Greater);
        // First coordinates tie: second decides.
        let w = OrderValue::lex(1, 7);
        assert_eq!(compare(&u, &w).unwrap(), Ordering::Less);
    }

    #[test]
    fn double_arrow_compare() {
        let lo = OrderValue::double_arrow(3, 0);
        let hi = OrderValue::double_arrow(3, 1);
        assert_eq!(compare(&lo, &hi).unwrap(), Ordering::Less);
        assert_eq!(compare(&hi, &lo).unwrap(), Ordering::Greater);
        let far = OrderValue::double_arrow(4, 0);
        assert_eq!(compare(&hi, &far).unwrap(), Ordering::Less);
    }

    #[test]
    fn sum_compare_by_label_then_inner() {
        // Components of a sum may have different inner shapes; distinct
        // labels are decided by the labels alone.
        let a = OrderValue::sum(0, OrderValue::double_arrow(100, 1));
        let b = OrderValue::sum(1, OrderValue::rat(-100));
        assert_eq!(compare(&a, &b).unwrap(), Ordering::Less);

        let c = OrderValue::sum(1, OrderValue::rat(0));
        assert_eq!(compare(&b, &c).unwrap(), Ordering::Less);

        // Equal labels with incompatible inner shapes: refuse.
        let d = OrderValue::sum(1, OrderValue::double_arrow(0, 0));
        assert!(matches!(
            compare(&c, &d),
            Err(OrderError::ShapeMismatch(_, _))
        ));
    }

    #[test]
    fn shape_mismatch() {
        let u = OrderValue::rat(1);
        let v = OrderValue::lex(1, 1);
        assert!(matches!(
            compare(&u, &v),
            Err(OrderError::ShapeMismatch(_, _))
        ));
        assert!(linear_between(&u, &v, &u).is_err());
    }

    #[test]
    fn linear_between_examples() {
        let r = |v: i64| OrderValue::rat(v);
        assert!(linear_between(&r(0), &r(1), &r(2)).unwrap());
        assert!(linear_between(&r(2), &r(1), &r(0)).unwrap());
        assert!(!linear_between(&r(0), &r(3), &r(2)).unwrap());
        assert!(linear_between(&r(1), &r(1), &r(1)).unwrap());
    }

    #[test]
    fn squash_values() {
        assert_eq!(squash(&rat(0, 1)), rat(1, 2));
        assert_eq!(squash(&rat(1, 1)), rat(3, 4));
        assert_eq!(squash(&rat(-1, 1)), rat(1, 4));
        assert_eq!(squash(&rat(1, 2)), rat(2, 3));
    }

    #[test]
    fn rescale_values() {
        assert_eq!(
            rescale(&rat(1, 2), &rat(0, 1), &rat(1, 1)).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            rescale(&rat(1, 2), &rat(1, 3), &rat(2, 3)).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            rescale(&rat(3, 4), &rat(0, 1), &rat(4, 1)).unwrap(),
            rat(3, 1)
        );
        assert_eq!(
            rescale(&rat(1, 2), &rat(1, 1), &rat(1, 1)),
            Err(OrderError::EmptyInterval)
        );
    }

    #[test]
    fn json_shapes() {
        let cases = [
            (OrderValue::rat(rat(1, 2)), r#"{"rat":"1/2"}"#),
            (OrderValue::lex(1, rat(-2, 3)), r#"{"lex":["1","-2/3"]}"#),
            (
                OrderValue::double_arrow(rat(1, 2), 0),
                r#"{"da":["1/2",0]}"#,
            ),
            (
                OrderValue::sum(2, OrderValue::rat(3)),
                r#"{"sum":[2,{"rat":"3"}]}"#,
            ),
        ];
        for (value, json) in cases {
            assert_eq!(serde_json::to_string(&value).unwrap(), json);
            let back: OrderValue = serde_json::from_str(json).unwrap();
            assert_eq!(back, value);
        }
        assert!(serde_json::from_str::<OrderValue>(r#"{"da":["1/2",2]}"#).is_err());
    }
}
