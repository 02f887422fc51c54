//! Exact rational scalars and vectors.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Q = BigRational;
pub type QVec = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(Int::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(Int::from(n), Int::from(d))
}

pub fn qv(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    (0..n).map(|_| Q::zero()).collect()
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_integral(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_integer())
}

pub fn concat(a: &[Q], b: &[Q]) -> QVec {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

pub fn floor(x: &Q) -> Int {
    x.floor().to_integer()
}

pub fn ceil(x: &Q) -> Int {
    x.ceil().to_integer()
}

/// Least common multiple of the denominators.
pub fn lcm_denominators(v: &[Q]) -> Int {
    v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_numerators(v: &[Q]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x.numer()))
}

/// Positive rescaling to a primitive integer vector; zero stays zero.
pub fn primitive(v: &[Q]) -> QVec {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let l = lcm_denominators(v);
    let ints: Vec<Int> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |a, b| a.gcd(b));
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Parses `p`, `-p` or `p/q`; zero denominators are rejected.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = n.parse().ok()?;
    let d: Int = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        let mut s = x.numer().to_string();
        s.push('/');
        s.push_str(&x.denom().to_string());
        s
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&fmt_q(x));
    }
    s.push(')');
    s
}

pub fn lex_cmp(a: &[Q], b: &[Q]) -> Ordering {
    a.cmp(b)
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_q("3/6"), Some(qf(1, 2)));
        assert_eq!(parse_q("-4"), Some(q(-4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(fmt_q(&qf(-2, 4)), "-1/2");
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[qf(1, 2), qf(1, 3)]), qv(&[3, 2]));
        assert_eq!(primitive(&qv(&[0, -4])), qv(&[0, -1]));
    }
}
