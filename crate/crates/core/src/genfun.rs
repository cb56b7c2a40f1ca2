//! Exact rational generating functions of automaton languages.
//!
//! For a DFA with transfer matrix `M` on its live states, the generating
//! function is `e_s^T (I − xM)^{-1} 1`. By Cramer's rule this is
//! `det(A_s) / det(A)` where `A = I − xM` and `A_s` has column `s` replaced
//! by ones. Both determinants are taken by fraction-free (Bareiss)
//! elimination over `ℤ[x]` with `s` moved to the last row and column: the
//! leading principal minors are then minors of `I − xM`, whose constant
//! terms are 1, so no pivot vanishes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;

/// A polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    /// `self / d`, which must be exact in `ℤ[x]`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = &d.0[dd];
        if rem.len() <= dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return Poly::default();
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let (c, r) = rem[i + dd].div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, dj) in d.0.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::new(q)
    }

    /// Content-free version with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Poly::default();
        }
        let p = Poly::new(self.0.iter().map(|c| c / &g).collect());
        if p.0.last().unwrap().is_negative() {
            -p
        } else {
            p
        }
    }

    /// Greatest common divisor in `ℚ[x]`, returned as a primitive integer polynomial.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let to_q = |p: &Poly| p.0.iter().map(|c| BigRational::from_integer(c.clone())).collect::<Vec<_>>();
        let (mut a, mut b) = (to_q(self), to_q(other));
        while !b.is_empty() {
            let r = rat_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Poly::default();
        }
        let denoms = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Poly::new(a.iter().map(|c| (c * BigRational::from_integer(denoms.clone())).to_integer()).collect()).primitive()
    }

    /// First `n` coefficients of `self / den` as a power series; `den(0)` must be ±1.
    pub fn series_div(&self, den: &Poly, n: usize) -> Vec<BigInt> {
        let d0 = den.coeff(0);
        assert!(d0.abs().is_one(), "series division needs a unit constant term");
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(den.degree()) {
                acc -= den.coeff(j) * &out[k - j];
            }
            out.push(acc * &d0);
        }
        out
    }
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Determinant by Bareiss elimination without pivoting. Returns `None` if a
/// pivot vanishes.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Option<Poly> {
    let n = m.len();
    if n == 0 {
        return Some(Poly::constant(BigInt::one()));
    }
    let mut prev = Poly::constant(BigInt::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            return None;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    Some(m[n - 1][n - 1].clone())
}

/// A rational generating function `num / den`, reduced, with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFun {
    pub num: Poly,
    pub den: Poly,
}

impl GenFun {
    /// Reduces `num / den` to lowest terms and scales so `den(0) = 1`.
    /// `den(0)` must be nonzero.
    pub fn normalized(num: Poly, den: Poly) -> GenFun {
        assert!(!den.coeff(0).is_zero(), "denominator must not vanish at 0");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let d0 = den.coeff(0);
        if !d0.abs().is_one() {
            let c = num.0.iter().chain(&den.0).fold(BigInt::zero(), |g, c| g.gcd(c));
            num = Poly::new(num.0.iter().map(|x| x / &c).collect());
            den = Poly::new(den.0.iter().map(|x| x / &c).collect());
        }
        if den.coeff(0).is_negative() { (-num, -den) } else { (num, den) }.into()
    }

    /// First `n` Taylor coefficients. Requires `den(0) = ±1`.
    pub fn series(&self, n: usize) -> Vec<BigInt> {
        self.num.series_div(&self.den, n)
    }
}

impl From<(Poly, Poly)> for GenFun {
    fn from((num, den): (Poly, Poly)) -> GenFun {
        GenFun { num, den }
    }
}

impl fmt::Display for GenFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct GenFunJson {
    num: Vec<serde_json::Number>,
    den: Vec<serde_json::Number>,
}

impl Serialize for GenFun {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums = |p: &Poly| -> Vec<serde_json::Number> {
            let cs = if p.is_zero() { vec![BigInt::zero()] } else { p.0.clone() };
            cs.iter().map(|c| serde_json::Number::from_str(&c.to_string()).expect("integer literal")).collect()
        };
        GenFunJson { num: nums(&self.num), den: nums(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenFun {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GenFunJson::deserialize(d)?;
        let poly = |v: &[serde_json::Number]| -> std::result::Result<Poly, D::Error> {
            v.iter()
                .map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Poly::new)
        };
        Ok(GenFun { num: poly(&raw.num)?, den: poly(&raw.den)? })
    }
}

/// The generating function of the accepted words, checked against
/// [`Dfa::count_profile`] for lengths up to `2·states + 2`.
pub fn rational_gf(d: &Dfa) -> GenFun {
    let d = d.minimize();
    let live: Vec<usize> = (0..d.states).filter(|&q| q != d.dead).collect();
    let gf = if live.is_empty() {
        GenFun { num: Poly::default(), den: Poly::constant(BigInt::one()) }
    } else {
        // Order the live states with the start state last.
        let mut order: Vec<usize> = live.iter().copied().filter(|&q| q != d.start).collect();
        order.push(d.start);
        let index = |q: usize| order.iter().position(|&r| r == q);
        let n = order.len();
        let mut a = vec![vec![Poly::default(); n]; n];
        for (i, &q) in order.iter().enumerate() {
            a[i][i] = Poly::constant(BigInt::one());
            for &t in &d.transitions[q] {
                if let Some(j) = index(t) {
                    a[i][j] = &a[i][j] - &Poly::from_i64(&[0, 1]);
                }
            }
        }
        let den = bareiss_det(a.clone()).expect("leading minors of I − xM are nonzero");
        for row in a.iter_mut() {
            row[n - 1] = Poly::constant(BigInt::one());
        }
        let num = bareiss_det(a).expect("leading minors of I − xM are nonzero");
        GenFun::normalized(num, den)
    };
    let terms = 2 * d.states + 2;
    let expected: Vec<BigInt> = d.count_profile(terms - 1).into_iter().map(BigInt::from).collect();
    assert_eq!(gf.series(terms), expected, "generating function disagrees with word counts");
    gf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::FiniteBasisClass;
    use crate::dfa::infer_dfa;
    use crate::perm::Perm;

    fn poly(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, -1]);
        let b = poly(&[1, 1]);
        assert_eq!(&a * &b, poly(&[1, 0, -1]));
        assert_eq!((&a * &b).div_exact(&a), b);
        assert_eq!(poly(&[2, 0, -2]).gcd(&poly(&[3, -3])), poly(&[-1, 1]));
        assert_eq!(poly(&[1, -3, 3]).to_string(), "1 - 3x + 3x^2");
    }

    #[test]
    fn determinant_matches_expansion() {
        // [[1, x], [x, 1]] has determinant 1 − x².
        let m = vec![vec![poly(&[1]), poly(&[0, 1])], vec![poly(&[0, 1]), poly(&[1])]];
        assert_eq!(bareiss_det(m), Some(poly(&[1, 0, -1])));
        // 1·(50 − 48) − 2·(40 − 42) + 3·(32 − 35) = −3.
        let c = |v: i64| poly(&[v]);
        let m = vec![vec![c(1), c(2), c(3)], vec![c(4), c(5), c(6)], vec![c(7), c(8), c(10)]];
        assert_eq!(bareiss_det(m), Some(c(-3)));
    }

    #[test]
    fn normalization() {
        // The denominator is (1 − x)(1 − x²).
        let g = GenFun::normalized(poly(&[1, 0, -1]), poly(&[1, -1, -1, 1]));
        assert_eq!(g, GenFun { num: poly(&[1]), den: poly(&[1, -1]) });
        let g = GenFun::normalized(poly(&[-2]), poly(&[-2, 4]));
        assert_eq!(g, GenFun { num: poly(&[1]), den: poly(&[1, -2]) });
    }

    #[test]
    fn closed_forms_match_counts() {
        // Layered: 1, 1, 2, 4, 8, ...
        let layered = GenFun { num: poly(&[1, -1]), den: poly(&[1, -2]) };
        let counts = FiniteBasisClass::new(["231", "312"].map(|s| s.parse::<Perm>().unwrap())).count_profile(10);
        assert_eq!(layered.series(11), counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        // Two increasing segments: 1, then 2^n − n.
        let two = GenFun { num: poly(&[1, -3, 3]), den: poly(&[1, -4, 5, -2]) };
        let counts =
            FiniteBasisClass::new(["321", "3142", "2143"].map(|s| s.parse::<Perm>().unwrap())).count_profile(10);
        assert_eq!(two.series(11), counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
    }

    #[test]
    fn increasing_class_gf() {
        let d = infer_dfa(&FiniteBasisClass::new(["21".parse::<Perm>().unwrap()]), 4).unwrap();
        assert_eq!(rational_gf(&d), GenFun { num: poly(&[1]), den: poly(&[1, -1]) });
        assert_eq!(rational_gf(&Dfa::empty(1)), GenFun { num: poly(&[]), den: poly(&[1]) });
    }

    #[test]
    fn json_shape() {
        let g = GenFun { num: poly(&[1, -1]), den: poly(&[1, -2]) };
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"num":[1,-1],"den":[1,-2]}"#);
        assert_eq!(serde_json::from_str::<GenFun>(&s).unwrap(), g);
        let big = GenFun { num: Poly::constant("123456789012345678901234567890".parse().unwrap()), den: poly(&[1]) };
        assert_eq!(serde_json::to_string(&big).unwrap(), r#"{"num":[123456789012345678901234567890],"den":[1]}"#);
    }
}
