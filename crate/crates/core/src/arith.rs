//! Exact integer and rational primitives shared by the rest of the crate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive denominator.
///
/// `Display` renders `n/d`, or just `n` when the denominator is one.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("a periodic function needs at least one value")]
    EmptyPeriod,
    #[error("malformed rational {0:?}")]
    MalformedRational(alloc::string::String),
    #[error("residue is not invertible modulo 1 + x + ... + x^{order_minus_one}")]
    NotInvertibleResidue { order_minus_one: usize },
    #[error("residues of different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
}

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact quotient; errors instead of panicking on a zero divisor.
pub fn checked_div(x: &Rational, y: &Rational) -> Result<Rational, ArithError> {
    if y.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(x / y)
}

/// Parses `n/d` or `n`. Non-reduced input such as `2/4` is accepted and reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let malformed = || ArithError::MalformedRational(s.into());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| malformed())?;
    let den = BigInt::from_str(den.trim()).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(malformed());
    }
    Ok(Rational::new(num, den))
}

/// Least nonnegative representative of `a mod m`.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// `a * b mod m` in `[0, m)` without intermediate overflow.
pub fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
    (i128::from(a) * i128::from(b)).rem_euclid(i128::from(m)) as i64
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

/// Inverse of `a` modulo `m`, in `[1, m - 1]`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64, ArithError> {
    if m < 2 {
        return Err(ArithError::NotInvertible { a, m });
    }
    let ext = i128::from(modulo(a, m)).extended_gcd(&i128::from(m));
    if ext.gcd != 1 {
        return Err(ArithError::NotInvertible { a, m });
    }
    Ok(ext.x.rem_euclid(i128::from(m)) as i64)
}

/// The sawtooth `((x))`: `x - floor(x) - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - x.floor() - rat(1, 2)
    }
}

/// A function `Z -> Q` with a declared (not necessarily minimal) period.
///
/// Entry `i` of `values` is the value at every `n` with `n mod period == i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicRational {
    values: Vec<Rational>,
}

impl PeriodicRational {
    pub fn new(values: Vec<Rational>) -> Result<Self, ArithError> {
        if values.is_empty() {
            return Err(ArithError::EmptyPeriod);
        }
        Ok(Self { values })
    }

    pub fn constant(value: Rational) -> Self {
        Self {
            values: vec![value],
        }
    }

    /// Tabulates `f(0), ..., f(period - 1)`. Panics if `period == 0`.
    pub fn from_fn(period: usize, f: impl FnMut(usize) -> Rational) -> Self {
        assert!(period > 0, "period must be positive");
        Self {
            values: (0..period).map(f).collect(),
        }
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn evaluate(&self, n: i64) -> &Rational {
        let p = self.values.len() as i64;
        &self.values[n.rem_euclid(p) as usize]
    }

    /// Same function, with the smallest period dividing the declared one.
    pub fn canonicalize(&self) -> Self {
        let p = self.period();
        let minimal = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (d..p).all(|i| self.values[i] == self.values[i - d]))
            .unwrap_or(p);
        Self {
            values: self.values[..minimal].to_vec(),
        }
    }

    /// Same function, restated with a period that is a multiple of the current one.
    pub fn with_period(&self, period: usize) -> Option<Self> {
        if period == 0 || !period.is_multiple_of(self.period()) {
            return None;
        }
        Some(Self::from_fn(period, |i| {
            self.values[i % self.period()].clone()
        }))
    }

    /// `n -> f(n + shift)`.
    pub fn shift(&self, shift: i64) -> Self {
        Self::from_fn(self.period(), |i| self.evaluate(i as i64 + shift).clone())
    }

    /// Pointwise combination; the result carries the lcm of the two periods.
    pub fn zip_with(
        &self,
        other: &Self,
        mut f: impl FnMut(&Rational, &Rational) -> Rational,
    ) -> Self {
        let period = lcm(self.period(), other.period());
        Self::from_fn(period, |i| {
            f(self.evaluate(i as i64), other.evaluate(i as i64))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Equality as functions `Z -> Q`, regardless of declared period.
    pub fn equals_as_function(&self, other: &Self) -> bool {
        let period = lcm(self.period(), other.period()) as i64;
        (0..period).all(|n| self.evaluate(n) == other.evaluate(n))
    }
}

pub fn periodic_equal(f: &PeriodicRational, g: &PeriodicRational) -> bool {
    f.equals_as_function(g)
}

impl fmt::Display for PeriodicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Residue class in `Q[x] / (1 + x + ... + x^(b-1))`, stored as the `b - 1`
/// coefficients of its reduced representative.
///
/// The modulus vanishes exactly at the nontrivial `b`-th roots of unity, so one
/// residue describes a rational function evaluated at all of them simultaneously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPoly {
    order: usize,
    coeffs: Vec<Rational>,
}

impl QuotientPoly {
    /// Panics if `order == 0`.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        Self {
            order,
            coeffs: vec![Rational::zero(); order - 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0)
    }

    /// The class of `x^exponent`; negative exponents are fine since `x^b = 1` here.
    pub fn monomial(order: usize, exponent: i64) -> Self {
        let mut raw = vec![Rational::zero(); order];
        raw[exponent.rem_euclid(order as i64) as usize] = Rational::one();
        Self::from_coeffs(order, raw)
    }

    /// Reduces an arbitrary coefficient list (constant term first).
    pub fn from_coeffs(order: usize, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1, "order must be positive");
        let mut folded = vec![Rational::zero(); order];
        for (i, c) in coeffs.into_iter().enumerate() {
            folded[i % order] += c;
        }
        // x^(b-1) = -(1 + x + ... + x^(b-2))
        let top = folded.pop().unwrap_or_else(Rational::zero);
        if !top.is_zero() {
            for c in folded.iter_mut() {
                *c -= &top;
            }
        }
        Self {
            order,
            coeffs: folded,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.order)
    }

    fn check_order(&self, other: &Self) -> Result<(), ArithError> {
        if self.order != other.order {
            return Err(ArithError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        let b = self.order;
        let mut raw = vec![Rational::zero(); b];
        for (i, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
            {
                raw[(i + j) % b] += x * y;
            }
        }
        Ok(Self::from_coeffs(b, raw))
    }

    /// Multiplication by `x^exponent`.
    pub fn mul_monomial(&self, exponent: i64) -> Self {
        let b = self.order;
        let shift = exponent.rem_euclid(b as i64) as usize;
        let mut raw = vec![Rational::zero(); b];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i + shift) % b] = c.clone();
        }
        Self::from_coeffs(b, raw)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn invert(&self) -> Result<Self, ArithError> {
        let b = self.order;
        if b == 1 {
            // zero ring
            return Ok(self.clone());
        }
        let not_invertible = ArithError::NotInvertibleResidue {
            order_minus_one: b - 1,
        };
        let modulus = vec![Rational::one(); b];
        let mut r0 = modulus;
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let next_s = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, next_s);
        }
        if r0.len() != 1 {
            return Err(not_invertible);
        }
        let scale = r0[0].recip();
        Ok(Self::from_coeffs(
            b,
            s0.into_iter().map(|c| c * &scale).collect(),
        ))
    }

    /// Solves `(1 - x^a) y = self`, which has a unique solution iff `gcd(a, b) = 1`.
    ///
    /// Lift `self` to the representative mod `x^b - 1` whose coefficients sum to zero
    /// (it differs from the stored one by a multiple of the modulus). On that lift
    /// the equation reads `y_j - y_{j-a} = p_j`, and since `j -> j + a` is a single
    /// `b`-cycle it is solved by one walk around the cycle, in `O(b)`.
    pub fn div_one_minus_monomial(&self, a: i64) -> Result<Self, ArithError> {
        let b = self.order;
        if b == 1 {
            return Ok(self.clone());
        }
        if gcd(a, b as i64) != 1 {
            return Err(ArithError::NotInvertibleResidue {
                order_minus_one: b - 1,
            });
        }
        let mean = self.coeffs.iter().sum::<Rational>() / Rational::from_integer(BigInt::from(b));
        let lifted = |j: usize| match self.coeffs.get(j) {
            Some(c) => c - &mean,
            None => -mean.clone(),
        };
        let step = a.rem_euclid(b as i64) as usize;
        let mut y = vec![Rational::zero(); b];
        let mut j = 0;
        for _ in 1..b {
            let next = (j + step) % b;
            y[next] = &y[j] + lifted(next);
            j = next;
        }
        Ok(Self::from_coeffs(b, y))
    }

    /// `sum P(zeta)` over the nontrivial `b`-th roots of unity `zeta`.
    ///
    /// Uses `sum zeta^j = b - 1` for `j = 0` and `-1` for `0 < j < b`.
    pub fn root_sum(&self) -> Rational {
        let total: Rational = self.coeffs.iter().sum();
        match self.coeffs.first() {
            Some(c0) => c0 * BigInt::from(self.order) - total,
            None => Rational::zero(),
        }
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trimmed(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

/// Long division; `divisor` must be nonzero and trimmed.
fn poly_divrem(dividend: &[Rational], divisor: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(dividend.to_vec());
    let dlen = divisor.len();
    if rem.len() < dlen {
        return (Vec::new(), rem);
    }
    let lead_inv = divisor[dlen - 1].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
    while rem.len() >= dlen {
        let shift = rem.len() - dlen;
        let factor = &rem[rem.len() - 1] * &lead_inv;
        for (i, d) in divisor.iter().enumerate() {
            rem[shift + i] -= &factor * d;
        }
        quot[shift] = factor;
        rem.pop();
        rem = trimmed(rem);
    }
    (trimmed(quot), rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 7), Ok(1));
        assert_eq!(mod_inverse(2, 7), Ok(4));
        assert_eq!(mod_inverse(3, 7), Ok(5));
        assert_eq!(mod_inverse(-2, 7), Ok(3));
        assert_eq!(mod_inverse(1, 2), Ok(1));
    }

    #[test]
    fn mod_inverse_errors() {
        assert_eq!(
            mod_inverse(2, 4),
            Err(ArithError::NotInvertible { a: 2, m: 4 })
        );
        assert_eq!(
            mod_inverse(1, 1),
            Err(ArithError::NotInvertible { a: 1, m: 1 })
        );
        assert!(mod_inverse(0, 5).is_err());
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&rat(1, 2)), rat(0, 1));
        assert_eq!(sawtooth(&int(3)), rat(0, 1));
        assert_eq!(sawtooth(&rat(-1, 3)), rat(1, 6));
        assert_eq!(sawtooth(&rat(7, 4)), rat(1, 4));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            checked_div(&int(1), &int(0)),
            Err(ArithError::DivisionByZero)
        );
        assert_eq!(checked_div(&int(1), &int(4)), Ok(rat(1, 4)));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(alloc::format!("{}", rat(6, -4)), "-3/2");
        assert_eq!(alloc::format!("{}", rat(8, 4)), "2");
        assert_eq!(parse_rational("-3/2"), Ok(rat(-3, 2)));
        assert_eq!(parse_rational("2/4"), Ok(rat(1, 2)));
        assert_eq!(parse_rational("17"), Ok(int(17)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn periodic_equal_examples() {
        let p = |v: &[(i64, i64)]| {
            PeriodicRational::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
        };
        assert!(periodic_equal(&p(&[(0, 1)]), &p(&[(0, 1), (0, 1)])));
        assert!(periodic_equal(
            &p(&[(0, 1), (1, 4)]),
            &p(&[(0, 1), (1, 4), (0, 1), (1, 4)])
        ));
        assert!(!periodic_equal(
            &p(&[(0, 1), (1, 4)]),
            &p(&[(1, 4), (0, 1)])
        ));
        assert!(!periodic_equal(
            &p(&[(0, 1), (1, 4)]),
            &p(&[(0, 1), (1, 4), (0, 1)])
        ));
    }

    #[test]
    fn periodic_basics() {
        assert_eq!(
            PeriodicRational::new(Vec::new()),
            Err(ArithError::EmptyPeriod)
        );
        let f = PeriodicRational::new(vec![int(0), int(1), int(2)]).unwrap();
        assert_eq!(f.evaluate(-1), &int(2));
        assert_eq!(f.evaluate(7), &int(1));
        assert_eq!(f.shift(1).values(), &[int(1), int(2), int(0)]);
        assert_eq!(f.with_period(6).unwrap().period(), 6);
        assert!(f.with_period(4).is_none());
        let g = PeriodicRational::new(vec![int(10), int(20)]).unwrap();
        let sum = f.add(&g);
        assert_eq!(sum.period(), 6);
        assert_eq!(sum.evaluate(5), &int(22));
        assert_eq!(sum.sub(&g).canonicalize(), f);
        assert_eq!(
            alloc::format!(
                "{}",
                PeriodicRational::new(vec![int(0), rat(1, 4)]).unwrap()
            ),
            "[0, 1/4]"
        );
    }

    #[test]
    fn canonical_period() {
        let f =
            PeriodicRational::new(vec![int(1), int(2), int(1), int(2), int(1), int(2)]).unwrap();
        assert_eq!(f.canonicalize().values(), &[int(1), int(2)]);
        let g = PeriodicRational::new(vec![int(1), int(2), int(1), int(3)]).unwrap();
        assert_eq!(g.canonicalize().period(), 4);
    }

    #[test]
    fn quotient_poly_small_orders() {
        // b = 2: x = -1
        let x = QuotientPoly::monomial(2, 1);
        assert_eq!(x.coeffs(), &[int(-1)]);
        // b = 3: x^2 = -1 - x
        let x2 = QuotientPoly::monomial(3, 2);
        assert_eq!(x2.coeffs(), &[int(-1), int(-1)]);
        assert_eq!(QuotientPoly::monomial(3, -1), x2);
        // (1 - x)^{-1} at the roots of 1 + x + x^2
        let one_minus_x = QuotientPoly::one(3)
            .sub(&QuotientPoly::monomial(3, 1))
            .unwrap();
        let inv = one_minus_x.invert().unwrap();
        assert!(inv.mul(&one_minus_x).unwrap().is_one());
        // sum over zeta of 1/(1 - zeta) is (b-1)/2
        assert_eq!(inv.root_sum(), int(1));
        assert!(QuotientPoly::zero(5).invert().is_err());
        assert!(QuotientPoly::one(1).invert().unwrap().is_zero());
    }

    #[test]
    fn non_coprime_residue_is_rejected() {
        // 1 - x^2 vanishes at zeta = -1, a root of 1 + x + x^2 + x^3
        let p = QuotientPoly::one(4)
            .sub(&QuotientPoly::monomial(4, 2))
            .unwrap();
        assert_eq!(
            p.invert(),
            Err(ArithError::NotInvertibleResidue { order_minus_one: 3 })
        );
        let q = QuotientPoly::one(5);
        assert_eq!(p.mul(&q), Err(ArithError::OrderMismatch(4, 5)));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn inverse_of_inverse(m in 2i64..500, a in -1000i64..1000) {
            prop_assume!(gcd(a, m) == 1);
            let inv = mod_inverse(a, m).unwrap();
            prop_assert!((1..m).contains(&inv));
            prop_assert_eq!(mod_inverse(inv, m).unwrap(), modulo(a, m));
        }

        #[test]
        fn sawtooth_is_odd_and_periodic(x in arb_rational()) {
            prop_assert_eq!(sawtooth(&-x.clone()), -sawtooth(&x));
            prop_assert_eq!(sawtooth(&(x.clone() + int(1))), sawtooth(&x));
        }

        #[test]
        fn residue_inverse_round_trip(
            b in 2usize..=50,
            raw in proptest::collection::vec(-6i64..6, 1..8),
        ) {
            let p = QuotientPoly::from_coeffs(b, raw.iter().map(|&c| int(c)).collect());
            if let Ok(inv) = p.invert() {
                prop_assert!(inv.mul(&p).unwrap().is_one());
            }
        }

        #[test]
        fn unit_products_are_invertible(b in 2usize..=50, exps in proptest::collection::vec(1i64..200, 1..4)) {
            let mut p = QuotientPoly::one(b);
            for e in exps.iter().filter(|&&e| gcd(e, b as i64) == 1) {
                let f = QuotientPoly::one(b).sub(&QuotientPoly::monomial(b, *e)).unwrap();
                p = p.mul(&f).unwrap();
            }
            let inv = p.invert().unwrap();
            prop_assert!(p.mul(&inv).unwrap().is_one());
        }

        #[test]
        fn binomial_division_matches_inverse(
            b in 1usize..=40,
            a in -100i64..100,
            raw in proptest::collection::vec(-6i64..6, 0..8),
        ) {
            let p = QuotientPoly::from_coeffs(b, raw.iter().map(|&c| int(c)).collect());
            let binomial = QuotientPoly::one(b).sub(&QuotientPoly::monomial(b, a)).unwrap();
            match p.div_one_minus_monomial(a) {
                Ok(y) => {
                    prop_assert_eq!(y.mul(&binomial).unwrap(), p.clone());
                    prop_assert_eq!(y, p.mul(&binomial.invert().unwrap()).unwrap());
                }
                Err(_) => prop_assert!(gcd(a, b as i64) != 1 && binomial.invert().is_err()),
            }
        }

        #[test]
        fn canonicalize_idempotent(values in proptest::collection::vec(0i64..3, 1..12), reps in 1usize..4) {
            let base = PeriodicRational::new(values.iter().map(|&v| int(v)).collect()).unwrap();
            let f = base.with_period(base.period() * reps).unwrap();
            let c = f.canonicalize();
            prop_assert_eq!(c.canonicalize(), c.clone());
            prop_assert!(periodic_equal(&c, &f));
            prop_assert!(c.period() <= base.period());
        }
    }
}
