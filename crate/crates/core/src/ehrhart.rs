//! Lattice-point counts on `w0*x + w1*y + w2*z = d`: enumeration oracles, the
//! Popoviciu-type closed forms for denumerants, and the Ehrhart quasi-polynomial
//! `Eh_w(d) = g_{w, d+|w|} - sum_P Delta_P(d + |w|)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{gcd, int, lcm, mod_inverse, rat, PeriodicRational, Rational};
use crate::dedekind::FourierDedekindTable;
use crate::singularity::delta_at_projective_vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight {value} at position {index} is not positive")]
    NonPositive { index: usize, value: i64 },
    #[error("weights {left} and {right} (positions {i} and {j}) share the factor {common}")]
    NotCoprime {
        i: usize,
        j: usize,
        left: i64,
        right: i64,
        common: i64,
    },
    #[error("weight product overflows")]
    Overflow,
}

fn check_pairwise_coprime(w: [i64; 3]) -> Result<(), WeightError> {
    for (index, &value) in w.iter().enumerate() {
        if value < 1 {
            return Err(WeightError::NonPositive { index, value });
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let common = gcd(w[i], w[j]);
        if common != 1 {
            return Err(WeightError::NotCoprime {
                i,
                j,
                left: w[i],
                right: w[j],
                common,
            });
        }
    }
    Ok(())
}

/// Pairwise coprime positive weights `(w0, w1, w2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightVector {
    w: [i64; 3],
    product: i64,
}

impl WeightVector {
    pub fn new(w0: i64, w1: i64, w2: i64) -> Result<Self, WeightError> {
        let w = [w0, w1, w2];
        check_pairwise_coprime(w)?;
        let product = w0
            .checked_mul(w1)
            .and_then(|x| x.checked_mul(w2))
            .ok_or(WeightError::Overflow)?;
        Ok(Self { w, product })
    }

    pub fn weights(&self) -> [i64; 3] {
        self.w
    }

    /// Weight of vertex `i`, indices taken mod 3.
    pub fn get(&self, i: usize) -> i64 {
        self.w[i % 3]
    }

    /// `w0 * w1 * w2`.
    pub fn product(&self) -> i64 {
        self.product
    }

    /// `w0 + w1 + w2`.
    pub fn total(&self) -> i64 {
        self.w.iter().sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.w[0], self.w[1], self.w[2])
    }
}

/// Every pairwise coprime `w0 <= w1 <= w2` with `w0 * w1 * w2 <= max_product`.
pub fn coprime_weight_triples(max_product: i64) -> Vec<WeightVector> {
    let mut out = Vec::new();
    for w0 in (1..).take_while(|w0| w0 * w0 * w0 <= max_product) {
        for w1 in (w0..).take_while(|w1| w0 * w1 * w1 <= max_product) {
            for w2 in (w1..).take_while(|w2| w0 * w1 * w2 <= max_product) {
                if let Ok(w) = WeightVector::new(w0, w1, w2) {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Result of an enumeration oracle. Negative dilations are not counted; they are
/// flagged and read as zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleCount {
    Points(u64),
    NegativeDilation,
}

impl OracleCount {
    pub fn value(self) -> u64 {
        match self {
            OracleCount::Points(n) => n,
            OracleCount::NegativeDilation => 0,
        }
    }

    pub fn is_negative_dilation(self) -> bool {
        matches!(self, OracleCount::NegativeDilation)
    }
}

/// `#{(x, y) >= 0 : a x + b y <= t}` by walking the rows `y = 0, 1, ...`.
pub fn count_triangle_le(a: i64, b: i64, t: i64) -> OracleCount {
    assert!(a > 0 && b > 0, "weights must be positive");
    if t < 0 {
        return OracleCount::NegativeDilation;
    }
    let total: u64 = (0..=t / b).map(|y| ((t - b * y) / a + 1) as u64).sum();
    OracleCount::Points(total)
}

/// `#{(x, y, z) >= 0 : a x + b y + c z = t}` for pairwise coprime `a, b, c`.
///
/// Each slice `z` is counted in O(1): the solutions of `a x + b y = s` have `x` in a
/// single residue class mod `b`.
pub fn count_simplex_eq(a: i64, b: i64, c: i64, t: i64) -> OracleCount {
    assert!(a > 0 && b > 0 && c > 0, "weights must be positive");
    assert_eq!(gcd(a, b), 1, "a and b must be coprime");
    if t < 0 {
        return OracleCount::NegativeDilation;
    }
    let a_inv = if b == 1 {
        0
    } else {
        mod_inverse(a, b).expect("coprime")
    };
    let (a, b, a_inv) = (i128::from(a), i128::from(b), i128::from(a_inv));
    let mut total: u64 = 0;
    let mut s = i128::from(t);
    while s >= 0 {
        let x0 = (s % b) * a_inv % b;
        if a * x0 <= s {
            total += ((s - a * x0) / (a * b) + 1) as u64;
        }
        s -= i128::from(c);
    }
    OracleCount::Points(total)
}

/// Pairwise coprime positive `(a, b, c)` together with a dilation `t` of any sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionPolyInputs {
    a: i64,
    b: i64,
    c: i64,
    t: i64,
}

impl PartitionPolyInputs {
    pub fn new(a: i64, b: i64, c: i64, t: i64) -> Result<Self, WeightError> {
        check_pairwise_coprime([a, b, c])?;
        Ok(Self { a, b, c, t })
    }

    pub fn abc(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn t(&self) -> i64 {
        self.t
    }
}

fn poly_part_raw(a: i64, b: i64, c: i64, t: i64) -> Rational {
    let [a, b, c, t] = [a, b, c, t].map(BigInt::from);
    let abc = &a * &b * &c;
    let quadratic = Rational::new(&t * &t, BigInt::from(2) * &abc);
    let linear = Rational::new(&t * (&a + &b + &c), BigInt::from(2) * &abc);
    let constant = Rational::new(
        BigInt::from(3) * (&a * &b + &a * &c + &b * &c) + &a * &a + &b * &b + &c * &c,
        BigInt::from(12) * &abc,
    );
    quadratic + linear + constant
}

/// The polynomial part
/// `t^2/(2abc) + (t/2)(1/ab + 1/ac + 1/bc) + (3(ab+ac+bc) + a^2+b^2+c^2)/(12abc)`.
pub fn poly_part(inputs: &PartitionPolyInputs) -> Rational {
    poly_part_raw(inputs.a, inputs.b, inputs.c, inputs.t)
}

/// The denumerant `t -> #{a x + b y + c z = t}` in closed form: the polynomial part
/// plus `s_{-t}(a, b; c) + s_{-t}(b, c; a) + s_{-t}(a, c; b)`.
///
/// The three Fourier-Dedekind sums are tabulated once, so each evaluation costs a
/// handful of rational operations.
#[derive(Debug, Clone)]
pub struct DenumerantQuasiPolynomial {
    abc: [i64; 3],
    sums: [FourierDedekindTable; 3],
}

impl DenumerantQuasiPolynomial {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, WeightError> {
        check_pairwise_coprime([a, b, c])?;
        let table = |list: &[i64], modulus| {
            FourierDedekindTable::new(list, modulus).expect("units modulo a coprime weight")
        };
        let sums = [table(&[a, b], c), table(&[b, c], a), table(&[a, c], b)];
        Ok(Self {
            abc: [a, b, c],
            sums,
        })
    }

    /// `#{a x + b y <= t}`, i.e. the case `c = 1`.
    pub fn planar(a: i64, b: i64) -> Result<Self, WeightError> {
        Self::new(a, b, 1)
    }

    pub fn weights(&self) -> [i64; 3] {
        self.abc
    }

    pub fn evaluate(&self, t: i64) -> Rational {
        let [a, b, c] = self.abc;
        let mut value = poly_part_raw(a, b, c, t);
        for table in &self.sums {
            value += table.get(-t);
        }
        value
    }
}

/// `p_{a,b,1}(t) = poly_{a,1,b}(t) + s_{-t}(a, 1; b) + s_{-t}(1, b; a)`; equals
/// [`count_triangle_le`] for `t >= 0`.
pub fn popoviciu_2d(a: i64, b: i64, t: i64) -> Result<Rational, WeightError> {
    check_pairwise_coprime([a, 1, b])?;
    let first = FourierDedekindTable::new(&[a, 1], b).expect("a is a unit mod b");
    let second = FourierDedekindTable::new(&[1, b], a).expect("b is a unit mod a");
    Ok(poly_part_raw(a, 1, b, t) + first.get(-t) + second.get(-t))
}

/// `p_{a,b,c}(t)`; equals [`count_simplex_eq`] for `t >= 0`.
pub fn popoviciu_3d(inputs: &PartitionPolyInputs) -> Rational {
    DenumerantQuasiPolynomial::new(inputs.a, inputs.b, inputs.c)
        .expect("validated inputs")
        .evaluate(inputs.t)
}

/// `g_{w,t} = t (t - |w|) / (2 w0 w1 w2) + 1`.
pub fn virtual_genus(w: &WeightVector, t: i64) -> Rational {
    let t_big = BigInt::from(t);
    Rational::new(&t_big * (&t_big - w.total()), BigInt::from(2) * w.product()) + Rational::one()
}

/// Quasi-polynomial `sum_i c_i(d) d^i` with periodic rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    coefficients: Vec<PeriodicRational>,
}

impl QuasiPolynomial {
    /// `coefficients[i]` multiplies `d^i`.
    pub fn new(coefficients: Vec<PeriodicRational>) -> Self {
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[PeriodicRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// lcm of the declared coefficient periods.
    pub fn period(&self) -> usize {
        self.coefficients
            .iter()
            .fold(1, |acc, c| lcm(acc, c.period()))
    }

    pub fn evaluate(&self, d: i64) -> Rational {
        let d_rat = int(d);
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &d_rat + c.evaluate(d))
    }
}

/// Per-vertex correction tables `D mod w_i -> Delta_{P_i}(D)`.
fn vertex_tables(w: &WeightVector) -> [PeriodicRational; 3] {
    [0, 1, 2].map(|i| {
        PeriodicRational::from_fn(w.get(i) as usize, |r| {
            delta_at_projective_vertex(w, i, r as i64)
        })
    })
}

/// `Eh_w` in closed form: `d^2/(2 w̄) + |w| d/(2 w̄) + a_0(d)` with
/// `a_0(d) = 1 - sum_i Delta_{P_i}(d + |w|)` of period `w̄ = w0 w1 w2`.
pub fn ehrhart_quasipolynomial(w: &WeightVector) -> QuasiPolynomial {
    let two_wbar = 2 * w.product();
    let tables = vertex_tables(w);
    let shift = w.total();
    let constant = PeriodicRational::from_fn(w.product() as usize, |d| {
        let big_d = d as i64 + shift;
        tables
            .iter()
            .fold(Rational::one(), |acc, t| acc - t.evaluate(big_d))
    });
    QuasiPolynomial::new(vec![
        constant,
        PeriodicRational::constant(rat(w.total(), two_wbar)),
        PeriodicRational::constant(rat(1, two_wbar)),
    ])
}

/// `Eh_w(d)` at a single dilation without tabulating the whole period:
/// `g_{w, d+|w|} - sum_i Delta_{P_i}(d + |w|)`.
pub fn ehrhart_value(w: &WeightVector, d: i64) -> Rational {
    let big_d = d + w.total();
    (0..3).fold(virtual_genus(w, big_d), |acc, i| {
        acc - delta_at_projective_vertex(w, i, big_d)
    })
}

/// `Eh_w(k w̄) = k (k w̄ + |w|) / 2 + 1`.
pub fn ehrhart_at_multiple(w: &WeightVector, k: u64) -> Rational {
    let k = BigInt::from(k);
    let inner = &k * w.product() + w.total();
    Rational::new(k * inner, BigInt::from(2)) + Rational::one()
}
