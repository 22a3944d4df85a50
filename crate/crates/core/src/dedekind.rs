//! Classical Dedekind sums and Fourier-Dedekind sums, computed exactly.
//!
//! `s(a, b) = sum_{j=1}^{b-1} ((j a / b)) ((j / b))` is evaluated either directly
//! (`O(b)`) or by Euclidean descent on the two-term reciprocity law
//! `s(a, b) + s(b, a) = -1/4 + (1 + a^2 + b^2) / (12 a b)`.
//!
//! The Fourier-Dedekind sum
//! `s_n(a_1, ..., a_m; b) = (1/b) sum_{k=1}^{b-1} zeta^{kn} / prod_i (1 - zeta^{k a_i})`
//! (with `zeta = exp(2 pi i / b)`) is rational. It is computed in the residue ring
//! `Q[x] / (1 + x + ... + x^(b-1))`: one inversion of `prod_i (1 - x^{a_i})` covers
//! every nontrivial root at once, and the root sum of a residue is read off its
//! coefficients.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{gcd, int, rat, ArithError, PeriodicRational, QuotientPoly, Rational};

/// Below this modulus the descent stops and the remaining sum is taken directly.
const NAIVE_CUTOFF: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DedekindError {
    #[error("invalid Dedekind arguments: {0}")]
    InvalidArgs(alloc::string::String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Validated pair `(a, b)` with `b >= 1` and `gcd(a, b) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DedekindArgs {
    a: i64,
    b: i64,
}

impl DedekindArgs {
    pub fn new(a: i64, b: i64) -> Result<Self, DedekindError> {
        if b < 1 {
            return Err(DedekindError::InvalidArgs(alloc::format!(
                "b = {b} must be positive"
            )));
        }
        if gcd(a, b) != 1 {
            return Err(DedekindError::InvalidArgs(alloc::format!(
                "gcd({a}, {b}) = {} is not 1",
                gcd(a, b)
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

/// Arguments of `s_n(a_1, ..., a_m; b)`; every `a_i` must be a unit mod `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FourierDedekindArgs {
    n: i64,
    a_list: Vec<i64>,
    b: i64,
}

impl FourierDedekindArgs {
    pub fn new(n: i64, a_list: Vec<i64>, b: i64) -> Result<Self, DedekindError> {
        if b < 1 {
            return Err(DedekindError::InvalidArgs(alloc::format!(
                "b = {b} must be positive"
            )));
        }
        if a_list.is_empty() {
            return Err(DedekindError::InvalidArgs("empty a_list".into()));
        }
        if let Some(&bad) = a_list.iter().find(|&&a| gcd(a, b) != 1) {
            return Err(DedekindError::InvalidArgs(alloc::format!(
                "gcd({bad}, {b}) = {} is not 1; a denominator factor would vanish",
                gcd(bad, b)
            )));
        }
        Ok(Self { n, a_list, b })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a_list(&self) -> &[i64] {
        &self.a_list
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

/// `sum_{j=1}^{b-1} ((ja/b))((j/b))` with `((j/b)) = (2j - b) / (2b)` for `0 < j < b`.
fn naive_sum(a: i64, b: i64) -> Rational {
    if b == 1 {
        return Rational::zero();
    }
    let a = a.rem_euclid(b);
    let numer = if b < 1 << 20 {
        BigInt::from(naive_numerator(a, b))
    } else {
        let (a, b) = (i128::from(a), i128::from(b));
        let mut total = BigInt::zero();
        let mut chunk: i128 = 0;
        for j in 1..b {
            chunk += (2 * ((j * a) % b) - b) * (2 * j - b);
            if chunk.unsigned_abs() > 1 << 100 {
                total += chunk;
                chunk = 0;
            }
        }
        total + chunk
    };
    Rational::new(numer, BigInt::from(4) * BigInt::from(b) * BigInt::from(b))
}

/// `4 b^2 s(a, b)` for `0 <= a < b < 2^20`, where `|sum| < b^3 < 2^60`.
fn naive_numerator(a: i64, b: i64) -> i64 {
    let mut residue = 0;
    let mut total: i64 = 0;
    for j in 1..b {
        residue += a;
        if residue >= b {
            residue -= b;
        }
        total += (2 * residue - b) * (2 * j - b);
    }
    total
}

pub fn dedekind_sum_naive(args: DedekindArgs) -> Rational {
    naive_sum(args.a, args.b)
}

/// Dedekind sum in `O(log b)` reciprocity steps.
pub fn dedekind_sum_fast(args: DedekindArgs) -> Rational {
    if args.b < 1 << 30 {
        let r = descent_small(args.a, args.b);
        return Rational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    }
    descent_big(args.a, args.b)
}

fn descent_big(a: i64, b: i64) -> Rational {
    let mut b = b;
    let mut a = a.rem_euclid(b);
    let mut acc = Rational::zero();
    let mut negate = false;
    while b >= NAIVE_CUTOFF {
        // s(a, b) = -s(b mod a, a) - 1/4 + (1 + a^2 + b^2) / (12 a b)
        let (ab, bb) = (BigInt::from(a), BigInt::from(b));
        let term = Rational::new(
            BigInt::from(1) + &ab * &ab + &bb * &bb,
            BigInt::from(12) * &ab * &bb,
        ) - rat(1, 4);
        if negate {
            acc -= term;
        } else {
            acc += term;
        }
        negate = !negate;
        (a, b) = (b % a, a);
    }
    let base = naive_sum(a, b);
    if negate {
        acc - base
    } else {
        acc + base
    }
}

/// The descent in machine integers. Partial sums differ from `+-s(a, b)` by
/// `+-s(a_k, b_k)`, so denominators divide `36 b^2` and numerators stay below `b^3`;
/// with `b < 2^30` every intermediate fits in `i128`.
fn descent_small(a: i64, b: i64) -> Ratio<i128> {
    let mut b = i128::from(b);
    let mut a = i128::from(a).rem_euclid(b);
    let mut acc = Ratio::<i128>::zero();
    let mut negate = false;
    while b >= i128::from(NAIVE_CUTOFF) {
        let term = Ratio::new(1 + a * a + b * b, 12 * a * b) - Ratio::new(1, 4);
        if negate {
            acc -= term;
        } else {
            acc += term;
        }
        negate = !negate;
        (a, b) = (b % a, a);
    }
    let base = if b == 1 {
        Ratio::zero()
    } else {
        Ratio::new(i128::from(naive_numerator(a as i64, b as i64)), 4 * b * b)
    };
    if negate {
        acc - base
    } else {
        acc + base
    }
}

/// `s(a, b)` through the root-of-unity form `(b-1)/(4b) - s_0(a, 1; b)`.
pub fn dedekind_sum_from_fourier(args: DedekindArgs) -> Result<Rational, DedekindError> {
    let b = args.b;
    let fds = fourier_dedekind_sum(&FourierDedekindArgs::new(0, alloc::vec![args.a, 1], b)?)?;
    Ok(rat(b - 1, 4 * b) - fds)
}

/// `1 / prod_i (1 - x^{a_i})` in the residue ring of order `b`.
fn denominator_inverse(a_list: &[i64], b: i64) -> Result<QuotientPoly, DedekindError> {
    let mut inverse = QuotientPoly::one(b as usize);
    for &a in a_list {
        inverse = inverse.div_one_minus_monomial(a)?;
    }
    Ok(inverse)
}

pub fn fourier_dedekind_sum(args: &FourierDedekindArgs) -> Result<Rational, DedekindError> {
    if args.b == 1 {
        return Ok(Rational::zero());
    }
    let inverse = denominator_inverse(&args.a_list, args.b)?;
    Ok(inverse.mul_monomial(args.n).root_sum() / int(args.b))
}

/// All values `n -> s_n(a_1, ..., a_m; b)` at once; the function has period `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierDedekindTable {
    a_list: Vec<i64>,
    b: i64,
    values: PeriodicRational,
}

impl FourierDedekindTable {
    pub fn new(a_list: &[i64], b: i64) -> Result<Self, DedekindError> {
        let args = FourierDedekindArgs::new(0, a_list.to_vec(), b)?;
        let values = if b == 1 {
            PeriodicRational::constant(Rational::zero())
        } else {
            let inverse = denominator_inverse(&args.a_list, b)?;
            let scale = int(b);
            PeriodicRational::from_fn(b as usize, |n| {
                inverse.mul_monomial(n as i64).root_sum() / &scale
            })
        };
        Ok(Self {
            a_list: args.a_list,
            b,
            values,
        })
    }

    pub fn a_list(&self) -> &[i64] {
        &self.a_list
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `s_n(a_1, ..., a_m; b)`.
    pub fn get(&self, n: i64) -> &Rational {
        self.values.evaluate(n)
    }

    pub fn as_periodic(&self) -> &PeriodicRational {
        &self.values
    }
}
