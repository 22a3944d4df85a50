//! Cyclic quotient singularities `X(d; a, b)` and their lattice-point correction
//! invariant.
//!
//! For the shape `X(p; -1, q)` and a residue `r`, the correction is
//! `Delta = A_r - delta_r`, where `A_r = #{i, j >= 1 : p i + q j <= q r}` and
//! `delta_r = r (q r - p - q + 1) / (2p)`. `Delta` depends only on `r mod p`. A germ
//! that is `k`-invariant on `X(p; -1, q)` uses `r = q^{-1} k mod p`.
//!
//! Rescaling the group generator by a unit `m` turns `X(d; a, b)` into
//! `X(d; m a, m b)` and a `k`-invariant germ into an `(m k)`-invariant one. With
//! `m = -a^{-1}` this reaches `X(d; -1, q)`, and the local degree `k` in the
//! original presentation is transported to `m k mod d`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[cfg(test)]
use crate::arith::rat;
use crate::arith::{gcd, int, mod_inverse, modulo, mul_mod, PeriodicRational, Rational};
use crate::ehrhart::{ehrhart_value, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("invalid quotient type ({d}; {a}, {b}): {reason}")]
    InvalidType {
        d: i64,
        a: i64,
        b: i64,
        reason: &'static str,
    },
    #[error("quotient type {0} is not normalized")]
    NotNormalized(QuotientType),
    #[error("X(1; a, b) is a smooth point")]
    SmoothPoint,
}

/// Cyclic quotient type `(d; a, b)`, weights stored as least nonnegative residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientType {
    d: i64,
    a: i64,
    b: i64,
}

impl QuotientType {
    pub fn new(d: i64, a: i64, b: i64) -> Result<Self, SingularityError> {
        if d < 1 {
            return Err(SingularityError::InvalidType {
                d,
                a,
                b,
                reason: "order must be positive",
            });
        }
        if gcd(gcd(d, a), b) != 1 {
            return Err(SingularityError::InvalidType {
                d,
                a,
                b,
                reason: "gcd(d, a, b) != 1",
            });
        }
        Ok(Self {
            d,
            a: modulo(a, d),
            b: modulo(b, d),
        })
    }

    pub fn order(&self) -> i64 {
        self.d
    }

    pub fn weights(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn is_normalized(&self) -> bool {
        gcd(self.d, self.a) == 1 && gcd(self.d, self.b) == 1
    }

    pub fn is_smooth(&self) -> bool {
        self.d == 1
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({}; {}, {})", self.d, self.a, self.b)
    }
}

/// `X(d; a, b) -> X(d / ((d,a)(d,b)); a / (d,a), b / (d,b))`.
pub fn normalize_type(t: &QuotientType) -> QuotientType {
    let ga = gcd(t.d, t.a);
    let gb = gcd(t.d, t.b);
    let d = t.d / (ga * gb);
    QuotientType {
        d,
        a: modulo(t.a / ga, d),
        b: modulo(t.b / gb, d),
    }
}

/// A normalized type rewritten as `X(p; -1, q)` by the unit `m = -a^{-1} mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalizedForm {
    p: i64,
    q: i64,
    unit: i64,
}

impl NormalizedForm {
    /// `X(p; -1, q)` directly, with the identity unit.
    pub fn minus_one(p: i64, q: i64) -> Self {
        Self {
            p,
            q: modulo(q, p),
            unit: modulo(1, p),
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn unit(&self) -> i64 {
        self.unit
    }

    /// Local degree in the original presentation to local degree on `X(p; -1, q)`.
    pub fn transport(&self, k: i64) -> i64 {
        mul_mod(self.unit, k, self.p)
    }
}

pub fn to_minus_one_form(t: &QuotientType) -> Result<NormalizedForm, SingularityError> {
    if t.d == 1 {
        return Err(SingularityError::SmoothPoint);
    }
    if !t.is_normalized() {
        return Err(SingularityError::NotNormalized(*t));
    }
    let unit = modulo(-mod_inverse(t.a, t.d).expect("normalized"), t.d);
    let q = mul_mod(unit, t.b, t.d);
    Ok(NormalizedForm { p: t.d, q, unit })
}

/// `A_r^{(p,q)} = #{(i, j) : i, j >= 1, p i + q j <= q r}`.
pub fn count_a(p: i64, q: i64, r: i64) -> u64 {
    assert!(p > 0 && q >= 0, "p must be positive and q nonnegative");
    let (p, q, bound) = (i128::from(p), i128::from(q), i128::from(q) * i128::from(r));
    if q == 0 {
        return 0;
    }
    let mut total = 0u64;
    let mut i = 1;
    while p * i + q <= bound {
        total += ((bound - p * i) / q) as u64;
        i += 1;
    }
    total
}

/// `delta_r^{(p,q)} = r (q r - p - q + 1) / (2p)`.
pub fn delta_comb(p: i64, q: i64, r: i64) -> Rational {
    let [p, q, r] = [p, q, r].map(BigInt::from);
    Rational::new(&r * (&q * &r - &p - &q + 1), BigInt::from(2) * p)
}

/// `A_r`, `delta_r` and their difference for one residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialInvariants {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub a_count: u64,
    pub delta: Rational,
    pub correction: Rational,
}

impl CombinatorialInvariants {
    pub fn new(p: i64, q: i64, r: i64) -> Self {
        let a_count = count_a(p, q, r);
        let delta = delta_comb(p, q, r);
        let correction = int(a_count as i64) - &delta;
        Self {
            p,
            q,
            r,
            a_count,
            delta,
            correction,
        }
    }
}

/// `Delta(k)` of a `k`-invariant germ on `X(p; -1, q)`; zero on a smooth point.
pub fn delta_invariant(form: &NormalizedForm, k: i64) -> Rational {
    if form.p == 1 {
        return Rational::zero();
    }
    let q_inv = mod_inverse(form.q, form.p).expect("q is a unit mod p");
    let r = mul_mod(q_inv, k, form.p);
    CombinatorialInvariants::new(form.p, form.q, r).correction
}

/// `k -> Delta(k)` for `k` the local degree in the presentation `t` itself.
///
/// A smooth point gives the zero function. Non-normalized types are rejected: the
/// normalization isomorphism changes the grading and no transport rule is applied.
pub fn delta_table_for_local_type(t: &QuotientType) -> Result<PeriodicRational, SingularityError> {
    if t.is_smooth() {
        return Ok(PeriodicRational::constant(Rational::zero()));
    }
    let form = to_minus_one_form(t)?;
    Ok(PeriodicRational::from_fn(t.d as usize, |k| {
        delta_invariant(&form, form.transport(k as i64))
    }))
}

/// `Delta` at the vertex `P_i` of `P^2_w` (local type `X(w_i; w_{i+1}, w_{i+2})`)
/// for curves of degree `degree`: `q_i = -w_{i+1}^{-1} w_{i+2}` and
/// `r_i = w_{i+2}^{-1} degree`, both mod `w_i`.
pub fn delta_at_projective_vertex(w: &WeightVector, i: usize, degree: i64) -> Rational {
    let (wi, next, after) = (w.get(i), w.get(i + 1), w.get(i + 2));
    if wi == 1 {
        return Rational::zero();
    }
    let next_inv = mod_inverse(next, wi).expect("pairwise coprime");
    let after_inv = mod_inverse(after, wi).expect("pairwise coprime");
    let q = modulo(-mul_mod(next_inv, after, wi), wi);
    let r = mul_mod(after_inv, degree, wi);
    CombinatorialInvariants::new(wi, q, r).correction
}

/// Delta invariant contributed by one `(p, q)` weighted blow-up:
/// `nu (nu - p - q + e) / (2 d p q)`.
pub fn delta_single_blowup(nu: i64, d: i64, p: i64, q: i64, e: i64) -> Rational {
    let [nu, d, p, q, e] = [nu, d, p, q, e].map(BigInt::from);
    Rational::new(&nu * (&nu - &p - &q + e), BigInt::from(2) * d * p * q)
}

/// One column of a local-invariant table at a quotient point.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GermLedgerEntry {
    /// Local degree of the germ, in the presentation of the ledger's type.
    pub k: i64,
    pub label: Option<String>,
    /// Stated `Delta(k)`, checked against the computed table when present.
    pub correction: Option<Rational>,
    pub delta: Option<Rational>,
    pub kappa: Option<Rational>,
    pub branches: Option<u64>,
    pub equation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LedgerVerdict {
    /// `Delta = delta - kappa` holds with both sides supplied.
    Pass,
    /// One of `delta`, `kappa` was missing and has been derived.
    Filled,
    /// Nothing to check beyond the stated `Delta`, if any.
    Unchecked,
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerRow {
    pub k: i64,
    pub label: String,
    pub computed_correction: Rational,
    pub stated_correction: Option<Rational>,
    pub delta: Option<Rational>,
    pub kappa: Option<Rational>,
    pub branches: Option<u64>,
    pub equation: Option<String>,
    pub verdict: LedgerVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerReport {
    pub local_type: QuotientType,
    pub table: PeriodicRational,
    pub rows: Vec<LedgerRow>,
}

impl LedgerReport {
    pub fn all_passed(&self) -> bool {
        !self
            .rows
            .iter()
            .any(|r| matches!(r.verdict, LedgerVerdict::Fail(_)))
    }

    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, LedgerVerdict::Fail(_)))
            .count()
    }
}

fn is_nonnegative_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

/// Checks `Delta(k) = delta - kappa` entry by entry against the table of `local_type`.
/// Inconsistencies are reported per row, never raised.
pub fn ledger_check(
    entries: &[GermLedgerEntry],
    local_type: &QuotientType,
) -> Result<LedgerReport, SingularityError> {
    let table = delta_table_for_local_type(local_type)?;
    let rows = entries
        .iter()
        .map(|entry| {
            let computed = table.evaluate(entry.k).clone();
            let mut delta = entry.delta.clone();
            let mut kappa = entry.kappa.clone();
            let verdict = match (&entry.correction, &delta, &kappa) {
                (Some(stated), _, _) if *stated != computed => LedgerVerdict::Fail(alloc::format!(
                    "stated Delta {stated} differs from computed {computed}"
                )),
                (_, Some(d), Some(kp)) => {
                    if d - kp == computed {
                        LedgerVerdict::Pass
                    } else {
                        LedgerVerdict::Fail(alloc::format!(
                            "delta - kappa = {} but Delta = {computed}",
                            d - kp
                        ))
                    }
                }
                (_, Some(d), None) => {
                    let filled = d - &computed;
                    let verdict = if is_nonnegative_integer(&filled) {
                        LedgerVerdict::Filled
                    } else {
                        LedgerVerdict::Fail(alloc::format!(
                            "derived kappa = {filled} is not a nonnegative integer"
                        ))
                    };
                    kappa = Some(filled);
                    verdict
                }
                (_, None, Some(kp)) => {
                    delta = Some(kp + &computed);
                    LedgerVerdict::Filled
                }
                (_, None, None) => LedgerVerdict::Unchecked,
            };
            LedgerRow {
                k: entry.k,
                label: entry
                    .label
                    .clone()
                    .unwrap_or_else(|| alloc::format!("k={}", entry.k)),
                computed_correction: computed,
                stated_correction: entry.correction.clone(),
                delta,
                kappa,
                branches: entry.branches,
                equation: entry.equation.clone(),
                verdict,
            }
        })
        .collect();
    Ok(LedgerReport {
        local_type: *local_type,
        table,
        rows,
    })
}

/// Genus of a reduced curve of degree `degree` on `P^2_w` from
/// `h^0(O(degree - |w|)) = g + sum_P kappa_P`. The count at a negative dilation is 0.
pub fn numerical_adjunction(w: &WeightVector, degree: i64, kappa_sum: &Rational) -> Rational {
    sections(w, degree) - kappa_sum
}

/// The inverse bookkeeping: `genus + sum_P kappa_P`, to be compared with `h^0`.
pub fn h0_from_genus(
    _w: &WeightVector,
    _degree: i64,
    genus: &Rational,
    kappa_sum: &Rational,
) -> Rational {
    genus + kappa_sum
}

/// `h^0(P^2_w, O(degree - |w|)) = Eh_w(degree - |w|)`.
pub fn sections(w: &WeightVector, degree: i64) -> Rational {
    let dilation = degree - w.total();
    if dilation < 0 {
        Rational::zero()
    } else {
        ehrhart_value(w, dilation)
    }
}
