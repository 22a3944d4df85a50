//! JSON shapes for quasi-polynomials, periodic tables and local-invariant ledgers.
//!
//! Rationals are always strings in lowest terms: `"n/d"`, or `"n"` when `d = 1`.

use ehrhart_core::arith::parse_rational;
use ehrhart_core::singularity::{LedgerReport, LedgerRow};
use ehrhart_core::{
    GermLedgerEntry, LedgerVerdict, PeriodicRational, QuasiPolynomial, QuotientType, Rational,
    WeightVector,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed rational {0:?}")]
    Rational(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational_string(s: &str) -> Result<Rational, FormatError> {
    parse_rational(s).map_err(|_| FormatError::Rational(s.into()))
}

fn parse_opt(s: &Option<String>) -> Result<Option<Rational>, FormatError> {
    s.as_deref().map(parse_rational_string).transpose()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicJson {
    pub period: usize,
    pub values: Vec<String>,
}

impl PeriodicJson {
    pub fn from_periodic(f: &PeriodicRational) -> Self {
        Self {
            period: f.period(),
            values: f.values().iter().map(rational_string).collect(),
        }
    }

    pub fn to_periodic(&self) -> Result<PeriodicRational, FormatError> {
        if self.values.len() != self.period {
            return Err(FormatError::Invalid(format!(
                "period {} but {} values",
                self.period,
                self.values.len()
            )));
        }
        let values = self
            .values
            .iter()
            .map(|v| parse_rational_string(v))
            .collect::<Result<_, _>>()?;
        PeriodicRational::new(values).map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

/// `{"weights": [w0, w1, w2], "coefficients": [c0, c1, c2], "period": w0 w1 w2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomialJson {
    pub weights: [i64; 3],
    pub coefficients: Vec<PeriodicJson>,
    pub period: usize,
}

impl QuasiPolynomialJson {
    pub fn new(w: &WeightVector, qp: &QuasiPolynomial) -> Self {
        Self {
            weights: w.weights(),
            coefficients: qp
                .coefficients()
                .iter()
                .map(PeriodicJson::from_periodic)
                .collect(),
            period: qp.period(),
        }
    }

    pub fn to_quasi_polynomial(&self) -> Result<QuasiPolynomial, FormatError> {
        let coefficients = self
            .coefficients
            .iter()
            .map(PeriodicJson::to_periodic)
            .collect::<Result<_, _>>()?;
        Ok(QuasiPolynomial::new(coefficients))
    }
}

/// One column of a ledger file. Absent fields are omitted on output, so a file
/// written by hand in canonical form re-serializes to the same bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntryJson {
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "Delta", default, skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
}

impl LedgerEntryJson {
    pub fn to_entry(&self) -> Result<GermLedgerEntry, FormatError> {
        Ok(GermLedgerEntry {
            k: self.k,
            label: self.label.clone(),
            correction: parse_opt(&self.correction)?,
            delta: parse_opt(&self.delta)?,
            kappa: parse_opt(&self.kappa)?,
            branches: self.branches,
            equation: self.equation.clone(),
        })
    }
}

/// `{"local_type": [d, a, b], "entries": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerFile {
    pub local_type: [i64; 3],
    pub entries: Vec<LedgerEntryJson>,
}

impl LedgerFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn quotient_type(&self) -> Result<QuotientType, FormatError> {
        let [d, a, b] = self.local_type;
        QuotientType::new(d, a, b).map_err(|e| FormatError::Invalid(e.to_string()))
    }

    pub fn entries(&self) -> Result<Vec<GermLedgerEntry>, FormatError> {
        self.entries.iter().map(LedgerEntryJson::to_entry).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRowJson {
    pub k: i64,
    pub label: String,
    #[serde(rename = "Delta")]
    pub correction: String,
    #[serde(
        rename = "stated_Delta",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub stated_correction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    /// `pass`, `filled`, `unchecked` or `fail`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerReportJson {
    pub local_type: [i64; 3],
    pub table: PeriodicJson,
    pub rows: Vec<LedgerRowJson>,
    pub passed: bool,
}

pub fn verdict_parts(v: &LedgerVerdict) -> (&'static str, Option<String>) {
    match v {
        LedgerVerdict::Pass => ("pass", None),
        LedgerVerdict::Filled => ("filled", None),
        LedgerVerdict::Unchecked => ("unchecked", None),
        LedgerVerdict::Fail(reason) => ("fail", Some(reason.clone())),
    }
}

impl LedgerRowJson {
    fn new(row: &LedgerRow) -> Self {
        let (status, reason) = verdict_parts(&row.verdict);
        Self {
            k: row.k,
            label: row.label.clone(),
            correction: rational_string(&row.computed_correction),
            stated_correction: row.stated_correction.as_ref().map(rational_string),
            delta: row.delta.as_ref().map(rational_string),
            kappa: row.kappa.as_ref().map(rational_string),
            status: status.into(),
            reason,
        }
    }
}

impl LedgerReportJson {
    pub fn new(report: &LedgerReport) -> Self {
        let (a, b) = report.local_type.weights();
        Self {
            local_type: [report.local_type.order(), a, b],
            table: PeriodicJson::from_periodic(&report.table),
            rows: report.rows.iter().map(LedgerRowJson::new).collect(),
            passed: report.all_passed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ehrhart_core::{ehrhart_quasipolynomial, rat};

    #[test]
    fn periodic_json_shape() {
        let f = PeriodicRational::new(vec![rat(0, 1), rat(1, 4)]).unwrap();
        let json = serde_json::to_string(&PeriodicJson::from_periodic(&f)).unwrap();
        assert_eq!(json, r#"{"period":2,"values":["0","1/4"]}"#);
        let back: PeriodicJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_periodic().unwrap(), f);
    }

    #[test]
    fn periodic_json_rejects_bad_input() {
        let wrong_len = PeriodicJson {
            period: 3,
            values: vec!["1".into()],
        };
        assert!(wrong_len.to_periodic().is_err());
        let bad = PeriodicJson {
            period: 1,
            values: vec!["1/0".into()],
        };
        assert!(matches!(bad.to_periodic(), Err(FormatError::Rational(_))));
    }

    #[test]
    fn quasi_polynomial_json_shape() {
        let w = WeightVector::new(1, 1, 2).unwrap();
        let qp = ehrhart_quasipolynomial(&w);
        let json = serde_json::to_string(&QuasiPolynomialJson::new(&w, &qp)).unwrap();
        assert_eq!(
            json,
            r#"{"weights":[1,1,2],"coefficients":[{"period":2,"values":["1","3/4"]},{"period":1,"values":["1"]},{"period":1,"values":["1/4"]}],"period":2}"#
        );
        let back: QuasiPolynomialJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_quasi_polynomial().unwrap(), qp);
    }

    #[test]
    fn ledger_entry_field_names() {
        let text =
            r#"{"local_type":[2,1,1],"entries":[{"k":1,"Delta":"1/4","delta":"1/4","kappa":"0"}]}"#;
        let file = LedgerFile::parse(text).unwrap();
        let entries = file.entries().unwrap();
        assert_eq!(entries[0].correction, Some(rat(1, 4)));
        assert_eq!(entries[0].kappa, Some(rat(0, 1)));
        assert_eq!(serde_json::to_string(&file).unwrap(), text);
        assert!(LedgerFile::parse(r#"{"local_type":[2,2,2],"entries":[]}"#)
            .unwrap()
            .quotient_type()
            .is_err());
    }
}
