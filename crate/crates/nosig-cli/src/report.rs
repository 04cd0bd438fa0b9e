//! Machine-readable comparison reports.
//!
//! Numbers carry 12 significant digits in JSON and CSV (rounded at record
//! construction, so parse/re-emit round-trips are byte-identical) and 6 in
//! the human table.

use serde::{Deserialize, Serialize};

/// Slack allowed when checking the bound orderings; the oracle converges
/// to the optimum only within its certificate tolerance.
pub const ORDERING_MARGIN: f64 = 1e-6;

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

/// The no-signaling side of a report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NsBoundRecord {
    pub success_upper: f64,
    pub error_lower: f64,
    pub construction: String,
}

/// The L4 side of a report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct L4Record {
    pub error_lower: f64,
    pub success_upper: f64,
}

/// The oracle side of a report.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleRecord {
    pub success: f64,
    pub certificate_gap: f64,
    pub converged: bool,
}

/// A closed-form optimum, when one applies to the ensemble.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClosedFormRecord {
    pub value: f64,
    pub formula: String,
}

/// Ordering checks computed from the record's own numbers.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Orderings {
    pub oracle_le_one_minus_l4: bool,
    pub oracle_le_ns_bound: bool,
}

/// Per-ensemble comparison record. Inapplicable closed forms and bounds
/// are explicit nulls in JSON, never absent fields.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub ensemble_id: String,
    pub n_states: usize,
    pub dim: usize,
    pub ns_bound: Option<NsBoundRecord>,
    pub l4: L4Record,
    pub oracle: OracleRecord,
    pub closed_form: Option<ClosedFormRecord>,
    pub orderings: Orderings,
}

impl Report {
    /// Assemble a record, rounding every number to the JSON precision and
    /// deriving the ordering booleans from the rounded values.
    pub fn new(
        ensemble_id: impl Into<String>,
        n_states: usize,
        dim: usize,
        ns_bound: Option<NsBoundRecord>,
        l4: L4Record,
        oracle: OracleRecord,
        closed_form: Option<ClosedFormRecord>,
    ) -> Self {
        let ns_bound = ns_bound.map(|b| NsBoundRecord {
            success_upper: sig12(b.success_upper),
            error_lower: sig12(b.error_lower),
            construction: b.construction,
        });
        let l4 = L4Record {
            error_lower: sig12(l4.error_lower),
            success_upper: sig12(l4.success_upper),
        };
        let oracle = OracleRecord {
            success: sig12(oracle.success),
            certificate_gap: sig12(oracle.certificate_gap),
            converged: oracle.converged,
        };
        let closed_form = closed_form.map(|c| ClosedFormRecord {
            value: sig12(c.value),
            formula: c.formula,
        });
        let orderings = Self::derive_orderings(&ns_bound, &l4, &oracle);
        Self {
            ensemble_id: ensemble_id.into(),
            n_states,
            dim,
            ns_bound,
            l4,
            oracle,
            closed_form,
            orderings,
        }
    }

    pub fn derive_orderings(
        ns_bound: &Option<NsBoundRecord>,
        l4: &L4Record,
        oracle: &OracleRecord,
    ) -> Orderings {
        Orderings {
            oracle_le_one_minus_l4: oracle.success <= l4.success_upper + ORDERING_MARGIN,
            oracle_le_ns_bound: ns_bound
                .as_ref()
                .map(|b| oracle.success <= b.success_upper + ORDERING_MARGIN)
                .unwrap_or(true),
        }
    }

    pub fn orderings_ok(&self) -> bool {
        self.orderings.oracle_le_one_minus_l4 && self.orderings.oracle_le_ns_bound
    }

    /// One fixed-layout CSV row; ns fields are empty when no construction
    /// applies.
    pub fn csv_row(&self) -> String {
        let ns = self
            .ns_bound
            .as_ref()
            .map(|b| b.success_upper.to_string())
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.ensemble_id,
            self.n_states,
            self.dim,
            ns,
            self.l4.error_lower,
            self.l4.success_upper,
            self.oracle.success,
            self.oracle.certificate_gap,
            self.orderings_ok()
        )
    }

    pub const CSV_HEADER: &'static str = "ensemble_id,n_states,dim,ns_success_upper,l4_error,one_minus_l4,oracle_success,certificate_gap,orderings_ok";

    /// Human-readable table lines (6 significant digits).
    pub fn table_lines(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "ensemble {}  (N = {}, dim = {})",
            self.ensemble_id, self.n_states, self.dim
        )];
        match &self.ns_bound {
            Some(b) => lines.push(format!(
                "  no-signaling bound   success <= {:.6}   error >= {:.6}   [{}]",
                b.success_upper, b.error_lower, b.construction
            )),
            None => lines.push("  no-signaling bound   (no canonical construction applies)".into()),
        }
        lines.push(format!(
            "  L4 bound             error >= {:.6}    success <= {:.6}",
            self.l4.error_lower, self.l4.success_upper
        ));
        lines.push(format!(
            "  oracle               success = {:.6}    gap = {:.2e}   converged = {}",
            self.oracle.success, self.oracle.certificate_gap, self.oracle.converged
        ));
        match &self.closed_form {
            Some(c) => lines.push(format!(
                "  closed form          success = {:.6}    [{}]",
                c.value, c.formula
            )),
            None => lines.push("  closed form          (none applicable)".into()),
        }
        lines.push(format!(
            "  orderings            oracle <= 1-L4: {}   oracle <= ns: {}",
            self.orderings.oracle_le_one_minus_l4, self.orderings.oracle_le_ns_bound
        ));
        lines
    }
}

/// One named reference check of the `reproduce` command.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn assert_close(name: &str, got: f64, expected: f64, tol: f64) -> Self {
        let diff = (got - expected).abs();
        Self {
            name: name.to_string(),
            passed: diff <= tol,
            detail: format!("got {got:.12e}, expected {expected:.12e}, |diff| = {diff:.2e} (tol {tol:.0e})"),
        }
    }

    pub fn assert_true(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Full output of `reproduce`: every comparison row plus the checks.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReproduceOutput {
    pub reports: Vec<Report>,
    pub checks: Vec<CheckRecord>,
}

impl ReproduceOutput {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_rounds_to_twelve_digits() {
        assert_eq!(sig12(4.0 / 9.0), 0.444444444444);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(1.0), 1.0);
        assert_eq!(sig12(-5.0 / 9.0), -0.555555555556);
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = Report::new(
            "unit",
            3,
            2,
            Some(NsBoundRecord {
                success_upper: 4.0 / 9.0,
                error_lower: 5.0 / 9.0,
                construction: "symmetric_qubit".into(),
            }),
            L4Record {
                error_lower: 0.47421657693679137,
                success_upper: 1.0 - 0.47421657693679137,
            },
            OracleRecord {
                success: 0.4444444,
                certificate_gap: -3.0e-9,
                converged: true,
            },
            None,
        );
        let emitted = serde_json::to_string_pretty(&report).unwrap();
        let parsed: Report = serde_json::from_str(&emitted).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), emitted);
        assert!(report.orderings_ok());
    }

    #[test]
    fn ordering_violation_detected() {
        let report = Report::new(
            "doctored",
            2,
            2,
            Some(NsBoundRecord {
                success_upper: 0.5,
                error_lower: 0.5,
                construction: "symmetric_qubit".into(),
            }),
            L4Record {
                error_lower: 0.5,
                success_upper: 0.5,
            },
            OracleRecord {
                success: 0.9,
                certificate_gap: 0.0,
                converged: true,
            },
            None,
        );
        assert!(!report.orderings_ok());
    }
}
