//! Certificates for points on elliptic curves over Q: exact infinite-order
//! scans, mod-p torsion bounds, relation scans and canonical-height evidence.
//!
//! A rational torsion point has order in `{1, ..., 10, 12}` (Mazur), so a
//! point `P` with `n P != O` for all those `n` has infinite order. Independence
//! of two points is reported in two tiers: an exact scan excluding small
//! relations `a P1 + b P2 = torsion`, and a numerical regulator estimate that
//! is labelled evidence only.

pub mod funcfield;
pub mod heights;
pub mod modp;
pub mod order;
pub mod relation;

use serde::{Deserialize, Serialize};

pub use funcfield::verify_function_field_independence;
pub use heights::{canonical_height_estimate, naive_height};
pub use modp::{default_good_primes, FpCurve};
pub use order::{mazur_infinite_order, modp_order_certificate, modp_torsion_bound, ModPBound};
pub use relation::{regulator_evidence, relation_scan};

use crate::eccore::ProjPoint;

/// Orders of rational torsion points.
pub const MAZUR_ORDERS: [u32; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderVerdict {
    InfiniteOrder,
    TorsionOfOrder(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderMethod {
    MazurScan,
    ModPBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub point: ProjPoint,
    pub verdict: OrderVerdict,
    pub method: OrderMethod,
    /// Multiples checked for a Mazur scan, primes used for a mod-p bound.
    pub witnesses: Vec<u64>,
}

impl OrderCertificate {
    pub fn is_infinite_order(&self) -> bool {
        self.verdict == OrderVerdict::InfiniteOrder
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndependenceVerdict {
    IndependentEvidence,
    RelationFound(i64, i64),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub points: [ProjPoint; 2],
    pub relation_scan_bound: u32,
    /// Pairs `(a, b)` with `a P1 + b P2` torsion, up to overall sign.
    pub relations_found: Vec<(i64, i64)>,
    /// Determinant of the height-pairing Gram matrix (numerical evidence).
    pub regulator_estimate: Option<f64>,
    pub gram: Option<[[f64; 2]; 2]>,
    pub regulator_tolerance: f64,
    pub verdict: IndependenceVerdict,
}

/// Defaults for certification runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CertifyConfig {
    pub relation_bound: u32,
    pub doublings: u32,
    pub tolerance: f64,
    /// Number of primes used when `primes` is empty.
    pub prime_count: usize,
    pub primes: Vec<u64>,
    pub digit_budget: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self { relation_bound: 3, doublings: 4, tolerance: 1e-3, prime_count: 3, primes: Vec::new(), digit_budget: 100_000 }
    }
}

/// Rounds to 12 significant digits, the precision floats are reported with.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}
