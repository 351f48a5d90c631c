//! Lifting approximate solutions: Newton/Hensel for square systems with a
//! unit Jacobian, the Tougeron-style lift with bounded loss, and
//! approximate solving of linear systems through Smith normal form.

mod hensel;
mod linear;
pub(crate) mod snf;
mod tougeron;

pub use hensel::hensel_lift;
pub use linear::{linear_offset, solve_linear_approx, LinearSolution};
pub use snf::{smith_normal_form, solve_exact, Snf};
pub use tougeron::tougeron_lift;

use serde_json::{json, Value};

use crate::ring::{Elem, RingCtx, Val};

/// Outcome of a lift: the point, the residual valuation after each
/// iteration (starting with the input), and how far the result is from
/// the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub result: Vec<Elem>,
    pub residual_vals: Vec<Val>,
    pub iterations: usize,
    pub congruence_order: Val,
}

impl LiftReport {
    pub(crate) fn new(
        ring: &RingCtx,
        start: &[Elem],
        result: Vec<Elem>,
        residual_vals: Vec<Val>,
    ) -> LiftReport {
        let congruence_order = start
            .iter()
            .zip(&result)
            .map(|(a, b)| ring.val(ring.sub(*a, *b)))
            .min()
            .unwrap_or(ring.top());
        LiftReport {
            iterations: residual_vals.len() - 1,
            result,
            residual_vals,
            congruence_order,
        }
    }

    /// Valuations are integers, `⊤` is the string `"inf"`.
    pub fn to_json(&self, ring: &RingCtx) -> Value {
        json!({
            "result": ring.format_point(&self.result),
            "residual_vals": self.residual_vals.iter().map(|v| val_json(*v)).collect::<Vec<_>>(),
            "iterations": self.iterations,
            "congruence_order": val_json(self.congruence_order),
        })
    }
}

pub fn val_json(v: Val) -> Value {
    match v.finite() {
        Some(e) => json!(e),
        None => json!("inf"),
    }
}

/// Iteration budget after which a lift without progress gives up.
pub(crate) fn stall_limit(prec: u32) -> u32 {
    32 - prec.leading_zeros() + 2
}
