//! Hypothesis audit for the degree/cycle-count independence bound:
//! `Δ(H) <= t^(k-1)` and `C(2, j) <= n t^(2k-j-1-ε)` for `2 <= j <= k-1`.

use serde::Serialize;

use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct CycleCondition<T> {
    pub j: usize,
    pub count: u64,
    pub bound: T,
    /// `bound - count`; nonnegative when the condition holds.
    pub margin: T,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DlrAudit<T> {
    pub t: T,
    pub epsilon: T,
    pub max_degree: usize,
    pub degree_bound: T,
    pub degree_margin: T,
    pub degree_pass: bool,
    pub cycles: Vec<CycleCondition<T>>,
    pub pass: bool,
}

pub fn dlr_audit<T: Scalar>(h: &Hypergraph, t: T, epsilon: T) -> Result<DlrAudit<T>> {
    let k = h.require_uniform("dlr_audit")?;
    let n = T::from_count(h.n());
    let census = h.cycle_census()?;
    let max_degree = h.max_degree();
    let degree_bound = t.powi(k as i32 - 1);
    let degree_margin = degree_bound - T::from_count(max_degree);
    let degree_pass = degree_margin >= T::zero();
    let cycles: Vec<CycleCondition<T>> = (2..k)
        .map(|j| {
            let count = census.counts[j];
            let bound = n * t.powf(T::from_count(2 * k - j - 1) - epsilon);
            let margin = bound - T::lit(count as f64);
            CycleCondition { j, count, bound, margin, pass: margin >= T::zero() }
        })
        .collect();
    let pass = degree_pass && cycles.iter().all(|c| c.pass);
    Ok(DlrAudit { t, epsilon, max_degree, degree_bound, degree_margin, degree_pass, cycles, pass })
}

/// `t = λ^(1/(k-1)) n^((l-1)/(k-1))`.
pub fn dlr_t<T: Scalar>(n: usize, k: usize, lambda: T, l: usize) -> T {
    let km1 = T::from_count(k - 1);
    lambda.powf(T::one() / km1) * T::from_count(n).powf((T::from_count(l) - T::one()) / km1)
}

pub fn dlr_audit_instantiated<T: Scalar>(h: &Hypergraph, lambda: T, l: usize, epsilon: T) -> Result<DlrAudit<T>> {
    let k = h.require_uniform("dlr_audit")?;
    dlr_audit(h, dlr_t(h.n(), k, lambda, l), epsilon)
}
