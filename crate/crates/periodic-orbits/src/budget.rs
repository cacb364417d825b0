use std::collections::BTreeMap;

/// Named bound components held as natural logarithms, since schedule values
/// leave the range of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorBudget {
    pub ln_terms: BTreeMap<String, f64>,
    pub ln_total: f64,
}

impl ErrorBudget {
    fn from_terms(terms: &[(&str, f64)]) -> ErrorBudget {
        let ln_terms: BTreeMap<String, f64> = terms.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        let m = ln_terms.values().copied().fold(f64::NEG_INFINITY, f64::max);
        let ln_total = if m.is_finite() { m + ln_terms.values().map(|v| (v - m).exp()).sum::<f64>().ln() } else { m };
        ErrorBudget { ln_terms, ln_total }
    }

    pub fn total(&self) -> f64 {
        self.ln_total.exp()
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.ln_terms.get(name).map(|v| v.exp())
    }
}

/// `max{s^2, s, 1} delta`.
pub fn orbit_divergence_bound(s: f64, delta: f64) -> f64 {
    (s * s).max(s).max(1.0) * delta
}

/// `N^{2+2 gamma} d(p,q) + d(q)^3 N^{(gamma-1)/2}` from logarithmic inputs.
pub fn error_budget_p23(ln_n: f64, gamma: f64, ln_d_pq: f64, ln_d_q: f64) -> ErrorBudget {
    ErrorBudget::from_terms(&[
        ("approximation", (2.0 + 2.0 * gamma) * ln_n + ln_d_pq),
        ("equidistribution", 3.0 * ln_d_q + (gamma - 1.0) / 2.0 * ln_n),
    ])
}

/// `N^4 |x - p/q| + q^6 N^{-1/2+eps}`, with the coarser `N^5 |x - p/q|` kept as an extra entry
/// outside the total.
pub fn error_budget_l45(ln_n: f64, ln_gap: f64, ln_q: f64, eps: f64) -> (ErrorBudget, f64) {
    let budget = ErrorBudget::from_terms(&[
        ("approximation", 4.0 * ln_n + ln_gap),
        ("equidistribution", 6.0 * ln_q + (eps - 0.5) * ln_n),
    ]);
    (budget, 5.0 * ln_n + ln_gap)
}
