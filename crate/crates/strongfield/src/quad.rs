//! Gauss–Legendre quadrature: single rules and composite panels.
//!
//! The SFA time integrals are smooth but highly oscillatory, so they are
//! integrated on composite panels with a fixed high-order Gauss–Legendre rule
//! per panel. Nodes and weights are generated by Newton iteration on the
//! Legendre polynomial P_n (three-term recurrence), which is accurate to
//! machine precision for the orders used here (n ≲ 100).

/// A Gauss–Legendre rule of fixed order on the reference interval [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build the rule of the given order (number of nodes).
    ///
    /// # Panics
    /// Panics if `order == 0`.
    #[must_use]
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "Gauss-Legendre order must be at least 1");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order;
        // Roots are symmetric; compute the lower half and mirror.
        for i in 0..n.div_ceil(2) {
            // Tricomi-style initial guess for the i-th root of P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            // One final refinement so the weight uses a consistent derivative.
            let (p, d) = legendre_and_derivative(n, x);
            x -= p / d;
            let dp = legendre_and_derivative(n, x).1;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        // For odd orders the midpoint is a root; the loop above already set it
        // (x converges to 0), but pin it exactly.
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let dp = legendre_and_derivative(n, 0.0).1;
            weights[n / 2] = 2.0 / (dp * dp);
        }
        GaussLegendre { nodes, weights }
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// ∫_a^b f(x) dx with this single rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// (P_n(x), P_n'(x)) by the standard three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0; // P_0
    let mut p = x; // P_1
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    // P_n'(x) = n (x P_n − P_{n−1}) / (x² − 1); at x = ±1 use the limit value.
    let denom = x * x - 1.0;
    let d = if denom.abs() < 1e-300 {
        let nf = n as f64;
        let sign: f64 = if x > 0.0 { 1.0 } else { -1.0 };
        sign.powi(n as i32 + 1) * nf * (nf + 1.0) / 2.0
    } else {
        (n as f64) * (x * p - p_prev) / denom
    };
    (p, d)
}

/// Nodes and weights of a composite rule: `panels` equal panels over [a, b],
/// each carrying the given Gauss–Legendre rule. Total node count is
/// `panels * rule.order()`.
#[must_use]
pub fn composite_nodes(rule: &GaussLegendre, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    assert!(panels > 0, "need at least one panel");
    assert!(b > a, "empty or inverted interval");
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * rule.order());
    for k in 0..panels {
        let lo = a + k as f64 * h;
        out.extend(rule.mapped(lo, lo + h));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_nodes_match_closed_forms() {
        let g2 = GaussLegendre::new(2);
        let x = 1.0 / 3.0_f64.sqrt();
        assert!((g2.nodes[0] + x).abs() < 1e-15 && (g2.nodes[1] - x).abs() < 1e-15);
        assert!((g2.weights[0] - 1.0).abs() < 1e-15);

        let g3 = GaussLegendre::new(3);
        let x3 = (3.0_f64 / 5.0).sqrt();
        assert!((g3.nodes[0] + x3).abs() < 1e-15);
        assert!(g3.nodes[1].abs() < 1e-15);
        assert!((g3.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((g3.weights[0] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn exactness_on_polynomials() {
        // Order n integrates degree 2n−1 exactly: check n=7 against x^13 on [0,1].
        let g = GaussLegendre::new(7);
        let val = g.integrate(0.0, 1.0, |x| x.powi(13));
        assert!((val - 1.0 / 14.0).abs() < 1e-15, "got {val}");
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for order in [1, 2, 5, 12, 14, 40, 64] {
            let g = GaussLegendre::new(order);
            let total: f64 = g.weights.iter().sum();
            assert!(
                (total - 2.0).abs() < 1e-13,
                "order {order}: weights sum to {total}, expected 2"
            );
        }
    }

    #[test]
    fn composite_integrates_oscillatory_sine() {
        let g = GaussLegendre::new(12);
        let nodes = composite_nodes(&g, 0.0, 20.0 * std::f64::consts::PI, 40);
        let val: f64 = nodes.iter().map(|&(x, w)| w * x.sin()).sum();
        assert!(val.abs() < 1e-12, "∫ sin over 10 periods should vanish, got {val}");
        let val2: f64 = nodes.iter().map(|&(x, w)| w * (x.sin().powi(2))).sum();
        let exact = 10.0 * std::f64::consts::PI;
        assert!((val2 - exact).abs() / exact < 1e-13);
    }
}
