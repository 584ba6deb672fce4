//! Deterministic quadrature for posterior means of small shrinkage models.
//!
//! Integrating the latent scales out of the hierarchy leaves
//!
//! ```text
//! π(β, s | Y) ∝ s^(−a−1) exp(−B(β)/s − C(β)/√s),   s = σ²,
//! a = (n + p)/2 + α,  B = ‖Y − Xβ‖²/2 + ξ,  C = penalty(β).
//! ```
//!
//! With `u = 1/√s` the `s` integral is `∫ 2 u^(2a−2k−1) e^(−Bu² − Cu) du`
//! for the `k`-th moment of `s`. It is evaluated by the trapezoid rule in
//! `log u`. The `β` integrals are split at every kink of the penalty and
//! mapped to the real line (`kink ± e^w` on half-lines, a logistic map on
//! bounded pieces), where the trapezoid rule converges geometrically.

#![allow(dead_code)]

#[derive(Debug, Clone, Copy)]
pub enum OraclePenalty {
    /// Single group covering every coefficient.
    Group { lambda: f64 },
    /// Single group plus per-coefficient terms.
    SparseGroup { lambda1: f64, lambda2: f64 },
    Fused { lambda1: f64, lambda2: f64 },
}

#[derive(Debug, Clone)]
pub struct OracleInstance {
    /// Row-major `n × p`.
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub n: usize,
    pub p: usize,
    pub alpha: f64,
    pub xi: f64,
    pub penalty: OraclePenalty,
}

#[derive(Debug, Clone)]
pub struct OracleMoments {
    pub sigma2_mean: f64,
    pub beta_mean: Vec<f64>,
}

/// Step sizes and half-line range of the quadrature.
#[derive(Debug, Clone, Copy)]
pub struct Resolution {
    pub h_beta: f64,
    pub h_u: f64,
    /// Range of `w` on half-lines `kink ± e^w`; also bounds the logistic map.
    pub w_min: f64,
    pub w_max: f64,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            h_beta: 0.2,
            h_u: 0.1,
            w_min: -28.0,
            w_max: 14.0,
        }
    }
}

impl OracleInstance {
    fn shape(&self) -> f64 {
        (self.n + self.p) as f64 / 2.0 + self.alpha
    }

    fn penalty(&self, b: &[f64]) -> f64 {
        let l1 = |v: &[f64]| v.iter().map(|x| x.abs()).sum::<f64>();
        let l2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        match self.penalty {
            OraclePenalty::Group { lambda } => lambda * l2(b),
            OraclePenalty::SparseGroup { lambda1, lambda2 } => lambda1 * l2(b) + lambda2 * l1(b),
            OraclePenalty::Fused { lambda1, lambda2 } => {
                lambda1 * l1(b) + lambda2 * b.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>()
            }
        }
    }

    fn half_rss(&self, b: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| {
                let fit: f64 = (0..self.p).map(|j| self.x[i * self.p + j] * b[j]).sum();
                (self.y[i] - fit).powi(2)
            })
            .sum::<f64>()
            / 2.0
    }

    /// `log ∫ 2 u^(2e−1) e^(−Bu² − Cu) du` by the trapezoid rule in `v = log u`.
    fn log_u_integral(e: f64, b: f64, c: f64, h: f64) -> f64 {
        assert!(e > 0.0 && (b > 0.0 || c > 0.0));
        // the mode lies within ln 2 below the smaller of the two single-term modes
        let peak = (0.5 * (e / b).ln()).min((2.0 * e / c).ln());
        let lo = peak - 40.0 / (2.0 * e) - 3.0;
        let hi = peak + 4.0;
        let steps = ((hi - lo) / h).ceil() as usize;
        let logf = |v: f64| std::f64::consts::LN_2 + 2.0 * e * v - b * (2.0 * v).exp() - c * v.exp();
        let vals: Vec<f64> = (0..=steps).map(|i| logf(lo + i as f64 * h)).collect();
        let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        m + (vals.iter().map(|l| (l - m).exp()).sum::<f64>() * h).ln()
    }

    /// Nodes and log-weights covering the real line, split at sorted `kinks`.
    fn line_nodes(kinks: &[f64], res: Resolution) -> Vec<(f64, f64)> {
        let mut ks: Vec<f64> = kinks.to_vec();
        ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ks.dedup();
        let h = res.h_beta;
        let ws: Vec<f64> = {
            let n = ((res.w_max - res.w_min) / h).ceil() as usize;
            (0..=n).map(|i| res.w_min + i as f64 * h).collect()
        };
        let mut out = Vec::new();
        for &w in &ws {
            out.push((ks[0] - w.exp(), w + h.ln()));
            out.push((ks[ks.len() - 1] + w.exp(), w + h.ln()));
        }
        for pair in ks.windows(2) {
            let (a, len) = (pair[0], pair[1] - pair[0]);
            if len <= 0.0 {
                continue;
            }
            let n = (-2.0 * res.w_min / h).ceil() as usize;
            for i in 0..=n {
                let w = res.w_min + i as f64 * h;
                let s = 1.0 / (1.0 + (-w).exp());
                let logjac = len.ln() + s.ln() + (1.0 - s).ln();
                out.push((a + len * s, logjac + h.ln()));
            }
        }
        out
    }

    fn accumulate(&self, b: &[f64], logw: f64, res: Resolution, acc: &mut Vec<(f64, f64, Vec<f64>)>) {
        let bb = self.half_rss(b) + self.xi;
        let c = self.penalty(b);
        let a = self.shape();
        let l0 = logw + Self::log_u_integral(a, bb, c, res.h_u);
        let l1 = logw + Self::log_u_integral(a - 1.0, bb, c, res.h_u);
        acc.push((l0, l1, b.to_vec()));
    }

    pub fn moments(&self, res: Resolution) -> OracleMoments {
        assert!(self.p == 1 || self.p == 2, "oracle supports p = 1 or 2");
        let mut acc = Vec::new();
        if self.p == 1 {
            for (b, lw) in Self::line_nodes(&[0.0], res) {
                self.accumulate(&[b], lw, res, &mut acc);
            }
        } else {
            for (b1, lw1) in Self::line_nodes(&[0.0], res) {
                let kinks: Vec<f64> = match self.penalty {
                    OraclePenalty::Fused { .. } => vec![0.0, b1],
                    _ => vec![0.0],
                };
                for (b2, lw2) in Self::line_nodes(&kinks, res) {
                    self.accumulate(&[b1, b2], lw1 + lw2, res, &mut acc);
                }
            }
        }
        let m = acc.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
        let mass: f64 = acc.iter().map(|t| (t.0 - m).exp()).sum();
        let s: f64 = acc.iter().map(|t| (t.1 - m).exp()).sum();
        let beta_mean = (0..self.p)
            .map(|j| acc.iter().map(|t| (t.0 - m).exp() * t.2[j]).sum::<f64>() / mass)
            .collect();
        OracleMoments {
            sigma2_mean: s / mass,
            beta_mean,
        }
    }

    /// Whether `E[σ²]` is finite: the `σ²` marginal decays like `s^(−n/2 − α − 1)`.
    pub fn sigma2_mean_is_finite(&self) -> bool {
        self.n as f64 / 2.0 + self.alpha > 1.0
    }
}
