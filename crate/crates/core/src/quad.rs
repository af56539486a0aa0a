//! Closed-form and high-order integrals of radial power functions `|x|^γ`
//! over intervals and axis-parallel rectangles.

use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16).expect("degree >= 2"))
        .as_node_weight_pairs()
}

fn gl(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    half * rule().iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>()
}

/// `∫_a^b |t|^γ dt` by the antiderivative `sign(t)|t|^{γ+1}/(γ+1)`.
///
/// Callers guarantee integrability: `γ > −1` or `0 ∉ [a, b]`.
pub fn power_integral_1d(a: f64, b: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        return b - a;
    }
    if gamma == -1.0 {
        // only reachable with 0 outside [a, b]
        return (b.abs() / a.abs()).ln() * a.signum();
    }
    let e = gamma + 1.0;
    let anti = |t: f64| t.signum() * t.abs().powf(e) / e;
    anti(b) - anti(a)
}

/// `∫_0^b (a² + t²)^{γ/2} dt` for `a ≥ 0`, on geometrically graded panels.
fn edge_integral(a: f64, b: f64, gamma: f64) -> f64 {
    if b <= 0.0 {
        return 0.0;
    }
    if a == 0.0 {
        return b.powf(gamma + 1.0) / (gamma + 1.0);
    }
    let f = |t: f64| (a * a + t * t).powf(0.5 * gamma);
    let mut total = gl(0.0, a.min(b), f);
    let mut lo = a;
    while lo < b {
        let hi = (2.0 * lo).min(b);
        total += gl(lo, hi, f);
        lo = hi;
    }
    total
}

/// `∫_{[0,a]×[0,b]} |x|^γ dx` for `a, b ≥ 0`, `γ > −2`.
///
/// Uses `div(x |x|^γ) = (γ+2)|x|^γ`: the area integral becomes a sum of two
/// smooth edge integrals over the far sides of the rectangle.
fn corner_integral(a: f64, b: f64, gamma: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    (a * edge_integral(a, b, gamma) + b * edge_integral(b, a, gamma)) / (gamma + 2.0)
}

/// `∫_{[lo0,hi0]×[lo1,hi1]} |x|^γ dx` (Euclidean norm, singularity at the origin).
///
/// Callers guarantee integrability: `γ > −2` or the origin lies outside the box.
pub fn power_integral_2d(lo: [f64; 2], hi: [f64; 2], gamma: f64) -> f64 {
    let w = hi[0] - lo[0];
    let h = hi[1] - lo[1];
    if w <= 0.0 || h <= 0.0 {
        return 0.0;
    }
    if gamma == 0.0 {
        return w * h;
    }
    let dx = if lo[0] > 0.0 { lo[0] } else if hi[0] < 0.0 { -hi[0] } else { 0.0 };
    let dy = if lo[1] > 0.0 { lo[1] } else if hi[1] < 0.0 { -hi[1] } else { 0.0 };
    let dist = dx.hypot(dy);
    if dist >= w.max(h) {
        return gl(lo[0], hi[0], |x| gl(lo[1], hi[1], |y| (x * x + y * y).powf(0.5 * gamma)));
    }
    let corner = |x: f64, y: f64| x.signum() * y.signum() * corner_integral(x.abs(), y.abs(), gamma);
    corner(hi[0], hi[1]) - corner(lo[0], hi[1]) - corner(hi[0], lo[1]) + corner(lo[0], lo[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_closed_forms() {
        assert!((power_integral_1d(0.0, 1.0, -0.5) - 2.0).abs() < 1e-15);
        assert!((power_integral_1d(-1.0, 1.0, -0.5) - 4.0).abs() < 1e-15);
        assert!((power_integral_1d(1.0, 3.0, -1.0) - 3f64.ln()).abs() < 1e-15);
        assert!((power_integral_1d(-3.0, -1.0, -1.0) - 3f64.ln()).abs() < 1e-15);
        assert!((power_integral_1d(2.0, 5.0, 0.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn disk_sector_oracle() {
        // unit square quadrant against a brute-force polar sum
        for &g in &[-1.5, -1.0, -0.5, 0.3, 1.0] {
            let exact = power_integral_2d([0.0, 0.0], [1.0, 1.0], g);
            let n = 4000;
            let mut s = 0.0;
            for i in 0..n {
                let th = (i as f64 + 0.5) / n as f64 * std::f64::consts::FRAC_PI_2;
                let rmax = 1.0 / th.cos().max(th.sin());
                s += rmax.powf(g + 2.0) / (g + 2.0);
            }
            s *= std::f64::consts::FRAC_PI_2 / n as f64;
            assert!((exact - s).abs() / s < 1e-6, "gamma {g}: {exact} vs {s}");
        }
    }

    #[test]
    fn symmetric_square_and_additivity() {
        let g = -1.2;
        let whole = power_integral_2d([-1.0, -1.0], [1.0, 1.0], g);
        let quad = power_integral_2d([0.0, 0.0], [1.0, 1.0], g);
        assert!((whole - 4.0 * quad).abs() / whole < 1e-13);
        let parts = power_integral_2d([-1.0, -1.0], [0.25, 1.0], g)
            + power_integral_2d([0.25, -1.0], [1.0, 1.0], g);
        assert!((whole - parts).abs() / whole < 1e-12);
        let far = power_integral_2d([2.0, 2.0], [2.5, 2.5], g)
            + power_integral_2d([2.5, 2.0], [3.0, 2.5], g);
        let far_whole = power_integral_2d([2.0, 2.0], [3.0, 2.5], g);
        assert!((far - far_whole).abs() / far_whole < 1e-12);
    }
}
