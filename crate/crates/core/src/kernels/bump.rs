use serde::{Deserialize, Serialize};

/// `g(t) = e^{-1/t}` for `t > 0`, else 0.
fn glue(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth step: 0 for `t ≤ 0`, 1 for `t ≥ 1`.
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = glue(t);
        a / (a + glue(1.0 - t))
    }
}

/// `η(x)`: equal to 1 on `[-1/4, 1/4]`, 0 outside `(-1/2, 1/2)`, smooth and
/// monotone in `|x|` in between.
pub fn bump_eval(x: f64) -> f64 {
    smooth_step((0.5 - x.abs()) / 0.25)
}

/// The family `η_s(x) = η(4^s M x)` for a fixed `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpFunction {
    m: f64,
}

impl BumpFunction {
    pub fn new(m: u32) -> Self {
        assert!(m > 2, "M must be > 2");
        Self { m: m as f64 }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    fn scale(&self, s: u32) -> f64 {
        4f64.powi(s as i32) * self.m
    }

    /// `η_s(x)` on the real line (no periodisation).
    pub fn scaled(&self, s: u32, x: f64) -> f64 {
        bump_eval(self.scale(s) * x)
    }

    /// Support half-width `1/(2·4^s M)`.
    pub fn half_width(&self, s: u32) -> f64 {
        0.5 / self.scale(s)
    }

    /// Half-width `1/(4·4^s M)` of the plateau where `η_s = 1`.
    pub fn plateau(&self, s: u32) -> f64 {
        0.25 / self.scale(s)
    }
}

/// `η_s(x)` with `M` given per call.
pub fn bump_scaled(s: u32, m: u32, x: f64) -> f64 {
    BumpFunction::new(m).scaled(s, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_and_support() {
        assert_eq!(bump_eval(0.0), 1.0);
        assert_eq!(bump_eval(0.25), 1.0);
        assert_eq!(bump_eval(-0.25), 1.0);
        assert_eq!(bump_eval(0.5), 0.0);
        assert_eq!(bump_eval(0.6), 0.0);
        assert_eq!(bump_eval(-3.0), 0.0);
        let mid = bump_eval(0.375);
        assert!(mid > 0.0 && mid < 1.0);
        assert!((mid - 0.5).abs() < 1e-15);
    }

    #[test]
    fn monotone_and_bounded() {
        let mut last = 1.0;
        for i in 0..=1000 {
            let x = 0.25 + 0.25 * i as f64 / 1000.0;
            let v = bump_eval(x);
            assert!((0.0..=1.0).contains(&v));
            assert!(v <= last + 1e-15);
            last = v;
        }
    }

    #[test]
    fn finite_difference_derivatives_bounded() {
        let h = 1e-3;
        let xs: Vec<f64> = (0..=2000).map(|i| -0.6 + 1.2 * i as f64 / 2000.0).collect();
        let d1 = xs
            .iter()
            .map(|&x| (bump_eval(x + h) - bump_eval(x - h)) / (2.0 * h))
            .fold(0.0f64, |a, v| a.max(v.abs()));
        let d2 = xs
            .iter()
            .map(|&x| (bump_eval(x + h) - 2.0 * bump_eval(x) + bump_eval(x - h)) / (h * h))
            .fold(0.0f64, |a, v| a.max(v.abs()));
        let d3 = xs
            .iter()
            .map(|&x| {
                (bump_eval(x + 2.0 * h) - 2.0 * bump_eval(x + h) + 2.0 * bump_eval(x - h) - bump_eval(x - 2.0 * h))
                    / (2.0 * h * h * h)
            })
            .fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(d1 < 20.0 && d2 < 500.0 && d3 < 20_000.0, "{d1} {d2} {d3}");
    }

    #[test]
    fn scaled_family() {
        let b = BumpFunction::new(4);
        assert_eq!(b.scaled(2, 0.0), 1.0);
        assert_eq!(b.scaled(2, b.plateau(2)), 1.0);
        assert_eq!(b.scaled(2, b.half_width(2)), 0.0);
        assert!((b.half_width(0) - 0.125).abs() < 1e-15);
        assert_eq!(bump_scaled(1, 4, 1.0 / 64.0), 1.0);
        assert_eq!(bump_scaled(1, 4, 1.0 / 32.0), 0.0);
    }
}
