//! Reference computations that share no code with `polyfactor`.

use std::f64::consts::PI;

/// Composite Simpson rule with `2m` subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / (2 * m) as f64;
    let mut sum = f(a) + f(b);
    for i in 1..2 * m {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// `exp((1/π)∫₀^{2π/3} log(2cos(t/2)) dt)`, the disk constant at `r = 1`.
pub fn boyd_beta() -> f64 {
    (simpson(|t| (2.0 * (t / 2.0).cos()).ln(), 0.0, 2.0 * PI / 3.0, 20_000) / PI).exp()
}

/// `exp(∫₀^{2/3} log(2 + 2cos πx) dx)`, the segment constant at `a = 2`.
pub fn borwein_integral() -> f64 {
    simpson(|x| (2.0 + 2.0 * (PI * x).cos()).ln(), 0.0, 2.0 / 3.0, 20_000).exp()
}
