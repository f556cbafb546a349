//! Uniform-grid quadrature.

/// Composite Simpson rule for samples spaced `h` apart. An odd number of
/// intervals is closed with Simpson's 3/8 rule on the last three.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => return 0.0,
        2 => return trapezoid(values, h),
        _ => {}
    }
    let intervals = n - 1;
    let even_end = if intervals.is_multiple_of(2) { n - 1 } else { n - 4 };
    let mut sum = 0.0;
    if even_end > 0 {
        sum += values[0] + values[even_end];
        for (i, v) in values[1..even_end].iter().enumerate() {
            sum += if i % 2 == 0 { 4.0 * v } else { 2.0 * v };
        }
        sum *= h / 3.0;
    }
    if intervals % 2 == 1 {
        let t = &values[n - 4..];
        sum += 3.0 * h / 8.0 * (t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3]);
    }
    sum
}

pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}
