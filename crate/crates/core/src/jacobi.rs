use crate::error::{Error, Result};

/// Jacobi polynomial `P_n^(a,b)(x)` by the ascending three-term recurrence.
///
/// Normalised so that `P_n^(a,b)(1) = (a+1)_n / n!`, which is the Rodrigues
/// form with the `1/n!` prefactor folded in.
pub fn jacobi(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::Domain(format!(
            "Jacobi parameters must exceed -1, got a = {a}, b = {b}"
        )));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Jacobi argument must lie in [-1, 1], got {x}")));
    }
    Ok(jacobi_unchecked(n, a, b, x))
}

pub(crate) fn jacobi_unchecked(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    let (mut prev, mut cur) = (p0, p1);
    let ab = a + b;
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let lead = 2.0 * k * (k + ab) * (c - 2.0);
        let mid = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let back = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let next = (mid * cur - back * prev) / lead;
        prev = cur;
        cur = next;
    }
    cur
}
