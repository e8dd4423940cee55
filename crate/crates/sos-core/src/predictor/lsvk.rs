use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Points of the limit curve x + y = (2/π)(u·arcsin(u/2) + √(4 − u²)), u = x − y ∈ [−2, 2].
pub fn lsvk_curve(samples: usize) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return domain("the curve needs at least 2 samples");
    }
    Ok((0..samples)
        .map(|i| {
            let u = -2.0 + 4.0 * i as f64 / (samples - 1) as f64;
            let v = 2.0 / PI * (u * (u / 2.0).clamp(-1.0, 1.0).asin() + (4.0 - u * u).max(0.0).sqrt());
            ((v + u) / 2.0, (v - u) / 2.0)
        })
        .collect())
}
