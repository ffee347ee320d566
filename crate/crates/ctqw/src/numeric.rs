//! Small floating-point helpers: compensated summation and exact-ish
//! reduction of lattice phases.

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Distance from `x` to the nearest integer.
pub fn int_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Fractional part of `k * x` in [0, 1).
///
/// The product is formed as a two-term sum (value plus fused-multiply-add
/// residual) before reduction, so the result does not lose accuracy to the
/// magnitude of `k * x` itself; only the uncertainty already present in `x`
/// survives, scaled by `k`.
pub fn lattice_frac(k: u64, x: f64) -> f64 {
    let kf = k as f64;
    let p = kf * x;
    let err = kf.mul_add(x, -p);
    let mut f = (p.fract() + err).fract();
    if f < 0.0 {
        f += 1.0;
    }
    if f >= 1.0 {
        f = 0.0;
    }
    f
}
