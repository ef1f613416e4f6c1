//! Reals stored as sign and log-magnitude, plus a log-sum-exp accumulator.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;

/// Log magnitudes closer than this are treated as equal when subtracting.
pub const CANCEL_GUARD: f64 = 1e-13;

/// `sign · exp(log_mag)`; `sign == 0` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLogReal {
    sign: i8,
    log_mag: f64,
}

impl SignedLogReal {
    pub const ZERO: Self = SignedLogReal {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };
    pub const ONE: Self = SignedLogReal {
        sign: 1,
        log_mag: 0.0,
    };

    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            SignedLogReal {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLogReal {
                sign: if x > 0.0 { 1 } else { -1 },
                log_mag: x.abs().ln(),
            }
        }
    }

    pub fn from_ratio(r: Rational64) -> Self {
        let (p, q) = (*r.numer(), *r.denom());
        if p == 0 {
            return Self::ZERO;
        }
        SignedLogReal {
            sign: (p.signum() * q.signum()) as i8,
            log_mag: (p.unsigned_abs() as f64).ln() - (q.unsigned_abs() as f64).ln(),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_mag.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn log_mag(self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        SignedLogReal {
            sign: self.sign.abs(),
            ..self
        }
    }

    /// Integer power; `0^0 = 1`.
    pub fn powi(self, t: u64) -> Self {
        if t == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        SignedLogReal {
            sign: if self.sign < 0 && t % 2 == 1 { -1 } else { 1 },
            log_mag: self.log_mag * t as f64,
        }
    }
}

impl Neg for SignedLogReal {
    type Output = Self;

    fn neg(self) -> Self {
        SignedLogReal {
            sign: -self.sign,
            ..self
        }
    }
}

impl Mul for SignedLogReal {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        SignedLogReal {
            sign: self.sign * rhs.sign,
            log_mag: self.log_mag + rhs.log_mag,
        }
    }
}

impl Add for SignedLogReal {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = small.log_mag - big.log_mag;
        if big.sign == small.sign {
            SignedLogReal {
                sign: big.sign,
                log_mag: big.log_mag + gap.exp().ln_1p(),
            }
        } else if -gap <= CANCEL_GUARD {
            Self::ZERO
        } else {
            SignedLogReal {
                sign: big.sign,
                log_mag: big.log_mag + (-gap.exp_m1()).ln(),
            }
        }
    }
}

impl Sub for SignedLogReal {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Running `ln Σ exp(x_k)` with max-shifting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSum {
    max: f64,
    scaled: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        LogSum {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `exp(x)`.
    pub fn add_log(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.scaled += (x - self.max).exp();
        } else {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    pub fn merge(&mut self, other: &LogSum) {
        if other.scaled == 0.0 {
            return;
        }
        if self.scaled == 0.0 {
            *self = *other;
            return;
        }
        let m = self.max.max(other.max);
        self.scaled = self.scaled * (self.max - m).exp() + other.scaled * (other.max - m).exp();
        self.max = m;
    }

    /// `ln` of the sum (`-inf` when empty).
    pub fn ln(&self) -> f64 {
        if self.scaled == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }

    pub fn value(&self) -> f64 {
        self.ln().exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
    }

    proptest! {
        #[test]
        fn round_trip(x in -1e200f64..1e200) {
            prop_assert!(close(SignedLogReal::from_f64(x).to_f64(), x));
        }

        #[test]
        fn mul_matches_f64(x in -1e100f64..1e100, y in -1e100f64..1e100) {
            let p = SignedLogReal::from_f64(x) * SignedLogReal::from_f64(y);
            prop_assert!(close(p.to_f64(), x * y));
        }

        #[test]
        fn add_matches_f64(x in -1e6f64..1e6, y in -1e6f64..1e6) {
            let s = (SignedLogReal::from_f64(x) + SignedLogReal::from_f64(y)).to_f64();
            // cancellation can only lose what the inputs' rounding already lost
            prop_assert!((s - (x + y)).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300));
        }

        #[test]
        fn powi_matches_f64(x in -2.0f64..2.0, t in 0u64..40) {
            let p = SignedLogReal::from_f64(x).powi(t).to_f64();
            prop_assert!(close(p, x.powi(t as i32)));
        }

        #[test]
        fn logsum_matches_direct(xs in prop::collection::vec(-50f64..50.0, 1..40)) {
            let mut acc = LogSum::new();
            for &x in &xs { acc.add_log(x); }
            let direct: f64 = xs.iter().map(|x| x.exp()).sum();
            prop_assert!(close(acc.value(), direct));
        }
    }

    #[test]
    fn special_cases() {
        assert_eq!(SignedLogReal::ZERO.powi(0), SignedLogReal::ONE);
        assert!(SignedLogReal::ZERO.powi(3).is_zero());
        let m = SignedLogReal::from_ratio(Rational64::new(-1, 2));
        assert_eq!(m.powi(3).sign(), -1);
        assert_eq!(m.powi(4).sign(), 1);
        assert!((m.powi(3).to_f64() + 0.125).abs() < 1e-16);
        let a = SignedLogReal::from_f64(0.3);
        assert!((a - a).is_zero());
        assert!(SignedLogReal::from_ratio(Rational64::new(0, 5)).is_zero());
    }

    #[test]
    fn logsum_merge() {
        let mut a = LogSum::new();
        let mut b = LogSum::new();
        a.add_log(1.0);
        b.add_log(800.0);
        b.add_log(799.0);
        a.merge(&b);
        let want = 800.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((a.ln() - want).abs() < 1e-12);
        assert_eq!(LogSum::new().ln(), f64::NEG_INFINITY);
        let mut e = LogSum::new();
        e.merge(&LogSum::new());
        assert_eq!(e.value(), 0.0);
    }
}
