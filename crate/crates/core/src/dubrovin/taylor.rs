//! Truncated power series `sum_j a_j h^j` for Taylor-mode derivatives.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub Vec<f64>);

impl Series {
    pub fn constant(c: f64, len: usize) -> Self {
        let mut v = vec![0.0; len];
        v[0] = c;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }

    pub fn add_scalar(&self, s: f64) -> Self {
        let mut v = self.0.clone();
        v[0] += s;
        Self(v)
    }

    pub fn div(&self, other: &Self) -> Self {
        let n = self.len();
        let b0 = other.0[0];
        let mut c = vec![0.0; n];
        for j in 0..n {
            let mut s = self.0[j];
            for i in 0..j {
                s -= c[i] * other.0[j - i];
            }
            c[j] = s / b0;
        }
        Self(c)
    }

    /// Principal square root; the constant term must be positive.
    pub fn sqrt(&self) -> Self {
        let n = self.len();
        let mut c = vec![0.0; n];
        c[0] = self.0[0].sqrt();
        for j in 1..n {
            let mut s = self.0[j];
            for i in 1..j {
                s -= c[i] * c[j - i];
            }
            c[j] = s / (2.0 * c[0]);
        }
        Self(c)
    }

    /// `(sin, cos)` of the series.
    pub fn sin_cos(&self) -> (Self, Self) {
        let n = self.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        let (s0, c0) = self.0[0].sin_cos();
        s[0] = s0;
        c[0] = c0;
        for j in 1..n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for i in 1..=j {
                let w = i as f64 * self.0[i];
                ss += w * c[j - i];
                cc -= w * s[j - i];
            }
            s[j] = ss / j as f64;
            c[j] = cc / j as f64;
        }
        (Self(s), Self(c))
    }

    /// `f^(j)(0) = j! a_j`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.0
            .iter()
            .enumerate()
            .map(|(j, a)| {
                if j > 0 {
                    fact *= j as f64;
                }
                a * fact
            })
            .collect()
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let n = self.len();
        let mut c = vec![0.0; n];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += a * o.0[j];
            }
        }
        Series(c)
    }
}
