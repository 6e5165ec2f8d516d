use serde::{Deserialize, Serialize};

/// Default modulus: large enough that random splitting succeeds almost always,
/// small enough that products fit comfortably in a `u64`.
pub const DEFAULT_PRIME: u32 = 32003;

/// The prime field F_p. Scalars are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below 2^31.
    pub fn new(p: u32) -> Option<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b*c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero, which is always a logic error.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduces a signed integer into canonical range.
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// Signed representative in `(-p/2, p/2]`, used only for display.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(1).is_none());
        assert!(PrimeField::new(32001).is_none());
        assert!(PrimeField::new(2).is_some());
        assert!(PrimeField::new(DEFAULT_PRIME).is_some());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn signed_conversions() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.to_signed(6), -1);
        assert_eq!(f.to_signed(3), 3);
    }
}
