//! Univariate polynomials over F_p, just enough to split a minimal polynomial
//! into coprime factors (the source of splitting idempotents).

use rand::Rng;

use super::field::PrimeField;

/// Coefficients from the constant term upwards, with no trailing zeros.
/// The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `x - c`.
    pub fn linear(f: PrimeField, c: u32) -> Self {
        Poly::new(vec![f.neg(c), 1])
    }

    pub fn x() -> Self {
        Poly::new(vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u32 {
        *self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn monic(&self, f: PrimeField) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.inv(self.lead());
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn add(&self, other: &Poly, f: PrimeField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        Poly::new((0..n).map(|i| f.add(get(self, i), get(other, i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: PrimeField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        Poly::new((0..n).map(|i| f.sub(get(self, i), get(other, i))).collect())
    }

    pub fn mul(&self, other: &Poly, f: PrimeField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(out)
    }

    pub fn divrem(&self, d: &Poly, f: PrimeField) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = f.mul_add(r[k + j], neg, b);
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: PrimeField) -> Poly {
        self.divrem(d, f).1
    }

    pub fn derivative(&self, f: PrimeField) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, (i as u64 % f.modulus() as u64) as u32))
                .collect(),
        )
    }

    pub fn eval(&self, x: u32, f: PrimeField) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul_add(c, acc, x))
    }
}

/// Monic gcd.
pub fn gcd(a: &Poly, b: &Poly, f: PrimeField) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b, f);
        a = b;
        b = r;
    }
    a.monic(f)
}

/// Returns `(g, u, v)` with `u*a + v*b = g = gcd(a, b)` and `g` monic.
pub fn ext_gcd(a: &Poly, b: &Poly, f: PrimeField) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1, f);
        let s = s0.sub(&q.mul(&s1, f), f);
        let t = t0.sub(&q.mul(&t1, f), f);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = f.inv(r0.lead());
    let scale = |p: &Poly| Poly::new(p.coeffs.iter().map(|&c| f.mul(c, inv)).collect());
    (scale(&r0), scale(&s0), scale(&t0))
}

/// `base^e mod m`.
pub fn powmod(base: &Poly, mut e: u128, m: &Poly, f: PrimeField) -> Poly {
    let mut acc = Poly::one().rem(m, f);
    let mut b = base.rem(m, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b, f).rem(m, f);
        }
        b = b.mul(&b, f).rem(m, f);
        e >>= 1;
    }
    acc
}

/// `x^(p^d) mod m`, by repeated p-th powering.
fn frobenius_power(d: usize, m: &Poly, f: PrimeField) -> Poly {
    let mut acc = Poly::x().rem(m, f);
    for _ in 0..d {
        acc = powmod(&acc, f.modulus() as u128, m, f);
    }
    acc
}

/// The largest divisor of `m` whose irreducible factors all divide `g`.
fn saturate(m: &Poly, g: &Poly, f: PrimeField) -> Poly {
    let mut part = Poly::one();
    let mut rest = m.clone();
    loop {
        let c = gcd(&rest, g, f);
        if c.degree() == Some(0) {
            return part;
        }
        rest = rest.divrem(&c, f).0;
        part = part.mul(&c, f);
    }
}

/// Splits a squarefree `s`, all of whose irreducible factors have degree `d`,
/// into a proper factor (Cantor-Zassenhaus). Needs `deg s > d`.
fn equal_degree_factor<R: Rng>(s: &Poly, d: usize, f: PrimeField, rng: &mut R) -> Option<Poly> {
    let n = s.degree()?;
    let p = f.modulus() as u128;
    for _ in 0..64 {
        let a = Poly::new((0..n).map(|_| rng.gen_range(0..f.modulus())).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let h = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t, f).rem(s, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            let e = (p.checked_pow(d as u32)? - 1) / 2;
            powmod(&a, e, s, f).sub(&Poly::one(), f)
        };
        let g = gcd(s, &h, f);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                return Some(g);
            }
        }
    }
    None
}

/// Writes a monic `mu` as `g * h` with `gcd(g, h) = 1` and both factors of
/// positive degree, if such a factorisation exists. Returns `None` exactly
/// when `mu` is a power of a single irreducible polynomial (up to the
/// randomised equal-degree step, which is retried internally).
pub fn coprime_split<R: Rng>(mu: &Poly, f: PrimeField, rng: &mut R) -> Option<(Poly, Poly)> {
    let n = mu.degree()?;
    if n <= 1 {
        return None;
    }
    let deriv = mu.derivative(f);
    if deriv.is_zero() {
        // mu is a p-th power; our dimensions never reach p, except in tiny
        // fields where we fall back to root search by evaluation.
        return root_split(mu, f);
    }
    let sq = gcd(mu, &deriv, f);
    let s = mu.divrem(&sq, f).0.monic(f);
    let ds = s.degree()?;
    if ds == 0 {
        return None;
    }
    let mut rest = s.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) > 0 {
        let xp = frobenius_power(d, &rest, f);
        let g = gcd(&rest, &xp.sub(&Poly::x(), f), f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 {
            let piece = if dg < ds {
                Some(g.clone())
            } else if dg > d {
                equal_degree_factor(&g, d, f, rng)
            } else {
                None
            };
            if let Some(piece) = piece {
                let part = saturate(mu, &piece, f);
                let other = mu.divrem(&part, f).0;
                if other.degree().unwrap_or(0) > 0 && part.degree().unwrap_or(0) > 0 {
                    return Some((part, other.monic(f)));
                }
            }
            rest = rest.divrem(&g, f).0;
        }
        d += 1;
        if d > ds {
            break;
        }
    }
    None
}

fn root_split(mu: &Poly, f: PrimeField) -> Option<(Poly, Poly)> {
    if f.modulus() > 1 << 16 {
        return None;
    }
    let root = (0..f.modulus()).find(|&c| mu.eval(c, f) == 0)?;
    let part = saturate(mu, &Poly::linear(f, root), f);
    let other = mu.divrem(&part, f).0;
    (other.degree().unwrap_or(0) > 0).then(|| (part, other.monic(f)))
}

/// Given coprime `g`, `h`, returns `q` with `q = 0 mod g` and `q = 1 mod h`,
/// reduced modulo `g*h`. Evaluated at an endomorphism whose minimal
/// polynomial is `g*h`, it yields the projection onto `ker h`.
pub fn crt_idempotent(g: &Poly, h: &Poly, f: PrimeField) -> Poly {
    let (one, u, _v) = ext_gcd(g, h, f);
    assert_eq!(one, Poly::one(), "factors are not coprime");
    // u*g + v*h = 1  =>  u*g = 1 mod h and u*g = 0 mod g
    u.mul(g, f).rem(&g.mul(h, f), f)
}
