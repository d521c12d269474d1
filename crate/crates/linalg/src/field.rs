//! Finite fields: prime fields GF(p) and simple extensions GF(p)[θ]/(f).

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;

use crate::error::LinalgError;
use crate::poly;

/// A finite field of odd characteristic with cheap, cloneable handles.
pub trait Field: Clone + Debug + Send + Sync + PartialEq {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of a prime-field residue.
    fn from_prime(&self, x: u32) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Coordinates over the prime field in the power basis.
    fn prime_components(&self, a: &Self::Elem) -> Vec<u32>;
    /// The `i`-th element in a fixed enumeration (base-p digits of `i`).
    fn element(&self, i: u64) -> Self::Elem;

    fn order(&self) -> u128 {
        (self.characteristic() as u128).pow(self.degree() as u32)
    }

    fn from_i64(&self, x: i64) -> Self::Elem {
        let p = self.characteristic() as i64;
        self.from_prime(x.rem_euclid(p) as u32)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// y += a * x
    fn axpy(&self, y: &mut [Self::Elem], a: &Self::Elem, x: &[Self::Elem]) {
        if self.is_zero(a) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(a, xi));
            }
        }
    }

    fn scale(&self, y: &mut [Self::Elem], a: &Self::Elem) {
        for yi in y.iter_mut() {
            *yi = self.mul(yi, a);
        }
    }

    fn dot(&self, x: &[Self::Elem], y: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (a, b) in x.iter().zip(y) {
            acc = self.add(&acc, &self.mul(a, b));
        }
        acc
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.is_zero(a) || self.is_one(&self.pow(a, (self.order() - 1) / 2))
    }

    /// Square root by Tonelli–Shanks; `None` for non-squares.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let q = self.order();
        let mut s = 0u32;
        let mut odd = q - 1;
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let z = (1u64..)
            .map(|i| self.element(i))
            .find(|z| !self.is_zero(z) && !self.is_square(z))
            .expect("odd order field has non-squares");
        let mut m = s;
        let mut c = self.pow(&z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, (odd + 1) / 2);
        while !self.is_one(&t) {
            let mut i = 0;
            let mut tt = t.clone();
            while !self.is_one(&tt) {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p) for an odd prime 3 <= p < 2^31, elements stored as canonical `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    // floor(2^64 / p), for Barrett reduction of products
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if !(3..(1u32 << 31)).contains(&p) {
            return Err(LinalgError::ModulusOutOfRange(p as u64));
        }
        if !is_prime(p as u64) {
            return Err(LinalgError::NotPrime(p as u64));
        }
        Ok(Self {
            p,
            barrett: (u64::MAX / p as u64),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline(always)]
    fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        if r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    #[inline(always)]
    pub fn mul_u32(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }
}

/// Smallest prime >= n.
pub fn next_prime(n: u32) -> u32 {
    (n.max(2)..).find(|&k| is_prime(k as u64)).unwrap()
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_prime(&self, x: u32) -> u32 {
        x % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline(always)]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline(always)]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline(always)]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_u32(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn prime_components(&self, a: &u32) -> Vec<u32> {
        vec![*a]
    }
    fn element(&self, i: u64) -> u32 {
        (i % self.p as u64) as u32
    }

    fn axpy(&self, y: &mut [u32], a: &u32, x: &[u32]) {
        if *a == 0 {
            return;
        }
        let a = *a as u64;
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.reduce(*yi as u64 + a * xi as u64);
        }
    }

    fn scale(&self, y: &mut [u32], a: &u32) {
        for yi in y.iter_mut() {
            *yi = self.mul_u32(*yi, *a);
        }
    }
}

/// GF(p^n) = GF(p)[θ]/(f) for a monic irreducible `f` of degree n.
/// Elements are coefficient vectors of length n in the basis 1, θ, …, θ^{n-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Arc<Vec<u32>>,
}

impl ExtensionField {
    /// `modulus` holds ascending coefficients; it is made monic and checked irreducible.
    pub fn new(base: PrimeField, modulus: &[u32]) -> Result<Self, LinalgError> {
        let f = poly::monic(&base, &poly::trim(&base, modulus.to_vec()));
        if f.len() < 2 || !poly::is_irreducible(&base, &f) {
            return Err(LinalgError::NotIrreducible);
        }
        Ok(Self {
            base,
            modulus: Arc::new(f),
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The generator θ.
    pub fn generator(&self) -> Vec<u32> {
        let mut e = vec![0; self.degree()];
        if self.degree() == 1 {
            e[0] = self.base.neg(&self.modulus[0]);
        } else {
            e[1] = 1;
        }
        e
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u32>;

    fn characteristic(&self) -> u32 {
        self.base.modulus()
    }
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    fn zero(&self) -> Vec<u32> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u32> {
        let mut e = self.zero();
        e[0] = 1;
        e
    }
    fn from_prime(&self, x: u32) -> Vec<u32> {
        let mut e = self.zero();
        e[0] = x % self.base.modulus();
        e
    }
    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let n = self.degree();
        let f = &self.base;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul_u32(x, y));
            }
        }
        // reduce by the monic modulus from the top
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let t = f.mul_u32(c, self.modulus[j]);
                prod[k - n + j] = f.sub(&prod[k - n + j], &t);
            }
            prod[k] = 0;
        }
        prod.truncate(n);
        prod
    }
    fn inv(&self, a: &Vec<u32>) -> Option<Vec<u32>> {
        if self.is_zero(a) {
            return None;
        }
        let ap = poly::trim(&self.base, a.clone());
        let (g, s, _) = poly::ext_gcd(&self.base, &ap, &self.modulus);
        // g is a nonzero constant since the modulus is irreducible
        let gi = self.base.inv(&g[0])?;
        let mut out = poly::scale(&self.base, &s, &gi);
        out.resize(self.degree(), 0);
        Some(out)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u32> {
        (0..self.degree()).map(|_| self.base.random(rng)).collect()
    }
    fn prime_components(&self, a: &Vec<u32>) -> Vec<u32> {
        a.clone()
    }
    fn element(&self, mut i: u64) -> Vec<u32> {
        let p = self.base.modulus() as u64;
        (0..self.degree())
            .map(|_| {
                let d = (i % p) as u32;
                i /= p;
                d
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(PrimeField::new(2), Err(LinalgError::ModulusOutOfRange(2))));
        assert!(matches!(PrimeField::new(15), Err(LinalgError::NotPrime(15))));
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn barrett_matches_remainder() {
        let f = PrimeField::new(2147483647).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10000 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!(f.mul(&a, &b) as u64, (a as u64 * b as u64) % 2147483647);
        }
    }

    #[test]
    fn inverses_and_sqrt() {
        let f = PrimeField::new(10007).unwrap();
        for a in 1..200u32 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            let sq = f.mul(&a, &a);
            let r = f.sqrt(&sq).unwrap();
            assert_eq!(f.mul(&r, &r), sq);
        }
        // 5 is a non-residue mod 10007 iff sqrt fails
        let five = 5u32;
        assert_eq!(f.sqrt(&five).is_some(), f.is_square(&five));
    }

    #[test]
    fn extension_field_arithmetic() {
        let b = PrimeField::new(7).unwrap();
        // t^3 + t + 1 has no roots mod 7 (checked below) hence irreducible
        let e = ExtensionField::new(b, &[1, 1, 0, 1]).unwrap();
        assert_eq!(e.order(), 343);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = e.random(&mut rng);
            if e.is_zero(&a) {
                continue;
            }
            assert!(e.is_one(&e.mul(&a, &e.inv(&a).unwrap())));
            assert!(e.is_one(&e.pow(&a, 342)));
            let sq = e.mul(&a, &a);
            let r = e.sqrt(&sq).unwrap();
            assert_eq!(e.mul(&r, &r), sq);
        }
        let th = e.generator();
        let f_th = e.add(&e.add(&e.pow(&th, 3), &th), &e.one());
        assert!(e.is_zero(&f_th));
        assert!(ExtensionField::new(b, &[6, 0, 1]).is_err()); // t^2 - 1
    }
}
