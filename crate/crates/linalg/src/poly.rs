//! Dense univariate polynomials as ascending coefficient vectors (zero = empty).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, PrimeField};

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F>) -> Poly<F> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        f.axpy(&mut out[i..i + b.len()], x, b);
    }
    trim(f, out)
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F> {
    match a.iter().rev().find(|c| !f.is_zero(c)) {
        None => Vec::new(),
        Some(lead) => {
            let li = f.inv(lead).unwrap();
            scale(f, a, &li)
        }
    }
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut r = trim(f, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        let neg = f.neg(&c);
        f.axpy(&mut r[shift..shift + db + 1], &neg, &b[..=db]);
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    divrem(f, a, b).1
}

/// Monic gcd (zero if both inputs vanish).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// (g, s, t) with s·a + t·b = g, g not normalized.
pub fn ext_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

/// base^e mod m
pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Poly<F> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// ∏ (t - r_i)
pub fn from_roots<F: Field>(f: &F, roots: &[F::Elem]) -> Poly<F> {
    let mut out = vec![f.one()];
    for r in roots {
        out = mul(f, &out, &[f.neg(r), f.one()]);
    }
    out
}

pub fn is_squarefree<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    let d = derivative(f, a);
    !d.is_empty() && degree(f, &gcd(f, a, &d)) == Some(0)
}

fn x_poly(f: &PrimeField) -> Vec<u32> {
    vec![0, f.one()]
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (d, product of all irreducible factors of degree d).
pub fn distinct_degree(f: &PrimeField, a: &[u32]) -> Vec<(usize, Vec<u32>)> {
    let p = f.modulus() as u128;
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let x = x_poly(f);
    let mut h = x.clone();
    let mut d = 0;
    while degree(f, &rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(f, &h, p, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if degree(f, &g).unwrap_or(0) > 0 {
            out.push((d, g.clone()));
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
    }
    if let Some(dr) = degree(f, &rest) {
        if dr > 0 {
            out.push((dr, rest));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d` (Cantor–Zassenhaus).
pub fn equal_degree<R: Rng + ?Sized>(f: &PrimeField, a: &[u32], d: usize, rng: &mut R) -> Vec<Vec<u32>> {
    let n = degree(f, a).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![monic(f, a)];
    }
    let q = (f.modulus() as u128).pow(d as u32);
    loop {
        let r: Vec<u32> = trim(f, (0..n).map(|_| f.random(rng)).collect());
        if degree(f, &r).unwrap_or(0) == 0 {
            continue;
        }
        let b = powmod(f, &r, (q - 1) / 2, a);
        let g = gcd(f, a, &sub(f, &b, &[1]));
        let dg = degree(f, &g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Irreducible factors of a squarefree polynomial, sorted by (degree, coefficients).
/// Returns `None` if the input is not squarefree.
pub fn factor_squarefree<R: Rng + ?Sized>(f: &PrimeField, a: &[u32], rng: &mut R) -> Option<Vec<Vec<u32>>> {
    if !is_squarefree(f, a) {
        return None;
    }
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, a) {
        out.extend(equal_degree(f, &g, d, rng));
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().rev().cmp(y.iter().rev())));
    Some(out)
}

pub fn is_irreducible(f: &PrimeField, a: &[u32]) -> bool {
    let Some(n) = degree(f, a) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !is_squarefree(f, a) {
        return false;
    }
    let dd = distinct_degree(f, a);
    dd.len() == 1 && dd[0].0 == n
}

/// Distinct roots in GF(p), ascending.
pub fn roots(f: &PrimeField, a: &[u32]) -> Vec<u32> {
    let a = trim(f, a.to_vec());
    let Some(n) = degree(f, &a) else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    if (f.modulus() as usize) < 64 * n {
        return (0..f.modulus()).filter(|x| f.is_zero(&eval(f, &a, x))).collect();
    }
    let x = x_poly(f);
    let xp = powmod(f, &x, f.modulus() as u128, &a);
    let g = gcd(f, &a, &sub(f, &xp, &x));
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut out: Vec<u32> = equal_degree(f, &g, 1, &mut rng)
        .into_iter()
        .map(|lin| f.neg(&lin[0]))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    fn pf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = pf(13);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a: Vec<u32> = trim(&f, (0..9).map(|_| f.random(&mut rng)).collect());
            let mut b: Vec<u32> = (0..4).map(|_| f.random(&mut rng)).collect();
            b.push(1 + f.random(&mut rng) % 12);
            let (q, r) = divrem(&f, &a, &b);
            assert!(r.len() < b.len());
            assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        }
    }

    #[test]
    fn factorization_recovers_product() {
        let f = pf(17);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut irr = Vec::new();
        let mut cand_rng = ChaCha8Rng::seed_from_u64(10);
        while irr.len() < 4 {
            let deg = 1 + irr.len();
            let mut c: Vec<u32> = (0..deg).map(|_| f.random(&mut cand_rng)).collect();
            c.push(1);
            if is_irreducible(&f, &c) && !irr.contains(&c) {
                irr.push(c);
            }
        }
        let prod = irr.iter().fold(vec![1u32], |acc, g| mul(&f, &acc, g));
        let fac = factor_squarefree(&f, &prod, &mut rng).unwrap();
        assert_eq!(fac, irr);
        let sq = mul(&f, &prod, &irr[0]);
        assert!(factor_squarefree(&f, &sq, &mut rng).is_none());
    }

    #[test]
    fn roots_large_and_small_fields() {
        for p in [13u32, 10007] {
            let f = pf(p);
            let r = vec![2u32, 5, 11];
            let a = mul(&f, &from_roots(&f, &r), &[1, 0, 1]);
            let mut expected = r.clone();
            // t^2+1 splits when p ≡ 1 mod 4
            if p % 4 == 1 {
                let s = f.sqrt(&(p - 1)).unwrap();
                expected.push(s);
                expected.push(p - s);
            }
            expected.sort_unstable();
            expected.dedup();
            assert_eq!(roots(&f, &a), expected);
        }
    }
}
