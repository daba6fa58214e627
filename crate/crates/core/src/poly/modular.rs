//! Dense polynomial arithmetic over a prime field `F_p` with big-integer
//! coefficients, and Cantor-Zassenhaus factorization.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

/// Miller-Rabin with the first twelve prime bases.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const SMALL: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        let q = BigInt::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest probable prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = n + 1;
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c) {
        c += 2;
    }
    c
}

/// Polynomials over `F_p`, coefficients low to high in `[0, p)`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    pub p: BigInt,
}

pub type FpPoly = Vec<BigInt>;

impl PrimeField {
    pub fn new(p: BigInt) -> PrimeField {
        PrimeField { p }
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.p)
    }

    pub fn inv(&self, a: &BigInt) -> BigInt {
        let e = &self.p - 2;
        a.modpow(&e, &self.p)
    }

    fn trim(mut a: FpPoly) -> FpPoly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn from_ints(&self, a: &[BigInt]) -> FpPoly {
        PrimeField::trim(a.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        PrimeField::trim(
            (0..n)
                .map(|i| self.reduce(&(a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))))
                .collect(),
        )
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        PrimeField::trim(
            (0..n)
                .map(|i| self.reduce(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))))
                .collect(),
        )
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        PrimeField::trim(r.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn divrem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(b.last().unwrap());
        let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let top = r.last().unwrap().clone();
            let off = r.len() - b.len();
            if !top.is_zero() {
                let k = self.reduce(&(&top * &inv));
                for (i, y) in b.iter().enumerate() {
                    r[off + i] = self.reduce(&(&r[off + i] - &k * y));
                }
                q[off] = k;
            }
            r.pop();
        }
        (PrimeField::trim(q), PrimeField::trim(r))
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv(l);
                a.iter().map(|c| self.reduce(&(c * &inv))).collect()
            }
        }
    }

    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.divrem(&a, &b).1;
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn powmod(&self, base: &FpPoly, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut result: FpPoly = vec![BigInt::one()];
        let b = self.divrem(base, m).1;
        for i in (0..e.bits()).rev() {
            result = self.divrem(&self.mul(&result, &result), m).1;
            if e.bit(i) {
                result = self.divrem(&self.mul(&result, &b), m).1;
            }
        }
        self.divrem(&result, m).1
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let t: FpPoly = vec![BigInt::zero(), BigInt::one()];
        let mut out = Vec::new();
        let mut rest = f.clone();
        let mut h = t.clone();
        let mut i = 1;
        while rest.len() > 2 * i {
            h = self.powmod(&h, &self.p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &t));
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.divrem(&h, &rest).1;
                out.push((g, i));
            }
            i += 1;
        }
        if rest.len() > 1 {
            let d = rest.len() - 1;
            out.push((rest, d));
        }
        out
    }

    fn equal_degree<R: Rng>(&self, f: &FpPoly, d: usize, rng: &mut R, out: &mut Vec<FpPoly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.clone());
            return;
        }
        let e = (self.p.pow(d as u32) - 1) / 2;
        loop {
            let a: FpPoly = PrimeField::trim(
                (0..n)
                    .map(|_| rng.gen_bigint_range(&BigInt::zero(), &self.p))
                    .collect(),
            );
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, f), &vec![BigInt::one()]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &FpPoly, rng: &mut R) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primes() {
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(561)));
        assert_eq!(next_prime(&BigInt::from(100)), BigInt::from(101));
    }

    #[test]
    fn factor_mod_p_multiplies_back() {
        let fp = PrimeField::new(BigInt::from(10007));
        let ints = |v: &[i64]| -> FpPoly { fp.from_ints(&v.iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>()) };
        // (t^2+1)(t-3)(t^3+t+1)
        let f = fp.mul(&fp.mul(&ints(&[1, 0, 1]), &ints(&[-3, 1])), &ints(&[1, 1, 0, 1]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let fs = fp.factor_squarefree(&f, &mut rng);
        let prod = fs.iter().fold(vec![BigInt::one()], |acc, g| fp.mul(&acc, g));
        assert_eq!(prod, f);
        assert!(fs.len() >= 3);
    }
}
