//! Dense univariate polynomials over a coefficient field (`Q` or `Q(a)`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Coeff, Monomial, NumberField, Poly, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Coeff>,
}

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> UPoly {
        UPoly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> UPoly {
        UPoly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> UPoly {
        UPoly::new(vec![Coeff::zero(), Coeff::one()])
    }

    pub fn new(mut c: Vec<Coeff>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&n| Coeff::int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.c.get(i).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; zero polynomial has degree 0 as well, check `is_zero`.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Coeff {
        self.c.last().cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.c.iter().find_map(|c| c.field().cloned())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(|c| c.is_rational())
    }

    pub fn scale(&self, k: &Coeff) -> UPoly {
        UPoly::new(self.c.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().inv())
    }

    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Coeff::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let dl = d.c.len();
        let mut q = vec![Coeff::zero(); r.len() - dl + 1];
        while r.len() >= dl {
            let top = r.last().unwrap().clone();
            let off = r.len() - dl;
            if !top.is_zero() {
                let k = &top * &inv;
                for (i, y) in d.c.iter().enumerate() {
                    r[off + i] = &r[off + i] - &(&k * y);
                }
                q[off] = k;
            }
            r.pop();
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = r0.lc().inv();
        (r0.scale(&k), s0.scale(&k), t0.scale(&k))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Coeff::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Square-free part, monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Lifts into a multivariate polynomial in `v`.
    pub fn to_poly(&self, v: Var) -> Poly {
        Poly::from_terms(
            self.c
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as u32), c.clone())),
        )
    }

    /// Reads a polynomial whose only variable is `v`.
    pub fn from_poly(p: &Poly, v: Var) -> Option<UPoly> {
        if p.vars().iter().any(|&w| w != v) {
            return None;
        }
        let mut c = vec![Coeff::zero(); p.degree(v) as usize + 1];
        for (m, k) in p.terms() {
            c[m.degree(v) as usize] = k.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> UPoly {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Coeff::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.c.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = Var::jet(0, 0);
        let names = |_: Var| "t".to_string();
        write!(f, "{}", self.to_poly(v).display(&names))
    }
}
