//! Truncated Puiseux series with exact coefficients.
//!
//! A series is stored in its local parameter `t` (`t = x` at zero and
//! `t = 1/x` at infinity) as `sum c_k t^((start + k)/e)`, known exactly for
//! exponents below `order/e`. Exact series (polynomials in `t^(1/e)`) use
//! the order [`EXACT`].

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::coeff::{fmt_rat, Coeff, Rat};
use crate::poly::{Poly, Var};

/// Truncation order of series known exactly.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Zero,
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    point: Point,
    ram: u32,
    start: i64,
    coeffs: Vec<Coeff>,
    order: i64,
}

fn cap(n: i64) -> i64 {
    n.min(EXACT)
}

impl PuiseuxSeries {
    /// Builds `sum coeffs[k] t^((start + k)/e) + O(t^(order/e))`.
    pub fn new(point: Point, e: u32, start: i64, coeffs: Vec<Coeff>, order: i64) -> PuiseuxSeries {
        assert!(e >= 1, "ramification index must be positive");
        let mut s = PuiseuxSeries {
            point,
            ram: e,
            start,
            coeffs,
            order: cap(order),
        };
        s.tidy();
        s
    }

    pub fn zero(point: Point, order: i64) -> PuiseuxSeries {
        PuiseuxSeries::new(point, 1, 0, vec![], order)
    }

    pub fn constant(c: Coeff, point: Point) -> PuiseuxSeries {
        PuiseuxSeries::new(point, 1, 0, vec![c], EXACT)
    }

    /// `c t^(a/e)`, exact.
    pub fn monomial(c: Coeff, a: i64, e: u32, point: Point) -> PuiseuxSeries {
        PuiseuxSeries::new(point, e, a, vec![c], EXACT)
    }

    /// The independent variable `x` expanded at `point`.
    pub fn x(point: Point) -> PuiseuxSeries {
        let a = match point {
            Point::Zero => 1,
            Point::Infinity => -1,
        };
        PuiseuxSeries::monomial(Coeff::one(), a, 1, point)
    }

    fn tidy(&mut self) {
        if self.order != EXACT {
            let keep = (self.order - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        if self.coeffs.is_empty() {
            self.start = 0;
        }
        let mut g = self.ram as i64;
        if self.order != EXACT {
            g = g.gcd(&self.order);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.start + k as i64));
            }
        }
        if g > 1 {
            let coeffs: Vec<Coeff> = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(k, _)| (self.start + *k as i64) % g == 0)
                .map(|(_, c)| c.clone())
                .collect();
            self.coeffs = coeffs;
            self.start /= g;
            self.ram /= g as u32;
            if self.order != EXACT {
                self.order /= g;
            }
        }
    }

    pub fn point(&self) -> Point {
        self.point
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Truncation order in the local parameter, `None` when exact.
    pub fn order(&self) -> Option<Rat> {
        (!self.is_exact()).then(|| Rat::new(self.order.into(), self.ram.into()))
    }

    /// Truncation order in units of `1/e`.
    pub fn order_units(&self) -> i64 {
        self.order
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero term.
    pub fn valuation(&self) -> Option<Rat> {
        (!self.is_zero()).then(|| Rat::new(self.start.into(), self.ram.into()))
    }

    fn val_units(&self) -> i64 {
        if self.is_zero() {
            self.order
        } else {
            self.start
        }
    }

    /// Terms `(exponent, coefficient)` with nonzero coefficient.
    pub fn terms(&self) -> Vec<(Rat, Coeff)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Rat::new((self.start + k as i64).into(), self.ram.into()), c.clone()))
            .collect()
    }

    /// Coefficient of `t^q`; `None` at or beyond the truncation order.
    pub fn coeff(&self, q: &Rat) -> Option<Coeff> {
        let scaled = q * Rat::from_integer(self.ram.into());
        if !scaled.is_integer() {
            return Some(Coeff::zero());
        }
        let n: i64 = scaled.to_integer().try_into().ok()?;
        if n >= self.order {
            return None;
        }
        let k = n - self.start;
        if k < 0 || k as usize >= self.coeffs.len() {
            return Some(Coeff::zero());
        }
        Some(self.coeffs[k as usize].clone())
    }

    /// Same series with ramification index `e`, a multiple of the current.
    pub fn with_ramification(&self, e: u32) -> PuiseuxSeries {
        assert!(e % self.ram == 0, "ramification must be a multiple");
        let k = (e / self.ram) as i64;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.extend(std::iter::repeat_n(Coeff::zero(), k as usize - 1));
            }
            coeffs.push(c.clone());
        }
        PuiseuxSeries {
            point: self.point,
            ram: e,
            start: self.start * k,
            coeffs,
            order: if self.is_exact() { EXACT } else { self.order * k },
        }
    }

    /// Drops every term with exponent at or above `order/e`.
    pub fn truncate(&self, order: i64) -> PuiseuxSeries {
        PuiseuxSeries::new(self.point, self.ram, self.start, self.coeffs.clone(), order.min(self.order))
    }

    fn common(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<(PuiseuxSeries, PuiseuxSeries)> {
        if a.point != b.point {
            return Err(Error::IncompatiblePoints);
        }
        let e = (a.ram as u64).lcm(&(b.ram as u64)) as u32;
        Ok((a.with_ramification(e), b.with_ramification(e)))
    }

    pub fn add(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let (a, b) = PuiseuxSeries::common(self, other)?;
        let order = a.order.min(b.order);
        if a.is_zero() {
            return Ok(b.truncate(order));
        }
        if b.is_zero() {
            return Ok(a.truncate(order));
        }
        let start = a.start.min(b.start);
        let end = (a.start + a.coeffs.len() as i64).max(b.start + b.coeffs.len() as i64);
        let get = |s: &PuiseuxSeries, n: i64| -> Coeff {
            let k = n - s.start;
            if k < 0 || k as usize >= s.coeffs.len() {
                Coeff::zero()
            } else {
                s.coeffs[k as usize].clone()
            }
        };
        let coeffs = (start..end).map(|n| &get(&a, n) + &get(&b, n)).collect();
        Ok(PuiseuxSeries::new(a.point, a.ram, start, coeffs, order))
    }

    pub fn neg(&self) -> PuiseuxSeries {
        self.scale(&Coeff::int(-1))
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> PuiseuxSeries {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        let order = if c.is_zero() && self.is_exact() { EXACT } else { self.order };
        PuiseuxSeries::new(self.point, self.ram, self.start, coeffs, order)
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let (a, b) = PuiseuxSeries::common(self, other)?;
        let order = cap(a.order.saturating_add(b.val_units()))
            .min(cap(b.order.saturating_add(a.val_units())));
        if a.is_zero() || b.is_zero() {
            return Ok(PuiseuxSeries::new(a.point, a.ram, 0, vec![], order));
        }
        let start = a.start + b.start;
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        let len = if order == EXACT {
            len
        } else {
            len.min((order - start).max(0) as usize)
        };
        let mut coeffs = vec![Coeff::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() || i >= len {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !y.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(x * y);
                }
            }
        }
        Ok(PuiseuxSeries::new(a.point, a.ram, start, coeffs, order))
    }

    pub fn pow(&self, n: u32) -> Result<PuiseuxSeries> {
        let mut acc = PuiseuxSeries::constant(Coeff::one(), self.point);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Derivative with respect to `x` (not the local parameter).
    pub fn derivative(&self) -> PuiseuxSeries {
        let e = self.ram as i64;
        let coeffs: Vec<Coeff> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * &Coeff::from(Rat::new((self.start + k as i64).into(), e.into())))
            .collect();
        let (shift, sign) = match self.point {
            Point::Zero => (-e, 1),
            Point::Infinity => (e, -1),
        };
        let order = if self.is_exact() { EXACT } else { self.order + shift };
        PuiseuxSeries::new(self.point, self.ram, self.start + shift, coeffs, order).scale(&Coeff::int(sign))
    }

    /// Evaluates a differential polynomial at `x` and `y_j = ys[j]`.
    pub fn substitute(p: &Poly, ys: &[PuiseuxSeries], point: Point) -> Result<PuiseuxSeries> {
        if ys.iter().any(|y| y.point != point) {
            return Err(Error::IncompatiblePoints);
        }
        let mut derivs: Vec<Vec<PuiseuxSeries>> = ys.iter().map(|y| vec![y.clone()]).collect();
        for v in p.jet_vars() {
            let j = v.index as usize;
            if j >= ys.len() {
                return Err(Error::Invalid(format!("no series for indeterminate {}", j + 1)));
            }
            while derivs[j].len() <= v.order as usize {
                let next = derivs[j].last().unwrap().derivative();
                derivs[j].push(next);
            }
        }
        let x = PuiseuxSeries::x(point);
        let mut acc = PuiseuxSeries::new(point, 1, 0, vec![], EXACT);
        for (m, c) in p.terms() {
            let mut t = PuiseuxSeries::constant(c.clone(), point);
            for (v, e) in m.pairs() {
                let base = match v {
                    Var::X => x.clone(),
                    Var::Jet(j) => derivs[j.index as usize][j.order as usize].clone(),
                };
                t = t.mul(&base.pow(*e)?)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Re-expresses every coefficient through a field embedding.
    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> PuiseuxSeries {
        PuiseuxSeries::new(
            self.point,
            self.ram,
            self.start,
            self.coeffs.iter().map(f).collect(),
            self.order,
        )
    }
}

fn fmt_exponent(q: &Rat) -> String {
    if q.is_integer() {
        if q.is_negative() {
            format!("({})", q)
        } else {
            q.to_string()
        }
    } else {
        format!("({})", fmt_rat(q))
    }
}

fn fmt_power(q: &Rat) -> Option<String> {
    if q.is_zero() {
        None
    } else if *q == Rat::from_integer(1.into()) {
        Some("x".into())
    } else {
        Some(format!("x^{}", fmt_exponent(q)))
    }
}

impl fmt::Display for PuiseuxSeries {
    /// `c_0 * x^(a/e) + ... + O(x^(N/e))`, exponents in `x` at both points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |q: Rat| match self.point {
            Point::Zero => q,
            Point::Infinity => -q,
        };
        let mut parts: Vec<String> = Vec::new();
        for (q, c) in self.terms() {
            let (neg, mag) = match c.as_rat() {
                Some(r) if r.is_negative() => (true, Coeff::from(-r.clone())),
                _ => (false, c.clone()),
            };
            let cs = match &mag {
                Coeff::Rat(r) => fmt_rat(r),
                _ => mag.to_string(),
            };
            let body = match fmt_power(&sign(q)) {
                None => cs,
                Some(pw) if mag.is_one() => pw,
                Some(pw) => format!("{} * {}", cs, pw),
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if let Some(o) = self.order() {
            let big_o = match fmt_power(&sign(o)) {
                None => "O(1)".to_string(),
                Some(pw) => format!("O({})", pw),
            };
            parts.push(if parts.is_empty() { big_o } else { format!("+ {}", big_o) });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" "))
    }
}
