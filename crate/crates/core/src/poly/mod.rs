//! Exact sparse multivariate polynomials over [`Coeff`].
//!
//! Variables are the distinguished independent variable `x` and jet
//! variables `y_j^(k)`. The variable order is the orderly ranking with `x`
//! below every jet variable; terms are kept in the lexicographic order it
//! induces.

pub mod coeff;
pub mod division;
pub mod factor;
pub mod gcd;
pub mod modular;
pub mod upoly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use coeff::{rat, ratio, Coeff, NumberField, Rat};

/// A jet variable `y_index^(order)`; `index` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    pub index: u16,
    pub order: u16,
}

impl JetVar {
    pub fn new(index: usize, order: usize) -> JetVar {
        JetVar {
            index: index as u16,
            order: order as u16,
        }
    }

    pub fn derivative(self, times: usize) -> JetVar {
        JetVar::new(self.index as usize, self.order as usize + times)
    }
}

/// A polynomial variable. `X` ranks below every jet variable and the derived
/// order on jets is the orderly ranking `y1 < y1' < ... < y2 < y2' < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Jet(JetVar),
}

impl Var {
    pub fn jet(index: usize, order: usize) -> Var {
        Var::Jet(JetVar::new(index, order))
    }

    pub fn as_jet(self) -> Option<JetVar> {
        match self {
            Var::Jet(j) => Some(j),
            Var::X => None,
        }
    }
}

/// Power product, stored by decreasing variable with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Monomial {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|p| p.0 == v)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 > v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes `v` from the monomial, returning its exponent.
    pub fn split(&self, v: Var) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|p| {
                if p.0 == v {
                    e = p.1;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let mut i = 0;
        loop {
            match (self.0.get(i), other.0.get(i)) {
                (Some(a), Some(b)) => {
                    if a.0 != b.0 {
                        return a.0.cmp(&b.0);
                    }
                    if a.1 != b.1 {
                        return a.1.cmp(&b.1);
                    }
                }
                (Some(_), None) => return Greater,
                (None, Some(_)) => return Less,
                (None, None) => return Equal,
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Coeff::int(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Coeff::one(), Monomial::var(v, 1))
    }

    pub fn x() -> Poly {
        Poly::var(Var::X)
    }

    pub fn jet(index: usize, order: usize) -> Poly {
        Poly::var(Var::jet(index, order))
    }

    pub fn term(c: Coeff, m: Monomial) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True when no variable occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            return Some(Coeff::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Coeff {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|p| p.0))
            .collect()
    }

    pub fn jet_vars(&self) -> BTreeSet<JetVar> {
        self.vars().into_iter().filter_map(Var::as_jet).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.degree(v) > 0)
    }

    pub fn has_jets(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.0.iter().any(|p| matches!(p.0, Var::Jet(_))))
    }

    /// Highest-ranked variable occurring.
    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.0.first().map(|p| p.0)).max()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.degree(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Leading term in the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.leading_term()
            .map(|t| t.1.clone())
            .unwrap_or_else(Coeff::zero)
    }

    /// Coefficient of `v^d`, as a polynomial free of `v`.
    pub fn coeff_in(&self, v: Var, d: u32) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            if e == d {
                p.terms.insert(rest, c.clone());
            }
        }
        p
    }

    /// All coefficients with respect to `v`, indexed by degree.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let mv = Monomial::var(v, e as u32);
            for (m, k) in &c.terms {
                p.add_term(m.mul(&mv), k.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `v` (the initial when `v` is the
    /// leader).
    pub fn lc_in(&self, v: Var) -> Poly {
        self.coeff_in(v, self.degree(v))
    }

    /// `self` with its top-degree part in `v` removed.
    pub fn reductum_in(&self, v: Var) -> Poly {
        let d = self.degree(v);
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(v) != d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
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

    /// Partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            if e > 0 {
                let nm = rest.mul(&Monomial::var(v, e - 1));
                p.add_term(nm, c * &Coeff::int(e as i64));
            }
        }
        p
    }

    /// Substitutes `v := q`.
    pub fn subst(&self, v: Var, q: &Poly) -> Poly {
        let coeffs = self.coeffs_in(v);
        // Horner in v
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Simultaneous substitution of several variables.
    pub fn subst_many(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut keep = Vec::new();
            for &(v, e) in &m.0 {
                if let Some(q) = map.get(&v) {
                    let pw = cache.entry((v, e)).or_insert_with(|| q.pow(e)).clone();
                    t = &t * &pw;
                } else {
                    keep.push((v, e));
                }
            }
            t = t.mul_monomial(&Monomial(keep));
            out = &out + &t;
        }
        out
    }

    pub fn eval(&self, v: Var, c: &Coeff) -> Poly {
        self.subst(v, &Poly::constant(c.clone()))
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renames variables through `f`, which must be injective on the support.
    pub fn rename<F: Fn(Var) -> Var>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m.0.iter().map(|&(v, e)| (f(v), e)).collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let dc_inv = dc.inv();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&dm)?;
            let qc = &c * &dc_inv;
            let t = Poly::term(qc, qm);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// The number field of the coefficients, if any is algebraic.
    pub fn field(&self) -> Option<std::sync::Arc<NumberField>> {
        self.terms.values().find_map(|c| c.field().cloned())
    }

    /// Splits `self = unit * normalized` where the normalized form has
    /// integer coprime coefficients and positive leading coefficient
    /// (rational case) or leading coefficient one (algebraic case).
    pub fn normalize_with_unit(&self) -> (Coeff, Poly) {
        if self.is_zero() {
            return (Coeff::one(), Poly::zero());
        }
        if !self.is_rational() {
            let lc = self.leading_coeff();
            return (lc.clone(), self.scale(&lc.inv()));
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let r = c.as_rat().unwrap();
            den = den.lcm(r.denom());
            num = num.gcd(r.numer());
        }
        let mut unit = Rat::new(num, den);
        if self.leading_coeff().is_negative() {
            unit = -unit;
        }
        let u = Coeff::Rat(unit);
        (u.clone(), self.scale(&u.inv()))
    }

    pub fn normalize(&self) -> Poly {
        self.normalize_with_unit().1
    }

    /// Integer content of a rational polynomial made primitive, sign kept.
    pub fn primitive_rational(&self) -> Poly {
        let (u, p) = self.normalize_with_unit();
        if u.is_negative() {
            -&p
        } else {
            p
        }
    }

    pub fn display<'a>(&'a self, names: &'a dyn Fn(Var) -> String) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// Default variable names: `x`, and `y1, y2, ...` with apostrophes.
pub fn default_var_name(v: Var) -> String {
    match v {
        Var::X => "x".to_string(),
        Var::Jet(j) => jet_name(&format!("y{}", j.index + 1), j.order as usize),
    }
}

/// Prints a derivative with apostrophes up to order 3, caret form above.
pub fn jet_name(base: &str, order: usize) -> String {
    if order <= 3 {
        format!("{}{}", base, "'".repeat(order))
    } else {
        format!("{}^({})", base, order)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a dyn Fn(Var) -> String,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            let mut factors: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    let n = (self.names)(v);
                    if e == 1 {
                        n
                    } else {
                        format!("{}^{}", n, e)
                    }
                })
                .collect();
            let (neg, mag) = match c {
                Coeff::Rat(r) if r.is_negative() => (true, Coeff::Rat(-r)),
                _ => (false, c.clone()),
            };
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            let body = factors.join("*");
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&default_var_name))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
