//! Exact coefficients: rationals and elements of one simple algebraic
//! extension `Q(a) = Q[t]/(m(t))` with `m` monic and irreducible.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A simple algebraic extension of `Q`, given by the monic minimal
/// polynomial of its generator (coefficients low to high, last one is 1).
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: Vec<Rat>,
    name: String,
}

impl NumberField {
    /// Builds the field `Q[t]/(m)`. The caller guarantees irreducibility;
    /// `m` is made monic here.
    pub fn new(minpoly: Vec<Rat>, name: &str) -> Arc<NumberField> {
        let mut m = minpoly;
        while m.last().is_some_and(|c| c.is_zero()) {
            m.pop();
        }
        assert!(m.len() >= 2, "minimal polynomial must have positive degree");
        let lc = m.last().unwrap().clone();
        let m = m.into_iter().map(|c| c / &lc).collect();
        Arc::new(NumberField {
            minpoly: m,
            name: name.to_string(),
        })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rat] {
        &self.minpoly
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The generator `a` as a coefficient.
    pub fn generator(self: &Arc<Self>) -> Coeff {
        Coeff::from_alg(self.clone(), vec![Rat::zero(), Rat::one()])
    }

    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        let d = self.degree();
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let off = v.len() - d;
            for (i, m) in self.minpoly[..d].iter().enumerate() {
                v[off + i] -= &top * m;
            }
        }
        trim(&mut v);
        v
    }
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exact coefficient. An extension element whose representative has
/// degree zero is always stored as `Rat`.
#[derive(Clone, Debug)]
pub enum Coeff {
    Rat(Rat),
    Alg(Arc<NumberField>, Vec<Rat>),
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::Rat(Rat::zero())
    }

    pub fn one() -> Coeff {
        Coeff::Rat(Rat::one())
    }

    pub fn int(n: i64) -> Coeff {
        Coeff::Rat(rat(n))
    }

    pub fn from_alg(field: Arc<NumberField>, v: Vec<Rat>) -> Coeff {
        let mut v = field.reduce(v);
        match v.len() {
            0 => Coeff::zero(),
            1 => Coeff::Rat(v.pop().unwrap()),
            _ => Coeff::Alg(field, v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Rat(r) if r.is_one())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Coeff::Rat(r) => Some(r),
            Coeff::Alg(..) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Coeff::Rat(_))
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Coeff::Rat(_) => None,
            Coeff::Alg(f, _) => Some(f),
        }
    }

    /// Representative as a polynomial in the generator, low to high.
    pub fn repr(&self) -> Vec<Rat> {
        match self {
            Coeff::Rat(r) if r.is_zero() => vec![],
            Coeff::Rat(r) => vec![r.clone()],
            Coeff::Alg(_, v) => v.clone(),
        }
    }

    /// Negative rational; extension elements are never "negative".
    pub fn is_negative(&self) -> bool {
        matches!(self, Coeff::Rat(r) if r.is_negative())
    }

    pub fn inv(&self) -> Coeff {
        match self {
            Coeff::Rat(r) => {
                assert!(!r.is_zero(), "division by zero coefficient");
                Coeff::Rat(r.recip())
            }
            Coeff::Alg(f, v) => {
                let (g, s, _) = ext_gcd(v, f.minpoly());
                // g is a nonzero constant since m is irreducible
                let c = g[0].recip();
                Coeff::from_alg(f.clone(), s.into_iter().map(|x| x * &c).collect())
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = Coeff::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rewrites the element into another field through an embedding that
    /// sends the generator of `self`'s field to `image`.
    pub fn embed(&self, image: &Coeff) -> Coeff {
        match self {
            Coeff::Rat(_) => self.clone(),
            Coeff::Alg(_, v) => {
                let mut acc = Coeff::zero();
                for c in v.iter().rev() {
                    acc = &(&acc * image) + &Coeff::Rat(c.clone());
                }
                acc
            }
        }
    }

    fn binop(a: &Coeff, b: &Coeff, op: fn(&[Rat], &[Rat], &NumberField) -> Vec<Rat>) -> Coeff {
        let field = match (a, b) {
            (Coeff::Alg(f, _), Coeff::Alg(g, _)) => {
                assert!(same_field(f, g), "mixed number fields");
                f.clone()
            }
            (Coeff::Alg(f, _), _) | (_, Coeff::Alg(f, _)) => f.clone(),
            _ => unreachable!(),
        };
        let r = op(&a.repr(), &b.repr(), &field);
        Coeff::from_alg(field, r)
    }
}

fn add_vec(a: &[Rat], b: &[Rat], _: &NumberField) -> Vec<Rat> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

fn sub_vec(a: &[Rat], b: &[Rat], f: &NumberField) -> Vec<Rat> {
    let nb: Vec<Rat> = b.iter().map(|x| -x).collect();
    add_vec(a, &nb, f)
}

fn mul_vec(a: &[Rat], b: &[Rat], f: &NumberField) -> Vec<Rat> {
    f.reduce(mul_dense(a, b))
}

pub(crate) fn mul_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// Dense division with remainder over `Q`.
pub(crate) fn divrem_dense(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / &lb;
        let off = r.len() - b.len();
        for (i, y) in b.iter().enumerate() {
            r[off + i] -= &c * y;
        }
        q[off] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Extended Euclid over `Q[t]`: returns `(g, s, t)` with `s a + t b = g`.
pub(crate) fn ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rat::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem_dense(&r0, &r1);
        let s2 = sub_dense(&s0, &mul_dense(&q, &s1));
        let t2 = sub_dense(&t0, &mul_dense(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

fn sub_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut r: Vec<Rat> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut r);
    r
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Coeff) -> bool {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => a == b,
            (Coeff::Alg(f, a), Coeff::Alg(g, b)) => same_field(f, g) && a == b,
            _ => false,
        }
    }
}

impl Eq for Coeff {}

impl Hash for Coeff {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr().hash(state);
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            _ => Coeff::binop(self, rhs, add_vec),
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a - b),
            _ => Coeff::binop(self, rhs, sub_vec),
        }
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            _ => Coeff::binop(self, rhs, mul_vec),
        }
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Coeff) -> Coeff {
        self * &rhs.inv()
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Alg(f, v) => Coeff::Alg(f.clone(), v.iter().map(|x| -x).collect()),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::int(n)
    }
}

impl From<Rat> for Coeff {
    fn from(r: Rat) -> Coeff {
        Coeff::Rat(r)
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Coeff::Alg(field, v) => {
                let mut parts = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let mon = match i {
                        0 => String::new(),
                        1 => field.name().to_string(),
                        _ => format!("{}^{}", field.name(), i),
                    };
                    parts.push(if mon.is_empty() {
                        fmt_rat(c)
                    } else if c.is_one() {
                        mon
                    } else {
                        format!("{}*{}", fmt_rat(c), mon)
                    });
                }
                write!(f, "({})", parts.join(" + ").replace("+ -", "- "))
            }
        }
    }
}
