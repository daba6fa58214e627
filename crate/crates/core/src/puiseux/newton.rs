//! Newton polygon expansion of the roots of `H(x, y) = 0` as Puiseux series.
//!
//! Each step takes an edge of the lower Newton polygon with slope `-p/q`,
//! factors its characteristic polynomial over the current coefficient field
//! and substitutes `x = s^q`, `y = s^p (c + y')` for one root `c` of every
//! irreducible factor. One series is produced per conjugacy class; its
//! `class_size` is the number of distinct conjugate series it stands for.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::series::{Point, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::poly::coeff::{Coeff, NumberField, Rat};
use crate::poly::factor::{factor_upoly_over, primitive_element, Limits};
use crate::poly::gcd::gcd_any;
use crate::poly::upoly::UPoly;
use crate::poly::{Poly, Var};

/// A root of `H` up to conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub series: PuiseuxSeries,
    pub class_size: usize,
    /// Image of the generator of the base field in the field of `series`.
    pub base_image: Option<Coeff>,
}

/// Terms `a * s^i * y^j` keyed by `(j, i)`.
type Bi = BTreeMap<(u32, i64), Coeff>;

struct Ctx<'a> {
    order: i64,
    point: Point,
    limits: &'a Limits,
    out: Vec<Branch>,
}

#[derive(Clone)]
struct State {
    bi: Bi,
    field: Option<Arc<NumberField>>,
    image: Option<Coeff>,
    terms: Vec<(Rat, Coeff)>,
    gamma: Rat,
    ram: u32,
    class: usize,
    first: bool,
    truncated: bool,
}

fn normalize(bi: Bi) -> Bi {
    let shift = bi.keys().map(|&(_, i)| i).min().unwrap_or(0);
    bi.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((j, i), c)| ((j, i - shift), c))
        .collect()
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut r = Rat::one();
    for t in 0..k {
        r = r * Rat::from_integer((n - t).into()) / Rat::from_integer((t + 1).into());
    }
    r
}

/// `bi(s^q, s^p (c + y))`, divided by the lowest power of `s`.
fn substitute(bi: &Bi, p: i64, q: i64, c: &Coeff) -> Bi {
    let mut out = Bi::new();
    for (&(j, i), a) in bi {
        let e = i * q + j as i64 * p;
        let mut cpow = Coeff::one();
        let mut pows = vec![cpow.clone()];
        for _ in 0..j {
            cpow = &cpow * c;
            pows.push(cpow.clone());
        }
        for k in 0..=j {
            let t = &(a * &pows[(j - k) as usize]) * &Coeff::from(binomial(j, k));
            let slot = out.entry((k, e)).or_insert_with(Coeff::zero);
            *slot = &*slot + &t;
        }
    }
    normalize(out)
}

/// Lower convex hull of the points `(j, min i)`, as consecutive vertices.
fn lower_hull(bi: &Bi) -> Vec<(i64, i64)> {
    let mut pts: BTreeMap<i64, i64> = BTreeMap::new();
    for &(j, i) in bi.keys() {
        let e = pts.entry(j as i64).or_insert(i);
        *e = (*e).min(i);
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for (j, i) in pts {
        while hull.len() >= 2 {
            let (j1, i1) = hull[hull.len() - 2];
            let (j2, i2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            if (i2 - i1) * (j - j1) >= (i - i1) * (j2 - j1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((j, i));
    }
    hull
}

fn embed_all(st: &mut State, image: &Coeff) {
    st.bi = st.bi.iter().map(|(k, c)| (*k, c.embed(image))).collect();
    st.terms = st.terms.iter().map(|(q, c)| (q.clone(), c.embed(image))).collect();
}

impl Ctx<'_> {
    fn emit(&mut self, st: &State, exact: bool) {
        let ram = st
            .terms
            .iter()
            .fold(st.ram as i64, |acc, (q, _)| acc.lcm(&q.denom().try_into().unwrap()));
        let mut coeffs: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (q, c) in &st.terms {
            let n: i64 = (q * Rat::from_integer(ram.into())).to_integer().try_into().unwrap();
            coeffs.insert(n, c.clone());
        }
        let start = coeffs.keys().next().copied().unwrap_or(0);
        let end = coeffs.keys().next_back().copied().unwrap_or(-1);
        let dense = (start..=end)
            .map(|n| coeffs.get(&n).cloned().unwrap_or_else(Coeff::zero))
            .collect();
        let order = if exact {
            super::series::EXACT
        } else {
            self.order * ram
        };
        self.out.push(Branch {
            series: PuiseuxSeries::new(self.point, ram as u32, start, dense, order),
            class_size: st.class,
            base_image: st.image.clone(),
        });
    }

    fn expand(&mut self, mut st: State) -> Result<()> {
        if !st.first && st.gamma >= Rat::from_integer(self.order.into()) {
            self.emit(&st, false);
            return Ok(());
        }
        // a simple root: terms beyond the remaining precision cannot reach
        // the coefficients still to be computed
        if !st.first && st.bi.contains_key(&(1, 0)) {
            let room = (&(Rat::from_integer(self.order.into()) - &st.gamma) * Rat::from_integer(st.ram.into())).ceil();
            let room: i64 = room.to_integer().try_into().unwrap_or(i64::MAX);
            let before = st.bi.len();
            st.bi.retain(|&(_, i), _| i <= room);
            st.truncated |= st.bi.len() < before;
        }
        // y' = 0 is a root: the series terminates
        if !st.bi.keys().any(|&(j, _)| j == 0) {
            if st.truncated {
                self.emit(&st, false);
                return Ok(());
            }
            self.emit(&st, true);
            st.bi = st.bi.into_iter().map(|((j, i), c)| ((j - 1, i), c)).collect();
            st.bi = normalize(st.bi);
        }
        let hull = lower_hull(&st.bi);
        for w in hull.windows(2) {
            let ((j1, i1), (j2, i2)) = (w[0], w[1]);
            let g = Rat::new((i1 - i2).into(), (j2 - j1).into());
            if !st.first && !g.is_positive() {
                continue;
            }
            let p: i64 = g.numer().try_into().unwrap();
            let q: i64 = g.denom().try_into().unwrap();
            // characteristic polynomial: terms on the supporting line
            let mut phi = vec![Coeff::zero(); (j2 - j1) as usize + 1];
            for (&(j, i), a) in &st.bi {
                let j = j as i64;
                if j >= j1 && j <= j2 && (i - i1) * q + (j - j1) * p == 0 {
                    phi[(j - j1) as usize] = a.clone();
                }
            }
            let phi = UPoly::new(phi);
            for (h, _mult) in factor_upoly_over(&phi, st.field.as_ref(), self.limits)? {
                let mut next = st.clone();
                let c = if h.degree() == 1 {
                    -(&h.coeff(0) / &h.coeff(1))
                } else {
                    let (nf, image, beta) = primitive_element(st.field.as_ref(), &h, "a", self.limits)?;
                    if st.field.is_some() {
                        embed_all(&mut next, &image);
                        next.image = next.image.as_ref().map(|g| g.embed(&image));
                    }
                    next.field = Some(nf);
                    beta
                };
                next.class *= h.degree();
                next.bi = substitute(&next.bi, p, q, &c);
                let step = Rat::new(p.into(), (st.ram as i64 * q).into());
                next.gamma = if st.first { step.clone() } else { &st.gamma + &step };
                next.ram = st.ram * q as u32;
                next.terms.push((next.gamma.clone(), c));
                next.first = false;
                self.expand(next)?;
            }
        }
        Ok(())
    }
}

/// Square-free part in `y`, keeping the content in `x`-free form.
fn squarefree_in(h: &Poly, y: Var) -> Poly {
    let g = gcd_any(h, &h.diff(y));
    if g.degree(y) == 0 {
        h.clone()
    } else {
        h.div_exact(&g).unwrap()
    }
}

/// All roots of `h(x, y) = 0` in `y` as Puiseux series at `point`, exact
/// below `x^order` (in the local parameter `1/x` at infinity). Repeated
/// factors of `h` are ignored, so the class sizes add up to the degree of
/// the square-free part.
pub fn newton_expand(h: &Poly, y: Var, point: Point, order: i64, limits: &Limits) -> Result<Vec<Branch>> {
    newton_expand_over(h, y, point, order, h.field(), limits)
}

/// As [`newton_expand`], with coefficients taken in `field`, which must
/// contain those of `h`. Each branch records where the generator of `field`
/// is sent.
pub fn newton_expand_over(
    h: &Poly,
    y: Var,
    point: Point,
    order: i64,
    field: Option<Arc<NumberField>>,
    limits: &Limits,
) -> Result<Vec<Branch>> {
    if h.is_zero() || h.degree(y) == 0 {
        return Err(Error::Invalid("expansion needs positive degree in y".into()));
    }
    if h.vars().into_iter().any(|v| v != Var::X && v != y) {
        return Err(Error::Invalid("expansion needs a polynomial in x and y".into()));
    }
    let h = squarefree_in(h, y);
    let dx = h.degree(Var::X) as i64;
    let mut bi = Bi::new();
    for (m, c) in h.terms() {
        let i = m.degree(Var::X) as i64;
        let i = match point {
            Point::Zero => i,
            Point::Infinity => dx - i,
        };
        bi.insert((m.degree(y), i), c.clone());
    }
    let mut ctx = Ctx {
        order,
        point,
        limits,
        out: Vec::new(),
    };
    ctx.expand(State {
        bi: normalize(bi),
        image: field.as_ref().map(|f| f.generator()),
        field,
        terms: Vec::new(),
        gamma: Rat::zero(),
        ram: 1,
        class: 1,
        first: true,
        truncated: false,
    })?;
    Ok(ctx.out)
}
