//! Algebraic solutions of first-order autonomous equations `F(y, y') = 0`.
//!
//! A regular initial datum `(y0, p0)` is chosen, the power series solution
//! through it is computed, and a polynomial `Q(x, y)` of bounded degree
//! vanishing on the series is found by exact linear algebra. The candidate is
//! accepted only after the pseudo-remainder of `F` modulo `{Q, Q'}` is
//! checked to vanish.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::diff_ring::{derive, prem};
use crate::error::{Error, Result};
use crate::poly::coeff::{Coeff, Rat};
use crate::poly::factor::{factor_upoly_over, primitive_element};
use crate::poly::gcd::{gcd_any, primitive_part_in};
use crate::poly::upoly::UPoly;
use crate::poly::{Monomial, Poly, Var};
use crate::puiseux::{ode_series_solution, PuiseuxSeries};
use crate::Config;

/// Number of candidate values scanned for `y(0)`.
const DATUM_SCAN: usize = 64;

/// The minimal polynomial `Q(x, y)` of a non-constant algebraic solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub poly: Poly,
    /// Index of the unknown function `y`.
    pub index: usize,
    pub deg_x: u32,
    pub deg_y: u32,
}

impl MinimalPolynomial {
    fn new(poly: Poly, index: usize) -> MinimalPolynomial {
        let y = Var::jet(index, 0);
        MinimalPolynomial {
            deg_x: poly.degree(Var::X),
            deg_y: poly.degree(y),
            poly,
            index,
        }
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn unknown_index(f: &Poly) -> Result<usize> {
    let mut idx = f.jet_vars().into_iter().map(|v| v.index);
    let first = idx
        .next()
        .ok_or_else(|| Error::Invalid("expected a differential equation".into()))?;
    if idx.any(|i| i != first) || f.jet_vars().iter().any(|v| v.order > 1) {
        return Err(Error::Invalid("expected a first-order equation in one unknown".into()));
    }
    if f.contains_var(Var::X) {
        return Err(Error::Invalid("expected an autonomous equation".into()));
    }
    Ok(first as usize)
}

/// Rationals by increasing height: `0, 1, -1, 2, -2, 1/2, -1/2, 3, ...`.
fn datum_candidates(count: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero()];
    let mut h: i64 = 2;
    while out.len() < count {
        for d in 1..h {
            let n = h - d;
            if n.gcd(&d) != 1 {
                continue;
            }
            let r = Rat::new(n.into(), d.into());
            out.push(r.clone());
            out.push(-r);
        }
        h += 1;
    }
    out.truncate(count);
    out
}

/// A simple nonzero root `p0` of `F(y0, p)` at a point `y0` where `F(y0, .)`
/// is square-free of full degree.
fn initial_datum(f: &Poly, y: Var, yp: Var, cfg: &Config) -> Result<(Rat, Coeff, Poly)> {
    let field = f.field();
    let dyp = f.degree(yp);
    let mut fallback: Option<(Rat, UPoly)> = None;
    for y0 in datum_candidates(DATUM_SCAN) {
        let g = f.subst(y, &Poly::constant(Coeff::from(y0.clone())));
        let Some(p) = UPoly::from_poly(&g, yp) else {
            continue;
        };
        if p.degree() as u32 != dyp || p.coeff(0).is_zero() || !p.is_squarefree() {
            continue;
        }
        let mut factors: Vec<UPoly> = factor_upoly_over(&p, field.as_ref(), &cfg.limits)?
            .into_iter()
            .map(|(h, _)| h)
            .collect();
        factors.sort_by_key(|h| h.degree());
        let h = factors.remove(0);
        if h.degree() == 1 {
            let root = -(&h.coeff(0) / &h.coeff(1));
            return Ok((y0, root, f.clone()));
        }
        if fallback.as_ref().is_none_or(|(_, b)| h.degree() < b.degree()) {
            fallback = Some((y0, h));
        }
    }
    let Some((y0, h)) = fallback else {
        return Err(Error::InitialDatumCap("no regular initial datum found".into()));
    };
    let (_, image, beta) = primitive_element(field.as_ref(), &h, "a", &cfg.limits)
        .map_err(|e| Error::InitialDatumCap(e.to_string()))?;
    let g = if field.is_some() {
        f.map_coeffs(|c| c.embed(&image))
    } else {
        f.clone()
    };
    Ok((y0, beta, g))
}

/// Basis of the right null space of `rows` (each of length `ncols`).
fn nullspace(mut rows: Vec<Vec<Coeff>>, ncols: usize) -> Vec<Vec<Coeff>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        rows[r] = rows[r].iter().map(|a| a * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *a = &*a - &(&k * b);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Coeff::zero(); ncols];
        v[free] = Coeff::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A nonzero `Q` with `deg_x Q <= dx`, `deg_y Q <= dy` and `Q(x, s(x)) = 0`
/// below the truncation order of `s`.
fn ansatz(s: &PuiseuxSeries, y: Var, dx: u32, dy: u32) -> Result<Option<Poly>> {
    let n = s.order_units() as usize;
    let mut powers = vec![PuiseuxSeries::constant(Coeff::one(), s.point())];
    for j in 1..=dy as usize {
        let next = powers[j - 1].mul(s)?;
        powers.push(next);
    }
    let cols: Vec<(u32, u32)> = (0..=dy).flat_map(|j| (0..=dx).map(move |i| (i, j))).collect();
    let mut rows = Vec::with_capacity(n);
    for k in 0..n as i64 {
        let row = cols
            .iter()
            .map(|&(i, j)| {
                let e = k - i as i64;
                if e < 0 {
                    Coeff::zero()
                } else {
                    powers[j as usize]
                        .coeff(&Rat::from_integer(e.into()))
                        .expect("within truncation")
                }
            })
            .collect();
        rows.push(row);
    }
    let basis = nullspace(rows, cols.len());
    let Some(v) = basis.into_iter().next() else {
        return Ok(None);
    };
    let mut q = Poly::zero();
    for (c, &(i, j)) in v.into_iter().zip(cols.iter()) {
        let m = Monomial::from_pairs(vec![(Var::X, i), (y, j)]);
        q.add_term(m, c);
    }
    Ok(Some(q))
}

/// Chooses the shift representative: the coefficient of `x^(dx-1) y^e`
/// vanishes for the largest `e` with a nonzero `x^dx y^e` coefficient.
pub fn normalize_shift(q: &Poly, y: Var) -> Poly {
    let dx = q.degree(Var::X);
    if dx == 0 {
        return q.normalize();
    }
    let coeff = |i: u32, j: u32| -> Coeff {
        let m = Monomial::from_pairs(vec![(Var::X, i), (y, j)]);
        q.terms()
            .find(|(mm, _)| **mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    };
    let top = (0..=q.degree(y)).rev().find(|&e| !coeff(dx, e).is_zero());
    let Some(e) = top else {
        return q.normalize();
    };
    let c = -(&coeff(dx - 1, e) / &(&coeff(dx, e) * &Coeff::int(dx as i64)));
    let shifted = q.subst(Var::X, &(&Poly::x() + &Poly::constant(c)));
    shifted.normalize()
}

/// True when `Q` is a solution polynomial of `F`: the pseudo-remainder of
/// `F` modulo `{Q, Q'}` vanishes while the initial and separant of `Q` are
/// nonzero modulo `Q`.
pub fn verify_solution_polynomial(f: &Poly, q: &Poly) -> Result<bool> {
    let Some(l) = crate::diff_ring::leader(q) else {
        return Ok(false);
    };
    if l.order != 0 {
        return Ok(false);
    }
    let gs = vec![q.clone(), derive(q, 1)];
    let r = prem(f, &gs, true)?;
    if !r.remainder.is_zero() {
        return Ok(false);
    }
    let only_q = std::slice::from_ref(q);
    let init = crate::diff_ring::initial(q);
    let sep = crate::diff_ring::separant(q);
    Ok(!prem(&init, only_q, true)?.remainder.is_zero() && !prem(&sep, only_q, true)?.remainder.is_zero())
}

/// The minimal polynomial of a non-constant algebraic solution of the
/// irreducible equation `f(y, y') = 0`, or `None` when there is none.
pub fn algebraic_solve(f: &Poly, cfg: &Config) -> Result<Option<MinimalPolynomial>> {
    let t = unknown_index(f)?;
    let (y, yp) = (Var::jet(t, 0), Var::jet(t, 1));
    let dyp = f.degree(yp);
    if dyp == 0 {
        return Err(Error::Invalid("equation has no derivative".into()));
    }
    if f.subst(yp, &Poly::zero()).is_zero() {
        // f is a multiple of y': only constant solutions
        return Ok(None);
    }
    let dy = f.degree(y);
    let (y0, p0, g) = initial_datum(f, y, yp, cfg)?;
    let n = ((dyp + 1) * (dy + dyp + 1) + 8) as usize;
    let s = ode_series_solution(&g, &Coeff::from(y0), &p0, n)?;
    for ey in 1..=dy + dyp {
        let Some(q) = ansatz(&s, y, dyp, ey)? else {
            continue;
        };
        let q = primitive_part_in(&q, y);
        let q = normalize_shift(&q, y);
        if q.degree(Var::X) != dyp || !verify_solution_polynomial(&g, &q)? {
            return Ok(None);
        }
        return Ok(Some(MinimalPolynomial::new(q, t)));
    }
    Ok(None)
}

/// Square-free polynomial in `y` whose roots are the constant solutions;
/// zero when every constant is a solution.
pub fn constant_solutions(f: &Poly) -> Result<Poly> {
    let t = unknown_index(f)?;
    let (y, yp) = (Var::jet(t, 0), Var::jet(t, 1));
    let c = f.subst(yp, &Poly::zero());
    if c.is_zero() {
        return Ok(Poly::zero());
    }
    if c.degree(y) == 0 {
        return Ok(Poly::one());
    }
    let g = gcd_any(&c, &c.diff(y));
    Ok(c.div_exact(&g).unwrap().normalize())
}

/// The constant `c` with `q2(x, y) = q1(x + c, y)` up to a unit, if any.
pub fn shift_equivalent(q1: &Poly, q2: &Poly) -> Option<Coeff> {
    let (a, b) = (q1.normalize(), q2.normalize());
    let mut vars1 = a.vars();
    let mut vars2 = b.vars();
    vars1.remove(&Var::X);
    vars2.remove(&Var::X);
    if vars1 != vars2 || a.degree(Var::X) != b.degree(Var::X) {
        return None;
    }
    let d = a.degree(Var::X);
    if d == 0 {
        return (a == b).then(Coeff::zero);
    }
    let split = |p: &Poly| -> BTreeMap<Monomial, Vec<Coeff>> {
        let mut out: BTreeMap<Monomial, Vec<Coeff>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (rest, e) = m.split(Var::X);
            let v = out.entry(rest).or_insert_with(|| vec![Coeff::zero(); d as usize + 1]);
            v[e as usize] = c.clone();
        }
        out
    };
    let (sa, sb) = (split(&a), split(&b));
    let (rest, ca) = sa.iter().find(|(_, v)| !v[d as usize].is_zero())?;
    let cb = sb.get(rest)?;
    if cb[d as usize].is_zero() {
        return None;
    }
    let lambda = &cb[d as usize] / &ca[d as usize];
    let c = &(&(&cb[d as usize - 1] / &lambda) - &ca[d as usize - 1]) / &(&ca[d as usize] * &Coeff::int(d as i64));
    let shifted = a.subst(Var::X, &(&Poly::x() + &Poly::constant(c.clone())));
    (shifted.normalize() == b).then_some(c)
}

/// The degree relations every minimal polynomial of `f` satisfies.
pub fn degrees_consistent(f: &Poly, q: &MinimalPolynomial) -> bool {
    let (y, yp) = (Var::jet(q.index, 0), Var::jet(q.index, 1));
    q.deg_x == f.degree(yp) && q.deg_y <= f.degree(y) + f.degree(yp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(k: usize) -> Poly {
        Poly::jet(0, k)
    }

    #[test]
    fn candidates_by_height() {
        let c = datum_candidates(7);
        let s: Vec<String> = c.iter().map(|r| r.to_string()).collect();
        assert_eq!(s, vec!["0", "1", "-1", "2", "-2", "1/2", "-1/2"]);
    }

    #[test]
    fn linear_equation() {
        let f = &y(1) - &Poly::one();
        let q = algebraic_solve(&f, &Config::default()).unwrap().unwrap();
        assert_eq!(q.poly, (&y(0) - &Poly::x()).normalize());
    }

    #[test]
    fn constant_solution_polynomials() {
        let f = &(&Poly::int(8) * &y(1).pow(3)) - &(&Poly::int(27) * &y(0));
        assert_eq!(constant_solutions(&f).unwrap(), y(0));
        let f = &(&y(0) * &y(1)) - &Poly::one();
        assert!(constant_solutions(&f).unwrap().is_one());
        let f = &(&y(1).pow(2) - &y(0).pow(2)) + &Poly::one();
        assert_eq!(constant_solutions(&f).unwrap(), (&y(0).pow(2) - &Poly::one()).normalize());
    }

    #[test]
    fn square_root_solution() {
        let f = &(&y(0) * &y(1)) - &Poly::one();
        let q = algebraic_solve(&f, &Config::default()).unwrap().unwrap();
        let expected = (&y(0).pow(2) - &(&Poly::int(2) * &Poly::x())).normalize();
        assert_eq!(q.poly, expected);
        assert!(degrees_consistent(&f, &q));
    }

    #[test]
    fn cubic_equation() {
        let f = &(&Poly::int(8) * &y(1).pow(3)) - &(&Poly::int(27) * &y(0));
        let q = algebraic_solve(&f, &Config::default()).unwrap().unwrap();
        assert_eq!(q.poly, (&y(0).pow(2) - &Poly::x().pow(3)).normalize());
        assert_eq!((q.deg_x, q.deg_y), (3, 2));
    }

    #[test]
    fn transcendental_solutions() {
        let f = &y(1) - &y(0);
        assert_eq!(algebraic_solve(&f, &Config::default()).unwrap(), None);
        let f = &(&y(1).pow(2) - &y(0).pow(2)) + &Poly::one();
        assert_eq!(algebraic_solve(&f, &Config::default()).unwrap(), None);
    }

    #[test]
    fn shifts() {
        let q1 = (&y(0).pow(2) - &(&Poly::int(2) * &Poly::x())).normalize();
        let q2 = (&q1 - &Poly::int(2)).normalize();
        assert_eq!(shift_equivalent(&q1, &q2), Some(Coeff::one()));
        assert_eq!(shift_equivalent(&q2, &q1), Some(Coeff::int(-1)));
        let q3 = (&y(0).pow(2) - &Poly::x().pow(3)).normalize();
        assert_eq!(shift_equivalent(&q1, &q3), None);
        assert!(verify_solution_polynomial(&(&(&y(0) * &y(1)) - &Poly::one()), &q2).unwrap());
    }
}
