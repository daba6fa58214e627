//! Determinants, subresultants, resultants and gcds.

use std::collections::BTreeMap;

use super::division::prem_full;
use super::{Monomial, Poly, Var};
use crate::error::{Error, Result};

/// Fraction-free Gaussian elimination; every division is exact.
pub fn det_bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss step is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The `j`-th subresultant of `a` and `b` in `v`, as the determinantal
/// polynomial of the truncated Sylvester matrix. Requires
/// `j < min(deg_v a, deg_v b)`.
pub fn subresultant(a: &Poly, b: &Poly, v: Var, j: u32) -> Poly {
    let m = a.degree(v);
    let n = b.degree(v);
    assert!(j < m.min(n), "subresultant index out of range");
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let top = m + n - j - 1;
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    let mut push = |coeffs: &[Poly], shift: u32| {
        // coefficients of coeffs * v^shift by degree 0..=top
        let mut row = vec![Poly::zero(); top as usize + 1];
        for (d, c) in coeffs.iter().enumerate() {
            row[d + shift as usize] = c.clone();
        }
        rows.push(row);
    };
    for i in 0..(n - j) {
        push(&ca, n - j - 1 - i);
    }
    for i in 0..(m - j) {
        push(&cb, m - j - 1 - i);
    }
    let size = (m + n - 2 * j) as usize;
    let mat: Vec<Vec<Poly>> = rows
        .into_iter()
        .map(|row| {
            let mut out: Vec<Poly> = (0..size - 1)
                .map(|c| row[top as usize - c].clone())
                .collect();
            let tail = Poly::from_coeffs_in(v, &row[..=j as usize]);
            out.push(tail);
            out
        })
        .collect();
    det_bareiss(mat)
}

/// Subresultants `S_0, ..., S_n` of `a` and `b` in `v`, where
/// `deg_v a >= deg_v b = n >= 1`. The last entry is
/// `init(b)^(deg a - n - 1) * b` (just `b` when the degrees agree).
pub fn subresultant_chain(a: &Poly, b: &Poly, v: Var) -> Vec<Poly> {
    let m = a.degree(v);
    let n = b.degree(v);
    assert!(m >= n && n >= 1, "subresultant chain needs deg a >= deg b >= 1");
    let mut chain = vec![Poly::zero(); n as usize + 1];
    chain[n as usize] = if m > n {
        &b.lc_in(v).pow(m - n - 1) * b
    } else {
        b.clone()
    };
    let sign = |p: Poly, odd: bool| if odd { -&p } else { p };
    let mut s = b.lc_in(v).pow(m - n);
    let mut prev = b.clone();
    // prem(a, -b) carries the sign of the determinantal definition
    let mut cur = sign(prem_full(a, b, v).expect("b has positive degree"), (m - n) % 2 == 0);
    loop {
        let d = prev.degree(v);
        if cur.is_zero() {
            return chain;
        }
        let e = cur.degree(v);
        chain[d as usize - 1] = cur.clone();
        let delta = d - e;
        let similar = if delta > 1 {
            let c = &cur.lc_in(v).pow(delta - 1) * &cur;
            let c = c.div_exact(&s.pow(delta - 1)).expect("Lazard division is exact");
            chain[e as usize] = c.clone();
            c
        } else {
            cur.clone()
        };
        if e == 0 {
            return chain;
        }
        let r = sign(prem_full(&prev, &cur, v).expect("positive degree"), delta % 2 == 0);
        let next = r.div_exact(&(&s.pow(delta) * &prev.lc_in(v))).expect("subresultant division is exact");
        prev = similar;
        cur = next;
        s = prev.lc_in(v);
    }
}

/// Principal subresultant coefficient: the coefficient of `v^j` in `S_j`.
pub fn principal_coeff(s: &Poly, v: Var, j: u32) -> Poly {
    s.coeff_in(v, j)
}

/// Sylvester resultant in `v`.
pub fn resultant(a: &Poly, b: &Poly, v: Var) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero());
    }
    let m = a.degree(v);
    let n = b.degree(v);
    if m == 0 {
        return Ok(a.pow(n));
    }
    if n == 0 {
        return Ok(b.pow(m));
    }
    if m >= n {
        Ok(subresultant_chain(a, b, v).swap_remove(0))
    } else {
        let r = subresultant_chain(b, a, v).swap_remove(0);
        Ok(if (m * n) % 2 == 1 { -&r } else { r })
    }
}

/// `res_v(a, da/dv)`, with no sign or initial normalization.
pub fn discriminant(a: &Poly, v: Var) -> Result<Poly> {
    resultant(a, &a.diff(v), v)
}

/// Gcd of the coefficients of `p` with respect to `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() {
            c.normalize()
        } else {
            gcd_any(&g, &c)
        };
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// `p` divided by its content with respect to `v`.
pub fn primitive_part_in(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalize()
}

/// Gcd over the full polynomial ring, normalized. The variable selects the
/// main variable of the remainder sequence.
pub fn gcd(a: &Poly, b: &Poly, v: Var) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(gcd_with_main(a, b, Some(v)))
}

/// Gcd with the main variable chosen as the highest occurring one. The gcd
/// of two zero polynomials is zero here.
pub fn gcd_any(a: &Poly, b: &Poly) -> Poly {
    gcd_with_main(a, b, None)
}

fn gcd_with_main(a: &Poly, b: &Poly, main: Option<Var>) -> Poly {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let v = match main {
        Some(v) if a.contains_var(v) || b.contains_var(v) => v,
        _ => a.max_var().max(b.max_var()).unwrap(),
    };
    if !a.contains_var(v) {
        return gcd_any(a, &content_in(b, v));
    }
    if !b.contains_var(v) {
        return gcd_any(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_any(&ca, &cb);
    let pa = a.div_exact(&ca).unwrap();
    let pb = b.div_exact(&cb).unwrap();
    if coprime_image(&pa, &pb, v) {
        return c;
    }
    let g = subresultant_prs_gcd(&pa, &pb, v);
    (&c * &primitive_part_in(&g, v)).normalize()
}

/// Sends every variable except `v` to a small integer where both leading
/// coefficients survive. A univariate image gcd of degree zero bounds the
/// true gcd to degree zero in `v`.
fn coprime_image(a: &Poly, b: &Poly, v: Var) -> bool {
    let others: Vec<Var> = a.vars().union(&b.vars()).copied().filter(|&w| w != v).collect();
    if others.is_empty() {
        return false;
    }
    for attempt in 0..3i64 {
        let point: BTreeMap<Var, Poly> = others
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, Poly::int((attempt * 7 + 5 * i as i64 + 2) % 13 - 6)))
            .collect();
        let (ia, ib) = (a.subst_many(&point), b.subst_many(&point));
        if ia.degree(v) != a.degree(v) || ib.degree(v) != b.degree(v) {
            continue;
        }
        return subresultant_prs_gcd(&ia, &ib, v).degree(v) == 0;
    }
    false
}

/// Last nonzero element of the subresultant remainder sequence of two
/// primitive polynomials; a constant-in-`v` result means coprime.
fn subresultant_prs_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let d = a.degree(v) - b.degree(v);
        let r = prem_full(&a, &b, v).expect("b has positive degree");
        if r.is_zero() {
            return b;
        }
        if r.degree(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = r
            .div_exact(&(&g * &h.pow(d)))
            .expect("subresultant division is exact");
        g = a.lc_in(v);
        h = if d == 0 {
            h
        } else {
            g.pow(d).div_exact(&h.pow(d - 1)).expect("exact")
        };
    }
}

/// Least common multiple, normalized.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd_any(a, b);
    (a * b).div_exact(&g).unwrap().normalize()
}

/// Largest power of `v` dividing `p`.
pub fn var_valuation(p: &Poly, v: Var) -> u32 {
    p.terms().map(|(m, _)| m.degree(v)).min().unwrap_or(0)
}

/// Divides out the largest power of `v`.
pub fn strip_var_power(p: &Poly, v: Var) -> Poly {
    let e = var_valuation(p, v);
    if e == 0 {
        return p.clone();
    }
    p.div_exact(&Poly::term(super::Coeff::one(), Monomial::var(v, e)))
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> Poly {
        Poly::jet(0, 0)
    }
    fn z() -> Poly {
        Poly::jet(1, 0)
    }
    fn x() -> Poly {
        Poly::x()
    }
    const Y: Var = Var::Jet(super::super::JetVar { index: 0, order: 0 });

    #[test]
    fn elimination_resultant() {
        let a = &y().pow(2) - &x().pow(3);
        let b = &z().pow(5) - &(&x().pow(3) * &y());
        let r = resultant(&a, &b, Y).unwrap();
        assert_eq!(r.normalize(), (&z().pow(10) - &x().pow(9)).normalize());
    }

    #[test]
    fn discriminant_of_square_root_curve() {
        let a = &y().pow(2) - &(&Poly::int(2) * &x());
        let d = discriminant(&a, Y).unwrap();
        // det [[1,0,-2x],[2,0,0],[0,2,0]] = -8x
        assert_eq!(d, &Poly::int(-8) * &x());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = &y() - &x();
        let a = &f * &(&y() + &Poly::one());
        let b = &f * &(&(&y() * &z()) - &x());
        assert_eq!(gcd(&a, &b, Y).unwrap(), f.normalize());
        assert_eq!(gcd(&a, &a, Y).unwrap(), a.normalize());
        assert!(gcd(&Poly::zero(), &Poly::zero(), Y).is_err());
    }

    #[test]
    fn chain_detects_gcd_degree() {
        // a = (y-1)(y-2)(y-x), b = (y-1)(y+3)
        let one = Poly::one();
        let a = &(&(&y() - &one) * &(&y() - &Poly::int(2))) * &(&y() - &x());
        let b = &(&y() - &one) * &(&y() + &Poly::int(3));
        let chain = subresultant_chain(&a, &b, Y);
        assert!(principal_coeff(&chain[0], Y, 0).is_zero());
        assert!(!principal_coeff(&chain[1], Y, 1).is_zero());
        assert_eq!(primitive_part_in(&chain[1], Y), (&y() - &one).normalize());
    }

    #[test]
    fn chain_matches_determinants() {
        let mut state = 0x2545_f491_u64;
        let mut next = |k: i64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64).rem_euclid(2 * k + 1) - k
        };
        let mut random = |deg: u32| {
            let mut p = Poly::zero();
            for i in 0..=deg {
                let c = &Poly::int(next(3)) + &(&Poly::int(next(2)) * &z());
                p = &p + &(&c * &y().pow(i));
            }
            p
        };
        for round in 0..33 {
            let n = 1 + round % 4;
            let m = n + (round / 4) % 3;
            let mut a = random(m);
            let mut b = random(n);
            if round % 5 == 0 {
                let common = random(1);
                a = &a * &common;
                b = &b * &common;
            }
            if round % 7 == 0 {
                a = &(&a * &y().pow(2)) + &Poly::int(1);
            }
            if round % 11 == 3 {
                a = &(&y().pow(6) + &y()) + &z().pow(round % 3);
                b = &(&y().pow(3) + &z()) + &(&Poly::int(round as i64 % 2) * &y());
            }
            if round % 11 == 7 {
                a = &(&y().pow(4) + &Poly::one()) * &(&y() - &z());
                b = &(&y().pow(2) + &z()) * &(&y() - &z());
            }
            let (m, n) = (a.degree(Y), b.degree(Y));
            if n == 0 || m < n {
                continue;
            }
            let chain = subresultant_chain(&a, &b, Y);
            for j in 0..n {
                assert_eq!(chain[j as usize], subresultant(&a, &b, Y, j), "S_{j} of {a} and {b}");
            }
            assert_eq!(resultant(&b, &a, Y).unwrap(), {
                let r = subresultant(&b, &a, Y, 0);
                r
            });
        }
    }
}
