mod common;

use aodesolve::poly::coeff::{Coeff, Rat};
use aodesolve::poly::factor::Limits;
use aodesolve::poly::{Poly, Var};
use aodesolve::puiseux::{newton_expand, ode_series_solution, residual_order, Point, PuiseuxSeries, Residual, Verdict};
use common::*;

/// Coefficients of `(1 + a x)^r` below `x^n`.
fn binomial_series(r: Rat, a: Rat, n: usize) -> Vec<Rat> {
    let mut out = vec![rat(1, 1)];
    let mut c = rat(1, 1);
    for k in 0..n.saturating_sub(1) {
        let k = Rat::from_integer((k as i64).into());
        c = c * (r.clone() - k.clone()) / (k + rat(1, 1)) * a.clone();
        out.push(c.clone());
    }
    out
}

fn coeff_at(s: &PuiseuxSeries, k: i64) -> Coeff {
    s.coeff(&rat(k, 1)).unwrap_or_else(Coeff::zero)
}

#[test]
fn square_root_solves_first_example() {
    let y = Var::jet(0, 0);
    let h = &Poly::var(y).pow(2) - &(&Poly::int(2) * &Poly::x());
    let bs = newton_expand(&h, y, Point::Zero, 8, &Limits::default()).unwrap();
    assert_eq!(bs.len(), 1);
    let s = &bs[0].series;
    let c = s.coeff(&rat(1, 2)).unwrap();
    assert_eq!(&c * &c, Coeff::int(2));
    let r = residual_order(&sys("y*y' - 1 = 0"), &[s.clone()], &rat(8, 1)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass(rat(8, 1)));
}

#[test]
fn three_halves_power() {
    let y = PuiseuxSeries::monomial(Coeff::one(), 3, 2, Point::Zero);
    let r = residual_order(&sys("8*y'^3 - 27*y = 0"), &[y], &rat(10, 1)).unwrap();
    assert_eq!(r.equations, vec![Residual::Zero]);
    assert_eq!(r.verdict, Verdict::Pass(rat(10, 1)));
}

#[test]
fn ode_series_matches_binomial_expansion() {
    // y y' = 1 with y(0) = 1 is solved by (1 + 2x)^(1/2)
    let f = sys("y*y' - 1 = 0").equations[0].clone();
    let s = ode_series_solution(&f, &Coeff::one(), &Coeff::one(), 12).unwrap();
    for (k, c) in binomial_series(rat(1, 2), rat(2, 1), 12).into_iter().enumerate() {
        assert_eq!(coeff_at(&s, k as i64), Coeff::from(c), "coefficient of x^{k}");
    }
    // y' = y^2 with y(0) = 1 is the geometric series
    let f = sys("y' - y^2 = 0").equations[0].clone();
    let s = ode_series_solution(&f, &Coeff::one(), &Coeff::one(), 10).unwrap();
    for k in 0..10 {
        assert_eq!(coeff_at(&s, k), Coeff::one());
    }
}

#[test]
fn regular_branches_match_binomial_expansion() {
    // y^2 = (1 + x)^3 has the branches +-(1 + x)^(3/2)
    let y = Var::jet(0, 0);
    let base = &Poly::one() + &Poly::x();
    let h = &Poly::var(y).pow(2) - &base.pow(3);
    let n = 12;
    let bs = newton_expand(&h, y, Point::Zero, n as i64, &Limits::default()).unwrap();
    assert_eq!(bs.len(), 2);
    let expected = binomial_series(rat(3, 2), rat(1, 1), n);
    for b in &bs {
        let sign = coeff_at(&b.series, 0);
        for (k, c) in expected.iter().enumerate() {
            assert_eq!(coeff_at(&b.series, k as i64), &sign * &Coeff::from(c.clone()));
        }
    }
}

#[test]
fn low_order_expansion_is_a_prefix() {
    let z = Var::jet(1, 0);
    let three = &Poly::x() + &Poly::int(3);
    let h = &Poly::var(z).pow(10) - &three.pow(9);
    let low = newton_expand(&h, z, Point::Zero, 3, &Limits::default()).unwrap();
    let high = newton_expand(&h, z, Point::Zero, 7, &Limits::default()).unwrap();
    assert_eq!(low.len(), high.len());
    for (a, b) in low.iter().zip(&high) {
        assert_eq!(a.class_size, b.class_size);
        assert_eq!(a.series, b.series.truncate(a.series.order_units()));
    }
}

#[test]
fn expansion_at_infinity() {
    // x z^3 = 1 has the branch x^(-1/3), of order 1/3 in 1/x
    let z = Var::jet(1, 0);
    let h = &(&Poly::x() * &Poly::var(z).pow(3)) - &Poly::one();
    let bs = newton_expand(&h, z, Point::Infinity, 3, &Limits::default()).unwrap();
    let total: usize = bs.iter().map(|b| b.class_size).sum();
    assert_eq!(total, 3);
    for b in &bs {
        assert_eq!(b.series.valuation(), Some(rat(1, 3)));
    }
}
