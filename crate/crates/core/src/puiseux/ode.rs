//! Series solutions of first-order autonomous equations, residual checks
//! and the change of variable `x = 1/t`.

use std::collections::BTreeMap;

use super::series::{Point, PuiseuxSeries};
use crate::diff_ring::derive;
use crate::error::{Error, Result};
use crate::poly::coeff::{Coeff, Rat};
use crate::poly::{Monomial, Poly, Var};
use crate::systems::DiffSystem;

fn single_index(f: &Poly) -> Result<u16> {
    let mut idx = f.jet_vars().into_iter().map(|v| v.index);
    let first = idx.next().ok_or_else(|| Error::Invalid("no unknown function".into()))?;
    if idx.any(|i| i != first) || f.contains_var(Var::X) {
        return Err(Error::Invalid("expected an autonomous equation in one unknown".into()));
    }
    Ok(first)
}

/// The power series solution of `F(y, y') = 0` with `y(0) = y0` and
/// `y'(0) = p0`, exact below `x^n`. Each new coefficient solves the linear
/// equation given by the lowest unresolved coefficient of the residual.
pub fn ode_series_solution(f: &Poly, y0: &Coeff, p0: &Coeff, n: usize) -> Result<PuiseuxSeries> {
    let t = single_index(f)?;
    let (y, yp) = (Var::jet(t as usize, 0), Var::jet(t as usize, 1));
    if f.jet_vars().iter().any(|v| v.order > 1) {
        return Err(Error::Invalid("expected a first-order equation".into()));
    }
    let at = |p: &Poly| -> Coeff {
        let mut vals = BTreeMap::new();
        vals.insert(y, Poly::constant(y0.clone()));
        vals.insert(yp, Poly::constant(p0.clone()));
        p.subst_many(&vals).constant_term()
    };
    if !at(f).is_zero() {
        return Err(Error::Invalid("initial datum is not on the curve".into()));
    }
    let sep = at(&f.diff(yp));
    if sep.is_zero() {
        return Err(Error::SingularInitialDatum("separant vanishes at the initial datum".into()));
    }
    let mut coeffs = vec![y0.clone(), p0.clone()];
    let mut slots = vec![PuiseuxSeries::zero(Point::Zero, 0); t as usize + 1];
    for k in 1..n.saturating_sub(1) {
        // residual of the degree-k truncation; its x^k coefficient fixes a_{k+1}
        slots[t as usize] = PuiseuxSeries::new(Point::Zero, 1, 0, coeffs.clone(), (k + 2) as i64);
        let r = PuiseuxSeries::substitute(f, &slots, Point::Zero)?;
        let rk = r.coeff(&Rat::from_integer(k.into())).expect("within truncation");
        let denom = &sep * &Coeff::int((k + 1) as i64);
        coeffs.push(-(&rk / &denom));
    }
    coeffs.truncate(n);
    Ok(PuiseuxSeries::new(Point::Zero, 1, 0, coeffs, n as i64))
}

/// Residual of one member after substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Exponent of the first nonzero term.
    Valuation(Rat),
    /// Zero up to the given order, unknown beyond.
    AtLeast(Rat),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass(Rat),
    Fail { equation: usize, valuation: Rat },
    /// An inequation vanished.
    FailInequation(usize),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub equations: Vec<Residual>,
    pub inequations: Vec<Residual>,
    pub verdict: Verdict,
}

fn residual(p: &Poly, ys: &[PuiseuxSeries], point: Point) -> Result<Residual> {
    let r = PuiseuxSeries::substitute(p, ys, point)?;
    Ok(match (r.valuation(), r.order()) {
        (Some(v), _) => Residual::Valuation(v),
        (None, Some(o)) => Residual::AtLeast(o),
        (None, None) => Residual::Zero,
    })
}

/// Substitutes `ys` into the members of `s` and checks that every equation
/// vanishes below `x^n` (in the local parameter) and that no inequation
/// vanishes identically. Truncations too short to decide give
/// [`Verdict::Inconclusive`].
pub fn residual_order(s: &DiffSystem, ys: &[PuiseuxSeries], n: &Rat) -> Result<ResidualReport> {
    let point = ys.first().map_or(Point::Zero, |y| y.point());
    let equations = s
        .equations
        .iter()
        .map(|p| residual(p, ys, point))
        .collect::<Result<Vec<_>>>()?;
    let inequations = s
        .inequations
        .iter()
        .map(|p| residual(p, ys, point))
        .collect::<Result<Vec<_>>>()?;
    let mut verdict = Verdict::Pass(n.clone());
    for (i, r) in equations.iter().enumerate() {
        match r {
            Residual::Valuation(v) if v < n => {
                return Ok(ResidualReport {
                    verdict: Verdict::Fail {
                        equation: i,
                        valuation: v.clone(),
                    },
                    equations,
                    inequations,
                })
            }
            Residual::AtLeast(o) if o < n => verdict = Verdict::Inconclusive,
            _ => {}
        }
    }
    for (i, r) in inequations.iter().enumerate() {
        match r {
            Residual::Zero => {
                verdict = Verdict::FailInequation(i);
                break;
            }
            Residual::AtLeast(_) => {
                if verdict != Verdict::Inconclusive {
                    verdict = Verdict::Inconclusive;
                }
            }
            Residual::Valuation(_) => {}
        }
    }
    Ok(ResidualReport {
        equations,
        inequations,
        verdict,
    })
}

/// `p(1/t, ...) * t^(deg_x p)`, written in `x` again.
fn invert_x(p: &Poly) -> Poly {
    let d = p.degree(Var::X);
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let (rest, e) = m.split(Var::X);
        let mono = rest.mul(&Monomial::var(Var::X, d - e));
        out.add_term(mono, c.clone());
    }
    out
}

/// Rewrites a system for expansion at infinity: `x = 1/t` with
/// `d/dx = -t^2 d/dt`. The new independent variable is again printed `x`;
/// denominators are cleared by powers of `t`.
pub fn at_infinity_transform(s: &DiffSystem) -> DiffSystem {
    let mut images: BTreeMap<Var, Poly> = BTreeMap::new();
    let max_order = s
        .members()
        .flat_map(|p| p.jet_vars())
        .map(|v| v.order)
        .max()
        .unwrap_or(0);
    let minus_t2 = -(Poly::x().pow(2));
    for j in 0..s.num_indeterminates() {
        let mut e = Poly::jet(j, 0);
        for k in 1..=max_order as usize {
            e = &minus_t2 * &derive(&e, 1);
            images.insert(Var::jet(j, k), e.clone());
        }
    }
    let map = |p: &Poly| -> Poly {
        let q = invert_x(p);
        let r = q.subst_many(&images);
        // t-derivatives introduce no denominators, but strip spurious powers of t
        crate::poly::gcd::strip_var_power(&r, Var::X).normalize()
    };
    DiffSystem::new(
        s.names.clone(),
        s.equations.iter().map(map).collect(),
        s.inequations.iter().map(map).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff::ratio;

    fn y(k: usize) -> Poly {
        Poly::jet(0, k)
    }

    #[test]
    fn exponential_series() {
        let f = &y(1) - &y(0);
        let s = ode_series_solution(&f, &Coeff::one(), &Coeff::one(), 6).unwrap();
        let mut fact = 1i64;
        for k in 0..6i64 {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(s.coeff(&ratio(k, 1)), Some(Coeff::from(ratio(1, fact))));
        }
        assert_eq!(s.coeff(&ratio(6, 1)), None);
    }

    #[test]
    fn singular_datum() {
        let f = &y(1).pow(2) - &y(0);
        assert_eq!(
            ode_series_solution(&f, &Coeff::zero(), &Coeff::zero(), 4),
            Err(Error::SingularInitialDatum("separant vanishes at the initial datum".into()))
        );
    }

    #[test]
    fn residual_verdicts() {
        let names = vec!["y".to_string()];
        let s = DiffSystem::new(names.clone(), vec![&y(1) - &Poly::int(2)], vec![]);
        let r = residual_order(&s, &[PuiseuxSeries::x(Point::Zero)], &ratio(3, 1)).unwrap();
        assert_eq!(
            r.verdict,
            Verdict::Fail {
                equation: 0,
                valuation: ratio(0, 1)
            }
        );
        let s = DiffSystem::new(names, vec![y(0)], vec![]);
        let r = residual_order(&s, &[PuiseuxSeries::zero(Point::Zero, super::super::series::EXACT)], &ratio(3, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass(ratio(3, 1)));
    }

    #[test]
    fn infinity_transform_of_linear_equation() {
        let s = DiffSystem::new(vec!["y".into()], vec![&y(1) - &Poly::one()], vec![]);
        let t = at_infinity_transform(&s);
        let expected = (&(-(&Poly::x().pow(2) * &y(1))) - &Poly::one()).normalize();
        assert_eq!(t.equations[0], expected);
    }
}
