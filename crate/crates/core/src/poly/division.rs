use super::{Poly, Var};
use crate::error::{Error, Result};

/// Result of a pseudo-division `init(b)^e * a = q * b + r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: Poly,
    pub remainder: Poly,
    pub exponent: u32,
}

/// Pseudo-division of `a` by `b` with respect to `v`.
///
/// The initial of `b` is multiplied in lazily: a step that can be carried out
/// by exact division of leading coefficients does not raise the exponent, so
/// `e` is never larger than `deg_v(a) - deg_v(b) + 1` and is zero when the
/// initial is a constant.
pub fn pseudo_divide(a: &Poly, b: &Poly, v: Var) -> Result<PseudoDivision> {
    let db = b.degree(v);
    if db == 0 {
        return Err(Error::NotADivisorVariable(format!("{:?}", v)));
    }
    let lb = b.lc_in(v);
    let mut r = a.clone();
    let mut q = Poly::zero();
    let mut e = 0;
    loop {
        let dr = r.degree(v);
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.lc_in(v);
        let shift = super::Monomial::var(v, dr - db);
        match lr.div_exact(&lb) {
            Some(c) => {
                let t = c.mul_monomial(&shift);
                r = &r - &(&t * b);
                q = &q + &t;
            }
            None => {
                let t = lr.mul_monomial(&shift);
                r = &(&lb * &r) - &(&t * b);
                q = &(&lb * &q) + &t;
                e += 1;
            }
        }
    }
    Ok(PseudoDivision {
        quotient: q,
        remainder: r,
        exponent: e,
    })
}

/// Classical pseudo-remainder with multiplier `init(b)^(deg_v a - deg_v b + 1)`.
pub fn prem_full(a: &Poly, b: &Poly, v: Var) -> Result<Poly> {
    let da = a.degree(v);
    let db = b.degree(v);
    let pd = pseudo_divide(a, b, v)?;
    if da < db {
        return Ok(pd.remainder);
    }
    let want = da - db + 1;
    Ok(&pd.remainder * &b.lc_in(v).pow(want - pd.exponent))
}

/// Pseudo-quotient with the classical multiplier.
pub fn pquo_full(a: &Poly, b: &Poly, v: Var) -> Result<Poly> {
    let da = a.degree(v);
    let db = b.degree(v);
    let pd = pseudo_divide(a, b, v)?;
    if da < db {
        return Ok(pd.quotient);
    }
    let want = da - db + 1;
    Ok(&pd.quotient * &b.lc_in(v).pow(want - pd.exponent))
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
    fn zp() -> Poly {
        Poly::jet(1, 1)
    }

    fn check(a: &Poly, b: &Poly, v: Var, pd: &PseudoDivision) {
        let lhs = &b.lc_in(v).pow(pd.exponent) * a;
        let rhs = &(&pd.quotient * b) + &pd.remainder;
        assert_eq!(lhs, rhs);
        assert!(pd.remainder.degree(v) < b.degree(v));
    }

    #[test]
    fn exact_case_has_zero_exponent() {
        let pd = pseudo_divide(&y().pow(2), &y(), Var::jet(0, 0)).unwrap();
        assert_eq!(pd.quotient, y());
        assert!(pd.remainder.is_zero());
        assert_eq!(pd.exponent, 0);
    }

    #[test]
    fn lazy_multiplier_on_derivative_divisor() {
        let a = &zp().pow(2) + &z();
        let b = &y() * &zp();
        let v = Var::jet(1, 1);
        let pd = pseudo_divide(&a, &b, v).unwrap();
        check(&a, &b, v, &pd);
        assert_eq!(pd.exponent, 1);
        assert_eq!(pd.remainder, &y() * &z());
        // the classical multiplier y^2 gives remainder y^2 z
        assert_eq!(prem_full(&a, &b, v).unwrap(), &y().pow(2) * &z());
    }

    #[test]
    fn elimination_remainder() {
        let x = Poly::x();
        let a = &y().pow(2) - &x.pow(3);
        let b = &z().pow(5) - &(&x.pow(3) * &y());
        let v = Var::jet(0, 0);
        let pd = pseudo_divide(&a, &b, v).unwrap();
        check(&a, &b, v, &pd);
        assert_eq!(pd.exponent, 2);
        assert_eq!(pd.remainder, &z().pow(10) - &x.pow(9));
    }

    #[test]
    fn missing_variable_is_an_error() {
        let r = pseudo_divide(&y(), &z(), Var::jet(0, 0));
        assert!(matches!(r, Err(Error::NotADivisorVariable(_))));
    }
}
