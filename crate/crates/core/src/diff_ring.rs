//! The ring of ordinary differential polynomials in `y_1, ..., y_n` over
//! `Q[x]`, with the orderly ranking `y_1 < y_1' < ... < y_2 < y_2' < ...`.

use crate::error::{Error, Result};
use crate::poly::division::pseudo_divide;
use crate::poly::{JetVar, Poly, Var};

/// Default bound on reduction steps inside [`prem`].
pub const DEFAULT_PREM_FUEL: usize = 10_000;

/// Highest-ranked jet variable occurring in `f`.
pub fn leader(f: &Poly) -> Option<JetVar> {
    f.jet_vars().into_iter().next_back()
}

/// `(leader, degree in leader)`; `None` for elements of `Q[x]`.
pub fn rank(f: &Poly) -> Option<(JetVar, u32)> {
    leader(f).map(|v| (v, f.degree(Var::Jet(v))))
}

/// Coefficient of the top power of the leader.
pub fn initial(f: &Poly) -> Poly {
    match leader(f) {
        Some(v) => f.lc_in(Var::Jet(v)),
        None => f.clone(),
    }
}

/// Partial derivative with respect to the leader.
pub fn separant(f: &Poly) -> Poly {
    match leader(f) {
        Some(v) => f.diff(Var::Jet(v)),
        None => Poly::zero(),
    }
}

/// Formal total derivative, `x' = 1`, `(y_j^(k))' = y_j^(k+1)`, applied
/// `times` times.
pub fn derive(f: &Poly, times: usize) -> Poly {
    let mut cur = f.clone();
    for _ in 0..times {
        let mut next = Poly::zero();
        for v in cur.vars() {
            let d = cur.diff(v);
            next = match v {
                Var::X => &next + &d,
                Var::Jet(j) => &next + &(&d * &Poly::var(Var::Jet(j.derivative(1)))),
            };
        }
        cur = next;
    }
    cur
}

/// Which kind of occurrence of `v` in `f` is reducible modulo `g`.
fn reducible_at(f: &Poly, g: &Poly, w: JetVar, complete: bool) -> bool {
    let Some((l, dg)) = rank(g) else {
        return false;
    };
    if w.index != l.index || w.order < l.order {
        return false;
    }
    if w.order > l.order {
        return true;
    }
    let deg = f.degree(Var::Jet(w));
    if deg < dg {
        return false;
    }
    complete || leader(f) == Some(w)
}

/// True when `f` can be reduced modulo `g` at its leader.
pub fn is_reducible(f: &Poly, g: &Poly) -> bool {
    match leader(f) {
        Some(w) => reducible_at(f, g, w, false),
        None => false,
    }
}

/// One elementary reduction of `f` modulo `g` at the leader of `f`:
/// `init(G) F - init(F) v^(dF - dG) G` when the leaders agree, and
/// `sep(G) F - init(F) v^(dF - 1) G^(k-l)` for a proper derivative.
pub fn reduce_step(f: &Poly, g: &Poly) -> Result<Poly> {
    let (Some((w, df)), Some((l, dg))) = (rank(f), rank(g)) else {
        return Err(Error::IrreduciblePair("constant operand".into()));
    };
    if !is_reducible(f, g) {
        return Err(Error::IrreduciblePair(format!(
            "{} modulo {}",
            f, g
        )));
    }
    let wv = Var::Jet(w);
    let init_f = f.lc_in(wv);
    let mono = |e: u32| Poly::term(crate::poly::Coeff::one(), crate::poly::Monomial::var(wv, e));
    if w == l {
        Ok(&(&initial(g) * f) - &(&(&init_f * &mono(df - dg)) * g))
    } else {
        let gd = derive(g, (w.order - l.order) as usize);
        Ok(&(&separant(g) * f) - &(&(&init_f * &mono(df - 1)) * &gd))
    }
}

/// One term of a reduction certificate: `cofactor * (members[index])^(order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofactor {
    pub index: usize,
    pub order: usize,
    pub cofactor: Poly,
}

/// Result of [`prem`], with `M F - sum C_i G_i^(s_i) = R` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prem {
    pub remainder: Poly,
    pub multiplier: Poly,
    pub cofactors: Vec<Cofactor>,
}

impl Prem {
    /// Re-checks the cofactor identity.
    pub fn verify(&self, f: &Poly, gs: &[Poly]) -> bool {
        let mut lhs = &self.multiplier * f;
        for c in &self.cofactors {
            lhs = &lhs - &(&c.cofactor * &derive(&gs[c.index], c.order));
        }
        lhs == self.remainder
    }
}

/// Differential pseudo-remainder of `f` modulo `gs`. The highest-ranked
/// reducible occurrence is eliminated first; ties go to the divisor with the
/// lowest-ranked leader. In complete mode every occurrence of a leader with
/// too high a degree is reduced, otherwise only those at the leader of the
/// current remainder.
pub fn prem(f: &Poly, gs: &[Poly], complete: bool) -> Result<Prem> {
    prem_with_fuel(f, gs, complete, DEFAULT_PREM_FUEL)
}

pub fn prem_with_fuel(f: &Poly, gs: &[Poly], complete: bool, fuel: usize) -> Result<Prem> {
    let mut order: Vec<usize> = (0..gs.len()).filter(|&i| leader(&gs[i]).is_some()).collect();
    order.sort_by_key(|&i| rank(&gs[i]).unwrap());
    let mut r = f.clone();
    let mut mult = Poly::one();
    let mut cofs: Vec<Cofactor> = Vec::new();
    let mut steps = 0;
    loop {
        let mut target = None;
        'scan: for w in r.jet_vars().into_iter().rev() {
            for &i in &order {
                if reducible_at(&r, &gs[i], w, complete) {
                    target = Some((w, i));
                    break 'scan;
                }
            }
        }
        let Some((w, i)) = target else {
            break;
        };
        steps += 1;
        if steps > fuel {
            return Err(Error::FuelExhausted(fuel, "differential pseudo-reduction".into()));
        }
        let (l, _) = rank(&gs[i]).unwrap();
        let s = (w.order - l.order) as usize;
        let divisor = derive(&gs[i], s);
        let pd = pseudo_divide(&r, &divisor, Var::Jet(w))?;
        if pd.exponent > 0 {
            let scale = divisor.lc_in(Var::Jet(w)).pow(pd.exponent);
            mult = &mult * &scale;
            for c in &mut cofs {
                c.cofactor = &c.cofactor * &scale;
            }
        }
        cofs.push(Cofactor {
            index: i,
            order: s,
            cofactor: pd.quotient,
        });
        r = pd.remainder;
    }
    Ok(Prem {
        remainder: r,
        multiplier: mult,
        cofactors: cofs,
    })
}

/// True when `f` is (completely) reduced modulo every member of `gs`.
pub fn is_reduced(f: &Poly, gs: &[Poly], complete: bool) -> bool {
    f.jet_vars()
        .into_iter()
        .all(|w| gs.iter().all(|g| !reducible_at(f, g, w, complete)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(k: usize) -> Poly {
        Poly::jet(0, k)
    }

    #[test]
    fn derivation_examples() {
        let f = &y(1).pow(2) - &y(0);
        assert_eq!(derive(&f, 1), &(&Poly::int(2) * &(&y(1) * &y(2))) - &y(1));
        assert!(derive(&Poly::int(5), 1).is_zero());
        let g = &y(0).pow(2) - &(&Poly::int(2) * &Poly::x());
        assert_eq!(derive(&g, 1), &(&Poly::int(2) * &(&y(0) * &y(1))) - &Poly::int(2));
    }

    #[test]
    fn reduce_step_examples() {
        let g = &y(1).pow(2) - &y(0);
        assert_eq!(reduce_step(&y(2), &g).unwrap(), y(1));
        assert!(reduce_step(&g, &g).unwrap().is_zero());
        let z1 = Poly::jet(1, 1);
        let f = &y(0) * &z1;
        let g2 = &z1.pow(2) + &Poly::jet(1, 0);
        assert!(matches!(reduce_step(&f, &g2), Err(Error::IrreduciblePair(_))));
    }

    #[test]
    fn prem_identity_and_zero() {
        let g = &y(1).pow(2) - &y(0);
        let p = prem(&g, std::slice::from_ref(&g), true).unwrap();
        assert!(p.remainder.is_zero());
        let f = &(&y(3) * &y(2)) + &y(1).pow(3);
        let p = prem(&f, std::slice::from_ref(&g), true).unwrap();
        assert!(p.verify(&f, std::slice::from_ref(&g)));
        assert!(is_reduced(&p.remainder, std::slice::from_ref(&g), true));
    }

    #[test]
    fn solution_polynomial_reduces_equation_to_zero() {
        // yy' - 1 modulo {y^2 - 2x, (y^2 - 2x)'}
        let q = &y(0).pow(2) - &(&Poly::int(2) * &Poly::x());
        let f = &(&y(0) * &y(1)) - &Poly::one();
        let p = prem(&f, &[q.clone(), derive(&q, 1)], true).unwrap();
        assert!(p.remainder.is_zero());
    }
}
