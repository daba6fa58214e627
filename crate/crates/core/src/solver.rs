//! End-to-end solving of systems of algebraic dimension one.
//!
//! Type I systems are reduced to one autonomous first-order equation per
//! choice of constant values for the components below the distinguished
//! one. Algebraic solutions of that equation are turned back into
//! constraints on the whole system, whose decomposition yields triangular
//! systems with `x`-dependent coefficients (type IV). Every solution of such
//! a system stays a solution after `x -> x + c`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algsolve::{algebraic_solve, MinimalPolynomial};
use crate::diff_ring::{derive, leader};
use crate::error::{Error, Result};
use crate::poly::coeff::{Coeff, NumberField, Rat};
use crate::poly::factor::{factor, factor_upoly_over, primitive_element, squarefree};
use crate::poly::gcd::{gcd_any, primitive_part_in, resultant, strip_var_power};
use crate::poly::upoly::UPoly;
use crate::poly::{Monomial, Poly, Var};
use crate::puiseux::{newton_expand_over, residual_order, Point, PuiseuxSeries, ResidualReport, Verdict};
use crate::systems::{dimension, Dimension, DiffSystem, Kind, SimpleSystem};
use crate::thomas::{algebraic_decompose, decompose_with_constraint, differential_decompose, Decomposition};
use crate::Config;

/// How a listed system stands for a family of solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// The system itself.
    Fixed,
    /// Every solution remains one after replacing `x` by `x + c`.
    Shift,
    /// The given indeterminate is an arbitrary constant outside the roots
    /// of the inequations.
    ParametricConstant(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Fixed => write!(f, "none"),
            Family::Shift => write!(f, "x -> x + c"),
            Family::ParametricConstant(_) => write!(f, "constant"),
        }
    }
}

/// Minimal polynomials `Q_s(x, y_s)` of the components of a type IV system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolySystem {
    pub polys: Vec<(usize, Poly)>,
    /// Degree bound inherited from the type I system the output came from.
    pub bound: Option<u32>,
}

impl MinPolySystem {
    pub fn within_bound(&self) -> bool {
        match self.bound {
            None => true,
            Some(b) => self.polys.iter().all(|(s, q)| q.degree(Var::jet(*s, 0)) <= b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedSystem {
    pub simple: SimpleSystem,
    pub family: Family,
    pub minimal_polynomials: Option<MinPolySystem>,
}

#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub systems: Vec<SolvedSystem>,
    pub decomposition: Decomposition,
    pub diagnostics: Vec<String>,
}

/// Constant values of the components below `t` in one branch, with the
/// field they live in.
#[derive(Clone, Debug)]
struct Branch {
    field: Option<Arc<NumberField>>,
    values: BTreeMap<usize, Coeff>,
}

fn substitute_values(p: &Poly, values: &BTreeMap<usize, Coeff>) -> Poly {
    let map: BTreeMap<Var, Poly> = values
        .iter()
        .map(|(&j, c)| (Var::jet(j, 0), Poly::constant(c.clone())))
        .collect();
    p.subst_many(&map)
}

/// All branches of constant values for the equations with leaders below
/// `t`, one per irreducible factor at each level.
fn lower_branches(s: &DiffSystem, t: usize, cfg: &Config) -> Result<Vec<Branch>> {
    let mut lower: Vec<(usize, &Poly)> = s
        .equations
        .iter()
        .filter_map(|p| leader(p).map(|l| (l.index as usize, p)))
        .filter(|&(j, _)| j < t)
        .collect();
    lower.sort_by_key(|&(j, _)| j);
    let mut branches = vec![Branch {
        field: None,
        values: BTreeMap::new(),
    }];
    for (j, g) in lower {
        let mut next = Vec::new();
        for b in branches {
            let h = substitute_values(g, &b.values);
            let u = UPoly::from_poly(&h, Var::jet(j, 0))
                .ok_or_else(|| Error::Invalid(format!("lower component is not algebraic: {h}")))?;
            for (f, _) in factor_upoly_over(&u, b.field.as_ref(), &cfg.limits)? {
                let mut nb = b.clone();
                let root = if f.degree() == 1 {
                    -(&f.coeff(0) / &f.coeff(1))
                } else {
                    let (nf, image, beta) = primitive_element(b.field.as_ref(), &f, "a", &cfg.limits)?;
                    if b.field.is_some() {
                        for v in nb.values.values_mut() {
                            *v = v.embed(&image);
                        }
                    }
                    nb.field = Some(nf);
                    beta
                };
                nb.values.insert(j, root);
                next.push(nb);
            }
        }
        branches = next;
    }
    Ok(branches)
}

/// `Norm(q)` over the rationals: the resultant with the minimal polynomial
/// of the generator, written in the auxiliary variable `z`.
fn rational_norm(q: &Poly, z: Var) -> Result<Poly> {
    let Some(field) = q.field() else {
        return Ok(q.clone());
    };
    let mut lifted = Poly::zero();
    for (m, c) in q.terms() {
        for (k, r) in c.repr().into_iter().enumerate() {
            lifted.add_term(m.mul(&Monomial::var(z, k as u32)), Coeff::Rat(r));
        }
    }
    let minpoly = Poly::from_coeffs_in(
        z,
        &field
            .minpoly()
            .iter()
            .map(|r| Poly::constant(Coeff::Rat(r.clone())))
            .collect::<Vec<_>>(),
    );
    resultant(&minpoly, &lifted, z)
}

/// Square-free part in `v`, primitive and normalized.
fn squarefree_in(p: &Poly, v: Var) -> Poly {
    let p = primitive_part_in(p, v);
    let g = gcd_any(&p, &p.diff(v));
    let p = if g.degree(v) == 0 { p } else { p.div_exact(&g).unwrap() };
    p.normalize()
}

/// `(deg_{y_t} G_t + deg_{y_t'} G_t) * prod_{s != t} deg_{y_s} G_s` for a
/// type I system.
pub fn degree_bound(g: &SimpleSystem) -> Option<u32> {
    let t = g.t.filter(|_| g.kind == Kind::I)?;
    let mut bound = 1u32;
    for p in &g.system.equations {
        let l = leader(p)?;
        let j = l.index as usize;
        if j == t {
            bound *= p.degree(Var::jet(t, 0)) + p.degree(Var::jet(t, 1));
        } else {
            bound *= p.degree(Var::jet(j, 0));
        }
    }
    Some(bound)
}

fn kept(d: Decomposition, kinds: &[Kind]) -> Vec<SimpleSystem> {
    d.systems.into_iter().filter(|s| kinds.contains(&s.kind)).collect()
}

/// Type IV systems of the solutions of `g` along which `y_t` is algebraic
/// and not constant, plus the systems of its solutions with `y_t` constant.
fn solve_type_one(g: &SimpleSystem, cfg: &Config, diag: &mut Vec<String>) -> Result<Vec<SolvedSystem>> {
    let t = g.t.expect("type I has a distinguished index");
    let (y, yp) = (Var::jet(t, 0), Var::jet(t, 1));
    let gt = g
        .system
        .equations
        .iter()
        .find(|p| leader(p).map(|l| l.index as usize) == Some(t))
        .expect("type I has an equation in y_t'");
    let aux = Var::jet(g.system.num_indeterminates(), 0);
    let mut constraints: Vec<Poly> = Vec::new();
    for b in lower_branches(&g.system, t, cfg)? {
        let f = substitute_values(gt, &b.values);
        let factors: Vec<Poly> = if f.is_rational() {
            factor(&f, &cfg.limits)?.factors.into_iter().map(|(p, _)| p).collect()
        } else {
            squarefree(&f, yp)?.factors.into_iter().map(|(p, _)| p).collect()
        };
        for h in factors.iter().filter(|h| h.contains_var(yp)) {
            match algebraic_solve(h, cfg)? {
                Some(MinimalPolynomial { poly, .. }) => {
                    let p = squarefree_in(&rational_norm(&poly, aux)?, y);
                    if !constraints.contains(&p) {
                        constraints.push(p);
                    }
                }
                None => diag.push(format!(
                    "{}: no non-constant algebraic solution",
                    g.system.show(h)
                )),
            }
        }
    }
    let mut out = Vec::new();
    for p in constraints {
        for s in kept(decompose_with_constraint(g, &p, cfg)?, &[Kind::IV, Kind::III]) {
            let family = if s.kind == Kind::IV { Family::Shift } else { Family::Fixed };
            out.push(SolvedSystem {
                simple: s,
                family,
                minimal_polynomials: None,
            });
        }
    }
    // solutions with y_t constant
    let zero = Poly::zero();
    let constant = g.system.map_polys(|p| p.subst(yp, &zero));
    let constant = DiffSystem::new(
        constant.names.clone(),
        constant.equations.into_iter().filter(|p| !p.is_zero()).collect(),
        constant.inequations,
    );
    for mut s in algebraic_decompose(&constant, cfg)?.systems {
        let family = if let Some(pos) = s.free_variables.iter().position(|&j| j == t) {
            s.free_variables.remove(pos);
            s.parametric = Some(t);
            s.kind = Kind::II;
            s.t = Some(t);
            Family::ParametricConstant(t)
        } else {
            Family::Fixed
        };
        out.push(SolvedSystem {
            simple: s,
            family,
            minimal_polynomials: None,
        });
    }
    Ok(out)
}

/// Solves a system of algebraic dimension one: every algebraic solution is,
/// up to a shift of `x`, a solution of one of the returned systems.
pub fn simple_system_solve(s: &DiffSystem, cfg: &Config) -> Result<SolveOutput> {
    match dimension(s, cfg)? {
        Dimension::Inconsistent => return Err(Error::Inconsistent("the system has no solutions".into())),
        Dimension::Value(1) => {}
        Dimension::Value(d) => {
            return Err(Error::Dimension {
                expected: "1".into(),
                found: d.to_string(),
            })
        }
    }
    let decomposition = differential_decompose(s, cfg)?;
    let mut diagnostics = Vec::new();
    let mut systems: Vec<SolvedSystem> = Vec::new();
    for g in &decomposition.systems {
        match g.kind {
            Kind::I => {
                let bound = degree_bound(g);
                for mut out in solve_type_one(g, cfg, &mut diagnostics)? {
                    if out.simple.kind == Kind::IV {
                        match minimal_polynomial_system(&out.simple.system, cfg) {
                            Ok(mut m) => {
                                m.bound = bound;
                                if m.within_bound() {
                                    out.minimal_polynomials = Some(m);
                                } else {
                                    diagnostics.push(format!("degree bound violated for {}", out.simple.system));
                                }
                            }
                            Err(e) => diagnostics.push(format!("{}: {e}", out.simple.system)),
                        }
                    }
                    systems.push(out);
                }
            }
            Kind::II => systems.push(SolvedSystem {
                family: Family::ParametricConstant(g.t.expect("type II has a parametric index")),
                simple: g.clone(),
                minimal_polynomials: None,
            }),
            Kind::III => systems.push(SolvedSystem {
                simple: g.clone(),
                family: Family::Fixed,
                minimal_polynomials: None,
            }),
            _ => {
                diagnostics.push(format!("system of unexpected shape passed through: {}", g.system));
                systems.push(SolvedSystem {
                    simple: g.clone(),
                    family: Family::Fixed,
                    minimal_polynomials: None,
                });
            }
        }
    }
    systems.sort_by_key(|s| (s.simple.kind, s.simple.system.to_string()));
    systems.dedup_by(|a, b| a.simple.system == b.simple.system);
    Ok(SolveOutput {
        systems,
        decomposition,
        diagnostics,
    })
}

/// Minimal polynomials of the components of a type IV system, by
/// eliminating the lower components with resultants and keeping the
/// irreducible factor compatible with the system.
pub fn minimal_polynomial_system(h: &DiffSystem, cfg: &Config) -> Result<MinPolySystem> {
    if h.members().any(|p| p.jet_vars().iter().any(|v| v.order > 0)) {
        return Err(Error::Invalid("expected a system without derivatives".into()));
    }
    let mut eqs: Vec<(usize, &Poly)> = h
        .equations
        .iter()
        .map(|p| leader(p).map(|l| (l.index as usize, p)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("equation without unknowns".into()))?;
    eqs.sort_by_key(|&(j, _)| j);
    let mut polys = Vec::new();
    for (k, &(s, hs)) in eqs.iter().enumerate() {
        let ys = Var::jet(s, 0);
        let mut r = hs.clone();
        for &(j, hj) in eqs[..k].iter().rev() {
            if r.contains_var(Var::jet(j, 0)) {
                r = resultant(hj, &r, Var::jet(j, 0))?;
            }
        }
        let candidates: Vec<Poly> = factor(&r, &cfg.limits)?
            .factors
            .into_iter()
            .map(|(f, _)| f.normalize())
            .filter(|f| f.contains_var(ys))
            .collect();
        let mut consistent = Vec::new();
        for f in candidates {
            let mut test = h.clone();
            test.equations.push(f.clone());
            if !algebraic_decompose(&test, cfg)?.systems.is_empty() {
                consistent.push(f);
            }
        }
        match consistent.len() {
            1 => polys.push((s, consistent.pop().unwrap())),
            0 => return Err(Error::Invalid(format!("no factor of {} is compatible", h.show(&r)))),
            _ => {
                return Err(Error::RaiseOrder(format!(
                    "several factors of {} are compatible with the system",
                    h.show(&r)
                )))
            }
        }
    }
    Ok(MinPolySystem { polys, bound: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    NoSolution,
    OnlyConstant,
    NonconstantExists,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Existence::NoSolution => "no-solution",
            Existence::OnlyConstant => "only-constant",
            Existence::NonconstantExists => "nonconstant-exists",
        };
        write!(f, "{s}")
    }
}

/// Why a system has non-constant solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Type I: the first-order equation in this index.
    FirstOrder(usize),
    /// An indeterminate absent from the system.
    FreeVariable(usize),
    /// Type II: the parametric indeterminate.
    Parametric(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceVerdict {
    pub verdict: Existence,
    pub witness: Option<(SimpleSystem, Option<Reason>)>,
}

/// Decides whether the system has a formal Puiseux series solution, and
/// whether a non-constant one exists.
pub fn decide_existence(s: &DiffSystem, cfg: &Config) -> Result<ExistenceVerdict> {
    if let Dimension::Value(d) = dimension(s, cfg)? {
        if d > 1 {
            return Err(Error::Dimension {
                expected: "at most 1".into(),
                found: d.to_string(),
            });
        }
    }
    let d = differential_decompose(s, cfg)?;
    if d.systems.is_empty() {
        return Ok(ExistenceVerdict {
            verdict: Existence::NoSolution,
            witness: None,
        });
    }
    let reason = |g: &SimpleSystem| -> Option<Reason> {
        match (g.kind, g.t) {
            (Kind::I, Some(t)) => Some(Reason::FirstOrder(t)),
            _ if !g.free_variables.is_empty() => Some(Reason::FreeVariable(g.free_variables[0])),
            (Kind::II, Some(t)) => Some(Reason::Parametric(t)),
            _ => None,
        }
    };
    let mut ranked: Vec<(u8, &SimpleSystem, Reason)> = d
        .systems
        .iter()
        .filter_map(|g| {
            reason(g).map(|r| {
                let rank = match r {
                    Reason::FirstOrder(_) => 0,
                    Reason::FreeVariable(_) => 1,
                    Reason::Parametric(_) => 2,
                };
                (rank, g, r)
            })
        })
        .collect();
    ranked.sort_by_key(|&(rank, _, _)| rank);
    if let Some(&(_, g, r)) = ranked.first() {
        return Ok(ExistenceVerdict {
            verdict: Existence::NonconstantExists,
            witness: Some((g.clone(), Some(r))),
        });
    }
    if let Some(g) = d.systems.iter().find(|g| g.kind != Kind::III) {
        return Err(Error::Dimension {
            expected: "a system of types I, II or III".into(),
            found: g.system.to_string(),
        });
    }
    Ok(ExistenceVerdict {
        verdict: Existence::OnlyConstant,
        witness: Some((d.systems[0].clone(), None)),
    })
}

/// Numerators `N_j` with `(1/u)^(j) = N_j / u^(j+1)`, in the jets of `u`.
pub fn inversion_numerators(index: usize, max_order: usize) -> Vec<Poly> {
    let u0 = Poly::jet(index, 0);
    let u1 = Poly::jet(index, 1);
    let mut out = vec![Poly::one()];
    for j in 0..max_order {
        let n = &out[j];
        let next = &(&derive(n, 1) * &u0) - &(&Poly::int((j + 1) as i64) * &(n * &u1));
        out.push(next);
    }
    out
}

fn invert_one(p: &Poly, index: usize) -> Poly {
    let p = strip_var_power(p, Var::jet(index, 0));
    let max_order = p
        .jet_vars()
        .iter()
        .filter(|v| v.index as usize == index)
        .map(|v| v.order as usize)
        .max();
    let Some(max_order) = max_order else {
        return p;
    };
    let nums = inversion_numerators(index, max_order);
    let weight = |m: &Monomial| -> u32 {
        (0..=max_order).map(|j| (j as u32 + 1) * m.degree(Var::jet(index, j))).sum()
    };
    let top = p.terms().map(|(m, _)| weight(m)).max().unwrap_or(0);
    let u0 = Poly::jet(index, 0);
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let mut term = Poly::constant(c.clone());
        let mut rest = m.clone();
        for (j, n) in nums.iter().enumerate() {
            let (r, e) = rest.split(Var::jet(index, j));
            rest = r;
            term = &term * &n.pow(e);
        }
        term = &(&term * &Poly::term(Coeff::one(), rest)) * &u0.pow(top - weight(m));
        out = &out + &term;
    }
    strip_var_power(&out, Var::jet(index, 0)).normalize()
}

/// Replaces `y_i` by `1/y_i` for every `i` in `indices`, after removing
/// monomial factors `y_i`, and clears denominators.
pub fn invert_components(s: &DiffSystem, indices: &[usize]) -> Result<DiffSystem> {
    if let Some(&i) = indices.iter().find(|&&i| i >= s.num_indeterminates()) {
        return Err(Error::Invalid(format!("no indeterminate with index {i}")));
    }
    let mut out = s.clone();
    for &i in indices {
        out = out.map_polys(|p| invert_one(p, i));
    }
    out.equations.retain(|p| !p.is_zero());
    Ok(out)
}

/// Replaces `x` by `x + c` in a system without derivatives.
pub fn shifted_system(h: &DiffSystem, c: &Poly) -> Result<DiffSystem> {
    let Some(c) = c.constant_value() else {
        return Err(Error::SymbolicShift(h.show(c)));
    };
    if h.members().any(|p| p.jet_vars().iter().any(|v| v.order > 0)) {
        return Err(Error::Invalid("expected a system without derivatives".into()));
    }
    let shift = &Poly::x() + &Poly::constant(c);
    Ok(h.map_polys(|p| p.subst(Var::X, &shift)))
}

/// One tuple of series solving a system without derivatives, standing for
/// `class_size` conjugate tuples.
#[derive(Clone, Debug)]
pub struct SeriesTuple {
    pub series: Vec<PuiseuxSeries>,
    pub class_size: usize,
}

/// All tuples of Puiseux series at `point` solving the triangular system `h`
/// below order `order`, one per conjugacy class. Candidate components come
/// from the minimal polynomials; combinations that fail the equations of `h`
/// are dropped.
pub fn expand_system(h: &DiffSystem, mins: &MinPolySystem, point: Point, order: i64, cfg: &Config) -> Result<Vec<SeriesTuple>> {
    let n = h.num_indeterminates();
    let check = Rat::from_integer(order.into()) - Rat::from_integer(1.into());
    let mut tuples = vec![SeriesTuple {
        series: vec![PuiseuxSeries::zero(point, crate::puiseux::EXACT); n],
        class_size: 1,
    }];
    let mut fields: Vec<Option<Arc<NumberField>>> = vec![None];
    for (s, q) in &mins.polys {
        let prefix: Vec<Poly> = h
            .equations
            .iter()
            .filter(|p| p.jet_vars().iter().all(|v| (v.index as usize) <= *s))
            .cloned()
            .collect();
        let prefix = DiffSystem::new(h.names.clone(), prefix, vec![]);
        let mut next = Vec::new();
        let mut next_fields = Vec::new();
        for (tuple, field) in tuples.iter().zip(fields.iter()) {
            for b in newton_expand_over(q, Var::jet(*s, 0), point, order, field.clone(), &cfg.limits)? {
                let mut series: Vec<PuiseuxSeries> = match &b.base_image {
                    Some(img) if field.is_some() => tuple.series.iter().map(|x| x.map_coeffs(|c| c.embed(img))).collect(),
                    _ => tuple.series.clone(),
                };
                let new_field = b.series.terms().iter().find_map(|(_, c)| c.field().cloned()).or(field.clone());
                series[*s] = b.series.clone();
                let report = residual_order(&prefix, &series, &check)?;
                if matches!(report.verdict, Verdict::Pass(_)) {
                    next.push(SeriesTuple {
                        series,
                        class_size: tuple.class_size * b.class_size,
                    });
                    next_fields.push(new_field);
                }
            }
        }
        tuples = next;
        fields = next_fields;
    }
    Ok(tuples)
}

/// Substitutes a tuple into a system and reports residual valuations.
pub fn residual_report(s: &DiffSystem, tuple: &SeriesTuple, n: i64) -> Result<ResidualReport> {
    residual_order(s, &tuple.series, &Rat::from_integer(n.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(k: usize) -> Poly {
        Poly::jet(0, k)
    }

    fn z(k: usize) -> Poly {
        Poly::jet(1, k)
    }

    fn c(n: i64) -> Poly {
        Poly::int(n)
    }

    fn names() -> Vec<String> {
        vec!["y".into(), "z".into()]
    }

    fn four_equations() -> DiffSystem {
        let eqs = vec![
            &(&(&(&y(0) * &y(1)) * &y(2)) + &y(1).pow(3)) - &(&(&y(0) * &y(2)) + &y(1).pow(2)),
            &(&(&z(0).pow(3) - &(&c(2) * &y(1).pow(2))) + &(&y(0) * &y(1))) - &c(1),
            &(&z(0).pow(3) + &(&y(0) * &y(2))) - &y(1).pow(2),
            &(&c(3) * &(&z(0).pow(2) * &z(1))) - &(&c(4) * &(&y(1) * &y(2))),
        ];
        DiffSystem::new(names(), eqs, vec![])
    }

    fn three_equations() -> DiffSystem {
        let eqs = vec![
            &(&c(8) * &y(1).pow(3)) - &(&c(27) * &y(0)),
            &z(0).pow(5) - &y(0).pow(3),
            &(&c(5) * &(&z(0).pow(4) * &z(1))) - &(&c(3) * &(&y(0).pow(2) * &y(1))),
        ];
        DiffSystem::new(names(), eqs, vec![])
    }

    #[test]
    fn four_equations_give_one_triangular_system() {
        let out = simple_system_solve(&four_equations(), &Config::default()).unwrap();
        let printed: Vec<String> = out.systems.iter().map(|s| s.simple.system.to_string()).collect();
        assert_eq!(printed, vec!["{ y^2 - 2*x = 0, z^3*x - 1 = 0 }"], "{:?}", out.diagnostics);
        assert_eq!(out.systems[0].family, Family::Shift);
        let m = out.systems[0].minimal_polynomials.as_ref().unwrap();
        assert_eq!(m.polys[0].1, (&y(0).pow(2) - &(&c(2) * &Poly::x())).normalize());
        assert_eq!(m.polys[1].1, (&(&Poly::x() * &z(0).pow(3)) - &c(1)).normalize());
        assert_eq!(m.bound, Some(6));
    }

    #[test]
    fn three_equations_give_shift_family_and_constants() {
        let out = simple_system_solve(&three_equations(), &Config::default()).unwrap();
        let kinds: Vec<Kind> = out.systems.iter().map(|s| s.simple.kind).collect();
        assert_eq!(kinds, vec![Kind::III, Kind::IV], "{:?}", out.diagnostics);
        let m = out.systems[1].minimal_polynomials.as_ref().unwrap();
        assert_eq!(m.polys[0].1, (&y(0).pow(2) - &Poly::x().pow(3)).normalize());
        assert_eq!(m.polys[1].1, (&z(0).pow(10) - &Poly::x().pow(9)).normalize());
    }

    #[test]
    fn constant_family() {
        let s = DiffSystem::new(vec!["y".into()], vec![y(1)], vec![]);
        let out = simple_system_solve(&s, &Config::default()).unwrap();
        assert_eq!(out.systems.len(), 1);
        assert_eq!(out.systems[0].family, Family::ParametricConstant(0));
        assert_eq!(out.systems[0].simple.kind, Kind::II);
    }

    #[test]
    fn inversion() {
        let s = DiffSystem::new(vec!["y".into()], vec![&(&y(0) * &y(1)) - &c(1)], vec![]);
        let w = invert_components(&s, &[0]).unwrap();
        assert_eq!(w.equations[0], (&y(1) + &y(0).pow(3)).normalize());
        let back = invert_components(&w, &[0]).unwrap();
        assert_eq!(back.equations[0], s.equations[0].normalize());
        assert_eq!(invert_components(&s, &[]).unwrap(), s);
        let n = inversion_numerators(0, 2);
        assert_eq!(n[1], -y(1));
        assert_eq!(n[2], &(&c(2) * &y(1).pow(2)) - &(&y(0) * &y(2)));
    }

    #[test]
    fn shifts() {
        let h = DiffSystem::new(names(), vec![&y(0).pow(2) - &(&c(2) * &Poly::x())], vec![]);
        assert_eq!(shifted_system(&h, &Poly::zero()).unwrap(), h);
        let s = shifted_system(&h, &c(1)).unwrap();
        assert_eq!(s.equations[0], &(&y(0).pow(2) - &(&c(2) * &Poly::x())) - &c(2));
        assert!(matches!(shifted_system(&h, &Poly::x()), Err(Error::SymbolicShift(_))));
    }

    #[test]
    fn existence() {
        let cfg = Config::default();
        let one = DiffSystem::new(vec!["y".into()], vec![&y(0) - &c(1), &y(0) + &c(1)], vec![]);
        assert_eq!(decide_existence(&one, &cfg).unwrap().verdict, Existence::NoSolution);
        let two = DiffSystem::new(vec!["y".into()], vec![&y(0).pow(2) - &c(1)], vec![]);
        assert_eq!(decide_existence(&two, &cfg).unwrap().verdict, Existence::OnlyConstant);
        let three = DiffSystem::new(names(), vec![&z(1).pow(2) + &z(0), &y(0) * &z(1)], vec![]);
        let v = decide_existence(&three, &cfg).unwrap();
        assert_eq!(v.verdict, Existence::NonconstantExists);
        assert_eq!(v.witness.unwrap().1, Some(Reason::FirstOrder(1)));
    }
}
