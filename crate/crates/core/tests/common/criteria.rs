//! The acceptance criteria, one function each. A criterion returns a short
//! summary on success and the first discrepancy on failure.

use std::collections::BTreeMap;

use aodesolve::algsolve::{algebraic_solve, shift_equivalent, verify_solution_polynomial};
use aodesolve::cli;
use aodesolve::poly::coeff::Coeff;
use aodesolve::poly::factor::factor;
use aodesolve::poly::gcd::{gcd_any, resultant};
use aodesolve::poly::division::prem_full;
use aodesolve::poly::{Poly, Var};
use aodesolve::puiseux::{residual_order, Point, PuiseuxSeries, Residual, Verdict};
use aodesolve::solver::{
    decide_existence, expand_system, minimal_polynomial_system, shifted_system, simple_system_solve, Existence, Reason,
    SolveOutput,
};
use aodesolve::systems::{dimension, DiffSystem, Dimension, Kind};
use aodesolve::thomas::{algebraic_decompose, differential_decompose};
use aodesolve::Config;
use rand::Rng;

use super::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: aodesolve::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn solve_json(file: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["aodesolve", "solve", &fixture(file), "--json", "--format", "both"], &mut out, &mut err);
    check(code == 0, || format!("exit code {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(out)
}

pub fn four_equations() -> Outcome {
    let s = sys(FOUR_EQUATIONS);
    let cfg = Config::default();
    let out = e2s(simple_system_solve(&s, &cfg))?;
    let iv: Vec<_> = out.systems.iter().filter(|x| x.simple.kind == Kind::IV).collect();
    check(iv.len() == 1 && out.systems.len() == 1, || {
        format!("expected one type IV system, got {:?}", out.systems.iter().map(|x| x.simple.system.to_string()).collect::<Vec<_>>())
    })?;
    let target = sys("unknowns y, z\ny^2 - 2*x = 0\nx*z^3 - 1 = 0");
    solution_equivalent(&iv[0].simple.system, &target)?;
    check(out.decomposition.systems.len() == 1, || "decomposition has more than one system".into())?;
    let inner = sys("unknowns y, z\ny^2*z^3 - 2 = 0\ny*y' - 1 = 0\ny /= 0");
    solution_equivalent(&out.decomposition.systems[0].system, &inner)?;
    let (a, b) = (solve_json("example_four.sys")?, solve_json("example_four.sys")?);
    check(a == b, || "two runs printed different bytes".into())?;
    Ok(format!("{}", iv[0].simple.system))
}

pub fn three_equations() -> Outcome {
    let s = sys(THREE_EQUATIONS);
    let cfg = Config::default();
    let d = e2s(differential_decompose(&s, &cfg))?;
    let expected = [
        sys("unknowns y, z\ny^3 - z^5 = 0\n8*y'^3 - 27*y = 0\ny /= 0"),
        sys("unknowns y, z\ny = 0\nz = 0"),
    ];
    check(d.systems.len() == 2, || format!("{} systems in the decomposition", d.systems.len()))?;
    for e in &expected {
        let found = d.systems.iter().any(|g| solution_equivalent(&g.system, e).is_ok());
        check(found, || format!("no system equivalent to {e}"))?;
    }
    let out: SolveOutput = e2s(simple_system_solve(&s, &cfg))?;
    let iv: Vec<_> = out.systems.iter().filter(|x| x.simple.kind == Kind::IV).collect();
    check(iv.len() == 1, || "expected exactly one type IV system".into())?;
    solution_equivalent(&iv[0].simple.system, &sys("unknowns y, z\ny^2 - x^3 = 0\nz^5 - x^3*y = 0"))?;
    let m = iv[0].minimal_polynomials.as_ref().ok_or("no minimal polynomial system")?;
    let q: Vec<String> = m.polys.iter().map(|(_, q)| iv[0].simple.system.show(q)).collect();
    check(q == ["y^2 - x^3", "z^10 - x^9"], || format!("minimal polynomials {q:?}"))?;
    // the pair (x^(3/2), -x^(9/10)) solves both minimal polynomials but not the system
    let y = PuiseuxSeries::monomial(Coeff::one(), 3, 2, Point::Zero);
    let z = PuiseuxSeries::monomial(Coeff::int(-1), 9, 10, Point::Zero);
    let n = rat(5, 1);
    let r = e2s(residual_order(&s, &[y.clone(), z], &n))?;
    check(matches!(r.verdict, Verdict::Fail { .. }), || format!("spurious pair accepted: {:?}", r.verdict))?;
    check(r.equations[2] == Residual::Valuation(rat(7, 2)), || format!("residual {:?}", r.equations[2]))?;
    let good = PuiseuxSeries::monomial(Coeff::one(), 9, 10, Point::Zero);
    let r = e2s(residual_order(&s, &[y, good], &n))?;
    check(r.verdict == Verdict::Pass(n.clone()), || format!("genuine pair rejected: {:?}", r.verdict))?;
    Ok("spurious pair fails with valuation 7/2".into())
}

pub fn two_equations() -> Outcome {
    let s = sys(TWO_EQUATIONS);
    let cfg = Config::default();
    let a = e2s(algebraic_decompose(&s, &cfg))?;
    check(a.systems.len() == 2, || format!("{} algebraic systems", a.systems.len()))?;
    let d = e2s(differential_decompose(&s, &cfg))?;
    let mut kinds: Vec<(Kind, usize)> = d.systems.iter().map(|g| (g.kind, g.dimension())).collect();
    kinds.sort();
    check(kinds == [(Kind::I, 1), (Kind::II, 1), (Kind::III, 0)], || format!("{kinds:?}"))?;
    Ok("algebraic 2; differential I, II, III with dimensions 1, 1, 0".into())
}

pub fn dimensions() -> Outcome {
    let cfg = Config::default();
    let cases = [
        ("y1'^2 + y2^3 = 0\n2*y1 - y1'*y2 = 0\ny1 /= 0", 1),
        ("y' + x = 0", 1),
        ("y' + y = 0\ny'' /= 0", 2),
    ];
    for (text, d) in cases {
        let got = e2s(dimension(&sys(text), &cfg))?;
        check(got == Dimension::Value(d), || format!("{text:?}: {got:?}"))?;
    }
    Ok("1, 1, 2".into())
}

pub fn algebraic_solutions() -> Outcome {
    let cfg = Config::default();
    let cases = [("y*y' - 1 = 0", Some("y^2 - 2*x = 0")), ("8*y'^3 - 27*y = 0", Some("y^2 - x^3 = 0")), ("y' - y = 0", None)];
    for (text, expected) in cases {
        let f = sys(text).equations[0].clone();
        let got = e2s(algebraic_solve(&f, &cfg))?;
        match (got, expected) {
            (None, None) => {}
            (Some(q), Some(e)) => {
                let e = sys(e).equations[0].clone();
                check(shift_equivalent(&q.poly, &e).is_some(), || format!("{text}: {} is not a shift of {e}", q.poly))?;
                check(e2s(verify_solution_polynomial(&f, &q.poly))?, || format!("{text}: verification failed"))?;
            }
            (g, e) => return Err(format!("{text}: got {g:?}, expected {e:?}")),
        }
    }
    Ok("y^2 - 2x, y^2 - x^3, none".into())
}

fn unknown_vars(j: usize, max_order: usize) -> Vec<Var> {
    (0..=max_order).map(|k| Var::jet(j, k)).collect()
}

fn jet_vars(n: usize, max_order: usize) -> Vec<Var> {
    (0..n).flat_map(|j| (0..=max_order).map(move |k| Var::jet(j, k))).collect()
}

/// Autonomous equations `a^b y^a y'^b - c b^b y^b` solved by `y^a = c x^b`.
fn power_family(a: u32, b: u32, c: i64) -> Poly {
    let y = Poly::jet(0, 0);
    let yp = Poly::jet(0, 1);
    let lhs = &(&Poly::int((a as i64).pow(b)) * &y.pow(a)) * &yp.pow(b);
    let rhs = &Poly::int(c * (b as i64).pow(b)) * &y.pow(b);
    &lhs - &rhs
}

fn dimension_non_increase(seed: u64, count: usize) -> Result<usize, String> {
    let cfg = Config::default();
    let mut r = rng(seed);
    let mut consistent = 0;
    for _ in 0..count {
        let n = r.gen_range(1..=3);
        let k = r.gen_range(1..=n);
        let eqs: Vec<Poly> = (0..k)
            .map(|_| {
                // each equation couples at most two unknowns
                let first = r.gen_range(0..n);
                let second = r.gen_range(0..n);
                let mut vars = unknown_vars(first, 1);
                if second != first {
                    vars.extend(unknown_vars(second, 1));
                }
                let terms = r.gen_range(2..=3);
                random_poly(&mut r, &vars, 3, terms, 3)
            })
            .filter(|p| p.has_jets())
            .collect();
        let s = DiffSystem::new(DiffSystem::default_names(n), eqs, vec![]);
        let d = e2s(dimension(&s, &cfg))?;
        let dec = e2s(differential_decompose(&s, &cfg)).map_err(|e| format!("{s}: {e}"))?;
        match d {
            Dimension::Inconsistent => check(dec.systems.is_empty(), || format!("{s}: inconsistent input decomposed"))?,
            Dimension::Value(d) => {
                consistent += 1;
                for g in &dec.systems {
                    check(g.dimension() <= d, || format!("{s}: {} has dimension {} > {d}", g.system, g.dimension()))?;
                }
            }
        }
    }
    Ok(consistent)
}

fn partition_sampling(seed: u64, systems: usize) -> Result<usize, String> {
    let cfg = Config::default();
    let mut r = rng(seed);
    let mut solutions = 0;
    for _ in 0..systems {
        let n = r.gen_range(2..=3);
        let vars = jet_vars(n, 0);
        let linear = |r: &mut rand_chacha::ChaCha8Rng| {
            let mut p = Poly::int(r.gen_range(-2..=2));
            for &v in &vars {
                p = &p + &(&Poly::int(r.gen_range(-1..=1)) * &Poly::var(v));
            }
            p
        };
        let mut eqs = Vec::new();
        for _ in 0..r.gen_range(1..n) {
            let factors = r.gen_range(1..=2);
            let mut p = Poly::one();
            for _ in 0..factors {
                p = &p * &linear(&mut r);
            }
            if !p.is_constant() {
                eqs.push(p);
            }
        }
        let ineqs: Vec<Poly> = if r.gen_bool(0.5) {
            vec![linear(&mut r)].into_iter().filter(|p| !p.is_constant()).collect()
        } else {
            vec![]
        };
        let s = DiffSystem::new(DiffSystem::default_names(n), eqs, ineqs);
        let dec = e2s(algebraic_decompose(&s, &cfg))?;
        let grid: Vec<i64> = (-2..=2).collect();
        let mut point = vec![0i64; n];
        loop {
            let map: BTreeMap<Var, Poly> = vars.iter().zip(&point).map(|(&v, &c)| (v, Poly::int(c))).collect();
            let holds = |t: &DiffSystem| {
                t.equations.iter().all(|p| eval_at(p, &map).is_zero()) && t.inequations.iter().all(|p| !eval_at(p, &map).is_zero())
            };
            let inside = holds(&s);
            let hits = dec.systems.iter().filter(|g| holds(&g.system)).count();
            check(hits == usize::from(inside), || format!("{s}: point {point:?} lies in {hits} systems"))?;
            solutions += usize::from(inside);
            // next grid point
            let mut i = 0;
            while i < n {
                let pos = grid.iter().position(|&g| g == point[i]).unwrap();
                if pos + 1 < grid.len() {
                    point[i] = grid[pos + 1];
                    break;
                }
                point[i] = grid[0];
                i += 1;
            }
            if i == n {
                break;
            }
            if point.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(solutions)
}

fn solvable_systems() -> Vec<DiffSystem> {
    let mut out = vec![sys(FOUR_EQUATIONS), sys(THREE_EQUATIONS), sys("y*y' - 1 = 0\nz^2 - y = 0")];
    for (a, b, c, tail) in [(2, 1, 3, "z^2 - y"), (1, 2, -2, "z^3 - y^2"), (2, 3, 1, "z^2 - y"), (3, 2, 2, "y*z - 1")] {
        let f = power_family(a, b, c);
        let tail = sys(&format!("unknowns y, z\n{tail} = 0")).equations[0].clone();
        out.push(DiffSystem::new(vec!["y".into(), "z".into()], vec![f, tail], vec![]));
    }
    out
}

fn emitted_polynomials_verify(seed: u64) -> Result<usize, String> {
    let cfg = Config::default();
    let mut r = rng(seed);
    let mut emitted = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            let c = loop {
                let c = r.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            let f = power_family(a, b, c);
            for (h, _) in e2s(factor(&f, &cfg.limits))?.factors {
                if !h.contains_var(Var::jet(0, 1)) {
                    continue;
                }
                if let Some(q) = e2s(algebraic_solve(&h, &cfg))? {
                    check(e2s(verify_solution_polynomial(&h, &q.poly))?, || format!("{q} fails for {h}"))?;
                    emitted += 1;
                }
            }
        }
    }
    Ok(emitted)
}

fn bounds_and_shifts(seed: u64) -> Result<(usize, usize), String> {
    let cfg = Config::default();
    let mut r = rng(seed);
    let shifts = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(-1, 3), rat(3, 1), rat(-2, 1), rat(4, 1)];
    let (mut bounded, mut shifted) = (0, 0);
    for s in solvable_systems() {
        let out = e2s(simple_system_solve(&s, &cfg)).map_err(|e| format!("{s}: {e}"))?;
        for h in out.systems.iter().filter(|h| h.simple.kind == Kind::IV) {
            let m = h.minimal_polynomials.as_ref().ok_or_else(|| format!("{}: no minimal polynomials", h.simple.system))?;
            check(m.bound.is_some() && m.within_bound(), || format!("{}: degree bound {:?}", h.simple.system, m.bound))?;
            bounded += 1;
            for _ in 0..3 {
                let c = shifts[r.gen_range(0..shifts.len())].clone();
                let moved = e2s(shifted_system(&h.simple.system, &Poly::constant(Coeff::from(c.clone()))))?;
                let mins = e2s(minimal_polynomial_system(&moved, &cfg))?;
                let tuples = e2s(expand_system(&moved, &mins, Point::Zero, 6, &cfg))?;
                check(!tuples.is_empty(), || format!("{moved}: no branches"))?;
                for t in &tuples {
                    let rep = e2s(residual_order(&s, &t.series, &rat(4, 1)))?;
                    check(matches!(rep.verdict, Verdict::Pass(_)), || format!("{moved} with c = {c}: {:?}", rep.verdict))?;
                }
                shifted += 1;
            }
        }
    }
    Ok((bounded, shifted))
}

pub fn property_suite() -> Outcome {
    let consistent = dimension_non_increase(11, 50)?;
    let points = partition_sampling(12, 40)?;
    check(points >= 100, || format!("only {points} solution points sampled"))?;
    let emitted = emitted_polynomials_verify(13)?;
    let (bounded, shifted) = bounds_and_shifts(14)?;
    Ok(format!(
        "{consistent} consistent random systems, {points} points, {emitted} polynomials, {bounded} bounds, {shifted} shifts"
    ))
}

pub fn oracles(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let (v, w) = (Var::jet(0, 0), Var::jet(1, 0));
    let mut done = 0;
    while done < 70 {
        let a = random_poly(&mut r, &[v, w], 4, 4, 5);
        let b = random_poly(&mut r, &[v, w], 3, 3, 5);
        if b.degree(v) == 0 {
            continue;
        }
        let ours = e2s(prem_full(&a, &b, v))?;
        check(ours == naive_prem(&a, &b, v), || format!("prem({a}, {b})"))?;
        done += 1;
    }
    while done < 140 {
        let a = random_poly(&mut r, &[v, w], 3, 3, 5);
        let b = random_poly(&mut r, &[v, w], 3, 3, 5);
        if a.degree(v) == 0 || b.degree(v) == 0 {
            continue;
        }
        let ours = e2s(resultant(&a, &b, v))?;
        check(ours == laplace_det(&sylvester(&a, &b, v)), || format!("res({a}, {b})"))?;
        done += 1;
    }
    while done < 200 {
        let g = random_poly(&mut r, &[v], 2, 2, 4);
        let a = &g * &random_poly(&mut r, &[v], 3, 3, 4);
        let b = &g * &random_poly(&mut r, &[v], 3, 3, 4);
        if a.degree(v) == 0 || b.degree(v) == 0 {
            continue;
        }
        let h = gcd_any(&a, &b);
        check(a.div_exact(&h).is_some() && b.div_exact(&h).is_some(), || format!("gcd({a}, {b}) = {h} does not divide"))?;
        let syl: Vec<Vec<Rat>> = sylvester(&a, &b, v)
            .into_iter()
            .map(|row| row.into_iter().map(|p| p.constant_value().unwrap().as_rat().unwrap().clone()).collect())
            .collect();
        let expected = (a.degree(v) + b.degree(v)) as usize - rank(syl);
        check(h.degree(v) as usize == expected, || format!("gcd({a}, {b}) = {h}, expected degree {expected}"))?;
        done += 1;
    }
    Ok("200 instances".into())
}

pub fn convergence_shadow() -> Outcome {
    let cfg = Config::default();
    let n = 12;
    let golden = [sys(FOUR_EQUATIONS), sys(THREE_EQUATIONS), sys("y*y' - 1 = 0"), sys("8*y'^3 - 27*y = 0")];
    let mut tuples = 0;
    for s in golden {
        let out = e2s(simple_system_solve(&s, &cfg))?;
        for h in out.systems.iter().filter(|h| matches!(h.simple.kind, Kind::III | Kind::IV)) {
            let mins = match &h.minimal_polynomials {
                Some(m) => m.clone(),
                None => e2s(minimal_polynomial_system(&h.simple.system, &cfg))?,
            };
            let ts = e2s(expand_system(&h.simple.system, &mins, Point::Zero, 20, &cfg))?;
            check(!ts.is_empty(), || format!("{}: no branches", h.simple.system))?;
            for t in &ts {
                let rep = e2s(residual_order(&s, &t.series, &rat(n, 1)))?;
                check(rep.verdict == Verdict::Pass(rat(n, 1)), || format!("{}: {:?}", h.simple.system, rep.verdict))?;
                tuples += 1;
            }
        }
    }
    Ok(format!("{tuples} branch tuples with residual valuation >= {n}"))
}

pub const EXISTENCE_CASES: [(&str, Existence, Option<&str>); 10] = [
    ("y - 1 = 0\ny + 1 = 0", Existence::NoSolution, None),
    ("y' - 1 = 0\ny'' - 1 = 0", Existence::NoSolution, None),
    ("y^2 - 1 = 0", Existence::OnlyConstant, None),
    ("y - 1 = 0\nz^2 - y = 0", Existence::OnlyConstant, None),
    ("y*y' - 1 = 0", Existence::NonconstantExists, Some("first-order y")),
    (TWO_EQUATIONS, Existence::NonconstantExists, Some("first-order z")),
    ("unknowns y, z\ny - 1 = 0", Existence::NonconstantExists, Some("free z")),
    ("unknowns y, z\ny^2 - 2 = 0", Existence::NonconstantExists, Some("free z")),
    ("y*z - 1 = 0", Existence::NonconstantExists, Some("parametric y")),
    ("z^2 - y = 0", Existence::NonconstantExists, Some("parametric y")),
];

pub fn existence_fixtures() -> Outcome {
    let cfg = Config::default();
    for (text, verdict, witness) in EXISTENCE_CASES {
        let s = sys(text);
        let v = e2s(decide_existence(&s, &cfg))?;
        check(v.verdict == verdict, || format!("{text:?}: {} instead of {verdict}", v.verdict))?;
        let reason = v.witness.as_ref().and_then(|(_, r)| *r).map(|r| match r {
            Reason::FirstOrder(t) => format!("first-order {}", s.names[t]),
            Reason::FreeVariable(j) => format!("free {}", s.names[j]),
            Reason::Parametric(t) => format!("parametric {}", s.names[t]),
        });
        check(reason.as_deref() == witness, || format!("{text:?}: witness {reason:?}"))?;
    }
    Ok("10 verdicts".into())
}
