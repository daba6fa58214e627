#![allow(dead_code)]

pub mod criteria;

use std::collections::BTreeMap;

use aodesolve::cli::parse;
use aodesolve::diff_ring::prem;
use aodesolve::poly::coeff::{Coeff, Rat};
use aodesolve::poly::{Monomial, Poly, Var};
use aodesolve::systems::DiffSystem;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FOUR_EQUATIONS: &str = "\
y*y'*y'' + y'^3 - y*y'' - y'^2 = 0
z^3 - 2*y'^2 + y*y' - 1 = 0
z^3 + y*y'' - y'^2 = 0
3*z^2*z' - 4*y'*y'' = 0
";

pub const THREE_EQUATIONS: &str = "\
8*y'^3 - 27*y = 0
z^5 - y^3 = 0
5*z^4*z' - 3*y^2*y' = 0
";

pub const TWO_EQUATIONS: &str = "\
z'^2 + z = 0
y*z' = 0
";

pub fn sys(text: &str) -> DiffSystem {
    parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Every equation of each system pseudo-reduces to zero modulo the other,
/// and the inequations agree up to normalization.
pub fn solution_equivalent(a: &DiffSystem, b: &DiffSystem) -> Result<(), String> {
    for (from, to) in [(a, b), (b, a)] {
        for p in &from.equations {
            let r = prem(p, &to.equations, true).map_err(|e| e.to_string())?;
            if !r.remainder.is_zero() {
                return Err(format!("{} does not reduce to zero modulo {}", from.show(p), to));
            }
        }
    }
    let norm = |s: &DiffSystem| {
        let mut v: Vec<Poly> = s.inequations.iter().map(|p| p.normalize()).collect();
        v.sort_by_key(|p| p.to_string());
        v
    };
    if norm(a) != norm(b) {
        return Err(format!("inequations differ: {a} vs {b}"));
    }
    Ok(())
}

pub fn random_coeff(r: &mut ChaCha8Rng, bound: i64) -> Coeff {
    loop {
        let n = r.gen_range(-bound..=bound);
        if n != 0 {
            return Coeff::int(n);
        }
    }
}

/// A random polynomial with `terms` terms, each of total degree at most
/// `max_deg` in `vars`.
pub fn random_poly(r: &mut ChaCha8Rng, vars: &[Var], max_deg: u32, terms: usize, bound: i64) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let mut budget = r.gen_range(0..=max_deg);
        let mut pairs = Vec::new();
        while budget > 0 {
            let v = vars[r.gen_range(0..vars.len())];
            let e = r.gen_range(1..=budget);
            pairs.push((v, e));
            budget -= e;
        }
        p.add_term(Monomial::from_pairs(pairs), random_coeff(r, bound));
    }
    p
}

/// Schoolbook pseudo-division with the full multiplier `lc(b)^(da-db+1)`.
pub fn naive_prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = b.degree(v);
    let da = a.degree(v);
    if da < db {
        return a.clone();
    }
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    let mut steps = 0;
    for d in (db..=da).rev() {
        let lr = r.coeff_in(v, d);
        let t = &lr * &Poly::var(v).pow(d - db);
        r = &(&lb * &r) - &(&t * b);
        steps += 1;
    }
    assert_eq!(steps, da - db + 1);
    r
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &laplace_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The Sylvester matrix of `a` and `b` in `v`.
pub fn sylvester(a: &Poly, b: &Poly, v: Var) -> Vec<Vec<Poly>> {
    let (m, n) = (a.degree(v) as usize, b.degree(v) as usize);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, deg, count) in [(a, m, n), (b, n, m)] {
        for i in 0..count {
            let mut row = vec![Poly::zero(); size];
            for k in 0..=deg {
                row[i + k] = src.coeff_in(v, (deg - k) as u32);
            }
            rows.push(row);
        }
    }
    rows
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != Rat::from_integer(0.into())) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            let f = m[i][c].clone() / m[r][c].clone();
            let pivot = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(pivot.iter()) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        r += 1;
    }
    r
}

/// Evaluates a polynomial free of `x` at a point of its jet variables.
pub fn eval_at(p: &Poly, point: &BTreeMap<Var, Poly>) -> Coeff {
    p.subst_many(point).constant_value().expect("all variables assigned")
}
