//! Square-free decomposition and factorization.
//!
//! Over `Q`, univariate and bivariate inputs are factored completely:
//! univariate by Cantor-Zassenhaus modulo a prime above the coefficient
//! bound followed by subset recombination, bivariate by evaluation, lifting
//! in the power series ring and recombination. Univariate polynomials over
//! `Q(a)` are factored through the norm. Everything else gets a square-free
//! decomposition only.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gcd::{content_in, gcd_any, resultant};
use super::modular::{next_prime, PrimeField};
use super::upoly::UPoly;
use super::{Coeff, Monomial, NumberField, Poly, Rat, Var};
use crate::error::{Error, Result};

/// Degree and extension caps shared by the factorization routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_extension: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_degree: 20,
            max_extension: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Irreducible,
    SquarefreeOnly,
}

/// `unit * prod f^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Coeff,
    pub factors: Vec<(Poly, u32)>,
    pub certification: Certification,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    fn finish(input: &Poly, mut factors: Vec<(Poly, u32)>, cert: Certification) -> Factorization {
        factors.retain(|(f, _)| !f.is_constant());
        factors.sort_by(|a, b| {
            (a.0.total_degree(), a.0.to_string(), a.1).cmp(&(b.0.total_degree(), b.0.to_string(), b.1))
        });
        let prod = factors
            .iter()
            .fold(Poly::one(), |acc, (f, m)| &acc * &f.pow(*m));
        let unit = &input.leading_coeff() / &prod.leading_coeff();
        Factorization {
            unit,
            factors,
            certification: cert,
        }
    }
}

/// Yun's algorithm in `v` on the primitive part; the content in `v`
/// (free of `v`) is returned as an extra factor of multiplicity one.
pub fn squarefree(a: &Poly, v: Var) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::Invalid("square-free decomposition of zero".into()));
    }
    let mut out = Vec::new();
    if a.degree(v) == 0 {
        out.push((a.normalize(), 1));
        return Ok(Factorization::finish(a, out, Certification::SquarefreeOnly));
    }
    let c = content_in(a, v);
    out.push((c.clone(), 1));
    let f = a.div_exact(&c).unwrap().normalize();
    for (g, m) in yun(&f, v) {
        out.push((g, m));
    }
    Ok(Factorization::finish(a, out, Certification::SquarefreeOnly))
}

fn yun(f: &Poly, v: Var) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let df = f.diff(v);
    let a0 = gcd_any(f, &df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.diff(v);
    let mut i = 1;
    while b.degree(v) > 0 {
        let a = gcd_any(&b, &d);
        let nb = b.div_exact(&a).unwrap();
        let nc = d.div_exact(&a).unwrap();
        d = &nc - &nb.diff(v);
        if a.degree(v) > 0 {
            out.push((a.normalize(), i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Square-free decomposition of a univariate polynomial over a field, monic
/// factors.
pub fn squarefree_upoly(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).0;
    let c = df.divrem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let nb = b.divrem(&a).0;
        let nc = d.divrem(&a).0;
        d = &nc - &nb.derivative();
        if a.degree() > 0 {
            out.push((a.monic(), i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Factorization over `Q`, or over `Q(a)` for univariate inputs.
pub fn factor(a: &Poly, limits: &Limits) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::Invalid("factorization of zero".into()));
    }
    let vars: Vec<Var> = a.vars().into_iter().collect();
    if a.total_degree() > limits.max_degree {
        return Err(Error::FactorizationCap(format!(
            "total degree {} exceeds {}",
            a.total_degree(),
            limits.max_degree
        )));
    }
    match vars.len() {
        0 => Ok(Factorization::finish(a, vec![], Certification::Irreducible)),
        1 => {
            let v = vars[0];
            let u = UPoly::from_poly(a, v).unwrap();
            let fs = factor_upoly(&u, limits)?;
            let out = fs.into_iter().map(|(f, m)| (f.to_poly(v).normalize(), m)).collect();
            Ok(Factorization::finish(a, out, Certification::Irreducible))
        }
        2 if a.is_rational() => {
            let (u, v) = (vars[0], vars[1]);
            let mut out = Vec::new();
            let sq = squarefree(a, v)?;
            for (g, m) in sq.factors {
                if g.degree(v) == 0 {
                    let ug = UPoly::from_poly(&g, u).unwrap();
                    for (h, k) in factor_upoly(&ug, limits)? {
                        out.push((h.to_poly(u).normalize(), m * k));
                    }
                } else {
                    for h in factor_bivariate(&g, u, v)? {
                        out.push((h, m));
                    }
                }
            }
            Ok(Factorization::finish(a, out, Certification::Irreducible))
        }
        _ => {
            let v = *vars.last().unwrap();
            let sq = squarefree(a, v)?;
            Ok(Factorization::finish(a, sq.factors, Certification::SquarefreeOnly))
        }
    }
}

/// Monic irreducible factors with multiplicities over the coefficient field.
pub fn factor_upoly(f: &UPoly, limits: &Limits) -> Result<Vec<(UPoly, u32)>> {
    factor_upoly_over(f, f.field().as_ref(), limits)
}

/// Monic irreducible factors over `Q(a)` (or `Q` when `field` is `None`);
/// `f` may have coefficients in any subfield.
pub fn factor_upoly_over(
    f: &UPoly,
    field: Option<&Arc<NumberField>>,
    limits: &Limits,
) -> Result<Vec<(UPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::Invalid("factorization of zero".into()));
    }
    if f.degree() as u32 > limits.max_degree * 4 {
        return Err(Error::FactorizationCap(format!("degree {}", f.degree())));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_upoly(f) {
        let parts = match field {
            None => factor_squarefree_rational(&g)?,
            Some(field) => factor_squarefree_algebraic(&g, field, limits)?,
        };
        for h in parts {
            out.push((h, m));
        }
    }
    out.sort_by_key(|(h, m)| (h.degree(), h.to_string(), *m));
    Ok(out)
}

/// Integer coefficients of a primitive multiple of a rational polynomial.
fn to_integer_coeffs(f: &UPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.as_rat().unwrap().denom());
    }
    let mut v: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.as_rat().unwrap() * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn from_integer_coeffs(v: &[BigInt]) -> UPoly {
    UPoly::new(v.iter().map(|c| Coeff::Rat(Rat::from_integer(c.clone()))).collect())
}

fn symmetric(c: &BigInt, p: &BigInt) -> BigInt {
    let r = c.mod_floor(p);
    if &r * 2 > *p {
        r - p
    } else {
        r
    }
}

/// Next `s`-subset of `0..r` in lexicographic order; false after the last.
fn advance(idx: &mut [usize], r: usize, s: usize) -> bool {
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < r - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Zassenhaus: factors a square-free rational polynomial into monic
/// irreducibles over `Q`.
fn factor_squarefree_rational(f: &UPoly) -> Result<Vec<UPoly>> {
    if f.degree() <= 1 {
        return Ok(vec![f.monic()]);
    }
    let fz = to_integer_coeffs(f);
    let n = fz.len() - 1;
    let lc = fz[n].clone();
    let norm2: BigInt = fz.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = &lc.abs() * &norm2 * (BigInt::one() << n);
    let fq = from_integer_coeffs(&fz);
    let dfq = fq.derivative();
    let mut p = next_prime(&(&bound * 2 * lc.abs()));
    let field = loop {
        let fp = PrimeField::new(p.clone());
        let a = fp.from_ints(&fz);
        let d = fp.from_ints(&to_integer_coeffs(&dfq));
        if !(&lc % &p).is_zero() && fp.gcd(&a, &d).len() == 1 {
            break fp;
        }
        p = next_prime(&p);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let monic = field.monic(&field.from_ints(&fz));
    let modular = field.factor_squarefree(&monic, &mut rng);
    if modular.len() > 24 {
        return Err(Error::FactorizationCap(format!(
            "{} modular factors",
            modular.len()
        )));
    }
    let mut remaining: Vec<Vec<BigInt>> = modular;
    let mut current = fz;
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lcc = current.last().unwrap().clone();
            let mut g: Vec<BigInt> = vec![field.reduce(&lcc)];
            for &i in &idx {
                g = field.mul(&g, &remaining[i]);
            }
            let g: Vec<BigInt> = g.iter().map(|c| symmetric(c, &field.p)).collect();
            let t0 = &lcc * &current[0];
            if !t0.is_zero() && (g[0].is_zero() || !(&t0 % &g[0]).is_zero()) {
                if advance(&mut idx, r, s) {
                    continue;
                }
                s += 1;
                continue 'outer;
            }
            let gq = from_integer_coeffs(&to_integer_coeffs(&from_integer_coeffs(&g)));
            let cq = from_integer_coeffs(&current);
            let (q, rem) = cq.divrem(&gq);
            if rem.is_zero() {
                found.push(gq.monic());
                current = to_integer_coeffs(&q);
                let mut k = 0;
                remaining.retain(|_| {
                    k += 1;
                    !idx.contains(&(k - 1))
                });
                continue 'outer;
            }
            if !advance(&mut idx, r, s) {
                s += 1;
                continue 'outer;
            }
        }
    }
    if current.len() > 1 {
        found.push(from_integer_coeffs(&current).monic());
    }
    Ok(found)
}

/// Auxiliary variable used internally for field generators; ranks above
/// every variable of user polynomials.
pub(crate) const AUX: Var = Var::Jet(super::JetVar {
    index: u16::MAX,
    order: 0,
});

/// Writes the coefficients of `g` (over `Q(a)`) as polynomials in `AUX`,
/// with the main variable `v`.
fn alg_to_bivariate(g: &UPoly, v: Var) -> Poly {
    let mut p = Poly::zero();
    for (i, c) in g.coeffs().iter().enumerate() {
        for (j, r) in c.repr().into_iter().enumerate() {
            let m = Monomial::from_pairs(vec![(v, i as u32), (AUX, j as u32)]);
            p.add_term(m, Coeff::Rat(r));
        }
    }
    p
}

fn minpoly_poly(field: &NumberField, v: Var) -> Poly {
    Poly::from_terms(
        field
            .minpoly()
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(v, i as u32), Coeff::Rat(c.clone()))),
    )
}

/// Norm `Res_a(m(a), g(t, a))` of a polynomial over `Q(a)`.
pub fn norm(g: &UPoly, field: &NumberField) -> UPoly {
    let t = Var::X;
    let big = alg_to_bivariate(g, t);
    let m = minpoly_poly(field, AUX);
    let r = resultant(&m, &big, AUX).expect("nonzero");
    UPoly::from_poly(&r, t).unwrap()
}

fn factor_squarefree_algebraic(
    f: &UPoly,
    field: &Arc<NumberField>,
    limits: &Limits,
) -> Result<Vec<UPoly>> {
    if f.degree() <= 1 {
        return Ok(vec![f.monic()]);
    }
    let alpha = field.generator();
    for k in 0..64i64 {
        let shift = UPoly::new(vec![&alpha * &Coeff::int(-k), Coeff::one()]);
        let g = f.compose(&shift);
        let n = norm(&g, field);
        if !n.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        for (h, _) in factor_upoly(&n, limits)? {
            let common = h.gcd(&g);
            if common.degree() > 0 {
                let back = UPoly::new(vec![&alpha * &Coeff::int(k), Coeff::one()]);
                out.push(common.compose(&back).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::FactorizationCap("no square-free norm found".into()))
}

/// A field containing `Q(a)` and a root `b` of `h`, irreducible over `Q(a)`,
/// as `Q(g)` with `g = b + k a`. Returns the new field, the image of `a`
/// and the element `b`.
pub fn primitive_element(
    base: Option<&Arc<NumberField>>,
    h: &UPoly,
    name: &str,
    limits: &Limits,
) -> Result<(Arc<NumberField>, Coeff, Coeff)> {
    let Some(field) = base else {
        let deg = h.degree();
        if deg > limits.max_extension {
            return Err(Error::ExtensionCap {
                degree: deg,
                cap: limits.max_extension,
            });
        }
        let m: Vec<Rat> = h.monic().coeffs().iter().map(|c| c.as_rat().unwrap().clone()).collect();
        let nf = NumberField::new(m, name);
        let b = nf.generator();
        return Ok((nf, Coeff::zero(), b));
    };
    let deg = field.degree() * h.degree();
    if deg > limits.max_extension {
        return Err(Error::ExtensionCap {
            degree: deg,
            cap: limits.max_extension,
        });
    }
    let alpha = field.generator();
    for k in 1..64i64 {
        let shift = UPoly::new(vec![&alpha * &Coeff::int(-k), Coeff::one()]);
        let r = norm(&h.compose(&shift), field);
        if !r.is_squarefree() {
            continue;
        }
        let m: Vec<Rat> = r.monic().coeffs().iter().map(|c| c.as_rat().unwrap().clone()).collect();
        let nf = NumberField::new(m, name);
        let gamma = nf.generator();
        // gcd over Q(g) of m(A) and h(g - k A), as polynomials in A
        let lin = UPoly::new(vec![gamma.clone(), Coeff::int(-k)]);
        let mut hh = UPoly::zero();
        for c in h.coeffs().iter().rev() {
            let ca = UPoly::new(c.repr().into_iter().map(Coeff::Rat).collect());
            hh = &(&hh * &lin) + &ca;
        }
        let ma = UPoly::new(field.minpoly().iter().cloned().map(Coeff::Rat).collect());
        let g = ma.gcd(&hh);
        if g.degree() != 1 {
            continue;
        }
        let a_img = -&g.coeff(0);
        let b = &gamma - &(&a_img * &Coeff::int(k));
        return Ok((nf, a_img, b));
    }
    Err(Error::ExtensionCap {
        degree: deg,
        cap: limits.max_extension,
    })
}

// ---- bivariate factorization over Q ----

/// Power series in `u` with polynomial coefficients in `v`, index = u-degree.
type Series = Vec<UPoly>;

fn series_mul(a: &Series, b: &Series, k: usize) -> Series {
    let mut out = vec![UPoly::zero(); k];
    for (i, x) in a.iter().enumerate().take(k) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= k {
                break;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn to_series(f: &Poly, u: Var, v: Var, k: usize) -> Series {
    let mut out = vec![UPoly::zero(); k];
    for (i, c) in f.coeffs_in(u).into_iter().enumerate().take(k) {
        out[i] = UPoly::from_poly(&c, v).unwrap();
    }
    out
}

fn from_series(s: &Series, u: Var, v: Var) -> Poly {
    let coeffs: Vec<Poly> = s.iter().map(|c| c.to_poly(v)).collect();
    Poly::from_coeffs_in(u, &coeffs)
}

/// Inverse of a power series in `u` with rational coefficients.
fn series_inverse(c: &[Coeff], k: usize) -> Vec<Coeff> {
    let inv0 = c[0].inv();
    let mut out = vec![Coeff::zero(); k];
    out[0] = inv0.clone();
    for n in 1..k {
        let mut s = Coeff::zero();
        for i in 1..=n.min(c.len() - 1) {
            s = &s + &(&c[i] * &out[n - i]);
        }
        out[n] = -&(&s * &inv0);
    }
    out
}

/// Lifts `m = a0 b0 (mod u)` with monic coprime `a0, b0` to precision `k`.
fn hensel_pair(m: &Series, a0: &UPoly, b0: &UPoly, k: usize) -> (Series, Series) {
    let (g, s, t) = a0.ext_gcd(b0);
    debug_assert!(g.degree() == 0);
    let mut a = vec![UPoly::zero(); k];
    let mut b = vec![UPoly::zero(); k];
    a[0] = a0.clone();
    b[0] = b0.clone();
    for j in 1..k {
        let mut e = m[j].clone();
        for i in 0..=j {
            e = &e - &(&a[i] * &b[j - i]);
        }
        if e.is_zero() {
            continue;
        }
        a[j] = (&t * &e).rem(a0);
        b[j] = (&s * &e).rem(b0);
    }
    (a, b)
}

fn hensel_all(m: &Series, fs: &[UPoly], k: usize) -> Vec<Series> {
    if fs.len() == 1 {
        return vec![m.clone()];
    }
    let rest = fs[1..].iter().fold(UPoly::one(), |acc, f| &acc * f);
    let (a, b) = hensel_pair(m, &fs[0], &rest, k);
    let mut out = vec![a];
    out.extend(hensel_all(&b, &fs[1..], k));
    out
}

/// Irreducible factors of a rational polynomial in `u < v` that is
/// square-free and primitive with respect to `v`.
fn factor_bivariate(f: &Poly, u: Var, v: Var) -> Result<Vec<Poly>> {
    let f = f.normalize();
    if f.degree(v) <= 1 {
        return Ok(vec![f]);
    }
    if f.degree(u) == 0 {
        let uf = UPoly::from_poly(&f, v).unwrap();
        return Ok(factor_squarefree_rational(&uf)?
            .into_iter()
            .map(|h| h.to_poly(v).normalize())
            .collect());
    }
    let lead = f.lc_in(v);
    let mut point = None;
    for i in 0..60i64 {
        let a = if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 };
        let ca = Coeff::int(a);
        if lead.eval(u, &ca).is_zero() {
            continue;
        }
        let fa = UPoly::from_poly(&f.eval(u, &ca), v).unwrap();
        if fa.is_squarefree() {
            point = Some((ca, fa));
            break;
        }
    }
    let Some((a, fa)) = point else {
        return Err(Error::FactorizationCap("no good evaluation point".into()));
    };
    let uni = factor_squarefree_rational(&fa)?;
    if uni.len() == 1 {
        return Ok(vec![f]);
    }
    let shifted = f.subst(u, &(&Poly::var(u) + &Poly::constant(a.clone())));
    let k = (f.degree(u) + lead.degree(u) + 1) as usize;
    let lead_s = shifted.lc_in(v);
    let lu = UPoly::from_poly(&lead_s, u).unwrap();
    let inv = series_inverse(lu.coeffs(), k);
    let inv_series: Series = inv.into_iter().map(UPoly::constant).collect();
    let monic = series_mul(&to_series(&shifted, u, v, k), &inv_series, k);
    let lifted = hensel_all(&monic, &uni, k);

    let fwd = &Poly::var(u) + &Poly::constant(a.clone());
    let back = &Poly::var(u) - &Poly::constant(a);
    let mut remaining = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let cur_lead = current.lc_in(v).subst(u, &fwd);
            let mut prod = to_series(&cur_lead, u, v, k);
            for &i in &idx {
                prod = series_mul(&prod, &remaining[i], k);
            }
            let cand = from_series(&prod, u, v).subst(u, &back);
            let cand = super::gcd::primitive_part_in(&cand, v);
            if cand.degree(v) > 0 {
                if let Some(q) = current.div_exact(&cand) {
                    found.push(cand);
                    current = q.normalize();
                    let mut j = 0;
                    remaining.retain(|_| {
                        j += 1;
                        !idx.contains(&(j - 1))
                    });
                    continue 'outer;
                }
            }
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if current.degree(v) > 0 {
        found.push(current.normalize());
    }
    Ok(found)
}
