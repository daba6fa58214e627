//! Algebraic and differential Thomas decomposition.
//!
//! The algebraic phase keeps, per branch, a triangular set of equations and
//! inequations with pairwise distinct leaders and a queue of polynomials
//! still to be inserted. The queue is processed highest leader first. Each
//! polynomial is reduced modulo the equations, then split on its initial
//! and on the subresultant chain with its derivative (square-freeness), and
//! finally combined with the member sharing its leader through the
//! subresultant chain of the pair. Polynomials in `x` alone are units.
//!
//! The differential phase eliminates proper derivatives of equation leaders
//! by reduction with derived equations and re-runs the algebraic phase until
//! nothing changes.

use std::collections::BTreeMap;

use crate::diff_ring::{derive, leader, rank};
use crate::error::{Error, Result};
use crate::poly::division::{pquo_full, pseudo_divide};
use crate::poly::gcd::{content_in, gcd_any, subresultant_chain};
use crate::poly::{JetVar, Monomial, Poly, Var};
use crate::poly::factor::factor;
use crate::systems::{is_algebraic_simple, DiffSystem, Kind, SimpleSystem};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Algebraic,
    Differential,
}

/// Simple systems whose solution sets partition the input's.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub systems: Vec<SimpleSystem>,
    pub input: DiffSystem,
    pub mode: Mode,
    /// `path<TAB>action<TAB>polynomial` lines, one per split decision.
    pub log: Vec<String>,
}

type Members = BTreeMap<JetVar, Poly>;

#[derive(Clone, Debug)]
struct Task {
    eqs: Members,
    neqs: Members,
    queue: Vec<(Poly, bool)>,
    atoms: Vec<Poly>,
    path: String,
    differential: bool,
}

enum Status {
    Zero,
    NonZero,
    Unknown(Poly),
}

struct Branch {
    j: usize,
    zeros: Vec<Poly>,
    nonzero: Option<Poly>,
}

struct Engine<'a> {
    names: &'a [String],
    fuel: usize,
    used: usize,
    log: Vec<String>,
    differential: bool,
}

/// Content with respect to the jet variables, a polynomial in `x`.
fn x_content(p: &Poly) -> Poly {
    let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (jets, e) = m.split(Var::X);
        groups
            .entry(jets)
            .or_default()
            .add_term(Monomial::var(Var::X, e), c.clone());
    }
    let mut g = Poly::zero();
    for q in groups.values() {
        g = gcd_any(&g, q);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// Complete algebraic reduction modulo a triangular set of equations. With
/// `differential`, proper derivatives of equation leaders are eliminated too,
/// using the derived equation (whose separant is nonzero on the branch).
fn reduce(p: &Poly, eqs: &Members, differential: bool) -> Poly {
    let mut r = p.clone();
    loop {
        let mut target = None;
        for w in r.jet_vars().into_iter().rev() {
            if let Some(q) = eqs.get(&w) {
                if r.degree(Var::Jet(w)) >= q.degree(Var::Jet(w)) {
                    target = Some((w, q.clone()));
                    break;
                }
            }
            if differential {
                let below = eqs
                    .range(JetVar::new(w.index as usize, 0)..w)
                    .next_back();
                if let Some((l, g)) = below {
                    target = Some((w, derive(g, (w.order - l.order) as usize)));
                    break;
                }
            }
        }
        let Some((w, q)) = target else {
            return r;
        };
        r = pseudo_divide(&r, &q, Var::Jet(w))
            .expect("leader occurs")
            .remainder;
    }
}

/// Removes the `x`-content and factors known to be nonzero.
fn strip(p: &Poly, atoms: &[Poly]) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = x_content(p);
    let mut r = p.div_exact(&c).unwrap();
    for a in atoms {
        while let Some(q) = r.div_exact(a) {
            r = q;
            if r.is_constant() {
                break;
            }
        }
    }
    r.normalize()
}

impl Task {
    fn status(&self, c: &Poly) -> Status {
        let r = strip(&reduce(c, &self.eqs, self.differential), &self.atoms);
        if r.is_zero() {
            Status::Zero
        } else if !r.has_jets() {
            Status::NonZero
        } else {
            Status::Unknown(r)
        }
    }

    fn child(&self, suffix: usize) -> Task {
        let mut t = self.clone();
        t.path = format!("{}.{}", self.path, suffix);
        t
    }

    fn apply(&mut self, b: &Branch) {
        for z in &b.zeros {
            self.queue.push((z.clone(), true));
        }
        if let Some(c) = &b.nonzero {
            self.atoms.push(c.clone());
            self.queue.push((c.clone(), false));
        }
    }

    fn pick(&self) -> usize {
        let key = |(p, e): &(Poly, bool)| {
            let l = leader(p);
            let d = l.map_or(0, |l| p.degree(Var::Jet(l)));
            (l, *e, std::cmp::Reverse(d))
        };
        let mut best = 0;
        for i in 1..self.queue.len() {
            let (a, b) = (key(&self.queue[i]), key(&self.queue[best]));
            if a > b || (a == b && self.queue[i].0.to_string() < self.queue[best].0.to_string()) {
                best = i;
            }
        }
        best
    }
}

/// Branches of a subresultant chain: branch `j` asserts that the principal
/// coefficients below `j` vanish and the `j`-th does not.
fn chain_branches(t: &Task, chain: &[Poly], v: Var) -> Vec<Branch> {
    let mut prefix = Vec::new();
    let mut out = Vec::new();
    for (j, s) in chain.iter().enumerate() {
        match t.status(&s.coeff_in(v, j as u32)) {
            Status::Zero => {}
            Status::NonZero => {
                out.push(Branch {
                    j,
                    zeros: prefix.clone(),
                    nonzero: None,
                });
                return out;
            }
            Status::Unknown(c) => {
                out.push(Branch {
                    j,
                    zeros: prefix.clone(),
                    nonzero: Some(c.clone()),
                });
                prefix.push(c);
            }
        }
    }
    out
}

enum Outcome {
    Continue(Task),
    Simple(Task),
}

impl<'a> Engine<'a> {
    fn show(&self, p: &Poly) -> String {
        let s = DiffSystem::new(self.names.to_vec(), vec![], vec![]);
        s.show(p)
    }

    fn note(&mut self, path: &str, action: &str, p: &Poly) {
        let line = format!("{}\t{}\t{}", path, action, self.show(p));
        self.log.push(line);
    }

    fn burn(&mut self, path: &str) -> Result<()> {
        self.used += 1;
        if self.used > self.fuel {
            return Err(Error::FuelExhausted(self.fuel, path.to_string()));
        }
        Ok(())
    }

    /// Runs the algebraic phase, returning the simple systems as
    /// `(equations, inequations, path)`.
    fn algebraic(&mut self, eqs: &[Poly], neqs: &[Poly], path: &str) -> Result<Vec<Task>> {
        let mut queue: Vec<(Poly, bool)> = eqs.iter().map(|p| (p.clone(), true)).collect();
        queue.extend(neqs.iter().map(|p| (p.clone(), false)));
        let mut stack = vec![Task {
            eqs: Members::new(),
            neqs: Members::new(),
            queue,
            atoms: Vec::new(),
            path: path.to_string(),
            differential: self.differential,
        }];
        let mut done = Vec::new();
        while let Some(t) = stack.pop() {
            self.burn(&t.path)?;
            let outs = self.step(t)?;
            // reversed so that the first listed branch is processed first
            for o in outs.into_iter().rev() {
                match o {
                    Outcome::Continue(t) => stack.push(t),
                    Outcome::Simple(t) => {
                        self.note(&t.path, "simple", &Poly::one());
                        done.push(t)
                    }
                }
            }
        }
        Ok(done)
    }

    fn step(&mut self, mut t: Task) -> Result<Vec<Outcome>> {
        if t.queue.is_empty() {
            return Ok(vec![self.post_pass(t)]);
        }
        let idx = t.pick();
        let (p, is_eq) = t.queue.remove(idx);
        // an inequation may itself be one of the atoms, so only the
        // x-content is removed from it
        let atoms: &[Poly] = if is_eq { &t.atoms } else { &[] };
        let r = strip(&reduce(&p, &t.eqs, t.differential), atoms);
        if r.is_zero() {
            if is_eq {
                return Ok(vec![Outcome::Continue(t)]);
            }
            self.note(&t.path, "inconsistent", &p);
            return Ok(vec![]);
        }
        if !r.has_jets() {
            if is_eq {
                self.note(&t.path, "inconsistent", &p);
                return Ok(vec![]);
            }
            return Ok(vec![Outcome::Continue(t)]);
        }
        let v = leader(&r).unwrap();
        let vv = Var::Jet(v);

        let cont = content_in(&r, vv);
        if !cont.is_constant() {
            let pp = r.div_exact(&cont).unwrap();
            if !is_eq {
                t.queue.push((cont, false));
                t.queue.push((pp, false));
                return Ok(vec![Outcome::Continue(t)]);
            }
            let mut a = t.child(1);
            self.note(&a.path, "content!=0", &cont);
            a.atoms.push(cont.clone());
            a.queue.push((cont.clone(), false));
            a.queue.push((pp, true));
            let mut b = t.child(2);
            self.note(&b.path, "content=0", &cont);
            b.queue.push((cont, true));
            return Ok(vec![Outcome::Continue(a), Outcome::Continue(b)]);
        }
        // same zero set, lower degree
        let g = gcd_any(&r, &r.diff(vv));
        let r = if g.degree(vv) > 0 {
            r.div_exact(&g).unwrap().normalize()
        } else {
            r
        };
        let d = r.degree(vv);

        match t.status(&r.lc_in(vv)) {
            Status::Zero => {
                t.queue.push((r.reductum_in(vv), is_eq));
                return Ok(vec![Outcome::Continue(t)]);
            }
            Status::Unknown(c) => {
                let mut a = t.child(1);
                self.note(&a.path, "init!=0", &c);
                a.atoms.push(c.clone());
                a.queue.push((c.clone(), false));
                a.queue.push((r.clone(), is_eq));
                let mut b = t.child(2);
                self.note(&b.path, "init=0", &c);
                b.queue.push((c, true));
                b.queue.push((r.reductum_in(vv), is_eq));
                return Ok(vec![Outcome::Continue(a), Outcome::Continue(b)]);
            }
            Status::NonZero => {}
        }

        if d >= 2 {
            let chain = subresultant_chain(&r, &r.diff(vv), vv);
            let branches = chain_branches(&t, &chain, vv);
            let trivial = branches.len() == 1 && branches[0].j == 0 && branches[0].nonzero.is_none();
            if !trivial {
                let mut outs = Vec::new();
                for (k, b) in branches.iter().enumerate() {
                    let mut nt = t.child(k + 1);
                    nt.apply(b);
                    let np = if b.j == 0 {
                        r.clone()
                    } else {
                        pquo_full(&r, &chain[b.j], vv)?
                    };
                    self.note(&nt.path, &format!("squarefree:{}", b.j), &np);
                    nt.queue.push((np, is_eq));
                    outs.push(Outcome::Continue(nt));
                }
                return Ok(outs);
            }
        }

        if is_eq {
            if let Some(q) = t.eqs.get(&v).cloned() {
                let (a, b) = if d >= q.degree(vv) { (&r, &q) } else { (&q, &r) };
                let chain = subresultant_chain(a, b, vv);
                let mut outs = Vec::new();
                for (k, br) in chain_branches(&t, &chain, vv).iter().enumerate() {
                    let mut nt = t.child(k + 1);
                    if br.j == 0 {
                        self.note(&nt.path, "gcd:0 inconsistent", &r);
                        continue;
                    }
                    nt.apply(br);
                    nt.eqs.remove(&v);
                    self.note(&nt.path, &format!("gcd:{}", br.j), &chain[br.j]);
                    nt.queue.push((chain[br.j].clone(), true));
                    outs.push(Outcome::Continue(nt));
                }
                return Ok(outs);
            }
            if let Some(q) = t.neqs.get(&v).cloned() {
                let (a, b) = if d >= q.degree(vv) { (&r, &q) } else { (&q, &r) };
                let chain = subresultant_chain(a, b, vv);
                let mut outs = Vec::new();
                for (k, br) in chain_branches(&t, &chain, vv).iter().enumerate() {
                    let mut nt = t.child(k + 1);
                    if br.j as u32 == d {
                        self.note(&nt.path, "divides inequation", &r);
                        continue;
                    }
                    nt.apply(br);
                    nt.neqs.remove(&v);
                    let np = if br.j == 0 {
                        r.clone()
                    } else {
                        pquo_full(&r, &chain[br.j], vv)?
                    };
                    self.note(&nt.path, &format!("coprime:{}", br.j), &np);
                    nt.queue.push((np, true));
                    outs.push(Outcome::Continue(nt));
                }
                return Ok(outs);
            }
            t.eqs.insert(v, r);
            return Ok(vec![Outcome::Continue(t)]);
        }

        if let Some(q) = t.eqs.get(&v).cloned() {
            let dq = q.degree(vv);
            let (a, b) = if dq >= d { (&q, &r) } else { (&r, &q) };
            let chain = subresultant_chain(a, b, vv);
            let mut outs = Vec::new();
            for (k, br) in chain_branches(&t, &chain, vv).iter().enumerate() {
                let mut nt = t.child(k + 1);
                if br.j as u32 == dq {
                    self.note(&nt.path, "equation divides", &r);
                    continue;
                }
                nt.apply(br);
                if br.j > 0 {
                    nt.eqs.remove(&v);
                    let np = pquo_full(&q, &chain[br.j], vv)?;
                    self.note(&nt.path, &format!("coprime:{}", br.j), &np);
                    nt.queue.push((np, true));
                }
                outs.push(Outcome::Continue(nt));
            }
            return Ok(outs);
        }
        if let Some(q) = t.neqs.remove(&v) {
            t.queue.push((&q * &r, false));
            return Ok(vec![Outcome::Continue(t)]);
        }
        t.atoms.push(r.clone());
        t.neqs.insert(v, r);
        Ok(vec![Outcome::Continue(t)])
    }

    /// Requeues members that are no longer completely reduced.
    fn post_pass(&mut self, mut t: Task) -> Outcome {
        let mut changed = false;
        for (v, p) in t.eqs.clone() {
            let mut others = t.eqs.clone();
            others.remove(&v);
            let r = reduce(&p, &others, t.differential);
            if r.normalize() != p {
                t.eqs.remove(&v);
                t.queue.push((r, true));
                changed = true;
            }
        }
        for (v, p) in t.neqs.clone() {
            let r = reduce(&p, &t.eqs, t.differential);
            if r.normalize() != p {
                t.neqs.remove(&v);
                t.atoms.retain(|a| a != &p);
                t.queue.push((r, false));
                changed = true;
            }
        }
        if changed {
            Outcome::Continue(t)
        } else {
            Outcome::Simple(t)
        }
    }

    /// Differential phase on top of the algebraic one.
    fn differential(&mut self, s: &DiffSystem) -> Result<Vec<Task>> {
        let mut work = vec![(s.equations.clone(), s.inequations.clone(), "0".to_string())];
        let mut out = Vec::new();
        while let Some((eqs, neqs, path)) = work.pop() {
            let simple = self.algebraic(&eqs, &neqs, &path)?;
            for (k, t) in simple.into_iter().enumerate().rev() {
                match differential_target(&t) {
                    None => out.push(t),
                    Some((w, g, s)) => {
                        self.burn(&t.path)?;
                        let dg = derive(&g, s);
                        let wv = Var::Jet(w);
                        let red = |p: &Poly| -> Poly {
                            if p.contains_var(wv) {
                                pseudo_divide(p, &dg, wv).unwrap().remainder
                            } else {
                                p.clone()
                            }
                        };
                        let e: Vec<Poly> = t.eqs.values().map(red).collect();
                        let n: Vec<Poly> = t.neqs.values().map(red).collect();
                        let npath = format!("{}.d{}", t.path, k + 1);
                        self.note(&npath, "reduce", &dg);
                        work.push((e, n, npath));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The highest occurring proper derivative of an equation leader, with the
/// equation and the derivation order needed to eliminate it.
fn differential_target(t: &Task) -> Option<(JetVar, Poly, usize)> {
    let mut vars = std::collections::BTreeSet::new();
    for p in t.eqs.values().chain(t.neqs.values()) {
        vars.extend(p.jet_vars());
    }
    for w in vars.into_iter().rev() {
        let g = t
            .eqs
            .iter()
            .find(|(l, _)| l.index == w.index && l.order < w.order);
        if let Some((l, g)) = g {
            return Some((w, g.clone(), (w.order - l.order) as usize));
        }
    }
    None
}

fn to_system(names: &[String], t: &Task) -> DiffSystem {
    DiffSystem::new(
        names.to_vec(),
        t.eqs.values().cloned().collect(),
        t.neqs.values().cloned().collect(),
    )
}

/// Merges `C + {p = 0}` and `C + {p != 0}` into `C`.
fn merge_complementary(mut systems: Vec<(Members, Members)>) -> Vec<(Members, Members)> {
    'again: loop {
        for i in 0..systems.len() {
            for j in 0..systems.len() {
                if i == j {
                    continue;
                }
                let (ae, an) = &systems[i];
                let (be, bn) = &systems[j];
                for (v, p) in ae {
                    if bn.get(v) != Some(p) || be.contains_key(v) || an.contains_key(v) {
                        continue;
                    }
                    let mut ce = ae.clone();
                    ce.remove(v);
                    let mut cn = bn.clone();
                    cn.remove(v);
                    if &ce == be && &cn == an {
                        let (hi, lo) = (i.max(j), i.min(j));
                        systems.remove(hi);
                        systems.remove(lo);
                        systems.push((ce, cn));
                        continue 'again;
                    }
                }
            }
        }
        return systems;
    }
}

fn canonical(mut systems: Vec<SimpleSystem>) -> Vec<SimpleSystem> {
    let key = |s: &SimpleSystem| {
        let mut leaders: Vec<JetVar> = s.leaders();
        leaders.sort();
        let printed = s.system.to_string();
        (s.kind, leaders, printed)
    };
    systems.sort_by_key(key);
    systems.dedup_by(|a, b| a.system == b.system);
    systems
}

fn engine<'a>(names: &'a [String], cfg: &Config, differential: bool) -> Engine<'a> {
    Engine {
        names,
        differential,
        fuel: cfg.fuel,
        used: 0,
        log: Vec::new(),
    }
}

/// Algebraic Thomas decomposition: the jet variables are treated as
/// independent algebraic unknowns.
pub fn algebraic_decompose(s: &DiffSystem, cfg: &Config) -> Result<Decomposition> {
    let mut e = engine(&s.names, cfg, false);
    let tasks = if s.inconsistent {
        Vec::new()
    } else {
        e.algebraic(&s.equations, &s.inequations, "0")?
    };
    let merged = merge_complementary(tasks.into_iter().map(|t| (t.eqs, t.neqs)).collect());
    let systems = merged
        .into_iter()
        .map(|(eqs, neqs)| {
            let t = Task {
                eqs,
                neqs,
                queue: vec![],
                atoms: vec![],
                path: String::new(),
                differential: false,
            };
            SimpleSystem::new(to_system(&s.names, &t), true, false)
        })
        .collect();
    Ok(Decomposition {
        systems: canonical(systems),
        input: s.clone(),
        mode: Mode::Algebraic,
        log: e.log,
    })
}

/// Differential Thomas decomposition with completely reduced members.
pub fn differential_decompose(s: &DiffSystem, cfg: &Config) -> Result<Decomposition> {
    differential_inner(s, cfg, true)
}

fn differential_inner(s: &DiffSystem, cfg: &Config, prune: bool) -> Result<Decomposition> {
    let mut e = engine(&s.names, cfg, true);
    let tasks = if s.inconsistent {
        Vec::new()
    } else {
        e.differential(s)?
    };
    let mut systems = Vec::new();
    for t in &tasks {
        let mut sys = to_system(&s.names, t);
        if prune {
            sys = prune_inequations(sys, cfg)?;
        }
        systems.push(SimpleSystem::new(sys, true, true));
    }
    Ok(Decomposition {
        systems: canonical(systems),
        input: s.clone(),
        mode: Mode::Differential,
        log: e.log,
    })
}

/// Drops irreducible factors `f` of inequations when adding `f = 0` leaves
/// no differential solutions and the system stays algebraically simple.
fn prune_inequations(sys: DiffSystem, cfg: &Config) -> Result<DiffSystem> {
    let mut neqs: Vec<Option<Poly>> = sys.inequations.iter().cloned().map(Some).collect();
    let rebuild = |neqs: &[Option<Poly>]| -> Vec<Poly> { neqs.iter().flatten().cloned().collect() };
    for i in 0..neqs.len() {
        let q = neqs[i].clone().unwrap();
        let Ok(fz) = factor(&q, &cfg.limits) else {
            continue;
        };
        let mut keep: Vec<Poly> = fz
            .factors
            .into_iter()
            .map(|(f, _)| f)
            .filter(|f| f.has_jets())
            .collect();
        let mut j = 0;
        while j < keep.len() {
            let rest = keep
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(Poly::one(), |acc, (_, f)| &acc * f);
            let mut cand = neqs.clone();
            cand[i] = if keep.len() == 1 { None } else { Some(rest.normalize()) };
            let reduced = DiffSystem::new(sys.names.clone(), sys.equations.clone(), rebuild(&cand));
            let mut eqs = sys.equations.clone();
            eqs.push(keep[j].clone());
            let test = DiffSystem::new(sys.names.clone(), eqs, rebuild(&cand));
            let redundant = differential_inner(&test, cfg, false)?.systems.is_empty()
                && is_algebraic_simple(&reduced, cfg)?.is_ok();
            if redundant {
                keep.remove(j);
                neqs = cand;
            } else {
                j += 1;
            }
        }
    }
    Ok(DiffSystem::new(sys.names.clone(), sys.equations.clone(), rebuild(&neqs)))
}

/// Decomposes a type I system together with `p(x, y_t) = 0`; the outputs
/// have type IV.
pub fn decompose_with_constraint(s: &SimpleSystem, p: &Poly, cfg: &Config) -> Result<Decomposition> {
    if s.kind != Kind::I {
        return Err(Error::Invalid(format!("expected a type I system, found {}", s.kind)));
    }
    let t = s.t.unwrap();
    if rank(p).map(|(l, _)| l) != Some(JetVar::new(t, 0)) {
        return Err(Error::Invalid("constraint must have leader y_t".into()));
    }
    let mut eqs = s.system.equations.clone();
    eqs.push(p.clone());
    let sys = DiffSystem::new(s.system.names.clone(), eqs, s.system.inequations.clone());
    differential_decompose(&sys, cfg)
}
