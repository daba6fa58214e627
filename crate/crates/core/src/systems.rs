//! Differential systems, simplicity checks, algebraic dimension and the
//! classification of simple systems of dimension at most one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diff_ring::{self, leader};
use crate::error::Result;
use crate::poly::gcd::discriminant;
use crate::poly::{jet_name, JetVar, Poly, Var};
use crate::thomas;
use crate::Config;

/// Equations `F = 0` and inequations `U != 0` in the indeterminates named by
/// `names` (index `j` is `y_{j+1}`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffSystem {
    pub equations: Vec<Poly>,
    pub inequations: Vec<Poly>,
    pub names: Vec<String>,
    /// Set when a zero inequation was supplied.
    pub inconsistent: bool,
}

impl DiffSystem {
    /// Drops zero equations; a zero inequation marks the system inconsistent.
    pub fn new(names: Vec<String>, equations: Vec<Poly>, inequations: Vec<Poly>) -> DiffSystem {
        let inconsistent = inequations.iter().any(|p| p.is_zero());
        DiffSystem {
            equations: equations.into_iter().filter(|p| !p.is_zero()).collect(),
            inequations: inequations.into_iter().filter(|p| !p.is_zero()).collect(),
            names,
            inconsistent,
        }
    }

    /// Names `y1, ..., yn`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{}", i)).collect()
    }

    pub fn num_indeterminates(&self) -> usize {
        self.names.len()
    }

    pub fn members(&self) -> impl Iterator<Item = &Poly> {
        self.equations.iter().chain(self.inequations.iter())
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            Var::X => "x".to_string(),
            Var::Jet(j) => {
                let base = self
                    .names
                    .get(j.index as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("y{}", j.index + 1));
                jet_name(&base, j.order as usize)
            }
        }
    }

    pub fn show(&self, p: &Poly) -> String {
        p.display(&|v| self.var_name(v)).to_string()
    }

    /// Maximal occurring order per present indeterminate.
    pub fn ambient(&self) -> BTreeMap<usize, usize> {
        let mut out: BTreeMap<usize, usize> = BTreeMap::new();
        for p in self.members() {
            for j in p.jet_vars() {
                let e = out.entry(j.index as usize).or_insert(0);
                *e = (*e).max(j.order as usize);
            }
        }
        out
    }

    /// Jet coordinates `y_j^(k)` with `k <= m_j` for every present `j`.
    pub fn coordinates(&self) -> BTreeSet<JetVar> {
        let mut out = BTreeSet::new();
        for (j, m) in self.ambient() {
            for k in 0..=m {
                out.insert(JetVar::new(j, k));
            }
        }
        out
    }

    pub fn contains_x(&self) -> bool {
        self.members().any(|p| p.contains_var(Var::X))
    }

    pub fn present(&self) -> BTreeSet<usize> {
        self.ambient().keys().copied().collect()
    }

    /// Equations and inequations ordered by leader.
    pub fn sorted(&self) -> DiffSystem {
        let key = |p: &Poly| (diff_ring::rank(p), self.show(p));
        let mut e = self.equations.clone();
        let mut u = self.inequations.clone();
        e.sort_by_key(key);
        u.sort_by_key(key);
        DiffSystem {
            equations: e,
            inequations: u,
            names: self.names.clone(),
            inconsistent: self.inconsistent,
        }
    }

    /// Substitutes `x -> x + c` in every member.
    pub fn map_polys<F: Fn(&Poly) -> Poly>(&self, f: F) -> DiffSystem {
        DiffSystem::new(
            self.names.clone(),
            self.equations.iter().map(&f).collect(),
            self.inequations.iter().map(&f).collect(),
        )
    }
}

impl fmt::Display for DiffSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .equations
            .iter()
            .map(|p| format!("{} = 0", self.show(p)))
            .collect();
        parts.extend(self.inequations.iter().map(|p| format!("{} /= 0", self.show(p))));
        write!(f, "{{ {} }}", parts.join(", "))
    }
}

/// Shapes of simple systems of dimension at most one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    I,
    II,
    III,
    IV,
    Other,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::I => "I",
            Kind::II => "II",
            Kind::III => "III",
            Kind::IV => "IV",
            Kind::Other => "other",
        };
        write!(f, "{}", s)
    }
}

/// A simple system together with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSystem {
    pub system: DiffSystem,
    pub algebraic_simple: bool,
    pub differential_simple: bool,
    pub kind: Kind,
    /// The distinguished index of types I, II and IV.
    pub t: Option<usize>,
    /// Indeterminates absent from the system.
    pub free_variables: Vec<usize>,
    /// The indeterminate of a type II system.
    pub parametric: Option<usize>,
}

impl SimpleSystem {
    pub fn new(system: DiffSystem, algebraic_simple: bool, differential_simple: bool) -> SimpleSystem {
        let system = system.sorted();
        let (kind, t) = classify(&system);
        let present = system.present();
        let free_variables = (0..system.num_indeterminates())
            .filter(|j| !present.contains(j))
            .collect();
        SimpleSystem {
            parametric: if kind == Kind::II { t } else { None },
            system,
            algebraic_simple,
            differential_simple,
            kind,
            t,
            free_variables,
        }
    }

    /// Equation leaders.
    pub fn leaders(&self) -> Vec<JetVar> {
        self.system.equations.iter().filter_map(leader).collect()
    }

    /// Algebraic dimension read off the leaders of the simple system.
    pub fn dimension(&self) -> usize {
        self.system.coordinates().len() - self.leaders().len()
    }
}

/// Syntactic classification; `t` is the distinguished indeterminate.
pub fn classify(s: &DiffSystem) -> (Kind, Option<usize>) {
    let present = s.present();
    let mut eq_leaders: BTreeMap<usize, Vec<u16>> = BTreeMap::new();
    for p in &s.equations {
        match leader(p) {
            Some(l) => eq_leaders.entry(l.index as usize).or_default().push(l.order),
            None => return (Kind::Other, None),
        }
    }
    if eq_leaders.values().any(|v| v.len() > 1) {
        return (Kind::Other, None);
    }
    let mut ineq_leaders = Vec::new();
    for p in &s.inequations {
        match leader(p) {
            Some(l) => ineq_leaders.push(l),
            None => return (Kind::Other, None),
        }
    }
    let derivative_leaders: Vec<usize> = eq_leaders
        .iter()
        .filter(|(_, o)| o[0] > 0)
        .map(|(j, _)| *j)
        .collect();
    let missing: Vec<usize> = present
        .iter()
        .filter(|j| !eq_leaders.contains_key(j))
        .copied()
        .collect();
    let has_x = s.contains_x();
    let max_order = s.ambient().values().copied().max().unwrap_or(0);
    if derivative_leaders.is_empty() {
        if max_order > 0 {
            return (Kind::Other, None);
        }
        if missing.is_empty() {
            if !ineq_leaders.is_empty() {
                return (Kind::Other, None);
            }
            return if has_x { (Kind::IV, None) } else { (Kind::III, None) };
        }
        if missing.len() == 1 && !has_x {
            let t = missing[0];
            let ok = ineq_leaders.len() <= 1
                && ineq_leaders.iter().all(|l| l.index as usize == t && l.order == 0);
            if ok {
                return (Kind::II, Some(t));
            }
        }
        return (Kind::Other, None);
    }
    if derivative_leaders.len() != 1 || !missing.is_empty() || has_x {
        return (Kind::Other, None);
    }
    let t = derivative_leaders[0];
    if eq_leaders[&t][0] != 1 {
        return (Kind::Other, None);
    }
    // only y_t' may occur as a derivative
    let higher = s
        .members()
        .flat_map(|p| p.jet_vars())
        .any(|j| j.order > 1 || (j.order == 1 && j.index as usize != t));
    let ok = !higher
        && ineq_leaders.len() <= 1
        && ineq_leaders.iter().all(|l| l.index as usize == t && l.order == 0);
    if ok {
        (Kind::I, Some(t))
    } else {
        (Kind::Other, None)
    }
}

/// A failed simplicity condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Algebraic simplicity: pairwise distinct leaders, nonconstant members,
/// and neither the initial nor the discriminant of a member vanishes at a
/// solution of the members below it.
pub fn is_algebraic_simple(s: &DiffSystem, cfg: &Config) -> Result<std::result::Result<(), Violation>> {
    if s.inconsistent {
        return Ok(Err(Violation("zero inequation".into())));
    }
    let mut seen = BTreeSet::new();
    for p in s.members() {
        match leader(p) {
            None => return Ok(Err(Violation(format!("member {} has no leader", s.show(p))))),
            Some(l) => {
                if !seen.insert(l) {
                    return Ok(Err(Violation(format!("leader {} repeated", s.var_name(Var::Jet(l))))));
                }
            }
        }
    }
    for p in s.members() {
        let l = leader(p).unwrap();
        let lv = Var::Jet(l);
        let below = |q: &Poly| leader(q).is_some_and(|m| m < l);
        let eqs: Vec<Poly> = s.equations.iter().filter(|q| below(q)).cloned().collect();
        let neqs: Vec<Poly> = s.inequations.iter().filter(|q| below(q)).cloned().collect();
        let mut guards = vec![("initial", p.lc_in(lv))];
        if p.degree(lv) >= 2 {
            guards.push(("discriminant", discriminant(p, lv)?));
        }
        for (what, g) in guards {
            let mut e = eqs.clone();
            e.push(g);
            let sub = DiffSystem::new(s.names.clone(), e, neqs.clone());
            let dec = thomas::algebraic_decompose(&sub, cfg)?;
            if !dec.systems.is_empty() {
                return Ok(Err(Violation(format!(
                    "{} of {} can vanish",
                    what,
                    s.show(p)
                ))));
            }
        }
    }
    Ok(Ok(()))
}

/// Differential simplicity: algebraic simplicity, every equation reduced
/// modulo the other equations and every inequation reduced modulo the
/// equations.
pub fn is_differential_simple(
    s: &DiffSystem,
    complete: bool,
    cfg: &Config,
) -> Result<std::result::Result<(), Violation>> {
    if let Err(v) = is_algebraic_simple(s, cfg)? {
        return Ok(Err(v));
    }
    for (i, p) in s.equations.iter().enumerate() {
        let others: Vec<Poly> = s
            .equations
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, q)| q.clone())
            .collect();
        if !diff_ring::is_reduced(p, &others, complete) {
            return Ok(Err(Violation(format!("{} is not reduced", s.show(p)))));
        }
    }
    for p in &s.inequations {
        if !diff_ring::is_reduced(p, &s.equations, complete) {
            return Ok(Err(Violation(format!("{} is not reduced", s.show(p)))));
        }
    }
    Ok(Ok(()))
}

/// Algebraic dimension or inconsistency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Inconsistent,
    Value(usize),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Inconsistent => write!(f, "inconsistent"),
            Dimension::Value(d) => write!(f, "{}", d),
        }
    }
}

/// Maximum over an algebraic Thomas decomposition of the number of ambient
/// coordinates minus the number of equation leaders.
pub fn dimension(s: &DiffSystem, cfg: &Config) -> Result<Dimension> {
    let coords = s.coordinates().len();
    let dec = thomas::algebraic_decompose(s, cfg)?;
    Ok(dec
        .systems
        .iter()
        .map(|t| coords - t.leaders().len())
        .max()
        .map_or(Dimension::Inconsistent, Dimension::Value))
}
