//! Sparse multivariate polynomials over ℚ(√5) with named variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::ExactScalar;
use super::AlgebraError;

/// Well-known variable names in their fixed global order. Variables not listed
/// here sort after these, alphabetically.
const REGISTRY: &[&str] = &[
    "x", "y", "z", "x1", "x2", "x3", "x4", "t", "th1", "th2", "th3", "eta", "eta1", "eta2", "eta3", "eta4", "eta5",
    "eta6", "eta7", "X", "Y", "Z", "s", "v",
];

fn var_key(name: &str) -> (usize, &str) {
    match REGISTRY.iter().position(|v| *v == name) {
        Some(i) => (i, ""),
        None => (REGISTRY.len(), name),
    }
}

/// Compare two variable names in the global registry order.
pub fn var_order(a: &str, b: &str) -> Ordering {
    var_key(a).cmp(&var_key(b))
}

/// Exponent vector aligned with the owning polynomial's variable list.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right (the first registered variable is most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in canonical sparse form.
///
/// The variable list holds exactly the variables that occur, sorted in the
/// registry order, and no stored coefficient is zero. Structural equality is
/// therefore value equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, ExactScalar>,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.sort_by(|p, q| var_order(p, q));
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ExactScalar::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(ExactScalar::one(), &[(name, 1)])
    }

    /// `coeff · Π name^exp`
    pub fn monomial(coeff: ExactScalar, powers: &[(&str, u32)]) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut vars: Vec<String> = Vec::new();
        for (n, e) in powers {
            if *e > 0 && !vars.iter().any(|v| v == n) {
                vars.push(n.to_string());
            }
        }
        vars.sort_by(|p, q| var_order(p, q));
        let mut exps = vec![0u32; vars.len()];
        for (n, e) in powers {
            if let Some(i) = vars.iter().position(|v| v == n) {
                exps[i] += e;
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), coeff);
        MultiPoly { vars, terms }
    }

    /// Build from `(exponents, coeff)` pairs over an explicit variable list.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, ExactScalar)>,
    {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut acc: HashMap<Vec<u32>, ExactScalar> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            acc.entry(e).and_modify(|x| *x += &c).or_insert(c);
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: Vec<String>, acc: HashMap<Vec<u32>, ExactScalar>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect();
        let mut p = MultiPoly { vars, terms };
        p.normalize();
        p
    }

    /// Restore the canonical variable list: drop unused variables, sort the rest.
    fn normalize(&mut self) {
        let n = self.vars.len();
        let used: Vec<bool> = (0..n).map(|i| self.terms.keys().any(|m| m.0[i] > 0)).collect();
        let mut order: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        order.sort_by(|&i, &j| var_order(&self.vars[i], &self.vars[j]));
        if order.len() == n && order.iter().enumerate().all(|(k, &i)| k == i) {
            return;
        }
        let vars = order.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| (Monomial(order.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    fn expand_to(&self, vars: &[String]) -> Vec<(Vec<u32>, &ExactScalar)> {
        let idx: Vec<usize> =
            self.vars.iter().map(|v| vars.iter().position(|w| w == v).expect("variable missing from union")).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (k, &i) in idx.iter().enumerate() {
                    e[i] = m.0[k];
                }
                (e, c)
            })
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 if self.vars.is_empty() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// Terms as `(variable powers, coefficient)`, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(&str, u32)>, &ExactScalar)> + '_ {
        self.terms.iter().rev().map(move |(m, c)| {
            let pw = self.vars.iter().zip(&m.0).filter(|(_, e)| **e > 0).map(|(v, e)| (v.as_str(), *e)).collect();
            (pw, c)
        })
    }

    /// Raw exponent vectors aligned with [`MultiPoly::vars`], leading first.
    pub fn raw_terms(&self) -> impl Iterator<Item = (&[u32], &ExactScalar)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, powers: &[(&str, u32)]) -> ExactScalar {
        let probe = MultiPoly::monomial(ExactScalar::one(), powers);
        let Some((m, _)) = probe.terms.iter().next() else {
            return ExactScalar::zero();
        };
        if probe.vars.iter().any(|v| !self.has_var(v)) {
            return ExactScalar::zero();
        }
        let e = probe.expand_to(&self.vars);
        let _ = m;
        self.terms.get(&Monomial(e[0].0.clone())).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn leading_term(&self) -> Option<(Vec<(&str, u32)>, &ExactScalar)> {
        self.terms().next()
    }

    pub fn leading_coefficient(&self) -> ExactScalar {
        self.terms.values().next_back().cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Weighted degree: the variable `v` counts `weight(v)`; unknown variables count 1.
    pub fn weighted_degree(&self, weights: &HashMap<String, u32>) -> u32 {
        let w: Vec<u32> = self.vars.iter().map(|v| *weights.get(v).unwrap_or(&1)).collect();
        self.terms.keys().map(|m| m.0.iter().zip(&w).map(|(e, w)| e * w).sum()).max().unwrap_or(0)
    }

    /// `Some(k)` when every term has total degree `k` (zero counts as homogeneous of degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// Homogeneous components keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, HashMap<Vec<u32>, ExactScalar>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().insert(m.0.clone(), c.clone());
        }
        out.into_iter().map(|(d, t)| (d, Self::from_map(self.vars.clone(), t))).collect()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return Self::zero();
        };
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[i] -= 1;
            acc.insert(m2, c * &ExactScalar::from_int(e as i64));
        }
        Self::from_map(self.vars.clone(), acc)
    }

    /// Simultaneous substitution of variables by polynomials; unbound variables stay.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let images: Vec<MultiPoly> =
            self.vars.iter().map(|v| bindings.get(v).cloned().unwrap_or_else(|| MultiPoly::var(v))).collect();
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(), p.clone()]).collect();
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Convenience wrapper over [`MultiPoly::substitute`].
    pub fn subs(&self, pairs: &[(&str, MultiPoly)]) -> Self {
        let map: HashMap<String, MultiPoly> = pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.substitute(&map)
    }

    /// Rename variables; names not in the map are kept.
    pub fn rename(&self, map: &[(&str, &str)]) -> Self {
        let pairs: Vec<(&str, MultiPoly)> = map.iter().map(|(a, b)| (*a, MultiPoly::var(b))).collect();
        self.subs(&pairs)
    }

    /// Evaluate with exact scalars; every variable must be bound.
    pub fn eval_exact(&self, values: &HashMap<String, ExactScalar>) -> Option<ExactScalar> {
        let vals: Option<Vec<&ExactScalar>> = self.vars.iter().map(|v| values.get(v)).collect();
        let vals = vals?;
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in vals.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Some(acc)
    }

    /// Evaluate in floating point; `value(name)` supplies each variable.
    pub fn eval_f64(&self, value: impl Fn(&str) -> f64) -> f64 {
        let vals: Vec<f64> = self.vars.iter().map(|v| value(v)).collect();
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64() * m.0.iter().zip(&vals).map(|(&e, x)| x.powi(e as i32)).product::<f64>())
            .sum()
    }

    pub fn map_coeffs(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        let acc = self.terms.iter().map(|(m, c)| (m.0.clone(), f(c))).collect();
        Self::from_map(self.vars.clone(), acc)
    }

    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// Exact division `self / d`.
    ///
    /// Recursive leading-term elimination in graded-lex order, verified by one
    /// multiplication. Returns [`AlgebraError::NotDivisible`] when `d` does not
    /// divide `self`.
    pub fn exact_divide(&self, d: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&c.inverse().expect("nonzero constant")));
        }
        if d.vars.iter().any(|v| !self.has_var(v)) {
            return Err(AlgebraError::NotDivisible);
        }
        let vars = merge_vars(&self.vars, &d.vars);
        let mut rem: BTreeMap<Monomial, ExactScalar> =
            self.expand_to(&vars).into_iter().map(|(e, c)| (Monomial(e), c.clone())).collect();
        let dt: Vec<(Monomial, ExactScalar)> =
            d.expand_to(&vars).into_iter().map(|(e, c)| (Monomial(e), c.clone())).collect();
        let (dlm, dlc) = dt.iter().max_by(|a, b| a.0.cmp(&b.0)).cloned().expect("nonzero divisor");
        let dlc_inv = dlc.inverse().expect("nonzero leading coefficient");
        let deg = self.total_degree() as u64;
        let nv = vars.len() as u64;
        let cap = ((deg + 1) * self.num_terms() as u64).max(binomial(deg + nv, nv));
        let mut quot: HashMap<Vec<u32>, ExactScalar> = HashMap::new();
        let mut steps = 0u64;
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            steps += 1;
            if steps > cap || !dlm.divides(&lm) {
                return Err(AlgebraError::NotDivisible);
            }
            let qm: Vec<u32> = lm.0.iter().zip(&dlm.0).map(|(a, b)| a - b).collect();
            let qc = &lc * &dlc_inv;
            for (m, c) in &dt {
                let e = Monomial(m.0.iter().zip(&qm).map(|(a, b)| a + b).collect());
                let delta = c * &qc;
                let entry = rem.entry(e.clone()).or_default();
                *entry -= &delta;
                if entry.is_zero() {
                    rem.remove(&e);
                }
            }
            quot.insert(qm, qc);
        }
        let q = Self::from_map(vars, quot);
        if &(&q * d) != self {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(q)
    }

    /// Reduce modulo a relation that is monic of degree `k` in `var`
    /// (`var^k − rest`), rewriting `var^k ↦ rest` until the degree in `var` is `< k`.
    pub fn reduce_monic(&self, var: &str, relation: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        let k = relation.degree_in(var);
        if k == 0 {
            return Err(AlgebraError::NotMonic(var.to_string()));
        }
        let lead = relation.coefficient_in(var, k);
        let Some(lc) = lead.as_constant() else {
            return Err(AlgebraError::NotMonic(var.to_string()));
        };
        // var^k = -(relation - lc var^k)/lc
        let vk = MultiPoly::monomial(ExactScalar::one(), &[(var, k)]);
        let tail = (relation - &vk.scale(&lc)).scale(&(-lc.inverse().expect("nonzero")));
        let mut out = self.clone();
        loop {
            let d = out.degree_in(var);
            if d < k {
                return Ok(out);
            }
            let mut next = MultiPoly::zero();
            for e in 0..=d {
                let c = out.coefficient_in(var, e);
                if c.is_zero() {
                    continue;
                }
                let piece = if e >= k {
                    &(&c * &MultiPoly::monomial(ExactScalar::one(), &[(var, e - k)])) * &tail
                } else {
                    &c * &MultiPoly::monomial(ExactScalar::one(), &[(var, e)])
                };
                next = &next + &piece;
            }
            out = next;
        }
    }

    /// Coefficient of `var^e`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, var: &str, e: u32) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return if e == 0 { self.clone() } else { MultiPoly::zero() };
        };
        let acc = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] == e)
            .map(|(m, c)| {
                let mut m2 = m.0.clone();
                m2[i] = 0;
                (m2, c.clone())
            })
            .collect();
        Self::from_map(self.vars.clone(), acc)
    }

    /// Canonical text form, e.g. `3/2 * x^2 y - (1+r5) * z + 1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (powers, c) in self.terms() {
            let mono: Vec<String> =
                powers.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
            let negative = {
                use num_traits::Signed;
                !c.rational_part().is_positive() && !c.sqrt5_part().is_positive()
            };
            let (neg, mag) = if negative { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join(" "))?;
            } else {
                write!(f, "{mag} * {}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

fn add_sub(p: &MultiPoly, q: &MultiPoly, sign: bool) -> MultiPoly {
    if q.is_zero() {
        return p.clone();
    }
    if p.is_zero() {
        return if sign { q.clone() } else { -q };
    }
    if p.vars == q.vars {
        let mut terms = p.terms.clone();
        for (m, c) in &q.terms {
            let e = terms.entry(m.clone()).or_default();
            if sign {
                *e += c;
            } else {
                *e -= c;
            }
            if e.is_zero() {
                terms.remove(m);
            }
        }
        let mut r = MultiPoly { vars: p.vars.clone(), terms };
        r.normalize();
        return r;
    }
    let vars = merge_vars(&p.vars, &q.vars);
    let mut acc: HashMap<Vec<u32>, ExactScalar> = HashMap::new();
    for (e, c) in p.expand_to(&vars) {
        acc.insert(e, c.clone());
    }
    for (e, c) in q.expand_to(&vars) {
        let x = acc.entry(e).or_default();
        if sign {
            *x += c;
        } else {
            *x -= c;
        }
    }
    MultiPoly::from_map(vars, acc)
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        add_sub(self, rhs, true)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        add_sub(self, rhs, false)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let vars = merge_vars(&self.vars, &rhs.vars);
        let a = self.expand_to(&vars);
        let b = rhs.expand_to(&vars);
        let mut acc: HashMap<Vec<u32>, ExactScalar> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = *ca * *cb;
                match acc.get_mut(&e) {
                    Some(x) => *x += &prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        MultiPoly::from_map(vars, acc)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("x+y") + &p("x-y"), p("2*x"));
        assert_eq!(&p("1-z^2") * &p("1-z^2"), p("1 - 2*z^2 + z^4"));
        let c = MultiPoly::constant(ExactScalar::golden());
        let x2 = p("x^2");
        let lhs = &(&(&c * &c) * &x2) - &(&c * &x2);
        assert_eq!(lhs, x2);
    }

    #[test]
    fn canonical_vars() {
        let q = &p("x + z") - &p("x");
        assert_eq!(q.vars(), &["z".to_string()]);
        assert_eq!(q, MultiPoly::var("z"));
        assert_eq!(p("y*x").vars(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2-y^2").exact_divide(&p("x-y")).unwrap(), p("x+y"));
        let num = p("(1-th1^2)^3 - th2^2");
        assert!(matches!(num.exact_divide(&p("th2")), Err(AlgebraError::NotDivisible)));
        assert!(matches!(num.exact_divide(&MultiPoly::zero()), Err(AlgebraError::ZeroDivisor)));
    }

    #[test]
    fn boundary_division_example() {
        // n = 3: (1-t1^2) dP/dt1 + (-3 t1 t2) dP/dt2 = -6 t1 P
        let pp = p("(1-th1^2)^3 - th2^2");
        let lhs = &(&p("1-th1^2") * &pp.derivative("th1")) + &(&p("-3*th1*th2") * &pp.derivative("th2"));
        assert_eq!(lhs.exact_divide(&pp).unwrap(), p("-6*th1"));
    }

    #[test]
    fn text_roundtrip() {
        let q = p("3/2*x^2*y - (1+r5)*z + 1 - x");
        assert_eq!(q.to_string(), "3/2 * x^2 y - x - (1+r5) * z + 1");
        assert_eq!(p(&q.to_string()), q);
    }

    #[test]
    fn monic_reduction() {
        let rel = p("eta^2 - (1-th1^2)^2 + th2^2");
        let r = p("eta^3 + eta^2").reduce_monic("eta", &rel).unwrap();
        assert_eq!(r, p("eta*((1-th1^2)^2 - th2^2) + (1-th1^2)^2 - th2^2"));
    }

    #[test]
    fn substitution() {
        let q = p("th2^2").subs(&[("th2", p("x^3 - 3*x*y^2"))]);
        assert_eq!(q, p("(x^3-3*x*y^2)^2"));
    }

    #[test]
    fn weighted_and_homogeneous() {
        let w: HashMap<String, u32> = [("th1".to_string(), 1), ("th2".to_string(), 3)].into();
        assert_eq!(p("th1^2*th2 + th1").weighted_degree(&w), 5);
        assert_eq!(p("x^2 + y*z").homogeneous_degree(), Some(2));
        assert_eq!(p("x^2 + y").homogeneous_degree(), None);
        assert_eq!(p("x^2 + y + 1").homogeneous_components().len(), 3);
    }
}
