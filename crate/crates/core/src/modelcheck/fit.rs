//! Linear fitting of ambient polynomials by monomials in invariant coordinates.

use crate::algebra::{ExactScalar, MultiPoly};
use crate::catalog::InvariantSystem;
use std::collections::{BTreeMap, HashMap};

type SparseVec = BTreeMap<Vec<u32>, ExactScalar>;

/// Exponent vectors over `vars` with weighted degree at most `cap`, in graded
/// order (weighted degree, then lexicographic). `max_last` bounds the exponent
/// of the final variable.
pub fn weighted_monomials(weights: &[u32], cap: u32, max_last: Option<u32>) -> Vec<Vec<u32>> {
    fn rec(w: &[u32], cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, last_cap: Option<u32>, total: usize) {
        if prefix.len() == total {
            out.push(prefix.clone());
            return;
        }
        let i = prefix.len();
        let mut e = 0;
        loop {
            let used = w[i] * e;
            if used > cap {
                break;
            }
            if i + 1 == total {
                if let Some(m) = last_cap {
                    if e > m {
                        break;
                    }
                }
            }
            prefix.push(e);
            rec(w, cap - used, prefix, out, last_cap, total);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, cap, &mut Vec::new(), &mut out, max_last, weights.len());
    let val = |e: &Vec<u32>| e.iter().zip(weights).map(|(a, b)| a * b).sum::<u32>();
    out.sort_by(|a, b| val(a).cmp(&val(b)).then_with(|| b.cmp(a)));
    out
}

pub fn model_monomial(vars: &[&str], exps: &[u32]) -> MultiPoly {
    let pw: Vec<(&str, u32)> = vars.iter().zip(exps).map(|(v, e)| (*v, *e)).collect();
    MultiPoly::monomial(ExactScalar::one(), &pw)
}

fn to_sparse(p: &MultiPoly, ambient: &[&str]) -> SparseVec {
    let mut out = SparseVec::new();
    for (pw, c) in p.terms() {
        let mut e = vec![0u32; ambient.len()];
        for (v, x) in pw {
            let i = ambient.iter().position(|w| *w == v).expect("ambient variable");
            e[i] = x;
        }
        out.insert(e, c.clone());
    }
    out
}

fn from_sparse(v: &SparseVec, ambient: &[&str]) -> MultiPoly {
    MultiPoly::from_terms(ambient, v.iter().map(|(e, c)| (e.clone(), c.clone())))
}

/// Leading key under graded order on ambient exponents.
fn lead(v: &SparseVec) -> Option<Vec<u32>> {
    v.keys()
        .max_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| a.cmp(b))
        })
        .cloned()
}

struct BasisVec {
    vec: SparseVec,
    combo: HashMap<usize, ExactScalar>,
}

/// Incremental echelon basis of sphere images of model monomials.
pub struct Fitter<'a> {
    system: &'a InvariantSystem,
    ambient: Vec<&'a str>,
    monomials: Vec<Vec<u32>>,
    basis: Vec<BasisVec>,
    pivots: HashMap<Vec<u32>, usize>,
    dependent: Vec<usize>,
    power_cache: HashMap<(usize, u32), MultiPoly>,
}

/// Result of fitting one ambient polynomial.
#[derive(Clone, Debug)]
pub struct Fit {
    /// Expression in model coordinates (zero coefficients on dependent monomials).
    pub expression: MultiPoly,
    /// Sphere-reduced remainder; zero iff the fit is exact.
    pub residual: MultiPoly,
    /// Number of ansatz monomials whose images were linearly dependent.
    pub null_dim: usize,
}

impl<'a> Fitter<'a> {
    pub fn new(system: &'a InvariantSystem) -> Self {
        let ambient = match system.ambient_dim {
            3 => vec!["x", "y", "z"],
            4 => vec!["x1", "x2", "x3", "x4"],
            _ => vec!["x", "y"],
        };
        Fitter {
            system,
            ambient,
            monomials: Vec::new(),
            basis: Vec::new(),
            pivots: HashMap::new(),
            dependent: Vec::new(),
            power_cache: HashMap::new(),
        }
    }

    fn image(&mut self, exps: &[u32]) -> MultiPoly {
        let sphere = self.system.sphere();
        let mut acc = MultiPoly::one();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let key = (i, e);
            if !self.power_cache.contains_key(&key) {
                let p = sphere.reduce(&self.system.invariants[i].ambient.pow(e));
                self.power_cache.insert(key, p);
            }
            acc = sphere.reduce(&(&acc * &self.power_cache[&key]));
        }
        acc
    }

    fn reduce(
        &self,
        mut v: SparseVec,
        mut combo: HashMap<usize, ExactScalar>,
    ) -> (SparseVec, HashMap<usize, ExactScalar>) {
        let mut bound: Option<Vec<u32>> = None;
        loop {
            let graded = |a: &Vec<u32>, b: &Vec<u32>| {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            };
            let next = v
                .keys()
                .filter(|k| self.pivots.contains_key(*k))
                .filter(|k| bound.as_ref().is_none_or(|b| graded(k, b) == std::cmp::Ordering::Less))
                .max_by(|a, b| graded(a, b))
                .cloned();
            let Some(k) = next else { break };
            let b = &self.basis[self.pivots[&k]];
            let f = v[&k].clone();
            for (key, c) in &b.vec {
                let e = v.entry(key.clone()).or_default();
                *e -= &(&f * c);
                if e.is_zero() {
                    v.remove(key);
                }
            }
            for (idx, c) in &b.combo {
                let e = combo.entry(*idx).or_default();
                *e -= &(&f * c);
            }
            bound = Some(k);
        }
        combo.retain(|_, c| !c.is_zero());
        (v, combo)
    }

    /// Extend the ansatz with monomials (in model coordinates) not yet present.
    pub fn extend(&mut self, monomials: &[Vec<u32>]) {
        for m in monomials {
            if self.monomials.contains(m) {
                continue;
            }
            let idx = self.monomials.len();
            self.monomials.push(m.clone());
            let img = self.image(m);
            let v = to_sparse(&img, &self.ambient);
            let (rem, combo) = self.reduce(v, HashMap::from([(idx, ExactScalar::one())]));
            match lead(&rem) {
                None => self.dependent.push(idx),
                Some(k) => {
                    let inv = rem[&k].inverse().expect("nonzero");
                    let vec: SparseVec = rem.into_iter().map(|(e, c)| (e, &c * &inv)).collect();
                    let combo = combo.into_iter().map(|(i, c)| (i, &c * &inv)).collect();
                    self.pivots.insert(k, self.basis.len());
                    self.basis.push(BasisVec { vec, combo });
                }
            }
        }
    }

    /// Ansatz monomials whose images were dependent on earlier ones.
    pub fn dependent_monomials(&self) -> Vec<MultiPoly> {
        let vars = self.system.vars();
        self.dependent.iter().map(|&i| model_monomial(&vars, &self.monomials[i])).collect()
    }

    /// Fit a sphere-reduced ambient polynomial with the current ansatz.
    pub fn fit(&self, target: &MultiPoly) -> Fit {
        let v = to_sparse(target, &self.ambient);
        let (rem, combo) = self.reduce(v, HashMap::new());
        let vars = self.system.vars();
        let mut expression = MultiPoly::zero();
        for (idx, c) in combo {
            expression = &expression - &model_monomial(&vars, &self.monomials[idx]).scale(&c);
        }
        Fit { expression, residual: from_sparse(&rem, &self.ambient), null_dim: self.dependent.len() }
    }
}
