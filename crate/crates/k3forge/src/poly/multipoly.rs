use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

pub type Scalar = BigRational;

/// Operations that build new polynomials refuse results above this total degree.
pub const MAX_TOTAL_DEGREE: u32 = 64;

const FIXED_ORDER: [&str; 9] = ["u", "v", "w", "y", "X", "Y", "Z", "s", "t"];

fn var_rank(name: &str) -> (usize, &str) {
    match FIXED_ORDER.iter().position(|v| *v == name) {
        Some(i) => (i, ""),
        None => (FIXED_ORDER.len(), name),
    }
}

/// Global variable order: u < v < w < y < X < Y < Z < s < t < everything else (lexically).
pub fn cmp_vars(a: &str, b: &str) -> Ordering {
    var_rank(a).cmp(&var_rank(b))
}

type Terms = BTreeMap<Vec<u32>, Scalar>;

/// Polynomial with exact rational coefficients.
///
/// Only variables that actually occur are stored, sorted by [`cmp_vars`],
/// so structural equality is mathematical equality. The term map is keyed by
/// exponent vectors, which makes its last entry the lex-leading term.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: Terms,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    out.sort_by(|x, y| cmp_vars(x, y));
    out.dedup();
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = Terms::new();
        terms.insert(vec![1], Scalar::one());
        Self {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// `c * prod vars[i]^exps[i]`.
    pub fn monomial(vars: &[&str], exps: &[u32], c: Scalar) -> Self {
        Self::from_terms(vars, vec![(exps.to_vec(), c)])
    }

    /// Builds a polynomial from terms over an arbitrary variable list (any order, repeats merged).
    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<u32>, Scalar)>) -> Self {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut raw = Terms::new();
        for (e, c) in terms {
            assert_eq!(e.len(), names.len(), "exponent vector length mismatch");
            let slot = raw.entry(e).or_insert_with(Scalar::zero);
            *slot += c;
        }
        Self::normalize(names, raw)
    }

    /// Brings an arbitrary (vars, terms) pair into canonical form.
    fn normalize(vars: Vec<String>, terms: Terms) -> Self {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&i, &j| cmp_vars(&vars[i], &vars[j]));
        let mut used = vec![false; vars.len()];
        for (e, c) in &terms {
            if c.is_zero() {
                continue;
            }
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[i] = true;
                }
            }
        }
        // merge duplicate names while keeping canonical order
        let mut keep: Vec<(String, Vec<usize>)> = Vec::new();
        for &i in &order {
            if !used[i] {
                continue;
            }
            match keep.last_mut() {
                Some((name, idx)) if *name == vars[i] => idx.push(i),
                _ => keep.push((vars[i].clone(), vec![i])),
            }
        }
        let identity = keep.len() == vars.len() && keep.iter().enumerate().all(|(k, (_, idx))| idx.len() == 1 && idx[0] == k);
        if identity {
            let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            return Self { vars, terms };
        }
        let mut out = Terms::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let ne: Vec<u32> = keep.iter().map(|(_, idx)| idx.iter().map(|&i| e[i]).sum()).collect();
            let slot = out.entry(ne).or_insert_with(Scalar::zero);
            *slot += c;
        }
        out.retain(|_, c| !c.is_zero());
        let vars = keep.into_iter().map(|(n, _)| n).collect();
        // a cancellation can leave a variable unused, so run once more
        let again = Self { vars, terms: out };
        if again.has_unused_vars() {
            let Self { vars, terms } = again;
            return Self::normalize(vars, terms);
        }
        again
    }

    fn has_unused_vars(&self) -> bool {
        (0..self.vars.len()).any(|i| self.terms.keys().all(|e| e[i] == 0))
    }

    /// Terms re-expressed over a superset of this polynomial's variables.
    fn embed(&self, target: &[String]) -> Terms {
        if target == self.vars.as_slice() {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("target must contain all variables"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; target.len()];
                for (i, &x) in e.iter().enumerate() {
                    ne[pos[i]] = x;
                }
                (ne, c.clone())
            })
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Scalar {
        let zero = vec![0u32; self.vars.len()];
        self.terms.get(&zero).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Lowest power of `name` that occurs (the `name`-adic valuation). `None` for zero.
    pub fn valuation_in(&self, name: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).min(),
            None => Some(0),
        }
    }

    pub fn check_degree(self) -> Result<Self, PolyError> {
        match self.total_degree() {
            Some(d) if d > MAX_TOTAL_DEGREE => Err(PolyError::DegreeCap(d)),
            _ => Ok(self),
        }
    }

    /// Lex-leading term: (exponents over `self.vars()`, coefficient).
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Scalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of a monomial given as (variable, exponent) pairs.
    pub fn coefficient(&self, mono: &[(&str, u32)]) -> Scalar {
        let mut e = vec![0u32; self.vars.len()];
        for (name, x) in mono {
            if *x == 0 {
                continue;
            }
            match self.var_index(name) {
                Some(i) => e[i] += x,
                None => return Scalar::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Homogeneous? Returns the common total degree over `vars` (other variables ignored).
    pub fn homogeneous_degree_in(&self, vars: &[&str]) -> Option<u32> {
        self.weighted_degree_in(&vars.iter().map(|v| (*v, 1)).collect::<Vec<_>>())
    }

    /// Common weighted degree if all terms agree, `None` otherwise. Zero gives `Some(0)`.
    pub fn weighted_degree_in(&self, weights: &[(&str, u32)]) -> Option<u32> {
        let idx: Vec<(Option<usize>, u32)> = weights.iter().map(|(v, w)| (self.var_index(v), *w)).collect();
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = idx.iter().filter_map(|(i, w)| i.map(|i| e[i] * w)).sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.var_index(name) else {
            return Self::zero();
        };
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.insert(ne, c * Scalar::from_integer(e[i].into()));
        }
        Self::normalize(self.vars.clone(), out)
    }

    /// Coefficients of powers of `name`: `result[k]` multiplies `name^k`.
    pub fn coefficients_in(&self, name: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(name) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(name) as usize;
        let mut buckets: Vec<Terms> = vec![Terms::new(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            buckets[k].insert(ne, c.clone());
        }
        buckets.into_iter().map(|t| Self::normalize(self.vars.clone(), t)).collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(name: &str, coeffs: &[MultiPoly]) -> Self {
        let x = Self::var(name);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Substitutes constants for some variables.
    pub fn eval_partial(&self, values: &HashMap<&str, Scalar>) -> Self {
        let hit: Vec<Option<&Scalar>> = self.vars.iter().map(|v| values.get(v.as_str())).collect();
        if hit.iter().all(|h| h.is_none()) {
            return self.clone();
        }
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut ne = e.clone();
            for (i, h) in hit.iter().enumerate() {
                if let Some(val) = h {
                    if e[i] > 0 {
                        coef *= num_traits::pow::pow((*val).clone(), e[i] as usize);
                    }
                    ne[i] = 0;
                }
            }
            if coef.is_zero() {
                continue;
            }
            let slot = out.entry(ne).or_insert_with(Scalar::zero);
            *slot += coef;
        }
        Self::normalize(self.vars.clone(), out)
    }

    /// Full evaluation; errors if a variable has no value.
    pub fn eval(&self, values: &HashMap<&str, Scalar>) -> Result<Scalar, PolyError> {
        for v in &self.vars {
            if !values.contains_key(v.as_str()) {
                return Err(PolyError::UnmappedVariable(v.clone()));
            }
        }
        Ok(self.eval_partial(values).constant_term())
    }

    pub fn eval_var(&self, name: &str, value: Scalar) -> Self {
        let mut m = HashMap::new();
        m.insert(name, value);
        self.eval_partial(&m)
    }

    /// Polynomial substitution; variables absent from `map` are left alone.
    pub fn compose(&self, map: &HashMap<&str, MultiPoly>) -> Self {
        let mut cache: Vec<Option<Vec<MultiPoly>>> = vec![None; self.vars.len()];
        let mut keep_vars: Vec<String> = Vec::new();
        let mut keep_idx: Vec<usize> = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            if let Some(img) = map.get(v.as_str()) {
                let d = self.degree_in(v) as usize;
                let mut pw = Vec::with_capacity(d + 1);
                pw.push(Self::one());
                for k in 1..=d {
                    let next = &pw[k - 1] * img;
                    pw.push(next);
                }
                cache[i] = Some(pw);
            } else {
                keep_vars.push(v.clone());
                keep_idx.push(i);
            }
        }
        let mut acc = Self::zero();
        // group by the substituted exponents to share products
        let mut groups: BTreeMap<Vec<u32>, Terms> = BTreeMap::new();
        for (e, c) in &self.terms {
            let sub: Vec<u32> = (0..self.vars.len()).map(|i| if cache[i].is_some() { e[i] } else { 0 }).collect();
            let rest: Vec<u32> = keep_idx.iter().map(|&i| e[i]).collect();
            groups.entry(sub).or_default().insert(rest, c.clone());
        }
        for (sub, rest) in groups {
            let mut prod = Self::normalize(keep_vars.clone(), rest);
            for (i, pw) in cache.iter().enumerate() {
                if let Some(pw) = pw {
                    if sub[i] > 0 {
                        prod = &prod * &pw[sub[i] as usize];
                    }
                }
            }
            acc = &acc + &prod;
        }
        acc
    }

    /// Renames variables (a permutation or an injection into fresh names).
    pub fn rename(&self, map: &HashMap<&str, &str>) -> Self {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| map.get(v.as_str()).map(|s| s.to_string()).unwrap_or_else(|| v.clone()))
            .collect();
        Self::normalize(vars, self.terms.clone())
    }

    /// Drops every term of total degree above `n` in the listed variables.
    pub fn truncate(&self, vars: &[&str], n: u32) -> Self {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.var_index(v)).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| idx.iter().map(|&i| e[i]).sum::<u32>() <= n)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self::normalize(self.vars.clone(), terms)
    }

    /// Part of total degree exactly `n` in the listed variables.
    pub fn homogeneous_part(&self, vars: &[&str], n: u32) -> Self {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.var_index(v)).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| idx.iter().map(|&i| e[i]).sum::<u32>() == n)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self::normalize(self.vars.clone(), terms)
    }

    /// Multivariate division by a single polynomial in lex order.
    ///
    /// Returns `(q, r)` with `self = q*d + r` and no term of `r` divisible by
    /// the leading monomial of `d`. For one divisor `r == 0` iff `d` divides `self`.
    pub fn div_rem(&self, d: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let vars = merge_vars(&self.vars, &d.vars);
        let dt = d.embed(&vars);
        let (lm, lc) = dt.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.embed(&vars);
        let mut quo = Terms::new();
        let mut rem = Terms::new();
        while let Some((e, c)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lm).all(|(a, b)| a >= b) {
                let qe: Vec<u32> = e.iter().zip(&lm).map(|(a, b)| a - b).collect();
                let qc = &c / &lc;
                for (de, dc) in &dt {
                    let ne: Vec<u32> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                    let prod = dc * &qc;
                    let slot = r.entry(ne.clone()).or_insert_with(Scalar::zero);
                    *slot -= prod;
                    if slot.is_zero() {
                        r.remove(&ne);
                    }
                }
                quo.insert(qe, qc);
            } else {
                r.remove(&e);
                rem.insert(e, c);
            }
        }
        Ok((Self::normalize(vars.clone(), quo), Self::normalize(vars, rem)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Divides by `g` viewed as a polynomial in `name` whose leading coefficient is a nonzero constant.
    pub fn div_rem_in(&self, name: &str, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        let gc = g.coefficients_in(name);
        let m = gc.len() - 1;
        let lc = gc[m]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| PolyError::Domain(format!("divisor is not monic up to a constant in `{name}`")))?;
        let inv = lc.recip();
        let mut rc = self.coefficients_in(name);
        if rc.len() <= m {
            return Ok((Self::zero(), self.clone()));
        }
        let mut qc = vec![Self::zero(); rc.len() - m];
        for k in (m..rc.len()).rev() {
            let t = rc[k].scale(&inv);
            if t.is_zero() {
                continue;
            }
            for (j, gj) in gc.iter().enumerate() {
                let idx = k - m + j;
                rc[idx] = &rc[idx] - &(&t * gj);
            }
            qc[k - m] = t;
        }
        rc.truncate(m);
        Ok((Self::from_coefficients_in(name, &qc), Self::from_coefficients_in(name, &rc)))
    }

    /// Content-free integer-coefficient representative with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
        let mut f = Scalar::new(lcm, g);
        if self.leading_coefficient().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Monic in the lex order (leading coefficient 1).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    fn binop(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        let vars = merge_vars(&self.vars, &other.vars);
        let mut t = self.embed(&vars);
        for (e, c) in other.embed(&vars) {
            let slot = t.entry(e.clone()).or_insert_with(Scalar::zero);
            if sign {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                t.remove(&e);
            }
        }
        Self::normalize(vars, t)
    }

    /// Product with every term of total degree above `n` dropped; used for
    /// truncated power series.
    pub fn mul_truncated(&self, other: &MultiPoly, n: u32) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let vars = merge_vars(&self.vars, &other.vars);
        let deg = |e: &Vec<u32>| e.iter().sum::<u32>();
        let a: Vec<(Vec<u32>, Scalar, u32)> = self
            .embed(&vars)
            .into_iter()
            .map(|(e, c)| {
                let d = deg(&e);
                (e, c, d)
            })
            .filter(|t| t.2 <= n)
            .collect();
        let b: Vec<(Vec<u32>, Scalar, u32)> = other
            .embed(&vars)
            .into_iter()
            .map(|(e, c)| {
                let d = deg(&e);
                (e, c, d)
            })
            .filter(|t| t.2 <= n)
            .collect();
        let mut t = Terms::new();
        for (ea, ca, da) in &a {
            for (eb, cb, db) in &b {
                if da + db > n {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match t.get_mut(&e) {
                    Some(slot) => *slot += prod,
                    None => {
                        t.insert(e, prod);
                    }
                }
            }
        }
        t.retain(|_, c| !c.is_zero());
        Self::normalize(vars, t)
    }

    fn product(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let vars = merge_vars(&self.vars, &other.vars);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut t = Terms::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match t.get_mut(&e) {
                    Some(slot) => *slot += prod,
                    None => {
                        t.insert(e, prod);
                    }
                }
            }
        }
        t.retain(|_, c| !c.is_zero());
        Self::normalize(vars, t)
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                $body(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &MultiPoly, b: &MultiPoly| a.binop(b, true));
forward_binop!(Sub, sub, |a: &MultiPoly, b: &MultiPoly| a.binop(b, false));
forward_binop!(Mul, mul, |a: &MultiPoly, b: &MultiPoly| a.product(b));

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Terms by descending total degree, then descending lex; `coef*u^a*v^b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ts: Vec<(&Vec<u32>, &Scalar)> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_scalar(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_scalar(&mag), mono.join("*"))?;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_variable_order() {
        let a = p("t + u + zeta + X");
        assert_eq!(a.vars(), &["u", "X", "t", "zeta"]);
        assert_eq!(a.to_string(), "u + X + t + zeta");
    }

    #[test]
    fn unused_variables_vanish() {
        let a = p("u*v + w");
        let b = p("u*v");
        assert_eq!((&a - &b).vars(), &["w"]);
        assert!((&a - &a).is_zero());
        assert!((&a - &a).vars().is_empty());
    }

    #[test]
    fn pow_and_degree() {
        let a = p("u + v");
        let c = a.pow(3);
        assert_eq!(c, p("u^3 + 3*u^2*v + 3*u*v^2 + v^3"));
        assert_eq!(c.total_degree(), Some(3));
        assert_eq!(c.homogeneous_degree_in(&["u", "v"]), Some(3));
        assert_eq!(p("u + v^2").homogeneous_degree_in(&["u", "v"]), None);
    }

    #[test]
    fn division_exact_and_remainder() {
        let d = p("u - v");
        let f = &d * &p("u^2 + w");
        assert_eq!(f.div_exact(&d).unwrap(), p("u^2 + w"));
        let (q, r) = (&f + &p("v^7")).div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, &f + &p("v^7"));
        assert!(!r.is_zero());
    }

    #[test]
    fn division_in_variable() {
        let g = p("y^2 - w^3 - u");
        let f = p("y^5 + y*u");
        let (q, r) = f.div_rem_in("y", &g).unwrap();
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree_in("y") <= 1);
    }

    #[test]
    fn compose_polynomial() {
        let f = p("u^2 + v");
        let mut m = HashMap::new();
        m.insert("u", p("s + t"));
        assert_eq!(f.compose(&m), p("s^2 + 2*s*t + t^2 + v"));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p("u^3*v - 2*v");
        assert_eq!(f.derivative("u"), p("3*u^2*v"));
        let mut vals = HashMap::new();
        vals.insert("u", qi(2));
        vals.insert("v", qi(3));
        assert_eq!(f.eval(&vals).unwrap(), qi(18));
        assert!(f.eval(&HashMap::new()).is_err());
    }

    #[test]
    fn degree_cap_checked() {
        let f = p("u").pow(65);
        assert_eq!(f.check_degree(), Err(PolyError::DegreeCap(65)));
    }

    #[test]
    fn primitive_representative() {
        assert_eq!(p("-2/3*u + 4/9").primitive(), p("3*u - 2"));
    }
}
