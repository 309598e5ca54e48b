use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use super::{MultiPoly, PolyError};

/// Quotient of two polynomials. The denominator is kept monic; no gcd is cancelled,
/// so equality must go through [`RationalFunction::equals`].
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let lc = den.leading_coefficient().recip();
        Ok(Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn poly(p: MultiPoly) -> Self {
        Self {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn parse(num: &str, den: &str) -> Result<Self, PolyError> {
        Self::new(num.parse()?, den.parse()?)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Cross-multiplied equality.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        Self {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Divides out a common polynomial factor when it divides both parts exactly.
    pub fn cancel_by(&self, g: &MultiPoly) -> Self {
        match (self.num.div_exact(g), self.den.div_exact(g)) {
            (Some(n), Some(d)) => Self::new(n, d).unwrap_or_else(|_| self.clone()),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl MultiPoly {
    fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }
}

/// Map between affine coordinate systems, given by pullback formulas:
/// `components[i]` expresses `target_vars[i]` in the source variables.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub source_vars: Vec<String>,
    pub target_vars: Vec<String>,
    pub components: Vec<RationalFunction>,
    /// `(y, F)`: on the source, `y^2` may be replaced by `F`.
    pub reduction_rule: Option<(String, MultiPoly)>,
}

impl RationalMap {
    pub fn new(source_vars: &[&str], comps: Vec<(&str, RationalFunction)>) -> Self {
        Self {
            source_vars: source_vars.iter().map(|s| s.to_string()).collect(),
            target_vars: comps.iter().map(|(n, _)| n.to_string()).collect(),
            components: comps.into_iter().map(|(_, f)| f).collect(),
            reduction_rule: None,
        }
    }

    pub fn with_rule(mut self, y: &str, f: MultiPoly) -> Self {
        self.reduction_rule = Some((y.to_string(), f));
        self
    }

    pub fn component(&self, target: &str) -> Option<&RationalFunction> {
        self.target_vars.iter().position(|v| v == target).map(|i| &self.components[i])
    }

    /// `self` after `first`: pulls every component of `self` back along `first`.
    pub fn after(&self, first: &RationalMap) -> Result<RationalMap, PolyError> {
        let comps = self
            .components
            .iter()
            .map(|c| {
                let n = substitute(&c.num, first)?;
                let d = substitute(&c.den, first)?;
                n.div(&d)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RationalMap {
            source_vars: first.source_vars.clone(),
            target_vars: self.target_vars.clone(),
            components: comps,
            reduction_rule: first.reduction_rule.clone(),
        })
    }
}

/// Pulls `p` back along `m`, clearing denominators with one power of each
/// component denominator per unit of `p`'s degree in that variable.
pub fn substitute(p: &MultiPoly, m: &RationalMap) -> Result<RationalFunction, PolyError> {
    let mut slots: Vec<(&str, &RationalFunction, u32)> = Vec::new();
    for v in p.vars() {
        let f = m.component(v).ok_or_else(|| PolyError::UnmappedVariable(v.clone()))?;
        slots.push((v.as_str(), f, p.degree_in(v)));
    }
    // fast path: all images polynomial
    if slots.iter().all(|(_, f, _)| f.is_polynomial()) {
        let mut map = HashMap::new();
        for (v, f, _) in &slots {
            let c = f.den.as_constant().unwrap().recip();
            map.insert(*v, f.num.scale(&c));
        }
        let out = p.compose(&map).check_degree()?;
        return Ok(RationalFunction::poly(out));
    }
    let mut pw_num: Vec<Vec<MultiPoly>> = Vec::new();
    let mut pw_den: Vec<Vec<MultiPoly>> = Vec::new();
    for (_, f, d) in &slots {
        let mut a = vec![MultiPoly::one()];
        let mut b = vec![MultiPoly::one()];
        for k in 1..=*d as usize {
            a.push(&a[k - 1] * &f.num);
            b.push(&b[k - 1] * &f.den);
        }
        pw_num.push(a);
        pw_den.push(b);
    }
    let mut num = MultiPoly::zero();
    for (e, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for (i, (_, _, d)) in slots.iter().enumerate() {
            let k = e[i] as usize;
            if k > 0 {
                t = &t * &pw_num[i][k];
            }
            let rest = *d as usize - k;
            if rest > 0 {
                t = &t * &pw_den[i][rest];
            }
        }
        num = &num + &t;
    }
    let mut den = MultiPoly::one();
    for (i, (_, _, d)) in slots.iter().enumerate() {
        den = &den * &pw_den[i][*d as usize];
    }
    RationalFunction::new(num.check_degree()?, den.check_degree()?)
}

/// Normal form of `p` modulo `y^2 - F`: the result has degree at most one in `y`.
pub fn reduce_double_cover(p: &MultiPoly, y: &str, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if f.contains_var(y) {
        return Err(PolyError::MalformedCover(y.to_string()));
    }
    let coeffs = p.coefficients_in(y);
    if coeffs.len() <= 2 {
        return Ok(p.clone());
    }
    let yv = MultiPoly::var(y);
    let mut even = MultiPoly::zero();
    let mut odd = MultiPoly::zero();
    let mut fpow = MultiPoly::one();
    for (k, c) in coeffs.iter().enumerate() {
        if k >= 2 && k % 2 == 0 {
            fpow = &fpow * f;
        }
        if c.is_zero() {
            continue;
        }
        if k % 2 == 0 {
            even = &even + &(c * &fpow);
        } else {
            odd = &odd + &(c * &fpow);
        }
    }
    Ok(&even + &(&odd * &yv))
}
