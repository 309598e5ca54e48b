use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MultiPoly, PolyError, Scalar};

/// Dense univariate polynomial over Q, lowest coefficient first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Scalar::from_integer(c.into())).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![Scalar::one()])
    }

    /// Accepts constants and polynomials in exactly one variable, returning that variable.
    pub fn from_multi(p: &MultiPoly) -> Result<(Self, Option<String>), PolyError> {
        match p.vars().len() {
            0 => Ok((Self::new(vec![p.constant_term()]), None)),
            1 => {
                let name = p.vars()[0].clone();
                let cs = p.coefficients_in(&name).into_iter().map(|c| c.constant_term()).collect();
                Ok((Self::new(cs), Some(name)))
            }
            _ => Err(PolyError::Domain(format!(
                "expected a univariate polynomial, got variables {:?}",
                p.vars()
            ))),
        }
    }

    pub fn to_multi(&self, var: &str) -> MultiPoly {
        let terms = self.coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())).collect();
        MultiPoly::from_terms(&[var], terms)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Scalar::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::default(), self.clone()));
        }
        let inv = d.lc().recip();
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let t = &r[k] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let prod = dj * &t;
                r[k - dd + j] -= prod;
            }
            q[k - dd] = t;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic gcd (zero only when both inputs are zero). Runs a primitive
    /// pseudo-remainder sequence over Z to keep coefficients small.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let (mut a, mut b) = (primitive_integer(self), primitive_integer(o));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = pseudo_remainder(&a, &b);
            if r.is_empty() {
                break;
            }
            a = b;
            b = primitive_ints(r);
        }
        if b.len() == 1 {
            return Self::one();
        }
        Self::new(b.into_iter().map(Scalar::from_integer).collect()).monic()
    }

    /// Multiplicity of the root `x = a`.
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        let lin = Self::new(vec![-a.clone(), Scalar::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            match p.div_exact(&lin) {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// Yun's algorithm: monic squarefree `s_1, s_2, ...` with `self = lc * prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Domain("squarefree decomposition of zero".into()));
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_exact(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
        }
        while out.last().map(|p| p.is_constant()).unwrap_or(false) {
            out.pop();
        }
        Ok(out)
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Domain("squarefree part of zero".into()));
        }
        if self.is_constant() {
            return Ok(Self::one());
        }
        Ok(self.div_exact(&self.gcd(&self.derivative())).unwrap().monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }
}

/// Integer coefficients with content one, lowest first.
fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive_ints(p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
}

fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// `lc(b)^(deg a - deg b + 1) a mod b` over Z, trailing zeros removed.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &lr * bk;
        }
        r.pop();
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    r
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi("x"))
    }
}

/// Squarefree part of a univariate polynomial given as a [`MultiPoly`].
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let (u, var) = UniPoly::from_multi(p)?;
    let s = u.squarefree_part()?;
    Ok(s.to_multi(var.as_deref().unwrap_or("x")))
}

/// Pairwise coprime squarefree basis with exponents: `inputs[i] = unit * prod basis[j]^exponents[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdFreeBasis {
    pub basis: Vec<UniPoly>,
    pub exponents: Vec<Vec<u32>>,
}

impl GcdFreeBasis {
    /// Basis elements as polynomials in `var`.
    pub fn basis_in(&self, var: &str) -> Vec<MultiPoly> {
        self.basis.iter().map(|b| b.to_multi(var)).collect()
    }
}

/// Coprime refinement of the squarefree parts of the inputs.
pub fn gcd_free_basis(ps: &[UniPoly]) -> Result<GcdFreeBasis, PolyError> {
    if ps.is_empty() {
        return Err(PolyError::Domain("gcd-free basis of an empty list".into()));
    }
    let mut pool: Vec<UniPoly> = Vec::new();
    for p in ps {
        if p.is_zero() {
            return Err(PolyError::Domain("gcd-free basis input is zero".into()));
        }
        for s in p.squarefree_decomposition()? {
            if !s.is_constant() {
                pool.push(s);
            }
        }
    }
    // refine until pairwise coprime
    'outer: loop {
        for i in 0..pool.len() {
            for j in (i + 1)..pool.len() {
                let g = pool[i].gcd(&pool[j]);
                if g.is_constant() {
                    continue;
                }
                let a = pool[i].div_exact(&g).unwrap();
                let b = pool[j].div_exact(&g).unwrap();
                pool.remove(j);
                pool.remove(i);
                for x in [g, a, b] {
                    if !x.is_constant() {
                        pool.push(x.monic());
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    pool.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.to_string().cmp(&b.to_string())));
    pool.dedup();
    let exponents = ps
        .iter()
        .map(|p| {
            pool.iter()
                .map(|b| {
                    let mut k = 0;
                    let mut r = p.clone();
                    while let Some(q) = r.div_exact(b) {
                        r = q;
                        k += 1;
                    }
                    k
                })
                .collect()
        })
        .collect();
    Ok(GcdFreeBasis { basis: pool, exponents })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn squarefree_visible_square() {
        // t^2 (t - 1) -> t (t - 1)
        assert_eq!(u(&[0, 0, -1, 1]).squarefree_part().unwrap(), u(&[0, -1, 1]));
        // t^4 + 2t^2 + 1 -> t^2 + 1
        assert_eq!(u(&[1, 0, 2, 0, 1]).squarefree_part().unwrap(), u(&[1, 0, 1]));
        assert!(u(&[]).squarefree_part().is_err());
    }

    #[test]
    fn yun_decomposition() {
        // (t+1) (t-2)^2 t^3
        let f = u(&[1, 1]).mul(&u(&[-2, 1]).pow(2)).mul(&u(&[0, 1]).pow(3));
        let d = f.squarefree_decomposition().unwrap();
        assert_eq!(d, vec![u(&[1, 1]), u(&[-2, 1]), u(&[0, 1])]);
    }

    #[test]
    fn gcd_free_basis_small() {
        let gb = gcd_free_basis(&[u(&[0, 0, 1]), u(&[0, 1, 1])]).unwrap();
        assert_eq!(gb.basis, vec![u(&[0, 1]), u(&[1, 1])]);
        assert_eq!(gb.exponents, vec![vec![2, 0], vec![1, 1]]);
        let p = u(&[1, 0, 1, 1]);
        let gb = gcd_free_basis(std::slice::from_ref(&p)).unwrap();
        assert_eq!(gb.basis, vec![p]);
        assert!(gcd_free_basis(&[]).is_err());
    }

    #[test]
    fn root_multiplicity_counts() {
        let f = u(&[-1, 1]).pow(3).mul(&u(&[5, 1]));
        assert_eq!(f.root_multiplicity(&Scalar::one()), 3);
        assert_eq!(f.root_multiplicity(&Scalar::zero()), 0);
    }

    #[test]
    fn multipoly_bridge() {
        let p: MultiPoly = "t^2*(t - 1)".parse().unwrap();
        assert_eq!(squarefree_part(&p).unwrap(), "t^2 - t".parse().unwrap());
        let q: MultiPoly = "t*s".parse().unwrap();
        assert!(squarefree_part(&q).is_err());
    }
}
