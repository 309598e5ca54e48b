//! Even integral lattices given by Gram matrices.
//!
//! Isometry between hyperbolic 2-elementary lattices is decided through the
//! triple `(rho, ell, delta)`, which classifies them for the K3 range.

mod catalog;
mod disc;
mod expr;
pub mod intmat;

pub use catalog::{lattice_catalog, LatticeRow};
pub use disc::{discriminant_form, same_two_elementary_class, two_elementary_invariants, DiscriminantGroup, TwoElementaryInvariants};
pub use expr::parse_lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use intmat::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry {0} is odd, lattice is not even")]
    NotEven(usize),
    #[error("lattice is degenerate (rank {rank} < {dim})")]
    RankDeficient { rank: usize, dim: usize },
    #[error("{0}")]
    Domain(String),
    #[error("not 2-elementary: invariant factor {0}")]
    NotTwoElementary(BigInt),
    #[error("signature ({0}, {1}) is not hyperbolic")]
    NotHyperbolic(usize, usize),
    #[error("invalid glue vector: {0}")]
    InvalidGlue(String),
    #[error("cannot parse lattice expression `{0}`: {1}")]
    Parse(String, String),
    #[error("entry does not fit in i64")]
    Overflow,
}

/// Symmetric even Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
}

/// On-disk form: `{"name": ..., "gram": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
}

impl Lattice {
    /// Validates symmetry and evenness. Degenerate Gram matrices are accepted;
    /// operations that need nondegeneracy report it.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::NotSquare);
            }
            if row[i] % 2 != 0 {
                return Err(LatticeError::NotEven(i));
            }
            for j in 0..i {
                if row[j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { gram })
    }

    fn from_big(m: &IntMatrix) -> Result<Self, LatticeError> {
        let g = m
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().ok_or(LatticeError::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        Self::new(g)
    }

    pub fn from_file(f: &LatticeFile) -> Result<Self, LatticeError> {
        Self::new(f.gram.clone())
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn big_gram(&self) -> IntMatrix {
        intmat::from_i64(&self.gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Signed determinant.
    pub fn det(&self) -> BigInt {
        intmat::det(&self.big_gram())
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn hyperbolic_plane() -> Self {
        Self {
            gram: vec![vec![0, 1], vec![1, 0]],
        }
    }

    /// `<r>` for even `r`.
    pub fn diag(r: i64) -> Result<Self, LatticeError> {
        if r == 0 || r % 2 != 0 {
            return Err(LatticeError::Domain(format!("<{r}> needs a nonzero even entry")));
        }
        Ok(Self { gram: vec![vec![r]] })
    }

    /// Negative definite `A_n`.
    pub fn a(n: usize) -> Result<Self, LatticeError> {
        if n < 1 {
            return Err(LatticeError::Domain("A_n needs n >= 1".into()));
        }
        Ok(Self::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()))
    }

    /// Negative definite `D_m`.
    pub fn d(m: usize) -> Result<Self, LatticeError> {
        if m < 4 {
            return Err(LatticeError::Domain("D_m needs m >= 4".into()));
        }
        // chain 0..m-2 with node m-1 attached to m-3
        let mut edges: Vec<_> = (1..m - 1).map(|i| (i - 1, i)).collect();
        edges.push((m - 3, m - 1));
        Ok(Self::from_edges(m, &edges))
    }

    /// Negative definite `E_k`.
    pub fn e(k: usize) -> Result<Self, LatticeError> {
        if !(6..=8).contains(&k) {
            return Err(LatticeError::Domain("E_k needs k in {6, 7, 8}".into()));
        }
        // chain 0..k-2 with node k-1 attached to node 2
        let mut edges: Vec<_> = (1..k - 1).map(|i| (i - 1, i)).collect();
        edges.push((2, k - 1));
        Ok(Self::from_edges(k, &edges))
    }

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = vec![vec![0i64; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(a, b) in edges {
            g[a][b] = 1;
            g[b][a] = 1;
        }
        Self { gram: g }
    }

    /// Rank 8 Nikulin lattice: eight orthogonal (-2)-vectors and their half sum.
    pub fn nikulin() -> Self {
        let base = Self::a(1).unwrap().power(8);
        let mut w = vec![BigRational::zero(); 8];
        for x in w.iter_mut() {
            *x = BigRational::new(1.into(), 2.into());
        }
        base.overlattice_from_glue(&w).expect("half-sum glue is valid")
    }

    pub fn rescale(&self, lambda: i64) -> Result<Self, LatticeError> {
        if lambda == 0 {
            return Err(LatticeError::Domain("rescaling by zero".into()));
        }
        Self::new(self.gram.iter().map(|r| r.iter().map(|x| x * lambda).collect()).collect())
    }

    /// Orthogonal direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let mut g = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            g[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            g[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        Self { gram: g }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut out = Self { gram: Vec::new() };
        for _ in 0..k {
            out = out.sum(self);
        }
        out
    }

    /// Gram matrix in the basis given by the rows of `u`.
    pub fn change_basis(&self, u: &IntMatrix) -> Result<Self, LatticeError> {
        let g = intmat::mul(&intmat::mul(u, &self.big_gram()), &intmat::transpose(u));
        Self::from_big(&g)
    }

    /// Inner product of integer coordinate vectors.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    /// Rational inner product.
    pub fn pair_q(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * BigRational::from_integer(self.gram[i][j].into()) * yj;
            }
        }
        s
    }

    /// Inertia `(n_plus, n_minus)` by rational congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        let (p, m, z) = inertia(&self.gram);
        if z > 0 {
            return Err(LatticeError::RankDeficient {
                rank: p + m,
                dim: self.rank(),
            });
        }
        Ok((p, m))
    }

    /// `self + Z w` for a rational glue vector `w` in lattice coordinates.
    pub fn overlattice_from_glue(&self, w: &[BigRational]) -> Result<Self, LatticeError> {
        let n = self.rank();
        if w.len() != n {
            return Err(LatticeError::InvalidGlue(format!("length {} for rank {n}", w.len())));
        }
        let two = BigRational::from_integer(2.into());
        let w2: Vec<BigInt> = w
            .iter()
            .map(|x| {
                let y = x * &two;
                if y.is_integer() {
                    Ok(y.to_integer())
                } else {
                    Err(LatticeError::InvalidGlue("2w is not in the lattice".into()))
                }
            })
            .collect::<Result<_, _>>()?;
        for i in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::one();
            if !self.pair_q(w, &e).is_integer() {
                return Err(LatticeError::InvalidGlue("w pairs non-integrally with the lattice".into()));
            }
        }
        let norm = self.pair_q(w, w);
        if !norm.is_integer() || norm.to_integer().is_odd() {
            return Err(LatticeError::InvalidGlue(format!("q(w) = {norm} is not even")));
        }
        let mut rows: IntMatrix = intmat::identity(n)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * 2).collect())
            .collect();
        rows.push(w2);
        let (_, e, r) = intmat::echelon(&rows);
        let b: IntMatrix = e.into_iter().take(r).collect();
        let g = intmat::mul(&intmat::mul(&b, &self.big_gram()), &intmat::transpose(&b));
        let g: IntMatrix = g.into_iter().map(|row| row.into_iter().map(|x| x / 4).collect()).collect();
        Self::from_big(&g)
    }

    /// Sublattice generated by integer coordinate vectors. A degenerate ambient
    /// is quotiented by the radical of the generators' Gram matrix.
    pub fn lattice_from_generators(&self, gens: &[Vec<i64>]) -> Result<Self, LatticeError> {
        if gens.is_empty() {
            return Err(LatticeError::Domain("empty generator set".into()));
        }
        if gens.iter().any(|g| g.len() != self.rank()) {
            return Err(LatticeError::Domain("generator length does not match the ambient rank".into()));
        }
        let v = intmat::from_i64(gens);
        if !self.is_degenerate() {
            let (_, e, r) = intmat::echelon(&v);
            let b: IntMatrix = e.into_iter().take(r).collect();
            return self.change_basis(&b);
        }
        let m = intmat::mul(&intmat::mul(&v, &self.big_gram()), &intmat::transpose(&v));
        Self::from_big(&radical_quotient(&m))
    }
}

/// Gram of `Z^k / ker(m)` for a symmetric integer matrix `m`.
pub fn radical_quotient(m: &IntMatrix) -> IntMatrix {
    let (u, _, r) = intmat::echelon(&intmat::transpose(m));
    let w1: IntMatrix = u.into_iter().take(r).collect();
    intmat::mul(&intmat::mul(&w1, m), &intmat::transpose(&w1))
}

/// `(positive, negative, zero)` counts of the congruence-diagonalized form.
pub fn inertia(gram: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(k, p);
            for r in a.iter_mut() {
                r.swap(k, p);
            }
        } else if let Some((i, j)) = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
            // a[i][i] = a[j][j] = 0: adding row/column j to i makes a[i][i] = 2 a[i][j]
            for c in 0..n {
                let t = a[j][c].clone();
                a[i][c] += t;
            }
            for r in a.iter_mut() {
                let t = r[j].clone();
                r[i] += t;
            }
            a.swap(k, i);
            for r in a.iter_mut() {
                r.swap(k, i);
            }
        } else {
            return (pos, neg, n - k);
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for c in k..n {
                let t = &f * &a[k][c];
                a[i][c] -= t;
            }
            for r in a.iter_mut().skip(k) {
                let t = &f * &r[k];
                r[i] -= t;
            }
        }
    }
    (pos, neg, 0)
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.gram {
            let s: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", s.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn standard_dets() {
        assert_eq!(Lattice::hyperbolic_plane().det(), BigInt::from(-1));
        assert_eq!(Lattice::a(1).unwrap().gram(), &[vec![-2]]);
        assert_eq!(Lattice::a(4).unwrap().det(), BigInt::from(5));
        assert_eq!(Lattice::d(6).unwrap().det(), BigInt::from(4));
        assert_eq!(Lattice::e(6).unwrap().det(), BigInt::from(3));
        assert_eq!(Lattice::e(7).unwrap().det(), BigInt::from(-2));
        assert_eq!(Lattice::e(8).unwrap().det(), BigInt::from(1));
        assert!(Lattice::d(3).is_err());
        assert!(Lattice::e(9).is_err());
        assert!(Lattice::a(0).is_err());
    }

    #[test]
    fn nikulin_lattice() {
        let n = Lattice::nikulin();
        assert_eq!(n.rank(), 8);
        assert_eq!(n.det(), BigInt::from(64));
        let d = discriminant_form(&n).unwrap();
        assert_eq!(d.cyclic_orders, vec![BigInt::from(2); 6]);
    }

    #[test]
    fn validation() {
        assert_eq!(Lattice::new(vec![vec![1]]), Err(LatticeError::NotEven(0)));
        assert_eq!(Lattice::new(vec![vec![0, 1], vec![2, 0]]), Err(LatticeError::NotSymmetric(1, 0)));
        assert_eq!(Lattice::new(vec![vec![0, 1]]), Err(LatticeError::NotSquare));
    }

    #[test]
    fn signatures() {
        assert_eq!(Lattice::hyperbolic_plane().signature().unwrap(), (1, 1));
        assert_eq!(Lattice::e(8).unwrap().signature().unwrap(), (0, 8));
        let l = parse_lattice("H+E8+E7").unwrap();
        assert_eq!(l.signature().unwrap(), (1, 16));
        let deg = Lattice::new(vec![vec![0, 0], vec![0, -2]]).unwrap();
        assert!(matches!(deg.signature(), Err(LatticeError::RankDeficient { .. })));
    }

    #[test]
    fn eight_node_glue() {
        let l = parse_lattice("<2>+<-2>+A1^8").unwrap();
        let mut w = vec![BigRational::zero(); 10];
        for x in w.iter_mut().skip(2) {
            *x = half();
        }
        let o = l.overlattice_from_glue(&w).unwrap();
        assert_eq!(o.det(), -BigInt::from(256));
        let t = two_elementary_invariants(&o).unwrap();
        assert_eq!((t.rho, t.ell, t.delta), (10, 8, 1));
        // trivial glue
        let z = vec![BigRational::zero(); 10];
        assert_eq!(l.overlattice_from_glue(&z).unwrap().det(), l.det());
    }

    #[test]
    fn invalid_glue() {
        let l = Lattice::a(1).unwrap().power(4);
        let w = vec![half(), half(), BigRational::zero(), BigRational::zero()];
        // q = -1: odd
        assert!(matches!(l.overlattice_from_glue(&w), Err(LatticeError::InvalidGlue(_))));
        let w = vec![BigRational::new(1.into(), 3.into()); 4];
        assert!(matches!(l.overlattice_from_glue(&w), Err(LatticeError::InvalidGlue(_))));
    }

    #[test]
    fn generators() {
        let l = Lattice::diag(-2).unwrap();
        assert_eq!(l.lattice_from_generators(&[vec![2]]).unwrap().gram(), &[vec![-8]]);
        let h = Lattice::hyperbolic_plane();
        let same = h.lattice_from_generators(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(same.det(), h.det());
        assert!(h.lattice_from_generators(&[]).is_err());
        // dependent generators
        let sub = h.lattice_from_generators(&[vec![1, 1], vec![2, 2], vec![1, -1]]).unwrap();
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.det(), BigInt::from(-4));
    }

    #[test]
    fn radical_quotient_of_degenerate_ambient() {
        // three curves with c = a + b numerically: a.a = b.b = -2, a.b = 1
        let g = vec![vec![-2, 1, -1], vec![1, -2, -1], vec![-1, -1, -2]];
        let amb = Lattice::new(g).unwrap();
        assert!(amb.is_degenerate());
        let l = amb.lattice_from_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.det(), BigInt::from(3));
    }
}
