//! Seeded sampling of bounded-height rationals and binary forms.
//!
//! Everything downstream draws from [`Sampler`], so a `(seed, height)` pair
//! pins down every instance the suite looks at.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{MultiPoly, Scalar};

pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

impl Sampler {
    pub fn new(seed: u64, height: i64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height: height.max(1),
        }
    }

    /// Fresh sampler for a named sub-stream, so adding checks never shifts other checks' instances.
    pub fn derived(seed: u64, height: i64, label: &str) -> Self {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        Self::new(seed ^ h, height)
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let x = self.int(-self.height, self.height);
            if x != 0 {
                return x;
            }
        }
    }

    /// `n/d` with `|n| <= height` and `1 <= d <= height`.
    pub fn rational(&mut self) -> Scalar {
        let n = self.int(-self.height, self.height);
        let d = self.int(1, self.height);
        Scalar::new(n.into(), d.into())
    }

    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Small integer coefficient; keeps expansions light where only genericity matters.
    pub fn small(&mut self) -> Scalar {
        let h = self.height.min(9);
        Scalar::from_integer(self.int(-h, h).into())
    }

    /// Random binary form of degree `d` in `(a, b)` with small integer coefficients.
    pub fn form(&mut self, a: &str, b: &str, d: u32) -> MultiPoly {
        self.form_with_order(a, b, d, b, 0)
    }

    /// Binary form of degree `d` divisible by `var^k` (`var` one of the two variables),
    /// with nonzero coefficients at the extreme monomials so the order is exact.
    pub fn form_with_order(&mut self, a: &str, b: &str, d: u32, var: &str, k: u32) -> MultiPoly {
        assert!(k <= d);
        let mut terms = Vec::new();
        for i in 0..=d {
            let eb = i;
            let ea = d - i;
            let order_var = if var == b { eb } else { ea };
            if order_var < k {
                continue;
            }
            let c = if order_var == k || i == 0 || i == d {
                self.nonzero_small()
            } else {
                self.small()
            };
            terms.push((vec![ea, eb], c));
        }
        MultiPoly::from_terms(&[a, b], terms)
    }

    /// Random ternary form of degree `d` in `u, v, w` with small integer coefficients.
    pub fn ternary_form(&mut self, d: u32) -> MultiPoly {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=(d - i) {
                terms.push((vec![i, j, d - i - j], self.small()));
            }
        }
        MultiPoly::from_terms(&["u", "v", "w"], terms)
    }

    pub fn nonzero_small(&mut self) -> Scalar {
        loop {
            let x = self.small();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Rational point of bounded height, as integers.
    pub fn point(&mut self, dim: usize) -> Vec<i64> {
        (0..dim).map(|_| self.int(-self.height, self.height)).collect()
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            xs.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = Sampler::new(7, 20);
        let mut b = Sampler::new(7, 20);
        for _ in 0..10 {
            assert_eq!(a.rational(), b.rational());
        }
        let mut c = Sampler::derived(7, 20, "x");
        let mut d = Sampler::derived(7, 20, "y");
        let xs: Vec<_> = (0..5).map(|_| c.int(0, 1000)).collect();
        let ys: Vec<_> = (0..5).map(|_| d.int(0, 1000)).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn forced_order() {
        let mut s = Sampler::new(3, 20);
        for k in 0..=4 {
            let f = s.form_with_order("u", "v", 4, "v", k);
            assert_eq!(f.valuation_in("v"), Some(k));
            assert_eq!(f.homogeneous_degree_in(&["u", "v"]), Some(4));
        }
    }

    #[test]
    fn ternary_forms_are_homogeneous() {
        let mut s = Sampler::new(5, 20);
        let f = s.ternary_form(4);
        assert_eq!(f.homogeneous_degree_in(&["u", "v", "w"]), Some(4));
    }

    #[test]
    fn height_bound_respected() {
        let mut s = Sampler::new(1, 20);
        for _ in 0..200 {
            let r = s.rational();
            assert!(r.numer().magnitude() <= &20u32.into());
            assert!(r.denom() <= &20.into());
        }
    }
}
