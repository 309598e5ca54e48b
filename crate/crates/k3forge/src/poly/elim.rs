use super::{MultiPoly, PolyError};

/// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
pub(crate) fn det_bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester resultant of `p` and `q` with respect to `x`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, x: &str) -> Result<MultiPoly, PolyError> {
    let m = p.degree_in(x) as usize;
    let n = q.degree_in(x) as usize;
    if m == 0 || n == 0 {
        return Err(PolyError::Domain(format!("resultant needs positive degree in `{x}`")));
    }
    let pc = p.coefficients_in(x);
    let qc = q.coefficients_in(x);
    let size = m + n;
    let mut s = vec![vec![MultiPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().enumerate() {
            s[r][r + m - k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().enumerate() {
            s[n + r][r + n - k] = c.clone();
        }
    }
    det_bareiss(s).check_degree()
}

/// Discriminant in `x` for degrees 2 to 4: `(-1)^(n(n-1)/2) Res(p, p') / lc`.
pub fn discriminant_univariate(p: &MultiPoly, x: &str) -> Result<MultiPoly, PolyError> {
    let n = p.degree_in(x);
    if !(2..=4).contains(&n) {
        return Err(PolyError::Domain(format!("discriminant supports degrees 2..4 in `{x}`, got {n}")));
    }
    let lc = p.coefficients_in(x).pop().unwrap();
    let r = resultant(p, &p.derivative(x), x)?;
    let d = r
        .div_exact(&lc)
        .ok_or_else(|| PolyError::Domain("leading coefficient does not divide the resultant".into()))?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn linear_resultant() {
        assert_eq!(resultant(&p("x - u"), &p("x - v"), "x").unwrap(), p("u - v"));
    }

    #[test]
    fn common_factor_resultant() {
        assert!(resultant(&p("x^2 - u"), &p("x^2 - u"), "x").unwrap().is_zero());
    }

    #[test]
    fn hand_sized_resultant() {
        // Res_x(x^2+ux+1, x+v) = p(-v) = v^2 - uv + 1
        assert_eq!(resultant(&p("x^2 + u*x + 1"), &p("x + v"), "x").unwrap(), p("v^2 - u*v + 1"));
        assert!(resultant(&p("u"), &p("x"), "x").is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_univariate(&p("b0*x^2 + b1*x + b2"), "x").unwrap(), p("b1^2 - 4*b0*b2"));
        assert_eq!(discriminant_univariate(&p("x^3 + a*x + b"), "x").unwrap(), p("-4*a^3 - 27*b^2"));
        assert!(discriminant_univariate(&p("x^5 + 1"), "x").is_err());
        assert!(discriminant_univariate(&p("x + 1"), "x").is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![p("a"), p("b"), p("0")],
            vec![p("c"), p("d"), p("e")],
            vec![p("0"), p("f"), p("g")],
        ];
        assert_eq!(det_bareiss(m), p("a*d*g - a*e*f - b*c*g"));
    }
}
