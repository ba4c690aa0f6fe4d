//! Univariate polynomials over the rationals: primitive-PRS gcd, Yun
//! squarefree decomposition, and Sylvester resultants. This is the toolkit
//! behind preimage multiplicities and morphism validation on the line.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{BigInt, BigRat};
use crate::linalg::bareiss_det;
use crate::poly::HomogeneousForm;
use crate::Result;

/// Coefficients ascending; the last entry is nonzero unless the polynomial
/// is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRat::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRat::from(BigInt::from(k as i64)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-BigRat::one()))
    }

    pub fn scale(&self, c: &BigRat) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Exact division; panics if the division leaves a remainder.
    fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "division was expected to be exact");
        q
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        let lead = divisor.coeffs.last().unwrap();
        let mut quot = vec![BigRat::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let delta = d * &q;
                rem[k + i] = rem[k + i].clone() - delta;
            }
            quot[k] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Primitive integer coefficients (content removed, positive leading
    /// coefficient). Zero maps to an empty vector.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Gcd over the rationals, returned as the primitive integer
    /// representative with positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return from_int_coeffs(other.primitive_int());
        }
        if other.is_zero() {
            return from_int_coeffs(self.primitive_int());
        }
        let mut a = self.primitive_int();
        let mut b = other.primitive_int();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // primitive polynomial remainder sequence over the integers
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        from_int_coeffs(positive_lead(a))
    }
}

fn from_int_coeffs(coeffs: Vec<BigInt>) -> UniPoly {
    UniPoly::from_coeffs(coeffs.into_iter().map(BigRat::from).collect())
}

fn positive_lead(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    if coeffs.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in &mut coeffs {
            *c = -std::mem::take(c);
        }
    }
    coeffs
}

fn primitive_part(coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in &coeffs {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return Vec::new();
    }
    coeffs.into_iter().map(|c| c / &content).collect()
}

// scaled remainder of a by b: each step multiplies by lc(b) and cancels the
// top coefficient, so the result agrees with the pseudo-remainder up to a
// constant, which the primitive part removes anyway
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut rem: Vec<BigInt> = a.to_vec();
    while rem.len() > db {
        let da = rem.len() - 1;
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c = &*c * lead;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[da - db + i] = &rem[da - db + i] - &(bc * &top);
        }
        debug_assert!(rem.last().unwrap().is_zero());
        while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
            rem.pop();
        }
    }
    rem
}

/// Multiplicity profile of the squarefree decomposition (Yun): pairs of
/// (multiplicity, degree of the squarefree factor with that multiplicity).
/// No root extraction happens; factors of degree zero are dropped.
pub fn squarefree_multiplicities(p: &UniPoly) -> Result<Vec<(u32, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let deriv = p.derivative();
    let a = p.gcd(&deriv);
    let mut out = Vec::new();
    if a.degree() == Some(0) {
        out.push((1, p.degree().unwrap() as u32));
        return Ok(out);
    }
    let mut b = p.exact_div(&a);
    let mut c = deriv.exact_div(&a);
    let mut d = c.sub(&b.derivative());
    let mut i: u32 = 1;
    while b.degree().unwrap_or(0) > 0 {
        let g = b.gcd(&d);
        if g.degree().unwrap_or(0) > 0 {
            out.push((i, g.degree().unwrap() as u32));
        }
        b = b.exact_div(&g);
        c = d.exact_div(&g);
        d = c.sub(&b.derivative());
        i += 1;
    }
    Ok(out)
}

/// Resultant by the Sylvester determinant, computed fraction-free after
/// clearing denominators. `res(0, c) = 1` for a nonzero constant `c`, so
/// that the resultant vanishes exactly when the gcd has positive degree.
pub fn resultant_uni(p: &UniPoly, q: &UniPoly) -> Result<BigRat> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_zero() {
        return Ok(if q.degree().unwrap() > 0 {
            BigRat::zero()
        } else {
            BigRat::one()
        });
    }
    if q.is_zero() {
        return Ok(if p.degree().unwrap() > 0 {
            BigRat::zero()
        } else {
            BigRat::one()
        });
    }
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    if m == 0 {
        return Ok(pow_rat(p.leading().unwrap(), n as u32));
    }
    if n == 0 {
        return Ok(pow_rat(q.leading().unwrap(), m as u32));
    }

    // integer rescale: res(aP, bQ) = a^n b^m res(P, Q)
    let (pi, pa) = clear_denominators(p);
    let (qi, qa) = clear_denominators(q);
    let size = m + n;
    let mut matrix = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in pi.iter().enumerate() {
            // descending order: column row+0 holds the leading coefficient
            matrix[row][row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qi.iter().enumerate() {
            matrix[n + row][row + n - k] = c.clone();
        }
    }
    let det = BigRat::from(bareiss_det(matrix));
    let scale = pow_rat(&BigRat::from(pa), n as u32) * pow_rat(&BigRat::from(qa), m as u32);
    Ok(det / scale)
}

fn pow_rat(x: &BigRat, e: u32) -> BigRat {
    let mut acc = BigRat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn clear_denominators(p: &UniPoly) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    (
        p.coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect(),
        lcm,
    )
}

/// Coefficients of a binary form as a polynomial in the first variable
/// (second variable set to 1).
pub fn dehomogenize_binary(form: &HomogeneousForm) -> Result<UniPoly> {
    if form.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: form.nvars(),
        });
    }
    let mut coeffs = vec![BigRat::zero(); form.degree() as usize + 1];
    for (exps, c) in form.terms() {
        coeffs[exps[0] as usize] = c.clone();
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || k == 0 {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            if k >= 1 {
                write!(f, "z")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}
