//! Multivariate polynomial algebra over the rationals.
//!
//! Sparse term maps keyed by exponent vectors: compositions of the maps we
//! iterate stay sparse, while dense arrays at degree 3^t would explode.
//! [`HomogeneousForm`] carries a degree tag checked at construction;
//! [`DehomPoly`] is the unrestricted variant used for local equations.

mod parse;
mod uni;

pub use parse::{parse_form, parse_poly};
pub use uni::{dehomogenize_binary, resultant_uni, squarefree_multiplicities, UniPoly};

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{BigInt, BigRat};
use crate::Result;

pub type Exponents = Vec<u32>;
type TermMap = BTreeMap<Exponents, BigRat>;

fn add_term(map: &mut TermMap, exps: Exponents, coeff: BigRat) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(exps) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn mul_maps(a: &TermMap, b: &TermMap, nvars: usize) -> TermMap {
    let mut out = TermMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = Vec::with_capacity(nvars);
            for i in 0..nvars {
                e.push(ea[i] + eb[i]);
            }
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

fn total_degree(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

/// Graded-lex: compare by total degree, then lexicographically.
fn graded_lex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    total_degree(a)
        .cmp(&total_degree(b))
        .then_with(|| a.cmp(b))
}

fn format_terms(f: &mut fmt::Formatter<'_>, terms: &TermMap, names: &[String]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let mut sorted: Vec<(&Exponents, &BigRat)> = terms.iter().collect();
    sorted.sort_by(|x, y| graded_lex(y.0, x.0));
    for (i, (exps, coeff)) in sorted.iter().enumerate() {
        let neg = coeff.is_negative();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = coeff.abs();
        let is_constant = exps.iter().all(|&e| e == 0);
        let mut wrote = false;
        if !mag.is_one() || is_constant {
            if mag.denom().is_one() {
                write!(f, "{}", mag.numer())?;
            } else {
                write!(f, "{}/{}", mag.numer(), mag.denom())?;
            }
            wrote = true;
        }
        for (v, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "{}", names[v])?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
            wrote = true;
        }
    }
    Ok(())
}

fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("x{}", i)).collect()
}

/// A homogeneous form over the rationals. Every stored exponent vector sums
/// to the degree tag; the zero form keeps the tag with an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    nvars: usize,
    degree: u32,
    terms: TermMap,
}

impl HomogeneousForm {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousForm {
            nvars,
            degree,
            terms: TermMap::new(),
        }
    }

    /// Build from terms, verifying homogeneity.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRat)>,
    {
        let mut map = TermMap::new();
        let mut degree: Option<u32> = None;
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            if coeff.is_zero() {
                continue;
            }
            let d = total_degree(&exps);
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::Inhomogeneous(d0, d)),
                _ => {}
            }
            add_term(&mut map, exps, coeff);
        }
        Ok(HomogeneousForm {
            nvars,
            degree: degree.unwrap_or(0),
            terms: map,
        })
    }

    /// The i-th coordinate form X_i.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut terms = TermMap::new();
        terms.insert(exps, BigRat::one());
        HomogeneousForm {
            nvars,
            degree: 1,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exact evaluation at integer coordinates.
    pub fn eval(&self, coords: &[BigInt]) -> Result<BigRat> {
        if coords.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: coords.len(),
            });
        }
        let mut acc = BigRat::zero();
        for (exps, coeff) in &self.terms {
            let mut term = BigInt::one();
            for (x, &e) in coords.iter().zip(exps.iter()) {
                if e > 0 {
                    term *= x.pow(e);
                }
            }
            acc += coeff * BigRat::from(term);
        }
        Ok(acc)
    }

    /// Exact evaluation at rational coordinates.
    pub fn eval_rat(&self, coords: &[BigRat]) -> Result<BigRat> {
        if coords.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: coords.len(),
            });
        }
        Ok(eval_map_rat(&self.terms, coords))
    }

    /// Substitute the forms `g` for the variables: (self)(g_0, ..., g_k).
    pub fn compose(&self, g: &[HomogeneousForm]) -> Result<HomogeneousForm> {
        if g.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: g.len(),
            });
        }
        let (inner_nvars, inner_degree) = match g.first() {
            Some(first) => (first.nvars, first.degree),
            None => return Err(Error::ArityMismatch { expected: 1, got: 0 }),
        };
        for gi in g {
            if gi.nvars != inner_nvars || gi.degree != inner_degree {
                return Err(Error::DegreeMismatch(
                    "substituted forms must share arity and degree".into(),
                ));
            }
        }
        // cache powers of each g_i up to its maximum exponent
        let mut max_pow = vec![0u32; self.nvars];
        for exps in self.terms.keys() {
            for (m, &e) in max_pow.iter_mut().zip(exps.iter()) {
                *m = (*m).max(e);
            }
        }
        let powers: Vec<Vec<TermMap>> = g
            .iter()
            .enumerate()
            .map(|(i, gi)| {
                let mut pows = Vec::with_capacity(max_pow[i] as usize + 1);
                let mut one = TermMap::new();
                one.insert(vec![0; inner_nvars], BigRat::one());
                pows.push(one);
                for k in 1..=max_pow[i] {
                    let next = mul_maps(&pows[(k - 1) as usize], &gi.terms, inner_nvars);
                    pows.push(next);
                }
                pows
            })
            .collect();

        let mut out = TermMap::new();
        for (exps, coeff) in &self.terms {
            let mut prod = TermMap::new();
            prod.insert(vec![0; inner_nvars], coeff.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    prod = mul_maps(&prod, &powers[i][e as usize], inner_nvars);
                }
            }
            for (e, c) in prod {
                add_term(&mut out, e, c);
            }
        }
        Ok(HomogeneousForm {
            nvars: inner_nvars,
            degree: self.degree * inner_degree,
            terms: out,
        })
    }

    pub fn partial_derivative(&self, var: usize) -> HomogeneousForm {
        let degree = self.degree.saturating_sub(1);
        let mut out = TermMap::new();
        for (exps, coeff) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut d = exps.clone();
            d[var] = e - 1;
            add_term(&mut out, d, coeff * BigRat::from(BigInt::from(e)));
        }
        HomogeneousForm {
            nvars: self.nvars,
            degree,
            terms: out,
        }
    }

    pub fn add(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(Error::Inhomogeneous(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        Ok(HomogeneousForm {
            nvars: self.nvars,
            degree: if self.is_zero() { other.degree } else { self.degree },
            terms,
        })
    }

    pub fn mul(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms: mul_maps(&self.terms, &other.terms, self.nvars),
        })
    }

    pub fn scale(&self, c: &BigRat) -> HomogeneousForm {
        let mut terms = TermMap::new();
        for (e, coeff) in &self.terms {
            add_term(&mut terms, e.clone(), coeff * c);
        }
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn neg(&self) -> HomogeneousForm {
        self.scale(&-BigRat::one())
    }

    /// Set X_chart = 1, dropping that variable.
    pub fn dehomogenize(&self, chart: usize) -> DehomPoly {
        let mut terms = TermMap::new();
        for (exps, coeff) in &self.terms {
            let mut e = Vec::with_capacity(self.nvars - 1);
            for (v, &k) in exps.iter().enumerate() {
                if v != chart {
                    e.push(k);
                }
            }
            add_term(&mut terms, e, coeff.clone());
        }
        DehomPoly {
            nvars: self.nvars - 1,
            terms,
        }
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Integer coefficient terms. Panics unless `is_integral()`.
    pub fn integer_terms(&self) -> Vec<(Exponents, BigInt)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                assert!(c.denom().is_one(), "form has non-integer coefficients");
                (e.clone(), c.numer().clone())
            })
            .collect()
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// (graded-lex greatest) coefficient.
    pub fn primitive(&self) -> HomogeneousForm {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let leading = self
            .terms
            .iter()
            .max_by(|a, b| graded_lex(a.0, b.0))
            .expect("nonzero form");
        let mut scale = BigRat::new(lcm, gcd);
        if leading.1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> FormDisplay<'a> {
        FormDisplay { form: self, names }
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.terms, &default_names(self.nvars))
    }
}

pub struct FormDisplay<'a> {
    form: &'a HomogeneousForm,
    names: &'a [String],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.form.terms, self.names)
    }
}

fn eval_map_rat(terms: &TermMap, coords: &[BigRat]) -> BigRat {
    let mut acc = BigRat::zero();
    for (exps, coeff) in terms {
        let mut term = coeff.clone();
        for (x, &e) in coords.iter().zip(exps.iter()) {
            for _ in 0..e {
                term *= x;
            }
        }
        acc += term;
    }
    acc
}

/// A polynomial in affine coordinates, not necessarily homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehomPoly {
    nvars: usize,
    terms: TermMap,
}

impl DehomPoly {
    pub fn zero(nvars: usize) -> Self {
        DehomPoly {
            nvars,
            terms: TermMap::new(),
        }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRat)>,
    {
        let mut map = TermMap::new();
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            add_term(&mut map, exps, coeff);
        }
        Ok(DehomPoly { nvars, terms: map })
    }

    pub fn constant(nvars: usize, c: BigRat) -> Self {
        let mut terms = TermMap::new();
        add_term(&mut terms, vec![0; nvars], c);
        DehomPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut terms = TermMap::new();
        terms.insert(exps, BigRat::one());
        DehomPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Order of vanishing at the origin: least total degree present.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn add(&self, other: &DehomPoly) -> DehomPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        DehomPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul(&self, other: &DehomPoly) -> DehomPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        DehomPoly {
            nvars: self.nvars,
            terms: mul_maps(&self.terms, &other.terms, self.nvars),
        }
    }

    pub fn scale(&self, c: &BigRat) -> DehomPoly {
        let mut terms = TermMap::new();
        for (e, coeff) in &self.terms {
            add_term(&mut terms, e.clone(), coeff * c);
        }
        DehomPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn eval(&self, coords: &[BigRat]) -> Result<BigRat> {
        if coords.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: coords.len(),
            });
        }
        Ok(eval_map_rat(&self.terms, coords))
    }

    /// Recenter: returns q with q(u) = self(u + shift), by synthetic
    /// division one variable at a time.
    pub fn taylor_shift(&self, shift: &[BigRat]) -> Result<DehomPoly> {
        if shift.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: shift.len(),
            });
        }
        let mut current = self.clone();
        for (var, a) in shift.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            current = current.shift_one_var(var, a);
        }
        Ok(current)
    }

    // Substitute x_var -> x_var + a. View the polynomial as univariate in
    // x_var with DehomPoly coefficients and run repeated synthetic division
    // by (x_var - a), which reads off the Taylor coefficients at a.
    fn shift_one_var(&self, var: usize, a: &BigRat) -> DehomPoly {
        let deg = self
            .terms
            .keys()
            .map(|e| e[var])
            .max()
            .unwrap_or(0) as usize;
        // coefficient polynomials in the remaining variables
        let mut coeffs: Vec<TermMap> = vec![TermMap::new(); deg + 1];
        for (exps, c) in &self.terms {
            let k = exps[var] as usize;
            let mut rest = exps.clone();
            rest[var] = 0;
            add_term(&mut coeffs[k], rest, c.clone());
        }
        // synthetic division: after pass j, remainder is the coefficient
        // of (x - a)^j ... here of x^j in p(x + a)
        let mut out: Vec<TermMap> = Vec::with_capacity(deg + 1);
        for j in 0..=deg {
            for k in (j..deg).rev() {
                // coeffs[k] += a * coeffs[k+1]
                let scaled: Vec<(Exponents, BigRat)> = coeffs[k + 1]
                    .iter()
                    .map(|(e, c)| (e.clone(), c * a))
                    .collect();
                for (e, c) in scaled {
                    add_term(&mut coeffs[k], e, c);
                }
            }
            out.push(coeffs[j].clone());
        }
        let mut terms = TermMap::new();
        for (k, map) in out.into_iter().enumerate() {
            for (mut e, c) in map {
                e[var] = k as u32;
                add_term(&mut terms, e, c);
            }
        }
        DehomPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> DehomDisplay<'a> {
        DehomDisplay { poly: self, names }
    }
}

impl fmt::Display for DehomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.terms, &default_names(self.nvars))
    }
}

pub struct DehomDisplay<'a> {
    poly: &'a DehomPoly,
    names: &'a [String],
}

impl fmt::Display for DehomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.poly.terms, self.names)
    }
}

/// Order of vanishing of `g` at `pt`: least total degree after recentering.
pub fn vanishing_order(g: &DehomPoly, pt: &[BigRat]) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let shifted = g.taylor_shift(pt)?;
    shifted.order_at_origin().ok_or(Error::ZeroPolynomial)
}

/// Determinant of the matrix of partials of a square system of forms.
/// Its zero locus is the ramification divisor of the induced self-map.
pub fn jacobian_det(g: &[HomogeneousForm]) -> Result<HomogeneousForm> {
    let n = g.len();
    if n == 0 || g.iter().any(|f| f.nvars() != n) {
        return Err(Error::Invalid(
            "jacobian requires as many forms as variables".into(),
        ));
    }
    let d = g[0].degree();
    if g.iter().any(|f| f.degree() != d) {
        return Err(Error::DegreeMismatch(
            "jacobian requires forms of a common degree".into(),
        ));
    }
    let matrix: Vec<Vec<HomogeneousForm>> = g
        .iter()
        .map(|f| (0..n).map(|j| f.partial_derivative(j)).collect())
        .collect();
    let expected_degree = (n as u32) * d.saturating_sub(1);
    let det = form_matrix_det(&matrix, expected_degree)?;
    Ok(det)
}

fn form_matrix_det(m: &[Vec<HomogeneousForm>], degree: u32) -> Result<HomogeneousForm> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    // Laplace expansion along the first row; fine for the small N we meet
    let mut det = HomogeneousForm::zero(nvars, degree);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<HomogeneousForm>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let minor_degree = degree.saturating_sub(entry.degree());
        let sub = form_matrix_det(&minor, minor_degree)?;
        let mut contrib = entry.mul(&sub)?;
        if j % 2 == 1 {
            contrib = contrib.neg();
        }
        det = det.add(&contrib)?;
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRat {
        BigRat::from(BigInt::from(n))
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn eval_basic_forms() {
        let vars = names(&["X", "Y", "Z"]);
        let x3 = parse_form("X^3", &vars).unwrap();
        let coords = [BigInt::from(1), BigInt::from(3), BigInt::from(-5)];
        assert_eq!(x3.eval(&coords).unwrap(), rat(1));

        let g = parse_form("Y^3+Y*Z^2", &vars).unwrap();
        assert_eq!(g.eval(&coords).unwrap(), rat(102));

        let h = parse_form("X-Z", &vars).unwrap();
        let coords2 = [BigInt::from(16), BigInt::from(81), BigInt::from(1)];
        assert_eq!(h.eval(&coords2).unwrap(), rat(15));
    }

    #[test]
    fn compose_square_of_sum() {
        let vars = names(&["X0", "X1"]);
        let f = parse_form("X0^2", &vars).unwrap();
        let g0 = parse_form("X0+X1", &vars).unwrap();
        let g1 = parse_form("X1", &vars).unwrap();
        let composed = f.compose(&[g0.clone(), g1]).unwrap();
        let expected = parse_form("X0^2+2*X0*X1+X1^2", &vars).unwrap();
        assert_eq!(composed, expected);
    }

    #[test]
    fn compose_identity_is_identity() {
        let vars = names(&["X", "Y", "Z"]);
        let f = parse_form("X^3+2*Y^2*Z", &vars).unwrap();
        let id: Vec<HomogeneousForm> = (0..3).map(|i| HomogeneousForm::coordinate(3, i)).collect();
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn jacobian_of_monomials() {
        let vars = names(&["X", "Y", "Z"]);
        let forms = vec![
            parse_form("X^2", &vars).unwrap(),
            parse_form("Y^2", &vars).unwrap(),
            parse_form("Z^2", &vars).unwrap(),
        ];
        let det = jacobian_det(&forms).unwrap();
        let expected = parse_form("8*X*Y*Z", &vars).unwrap();
        assert_eq!(det, expected);
    }

    #[test]
    fn jacobian_of_twisted_cubic_map() {
        let vars = names(&["X", "Y", "Z"]);
        let forms = vec![
            parse_form("X^3", &vars).unwrap(),
            parse_form("Y^3+Y*Z^2", &vars).unwrap(),
            parse_form("Z^3", &vars).unwrap(),
        ];
        let det = jacobian_det(&forms).unwrap();
        let expected = parse_form("27*X^2*Y^2*Z^2 + 9*X^2*Z^4", &vars).unwrap();
        assert_eq!(det, expected);
    }

    #[test]
    fn jacobian_of_linear_forms_is_constant() {
        let vars = names(&["X", "Y"]);
        let forms = vec![
            parse_form("X+Y", &vars).unwrap(),
            parse_form("X-Y", &vars).unwrap(),
        ];
        let det = jacobian_det(&forms).unwrap();
        assert_eq!(det.degree(), 0);
        assert_eq!(det.eval(&[BigInt::from(1), BigInt::from(1)]).unwrap(), rat(-2));
    }

    #[test]
    fn vanishing_orders() {
        // x^2 y at the origin
        let p = DehomPoly::from_terms(2, vec![(vec![2, 1], BigRat::one())]).unwrap();
        assert_eq!(vanishing_order(&p, &[rat(0), rat(0)]).unwrap(), 3);

        // x^2 + y at the origin
        let q = DehomPoly::from_terms(
            2,
            vec![(vec![2, 0], BigRat::one()), (vec![0, 1], BigRat::one())],
        )
        .unwrap();
        assert_eq!(vanishing_order(&q, &[rat(0), rat(0)]).unwrap(), 1);

        // (x - 1)^2 at 1
        let r = DehomPoly::from_terms(
            1,
            vec![
                (vec![2], BigRat::one()),
                (vec![1], rat(-2)),
                (vec![0], BigRat::one()),
            ],
        )
        .unwrap();
        assert_eq!(vanishing_order(&r, &[rat(1)]).unwrap(), 2);
        assert_eq!(vanishing_order(&r, &[rat(0)]).unwrap(), 0);
    }

    #[test]
    fn vanishing_order_of_zero_polynomial_is_an_error() {
        let z = DehomPoly::zero(2);
        assert_eq!(
            vanishing_order(&z, &[rat(0), rat(0)]),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn vanishing_order_is_additive() {
        let p = DehomPoly::from_terms(
            2,
            vec![(vec![1, 0], BigRat::one()), (vec![0, 2], rat(3))],
        )
        .unwrap();
        let q = DehomPoly::from_terms(
            2,
            vec![(vec![1, 1], BigRat::one()), (vec![2, 0], rat(-1))],
        )
        .unwrap();
        let pt = [rat(0), rat(0)];
        let sum = vanishing_order(&p, &pt).unwrap() + vanishing_order(&q, &pt).unwrap();
        assert_eq!(vanishing_order(&p.mul(&q), &pt).unwrap(), sum);
    }

    #[test]
    fn primitive_clears_denominators_and_content() {
        let vars = names(&["X", "Y"]);
        let f = parse_form("1/2*X^2+3/2*X*Y", &vars).unwrap();
        let p = f.primitive();
        let expected = parse_form("X^2+3*X*Y", &vars).unwrap();
        assert_eq!(p, expected);

        let g = parse_form("-2*X^2-4*Y^2", &vars).unwrap();
        let expected_g = parse_form("X^2+2*Y^2", &vars).unwrap();
        assert_eq!(g.primitive(), expected_g);
    }

    #[test]
    fn display_graded_lex_with_signs() {
        let vars = names(&["X", "Y", "Z"]);
        let f = parse_form("Y^3+Y*Z^2", &vars).unwrap();
        assert_eq!(format!("{}", f.display(&vars)), "Y^3 + Y*Z^2");
        let g = parse_form("Z^3-3*X^2*Z+2*X*Y*Z", &vars).unwrap();
        assert_eq!(format!("{}", g.display(&vars)), "-3*X^2*Z + 2*X*Y*Z + Z^3");
    }

    #[test]
    fn taylor_shift_round_trip() {
        let p = DehomPoly::from_terms(
            2,
            vec![
                (vec![2, 0], rat(1)),
                (vec![1, 1], rat(-2)),
                (vec![0, 0], rat(7)),
            ],
        )
        .unwrap();
        let shift = [rat(3), rat(-2)];
        let shifted = p.taylor_shift(&shift).unwrap();
        let back = shifted
            .taylor_shift(&[rat(-3), rat(2)])
            .unwrap();
        assert_eq!(back, p);
        // value at origin of the shifted equals value at the shift point
        assert_eq!(
            shifted.eval(&[rat(0), rat(0)]).unwrap(),
            p.eval(&shift).unwrap()
        );
    }
}
