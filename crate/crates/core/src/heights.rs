//! Places of the rationals, normalized local absolute values, naive and
//! global heights, local heights of divisors and subschemes, and the
//! arithmetic distance between projective points.
//!
//! Local heights are only canonical up to bounded functions; this module
//! fixes one representative for everything, namely
//! `lambda_{D,v}(x) = log(max_i |x_i|_v^{deg F} / |F(x)|_v)` for a divisor
//! cut out by the form F, minima over generators for subschemes, and a
//! 2x2-minor (Segre) formula for the distance. With coprime integer
//! coordinates and content-1 integer forms, the finite-place values are
//! exact prime valuations scaled by log p; no factorization ever happens.
//!
//! Everything is normalized for the rationals: `|a|_inf` is the usual
//! absolute value and `|a|_p = p^(-v_p(a))`. Over a number field K one
//! would take `|a|_v = |N_{K_v/Q_p}(a)|_p^(1/[K:Q])` at each place v over
//! p; that normalization is noted here for reference but not implemented.

use std::fmt;
use std::str::FromStr;


use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exactnum::{self, BigInt, BigRat};
use crate::geometry::ProjPoint;
use crate::poly::HomogeneousForm;
use crate::Result;

/// A place of the rationals: the archimedean absolute value or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if exactnum::is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite(_))
    }

    /// Column label used in CSV output: "inf" or `p<prime>`.
    pub fn column_label(&self) -> String {
        match self {
            Place::Infinite => "inf".to_string(),
            Place::Finite(p) => format!("p{}", p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{}", p),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t.eq_ignore_ascii_case("infinity") {
            return Ok(Place::Infinite);
        }
        match t.parse::<u64>() {
            Ok(p) => Place::finite(p),
            Err(_) if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) => {
                Err(Error::PrimeTooLarge)
            }
            Err(_) => Err(Error::Invalid(format!("not a place: '{}'", s))),
        }
    }
}

/// v_p of a nonzero rational: valuation of the numerator minus valuation
/// of the denominator.
pub fn valuation_rat(q: &BigRat, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let num = exactnum::padic_valuation(q.numer(), p)? as i64;
    let den = exactnum::padic_valuation(q.denom(), p)? as i64;
    Ok(num - den)
}

/// |q|_v under the standard normalization for the rationals.
pub fn local_abs(q: &BigRat, v: &Place) -> Result<f64> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    match v {
        Place::Infinite => {
            let num = q.numer().to_f64().unwrap_or(f64::INFINITY);
            let den = q.denom().to_f64().unwrap_or(f64::INFINITY);
            Ok((num / den).abs())
        }
        Place::Finite(p) => {
            let val = valuation_rat(q, *p)?;
            Ok((*p as f64).powi(-val as i32))
        }
    }
}

/// An effective divisor on projective space, cut out by a nonzero form
/// with coprime integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorData {
    form: HomogeneousForm,
}

impl DivisorData {
    pub fn new(form: HomogeneousForm) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::Invalid("a divisor needs a nonzero form".into()));
        }
        if form.degree() == 0 {
            return Err(Error::Invalid("a divisor needs a form of positive degree".into()));
        }
        Ok(DivisorData {
            form: form.primitive(),
        })
    }

    pub fn form(&self) -> &HomogeneousForm {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    /// Exact integer value of the defining form at the point. Panics when
    /// the point does not live on the divisor's projective space.
    pub fn eval_int(&self, x: &ProjPoint) -> BigInt {
        let v = self
            .form
            .eval(x.coords())
            .expect("point and divisor live on different projective spaces");
        debug_assert!(v.denom().is_one());
        v.numer().clone()
    }
}

/// A closed subscheme presented as an intersection of effective divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubschemeData {
    generators: Vec<DivisorData>,
}

impl SubschemeData {
    pub fn new(generators: Vec<DivisorData>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("a subscheme needs at least one generator".into()));
        }
        Ok(SubschemeData { generators })
    }

    /// The reduced point y as a subscheme, cut out by the 2x2 minors of
    /// the coordinate matrix. For a coordinate vertex these are exactly
    /// the complementary coordinate hyperplanes.
    pub fn point(y: &ProjPoint) -> SubschemeData {
        let n = y.coords().len();
        let mut generators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut terms = Vec::new();
                let mut ei = vec![0u32; n];
                ei[i] = 1;
                terms.push((ei, BigRat::from(y.coords()[j].clone())));
                let mut ej = vec![0u32; n];
                ej[j] = 1;
                terms.push((ej, BigRat::from(-y.coords()[i].clone())));
                let form = HomogeneousForm::from_terms(n, terms).expect("linear minors");
                if !form.is_zero() {
                    generators.push(DivisorData::new(form).expect("nonzero linear form"));
                }
            }
        }
        SubschemeData::new(generators).expect("a point has nonzero minors")
    }

    pub fn generators(&self) -> &[DivisorData] {
        &self.generators
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.generators.iter().all(|g| g.eval_int(x).is_zero())
    }

    /// Exact generator values at the point.
    pub fn values(&self, x: &ProjPoint) -> Vec<BigInt> {
        self.generators.iter().map(|g| g.eval_int(x)).collect()
    }
}

/// Natural log of the largest absolute coordinate of a canonical point.
pub fn naive_height(x: &ProjPoint) -> f64 {
    let max = x
        .coords()
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("point has coordinates");
    exactnum::log_abs(&max).expect("canonical point has a nonzero coordinate")
}

/// lambda_{D,v}(x) for x off the divisor.
pub fn local_height_divisor(x: &ProjPoint, d: &DivisorData, v: &Place) -> Result<f64> {
    let value = d.eval_int(x);
    if value.is_zero() {
        return Err(Error::PointOnDivisor);
    }
    match v {
        // coprime coordinates make max_i |x_i|_p = 1
        Place::Finite(p) => {
            let val = exactnum::padic_valuation(&value, *p)?;
            Ok(val as f64 * (*p as f64).ln())
        }
        Place::Infinite => {
            let h = naive_height(x);
            Ok(d.degree() as f64 * h - exactnum::log_abs(&value)?)
        }
    }
}

/// Exact valuation accessor for the finite-place local height:
/// v_p(F(x)) for coprime integer coordinates.
pub fn local_height_divisor_valuation(x: &ProjPoint, d: &DivisorData, p: u64) -> Result<u64> {
    let value = d.eval_int(x);
    if value.is_zero() {
        return Err(Error::PointOnDivisor);
    }
    exactnum::padic_valuation(&value, p)
}

/// lambda_{Y,v} as the minimum over the presenting divisors. Generators
/// vanishing at x contribute +infinity and drop out of the minimum; only
/// a point on the whole subscheme is an error.
pub fn local_height_subscheme(x: &ProjPoint, y: &SubschemeData, v: &Place) -> Result<f64> {
    let mut best: Option<f64> = None;
    for g in y.generators() {
        match local_height_divisor(x, g, v) {
            Ok(val) => best = Some(best.map_or(val, |b| b.min(val))),
            Err(Error::PointOnDivisor) => continue,
            Err(e) => return Err(e),
        }
    }
    best.ok_or(Error::PointOnSubscheme)
}

/// Global height sum over every place. The archimedean term is the minimum
/// over generators; the whole finite part collapses to log gcd of the
/// generator values, because min_i v_p equals v_p of the gcd at every prime.
pub fn global_height_subscheme(x: &ProjPoint, y: &SubschemeData) -> Result<f64> {
    let finite = finite_part_subscheme(x, y)?;
    let inf = local_height_subscheme(x, y, &Place::Infinite)?;
    Ok(inf + finite)
}

/// The summed finite-place local height: log gcd of the generator values.
pub fn finite_part_subscheme(x: &ProjPoint, y: &SubschemeData) -> Result<f64> {
    Ok(exactnum::log_abs(&finite_part_gcd(x, y)?).expect("gcd is positive"))
}

/// Exact gcd of the generator values at the point.
pub fn finite_part_gcd(x: &ProjPoint, y: &SubschemeData) -> Result<BigInt> {
    let values = y.values(x);
    exactnum::gcd_many(&values).map_err(|_| Error::PointOnSubscheme)
}

/// Arithmetic distance delta_v(x, y): local height of the diagonal,
/// realized through the 2x2 minors of the coordinate matrix.
pub fn arithmetic_distance(x: &ProjPoint, y: &ProjPoint, v: &Place) -> Result<f64> {
    if x.coords().len() != y.coords().len() {
        return Err(Error::ArityMismatch {
            expected: x.coords().len(),
            got: y.coords().len(),
        });
    }
    if x == y {
        return Err(Error::DistanceToSelf);
    }
    let n = x.coords().len();
    let mut minors = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            minors.push(&x.coords()[i] * &y.coords()[j] - &x.coords()[j] * &y.coords()[i]);
        }
    }
    match v {
        Place::Finite(p) => {
            // canonical coordinates: max_i |x_i|_p = max_j |y_j|_p = 1
            let min_val = minors
                .iter()
                .filter(|m| !m.is_zero())
                .map(|m| exactnum::padic_valuation(m, *p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .expect("distinct points have a nonzero minor");
            Ok(min_val as f64 * (*p as f64).ln())
        }
        Place::Infinite => {
            let max_minor = minors
                .iter()
                .map(|m| m.abs())
                .max()
                .expect("distinct points have a nonzero minor");
            Ok(naive_height(x) + naive_height(y) - exactnum::log_abs(&max_minor)?)
        }
    }
}
