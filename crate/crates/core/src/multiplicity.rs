//! Local multiplicities of self-maps at rational points.
//!
//! The multiplicity e_f(x) is the length of the local ring of the fiber of
//! f through x. We compute it without standard-basis machinery: truncate
//! the quotient at each degree level M, measure its dimension by exact
//! fraction-free row reduction, and stop at the first level where the
//! dimension stabilizes. Nakayama's lemma guarantees a stabilized level
//! can never grow again, and for a finite map the fiber ideal contains a
//! power of the maximal ideal, so stabilization always happens, at level
//! at most e + 1.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactnum::{self, BigInt, BigRat};
use crate::geometry::{Morphism, ProjPoint};
use crate::heights::SubschemeData;
use crate::linalg;
use crate::poly::{self, DehomPoly};
use crate::Result;

/// Default truncation ceiling for the quotient-dimension search.
pub const DEFAULT_M_MAX: u32 = 64;

/// Local equations at a rational point, recentered so the point is the
/// origin of its affine chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIdeal {
    generators: Vec<DehomPoly>,
    base_point: Vec<BigRat>,
}

impl LocalIdeal {
    /// Each generator must vanish at the base point; the stored generators
    /// are shifted so the base point becomes the origin.
    pub fn new(generators: Vec<DehomPoly>, base_point: Vec<BigRat>) -> Result<Self> {
        if generators.iter().all(|g| g.is_zero()) {
            return Err(Error::Invalid("local ideal needs a nonzero generator".into()));
        }
        let mut shifted = Vec::with_capacity(generators.len());
        for g in generators {
            let s = g.taylor_shift(&base_point)?;
            if let Some(0) = s.order_at_origin() {
                return Err(Error::Invalid(
                    "generator does not vanish at the base point".into(),
                ));
            }
            shifted.push(s);
        }
        Ok(LocalIdeal {
            generators: shifted,
            base_point,
        })
    }

    /// Generators recentered at the origin.
    pub fn generators(&self) -> &[DehomPoly] {
        &self.generators
    }

    pub fn base_point(&self) -> &[BigRat] {
        &self.base_point
    }

    pub fn nvars(&self) -> usize {
        self.base_point.len()
    }
}

/// Outcome of the stabilized quotient-dimension search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub value: u64,
    /// Level M at which dim_M first equaled dim_{M+1}.
    pub truncation_level: u32,
    pub stabilized: bool,
}

/// The pulled-back maximal ideal of f(x) as a local ideal at x.
///
/// Chart for the image is chosen where |f(x)| is coordinate-maximal; the
/// generators y_k F_i - y_i F_k (i != k) are dehomogenized in the chart
/// where |x| is coordinate-maximal and recentered at x.
pub fn fiber_ideal(f: &Morphism, x: &ProjPoint) -> Result<LocalIdeal> {
    let y = f.apply(x)?;
    let k = y.max_coord_index();
    let chart = x.max_coord_index();
    let yk = BigRat::from(y.coords()[k].clone());
    let mut generators = Vec::with_capacity(f.nvars() - 1);
    for (i, form) in f.forms().iter().enumerate() {
        if i == k {
            continue;
        }
        let yi = BigRat::from(y.coords()[i].clone());
        let g = form
            .scale(&yk)
            .add(&f.forms()[k].scale(&-yi))
            .expect("forms share nvars and degree");
        generators.push(g.dehomogenize(chart));
    }
    LocalIdeal::new(generators, x.chart_coords(chart))
}

/// Dimension of the space of polynomials of total degree < level modulo
/// the truncations of all monomial multiples of the generators.
pub fn truncated_quotient_dim(ideal: &LocalIdeal, level: u32) -> u64 {
    let nvars = ideal.nvars();
    let columns = monomials_below(nvars, level);
    let index: BTreeMap<&[u32], usize> = columns
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();

    let mut rows: Vec<Vec<BigRat>> = Vec::new();
    for g in ideal.generators() {
        let Some(ord) = g.order_at_origin() else { continue };
        if ord >= level {
            continue;
        }
        for mono in monomials_below(nvars, level - ord) {
            let mut row = vec![BigRat::zero(); columns.len()];
            let mut nonzero = false;
            for (exps, coeff) in g.terms() {
                let mut shifted = exps.clone();
                for (s, &m) in shifted.iter_mut().zip(mono.iter()) {
                    *s += m;
                }
                if let Some(&col) = index.get(shifted.as_slice()) {
                    row[col] = coeff.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let rank = linalg::bareiss_rank(linalg::rows_to_integer(&rows));
    (columns.len() - rank) as u64
}

fn monomials_below(nvars: usize, level: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    collect_monomials(nvars, level, 0, 0, &mut current, &mut out);
    out
}

fn collect_monomials(
    nvars: usize,
    level: u32,
    var: usize,
    used: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if var == nvars {
        out.push(current.clone());
        return;
    }
    for e in 0..level - used {
        current[var] = e;
        collect_monomials(nvars, level, var + 1, used + e, current, out);
    }
    current[var] = 0;
}

/// Length of O/(I + m^M) for the first stabilizing M. At an isolated
/// point of the fiber this is exactly the multiplicity.
pub fn local_length(ideal: &LocalIdeal, m_max: u32) -> Result<MultiplicityReport> {
    let mut prev: Option<u64> = None;
    for level in 1..=m_max + 1 {
        let dim = truncated_quotient_dim(ideal, level);
        if let Some(p) = prev {
            if p == dim {
                return Ok(MultiplicityReport {
                    value: dim,
                    truncation_level: level - 1,
                    stabilized: true,
                });
            }
        }
        prev = Some(dim);
    }
    Err(Error::NotStabilized(m_max))
}

/// e_f(x), with a fast path on the line: there the fiber ideal is
/// principal and the multiplicity is the vanishing order of its generator.
pub fn e_f_at(f: &Morphism, x: &ProjPoint) -> Result<u64> {
    let ideal = fiber_ideal(f, x)?;
    if f.dim() == 1 {
        let g = &ideal.generators()[0];
        return Ok(g.order_at_origin().ok_or(Error::ZeroPolynomial)? as u64);
    }
    Ok(local_length(&ideal, DEFAULT_M_MAX)?.value)
}

/// Multiplicity of the subscheme at the point: minimum vanishing order of
/// the dehomogenized generators, zero off the subscheme.
pub fn mult_point_subscheme(y: &SubschemeData, x: &ProjPoint) -> u64 {
    let chart = x.max_coord_index();
    let coords = x.chart_coords(chart);
    y.generators()
        .iter()
        .map(|d| {
            let local = d.form().dehomogenize(chart);
            poly::vanishing_order(&local, &coords).expect("divisor forms are nonzero") as u64
        })
        .min()
        .unwrap_or(0)
}

/// Both sides of the pullback multiplicity bound
/// mult_x f^-1(Y) < e_f(x) (mult_{f(x)} Y + 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackMultCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub e: u64,
    pub mult_image: u64,
    pub holds: bool,
}

pub fn pullback_mult_check(
    f: &Morphism,
    y: &SubschemeData,
    x: &ProjPoint,
) -> Result<PullbackMultCheck> {
    let image = f.apply(x)?;
    if !y.contains(&image) {
        return Err(Error::ImageNotOnSubscheme);
    }
    let chart = x.max_coord_index();
    let coords = x.chart_coords(chart);
    let lhs = y
        .generators()
        .iter()
        .map(|d| -> Result<u64> {
            let pulled = d.form().compose(f.forms())?;
            let local = pulled.dehomogenize(chart);
            Ok(poly::vanishing_order(&local, &coords)? as u64)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("subscheme has generators");
    let e = e_f_at(f, x)?;
    let mult_image = mult_point_subscheme(y, &image);
    let rhs = e * (mult_image + 1);
    Ok(PullbackMultCheck {
        lhs,
        rhs,
        e,
        mult_image,
        holds: lhs < rhs,
    })
}

/// True exactly where the Jacobian determinant of the defining forms
/// vanishes, i.e. on the ramification divisor.
pub fn is_ramified(f: &Morphism, x: &ProjPoint) -> Result<bool> {
    let jac = poly::jacobian_det(f.forms())?;
    Ok(jac.eval(x.coords())?.is_zero())
}

/// Geometric mean of e_f along the cycle through a periodic point,
/// reported exactly as (product, cycle length) with a float approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct EPlusPeriodic {
    pub product: BigInt,
    pub cycle_length: u32,
    pub value: f64,
}

pub fn e_plus_periodic(f: &Morphism, x: &ProjPoint, budget: u32) -> Result<EPlusPeriodic> {
    // walk the orbit; x itself must recur
    let mut current = x.clone();
    let mut cycle_length = None;
    for n in 1..=budget {
        current = f.apply(&current)?;
        if current == *x {
            cycle_length = Some(n);
            break;
        }
        if current.max_coord_bits() > crate::dynamics::CYCLE_BIT_BUDGET {
            return Err(Error::NotPeriodic(budget));
        }
    }
    let Some(r) = cycle_length else {
        return Err(Error::NotPeriodic(budget));
    };
    let mut product = BigInt::one();
    let mut point = x.clone();
    for _ in 0..r {
        product *= BigInt::from(e_f_at(f, &point)?);
        point = f.apply(&point)?;
    }
    let value = (exactnum::log_abs(&product).expect("product is positive") / r as f64).exp();
    Ok(EPlusPeriodic {
        product,
        cycle_length: r,
        value,
    })
}

/// One step of the backward multiplicity estimator on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct EMinusStep {
    pub n: u32,
    pub max_mult: u64,
    /// (max multiplicity)^(1/n)
    pub root: f64,
}

/// Backward multiplicity sequence on the line: for each n the largest
/// multiplicity of a preimage of y under the n-th iterate, reported with
/// its n-th root. Multiplicity at a preimage is the root multiplicity of
/// y1 P_n - y0 Q_n, with the point at infinity contributing the degree
/// deficiency of the dehomogenization.
pub fn e_minus_p1(
    f: &Morphism,
    y: &ProjPoint,
    n_max: u32,
    degree_budget: u64,
) -> Result<Vec<EMinusStep>> {
    if f.dim() != 1 {
        return Err(Error::NotProjectiveLine);
    }
    if y.coords().len() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: y.coords().len(),
        });
    }
    let y0 = BigRat::from(y.coords()[0].clone());
    let y1 = BigRat::from(y.coords()[1].clone());
    let mut out = Vec::with_capacity(n_max as usize);
    let mut iterate = f.clone();
    for n in 1..=n_max {
        let degree = match (f.degree() as u64).checked_pow(n) {
            Some(d) if d <= degree_budget => d,
            Some(d) => return Err(Error::DegreeBudget(d, degree_budget)),
            None => return Err(Error::DegreeBudget(u64::MAX, degree_budget)),
        };
        let fiber_form = iterate.forms()[0]
            .scale(&y1)
            .add(&iterate.forms()[1].scale(&-y0.clone()))
            .expect("forms share degree");
        let dehom = poly::dehomogenize_binary(&fiber_form)?;
        let finite_max = poly::squarefree_multiplicities(&dehom)?
            .iter()
            .map(|&(m, _)| m as u64)
            .max()
            .unwrap_or(0);
        let at_infinity = degree - dehom.degree().map(|d| d as u64).unwrap_or(0);
        let max_mult = finite_max.max(at_infinity).max(1);
        out.push(EMinusStep {
            n,
            max_mult,
            root: ((max_mult as f64).ln() / n as f64).exp(),
        });
        if n < n_max {
            iterate = f.compose(&iterate)?;
        }
    }
    Ok(out)
}

/// One step of the forward multiplicity sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct EForwardStep {
    pub n: u32,
    /// e_{f^n}(x), exact, assembled by the chain rule along the orbit.
    pub e_iterate: BigInt,
    /// e_{f^n}(x)^(1/n)
    pub root: f64,
}

/// Forward sequence e_{f^n}(x)^{1/n}. The chain rule
/// e_{g∘f}(x) = e_f(x) e_g(f(x)) turns the iterate multiplicity into a
/// product of one-step multiplicities along the orbit, so the iterated
/// forms are never composed symbolically.
pub fn e_forward_sequence(f: &Morphism, x: &ProjPoint, n_max: u32) -> Result<Vec<EForwardStep>> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut point = x.clone();
    let mut product = BigInt::one();
    for n in 1..=n_max {
        product *= BigInt::from(e_f_at(f, &point)?);
        point = f.apply(&point)?;
        let root = (exactnum::log_abs(&product).expect("positive") / n as f64).exp();
        out.push(EForwardStep {
            n,
            e_iterate: product.clone(),
            root,
        });
    }
    Ok(out)
}
