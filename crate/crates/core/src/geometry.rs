//! Projective points over the rationals, morphisms of projective space,
//! linear changes of coordinates, and exact evaluation with normalization.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{BigInt, BigRat};
use crate::linalg;
use crate::poly::{dehomogenize_binary, resultant_uni, HomogeneousForm};
use crate::Result;

/// A point of projective space in canonical form: coprime integer
/// coordinates, first nonzero coordinate positive. Canonical form makes
/// structural equality projective equality, so points can key hash maps
/// for exact cycle detection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Canonicalize integer homogeneous coordinates.
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::AllZeroPoint);
        }
        let mut gcd = BigInt::zero();
        for c in &coords {
            gcd = gcd.gcd(c);
        }
        let first_nonzero_negative = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        if first_nonzero_negative {
            gcd = -gcd;
        }
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c / &gcd).collect(),
        })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clear denominators and canonicalize.
    pub fn from_rationals(raw: &[BigRat]) -> Result<Self> {
        let mut lcm = BigInt::one();
        for c in raw {
            lcm = lcm.lcm(c.denom());
        }
        Self::new(raw.iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Dimension N of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of a coordinate of maximal absolute value.
    pub fn max_coord_index(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.coords.iter().enumerate() {
            if c.abs() > self.coords[best].abs() {
                best = i;
            }
        }
        best
    }

    /// Affine coordinates in the chart X_chart = 1 (chart coordinate
    /// dropped). The chart coordinate must be nonzero.
    pub fn chart_coords(&self, chart: usize) -> Vec<BigRat> {
        assert!(!self.coords[chart].is_zero(), "point not in this chart");
        let denom = &self.coords[chart];
        self.coords
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != chart)
            .map(|(_, c)| BigRat::new(c.clone(), denom.clone()))
            .collect()
    }

    pub fn max_coord_bits(&self) -> u64 {
        self.coords.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

/// Normalize rational homogeneous coordinates to a canonical point.
pub fn normalize(raw: &[BigRat]) -> Result<ProjPoint> {
    ProjPoint::from_rationals(raw)
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A self-map of projective space given by N+1 homogeneous forms of common
/// degree with coprime integer coefficients. For projective space the
/// common degree is the first dynamical degree of the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    forms: Vec<HomogeneousForm>,
    // integer term lists so orbit evaluation never touches rationals
    int_terms: Vec<Vec<(Vec<u32>, BigInt)>>,
    degree: u32,
}

impl Morphism {
    /// Normalize the joint content of the forms to 1 and cache integer terms.
    pub fn new(forms: Vec<HomogeneousForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Invalid("a morphism needs at least one form".into()));
        }
        let nvars = forms.len();
        if forms.iter().any(|f| f.nvars() != nvars) {
            return Err(Error::ArityMismatch {
                expected: nvars,
                got: forms.iter().map(|f| f.nvars()).find(|&n| n != nvars).unwrap(),
            });
        }
        let degree = forms
            .iter()
            .find(|f| !f.is_zero())
            .map(|f| f.degree())
            .ok_or_else(|| Error::Invalid("all defining forms are zero".into()))?;
        if degree == 0 {
            return Err(Error::Invalid("defining forms must have positive degree".into()));
        }
        if forms.iter().any(|f| !f.is_zero() && f.degree() != degree) {
            return Err(Error::DegreeMismatch(
                "defining forms must share a common degree".into(),
            ));
        }

        // clear denominators and the joint content across all forms
        let mut lcm = BigInt::one();
        for f in &forms {
            for (_, c) in f.terms() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let mut content = BigInt::zero();
        for f in &forms {
            for (_, c) in f.terms() {
                content = content.gcd(&(c.numer() * (&lcm / c.denom())));
            }
        }
        let scale = BigRat::new(lcm, content);
        let forms: Vec<HomogeneousForm> = forms.iter().map(|f| f.scale(&scale)).collect();
        let int_terms = forms.iter().map(|f| f.integer_terms()).collect();
        Ok(Morphism {
            forms,
            int_terms,
            degree,
        })
    }

    pub fn parse(text: &str, var_names: &[String]) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "morphism must be written as (F0 : F1 : ...)".into(),
            })?;
        let forms = inner
            .split(':')
            .map(|piece| crate::poly::parse_form(piece, var_names))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(forms)
    }

    pub fn forms(&self) -> &[HomogeneousForm] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.forms.len()
    }

    /// Dimension N of the projective space the map acts on.
    pub fn dim(&self) -> usize {
        self.forms.len() - 1
    }

    /// Evaluate all defining forms at integer coordinates, exactly.
    pub fn eval_forms(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let max_exp = self.degree as usize;
        // cache coordinate powers up to the degree
        let powers: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|c| {
                let mut pows = Vec::with_capacity(max_exp + 1);
                pows.push(BigInt::one());
                for k in 1..=max_exp {
                    let next = &pows[k - 1] * c;
                    pows.push(next);
                }
                pows
            })
            .collect();
        self.int_terms
            .iter()
            .map(|terms| {
                let mut acc = BigInt::zero();
                for (exps, coeff) in terms {
                    let mut term = coeff.clone();
                    for (i, &e) in exps.iter().enumerate() {
                        if e > 0 {
                            term *= &powers[i][e as usize];
                        }
                    }
                    acc += term;
                }
                acc
            })
            .collect()
    }

    /// f(x), canonicalized. Errors when every form vanishes at x, which is
    /// the runtime guard against base points of would-be morphisms.
    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        if x.coords().len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: x.coords().len(),
            });
        }
        let values = self.eval_forms(x.coords());
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::IndeterminatePoint);
        }
        ProjPoint::new(values)
    }

    /// The composite self ∘ other as a morphism of common projective space.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.nvars() != other.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: other.nvars(),
            });
        }
        let forms = self
            .forms
            .iter()
            .map(|f| f.compose(other.forms()))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(forms)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> MorphismDisplay<'a> {
        MorphismDisplay { f: self, names }
    }
}

pub struct MorphismDisplay<'a> {
    f: &'a Morphism,
    names: &'a [String],
}

impl fmt::Display for MorphismDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "(")?;
        for (i, form) in self.f.forms.iter().enumerate() {
            if i > 0 {
                write!(out, " : ")?;
            }
            write!(out, "{}", form.display(self.names))?;
        }
        write!(out, ")")
    }
}

/// An invertible linear change of coordinates, with the exact inverse
/// cached at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearAut {
    matrix: Vec<Vec<BigRat>>,
    inverse: Vec<Vec<BigRat>>,
}

impl LinearAut {
    pub fn new(matrix: Vec<Vec<BigRat>>) -> Result<Self> {
        let inverse = linalg::invert(&matrix)?;
        Ok(LinearAut { matrix, inverse })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let matrix = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRat::from(BigInt::from(x))).collect())
            .collect();
        Self::new(matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<BigRat>] {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearAut {
        LinearAut {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// Exact matrix action on a point, canonicalized.
    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        if x.coords().len() != self.matrix.len() {
            return Err(Error::ArityMismatch {
                expected: self.matrix.len(),
                got: x.coords().len(),
            });
        }
        let values: Vec<BigRat> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = BigRat::zero();
                for (m, c) in row.iter().zip(x.coords()) {
                    acc += m * BigRat::from(c.clone());
                }
                acc
            })
            .collect();
        ProjPoint::from_rationals(&values)
    }

    /// The rows of the matrix as linear forms.
    pub fn linear_forms(&self) -> Vec<HomogeneousForm> {
        let n = self.matrix.len();
        self.matrix
            .iter()
            .map(|row| {
                HomogeneousForm::from_terms(
                    n,
                    row.iter().enumerate().map(|(j, c)| {
                        let mut exps = vec![0u32; n];
                        exps[j] = 1;
                        (exps, c.clone())
                    }),
                )
                .expect("linear rows are homogeneous")
            })
            .collect()
    }

    pub fn to_morphism(&self) -> Morphism {
        Morphism::new(self.linear_forms()).expect("invertible matrix defines a morphism")
    }
}

/// Forms of sigma^-1 ∘ g ∘ sigma, with denominators cleared and joint
/// content reduced to 1.
pub fn conjugate(g: &Morphism, sigma: &LinearAut) -> Result<Morphism> {
    if g.nvars() != sigma.matrix.len() {
        return Err(Error::ArityMismatch {
            expected: g.nvars(),
            got: sigma.matrix.len(),
        });
    }
    let sigma_forms = sigma.linear_forms();
    // g ∘ sigma
    let composed: Vec<HomogeneousForm> = g
        .forms()
        .iter()
        .map(|f| f.compose(&sigma_forms))
        .collect::<Result<Vec<_>>>()?;
    // rows of sigma^-1 applied to the composed forms
    let n = g.nvars();
    let mut out = Vec::with_capacity(n);
    for row in &sigma.inverse {
        let mut acc = HomogeneousForm::zero(n, g.degree());
        for (c, form) in row.iter().zip(&composed) {
            acc = acc.add(&form.scale(c))?;
        }
        out.push(acc);
    }
    Morphism::new(out)
}

/// Validity report for a would-be morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismReport {
    /// On the line the resultant certifies there is no common root.
    Certified,
    /// A common root exists; the pair only defines a rational map.
    Rejected,
    /// In higher dimension base points are detected lazily by `apply`.
    RuntimeGuarded,
}

/// For maps of the line, certify via the resultant of the dehomogenized
/// pair (a common root at infinity shows up as a joint degree drop). In
/// higher dimension report that the base-point check is deferred to runtime.
pub fn validate_morphism(f: &Morphism) -> Result<MorphismReport> {
    if f.dim() != 1 {
        return Ok(MorphismReport::RuntimeGuarded);
    }
    let d = f.degree() as usize;
    let p = dehomogenize_binary(&f.forms()[0])?;
    let q = dehomogenize_binary(&f.forms()[1])?;
    if p.degree().unwrap_or(0) < d && q.degree().unwrap_or(0) < d {
        // both forms divisible by the second variable: common root at (1:0)
        return Ok(MorphismReport::Rejected);
    }
    if resultant_uni(&p, &q)?.is_zero() {
        Ok(MorphismReport::Rejected)
    } else {
        Ok(MorphismReport::Certified)
    }
}
