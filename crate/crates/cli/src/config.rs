//! Experiment configuration: one JSON file per experiment.

use serde::{Deserialize, Serialize};

use arithdyn_core::exactnum::{BigInt, BigRat};
use arithdyn_core::geometry::{conjugate, LinearAut, Morphism, ProjPoint};
use arithdyn_core::heights::{DivisorData, Place, SubschemeData};
use arithdyn_core::poly::parse_form;

/// A rational config entry: a plain integer or a string like "-3/2".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatEntry {
    Int(i64),
    Text(String),
}

impl RatEntry {
    fn to_rat(&self) -> Result<BigRat, String> {
        match self {
            RatEntry::Int(n) => Ok(BigRat::from(BigInt::from(*n))),
            RatEntry::Text(s) => parse_rational(s),
        }
    }
}

/// A place entry: "inf" or a prime, as a number or string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceEntry {
    Prime(u64),
    Text(String),
}

impl PlaceEntry {
    fn to_place(&self) -> Result<Place, String> {
        match self {
            PlaceEntry::Prime(p) => Place::finite(*p).map_err(|e| e.to_string()),
            PlaceEntry::Text(s) => s.parse().map_err(|e: arithdyn_core::Error| e.to_string()),
        }
    }
}

fn default_n_max() -> u32 {
    10
}

fn default_m_max() -> u32 {
    64
}

fn default_bit_budget() -> u64 {
    1 << 24
}

fn default_degree_budget() -> u64 {
    1 << 20
}

/// One experiment. The morphism is given either directly as `morphism` or
/// as `base_morphism` conjugated by the `conjugation` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_morphism: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugation: Option<Vec<Vec<RatEntry>>>,
    pub start: String,
    /// Generator expressions of the target subscheme.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subscheme: Vec<String>,
    /// A target point, e.g. "(0 : 0 : 1)"; used where a point target is
    /// wanted (ratio targets, backward multiplicities).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_point: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub places: Vec<PlaceEntry>,
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    /// Coordinate index for the coordinate-size ratio.
    #[serde(default)]
    pub coord_index: usize,
    #[serde(default = "default_m_max")]
    pub m_max: u32,
    #[serde(default = "default_bit_budget")]
    pub bit_budget: u64,
    #[serde(default = "default_degree_budget")]
    pub degree_budget: u64,
    #[serde(default)]
    pub exact_coords: bool,
}

/// Domain objects resolved from a config.
pub struct Experiment {
    pub config: ExperimentConfig,
    pub morphism: Morphism,
    pub start: ProjPoint,
    pub subscheme: Option<SubschemeData>,
    pub target_point: Option<ProjPoint>,
    pub places: Vec<Place>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {}", e))
    }

    pub fn resolve(self) -> Result<Experiment, String> {
        if self.variables.is_empty() {
            return Err("config: 'variables' must be nonempty".into());
        }
        let morphism = match (&self.morphism, &self.base_morphism, &self.conjugation) {
            (Some(text), None, None) => {
                Morphism::parse(text, &self.variables).map_err(|e| format!("morphism: {}", e))?
            }
            (None, Some(base), Some(matrix)) => {
                let g = Morphism::parse(base, &self.variables)
                    .map_err(|e| format!("base_morphism: {}", e))?;
                let rows = matrix
                    .iter()
                    .map(|row| row.iter().map(|e| e.to_rat()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| format!("conjugation: {}", e))?;
                let sigma =
                    LinearAut::new(rows).map_err(|e| format!("conjugation: {}", e))?;
                conjugate(&g, &sigma).map_err(|e| format!("conjugation: {}", e))?
            }
            (Some(_), Some(_), _) => {
                return Err("config: give either 'morphism' or 'base_morphism', not both".into())
            }
            (None, Some(_), None) => {
                return Err("config: 'base_morphism' needs a 'conjugation' matrix".into())
            }
            _ => return Err("config: no morphism given".into()),
        };
        let start = parse_point(&self.start).map_err(|e| format!("start: {}", e))?;
        if start.coords().len() != morphism.nvars() {
            return Err(format!(
                "start point has {} coordinates but the morphism has {} variables",
                start.coords().len(),
                morphism.nvars()
            ));
        }
        let subscheme = if self.subscheme.is_empty() {
            None
        } else {
            let gens = self
                .subscheme
                .iter()
                .map(|text| {
                    let form = parse_form(text, &self.variables)
                        .map_err(|e| format!("subscheme '{}': {}", text, e))?;
                    DivisorData::new(form).map_err(|e| format!("subscheme '{}': {}", text, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(SubschemeData::new(gens).map_err(|e| e.to_string())?)
        };
        let target_point = self
            .target_point
            .as_ref()
            .map(|text| parse_point(text).map_err(|e| format!("target_point: {}", e)))
            .transpose()?;
        let places = self
            .places
            .iter()
            .map(|p| p.to_place())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Experiment {
            morphism,
            start,
            subscheme,
            target_point,
            places,
            config: self,
        })
    }
}

impl Experiment {
    /// The ratio/gcd target: explicit subscheme if given, otherwise the
    /// point scheme of the target point.
    pub fn target_subscheme(&self) -> Option<SubschemeData> {
        if let Some(s) = &self.subscheme {
            return Some(s.clone());
        }
        self.target_point.as_ref().map(SubschemeData::point)
    }
}

/// Parse "(2 : 3 : -4)" or "2:3:-4"; entries are integers or fractions.
pub fn parse_point(text: &str) -> Result<ProjPoint, String> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(trimmed);
    let coords = inner
        .split(':')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() < 2 {
        return Err("a projective point needs at least two coordinates".into());
    }
    ProjPoint::from_rationals(&coords).map_err(|e| e.to_string())
}

fn parse_rational(text: &str) -> Result<BigRat, String> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("not an integer: '{}'", num))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("not an integer: '{}'", d))?,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRat::new(n, d))
}
