//! The orbit engine and the sequences that probe height-vs-local-height
//! limits: arithmetic-degree estimators, local-height ratio sequences,
//! coordinate-size (Lang-Siegel) ratios, and gcd-height sequences.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::Error;
use crate::exactnum::{self, BigInt};
use crate::geometry::{Morphism, ProjPoint};
use crate::heights::{self, Place, SubschemeData};
use crate::Result;

/// Default per-coordinate bit budget. Coordinate sizes grow like d^n
/// digits, so the engine stops and reports instead of exhausting memory.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 24;

/// Bit cap for cycle searches. Points of a cycle all repeat, so a walk
/// whose coordinates blow past this cap is reported as cycle-free within
/// the budget rather than iterated into the gigabyte range.
pub const CYCLE_BIT_BUDGET: u64 = 1 << 16;

/// One orbit step with whatever the observers computed for it.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub n: u32,
    pub point: ProjPoint,
    /// Naive height of the point.
    pub h: f64,
    /// Local heights of the configured target, keyed by place. Empty when
    /// no target is configured; missing entries flag a point on the target.
    pub lambda: BTreeMap<Place, f64>,
    /// Named per-record ratios and diagnostics.
    pub extras: BTreeMap<String, f64>,
}

/// Why an orbit stopped before reaching n_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halt {
    /// All defining forms vanished at step n: the map has a base point.
    Indeterminate { n: u32 },
    /// The next point would exceed the coordinate bit budget.
    BitBudget { last_safe_n: u32 },
}

#[derive(Debug, Clone)]
pub struct OrbitRun {
    pub records: Vec<OrbitRecord>,
    pub halt: Option<Halt>,
}

/// Per-record observers: which local heights to attach to each record.
#[derive(Debug, Clone, Default)]
pub struct OrbitObservers {
    pub target: Option<SubschemeData>,
    pub places: Vec<Place>,
}

#[derive(Debug, Clone)]
pub struct OrbitOptions {
    pub n_max: u32,
    pub bit_budget: u64,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            n_max: 10,
            bit_budget: DEFAULT_BIT_BUDGET,
        }
    }
}

fn make_record(n: u32, point: ProjPoint, observers: &OrbitObservers) -> OrbitRecord {
    let h = heights::naive_height(&point);
    let mut lambda = BTreeMap::new();
    let mut extras = BTreeMap::new();
    if let Some(target) = &observers.target {
        let mut on_target = false;
        for v in &observers.places {
            match heights::local_height_subscheme(&point, target, v) {
                Ok(val) => {
                    lambda.insert(*v, val);
                }
                Err(_) => on_target = true,
            }
        }
        if !on_target && !observers.places.is_empty() {
            let sum: f64 = lambda.values().sum();
            extras.insert("lambda_sum".to_string(), sum);
            if h > 0.0 {
                extras.insert("ratio".to_string(), sum / h);
            }
        }
    }
    OrbitRecord {
        n,
        point,
        h,
        lambda,
        extras,
    }
}

/// Exact orbit of x under f through n_max steps. Indeterminate points and
/// budget overruns halt the walk; the records computed so far are kept.
pub fn iterate_orbit(
    f: &Morphism,
    x: &ProjPoint,
    opts: &OrbitOptions,
    observers: &OrbitObservers,
) -> Result<OrbitRun> {
    if x.coords().len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: x.coords().len(),
        });
    }
    let mut records = Vec::with_capacity(opts.n_max as usize + 1);
    records.push(make_record(0, x.clone(), observers));
    let mut current = x.clone();
    for n in 1..=opts.n_max {
        // coordinates can grow by a factor of the degree per step; refuse
        // to compute a step that could not possibly stay in budget
        if current
            .max_coord_bits()
            .saturating_mul(f.degree() as u64)
            > opts.bit_budget.saturating_mul(2)
        {
            return Ok(OrbitRun {
                records,
                halt: Some(Halt::BitBudget { last_safe_n: n - 1 }),
            });
        }
        let next = match f.apply(&current) {
            Ok(p) => p,
            Err(Error::IndeterminatePoint) => {
                return Ok(OrbitRun {
                    records,
                    halt: Some(Halt::Indeterminate { n }),
                });
            }
            Err(e) => return Err(e),
        };
        if next.max_coord_bits() > opts.bit_budget {
            return Ok(OrbitRun {
                records,
                halt: Some(Halt::BitBudget { last_safe_n: n - 1 }),
            });
        }
        records.push(make_record(n, next.clone(), observers));
        current = next;
    }
    Ok(OrbitRun {
        records,
        halt: None,
    })
}

/// Result of exact repeat detection along an orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleInfo {
    Found { tail_length: u32, cycle_length: u32 },
    NoneWithinBudget { budget: u32 },
}

/// Walk the orbit keeping canonical points in a map; the first repeated
/// point pins down tail and cycle length exactly. The walk also gives up
/// once coordinates exceed [`CYCLE_BIT_BUDGET`].
pub fn detect_cycle(f: &Morphism, x: &ProjPoint, budget: u32) -> Result<CycleInfo> {
    let mut seen: HashMap<ProjPoint, u32> = HashMap::new();
    let mut current = x.clone();
    let mut n: u32 = 0;
    loop {
        if let Some(&first) = seen.get(&current) {
            return Ok(CycleInfo::Found {
                tail_length: first,
                cycle_length: n - first,
            });
        }
        if n >= budget || current.max_coord_bits() > CYCLE_BIT_BUDGET {
            return Ok(CycleInfo::NoneWithinBudget { budget });
        }
        seen.insert(current.clone(), n);
        current = f.apply(&current)?;
        n += 1;
    }
}

/// The two arithmetic-degree estimators: max(1,h_n)^{1/n} and the
/// successive ratio max(1,h_{n+1})/max(1,h_n). The root estimator
/// converges slowly (a polynomial factor pollutes it), so the ratio
/// estimator is the headline number.
#[derive(Debug, Clone)]
pub struct AlphaEstimates {
    /// (n, max(1,h_n)^{1/n}) for n >= 1
    pub root: Vec<(u32, f64)>,
    /// (n, max(1,h_{n+1})/max(1,h_n))
    pub ratio: Vec<(u32, f64)>,
}

pub fn alpha_estimates(records: &[OrbitRecord]) -> AlphaEstimates {
    let clamped: Vec<(u32, f64)> = records.iter().map(|r| (r.n, r.h.max(1.0))).collect();
    let root = clamped
        .iter()
        .filter(|(n, _)| *n >= 1)
        .map(|&(n, h)| (n, h.powf(1.0 / n as f64)))
        .collect();
    let ratio = clamped
        .windows(2)
        .map(|w| (w[0].0, w[1].1 / w[0].1))
        .collect();
    AlphaEstimates { root, ratio }
}

/// One entry of the local-height ratio sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioPoint {
    pub n: u32,
    /// Sum over the configured places of the local height, None when the
    /// orbit point lies on the target.
    pub lambda_sum: Option<f64>,
    pub h: f64,
    /// lambda_sum / h; None when flagged or when h is not yet positive.
    pub ratio: Option<f64>,
}

/// The sequence sum_{v in S} lambda_{Y,v}(f^n x) / h(f^n x). Orbit points
/// on Y are flagged and the sequence continues.
pub fn ratio_sequence(
    records: &[OrbitRecord],
    target: &SubschemeData,
    places: &[Place],
) -> Vec<RatioPoint> {
    records
        .iter()
        .map(|r| {
            let mut sum = 0.0;
            let mut on_target = false;
            for v in places {
                match heights::local_height_subscheme(&r.point, target, v) {
                    Ok(val) => sum += val,
                    Err(_) => {
                        on_target = true;
                        break;
                    }
                }
            }
            let lambda_sum = if on_target { None } else { Some(sum) };
            let ratio = match lambda_sum {
                Some(s) if r.h > 0.0 => Some(s / r.h),
                _ => None,
            };
            RatioPoint {
                n: r.n,
                lambda_sum,
                h: r.h,
                ratio,
            }
        })
        .collect()
}

/// One entry of the coordinate-size ratio sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct LangSiegelPoint {
    pub n: u32,
    /// log|a_i(n)| / log max_j |a_j(n)|; None when a_i(n) = 0 or h = 0.
    pub value: Option<f64>,
}

/// Relative size of the i-th coordinate along the orbit.
pub fn lang_siegel_sequence(records: &[OrbitRecord], i: usize) -> Vec<LangSiegelPoint> {
    records
        .iter()
        .map(|r| {
            let coord = &r.point.coords()[i];
            let value = if coord.is_zero() || r.h <= 0.0 {
                None
            } else {
                Some(exactnum::log_abs(coord).expect("nonzero") / r.h)
            };
            LangSiegelPoint { n: r.n, value }
        })
        .collect()
}

/// One entry of the gcd-height sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct GcdPoint {
    pub n: u32,
    /// Exact gcd of the generator values at the orbit point.
    pub gcd: BigInt,
    pub log_gcd: f64,
}

/// The summed finite local heights of the target along the orbit: exact
/// integer gcd of the generator values, then its log.
pub fn gcd_height_sequence(records: &[OrbitRecord], target: &SubschemeData) -> Result<Vec<GcdPoint>> {
    records
        .iter()
        .map(|r| {
            let gcd = heights::finite_part_gcd(&r.point, target)?;
            let log_gcd = exactnum::log_abs(&gcd).expect("gcd is positive");
            Ok(GcdPoint {
                n: r.n,
                gcd,
                log_gcd,
            })
        })
        .collect()
}
