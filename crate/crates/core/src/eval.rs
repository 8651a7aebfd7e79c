//! Comparing families of drawings: outperformance, advantage at a relative
//! subset size, advantage curves, Welch's t-test and summary statistics.

use std::collections::HashMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::model::ResultRecord;

/// Relative sizes at which curves are evaluated by default.
pub const DEFAULT_P_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Slack when rounding `p·k` up, so that e.g. `0.3·10` selects the 3rd value.
const RANK_SLACK: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("families cover different graphs: {0}")]
    IndexMismatch(String),
    #[error("empty sample")]
    Empty,
    #[error("relative size {0} is outside (0, 1]")]
    InvalidP(f64),
    #[error("samples need at least 2 values, got {0}")]
    SampleTooSmall(usize),
    #[error("both samples have zero variance")]
    DegenerateVariance,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

/// Crossing angles, in degrees, of one drawing per graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawingFamily {
    pub class: String,
    pub entries: Vec<(String, f64)>,
}

impl DrawingFamily {
    pub fn new(class: impl Into<String>, entries: Vec<(String, f64)>) -> Self {
        DrawingFamily {
            class: class.into(),
            entries,
        }
    }

    /// Family with graph ids `0..k` as strings.
    pub fn from_angles(class: impl Into<String>, angles: &[f64]) -> Self {
        let entries = angles.iter().enumerate().map(|(i, &a)| (i.to_string(), a)).collect();
        DrawingFamily::new(class, entries)
    }

    pub fn from_records(class: impl Into<String>, records: &[ResultRecord]) -> Self {
        let entries = records
            .iter()
            .map(|r| (r.graph.clone(), r.crossing_angle_deg))
            .collect();
        DrawingFamily::new(class, entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.1).collect()
    }
}

/// `angle1 − angle2` per graph, in the order of `f1`.
pub fn paired_differences(f1: &DrawingFamily, f2: &DrawingFamily) -> Result<Vec<f64>, EvalError> {
    if f1.len() != f2.len() {
        return Err(EvalError::IndexMismatch(format!("{} vs {} graphs", f1.len(), f2.len())));
    }
    let other: HashMap<&str, f64> = f2.entries.iter().map(|(g, a)| (g.as_str(), *a)).collect();
    if other.len() != f2.len() {
        return Err(EvalError::IndexMismatch("repeated graph id".into()));
    }
    f1.entries
        .iter()
        .map(|(g, a)| {
            other
                .get(g.as_str())
                .map(|b| a - b)
                .ok_or_else(|| EvalError::IndexMismatch(format!("graph {g:?} missing")))
        })
        .collect()
}

/// Whether `f1` is strictly better than `f2` on every graph of `subset`.
pub fn outperforms(f1: &DrawingFamily, f2: &DrawingFamily, subset: &[&str]) -> Result<bool, EvalError> {
    let d = paired_differences(f1, f2)?;
    let index: HashMap<&str, usize> = f1
        .entries
        .iter()
        .enumerate()
        .map(|(i, (g, _))| (g.as_str(), i))
        .collect();
    let mut all = true;
    for g in subset {
        let i = *index
            .get(g)
            .ok_or_else(|| EvalError::IndexMismatch(format!("graph {g:?} not in families")))?;
        all &= d[i] > 0.0;
    }
    Ok(all)
}

fn check_p(p: f64) -> Result<(), EvalError> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(EvalError::InvalidP(p))
    }
}

/// The `⌈p·k⌉`-th largest difference: the best margin achievable on some
/// subset of at least a `p` fraction of the graphs.
pub fn advantage_of_differences(differences: &[f64], p: f64) -> Result<f64, EvalError> {
    check_p(p)?;
    if differences.is_empty() {
        return Err(EvalError::Empty);
    }
    let k = differences.len();
    let rank = ((p * k as f64 - RANK_SLACK).ceil() as usize).clamp(1, k);
    let mut sorted = differences.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(sorted[rank - 1])
}

/// Signed advantage of `f1` over `f2` at relative size `p`.
pub fn advantage_signed(f1: &DrawingFamily, f2: &DrawingFamily, p: f64) -> Result<f64, EvalError> {
    advantage_of_differences(&paired_differences(f1, f2)?, p)
}

/// Advantage of `f1` over `f2`, present only when positive.
pub fn advantage(f1: &DrawingFamily, f2: &DrawingFamily, p: f64) -> Result<Option<f64>, EvalError> {
    advantage_signed(f1, f2, p).map(|d| (d > 0.0).then_some(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageCurve {
    pub class: String,
    pub points: Vec<CurvePoint>,
}

/// Curve for the comparison "`a` vs `b`": a positive delta means `b` has that
/// advantage over `a`.
pub fn advantage_curve(a: &DrawingFamily, b: &DrawingFamily, grid: &[f64]) -> Result<AdvantageCurve, EvalError> {
    if grid.is_empty() {
        return Err(EvalError::Empty);
    }
    let d = paired_differences(b, a)?;
    let points = grid
        .iter()
        .map(|&p| advantage_of_differences(&d, p).map(|delta| CurvePoint { p, delta }))
        .collect::<Result<_, _>>()?;
    Ok(AdvantageCurve {
        class: format!("{} vs {}", a.class, b.class),
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTest {
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
}

fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Welch's unequal-variance two-sample t-test, two-sided.
pub fn welch_t_test(sample1: &[f64], sample2: &[f64]) -> Result<TTest, EvalError> {
    for s in [sample1, sample2] {
        if s.len() < 2 {
            return Err(EvalError::SampleTooSmall(s.len()));
        }
    }
    let (m1, v1) = mean_and_variance(sample1);
    let (m2, v2) = mean_and_variance(sample2);
    let (a, b) = (v1 / sample1.len() as f64, v2 / sample2.len() as f64);
    if a + b == 0.0 {
        return Err(EvalError::DegenerateVariance);
    }
    let t = (m1 - m2) / (a + b).sqrt();
    let df = (a + b).powi(2) / (a * a / (sample1.len() as f64 - 1.0) + b * b / (sample2.len() as f64 - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    let p_value = (2.0 * dist.sf(t.abs())).min(1.0);
    Ok(TTest { t, df, p_value })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: f64,
    pub mean: f64,
    pub median: f64,
    pub max: f64,
}

/// Min, mean, median and max; the median of an even count is the mean of the
/// two central values.
pub fn summarize_values(values: &[f64]) -> Result<Summary, EvalError> {
    if values.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let k = sorted.len();
    let median = if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    };
    Ok(Summary {
        min: sorted[0],
        mean: sorted.iter().sum::<f64>() / k as f64,
        median,
        max: sorted[k - 1],
    })
}

pub fn summarize(family: &DrawingFamily) -> Result<Summary, EvalError> {
    summarize_values(&family.angles())
}

/// Result records from JSON: an array of records or a single record.
pub fn load_records<R: Read>(reader: R) -> Result<Vec<ResultRecord>, EvalError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        Many(Vec<ResultRecord>),
        One(ResultRecord),
    }
    Ok(match serde_json::from_reader(reader)? {
        OneOrMany::Many(v) => v,
        OneOrMany::One(r) => vec![r],
    })
}

/// Curves as CSV with header `class,p,delta`.
pub fn write_curves_csv<W: Write>(curves: &[AdvantageCurve], writer: W) -> Result<(), EvalError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["class", "p", "delta"])?;
    for curve in curves {
        for pt in &curve.points {
            w.write_record([curve.class.clone(), pt.p.to_string(), pt.delta.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Summaries as CSV with header `class,min,mean,median,max`.
pub fn write_summary_csv<W: Write>(rows: &[(String, Summary)], writer: W) -> Result<(), EvalError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["class", "min", "mean", "median", "max"])?;
    for (class, s) in rows {
        w.write_record([
            class.clone(),
            s.min.to_string(),
            s.mean.to_string(),
            s.median.to_string(),
            s.max.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
