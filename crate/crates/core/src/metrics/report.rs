use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::depth::{acc_depth, error_stats, mse, psnr_from_mse, ssim, Psnr, SqRelConvention};
use crate::error::{Error, Result};
use crate::imagecore::{DepthMap, ObjectShape};

/// Fixed metric column names, in output order.
pub const CSV_COLUMNS: [&str; 11] = [
    "mse", "ssim", "psnr_db", "acc", "abs_rel", "sq_rel", "rmse", "lrmse", "cgh_acc_r", "cgh_acc_g", "cgh_acc_b",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricRow {
    pub object: ObjectShape,
    pub view: usize,
    pub mse: f64,
    pub ssim: f64,
    pub psnr_db: Psnr,
    pub acc: f64,
    pub abs_rel: f64,
    pub sq_rel: f64,
    pub rmse: f64,
    pub lrmse: f64,
    /// Ground-truth pixels with nonzero depth (Abs rel / Sq rel / LRMSE mask).
    pub mask_px: usize,
    pub cgh_acc_r: Option<f64>,
    pub cgh_acc_g: Option<f64>,
    pub cgh_acc_b: Option<f64>,
}

impl MetricRow {
    fn metric(&self, name: &str) -> Option<f64> {
        Some(match name {
            "mse" => self.mse,
            "ssim" => self.ssim,
            "psnr_db" => self.psnr_db.value(),
            "acc" => self.acc,
            "abs_rel" => self.abs_rel,
            "sq_rel" => self.sq_rel,
            "rmse" => self.rmse,
            "lrmse" => self.lrmse,
            "cgh_acc_r" => return self.cgh_acc_r,
            "cgh_acc_g" => return self.cgh_acc_g,
            "cgh_acc_b" => return self.cgh_acc_b,
            _ => return None,
        })
    }

    pub fn set_cgh_acc(&mut self, per_color: [f64; 3]) {
        self.cgh_acc_r = Some(per_color[0]);
        self.cgh_acc_g = Some(per_color[1]);
        self.cgh_acc_b = Some(per_color[2]);
    }
}

/// Scores one estimated depth map against its ground truth.
pub fn evaluate_pair(object: ObjectShape, view: usize, estimate: &DepthMap, truth: &DepthMap) -> Result<MetricRow> {
    evaluate_pair_with(object, view, estimate, truth, SqRelConvention::AsPrinted)
}

pub fn evaluate_pair_with(
    object: ObjectShape,
    view: usize,
    estimate: &DepthMap,
    truth: &DepthMap,
    convention: SqRelConvention,
) -> Result<MetricRow> {
    let m = mse(estimate, truth)?;
    let stats = error_stats(estimate, truth, convention)?;
    Ok(MetricRow {
        object,
        view,
        mse: m,
        ssim: ssim(estimate, truth)?,
        psnr_db: psnr_from_mse(m),
        acc: acc_depth(estimate, truth)?,
        abs_rel: stats.abs_rel,
        sq_rel: stats.sq_rel,
        rmse: stats.rmse,
        lrmse: stats.lrmse,
        mask_px: stats.mask_px,
        cgh_acc_r: None,
        cgh_acc_g: None,
        cgh_acc_b: None,
    })
}

fn fmt_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

fn json_number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(fmt_number(v))
    }
}

/// Mean and population standard deviation. Any infinite sample makes the
/// mean infinite; the deviation is 0 when every sample is infinite and
/// infinite otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let infinite = values.iter().filter(|v| v.is_infinite()).count();
        if infinite > 0 {
            let std = if infinite == values.len() { 0.0 } else { f64::INFINITY };
            return Some(MeanStd {
                mean: f64::INFINITY,
                std,
            });
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Some(MeanStd { mean, std: var.sqrt() })
    }
}

impl fmt::Display for MeanStd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |v: f64| if v.is_finite() { format!("{v:.4}") } else { fmt_number(v) };
        write!(f, "{} ± {}", p(self.mean), p(self.std))
    }
}

impl Serialize for MeanStd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "mean": json_number(self.mean),
            "std": json_number(self.std),
            "text": self.to_string(),
        })
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObjectSummary {
    pub object: ObjectShape,
    pub views: usize,
    /// Keyed by [`CSV_COLUMNS`] name; CGH columns appear only when every
    /// view of the object carries them.
    pub metrics: BTreeMap<&'static str, MeanStd>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MetricReport {
    pub rows: Vec<MetricRow>,
}

impl MetricReport {
    pub fn new(rows: Vec<MetricRow>) -> Self {
        Self { rows }
    }

    fn objects(&self) -> Vec<ObjectShape> {
        let mut seen = Vec::new();
        for r in &self.rows {
            if !seen.contains(&r.object) {
                seen.push(r.object);
            }
        }
        seen
    }

    pub fn summaries(&self) -> Vec<ObjectSummary> {
        self.objects()
            .into_iter()
            .map(|object| {
                let rows: Vec<&MetricRow> = self.rows.iter().filter(|r| r.object == object).collect();
                let mut metrics = BTreeMap::new();
                for name in CSV_COLUMNS {
                    let values: Option<Vec<f64>> = rows.iter().map(|r| r.metric(name)).collect();
                    if let Some(ms) = values.and_then(|v| MeanStd::of(&v)) {
                        metrics.insert(name, ms);
                    }
                }
                ObjectSummary {
                    object,
                    views: rows.len(),
                    metrics,
                }
            })
            .collect()
    }

    /// One row per view: `object, view, <CSV_COLUMNS…>, mask_px`. Absent CGH
    /// scores are empty cells; infinite PSNR is `inf`.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        let mut header = vec!["object", "view"];
        header.extend(CSV_COLUMNS);
        header.push("mask_px");
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.object.to_string(), r.view.to_string()];
            for name in CSV_COLUMNS {
                rec.push(r.metric(name).map(fmt_number).unwrap_or_default());
            }
            rec.push(r.mask_px.to_string());
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Per-object `mean ± std` table, one row per object.
    pub fn write_summary_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        let mut header = vec!["object", "views"];
        header.extend(CSV_COLUMNS);
        w.write_record(&header)?;
        for s in self.summaries() {
            let mut rec = vec![s.object.to_string(), s.views.to_string()];
            for name in CSV_COLUMNS {
                rec.push(s.metrics.get(name).map(|m| m.to_string()).unwrap_or_default());
            }
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn to_json(&self) -> Value {
        let mut objects = serde_json::Map::new();
        for s in self.summaries() {
            let views: Vec<Value> = self
                .rows
                .iter()
                .filter(|r| r.object == s.object)
                .map(|r| {
                    let mut v = serde_json::Map::new();
                    v.insert("view".into(), json!(r.view));
                    for name in CSV_COLUMNS {
                        if let Some(x) = r.metric(name) {
                            v.insert(name.into(), json_number(x));
                        }
                    }
                    v.insert("mask_px".into(), json!(r.mask_px));
                    Value::Object(v)
                })
                .collect();
            objects.insert(
                s.object.to_string(),
                json!({ "views": views, "summary": s.metrics, "view_count": s.views }),
            );
        }
        json!({ "objects": objects })
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(&self.to_json()).map_err(|e| Error::Json {
            path: path.to_path_buf(),
            source: e,
        })?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }
}
