//! Depth-map quality metrics (MSE, SSIM, PSNR, ACC, Abs rel, Sq rel, RMSE,
//! LRMSE) and the colour CGH similarity score.
//!
//! Every accumulation runs sequentially in raster order (channel-major for
//! CGH scores), so results do not depend on how callers parallelize over
//! views.

mod cgh;
mod depth;
mod report;

pub use cgh::{acc_cgh, acc_cgh_channel, CghBrightness, RealCgh};
pub use depth::{
    acc, acc_depth, error_stats, error_stats_normalized, mse, mse_values, psnr, psnr_from_mse, ssim, ssim_values,
    ErrorStats, Psnr, SqRelConvention, SSIM_K1, SSIM_K2,
};
pub use report::{evaluate_pair, evaluate_pair_with, MeanStd, MetricReport, MetricRow, ObjectSummary, CSV_COLUMNS};
