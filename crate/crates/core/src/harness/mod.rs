//! Experiment plumbing: file formats, noise, metrics and pipelines.

pub mod config;
pub mod io;
pub mod metrics;
pub mod noise;
pub mod pipelines;

pub use config::{ExperimentConfig, OptimizerKind, Pipeline};
pub use io::{
    format_g, load_complex_csv, load_edges_csv, load_pgm, load_ply_ascii, load_signal_csv, results_csv, write_pgm,
    write_results_csv,
};
pub use metrics::{mse, psnr, ssim, Image};
pub use noise::add_gaussian_noise;
pub use pipelines::{run_image, run_pointcloud, run_timeseries, ResultRow};
