//! End-to-end denoising experiments on time series, images and point clouds.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filtering::{gradient_descent_batch, grid_search_batch, BatchResult, GdInit, Sample};
use crate::graphs::{gso, pixel_grid_graph, pointcloud_patches, sequence_graph, Graph};
use crate::scalar::Scalar;
use crate::spectral::{build_spectrum, Method, OperatorCache};

use super::config::{ExperimentConfig, OptimizerKind};
use super::metrics::{psnr, ssim, Image};
use super::noise::add_gaussian_noise;

/// One line of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow<T> {
    pub method: String,
    pub axis: String,
    pub family: String,
    pub sigma: T,
    pub segment: String,
    pub alpha: T,
    pub theta: T,
    pub kappa: T,
    pub mse: T,
    pub psnr: T,
    pub ssim: Option<T>,
}

/// The row's MSE is the optimizer's pooled MSE, which is the MSE of the
/// reassembled output accumulated in sample order.
fn row<T: Scalar>(method: &Method, sigma: T, segment: &str, res: &BatchResult<T>, ssim: Option<T>) -> Result<ResultRow<T>> {
    let angle = method.kind.uses_angle();
    Ok(ResultRow {
        method: method.kind.as_str().to_string(),
        axis: if angle { method.axis.as_str() } else { "none" }.to_string(),
        family: if angle { method.family.as_str() } else { "none" }.to_string(),
        sigma,
        segment: segment.to_string(),
        alpha: res.alpha,
        theta: res.theta,
        kappa: res.kappa,
        mse: res.mse,
        psnr: psnr(res.mse, T::one())?,
        ssim,
    })
}

fn noise_seed(seed: u64, sigma_index: usize, segment_index: usize) -> u64 {
    seed.wrapping_add((sigma_index as u64) << 32)
        .wrapping_add(segment_index as u64)
}

fn optimize<T: Scalar>(cfg: &ExperimentConfig<T>, samples: &[Sample<'_, T>], method: &Method) -> Result<BatchResult<T>> {
    match cfg.optimizer {
        OptimizerKind::Grid => grid_search_batch(samples, method, &cfg.grid),
        OptimizerKind::Gd => gradient_descent_batch(samples, method, &GdInit::default(), &cfg.gd),
    }
}

fn cache_for<T: Scalar>(g: &Graph<T>, cfg: &ExperimentConfig<T>, memoize: bool) -> Result<OperatorCache<T>> {
    let spec = Arc::new(build_spectrum(&gso(g, cfg.gso_kind))?);
    Ok(if memoize {
        OperatorCache::new(spec)
    } else {
        OperatorCache::unmemoized(spec)
    })
}

/// Smooth deterministic stand-in series used when no input is supplied.
pub fn synthetic_series<T: Scalar>(len: usize) -> Vec<T> {
    (0..len)
        .map(|i| {
            let t = i as f64;
            let v = 2.0 * (t / 24.0).sin() + 0.8 * (t / 7.0 + 0.3).cos() + 0.01 * t;
            T::lit(v)
        })
        .collect()
}

/// Per checkpoint `t`: truncate to `t` samples, build the sequence graph,
/// add noise and optimize every method.
pub fn run_timeseries<T: Scalar>(cfg: &ExperimentConfig<T>, series: &[T]) -> Result<Vec<ResultRow<T>>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (ci, &t) in cfg.checkpoints.iter().enumerate() {
        if t > series.len() {
            return Err(Error::param(format!(
                "checkpoint t = {t} exceeds series length {}",
                series.len()
            )));
        }
        let x = &series[..t];
        let cache = cache_for(&sequence_graph(t, cfg.knn_k)?, cfg, t <= 64)?;
        let segment = format!("t={t}");
        for (si, &sigma) in cfg.sigmas.iter().enumerate() {
            let y = add_gaussian_noise(x, sigma, noise_seed(cfg.seed, si, ci))?;
            let sample = Sample::new(&cache, &y, x)?;
            for method in &cfg.methods() {
                let res = optimize(cfg, &[sample], method)?;
                rows.push(row(method, sigma, &segment, &res, None)?);
            }
        }
    }
    Ok(rows)
}

/// Rectangular piece of an image, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<T> {
    pub row: usize,
    pub col: usize,
    pub height: usize,
    pub width: usize,
    pub data: Vec<T>,
}

/// Non-overlapping `size × size` blocks in raster order; trailing blocks
/// are smaller when the image size is not a multiple of `size`.
pub fn image_blocks<T: Scalar>(image: &Image<T>, size: usize) -> Vec<Block<T>> {
    let mut out = Vec::new();
    for r0 in (0..image.height).step_by(size.max(1)) {
        for c0 in (0..image.width).step_by(size.max(1)) {
            let h = size.min(image.height - r0);
            let w = size.min(image.width - c0);
            let data = (0..h)
                .flat_map(|i| (0..w).map(move |j| (i, j)))
                .map(|(i, j)| image.get(r0 + i, c0 + j))
                .collect();
            out.push(Block {
                row: r0,
                col: c0,
                height: h,
                width: w,
                data,
            });
        }
    }
    out
}

pub fn assemble_blocks<T: Scalar>(width: usize, height: usize, blocks: &[Block<T>]) -> Image<T> {
    let mut img = Image::from_fn(width, height, |_, _| T::zero());
    for b in blocks {
        for i in 0..b.height {
            for j in 0..b.width {
                img.set(b.row + i, b.col + j, b.data[i * b.width + j]);
            }
        }
    }
    img
}

/// Per noise level: add noise (σ on the 0–255 scale), denoise every 8×8
/// block on its pixel graph with parameters shared across the image,
/// reassemble and score the full image.
pub fn run_image<T: Scalar>(cfg: &ExperimentConfig<T>, image: &Image<T>, segment: &str) -> Result<Vec<ResultRow<T>>> {
    cfg.validate()?;
    let size = cfg.block_size;
    let clean_blocks = image_blocks(image, size);
    let mut caches: BTreeMap<(usize, usize), OperatorCache<T>> = BTreeMap::new();
    for b in &clean_blocks {
        if let std::collections::btree_map::Entry::Vacant(e) = caches.entry((b.height, b.width)) {
            let g = pixel_grid_graph(b.height, b.width, cfg.image_k)?;
            e.insert(cache_for(&g, cfg, true)?);
        }
    }
    let scale = T::lit(255.0);
    let mut rows = Vec::new();
    for (si, &sigma) in cfg.sigmas.iter().enumerate() {
        let noisy = Image::new(
            image.width,
            image.height,
            add_gaussian_noise(&image.data, sigma / scale, noise_seed(cfg.seed, si, 0))?,
        )?;
        let noisy_blocks = image_blocks(&noisy, size);
        let samples = noisy_blocks
            .iter()
            .zip(&clean_blocks)
            .map(|(nb, cb)| Sample::new(&caches[&(nb.height, nb.width)], &nb.data, &cb.data))
            .collect::<Result<Vec<_>>>()?;
        for method in &cfg.methods() {
            let res = optimize(cfg, &samples, method)?;
            let out = res.denoise(method, &samples)?;
            let blocks: Vec<Block<T>> = noisy_blocks
                .iter()
                .zip(out)
                .map(|(b, data)| Block { data, ..b.clone() })
                .collect();
            let denoised = assemble_blocks(image.width, image.height, &blocks);
            let s = ssim(&denoised, image)?;
            rows.push(row(method, sigma, segment, &res, Some(s))?);
        }
    }
    Ok(rows)
}

/// Deterministic synthetic test image: a diagonal gradient with a bright
/// disc and a dark square.
pub fn synthetic_image<T: Scalar>(width: usize, height: usize) -> Image<T> {
    Image::from_fn(width, height, |r, c| {
        let (y, x) = (r as f64 / height as f64, c as f64 / width as f64);
        let mut v = 0.2 + 0.5 * (x + y) / 2.0;
        if (x - 0.35).powi(2) + (y - 0.4).powi(2) < 0.04 {
            v = 0.9;
        }
        if (0.6..0.85).contains(&x) && (0.6..0.85).contains(&y) {
            v = 0.1;
        }
        T::lit((v * 255.0).round() / 255.0)
    })
}

fn bounding_diagonal<T: Scalar>(points: &[[T; 3]]) -> ([T; 3], T) {
    let mut lo = [T::infinity(); 3];
    let mut hi = [T::neg_infinity(); 3];
    for p in points {
        for a in 0..3 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let d = (0..3).map(|a| (hi[a] - lo[a]) * (hi[a] - lo[a])).sum::<T>().sqrt();
    (lo, if d > T::zero() { d } else { T::one() })
}

/// Coordinates are shifted to the bounding-box corner and divided by the
/// clean bounding-box diagonal; σ is given in original units. Patches and
/// their graphs come from the noisy cloud, and each coordinate channel is
/// denoised as a separate signal.
pub fn run_pointcloud<T: Scalar>(cfg: &ExperimentConfig<T>, points: &[[T; 3]], segment: &str) -> Result<Vec<ResultRow<T>>> {
    cfg.validate()?;
    if points.is_empty() {
        return Err(Error::param("point cloud is empty"));
    }
    let (lo, diag) = bounding_diagonal(points);
    let clean: Vec<[T; 3]> = points
        .iter()
        .map(|p| [(p[0] - lo[0]) / diag, (p[1] - lo[1]) / diag, (p[2] - lo[2]) / diag])
        .collect();
    let flat: Vec<T> = clean.iter().flatten().copied().collect();
    let mut rows = Vec::new();
    for (si, &sigma) in cfg.sigmas.iter().enumerate() {
        let noisy_flat = add_gaussian_noise(&flat, sigma / diag, noise_seed(cfg.seed, si, 0))?;
        let noisy: Vec<[T; 3]> = noisy_flat.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        let partition = pointcloud_patches(&noisy, cfg.max_patch, cfg.knn_k, None)?;
        let caches = partition
            .patches
            .iter()
            .map(|p| cache_for(&p.graph, cfg, false))
            .collect::<Result<Vec<_>>>()?;
        let channels: Vec<[(Vec<T>, Vec<T>); 3]> = partition
            .patches
            .iter()
            .map(|p| {
                std::array::from_fn(|a| {
                    let y = p.indices.iter().map(|&i| noisy[i][a]).collect();
                    let x = p.indices.iter().map(|&i| clean[i][a]).collect();
                    (y, x)
                })
            })
            .collect();
        let mut samples = Vec::with_capacity(3 * channels.len());
        for (cache, ch) in caches.iter().zip(&channels) {
            for (y, x) in ch {
                samples.push(Sample::new(cache, y, x)?);
            }
        }
        for method in &cfg.methods() {
            let res = optimize(cfg, &samples, method)?;
            rows.push(row(method, sigma, segment, &res, None)?);
        }
    }
    Ok(rows)
}

/// Deterministic synthetic cloud: points on a bumpy sphere.
pub fn synthetic_pointcloud<T: Scalar>(n: usize) -> Vec<[T; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            let bump = 1.0 + 0.1 * (3.0 * phi).sin() * z;
            [T::lit(bump * r * phi.cos()), T::lit(bump * r * phi.sin()), T::lit(bump * z)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_round_trip() {
        let img = synthetic_image::<f64>(19, 13);
        let blocks = image_blocks(&img, 8);
        assert_eq!(blocks.len(), 3 * 2);
        assert_eq!((blocks[2].height, blocks[2].width), (8, 3));
        assert_eq!(assemble_blocks(19, 13, &blocks), img);
    }

    #[test]
    fn bounding_box_diagonal() {
        let (lo, d) = bounding_diagonal(&[[1.0f64, 2.0, 3.0], [4.0, 6.0, 3.0]]);
        assert_eq!(lo, [1.0, 2.0, 3.0]);
        assert_eq!(d, 5.0);
    }
}
