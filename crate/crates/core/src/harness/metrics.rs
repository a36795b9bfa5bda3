//! Error metrics and a minimal grayscale image type.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major grayscale image with intensities normally in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image<T> {
    pub width: usize,
    pub height: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Image<T> {
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self> {
        if width * height != data.len() {
            return Err(Error::dim(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..height)
            .flat_map(|r| (0..width).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self { width, height, data }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: T) {
        self.data[row * self.width + col] = v;
    }
}

pub fn mse<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::dim(format!("mse of lengths {} and {}", a.len(), b.len())));
    }
    if a.is_empty() {
        return Err(Error::dim("mse of empty signals"));
    }
    let s: T = a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum();
    Ok(s / T::from_count(a.len()))
}

/// `10 log10(peak² / mse)` in dB; infinite when `mse = 0`.
pub fn psnr<T: Scalar>(mse: T, peak: T) -> Result<T> {
    if !(mse >= T::zero()) {
        return Err(Error::param(format!("mse must be nonnegative, got {mse}")));
    }
    if !(peak > T::zero()) {
        return Err(Error::param("peak must be positive"));
    }
    if mse == T::zero() {
        return Ok(T::infinity());
    }
    Ok(T::lit(10.0) * (peak * peak / mse).log10())
}

fn gaussian_window<T: Scalar>(size: usize, sigma: T) -> Vec<T> {
    let center = T::from_count(size - 1) / T::lit(2.0);
    let w: Vec<T> = (0..size)
        .map(|i| {
            let d = T::from_count(i) - center;
            (-(d * d) / (T::lit(2.0) * sigma * sigma)).exp()
        })
        .collect();
    let total: T = w.iter().copied().sum();
    w.into_iter().map(|v| v / total).collect()
}

/// Mean SSIM over all valid positions of an 11×11 Gaussian window
/// (`σ = 1.5`, `C₁ = 0.01²`, `C₂ = 0.03²`). The window shrinks to the
/// image size along any side shorter than 11.
pub fn ssim<T: Scalar>(a: &Image<T>, b: &Image<T>) -> Result<T> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::dim(format!(
            "ssim of {}x{} and {}x{} images",
            a.width, a.height, b.width, b.height
        )));
    }
    if a.data.is_empty() {
        return Err(Error::dim("ssim of empty images"));
    }
    let wy = a.height.min(11);
    let wx = a.width.min(11);
    let sigma = T::lit(1.5);
    let gy = gaussian_window(wy, sigma);
    let gx = gaussian_window(wx, sigma);
    let c1 = T::lit(0.01 * 0.01);
    let c2 = T::lit(0.03 * 0.03);

    let mut total = T::zero();
    let mut count = 0usize;
    for r0 in 0..=a.height - wy {
        for c0 in 0..=a.width - wx {
            let (mut ma, mut mb) = (T::zero(), T::zero());
            for (i, &u) in gy.iter().enumerate() {
                for (j, &v) in gx.iter().enumerate() {
                    let w = u * v;
                    ma = ma + w * a.get(r0 + i, c0 + j);
                    mb = mb + w * b.get(r0 + i, c0 + j);
                }
            }
            let (mut vaa, mut vbb, mut vab) = (T::zero(), T::zero(), T::zero());
            for (i, &u) in gy.iter().enumerate() {
                for (j, &v) in gx.iter().enumerate() {
                    let w = u * v;
                    let da = a.get(r0 + i, c0 + j) - ma;
                    let db = b.get(r0 + i, c0 + j) - mb;
                    vaa = vaa + w * da * da;
                    vbb = vbb + w * db * db;
                    vab = vab + w * da * db;
                }
            }
            let two = T::lit(2.0);
            let num = (two * ma * mb + c1) * (two * vab + c2);
            let den = (ma * ma + mb * mb + c1) * (vaa + vbb + c2);
            total = total + num / den;
            count += 1;
        }
    }
    Ok(total / T::from_count(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mse_cases() {
        assert_eq!(mse(&[1.0f64, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(mse(&[0.0f64, 0.0], &[1.0, 1.0]).unwrap(), 1.0);
        assert!((mse(&[1.0f64, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(mse(&[1.0f64], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn psnr_cases() {
        assert!((psnr(0.01f64, 1.0).unwrap() - 20.0).abs() < 1e-12);
        assert!(psnr(0.0f64, 1.0).unwrap().is_infinite());
        assert!(psnr(-1.0f64, 1.0).is_err());
    }

    #[test]
    fn ssim_identical_and_constant() {
        let a = Image::from_fn(16, 12, |r, c| ((r * 3 + c) % 7) as f64 / 7.0);
        assert!((ssim(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let half = Image::from_fn(16, 16, |_, _| 0.5f64);
        assert!((ssim(&half, &half).unwrap() - 1.0).abs() < 1e-12);
        let zero = Image::from_fn(16, 16, |_, _| 0.0f64);
        let one = Image::from_fn(16, 16, |_, _| 1.0f64);
        let c1 = 1e-4;
        let expected = c1 / (1.0 + c1);
        assert!((ssim(&zero, &one).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn ssim_small_image_and_mismatch() {
        let a = Image::from_fn(4, 3, |r, c| (r + c) as f64 / 5.0);
        assert!((ssim(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let b = Image::from_fn(3, 4, |r, c| (r + c) as f64 / 5.0);
        assert!(ssim(&a, &b).is_err());
    }
}
