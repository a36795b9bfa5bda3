//! Diagonal spectral Wiener filtering in any transform domain, with grid
//! search and gradient descent over the transform parameters.
//!
//! Optimizers work on batches of [`Sample`]s that share one parameter triple
//! `(θ, α, κ)`. Samples on the same graph (the same [`OperatorCache`]) also
//! share the filter `h`, whose Wiener gains pool the spectra of all of them.
//! A batch of one is the plain single-signal problem; image blocks and
//! point-cloud channels use larger batches.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{build_operator, GraphSpectrum, Method, OperatorCache, TransformOperator};

/// Diagonal spectral gains.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterH<T> {
    pub h: Vec<T>,
}

impl<T: Scalar> FilterH<T> {
    pub fn new(h: Vec<T>) -> Result<Self> {
        if h.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("filter gains must be finite"));
        }
        Ok(Self { h })
    }

    pub fn ones(n: usize) -> Self {
        Self { h: vec![T::one(); n] }
    }

    pub fn zeros(n: usize) -> Self {
        Self { h: vec![T::zero(); n] }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.h.iter().all(|&v| v == T::one())
    }
}

/// Output of [`filter_signal`].
#[derive(Debug, Clone, PartialEq)]
pub struct Filtered<T> {
    /// Real part of the reconstruction.
    pub signal: Vec<T>,
    /// Euclidean norm of the discarded imaginary part.
    pub imag_residual: T,
}

fn check_len(what: &str, got: usize, n: usize) -> Result<()> {
    if got != n {
        return Err(Error::dim(format!("{what} has length {got}, operator size is {n}")));
    }
    Ok(())
}

fn wiener_from_spectra<T: Scalar>(yh: &[Complex<T>], xh: &[Complex<T>]) -> Vec<T> {
    let floor = T::lit(1e-14);
    yh.iter()
        .zip(xh)
        .map(|(&y, &x)| {
            let p = y.norm_sqr();
            if y == x {
                T::one()
            } else if p < floor {
                T::zero()
            } else {
                (y.conj() * x).re / p
            }
        })
        .collect()
}

/// Per-coefficient least-squares gains `Re(conj(ŷ) x̂) / |ŷ|²`.
pub fn wiener_h<T: Scalar>(op: &TransformOperator<T>, y: &[T], x: &[T]) -> Result<FilterH<T>> {
    check_len("noisy signal", y.len(), op.n())?;
    check_len("reference signal", x.len(), op.n())?;
    let yh = op.apply(y)?;
    let xh = op.apply(x)?;
    Ok(FilterH {
        h: wiener_from_spectra(&yh, &xh),
    })
}

/// `Re(F⁻¹ diag(h) F y)`.
pub fn filter_signal<T: Scalar>(op: &TransformOperator<T>, h: &FilterH<T>, y: &[T]) -> Result<Filtered<T>> {
    check_len("filter", h.len(), op.n())?;
    check_len("signal", y.len(), op.n())?;
    if h.is_identity() {
        return Ok(Filtered {
            signal: y.to_vec(),
            imag_residual: T::zero(),
        });
    }
    let z = reconstruct(op, &h.h, &op.apply(y)?);
    Ok(Filtered {
        signal: z.iter().map(|c| c.re).collect(),
        imag_residual: z.iter().map(|c| c.im * c.im).sum::<T>().sqrt(),
    })
}

fn reconstruct<T: Scalar>(op: &TransformOperator<T>, h: &[T], yh: &[Complex<T>]) -> Vec<Complex<T>> {
    let scaled: Vec<Complex<T>> = yh.iter().zip(h).map(|(&c, &g)| c * g).collect();
    op.inverse.matvec(&scaled)
}

fn complex_loss<T: Scalar>(op: &TransformOperator<T>, h: &[T], y: &[T], yh: &[Complex<T>], x: &[T]) -> T {
    if h.iter().all(|&v| v == T::one()) {
        return squared_error(y, x);
    }
    reconstruct(op, h, yh)
        .iter()
        .zip(x)
        .map(|(z, &v)| (z - Complex::new(v, T::zero())).norm_sqr())
        .sum()
}

/// `‖F⁻¹ diag(h) F y − x‖²` for a built operator. The residual is taken on
/// the complex reconstruction, so the Wiener gains are its exact minimizer.
pub fn loss_with_operator<T: Scalar>(op: &TransformOperator<T>, h: &FilterH<T>, y: &[T], x: &[T]) -> Result<T> {
    check_len("filter", h.len(), op.n())?;
    check_len("noisy signal", y.len(), op.n())?;
    check_len("reference signal", x.len(), op.n())?;
    Ok(complex_loss(op, &h.h, y, &op.apply(y)?, x))
}

/// Loss with the operator of `method` built at `(θ, α, κ)`.
#[allow(clippy::too_many_arguments)]
pub fn loss<T: Scalar>(
    spec: &GraphSpectrum<T>,
    method: &Method,
    h: &FilterH<T>,
    theta: T,
    alpha: T,
    kappa: T,
    y: &[T],
    x: &[T],
) -> Result<T> {
    let op = build_operator(spec, method, theta, alpha, kappa)?;
    loss_with_operator(&op, h, y, x)
}

fn squared_error<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&u, &v)| (u - v) * (u - v)).sum()
}

/// One noisy/reference pair on the graph whose operators `cache` serves.
/// In a batch, samples that point at the same cache share one filter.
#[derive(Clone, Copy)]
pub struct Sample<'a, T> {
    pub cache: &'a OperatorCache<T>,
    pub y: &'a [T],
    pub x: &'a [T],
}

impl<'a, T: Scalar> Sample<'a, T> {
    pub fn new(cache: &'a OperatorCache<T>, y: &'a [T], x: &'a [T]) -> Result<Self> {
        let n = cache.spectrum().n();
        check_len("noisy signal", y.len(), n)?;
        check_len("reference signal", x.len(), n)?;
        Ok(Self { cache, y, x })
    }
}

/// Search grids for `θ` (outer loop) and `α` (inner loop).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    pub theta: Vec<T>,
    pub alpha: Vec<T>,
}

impl<T: Scalar> Grid<T> {
    pub fn new(theta: Vec<T>, alpha: Vec<T>) -> Result<Self> {
        if theta.is_empty() || alpha.is_empty() {
            return Err(Error::param("search grids must be nonempty"));
        }
        if theta.iter().chain(&alpha).any(|v| !v.is_finite()) {
            return Err(Error::param("grid values must be finite"));
        }
        Ok(Self { theta, alpha })
    }

    /// `start, start + step, …` up to `end` inclusive (with a small slack).
    pub fn range(start: T, step: T, end: T) -> Result<Vec<T>> {
        if !(step > T::zero()) || !start.is_finite() || !end.is_finite() {
            return Err(Error::param("grid step must be positive and bounds finite"));
        }
        let slack = step * T::lit(1e-9);
        let mut out = Vec::new();
        let mut i = 0usize;
        loop {
            let v = start + step * T::from_count(i);
            if v > end + slack {
                break;
            }
            out.push(v);
            i += 1;
        }
        Ok(out)
    }

    /// `α ∈ {0, 0.1, …, 1}` and `θ ∈ {0, 0.628, …}` up to `2π`.
    pub fn standard() -> Self {
        Self {
            theta: Self::range(T::zero(), T::lit(0.628), T::TAU()).expect("fixed grid"),
            alpha: (0..=10).map(|i| T::from_count(i) / T::lit(10.0)).collect(),
        }
    }
}

/// One gradient-descent iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry<T> {
    pub loss: T,
    pub best_loss: T,
    pub theta: T,
    pub alpha: T,
    pub kappa: T,
}

/// Optimum of a single-signal search.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult<T> {
    pub theta: T,
    pub alpha: T,
    pub kappa: T,
    pub h: FilterH<T>,
    /// Mean squared error of the real reconstruction at the optimum.
    pub mse: T,
    pub trace: Vec<TraceEntry<T>>,
}

/// Optimum of a batch search: shared parameters and one filter per sample,
/// identical across samples that share a cache.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult<T> {
    pub theta: T,
    pub alpha: T,
    pub kappa: T,
    pub filters: Vec<FilterH<T>>,
    /// Pooled mean squared error over all samples.
    pub mse: T,
    pub trace: Vec<TraceEntry<T>>,
}

impl<T: Scalar> BatchResult<T> {
    fn into_single(mut self) -> OptResult<T> {
        OptResult {
            theta: self.theta,
            alpha: self.alpha,
            kappa: self.kappa,
            h: self.filters.pop().expect("one sample"),
            mse: self.mse,
            trace: self.trace,
        }
    }

    /// Real-part reconstructions of every sample at the optimum.
    pub fn denoise(&self, method: &Method, samples: &[Sample<'_, T>]) -> Result<Vec<Vec<T>>> {
        let ops = cached_operators(samples, method, self.theta, self.alpha, self.kappa)?;
        samples
            .iter()
            .zip(&self.filters)
            .zip(ops)
            .map(|((s, h), op)| Ok(filter_signal(&op, h, s.y)?.signal))
            .collect()
    }
}

fn total_len<T>(samples: &[Sample<'_, T>]) -> usize {
    samples.iter().map(|s| s.y.len()).sum()
}

fn check_batch<T: Scalar>(samples: &[Sample<'_, T>]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::param("no samples to optimize"));
    }
    for s in samples {
        let n = s.cache.spectrum().n();
        check_len("noisy signal", s.y.len(), n)?;
        check_len("reference signal", s.x.len(), n)?;
    }
    Ok(())
}

/// Operators from each sample's cache, fetched once per distinct cache.
fn cached_operators<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    theta: T,
    alpha: T,
    kappa: T,
) -> Result<Vec<Arc<TransformOperator<T>>>> {
    let mut built: Vec<(*const OperatorCache<T>, Arc<TransformOperator<T>>)> = Vec::new();
    let mut out = Vec::with_capacity(samples.len());
    for s in samples {
        let key: *const OperatorCache<T> = s.cache;
        let op = match built.iter().find(|(k, _)| *k == key) {
            Some((_, op)) => Arc::clone(op),
            None => {
                let op = s.cache.get(method, theta, alpha, kappa)?;
                built.push((key, Arc::clone(&op)));
                op
            }
        };
        out.push(op);
    }
    Ok(out)
}

/// Index of each sample's filter group. Samples served by the same cache
/// share one filter; groups are numbered in order of first appearance.
fn filter_groups<T>(samples: &[Sample<'_, T>]) -> (Vec<usize>, usize) {
    let mut keys: Vec<*const OperatorCache<T>> = Vec::new();
    let idx = samples
        .iter()
        .map(|s| {
            let key: *const OperatorCache<T> = s.cache;
            keys.iter().position(|&k| k == key).unwrap_or_else(|| {
                keys.push(key);
                keys.len() - 1
            })
        })
        .collect();
    (idx, keys.len())
}

/// Noisy and reference spectra of one sample.
type SpectrumPair<T> = (Vec<Complex<T>>, Vec<Complex<T>>);
type SpectrumRef<'a, T> = (&'a [Complex<T>], &'a [Complex<T>]);

/// Wiener gains pooled over several realizations on one graph: the sample
/// averages of `Re(conj(ŷ) x̂)` and `|ŷ|²` stand in for the expectations.
fn pooled_wiener<T: Scalar>(spectra: &[SpectrumRef<'_, T>]) -> Vec<T> {
    if let [(yh, xh)] = spectra {
        return wiener_from_spectra(yh, xh);
    }
    let floor = T::lit(1e-14);
    let n = spectra.first().map_or(0, |(y, _)| y.len());
    (0..n)
        .map(|k| {
            if spectra.iter().all(|(y, x)| y[k] == x[k]) {
                return T::one();
            }
            let (mut num, mut den) = (T::zero(), T::zero());
            for (y, x) in spectra {
                num = num + (y[k].conj() * x[k]).re;
                den = den + y[k].norm_sqr();
            }
            if den < floor * T::from_count(spectra.len()) {
                T::zero()
            } else {
                num / den
            }
        })
        .collect()
}

/// Forward spectra of every noisy and reference signal.
fn batch_spectra<T: Scalar>(
    samples: &[Sample<'_, T>],
    ops: &[Arc<TransformOperator<T>>],
) -> Result<Vec<SpectrumPair<T>>> {
    samples
        .iter()
        .zip(ops)
        .map(|(s, op)| Ok((op.apply(s.y)?, op.apply(s.x)?)))
        .collect()
}

fn group_wiener<T: Scalar>(spectra: &[SpectrumPair<T>], group: &[usize], count: usize) -> Vec<Vec<T>> {
    (0..count)
        .map(|g| {
            let members: Vec<SpectrumRef<'_, T>> = spectra
                .iter()
                .zip(group)
                .filter(|(_, &gi)| gi == g)
                .map(|((y, x), _)| (y.as_slice(), x.as_slice()))
                .collect();
            pooled_wiener(&members)
        })
        .collect()
}

/// Real-part squared error of the batch under its pooled Wiener filters.
fn wiener_cell<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    theta: T,
    alpha: T,
    kappa: T,
) -> Result<(T, Vec<FilterH<T>>)> {
    let ops = cached_operators(samples, method, theta, alpha, kappa)?;
    let (group, count) = filter_groups(samples);
    let gains = group_wiener(&batch_spectra(samples, &ops)?, &group, count);
    let mut err = T::zero();
    let mut filters = Vec::with_capacity(samples.len());
    for ((s, op), &g) in samples.iter().zip(&ops).zip(&group) {
        let h = FilterH { h: gains[g].clone() };
        err = err + squared_error(&filter_signal(op, &h, s.y)?.signal, s.x);
        filters.push(h);
    }
    Ok((err, filters))
}

/// Exhaustive search, `θ` outer and `α` inner, `κ = 1`. The first cell
/// with strictly smallest pooled MSE wins.
pub fn grid_search_batch<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    grid: &Grid<T>,
) -> Result<BatchResult<T>> {
    check_batch(samples)?;
    if grid.theta.is_empty() || grid.alpha.is_empty() {
        return Err(Error::param("search grids must be nonempty"));
    }
    let thetas = if method.kind.uses_angle() { grid.theta.clone() } else { vec![T::zero()] };
    let alphas = if method.kind.uses_order() { grid.alpha.clone() } else { vec![T::one()] };
    let cells: Vec<(T, T)> = thetas
        .iter()
        .flat_map(|&t| alphas.iter().map(move |&a| (t, a)))
        .collect();
    let kappa = T::one();

    let errors = cells
        .par_iter()
        .map(|&(t, a)| wiener_cell(samples, method, t, a, kappa).map(|(e, _)| e))
        .collect::<Result<Vec<T>>>()?;

    let mut best = 0;
    for (i, &e) in errors.iter().enumerate() {
        if e < errors[best] {
            best = i;
        }
    }
    let (theta, alpha) = cells[best];
    let (err, filters) = wiener_cell(samples, method, theta, alpha, kappa)?;
    Ok(BatchResult {
        theta,
        alpha,
        kappa,
        filters,
        mse: err / T::from_count(total_len(samples)),
        trace: Vec::new(),
    })
}

pub fn grid_search<T: Scalar>(
    cache: &OperatorCache<T>,
    method: &Method,
    y: &[T],
    x: &[T],
    grid: &Grid<T>,
) -> Result<OptResult<T>> {
    let sample = Sample::new(cache, y, x)?;
    Ok(grid_search_batch(&[sample], method, grid)?.into_single())
}

/// Gradient-descent hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdConfig<T> {
    pub learning_rate: T,
    pub max_iter: usize,
    /// Central-difference step for the `θ`, `α`, `κ` gradients.
    pub fd_step: T,
}

impl<T: Scalar> Default for GdConfig<T> {
    fn default() -> Self {
        Self {
            learning_rate: T::lit(0.01),
            max_iter: 1000,
            fd_step: T::lit(1e-5),
        }
    }
}

/// Starting point. `h` holds one filter per sample, identical for samples
/// sharing a cache; `None` starts from the pooled Wiener gains at the initial
/// parameters. The default corresponds to the plain GFT.
#[derive(Debug, Clone, PartialEq)]
pub struct GdInit<T> {
    pub h: Option<Vec<FilterH<T>>>,
    pub theta: T,
    pub alpha: T,
    pub kappa: T,
}

impl<T: Scalar> Default for GdInit<T> {
    fn default() -> Self {
        Self {
            h: None,
            theta: T::zero(),
            alpha: T::one(),
            kappa: T::one(),
        }
    }
}

fn free_params(method: &Method) -> [bool; 3] {
    let angle = method.kind.uses_angle();
    let kappa = angle && method.family == crate::rotations::Family::DegeneracyFriendly;
    [angle, method.kind.uses_order(), kappa]
}

/// Builds operators at `p` once per distinct spectrum.
fn operators_at<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    p: [T; 3],
) -> Result<Vec<Arc<TransformOperator<T>>>> {
    let mut built: Vec<(*const GraphSpectrum<T>, Arc<TransformOperator<T>>)> = Vec::new();
    let mut out = Vec::with_capacity(samples.len());
    for s in samples {
        let key = Arc::as_ptr(s.cache.spectrum());
        if let Some((_, op)) = built.iter().find(|(k, _)| *k == key) {
            out.push(Arc::clone(op));
            continue;
        }
        let op = Arc::new(build_operator(s.cache.spectrum(), method, p[0], p[1], p[2])?);
        built.push((key, Arc::clone(&op)));
        out.push(op);
    }
    Ok(out)
}

fn batch_loss<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    hs: &[Vec<T>],
    group: &[usize],
    p: [T; 3],
) -> Result<T> {
    let ops = operators_at(samples, method, p)?;
    let mut total = T::zero();
    for ((s, op), &g) in samples.iter().zip(&ops).zip(group) {
        total = total + complex_loss(op, &hs[g], s.y, &op.apply(s.y)?, s.x);
    }
    Ok(total)
}

fn fd_gradient<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    hs: &[Vec<T>],
    group: &[usize],
    p: [T; 3],
    step: T,
) -> Result<[T; 3]> {
    let free = free_params(method);
    let mut g = [T::zero(); 3];
    for j in 0..3 {
        if !free[j] {
            continue;
        }
        let (mut plus, mut minus) = (p, p);
        plus[j] = plus[j] + step;
        minus[j] = minus[j] - step;
        let lp = batch_loss(samples, method, hs, group, plus)?;
        let lm = batch_loss(samples, method, hs, group, minus)?;
        g[j] = (lp - lm) / (T::lit(2.0) * step);
    }
    Ok(g)
}

/// Central-difference gradient of the loss in `(θ, α, κ)` at fixed `h`.
/// Components for parameters the method does not use are zero.
#[allow(clippy::too_many_arguments)]
pub fn parameter_gradient<T: Scalar>(
    cache: &OperatorCache<T>,
    method: &Method,
    h: &FilterH<T>,
    y: &[T],
    x: &[T],
    params: [T; 3],
    step: T,
) -> Result<[T; 3]> {
    let sample = Sample::new(cache, y, x)?;
    check_len("filter", h.len(), y.len())?;
    fd_gradient(&[sample], method, std::slice::from_ref(&h.h), &[0], params, step)
}

/// Joint descent on the filters and `(θ, α, κ)` with one shared learning
/// rate. Returns the best iterate seen, not the last one.
pub fn gradient_descent_batch<T: Scalar>(
    samples: &[Sample<'_, T>],
    method: &Method,
    init: &GdInit<T>,
    cfg: &GdConfig<T>,
) -> Result<BatchResult<T>> {
    check_batch(samples)?;
    if !(cfg.learning_rate > T::zero()) || !cfg.learning_rate.is_finite() {
        return Err(Error::param("learning rate must be positive"));
    }
    if cfg.max_iter == 0 {
        return Err(Error::param("iteration count must be at least 1"));
    }
    if !(cfg.fd_step > T::zero()) {
        return Err(Error::param("finite-difference step must be positive"));
    }
    let free = free_params(method);
    let (theta0, alpha0) = method.canonical(init.theta, init.alpha);
    let kappa0 = if free[2] { init.kappa } else { T::one() };
    let mut p = [theta0, alpha0, kappa0];
    if p.iter().any(|v| !v.is_finite()) {
        return Err(Error::param("initial parameters must be finite"));
    }

    let (group, count) = filter_groups(samples);
    let mut hs: Vec<Vec<T>> = match &init.h {
        Some(h) => {
            if h.len() != samples.len() {
                return Err(Error::dim("one initial filter per sample is required"));
            }
            for (f, s) in h.iter().zip(samples) {
                check_len("initial filter", f.len(), s.y.len())?;
            }
            let mut hs: Vec<Option<Vec<T>>> = vec![None; count];
            for (f, &g) in h.iter().zip(&group) {
                match &hs[g] {
                    Some(prev) if *prev != f.h => {
                        return Err(Error::param("samples sharing a graph need identical initial filters"));
                    }
                    Some(_) => {}
                    None => hs[g] = Some(f.h.clone()),
                }
            }
            hs.into_iter().map(|h| h.expect("every group has a sample")).collect()
        }
        None => {
            let ops = operators_at(samples, method, p)?;
            group_wiener(&batch_spectra(samples, &ops)?, &group, count)
        }
    };

    let eta = cfg.learning_rate;
    let two = T::lit(2.0);
    let mut best: Option<(T, [T; 3], Vec<Vec<T>>)> = None;
    let mut trace = Vec::with_capacity(cfg.max_iter);
    for _ in 0..cfg.max_iter {
        let ops = operators_at(samples, method, p)?;
        let mut current = T::zero();
        let mut h_grads: Vec<Vec<T>> = hs.iter().map(|h| vec![T::zero(); h.len()]).collect();
        for ((s, op), &g) in samples.iter().zip(&ops).zip(&group) {
            let yh = op.apply(s.y)?;
            let xh = op.apply(s.x)?;
            let h = &hs[g];
            current = current + complex_loss(op, h, s.y, &yh, s.x);
            for (((gk, &yk), &xk), &hk) in h_grads[g].iter_mut().zip(&yh).zip(&xh).zip(h) {
                *gk = *gk + two * (yk.conj() * (yk * hk - xk)).re;
            }
        }
        if !current.is_finite() {
            break;
        }
        let improved = best.as_ref().is_none_or(|(b, _, _)| current < *b);
        if improved {
            best = Some((current, p, hs.clone()));
        }
        let best_loss = best.as_ref().expect("set above").0;
        trace.push(TraceEntry {
            loss: current,
            best_loss,
            theta: p[0],
            alpha: p[1],
            kappa: p[2],
        });

        let pg = fd_gradient(samples, method, &hs, &group, p, cfg.fd_step)?;
        for (h, g) in hs.iter_mut().zip(&h_grads) {
            for (hk, &gk) in h.iter_mut().zip(g) {
                *hk = *hk - eta * gk;
            }
        }
        for j in 0..3 {
            p[j] = p[j] - eta * pg[j];
        }
    }

    let (_, p, hs) = best.ok_or_else(|| Error::param("loss is not finite at the initial point"))?;
    let filters: Vec<FilterH<T>> = group.iter().map(|&g| FilterH { h: hs[g].clone() }).collect();
    let ops = operators_at(samples, method, p)?;
    let mut err = T::zero();
    for ((s, op), f) in samples.iter().zip(&ops).zip(&filters) {
        err = err + squared_error(&filter_signal(op, f, s.y)?.signal, s.x);
    }
    Ok(BatchResult {
        theta: p[0],
        alpha: p[1],
        kappa: p[2],
        filters,
        mse: err / T::from_count(total_len(samples)),
        trace,
    })
}

pub fn gradient_descent<T: Scalar>(
    cache: &OperatorCache<T>,
    method: &Method,
    y: &[T],
    x: &[T],
    init: &GdInit<T>,
    cfg: &GdConfig<T>,
) -> Result<OptResult<T>> {
    let sample = Sample::new(cache, y, x)?;
    Ok(gradient_descent_batch(&[sample], method, init, cfg)?.into_single())
}
