//! Measurement geometry, image grid, and the matrix-free forward/adjoint
//! operator pair connecting reflectivity images to RCS amplitudes.
//!
//! The measurement model is the far-field monostatic turntable model: a point
//! source at `(x, y)` observed at frequency `f` and azimuth `θ` contributes
//!
//! ```text
//! exp(-i · 2k · (x cosθ + y sinθ)),   k = 2πf / c0
//! ```
//!
//! per unit amplitude (two-way phase, rotating look direction, fixed target
//! frame). Samples are ordered row-major with frequency as the outer axis and
//! angle as the inner axis. Grid points are ordered row-major with x outer
//! and y inner.

use crate::error::{Error, Result};
use crate::{C0, C64};
use rayon::prelude::*;

/// Frequency and azimuth sample axes of a turntable measurement.
///
/// Angles are stored in radians; constructors taking degrees convert at the
/// boundary. Both axes are strictly increasing and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementGeometry {
    frequencies_hz: Vec<f64>,
    angles_rad: Vec<f64>,
}

impl MeasurementGeometry {
    /// Build from explicit axes (angles in radians).
    pub fn new(frequencies_hz: Vec<f64>, angles_rad: Vec<f64>) -> Result<Self> {
        validate_axis("frequency", &frequencies_hz)?;
        validate_axis("angle", &angles_rad)?;
        Ok(Self {
            frequencies_hz,
            angles_rad,
        })
    }

    /// Build uniform axes; angle bounds are taken in degrees.
    pub fn linspace(
        f_min_hz: f64,
        f_max_hz: f64,
        n_freq: usize,
        az_min_deg: f64,
        az_max_deg: f64,
        n_angle: usize,
    ) -> Result<Self> {
        Self::new(
            linspace(f_min_hz, f_max_hz, n_freq, "frequency")?,
            linspace(
                az_min_deg.to_radians(),
                az_max_deg.to_radians(),
                n_angle,
                "angle",
            )?,
        )
    }

    pub fn frequencies_hz(&self) -> &[f64] {
        &self.frequencies_hz
    }

    pub fn angles_rad(&self) -> &[f64] {
        &self.angles_rad
    }

    pub fn n_freq(&self) -> usize {
        self.frequencies_hz.len()
    }

    pub fn n_angle(&self) -> usize {
        self.angles_rad.len()
    }

    /// Total sample count `M = n_freq * n_angle`.
    pub fn len(&self) -> usize {
        self.n_freq() * self.n_angle()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one sample per axis
    }

    /// `f_max - f_min`.
    pub fn bandwidth_hz(&self) -> f64 {
        self.frequencies_hz[self.n_freq() - 1] - self.frequencies_hz[0]
    }

    /// Down-range resolution `c0 / (2B)`; infinite for zero bandwidth.
    pub fn range_resolution_m(&self) -> f64 {
        C0 / (2.0 * self.bandwidth_hz())
    }

    /// `(frequency, angle)` of sample `m` in row-major order.
    pub fn sample(&self, m: usize) -> (f64, f64) {
        let na = self.n_angle();
        (self.frequencies_hz[m / na], self.angles_rad[m % na])
    }

    /// All samples in row-major order (frequency outer, angle inner).
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.frequencies_hz.iter().flat_map(move |&f| {
            self.angles_rad.iter().map(move |&th| (f, th))
        })
    }
}

fn validate_axis(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} axis is empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("{name} axis")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "{name} axis is not strictly increasing"
        )));
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, n: usize, name: &str) -> Result<Vec<f64>> {
    match n {
        0 => Err(Error::InvalidParameter(format!("{name} axis is empty"))),
        1 => Ok(vec![lo]),
        _ => {
            if hi <= lo {
                return Err(Error::InvalidParameter(format!(
                    "{name} axis needs max > min for {n} samples"
                )));
            }
            let step = (hi - lo) / (n - 1) as f64;
            Ok((0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * step })
                .collect())
        }
    }
}

/// Regular 2D grid of candidate scatterer positions, symmetric about the
/// origin so that the origin is always a grid point (odd point counts).
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    spacing_m: f64,
}

impl ImageGrid {
    /// Grid covering `extent_x x extent_y` meters centered at the origin.
    ///
    /// Point counts are `2*floor(extent/2/spacing) + 1` per axis, which keeps
    /// the grid symmetric and the origin exact.
    pub fn new(extent_x_m: f64, extent_y_m: f64, spacing_m: f64) -> Result<Self> {
        for (name, v) in [
            ("extent_x_m", extent_x_m),
            ("extent_y_m", extent_y_m),
            ("spacing_m", spacing_m),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        // Tolerate representation error in extent/spacing ratios (0.5/0.01
        // is slightly below 50 in binary) before truncating.
        let half = |extent: f64| (extent / 2.0 / spacing_m + 1e-9).floor() as i64;
        let axis = |h: i64| (-h..=h).map(|i| i as f64 * spacing_m).collect();
        Ok(Self {
            xs: axis(half(extent_x_m)),
            ys: axis(half(extent_y_m)),
            spacing_m,
        })
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ny(&self) -> usize {
        self.ys.len()
    }

    /// Total point count `N = nx * ny`.
    pub fn len(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing_m(&self) -> f64 {
        self.spacing_m
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Flat index of grid point `(ix, iy)`; x is the outer axis.
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.ny() + iy
    }

    /// Coordinates of flat index `j`.
    pub fn point(&self, j: usize) -> (f64, f64) {
        (self.xs[j / self.ny()], self.ys[j % self.ny()])
    }

    /// Flat index of the grid point nearest to `(x, y)`.
    pub fn nearest_index(&self, x_m: f64, y_m: f64) -> usize {
        let clamp = |v: f64, n: usize| (v.round().max(0.0) as usize).min(n - 1);
        let hx = (self.nx() - 1) / 2;
        let hy = (self.ny() - 1) / 2;
        let ix = clamp(x_m / self.spacing_m + hx as f64, self.nx());
        let iy = clamp(y_m / self.spacing_m + hy as f64, self.ny());
        self.index(ix, iy)
    }

    /// Whether `(x, y)` lies within the realized coordinate range.
    pub fn contains(&self, x_m: f64, y_m: f64) -> bool {
        x_m >= self.xs[0]
            && x_m <= self.xs[self.nx() - 1]
            && y_m >= self.ys[0]
            && y_m <= self.ys[self.ny() - 1]
    }
}

/// Complex measurement vector aligned with a [`MeasurementGeometry`];
/// `|y|²` is RCS in m².
#[derive(Debug, Clone, PartialEq)]
pub struct RcsAmplitude {
    values: Vec<C64>,
}

impl RcsAmplitude {
    pub fn new(values: Vec<C64>, geom: &MeasurementGeometry) -> Result<Self> {
        if values.len() != geom.len() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has {} entries, geometry has {} samples",
                values.len(),
                geom.len()
            )));
        }
        validate_finite_complex("RCS amplitude", &values)?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.values)
    }
}

/// Complex reflectivity image aligned with an [`ImageGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexImage {
    values: Vec<C64>,
}

impl ComplexImage {
    pub fn new(values: Vec<C64>, grid: &ImageGrid) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "image vector has {} entries, grid has {} points",
                values.len(),
                grid.len()
            )));
        }
        validate_finite_complex("image", &values)?;
        Ok(Self { values })
    }

    pub fn zeros(grid: &ImageGrid) -> Self {
        Self {
            values: vec![C64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    /// Largest pixel magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn validate_finite_complex(name: &str, values: &[C64]) -> Result<()> {
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        Err(Error::NonFinite(name.to_string()))
    } else {
        Ok(())
    }
}

pub(crate) fn l2_norm(values: &[C64]) -> f64 {
    values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Isotropic point scatterer; `|amplitude|²` is its RCS in m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointScatterer {
    pub x_m: f64,
    pub y_m: f64,
    pub amplitude: C64,
}

impl PointScatterer {
    pub fn new(x_m: f64, y_m: f64, amplitude: C64) -> Result<Self> {
        if !x_m.is_finite() || !y_m.is_finite() {
            return Err(Error::NonFinite("scatterer position".into()));
        }
        if !amplitude.re.is_finite() || !amplitude.im.is_finite() {
            return Err(Error::NonFinite("scatterer amplitude".into()));
        }
        Ok(Self { x_m, y_m, amplitude })
    }

    /// Scatterer specified by RCS in dBsm and a scattering phase.
    pub fn from_dbsm(x_m: f64, y_m: f64, rcs_dbsm: f64, phase_rad: f64) -> Result<Self> {
        let mag = 10f64.powf(rcs_dbsm / 20.0);
        Self::new(x_m, y_m, C64::from_polar(mag, phase_rad))
    }

    /// RCS of this scatterer in m².
    pub fn rcs_m2(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

/// Matrix-free measurement operator `A` with precomputed per-axis phase
/// tables.
///
/// The phase separates over the grid axes,
/// `exp(-i·2k(x cosθ + y sinθ)) = exp(-i·a·x) · exp(-i·b·y)` with
/// `a = 2k cosθ`, `b = 2k sinθ`, so the operator stores `M x nx` and
/// `M x ny` factor tables (in both orientations) instead of the full
/// `M x N` matrix. Forward and adjoint are exact conjugate transposes of
/// each other because they share the same tables.
///
/// Apply methods parallelize over output elements; every output element is
/// reduced sequentially in a fixed order, so results are bit-identical for
/// any thread count.
pub struct Operator {
    m: usize,
    nx: usize,
    ny: usize,
    /// `exp(-i a_m x_ix)`, layout `[m][ix]`.
    ex: Vec<C64>,
    /// `exp(-i b_m y_iy)`, layout `[m][iy]`.
    ey: Vec<C64>,
    /// Transposed `ex`, layout `[ix][m]`.
    ext: Vec<C64>,
    /// Transposed `ey`, layout `[iy][m]`.
    eyt: Vec<C64>,
}

impl Operator {
    pub fn new(grid: &ImageGrid, geom: &MeasurementGeometry) -> Self {
        let m = geom.len();
        let (nx, ny) = (grid.nx(), grid.ny());
        let mut ex = vec![C64::new(0.0, 0.0); m * nx];
        let mut ey = vec![C64::new(0.0, 0.0); m * ny];
        for (mi, (f, th)) in geom.samples().enumerate() {
            let k = 2.0 * std::f64::consts::PI * f / C0;
            let a = 2.0 * k * th.cos();
            let b = 2.0 * k * th.sin();
            for (ix, &x) in grid.xs().iter().enumerate() {
                ex[mi * nx + ix] = C64::from_polar(1.0, -a * x);
            }
            for (iy, &y) in grid.ys().iter().enumerate() {
                ey[mi * ny + iy] = C64::from_polar(1.0, -b * y);
            }
        }
        let mut ext = vec![C64::new(0.0, 0.0); m * nx];
        let mut eyt = vec![C64::new(0.0, 0.0); m * ny];
        for mi in 0..m {
            for ix in 0..nx {
                ext[ix * m + mi] = ex[mi * nx + ix];
            }
            for iy in 0..ny {
                eyt[iy * m + mi] = ey[mi * ny + iy];
            }
        }
        Self { m, nx, ny, ex, ey, ext, eyt }
    }

    pub fn n_samples(&self) -> usize {
        self.m
    }

    pub fn n_pixels(&self) -> usize {
        self.nx * self.ny
    }

    /// `y = A x`. Panics on length mismatch.
    pub fn forward(&self, image: &[C64]) -> Vec<C64> {
        assert_eq!(image.len(), self.n_pixels(), "image length");
        let (nx, ny) = (self.nx, self.ny);
        (0..self.m)
            .into_par_iter()
            .map(|mi| {
                let ex = &self.ex[mi * nx..(mi + 1) * nx];
                let ey = &self.ey[mi * ny..(mi + 1) * ny];
                let mut acc = C64::new(0.0, 0.0);
                for (ix, exv) in ex.iter().enumerate() {
                    let row = &image[ix * ny..(ix + 1) * ny];
                    let mut s = C64::new(0.0, 0.0);
                    for (v, e) in row.iter().zip(ey) {
                        s += v * e;
                    }
                    acc += exv * s;
                }
                acc
            })
            .collect()
    }

    /// `x = A† y`. Panics on length mismatch.
    pub fn adjoint(&self, data: &[C64]) -> Vec<C64> {
        assert_eq!(data.len(), self.m, "data length");
        let (m, nx, ny) = (self.m, self.nx, self.ny);
        // Fold the y-axis factor into the data once: w[iy][m] = conj(ey)·y.
        let mut wmat = vec![C64::new(0.0, 0.0); ny * m];
        for iy in 0..ny {
            let row = &self.eyt[iy * m..(iy + 1) * m];
            let out = &mut wmat[iy * m..(iy + 1) * m];
            for ((w, e), v) in out.iter_mut().zip(row).zip(data) {
                *w = e.conj() * v;
            }
        }
        let mut image = vec![C64::new(0.0, 0.0); nx * ny];
        image
            .par_chunks_mut(ny)
            .enumerate()
            .for_each(|(ix, out_row)| {
                let ex_row = &self.ext[ix * m..(ix + 1) * m];
                for (iy, out) in out_row.iter_mut().enumerate() {
                    let w_row = &wmat[iy * m..(iy + 1) * m];
                    let mut acc = C64::new(0.0, 0.0);
                    for (e, w) in ex_row.iter().zip(w_row) {
                        acc += e.conj() * w;
                    }
                    *out = acc;
                }
            });
        image
    }

    /// Dense `M x N` materialization, row-major by sample. Intended for
    /// small test instances only.
    pub fn dense(&self) -> Vec<C64> {
        let (nx, ny) = (self.nx, self.ny);
        let mut out = Vec::with_capacity(self.m * nx * ny);
        for mi in 0..self.m {
            for ix in 0..nx {
                let exv = self.ex[mi * nx + ix];
                for iy in 0..ny {
                    out.push(exv * self.ey[mi * ny + iy]);
                }
            }
        }
        out
    }
}

/// `y = A x` with full input validation.
pub fn forward_apply(
    image: &ComplexImage,
    grid: &ImageGrid,
    geom: &MeasurementGeometry,
) -> Result<RcsAmplitude> {
    if image.values().len() != grid.len() {
        return Err(Error::DimensionMismatch(format!(
            "image has {} entries, grid has {} points",
            image.values().len(),
            grid.len()
        )));
    }
    let op = Operator::new(grid, geom);
    RcsAmplitude::new(op.forward(image.values()), geom)
}

/// `x = A† y` with full input validation.
pub fn adjoint_apply(
    data: &RcsAmplitude,
    grid: &ImageGrid,
    geom: &MeasurementGeometry,
) -> Result<ComplexImage> {
    if data.values().len() != geom.len() {
        return Err(Error::DimensionMismatch(format!(
            "data has {} entries, geometry has {} samples",
            data.values().len(),
            geom.len()
        )));
    }
    let op = Operator::new(grid, geom);
    ComplexImage::new(op.adjoint(data.values()), grid)
}

/// Coherent sum of point-scatterer responses; positions need not lie on any
/// grid.
pub fn synthesize_measurement(
    scatterers: &[PointScatterer],
    geom: &MeasurementGeometry,
) -> Result<RcsAmplitude> {
    for s in scatterers {
        // Re-validate: callers may have constructed the struct literally.
        PointScatterer::new(s.x_m, s.y_m, s.amplitude)?;
    }
    let values: Vec<C64> = geom
        .samples()
        .map(|(f, th)| {
            let two_k = 2.0 * (2.0 * std::f64::consts::PI * f / C0);
            let (sin_th, cos_th) = th.sin_cos();
            let mut acc = C64::new(0.0, 0.0);
            for s in scatterers {
                let phase = -two_k * (s.x_m * cos_th + s.y_m * sin_th);
                acc += s.amplitude * C64::from_polar(1.0, phase);
            }
            acc
        })
        .collect();
    RcsAmplitude::new(values, geom)
}

/// Per-sample RCS `σ = |y|²` in m².
pub fn rcs_from_amplitude(data: &RcsAmplitude) -> Vec<f64> {
    data.values().iter().map(|v| v.norm_sqr()).collect()
}
