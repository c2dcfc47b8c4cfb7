//! Array geometry, interference-plus-noise covariance and the
//! compound-Gaussian snapshot sampler.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, psd_sqrt, CMatrix, CVector};
use crate::rng;

/// Law of the positive texture `τ` modulating each Gaussian snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TextureLaw {
    /// `τ = 1`: plain Gaussian noise.
    Constant,
    /// Unit-mean inverse-gamma; requires `shape > 1`.
    InverseGamma { shape: f64 },
    /// Unit-mean exponential.
    Exponential,
}

impl Default for TextureLaw {
    fn default() -> Self {
        TextureLaw::InverseGamma { shape: 2.0 }
    }
}

impl TextureLaw {
    fn validate(&self) -> Result<()> {
        match *self {
            TextureLaw::InverseGamma { shape } if !(shape > 1.0 && shape.is_finite()) => Err(
                Error::Config(format!("inverse-gamma texture needs shape > 1, got {shape}")),
            ),
            _ => Ok(()),
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            TextureLaw::Constant => 1.0,
            TextureLaw::InverseGamma { shape } => {
                let g: f64 = Gamma::new(shape, 1.0)
                    .expect("shape validated")
                    .sample(rng);
                (shape - 1.0) / g
            }
            TextureLaw::Exponential => Exp1.sample(rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interferer {
    pub spatial_freq: f64,
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub n_sensors: usize,
    /// Background noise power σ₀² (linear).
    pub noise_floor: f64,
    pub interferers: Vec<Interferer>,
    pub look_spatial_freq: f64,
    pub texture: TextureLaw,
}

impl Scenario {
    /// Four-element half-wavelength array looking at broadside, with
    /// interferers at −35° and 70°, each 10 dB above the noise floor.
    pub fn baseline() -> Self {
        Self::baseline_with_sensors(4)
    }

    /// Same geometry as [`Scenario::baseline`] with a different array size.
    pub fn baseline_with_sensors(n_sensors: usize) -> Self {
        let freq = |deg| physical_angle_to_spatial_freq(deg).expect("angle in range");
        Scenario {
            n_sensors,
            noise_floor: 1.0,
            interferers: vec![
                Interferer {
                    spatial_freq: freq(-35.0),
                    power: 10.0,
                },
                Interferer {
                    spatial_freq: freq(70.0),
                    power: 10.0,
                },
            ],
            look_spatial_freq: 0.0,
            texture: TextureLaw::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sensors == 0 {
            return Err(Error::Config("n_sensors must be at least 1".into()));
        }
        if !(self.noise_floor > 0.0 && self.noise_floor.is_finite()) {
            return Err(Error::Config("noise floor must be positive".into()));
        }
        for (i, it) in self.interferers.iter().enumerate() {
            if !(it.power > 0.0 && it.power.is_finite()) {
                return Err(Error::Config(format!("interferer {i} has non-positive power")));
            }
            if !it.spatial_freq.is_finite() {
                return Err(Error::Config(format!("interferer {i} has non-finite frequency")));
            }
        }
        self.texture.validate()
    }

    pub fn look_vector(&self) -> CVector {
        steering_vector(self.look_spatial_freq, self.n_sensors)
    }

    pub fn covariance(&self) -> CMatrix {
        build_covariance(self)
    }
}

/// `[a(θ)]_k = exp(j 2π (k−1) θ)`.
pub fn steering_vector(spatial_freq: f64, n_sensors: usize) -> CVector {
    CVector::from_fn(n_sensors, |k, _| {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 * spatial_freq)
    })
}

/// Half-wavelength ULA mapping from a physical angle in degrees.
pub fn physical_angle_to_spatial_freq(angle_deg: f64) -> Result<f64> {
    if !(-90.0..=90.0).contains(&angle_deg) {
        return Err(Error::InvalidArgument(format!(
            "angle {angle_deg} deg outside [-90, 90]"
        )));
    }
    Ok(0.5 * angle_deg.to_radians().sin())
}

/// `Σ_N = σ₀² I + Σ_i σ_i² a(θ_i) a(θ_i)*`.
pub fn build_covariance(s: &Scenario) -> CMatrix {
    let n = s.n_sensors;
    let mut sigma = CMatrix::identity(n, n).scale(s.noise_floor);
    for it in &s.interferers {
        let a = steering_vector(it.spatial_freq, n);
        sigma += (&a * a.adjoint()).scale(it.power);
    }
    hermitian_part(&sigma)
}

/// `n` snapshots `x_i = √τ_i Σ^{1/2} w_i` stored column-wise, together with
/// the textures and Gaussian vectors that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotBatch {
    pub samples: CMatrix,
    pub textures: Vec<f64>,
    pub gaussians: CMatrix,
}

impl SnapshotBatch {
    pub fn n_sensors(&self) -> usize {
        self.samples.nrows()
    }

    pub fn len(&self) -> usize {
        self.samples.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.ncols() == 0
    }

    /// Builds a batch from explicit snapshots (no texture provenance).
    pub fn from_samples(samples: CMatrix) -> Self {
        let n = samples.ncols();
        Self {
            gaussians: samples.clone(),
            textures: vec![1.0; n],
            samples,
        }
    }
}

/// Reusable sampler holding `Σ^{1/2}` for a scenario.
#[derive(Debug, Clone)]
pub struct SnapshotSampler {
    sqrt_sigma: CMatrix,
    texture: TextureLaw,
}

impl SnapshotSampler {
    pub fn new(s: &Scenario) -> Result<Self> {
        s.validate()?;
        Ok(Self::from_covariance(&build_covariance(s), s.texture))
    }

    pub fn from_covariance(sigma: &CMatrix, texture: TextureLaw) -> Self {
        Self {
            sqrt_sigma: psd_sqrt(sigma),
            texture,
        }
    }

    pub fn sqrt_sigma(&self) -> &CMatrix {
        &self.sqrt_sigma
    }

    pub fn n_sensors(&self) -> usize {
        self.sqrt_sigma.nrows()
    }

    /// Draws `n` standard complex Gaussian vectors and textures; snapshot `i`
    /// reads only from the substream `(seed, i)`.
    pub fn draw_raw(&self, n: usize, seed: u64) -> (CMatrix, Vec<f64>) {
        let dim = self.n_sensors();
        let mut gaussians = CMatrix::zeros(dim, n);
        let mut textures = Vec::with_capacity(n);
        for i in 0..n {
            let mut r = rng::stream(rng::derive(seed, i as u64));
            for k in 0..dim {
                gaussians[(k, i)] = standard_complex(&mut r);
            }
            textures.push(self.texture.draw(&mut r));
        }
        (gaussians, textures)
    }

    /// Correlated Gaussian part `Z = Σ^{1/2} W` of the same draw.
    pub fn gaussian_part(&self, n: usize, seed: u64) -> CMatrix {
        let (w, _) = self.draw_raw(n, seed);
        &self.sqrt_sigma * w
    }

    pub fn sample(&self, n: usize, seed: u64) -> SnapshotBatch {
        let (gaussians, textures) = self.draw_raw(n, seed);
        let samples = self.compose(&gaussians, &textures);
        SnapshotBatch {
            samples,
            textures,
            gaussians,
        }
    }

    /// `x_i = √τ_i Σ^{1/2} w_i`.
    pub fn compose(&self, gaussians: &CMatrix, textures: &[f64]) -> CMatrix {
        let dim = self.n_sensors();
        let mut x = CMatrix::zeros(dim, gaussians.ncols());
        for (i, &t) in textures.iter().enumerate() {
            let amp = t.sqrt();
            for r in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += self.sqrt_sigma[(r, k)] * gaussians[(k, i)];
                }
                x[(r, i)] = acc * amp;
            }
        }
        x
    }
}

fn standard_complex<R: Rng>(r: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(r);
    let im: f64 = StandardNormal.sample(r);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn sample_snapshots(s: &Scenario, n: usize, seed: u64) -> Result<SnapshotBatch> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one snapshot".into()));
    }
    Ok(SnapshotSampler::new(s)?.sample(n, seed))
}

/// On-disk scenario description; powers in dB, angles in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_sensors: usize,
    #[serde(default)]
    pub noise_floor_db: f64,
    #[serde(default)]
    pub interferer_angles_deg: Vec<f64>,
    #[serde(default)]
    pub interferer_inr_db: Vec<f64>,
    #[serde(default)]
    pub look_angle_deg: f64,
    #[serde(default)]
    pub texture: TextureLaw,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_sensors: 4,
            noise_floor_db: 0.0,
            interferer_angles_deg: vec![-35.0, 70.0],
            interferer_inr_db: vec![10.0, 10.0],
            look_angle_deg: 0.0,
            texture: TextureLaw::default(),
            seed: None,
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        if self.interferer_angles_deg.len() != self.interferer_inr_db.len() {
            return Err(Error::Config(format!(
                "{} interferer angles but {} INR values",
                self.interferer_angles_deg.len(),
                self.interferer_inr_db.len()
            )));
        }
        let noise_floor = db_to_linear(self.noise_floor_db);
        let interferers = self
            .interferer_angles_deg
            .iter()
            .zip(&self.interferer_inr_db)
            .map(|(&deg, &inr)| {
                Ok(Interferer {
                    spatial_freq: physical_angle_to_spatial_freq(deg)?,
                    power: noise_floor * db_to_linear(inr),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let s = Scenario {
            n_sensors: self.n_sensors,
            noise_floor,
            interferers,
            look_spatial_freq: physical_angle_to_spatial_freq(self.look_angle_deg)?,
            texture: self.texture,
        };
        s.validate()?;
        Ok(s)
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
