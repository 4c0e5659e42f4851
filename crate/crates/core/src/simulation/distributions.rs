use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix};

/// A multivariate normal with a cached Cholesky factor.
#[derive(Clone, Debug)]
pub struct GaussianComponent {
    mean: Vec<f64>,
    covariance: Matrix<f64>,
    factor: Matrix<f64>,
}

impl GaussianComponent {
    pub fn new(mean: Vec<f64>, covariance: Matrix<f64>) -> Result<Self> {
        let p = mean.len();
        if p == 0 {
            return Err(Error::Empty("gaussian of dimension 0"));
        }
        if covariance.rows() != p || covariance.cols() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                got: covariance.rows(),
            });
        }
        if covariance.asymmetry() > 1e-12 {
            return Err(Error::Config("covariance is not symmetric".into()));
        }
        let factor = Cholesky::new(&covariance)
            .ok_or_else(|| Error::Config("covariance is not positive definite".into()))?
            .lower()
            .clone();
        Ok(GaussianComponent {
            mean,
            covariance,
            factor,
        })
    }

    pub fn isotropic(mean: Vec<f64>) -> Self {
        let p = mean.len();
        GaussianComponent::new(mean, Matrix::identity(p)).expect("identity is SPD")
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn covariance(&self) -> &Matrix<f64> {
        &self.covariance
    }

    fn draw_into<R: Rng + ?Sized>(&self, rng: &mut R, z: &mut [f64], out: &mut Vec<f64>) {
        for v in z.iter_mut() {
            *v = rng.sample(StandardNormal);
        }
        let p = self.dim();
        for i in 0..p {
            let s = z[..=i]
                .iter()
                .enumerate()
                .fold(self.mean[i], |s, (k, zk)| s + self.factor[(i, k)] * zk);
            out.push(s);
        }
    }
}

/// `count` draws of `mean + L z`, `z ~ N(0, I)`.
pub fn sample_gaussian<R: Rng + ?Sized>(component: &GaussianComponent, count: usize, rng: &mut R) -> Matrix<f64> {
    let p = component.dim();
    let mut data = Vec::with_capacity(count * p);
    let mut z = vec![0.0; p];
    for _ in 0..count {
        component.draw_into(rng, &mut z, &mut data);
    }
    Matrix::from_vec(count, p, data).unwrap()
}

#[derive(Clone, Debug)]
pub struct MixtureSpec {
    components: Vec<GaussianComponent>,
    weights: Vec<f64>,
}

impl MixtureSpec {
    pub fn new(components: Vec<GaussianComponent>, weights: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty("mixture without components"));
        }
        if components.len() != weights.len() {
            return Err(Error::Config("one weight per component required".into()));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::Config("mixture weights must be non-negative".into()));
        }
        if (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::Config("mixture weights must sum to 1".into()));
        }
        let p = components[0].dim();
        if let Some(c) = components.iter().find(|c| c.dim() != p) {
            return Err(Error::DimensionMismatch {
                expected: p,
                got: c.dim(),
            });
        }
        Ok(MixtureSpec { components, weights })
    }

    pub fn single(component: GaussianComponent) -> Self {
        MixtureSpec {
            components: vec![component],
            weights: vec![1.0],
        }
    }

    pub fn equal(components: Vec<GaussianComponent>) -> Result<Self> {
        let w = 1.0 / components.len() as f64;
        let weights = vec![w; components.len()];
        MixtureSpec::new(components, weights)
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn components(&self) -> &[GaussianComponent] {
        &self.components
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, &w) in self.weights.iter().enumerate() {
            acc += w;
            if u < acc {
                return i;
            }
        }
        // rounding left u above the total; take the last weighted component
        self.weights.iter().rposition(|&w| w > 0.0).unwrap()
    }
}

/// Like [`sample_mixture`], also returning the component index of each row.
///
/// When exactly one component carries positive weight no categorical draw is
/// consumed, so the stream matches [`sample_gaussian`] on that component.
pub fn sample_mixture_labeled<R: Rng + ?Sized>(
    spec: &MixtureSpec,
    count: usize,
    rng: &mut R,
) -> (Matrix<f64>, Vec<usize>) {
    let p = spec.dim();
    let positive: Vec<usize> = (0..spec.weights.len()).filter(|&i| spec.weights[i] > 0.0).collect();
    let mut data = Vec::with_capacity(count * p);
    let mut z = vec![0.0; p];
    let mut labels = Vec::with_capacity(count);
    for _ in 0..count {
        let k = if positive.len() == 1 { positive[0] } else { spec.pick(rng) };
        spec.components[k].draw_into(rng, &mut z, &mut data);
        labels.push(k);
    }
    (Matrix::from_vec(count, p, data).unwrap(), labels)
}

pub fn sample_mixture<R: Rng + ?Sized>(spec: &MixtureSpec, count: usize, rng: &mut R) -> Matrix<f64> {
    sample_mixture_labeled(spec, count, rng).0
}
