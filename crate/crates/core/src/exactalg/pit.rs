//! Randomized nonzero testing of polynomials given only by evaluation.

use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactalg::gf::{ExtField, Gf};

/// Outcome of a Schwartz–Zippel test.
#[derive(Clone, Debug)]
pub enum PitVerdict {
    /// Certified: the polynomial does not vanish at `witness`.
    Nonzero {
        witness: Vec<Gf>,
        value: Gf,
        extension_degree: usize,
    },
    /// Vanished at every sampled point; wrong with probability at most `error_bound`.
    Zero {
        trials: u32,
        extension_degree: usize,
        error_bound: f64,
    },
}

impl PitVerdict {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, PitVerdict::Nonzero { .. })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PitConfig {
    /// The field size must exceed `confidence_factor * degree_bound`.
    pub confidence_factor: u64,
    pub trials: u32,
    pub seed: u64,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig {
            confidence_factor: 64,
            trials: 8,
            seed: 0x5eed,
        }
    }
}

/// The extension field used for a given degree bound.
pub fn field_for(p: u32, degree_bound: u64, cfg: &PitConfig) -> Arc<ExtField> {
    let bound = cfg.confidence_factor.saturating_mul(degree_bound.max(1));
    let m = ExtField::degree_exceeding(p, bound);
    ExtField::new(p, m, cfg.seed)
}

/// Test whether the polynomial evaluated by `eval` is nonzero over `F_p`.
///
/// `eval` receives a point in `F_{p^m}^nvars`; `degree_bound` must bound the
/// total degree of the polynomial.
pub fn pit_nonzero<F>(nvars: usize, p: u32, degree_bound: u64, cfg: &PitConfig, mut eval: F) -> PitVerdict
where
    F: FnMut(&[Gf]) -> Gf,
{
    let field = field_for(p, degree_bound, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let point: Vec<Gf> = (0..nvars).map(|_| field.random(&mut rng)).collect();
        let value = eval(&point);
        if !value.is_zero() {
            return PitVerdict::Nonzero {
                witness: point,
                value,
                extension_degree: field.degree(),
            };
        }
    }
    let q = field.order().to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    let per_trial = (degree_bound as f64 / q).min(1.0);
    PitVerdict::Zero {
        trials: cfg.trials,
        extension_degree: field.degree(),
        error_bound: per_trial.powi(cfg.trials as i32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::Matrix;
    use crate::exactalg::poly::MultiPoly;
    use crate::scalar::{Fp, Ring};
    use num_traits::One;

    #[test]
    fn zero_and_identity_matrices() {
        let cfg = PitConfig::default();
        let zero = pit_nonzero(2, 3, 2, &cfg, |_| {
            let m: Matrix<Gf> = Matrix::zeros(2, 2);
            m.det()
        });
        match zero {
            PitVerdict::Zero { error_bound, .. } => assert!(error_bound < 1e-6),
            _ => panic!("zero matrix reported nonzero"),
        }
        let id = pit_nonzero(2, 3, 2, &cfg, |_| Matrix::<Gf>::identity(3).det());
        assert!(id.is_nonzero());
    }

    #[test]
    fn quadratic_without_roots_in_small_field() {
        // a^2 + 2ab + 2b^2 over F_3: witness must avoid the zero set
        let a = MultiPoly::<Fp>::var(0);
        let b = MultiPoly::<Fp>::var(1);
        let f = a.clone() * a.clone() + (a * b.clone()).scale(2) + (b.clone() * b).scale(2);
        let cfg = PitConfig::default();
        let v = pit_nonzero(2, 3, 2, &cfg, |pt| {
            let field = pt[0].field().unwrap().clone();
            f.evaluate(pt, |c| field.from_fp(*c))
        });
        match v {
            PitVerdict::Nonzero { witness, value, extension_degree } => {
                assert!(extension_degree >= 5);
                let field = witness[0].field().unwrap().clone();
                assert_eq!(f.evaluate(&witness, |c| field.from_fp(*c)), value);
                assert!(!value.is_zero());
            }
            _ => panic!("nonzero polynomial reported zero"),
        }
        let _ = Gf::one();
    }
}
