//! Quantum discord: a numerical projective-measurement minimization and
//! an independent closed form for Bell-diagonal states.

use core::f64::consts::PI;

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::correlations::{bloch_decomposition, entropy_bits, rtr_eigenvalues};
use crate::error::{Error, Result};
use crate::linalg::{c64, partial_trace, LogBase, Subsystem, C64};
use crate::model::DensityMatrix;

/// Search controls for the measurement minimization in
/// [`discord_numeric`]: a coarse grid over the measurement direction
/// followed by a deterministic compass refinement that stops once its
/// step drops below `refine_tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordOptions {
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub refine_tolerance: f64,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self {
            theta_steps: 64,
            phi_steps: 128,
            refine_tolerance: 1e-7,
        }
    }
}

/// Closed-form discord for Bell-diagonal states. Fails with
/// `BellDiagonalityViolated` when either local Bloch vector has norm
/// above 1e-6. With eigenvalues d_i of the state and C the largest
/// singular value of the correlation matrix, the result is
/// I - Cl where I = 2 + sum d_i log2 d_i and
/// Cl = (1-C)/2 log2((1-C)/2) + (1+C)/2 log2((1+C)/2) + 1.
pub fn discord_luo(rho: &DensityMatrix) -> Result<f64> {
    let bloch = bloch_decomposition(rho);
    let norm = |w: &[f64; 3]| (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let bloch_norm = norm(&bloch.u).max(norm(&bloch.v));
    if bloch_norm > 1e-6 {
        return Err(Error::BellDiagonalityViolated { bloch_norm });
    }
    let lb = LogBase::Two;
    let eig = crate::linalg::hermitian_eigen(rho.matrix()).expect("validated state");
    let info = 2.0
        + eig
            .eigenvalues
            .iter()
            .map(|&d| lb.xlog(d.max(0.0)))
            .sum::<f64>();
    let c = rtr_eigenvalues(&bloch.r)[2].max(0.0).sqrt();
    let classical = lb.xlog((1.0 - c) / 2.0) + lb.xlog((1.0 + c) / 2.0) + 1.0;
    Ok((info - classical).max(0.0))
}

/// One-sided quantum discord with projective measurements on dot 1,
/// D = S(rho_1) - S(rho) + min over measurement directions of the
/// conditional entropy of dot 2, in bits, clamped at zero. The
/// minimization is the deterministic grid-plus-compass search described
/// on [`DiscordOptions`], so equal inputs give bitwise-equal results.
pub fn discord_numeric(rho: &DensityMatrix, options: DiscordOptions) -> f64 {
    let m = rho.matrix();
    let s_total = entropy_bits(m);
    let s_first = entropy_bits(&partial_trace(m, Subsystem::First));

    // 2x2 blocks of the state over dot-1 indices: b[i][j][c][d] is the
    // ((i,c),(j,d)) element.
    let block = |i: usize, j: usize| -> [[C64; 2]; 2] {
        [
            [m[(2 * i, 2 * j)], m[(2 * i, 2 * j + 1)]],
            [m[(2 * i + 1, 2 * j)], m[(2 * i + 1, 2 * j + 1)]],
        ]
    };
    let b00 = block(0, 0);
    let b01 = block(0, 1);
    let b10 = block(1, 0);
    let b11 = block(1, 1);
    let reduced = add(&b00, &b11);

    // Unnormalized post-measurement state of dot 2 when dot 1 projects
    // onto direction (theta, phi), and its entropy contribution
    // -sum lambda log2(lambda / tr).
    let conditional_entropy = |theta: f64, phi: f64| -> f64 {
        let half_cos = (0.5 * theta).cos();
        let half_sin = (0.5 * theta).sin();
        let cc = half_cos * half_cos;
        let ss = half_sin * half_sin;
        let cs = half_cos * half_sin;
        let phase = c64(phi.cos(), phi.sin());
        let mut plus = [[c64(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                plus[r][c] = b00[r][c] * cc
                    + b01[r][c] * (phase * cs)
                    + b10[r][c] * (phase.conj() * cs)
                    + b11[r][c] * ss;
            }
        }
        let minus = sub(&reduced, &plus);
        branch_entropy(&plus) + branch_entropy(&minus)
    };

    let mut best_value = f64::INFINITY;
    let mut best_theta = 0.0;
    let mut best_phi = 0.0;
    for i in 0..options.theta_steps {
        let theta = PI * (i as f64 + 0.5) / options.theta_steps as f64;
        for j in 0..options.phi_steps {
            let phi = 2.0 * PI * j as f64 / options.phi_steps as f64;
            let value = conditional_entropy(theta, phi);
            if value < best_value {
                best_value = value;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    let mut theta_step = PI / options.theta_steps as f64;
    let mut phi_step = 2.0 * PI / options.phi_steps as f64;
    while theta_step.max(phi_step) > options.refine_tolerance {
        let neighbors = [
            (best_theta + theta_step, best_phi),
            (best_theta - theta_step, best_phi),
            (best_theta, best_phi + phi_step),
            (best_theta, best_phi - phi_step),
        ];
        let mut improved = false;
        for (theta, phi) in neighbors {
            let value = conditional_entropy(theta, phi);
            if value < best_value {
                best_value = value;
                best_theta = theta;
                best_phi = phi;
                improved = true;
            }
        }
        if !improved {
            theta_step *= 0.5;
            phi_step *= 0.5;
        }
    }

    (s_first - s_total + best_value).max(0.0)
}

fn add(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

fn sub(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

/// -sum lambda log2(lambda / tr) over the eigenvalues of a Hermitian 2x2
/// branch matrix with non-negative trace; zero-probability branches
/// contribute nothing.
fn branch_entropy(m: &[[C64; 2]; 2]) -> f64 {
    let d0 = m[0][0].re;
    let d1 = m[1][1].re;
    let weight = d0 + d1;
    if weight <= 0.0 {
        return 0.0;
    }
    let mean = 0.5 * (d0 + d1);
    let half_gap = 0.5 * (d0 - d1);
    let radius = (half_gap * half_gap + m[0][1].norm_sqr()).sqrt();
    let mut acc = 0.0;
    for lambda in [mean + radius, mean - radius] {
        if lambda > 0.0 {
            acc -= lambda * (lambda / weight).log2();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::model::{thermal_state, ModelParams};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn luo_reference_values() {
        for bell in [
            DensityMatrix::bell_phi_plus(),
            DensityMatrix::bell_psi_minus(),
        ] {
            assert_close(discord_luo(&bell).unwrap(), 1.0, 1e-12);
        }
        assert_close(
            discord_luo(&DensityMatrix::maximally_mixed()).unwrap(),
            0.0,
            1e-12,
        );
    }

    #[test]
    fn luo_rejects_states_with_local_polarization() {
        let rho = thermal_state(ModelParams::new(6.0, 9.0, 1.0).unwrap());
        match discord_luo(&rho).unwrap_err() {
            Error::BellDiagonalityViolated { bloch_norm } => assert!(bloch_norm > 1e-3),
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn numeric_reference_values() {
        for bell in [
            DensityMatrix::bell_phi_plus(),
            DensityMatrix::bell_phi_minus(),
            DensityMatrix::bell_psi_plus(),
            DensityMatrix::bell_psi_minus(),
        ] {
            assert_close(discord_numeric(&bell, DiscordOptions::default()), 1.0, 1e-9);
        }
        assert_close(
            discord_numeric(&DensityMatrix::maximally_mixed(), DiscordOptions::default()),
            0.0,
            1e-12,
        );
    }

    #[test]
    fn numeric_vanishes_on_product_states() {
        let a = ComplexMatrix::from_real_rows(&[&[0.8, 0.1], &[0.1, 0.2]]);
        let b = ComplexMatrix::from_real_rows(&[&[0.4, 0.0], &[0.0, 0.6]]);
        let rho = DensityMatrix::from_product(&a, &b).unwrap();
        assert!(discord_numeric(&rho, DiscordOptions::default()) < 1e-9);
    }

    #[test]
    fn numeric_matches_luo_on_bell_diagonal_states() {
        let cases = [
            (0.3, 0.2, 0.1),
            (-0.5, 0.4, 0.2),
            (0.9, -0.8, 0.7),
            (0.0, 0.0, 0.5),
            (-0.25, -0.25, -0.25),
        ];
        for (c1, c2, c3) in cases {
            let rho = DensityMatrix::bell_diagonal(c1, c2, c3).unwrap();
            let reference = discord_luo(&rho).unwrap();
            let numeric = discord_numeric(&rho, DiscordOptions::default());
            assert_close(numeric, reference, 1e-8);
        }
    }

    #[test]
    fn numeric_is_deterministic() {
        let rho = thermal_state(ModelParams::new(6.0, 9.0, 2.0).unwrap());
        let a = discord_numeric(&rho, DiscordOptions::default());
        let b = discord_numeric(&rho, DiscordOptions::default());
        assert!(a.to_bits() == b.to_bits());
    }

    #[test]
    fn coarser_grids_still_find_the_same_minimum() {
        let rho = thermal_state(ModelParams::new(6.0, 9.0, 4.0).unwrap());
        let fine = discord_numeric(&rho, DiscordOptions::default());
        let coarse = discord_numeric(
            &rho,
            DiscordOptions {
                theta_steps: 16,
                phi_steps: 32,
                refine_tolerance: 1e-7,
            },
        );
        assert_close(fine, coarse, 1e-7);
    }
}
