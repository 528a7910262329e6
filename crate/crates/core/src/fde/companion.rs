//! Reduction of a multiterm FDE to a companion-form linear system of order
//! 1/q: with α = p/q, y_1 = y and y_{j+1} = D^(1/q) y_j, the chain closes
//! after N = n·p steps through the original equation.

use super::{Forcing, LinearFdeSystem, MultitermFde, ScalarForcing};
use crate::error::{MlError, Result};
use ndarray::{Array1, Array2};

/// Companion reduction output: the order-1/q system, the read-out component
/// of the original unknown, and the forcing direction e_N / a_n.
#[derive(Debug, Clone)]
pub struct CompanionSystem {
    pub system: LinearFdeSystem,
    /// Component of Y(t) holding y(t).
    pub readout: usize,
    /// Forcing injection direction (last unit vector scaled by 1/a_n).
    pub direction: Array1<f64>,
}

pub fn companion_from_multiterm(mt: &MultitermFde) -> Result<CompanionSystem> {
    let n = mt.a.len() - 1;
    let p = mt.alpha_p as usize;
    let q = mt.alpha_q as usize;
    let an = mt.a[n];
    let big_n = n * p;
    if big_n == 0 {
        return Err(MlError::InvalidArgument("empty companion system".into()));
    }

    let mut a = Array2::zeros((big_n, big_n));
    for j in 0..big_n - 1 {
        a[[j, j + 1]] = 1.0;
    }
    // Last row from a_n D^(nα) y = f - Σ_{k<n} a_k D^(kα) y; the D^(kα)
    // derivative sits at chain position k·p.
    for k in 0..n {
        a[[big_n - 1, k * p]] = -mt.a[k] / an;
    }

    let mut direction = Array1::zeros(big_n);
    direction[big_n - 1] = 1.0 / an;

    // Y_0: component i holds (D^(i/q) y)(0); the Caputo derivative of
    // fractional order vanishes at 0 for continuous y, so only integer
    // orders i = l·q inherit the initial values b_l.
    let mut y0 = Array1::zeros(big_n);
    for (l, &bl) in mt.b.iter().enumerate() {
        let idx = l * q;
        if idx < big_n {
            y0[idx] = bl;
        }
    }

    let forcing = match &mt.forcing {
        ScalarForcing::None => Forcing::None,
        ScalarForcing::Polynomial(c) => {
            Forcing::Polynomial { coeffs: c.clone(), direction: direction.clone() }
        }
        ScalarForcing::Sampled(f) => {
            let f = f.clone();
            let dir = direction.clone();
            Forcing::Sampled(std::sync::Arc::new(move |t| dir.map(|&d| d * f(t))))
        }
    };

    let system = LinearFdeSystem::new(a, 1.0 / q as f64, vec![y0], forcing)?;
    Ok(CompanionSystem { system, readout: 0, direction })
}
