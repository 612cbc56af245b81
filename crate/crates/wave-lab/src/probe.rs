//! Pairing an interaction wave with the oscillatory probe and fitting
//! the large-frequency decay of the indicator.

use crate::error::WaveError;
use crate::field::WaveField;
use crate::sources::PointProbe;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct DecayFit {
    /// fitted decay order of `|Theta_tau| ~ tau^{-m}`
    pub m_hat: f64,
    pub values: Vec<(f64, f64)>,
    /// all pairings sat below the floor: the field is smooth at the probe
    pub below_floor: bool,
}

/// `Theta_tau = <F_tau, M>` over the grid.
pub fn pair_probe(m: &WaveField, probe: &PointProbe, tau: f64) -> Complex64 {
    let g = &m.grid;
    let cell = g.dt * g.h.powi(g.dim as i32);
    let mut acc = Complex64::new(0.0, 0.0);
    // restrict the sweep to the probe envelope
    let r = probe.radius;
    let n_lo = (((probe.base[0] - r) / g.dt).floor().max(0.0)) as usize;
    let n_hi = (((probe.base[0] + r) / g.dt).ceil() as usize).min(g.nt - 1);
    for n in n_lo..=n_hi {
        let t = g.t(n);
        for j in 0..g.n[1] {
            let y = g.y(j);
            if g.dim == 2 && (y - probe.base[2]).abs() > r {
                continue;
            }
            for i in 0..g.n[0] {
                let x = g.x(i);
                if (x - probe.base[1]).abs() > r {
                    continue;
                }
                let f = probe.eval(tau, t, x, y);
                if f != Complex64::new(0.0, 0.0) {
                    acc += f.conj() * m.at(n, i, j);
                }
            }
        }
    }
    acc * cell
}

/// Fit the decay order over the given frequency ladder.
pub fn probe_indicator(
    m: &WaveField,
    probe: &PointProbe,
    taus: &[f64],
    floor: f64,
) -> Result<DecayFit, WaveError> {
    if taus.len() < 3 {
        return Err(WaveError::TooFewSamples {
            what: "decay fit",
            needed: 3,
            got: taus.len(),
        });
    }
    let values: Vec<(f64, f64)> = taus
        .iter()
        .map(|&tau| (tau, pair_probe(m, probe, tau).norm()))
        .collect();
    let below_floor = values.iter().all(|&(_, v)| v < floor);
    let (slope, _) = crate::expansion::log_log_fit(&values);
    Ok(DecayFit {
        m_hat: -slope,
        values,
        below_floor,
    })
}
