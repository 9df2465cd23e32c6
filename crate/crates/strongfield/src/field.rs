//! Laser pulse model: sin²-envelope field, closed-form vector potential, and
//! the Volkov action, all analytic in complex time.
//!
//! The pulse is linearly polarized along z and defined on the window
//! [0, T_p], T_p = n_cycles·2π/ω:
//!
//! ```text
//! E(t) = e0 · sin²(ωt / (2 n_cycles)) · cos(ωt + φ),   A(t) = −∫₀ᵗ E(τ) dτ
//! ```
//!
//! The envelope splits the field into three pure cosines (frequencies ω and
//! ω(1 ± 1/n_cycles)), so A(t), ∫A and ∫A² all have elementary closed forms.
//! Those closed forms are entire functions of t — exactly what the complex
//! saddle-point solver needs — and for integer n_cycles ≥ 2 they give
//! A(0) = A(T_p) = 0 identically, i.e. the pulse carries no DC displacement.
//!
//! Conventions: atomic units, electron charge e = −1, so the instantaneous
//! (kinetic) momentum is p − eA(t) = p + A(t)ẑ and the Volkov action reads
//!
//! ```text
//! S_p(t) = ½∫₀ᵗ (p − eA(τ))² dτ = p²t/2 + p_z·∫₀ᵗA + ½∫₀ᵗA².
//! ```

use num_complex::Complex64;
use thiserror::Error;

use crate::Vec3;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("invalid pulse parameters: {0}")]
    InvalidPulse(String),
}

/// Carrier/envelope/CEP description of the laser pulse (atomic units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    /// Peak field strength E₀ ≥ 0.
    pub e0: f64,
    /// Carrier angular frequency ω > 0.
    pub omega: f64,
    /// Number of optical cycles under the envelope (≥ 2, so that the envelope
    /// sidebands ω(1 ± 1/n) stay distinct from 0 and the endpoint identities
    /// A(0) = A(T_p) = 0 hold in closed form).
    pub n_cycles: u32,
    /// Carrier-envelope phase φ (rad).
    pub cep: f64,
}

impl PulseParams {
    pub fn validate(&self) -> Result<(), FieldError> {
        if !self.e0.is_finite() || self.e0 < 0.0 {
            return Err(FieldError::InvalidPulse(format!(
                "e0 must be finite and non-negative, got {}",
                self.e0
            )));
        }
        if !self.omega.is_finite() || self.omega <= 0.0 {
            return Err(FieldError::InvalidPulse(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if self.n_cycles < 2 {
            return Err(FieldError::InvalidPulse(format!(
                "n_cycles must be at least 2, got {}",
                self.n_cycles
            )));
        }
        if !self.cep.is_finite() {
            return Err(FieldError::InvalidPulse("cep must be finite".into()));
        }
        Ok(())
    }

    /// Optical period T = 2π/ω.
    #[must_use]
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Pulse duration T_p = n_cycles·T.
    #[must_use]
    pub fn duration(&self) -> f64 {
        f64::from(self.n_cycles) * self.period()
    }

    /// Ponderomotive energy U_p = E₀²/(4ω²).
    #[must_use]
    pub fn ponderomotive_energy(&self) -> f64 {
        self.e0 * self.e0 / (4.0 * self.omega * self.omega)
    }
}

/// One term `amp·cos(freq·t + phase)` of a trigonometric series.
#[derive(Debug, Clone, Copy)]
struct CosTerm {
    amp: f64,
    freq: f64,
    phase: f64,
}

/// `poly[0] + poly[1]·t + poly[2]·t² + Σ amp·cos(freq·t + phase)`.
///
/// Closed under antidifferentiation (for polynomial degree ≤ 1) and under
/// squaring (for pure constant + cosines), which is all the pulse needs.
#[derive(Debug, Clone)]
struct TrigSeries {
    poly: [f64; 3],
    terms: Vec<CosTerm>,
}

impl TrigSeries {
    fn eval(&self, t: f64) -> f64 {
        let mut v = self.poly[0] + t * (self.poly[1] + t * self.poly[2]);
        for term in &self.terms {
            v += term.amp * (term.freq * t + term.phase).cos();
        }
        v
    }

    fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut v = t * (t * self.poly[2] + self.poly[1]) + self.poly[0];
        for term in &self.terms {
            v += term.amp * (t * term.freq + term.phase).cos();
        }
        v
    }

    /// Antiderivative F with F(0) = 0. Requires `poly[2] == 0`.
    fn antiderivative(&self) -> TrigSeries {
        assert_eq!(self.poly[2], 0.0, "antiderivative implemented for degree <= 1 only");
        let terms: Vec<CosTerm> = self
            .terms
            .iter()
            .map(|t| CosTerm {
                amp: t.amp / t.freq,
                freq: t.freq,
                phase: t.phase - std::f64::consts::FRAC_PI_2,
            })
            .collect();
        // Constant chosen so that F(0) = 0, using the same cosine evaluations
        // the series will use later (exact cancellation at t = 0).
        let c0: f64 = -terms.iter().map(|t| t.amp * t.phase.cos()).sum::<f64>();
        TrigSeries { poly: [c0, self.poly[0], 0.5 * self.poly[1]], terms }
    }

    /// Pointwise square. Requires a pure `constant + cosines` series.
    fn square(&self) -> TrigSeries {
        assert_eq!(self.poly[1], 0.0, "square implemented for constant + cosines only");
        assert_eq!(self.poly[2], 0.0, "square implemented for constant + cosines only");
        let c = self.poly[0];
        let mut out = TrigSeries { poly: [c * c, 0.0, 0.0], terms: Vec::new() };
        // Cross terms with the constant.
        for t in &self.terms {
            out.push_term(2.0 * c * t.amp, t.freq, t.phase);
        }
        // cos·cos products over all ordered pairs, each with weight ½:
        // cos(a)cos(b) = ½[cos(a−b) + cos(a+b)].
        for ti in &self.terms {
            for tj in &self.terms {
                let amp = 0.5 * ti.amp * tj.amp;
                out.push_term(0.5 * amp * 2.0, ti.freq + tj.freq, ti.phase + tj.phase);
                let df = ti.freq - tj.freq;
                let dp = ti.phase - tj.phase;
                if df == 0.0 {
                    out.poly[0] += amp * dp.cos();
                } else {
                    out.push_term(amp, df, dp);
                }
            }
        }
        out
    }

    fn push_term(&mut self, amp: f64, freq: f64, phase: f64) {
        if amp == 0.0 {
            return;
        }
        // Normalize to positive frequency: cos is even.
        if freq < 0.0 {
            self.terms.push(CosTerm { amp, freq: -freq, phase: -phase });
        } else if freq == 0.0 {
            self.poly[0] += amp * phase.cos();
        } else {
            self.terms.push(CosTerm { amp, freq, phase });
        }
    }
}

/// The field integrals entering the Volkov action at one instant:
/// A(t), ∫₀ᵗA dτ and ∫₀ᵗA² dτ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldIntegrals {
    pub a: f64,
    pub int_a: f64,
    pub int_a_sq: f64,
}

/// A compiled sin² pulse: validated parameters plus the closed-form series
/// for A, ∫A and ∫A².
#[derive(Debug, Clone)]
pub struct Pulse {
    params: PulseParams,
    a: TrigSeries,
    int_a: TrigSeries,
    int_a_sq: TrigSeries,
    /// Frozen values at t = T_p, so the window tails cost nothing.
    int_a_end: f64,
    int_a_sq_end: f64,
}

impl Pulse {
    pub fn new(params: PulseParams) -> Result<Self, FieldError> {
        params.validate()?;
        let n = f64::from(params.n_cycles);
        let (e0, w, phi) = (params.e0, params.omega, params.cep);
        // E(t) = e0/2·cos(ωt+φ) − e0/4·cos(ω₊t+φ) − e0/4·cos(ω₋t+φ),
        // with ω± = ω(1 ± 1/n). All three frequencies are positive and
        // pairwise distinct for n ≥ 2.
        let e_series = TrigSeries {
            poly: [0.0; 3],
            terms: vec![
                CosTerm { amp: 0.5 * e0, freq: w, phase: phi },
                CosTerm { amp: -0.25 * e0, freq: w * (1.0 + 1.0 / n), phase: phi },
                CosTerm { amp: -0.25 * e0, freq: w * (1.0 - 1.0 / n), phase: phi },
            ],
        };
        let mut a = e_series.antiderivative();
        a.poly[0] = -a.poly[0];
        for t in &mut a.terms {
            t.amp = -t.amp;
        }
        let int_a = a.antiderivative();
        let int_a_sq = a.square().antiderivative();
        let t_p = params.duration();
        let int_a_end = int_a.eval(t_p);
        let int_a_sq_end = int_a_sq.eval(t_p);
        Ok(Pulse { params, a, int_a, int_a_sq, int_a_end, int_a_sq_end })
    }

    #[must_use]
    pub fn params(&self) -> &PulseParams {
        &self.params
    }

    #[must_use]
    pub fn duration(&self) -> f64 {
        self.params.duration()
    }

    #[must_use]
    pub fn period(&self) -> f64 {
        self.params.period()
    }

    /// E(t) along the polarization axis; identically zero outside [0, T_p].
    #[must_use]
    pub fn electric_field(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= self.duration() {
            return 0.0;
        }
        let p = &self.params;
        let env = (0.5 * p.omega * t / f64::from(p.n_cycles)).sin();
        p.e0 * env * env * (p.omega * t + p.cep).cos()
    }

    /// The entire-function continuation of E(t) (no window).
    #[must_use]
    pub fn electric_field_complex(&self, t: Complex64) -> Complex64 {
        let p = &self.params;
        let env = (t * (0.5 * p.omega / f64::from(p.n_cycles))).sin();
        env * env * (t * p.omega + p.cep).cos() * p.e0
    }

    /// A(t) = −∫₀ᵗE; exactly zero at t ≤ 0 and t ≥ T_p.
    #[must_use]
    pub fn vector_potential(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= self.duration() {
            return 0.0;
        }
        self.a.eval(t)
    }

    /// The entire-function continuation of A(t) (no window), for complex
    /// saddle times.
    #[must_use]
    pub fn vector_potential_complex(&self, t: Complex64) -> Complex64 {
        self.a.eval_complex(t)
    }

    /// A(t), ∫₀ᵗA and ∫₀ᵗA² with the window applied (the integrals keep their
    /// final values beyond T_p, where A vanishes).
    #[must_use]
    pub fn integrals(&self, t: f64) -> FieldIntegrals {
        if t <= 0.0 {
            FieldIntegrals { a: 0.0, int_a: 0.0, int_a_sq: 0.0 }
        } else if t >= self.duration() {
            FieldIntegrals { a: 0.0, int_a: self.int_a_end, int_a_sq: self.int_a_sq_end }
        } else {
            FieldIntegrals {
                a: self.a.eval(t),
                int_a: self.int_a.eval(t),
                int_a_sq: self.int_a_sq.eval(t),
            }
        }
    }

    /// Volkov action S_p(t) = ½∫₀ᵗ(p − eA)²dτ for real t (real-valued there).
    #[must_use]
    pub fn action(&self, p: Vec3, t: f64) -> f64 {
        let fi = self.integrals(t);
        0.5 * p.norm_sq() * t + p.z * fi.int_a + 0.5 * fi.int_a_sq
    }

    /// Analytic continuation of the action to complex t (entire closed form;
    /// the finite pulse support is a real-axis statement and is ignored here).
    #[must_use]
    pub fn action_complex(&self, p: Vec3, t: Complex64) -> Complex64 {
        t * (0.5 * p.norm_sq())
            + self.int_a.eval_complex(t) * p.z
            + self.int_a_sq.eval_complex(t) * 0.5
    }

    /// Instantaneous velocity p − eA(t) = p + A(t)ẑ at real t.
    #[must_use]
    pub fn velocity(&self, p: Vec3, t: f64) -> Vec3 {
        Vec3 { x: p.x, y: p.y, z: p.z + self.vector_potential(t) }
    }
}

/// A monochromatic field A(t) = A₀cos(ωt)ẑ, E(t) = A₀ω·sin(ωt)ẑ, used for the
/// closed-form saddle benchmarks. No envelope, no window: the `n_cycles`
/// field only bounds the real-time window in which saddle points are kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monochromatic {
    /// Vector-potential amplitude A₀ = E₀/ω.
    pub a0: f64,
    pub omega: f64,
    /// Number of optical cycles of the saddle search window [0, n·2π/ω].
    pub n_cycles: u32,
}

impl Monochromatic {
    #[must_use]
    pub fn duration(&self) -> f64 {
        f64::from(self.n_cycles) * 2.0 * std::f64::consts::PI / self.omega
    }

    #[must_use]
    pub fn vector_potential_complex(&self, t: Complex64) -> Complex64 {
        (t * self.omega).cos() * self.a0
    }

    #[must_use]
    pub fn electric_field_complex(&self, t: Complex64) -> Complex64 {
        (t * self.omega).sin() * (self.a0 * self.omega)
    }

    /// S_p(t) in closed form: ∫A = A₀sin(ωt)/ω, ∫A² = A₀²(t/2 + sin(2ωt)/4ω).
    #[must_use]
    pub fn action_complex(&self, p: Vec3, t: Complex64) -> Complex64 {
        let w = self.omega;
        let int_a = (t * w).sin() * (self.a0 / w);
        let int_a_sq = (t * 0.5 + (t * (2.0 * w)).sin() / (4.0 * w)) * (self.a0 * self.a0);
        t * (0.5 * p.norm_sq()) + int_a * p.z + int_a_sq * 0.5
    }
}

/// Any laser field the saddle-point machinery can work on.
#[derive(Debug, Clone)]
pub enum LaserField {
    Pulse(Pulse),
    Monochromatic(Monochromatic),
}

impl LaserField {
    #[must_use]
    pub fn omega(&self) -> f64 {
        match self {
            LaserField::Pulse(p) => p.params().omega,
            LaserField::Monochromatic(m) => m.omega,
        }
    }

    /// Peak field strength (sets the tunneling scale γ = κω/E₀).
    #[must_use]
    pub fn e0(&self) -> f64 {
        match self {
            LaserField::Pulse(p) => p.params().e0,
            LaserField::Monochromatic(m) => m.a0 * m.omega,
        }
    }

    /// Real-time window in which saddle points are sought and kept.
    #[must_use]
    pub fn duration(&self) -> f64 {
        match self {
            LaserField::Pulse(p) => p.duration(),
            LaserField::Monochromatic(m) => m.duration(),
        }
    }

    #[must_use]
    pub fn vector_potential_complex(&self, t: Complex64) -> Complex64 {
        match self {
            LaserField::Pulse(p) => p.vector_potential_complex(t),
            LaserField::Monochromatic(m) => m.vector_potential_complex(t),
        }
    }

    #[must_use]
    pub fn electric_field_complex(&self, t: Complex64) -> Complex64 {
        match self {
            LaserField::Pulse(p) => p.electric_field_complex(t),
            LaserField::Monochromatic(m) => m.electric_field_complex(t),
        }
    }

    #[must_use]
    pub fn action_complex(&self, p: Vec3, t: Complex64) -> Complex64 {
        match self {
            LaserField::Pulse(f) => f.action_complex(p, t),
            LaserField::Monochromatic(m) => m.action_complex(p, t),
        }
    }
}
