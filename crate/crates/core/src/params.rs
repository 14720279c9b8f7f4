use crate::error::{Error, Result};

/// Dimensional description of the walk: speed, turning rate and domain length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimensional {
    pub gamma: f64,
    pub mu: f64,
    pub length: f64,
}

/// The nondimensional speed `S = gamma / (mu * L)` that fully determines the
/// rescaled system on `(-1/2, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    s: f64,
    dimensional: Option<Dimensional>,
}

impl ModelParams {
    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "S must be positive and finite, got {s}"
            )));
        }
        Ok(Self { s, dimensional: None })
    }

    pub fn from_dimensional(gamma: f64, mu: f64, length: f64) -> Result<Self> {
        for (name, value) in [("gamma", gamma), ("mu", mu), ("L", length)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        let mut params = Self::new(gamma / (mu * length))?;
        params.dimensional = Some(Dimensional { gamma, mu, length });
        Ok(params)
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn dimensional(&self) -> Option<Dimensional> {
        self.dimensional
    }

    /// Time after which initial irregularities have left the domain.
    pub fn washout_time(&self) -> f64 {
        1.0 / self.s
    }
}

/// Symmetry class of an eigenfunction, tied to which characteristic equation
/// generated it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `sin(nu) = S nu`, `lambda = -1 - cos(nu)`, `v(x) = u(-x)`.
    Symmetric,
    /// `sin(nu) = -S nu`, `lambda = -1 + cos(nu)`, `v(x) = -u(-x)`.
    Antisymmetric,
}

impl Parity {
    pub fn of_index(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Symmetric
        } else {
            Parity::Antisymmetric
        }
    }

    /// `+1` for symmetric, `-1` for antisymmetric.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }
}
