use super::SpectrumError;
use std::fmt;
use std::str::FromStr;

/// Physical parameters in natural units (ħ = c = 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    m: f64,
    lambda: f64,
    zeta: f64,
}

fn positive(name: &str, v: f64) -> Result<f64, SpectrumError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(SpectrumError::InvalidParams(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl ModelParams {
    /// From the mass and the potential slope λ (units of mass²).
    pub fn from_lambda(m: f64, lambda: f64) -> Result<Self, SpectrumError> {
        let m = positive("m", m)?;
        let lambda = positive("lambda", lambda)?;
        Ok(Self {
            m,
            lambda,
            zeta: m * m / lambda,
        })
    }

    /// From the mass and ζ = m²/λ.
    pub fn from_zeta(m: f64, zeta: f64) -> Result<Self, SpectrumError> {
        let m = positive("m", m)?;
        let zeta = positive("zeta", zeta)?;
        Ok(Self {
            m,
            lambda: m * m / zeta,
            zeta,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Dimensionless coupling g = λ/m² = 1/ζ.
    pub fn g(&self) -> f64 {
        1.0 / self.zeta
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Compton wavelength 1/m.
    pub fn lambda_c(&self) -> f64 {
        1.0 / self.m
    }

    /// `m + S(x)`.
    pub fn effective_mass(&self, x: f64) -> f64 {
        self.m + self.lambda * x.abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Factor applied to the half-line solution at position `x`.
    pub fn extension_sign(self, x: f64) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity '{other}' (expected even|odd)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn factor(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }
}

impl fmt::Display for EnergySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergySign::Positive => "+",
            EnergySign::Negative => "-",
        })
    }
}

impl FromStr for EnergySign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" | "positive" => Ok(EnergySign::Positive),
            "-" | "minus" | "negative" => Ok(EnergySign::Negative),
            other => Err(format!("unknown energy sign '{other}' (expected +|-)")),
        }
    }
}
