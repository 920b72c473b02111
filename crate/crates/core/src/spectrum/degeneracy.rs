use super::SpectrumError;
use crate::laguerre::{consecutive_resultant, decimal_digits, min_root_separation};
use crate::Execution;
use num_traits::Zero;

/// One row of the degeneracy scan.
#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyEntry {
    pub n: usize,
    /// Exact resultant of `n!·L_n^{(1)}` and `(n−1)!·L_{n−1}^{(1)}` is nonzero.
    pub resultant_nonzero: bool,
    /// Decimal digits of |resultant|.
    pub resultant_digits: usize,
    /// Closest pair of zeros of `L_n^{(1)}` and `L_{n−1}^{(1)}`; `None` for
    /// n = 1, where `L_0^{(1)} = 1` has no zeros.
    pub min_separation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyReport {
    pub entries: Vec<DegeneracyEntry>,
}

impl DegeneracyReport {
    /// No n in the scan admits a two-fold (even + odd) degeneracy.
    pub fn nondegenerate(&self) -> bool {
        self.entries.iter().all(|e| e.resultant_nonzero)
    }
}

/// For every n in `1..=n_max`, proves or refutes that `L_n^{(1)}` and
/// `L_{n−1}^{(1)}` share a zero, i.e. that φ and φ′ can vanish together at
/// the origin.
pub fn degeneracy_scan(n_max: usize, exec: Execution) -> Result<DegeneracyReport, SpectrumError> {
    if n_max == 0 {
        return Err(SpectrumError::InvalidParams("n_max must be >= 1".into()));
    }
    let entries = exec
        .map(
            (1..=n_max).collect(),
            |n| -> Result<DegeneracyEntry, SpectrumError> {
                let r = consecutive_resultant(n)?;
                Ok(DegeneracyEntry {
                    n,
                    resultant_nonzero: !r.is_zero(),
                    resultant_digits: decimal_digits(&r),
                    min_separation: min_root_separation(n)?,
                })
            },
        )
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DegeneracyReport { entries })
}
