/// Numerical tolerances used by validation and comparison routines.
///
/// Every check in the crate reads its threshold from here instead of a
/// literal, so callers can tighten or relax them per experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute entrywise tolerance for matrix equality.
    pub equality: f64,
    /// Maximum entrywise deviation of `A` from `A^dagger`.
    pub hermitian: f64,
    /// Maximum deviation of a density matrix trace from 1.
    pub trace: f64,
    /// Most negative eigenvalue accepted for a density matrix.
    pub psd: f64,
    /// Maximum entrywise deviation of `U^dagger U` from the identity.
    pub unitary: f64,
    /// Maximum deviation of a pure state's Euclidean norm from 1.
    pub norm: f64,
    /// Trace drift beyond which channel outputs are renormalized.
    pub renormalize: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            equality: 1e-10,
            hermitian: 1e-10,
            trace: 1e-10,
            psd: 1e-9,
            unitary: 1e-8,
            norm: 1e-10,
            renormalize: 1e-12,
        }
    }
}
