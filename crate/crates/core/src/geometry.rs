//! Contraction-side data and the inequalities it must satisfy.
//!
//! A [`ContractionRecord`] is a pure integer record of an extremal
//! contraction: the ambient dimension, the dimensions of a component `S` of
//! the exceptional locus and of its image, optionally the length of the
//! ray, the ray's pairing functional on `H^2`, and fiber-dimension strata.
//! The checks here never compute the contraction itself; they verify the
//! dimension and length bounds against the record, and `cross_check`
//! confronts the predicted L-support with the multiplicity actually found
//! in the discriminants.

use crate::exactmath::{linear_multiplicity, LinearForm, Multiplicity};
use crate::gca::CohomologyRing;
use crate::lefschetz::{self, full_discriminant};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("record has no length")]
    MissingLength,
    #[error("record has no strata")]
    MissingStrata,
    #[error("record has no ray")]
    MissingRay,
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error(transparent)]
    Lefschetz(#[from] lefschetz::Error),
}

/// Integer data of one extremal contraction, as found in the literature.
/// `dim_s` is the dimension of a component `S` of the exceptional locus
/// (or of the whole space for fiber-type contractions), `dim_phi_s` the
/// dimension of its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionRecord {
    pub n: u32,
    pub dim_s: u32,
    pub dim_phi_s: u32,
    /// Minimal anticanonical degree of a rational curve in the ray;
    /// 0 for crepant rays, at least 1 for Fano-Mori rays.
    pub length: Option<u32>,
    /// The ray's pairing functional on `H^2`.
    pub ray: Option<LinearForm>,
    /// Pairs `(k, dim Z_k)` where `Z_k` is the locus of fibers of
    /// dimension at least `k`.
    pub strata: Option<Vec<(u32, u32)>>,
}

impl ContractionRecord {
    pub fn new(n: u32, dim_s: u32, dim_phi_s: u32) -> Self {
        ContractionRecord {
            n,
            dim_s,
            dim_phi_s,
            length: None,
            ray: None,
            strata: None,
        }
    }

    pub fn with_length(mut self, length: u32) -> Self {
        self.length = Some(length);
        self
    }

    pub fn with_ray(mut self, ray: LinearForm) -> Self {
        self.ray = Some(ray);
        self
    }

    pub fn with_strata(mut self, strata: Vec<(u32, u32)>) -> Self {
        self.strata = Some(strata);
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.dim_phi_s <= self.dim_s && self.dim_s <= self.n) {
            return Err(Error::InvalidRecord(format!(
                "need 0 <= dim phi(S) <= dim S <= n, got {} <= {} <= {}",
                self.dim_phi_s, self.dim_s, self.n
            )));
        }
        if let Some(strata) = &self.strata {
            for &(k, z) in strata {
                if z > self.n {
                    return Err(Error::InvalidRecord(format!(
                        "stratum Z_{k} has dimension {z} > n = {}",
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Predicted L-support of the ray: when `2 dim S - dim phi(S) >= n + m`
/// for some `m >= 1`, the ray has type `k = 2 dim S - n` and multiplicity
/// at least `m`. Returns `None` when the inequality gives no prediction.
pub fn predicted_support(rec: &ContractionRecord) -> Result<Option<(u32, u32)>, Error> {
    rec.validate()?;
    let m = 2 * rec.dim_s as i64 - rec.dim_phi_s as i64 - rec.n as i64;
    if m >= 1 {
        let k = 2 * rec.dim_s as i64 - rec.n as i64;
        Ok(Some((k as u32, m as u32)))
    } else {
        Ok(None)
    }
}

/// The fiber-locus inequality `2 dim S - dim phi(S) >= n + l - 1`.
pub fn fiber_locus_check(rec: &ContractionRecord) -> Result<bool, Error> {
    rec.validate()?;
    let length = rec.length.ok_or(Error::MissingLength)?;
    Ok(2 * rec.dim_s as i64 - rec.dim_phi_s as i64 >= rec.n as i64 + length as i64 - 1)
}

/// The length bound `m >= l - 1` on an observed multiplicity.
pub fn length_bound(rec: &ContractionRecord, observed_multiplicity: u32) -> Result<bool, Error> {
    rec.validate()?;
    let length = rec.length.ok_or(Error::MissingLength)?;
    Ok(observed_multiplicity as i64 >= length as i64 - 1)
}

/// Per-stratum check of `dim Z_k <= n - 2k`.
pub fn strata_check(rec: &ContractionRecord) -> Result<Vec<(u32, u32, bool)>, Error> {
    rec.validate()?;
    let strata = rec.strata.as_ref().ok_or(Error::MissingStrata)?;
    Ok(strata
        .iter()
        .map(|&(k, z)| (k, z, z as i64 <= rec.n as i64 - 2 * k as i64))
        .collect())
}

/// Outcome of confronting a record's prediction with the discriminants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    /// `(k, m)` from [`predicted_support`], if any.
    pub prediction: Option<(u32, u32)>,
    /// Multiplicity of the ray in `delta_k` at the predicted level.
    pub observed: Option<Multiplicity>,
    /// Full observed support of the ray, informational.
    pub support: Vec<(u32, u32)>,
    /// With a prediction: observed multiplicity meets the lower bound.
    /// Without one the report is informational and `ok` holds.
    pub ok: bool,
}

/// Run [`predicted_support`] and compare with the multiplicities actually
/// found in the ring's discriminants.
pub fn cross_check(ring: &CohomologyRing, rec: &ContractionRecord) -> Result<CrossReport, Error> {
    rec.validate()?;
    let ray = rec.ray.as_ref().ok_or(Error::MissingRay)?;
    let prediction = predicted_support(rec)?;
    let ray_form = lefschetz::is_l_supported(ring, ray)?;
    let support = ray_form.support.clone();

    match prediction {
        Some((k, m_lower)) => {
            let discs = full_discriminant(ring);
            let disc = discs
                .iter()
                .find(|d| d.k == k)
                .ok_or_else(|| Error::InvalidRecord(format!("predicted level {k} not in 1..=n")))?;
            let observed = if disc.is_zero {
                Multiplicity::Infinite
            } else {
                linear_multiplicity(&disc.delta, &ray_form.form).map_err(lefschetz::Error::Math)?
            };
            Ok(CrossReport {
                prediction,
                observed: Some(observed),
                support,
                ok: observed.at_least(m_lower),
            })
        }
        None => Ok(CrossReport {
            prediction: None,
            observed: None,
            support,
            ok: true,
        }),
    }
}
