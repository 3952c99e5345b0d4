//! Schur roots, canonical decompositions of dimension vectors and the
//! prehomogeneous / almost prehomogeneous dichotomy for quivers without
//! relations.
//!
//! A canonical decomposition is found by sampling a generic representation,
//! splitting it, and then certifying the answer: every part must be a Schur
//! root and the generic ext between distinct parts must vanish. Splitting
//! runs over a prime field because summands of a generic representation can
//! be defined only over a field extension (a generic `(2,2)` Kronecker
//! representation is indecomposable over the rationals). Certification runs
//! over the field chosen in [`Sampling`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{FieldChoice, PrimeField, MIN_SAMPLING_PRIME};
use crate::quiver::{DimensionVector, Quiver, QuiverError};
use crate::rep::{
    derive_seed, generic_end_dim, generic_hom_ext, random_rep_in, sample_rng,
    split_indecomposables_in, RepError, Sampling, Splitting,
};

/// Fresh-seed retries after a failed certification.
pub const CERTIFICATION_RETRIES: u64 = 5;
/// Redraws of a generic point per sample until its split is all bricks.
const REDRAWS: usize = 30;
/// Random endomorphisms tried per summand before it is declared indecomposable.
const SPLIT_TRIALS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootsError {
    #[error("the quiver has an oriented cycle; this analysis needs an acyclic quiver")]
    CyclicQuiver,
    #[error("the dimension vector is zero")]
    ZeroVector,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("canonical decomposition could not be certified: {reason}")]
    CertificationFailed {
        decomposition: Box<CanonicalDecomposition>,
        reason: String,
    },
}

impl From<RepError> for RootsError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::CyclicQuiver => RootsError::CyclicQuiver,
            RepError::Quiver(q) => RootsError::Quiver(q),
            other => unreachable!("sampling only fails on input shape: {other}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootClass {
    Real,
    Isotropic,
    Imaginary,
    NotSchur,
}

impl RootClass {
    pub fn is_schur(self) -> bool {
        self != RootClass::NotSchur
    }
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootClass::Real => "Real Schur root",
            RootClass::Isotropic => "Isotropic Schur root",
            RootClass::Imaginary => "Imaginary Schur root",
            RootClass::NotSchur => "Not a Schur root",
        })
    }
}

fn check_input(q: &Quiver, b: &DimensionVector) -> Result<(), RootsError> {
    q.check_len(b.len())?;
    if !q.is_acyclic() {
        return Err(RootsError::CyclicQuiver);
    }
    Ok(())
}

/// Schur test by sampled `dim End`, then the sign of `<b, b>`.
pub fn classify_root(
    q: &Quiver,
    b: &DimensionVector,
    s: &Sampling,
) -> Result<RootClass, RootsError> {
    check_input(q, b)?;
    if b.is_zero() {
        return Err(RootsError::ZeroVector);
    }
    if generic_end_dim(q, b, s)? != 1 {
        return Ok(RootClass::NotSchur);
    }
    let e = q.euler_pairing(&b.to_i64(), &b.to_i64())?;
    Ok(match e {
        1 => RootClass::Real,
        0 => RootClass::Isotropic,
        e if e < 0 => RootClass::Imaginary,
        // <b,b> <= 1 for every Schur root
        _ => RootClass::NotSchur,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    /// Certified: every part Schur and all pairwise generic ext zero.
    Certified,
    /// Certification failed after all retries.
    Lowered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairExt {
    pub i: usize,
    pub j: usize,
    pub ext: usize,
}

/// Evidence collected by [`verify_canonical`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Certificate {
    pub classes: Vec<RootClass>,
    pub schur: Vec<bool>,
    pub ext: Vec<PairExt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub reason: Option<String>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    pub parts: Vec<DimensionVector>,
    pub certificate: Certificate,
    pub confidence: Confidence,
    /// Seed of the sampling round whose answer was kept.
    pub seed_used: u64,
    pub caveat: String,
}

pub const CANONICAL_CAVEAT: &str =
    "Monte Carlo: parts come from splitting sampled points; correctness rests on the certificate";

/// Check that `parts` is the canonical decomposition of `b`.
pub fn verify_canonical(
    q: &Quiver,
    parts: &[DimensionVector],
    b: &DimensionVector,
    s: &Sampling,
) -> Result<Verification, RootsError> {
    check_input(q, b)?;
    for p in parts {
        q.check_len(p.len())?;
    }
    let mut cert = Certificate::default();
    let total = DimensionVector::sum(b.len(), parts);
    if &total != b {
        return Ok(Verification {
            passed: false,
            reason: Some(format!("parts sum to {total}, not {b}")),
            certificate: cert,
        });
    }
    if let Some(z) = parts.iter().position(|p| p.is_zero()) {
        return Ok(Verification {
            passed: false,
            reason: Some(format!("part {z} is zero")),
            certificate: cert,
        });
    }

    let mut class_cache: BTreeMap<&DimensionVector, RootClass> = BTreeMap::new();
    for p in parts {
        let c = match class_cache.get(p) {
            Some(&c) => c,
            None => {
                let c = classify_root(q, p, s)?;
                class_cache.insert(p, c);
                c
            }
        };
        cert.classes.push(c);
        cert.schur.push(c.is_schur());
    }
    let mut ext_cache: BTreeMap<(&DimensionVector, &DimensionVector), usize> = BTreeMap::new();
    for (i, a) in parts.iter().enumerate() {
        for (j, c) in parts.iter().enumerate() {
            if i == j {
                continue;
            }
            let ext = match ext_cache.get(&(a, c)) {
                Some(&e) => e,
                None => {
                    let e = generic_hom_ext(q, a, c, s)?.1;
                    ext_cache.insert((a, c), e);
                    e
                }
            };
            cert.ext.push(PairExt { i, j, ext });
        }
    }
    let reason = if let Some(i) = cert.schur.iter().position(|&x| !x) {
        Some(format!("part {} is not a Schur root", parts[i]))
    } else {
        cert.ext
            .iter()
            .find(|e| e.ext != 0)
            .map(|e| format!("ext({}, {}) = {}", parts[e.i], parts[e.j], e.ext))
    };
    Ok(Verification {
        passed: reason.is_none(),
        reason,
        certificate: cert,
    })
}

fn splitting_field(s: &Sampling) -> PrimeField {
    match s.field {
        FieldChoice::Prime(p) => p,
        FieldChoice::Rational => PrimeField::new(MIN_SAMPLING_PRIME).expect("32003 is prime"),
    }
}

/// One Monte Carlo draw: redraw generic points until one splits into bricks.
fn draw(q: &Quiver, b: &DimensionVector, fp: &PrimeField, seed: u64, task: u64) -> Splitting {
    let mut rng = sample_rng(seed, task);
    let mut best: Option<Splitting> = None;
    for _ in 0..REDRAWS {
        let v = random_rep_in(fp, q, b, &mut rng);
        let split = split_indecomposables_in(fp, &v, SPLIT_TRIALS, &mut rng);
        if split.all_bricks() {
            return split;
        }
        if best
            .as_ref()
            .is_none_or(|cur| split.excess_end_dim() < cur.excess_end_dim())
        {
            best = Some(split);
        }
    }
    best.expect("at least one redraw")
}

/// Majority multiset over the draws; ties go to the smaller excess end
/// dimension, then to the lexicographically smaller multiset.
fn majority(draws: &[Splitting]) -> Vec<DimensionVector> {
    let mut tally: BTreeMap<Vec<DimensionVector>, (usize, usize)> = BTreeMap::new();
    for d in draws {
        let entry = tally.entry(d.dims()).or_insert((0, usize::MAX));
        entry.0 += 1;
        entry.1 = entry.1.min(d.excess_end_dim());
    }
    tally
        .into_iter()
        .min_by(|(ka, (ca, ea)), (kb, (cb, eb))| cb.cmp(ca).then(ea.cmp(eb)).then(ka.cmp(kb)))
        .map(|(k, _)| k)
        .unwrap_or_default()
}

fn sort_parts(mut parts: Vec<DimensionVector>) -> Vec<DimensionVector> {
    parts.sort_by(|a, b| b.cmp(a));
    parts
}

/// Canonical decomposition of `b` by sampling, splitting and certification.
pub fn canonical_decomposition(
    q: &Quiver,
    b: &DimensionVector,
    s: &Sampling,
) -> Result<CanonicalDecomposition, RootsError> {
    check_input(q, b)?;
    let fp = splitting_field(s);
    let mut last: Option<(CanonicalDecomposition, String)> = None;
    for attempt in 0..=CERTIFICATION_RETRIES {
        let seed = derive_seed(s.seed, attempt);
        let round = Sampling { seed, ..*s };
        let draws: Vec<Splitting> = (0..s.samples.max(1) as u64)
            .map(|i| draw(q, b, &fp, seed, i))
            .collect();
        let parts = sort_parts(majority(&draws));
        let verdict = verify_canonical(q, &parts, b, &round)?;
        let decomposition = CanonicalDecomposition {
            parts,
            certificate: verdict.certificate,
            confidence: Confidence::Certified,
            seed_used: seed,
            caveat: CANONICAL_CAVEAT.to_string(),
        };
        match verdict.reason {
            None => return Ok(decomposition),
            Some(reason) => last = Some((decomposition, reason)),
        }
    }
    let (mut decomposition, reason) = last.expect("at least one attempt");
    decomposition.confidence = Confidence::Lowered;
    Err(RootsError::CertificationFailed {
        decomposition: Box::new(decomposition),
        reason: format!("{reason} (after {CERTIFICATION_RETRIES} retries)"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    /// Every part real: the generic orbit is open and SI is a polynomial ring.
    PolynomialRing,
    /// One isotropic part, the rest real: SI is a complete intersection.
    CompleteIntersection,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrehomogeneityReport {
    pub prehomogeneous: bool,
    pub almost_prehomogeneous: bool,
    pub isotropic_part: Option<DimensionVector>,
    pub conclusion: Conclusion,
    pub decomposition: CanonicalDecomposition,
    /// `generic dim End - <b,b>`: codimension of a generic orbit in `rep_b(Q)`.
    pub generic_orbit_codim: usize,
}

pub fn prehomogeneity_report(
    q: &Quiver,
    b: &DimensionVector,
    s: &Sampling,
) -> Result<PrehomogeneityReport, RootsError> {
    let decomposition = canonical_decomposition(q, b, s)?;
    let classes = &decomposition.certificate.classes;
    let count = |c: RootClass| classes.iter().filter(|&&x| x == c).count();
    let prehomogeneous = count(RootClass::Real) == classes.len();
    let almost = count(RootClass::Isotropic) == 1 && count(RootClass::Real) + 1 == classes.len();
    let isotropic_part = almost.then(|| {
        let i = classes
            .iter()
            .position(|&c| c == RootClass::Isotropic)
            .expect("one isotropic part");
        decomposition.parts[i].clone()
    });
    let conclusion = if prehomogeneous {
        Conclusion::PolynomialRing
    } else if almost {
        Conclusion::CompleteIntersection
    } else {
        Conclusion::Unknown
    };
    let end = generic_end_dim(q, b, s)? as i64;
    let euler = q.euler_pairing(&b.to_i64(), &b.to_i64())?;
    Ok(PrehomogeneityReport {
        prehomogeneous,
        almost_prehomogeneous: almost,
        isotropic_part,
        conclusion,
        decomposition,
        generic_orbit_codim: usize::try_from(end - euler).expect("codimension is nonnegative"),
    })
}
