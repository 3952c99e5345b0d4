//! Seeded generic sampling: random points of `rep_beta(Q)` and the generic
//! values of hom, ext and end dimensions as minima over independent draws.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hom::{end_dim, ext_dim, hom_dim};
use super::{Rep, RepError, RepPoint};
use crate::linalg::{with_field, Field, FieldChoice, Matrix, Rationals};
use crate::quiver::{DimensionVector, Quiver};

/// Integer range for sampled matrix entries.
pub const ENTRY_RANGE: RangeInclusive<i64> = -100..=100;

/// Generator for sample task `task` under a run seed.
pub fn sample_rng(seed: u64, task: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ task)
}

/// A fresh seed for retry number `attempt` (splitmix64 finaliser).
pub fn derive_seed(seed: u64, attempt: u64) -> u64 {
    if attempt == 0 {
        return seed;
    }
    let mut z = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Knobs shared by every generic computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
    #[serde(with = "field_choice_str")]
    pub field: FieldChoice,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            samples: 5,
            seed: 0,
            field: FieldChoice::Rational,
        }
    }
}

impl Sampling {
    pub fn with_seed(seed: u64) -> Self {
        Sampling {
            seed,
            ..Sampling::default()
        }
    }

    fn draws(&self) -> u64 {
        self.samples.max(1) as u64
    }
}

mod field_choice_str {
    use super::FieldChoice;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &FieldChoice, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FieldChoice, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn random_rep_in<F: Field>(
    field: &F,
    q: &Quiver,
    dim: &DimensionVector,
    rng: &mut impl Rng,
) -> Rep<F::Elem> {
    let mats = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dim.0[a.head] as usize, dim.0[a.tail] as usize);
            Matrix::from_fn(r, c, |_, _| field.from_i64(rng.gen_range(ENTRY_RANGE)))
        })
        .collect();
    Rep::new(q, dim.clone(), mats).expect("shapes follow the dimension vector")
}

pub fn random_rep(q: &Quiver, dim: &DimensionVector, rng: &mut impl Rng) -> RepPoint {
    random_rep_in(&Rationals, q, dim, rng)
}

fn require_acyclic(q: &Quiver) -> Result<(), RepError> {
    if q.is_acyclic() {
        Ok(())
    } else {
        Err(RepError::CyclicQuiver)
    }
}

/// Generic `(hom, ext)` for dimension vectors `a`, `b`: hom is the minimum of
/// `dim Hom(V, W)` over sampled pairs and `ext = hom - <a, b>`.
pub fn generic_hom_ext(
    q: &Quiver,
    a: &DimensionVector,
    b: &DimensionVector,
    s: &Sampling,
) -> Result<(usize, usize), RepError> {
    require_acyclic(q)?;
    let euler = q.euler_pairing(&a.to_i64(), &b.to_i64())?;
    let hom = with_field!(s.field, f => {
        (0..s.draws())
            .map(|i| {
                let mut rng = sample_rng(s.seed, i);
                let v = random_rep_in(f, q, a, &mut rng);
                let w = random_rep_in(f, q, b, &mut rng);
                hom_dim(f, &v, &w).expect("same quiver")
            })
            .min()
            .expect("at least one draw")
    });
    let ext = hom as i64 - euler;
    Ok((
        hom,
        usize::try_from(ext).expect("hom - <a,b> is an ext dimension"),
    ))
}

/// Generic `dim Ext^1(V, W)` read off the cokernel of the intertwiner map,
/// independently of the Euler form.
pub fn generic_ext_cokernel(
    q: &Quiver,
    a: &DimensionVector,
    b: &DimensionVector,
    s: &Sampling,
) -> Result<usize, RepError> {
    require_acyclic(q)?;
    q.check_len(a.len())?;
    q.check_len(b.len())?;
    Ok(with_field!(s.field, f => {
        (0..s.draws())
            .map(|i| {
                let mut rng = sample_rng(s.seed, i);
                let v = random_rep_in(f, q, a, &mut rng);
                let w = random_rep_in(f, q, b, &mut rng);
                ext_dim(f, &v, &w).expect("same quiver")
            })
            .min()
            .expect("at least one draw")
    }))
}

/// Minimum of `dim End(V)` over sampled `V` of dimension `b`.
pub fn generic_end_dim(q: &Quiver, b: &DimensionVector, s: &Sampling) -> Result<usize, RepError> {
    q.check_len(b.len())?;
    Ok(with_field!(s.field, f => {
        (0..s.draws())
            .map(|i| end_dim(f, &random_rep_in(f, q, b, &mut sample_rng(s.seed, i))))
            .min()
            .expect("at least one draw")
    }))
}
