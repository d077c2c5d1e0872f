//! Zero testing: exact, or by evaluation at random points.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FieldElem;
use super::poly::Var;
use crate::error::Error;

/// Magnitude bound of the integers drawn for random evaluation points.
pub const SAMPLE_BOUND: i64 = 10_000;
/// Redraws allowed per trial when a point lands on a pole.
const POLE_RETRIES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    RandomEval { trials: u32, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Zero,
    Nonzero,
    ProbablyZero,
}

impl IdentityOutcome {
    pub fn vanishes(self) -> bool {
        !matches!(self, IdentityOutcome::Nonzero)
    }
}

/// Decides whether `f` is the zero function.
///
/// Random evaluation can only err towards `ProbablyZero`: a single nonzero
/// value is a proof that `f` does not vanish.
pub fn identity_check(f: &FieldElem, mode: CheckMode) -> Result<IdentityOutcome, Error> {
    match mode {
        CheckMode::Exact => Ok(if f.is_zero() {
            IdentityOutcome::Zero
        } else {
            IdentityOutcome::Nonzero
        }),
        CheckMode::RandomEval { trials, seed } => {
            if trials == 0 {
                return Err(Error::InvalidArgument("random-eval needs at least one trial".into()));
            }
            let vars = f.vars();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                if !value_at_random_point(f, &vars, &mut rng).is_zero_value() {
                    return Ok(IdentityOutcome::Nonzero);
                }
            }
            Ok(IdentityOutcome::ProbablyZero)
        }
    }
}

enum Sample {
    Value(BigRational),
    AllPoles,
}

impl Sample {
    fn is_zero_value(&self) -> bool {
        match self {
            Sample::Value(v) => num_traits::Zero::is_zero(v),
            // every draw hit the denominator: treat as inconclusive
            Sample::AllPoles => true,
        }
    }
}

fn value_at_random_point(f: &FieldElem, vars: &[Var], rng: &mut ChaCha8Rng) -> Sample {
    for _ in 0..POLE_RETRIES {
        let point = random_point(vars, rng);
        if let Ok(v) = f.eval(&point) {
            return Sample::Value(v);
        }
    }
    Sample::AllPoles
}

/// Draws every symbol in `vars` uniformly from the integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub fn random_point(vars: &[Var], rng: &mut impl Rng) -> Vec<(Var, BigRational)> {
    vars.iter()
        .map(|&v| {
            let c = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
            (v, BigRational::from_integer(BigInt::from(c)))
        })
        .collect()
}
