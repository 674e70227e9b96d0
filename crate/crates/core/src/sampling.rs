//! Seeded random draws of derivations, points and homomorphisms, used by the
//! self-test, the acceptance runs and the examples.

use rand::Rng;

use crate::catalog::{build_homomorphism, Homomorphism, SubgroupId};
use crate::flow::Derivation;
use crate::group::GroupElement;
use crate::observability::FixedPointCase;

/// Derivation with every entry uniform in `[-r, r]`.
pub fn random_derivation<R: Rng>(rng: &mut R, r: f64) -> Derivation {
    Derivation::from_array(std::array::from_fn(|_| rng.random_range(-r..=r)))
}

pub fn random_point<R: Rng>(rng: &mut R, r: f64) -> GroupElement {
    GroupElement::new(
        rng.random_range(-r..=r),
        rng.random_range(-r..=r),
        rng.random_range(-r..=r),
    )
}

/// Uniform in `[lo, hi]` with a random sign.
fn signed<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let v = rng.random_range(lo..=hi);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A derivation in the given branch of the fixed-point table, kept well away
/// from the neighbouring branches.
pub fn draw_branch<R: Rng>(rng: &mut R, case: FixedPointCase) -> Derivation {
    loop {
        let a = signed(rng, 0.2, 2.0);
        let e = rng.random_range(-2.0..=2.0);
        let mut f = rng.random_range(-2.0..=2.0);
        let (b, c, d) = match case {
            FixedPointCase::InvertibleTraceNonzero => {
                let (b, c, d) = (
                    rng.random_range(-2.0..=2.0),
                    rng.random_range(-2.0..=2.0),
                    rng.random_range(-2.0..=2.0),
                );
                if (a * d - b * c).abs() < 0.1 || (a + d).abs() < 0.1 {
                    continue;
                }
                (b, c, d)
            }
            FixedPointCase::InvertibleTraceZero => {
                let (b, c) = (rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
                if (a * a + b * c).abs() < 0.1 {
                    continue;
                }
                (b, c, -a)
            }
            FixedPointCase::SingularGeneric | FixedPointCase::SingularResonant => {
                let (b, c) = (rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
                let d = b * c / a;
                if (a + d).abs() < 0.1 {
                    continue;
                }
                (b, c, d)
            }
            FixedPointCase::SingularTraceZero | FixedPointCase::SingularTraceZeroResonant => {
                let b = signed(rng, 0.2, 2.0);
                (b, -a * a / b, -a)
            }
            FixedPointCase::Degenerate => {
                let b = rng.random_range(-2.0..=2.0);
                (b, 0.0, 0.0)
            }
        };
        let resonant = matches!(
            case,
            FixedPointCase::SingularResonant | FixedPointCase::SingularTraceZeroResonant
        );
        let singular_family = !matches!(
            case,
            FixedPointCase::InvertibleTraceNonzero | FixedPointCase::InvertibleTraceZero
        );
        if resonant {
            f = b * e / a;
        } else if singular_family && (a * f - b * e).abs() < 0.1 {
            continue;
        }
        if case == FixedPointCase::Degenerate {
            return Derivation::new(0.0, b, c, d, e, f);
        }
        return Derivation::new(a, b, c, d, e, f);
    }
}

/// Coefficients uniform in `[-2, 2]`; H8/H9 lines get `|â|, |b̂| ≥ 0.2`.
pub fn random_homomorphism<R: Rng>(rng: &mut R, tag: &str) -> Homomorphism {
    let line = (signed(rng, 0.2, 2.0), signed(rng, 0.2, 2.0));
    let id = SubgroupId::parse(tag, Some(line)).expect("known tag");
    let coeffs: Vec<f64> = (0..id.coefficient_count())
        .map(|_| rng.random_range(-2.0..=2.0))
        .collect();
    build_homomorphism(id, &coeffs).expect("random coefficients are valid")
}

/// H1 or H2 homomorphism whose `B` has `|det B| ≥ 0.1`.
pub fn random_invertible_b<R: Rng>(rng: &mut R, target: SubgroupId) -> Homomorphism {
    loop {
        let c: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..=2.0));
        if (c[0] * c[3] - c[1] * c[2]).abs() >= 0.1 {
            return build_homomorphism(target, &c).expect("H1/H2 coefficients");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observability::classify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn branch_draws_land_in_their_branch() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in FixedPointCase::ALL_LABELLED {
            for _ in 0..50 {
                let d = draw_branch(&mut rng, case);
                assert_eq!(classify(&d).0, case, "{d:?}");
            }
        }
        assert_eq!(classify(&draw_branch(&mut rng, FixedPointCase::Degenerate)).0, FixedPointCase::Degenerate);
    }

    #[test]
    fn every_tag_builds() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for tag in ["H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9"] {
            assert_eq!(random_homomorphism(&mut rng, tag).target.tag(), tag);
        }
    }
}
