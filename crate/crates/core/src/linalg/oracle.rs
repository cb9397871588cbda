//! Brute-force indecomposability test over a small prime field.

use rayon::prelude::*;

use super::field::{residue, Arith, ModArith};
use super::rep::from_coordinates;
use super::{hom_space, FieldSpec, Homomorphism, LinalgError, Rat, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Prime used when the input is over Q.
    pub prime: u64,
    /// Largest number of endomorphisms the search may visit.
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: 3,
            budget: 3u64.pow(13),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    ZeroModule,
    Indecomposable,
    Decomposable {
        idempotent: Homomorphism,
        image_dims: Vec<usize>,
        kernel_dims: Vec<usize>,
    },
    /// `p^dim End` exceeds the budget (`None` if it overflows u64).
    Inconclusive {
        search_size: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub field: FieldSpec,
    pub end_dim: usize,
    pub outcome: OracleOutcome,
}

/// Enumerates End(M) over F_p in lexicographic coordinate order (first basis
/// coefficient most significant) and returns the first nontrivial idempotent.
///
/// Inputs over Q are reduced mod `config.prime`; inputs already over a prime
/// field are searched over that field.
pub fn is_indecomposable_oracle(
    m: &Representation,
    config: OracleConfig,
) -> Result<OracleVerdict, LinalgError> {
    let field = match m.field() {
        FieldSpec::Rational => {
            FieldSpec::prime(config.prime).ok_or(LinalgError::BadPrime(config.prime))?
        }
        f => f,
    };
    let p = field.characteristic();
    let mp = m.over(field);
    if mp.total_dim() == 0 {
        return Ok(OracleVerdict {
            field,
            end_dim: 0,
            outcome: OracleOutcome::ZeroModule,
        });
    }
    let basis = hom_space(&mp, &mp)?;
    let d = basis.len();
    let size = u32::try_from(d).ok().and_then(|d| p.checked_pow(d));
    match size {
        Some(s) if s <= config.budget => {}
        _ => {
            return Ok(OracleVerdict {
                field,
                end_dim: d,
                outcome: OracleOutcome::Inconclusive { search_size: size },
            })
        }
    }
    let total = size.unwrap();

    let dims = mp.dims();
    let coords: Vec<Vec<u64>> = basis
        .iter()
        .map(|h| h.coordinates().iter().map(|x| residue(x, p)).collect())
        .collect();
    let ar = ModArith(p);
    let len = coords.first().map_or(0, Vec::len);

    let found = (0..total).into_par_iter().find_first(|&k| {
        let c = digits(k, p, d);
        let mut e = vec![0u64; len];
        for (ci, v) in c.iter().zip(&coords) {
            if *ci == 0 {
                continue;
            }
            for (x, y) in e.iter_mut().zip(v) {
                *x = (*x + ar.mul(ci, y)) % p;
            }
        }
        is_nontrivial_idempotent(&ar, &e, &dims)
    });

    let outcome = match found {
        None => OracleOutcome::Indecomposable,
        Some(k) => {
            let c = digits(k, p, d);
            let mut e = Homomorphism::zero(&mp, &mp);
            for (ci, h) in c.iter().zip(&basis) {
                e = e.add(&h.scale(&Rat::from_integer((*ci).into())));
            }
            let coordinates: Vec<Rat> = e.coordinates().iter().map(|x| field.reduce(x)).collect();
            let e = from_coordinates(&mp, &mp, &coordinates);
            let (image_dims, kernel_dims) = super::decompose_by_idempotent(&mp, &e)?;
            OracleOutcome::Decomposable {
                idempotent: e,
                image_dims,
                kernel_dims,
            }
        }
    };
    Ok(OracleVerdict {
        field,
        end_dim: d,
        outcome,
    })
}

fn digits(mut k: u64, p: u64, d: usize) -> Vec<u64> {
    let mut c = vec![0; d];
    for slot in c.iter_mut().rev() {
        *slot = k % p;
        k /= p;
    }
    c
}

fn is_nontrivial_idempotent(ar: &ModArith, e: &[u64], dims: &[usize]) -> bool {
    let mut all_zero = true;
    let mut identity = true;
    let mut at = 0;
    for &n in dims {
        let b = &e[at..at + n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = (s + ar.mul(&b[r * n + k], &b[k * n + c])) % ar.0;
                }
                if s != b[r * n + c] {
                    return false;
                }
                let x = b[r * n + c];
                if x != 0 {
                    all_zero = false;
                }
                if x != u64::from(r == c) {
                    identity = false;
                }
            }
        }
        at += n * n;
    }
    !all_zero && !identity
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Matrix;
    use crate::quiver::BoundQuiver;

    fn a2() -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::new("A2", &["1", "2"], &[("a", "1", "2")], &[]).unwrap())
    }

    #[test]
    fn digits_are_most_significant_first() {
        assert_eq!(digits(5, 3, 3), vec![0, 1, 2]);
    }

    #[test]
    fn simple_and_arrow_modules_are_indecomposable() {
        let s = Representation::new(
            a2(),
            FieldSpec::Rational,
            &[0, 1],
            vec![Matrix::zeros(1, 0)],
        )
        .unwrap();
        let v = is_indecomposable_oracle(&s, OracleConfig::default()).unwrap();
        assert_eq!(v.outcome, OracleOutcome::Indecomposable);
        let p = Representation::new(
            a2(),
            FieldSpec::Rational,
            &[1, 1],
            vec![Matrix::from_ints(1, 1, &[1])],
        )
        .unwrap();
        let v = is_indecomposable_oracle(&p, OracleConfig::default()).unwrap();
        assert_eq!(v.outcome, OracleOutcome::Indecomposable);
        assert_eq!(v.end_dim, 1);
    }

    #[test]
    fn sum_is_split() {
        let m = Representation::new(
            a2(),
            FieldSpec::Rational,
            &[2, 1],
            vec![Matrix::from_ints(1, 2, &[1, 1])],
        )
        .unwrap();
        let v = is_indecomposable_oracle(&m, OracleConfig::default()).unwrap();
        match v.outcome {
            OracleOutcome::Decomposable {
                image_dims,
                kernel_dims,
                ..
            } => {
                let total: Vec<usize> = image_dims
                    .iter()
                    .zip(&kernel_dims)
                    .map(|(a, b)| a + b)
                    .collect();
                assert_eq!(total, vec![2, 1]);
            }
            other => panic!("expected a splitting, got {other:?}"),
        }
    }

    #[test]
    fn zero_module_and_budget() {
        let z = Representation::new(
            a2(),
            FieldSpec::Rational,
            &[0, 0],
            vec![Matrix::zeros(0, 0)],
        )
        .unwrap();
        assert_eq!(
            is_indecomposable_oracle(&z, OracleConfig::default())
                .unwrap()
                .outcome,
            OracleOutcome::ZeroModule
        );
        let m = Representation::new(
            a2(),
            FieldSpec::Rational,
            &[2, 1],
            vec![Matrix::from_ints(1, 2, &[1, 1])],
        )
        .unwrap();
        let tight = OracleConfig {
            prime: 3,
            budget: 26,
        };
        assert_eq!(
            is_indecomposable_oracle(&m, tight).unwrap().outcome,
            OracleOutcome::Inconclusive {
                search_size: Some(27)
            }
        );
        let bad = OracleConfig {
            prime: 4,
            budget: 10,
        };
        assert_eq!(
            is_indecomposable_oracle(&m, bad),
            Err(LinalgError::BadPrime(4))
        );
    }
}
