use num_traits::{One, Signed};

use super::{primitive_integer, split_polys, GuessKind, GuessReport, GuessStatus, Relation, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::ring::{rat, Rational, UniPoly};

/// Smallest recurrence `sum_v p_v(n) a_{n-v} = 0` (swept by order, then
/// coefficient degree) holding at every index `n >= order` of `terms`.
pub fn guess_precursive(terms: &[Rational], max_order: usize, max_poldeg: usize) -> Result<GuessReport> {
    guess_precursive_with_margin(terms, max_order, max_poldeg, DEFAULT_MARGIN)
}

pub fn guess_precursive_with_margin(
    terms: &[Rational],
    max_order: usize,
    max_poldeg: usize,
    margin: usize,
) -> Result<GuessReport> {
    let needed = (max_order + 1) * (max_poldeg + 1) + margin;
    if terms.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    for order in 1..=max_order {
        for deg in 0..=max_poldeg {
            let width = deg + 1;
            let unknowns = (order + 1) * width;
            if terms.len() < order + unknowns + margin {
                continue;
            }
            let rows: Vec<Vec<Rational>> = (order..terms.len())
                .map(|n| {
                    let x = rat(n as i64);
                    let mut row = Vec::with_capacity(unknowns);
                    for v in 0..=order {
                        let mut pw = Rational::one();
                        for _ in 0..width {
                            row.push(&pw * &terms[n - v]);
                            pw *= &x;
                        }
                    }
                    row
                })
                .collect();
            let Some(sol) = kernel(&rows, unknowns).into_iter().next() else {
                continue;
            };
            let mut polys = split_polys(&primitive_integer(&sol), width);
            let lead = polys.iter().find(|p| !p.is_zero()).map(UniPoly::leading);
            if lead.is_some_and(|c| c.is_negative()) {
                for p in polys.iter_mut() {
                    *p = -&*p;
                }
            }
            return Ok(GuessReport {
                kind: GuessKind::PRecursive,
                status: GuessStatus::Found,
                relation: Some(Relation::PRecursive { polys }),
                fit_window: 0..order + unknowns,
                verify_window: order + unknowns..terms.len(),
            });
        }
    }
    Ok(GuessReport::not_found(GuessKind::PRecursive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guess::verify_relation;
    use num_bigint::BigInt;

    fn big(v: BigInt) -> Rational {
        Rational::from_integer(v)
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::from(1), |a, k| a * k)
    }

    #[test]
    fn central_binomials() {
        let t: Vec<Rational> = (0..30u64)
            .map(|n| big(factorial(2 * n) / (factorial(n) * factorial(n))))
            .collect();
        let r = guess_precursive(&t, 2, 2).unwrap();
        assert_eq!(r.machine_line(), "#rec n*a[n] - (4*n - 2)*a[n-1] = 0");
        assert!(verify_relation(&t, &r));
    }

    #[test]
    fn factorials() {
        let t: Vec<Rational> = (0..20u64).map(|n| big(factorial(n))).collect();
        let r = guess_precursive(&t, 2, 2).unwrap();
        assert_eq!(r.relation.unwrap().to_string(), "a[n] - n*a[n-1] = 0");
    }

    #[test]
    fn central_trinomials_of_three_parts() {
        let t: Vec<Rational> = (0..20u64)
            .map(|n| big(factorial(3 * n) / factorial(n).pow(3)))
            .collect();
        let r = guess_precursive(&t, 1, 2).unwrap();
        assert_eq!(
            r.relation.unwrap().to_string(),
            "n^2*a[n] - (27*n^2 - 27*n + 6)*a[n-1] = 0"
        );
    }
}
