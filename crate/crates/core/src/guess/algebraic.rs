use num_traits::{Signed, Zero};

use super::{primitive_integer, split_polys, GuessKind, GuessReport, GuessStatus, Relation};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::ring::{Rational, UniPoly};

/// Smallest equation `sum_i P_i(t) y^i = 0` with `deg P_i <= deg_t`,
/// `1 <= i <= deg_y` satisfied by the generating function of `terms` to
/// the full supplied precision. Candidates are swept by `(deg_y, deg_t)`.
/// The result has coprime integer coefficients, and the lowest `t`-power
/// of the highest `y`-power is positive.
pub fn guess_algebraic(terms: &[Rational], deg_t: usize, deg_y: usize, margin: usize) -> Result<GuessReport> {
    let needed = (deg_t + 1) * (deg_y + 1) + margin;
    if terms.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    let n = terms.len();
    let h = UniPoly::new(terms.to_vec());
    let mut powers = vec![UniPoly::one()];
    for _ in 0..deg_y {
        let next = (powers.last().expect("nonempty") * &h).truncate(n);
        powers.push(next);
    }
    for dy in 1..=deg_y {
        for dt in 0..=deg_t {
            let width = dt + 1;
            let unknowns = (dy + 1) * width;
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|k| {
                    let mut row = Vec::with_capacity(unknowns);
                    for p in &powers[..=dy] {
                        for j in 0..width {
                            row.push(if k >= j { p.coeff(k - j) } else { Rational::zero() });
                        }
                    }
                    row
                })
                .collect();
            let Some(sol) = kernel(&rows, unknowns).into_iter().next() else {
                continue;
            };
            let mut polys = split_polys(&primitive_integer(&sol), width);
            normalize_sign(&mut polys);
            while polys.last().is_some_and(UniPoly::is_zero) {
                polys.pop();
            }
            return Ok(GuessReport {
                kind: GuessKind::Algebraic,
                status: GuessStatus::Found,
                relation: Some(Relation::Algebraic { polys }),
                fit_window: 0..unknowns,
                verify_window: unknowns..n,
            });
        }
    }
    Ok(GuessReport::not_found(GuessKind::Algebraic))
}

fn normalize_sign(polys: &mut [UniPoly]) {
    let lead = polys
        .iter()
        .rev()
        .find(|p| !p.is_zero())
        .and_then(|p| p.coeffs().iter().find(|c| !c.is_zero()).cloned());
    if lead.is_some_and(|c| c.is_negative()) {
        for p in polys.iter_mut() {
            *p = -&*p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guess::verify_relation;
    use crate::ring::rat;
    use num_bigint::BigInt;

    fn binomial(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn interleaved_central_binomials() {
        let t: Vec<Rational> = (0..30)
            .map(|n| if n % 2 == 0 { Rational::from_integer(binomial(n, n / 2)) } else { rat(0) })
            .collect();
        let r = guess_algebraic(&t, 2, 2, 8).unwrap();
        assert_eq!(r.machine_line(), "#eq (1 - 4*t^2)*y^2 - 1 = 0");
        assert!(verify_relation(&t, &r));
    }

    #[test]
    fn catalan() {
        let t: Vec<Rational> = (0..30)
            .map(|n| Rational::from_integer(binomial(2 * n, n) / BigInt::from(n + 1)))
            .collect();
        let r = guess_algebraic(&t, 2, 2, 8).unwrap();
        assert_eq!(r.relation.as_ref().unwrap().to_string(), "t*y^2 - y + 1 = 0");
    }

    #[test]
    fn all_ones() {
        let t = vec![rat(1); 20];
        let r = guess_algebraic(&t, 2, 2, 8).unwrap();
        assert_eq!(r.relation.as_ref().unwrap().to_string(), "(1 - t)*y - 1 = 0");
    }

    #[test]
    fn needs_enough_terms() {
        assert!(guess_algebraic(&vec![rat(1); 10], 2, 2, 8).is_err());
    }
}
