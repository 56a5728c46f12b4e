use num_traits::Zero;

use super::{GuessKind, GuessReport, GuessStatus, Relation, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::ring::Rational;

/// Minimal-order, then minimal-offset constant-coefficient recurrence
/// satisfied by `terms` from `offset + order` on, with the default margin.
pub fn guess_cfinite(terms: &[Rational], max_order: usize, max_offset: usize) -> Result<GuessReport> {
    guess_cfinite_with_margin(terms, max_order, max_offset, DEFAULT_MARGIN)
}

/// As [`guess_cfinite`]; `margin` is the number of terms demanded beyond
/// `2 * max_order + max_offset`.
pub fn guess_cfinite_with_margin(
    terms: &[Rational],
    max_order: usize,
    max_offset: usize,
    margin: usize,
) -> Result<GuessReport> {
    let needed = 2 * max_order + max_offset + margin;
    if terms.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    for order in 0..=max_order {
        for offset in 0..=max_offset {
            if let Some(coeffs) = fit(terms, order, offset) {
                return Ok(GuessReport {
                    kind: GuessKind::CFinite,
                    status: GuessStatus::Found,
                    relation: Some(Relation::CFinite { coeffs, offset }),
                    fit_window: offset..offset + 2 * order,
                    verify_window: offset + 2 * order..terms.len(),
                });
            }
        }
    }
    Ok(GuessReport::not_found(GuessKind::CFinite))
}

fn fit(terms: &[Rational], order: usize, offset: usize) -> Option<Vec<Rational>> {
    let start = offset + order;
    if order == 0 {
        return terms[offset..].iter().all(Zero::is_zero).then(Vec::new);
    }
    let rows: Vec<Vec<Rational>> = (start..terms.len())
        .map(|n| (1..=order).map(|i| terms[n - i].clone()).collect())
        .collect();
    let rhs: Vec<Rational> = terms[start..].to_vec();
    solve(&rows, &rhs)
}
