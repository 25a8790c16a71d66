//! Term counts of the explicit implicit-function formula, obtained directly
//! from the dissection combinatorics rather than from sequence formulas.
//!
//! Each dissection contributes the product, over its faces, of the number of
//! admissible offsets s for that face; the total over all dissections of the
//! polygon on 0..n is the term count a_n. Two independent counters are
//! provided: a streaming pass over the dissection enumerator, and an
//! interval-based dynamic program over sub-polygon widths.

use crate::dissection::{DissectionError, Face, MAX_ENUMERATION_N};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermsError {
    #[error(transparent)]
    Dissection(#[from] DissectionError),
    #[error("term count overflows the streaming accumulator at n = {0}")]
    Overflow(usize),
    #[error("enumeration-based counting is limited to n <= {MAX_ENUMERATION_N}, got {0}")]
    TooLarge(usize),
}

/// Number of admissible offsets s for a face (i_0, ..., i_k): one more than
/// the length of the maximal initial run of unit steps.
pub fn admissible_s_count(face: &Face) -> usize {
    face.initial_unit_run() + 1
}

/// Term count by streaming over every dissection of the polygon on 0..n,
/// multiplying per-face admissible offsets and summing.
///
/// The recursion mirrors the dissection enumerator (unique face on the edge
/// (0, n), then independent gaps) but carries a running product instead of
/// materializing faces, so large n stay within desk-scale memory.
pub fn count_terms_by_enumeration(n: usize) -> Result<BigInt, TermsError> {
    if n < 2 {
        return Err(DissectionError::PolygonTooSmall(n).into());
    }
    if n > MAX_ENUMERATION_N {
        return Err(TermsError::TooLarge(n));
    }
    let mut total: u128 = 0;
    let mut pending = vec![(0usize, n)];
    stream_count(&mut pending, 1, &mut total).ok_or(TermsError::Overflow(n))?;
    Ok(BigInt::from(total))
}

fn stream_count(pending: &mut Vec<(usize, usize)>, product: u128, total: &mut u128) -> Option<()> {
    let Some((lo, hi)) = pending.pop() else {
        *total = total.checked_add(product)?;
        return Some(());
    };
    let interior_len = hi - lo - 1;
    for mask in 1u64..(1 << interior_len) {
        // The face is lo, the chosen interior vertices, hi. Its admissible
        // offset count and the sub-polygon gaps come straight off the mask.
        let mut s_count: u128 = 1;
        let mut scanning_unit_run = true;
        let mut prev = lo;
        let before = pending.len();
        for bit in 0..interior_len {
            if mask & (1 << bit) != 0 {
                let v = lo + 1 + bit;
                if scanning_unit_run {
                    if v == prev + 1 {
                        s_count += 1;
                    } else {
                        scanning_unit_run = false;
                    }
                }
                if v - prev >= 2 {
                    pending.push((prev, v));
                }
                prev = v;
            }
        }
        if scanning_unit_run && hi == prev + 1 {
            s_count += 1;
        }
        if hi - prev >= 2 {
            pending.push((prev, hi));
        }
        let next_product = product.checked_mul(s_count)?;
        stream_count(pending, next_product, total)?;
        pending.truncate(before);
    }
    pending.push((lo, hi));
    Some(())
}

/// Term count by a memoized dynamic program over sub-polygon widths: a gap
/// of width w contributes the count for w, and a face over the edge (0, w)
/// contributes its admissible offsets. Independent of the streaming counter
/// and of any sequence formula.
pub fn count_terms_by_composition_dp(n: usize) -> Result<BigInt, TermsError> {
    if n < 2 {
        return Err(DissectionError::PolygonTooSmall(n).into());
    }
    if n > MAX_ENUMERATION_N {
        return Err(TermsError::TooLarge(n));
    }
    let mut width_counts: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    width_counts[1] = BigInt::from(1);
    for w in 2..=n {
        let interior_len = w - 1;
        let mut total = BigInt::zero();
        for mask in 1u64..(1 << interior_len) {
            let mut verts = Vec::with_capacity(interior_len + 2);
            verts.push(0usize);
            for bit in 0..interior_len {
                if mask & (1 << bit) != 0 {
                    verts.push(bit + 1);
                }
            }
            verts.push(w);
            let mut run = 0;
            while run + 1 < verts.len() && verts[run + 1] - verts[run] == 1 {
                run += 1;
            }
            let mut contribution = BigInt::from(run + 1);
            for pair in verts.windows(2) {
                contribution *= &width_counts[pair[1] - pair[0]];
            }
            total += contribution;
        }
        width_counts[w] = total;
    }
    Ok(width_counts[n].clone())
}
