//! Univariate and bivariate divided differences from the recursive
//! definitions, in exact rational arithmetic.
//!
//! The order-n divided difference of f at distinct points x_0, ..., x_n is
//! [x_0]f = f(x_0) and
//! [x_0,...,x_n]f = ([x_1,...,x_n]f - [x_0,...,x_{n-1}]f) / (x_n - x_0).
//!
//! The bivariate divided difference over a rectangular grid
//! {x_0,...,x_m} x {y_0,...,y_n} reduces in either variable first; both
//! orders give the same value, which the tests check as exact equality.
//!
//! Tables are filled bottom-up: the callers here ask for many overlapping
//! sub-differences, and the O(n^2) table beats exponential recomputation.

use crate::rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivDiffError {
    #[error("no sample points")]
    Empty,
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("duplicate ordinate {0}")]
    DuplicateOrdinate(String),
    #[error("grid dimensions do not match the value matrix")]
    ShapeMismatch,
    #[error("index list must be strictly increasing and within range")]
    BadIndexList,
}

fn check_distinct(values: &[BigRational], kind: &str) -> Result<(), DivDiffError> {
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            if a == b {
                return Err(match kind {
                    "x" => DivDiffError::DuplicateAbscissa(a.to_string()),
                    _ => DivDiffError::DuplicateOrdinate(a.to_string()),
                });
            }
        }
    }
    Ok(())
}

/// Samples (x_i, f(x_i)) at pairwise distinct abscissas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSamples {
    points: Vec<(BigRational, BigRational)>,
}

impl UnivariateSamples {
    pub fn new(points: Vec<(BigRational, BigRational)>) -> Result<Self, DivDiffError> {
        if points.is_empty() {
            return Err(DivDiffError::Empty);
        }
        let xs: Vec<_> = points.iter().map(|(x, _)| x.clone()).collect();
        check_distinct(&xs, "x")?;
        Ok(Self { points })
    }

    /// Samples a function at the given abscissas.
    pub fn from_fn(
        xs: &[BigRational],
        f: impl Fn(&BigRational) -> BigRational,
    ) -> Result<Self, DivDiffError> {
        Self::new(xs.iter().map(|x| (x.clone(), f(x))).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty sample sets
    }

    /// Highest divided-difference order available: number of points minus 1.
    pub fn order(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }
}

/// The order-n divided difference over all sample points.
pub fn udd(samples: &UnivariateSamples) -> BigRational {
    udd_table(samples).full_order().clone()
}

/// Triangular table of all [x_i,...,x_j]f, filled bottom-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedDifferenceTable {
    // rows[w][i] = [x_i,...,x_{i+w}]f
    rows: Vec<Vec<BigRational>>,
}

impl DividedDifferenceTable {
    /// The entry [x_i,...,x_j]f, for i <= j.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        assert!(i <= j, "entry requires i <= j");
        &self.rows[j - i][i]
    }

    /// [x_0,...,x_n]f over all points in the table.
    pub fn full_order(&self) -> &BigRational {
        &self.rows[self.rows.len() - 1][0]
    }

    /// Number of sample points n + 1.
    pub fn len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// All divided differences [x_i,...,x_j]f of the samples.
pub fn udd_table(samples: &UnivariateSamples) -> DividedDifferenceTable {
    let pts = samples.points();
    let n = pts.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    rows.push(pts.iter().map(|(_, fx)| fx.clone()).collect());
    for w in 1..n {
        let mut row = Vec::with_capacity(n - w);
        for i in 0..n - w {
            let num = &rows[w - 1][i + 1] - &rows[w - 1][i];
            let den = &pts[i + w].0 - &pts[i].0;
            row.push(num / den);
        }
        rows.push(row);
    }
    DividedDifferenceTable { rows }
}

/// A rectangular grid of g-values: `values[i][j] = g(xs[i], ys[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSample {
    xs: Vec<BigRational>,
    ys: Vec<BigRational>,
    values: Vec<Vec<BigRational>>,
}

impl GridSample {
    pub fn new(
        xs: Vec<BigRational>,
        ys: Vec<BigRational>,
        values: Vec<Vec<BigRational>>,
    ) -> Result<Self, DivDiffError> {
        if xs.is_empty() || ys.is_empty() {
            return Err(DivDiffError::Empty);
        }
        check_distinct(&xs, "x")?;
        check_distinct(&ys, "y")?;
        if values.len() != xs.len() || values.iter().any(|row| row.len() != ys.len()) {
            return Err(DivDiffError::ShapeMismatch);
        }
        Ok(Self { xs, ys, values })
    }

    /// Evaluates g on the full Cartesian grid.
    pub fn from_fn(
        xs: Vec<BigRational>,
        ys: Vec<BigRational>,
        g: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self, DivDiffError> {
        let values = xs
            .iter()
            .map(|x| ys.iter().map(|y| g(x, y)).collect())
            .collect();
        Self::new(xs, ys, values)
    }

    pub fn xs(&self) -> &[BigRational] {
        &self.xs
    }

    pub fn ys(&self) -> &[BigRational] {
        &self.ys
    }

    pub fn value(&self, i: usize, j: usize) -> &BigRational {
        &self.values[i][j]
    }

    /// The sub-grid on the given strictly increasing index lists.
    pub fn subgrid(&self, x_idx: &[usize], y_idx: &[usize]) -> Result<GridSample, DivDiffError> {
        check_index_list(x_idx, self.xs.len())?;
        check_index_list(y_idx, self.ys.len())?;
        let xs = x_idx.iter().map(|&i| self.xs[i].clone()).collect();
        let ys = y_idx.iter().map(|&j| self.ys[j].clone()).collect();
        let values = x_idx
            .iter()
            .map(|&i| y_idx.iter().map(|&j| self.values[i][j].clone()).collect())
            .collect();
        GridSample::new(xs, ys, values)
    }
}

fn check_index_list(idx: &[usize], len: usize) -> Result<(), DivDiffError> {
    if idx.is_empty() || idx.windows(2).any(|w| w[0] >= w[1]) || idx[idx.len() - 1] >= len {
        return Err(DivDiffError::BadIndexList);
    }
    Ok(())
}

/// Divided difference of a slice of values against a slice of nodes, both
/// already extracted from a grid row or column.
fn udd_values(nodes: &[BigRational], values: &[BigRational]) -> BigRational {
    let n = nodes.len();
    let mut cur = values.to_vec();
    for w in 1..n {
        for i in 0..n - w {
            let num = &cur[i + 1] - &cur[i];
            let den = &nodes[i + w] - &nodes[i];
            cur[i] = num / den;
        }
        cur.truncate(n - w);
    }
    cur.swap_remove(0)
}

/// The bivariate divided difference [x_0,...,x_m; y_0,...,y_n]g.
///
/// Reduces in x first; [`bdd_y_first`] reduces in y first. Both give the
/// same value.
pub fn bdd(grid: &GridSample) -> BigRational {
    bdd_x_first(grid)
}

/// x-first reduction: collapse each row in y, then take the x divided
/// difference of the row results.
pub fn bdd_x_first(grid: &GridSample) -> BigRational {
    let row_dds: Vec<BigRational> = grid
        .values
        .iter()
        .map(|row| udd_values(&grid.ys, row))
        .collect();
    udd_values(&grid.xs, &row_dds)
}

/// y-first reduction: collapse each column in x, then take the y divided
/// difference of the column results.
pub fn bdd_y_first(grid: &GridSample) -> BigRational {
    let col_dds: Vec<BigRational> = (0..grid.ys.len())
        .map(|j| {
            let col: Vec<BigRational> = grid.values.iter().map(|row| row[j].clone()).collect();
            udd_values(&grid.xs, &col)
        })
        .collect();
    udd_values(&grid.ys, &col_dds)
}

/// Bivariate divided difference restricted to a sub-grid picked out by
/// strictly increasing index lists into the full grid.
pub fn bdd_on_index_ranges(
    gfull: &GridSample,
    x_idx: &[usize],
    y_idx: &[usize],
) -> Result<BigRational, DivDiffError> {
    Ok(bdd(&gfull.subgrid(x_idx, y_idx)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn samples(points: &[(i64, (i64, i64))]) -> UnivariateSamples {
        UnivariateSamples::new(
            points
                .iter()
                .map(|&(x, (n, d))| (int(x), rat(n, d)))
                .collect(),
        )
        .unwrap()
    }

    /// Independent oracle: coefficients of the Newton interpolating
    /// polynomial computed by polynomial algebra, whose leading coefficient
    /// at full order is the divided difference.
    fn newton_leading_coefficient(pts: &[(BigRational, BigRational)]) -> BigRational {
        // Build the interpolating polynomial incrementally in monomial form:
        // p_{k}(x) = p_{k-1}(x) + c_k * prod_{i<k} (x - x_i), where c_k is
        // chosen to match the k-th sample. Evaluate the correction exactly.
        let n = pts.len();
        let mut poly = vec![BigRational::zero(); n]; // monomial coefficients
        let mut basis = vec![BigRational::zero(); n]; // prod_{i<k}(x - x_i)
        basis[0] = int(1);
        let eval = |coeffs: &[BigRational], x: &BigRational| {
            let mut acc = BigRational::zero();
            for c in coeffs.iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        let mut leading = BigRational::zero();
        for (k, (xk, fk)) in pts.iter().enumerate() {
            let residual = fk - eval(&poly, xk);
            let basis_val = eval(&basis, xk);
            let ck = residual / basis_val;
            for i in 0..n {
                poly[i] = &poly[i] + &ck * &basis[i];
            }
            leading = ck.clone();
            // basis *= (x - x_k)
            if k + 1 < n {
                let mut next = vec![BigRational::zero(); n];
                for i in 0..n - 1 {
                    if !basis[i].is_zero() {
                        next[i + 1] = &next[i + 1] + &basis[i];
                        next[i] = &next[i] - xk * &basis[i];
                    }
                }
                basis = next;
            }
        }
        leading
    }

    #[test]
    fn udd_single_point() {
        assert_eq!(udd(&samples(&[(0, (1, 1))])), int(1));
    }

    #[test]
    fn udd_two_points() {
        assert_eq!(udd(&samples(&[(0, (1, 1)), (1, (1, 2))])), rat(-1, 2));
    }

    #[test]
    fn udd_leading_coefficient_of_cubic() {
        // Order-3 divided difference of a monic cubic over any 4 distinct
        // points is its leading coefficient, 1. Oracle: Newton interpolation.
        let f = |x: &BigRational| x * x * x;
        for xs in [[-2i64, 0, 1, 3], [0, 1, 2, 3], [-5, -1, 2, 7]] {
            let xs: Vec<_> = xs.iter().map(|&v| int(v)).collect();
            let s = UnivariateSamples::from_fn(&xs, f).unwrap();
            assert_eq!(udd(&s), int(1));
            assert_eq!(newton_leading_coefficient(s.points()), int(1));
        }
    }

    #[test]
    fn udd_table_square_function() {
        let xs: Vec<_> = [0i64, 1, 2].iter().map(|&v| int(v)).collect();
        let s = UnivariateSamples::from_fn(&xs, |x| x * x).unwrap();
        let t = udd_table(&s);
        assert_eq!(t.entry(0, 0), &int(0));
        assert_eq!(t.entry(1, 1), &int(1));
        assert_eq!(t.entry(2, 2), &int(4));
        assert_eq!(t.entry(0, 1), &int(1));
        assert_eq!(t.entry(1, 2), &int(3));
        assert_eq!(t.entry(0, 2), &int(1));
        assert_eq!(t.full_order(), &udd(&s));
    }

    #[test]
    fn udd_table_single_point() {
        let s = samples(&[(0, (1, 1))]);
        let t = udd_table(&s);
        assert_eq!(t.entry(0, 0), &int(1));
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn duplicate_abscissa_rejected() {
        let r = UnivariateSamples::new(vec![(int(1), int(0)), (int(1), int(2))]);
        assert!(matches!(r, Err(DivDiffError::DuplicateAbscissa(_))));
    }

    #[test]
    fn bdd_single_cell() {
        let g = GridSample::new(vec![int(2)], vec![int(5)], vec![vec![rat(7, 3)]]).unwrap();
        assert_eq!(bdd(&g), rat(7, 3));
    }

    #[test]
    fn bdd_product_function() {
        // [0,1; 0,1](x*y) = 1
        let g =
            GridSample::from_fn(vec![int(0), int(1)], vec![int(0), int(1)], |x, y| x * y).unwrap();
        assert_eq!(bdd(&g), int(1));
        assert_eq!(bdd_y_first(&g), int(1));
    }

    #[test]
    fn bdd_grid_validation() {
        assert!(matches!(
            GridSample::new(vec![int(0), int(0)], vec![int(1)], vec![vec![int(0)]; 2]),
            Err(DivDiffError::DuplicateAbscissa(_))
        ));
        assert!(matches!(
            GridSample::new(
                vec![int(0)],
                vec![int(1), int(1)],
                vec![vec![int(0), int(0)]]
            ),
            Err(DivDiffError::DuplicateOrdinate(_))
        ));
        assert!(matches!(
            GridSample::new(vec![int(0)], vec![int(1)], vec![]),
            Err(DivDiffError::ShapeMismatch)
        ));
    }

    #[test]
    fn index_range_views() {
        let g = GridSample::from_fn(
            (0..4).map(int).collect(),
            (0..4).map(|v| int(v + 10)).collect(),
            |x, y| x * x * y + x,
        )
        .unwrap();
        let full: Vec<usize> = (0..4).collect();
        assert_eq!(bdd_on_index_ranges(&g, &full, &full).unwrap(), bdd(&g));
        assert_eq!(
            bdd_on_index_ranges(&g, &[2], &[3]).unwrap(),
            g.value(2, 3).clone()
        );
        assert!(matches!(
            bdd_on_index_ranges(&g, &[2, 1], &[0]),
            Err(DivDiffError::BadIndexList)
        ));
        assert!(matches!(
            bdd_on_index_ranges(&g, &[0, 4], &[0]),
            Err(DivDiffError::BadIndexList)
        ));
        assert!(matches!(
            bdd_on_index_ranges(&g, &[], &[0]),
            Err(DivDiffError::BadIndexList)
        ));
    }

    fn distinct_rationals(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
        // raw (n, d) pairs can collide as rationals, so overdraw and dedupe
        proptest::collection::btree_set((-40i64..=40, 1i64..=6), len * 2)
            .prop_map(|set| {
                set.into_iter()
                    .map(|(n, d)| rat(n, d))
                    .collect::<std::collections::BTreeSet<_>>()
            })
            .prop_filter("not enough distinct rationals", move |s| s.len() >= len)
            .prop_map(move |s| s.into_iter().take(len).collect())
    }

    proptest! {
        #[test]
        fn udd_matches_newton_oracle(
            xs in distinct_rationals(5),
            fs in proptest::collection::vec((-30i64..=30, 1i64..=8), 5),
        ) {
            let pts: Vec<_> = xs
                .into_iter()
                .zip(fs.into_iter().map(|(n, d)| rat(n, d)))
                .collect();
            let s = UnivariateSamples::new(pts.clone()).unwrap();
            prop_assert_eq!(udd(&s), newton_leading_coefficient(&pts));
        }

        #[test]
        fn udd_permutation_invariant(
            xs in distinct_rationals(6),
            fs in proptest::collection::vec((-30i64..=30, 1i64..=8), 6),
            seed in 0usize..720,
        ) {
            let pts: Vec<_> = xs
                .into_iter()
                .zip(fs.into_iter().map(|(n, d)| rat(n, d)))
                .collect();
            let mut permuted = pts.clone();
            // Lehmer-code style permutation from the seed.
            let mut k = seed;
            for i in (1..permuted.len()).rev() {
                permuted.swap(i, k % (i + 1));
                k /= i + 1;
            }
            let a = udd(&UnivariateSamples::new(pts).unwrap());
            let b = udd(&UnivariateSamples::new(permuted).unwrap());
            prop_assert_eq!(a, b);
        }

        #[test]
        fn bdd_reduction_orders_agree(
            xs in distinct_rationals(3),
            ys in distinct_rationals(3),
            vals in proptest::collection::vec((-30i64..=30, 1i64..=6), 9),
        ) {
            let values: Vec<Vec<_>> = vals
                .chunks(3)
                .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect();
            let g = GridSample::new(xs, ys, values).unwrap();
            prop_assert_eq!(bdd_x_first(&g), bdd_y_first(&g));
        }

        #[test]
        fn bdd_row_and_column_permutation_invariant(
            xs in distinct_rationals(3),
            ys in distinct_rationals(4),
            vals in proptest::collection::vec((-30i64..=30, 1i64..=6), 12),
            xperm in 0usize..6,
            yperm in 0usize..24,
        ) {
            let values: Vec<Vec<_>> = vals
                .chunks(4)
                .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect();
            let g = GridSample::new(xs.clone(), ys.clone(), values.clone()).unwrap();

            // permute the xs together with their rows
            let mut x_order: Vec<usize> = (0..3).collect();
            let mut k = xperm;
            for i in (1..3).rev() {
                x_order.swap(i, k % (i + 1));
                k /= i + 1;
            }
            // and independently the ys together with their columns
            let mut y_order: Vec<usize> = (0..4).collect();
            let mut k = yperm;
            for i in (1..4).rev() {
                y_order.swap(i, k % (i + 1));
                k /= i + 1;
            }
            let permuted = GridSample::new(
                x_order.iter().map(|&i| xs[i].clone()).collect(),
                y_order.iter().map(|&j| ys[j].clone()).collect(),
                x_order
                    .iter()
                    .map(|&i| y_order.iter().map(|&j| values[i][j].clone()).collect())
                    .collect(),
            )
            .unwrap();
            prop_assert_eq!(bdd(&g), bdd(&permuted));
        }

        #[test]
        fn subgrid_extraction_matches_direct(
            xs in distinct_rationals(4),
            ys in distinct_rationals(4),
            vals in proptest::collection::vec((-20i64..=20, 1i64..=5), 16),
            xmask in 1u8..16,
            ymask in 1u8..16,
        ) {
            let values: Vec<Vec<_>> = vals
                .chunks(4)
                .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect();
            let g = GridSample::new(xs, ys, values).unwrap();
            let pick = |mask: u8| (0..4).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>();
            let (xi, yi) = (pick(xmask), pick(ymask));
            let via_view = bdd_on_index_ranges(&g, &xi, &yi).unwrap();
            let via_subgrid = bdd(&g.subgrid(&xi, &yi).unwrap());
            prop_assert_eq!(via_view, via_subgrid);
        }
    }
}
