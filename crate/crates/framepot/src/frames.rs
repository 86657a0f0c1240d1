//! Unit-vector configurations and Gram-matrix algebra.
//!
//! A [`Configuration`] is an ordered list of N unit vectors in R^d, stored as
//! the rows of an N×d matrix. The canonical constructors build the lifted-ETF
//! family `lifted_etf(d, k)`: a regular (k+1)-vertex simplex spanning a
//! k-dimensional subspace, completed by an orthonormal basis of the orthogonal
//! complement. [`realize_gram`] factors a rank-deficient PSD Gram matrix back
//! into vectors, and [`null_space_vector`] extracts the unit null vector that
//! drives the potential lower-bound machinery.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row norms must be within this distance of 1.
pub const UNIT_NORM_TOL: f64 = 1e-10;
/// Maximum asymmetry |G - G^T| allowed in a Gram matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Smallest eigenvalue allowed before a matrix is declared not PSD.
pub const PSD_TOL: f64 = 1e-9;
/// Eigenvalues at or above this count toward the numerical rank.
pub const RANK_TOL: f64 = 1e-8;
/// Residual ceiling for an accepted null vector.
pub const NULLSPACE_TOL: f64 = 1e-8;

/// An ordered set of N unit vectors in R^d (one per row).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationJson", into = "ConfigurationJson")]
pub struct Configuration {
    vectors: DMatrix<f64>,
}

/// Wire format: `{"d": int, "n": int, "vectors": [[f64]]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ConfigurationJson {
    d: usize,
    n: usize,
    vectors: Vec<Vec<f64>>,
}

impl TryFrom<ConfigurationJson> for Configuration {
    type Error = Error;

    fn try_from(j: ConfigurationJson) -> Result<Self> {
        if j.vectors.len() != j.n {
            return Err(Error::ShapeMismatch(format!(
                "declared n = {} but found {} vectors",
                j.n,
                j.vectors.len()
            )));
        }
        for (i, row) in j.vectors.iter().enumerate() {
            if row.len() != j.d {
                return Err(Error::ShapeMismatch(format!(
                    "vector {} has {} components, expected d = {}",
                    i,
                    row.len(),
                    j.d
                )));
            }
        }
        let m = DMatrix::from_fn(j.n, j.d, |i, c| j.vectors[i][c]);
        Configuration::new(m)
    }
}

impl From<Configuration> for ConfigurationJson {
    fn from(x: Configuration) -> Self {
        ConfigurationJson {
            d: x.dim(),
            n: x.n(),
            vectors: x.rows_vec(),
        }
    }
}

impl Configuration {
    /// Validates that every row is a unit vector (within [`UNIT_NORM_TOL`]).
    pub fn new(vectors: DMatrix<f64>) -> Result<Self> {
        if vectors.nrows() == 0 || vectors.ncols() == 0 {
            return Err(Error::ShapeMismatch(
                "configuration needs N >= 1 vectors and d >= 1 coordinates".into(),
            ));
        }
        for i in 0..vectors.nrows() {
            let norm = vectors.row(i).norm();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::NonUnitRow {
                    index: i,
                    norm,
                    tol: UNIT_NORM_TOL,
                });
            }
        }
        Ok(Configuration { vectors })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        if n == 0 || d == 0 {
            return Err(Error::ShapeMismatch(
                "configuration needs N >= 1 vectors and d >= 1 coordinates".into(),
            ));
        }
        Configuration::new(DMatrix::from_fn(n, d, |i, c| rows[i][c]))
    }

    /// N unit vectors drawn uniformly on the sphere (normalized Gaussians).
    pub fn random<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Self {
        let mut m = DMatrix::from_fn(n, d, |_, _| rng.sample::<f64, _>(StandardNormal));
        for i in 0..n {
            let norm = m.row(i).norm();
            // A zero row has probability 0; resample defensively all the same.
            if norm < 1e-300 {
                for c in 0..d {
                    m[(i, c)] = rng.sample::<f64, _>(StandardNormal);
                }
            }
            let norm = m.row(i).norm();
            for c in 0..d {
                m[(i, c)] /= norm;
            }
        }
        Configuration { vectors: m }
    }

    pub fn n(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn rows_vec(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| self.vectors.row(i).iter().copied().collect())
            .collect()
    }

    /// CSV form: one vector per line, comma-separated components.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n() {
            let line: Vec<String> = self.vectors.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split(',').map(|t| t.trim().parse::<f64>()).collect();
            match row {
                Ok(r) => rows.push(r),
                Err(e) => {
                    return Err(Error::CsvParse {
                        line: lineno + 1,
                        message: e.to_string(),
                    })
                }
            }
        }
        Configuration::from_rows(&rows)
    }

    /// Internal constructor for rows already known to be unit-norm.
    pub(crate) fn from_unit_rows(vectors: DMatrix<f64>) -> Self {
        debug_assert!((0..vectors.nrows()).all(|i| (vectors.row(i).norm() - 1.0).abs() <= 1e-9));
        Configuration { vectors }
    }
}

/// Symmetric N×N matrix of signed inner products with unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GramJson", into = "GramJson")]
pub struct GramMatrix {
    entries: DMatrix<f64>,
}

/// Wire format: `{"n": int, "entries": [[f64]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GramJson {
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl TryFrom<GramJson> for GramMatrix {
    type Error = Error;

    fn try_from(j: GramJson) -> Result<Self> {
        if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.n) {
            return Err(Error::ShapeMismatch(format!(
                "expected {n}x{n} entries",
                n = j.n
            )));
        }
        let m = DMatrix::from_fn(j.n, j.n, |i, c| j.entries[i][c]);
        GramMatrix::new(m)
    }
}

impl From<GramMatrix> for GramJson {
    fn from(g: GramMatrix) -> Self {
        GramJson {
            n: g.n(),
            entries: (0..g.n())
                .map(|i| g.entries.row(i).iter().copied().collect())
                .collect(),
        }
    }
}

impl GramMatrix {
    /// Validates symmetry, unit diagonal, and positive semidefiniteness.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::ShapeMismatch("gram matrix must be square".into()));
        }
        let n = entries.nrows();
        let mut max_asym = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                max_asym = max_asym.max((entries[(i, j)] - entries[(j, i)]).abs());
            }
        }
        if max_asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric {
                max_asymmetry: max_asym,
            });
        }
        for i in 0..n {
            let v = entries[(i, i)];
            if (v - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::DiagonalNotUnit {
                    index: i,
                    value: v,
                    tol: UNIT_NORM_TOL,
                });
            }
        }
        let min_eig = sorted_eigen(&entries)
            .0
            .last()
            .copied()
            .expect("nonempty eigenvalues");
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min_eig,
            });
        }
        Ok(GramMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Count of eigenvalues at or above [`RANK_TOL`].
    pub fn numerical_rank(&self) -> usize {
        sorted_eigen(&self.entries)
            .0
            .iter()
            .filter(|&&l| l >= RANK_TOL)
            .count()
    }
}

/// Unit vector y with G·y numerically zero.
#[derive(Debug, Clone, Serialize)]
pub struct NullVector {
    coords: Vec<f64>,
    residual: f64,
}

impl NullVector {
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Gram matrix of a configuration: entries are the pairwise inner products.
///
/// Each unordered pair's dot product is computed once and mirrored, so the
/// result is exactly symmetric; PSD holds by construction.
pub fn gram(x: &Configuration) -> GramMatrix {
    let n = x.n();
    let v = x.vectors();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = v.row(i).dot(&v.row(i));
        for j in (i + 1)..n {
            let d = v.row(i).dot(&v.row(j));
            g[(i, j)] = d;
            g[(j, i)] = d;
        }
    }
    GramMatrix { entries: g }
}

/// The k+1 vertices of a regular simplex on the unit sphere of R^k, as rows.
/// Pairwise inner products are exactly -1/k: the centered standard basis of
/// R^{k+1}, expressed in the Helmert orthonormal basis of the hyperplane
/// orthogonal to (1,...,1), then rescaled to unit norm.
fn regular_simplex_rows(k: usize) -> DMatrix<f64> {
    let scale = ((k as f64 + 1.0) / k as f64).sqrt();
    DMatrix::from_fn(k + 1, k, |i, j| {
        let denom = ((j + 1) as f64 * (j + 2) as f64).sqrt();
        let h = if i < j + 1 {
            1.0
        } else if i == j + 1 {
            -((j + 1) as f64)
        } else {
            0.0
        };
        scale * h / denom
    })
}

/// The lifted ETF L_k^d: d+1 unit vectors in R^d whose pairwise inner
/// products have magnitude 1/k inside the leading (k+1)-vector block and 0
/// elsewhere.
///
/// The block carries the signed value -1/k (regular simplex), which makes it
/// singular and hence realizable in k dimensions; the remaining d-k vectors
/// are the standard basis of the orthogonal complement.
pub fn lifted_etf(d: usize, k: usize) -> Result<Configuration> {
    if d < 1 {
        return Err(Error::param("lifted_etf requires d >= 1"));
    }
    if k < 1 || k > d {
        return Err(Error::param(format!(
            "lifted_etf requires 1 <= k <= d, got k = {k}, d = {d}"
        )));
    }
    let simplex = regular_simplex_rows(k);
    let n = d + 1;
    let m = DMatrix::from_fn(n, d, |i, c| {
        if i <= k {
            if c < k {
                simplex[(i, c)]
            } else {
                0.0
            }
        } else {
            // rows k+1..d are e_k, ..., e_{d-1}
            if c == i - 1 {
                1.0
            } else {
                0.0
            }
        }
    });
    Ok(Configuration::from_unit_rows(m))
}

/// Standard basis of R^d followed by m repeats, the j-th repeat duplicating
/// basis vector e_{j mod d}. With m < d the repeats land on distinct basis
/// vectors, the minimizing arrangement.
pub fn onb_plus_repeats(d: usize, m: usize) -> Result<Configuration> {
    if d < 1 {
        return Err(Error::param("onb_plus_repeats requires d >= 1"));
    }
    let n = d + m;
    let mat = DMatrix::from_fn(n, d, |i, c| {
        let target = if i < d { i } else { (i - d) % d };
        if c == target {
            1.0
        } else {
            0.0
        }
    });
    Ok(Configuration::from_unit_rows(mat))
}

/// Eigenvalues sorted descending with matching eigenvector columns.
fn sorted_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Factors a PSD Gram matrix of numerical rank <= d into d-dimensional unit
/// vectors: rows of V_d * diag(sqrt(lambda_d)), renormalized.
pub fn realize_gram(g: &GramMatrix, d: usize) -> Result<Configuration> {
    if d < 1 {
        return Err(Error::param("realize_gram requires d >= 1"));
    }
    let n = g.n();
    let (values, vectors) = sorted_eigen(g.entries());
    if let Some(&min) = values.last() {
        if min < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
    }
    let rank = values.iter().filter(|&&l| l >= RANK_TOL).count();
    if rank > d {
        return Err(Error::RankExceedsDimension { rank, dim: d });
    }
    let cols = d.min(n);
    let mut x = DMatrix::zeros(n, d);
    for c in 0..cols {
        let s = values[c].max(0.0).sqrt();
        for r in 0..n {
            x[(r, c)] = vectors[(r, c)] * s;
        }
    }
    // Diagonal entries of G are 1, so each row norm is 1 up to the truncated
    // spectrum; renormalize to restore the unit-norm invariant exactly.
    for r in 0..n {
        let norm = x.row(r).norm();
        for c in 0..d {
            x[(r, c)] /= norm;
        }
    }
    Ok(Configuration::from_unit_rows(x))
}

/// Unit eigenvector of the smallest eigenvalue, accepted only when the
/// residual ||G y|| is at most [`NULLSPACE_TOL`]. The first coordinate with
/// magnitude above 1e-12 is made positive so the choice is reproducible.
pub fn null_space_vector(g: &GramMatrix) -> Result<NullVector> {
    let (values, vectors) = sorted_eigen(g.entries());
    let n = g.n();
    let min_eig = values[n - 1];
    if min_eig.abs() > NULLSPACE_TOL {
        return Err(Error::FullRank {
            min_eigenvalue: min_eig,
            tol: NULLSPACE_TOL,
        });
    }
    let mut y = DVector::from_fn(n, |i, _| vectors[(i, n - 1)]);
    let norm = y.norm();
    y /= norm;
    if let Some(first) = y.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            y = -y;
        }
    }
    let residual = (g.entries() * &y).norm();
    if residual > NULLSPACE_TOL {
        return Err(Error::FullRank {
            min_eigenvalue: min_eig,
            tol: NULLSPACE_TOL,
        });
    }
    Ok(NullVector {
        coords: y.iter().copied().collect(),
        residual,
    })
}

/// Sorted multiset of off-diagonal |<x_i, x_j>| values (ascending, length
/// N(N-1)/2). Invariant under orthogonal transforms, per-vector sign flips,
/// and permutations of the vectors.
pub fn canonical_signature(x: &Configuration) -> Vec<f64> {
    let g = gram(x);
    let n = x.n();
    let mut sig = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            sig.push(g.entry(i, j).abs());
        }
    }
    sig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn gram_of_orthonormal_pair_is_identity() {
        let x = Configuration::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let g = gram(&x);
        assert_eq!(g.entry(0, 0), 1.0);
        assert_eq!(g.entry(1, 1), 1.0);
        assert_eq!(g.entry(0, 1), 0.0);
        assert_eq!(g.entry(1, 0), 0.0);
    }

    #[test]
    fn gram_of_lifted_etf_3_2_has_simplex_block() {
        let x = lifted_etf(3, 2).unwrap();
        let g = gram(&x);
        for i in 0..4 {
            assert!(approx(g.entry(i, i), 1.0, 1e-12));
            for j in (i + 1)..4 {
                if i <= 2 && j <= 2 {
                    assert!(approx(g.entry(i, j), -0.5, 1e-12), "block entry {i},{j}");
                } else {
                    assert!(approx(g.entry(i, j), 0.0, 1e-12), "outer entry {i},{j}");
                }
            }
        }
    }

    #[test]
    fn gram_of_duplicated_row_has_unit_pair() {
        let x = Configuration::from_rows(&[
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        let g = gram(&x);
        assert!(approx(g.entry(0, 1), 1.0, 1e-15));
    }

    #[test]
    fn non_unit_row_is_rejected_with_diagnostics() {
        let err = Configuration::from_rows(&[vec![1.0, 0.0], vec![0.9, 0.0]]).unwrap_err();
        match err {
            Error::NonUnitRow { index, norm, .. } => {
                assert_eq!(index, 1);
                assert!(approx(norm, 0.9, 1e-12));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn lifted_etf_2_2_is_mercedes_benz() {
        let x = lifted_etf(2, 2).unwrap();
        assert_eq!(x.n(), 3);
        assert_eq!(x.dim(), 2);
        let g = gram(&x);
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(approx(g.entry(i, j).abs(), 0.5, 1e-12));
            }
        }
    }

    #[test]
    fn lifted_etf_3_1_matches_onb_plus_repeat() {
        let a = canonical_signature(&lifted_etf(3, 1).unwrap());
        let b = canonical_signature(&onb_plus_repeats(3, 1).unwrap());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!(approx(*x, *y, 1e-12));
        }
    }

    #[test]
    fn lifted_etf_5_3_magnitude_counts() {
        let x = lifted_etf(5, 3).unwrap();
        let g = gram(&x);
        let mut third = 0;
        let mut zero = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                let a = g.entry(i, j).abs();
                if approx(a, 1.0 / 3.0, 1e-12) {
                    third += 1;
                } else if a < 1e-12 {
                    zero += 1;
                }
            }
        }
        assert_eq!(third, 6); // C(4,2)
        assert_eq!(third + zero, 15);
    }

    #[test]
    fn lifted_etf_range_checks() {
        assert!(lifted_etf(3, 0).is_err());
        assert!(lifted_etf(3, 4).is_err());
    }

    #[test]
    fn onb_plus_repeats_shapes() {
        let x = onb_plus_repeats(2, 0).unwrap();
        assert_eq!(x.n(), 2);
        let sig = canonical_signature(&x);
        assert_eq!(sig, vec![0.0]);

        let x = onb_plus_repeats(2, 1).unwrap();
        let sig = canonical_signature(&x);
        assert_eq!(sig.len(), 3);
        assert!(approx(sig[0], 0.0, 1e-15));
        assert!(approx(sig[1], 0.0, 1e-15));
        assert!(approx(sig[2], 1.0, 1e-15));
    }

    #[test]
    fn onb_plus_repeats_distributes_copies() {
        // d=4, m=2: repeats duplicate e_0 and e_1, giving exactly two unit
        // pairs in the signature.
        let x = onb_plus_repeats(4, 2).unwrap();
        let sig = canonical_signature(&x);
        let units = sig.iter().filter(|v| approx(**v, 1.0, 1e-12)).count();
        assert_eq!(units, 2);
    }

    #[test]
    fn realize_identity_gram() {
        let g = GramMatrix::new(DMatrix::identity(3, 3)).unwrap();
        let x = realize_gram(&g, 3).unwrap();
        let gg = gram(&x);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(approx(gg.entry(i, j), want, 1e-10));
            }
        }
    }

    #[test]
    fn realize_gram_round_trip_l23() {
        let x = lifted_etf(3, 2).unwrap();
        let g = gram(&x);
        let y = realize_gram(&g, 3).unwrap();
        let g2 = gram(&y);
        for i in 0..4 {
            for j in 0..4 {
                assert!(approx(g.entry(i, j), g2.entry(i, j), 1e-8));
            }
        }
    }

    #[test]
    fn realize_rank_one_gram() {
        let g = GramMatrix::new(DMatrix::from_element(2, 2, 1.0)).unwrap();
        let x = realize_gram(&g, 1).unwrap();
        let gg = gram(&x);
        assert!(approx(gg.entry(0, 1), 1.0, 1e-10));
    }

    #[test]
    fn realize_rejects_rank_overflow() {
        let g = GramMatrix::new(DMatrix::identity(3, 3)).unwrap();
        match realize_gram(&g, 2) {
            Err(Error::RankExceedsDimension { rank, dim }) => {
                assert_eq!((rank, dim), (3, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gram_matrix_rejects_non_psd() {
        // symmetric, unit diagonal, eigenvalues {1 +/- 2}
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(
            GramMatrix::new(m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn null_vector_of_signed_simplex_is_uniform() {
        for d in 2..=6 {
            let x = lifted_etf(d, d).unwrap();
            let y = null_space_vector(&gram(&x)).unwrap();
            let want = 1.0 / ((d + 1) as f64).sqrt();
            for v in y.coords() {
                assert!(approx(*v, want, 1e-8));
            }
            assert!(y.residual() <= NULLSPACE_TOL);
        }
    }

    #[test]
    fn null_vector_of_lifted_etf_is_uniform_on_block() {
        let x = lifted_etf(5, 2).unwrap();
        let y = null_space_vector(&gram(&x)).unwrap();
        let want = 1.0 / 3.0f64.sqrt();
        for (i, v) in y.coords().iter().enumerate() {
            let target = if i <= 2 { want } else { 0.0 };
            assert!(approx(*v, target, 1e-8), "coord {i} = {v}");
        }
    }

    #[test]
    fn null_vector_rejects_full_rank() {
        let g = GramMatrix::new(DMatrix::identity(3, 3)).unwrap();
        assert!(matches!(null_space_vector(&g), Err(Error::FullRank { .. })));
    }

    #[test]
    fn signature_of_lifted_etf_4_2() {
        let sig = canonical_signature(&lifted_etf(4, 2).unwrap());
        assert_eq!(sig.len(), 10);
        for v in &sig[..7] {
            assert!(v.abs() < 1e-12);
        }
        for v in &sig[7..] {
            assert!(approx(*v, 0.5, 1e-12));
        }
    }

    #[test]
    fn signature_invariant_under_orthogonal_and_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = lifted_etf(4, 3).unwrap();
        let base = canonical_signature(&x);
        for _ in 0..20 {
            let gauss = DMatrix::from_fn(4, 4, |_, _| rng.sample::<f64, _>(StandardNormal));
            let q = gauss.qr().q();
            let mut rotated = x.vectors() * q.transpose();
            for i in 0..rotated.nrows() {
                if rng.random::<bool>() {
                    for c in 0..rotated.ncols() {
                        rotated[(i, c)] *= -1.0;
                    }
                }
            }
            let y = Configuration::new(rotated).unwrap();
            let sig = canonical_signature(&y);
            for (a, b) in base.iter().zip(sig.iter()) {
                assert!(approx(*a, *b, 1e-10));
            }
        }
    }

    #[test]
    fn round_trip_all_lifted_etfs() {
        for d in 1..=8 {
            for k in 1..=d {
                let x = lifted_etf(d, k).unwrap();
                let g = gram(&x);
                let y = realize_gram(&g, d).unwrap();
                let g2 = gram(&y);
                for i in 0..=d {
                    for j in 0..=d {
                        assert!(
                            approx(g.entry(i, j), g2.entry(i, j), 1e-8),
                            "d={d} k={k} entry {i},{j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn leading_block_of_lifted_etf_is_singular() {
        for d in 2..=8 {
            for k in 1..=d {
                let x = lifted_etf(d, k).unwrap();
                let g = gram(&x);
                let block = DMatrix::from_fn(k + 1, k + 1, |i, j| g.entry(i, j));
                let eig = nalgebra::SymmetricEigen::new(block);
                let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
                assert!(min.abs() <= 1e-10, "d={d} k={k} min block eigenvalue {min}");
            }
        }
    }

    #[test]
    fn signature_counts_for_lifted_etfs() {
        for d in 2..=8 {
            for k in 1..=d {
                let sig = canonical_signature(&lifted_etf(d, k).unwrap());
                let big = sig
                    .iter()
                    .filter(|v| approx(**v, 1.0 / k as f64, 1e-10))
                    .count();
                let small = sig.iter().filter(|v| **v < 1e-10).count();
                assert_eq!(big, k * (k + 1) / 2, "d={d} k={k}");
                assert_eq!(big + small, sig.len(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn configuration_json_round_trip_and_validation() {
        let x = lifted_etf(3, 2).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        let back: Configuration = serde_json::from_str(&text).unwrap();
        assert_eq!(x, back);

        let bad = r#"{"d": 2, "n": 1, "vectors": [[0.5, 0.0]]}"#;
        assert!(serde_json::from_str::<Configuration>(bad).is_err());
    }

    #[test]
    fn configuration_csv_round_trip() {
        let x = lifted_etf(4, 2).unwrap();
        let text = x.to_csv();
        let back = Configuration::from_csv(&text).unwrap();
        for i in 0..x.n() {
            for c in 0..x.dim() {
                assert_eq!(x.vectors()[(i, c)], back.vectors()[(i, c)]);
            }
        }
    }
}
