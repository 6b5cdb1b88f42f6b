//! Small finite-dimensional algebras given by structure constants.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix, Scalar};

/// Random candidates tried by [`StructureConstants::division_evidence`].
pub const DIVISION_SAMPLES: usize = 64;
/// Exhaustive search bound over `F_p`: `p^dim` elements at most.
pub const DIVISION_EXHAUSTIVE_LIMIT: u128 = 1 << 16;

/// Algebra with basis `e_0..e_{n-1}`; `table[i][j]` holds the coordinates of
/// `e_i e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    field: Field,
    table: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DivisionEvidence {
    Positive { reason: String },
    Negative { reason: String, witness: Vec<String> },
    Inconclusive { reason: String },
}

impl DivisionEvidence {
    pub fn is_positive(&self) -> bool {
        matches!(self, DivisionEvidence::Positive { .. })
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, DivisionEvidence::Negative { .. })
    }
}

impl StructureConstants {
    pub fn new(field: Field, table: Vec<Vec<Vec<Scalar>>>) -> Self {
        StructureConstants { field, table }
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul(x, &unit(self.field, n, j))).collect();
        Matrix::from_fn(self.field, n, n, |i, j| cols[j][i].clone())
    }

    /// Kernel of the trace form `tr(L_{xy})`, as coordinate columns. Equals the
    /// Jacobson radical in characteristic 0 or `p > dim`.
    pub fn trace_radical(&self) -> Matrix {
        let n = self.dim();
        let traces: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.left_mult(&self.table[i][j]).trace()).collect())
            .collect();
        Matrix::from_fn(self.field, n, n, |i, j| traces[i][j].clone()).kernel_basis()
    }

    /// Quotient by a two-sided ideal spanned by the given columns.
    pub fn quotient(&self, ideal: &Matrix) -> StructureConstants {
        let n = self.dim();
        if ideal.cols() == 0 {
            return self.clone();
        }
        let extended = ideal.hstack(&Matrix::identity(self.field, n)).expect("same height");
        let (_, pivots) = extended.rref();
        let change = extended.select_columns(&pivots);
        let inv = change.inverse().expect("pivot columns form a basis");
        let r = ideal.cols();
        let complement: Vec<Vec<Scalar>> = pivots[r..].iter().map(|&c| extended.col(c)).collect();
        let coords = |v: Vec<Scalar>| -> Vec<Scalar> {
            let full = &inv * &Matrix::column(self.field, v);
            full.col(0)[r..].to_vec()
        };
        let table = complement
            .iter()
            .map(|x| complement.iter().map(|y| coords(self.mul(x, y))).collect())
            .collect();
        StructureConstants { field: self.field, table }
    }

    /// Looks for evidence that the algebra is (or is not) a division ring.
    /// Assumes the algebra is unital.
    pub fn division_evidence(&self, seed: u64) -> DivisionEvidence {
        let n = self.dim();
        let f = self.field;
        if n == 0 {
            return DivisionEvidence::Negative { reason: "zero algebra".into(), witness: Vec::new() };
        }
        let char_ok = f.characteristic() == 0 || f.characteristic() > n as u64;
        if char_ok {
            let rad = self.trace_radical();
            if rad.cols() > 0 {
                return DivisionEvidence::Negative {
                    reason: "nonzero radical".into(),
                    witness: rad.col(0).iter().map(ToString::to_string).collect(),
                };
            }
        }
        if n == 1 {
            return if self.table[0][0][0].is_zero() {
                DivisionEvidence::Negative { reason: "square-zero generator".into(), witness: vec![f.one().to_string()] }
            } else {
                DivisionEvidence::Positive { reason: "one-dimensional".into() }
            };
        }
        let zero_divisor = |x: &[Scalar]| x.iter().any(|c| !c.is_zero()) && !self.left_mult(x).is_invertible();
        let negative = |x: Vec<Scalar>| DivisionEvidence::Negative {
            reason: "zero divisor".into(),
            witness: x.iter().map(ToString::to_string).collect(),
        };
        if let Field::Prime(p) = f {
            if (p as u128).checked_pow(n as u32).is_some_and(|total| total <= DIVISION_EXHAUSTIVE_LIMIT) {
                let total = (p as u128).pow(n as u32);
                for code in 1..total {
                    let mut c = code;
                    let x: Vec<Scalar> = (0..n)
                        .map(|_| {
                            let r = (c % p as u128) as u64;
                            c /= p as u128;
                            Scalar::Mod { r, p }
                        })
                        .collect();
                    if zero_divisor(&x) {
                        return negative(x);
                    }
                }
                return DivisionEvidence::Positive { reason: format!("no zero divisor among all {total} elements") };
            }
        }
        if n <= 8 {
            for code in 1..3u32.pow(n as u32) {
                let mut c = code;
                let x: Vec<Scalar> = (0..n)
                    .map(|_| {
                        let d = (c % 3) as i64 - 1;
                        c /= 3;
                        f.from_i64(d)
                    })
                    .collect();
                if zero_divisor(&x) {
                    return negative(x);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..DIVISION_SAMPLES {
            let x = Matrix::random_with(&mut rng, f, n, 1).col(0);
            if zero_divisor(&x) {
                return negative(x);
            }
        }
        DivisionEvidence::Inconclusive { reason: format!("no zero divisor found in dimension {n}") }
    }
}

fn unit(field: Field, n: usize, j: usize) -> Vec<Scalar> {
    (0..n).map(|i| if i == j { field.one() } else { field.zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex_numbers(field: Field) -> StructureConstants {
        // basis 1, i with i^2 = -1
        let z = field.zero();
        let o = field.one();
        let m = -field.one();
        StructureConstants::new(
            field,
            vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![vec![z.clone(), o], vec![m, z]]],
        )
    }

    #[test]
    fn gaussian_field_over_f3_is_division() {
        let f = Field::prime(3).unwrap();
        assert!(complex_numbers(f).division_evidence(0).is_positive());
    }

    #[test]
    fn split_over_f5() {
        let f = Field::prime(5).unwrap();
        assert!(complex_numbers(f).division_evidence(0).is_negative());
    }

    #[test]
    fn dual_numbers_have_radical() {
        let f = Field::Rationals;
        let (z, o) = (f.zero(), f.one());
        let sc = StructureConstants::new(
            f,
            vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![vec![z.clone(), o], vec![z.clone(), z]]],
        );
        assert_eq!(sc.trace_radical().cols(), 1);
        assert!(sc.division_evidence(0).is_negative());
        let q = sc.quotient(&sc.trace_radical());
        assert_eq!(q.dim(), 1);
        assert!(q.division_evidence(0).is_positive());
    }

    #[test]
    fn rational_gaussians_are_inconclusive() {
        assert!(matches!(complex_numbers(Field::Rationals).division_evidence(0), DivisionEvidence::Inconclusive { .. }));
    }
}
