use super::field::{Coeff, Field};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Square matrix of polynomials with degree bookkeeping: a nonzero entry
/// `(i, j)` is homogeneous of degree `row_degrees[i] - col_degrees[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub entries: Vec<Vec<MultiPoly>>,
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
}

impl GradedMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    /// Verifies the degree pattern entry by entry.
    pub fn check_degrees(&self) -> Result<()> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let expected = self.row_degrees[i] - self.col_degrees[j];
                let d = f.homogeneous_degree()? as i64;
                if d != expected {
                    return Err(Error::InternalInvariant(format!(
                        "entry ({i},{j}) has degree {d}, expected {expected}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| row[..i].iter().all(MultiPoly::is_zero))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// Rank of a matrix over `field` by Gaussian elimination.
pub fn scalar_rank(field: Field, mut rows: Vec<Vec<Coeff>>) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col])?;
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = field.mul(&rows[i][col], &inv);
            for j in col..ncols {
                let t = field.mul(&factor, &rows[rank][j]);
                rows[i][j] = field.sub(&rows[i][j], &t);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let q = Field::Rational;
        let m = |v: &[&[i64]], f: Field| v.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        assert_eq!(scalar_rank(q, m(&[&[1, 2], &[2, 4]], q)).unwrap(), 1);
        assert_eq!(scalar_rank(q, m(&[&[1, 2], &[2, 5]], q)).unwrap(), 2);
        assert_eq!(scalar_rank(q, Vec::new()).unwrap(), 0);
        let f3 = Field::Prime(3);
        assert_eq!(scalar_rank(f3, m(&[&[1, 2], &[2, 1]], f3)).unwrap(), 1);
        assert_eq!(scalar_rank(q, m(&[&[0, 0, 1], &[0, 1, 0]], q)).unwrap(), 2);
    }
}
