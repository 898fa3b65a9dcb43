//! Compressed-row view of a dense matrix, used for repeated matrix-vector
//! products with sparse hosts (shifts, weighted shifts, diagonals).

use super::matrix::{dot, ComplexMatrix, C64, ZERO};

#[derive(Debug, Clone)]
struct Csr {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl Csr {
    fn apply(&self, x: &[C64]) -> Vec<C64> {
        (0..self.row_ptr.len() - 1)
            .map(|i| {
                let r = self.row_ptr[i]..self.row_ptr[i + 1];
                self.cols[r.clone()]
                    .iter()
                    .zip(&self.vals[r])
                    .fold(ZERO, |acc, (&j, v)| acc + v * x[j])
            })
            .collect()
    }
}

/// `A` and `A*` as compressed rows when at most an eighth of the entries
/// are nonzero; dense products otherwise.
#[derive(Debug, Clone)]
pub(crate) struct Operator<'a> {
    dense: &'a ComplexMatrix,
    sparse: Option<(Csr, Csr)>,
}

impl<'a> Operator<'a> {
    pub fn new(a: &'a ComplexMatrix) -> Self {
        let (rows, cols) = (a.rows(), a.cols());
        let nnz = a.as_slice().iter().filter(|z| **z != ZERO).count();
        let sparse = (nnz * 8 <= rows * cols).then(|| {
            let forward = build(rows, (0..rows).map(|i| (0..cols).map(move |j| (j, a[(i, j)]))));
            let backward = build(cols, (0..cols).map(|j| (0..rows).map(move |i| (i, a[(i, j)].conj()))));
            (forward, backward)
        });
        Self { dense: a, sparse }
    }

    pub fn matrix(&self) -> &'a ComplexMatrix {
        self.dense
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        match &self.sparse {
            Some((f, _)) => f.apply(x),
            None => self.dense.matvec(x),
        }
    }

    pub fn adjoint_matvec(&self, x: &[C64]) -> Vec<C64> {
        match &self.sparse {
            Some((_, b)) => b.apply(x),
            None => self.dense.adjoint_matvec(x),
        }
    }

    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        dot(x, &self.matvec(x))
    }
}

fn build<I, R>(rows: usize, entries: I) -> Csr
where
    I: Iterator<Item = R>,
    R: Iterator<Item = (usize, C64)>,
{
    let mut row_ptr = Vec::with_capacity(rows + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);
    for row in entries {
        for (j, v) in row.filter(|(_, v)| *v != ZERO) {
            cols.push(j);
            vals.push(v);
        }
        row_ptr.push(cols.len());
    }
    Csr { row_ptr, cols, vals }
}
