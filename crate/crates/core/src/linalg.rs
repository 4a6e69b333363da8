//! Dense exact linear algebra over Q.

use crate::poly::Poly;
use crate::rational::Rat;

pub type Vector = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Rat>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i][j]
    }

    pub fn col(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Rat::is_zero)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self.data[i][k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        out.data[i][j] += &(x * &o.data[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vector {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = m.data[r][c].recip().expect("nonzero pivot");
            for x in m.data[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.rows {
                if i == r || m.data[i][c].is_zero() {
                    continue;
                }
                let f = m.data[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = m.data.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.data.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : M·x = 0}.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r.data[row][free];
            }
            out.push(v);
        }
        out
    }

    /// One solution of M·x = y, or `None` when inconsistent.
    pub fn solve(&self, y: &[Rat]) -> Option<Vector> {
        let mut aug = self.clone();
        for (row, v) in aug.data.iter_mut().zip(y) {
            row.push(v.clone());
        }
        aug.cols += 1;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[row][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.clone();
        for (i, row) in aug.data.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        }
        aug.cols = 2 * n;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(
            r.data.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.data[i][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.data.swap(p, c);
                det = -det;
            }
            det *= &m.data[c][c];
            let inv = m.data[c][c].recip().expect("nonzero pivot");
            for i in c + 1..n {
                if m.data[i][c].is_zero() {
                    continue;
                }
                let f = &m.data[i][c] * &inv;
                let (a, b) = m.data.split_at_mut(i);
                for (x, y) in b[0].iter_mut().zip(&a[c]).skip(c) {
                    *x -= &(&f * y);
                }
            }
        }
        det
    }

    /// det(z·I − M) by interpolation at z = 0..n.
    pub fn charpoly(&self) -> Poly {
        let n = self.rows;
        let xs: Vec<Rat> = (0..=n as i64).map(Rat::int).collect();
        let ys: Vec<Rat> = xs
            .iter()
            .map(|z| Matrix::identity(n).scale(z).sub(self).det())
            .collect();
        interpolate(&xs, &ys)
    }

    /// Monic minimal polynomial, from the first linear dependency among powers.
    pub fn minpoly(&self) -> Poly {
        let n = self.rows;
        let flat = |m: &Matrix| m.data.iter().flatten().cloned().collect::<Vector>();
        let mut powers = vec![flat(&Matrix::identity(n))];
        let mut cur = Matrix::identity(n);
        for d in 1..=n {
            cur = cur.mul(self);
            let target = flat(&cur);
            let basis = Matrix::from_cols(&powers, n * n);
            if let Some(x) = basis.solve(&target) {
                let mut c: Vec<Rat> = x.into_iter().map(|v| -v).collect();
                c.push(Rat::one());
                debug_assert_eq!(c.len(), d + 1);
                return Poly::new(c);
            }
            powers.push(target);
        }
        unreachable!("Cayley-Hamilton bounds the degree")
    }
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let mut acc = Poly::new(Vec::new());
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rat::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::linear(-xj));
                denom = denom * (xi - xj);
            }
        }
        let scaled: Vec<Rat> = basis.coeffs().iter().map(|c| c * yi / &denom).collect();
        let mut c = acc.coeffs().to_vec();
        c.resize(c.len().max(scaled.len()), Rat::zero());
        for (a, b) in c.iter_mut().zip(&scaled) {
            *a += b;
        }
        acc = Poly::new(c);
    }
    acc
}

/// Extracts a basis of the span (in order of first appearance).
pub fn independent_subset(vs: &[Vector]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if Matrix::from_rows(trial.clone()).rank() == trial.len() {
            basis = trial;
            kept.push(i);
        }
    }
    kept
}
