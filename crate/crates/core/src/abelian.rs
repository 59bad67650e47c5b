//! Integer linear algebra: Smith normal form, lattice membership, kernels
//! and abelianization.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::presentation::Presentation;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// From row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(IntMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    m[(i, j)] += prod;
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    // col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        f.write_str("]")
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by elementary operations. Pivot rule: the nonzero entry
/// of least absolute value in the remaining block, first in row-major order.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            // pick pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match best {
                Some(p) => p,
                None => break,
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(d[(i, t)].div_floor(&d[(t, t)]));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(d[(t, j)].div_floor(&d[(t, t)]));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = d[(t, t)].clone();
            let bad = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

/// Integer coordinates `c` with `Σ cᵢ · basisᵢ = v`, or `None`.
pub fn lattice_membership(basis: &[Vec<BigInt>], v: &[BigInt]) -> Result<Option<Vec<BigInt>>, Error> {
    let dim = v.len();
    // columns are the basis vectors
    let rows: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            basis
                .iter()
                .map(|b| {
                    if b.len() != dim {
                        Err(Error::DimensionMismatch { expected: dim, found: b.len() })
                    } else {
                        Ok(b[i].clone())
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    for b in basis {
        if b.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: b.len() });
        }
    }
    let m = IntMatrix::from_rows(basis.len(), &rows)?;
    let s = smith_normal_form(&m);
    let uv = s.u.mul_vec(v)?;
    let mut y = alloc::vec![BigInt::zero(); basis.len()];
    for i in 0..dim {
        let di = if i < basis.len() { s.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !uv[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = uv[i].div_rem(&di);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}

/// A basis of `{x : M x = 0}` over `Z`, each vector with its first nonzero
/// entry positive.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    let rank = s.rank();
    (rank..m.cols)
        .map(|j| {
            let mut col = s.v.column(j);
            if col.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative()) {
                for x in col.iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            col
        })
        .collect()
}

/// Relation matrix (relators × generators of exponent sums) and the
/// resulting abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub matrix: IntMatrix,
    pub smith: SmithDecomposition,
}

impl Abelianization {
    /// The group as `⊕ Z/dᵢ` with the trivial factors dropped and `0`
    /// standing for `Z`: one entry per generator beyond the unit factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let diag = self.smith.diagonal();
        (0..self.matrix.cols())
            .map(|j| diag.get(j).cloned().unwrap_or_else(BigInt::zero))
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.matrix.cols() - self.smith.rank()
    }

    /// Orders of the finite cyclic factors.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().filter(|d| !d.is_zero()).collect()
    }
}

pub fn abelianize(p: &Presentation) -> Abelianization {
    let rank = p.rank();
    let rows: Vec<Vec<BigInt>> =
        p.relators().iter().map(|r| r.exponent_sums(rank).into_iter().map(BigInt::from).collect()).collect();
    let matrix = IntMatrix::from_rows(rank, &rows).expect("exponent vectors have the alphabet's length");
    let smith = smith_normal_form(&matrix);
    Abelianization { matrix, smith }
}

/// Generators of `L₁ ∩ L₂` modulo the relation lattice `R`, expressed as
/// coefficient vectors over `l1`.
pub fn lattice_intersection_coefficients(
    l1: &[Vec<BigInt>],
    l2: &[Vec<BigInt>],
    relations: &[Vec<BigInt>],
    dim: usize,
) -> Result<Vec<Vec<BigInt>>, Error> {
    for v in l1.iter().chain(l2).chain(relations) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
    }
    // Σ cᵢ l1ᵢ − Σ dⱼ l2ⱼ − Σ eₖ rₖ = 0
    let cols = l1.len() + l2.len() + relations.len();
    let mut m = IntMatrix::zeros(dim, cols);
    for i in 0..dim {
        for (j, v) in l1.iter().enumerate() {
            m[(i, j)] = v[i].clone();
        }
        for (j, v) in l2.iter().enumerate() {
            m[(i, l1.len() + j)] = -v[i].clone();
        }
        for (j, v) in relations.iter().enumerate() {
            m[(i, l1.len() + l2.len() + j)] = -v[i].clone();
        }
    }
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for k in integer_kernel(&m) {
        let c: Vec<BigInt> = k[..l1.len()].to_vec();
        if c.iter().any(|x| !x.is_zero()) && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;
    use alloc::vec;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        s
    }

    #[test]
    fn smith_examples() {
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]).unwrap());
        assert_eq!(s.diagonal(), bi(&[1, 6]));
        let z = IntMatrix::zeros(2, 3);
        let s = check(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn lattice_examples() {
        let basis = vec![bi(&[2, 0]), bi(&[0, 3])];
        assert_eq!(lattice_membership(&basis, &bi(&[4, 3])).unwrap(), Some(bi(&[2, 1])));
        assert_eq!(lattice_membership(&basis, &bi(&[0, 0])).unwrap(), Some(bi(&[0, 0])));
        assert_eq!(lattice_membership(&basis, &bi(&[1, 0])).unwrap(), None);
        assert!(lattice_membership(&basis, &bi(&[1])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&IntMatrix::from_i64(1, 2, &[1, 1]).unwrap()), vec![bi(&[1, -1])]);
        assert!(integer_kernel(&IntMatrix::identity(2)).is_empty());
        assert_eq!(integer_kernel(&IntMatrix::zeros(1, 2)).len(), 2);
    }

    #[test]
    fn abelianization_examples() {
        let comm = Word::from_powers(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let z2 = Presentation::from_names("Z2", &["a", "b"], vec![comm]).unwrap();
        let ab = abelianize(&z2);
        assert!(ab.matrix.is_zero());
        assert_eq!(ab.invariant_factors(), bi(&[0, 0]));

        let trefoil = Presentation::from_names("T", &["x", "y"], vec![Word::from_powers(&[(0, 2), (1, -3)])]).unwrap();
        let ab = abelianize(&trefoil);
        assert_eq!(ab.smith.diagonal(), bi(&[1]));
        assert_eq!(ab.invariant_factors(), bi(&[0]));
        assert_eq!(ab.free_rank(), 1);

        let c5 = Presentation::from_names("C5", &["a"], vec![Word::generator_power(0, 5)]).unwrap();
        assert_eq!(abelianize(&c5).invariant_factors(), bi(&[5]));
    }
}
