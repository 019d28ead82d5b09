//! Dense square matrices over cyclotomic fields.

use std::fmt;

use num_rational::BigRational;

use crate::cyclo::{Cyclo, CycloError};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Cyclo>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Cyclo::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Cyclo::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Cyclo) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn try_from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Result<Cyclo, CycloError>,
    ) -> Result<Self, CycloError> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Cyclo>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(d: &[Cyclo]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Signed permutation matrix with entry `signs[a]` at (a, perm[a]).
    pub fn monomial(perm: &[usize], signs: &[i8]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n);
        for a in 0..n {
            m.data[a * n + perm[a]] = Cyclo::from_int(signs[a] as i64);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclo] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[Cyclo] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&Cyclo) -> Cyclo) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&Cyclo) -> Result<Cyclo, CycloError>,
    ) -> Result<Self, CycloError> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(Cyclo::conj)
    }

    /// Entrywise σ_ℓ.
    pub fn galois(&self, ell: i64) -> Result<Self, CycloError> {
        self.try_map(|z| z.galois(ell))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let cols: Vec<Vec<&Cyclo>> = (0..n)
            .map(|j| (0..n).map(|k| other.get(k, j)).collect())
            .collect();
        Self::try_from_fn(n, |i, j| {
            Cyclo::dot(self.row(i).iter().zip(cols[j].iter().copied()))
        })
    }

    /// self · diag(d)
    pub fn mul_diag(&self, d: &[Cyclo]) -> Result<Self, CycloError> {
        Self::try_from_fn(self.n, |i, j| self.get(i, j).checked_mul(&d[j]))
    }

    /// diag(d) · self
    pub fn diag_mul(&self, d: &[Cyclo]) -> Result<Self, CycloError> {
        Self::try_from_fn(self.n, |i, j| d[i].checked_mul(self.get(i, j)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        Self::try_from_fn(self.n, |i, j| self.get(i, j).checked_add(other.get(i, j)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        Self::try_from_fn(self.n, |i, j| self.get(i, j).checked_sub(other.get(i, j)))
    }

    pub fn scale(&self, c: &Cyclo) -> Result<Self, CycloError> {
        self.try_map(|z| z.checked_mul(c))
    }

    pub fn pow(&self, e: u64) -> Result<Self, CycloError> {
        let mut acc = Self::identity(self.n);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.first_difference(&Self::identity(self.n)).is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// First (row-major) index pair where two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        (0..self.n * self.n)
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / self.n, k % self.n))
    }

    /// Interpret as a signless permutation matrix: perm[i] = column of the single 1 in row i.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut perm = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let z = self.get(i, j);
                if z.is_zero() {
                    continue;
                }
                if !z.is_one() || hit.is_some() {
                    return None;
                }
                hit = Some(j);
            }
            let j = hit?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            perm.push(j);
        }
        Some(perm)
    }

    /// All entries rational.
    pub fn as_rational(&self) -> Option<Vec<BigRational>> {
        self.data.iter().map(Cyclo::as_rational).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclo::is_zero)
    }

    pub fn to_complex(&self) -> Vec<(f64, f64)> {
        self.data.iter().map(Cyclo::to_complex).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|z| z.to_string()).collect();
            writeln!(f, "  {}", row.join(" | "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of the rows of `rows` in place over the cyclotomics.
/// Returns pivot columns; zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Cyclo>>) -> Result<Vec<usize>, CycloError> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv()?;
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.checked_mul(&inv)?;
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for c in col..width {
                if rows[r][c].is_zero() {
                    continue;
                }
                let t = rows[r][c].checked_mul(&f)?;
                rows[i][c] = rows[i][c].checked_sub(&t)?;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Ok(pivots)
}

/// Basis of {x : A x = 0} for the linear system with the given rows.
pub fn nullspace(mut rows: Vec<Vec<Cyclo>>, width: usize) -> Result<Vec<Vec<Cyclo>>, CycloError> {
    rows.retain(|r| r.iter().any(|z| !z.is_zero()));
    let pivots = if rows.is_empty() {
        Vec::new()
    } else {
        rref(&mut rows)?
    };
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Cyclo::zero(); width];
        v[free] = Cyclo::one();
        for (r, &p) in pivots.iter().enumerate() {
            if !rows[r][free].is_zero() {
                v[p] = -&rows[r][free];
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Express `v` in an RREF basis with the given pivots; None if outside the span.
pub fn coordinates(basis: &[Vec<Cyclo>], pivots: &[usize], v: &[Cyclo]) -> Option<Vec<Cyclo>> {
    let coords: Vec<Cyclo> = pivots.iter().map(|&p| v[p].clone()).collect();
    for k in 0..v.len() {
        let pairs = coords.iter().zip(basis.iter().map(|b| &b[k]));
        let s = Cyclo::dot(pairs).ok()?;
        if s != v[k] {
            return None;
        }
    }
    Some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Cyclo {
        Cyclo::from_int(v)
    }

    #[test]
    fn product_and_identity() {
        let i = Cyclo::root_of_unity(4, 1);
        let a = Matrix::from_rows(vec![vec![c(1), i.clone()], vec![c(0), c(2)]]);
        assert_eq!(a.checked_mul(&Matrix::identity(2)).unwrap(), a);
        let sq = a.checked_mul(&a).unwrap();
        assert_eq!(sq.get(0, 1), &(&i * &c(3)));
        assert_eq!(a.pow(2).unwrap(), sq);
    }

    #[test]
    fn permutation_detection() {
        let p = Matrix::monomial(&[1, 0, 2], &[1, 1, 1]);
        assert_eq!(p.as_permutation(), Some(vec![1, 0, 2]));
        let q = Matrix::monomial(&[1, 0, 2], &[1, -1, 1]);
        assert_eq!(q.as_permutation(), None);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)]];
        let ns = nullspace(rows.clone(), 3).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s = Cyclo::dot(rows[0].iter().zip(v.iter())).unwrap();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn coordinates_in_rref_basis() {
        let mut rows = vec![vec![c(2), c(4), c(0)], vec![c(0), c(0), c(3)]];
        let piv = rref(&mut rows).unwrap();
        assert_eq!(piv, vec![0, 2]);
        assert!(coordinates(&rows, &piv, &[c(1), c(2), c(5)]).is_some());
        assert!(coordinates(&rows, &piv, &[c(1), c(3), c(5)]).is_none());
    }
}
