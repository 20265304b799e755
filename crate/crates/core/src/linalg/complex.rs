//! Finite-dimensional cochain complexes over the rationals.

use std::collections::BTreeMap;

use super::matrix::{add_entry, axpy, solve_linear, Matrix, SparseVec};
use super::{LinalgError, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

/// A cochain complex with a named, graded basis and a degree window.
/// Vectors are sparse maps from generator index to coefficient.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    gens: Vec<Generator>,
    diff: Vec<SparseVec>,
    window: (i32, i32),
}

impl CochainComplex {
    /// `diff[i]` is the image of generator `i`. Checks that the differential
    /// raises degree by one, squares to zero, and that every generator lies
    /// in the window.
    pub fn new(
        gens: Vec<Generator>,
        diff: Vec<SparseVec>,
        window: (i32, i32),
    ) -> Result<Self, LinalgError> {
        if diff.len() != gens.len() {
            return Err(LinalgError::Input(format!(
                "{} generators but {} differential entries",
                gens.len(),
                diff.len()
            )));
        }
        if window.0 > window.1 {
            return Err(LinalgError::Input(format!("empty degree window {:?}", window)));
        }
        for g in &gens {
            if g.degree < window.0 || g.degree > window.1 {
                return Err(LinalgError::Input(format!(
                    "generator {} of degree {} outside window {:?}",
                    g.name, g.degree, window
                )));
            }
        }
        for (i, img) in diff.iter().enumerate() {
            for (j, c) in img {
                let Some(t) = gens.get(*j) else {
                    return Err(LinalgError::Input(format!("differential refers to index {j}")));
                };
                if c.is_zero() {
                    continue;
                }
                if t.degree != gens[i].degree + 1 {
                    return Err(LinalgError::Input(format!(
                        "d({}) has a term {} of degree {}, expected {}",
                        gens[i].name,
                        t.name,
                        t.degree,
                        gens[i].degree + 1
                    )));
                }
            }
        }
        let diff: Vec<SparseVec> = diff
            .into_iter()
            .map(|v| v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let c = CochainComplex { gens, diff, window };
        for i in 0..c.gens.len() {
            let dd = c.apply(&c.diff[i]);
            if !dd.is_empty() {
                return Err(LinalgError::Input(format!(
                    "d∘d is nonzero on {}",
                    c.gens[i].name
                )));
            }
        }
        Ok(c)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    pub fn differential_of(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            axpy(&mut out, c, &self.diff[*i]);
        }
        out
    }

    /// Indices of generators in degree `d`, in basis order.
    pub fn indices_in_degree(&self, d: i32) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.gens[i].degree == d).collect()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.gens.iter().filter(|g| g.degree == d).count()
    }

    fn check_window(&self, degrees: &[i32]) -> Result<(), LinalgError> {
        for &d in degrees {
            if d < self.window.0 || d > self.window.1 {
                return Err(LinalgError::Input(format!(
                    "degree {d} outside the window {:?}",
                    self.window
                )));
            }
        }
        Ok(())
    }

    /// Matrix of `d: C^d -> C^{d+1}` in local coordinates.
    fn local_matrix(&self, d: i32) -> (Vec<usize>, Vec<usize>, Matrix) {
        let src = self.indices_in_degree(d);
        let tgt = self.indices_in_degree(d + 1);
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (col, &g) in src.iter().enumerate() {
            for (t, c) in &self.diff[g] {
                m.set(pos[t], col, c.clone());
            }
        }
        (src, tgt, m)
    }

    fn homogeneous_degree(&self, z: &SparseVec) -> Result<Option<i32>, LinalgError> {
        let mut deg = None;
        for i in z.keys() {
            let g = self.gens.get(*i).ok_or_else(|| {
                LinalgError::Input(format!("index {i} is not a generator"))
            })?;
            match deg {
                None => deg = Some(g.degree),
                Some(d) if d != g.degree => {
                    return Err(LinalgError::Input("vector is not homogeneous".into()))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Solves `d p = z` for homogeneous `z` of degree `d`. `None` when `z`
    /// is not exact; the zero vector has primitive zero.
    pub fn primitive(&self, z: &SparseVec, d: i32) -> Result<Option<SparseVec>, LinalgError> {
        if let Some(deg) = self.homogeneous_degree(z)? {
            if deg != d {
                return Err(LinalgError::Input(format!(
                    "vector has degree {deg}, expected {d}"
                )));
            }
        }
        self.check_window(&[d - 1, d])?;
        let (src, tgt, m) = self.local_matrix(d - 1);
        let b: Vec<Rational> = tgt.iter().map(|g| z.get(g).cloned().unwrap_or_default()).collect();
        Ok(solve_linear(&m, &b)?.map(|x| {
            src.iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|(g, c)| (*g, c))
                .collect()
        }))
    }

    /// Cohomology in degree `d`; requires `d-1, d, d+1` in the window.
    pub fn cohomology_basis(&self, d: i32) -> Result<Cohomology, LinalgError> {
        self.check_window(&[d - 1, d, d + 1])?;
        let (src, _, dmat) = self.local_matrix(d);
        let (_, _, bmat) = self.local_matrix(d - 1);
        let cycles = dmat.nullspace();
        let mut columns: Vec<SparseVec> = (0..bmat.cols()).map(|j| bmat.column(j)).collect();
        let nb = columns.len();
        let mut rank = Matrix::from_columns(src.len(), &columns)?.rank();
        let mut reps = Vec::new();
        for z in cycles {
            let local: SparseVec = z
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
            columns.push(local.clone());
            let r = Matrix::from_columns(src.len(), &columns)?.rank();
            if r > rank {
                rank = r;
                reps.push(local);
            } else {
                columns.pop();
            }
        }
        let solver = Matrix::from_columns(src.len(), &columns)?;
        let reps_global = reps
            .iter()
            .map(|v| v.iter().map(|(k, c)| (src[*k], c.clone())).collect())
            .collect();
        Ok(Cohomology {
            degree: d,
            local_index: src,
            prev_index: self.indices_in_degree(d - 1),
            boundaries: nb,
            solver,
            dmat,
            reps: reps_global,
        })
    }
}

/// Result of classifying a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    /// `z = d p`.
    Exact(SparseVec),
    /// Coordinates in the chosen cohomology basis (not all zero).
    Nonzero(Vec<Rational>),
}

/// A cohomology basis together with a decision procedure for classes.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: i32,
    local_index: Vec<usize>,
    prev_index: Vec<usize>,
    boundaries: usize,
    solver: Matrix,
    dmat: Matrix,
    reps: Vec<SparseVec>,
}

impl Cohomology {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Cocycle representatives of a basis of `H^d`.
    pub fn basis(&self) -> &[SparseVec] {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn localize(&self, z: &SparseVec) -> Result<Vec<Rational>, LinalgError> {
        let mut out = vec![Rational::zero(); self.local_index.len()];
        for (g, c) in z {
            let Ok(k) = self.local_index.binary_search(g) else {
                return Err(LinalgError::Input(format!(
                    "index {g} is not in degree {}",
                    self.degree
                )));
            };
            out[k] = c.clone();
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, z: &SparseVec) -> Result<bool, LinalgError> {
        let local = self.localize(z)?;
        Ok(self.dmat.mul_vec(&local)?.iter().all(|c| c.is_zero()))
    }

    /// Decides whether the cocycle `z` is exact. Passing a non-cocycle is a
    /// contract violation.
    pub fn classify(&self, z: &SparseVec) -> Result<Class, LinalgError> {
        if !self.is_cocycle(z)? {
            return Err(LinalgError::Contract("classify called on a non-cocycle".into()));
        }
        let local = self.localize(z)?;
        let x = solve_linear(&self.solver, &local)?
            .ok_or_else(|| LinalgError::Contract("cocycle outside Z = B + H".into()))?;
        let coords: Vec<Rational> = x[self.boundaries..].to_vec();
        if coords.iter().all(|c| c.is_zero()) {
            let mut p = SparseVec::new();
            for (j, c) in x[..self.boundaries].iter().enumerate() {
                add_entry(&mut p, self.prev_index[j], c.clone());
            }
            Ok(Class::Exact(p))
        } else {
            Ok(Class::Nonzero(coords))
        }
    }

    /// Coordinates of the class of `z` (zero vector for exact cocycles).
    pub fn coordinates(&self, z: &SparseVec) -> Result<Vec<Rational>, LinalgError> {
        Ok(match self.classify(z)? {
            Class::Exact(_) => vec![Rational::zero(); self.reps.len()],
            Class::Nonzero(c) => c,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, degree: i32) -> Generator {
        Generator { name: name.into(), degree }
    }

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(k, v)| (*k, Rational::from_int(*v))).collect()
    }

    #[test]
    fn circle_cohomology() {
        // Two vertices a, b and two edges e, f with d a = -e - f, d b = e + f.
        let gens = vec![gen("a", 0), gen("b", 0), gen("e", 1), gen("f", 1)];
        let diff = vec![sv(&[(2, -1), (3, -1)]), sv(&[(2, 1), (3, 1)]), sv(&[]), sv(&[])];
        let c = CochainComplex::new(gens, diff, (-1, 2)).unwrap();
        let h0 = c.cohomology_basis(0).unwrap();
        let h1 = c.cohomology_basis(1).unwrap();
        assert_eq!((h0.dim(), h1.dim()), (1, 1));
        match h1.classify(&sv(&[(2, 1), (3, 1)])).unwrap() {
            Class::Exact(p) => assert_eq!(c.apply(&p), sv(&[(2, 1), (3, 1)])),
            other => panic!("{other:?}"),
        }
        assert!(matches!(h1.classify(&sv(&[(2, 1)])).unwrap(), Class::Nonzero(_)));
        assert!(c.primitive(&sv(&[(2, 1)]), 1).unwrap().is_none());
        assert_eq!(c.primitive(&sv(&[]), 1).unwrap(), Some(sv(&[])));
        assert!(h0.classify(&sv(&[(0, 1)])).is_err());
        assert!(c.cohomology_basis(2).is_err());
    }

    #[test]
    fn rejects_bad_differentials() {
        let gens = vec![gen("a", 0), gen("b", 0)];
        assert!(CochainComplex::new(gens.clone(), vec![sv(&[(1, 1)]), sv(&[])], (-1, 1)).is_err());
        let gens3 = vec![gen("a", 0), gen("b", 1), gen("c", 2)];
        let diff = vec![sv(&[(1, 1)]), sv(&[(2, 1)]), sv(&[])];
        assert!(CochainComplex::new(gens3, diff, (-1, 3)).is_err());
        assert!(CochainComplex::new(gens, vec![sv(&[]), sv(&[])], (1, 2)).is_err());
    }
}
