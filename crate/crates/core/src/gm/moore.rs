//! Simplicial vector spaces, their Moore complexes, and the simplicial
//! vector space `Z⁰(L ⊗ C_•)` of an abelian algebra.

use super::GmError;
use crate::linalg::{solve_linear, CochainComplex, Generator, Matrix, Rational, SparseVec};
use crate::slie::SLieAlgebra;
use crate::util::subsets;

/// Levels `0..=top` with face maps `faces[k][j]: V_k → V_{k-1}` and
/// degeneracies `degeneracies[k][j]: V_k → V_{k+1}` (`k < top`).
#[derive(Clone, Debug)]
pub struct SimplicialVectorSpace {
    dims: Vec<usize>,
    faces: Vec<Vec<Matrix>>,
    degeneracies: Vec<Vec<Matrix>>,
}

fn shape(m: &Matrix, rows: usize, cols: usize) -> bool {
    m.rows() == rows && m.cols() == cols
}

impl SimplicialVectorSpace {
    pub fn new(dims: Vec<usize>, faces: Vec<Vec<Matrix>>, degeneracies: Vec<Vec<Matrix>>) -> Result<Self, GmError> {
        let top = dims.len().checked_sub(1).ok_or_else(|| GmError::Input("no levels".into()))?;
        if faces.len() != dims.len() || degeneracies.len() != dims.len() {
            return Err(GmError::Input("one list of faces and degeneracies per level".into()));
        }
        for k in 0..=top {
            let nf = if k == 0 { 0 } else { k + 1 };
            let ns = if k == top { 0 } else { k + 1 };
            if faces[k].len() != nf || degeneracies[k].len() != ns {
                return Err(GmError::Input(format!("level {k} has the wrong number of structure maps")));
            }
            if faces[k].iter().any(|m| !shape(m, dims[k - 1], dims[k])) {
                return Err(GmError::Input(format!("face map of level {k} has the wrong shape")));
            }
            if degeneracies[k].iter().any(|m| !shape(m, dims[k + 1], dims[k])) {
                return Err(GmError::Input(format!("degeneracy of level {k} has the wrong shape")));
            }
        }
        let v = SimplicialVectorSpace { dims, faces, degeneracies };
        v.check_identities()?;
        Ok(v)
    }

    /// Every face and degeneracy is the identity of `W = ℚ^dim`.
    pub fn constant(dim: usize, top: usize) -> Self {
        let id = Matrix::identity(dim);
        SimplicialVectorSpace {
            dims: vec![dim; top + 1],
            faces: (0..=top).map(|k| if k == 0 { vec![] } else { vec![id.clone(); k + 1] }).collect(),
            degeneracies: (0..=top).map(|k| if k == top { vec![] } else { vec![id.clone(); k + 1] }).collect(),
        }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn face(&self, k: usize, j: usize) -> &Matrix {
        &self.faces[k][j]
    }

    pub fn degeneracy(&self, k: usize, j: usize) -> &Matrix {
        &self.degeneracies[k][j]
    }

    fn check_identities(&self) -> Result<(), GmError> {
        let bad = |what: &str, k: usize| Err(GmError::Input(format!("simplicial identity {what} fails at level {k}")));
        let mul = |a: &Matrix, b: &Matrix| a.mul(b).expect("shapes checked");
        for k in 0..=self.top() {
            for j in 0..self.faces[k].len() {
                for i in 0..j {
                    if k >= 2 && mul(&self.faces[k - 1][i], &self.faces[k][j]) != mul(&self.faces[k - 1][j - 1], &self.faces[k][i]) {
                        return bad("d_i d_j = d_{j-1} d_i", k);
                    }
                }
            }
            if k == self.top() {
                continue;
            }
            for j in 0..=k {
                let s = &self.degeneracies[k][j];
                for i in 0..=k + 1 {
                    let lhs = mul(&self.faces[k + 1][i], s);
                    let ok = if i == j || i == j + 1 {
                        lhs == Matrix::identity(self.dims[k])
                    } else if i < j {
                        lhs == mul(&self.degeneracies[k - 1][j - 1], &self.faces[k][i])
                    } else {
                        lhs == mul(&self.degeneracies[k - 1][j], &self.faces[k][i - 1])
                    };
                    if !ok {
                        return bad("d_i s_j", k);
                    }
                }
                if k + 1 < self.top() {
                    for i in 0..=j {
                        if mul(&self.degeneracies[k + 1][i], s) != mul(&self.degeneracies[k + 1][j + 1], &self.degeneracies[k][i]) {
                            return bad("s_i s_j = s_{j+1} s_i", k);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_j (-1)^j d_j : V_k → V_{k-1}`.
    pub fn moore_differential(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dims[k - 1], self.dims[k]);
        for (j, f) in self.faces[k].iter().enumerate() {
            for (&(r, c), v) in f.entries() {
                let old = m.get(r, c);
                m.set(r, c, if j % 2 == 0 { old + v } else { old - v });
            }
        }
        m
    }
}

/// `H_i` of the Moore complex: its dimension and cycle representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreHomology {
    pub dim: usize,
    pub basis: Vec<SparseVec>,
}

/// Homology in degree `i` of `(V_•, Σ(-1)^j d_j)`; needs `i + 1 ≤ top`.
pub fn moore_homology(v: &SimplicialVectorSpace, i: usize) -> Result<MooreHomology, GmError> {
    if i + 1 > v.top() {
        return Err(GmError::Input(format!("H_{i} needs levels up to {}, have {}", i + 1, v.top())));
    }
    // Level k sits in cohomological degree -k.
    let mut gens = Vec::new();
    let mut offset = Vec::new();
    for k in 0..=i + 1 {
        offset.push(gens.len());
        gens.extend((0..v.dim(k)).map(|a| Generator { name: format!("v{k}_{a}"), degree: -(k as i32) }));
    }
    let mut diff = vec![SparseVec::new(); gens.len()];
    for k in 1..=i + 1 {
        let m = v.moore_differential(k);
        for (&(r, c), x) in m.entries() {
            diff[offset[k] + c].insert(offset[k - 1] + r, x.clone());
        }
    }
    let cx = CochainComplex::new(gens, diff, (-(i as i32) - 1, 1))?;
    let h = cx.cohomology_basis(-(i as i32))?;
    let basis = h.basis().iter().map(|z| z.iter().map(|(&g, c)| (g - offset[i], c.clone())).collect()).collect();
    Ok(MooreHomology { dim: h.dim(), basis })
}

/// `Z⁰(L ⊗ C_k)` for `k = 0..=top`, where `C_k` are simplicial cochains
/// on `Δ^k` and `L` is abelian.
pub fn z0_tensor_cochains(alg: &SLieAlgebra, top: usize) -> Result<SimplicialVectorSpace, GmError> {
    if !alg.is_abelian() {
        return Err(GmError::Input("Z⁰(L ⊗ C) is a simplicial vector space only for abelian L".into()));
    }
    struct Level {
        faces: Vec<Vec<usize>>,
        // (face index, symbol) coordinates of degree-0 chains.
        coords: Vec<(usize, usize)>,
        basis: Matrix,
    }
    let level = |k: usize| -> Level {
        let faces: Vec<Vec<usize>> = (1..=k + 1).flat_map(|size| subsets(k + 1, size)).collect();
        let index_of = |f: &Vec<usize>| faces.iter().position(|g| g == f).unwrap();
        let coords_in = |deg: i32| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for (fi, f) in faces.iter().enumerate() {
                for s in 0..alg.len() {
                    if alg.degree(s) + f.len() as i32 - 1 == deg {
                        out.push((fi, s));
                    }
                }
            }
            out
        };
        let c0 = coords_in(0);
        let c1 = coords_in(1);
        let mut dmat = Matrix::zeros(c1.len(), c0.len());
        for (col, &(fi, s)) in c0.iter().enumerate() {
            let f = &faces[fi];
            let mut add = |face: usize, sym: usize, x: Rational| {
                if let Some(row) = c1.iter().position(|&p| p == (face, sym)) {
                    let old = dmat.get(row, col);
                    dmat.set(row, col, old + x);
                }
            };
            // ∂ ⊗ 1
            for (t, f2) in alg.differential_table()[s].terms() {
                add(fi, *t, f2.eval_vertex(0).unwrap());
            }
            // (-1)^{|v|} 1 ⊗ δ, with δ e_I = Σ_{v ∉ I} (-1)^{pos} e_{I ∪ v}.
            let sign = if alg.degree(s) % 2 == 0 { 1 } else { -1 };
            for v in 0..=k {
                if f.contains(&v) {
                    continue;
                }
                let pos = f.iter().filter(|&&u| u < v).count();
                let mut g = f.clone();
                g.insert(pos, v);
                let x = if pos % 2 == 0 { sign } else { -sign };
                add(index_of(&g), s, Rational::from_int(x));
            }
        }
        let kernel = dmat.nullspace();
        let cols: Vec<SparseVec> = kernel
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect())
            .collect();
        let basis = Matrix::from_columns(c0.len(), &cols).expect("kernel vectors");
        Level { faces, coords: c0, basis }
    };
    let levels: Vec<Level> = (0..=top).map(level).collect();
    // Matrix of the cochain pullback along a vertex map Δ^a → Δ^b, in Z⁰ coordinates.
    let induced = |from: &Level, to: &Level, map: &dyn Fn(usize) -> usize| -> Result<Matrix, GmError> {
        let mut out = Matrix::zeros(to.basis.cols(), from.basis.cols());
        for c in 0..from.basis.cols() {
            let mut img = vec![Rational::zero(); to.coords.len()];
            for (&(r, _), x) in from.basis.entries().filter(|((_, cc), _)| *cc == c) {
                let (fi, s) = from.coords[r];
                for (ti, &(gi, t)) in to.coords.iter().enumerate() {
                    if t != s {
                        continue;
                    }
                    let mut image: Vec<usize> = to.faces[gi].iter().map(|&u| map(u)).collect();
                    image.dedup();
                    if image.len() == to.faces[gi].len() && image == from.faces[fi] {
                        img[ti] = &img[ti] + x;
                    }
                }
            }
            let sol = solve_linear(&to.basis, &img)?.ok_or_else(|| GmError::Internal("image leaves Z⁰".into()))?;
            for (r, x) in sol.into_iter().enumerate() {
                if !x.is_zero() {
                    out.set(r, c, x);
                }
            }
        }
        Ok(out)
    };
    let dims: Vec<usize> = levels.iter().map(|l| l.basis.cols()).collect();
    let mut faces = vec![Vec::new()];
    let mut degs = Vec::new();
    for k in 0..=top {
        if k > 0 {
            faces.push(
                (0..=k).map(|j| induced(&levels[k], &levels[k - 1], &|u| if u < j { u } else { u + 1 })).collect::<Result<_, _>>()?,
            );
        }
        if k < top {
            degs.push(
                (0..=k).map(|j| induced(&levels[k], &levels[k + 1], &|u| if u <= j { u } else { u - 1 })).collect::<Result<_, _>>()?,
            );
        } else {
            degs.push(Vec::new());
        }
    }
    SimplicialVectorSpace::new(dims, faces, degs)
}

/// `dim π_i` of the DGH simplicial set of an abelian algebra: `H^{-i}` of
/// the truncation `… → L⁻¹ → Z⁰(L)`. Truncating above degree 0 only
/// changes cohomology in positive degrees, so this is `H^{-i}(L)`.
pub fn abelian_homotopy(alg: &SLieAlgebra, i: usize) -> Result<usize, GmError> {
    if !alg.is_abelian() {
        return Err(GmError::Input("homotopy groups are computed for abelian algebras only".into()));
    }
    let d = -(i as i32);
    let gens: Vec<Generator> =
        alg.basis().iter().map(|b| Generator { name: b.name.clone(), degree: b.degree }).collect();
    let diff: Vec<SparseVec> = alg
        .differential_table()
        .iter()
        .map(|e| e.terms().iter().map(|(&t, f)| (t, f.eval_vertex(0).unwrap())).collect())
        .collect();
    let degs = gens.iter().map(|g| g.degree);
    let lo = degs.clone().min().unwrap_or(0).min(d) - 1;
    let hi = degs.max().unwrap_or(0).max(d) + 1;
    let cx = CochainComplex::new(gens, diff, (lo, hi))?;
    Ok(cx.cohomology_basis(d)?.dim())
}
