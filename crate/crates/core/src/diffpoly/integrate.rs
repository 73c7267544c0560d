//! Formal x-integration by a weight-graded ansatz and an exact linear solve.

use std::collections::BTreeMap;

use super::coeff::Coeff;
use super::monomial::{monomials_of_weight, Alphabet, Monomial};
use super::poly::Poly;
use super::DiffPolyError;

impl<C: Coeff, A: Alphabet> Poly<C, A> {
    /// Returns `h` with `D h = self` and zero constant term.
    ///
    /// Each weight component is integrated against the full basis of monomials one
    /// weight lower. Fails with `NotExact` when an Euler operator is nonzero or the
    /// solve is inconsistent.
    pub fn formal_integral(&self) -> Result<Self, DiffPolyError> {
        if !self.is_exact() {
            return Err(DiffPolyError::NotExact);
        }
        let mut out = Self::zero();
        for w in self.weights() {
            out = out + integrate_component(&self.weight_component(w), w)?;
        }
        Ok(out)
    }
}

fn integrate_component<C: Coeff, A: Alphabet>(p: &Poly<C, A>, w: u32) -> Result<Poly<C, A>, DiffPolyError> {
    if w == 0 {
        return Err(DiffPolyError::NotExact);
    }
    let basis = monomials_of_weight::<A>(w - 1);
    let basis: Vec<Monomial> = basis.into_iter().filter(|m| !m.is_one()).collect();
    if basis.is_empty() {
        return Err(DiffPolyError::NotExact);
    }
    let images: Vec<Poly<C, A>> = basis.iter().map(|m| Poly::<C, A>::term(m.clone(), C::one()).derivative()).collect();

    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    for (m, _) in p.terms() {
        if !rows.contains_key(m) {
            return Err(DiffPolyError::NotExact);
        }
    }
    let ncols = basis.len();
    let mut mat = vec![vec![C::zero(); ncols + 1]; rows.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            mat[rows[m]][j] = c.clone();
        }
    }
    for (m, c) in p.terms() {
        mat[rows[m]][ncols] = c.clone();
    }

    let sol = solve_exact(mat, ncols).ok_or(DiffPolyError::NotExact)?;
    let mut h = Poly::zero();
    for (m, c) in basis.into_iter().zip(sol) {
        h.add_term(m, c);
    }
    Ok(h)
}

/// Gauss-Jordan on an augmented matrix. Returns one solution with free
/// variables set to zero, or `None` if inconsistent.
fn solve_exact<C: Coeff>(mut mat: Vec<Vec<C>>, ncols: usize) -> Option<Vec<C>> {
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = C::one() / mat[r][col].clone();
        for k in col..=ncols {
            mat[r][k] = mat[r][k].clone() * inv.clone();
        }
        for i in 0..nrows {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for k in col..=ncols {
                    let v = mat[r][k].clone() * f.clone();
                    mat[i][k] = mat[i][k].clone() - v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if mat[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![C::zero(); ncols];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = mat[i][ncols].clone();
    }
    Some(sol)
}
