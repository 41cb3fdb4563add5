use num_traits::Zero;

use super::matrix::{basis_vector, inner, norm, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::{cre, Real, C};

/// Residuals above this are accepted on the first (ascending) completion pass.
const COMPLETION_ACCEPT: f64 = 1e-3;

/// A subspace of `C^ambient_dim` held as an orthonormal column frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<R: Real> {
    ambient_dim: usize,
    frame: ComplexMatrix<R>,
}

impl<R: Real> Subspace<R> {
    /// Wraps a frame after checking `frame†·frame = I` within `tol`.
    pub fn from_frame(frame: ComplexMatrix<R>, tol: R) -> Result<Self> {
        let deviation = frame.isometry_deviation();
        if deviation > tol {
            return Err(Error::NotIsometry { deviation: deviation.to_f64_lossy() });
        }
        Ok(Self { ambient_dim: frame.rows(), frame })
    }

    /// Wraps a frame whose orthonormality the caller guarantees.
    pub(crate) fn from_frame_unchecked(frame: ComplexMatrix<R>) -> Self {
        Self { ambient_dim: frame.rows(), frame }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, frame: ComplexMatrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, frame: ComplexMatrix::identity(ambient_dim) }
    }

    /// Span of `vectors` (possibly empty) inside `C^ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<C<R>>], tol: R) -> Result<Self> {
        let mut accepted: Vec<Vec<C<R>>> = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            let (residual, r) = orthogonalize(v, &accepted);
            if r >= tol {
                accepted.push(scaled(&residual, R::one() / r));
            }
        }
        Ok(Self { ambient_dim, frame: ComplexMatrix::from_columns(ambient_dim, &accepted)? })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.frame.cols()
    }

    pub fn frame(&self) -> &ComplexMatrix<R> {
        &self.frame
    }

    pub fn into_frame(self) -> ComplexMatrix<R> {
        self.frame
    }

    pub fn basis(&self) -> Vec<Vec<C<R>>> {
        self.frame.columns()
    }

    pub fn projector(&self) -> ComplexMatrix<R> {
        projector(self)
    }

    /// Norm of the component of `v` orthogonal to this subspace.
    pub fn distance(&self, v: &[C<R>]) -> R {
        let basis = self.basis();
        orthogonalize(v, &basis).1
    }

    pub fn contains(&self, v: &[C<R>], tol: R) -> bool {
        self.distance(v) <= tol
    }

    /// Coordinates of `v` in this frame (`frame†·v`).
    pub fn coordinates(&self, v: &[C<R>]) -> Vec<C<R>> {
        (0..self.dim()).map(|j| (0..self.ambient_dim).map(|i| self.frame[(i, j)].conj() * v[i]).sum()).collect()
    }

    /// Vector with the given coordinates in this frame.
    pub fn embed(&self, coords: &[C<R>]) -> Vec<C<R>> {
        self.frame.mul_vec(coords).expect("coordinate length matches frame")
    }

    /// Largest entry of the component of `m`'s columns orthogonal to the subspace.
    pub fn distance_matrix(&self, m: &ComplexMatrix<R>) -> Result<R> {
        let coords = self.frame.adjoint_mul(m)?;
        let back = self.frame.matmul(&coords)?;
        Ok((m - &back).max_abs())
    }

    /// Orthogonal direct sum; fails when the two spaces overlap.
    pub fn direct_sum(&self, other: &Self, tol: R) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let frame = ComplexMatrix::hstack(&[&self.frame, &other.frame])?;
        Self::from_frame(frame, tol)
    }

    /// Same subspace, compared through projectors.
    pub fn same_as(&self, other: &Self, tol: R) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.projector().max_diff(&other.projector()) <= tol
    }

    /// Orthogonal complement, completed deterministically: standard basis
    /// vectors are scanned in ascending index order and kept when their
    /// residual is well conditioned; any shortfall is filled by pivoting on
    /// the largest remaining residual.
    pub fn complement(&self) -> Self {
        let n = self.ambient_dim;
        let target = n - self.dim();
        let mut basis = self.basis();
        let start = basis.len();
        let accept = R::lit(COMPLETION_ACCEPT);
        let mut used = vec![false; n];
        for (k, slot) in used.iter_mut().enumerate() {
            if basis.len() - start == target {
                break;
            }
            let (residual, r) = orthogonalize(&basis_vector(n, k), &basis);
            if r > accept {
                basis.push(scaled(&residual, R::one() / r));
                *slot = true;
            }
        }
        while basis.len() - start < target {
            let mut best: Option<(usize, R, Vec<C<R>>)> = None;
            for (k, &u) in used.iter().enumerate() {
                if u {
                    continue;
                }
                let (residual, r) = orthogonalize(&basis_vector(n, k), &basis);
                if best.as_ref().is_none_or(|b| r > b.1) {
                    best = Some((k, r, residual));
                }
            }
            let (k, r, residual) = best.expect("complement has room for another vector");
            used[k] = true;
            basis.push(scaled(&residual, R::one() / r));
        }
        let frame = ComplexMatrix::from_columns(n, &basis[start..]).expect("uniform length");
        Self { ambient_dim: n, frame }
    }

    pub fn cast<S: Real>(&self) -> Subspace<S> {
        Subspace { ambient_dim: self.ambient_dim, frame: self.frame.cast() }
    }
}

fn scaled<R: Real>(v: &[C<R>], s: R) -> Vec<C<R>> {
    v.iter().map(|&z| z * s).collect()
}

/// Two-pass modified Gram–Schmidt of `v` against orthonormal `basis`.
fn orthogonalize<R: Real>(v: &[C<R>], basis: &[Vec<C<R>>]) -> (Vec<C<R>>, R) {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let p = inner(b, &w);
            if p.is_zero() {
                continue;
            }
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = *wi - *bi * p;
            }
        }
    }
    let r = norm(&w);
    (w, r)
}

/// Orthonormal basis of the span of `vectors`, processed in input order;
/// residuals with norm below `tol` are dropped.
pub fn orthonormal_basis<R: Real>(vectors: &[Vec<C<R>>], tol: R) -> Result<Subspace<R>> {
    if tol.is_nan() || tol <= R::zero() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let ambient = vectors.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no vectors supplied".into()))?;
    Subspace::span(ambient, vectors, tol)
}

/// `frame·frame†`.
pub fn projector<R: Real>(s: &Subspace<R>) -> ComplexMatrix<R> {
    s.frame.matmul(&s.frame.adjoint()).expect("frame shapes agree")
}

/// Range of an orthogonal projector by pivoted Gram–Schmidt on its columns.
/// The rank is read off the trace, so the result does not depend on a
/// residual threshold.
pub fn projector_range<R: Real>(p: &ComplexMatrix<R>, tol: R) -> Result<Subspace<R>> {
    let n = p.rows();
    let tr = p.trace().re;
    let rank_f = tr.round();
    if (tr - rank_f).abs() > R::lit(1e-6).max(tol) || rank_f < R::zero() {
        return Err(Error::InvalidInput(format!("projector trace {} is not an integer", tr)));
    }
    let rank = rank_f.to_usize().unwrap_or(0);
    let columns = p.columns();
    let mut basis: Vec<Vec<C<R>>> = Vec::with_capacity(rank);
    let mut used = vec![false; n];
    while basis.len() < rank {
        let mut best: Option<(usize, R, Vec<C<R>>)> = None;
        for (k, col) in columns.iter().enumerate() {
            if used[k] {
                continue;
            }
            let (residual, r) = orthogonalize(col, &basis);
            if best.as_ref().is_none_or(|b| r > b.1) {
                best = Some((k, r, residual));
            }
        }
        let (k, r, residual) = best.ok_or_else(|| Error::InvalidInput("projector rank exceeds dimension".into()))?;
        if r < tol {
            return Err(Error::InvalidInput("projector range is rank deficient".into()));
        }
        used[k] = true;
        basis.push(scaled(&residual, R::one() / r));
    }
    Ok(Subspace { ambient_dim: n, frame: ComplexMatrix::from_columns(n, &basis)? })
}

/// Splits a self-adjoint involution into its `+1` and `−1` eigenspaces.
pub fn involution_eigensplit<R: Real>(p: &ComplexMatrix<R>, tol: R) -> Result<(Subspace<R>, Subspace<R>)> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch { expected: p.rows(), found: p.cols() });
    }
    let n = p.rows();
    let sa = p.self_adjoint_deviation();
    if sa > tol {
        return Err(Error::NotSelfAdjoint { deviation: sa.to_f64_lossy() });
    }
    let id = ComplexMatrix::identity(n);
    let sq = p.matmul(p)?.max_diff(&id);
    if sq > tol {
        return Err(Error::NotAnInvolution { deviation: sq.to_f64_lossy() });
    }
    let half = cre(R::lit(0.5));
    let plus = projector_range(&(&id + p).scale(half), tol)?;
    let minus = projector_range(&(&id - p).scale(half), tol)?;
    Ok((plus, minus))
}

/// Extends the isometry `domain.frame[:, j] ↦ images[:, j]` to a unitary on
/// the ambient space. Orthogonal complements of the domain and of the image
/// are enumerated by [`Subspace::complement`] and matched in order.
pub fn unitary_extend<R: Real>(domain: &Subspace<R>, images: &ComplexMatrix<R>, tol: R) -> Result<ComplexMatrix<R>> {
    if images.rows() != domain.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: domain.ambient_dim(), found: images.rows() });
    }
    if images.cols() != domain.dim() {
        return Err(Error::DimensionMismatch { expected: domain.dim(), found: images.cols() });
    }
    let deviation = images.isometry_deviation();
    if deviation > tol {
        return Err(Error::NotIsometry { deviation: deviation.to_f64_lossy() });
    }
    let image_space = Subspace::from_frame_unchecked(images.clone());
    let dom_c = domain.complement();
    let img_c = image_space.complement();
    let on_domain = images.matmul(&domain.frame().adjoint())?;
    let on_complement = img_c.frame().matmul(&dom_c.frame().adjoint())?;
    Ok(&on_domain + &on_complement)
}

/// Isometric factor `W` of the polar decomposition `A = W·(A†A)^{1/2}`,
/// by Newton–Schulz iteration. `A` must have full column rank.
pub fn polar_isometry<R: Real>(a: &ComplexMatrix<R>) -> Result<ComplexMatrix<R>> {
    let k = a.cols();
    if k == 0 {
        return Ok(a.clone());
    }
    let f = a.frobenius_norm();
    if f.is_nan() || f <= R::zero() {
        return Err(Error::InvalidInput("polar decomposition of a zero map".into()));
    }
    let id = ComplexMatrix::identity(k);
    let mut x = a.scale_real(R::one() / f);
    let three = R::lit(3.0);
    let half = R::lit(0.5);
    for _ in 0..200 {
        let g = x.adjoint_mul(&x)?;
        let dev = g.max_diff(&id);
        if dev <= R::epsilon() * R::lit(64.0) {
            return Ok(x);
        }
        let step = (&id.scale_real(three) - &g).scale_real(half);
        x = x.matmul(&step)?;
    }
    let dev = x.isometry_deviation();
    if dev <= R::lit(1e-9).max(R::epsilon().sqrt()) {
        Ok(x)
    } else {
        Err(Error::InvalidInput("polar iteration did not converge; map is rank deficient".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    type M = ComplexMatrix<f64>;
    const EPS: f64 = 1e-9;

    fn v(entries: &[(f64, f64)]) -> Vec<C<f64>> {
        entries.iter().map(|&(re, im)| c(re, im)).collect()
    }

    fn pauli_x() -> M {
        M::from_rows(&[v(&[(0.0, 0.0), (1.0, 0.0)]), v(&[(1.0, 0.0), (0.0, 0.0)])]).unwrap()
    }

    fn pauli_z() -> M {
        M::diagonal(&v(&[(1.0, 0.0), (-1.0, 0.0)]))
    }

    #[test]
    fn standard_basis_is_already_orthonormal() {
        let s = orthonormal_basis(&[v(&[(1.0, 0.0), (0.0, 0.0)]), v(&[(0.0, 0.0), (1.0, 0.0)])], EPS).unwrap();
        assert!(s.frame().approx_eq(&M::identity(2), 1e-15));
    }

    #[test]
    fn second_vector_is_projected_to_e1() {
        let s = orthonormal_basis(&[v(&[(1.0, 0.0), (0.0, 0.0)]), v(&[(1.0, 0.0), (1.0, 0.0)])], EPS).unwrap();
        assert_eq!(s.dim(), 2);
        assert!((s.frame()[(0, 1)]).norm() < 1e-15);
        assert!((s.frame()[(1, 1)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn orthonormal_basis_rejects_mixed_lengths_and_bad_tolerance() {
        let r = orthonormal_basis(&[v(&[(1.0, 0.0)]), v(&[(1.0, 0.0), (0.0, 0.0)])], EPS);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
        assert!(orthonormal_basis(&[v(&[(1.0, 0.0)])], 0.0).is_err());
    }

    #[test]
    fn rank_one_projector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = orthonormal_basis(&[v(&[(h, 0.0), (h, 0.0)])], EPS).unwrap();
        let p = projector(&s);
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[(i, j)] - c(0.5, 0.0)).norm() < 1e-15);
            }
        }
        assert!(projector(&Subspace::<f64>::full(2)).approx_eq(&M::identity(2), 0.0));
    }

    #[test]
    fn eigensplit_of_z_and_x() {
        let (plus, minus) = involution_eigensplit(&pauli_z(), EPS).unwrap();
        assert!(plus.contains(&v(&[(1.0, 0.0), (0.0, 0.0)]), 1e-12));
        assert!(minus.contains(&v(&[(0.0, 0.0), (1.0, 0.0)]), 1e-12));
        let (plus, minus) = involution_eigensplit(&pauli_x(), EPS).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(plus.contains(&v(&[(h, 0.0), (h, 0.0)]), 1e-12));
        assert!(minus.contains(&v(&[(h, 0.0), (-h, 0.0)]), 1e-12));
    }

    #[test]
    fn eigensplit_errors() {
        let not_inv = M::diagonal(&v(&[(1.0, 0.0), (2.0, 0.0)]));
        assert!(matches!(involution_eigensplit(&not_inv, EPS), Err(Error::NotAnInvolution { .. })));
        let not_sa = M::from_rows(&[v(&[(1.0, 0.0), (1.0, 0.0)]), v(&[(0.0, 0.0), (-1.0, 0.0)])]).unwrap();
        assert!(matches!(involution_eigensplit(&not_sa, EPS), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn single_map_in_c2_extends_to_swap() {
        let domain = Subspace::span(2, &[v(&[(1.0, 0.0), (0.0, 0.0)])], EPS).unwrap();
        let images = M::from_columns(2, &[v(&[(0.0, 0.0), (1.0, 0.0)])]).unwrap();
        let u = unitary_extend(&domain, &images, EPS).unwrap();
        assert!(u.approx_eq(&pauli_x(), 1e-15));
    }

    #[test]
    fn identity_on_subspace_extends_to_unitary_restricting_to_identity() {
        let domain = Subspace::span(
            4,
            &[
                v(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
                v(&[(0.0, 0.0), (0.0, 0.0), (0.0, 1.0), (0.0, 0.0)]),
            ],
            EPS,
        )
        .unwrap();
        let u = unitary_extend(&domain, domain.frame(), EPS).unwrap();
        assert!(u.is_unitary(1e-12));
        assert!(u.matmul(domain.frame()).unwrap().approx_eq(domain.frame(), 1e-12));
    }

    #[test]
    fn unitary_extend_errors() {
        let domain = Subspace::span(2, &[v(&[(1.0, 0.0), (0.0, 0.0)])], EPS).unwrap();
        let not_iso = M::from_columns(2, &[v(&[(2.0, 0.0), (0.0, 0.0)])]).unwrap();
        assert!(matches!(unitary_extend(&domain, &not_iso, EPS), Err(Error::NotIsometry { .. })));
        let too_many = M::identity(2);
        assert!(matches!(unitary_extend(&domain, &too_many, EPS), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn complement_is_deterministic_ascending() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = Subspace::span(3, &[v(&[(h, 0.0), (0.0, 0.0), (h, 0.0)])], EPS).unwrap();
        let c1 = s.complement();
        assert_eq!(c1.dim(), 2);
        assert!(c1.contains(&v(&[(h, 0.0), (0.0, 0.0), (-h, 0.0)]), 1e-12));
        assert!((c1.frame()[(0, 0)] - c(h, 0.0)).norm() < 1e-12);
        assert_eq!(c1, s.complement());
    }

    #[test]
    fn polar_isometry_of_scaled_isometry() {
        let a =
            M::from_columns(3, &[v(&[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0)]), v(&[(0.0, 0.0), (0.0, 3.0), (0.0, 0.0)])])
                .unwrap();
        let w = polar_isometry(&a).unwrap();
        assert!(w.isometry_deviation() < 1e-13);
        assert!((w[(1, 1)] - c(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn generic_over_f32() {
        let s = Subspace::<f32>::span(2, &[vec![c(1.0f32, 0.0), c(1.0, 0.0)]], 1e-5).unwrap();
        let p = s.projector();
        assert!((p[(0, 1)].re - 0.5).abs() < 1e-6);
    }
}
