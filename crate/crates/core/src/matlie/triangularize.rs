use super::linalg::{from_columns, inverse, null_space, rank};
use super::matrix::Matrix;
use super::nilpotent::nilpotence_degree;
use crate::error::{Error, Result};
use crate::exact::Field;

/// Change of basis `g` with `g X g⁻¹` strictly upper triangular for every
/// `X` in a family of pairwise commuting nilpotent matrices.
///
/// The flag is built from iterated joint kernels: `W_1 = ∩ ker X`, then
/// `W_k = {v : X v ∈ W_{k-1} for all X}`. A basis adapted to this flag puts
/// every `X` in strictly upper triangular form.
pub fn simultaneous_strict_triangularize<F: Field>(xs: &[Matrix<F>]) -> Result<Matrix<F>> {
    let first = xs.first().ok_or_else(|| Error::DimensionMismatch("empty list".into()))?;
    let n = first.rows();
    let ctx = first.ctx().clone();
    for x in xs {
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch("matrices must share a size".into()));
        }
        nilpotence_degree(x)?;
    }
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::NotCommuting);
            }
        }
    }

    let mut basis: Vec<Vec<F>> = Vec::new();
    while basis.len() < n {
        // Rows of `ann` cut out the current subspace W.
        let ann: Vec<Vec<F>> = if basis.is_empty() {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { F::one(&ctx) } else { F::zero(&ctx) }).collect())
                .collect()
        } else {
            null_space(&from_columns(&ctx, n, &basis).transpose())
        };
        let ann = Matrix::from_rows(&ctx, ann);
        let stacked_rows: Vec<Vec<F>> = xs
            .iter()
            .flat_map(|x| {
                let m = &ann * x;
                (0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>()
            })
            .collect();
        let next = null_space(&Matrix::from_rows(&ctx, stacked_rows));
        let before = basis.len();
        for v in next {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if rank(&from_columns(&ctx, n, &trial)) == trial.len() {
                basis.push(v);
            }
        }
        if basis.len() == before {
            return Err(Error::NotTriangularizable);
        }
    }
    inverse(&from_columns(&ctx, n, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;
    use crate::matlie::FpMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn conj(g: &FpMatrix, x: &FpMatrix) -> FpMatrix {
        &(g * x) * &inverse(g).unwrap()
    }

    #[test]
    fn single_nilpotent() {
        let p = 5u32;
        let x = FpMatrix::from_ints(&p, &[&[0, 0, 0], &[1, 0, 0], &[2, 3, 0]]);
        let g = simultaneous_strict_triangularize(std::slice::from_ref(&x)).unwrap();
        assert!(conj(&g, &x).is_strictly_upper());
    }

    #[test]
    fn already_upper_pair() {
        let p = 5u32;
        let e13 = FpMatrix::unit(&p, 3, 0, 2);
        let j = &FpMatrix::unit(&p, 3, 0, 1) + &FpMatrix::unit(&p, 3, 1, 2);
        let g = simultaneous_strict_triangularize(&[e13.clone(), j.clone()]).unwrap();
        assert!(conj(&g, &e13).is_strictly_upper());
        assert!(conj(&g, &j).is_strictly_upper());
    }

    #[test]
    fn rejects_non_commuting_and_non_nilpotent() {
        let p = 3u32;
        let e12 = FpMatrix::unit(&p, 3, 0, 1);
        let e23 = FpMatrix::unit(&p, 3, 1, 2);
        assert_eq!(simultaneous_strict_triangularize(&[e12, e23]).unwrap_err(), Error::NotCommuting);
        let id = FpMatrix::identity(&p, 2);
        assert_eq!(simultaneous_strict_triangularize(&[id]).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn scrambled_commuting_pairs_triangularize() {
        // Build commuting strictly upper pairs as polynomials in one
        // strictly upper matrix, then conjugate by a random invertible g.
        let p = 5u32;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 200 {
            let n = FpMatrix::from_fn(&p, 4, 4, |i, j| if j > i { Fp(rng.gen_range(0..p)) } else { Fp(0) });
            let a = &n.scale(&Fp(rng.gen_range(0..p))) + &n.pow(2).scale(&Fp(rng.gen_range(0..p)));
            let b = &n.pow(2) + &n.pow(3).scale(&Fp(rng.gen_range(0..p)));
            let g = FpMatrix::from_fn(&p, 4, 4, |_, _| Fp(rng.gen_range(0..p)));
            let Ok(gi) = inverse(&g) else { continue };
            let (sa, sb) = (&(&g * &a) * &gi, &(&g * &b) * &gi);
            let h = simultaneous_strict_triangularize(&[sa.clone(), sb.clone()]).unwrap();
            assert!(conj(&h, &sa).is_strictly_upper());
            assert!(conj(&h, &sb).is_strictly_upper());
            done += 1;
        }
    }
}
