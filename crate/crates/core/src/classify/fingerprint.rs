//! Isomorphism invariants used to separate classes.

use serde::Serialize;

use crate::algebra::SuperAlgebra;
use crate::error::Result;
use crate::flags::bracket_chain_dims;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub center: usize,
    pub center_even: usize,
    pub center_odd: usize,
    pub lower_central: Vec<usize>,
    pub lower_central_even: Vec<usize>,
    /// Rank of the symmetric bracket of the odd part into the even part.
    pub odd_odd_rank: usize,
    pub chain: Vec<usize>,
}

pub fn fingerprint(alg: &SuperAlgebra) -> Fingerprint {
    let (center_even, center_odd) = alg.center_dims();
    let odd = alg.odd_part();
    Fingerprint {
        center: center_even + center_odd,
        center_even,
        center_odd,
        lower_central: alg.lower_central_dims(false),
        lower_central_even: alg.lower_central_dims(true),
        odd_odd_rank: alg.bracket_span(&odd, &odd).dim(),
        chain: bracket_chain_dims(alg),
    }
}

/// Whether `P` carries `a` onto `b` constant for constant.
pub fn verify_witness_isomorphism(a: &SuperAlgebra, b: &SuperAlgebra, p: &Matrix) -> Result<bool> {
    Ok(a.change_basis(p)?.same_constants(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::identity;
    use crate::Scalar;

    #[test]
    fn known_fingerprints() {
        let f0 = fingerprint(&catalog::g8(0).algebra);
        let f1 = fingerprint(&catalog::g8(1).algebra);
        let f2 = fingerprint(&catalog::g8(2).algebra);
        assert_eq!((f0.odd_odd_rank, f1.odd_odd_rank), (0, 1));
        assert_eq!((f0.center, f1.center, f2.center), (3, 3, 2));
        let a = fingerprint(&catalog::abelian2().algebra);
        assert_eq!((a.center, a.odd_odd_rank), (2, 0));
    }

    #[test]
    fn scaling_witness_in_dim_six() {
        let mut g = catalog::g6(0).algebra;
        g.set("e3", "e3", &[("X3", Scalar::from_int(4))]).unwrap();
        let mut p = identity(6);
        for i in 3..6 {
            p[i][i] = Scalar::from_int(2);
        }
        assert!(verify_witness_isomorphism(&g, &catalog::g6(1).algebra, &p).unwrap());
        let g2 = catalog::g8(2).algebra;
        assert!(verify_witness_isomorphism(&g2, &g2, &identity(8)).unwrap());
    }
}
