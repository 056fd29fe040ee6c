//! Identification of a Cartan matrix with a Bourbaki-numbered type.

use super::cartan::{CartanType, Series};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A type together with the relabelling that realises it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub cartan_type: CartanType,
    /// `perm[k]` is the input index playing the role of Bourbaki node `k`.
    pub perm: Vec<usize>,
}

/// Finds `(t, perm)` with `a[perm[i]][perm[j]] = bourbaki(t)[i][j]`.
///
/// Types are tried in series order; within a type the lexicographically
/// smallest permutation wins.
pub fn recognize(a: &Matrix<i64>) -> Result<Recognition> {
    let n = a.rows();
    if !a.is_square() || n == 0 {
        return Err(Error::Invariant("Cartan matrix must be square and nonempty".into()));
    }
    for s in Series::ALL {
        let Ok(t) = CartanType::new(s, n) else { continue };
        let target = t.cartan_matrix();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if search(a, &target, &mut perm, &mut used) {
            return Ok(Recognition { cartan_type: t, perm });
        }
    }
    Err(Error::Invariant(format!("not a Cartan matrix of finite type: {a:?}")))
}

fn search(a: &Matrix<i64>, target: &Matrix<i64>, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let k = perm.len();
    let n = used.len();
    if k == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let ok = (0..k).all(|j| a[(cand, perm[j])] == target[(k, j)] && a[(perm[j], cand)] == target[(j, k)])
            && a[(cand, cand)] == target[(k, k)];
        if !ok {
            continue;
        }
        perm.push(cand);
        used[cand] = true;
        if search(a, target, perm, used) {
            return true;
        }
        perm.pop();
        used[cand] = false;
    }
    false
}
