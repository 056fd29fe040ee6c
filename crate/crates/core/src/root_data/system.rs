//! Root systems generated from a Cartan matrix by reflection closure.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::Rational;

/// Finite crystallographic root system in simple-root coordinates.
///
/// `cartan[(i, j)] = ⟨α_i^∨, α_j⟩`. Roots are integer vectors in the basis of
/// simple roots, coroots integer vectors in the basis of simple coroots, and
/// `positive_coroots[k]` is the coroot of `positive_roots[k]`.
#[derive(Debug)]
pub struct RootSystem {
    cartan: Matrix<i64>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    half_norms: Vec<Rational>,
}

/// Positive `d` with `d_i a_ij = d_j a_ji`, normalised so the smallest entry is 1.
///
/// For a Cartan matrix these are the half squared lengths `(α_i, α_i) / 2` of
/// the simple roots.
pub fn symmetrizer(a: &Matrix<i64>) -> Result<Vec<Rational>> {
    let n = a.rows();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[(i, j)] == 0 {
                    continue;
                }
                if a[(j, i)] == 0 {
                    return Err(Error::Invariant("Cartan matrix has asymmetric zero pattern".into()));
                }
                let di = d[i].clone().expect("visited");
                let dj = di * BigRational::new(a[(i, j)].into(), a[(j, i)].into());
                match &d[j] {
                    Some(x) if *x != dj => {
                        return Err(Error::Invariant("Cartan matrix is not symmetrizable".into()))
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("all visited")).collect();
    let min = d.iter().min().cloned().unwrap_or_else(Rational::one);
    Ok(d.into_iter().map(|x| x / min.clone()).collect())
}

fn reflection_closure(simple_reflect: impl Fn(usize, &[i64]) -> Vec<i64>, n: usize, limit: usize) -> Result<BTreeSet<Vec<i64>>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let s = simple_reflect(i, &r);
            if seen.insert(s.clone()) {
                if seen.len() > limit {
                    return Err(Error::Invariant("reflection closure does not terminate: Cartan matrix not of finite type".into()));
                }
                queue.push_back(s);
            }
        }
    }
    Ok(seen)
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn sort_by_height(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
    v
}

impl RootSystem {
    /// Generates the root system of a finite-type Cartan matrix.
    pub fn from_cartan(cartan: &Matrix<i64>) -> Result<Self> {
        let n = cartan.rows();
        if !cartan.is_square() || n == 0 {
            return Err(Error::Invariant("Cartan matrix must be square and nonempty".into()));
        }
        // E8 has 240 roots; anything much larger is not of finite type at rank <= 8.
        let limit = 4096;
        let roots = reflection_closure(
            |i, r| {
                let mut s = r.to_vec();
                let c: i64 = (0..n).map(|j| cartan[(i, j)] * r[j]).sum();
                s[i] -= c;
                s
            },
            n,
            limit,
        )?;
        let coroots = reflection_closure(
            |i, r| {
                let mut s = r.to_vec();
                let c: i64 = (0..n).map(|j| cartan[(j, i)] * r[j]).sum();
                s[i] -= c;
                s
            },
            n,
            limit,
        )?;
        let half_norms = symmetrizer(cartan)?;

        let positive: Vec<Vec<i64>> = roots.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        let positive = sort_by_height(positive);
        let coroot_set: BTreeSet<Vec<i64>> = coroots.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();

        let mut system = RootSystem { cartan: cartan.clone(), positive_roots: positive, positive_coroots: Vec::new(), half_norms };
        let mut aligned = Vec::with_capacity(system.positive_roots.len());
        for r in &system.positive_roots {
            let c = system.coroot_of(r)?;
            if !coroot_set.contains(&c) {
                return Err(Error::Invariant(format!("coroot {c:?} of root {r:?} missing from coroot closure")));
            }
            aligned.push(c);
        }
        if aligned.len() != coroot_set.len() {
            return Err(Error::Invariant("root and coroot systems differ in size".into()));
        }
        system.positive_coroots = aligned;
        Ok(system)
    }

    /// Cached root system for a Cartan matrix; safe for concurrent readers.
    pub fn cached(cartan: &Matrix<i64>) -> Result<Arc<RootSystem>> {
        static CACHE: OnceLock<RwLock<HashMap<Matrix<i64>, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.read().expect("root system cache poisoned").get(cartan) {
            return Ok(Arc::clone(s));
        }
        let built = Arc::new(RootSystem::from_cartan(cartan)?);
        let mut w = cache.write().expect("root system cache poisoned");
        Ok(Arc::clone(w.entry(cartan.clone()).or_insert(built)))
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let neg = self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect());
        self.positive_roots.iter().cloned().chain(neg).collect()
    }

    pub fn coroots(&self) -> Vec<Vec<i64>> {
        let neg = self.positive_coroots.iter().map(|r| r.iter().map(|x| -x).collect());
        self.positive_coroots.iter().cloned().chain(neg).collect()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    /// `(α_i, α_i) / 2` for the simple roots, shortest root normalised to 1.
    pub fn half_norms(&self) -> &[Rational] {
        &self.half_norms
    }

    /// W-invariant form on root coordinates: `(α_i, α_j) = d_i a_ij`.
    pub fn root_form(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                acc += self.half_norms[i].clone() * Rational::from_integer((xi * self.cartan[(i, j)] * yj).into());
            }
        }
        acc
    }

    /// `β^∨ = 2β/(β,β)` in simple-coroot coordinates.
    pub fn coroot_of(&self, root: &[i64]) -> Result<Vec<i64>> {
        let norm = self.root_form(root, root);
        let two = Rational::from_integer(2.into());
        root.iter()
            .enumerate()
            .map(|(j, &b)| {
                // α_j = d_j α_j^∨ in the coroot normalisation
                let c = Rational::from_integer(b.into()) * self.half_norms[j].clone() * two.clone() / norm.clone();
                if c.is_integer() {
                    Ok(i64::try_from(c.to_integer()).expect("small coroot coordinate"))
                } else {
                    Err(Error::Invariant(format!("non-integral coroot for {root:?}")))
                }
            })
            .collect()
    }

    /// Highest root (unique positive root of maximal height).
    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::CartanType;

    fn sys(t: &str) -> Arc<RootSystem> {
        RootSystem::cached(&t.parse::<CartanType>().unwrap().cartan_matrix()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (t, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
            assert_eq!(sys(t).num_roots(), n, "{t}");
        }
    }

    #[test]
    fn closed_under_negation_and_reflection() {
        for t in ["G2", "B3", "D5"] {
            let s = sys(t);
            let all: BTreeSet<Vec<i64>> = s.roots().into_iter().collect();
            for r in &all {
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                assert!(all.contains(&neg));
                for i in 0..s.rank() {
                    let mut x = r.clone();
                    x[i] -= (0..s.rank()).map(|j| s.cartan()[(i, j)] * r[j]).sum::<i64>();
                    assert!(all.contains(&x));
                }
            }
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(sys("E8").highest_root(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(sys("G2").highest_root(), &[3, 2]);
        assert_eq!(sys("F4").highest_root(), &[2, 3, 4, 2]);
    }

    #[test]
    fn coroot_system_of_b_is_c() {
        // The coroots of B3, read as roots, form the root system of C3.
        let b3 = sys("B3");
        let c3 = sys("C3");
        let from_b: BTreeSet<Vec<i64>> = b3.positive_coroots().iter().cloned().collect();
        let c_roots: BTreeSet<Vec<i64>> = c3.positive_roots().iter().cloned().collect();
        assert_eq!(from_b, c_roots);
        // and the coroots of the coroot system are the roots again
        let back: BTreeSet<Vec<i64>> = c3.positive_coroots().iter().cloned().collect();
        let b_roots: BTreeSet<Vec<i64>> = b3.positive_roots().iter().cloned().collect();
        assert_eq!(back, b_roots);
    }

    #[test]
    fn symmetrizer_values() {
        let d = symmetrizer(&"G2".parse::<CartanType>().unwrap().cartan_matrix()).unwrap();
        assert_eq!(d, vec![Rational::one(), Rational::from_integer(3.into())]);
        let d = symmetrizer(&"C3".parse::<CartanType>().unwrap().cartan_matrix()).unwrap();
        assert_eq!(d[2], Rational::from_integer(2.into()));
    }

    #[test]
    fn affine_matrix_rejected() {
        let affine = Matrix::from_rows(2, vec![vec![2, -2], vec![-2, 2]]);
        assert!(RootSystem::from_cartan(&affine).is_err());
    }
}
