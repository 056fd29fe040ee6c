mod oracles;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use satake_core::lattice::{hermite_normal_form, smith_normal_form};
use satake_core::{congruence_kernel, IntMatrix, Lattice, Matrix, QMatrix, QVector};

use oracles::{q, qv};

fn int_matrix(rows: usize, cols: usize, data: Vec<i64>) -> IntMatrix {
    Matrix::from_vec(rows, cols, data.into_iter().map(BigInt::from).collect())
}

fn matrix_strategy(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(lo..=hi, r * c).prop_map(move |d| int_matrix(r, c, d))
    })
}

/// A full-rank rational lattice: random small integer basis divided by a
/// random denominator, retried until nonsingular.
fn lattice_strategy(dim: usize) -> impl Strategy<Value = Lattice> {
    (prop::collection::vec(-6i64..=6, dim * dim), 1i64..=6)
        .prop_filter_map("singular basis", move |(data, den)| {
            let basis: Vec<QVector> =
                data.chunks(dim).map(|row| row.iter().map(|&x| q(x) / q(den)).collect()).collect();
            Lattice::from_basis(dim, basis).ok()
        })
}

fn det_is_unit(m: &IntMatrix) -> bool {
    let d = m.map(|x| satake_core::Rational::from_integer(x.clone())).det();
    d.abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in matrix_strategy(10, -50, 50)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&(&s.left * &m) * &s.right), &s.diagonal);
        prop_assert!(s.diagonal.is_diagonal());
        prop_assert!(det_is_unit(&s.left));
        prop_assert!(det_is_unit(&s.right));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn hermite_form_spans_the_same_rows(m in matrix_strategy(5, -20, 20)) {
        let h = hermite_normal_form(&m);
        prop_assert_eq!(&hermite_normal_form(&h), &h);
        let s1 = smith_normal_form(&m).invariant_factors();
        let s2 = smith_normal_form(&h).invariant_factors();
        let nz = |v: &[BigInt]| v.iter().filter(|x| !x.is_zero()).cloned().collect::<Vec<_>>();
        prop_assert_eq!(nz(&s1), nz(&s2));
    }

    #[test]
    fn double_dual_is_identity(l in (1usize..=4).prop_flat_map(lattice_strategy), k in 1i64..=3) {
        let n = l.ambient_dim();
        let pairing = QMatrix::diagonal(&vec![q(k); n]);
        let dd = l.dual(&pairing).unwrap().dual(&pairing.transpose()).unwrap();
        prop_assert_eq!(dd, l);
    }

    #[test]
    fn quotient_order_is_index(l in (1usize..=4).prop_flat_map(lattice_strategy), mult in prop::collection::vec(-4i64..=4, 16)) {
        let n = l.ambient_dim();
        let basis = l.basis_vectors();
        // sublattice spanned by integer combinations M·basis
        let gens: Vec<QVector> = (0..n)
            .map(|i| {
                let mut v = vec![q(0); n];
                for (j, b) in basis.iter().enumerate() {
                    let c = q(mult[(i * n + j) % mult.len()] + if i == j { 5 } else { 0 });
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += c.clone() * y;
                    }
                }
                v
            })
            .collect();
        if let Ok(small) = Lattice::from_generators(n, gens) {
            prop_assert!(l.contains_lattice(&small));
            let inv = l.quotient_invariants(&small).unwrap();
            prop_assert_eq!(inv.order(), l.index(&small).unwrap());
            let covol = small.covolume() / l.covolume();
            prop_assert_eq!(satake_core::Rational::from_integer(inv.order()), covol);
        }
    }

    #[test]
    fn congruence_kernel_matches_enumeration(
        (rows, r, data) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, r)| (Just(m), Just(r), prop::collection::vec(-7i64..=7, m * r))),
        n in 1i64..=6,
    ) {
        let a = int_matrix(rows, r, data.clone());
        let kernel = congruence_kernel(&a, n).unwrap();
        // every residue class ν mod N with Aν ≡ 0, lifted by N·Z^r
        let mut gens: Vec<QVector> = (0..r).map(|i| { let mut v = vec![0; r]; v[i] = n; qv(&v) }).collect();
        let total = (n as usize).pow(r as u32);
        for idx in 0..total {
            let mut nu = vec![0i64; r];
            let mut x = idx;
            for c in nu.iter_mut() {
                *c = (x % n as usize) as i64;
                x /= n as usize;
            }
            let ok = (0..rows).all(|i| (0..r).map(|j| data[i * r + j] * nu[j]).sum::<i64>().rem_euclid(n) == 0);
            let member = kernel.contains(&qv(&nu)).unwrap();
            prop_assert_eq!(ok, member, "ν = {:?}", nu);
            if ok {
                gens.push(qv(&nu));
            }
        }
        prop_assert_eq!(Lattice::from_generators(r, gens).unwrap(), kernel);
    }
}

#[test]
fn standard_examples() {
    let l = Lattice::from_basis(2, vec![qv(&[2, 0]), qv(&[0, 3])]).unwrap();
    let inv = Lattice::standard(2).quotient_invariants(&l).unwrap();
    assert_eq!(inv.factors(), &[BigInt::from(6)]);
    let k = congruence_kernel(&int_matrix(1, 1, vec![2]), 4).unwrap();
    assert_eq!(k, Lattice::from_basis(1, vec![qv(&[2])]).unwrap());
    assert!(congruence_kernel(&int_matrix(1, 1, vec![2]), 0).is_err());
}
