//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls the library's own algorithms for the quantity being
//! checked: characters come from Kostant's partition function and the Weyl
//! group, tensor products from the Brauer–Klimyk rule, kernels from
//! exhaustive enumeration.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::Rng;
use satake_core::matrix::Matrix;
use satake_core::scalar::Field;
use satake_core::{LaurentSeries, QVector, Rational};

pub fn q(x: i64) -> Rational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn qv(xs: &[i64]) -> QVector {
    xs.iter().map(|&x| q(x)).collect()
}

/// `A⁻¹ b` over the rationals by Gaussian elimination.
pub fn solve(a: &Matrix<i64>, b: &[i64]) -> Vec<Ratio<i64>> {
    let n = a.rows();
    let mut m: Vec<Vec<Ratio<i64>>> =
        (0..n).map(|i| (0..n).map(|j| Ratio::from_integer(a[(i, j)])).chain([Ratio::from_integer(b[i])]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != Ratio::from_integer(0)).expect("invertible");
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                let row_c = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row_c) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n]).collect()
}

/// Root coordinates of the element of the root lattice with labels `l`.
pub fn root_coords(a: &Matrix<i64>, l: &[i64]) -> Option<Vec<i64>> {
    solve(a, l).into_iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

/// Positive roots in simple-root coordinates, by closing the simple roots
/// under reflections and keeping the nonnegative ones.
pub fn positive_roots(a: &Matrix<i64>) -> Vec<Vec<i64>> {
    let n = a.rows();
    let reflect = |i: usize, v: &[i64]| -> Vec<i64> {
        let label: i64 = (0..n).map(|j| a[(i, j)] * v[j]).sum();
        let mut w = v.to_vec();
        w[i] -= label;
        w
    };
    let mut seen: std::collections::BTreeSet<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut stack: Vec<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(v) = stack.pop() {
        for i in 0..n {
            let w = reflect(i, &v);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Weyl group elements as integer matrices acting on Dynkin labels,
/// together with their signs.
pub fn weyl_group(a: &Matrix<i64>) -> Vec<(Vec<Vec<i64>>, i64)> {
    let n = a.rows();
    let gens: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|r| (0..n).map(|c| i64::from(r == c) - if c == i { a[(r, i)] } else { 0 }).collect())
                .collect()
        })
        .collect();
    let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| x[r][k] * y[k][c]).sum()).collect()).collect()
    };
    let id: Vec<Vec<i64>> = (0..n).map(|r| unit(n, r)).collect();
    let mut seen: HashMap<Vec<Vec<i64>>, i64> = HashMap::from([(id.clone(), 1)]);
    let mut stack = vec![id];
    while let Some(w) = stack.pop() {
        let sign = seen[&w];
        for g in &gens {
            let x = mul(g, &w);
            if !seen.contains_key(&x) {
                seen.insert(x.clone(), -sign);
                stack.push(x);
            }
        }
    }
    seen.into_iter().collect()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Kostant's partition function: number of ways to write `gamma` (root
/// coordinates) as a sum of positive roots.
pub fn kostant(pos: &[Vec<i64>], gamma: &[i64], memo: &mut HashMap<(usize, Vec<i64>), u64>) -> u64 {
    fn go(pos: &[Vec<i64>], k: usize, g: &[i64], memo: &mut HashMap<(usize, Vec<i64>), u64>) -> u64 {
        if g.iter().any(|&x| x < 0) {
            return 0;
        }
        if g.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == pos.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(k, g.to_vec())) {
            return v;
        }
        let mut total = 0;
        let mut rest = g.to_vec();
        loop {
            total += go(pos, k + 1, &rest, memo);
            for (x, b) in rest.iter_mut().zip(&pos[k]) {
                *x -= b;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert((k, g.to_vec()), total);
        total
    }
    go(pos, 0, gamma, memo)
}

/// Character of the irreducible module with dominant labels `l`, keyed by
/// labels, via the Weyl alternating sum over Kostant's partition function.
pub fn character(a: &Matrix<i64>, l: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let n = a.rows();
    let pos = positive_roots(a);
    let w = weyl_group(a);
    let lr: Vec<i64> = l.iter().map(|x| x + 1).collect();
    // weights lie in λ − box, the box spanned by λ − wλ
    let mut bound = vec![0i64; n];
    for (m, _) in &w {
        let wl = apply(m, l);
        let diff: Vec<i64> = l.iter().zip(&wl).map(|(x, y)| x - y).collect();
        let k = root_coords(a, &diff).expect("λ − wλ lies in the root lattice");
        for (b, x) in bound.iter_mut().zip(k) {
            *b = (*b).max(x);
        }
    }
    let mut memo = HashMap::new();
    let mut out = BTreeMap::new();
    let mut k = vec![0i64; n];
    loop {
        let mu: Vec<i64> = (0..n).map(|i| l[i] - (0..n).map(|j| a[(i, j)] * k[j]).sum::<i64>()).collect();
        let mur: Vec<i64> = mu.iter().map(|x| x + 1).collect();
        let mut total: i64 = 0;
        for (m, sign) in &w {
            let wl = apply(m, &lr);
            let diff: Vec<i64> = wl.iter().zip(&mur).map(|(x, y)| x - y).collect();
            if let Some(g) = root_coords(a, &diff) {
                total += sign * kostant(&pos, &g, &mut memo) as i64;
            }
        }
        assert!(total >= 0);
        if total > 0 {
            out.insert(mu, total as u64);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            k[i] += 1;
            if k[i] <= bound[i] {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Multiplicity of `V(nu)` in `V(l) ⊗ V(m)` via
/// Brauer–Klimyk.
pub fn brauer_klimyk(a: &Matrix<i64>, l: &[i64], m: &[i64], nu: &[i64]) -> i64 {
    let n = a.rows();
    let mut total = 0;
    for (eta, mult) in character(a, m) {
        let mut v: Vec<i64> = (0..n).map(|i| l[i] + eta[i] + 1).collect();
        let mut sign = 1;
        while let Some(i) = (0..n).find(|&i| v[i] < 0) {
            let k = v[i];
            for r in 0..n {
                v[r] -= k * a[(r, i)];
            }
            sign = -sign;
        }
        if v.contains(&0) {
            continue;
        }
        let shifted: Vec<i64> = v.iter().map(|x| x - 1).collect();
        if shifted == nu {
            total += sign * mult as i64;
        }
    }
    total
}

/// Random nonzero series with `prec` known coefficients over `F`.
pub fn random_series<F: Field, R: Rng>(rng: &mut R, prec: usize) -> LaurentSeries<F> {
    loop {
        let v = rng.gen_range(-3..=3);
        let coeffs: Vec<F> = (0..prec).map(|_| F::from_rational(&q(rng.gen_range(-9..=9))).unwrap()).collect();
        if coeffs[0].is_zero() {
            continue;
        }
        return LaurentSeries::new(v, coeffs, Some(prec)).unwrap();
    }
}

/// Literal tame symbol `(−1)^{v(f)v(g)} c_g^{v(f)} c_f^{−v(g)}` from
/// valuations and leading coefficients.
pub fn symbol_from_leading<F: Field>(f: &LaurentSeries<F>, g: &LaurentSeries<F>) -> F {
    let (vf, vg) = (f.valuation().unwrap(), g.valuation().unwrap());
    let (cf, cg) = (f.leading_coefficient().unwrap(), g.leading_coefficient().unwrap());
    let mut out = F::one();
    for _ in 0..vf.abs() {
        out = if vf > 0 { out * cg.clone() } else { out / cg.clone() };
    }
    for _ in 0..vg.abs() {
        out = if vg > 0 { out / cf.clone() } else { out * cf.clone() };
    }
    if (vf * vg) % 2 != 0 {
        out = -out;
    }
    out
}

/// Every root datum of type `t`, one per lattice between `Q` and `P`:
/// `Q + Z·kϖ_j` for all `j` and `k`, plus `P` itself. This reaches every
/// subgroup of `P/Q` because that group is cyclic or Klein four.
pub fn all_isogenies(t: satake_core::CartanType) -> Vec<satake_core::RootDatum> {
    use satake_core::{Isogeny, RootDatum};
    let n = t.rank();
    let a = t.cartan_matrix();
    let order = t.center_order() as i64;
    let mut out: Vec<RootDatum> = vec![RootDatum::adjoint(t).unwrap(), RootDatum::simply_connected(t).unwrap()];
    for j in 0..n {
        let col: Vec<Ratio<i64>> = solve(&a, &unit(n, j));
        for k in 1..order {
            let g: QVector = col.iter().map(|x| q(k * x.numer()) / q(*x.denom())).collect();
            let d = RootDatum::new(t, Isogeny::Quotient(vec![g])).unwrap();
            if !out.iter().any(|e| e.characters() == d.characters()) {
                out.push(d);
            }
        }
    }
    out
}

/// Classical dual Coxeter numbers.
pub fn classical_h_dual(t: satake_core::CartanType) -> u64 {
    use satake_core::Series::*;
    let n = t.rank() as u64;
    match t.series() {
        A => n + 1,
        B => 2 * n - 1,
        C => n + 1,
        D => 2 * n - 2,
        E => [0, 0, 0, 0, 0, 0, 12, 18, 30][n as usize],
        F => 9,
        G => 4,
    }
}

/// Dominant weights of `w` whose labels are all at most `max_label`.
pub fn dominant_weights(w: &satake_core::WeightDatum, max_label: i64) -> Vec<QVector> {
    let n = w.rank();
    let fund: Vec<QVector> = (0..n).map(|i| w.fundamental_weight(i).unwrap()).collect();
    let mut out = Vec::new();
    let mut l = vec![0i64; n];
    loop {
        let mut v = vec![q(0); n];
        for (c, f) in l.iter().zip(&fund) {
            for (x, y) in v.iter_mut().zip(f) {
                *x += q(*c) * y;
            }
        }
        if w.weights().contains(&v).unwrap() {
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            l[i] += 1;
            if l[i] <= max_label {
                break;
            }
            l[i] = 0;
            i += 1;
        }
    }
}

/// Dynkin labels of a lattice weight as integers.
pub fn labels_of(w: &satake_core::WeightDatum, v: &[Rational]) -> Vec<i64> {
    w.labels(v).iter().map(|x| {
        assert!(x.is_integer());
        num_traits::ToPrimitive::to_i64(&x.to_integer()).unwrap()
    }).collect()
}

/// `Σ_{α̌} ⟨λ, α̌⟩ α̌` over all roots, summed term by term from an enumerated
/// list of positive roots (both signs contribute the same term).
pub fn root_sum(datum: &satake_core::RootDatum, pos: &[Vec<i64>], lambda: &[Rational]) -> QVector {
    let mut out = vec![q(0); lambda.len()];
    for beta in pos {
        let bq = qv(beta);
        let k = datum.pair(lambda, &bq);
        for (x, b) in out.iter_mut().zip(&bq) {
            *x += q(2) * k.clone() * b;
        }
    }
    out
}

fn scale_q(k: &Rational, v: &[Rational]) -> QVector {
    v.iter().map(|x| k * x).collect()
}

/// Every structural claim about the twisted dual datum, checked from first
/// principles on a basis of its weight lattice `{ν ∈ Y : dι(ν) ∈ N·X}`.
pub fn check_twisted_structure(source: &satake_core::RootDatum, n: i64) {
    let dd = satake_core::TwistedDualDatum::new(source, n).unwrap();
    let r = source.rank();
    let d = satake_core::central_ext::compute_d(source).unwrap() as i64;
    let lat = dd.dual_weight_lattice();
    let basis = lat.basis_vectors();
    let x = source.characters();
    let t = source.cartan_type();
    for nu in &basis {
        assert!(source.cocharacters().contains(nu).unwrap());
        assert!(x.contains(&scale_q(&(q(d) / q(n)), &source.iota(nu))).unwrap());
    }
    for y in source.cocharacters().basis_vectors() {
        let inside = x.contains(&scale_q(&(q(d) / q(n)), &source.iota(&y))).unwrap();
        assert_eq!(lat.contains(&y).unwrap(), inside);
        assert!(lat.contains(&scale_q(&q(n), &y)).unwrap());
    }
    for i in 0..r {
        let di = dd.delta()[i] as i64;
        let ei = qv(&unit(r, i));
        // literal δ_i: denominator of d(α_i, α_i)/2N
        let lit = q(d) * source.form(&ei, &ei) / q(2 * n);
        assert_eq!(q(di), Rational::from_integer(lit.denom().clone()), "{t} N={n} i={i}");
        assert_eq!(di, satake_core::twisted_dual::delta(source, n, i).unwrap() as i64);
        assert!(lat.contains(&scale_q(&q(di), &ei)).unwrap(), "{t} N={n}: δ_iα_i outside the lattice");
        for nu in basis.iter().chain(std::iter::once(&ei)) {
            let k = source.pair(nu, &ei);
            if lat.contains(nu).unwrap() {
                assert!((k.clone() / q(di)).is_integer(), "{t} N={n}: ⟨ν, α̌_i⟩ ∉ δ_iZ");
            }
            let classical: QVector = nu.iter().zip(&ei).map(|(a, b)| a - k.clone() * b).collect();
            let twisted_coeff = source.pair(nu, &scale_q(&(q(1) / q(di)), &ei));
            let twisted: QVector = nu.iter().zip(&ei).map(|(a, b)| a - twisted_coeff.clone() * q(di) * b).collect();
            assert_eq!(twisted, classical);
            assert_eq!(dd.reflect(i, nu), classical);
        }
        for nu in &basis {
            assert!(lat.contains(&dd.reflect(i, nu)).unwrap(), "{t} N={n}: reflection leaves the lattice");
        }
    }
    assert_eq!(dd.weight_datum().rank(), r);
    assert_eq!(dd.identify().unwrap().cartan_type.rank(), r);
}
