use nalgebra::DMatrix;
use proptest::prelude::*;
use rabiwave_core::hypercomplex::{
    chain_modes, chain_modes_inverse, eigenvalues, from_eigenvalues, hyper_mul, shift_power, to_circulant,
};
use rabiwave_core::{CirculantMatrix, Error, HyperNumber, ProjectorBasis, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn dense(m: &CirculantMatrix) -> DMatrix<C64> {
    let n = m.n();
    DMatrix::from_row_slice(n, n, &m.to_dense())
}

/// Eigenvalues from a general complex Schur decomposition. The matrix is
/// shifted by a generic `μI` first: pure cyclic shifts have all eigenvalues
/// on the unit circle, where unshifted QR sweeps stall.
fn dense_eigenvalues(m: &CirculantMatrix) -> Vec<C64> {
    let mu = c(0.5123, 0.3071);
    let n = m.n();
    let shifted = dense(m) + DMatrix::<C64>::identity(n, n) * mu;
    let (_, t) = shifted.try_schur(1e-15, 100_000).expect("Schur decomposition did not converge").unpack();
    (0..n).map(|i| t[(i, i)] - mu).collect()
}

/// Multiset distance: greedy matching of each computed value to the
/// nearest unused reference value.
fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[idx] = true;
        worst = worst.max(d);
    }
    worst
}

fn random_row(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

#[test]
fn shift_power_examples() {
    let id = shift_power(4, 0).unwrap();
    assert_eq!(id, CirculantMatrix::identity(4).unwrap());
    let e1 = shift_power(4, 1).unwrap().to_dense();
    for i in 0..4 {
        for k in 0..4 {
            let expect = if k == (i + 1) % 4 { 1.0 } else { 0.0 };
            assert_eq!(e1[i * 4 + k], c(expect, 0.0), "({i},{k})");
        }
    }
    // repeated dense products of [e₁]
    let step = dense(&shift_power(4, 1).unwrap());
    let mut acc = DMatrix::<C64>::identity(4, 4);
    for _ in 0..4 {
        acc = &acc * &step;
    }
    assert_eq!(acc, DMatrix::<C64>::identity(4, 4));
    assert_eq!(shift_power(4, 4).unwrap().to_dense(), acc.transpose().as_slice().to_vec());
    assert_eq!(shift_power(4, -1).unwrap(), shift_power(4, 3).unwrap());
    assert!(matches!(shift_power(0, 1), Err(Error::InvalidDimension(_))));
}

#[test]
fn eigenvalue_examples() {
    for v in eigenvalues(&CirculantMatrix::identity(5).unwrap()) {
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }
    let shift = CirculantMatrix::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap();
    let expect = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
    assert!(multiset_distance(&eigenvalues(&shift), &dense_eigenvalues(&shift)) < 1e-12);
    assert!(multiset_distance(&eigenvalues(&shift), &expect) < 1e-15);

    let xi = 0.37;
    let nn = CirculantMatrix::from_real(&[0.0, xi, 0.0, xi]).unwrap();
    let expect = [c(2.0 * xi, 0.0), c(0.0, 0.0), c(-2.0 * xi, 0.0), c(0.0, 0.0)];
    assert!(multiset_distance(&dense_eigenvalues(&nn), &expect) < 1e-12);
    assert!(multiset_distance(&eigenvalues(&nn), &expect) < 1e-15);
}

#[test]
fn multiplication_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = HyperNumber::new(random_row(&mut rng, 5)).unwrap();
    let one = HyperNumber::one(5).unwrap();
    assert_eq!(hyper_mul(&a, &one).unwrap(), a);

    let basis = ProjectorBasis::new(3).unwrap();
    let p1 = basis.projector(1).unwrap();
    let p2 = basis.projector(2).unwrap();
    assert_eq!(hyper_mul(&p1, &p2).unwrap(), HyperNumber::zero(3).unwrap());

    let b = HyperNumber::new(random_row(&mut rng, 5)).unwrap();
    let product = dense(&to_circulant(&a)) * dense(&to_circulant(&b));
    let via_ring = dense(&to_circulant(&hyper_mul(&a, &b).unwrap()));
    assert!((product - via_ring).camax() < 1e-12);

    assert!(matches!(hyper_mul(&a, &p1), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn representation_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let z = HyperNumber::new(random_row(&mut rng, 6)).unwrap();
    let back = from_eigenvalues(to_circulant(&z).eigenvalues()).unwrap();
    assert!(back.max_abs_diff(&z).unwrap() < 1e-12);
    assert_eq!(from_eigenvalues(z.to_eigenvalues()).unwrap(), z);

    // Z_1 is the complex field
    let w = HyperNumber::new(vec![c(0.3, -2.0)]).unwrap();
    assert_eq!(to_circulant(&w).first_row(), &[c(0.3, -2.0)]);
    assert_eq!(to_circulant(&w).eigenvalues(), vec![c(0.3, -2.0)]);
}

#[test]
fn dense_oracle_hundred_circulants() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..100 {
        let n = rng.random_range(1..=8);
        let m = CirculantMatrix::new(random_row(&mut rng, n)).unwrap();
        let d = multiset_distance(&eigenvalues(&m), &dense_eigenvalues(&m));
        assert!(d < 1e-10, "trial {trial}, n = {n}: {d:e}");
    }
}

#[test]
fn chain_modes_diagonalize_circulant_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = CirculantMatrix::new(random_row(&mut rng, 7)).unwrap();
    let x = random_row(&mut rng, 7);
    let direct = m.apply(&x).unwrap();
    let lambda = m.eigenvalues();
    let modes: Vec<C64> = chain_modes(&x).iter().zip(&lambda).map(|(a, l)| a * l).collect();
    let via_modes = chain_modes_inverse(&modes);
    for (p, q) in direct.iter().zip(&via_modes) {
        assert!((p - q).norm() < 1e-12);
    }
}

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(r, i)| c(r, i)), n)
}

fn pair(max_n: usize) -> impl Strategy<Value = (Vec<C64>, Vec<C64>)> {
    (1..=max_n).prop_flat_map(|n| (complex_vec(n), complex_vec(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn projector_algebra(n in 1usize..=8, z in complex_vec(8)) {
        let basis = ProjectorBasis::new(n).unwrap();
        let one = HyperNumber::one(n).unwrap();
        let mut sum = HyperNumber::zero(n).unwrap();
        let z = HyperNumber::new(z[..n].to_vec()).unwrap();
        for (alpha, pa) in basis.iter().enumerate() {
            for (beta, pb) in basis.iter().enumerate() {
                let expect = if alpha == beta { pa.clone() } else { HyperNumber::zero(n).unwrap() };
                prop_assert!((&pa * &pb).max_abs_diff(&expect).unwrap() <= 1e-14);
            }
            sum = &sum + &pa;
            let k = z.components()[alpha];
            prop_assert!((&z * &pa).max_abs_diff(&pa.scale(k)).unwrap() <= 1e-14);
        }
        prop_assert!(sum.max_abs_diff(&one).unwrap() <= 1e-14);
    }

    #[test]
    fn spectrum_is_a_homomorphism((a, b) in pair(8)) {
        let ca = CirculantMatrix::new(a).unwrap();
        let cb = CirculantMatrix::new(b).unwrap();
        let prod = ca.matmul(&cb).unwrap().eigenvalues();
        let la = ca.eigenvalues();
        let lb = cb.eigenvalues();
        for i in 0..prod.len() {
            prop_assert!((prod[i] - la[i] * lb[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn circulant_products_commute((a, b) in pair(8)) {
        let ca = CirculantMatrix::new(a).unwrap();
        let cb = CirculantMatrix::new(b).unwrap();
        let ab = ca.matmul(&cb).unwrap();
        let ba = cb.matmul(&ca).unwrap();
        let dense_ab = dense(&ca) * dense(&cb);
        prop_assert!((dense(&ab) - dense_ab).camax() < 1e-12);
        for (x, y) in ab.first_row().iter().zip(ba.first_row()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn ring_multiplication_commutes((a, b) in pair(8)) {
        let a = HyperNumber::new(a).unwrap();
        let b = HyperNumber::new(b).unwrap();
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn representation_is_invertible(z in (1usize..=8).prop_flat_map(complex_vec)) {
        let z = HyperNumber::new(z).unwrap();
        let back = HyperNumber::from_circulant(&z.to_circulant());
        let scale = z.components().iter().map(|k| k.norm()).fold(1.0, f64::max);
        prop_assert!(back.max_abs_diff(&z).unwrap() < 1e-12 * scale);
    }

    #[test]
    fn circulant_is_sum_of_shift_powers(row in (1usize..=8).prop_flat_map(complex_vec)) {
        let n = row.len();
        let mut acc = DMatrix::<C64>::zeros(n, n);
        for (r, cr) in row.iter().enumerate() {
            acc += dense(&shift_power(n, r as i64).unwrap()) * *cr;
        }
        let m = CirculantMatrix::new(row).unwrap();
        prop_assert!((dense(&m) - acc).camax() < 1e-15);
    }
}
