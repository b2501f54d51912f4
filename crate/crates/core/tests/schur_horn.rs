//! Orbitopes of symmetric matrices checked against majorization and the
//! rearrangement inequality, which are independent of the section machinery.

use invariant_faces::linalg::{self, Vector};
use invariant_faces::models;
use invariant_faces::registry::load_entry;
use invariant_faces::rng;

const SEED: u64 = 0xC0FFEE;

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Signed margin of `mu` majorized by `lambda` (equal sums assumed):
/// the smallest slack of the partial-sum inequalities.
fn majorization_margin(mu: &[f64], lambda: &[f64]) -> f64 {
    let (m, l) = (sorted_desc(mu.to_vec()), sorted_desc(lambda.to_vec()));
    let (mut sm, mut sl, mut worst) = (0.0, 0.0, f64::INFINITY);
    for i in 0..m.len() - 1 {
        sm += m[i];
        sl += l[i];
        worst = worst.min(sl - sm);
    }
    worst
}

fn eigen_of(n: usize, x: &Vector) -> Vec<f64> {
    linalg::symmetric_eigenvalues(&models::vec_to_sym(n, x))
}

fn random_traceless(n: usize, r: &mut rng::SeededRng) -> Vector {
    let d = models::sym_dim(n);
    let mut x = Vector::from_fn(d, |_, _| rng::standard_normal(r));
    let tr = (0..n).map(|i| x[i]).sum::<f64>() / n as f64;
    for i in 0..n {
        x[i] -= tr;
    }
    x
}

fn membership_matches_majorization(name: &str, n: usize, lambda: &[f64], samples: usize) {
    let entry = load_entry(name, SEED, 128).unwrap();
    let body = entry.body().unwrap();
    let mut r = rng::stream(SEED, "tests/majorization");
    let (mut checked, mut inside) = (0, 0);
    for _ in 0..samples {
        let x = random_traceless(n, &mut r);
        let scale = lambda[0] * 1.5 / x.norm();
        let x = x * (scale * r.random_range(0.05..1.0));
        let margin = majorization_margin(&eigen_of(n, &x), lambda);
        if margin.abs() < 1e-6 {
            continue;
        }
        let m = body.membership(&x).unwrap();
        assert_eq!(m.is_inside(), margin > 0.0, "margin {margin}, {m:?}");
        checked += 1;
        inside += usize::from(margin > 0.0);
    }
    assert!(checked > samples / 2);
    assert!(inside > 0 && inside < checked, "both sides of the boundary must be sampled");
}

use rand::Rng;

#[test]
fn membership_agrees_with_majorization_n2() {
    membership_matches_majorization("schur-horn-2", 2, &[1.0, -1.0], 300);
}

#[test]
fn membership_agrees_with_majorization_n3() {
    membership_matches_majorization("schur-horn-3", 3, &[1.0, 0.0, -1.0], 300);
}

#[test]
fn support_function_is_the_rearrangement_bound() {
    let entry = load_entry("schur-horn-3", SEED, 128).unwrap();
    let body = entry.body().unwrap();
    let lambda = [1.0, 0.0, -1.0];
    let mut r = rng::stream(SEED, "tests/rearrangement");
    for _ in 0..200 {
        let mu: Vec<f64> = (0..3).map(|_| rng::standard_normal(&mut r)).collect();
        let expect: f64 = sorted_desc(mu.clone()).iter().zip(&lambda).map(|(a, b)| a * b).sum();
        let h = body.polytope().support_f64(&Vector::from_vec(mu));
        assert!((h - expect).abs() < 1e-12, "{h} vs {expect}");
    }
}

#[test]
fn sections_of_the_orbit_are_permutations() {
    // (G·x) ∩ Σ for x with spectrum (3,1,-1,-3) is the 24 permutations.
    let entry = load_entry("schur-horn-4", SEED, 128).unwrap();
    let body = entry.body().unwrap();
    let mut verts: Vec<Vec<i64>> = body
        .polytope()
        .vertices()
        .iter()
        .map(|v| v.iter().map(|q| q.to_integer().try_into().unwrap()).collect())
        .collect();
    verts.sort();
    let mut perms = Vec::new();
    let base = [3i64, 1, -1, -3];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut s = idx.to_vec();
                    s.sort();
                    s.dedup();
                    if s.len() == 4 {
                        perms.push(idx.iter().map(|&i| base[i]).collect::<Vec<_>>());
                    }
                }
            }
        }
    }
    perms.sort();
    assert_eq!(verts, perms);
}

/// Number of ordered set partitions of an `n`-set into `k` blocks: `k!·S(n,k)`.
fn ordered_partitions(n: usize, k: usize) -> usize {
    let mut s = vec![vec![0usize; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k {
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    (1..=k).product::<usize>() * s[n][k]
}

#[test]
fn permutohedron_face_numbers() {
    for (name, n) in [("schur-horn-2", 2), ("schur-horn-3", 3), ("schur-horn-4", 4)] {
        let body = load_entry(name, SEED, 128).unwrap().body().unwrap();
        // A d-face is an ordered partition into n - d blocks.
        let expect: Vec<usize> = (0..n).map(|d| ordered_partitions(n, n - d)).collect();
        assert_eq!(body.lattice().f_vector(), expect, "{name}");
        // W-classes are compositions of n: 2^(n-1).
        assert_eq!(body.partition().orbits.len(), 1 << (n - 1), "{name}");
    }
}
