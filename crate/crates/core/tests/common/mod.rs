#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use topo_invariants::cohomology::{self, CohomologyClass, Ring};
use topo_invariants::complex::{Label, SimplicialComplex};
use topo_invariants::quadform::QuadraticForm;

/// Face closure of the simplices encoded as vertex bitmasks over `0..8`.
pub fn complex_from_masks(masks: &[u16]) -> SimplicialComplex {
    let mut masks: Vec<u16> = masks.iter().copied().filter(|&m| m != 0).collect();
    masks.sort_unstable();
    masks.dedup();
    if masks.is_empty() {
        masks.push(1);
    }
    let simplices: Vec<Vec<Label>> = masks
        .iter()
        .map(|&m| {
            (0..16)
                .filter(|b| m & (1 << b) != 0)
                .map(|b| b as Label)
                .collect()
        })
        .collect();
    SimplicialComplex::new(simplices).unwrap()
}

/// A random face-closed complex on at most `max_vertices` vertices with simplices of at
/// most `max_size` vertices. Mostly edges and triangles, so that it tends to carry
/// cohomology in degrees 1 and 2.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_size: usize,
) -> SimplicialComplex {
    let nv = rng.gen_range(max_vertices.min(5)..=max_vertices);
    let count = rng.gen_range(6..=16);
    let verts: Vec<usize> = (0..nv).collect();
    let masks: Vec<u16> = (0..count)
        .map(|_| {
            let size = match rng.gen_range(0..10) {
                0..=5 => 3,
                6..=8 => 2,
                _ => 4,
            }
            .min(max_size)
            .min(nv);
            verts
                .choose_multiple(rng, size)
                .fold(0u16, |m, &v| m | (1 << v))
        })
        .collect();
    complex_from_masks(&masks)
}

/// Cup product, or the zero class when the degrees overflow the dimension.
pub fn cup(k: &SimplicialComplex, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
    if x.degree() + y.degree() > k.dim() {
        cohomology::zero_class(k, x.degree() + y.degree(), x.ring())
    } else {
        cohomology::cup_product(k, x, y).unwrap()
    }
}

pub fn sum(k: &SimplicialComplex, deg: usize, classes: &[CohomologyClass]) -> CohomologyClass {
    classes
        .iter()
        .fold(cohomology::zero_class(k, deg, Ring::F2), |acc, c| {
            acc.add(c).unwrap()
        })
}

/// Every F2 class in degree `deg` when there are few, else the basis plus pairwise sums.
pub fn sample_classes(k: &SimplicialComplex, deg: usize) -> Vec<CohomologyClass> {
    let basis = cohomology::f2_basis(k, deg);
    let mut out = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(basis[i].add(&basis[j]).unwrap());
        }
    }
    out
}

pub fn relabeled<R: Rng>(k: &SimplicialComplex, rng: &mut R) -> SimplicialComplex {
    let verts = k.vertices().to_vec();
    let mut images: Vec<Label> = (0..verts.len() as Label).map(|i| 100 + 7 * i).collect();
    images.shuffle(rng);
    k.relabel(|v| images[verts.iter().position(|&w| w == v).unwrap()])
        .unwrap()
}

pub const SMALL_PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// A nonzero rational whose numerator and denominator factor over primes up to 13.
pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for &p in &SMALL_PRIMES {
        let e: i32 = rng.gen_range(-2..=2);
        if e > 0 {
            num *= BigInt::from(p).pow(e as u32);
        } else if e < 0 {
            den *= BigInt::from(p).pow((-e) as u32);
        }
    }
    if rng.gen_bool(0.5) {
        num = -num;
    }
    BigRational::new(num, den)
}

pub fn random_diagonal_form<R: Rng>(rng: &mut R, max_dim: usize) -> QuadraticForm {
    let n = rng.gen_range(1..=max_dim);
    let entries: Vec<BigRational> = (0..n).map(|_| random_rational(rng)).collect();
    QuadraticForm::diag(&entries).unwrap()
}

/// A random unimodular integer matrix, as a product of elementary operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    if n < 2 {
        if rng.gen_bool(0.5) {
            u[0][0] = -1;
        }
        return u;
    }
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => {
                let f = rng.gen_range(-2..=2);
                for r in u.iter_mut() {
                    r[i] += f * r[j];
                }
            }
            1 => {
                for r in u.iter_mut() {
                    r.swap(i, j);
                }
            }
            _ => {
                for r in u.iter_mut() {
                    r[i] = -r[i];
                }
            }
        }
    }
    u
}

/// A random symmetric nonsingular integer Gram matrix of size `n`.
pub fn random_integral_form<R: Rng>(rng: &mut R, n: usize) -> QuadraticForm {
    loop {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-4..=4);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        if let Ok(f) = QuadraticForm::from_integers(&g) {
            return f;
        }
    }
}
