//! Cup-i products, Steenrod squares and the integral Bockstein.
//!
//! Cup-i products use the interval-cut formula on ordered simplices: for an `n`-simplex
//! and a set `U = {u_1 < ... < u_{n-i}}` of vertex positions, split `U` by the parity of
//! `u_j + j` into `U0` and `U1`; then
//!
//! ```text
//! (x ∪_i y)(σ) = Σ_U x(σ with U0 removed) · y(σ with U1 removed)
//! ```
//!
//! and `Sq^k[x] = [x ∪_{q-k} x]` for `x` of degree `q`. Cochain-level results depend on the
//! vertex order; only the induced cohomology operations are order independent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::cohomology::{self, CohomologyClass, Ring};
use crate::complex::SimplicialComplex;
use crate::f2::F2Vec;
use crate::{Error, Result};

/// Pairs of kept vertex positions `(for x, for y)` contributing to `∪_i` on an `n`-simplex.
fn cup_i_patterns(n: usize, i: usize, p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let size = n - i;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(size);
    subsets(n + 1, size, 0, &mut chosen, &mut |u| {
        let mut drop_x = vec![false; n + 1];
        let mut drop_y = vec![false; n + 1];
        for (j, &pos) in u.iter().enumerate() {
            if (pos + j + 1) % 2 == 0 {
                drop_x[pos] = true;
            } else {
                drop_y[pos] = true;
            }
        }
        let keep_x: Vec<usize> = (0..=n).filter(|&v| !drop_x[v]).collect();
        let keep_y: Vec<usize> = (0..=n).filter(|&v| !drop_y[v]).collect();
        if keep_x.len() == p + 1 && keep_y.len() == q + 1 {
            out.push((keep_x, keep_y));
        }
    });
    out
}

fn subsets(
    n: usize,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == size {
        f(chosen);
        return;
    }
    let need = size - chosen.len();
    for v in start..=n - need {
        chosen.push(v);
        subsets(n, size, v + 1, chosen, f);
        chosen.pop();
    }
}

/// `x ∪_i y` for F2 cochains of degrees `p` and `q`, a cochain of degree `p + q - i`.
pub fn cup_i(
    k: &SimplicialComplex,
    x: &F2Vec,
    p: usize,
    y: &F2Vec,
    q: usize,
    i: usize,
) -> Result<F2Vec> {
    if i > p.min(q) {
        return Err(Error::CupIndex { i, p, q });
    }
    for (deg, len) in [(p, x.len()), (q, y.len())] {
        if len != k.count(deg) {
            return Err(Error::CochainLength {
                degree: deg,
                expected: k.count(deg),
                got: len,
            });
        }
    }
    let n = p + q - i;
    let mut out = F2Vec::zeros(k.count(n));
    if k.count(n) == 0 {
        return Ok(out);
    }
    let patterns = cup_i_patterns(n, i, p, q);
    let mut face = Vec::with_capacity(n + 1);
    for (s, verts) in k.simplices(n).iter().enumerate() {
        let mut acc = false;
        for (keep_x, keep_y) in &patterns {
            face.clear();
            face.extend(keep_x.iter().map(|&v| verts[v]));
            if !x.get(k.index_of(&face).expect("face present")) {
                continue;
            }
            face.clear();
            face.extend(keep_y.iter().map(|&v| verts[v]));
            acc ^= y.get(k.index_of(&face).expect("face present"));
        }
        if acc {
            out.set(s, true);
        }
    }
    Ok(out)
}

/// The Steenrod square `Sq^k` on an F2 class.
pub fn sq(
    k: &SimplicialComplex,
    degree_shift: usize,
    x: &CohomologyClass,
) -> Result<CohomologyClass> {
    let c = x
        .f2_cocycle()
        .ok_or(Error::RingMismatch(x.ring().name(), Ring::F2.name()))?;
    let q = x.degree();
    let target = q + degree_shift;
    if degree_shift > q || target > k.dim() {
        return Ok(cohomology::zero_class(k, target, Ring::F2));
    }
    let rep = cup_i(k, c, q, c, q, q - degree_shift)?;
    cohomology::f2_class(k, target, rep)
}

/// Total square `Sq = Sq^0 + Sq^1 + ...` as its homogeneous components, indexed by degree
/// up to the dimension.
pub fn total_sq(k: &SimplicialComplex, x: &CohomologyClass) -> Result<Vec<CohomologyClass>> {
    (0..=k.dim())
        .map(|d| {
            if d < x.degree() {
                Ok(cohomology::zero_class(k, d, Ring::F2))
            } else {
                sq(k, d - x.degree(), x)
            }
        })
        .collect()
}

/// An integral Bockstein image with its vanishing decided exactly.
#[derive(Clone, Debug)]
pub struct Bockstein {
    pub class: CohomologyClass,
    pub is_zero: bool,
}

/// `β: H^k(K; F2) → H^{k+1}(K; Z)`: lift to a {0,1} integral cochain, take its integral
/// coboundary and halve it.
pub fn bockstein(k: &SimplicialComplex, x: &CohomologyClass) -> Result<Bockstein> {
    let c = x
        .f2_cocycle()
        .ok_or(Error::RingMismatch(x.ring().name(), Ring::F2.name()))?;
    let deg = x.degree();
    if deg + 1 > k.dim() {
        let class = cohomology::zero_class(k, deg + 1, Ring::Z);
        return Ok(Bockstein {
            class,
            is_zero: true,
        });
    }
    let lift: Vec<BigInt> = (0..c.len()).map(|i| BigInt::from(c.get(i) as u8)).collect();
    let two = BigInt::from(2);
    let halved = cohomology::coboundary_z(k, deg, &lift)
        .into_iter()
        .map(|v| {
            let (q, r) = v.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::NotCocycle(deg));
            }
            Ok(q)
        })
        .collect::<Result<Vec<_>>>()?;
    let class = cohomology::z_class(k, deg + 1, halved)?;
    let is_zero = class.is_zero();
    Ok(Bockstein { class, is_zero })
}
