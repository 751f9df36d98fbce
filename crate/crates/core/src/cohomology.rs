//! Exact simplicial (co)homology over F2 and Z.
//!
//! Cohomology bases are computed once per complex and degree and cached inside the
//! complex. Over F2 the basis comes from an echelon form of the coboundaries extended by
//! kernel vectors of the next coboundary. Over Z it comes from the Smith normal form
//! `P δ Q = D` of the incoming coboundary: the columns `u_i` of `P⁻¹` give a basis of the
//! cochains in which the coboundaries are `d_i u_i`, and the free part is the kernel of the
//! outgoing coboundary restricted to the remaining `u_i`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::f2::{self, Echelon, F2Vec};
use crate::intmat::{self, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    F2,
    Z,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::F2 => "F2",
            Ring::Z => "Z",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Homology in one degree: rank plus invariant factors of the torsion subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Coefficient vector over the ordered simplices of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellVector {
    F2(F2Vec),
    Z(Vec<BigInt>),
}

pub type Cochain = CellVector;
pub type Chain = CellVector;

impl CellVector {
    pub fn ring(&self) -> Ring {
        match self {
            CellVector::F2(_) => Ring::F2,
            CellVector::Z(_) => Ring::Z,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            CellVector::F2(v) => v.len(),
            CellVector::Z(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        match self {
            CellVector::F2(v) => v.ones().collect(),
            CellVector::Z(v) => (0..v.len()).filter(|&i| !v[i].is_zero()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCoord {
    pub order: BigInt,
    pub value: BigInt,
}

/// Coordinates of a class in the cached basis of `H^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassCoords {
    F2(F2Vec),
    Z {
        free: Vec<BigInt>,
        torsion: Vec<TorsionCoord>,
    },
}

impl ClassCoords {
    pub fn is_zero(&self) -> bool {
        match self {
            ClassCoords::F2(v) => v.is_zero(),
            ClassCoords::Z { free, torsion } => {
                free.iter().all(Zero::is_zero) && torsion.iter().all(|t| t.value.is_zero())
            }
        }
    }
}

/// A cohomology class: a cocycle representative together with its coordinates.
///
/// Two classes are equal in cohomology iff their degrees and coordinates agree; the
/// representatives may differ by a coboundary, see [`CohomologyClass::same_class`].
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    degree: usize,
    cocycle: Cochain,
    coords: ClassCoords,
}

impl CohomologyClass {
    pub fn ring(&self) -> Ring {
        self.cocycle.ring()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn coords(&self) -> &ClassCoords {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn same_class(&self, other: &CohomologyClass) -> bool {
        self.degree == other.degree && self.coords == other.coords
    }

    pub fn f2_cocycle(&self) -> Option<&F2Vec> {
        match &self.cocycle {
            CellVector::F2(v) => Some(v),
            CellVector::Z(_) => None,
        }
    }

    pub fn f2_coords(&self) -> Option<&F2Vec> {
        match &self.coords {
            ClassCoords::F2(v) => Some(v),
            ClassCoords::Z { .. } => None,
        }
    }

    pub fn z_cocycle(&self) -> Option<&[BigInt]> {
        match &self.cocycle {
            CellVector::Z(v) => Some(v),
            CellVector::F2(_) => None,
        }
    }

    /// Sum of two classes of the same ring and degree.
    pub fn add(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        if self.degree != other.degree {
            return Err(Error::Inconsistent(format!(
                "cannot add classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        match (&self.cocycle, &other.cocycle, &self.coords, &other.coords) {
            (CellVector::F2(a), CellVector::F2(b), ClassCoords::F2(ca), ClassCoords::F2(cb)) => {
                let mut v = a.clone();
                v.xor_assign(b);
                let mut c = ca.clone();
                c.xor_assign(cb);
                Ok(CohomologyClass {
                    degree: self.degree,
                    cocycle: CellVector::F2(v),
                    coords: ClassCoords::F2(c),
                })
            }
            (
                CellVector::Z(a),
                CellVector::Z(b),
                ClassCoords::Z {
                    free: fa,
                    torsion: ta,
                },
                ClassCoords::Z {
                    free: fb,
                    torsion: tb,
                },
            ) => Ok(CohomologyClass {
                degree: self.degree,
                cocycle: CellVector::Z(a.iter().zip(b).map(|(x, y)| x + y).collect()),
                coords: ClassCoords::Z {
                    free: fa.iter().zip(fb).map(|(x, y)| x + y).collect(),
                    torsion: ta
                        .iter()
                        .zip(tb)
                        .map(|(x, y)| TorsionCoord {
                            order: x.order.clone(),
                            value: (&x.value + &y.value).mod_floor(&x.order),
                        })
                        .collect(),
                },
            }),
            _ => Err(Error::RingMismatch(self.ring().name(), other.ring().name())),
        }
    }
}

/// Cached cohomology data of a complex.
#[derive(Clone, Default)]
pub(crate) struct Caches {
    f2: Vec<OnceLock<F2Cohomology>>,
    z: Vec<OnceLock<IntCohomology>>,
    fundamental_f2: OnceLock<Result<F2Vec>>,
    fundamental_z: OnceLock<Result<Vec<BigInt>>>,
}

impl Caches {
    pub(crate) fn new(dim: usize) -> Self {
        Caches {
            f2: (0..=dim).map(|_| OnceLock::new()).collect(),
            z: (0..=dim).map(|_| OnceLock::new()).collect(),
            fundamental_f2: OnceLock::new(),
            fundamental_z: OnceLock::new(),
        }
    }
}

impl fmt::Debug for Caches {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn filled<T>(v: &[OnceLock<T>]) -> usize {
            v.iter().filter(|c| c.get().is_some()).count()
        }
        f.debug_struct("Caches")
            .field("f2_degrees", &filled(&self.f2))
            .field("z_degrees", &filled(&self.z))
            .finish()
    }
}

/// Basis of `H^k(K; F2)` and a reducer giving coordinates of any cocycle.
#[derive(Clone, Debug)]
pub(crate) struct F2Cohomology {
    reps: Vec<F2Vec>,
    reducer: Echelon,
    tag_len: usize,
}

impl F2Cohomology {
    fn compute(k: &SimplicialComplex, deg: usize) -> Self {
        let n = k.count(deg);
        // Z^deg = ker(δ_deg), as combinations of deg-simplices.
        let delta_cols: Vec<F2Vec> = (0..n)
            .map(|s| coboundary_of_simplex_f2(k, deg, s))
            .collect();
        let cocycles = f2::kernel(&delta_cols, k.count(deg + 1));
        let tag_len = cocycles.len();
        let mut reducer = Echelon::new(n);
        if deg > 0 {
            for s in 0..k.count(deg - 1) {
                reducer.insert(
                    coboundary_of_simplex_f2(k, deg - 1, s),
                    F2Vec::zeros(tag_len),
                );
            }
        }
        let mut reps = Vec::new();
        for z in cocycles {
            let mut v = z.clone();
            let mut tag = F2Vec::zeros(tag_len);
            reducer.reduce(&mut v, &mut tag);
            if !v.is_zero() {
                tag.flip(reps.len());
                reducer.insert_reduced(v, tag);
                reps.push(z);
            }
        }
        F2Cohomology {
            reps,
            reducer,
            tag_len,
        }
    }

    fn rank(&self) -> usize {
        self.reps.len()
    }

    fn coords(&self, cocycle: &F2Vec) -> Option<F2Vec> {
        let mut v = cocycle.clone();
        let mut tag = F2Vec::zeros(self.tag_len);
        self.reducer.reduce(&mut v, &mut tag);
        v.is_zero().then(|| tag.truncated(self.rank()))
    }
}

/// Integral cohomology data of one degree.
#[derive(Clone, Debug)]
pub(crate) struct IntCohomology {
    p: IntMatrix,
    diag: Vec<BigInt>,
    torsion_reps: Vec<(BigInt, usize)>,
    free_reps: Vec<Vec<BigInt>>,
    w_rank: usize,
    qw_inv: IntMatrix,
    p_inv: IntMatrix,
}

impl IntCohomology {
    fn compute(k: &SimplicialComplex, deg: usize) -> Self {
        let n = k.count(deg);
        let incoming = if deg == 0 {
            IntMatrix::zeros(n, 0)
        } else {
            coboundary_matrix(k, deg - 1)
        };
        let snf = intmat::smith(&incoming, true);
        let r = snf.rank();
        let p = snf.p.expect("transforms");
        let p_inv = snf.p_inv.expect("transforms");
        let rest = p_inv.columns_from(r);
        let w = coboundary_matrix(k, deg).mul(&rest);
        let wsnf = intmat::smith(&w, true);
        let s = wsnf.rank();
        let qw = wsnf.q.expect("transforms");
        let free_reps = (s..qw.cols())
            .map(|j| rest.mul_vec(&qw.column(j)))
            .collect();
        let torsion_reps = snf
            .diag
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, d)| (d.clone(), i))
            .collect();
        IntCohomology {
            p,
            diag: snf.diag,
            torsion_reps,
            free_reps,
            w_rank: s,
            qw_inv: wsnf.q_inv.expect("transforms"),
            p_inv,
        }
    }

    fn coords(&self, cocycle: &[BigInt]) -> Option<ClassCoords> {
        let y = self.p.mul_vec(cocycle);
        let r = self.diag.len();
        let z = self.qw_inv.mul_vec(&y[r..]);
        if z[..self.w_rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let torsion = self
            .torsion_reps
            .iter()
            .map(|(d, i)| TorsionCoord {
                order: d.clone(),
                value: y[*i].mod_floor(d),
            })
            .collect();
        Some(ClassCoords::Z {
            free: z[self.w_rank..].to_vec(),
            torsion,
        })
    }

    fn torsion_rep(&self, i: usize) -> Vec<BigInt> {
        self.p_inv.column(i)
    }
}

fn f2_cohomology(k: &SimplicialComplex, deg: usize) -> Option<&F2Cohomology> {
    k.caches
        .f2
        .get(deg)
        .map(|cell| cell.get_or_init(|| F2Cohomology::compute(k, deg)))
}

fn z_cohomology(k: &SimplicialComplex, deg: usize) -> Option<&IntCohomology> {
    k.caches
        .z
        .get(deg)
        .map(|cell| cell.get_or_init(|| IntCohomology::compute(k, deg)))
}

fn coboundary_of_simplex_f2(k: &SimplicialComplex, deg: usize, s: usize) -> F2Vec {
    let m = k.count(deg + 1);
    let mut v = F2Vec::zeros(m);
    for t in 0..m {
        if k.faces(deg + 1, t).contains(&s) {
            v.flip(t);
        }
    }
    v
}

/// Matrix of `δ: C^deg → C^{deg+1}` over Z (rows indexed by `(deg+1)`-simplices).
pub fn coboundary_matrix(k: &SimplicialComplex, deg: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k.count(deg + 1), k.count(deg));
    for t in 0..k.count(deg + 1) {
        for (i, &f) in k.faces(deg + 1, t).iter().enumerate() {
            m.set(
                t,
                f,
                if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                },
            );
        }
    }
    m
}

/// Matrix of `∂: C_deg → C_{deg-1}` over Z, `deg ≥ 1`.
pub fn boundary_matrix(k: &SimplicialComplex, deg: usize) -> IntMatrix {
    coboundary_matrix(k, deg - 1).transpose()
}

pub fn coboundary_f2(k: &SimplicialComplex, deg: usize, c: &F2Vec) -> F2Vec {
    let m = k.count(deg + 1);
    let mut out = F2Vec::zeros(m);
    for t in 0..m {
        let parity = k.faces(deg + 1, t).iter().filter(|&&f| c.get(f)).count() % 2;
        if parity == 1 {
            out.flip(t);
        }
    }
    out
}

pub fn coboundary_z(k: &SimplicialComplex, deg: usize, c: &[BigInt]) -> Vec<BigInt> {
    (0..k.count(deg + 1))
        .map(|t| {
            k.faces(deg + 1, t)
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, &f)| {
                    if i % 2 == 0 {
                        acc + &c[f]
                    } else {
                        acc - &c[f]
                    }
                })
        })
        .collect()
}

/// Homology in degrees `0..=dim`.
pub fn homology(k: &SimplicialComplex, ring: Ring) -> Vec<HomologySummary> {
    let dim = k.dim();
    match ring {
        Ring::F2 => {
            // rank of ∂_d = rank of δ_{d-1}
            let ranks: Vec<usize> = (0..=dim + 1)
                .map(|d| {
                    if d == 0 || d > dim {
                        0
                    } else {
                        let cols: Vec<F2Vec> = (0..k.count(d - 1))
                            .map(|s| coboundary_of_simplex_f2(k, d - 1, s))
                            .collect();
                        f2::rank(&cols)
                    }
                })
                .collect();
            (0..=dim)
                .map(|d| HomologySummary {
                    degree: d,
                    betti: k.count(d) - ranks[d] - ranks[d + 1],
                    torsion: Vec::new(),
                })
                .collect()
        }
        Ring::Z => {
            let snfs: Vec<Vec<BigInt>> = (0..=dim + 1)
                .map(|d| {
                    if d == 0 || d > dim {
                        Vec::new()
                    } else {
                        intmat::smith(&boundary_matrix(k, d), false).diag
                    }
                })
                .collect();
            (0..=dim)
                .map(|d| HomologySummary {
                    degree: d,
                    betti: k.count(d) - snfs[d].len() - snfs[d + 1].len(),
                    torsion: snfs[d + 1]
                        .iter()
                        .filter(|x| !x.is_one())
                        .cloned()
                        .collect(),
                })
                .collect()
        }
    }
}

/// Rank of `H^deg(K; F2)`.
pub fn f2_rank(k: &SimplicialComplex, deg: usize) -> usize {
    f2_cohomology(k, deg).map_or(0, F2Cohomology::rank)
}

/// The zero class of degree `deg` (an empty cochain above the dimension).
pub fn zero_class(k: &SimplicialComplex, deg: usize, ring: Ring) -> CohomologyClass {
    let n = k.count(deg);
    match ring {
        Ring::F2 => CohomologyClass {
            degree: deg,
            cocycle: CellVector::F2(F2Vec::zeros(n)),
            coords: ClassCoords::F2(F2Vec::zeros(f2_rank(k, deg))),
        },
        Ring::Z => {
            let (free, torsion) = match z_cohomology(k, deg) {
                Some(h) => (
                    vec![BigInt::zero(); h.free_reps.len()],
                    h.torsion_reps
                        .iter()
                        .map(|(d, _)| TorsionCoord {
                            order: d.clone(),
                            value: BigInt::zero(),
                        })
                        .collect(),
                ),
                None => (Vec::new(), Vec::new()),
            };
            CohomologyClass {
                degree: deg,
                cocycle: CellVector::Z(vec![BigInt::zero(); n]),
                coords: ClassCoords::Z { free, torsion },
            }
        }
    }
}

/// The unit `1 ∈ H^0`, represented by the all-ones 0-cochain.
pub fn unit(k: &SimplicialComplex, ring: Ring) -> CohomologyClass {
    let n = k.count(0);
    match ring {
        Ring::F2 => {
            f2_class(k, 0, F2Vec::from_support(n, 0..n)).expect("constant cochain is closed")
        }
        Ring::Z => z_class(k, 0, vec![BigInt::one(); n]).expect("constant cochain is closed"),
    }
}

fn check_len(k: &SimplicialComplex, deg: usize, got: usize) -> Result<()> {
    let expected = k.count(deg);
    if got != expected {
        return Err(Error::CochainLength {
            degree: deg,
            expected,
            got,
        });
    }
    Ok(())
}

/// Wraps an F2 cocycle as a class, computing its coordinates.
pub fn f2_class(k: &SimplicialComplex, deg: usize, cocycle: F2Vec) -> Result<CohomologyClass> {
    check_len(k, deg, cocycle.len())?;
    let Some(h) = f2_cohomology(k, deg) else {
        return Ok(zero_class(k, deg, Ring::F2));
    };
    if !coboundary_f2(k, deg, &cocycle).is_zero() {
        return Err(Error::NotCocycle(deg));
    }
    let coords = h.coords(&cocycle).ok_or(Error::NotCocycle(deg))?;
    Ok(CohomologyClass {
        degree: deg,
        cocycle: CellVector::F2(cocycle),
        coords: ClassCoords::F2(coords),
    })
}

/// Wraps an integral cocycle as a class, computing its coordinates.
pub fn z_class(k: &SimplicialComplex, deg: usize, cocycle: Vec<BigInt>) -> Result<CohomologyClass> {
    check_len(k, deg, cocycle.len())?;
    let Some(h) = z_cohomology(k, deg) else {
        return Ok(zero_class(k, deg, Ring::Z));
    };
    if coboundary_z(k, deg, &cocycle).iter().any(|x| !x.is_zero()) {
        return Err(Error::NotCocycle(deg));
    }
    let coords = h.coords(&cocycle).ok_or(Error::NotCocycle(deg))?;
    Ok(CohomologyClass {
        degree: deg,
        cocycle: CellVector::Z(cocycle),
        coords,
    })
}

/// The cached basis of `H^deg(K; F2)`.
pub fn f2_basis(k: &SimplicialComplex, deg: usize) -> Vec<CohomologyClass> {
    let Some(h) = f2_cohomology(k, deg) else {
        return Vec::new();
    };
    let r = h.rank();
    h.reps
        .iter()
        .enumerate()
        .map(|(i, rep)| CohomologyClass {
            degree: deg,
            cocycle: CellVector::F2(rep.clone()),
            coords: ClassCoords::F2(F2Vec::unit(r, i)),
        })
        .collect()
}

/// The class with the given coordinates in the cached F2 basis.
pub fn f2_class_from_coords(
    k: &SimplicialComplex,
    deg: usize,
    coords: &F2Vec,
) -> Result<CohomologyClass> {
    let r = f2_rank(k, deg);
    if coords.len() != r {
        return Err(Error::CoordLength {
            degree: deg,
            expected: r,
            got: coords.len(),
        });
    }
    let mut class = zero_class(k, deg, Ring::F2);
    for (i, b) in f2_basis(k, deg).into_iter().enumerate() {
        if coords.get(i) {
            class = class.add(&b)?;
        }
    }
    Ok(class)
}

/// Integral cocycles whose classes form a basis of the torsion-free quotient of `H^deg(K; Z)`.
pub fn z_free_basis(k: &SimplicialComplex, deg: usize) -> Vec<CohomologyClass> {
    let Some(h) = z_cohomology(k, deg) else {
        return Vec::new();
    };
    let f = h.free_reps.len();
    h.free_reps
        .iter()
        .enumerate()
        .map(|(i, rep)| CohomologyClass {
            degree: deg,
            cocycle: CellVector::Z(rep.clone()),
            coords: ClassCoords::Z {
                free: (0..f).map(|j| BigInt::from((i == j) as u8)).collect(),
                torsion: h
                    .torsion_reps
                    .iter()
                    .map(|(d, _)| TorsionCoord {
                        order: d.clone(),
                        value: BigInt::zero(),
                    })
                    .collect(),
            },
        })
        .collect()
}

/// Generators of the torsion summands of `H^deg(K; Z)` with their orders.
pub fn z_torsion_basis(k: &SimplicialComplex, deg: usize) -> Vec<(BigInt, CohomologyClass)> {
    let Some(h) = z_cohomology(k, deg) else {
        return Vec::new();
    };
    h.torsion_reps
        .iter()
        .map(|(d, i)| {
            let class = z_class(k, deg, h.torsion_rep(*i)).expect("SNF basis vector is a cocycle");
            (d.clone(), class)
        })
        .collect()
}

/// Mod-2 reduction of an integral class.
pub fn reduce_mod2(k: &SimplicialComplex, x: &CohomologyClass) -> Result<CohomologyClass> {
    let c = x
        .z_cocycle()
        .ok_or(Error::RingMismatch(x.ring().name(), Ring::Z.name()))?;
    let bits = F2Vec::from_support(c.len(), (0..c.len()).filter(|&i| c[i].is_odd()));
    f2_class(k, x.degree, bits)
}

/// Alexander–Whitney cup product of F2 cochains.
pub fn cup_cochain_f2(k: &SimplicialComplex, x: &F2Vec, p: usize, y: &F2Vec, q: usize) -> F2Vec {
    let n = k.count(p + q);
    let mut out = F2Vec::zeros(n);
    for (s, verts) in k.simplices(p + q).iter().enumerate() {
        let front = k.index_of(&verts[..=p]).expect("face present");
        if !x.get(front) {
            continue;
        }
        let back = k.index_of(&verts[p..]).expect("face present");
        if y.get(back) {
            out.flip(s);
        }
    }
    out
}

/// Alexander–Whitney cup product of integral cochains.
pub fn cup_cochain_z(
    k: &SimplicialComplex,
    x: &[BigInt],
    p: usize,
    y: &[BigInt],
    q: usize,
) -> Vec<BigInt> {
    k.simplices(p + q)
        .iter()
        .map(|verts| {
            let a = &x[k.index_of(&verts[..=p]).expect("face present")];
            if a.is_zero() {
                return BigInt::zero();
            }
            a * &y[k.index_of(&verts[p..]).expect("face present")]
        })
        .collect()
}

/// Cup product of two classes over the same ring.
pub fn cup_product(
    k: &SimplicialComplex,
    x: &CohomologyClass,
    y: &CohomologyClass,
) -> Result<CohomologyClass> {
    let (p, q) = (x.degree, y.degree);
    if p + q > k.dim() {
        return Err(Error::Degree {
            degree: p + q,
            dim: k.dim(),
        });
    }
    match (&x.cocycle, &y.cocycle) {
        (CellVector::F2(a), CellVector::F2(b)) => f2_class(k, p + q, cup_cochain_f2(k, a, p, b, q)),
        (CellVector::Z(a), CellVector::Z(b)) => z_class(k, p + q, cup_cochain_z(k, a, p, b, q)),
        _ => Err(Error::RingMismatch(x.ring().name(), y.ring().name())),
    }
}

/// Generator of the top homology, as a chain on the top simplices.
///
/// Over Z the generator is normalized to have coefficient +1 on the lexicographically first
/// top simplex in its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalClass {
    pub degree: usize,
    pub cycle: Chain,
}

fn compute_fundamental_f2(k: &SimplicialComplex) -> Result<F2Vec> {
    let n = k.dim();
    let cols: Vec<F2Vec> = (0..k.count(n))
        .map(|s| {
            if n == 0 {
                F2Vec::zeros(0)
            } else {
                F2Vec::from_support(k.count(n - 1), k.faces(n, s).iter().copied())
            }
        })
        .collect();
    let target = if n == 0 { 0 } else { k.count(n - 1) };
    let ker = f2::kernel(&cols, target);
    match ker.as_slice() {
        [z] => Ok(z.clone()),
        _ => Err(Error::NoFundamentalClass {
            ring: "F2",
            rank: ker.len(),
        }),
    }
}

fn compute_fundamental_z(k: &SimplicialComplex) -> Result<Vec<BigInt>> {
    let n = k.dim();
    let m = if n == 0 {
        IntMatrix::zeros(0, k.count(0))
    } else {
        boundary_matrix(k, n)
    };
    let ker = intmat::kernel(&m);
    match ker.as_slice() {
        [z] => {
            let first = z
                .iter()
                .find(|x| !x.is_zero())
                .expect("kernel vector is nonzero");
            let sign = if first < &BigInt::zero() {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            Ok(z.iter().map(|x| x * &sign).collect())
        }
        _ => Err(Error::NoFundamentalClass {
            ring: "Z",
            rank: ker.len(),
        }),
    }
}

pub fn fundamental_class(k: &SimplicialComplex, ring: Ring) -> Result<FundamentalClass> {
    let cycle = match ring {
        Ring::F2 => CellVector::F2(
            k.caches
                .fundamental_f2
                .get_or_init(|| compute_fundamental_f2(k))
                .clone()?,
        ),
        Ring::Z => CellVector::Z(
            k.caches
                .fundamental_z
                .get_or_init(|| compute_fundamental_z(k))
                .clone()?,
        ),
    };
    Ok(FundamentalClass {
        degree: k.dim(),
        cycle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    F2(bool),
    Z(BigInt),
}

/// Evaluation of a top-degree class on the fundamental class of the matching ring.
pub fn pairing(k: &SimplicialComplex, x: &CohomologyClass) -> Result<RingElement> {
    if x.degree != k.dim() {
        return Err(Error::Degree {
            degree: x.degree,
            dim: k.dim(),
        });
    }
    let fc = fundamental_class(k, x.ring())?;
    match (&x.cocycle, &fc.cycle) {
        (CellVector::F2(c), CellVector::F2(z)) => Ok(RingElement::F2(c.dot(z))),
        (CellVector::Z(c), CellVector::Z(z)) => Ok(RingElement::Z(
            c.iter()
                .zip(z)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum(),
        )),
        _ => unreachable!("fundamental class ring follows the class ring"),
    }
}

pub fn pairing_f2(k: &SimplicialComplex, x: &CohomologyClass) -> Result<bool> {
    match pairing(k, x)? {
        RingElement::F2(b) => Ok(b),
        RingElement::Z(_) => Err(Error::RingMismatch("Z", "F2")),
    }
}

pub fn pairing_z(k: &SimplicialComplex, x: &CohomologyClass) -> Result<BigInt> {
    match pairing(k, x)? {
        RingElement::Z(v) => Ok(v),
        RingElement::F2(_) => Err(Error::RingMismatch("F2", "Z")),
    }
}

/// Matrix of `(y, x) ↦ ⟨y ∪ x, [K]⟩` with rows indexed by the basis of `H^{n-deg}` and
/// columns by the basis of `H^deg`.
pub fn pairing_matrix_f2(k: &SimplicialComplex, deg: usize) -> Result<Vec<F2Vec>> {
    let n = k.dim();
    let fc = fundamental_class(k, Ring::F2)?;
    let CellVector::F2(z) = &fc.cycle else {
        unreachable!()
    };
    let xs = f2_basis(k, deg);
    let ys = f2_basis(k, n - deg);
    Ok(ys
        .iter()
        .map(|y| {
            let bits: Vec<bool> = xs
                .iter()
                .map(|x| {
                    cup_cochain_f2(
                        k,
                        y.f2_cocycle().unwrap(),
                        n - deg,
                        x.f2_cocycle().unwrap(),
                        deg,
                    )
                    .dot(z)
                })
                .collect();
            F2Vec::from_bools(&bits)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareReport {
    pub poincare: bool,
    pub fundamental_class: bool,
    /// Rank of the degree-`k` pairing matrix, for `k = 0..=n`.
    pub ranks: Vec<usize>,
    pub first_degenerate: Option<usize>,
}

/// Checks that the F2 cup-product pairing against the fundamental class is perfect in
/// every degree.
pub fn is_poincare_f2(k: &SimplicialComplex) -> PoincareReport {
    let n = k.dim();
    if fundamental_class(k, Ring::F2).is_err() {
        return PoincareReport {
            poincare: false,
            fundamental_class: false,
            ranks: Vec::new(),
            first_degenerate: Some(n),
        };
    }
    let mut ranks = Vec::with_capacity(n + 1);
    let mut first = None;
    for deg in 0..=n {
        let m = pairing_matrix_f2(k, deg).expect("fundamental class exists");
        let r = f2::rank(&m);
        let perfect = f2_rank(k, deg) == f2_rank(k, n - deg) && r == f2_rank(k, deg);
        if !perfect && first.is_none() {
            first = Some(deg);
        }
        ranks.push(r);
    }
    PoincareReport {
        poincare: first.is_none(),
        fundamental_class: true,
        ranks,
        first_degenerate: first,
    }
}
