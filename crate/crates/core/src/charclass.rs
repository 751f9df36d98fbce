//! Wu and Stiefel–Whitney classes of F2 Poincaré complexes and the invariants built on them.
//!
//! The Wu class `v_k` is the unique class with `⟨v_k ∪ x, [K]⟩ = ⟨Sq^k x, [K]⟩` for every
//! `x` of degree `n - k`; the Stiefel–Whitney classes are then *defined* by Wu's formula
//! `w_k = Σ_i Sq^{k-i} v_i`, so no tangent data is needed.

use serde::{Deserialize, Serialize};

use crate::cohomology::{self, CohomologyClass, Ring};
use crate::complex::SimplicialComplex;
use crate::f2::{self, F2Vec};
use crate::steenrod;
use crate::{Error, Result};

/// Serializes F2 values as the integers 0 and 1.
pub(crate) mod bit {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(*v as u8)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(serde::de::Error::custom(format!(
                "expected 0 or 1, got {other}"
            ))),
        }
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<bool>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(b) => s.serialize_some(&(*b as u8)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<bool>, D::Error> {
            match Option::<u8>::deserialize(d)? {
                None => Ok(None),
                Some(0) => Ok(Some(false)),
                Some(1) => Ok(Some(true)),
                Some(other) => Err(serde::de::Error::custom(format!(
                    "expected 0 or 1, got {other}"
                ))),
            }
        }
    }
}

/// A partition of `n` into positive parts, sorted descending.
pub type Partition = Vec<usize>;

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwNumber {
    pub partition: Partition,
    #[serde(with = "bit")]
    pub value: bool,
}

/// Stiefel–Whitney numbers keyed by partition, in lexicographically decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwNumbers(pub Vec<SwNumber>);

impl SwNumbers {
    pub fn get(&self, partition: &[usize]) -> Option<bool> {
        let mut key = partition.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.0.iter().find(|e| e.partition == key).map(|e| e.value)
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(|e| !e.value)
    }

    /// First partition (in the canonical order) at which the two lists disagree.
    pub fn first_difference(&self, other: &SwNumbers) -> Option<Partition> {
        self.0
            .iter()
            .zip(&other.0)
            .find(|(a, b)| a != b)
            .map(|(a, _)| a.partition.clone())
    }
}

fn require_poincare(k: &SimplicialComplex) -> Result<()> {
    let report = cohomology::is_poincare_f2(k);
    if !report.fundamental_class {
        cohomology::fundamental_class(k, Ring::F2)?;
    }
    match report.first_degenerate {
        Some(d) => Err(Error::PairingSingular(d)),
        None => Ok(()),
    }
}

/// Wu classes `v_0, ..., v_n`.
pub fn wu_classes(k: &SimplicialComplex) -> Result<Vec<CohomologyClass>> {
    require_poincare(k)?;
    let n = k.dim();
    (0..=n).map(|deg| wu_class(k, deg)).collect()
}

fn wu_class(k: &SimplicialComplex, deg: usize) -> Result<CohomologyClass> {
    let n = k.dim();
    let candidates = cohomology::f2_basis(k, deg);
    let tests = cohomology::f2_basis(k, n - deg);
    let mut rows = Vec::with_capacity(tests.len());
    let mut rhs = Vec::with_capacity(tests.len());
    for x in &tests {
        let row: Vec<bool> = candidates
            .iter()
            .map(|v| cohomology::pairing_f2(k, &cohomology::cup_product(k, v, x)?))
            .collect::<Result<_>>()?;
        rows.push(F2Vec::from_bools(&row));
        rhs.push(cohomology::pairing_f2(k, &steenrod::sq(k, deg, x)?)?);
    }
    let coords =
        f2::solve_square(&rows, &F2Vec::from_bools(&rhs)).ok_or(Error::PairingSingular(deg))?;
    cohomology::f2_class_from_coords(k, deg, &coords)
}

/// Stiefel–Whitney classes from Wu classes: `w_k = Σ_{i ≤ k} Sq^{k-i} v_i`.
pub fn sw_from_wu(k: &SimplicialComplex, wu: &[CohomologyClass]) -> Result<Vec<CohomologyClass>> {
    (0..wu.len())
        .map(|deg| {
            let mut w = cohomology::zero_class(k, deg, Ring::F2);
            for (i, v) in wu.iter().enumerate().take(deg + 1) {
                w = w.add(&steenrod::sq(k, deg - i, v)?)?;
            }
            Ok(w)
        })
        .collect()
}

pub fn sw_classes(k: &SimplicialComplex) -> Result<Vec<CohomologyClass>> {
    sw_from_wu(k, &wu_classes(k)?)
}

/// `⟨w_{i_1} ∪ ... ∪ w_{i_r}, [K]⟩` for every partition of the dimension.
pub fn sw_numbers_from(k: &SimplicialComplex, sw: &[CohomologyClass]) -> Result<SwNumbers> {
    let n = k.dim();
    let mut out = Vec::new();
    for partition in partitions(n) {
        let mut product = cohomology::unit(k, Ring::F2);
        for &part in &partition {
            product = cohomology::cup_product(k, &product, &sw[part])?;
        }
        out.push(SwNumber {
            value: cohomology::pairing_f2(k, &product)?,
            partition,
        });
    }
    Ok(SwNumbers(out))
}

pub fn sw_numbers(k: &SimplicialComplex) -> Result<SwNumbers> {
    sw_numbers_from(k, &sw_classes(k)?)
}

/// Nonvanishing of the integral classes `W_{k+1} = β(w_k)` for `k = 0..=n`.
pub fn integral_sw_from(k: &SimplicialComplex, sw: &[CohomologyClass]) -> Result<Vec<bool>> {
    sw.iter()
        .map(|w| {
            if w.is_zero() {
                return Ok(false);
            }
            Ok(!steenrod::bockstein(k, w)?.is_zero)
        })
        .collect()
}

pub fn integral_sw(k: &SimplicialComplex) -> Result<Vec<bool>> {
    integral_sw_from(k, &sw_classes(k)?)
}

/// Everything derived from the Wu classes of one complex.
#[derive(Clone, Debug)]
pub struct CharClassProfile {
    pub n: usize,
    pub wu: Vec<CohomologyClass>,
    pub sw: Vec<CohomologyClass>,
    /// `integral_sw_nonzero[k]` is true iff `W_{k+1} ≠ 0`.
    pub integral_sw_nonzero: Vec<bool>,
    pub sw_numbers: SwNumbers,
}

impl CharClassProfile {
    /// Degrees of the nonzero homogeneous parts of the total Wu class.
    pub fn total_wu(&self) -> Vec<usize> {
        support(&self.wu)
    }

    /// Degrees of the nonzero homogeneous parts of the total Stiefel–Whitney class.
    pub fn total_sw(&self) -> Vec<usize> {
        support(&self.sw)
    }
}

fn support(classes: &[CohomologyClass]) -> Vec<usize> {
    classes
        .iter()
        .filter(|c| !c.is_zero())
        .map(CohomologyClass::degree)
        .collect()
}

pub fn profile(k: &SimplicialComplex) -> Result<CharClassProfile> {
    let wu = wu_classes(k)?;
    let sw = sw_from_wu(k, &wu)?;
    let integral_sw_nonzero = integral_sw_from(k, &sw)?;
    let sw_numbers = sw_numbers_from(k, &sw)?;
    Ok(CharClassProfile {
        n: k.dim(),
        wu,
        sw,
        integral_sw_nonzero,
        sw_numbers,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub orientable: bool,
    pub k_orientable_max: usize,
    pub spin: bool,
    pub spin_c: bool,
    #[serde(with = "bit::option")]
    pub de_rham: Option<bool>,
    pub null_cobordant: bool,
}

/// Largest `k` such that `w_1, ..., w_{2^k - 1}` vanish, capped at the least `k` with
/// `2^k - 1 ≥ n` (beyond which the condition no longer changes).
fn k_orientability(sw: &[CohomologyClass]) -> usize {
    let n = sw.len() - 1;
    let cap = (0..).find(|&k| (1usize << k) > n).unwrap();
    let mut best = 0;
    for k in 1..=cap {
        let top = ((1usize << k) - 1).min(n);
        if sw[1..=top].iter().all(CohomologyClass::is_zero) {
            best = k;
        } else {
            break;
        }
    }
    best
}

pub fn obstructions_from(
    k: &SimplicialComplex,
    profile: &CharClassProfile,
) -> Result<ObstructionReport> {
    let n = profile.n;
    let sw = &profile.sw;
    let w1_zero = n < 1 || sw[1].is_zero();
    let w2_zero = n < 2 || sw[2].is_zero();
    let w3_integral_zero = profile.integral_sw_nonzero.get(2).is_none_or(|nz| !nz);
    let de_rham = if n >= 5 && n % 4 == 1 {
        let prod = cohomology::cup_product(k, &sw[2], &sw[n - 2])?;
        Some(cohomology::pairing_f2(k, &prod)?)
    } else {
        None
    };
    Ok(ObstructionReport {
        orientable: w1_zero,
        k_orientable_max: k_orientability(sw),
        spin: w1_zero && w2_zero,
        spin_c: w1_zero && w3_integral_zero,
        de_rham,
        null_cobordant: profile.sw_numbers.all_zero(),
    })
}

pub fn obstructions(k: &SimplicialComplex) -> Result<ObstructionReport> {
    obstructions_from(k, &profile(k)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismVerdict {
    pub cobordant: bool,
    pub first_difference: Option<Partition>,
    /// Every partition at which the numbers differ, in canonical order.
    pub differing: Vec<Partition>,
}

/// Thom's criterion: closed manifolds of equal dimension are cobordant iff their
/// Stiefel–Whitney numbers agree.
pub fn cobordant(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<CobordismVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let (na, nb) = (sw_numbers(a)?, sw_numbers(b)?);
    let differing: Vec<Partition> =
        na.0.iter()
            .zip(&nb.0)
            .filter(|(x, y)| x != y)
            .map(|(x, _)| x.partition.clone())
            .collect();
    Ok(CobordismVerdict {
        cobordant: differing.is_empty(),
        first_difference: differing.first().cloned(),
        differing,
    })
}
