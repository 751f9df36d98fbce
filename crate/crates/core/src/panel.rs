//! Intersection forms of oriented `4m`-dimensional Poincaré complexes and the combined
//! invariant panel.
//!
//! The panel collects the invariants that agree for closed aspherical manifolds whose
//! fundamental groups are good and have isomorphic profinite completions: SW numbers,
//! orientability, spin and spin^C, the de Rham invariant, evenness of the intersection form
//! and the signature mod 8. [`compare_panels`] reports which of them separate two complexes;
//! agreement never certifies that the completions are isomorphic.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charclass::{self, bit, SwNumbers};
use crate::cohomology::{self, CohomologyClass, Ring};
use crate::complex::SimplicialComplex;
use crate::quadform::{self, Equivalence, QuadraticForm};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// The integral fundamental cycle with coefficient +1 on the first top simplex.
    Standard,
    Reversed,
}

#[derive(Clone, Debug)]
pub struct IntersectionForm {
    pub m: usize,
    /// Integral cocycles whose classes form a basis of the torsion-free part of `H^{2m}`.
    pub basis: Vec<CohomologyClass>,
    pub gram: Vec<Vec<BigInt>>,
    pub orientation: Orientation,
}

impl IntersectionForm {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn quadratic_form(&self) -> QuadraticForm {
        QuadraticForm::from_big_integers(&self.gram).expect("checked nonsingular on construction")
    }
}

pub fn intersection_form(k: &SimplicialComplex) -> Result<IntersectionForm> {
    intersection_form_with(k, Orientation::Standard)
}

/// The cup-product pairing on the torsion-free part of `H^{2m}(K; Z)` evaluated on the
/// chosen integral fundamental class.
pub fn intersection_form_with(
    k: &SimplicialComplex,
    orientation: Orientation,
) -> Result<IntersectionForm> {
    let n = k.dim();
    if !n.is_multiple_of(4) {
        return Err(Error::NotFourM(n));
    }
    let report = cohomology::is_poincare_f2(k);
    if let Some(d) = report.first_degenerate {
        return Err(Error::PairingSingular(d));
    }
    if cohomology::fundamental_class(k, Ring::Z).is_err() {
        return Err(Error::NonOrientable);
    }
    let m = n / 4;
    let basis = cohomology::z_free_basis(k, 2 * m);
    let sign = match orientation {
        Orientation::Standard => BigInt::from(1),
        Orientation::Reversed => BigInt::from(-1),
    };
    let mut gram = vec![vec![BigInt::zero(); basis.len()]; basis.len()];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let v = cohomology::pairing_z(k, &cohomology::cup_product(k, x, y)?)?;
            gram[i][j] = v * &sign;
        }
    }
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v != gram[j][i] {
                return Err(Error::Inconsistent(format!(
                    "intersection form not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    if QuadraticForm::from_big_integers(&gram).is_err() {
        return Err(Error::FormSingular);
    }
    Ok(IntersectionForm {
        m,
        basis,
        gram,
        orientation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub signature: i64,
    pub signature_mod8: u8,
}

fn signature_of(form: &IntersectionForm) -> Result<SignatureReport> {
    let q = form.quadratic_form();
    let signature = quadform::real_signature(&q);
    let signature_mod8 = signature.rem_euclid(8) as u8;
    let local = quadform::signature_mod8_from_local(&q);
    if local != signature_mod8 {
        return Err(Error::Inconsistent(format!(
            "signature {signature} is {signature_mod8} mod 8 but local invariants give {local}"
        )));
    }
    Ok(SignatureReport {
        signature,
        signature_mod8,
    })
}

/// Signature for the standard orientation, with its residue mod 8 recomputed from the
/// local invariants of the form and checked.
pub fn signature(k: &SimplicialComplex) -> Result<SignatureReport> {
    signature_of(&intersection_form(k)?)
}

fn even_of(k: &SimplicialComplex, form: &IntersectionForm, wu: &[CohomologyClass]) -> Result<bool> {
    let gram_even = form
        .gram
        .iter()
        .enumerate()
        .all(|(i, row)| (&row[i] % BigInt::from(2)).is_zero());
    let wu_zero = wu[2 * form.m].is_zero();
    if gram_even != wu_zero {
        return Err(Error::Inconsistent(format!(
            "form evenness {gram_even} disagrees with v_{} = 0 being {wu_zero} on {}-vertex complex",
            2 * form.m,
            k.vertices().len()
        )));
    }
    Ok(gram_even)
}

/// Evenness of the intersection form, decided from the Gram diagonal and cross-checked
/// against vanishing of the middle Wu class.
pub fn form_even(k: &SimplicialComplex) -> Result<bool> {
    let form = intersection_form(k)?;
    let wu = charclass::wu_classes(k)?;
    even_of(k, &form, &wu)
}

/// Rational equivalence of the two extracted forms, as-is and with the second negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormComparison {
    pub as_is: Equivalence,
    pub negated: Equivalence,
}

pub fn compare_forms(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<FormComparison> {
    let fa = intersection_form(a)?.quadratic_form();
    let fb = intersection_form(b)?.quadratic_form();
    Ok(FormComparison {
        as_is: quadform::rationally_equivalent(&fa, &fb),
        negated: quadform::rationally_equivalent(&fa, &fb.negated()),
    })
}

/// The per-complex invariant record.
///
/// Form data is present only in dimensions `4m` for orientable complexes; the de Rham
/// invariant only in dimensions `4k+1 ≥ 5`. `signature` is reported for the orientation
/// that makes it non-negative, so the panel does not depend on vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPanel {
    pub dim: usize,
    pub sw_numbers: SwNumbers,
    pub orientable: bool,
    pub k_orientable_max: usize,
    pub spin: bool,
    pub spin_c: bool,
    #[serde(with = "bit::option")]
    pub de_rham: Option<bool>,
    pub even_form: Option<bool>,
    pub signature_mod8: Option<u8>,
    pub signature: Option<i64>,
}

pub fn panel(k: &SimplicialComplex) -> Result<InvariantPanel> {
    let profile = charclass::profile(k)?;
    let obs = charclass::obstructions_from(k, &profile)?;
    let n = k.dim();
    let (even_form, signature_mod8, signature) = if n.is_multiple_of(4) && obs.orientable {
        let form = intersection_form(k)?;
        let sig = signature_of(&form)?;
        let even = even_of(k, &form, &profile.wu)?;
        let abs = sig.signature.abs();
        (Some(even), Some(abs.rem_euclid(8) as u8), Some(abs))
    } else {
        (None, None, None)
    };
    Ok(InvariantPanel {
        dim: n,
        sw_numbers: profile.sw_numbers,
        orientable: obs.orientable,
        k_orientable_max: obs.k_orientable_max,
        spin: obs.spin,
        spin_c: obs.spin_c,
        de_rham: obs.de_rham,
        even_form,
        signature_mod8,
        signature,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithProfiniteIsomorphism,
    Distinguished,
    DistinguishedByDimension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PanelComparison {
    pub verdict: Verdict,
    pub differing: Vec<String>,
}

fn sig_mod8_agrees(a: u8, b: u8) -> bool {
    a == b || (8 - a) % 8 == b
}

/// Compares two panels invariant by invariant. Signatures are compared modulo 8 and up to
/// sign, since orientations are only fixed up to reversal.
pub fn compare_panels(a: &InvariantPanel, b: &InvariantPanel) -> PanelComparison {
    if a.dim != b.dim {
        return PanelComparison {
            verdict: Verdict::DistinguishedByDimension,
            differing: vec!["dimension".into()],
        };
    }
    let mut differing = Vec::new();
    let mut check = |name: &str, same: bool| {
        if !same {
            differing.push(name.to_string());
        }
    };
    check("sw_numbers", a.sw_numbers == b.sw_numbers);
    check("orientable", a.orientable == b.orientable);
    check("spin", a.spin == b.spin);
    check("spin_c", a.spin_c == b.spin_c);
    check("de_rham", a.de_rham == b.de_rham);
    if let (Some(x), Some(y)) = (a.even_form, b.even_form) {
        check("even_form", x == y);
    }
    if let (Some(x), Some(y)) = (a.signature_mod8, b.signature_mod8) {
        check("signature_mod8", sig_mod8_agrees(x, y));
    }
    let verdict = if differing.is_empty() {
        Verdict::ConsistentWithProfiniteIsomorphism
    } else {
        Verdict::Distinguished
    };
    PanelComparison { verdict, differing }
}

/// Signature as a machine integer, for display.
pub fn signature_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s4_has_empty_form() {
        let k = fixtures::s4();
        let f = intersection_form(&k).unwrap();
        assert_eq!(f.rank(), 0);
        assert_eq!(signature(&k).unwrap().signature, 0);
        assert!(form_even(&k).unwrap());
    }

    #[test]
    fn wrong_dimension_and_orientability() {
        assert_eq!(
            intersection_form(&fixtures::torus()).unwrap_err(),
            Error::NotFourM(2)
        );
        let wedge = SimplicialComplex::new([vec![0, 1, 2, 3, 4], vec![4, 5, 6, 7, 8]]).unwrap();
        assert!(intersection_form(&wedge).is_err());
    }

    #[test]
    fn cp2_form() {
        let k = fixtures::cp2();
        let f = intersection_form(&k).unwrap();
        assert_eq!(f.rank(), 1);
        assert_eq!(f.gram[0][0].clone() * &f.gram[0][0], BigInt::from(1));
        let r = intersection_form_with(&k, Orientation::Reversed).unwrap();
        assert_eq!(r.gram[0][0], -f.gram[0][0].clone());
        assert!(!form_even(&k).unwrap());
    }

    #[test]
    fn comparison_of_surfaces() {
        let t = panel(&fixtures::torus()).unwrap();
        let kb = panel(&fixtures::klein_bottle()).unwrap();
        let c = compare_panels(&t, &kb);
        assert_eq!(c.verdict, Verdict::Distinguished);
        assert!(c.differing.contains(&"orientable".to_string()));
        assert!(c.differing.contains(&"spin".to_string()));
        assert!(!c.differing.contains(&"sw_numbers".to_string()));
        assert_eq!(
            compare_panels(&t, &t).verdict,
            Verdict::ConsistentWithProfiniteIsomorphism
        );
        let s4 = panel(&fixtures::s4()).unwrap();
        assert_eq!(
            compare_panels(&t, &s4).verdict,
            Verdict::DistinguishedByDimension
        );
    }

    #[test]
    fn signature_mod8_up_to_sign() {
        assert!(sig_mod8_agrees(1, 7));
        assert!(sig_mod8_agrees(0, 0));
        assert!(sig_mod8_agrees(4, 4));
        assert!(!sig_mod8_agrees(1, 0));
    }
}
