//! Reference triangulations and Gram matrices shipped with the crate.
//!
//! The same files live in `fixtures/` next to the manifest so the CLI can be pointed at them.

use crate::complex::SimplicialComplex;
use crate::quadform::QuadraticForm;

pub const RP2: &str = include_str!("../fixtures/rp2.cplx");
pub const TORUS: &str = include_str!("../fixtures/torus.cplx");
pub const KLEIN_BOTTLE: &str = include_str!("../fixtures/klein.cplx");
pub const S2: &str = include_str!("../fixtures/s2.cplx");
pub const S4: &str = include_str!("../fixtures/s4.cplx");
pub const CP2: &str = include_str!("../fixtures/cp2.cplx");
pub const S2_X_S2: &str = include_str!("../fixtures/s2xs2.cplx");

pub const E8_GRAM: &str = include_str!("../fixtures/e8.gram");
pub const I8_GRAM: &str = include_str!("../fixtures/i8.gram");
pub const I2_GRAM: &str = include_str!("../fixtures/i2.gram");
pub const DIAG_2_2_GRAM: &str = include_str!("../fixtures/diag22.gram");
pub const DIAG_1_M1_GRAM: &str = include_str!("../fixtures/diag1m1.gram");
pub const HYPERBOLIC_GRAM: &str = include_str!("../fixtures/hyperbolic.gram");

fn complex(text: &str) -> SimplicialComplex {
    SimplicialComplex::parse(text).expect("bundled fixture parses")
}

fn form(text: &str) -> QuadraticForm {
    QuadraticForm::parse(text).expect("bundled fixture parses")
}

/// Six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    complex(RP2)
}

/// Seven-vertex torus.
pub fn torus() -> SimplicialComplex {
    complex(TORUS)
}

/// Eight-vertex Klein bottle.
pub fn klein_bottle() -> SimplicialComplex {
    complex(KLEIN_BOTTLE)
}

pub fn s2() -> SimplicialComplex {
    complex(S2)
}

pub fn s4() -> SimplicialComplex {
    complex(S4)
}

/// Nine-vertex complex projective plane.
pub fn cp2() -> SimplicialComplex {
    complex(CP2)
}

/// Sixteen-vertex product triangulation of S^2 x S^2.
pub fn s2_x_s2() -> SimplicialComplex {
    complex(S2_X_S2)
}

pub fn e8() -> QuadraticForm {
    form(E8_GRAM)
}

pub fn identity(n: usize) -> QuadraticForm {
    QuadraticForm::from_integers(
        &(0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect::<Vec<_>>(),
    )
    .expect("identity is nonsingular")
}

pub fn hyperbolic_plane() -> QuadraticForm {
    form(HYPERBOLIC_GRAM)
}

/// All bundled closed-manifold triangulations with a short name.
pub fn manifolds() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("rp2", rp2()),
        ("torus", torus()),
        ("klein", klein_bottle()),
        ("s2", s2()),
        ("s4", s4()),
        ("cp2", cp2()),
        ("s2xs2", s2_x_s2()),
    ]
}
