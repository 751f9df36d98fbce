//! Acceptance suite: one line per criterion, each with its own time budget.
//!
//! Run with `cargo test --test acceptance`.

#![allow(clippy::needless_range_loop)]

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topo_invariants::charclass;
use topo_invariants::cohomology::{self, CohomologyClass};
use topo_invariants::complex::SimplicialComplex;
use topo_invariants::panel::{self, Verdict};
use topo_invariants::quadform::{self, Criterion, QuadraticForm};
use topo_invariants::{fixtures, steenrod};

/// On success, an optional note for the report line.
type Check = std::result::Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn binom_mod2(n: usize, k: usize) -> bool {
    k <= n && (k & !n) == 0
}

fn sq(k: &SimplicialComplex, i: usize, x: &CohomologyClass) -> CohomologyClass {
    steenrod::sq(k, i, x).unwrap()
}

/// Checks Sq^0 = id, squaring, vanishing, Cartan and Adem on basis classes; returns the
/// number of identities checked and the number violated.
fn steenrod_violations(k: &SimplicialComplex) -> (usize, usize) {
    let n = k.dim();
    let mut bad = 0;
    let mut checked = 0;
    let bases: Vec<Vec<CohomologyClass>> = (0..=n).map(|d| cohomology::f2_basis(k, d)).collect();
    for p in 0..=n {
        for x in &bases[p] {
            checked += 2 + n - p;
            bad += !sq(k, 0, x).same_class(x) as usize;
            bad += !sq(k, p, x).same_class(&cup(k, x, x)) as usize;
            bad += (p + 1..=n).filter(|&i| !sq(k, i, x).is_zero()).count();
            for b in 1..=n {
                for a in 1..2 * b {
                    if p + a + b > n {
                        continue;
                    }
                    let terms: Vec<_> = (0..=a / 2)
                        .filter(|&j| binom_mod2(b - 1 - j, a - 2 * j))
                        .map(|j| sq(k, a + b - j, &sq(k, j, x)))
                        .collect();
                    checked += 1;
                    bad += !sq(k, a, &sq(k, b, x)).same_class(&sum(k, p + a + b, &terms)) as usize;
                }
            }
            for q in 0..=n - p {
                for y in &bases[q] {
                    let xy = cup(k, x, y);
                    for s in 0..=n - p - q {
                        let terms: Vec<_> = (0..=s)
                            .map(|i| cup(k, &sq(k, i, x), &sq(k, s - i, y)))
                            .collect();
                        checked += 1;
                        bad += !sq(k, s, &xy).same_class(&sum(k, p + q + s, &terms)) as usize;
                    }
                }
            }
        }
    }
    (checked, bad)
}

fn criterion_1() -> Check {
    let mut complexes = vec![
        fixtures::rp2(),
        fixtures::torus(),
        fixtures::klein_bottle(),
        fixtures::s2(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    complexes.extend((0..20).map(|_| random_complex(&mut rng, 8, 4)));
    let (checked, bad) = complexes
        .iter()
        .map(steenrod_violations)
        .fold((0, 0), |(c, b), (c1, b1)| (c + c1, b + b1));
    let dims: Vec<usize> = complexes[4..].iter().map(SimplicialComplex::dim).collect();
    ensure(checked > 0, "nothing checked")?;
    ensure(bad == 0, format!("{bad} of {checked} identities violated"))?;
    Ok(format!(
        "{checked} identities, random complex dimensions {dims:?}"
    ))
}

fn criterion_2() -> Check {
    let k = fixtures::rp2();
    let p = charclass::profile(&k).map_err(|e| e.to_string())?;
    let a = &cohomology::f2_basis(&k, 1)[0];
    ensure(p.sw[1].same_class(a), "w_1 = a")?;
    ensure(
        p.sw[2].same_class(&cup(&k, a, a)) && !p.sw[2].is_zero(),
        "w_2 = a^2",
    )?;
    ensure(p.sw_numbers.get(&[2]) == Some(true), "w_2[RP2] = 1")?;
    ensure(p.sw_numbers.get(&[1, 1]) == Some(true), "w_1^2[RP2] = 1")?;
    let o = charclass::obstructions_from(&k, &p).map_err(|e| e.to_string())?;
    ensure(!o.orientable, "non-orientable")?;
    ensure(!o.null_cobordant, "not null-cobordant")?;
    ensure(p.integral_sw_nonzero[1], "W_2 != 0")?;
    Ok(String::new())
}

fn criterion_3() -> Check {
    let (t, kb) = (fixtures::torus(), fixtures::klein_bottle());
    let c = charclass::cobordant(&t, &kb).map_err(|e| e.to_string())?;
    ensure(c.cobordant, "T2 and Klein bottle cobordant")?;
    let ot = charclass::obstructions(&t).map_err(|e| e.to_string())?;
    let ok = charclass::obstructions(&kb).map_err(|e| e.to_string())?;
    ensure(ot.spin, "T2 spin")?;
    ensure(!ok.spin, "Klein bottle not spin")?;
    ensure(!ok.orientable, "Klein bottle non-orientable")?;
    Ok(String::new())
}

fn criterion_4() -> Check {
    let k = fixtures::cp2();
    let form = panel::intersection_form(&k).map_err(|e| e.to_string())?;
    let sig = panel::signature(&k).map_err(|e| e.to_string())?;
    ensure(
        sig.signature.abs() == 1,
        format!("signature {}", sig.signature),
    )?;
    ensure(
        quadform::is_even(&form.quadratic_form()) == Ok(false),
        "Gram test says odd",
    )?;
    let wu = charclass::wu_classes(&k).map_err(|e| e.to_string())?;
    ensure(!wu[2].is_zero(), "v_2 != 0")?;
    ensure(panel::form_even(&k) == Ok(false), "form_even = false")?;
    let o = charclass::obstructions(&k).map_err(|e| e.to_string())?;
    ensure(!o.spin, "not spin")?;
    ensure(o.spin_c, "spin^C")?;
    Ok(String::new())
}

fn criterion_5() -> Check {
    let k = fixtures::s2_x_s2();
    let sig = panel::signature(&k).map_err(|e| e.to_string())?;
    ensure(sig.signature == 0, format!("signature {}", sig.signature))?;
    ensure(panel::form_even(&k) == Ok(true), "form even")?;
    let wu = charclass::wu_classes(&k).map_err(|e| e.to_string())?;
    ensure(wu[2].is_zero(), "v_2 = 0")?;
    let o = charclass::obstructions(&k).map_err(|e| e.to_string())?;
    ensure(o.spin, "spin")?;
    Ok(String::new())
}

fn random_suite() -> Vec<QuadraticForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    (0..250)
        .map(|_| random_diagonal_form(&mut rng, 6))
        .collect()
}

fn criterion_6() -> Check {
    let forms = random_suite();
    let bad = forms
        .iter()
        .filter(|f| quadform::reciprocity_residual(f) != 0)
        .count();
    ensure(
        bad == 0,
        format!("{bad} of {} forms violate reciprocity", forms.len()),
    )?;
    Ok(String::new())
}

fn criterion_7() -> Check {
    let mut forms = random_suite();
    forms.push(fixtures::e8());
    forms.extend((1..=8).map(fixtures::identity));
    forms.push(fixtures::hyperbolic_plane());
    let bad = forms
        .iter()
        .filter(|f| {
            quadform::signature_mod8_from_local(f) as i64
                != quadform::real_signature(f).rem_euclid(8)
        })
        .count();
    ensure(bad == 0, format!("{bad} disagreements"))?;
    Ok(String::new())
}

fn criterion_8() -> Check {
    let i2 = fixtures::identity(2);
    let d22 = QuadraticForm::from_integers(&[vec![2, 0], vec![0, 2]]).unwrap();
    let d1m1 = QuadraticForm::from_integers(&[vec![1, 0], vec![0, -1]]).unwrap();
    ensure(
        quadform::rationally_equivalent(&i2, &d22).equivalent,
        "I2 ~ diag(2,2)",
    )?;
    let e = quadform::rationally_equivalent(&i2, &d1m1);
    ensure(
        !e.equivalent && e.failing == Some(Criterion::Signature),
        "I2 vs diag(1,-1) fails at signature",
    )?;
    ensure(
        quadform::rationally_equivalent(&fixtures::e8(), &fixtures::identity(8)).equivalent,
        "E8 ~ I8",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..100 {
        let n = 1 + trial % 5;
        let f = random_integral_form(&mut rng, n);
        let g = f.congruent(&random_unimodular(&mut rng, n)).unwrap();
        let same = quadform::real_signature(&f) == quadform::real_signature(&g)
            && quadform::oddity(&f) == quadform::oddity(&g)
            && f.det() == g.det()
            && [2u64, 3, 5, 7, 11, 13].iter().all(|&p| {
                let (a, b) = (
                    quadform::local_invariants(&f, p).unwrap(),
                    quadform::local_invariants(&g, p).unwrap(),
                );
                a.p_signature == b.p_signature && a.p_excess == b.p_excess
            });
        ensure(
            same,
            format!("congruence {trial} changed a local invariant"),
        )?;
    }
    Ok(String::new())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, k) in fixtures::manifolds() {
        let r = relabeled(&k, &mut rng);
        let a = panel::panel(&k).map_err(|e| format!("{name}: {e}"))?;
        let b = panel::panel(&r).map_err(|e| format!("{name}: {e}"))?;
        ensure(a == b, format!("{name}: panel changed under relabeling"))?;
    }
    Ok(String::new())
}

fn criterion_10() -> Check {
    let panels: Vec<_> = fixtures::manifolds()
        .into_iter()
        .map(|(name, k)| (name, panel::panel(&k).unwrap()))
        .collect();
    for (name, p) in &panels {
        let c = panel::compare_panels(p, p);
        ensure(
            c.verdict == Verdict::ConsistentWithProfiniteIsomorphism,
            format!("{name} vs itself"),
        )?;
    }
    let surface = &panels.iter().find(|(n, _)| *n == "torus").unwrap().1;
    let four = &panels.iter().find(|(n, _)| *n == "cp2").unwrap().1;
    let c = panel::compare_panels(surface, four);
    ensure(
        c.verdict == Verdict::DistinguishedByDimension,
        "dimension mismatch verdict",
    )?;
    Ok(String::new())
}

fn main() -> ExitCode {
    type Entry = (&'static str, u64, fn() -> Check);
    let criteria: [Entry; 10] = [
        (
            "Steenrod axioms (Cartan, squaring, vanishing, Adem)",
            60,
            criterion_1,
        ),
        (
            "RP2 classes, SW numbers, orientability, W_2",
            1,
            criterion_2,
        ),
        (
            "T2 vs Klein bottle: cobordant, spin differs",
            1,
            criterion_3,
        ),
        (
            "CP2: |signature| 1, odd form by Gram and v_2, spin^C",
            10,
            criterion_4,
        ),
        (
            "S2xS2: signature 0, even form, v_2 = 0, spin",
            30,
            criterion_5,
        ),
        ("reciprocity on random diagonal forms", 5, criterion_6),
        ("signature mod 8 from local invariants", 5, criterion_7),
        (
            "Hasse-Minkowski fixtures and congruence invariance",
            10,
            criterion_8,
        ),
        ("relabeling invariance of the panel", 30, criterion_9),
        (
            "comparator: self-consistency and dimension mismatch",
            5,
            criterion_10,
        ),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let status = match (&result, within) {
            (Ok(_), true) => "PASS".to_string(),
            (Ok(_), false) => format!("FAIL (over the {limit} s limit)"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        let note = match &result {
            Ok(n) if !n.is_empty() => format!(": {n}"),
            _ => String::new(),
        };
        if !(result.is_ok() && within) {
            failures += 1;
        }
        println!(
            "criterion {:>2}: {status:<6} {name}{note} [{:.3} s, limit {limit} s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
