//! Exact local invariants of nonsingular rational quadratic forms.
//!
//! A form is diagonalized over Q by symmetric Gaussian congruence. Each diagonal entry is
//! split at a prime `p` as `p^a · b` with `b` a p-adic unit; from these pieces come the
//! p-signature (`4m + Σ p^{a_i}` for odd `p`, `4m + Σ b_i` at 2, where `m` counts
//! antisquares), the p-excess and the oddity, all modulo 8. These satisfy
//!
//! ```text
//! signature + Σ_{p odd} p-excess ≡ oddity (mod 8)
//! ```
//!
//! and, together with the square class of the determinant, decide rational equivalence.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A nonsingular symmetric Gram matrix over Q.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    gram: Vec<Vec<BigRational>>,
    det: BigRational,
    diagonal: OnceLock<RationalDiagonal>,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for QuadraticForm {}

/// Diagonal entries of a form rationally congruent to the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDiagonal {
    pub entries: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for j in c..n {
                let d = &f * &a[c][j];
                a[r][j] -= d;
            }
        }
    }
    det
}

impl QuadraticForm {
    pub fn new(gram: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Parse {
                line: 0,
                msg: "gram matrix is not square".into(),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let det = determinant(&gram);
        if det.is_zero() {
            return Err(Error::SingularForm);
        }
        Ok(QuadraticForm {
            gram,
            det,
            diagonal: OnceLock::new(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn from_big_integers(rows: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn diag(entries: &[BigRational]) -> Result<Self> {
        let n = entries.len();
        Self::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                entries[i].clone()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Parses the Gram format: a `dim d` line followed by `d` rows of `d` rationals
    /// (`p/q` or integers). `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim_end_matches('\r').trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let Some(d) = dim else {
                let mut it = content.split_whitespace();
                let parsed = match (it.next(), it.next(), it.next()) {
                    (Some("dim"), Some(d), None) => d.parse::<usize>().ok(),
                    _ => None,
                };
                dim = Some(parsed.ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("expected \"dim d\", found {content:?}"),
                })?);
                continue;
            };
            if rows.len() == d {
                return Err(Error::Parse {
                    line,
                    msg: "too many rows".into(),
                });
            }
            let row = content
                .split_whitespace()
                .map(|tok| {
                    BigRational::from_str(tok).map_err(|_| Error::Parse {
                        line,
                        msg: format!("malformed rational {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != d {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {d} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        let d = dim.ok_or(Error::Parse {
            line: 0,
            msg: "missing \"dim d\" line".into(),
        })?;
        if rows.len() != d {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {d} rows, found {}", rows.len()),
            });
        }
        Self::new(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim());
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn det(&self) -> &BigRational {
        &self.det
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(BigRational::is_integer)
    }

    pub fn negated(&self) -> QuadraticForm {
        QuadraticForm::new(
            self.gram
                .iter()
                .map(|r| r.iter().map(|x| -x.clone()).collect())
                .collect(),
        )
        .expect("negation keeps the form nonsingular")
    }

    /// `Uᵀ F U` for a square integer matrix `U`.
    pub fn congruent(&self, u: &[Vec<i64>]) -> Result<QuadraticForm> {
        let n = self.dim();
        assert!(
            u.len() == n && u.iter().all(|r| r.len() == n),
            "U must be {n}x{n}"
        );
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for a in 0..n {
                    if u[a][i] == 0 {
                        continue;
                    }
                    for b in 0..n {
                        if u[b][j] != 0 && !self.gram[a][b].is_zero() {
                            acc += &self.gram[a][b] * rat(u[a][i] * u[b][j]);
                        }
                    }
                }
                *cell = acc;
            }
        }
        QuadraticForm::new(out)
    }

    /// The cached rational diagonalization.
    pub fn diagonal(&self) -> &RationalDiagonal {
        self.diagonal.get_or_init(|| diagonalize(&self.gram))
    }
}

/// Symmetric Gaussian congruence. Pivots on the first nonzero diagonal entry of the
/// remaining block; if that block has zero diagonal, `x_i ↦ x_i + x_j` for a nonzero
/// off-diagonal `a_ij` first makes `a_ii = 2 a_ij ≠ 0`.
fn diagonalize(gram: &[Vec<BigRational>]) -> RationalDiagonal {
    let n = gram.len();
    let mut a = gram.to_vec();
    let mut entries = Vec::with_capacity(n);
    for t in 0..n {
        let pivot = match (t..n).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let (i, j) = (t..n)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                    .expect("nonsingular form has a nonzero entry in every trailing block");
                // row_i += row_j, col_i += col_j
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        a.swap(t, pivot);
        for row in a.iter_mut() {
            row.swap(t, pivot);
        }
        let piv = a[t][t].clone();
        for r in t + 1..n {
            if a[r][t].is_zero() {
                continue;
            }
            let f = &a[r][t] / &piv;
            for c in t..n {
                let d = &f * &a[t][c];
                a[r][c] -= d;
            }
            for rr in t..n {
                let d = &f * &a[rr][t];
                a[rr][r] -= d;
            }
        }
        entries.push(piv);
    }
    RationalDiagonal { entries }
}

pub fn rational_diagonalize(f: &QuadraticForm) -> RationalDiagonal {
    f.diagonal().clone()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn valuation(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut a = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return a;
        }
        *n = q;
        a += 1;
    }
}

/// `r = p^a · b` with `b` prime to `p`.
pub fn p_split(r: &BigRational, p: u64) -> Result<(i64, BigRational)> {
    check_prime(p)?;
    if r.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let pb = BigInt::from(p);
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let a = valuation(&mut num, &pb) - valuation(&mut den, &pb);
    Ok((a, BigRational::new(num, den)))
}

/// Legendre symbol `(a/p)` for an odd prime `p` via Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = r.modpow(&BigInt::from((p - 1) / 2), &pb);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Residue mod 8 of a 2-adic unit given as a rational with odd numerator and denominator.
fn unit_mod8(b: &BigRational) -> u8 {
    let eight = BigInt::from(8);
    // odd d satisfies d² ≡ 1 (mod 8), so d⁻¹ ≡ d
    (b.numer() * b.denom()).mod_floor(&eight).to_u8().unwrap()
}

fn is_residue_unit(b: &BigRational, p: u64) -> bool {
    legendre(&(b.numer() * b.denom()), p) == 1
}

/// Antisquare test: `p^{odd} · u` with `u ≡ ±3 (mod 8)` at 2, or `u` a non-residue at odd `p`.
pub fn is_antisquare(r: &BigRational, p: u64) -> Result<bool> {
    let (a, b) = p_split(r, p)?;
    if a.rem_euclid(2) == 0 {
        return Ok(false);
    }
    Ok(if p == 2 {
        matches!(unit_mod8(&b), 3 | 5)
    } else {
        !is_residue_unit(&b, p)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub p: u64,
    pub p_signature: u8,
    pub p_excess: u8,
    pub antisquares: usize,
}

fn mod8(v: i64) -> u8 {
    v.rem_euclid(8) as u8
}

pub fn local_invariants(f: &QuadraticForm, p: u64) -> Result<LocalInvariants> {
    check_prime(p)?;
    let mut antisquares = 0usize;
    let mut sum: i64 = 0;
    for d in &f.diagonal().entries {
        let (a, b) = p_split(d, p)?;
        if is_antisquare(d, p)? {
            antisquares += 1;
        }
        sum += if p == 2 {
            unit_mod8(&b) as i64
        } else if a.rem_euclid(2) == 0 {
            1
        } else {
            (p % 8) as i64
        };
    }
    let p_signature = mod8(4 * antisquares as i64 + sum);
    let dim = f.dim() as i64;
    let p_excess = if p == 2 {
        mod8(dim - p_signature as i64)
    } else {
        mod8(p_signature as i64 - dim)
    };
    Ok(LocalInvariants {
        p,
        p_signature,
        p_excess,
        antisquares,
    })
}

pub fn oddity(f: &QuadraticForm) -> u8 {
    local_invariants(f, 2).expect("2 is prime").p_signature
}

/// Sylvester signature: positive minus negative diagonal entries.
pub fn real_signature(f: &QuadraticForm) -> i64 {
    f.diagonal()
        .entries
        .iter()
        .map(|d| if d.is_positive() { 1 } else { -1 })
        .sum()
}

fn odd_prime_factors(n: &BigInt, out: &mut Vec<u64>) {
    let mut n = n.abs();
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let db = BigInt::from(d);
        if (&n % &db).is_zero() {
            if d != 2 {
                out.push(d);
            }
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let last = n
            .to_u64()
            .expect("prime factor beyond u64 after trial division");
        if last != 2 {
            out.push(last);
        }
    }
}

/// Odd primes dividing a numerator or denominator of some diagonal entry. At every other
/// odd prime all entries are units, no entry is an antisquare and the excess vanishes.
pub fn relevant_primes(f: &QuadraticForm) -> Vec<u64> {
    let mut out = Vec::new();
    for d in &f.diagonal().entries {
        odd_prime_factors(d.numer(), &mut out);
        odd_prime_factors(d.denom(), &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn excess_sum(f: &QuadraticForm) -> i64 {
    relevant_primes(f)
        .into_iter()
        .map(|p| local_invariants(f, p).expect("prime").p_excess as i64)
        .sum()
}

/// `signature + Σ_{p odd} p-excess − oddity (mod 8)`; zero for every nonsingular form.
pub fn reciprocity_residual(f: &QuadraticForm) -> u8 {
    mod8(real_signature(f) + excess_sum(f) - oddity(f) as i64)
}

/// The signature modulo 8 recovered from local data alone: `oddity − Σ_{p odd} p-excess`.
pub fn signature_mod8_from_local(f: &QuadraticForm) -> u8 {
    mod8(oddity(f) as i64 - excess_sum(f))
}

pub fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Dimension,
    Signature,
    Determinant,
    Oddity,
    PExcess(u64),
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Dimension => f.write_str("dimension"),
            Criterion::Signature => f.write_str("signature"),
            Criterion::Determinant => f.write_str("determinant"),
            Criterion::Oddity => f.write_str("oddity"),
            Criterion::PExcess(p) => write!(f, "{p}-excess"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub failing: Option<Criterion>,
}

/// Rational equivalence by the Hasse–Minkowski criteria: equal dimension and signature,
/// determinant ratio a rational square, equal oddity and equal p-excess at every odd prime.
pub fn rationally_equivalent(f: &QuadraticForm, g: &QuadraticForm) -> Equivalence {
    let fail = |c| Equivalence {
        equivalent: false,
        failing: Some(c),
    };
    if f.dim() != g.dim() {
        return fail(Criterion::Dimension);
    }
    if real_signature(f) != real_signature(g) {
        return fail(Criterion::Signature);
    }
    if !is_rational_square(&(f.det() / g.det())) {
        return fail(Criterion::Determinant);
    }
    if oddity(f) != oddity(g) {
        return fail(Criterion::Oddity);
    }
    let mut primes = relevant_primes(f);
    primes.extend(relevant_primes(g));
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let ef = local_invariants(f, p).expect("prime").p_excess;
        let eg = local_invariants(g, p).expect("prime").p_excess;
        if ef != eg {
            return fail(Criterion::PExcess(p));
        }
    }
    Equivalence {
        equivalent: true,
        failing: None,
    }
}

/// Whether the integral form is even: every `xᵀ F x` is even, i.e. every diagonal entry is.
pub fn is_even(f: &QuadraticForm) -> Result<bool> {
    if !f.is_integral() {
        return Err(Error::NonIntegral);
    }
    let two = BigInt::from(2);
    Ok((0..f.dim()).all(|i| f.gram[i][i].numer().is_multiple_of(&two)))
}
