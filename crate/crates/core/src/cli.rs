//! The `topinv` command-line front end.
//!
//! Every verb prints a human-readable report, or with `--json` a pretty-printed JSON object
//! with sorted keys. Exit status: 0 on success, 2 when a comparison verb finds the inputs
//! distinguished or inequivalent, 1 on any error.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::charclass::{self, Partition, SwNumbers};
use crate::cohomology::{self, CohomologyClass, Ring};
use crate::complex::{Label, SimplicialComplex};
use crate::panel::{self, InvariantPanel, Verdict};
use crate::quadform::{self, LocalInvariants, QuadraticForm};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "topinv",
    version,
    about = "Characteristic-class and quadratic-form invariants of triangulations"
)]
struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    F2,
    Z,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and torsion of a complex.
    Homology {
        file: String,
        #[arg(long, value_enum, default_value = "f2")]
        ring: RingArg,
    },
    /// Stiefel-Whitney classes and integral SW classes.
    Sw { file: String },
    /// Wu classes.
    Wu { file: String },
    /// Stiefel-Whitney numbers.
    SwNumbers { file: String },
    /// Orientability, spin, spin^C and de Rham obstructions.
    Obstructions { file: String },
    /// Unoriented cobordism test for two complexes.
    Cobordant { a: String, b: String },
    /// Intersection form of an orientable 4m-dimensional complex.
    Intersection { file: String },
    /// Local invariants of a Gram matrix.
    Qf { file: String },
    /// Rational equivalence of two Gram matrices.
    QfEquiv { a: String, b: String },
    /// The full invariant panel of a complex.
    Panel { file: String },
    /// Compare the invariant panels of two complexes.
    Compare { a: String, b: String },
}

enum Outcome {
    Same,
    Different,
}

struct Report {
    text: String,
    json: Value,
    outcome: Outcome,
}

impl Report {
    fn new(text: String, json: impl Serialize) -> Result<Self> {
        Ok(Report {
            text,
            json: to_value(json)?,
            outcome: Outcome::Same,
        })
    }

    fn with_outcome(mut self, same: bool) -> Self {
        self.outcome = if same {
            Outcome::Same
        } else {
            Outcome::Different
        };
        self
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Inconsistent(format!("json: {e}")))
}

/// Renders a JSON value in the canonical output layout.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Runs the tool on `args` (including the program name) and returns the exit code together
/// with everything that would be printed.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let out = if cli.json {
                render_json(&report.json)
            } else {
                report.text
            };
            let code = match report.outcome {
                Outcome::Same => 0,
                Outcome::Different => 2,
            };
            (code, out)
        }
        Err(e) => (1, format!("error: {e}\n")),
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_string(),
        msg: e.to_string(),
    })
}

fn load_complex(path: &str) -> Result<SimplicialComplex> {
    SimplicialComplex::parse(&read(path)?)
}

fn load_form(path: &str) -> Result<QuadraticForm> {
    QuadraticForm::parse(&read(path)?)
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Homology { file, ring } => homology(&load_complex(file)?, *ring),
        Command::Sw { file } => sw(&load_complex(file)?),
        Command::Wu { file } => wu(&load_complex(file)?),
        Command::SwNumbers { file } => sw_numbers(&load_complex(file)?),
        Command::Obstructions { file } => obstructions(&load_complex(file)?),
        Command::Cobordant { a, b } => cobordant(&load_complex(a)?, &load_complex(b)?),
        Command::Intersection { file } => intersection(&load_complex(file)?),
        Command::Qf { file } => qf(&load_form(file)?),
        Command::QfEquiv { a, b } => qf_equiv(&load_form(a)?, &load_form(b)?),
        Command::Panel { file } => panel_report(&load_complex(file)?),
        Command::Compare { a, b } => compare(load_complex(a)?, load_complex(b)?),
    }
}

fn big(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Inconsistent(format!("integer {v} exceeds the JSON range")))
}

#[derive(Serialize)]
struct GroupJson {
    degree: usize,
    betti: usize,
    torsion: Vec<i64>,
}

#[derive(Serialize)]
struct HomologyJson {
    ring: Ring,
    groups: Vec<GroupJson>,
}

fn homology(k: &SimplicialComplex, ring: RingArg) -> Result<Report> {
    let ring = match ring {
        RingArg::F2 => Ring::F2,
        RingArg::Z => Ring::Z,
    };
    let groups = cohomology::homology(k, ring);
    let mut text = format!("homology over {ring}, f-vector {:?}\n", k.f_vector());
    let mut json = Vec::new();
    for g in &groups {
        let mut line = format!("  H_{}: rank {}", g.degree, g.betti);
        if !g.torsion.is_empty() {
            let t: Vec<String> = g.torsion.iter().map(|d| format!("Z/{d}")).collect();
            let _ = write!(line, ", torsion {}", t.join(" + "));
        }
        text.push_str(&line);
        text.push('\n');
        json.push(GroupJson {
            degree: g.degree,
            betti: g.betti,
            torsion: g.torsion.iter().map(big).collect::<Result<_>>()?,
        });
    }
    Report::new(text, HomologyJson { ring, groups: json })
}

/// An F2 class: basis coordinates plus the simplices supporting its representative.
#[derive(Serialize)]
struct ClassJson {
    degree: usize,
    coords: Vec<u8>,
    support: Vec<Vec<Label>>,
}

fn class_json(k: &SimplicialComplex, c: &CohomologyClass) -> ClassJson {
    let coords = c.f2_coords().map(|v| v.to_bits()).unwrap_or_default();
    let support = c
        .cocycle()
        .support()
        .into_iter()
        .map(|s| k.simplex_labels(c.degree(), s))
        .collect();
    ClassJson {
        degree: c.degree(),
        coords,
        support,
    }
}

fn fmt_simplex(s: &[Label]) -> String {
    let v: Vec<String> = s.iter().map(Label::to_string).collect();
    format!("[{}]", v.join(","))
}

fn describe_class(name: &str, k: &SimplicialComplex, c: &CohomologyClass) -> String {
    let j = class_json(k, c);
    if c.is_zero() {
        return format!("  {name} = 0\n");
    }
    let coords: Vec<String> = j.coords.iter().map(u8::to_string).collect();
    const SHOW: usize = 12;
    let mut sup: Vec<String> = j
        .support
        .iter()
        .take(SHOW)
        .map(|s| fmt_simplex(s))
        .collect();
    if j.support.len() > SHOW {
        sup.push(format!("... ({} simplices)", j.support.len()));
    }
    format!(
        "  {name} = ({}) in the basis of H^{}\n      support: {}\n",
        coords.join(" "),
        c.degree(),
        sup.join(" ")
    )
}

fn total(name: &str, degrees: &[usize]) -> String {
    let terms: Vec<String> = degrees
        .iter()
        .map(|&d| {
            if d == 0 {
                "1".to_string()
            } else {
                format!("{name}_{d}")
            }
        })
        .collect();
    format!(
        "{name} = {}\n",
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    )
}

fn bits(v: &[bool]) -> Vec<u8> {
    v.iter().map(|&b| b as u8).collect()
}

#[derive(Serialize)]
struct SwJson {
    n: usize,
    sw: Vec<ClassJson>,
    integral_sw_nonzero: Vec<u8>,
}

fn sw(k: &SimplicialComplex) -> Result<Report> {
    let p = charclass::profile(k)?;
    let mut text = total("w", &p.total_sw());
    for c in &p.sw {
        text.push_str(&describe_class(&format!("w_{}", c.degree()), k, c));
    }
    for (i, nz) in p.integral_sw_nonzero.iter().enumerate() {
        if i >= 1 {
            let _ = writeln!(text, "  W_{} {}", i + 1, if *nz { "!= 0" } else { "= 0" });
        }
    }
    let json = SwJson {
        n: p.n,
        sw: p.sw.iter().map(|c| class_json(k, c)).collect(),
        integral_sw_nonzero: bits(&p.integral_sw_nonzero),
    };
    Report::new(text, json)
}

#[derive(Serialize)]
struct WuJson {
    n: usize,
    wu: Vec<ClassJson>,
}

fn wu(k: &SimplicialComplex) -> Result<Report> {
    let p = charclass::profile(k)?;
    let mut text = total("v", &p.total_wu());
    for c in &p.wu {
        text.push_str(&describe_class(&format!("v_{}", c.degree()), k, c));
    }
    let json = WuJson {
        n: p.n,
        wu: p.wu.iter().map(|c| class_json(k, c)).collect(),
    };
    Report::new(text, json)
}

fn fmt_partition(p: &[usize]) -> String {
    let v: Vec<String> = p.iter().map(usize::to_string).collect();
    format!("({})", v.join(","))
}

fn numbers_text(numbers: &SwNumbers) -> String {
    let mut text = String::new();
    for e in &numbers.0 {
        let _ = writeln!(
            text,
            "  w{} = {}",
            fmt_partition(&e.partition),
            e.value as u8
        );
    }
    text
}

#[derive(Serialize)]
struct SwNumbersJson {
    n: usize,
    sw_numbers: SwNumbers,
}

fn sw_numbers(k: &SimplicialComplex) -> Result<Report> {
    let numbers = charclass::sw_numbers(k)?;
    let text = format!(
        "Stiefel-Whitney numbers (n = {})\n{}",
        k.dim(),
        numbers_text(&numbers)
    );
    Report::new(
        text,
        SwNumbersJson {
            n: k.dim(),
            sw_numbers: numbers,
        },
    )
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn obstructions(k: &SimplicialComplex) -> Result<Report> {
    let o = charclass::obstructions(k)?;
    let mut text = String::new();
    let _ = writeln!(text, "orientable:       {}", yes(o.orientable));
    let _ = writeln!(text, "k-orientable up to k = {}", o.k_orientable_max);
    let _ = writeln!(text, "spin:             {}", yes(o.spin));
    let _ = writeln!(text, "spin^C:           {}", yes(o.spin_c));
    match o.de_rham {
        Some(d) => {
            let _ = writeln!(text, "de Rham:          {}", d as u8);
        }
        None => text.push_str("de Rham:          undefined in this dimension\n"),
    }
    let _ = writeln!(text, "null-cobordant:   {}", yes(o.null_cobordant));
    Report::new(text, &o)
}

#[derive(Serialize)]
struct CobordantJson {
    cobordant: bool,
    first_difference: Option<Partition>,
    differing: Vec<Partition>,
}

fn cobordant(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<Report> {
    let v = charclass::cobordant(a, b)?;
    let text = if v.cobordant {
        "cobordant\n".to_string()
    } else {
        let d: Vec<String> = v.differing.iter().map(|p| fmt_partition(p)).collect();
        format!("not cobordant: SW numbers differ at {}\n", d.join(", "))
    };
    let same = v.cobordant;
    let json = CobordantJson {
        cobordant: v.cobordant,
        first_difference: v.first_difference,
        differing: v.differing,
    };
    Ok(Report::new(text, json)?.with_outcome(same))
}

#[derive(Serialize)]
struct IntersectionJson {
    m: usize,
    rank: usize,
    gram: Vec<Vec<i64>>,
    signature: i64,
    signature_mod8: u8,
    even_form: bool,
}

fn intersection(k: &SimplicialComplex) -> Result<Report> {
    let form = panel::intersection_form(k)?;
    let sig = panel::signature(k)?;
    let even = panel::form_even(k)?;
    let gram: Vec<Vec<i64>> = form
        .gram
        .iter()
        .map(|row| row.iter().map(big).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut text = format!(
        "intersection form on H^{} (rank {})\n",
        2 * form.m,
        form.rank()
    );
    for row in &gram {
        let r: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        let _ = writeln!(text, "  {}", r.join(" "));
    }
    let _ = writeln!(
        text,
        "signature {} ({} mod 8)",
        sig.signature, sig.signature_mod8
    );
    let _ = writeln!(text, "form {}", if even { "even" } else { "odd" });
    let json = IntersectionJson {
        m: form.m,
        rank: form.rank(),
        gram,
        signature: sig.signature,
        signature_mod8: sig.signature_mod8,
        even_form: even,
    };
    Report::new(text, json)
}

#[derive(Serialize)]
struct QfJson {
    dim: usize,
    det: String,
    diagonal: Vec<String>,
    signature: i64,
    oddity: u8,
    local: Vec<LocalInvariants>,
    reciprocity_residual: u8,
}

fn qf(f: &QuadraticForm) -> Result<Report> {
    let mut primes = vec![2];
    primes.extend(quadform::relevant_primes(f).into_iter().filter(|&p| p != 2));
    let local: Vec<LocalInvariants> = primes
        .iter()
        .map(|&p| quadform::local_invariants(f, p))
        .collect::<Result<_>>()?;
    let diagonal: Vec<String> = f.diagonal().entries.iter().map(|d| d.to_string()).collect();
    let json = QfJson {
        dim: f.dim(),
        det: f.det().to_string(),
        diagonal,
        signature: quadform::real_signature(f),
        oddity: quadform::oddity(f),
        local,
        reciprocity_residual: quadform::reciprocity_residual(f),
    };
    let mut text = format!("dimension {}, determinant {}\n", json.dim, json.det);
    let _ = writeln!(text, "diagonal form <{}>", json.diagonal.join(", "));
    let _ = writeln!(text, "signature {}, oddity {}", json.signature, json.oddity);
    for l in &json.local {
        let _ = writeln!(
            text,
            "  p = {}: {}-signature {}, {}-excess {}, antisquares {}",
            l.p, l.p, l.p_signature, l.p, l.p_excess, l.antisquares
        );
    }
    let _ = writeln!(text, "reciprocity residual {}", json.reciprocity_residual);
    Report::new(text, json)
}

#[derive(Serialize)]
struct EquivJson {
    equivalent: bool,
    failing: Option<String>,
}

fn qf_equiv(f: &QuadraticForm, g: &QuadraticForm) -> Result<Report> {
    let e = quadform::rationally_equivalent(f, g);
    let text = match e.failing {
        None => "rationally equivalent\n".to_string(),
        Some(c) => format!("not rationally equivalent: {c} differs\n"),
    };
    let json = EquivJson {
        equivalent: e.equivalent,
        failing: e.failing.map(|c| c.to_string()),
    };
    Ok(Report::new(text, json)?.with_outcome(e.equivalent))
}

fn panel_text(p: &InvariantPanel) -> String {
    let mut text = format!("dimension {}\n", p.dim);
    text.push_str("SW numbers:\n");
    text.push_str(&numbers_text(&p.sw_numbers));
    let _ = writeln!(
        text,
        "orientable {}, k-orientable up to k = {}",
        yes(p.orientable),
        p.k_orientable_max
    );
    let _ = writeln!(text, "spin {}, spin^C {}", yes(p.spin), yes(p.spin_c));
    if let Some(d) = p.de_rham {
        let _ = writeln!(text, "de Rham invariant {}", d as u8);
    }
    if let (Some(e), Some(s), Some(m)) = (p.even_form, p.signature, p.signature_mod8) {
        let _ = writeln!(
            text,
            "intersection form {}, |signature| {s} ({m} mod 8)",
            if e { "even" } else { "odd" }
        );
    }
    text
}

fn panel_report(k: &SimplicialComplex) -> Result<Report> {
    let p = panel::panel(k)?;
    Report::new(panel_text(&p), &p)
}

fn compare(a: SimplicialComplex, b: SimplicialComplex) -> Result<Report> {
    let (pa, pb) = std::thread::scope(|s| {
        let ha = s.spawn(|| panel::panel(&a));
        let pb = panel::panel(&b);
        (ha.join().expect("panel thread panicked"), pb)
    });
    let (pa, pb) = (pa?, pb?);
    let c = panel::compare_panels(&pa, &pb);
    let text = match c.verdict {
        Verdict::ConsistentWithProfiniteIsomorphism => {
            "consistent with isomorphic profinite completions (no invariant separates them)\n"
                .to_string()
        }
        Verdict::Distinguished => format!("distinguished by: {}\n", c.differing.join(", ")),
        Verdict::DistinguishedByDimension => {
            format!("distinguished by dimension ({} vs {})\n", pa.dim, pb.dim)
        }
    };
    let same = c.verdict == Verdict::ConsistentWithProfiniteIsomorphism;
    Ok(Report::new(text, &c)?.with_outcome(same))
}
