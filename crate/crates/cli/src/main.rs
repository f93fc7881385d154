//! qsdesign: feasibility of quasi-symmetric 2-designs from the spectrum and
//! invariants of their block graphs.
//!
//! Exit status: 0 feasible / passed, 1 infeasible / rejected / not strongly
//! regular, 2 usage or input error. Data goes to stdout, diagnostics to
//! stderr.

mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use qsdesign::arith::{parse_int, parse_rational, Rational};
use qsdesign::designs::{
    check_symplectic, chowla_ryser, cotriangular_clauses, derive_params, enum_cotriangular,
    enum_multipartite, enum_steiner, family_feasibility, feasibility, main_test,
    multipartite_clauses, schutzenberger, steiner_clauses, symmetric_test,
    symplectic_binary_clauses, symplectic_search, table1, CheckResult, Condition, DesignParams,
    MultipartiteBounds, Table1Limits, Verdict, Witness,
};
use qsdesign::hilbert::{
    hilbert_symbol, legendre_eq_solvable, real_symbol, relevant_primes, Solvability,
};
use qsdesign::srg::{
    family_invariants, family_spectral, graph_invariants_direct, read_graph, srg_recognize,
    GraphFamily, GraphFormat, SpectralParams, Spectrum,
};
use qsdesign::Error;

use render::{render_report, render_rows, Format, Report};

#[derive(Parser)]
#[command(
    name = "qsdesign",
    version,
    about = "Necessary conditions for quasi-symmetric 2-designs"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "QSDESIGN_FORMAT",
        default_value = "table"
    )]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable test for a block graph and defect.
    Check(SpectrumArgs),
    /// Derive the complementary parameter pair for a block graph and defect.
    Derive(SpectrumArgs),
    /// Enumerate feasible parameters of a family.
    #[command(subcommand)]
    Sieve(Sieve),
    /// Feasible multi-Steiner parameters with defect at least 2.
    Table1(TableArgs),
    /// Test a symmetric 2-(v, k, lambda) design, or (v, lambda, nu).
    Symmetric(SymmetricArgs),
    /// Recognise a strongly regular graph file and print its invariants.
    Graph(GraphArgs),
    /// Hilbert symbols (a, b)_p and solvability of a x^2 + b y^2 = z^2.
    Hilbert(HilbertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Multipartite,
    Cotriangular,
    Symplectic,
    Steiner,
    Triangular,
    Conference,
}

fn big(s: &str) -> Result<BigInt, String> {
    parse_int(s).map_err(|e| e.to_string())
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct SpectrumArgs {
    /// Named block graph family; otherwise give --rho --sigma --f --g.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long, value_parser = big, allow_hyphen_values = true)]
    rho: Option<BigInt>,
    #[arg(long, value_parser = big, allow_hyphen_values = true)]
    sigma: Option<BigInt>,
    #[arg(long, value_parser = big, allow_hyphen_values = true)]
    f: Option<BigInt>,
    #[arg(long, value_parser = big, allow_hyphen_values = true)]
    g: Option<BigInt>,
    #[arg(long, value_parser = big)]
    m: Option<BigInt>,
    #[arg(long, value_parser = big)]
    n: Option<BigInt>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, value_parser = big)]
    q: Option<BigInt>,
    /// Defect lambda2 - lambda1.
    #[arg(long, value_parser = big, allow_hyphen_values = true)]
    mu: BigInt,
}

#[derive(Subcommand)]
enum Sieve {
    /// Strongly resolvable designs, block graph K_{m x n}, by quadruple.
    Multipartite {
        #[arg(long, default_value_t = 4)]
        max_alpha: u64,
        #[arg(long, default_value_t = 12)]
        max_l_sum: u64,
        #[arg(long, default_value_t = 2)]
        max_t: u64,
    },
    /// Block graph T_n* for one defect.
    Cotriangular {
        #[arg(long, value_parser = big)]
        mu: BigInt,
        /// Row cap; the defect-1 family is infinite.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Block graph S_n(m) for one (n, mu).
    Steiner {
        #[arg(long, value_parser = big)]
        n: BigInt,
        #[arg(long, value_parser = big)]
        mu: BigInt,
        #[arg(long, value_parser = big)]
        max_m: Option<BigInt>,
    },
    /// Block graph Sp(2d, q), q > 2, over a window of (q, d).
    Symplectic {
        #[arg(long, default_value_t = 50)]
        max_q: u64,
        #[arg(long, default_value_t = 2)]
        min_d: u32,
        #[arg(long, default_value_t = 6)]
        max_d: u32,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 6)]
    max_n: u64,
    #[arg(long, default_value_t = 4)]
    max_mu: u64,
    #[arg(long, value_parser = big)]
    max_v: Option<BigInt>,
}

#[derive(Args)]
struct SymmetricArgs {
    #[arg(long, value_parser = big)]
    v: BigInt,
    #[arg(long, value_parser = big)]
    k: Option<BigInt>,
    #[arg(long, value_parser = big)]
    lambda: BigInt,
    /// Order k - lambda, instead of --k.
    #[arg(long, value_parser = big)]
    nu: Option<BigInt>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    Matrix,
    Graph6,
}

#[derive(Args)]
struct GraphArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value = "matrix")]
    input: InputFormat,
}

#[derive(Args)]
struct HilbertArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    b: Rational,
    /// A single prime; all relevant places when omitted.
    #[arg(long, value_parser = big)]
    p: Option<BigInt>,
}

enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    text: String,
    ok: bool,
}

fn query(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn need(name: &str, value: &Option<BigInt>) -> Result<BigInt, Failure> {
    value
        .clone()
        .ok_or_else(|| Failure::Usage(format!("--{name} is required for this family")))
}

enum Target {
    Raw(SpectralParams),
    Family(GraphFamily),
}

fn target(a: &SpectrumArgs) -> Result<(Target, BTreeMap<String, String>), Failure> {
    let raw = [&a.rho, &a.sigma, &a.f, &a.g];
    let Some(kind) = a.family else {
        if raw.iter().any(|x| x.is_none()) {
            return Err(Failure::Usage(
                "give --family or all of --rho --sigma --f --g".into(),
            ));
        }
        let [rho, sigma, f, g] = raw.map(|x| x.clone().unwrap_or_default());
        let q = query(&[
            ("rho", rho.to_string()),
            ("sigma", sigma.to_string()),
            ("f", f.to_string()),
            ("g", g.to_string()),
            ("mu", a.mu.to_string()),
        ]);
        return Ok((Target::Raw(SpectralParams::new(rho, sigma, f, g)?), q));
    };
    if raw.iter().any(|x| x.is_some()) {
        return Err(Failure::Usage(
            "--family cannot be combined with --rho --sigma --f --g".into(),
        ));
    }
    let fam = match kind {
        FamilyKind::Multipartite => GraphFamily::Multipartite {
            m: need("m", &a.m)?,
            n: need("n", &a.n)?,
        },
        FamilyKind::Cotriangular => GraphFamily::CoTriangular {
            n: need("n", &a.n)?,
        },
        FamilyKind::Symplectic => GraphFamily::Symplectic {
            d: a.d
                .ok_or_else(|| Failure::Usage("--d is required for this family".into()))?,
            q: a.q.clone().unwrap_or_else(|| BigInt::from(2)),
        },
        FamilyKind::Steiner => GraphFamily::Steiner {
            n: need("n", &a.n)?,
            m: need("m", &a.m)?,
        },
        FamilyKind::Triangular => GraphFamily::Triangular {
            m: need("m", &a.m)?,
        },
        FamilyKind::Conference => GraphFamily::Conference {
            q: need("q", &a.q)?,
        },
    };
    fam.validate()?;
    let q = query(&[("graph", fam.to_string()), ("mu", a.mu.to_string())]);
    Ok((Target::Family(fam), q))
}

fn conference_note(fam: &GraphFamily) {
    if matches!(fam, GraphFamily::Conference { .. }) {
        eprintln!(
            "note: conference graphs never occur as block graphs of quasi-symmetric 2-designs"
        );
    }
}

// Family clauses specialising the p-adic test.
fn family_clauses(fam: &GraphFamily, mu: &BigInt) -> Result<Vec<Condition>, Failure> {
    Ok(match fam {
        GraphFamily::Multipartite { m, n } => multipartite_clauses(m, n, mu)?.conditions,
        GraphFamily::CoTriangular { n } => cotriangular_clauses(n, mu)?.conditions,
        GraphFamily::Symplectic { d, q } if q == &BigInt::from(2) && *d >= 3 => {
            symplectic_binary_clauses(*d, mu)?.conditions
        }
        GraphFamily::Symplectic { d, q } if q > &BigInt::from(2) => {
            check_symplectic(q, *d)?.conditions
        }
        GraphFamily::Steiner { n, m } => steiner_clauses(n, m, mu)?.conditions,
        _ => Vec::new(),
    })
}

fn run_check(a: &SpectrumArgs, format: Format) -> Result<Outcome, Failure> {
    let (t, q) = target(a)?;
    let (report, extra) = match &t {
        Target::Raw(sp) => (
            feasibility(&Spectrum::Integral(sp.clone()), &a.mu),
            Vec::new(),
        ),
        Target::Family(fam) => {
            conference_note(fam);
            let report = family_feasibility(fam, &a.mu)?;
            let mut extra = Vec::new();
            if report.is_feasible() {
                if let Ok(inv) = family_invariants(fam) {
                    let sp = family_spectral(fam)?;
                    extra.extend(main_test(&sp, &inv, &a.mu)?.conditions);
                }
                extra.extend(family_clauses(fam, &a.mu)?);
            }
            (report, extra)
        }
    };
    let feasible = report.is_feasible();
    let rejected = extra.iter().any(|c| !c.passed);
    let verdict = match (feasible, rejected) {
        (false, _) => "infeasible",
        (true, true) => "rejected",
        (true, false) => "feasible",
    };
    for c in report.conditions.iter().chain(&extra).filter(|c| !c.passed) {
        eprintln!("reject: {c}");
    }
    let out = Report::new(q, verdict)
        .with_conditions(report.conditions.iter().chain(&extra))
        .with_params(report.params.as_ref());
    Ok(Outcome {
        text: render_report(&out, format),
        ok: feasible && !rejected,
    })
}

fn run_derive(a: &SpectrumArgs, format: Format) -> Result<Outcome, Failure> {
    let (t, q) = target(a)?;
    let report = match &t {
        Target::Raw(sp) => feasibility(&Spectrum::Integral(sp.clone()), &a.mu),
        Target::Family(fam) => {
            conference_note(fam);
            family_feasibility(fam, &a.mu)?
        }
    };
    let ok = report.is_feasible();
    let pair = match (&t, ok) {
        (Target::Raw(sp), true) => Some(derive_params(sp, &a.mu)?),
        _ => report.params.clone(),
    };
    if !ok {
        eprintln!("no parameters: the defect fails a feasibility condition");
    }
    let out = Report::new(q, if ok { "feasible" } else { "infeasible" })
        .with_conditions(&report.conditions)
        .with_params(pair.as_ref().filter(|_| ok));
    Ok(Outcome {
        text: render_report(&out, format),
        ok,
    })
}

#[derive(Serialize)]
struct SieveRow {
    graph: String,
    index: String,
    mu: String,
    v: String,
    k: String,
    lambda: String,
    b: String,
    r: String,
    lambda1: String,
    lambda2: String,
    clauses: String,
}

const SIEVE_HEADER: [&str; 11] = [
    "graph", "index", "mu", "v", "k", "lambda", "b", "r", "lambda1", "lambda2", "clauses",
];

fn sieve_row(
    fam: &GraphFamily,
    index: String,
    mu: &BigInt,
    d: &DesignParams,
) -> Result<SieveRow, Failure> {
    let clauses = family_clauses(fam, mu)?;
    let verdict = if clauses.is_empty() {
        "-"
    } else if clauses.iter().all(|c| c.passed) {
        "pass"
    } else {
        "no"
    };
    Ok(SieveRow {
        graph: fam.to_string(),
        index,
        mu: mu.to_string(),
        v: d.v.to_string(),
        k: d.k.to_string(),
        lambda: d.lambda.to_string(),
        b: d.b.to_string(),
        r: d.r.to_string(),
        lambda1: d.lambda1.to_string(),
        lambda2: d.lambda2.to_string(),
        clauses: verdict.into(),
    })
}

fn canonical(d: DesignParams, c: DesignParams) -> DesignParams {
    if d.is_canonical() {
        d
    } else {
        c
    }
}

fn run_sieve(s: &Sieve, format: Format) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    match s {
        Sieve::Multipartite {
            max_alpha,
            max_l_sum,
            max_t,
        } => {
            let bounds = MultipartiteBounds {
                max_alpha: *max_alpha,
                max_l_sum: *max_l_sum,
                max_t: *max_t,
            };
            for e in enum_multipartite(bounds) {
                let fam = GraphFamily::Multipartite {
                    m: e.m.clone(),
                    n: e.n.clone(),
                };
                let q = &e.quad;
                let index = format!("alpha={} l={} l*={} t={}", q.alpha, q.l, q.l_star, q.t);
                rows.push(sieve_row(&fam, index, &e.mu, &e.params)?);
            }
        }
        Sieve::Cotriangular { mu, limit } => {
            for e in enum_cotriangular(mu)?.take(*limit) {
                let fam = GraphFamily::CoTriangular { n: e.n.clone() };
                let index = format!("l={} l*={}", e.l, e.l_star);
                rows.push(sieve_row(&fam, index, mu, &e.params)?);
            }
        }
        Sieve::Steiner { n, mu, max_m } => {
            for e in enum_steiner(n, mu, max_m.as_ref())? {
                let fam = GraphFamily::Steiner {
                    n: n.clone(),
                    m: e.m.clone(),
                };
                rows.push(sieve_row(
                    &fam,
                    format!("m={}", e.m),
                    mu,
                    &canonical(e.params, e.complement),
                )?);
            }
        }
        Sieve::Symplectic {
            max_q,
            min_d,
            max_d,
        } => {
            for (q, d, mu) in symplectic_search(*max_q, *min_d..=*max_d)? {
                let fam = GraphFamily::Symplectic { d, q: q.clone() };
                let report = family_feasibility(&fam, &mu)?;
                if let Some((p, c)) = report
                    .params
                    .filter(|_| report.conditions.iter().all(|c| c.passed))
                {
                    rows.push(sieve_row(
                        &fam,
                        format!("q={q} d={d}"),
                        &mu,
                        &canonical(p, c),
                    )?);
                }
            }
        }
    }
    let cells = |r: &SieveRow| {
        vec![
            r.graph.clone(),
            r.index.clone(),
            r.mu.clone(),
            r.v.clone(),
            r.k.clone(),
            r.lambda.clone(),
            r.b.clone(),
            r.r.clone(),
            r.lambda1.clone(),
            r.lambda2.clone(),
            r.clauses.clone(),
        ]
    };
    Ok(Outcome {
        text: render_rows(&SIEVE_HEADER, &rows, cells, format),
        ok: true,
    })
}

#[derive(Serialize)]
struct TableRow {
    number: usize,
    n: String,
    m: String,
    v: String,
    k: String,
    lambda: String,
    lambda1: String,
    lambda2: String,
    verdict: String,
}

const TABLE_HEADER: [&str; 9] = [
    "number", "n", "m", "v", "k", "lambda", "lambda1", "lambda2", "verdict",
];

fn run_table(a: &TableArgs, format: Format) -> Result<Outcome, Failure> {
    let limits = Table1Limits {
        max_n: a.max_n,
        max_mu: Some(a.max_mu),
        max_v: a.max_v.clone(),
    };
    let rows: Vec<TableRow> = table1(&limits)?
        .into_iter()
        .map(|r| TableRow {
            number: r.number,
            n: r.n.to_string(),
            m: r.m.to_string(),
            v: r.params.v.to_string(),
            k: r.params.k.to_string(),
            lambda: r.params.lambda.to_string(),
            lambda1: r.params.lambda1.to_string(),
            lambda2: r.params.lambda2.to_string(),
            verdict: if r.rejected() { "no" } else { "open" }.into(),
        })
        .collect();
    let cells = |r: &TableRow| {
        vec![
            r.number.to_string(),
            r.n.clone(),
            r.m.clone(),
            r.v.clone(),
            r.k.clone(),
            r.lambda.clone(),
            r.lambda1.clone(),
            r.lambda2.clone(),
            r.verdict.clone(),
        ]
    };
    Ok(Outcome {
        text: render_rows(&TABLE_HEADER, &rows, cells, format),
        ok: true,
    })
}

fn check_condition(label: &str, r: &CheckResult) -> Condition {
    match (&r.witness, r.verdict) {
        (Some(w), _) => Condition::fail(label, w.clone()),
        (None, Verdict::NotApplicable) => Condition {
            label: label.to_string(),
            passed: true,
            witness: Some(Witness::Note("not applicable".into())),
        },
        (None, _) => Condition::pass(label),
    }
}

fn run_symmetric(a: &SymmetricArgs, format: Format) -> Result<Outcome, Failure> {
    let (result, q, label) = match (&a.k, &a.nu) {
        (Some(k), None) => {
            let r = symmetric_test(&a.v, k, &a.lambda)?;
            let label = if a.v.bit(0) {
                "chowla-ryser"
            } else {
                "schutzenberger"
            };
            let q = query(&[
                ("v", a.v.to_string()),
                ("k", k.to_string()),
                ("lambda", a.lambda.to_string()),
            ]);
            (r, q, label)
        }
        (None, Some(nu)) => {
            let q = query(&[
                ("v", a.v.to_string()),
                ("lambda", a.lambda.to_string()),
                ("nu", nu.to_string()),
            ]);
            if a.v.bit(0) {
                (chowla_ryser(&a.v, &a.lambda, nu)?, q, "chowla-ryser")
            } else {
                (schutzenberger(&a.v, nu), q, "schutzenberger")
            }
        }
        _ => return Err(Failure::Usage("give exactly one of --k and --nu".into())),
    };
    let ok = result.verdict != Verdict::Reject;
    let cond = check_condition(label, &result);
    if !ok {
        eprintln!("reject: {cond}");
    }
    let out = Report::new(q, result.verdict.to_string()).with_conditions([&cond]);
    Ok(Outcome {
        text: render_report(&out, format),
        ok,
    })
}

#[derive(Serialize)]
struct GraphReport {
    query: BTreeMap<String, String>,
    verdict: String,
    spectral: BTreeMap<String, String>,
    discriminant: String,
    hasse: Vec<HasseOut>,
}

#[derive(Serialize)]
struct HasseOut {
    prime: String,
    value: i8,
}

fn run_graph(a: &GraphArgs, format: Format) -> Result<Outcome, Failure> {
    let fmt = match a.input {
        InputFormat::Matrix => GraphFormat::Matrix,
        InputFormat::Graph6 => GraphFormat::Graph6,
    };
    let graph = read_graph(&a.path, fmt)?;
    let q = query(&[
        ("path", a.path.display().to_string()),
        ("input", format!("{:?}", a.input).to_lowercase()),
    ]);
    let sp = match srg_recognize(&graph) {
        Ok(sp) => sp,
        Err(e @ (Error::NotStronglyRegular(_) | Error::NonIntegralSpectrum { .. })) => {
            eprintln!("not strongly regular with integral spectrum: {e}");
            let r = GraphReport {
                query: q,
                verdict: "not-strongly-regular".into(),
                spectral: BTreeMap::new(),
                discriminant: String::new(),
                hasse: Vec::new(),
            };
            return Ok(Outcome {
                text: render_graph(&r, format),
                ok: false,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let inv = graph_invariants_direct(&graph)?;
    let spectral = query(&[
        ("vertices", sp.vertices().to_string()),
        ("degree", sp.degree().to_string()),
        ("adjacent_common", sp.adjacent_common().to_string()),
        ("nonadjacent_common", sp.nonadjacent_common().to_string()),
        ("rho", sp.rho().to_string()),
        ("sigma", sp.sigma().to_string()),
        ("f", sp.f().to_string()),
        ("g", sp.g().to_string()),
    ]);
    let r = GraphReport {
        query: q,
        verdict: "strongly-regular".into(),
        spectral,
        discriminant: inv.discriminant.representative().to_string(),
        hasse: inv
            .hasse
            .iter()
            .map(|(p, s)| HasseOut {
                prime: p.to_string(),
                value: s.to_i8(),
            })
            .collect(),
    };
    Ok(Outcome {
        text: render_graph(&r, format),
        ok: true,
    })
}

fn render_graph(r: &GraphReport, format: Format) -> String {
    let mut rows: Vec<[String; 2]> = vec![["verdict".into(), r.verdict.clone()]];
    rows.extend(r.spectral.iter().map(|(k, v)| [k.clone(), v.clone()]));
    if r.verdict == "strongly-regular" {
        rows.push(["discriminant".into(), r.discriminant.clone()]);
        rows.extend(
            r.hasse
                .iter()
                .map(|h| [format!("hasse_{}", h.prime), h.value.to_string()]),
        );
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("serializable output");
            s.push('\n');
            s
        }
        _ => {
            #[derive(Serialize)]
            struct Kv<'a> {
                name: &'a str,
                value: &'a str,
            }
            let kv: Vec<Kv> = rows.iter().map(|[a, b]| Kv { name: a, value: b }).collect();
            render_rows(
                &["name", "value"],
                &kv,
                |x| vec![x.name.to_string(), x.value.to_string()],
                format,
            )
        }
    }
}

fn run_hilbert(a: &HilbertArgs, format: Format) -> Result<Outcome, Failure> {
    let mut q = query(&[("a", a.a.to_string()), ("b", a.b.to_string())]);
    let mut conds = Vec::new();
    let label = |place: &str| format!("symbol-at-{place}");
    let as_cond = |name: String, plus: bool| {
        if plus {
            Condition::pass(name)
        } else {
            Condition::fail(name, Witness::Note("symbol is -1".into()))
        }
    };
    let verdict = if let Some(p) = &a.p {
        q.insert("p".into(), p.to_string());
        let pu: BigUint = p
            .to_biguint()
            .ok_or_else(|| Failure::Usage("--p must be a positive prime".into()))?;
        let s = hilbert_symbol(&a.a, &a.b, &pu)?;
        conds.push(as_cond(label(&p.to_string()), s.is_plus()));
        format!("{}", s.to_i8())
    } else {
        conds.push(as_cond(label("inf"), real_symbol(&a.a, &a.b)?.is_plus()));
        for p in relevant_primes(&[a.a.clone(), a.b.clone()])? {
            conds.push(as_cond(
                label(&p.to_string()),
                hilbert_symbol(&a.a, &a.b, &p)?.is_plus(),
            ));
        }
        match legendre_eq_solvable(&a.a, &a.b)? {
            Solvability::Solvable => "solvable".into(),
            Solvability::Unsolvable { .. } => "unsolvable".into(),
        }
    };
    let out = Report::new(q, verdict).with_conditions(&conds);
    Ok(Outcome {
        text: render_report(&out, format),
        ok: true,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a, cli.format),
        Command::Derive(a) => run_derive(a, cli.format),
        Command::Sieve(s) => run_sieve(s, cli.format),
        Command::Table1(a) => run_table(a, cli.format),
        Command::Symmetric(a) => run_symmetric(a, cli.format),
        Command::Graph(a) => run_graph(a, cli.format),
        Command::Hilbert(a) => run_hilbert(a, cli.format),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
