use clap::{Args, Parser, Subcommand, ValueEnum};
use qcover::criteria;
use qcover::datum::{check_frobenius_assumptions, derive_diamond, ell_i, osp_datum, validate_super_datum, LatticeChoice, SuperDatum};
use qcover::frobenius::Frobenius;
use qcover::halfalg::generic_dim;
use qcover::halfalg::words::weights_of_degree;
use qcover::halfalg::SpecF;
use qcover::modifiedu::frob::{lambda_box, verify_associativity};
use qcover::modifiedu::{Twist, UdotDatum, UdotEngine, UdotFrobenius};
use qcover::qpicalc::{run_identity_suite, IdentityReport, IndexParams, SuiteId, SuiteRanges};
use qcover::scalars::{make_root_context, EllPrimeChoice, RootContext};
use qcover::smallu::{small_u_dimension, Lattice};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcover", about = "Exact checks for quantum covering groups at roots of unity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Run the (q,pi)-binomial identity suites.
    VerifyQpi,
    /// Validate a datum and show its derived datum.
    Datum,
    /// Generic dimensions of f by weight.
    Dims,
    /// Frobenius maps on the half algebra.
    Frobenius,
    /// Straightening, associativity and Frobenius on the modified form.
    Udot,
    /// Dimension of the small quantum covering group.
    Smallu,
    /// Every acceptance criterion with fixed parameters.
    All,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 3)]
    ell: u64,
    #[arg(long, global = true, value_enum, default_value_t = EllPrime::Default)]
    ell_prime: EllPrime,
    #[arg(long, global = true, value_enum, default_value_t = Pi::Both)]
    pi: Pi,
    /// Built-in osp(1|2n).
    #[arg(long, global = true, conflicts_with = "datum")]
    osp: Option<usize>,
    /// Datum file in JSON.
    #[arg(long, global = true)]
    datum: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = LatticeArg::Weight)]
    lattice: LatticeArg,
    #[arg(long, global = true)]
    max_degree: Option<i64>,
    #[arg(long, global = true)]
    range: Option<i64>,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EllPrime {
    Default,
    Ell,
    #[value(name = "2ell")]
    TwoEll,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pi {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    Weight,
    Root,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Why a run stopped before producing a report.
enum Halt {
    Usage(String),
    Internal(String),
}

impl<E: std::fmt::Display> From<E> for Halt {
    fn from(e: E) -> Self {
        Halt::Internal(e.to_string())
    }
}

/// Collected output: JSON entries, CSV rows under one header, and text lines.
struct Report {
    passed: bool,
    entries: Vec<Value>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    text: Vec<String>,
}

impl Report {
    fn new(header: &[&str]) -> Self {
        Report { passed: true, entries: Vec::new(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), text: Vec::new() }
    }

    fn identity(&mut self, context: Value, r: &IdentityReport) {
        self.passed &= r.passed();
        self.text.push(format!("{} {} checked={} failures={}", r.suite, context, r.checked, r.failures.len()));
        self.rows.push(vec![r.suite.clone(), context.to_string(), r.checked.to_string(), r.failures.len().to_string()]);
        self.entries.push(json!({ "context": context, "report": r }));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&json!({ "passed": self.passed, "results": self.entries })).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.header.join(",") + "\n";
                for r in &self.rows {
                    s += &r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut s = self.text.join("\n");
                s += &format!("\n{}\n", if self.passed { "all checks passed" } else { "some checks failed" });
                s
            }
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

impl Opts {
    fn pis(&self) -> Vec<i8> {
        match self.pi {
            Pi::Plus => vec![1],
            Pi::Minus => vec![-1],
            Pi::Both => vec![1, -1],
        }
    }

    fn choice(&self) -> EllPrimeChoice {
        match self.ell_prime {
            EllPrime::Default => EllPrimeChoice::Default,
            EllPrime::Ell => EllPrimeChoice::Ell,
            EllPrime::TwoEll => EllPrimeChoice::TwoEll,
        }
    }

    fn ctx(&self, pi: i8) -> Result<RootContext, Halt> {
        make_root_context(self.ell, self.choice(), pi).map_err(|e| Halt::Usage(e.to_string()))
    }

    fn lattice(&self) -> LatticeChoice {
        match self.lattice {
            LatticeArg::Weight => LatticeChoice::Weight,
            LatticeArg::Root => LatticeChoice::Root,
        }
    }

    fn datum(&self) -> Result<SuperDatum, Halt> {
        if let Some(path) = &self.datum {
            let s = std::fs::read_to_string(path).map_err(|e| Halt::Usage(format!("{}: {e}", path.display())))?;
            return SuperDatum::from_json(&s).map_err(|e| Halt::Usage(e.to_string()));
        }
        match self.osp.unwrap_or(1) {
            0 => Err(Halt::Usage("--osp needs n >= 1".into())),
            n => Ok(osp_datum(n, self.lattice())),
        }
    }

    /// Refuses to go on when the datum is not a super datum or the assumptions fail.
    fn checked_datum(&self, ctx: &RootContext) -> Result<SuperDatum, Halt> {
        let d = self.datum()?;
        let v = validate_super_datum(&d);
        if !v.is_empty() {
            return Err(Halt::Usage(format!("not a super Cartan datum: {v:?}")));
        }
        let v = check_frobenius_assumptions(&d, ctx);
        if !v.is_empty() {
            let list: Vec<String> = v.iter().map(|x| format!("{} at {:?}", x.condition, x.indices)).collect();
            return Err(Halt::Usage(format!("assumptions fail at l={}: {}", ctx.ell, list.join("; "))));
        }
        Ok(d)
    }
}

fn verify_qpi(o: &Opts) -> Result<Report, Halt> {
    let n = o.range.unwrap_or(40);
    let ranges = SuiteRanges { n_max: n, t_max: n, b_max: n.min(10) };
    let mut rep = Report::new(&["suite", "context", "checked", "failures"]);
    let datum = if o.osp.is_some() || o.datum.is_some() { Some(o.datum()?) } else { None };
    for pi in o.pis() {
        let c = o.ctx(pi)?;
        let context = json!({ "ell": c.ell, "ell_prime": c.ell_prime, "pi": pi });
        for s in SuiteId::ALL_SCALAR {
            rep.identity(context.clone(), &run_identity_suite(s, &c, &ranges, None)?);
        }
        if let Some(d) = &datum {
            for i in 0..d.rank() {
                let li = ell_i(d.d(i), c.ell);
                let r = SuiteRanges { n_max: n.max(1) * li, t_max: n.max(1) * li, b_max: 0 };
                let ctx_i = json!({ "ell": c.ell, "ell_prime": c.ell_prime, "pi": pi, "i": i });
                rep.identity(ctx_i, &run_identity_suite(SuiteId::DiamondBinomial, &c, &r, Some(IndexParams { d_i: d.d(i), ell_i: li }))?);
            }
        }
    }
    Ok(rep)
}

fn datum_cmd(o: &Opts) -> Result<Report, Halt> {
    let d = o.datum()?;
    let mut rep = Report::new(&["pi", "field", "value"]);
    let v = validate_super_datum(&d);
    rep.passed = v.is_empty();
    rep.text.push(format!("rank {}, parity {:?}, bar-consistent {}", d.rank(), d.parity, d.is_bar_consistent()));
    rep.text.push(if v.is_empty() { "valid super Cartan datum".into() } else { format!("violations: {v:?}") });
    rep.entries.push(json!({ "datum": d, "violations": v, "bar_consistent": d.is_bar_consistent() }));
    if !v.is_empty() {
        return Ok(rep);
    }
    for pi in o.pis() {
        let c = o.ctx(pi)?;
        let a = check_frobenius_assumptions(&d, &c);
        let dd = derive_diamond(&d, &c);
        rep.text.push(format!("pi={pi}: l_i {:?}, derived dot {:?}, derived parity {:?}, assumptions {}", dd.ell_i, dd.diamond, dd.parity, if a.is_empty() { "hold".into() } else { format!("fail {a:?}") }));
        rep.rows.push(vec![pi.to_string(), "ell_i".into(), format!("{:?}", dd.ell_i)]);
        rep.rows.push(vec![pi.to_string(), "assumptions".into(), format!("{a:?}")]);
        rep.entries.push(json!({ "pi": pi, "ell": c.ell, "ell_prime": c.ell_prime, "assumption_violations": a, "derived": dd }));
    }
    Ok(rep)
}

fn dims(o: &Opts) -> Result<Report, Halt> {
    let d = o.datum()?;
    let rank = d.rank();
    let mut header: Vec<String> = vec!["pi".into()];
    header.extend((0..rank).map(|i| format!("nu{i}")));
    header.push("dim".into());
    let mut rep = Report::new(&[]);
    rep.header = header;
    for pi in o.pis() {
        if !d.pi_signs().contains(&pi) {
            continue;
        }
        for deg in 0..=o.max_degree.unwrap_or(6) {
            for nu in weights_of_degree(rank, deg) {
                let dim = generic_dim(&d, &nu, pi)?;
                let mut row = vec![pi.to_string()];
                row.extend(nu.iter().map(|x| x.to_string()));
                row.push(dim.to_string());
                rep.rows.push(row);
                rep.text.push(format!("pi={pi} nu={nu:?} dim={dim}"));
                rep.entries.push(json!({ "pi": pi, "nu": nu, "dim": dim }));
            }
        }
    }
    Ok(rep)
}

fn frobenius(o: &Opts) -> Result<Report, Halt> {
    let mut rep = Report::new(&["suite", "context", "checked", "failures"]);
    let deg = o.max_degree.unwrap_or(4);
    for pi in o.pis() {
        let c = o.ctx(pi)?;
        let d = o.checked_datum(&c)?;
        let context = json!({ "ell": c.ell, "ell_prime": c.ell_prime, "pi": pi });
        let mut f = Frobenius::new(&d, &c)?;
        rep.identity(context.clone(), &f.verify_fr_prime_serre()?);
        rep.identity(context.clone(), &f.verify_fr_homomorphism(deg)?);
        rep.identity(context.clone(), &f.verify_fr_prime_homomorphism(deg)?);
        let (r, kf, v) = f.verify_steinberg_dims(i64::MAX / 4)?;
        rep.identity(json!({ "ell": c.ell, "pi": pi, "kf_total": kf, "module_total": v }), &r);
    }
    Ok(rep)
}

fn udot(o: &Opts) -> Result<Report, Halt> {
    let mut rep = Report::new(&["suite", "context", "checked", "failures"]);
    for pi in o.pis() {
        let c = o.ctx(pi)?;
        let d = o.checked_datum(&c)?;
        let context = json!({ "ell": c.ell, "ell_prime": c.ell_prime, "pi": pi });
        let mut u = UdotFrobenius::new(&d, &c, Twist::Binomial)?;
        let period = o.range.unwrap_or(2 * c.ell_tilde() as i64);
        let lams = lambda_box(d.lattice_rank(), period);
        let nm: Vec<u32> = match o.max_degree {
            Some(m) => vec![m.max(0) as u32; d.rank()],
            None => u.default_n_max(),
        };
        rep.identity(context.clone(), &u.verify_homomorphism(&lams, &nm)?);
        rep.identity(context.clone(), &u.verify_fr_coproduct(&lams, &nm)?);
        let mut eng = UdotEngine::new(UdotDatum::of(&d), &c);
        let mut sf = SpecF::new(&d, &c)?;
        rep.identity(context, &verify_associativity(&mut eng, &mut sf, &nm, period.max(1), o.seed, 200)?);
    }
    Ok(rep)
}

fn smallu(o: &Opts) -> Result<Report, Halt> {
    if o.datum.is_some() {
        return Err(Halt::Usage("smallu supports the built-in osp(1|2n) data only".into()));
    }
    let n = o.osp.unwrap_or(1);
    let lattice = match o.lattice {
        LatticeArg::Weight => Lattice::Weight,
        LatticeArg::Root => Lattice::Root,
    };
    let mut rep = Report::new(&["n", "ell", "ell_prime", "lattice", "pi", "formula", "computed", "match"]);
    for pi in o.pis() {
        let c = o.ctx(pi)?;
        o.checked_datum(&c)?;
        let r = small_u_dimension(n, &c, lattice)?;
        rep.passed &= r.matches;
        rep.text.push(format!("n={} ell={} pi={pi} lattice={:?} formula={} computed={} match={}", r.n, r.ell, r.lattice, r.formula, r.computed, r.matches));
        rep.rows.push(vec![r.n.to_string(), r.ell.to_string(), r.ell_prime.to_string(), format!("{:?}", r.lattice).to_lowercase(), pi.to_string(), r.formula.to_string(), r.computed.to_string(), r.matches.to_string()]);
        rep.entries.push(json!({ "pi": pi, "record": r }));
    }
    Ok(rep)
}

fn all() -> Report {
    let mut rep = Report::new(&["criterion", "title", "passed", "seconds", "detail"]);
    for id in 1..=12 {
        let o = criteria::run(id);
        rep.passed &= o.passed;
        rep.text.push(format!("{} criterion {id}: {} ({:.1}s) {}", if o.passed { "PASS" } else { "FAIL" }, o.title, o.seconds, o.detail));
        rep.rows.push(vec![id.to_string(), o.title.into(), o.passed.to_string(), format!("{:.1}", o.seconds), o.detail.clone()]);
        rep.entries.push(serde_json::to_value(&o).expect("serializable"));
    }
    rep
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let o = &cli.opts;
    let result = match cli.command {
        Command::VerifyQpi => verify_qpi(o),
        Command::Datum => datum_cmd(o),
        Command::Dims => dims(o),
        Command::Frobenius => frobenius(o),
        Command::Udot => udot(o),
        Command::Smallu => smallu(o),
        Command::All => Ok(all()),
    };
    let rep = match result {
        Ok(r) => r,
        Err(Halt::Usage(m)) => {
            eprintln!("refused: {m}");
            return ExitCode::from(2);
        }
        Err(Halt::Internal(m)) => {
            eprintln!("internal error: {m}");
            return ExitCode::from(3);
        }
    };
    let out = rep.render(o.format);
    match &o.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &out) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::from(if rep.passed { 0 } else { 1 })
}
