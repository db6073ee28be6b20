//! `qcoh`: command-line front end for the quantum cohomology toolkit.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use qcoh::genfun::{annihilation_check, expander_for_order, scalar_generating_function};
use qcoh::landau_ginzburg::{
    check_gradient, gradient_matches_relations, potential, top_degree_monomials,
    vafa_intriligator, LgConfig,
};
use qcoh::quotient::spectrum_check;
use qcoh::schubert::{enumerate_diagrams, giambelli, render_terms, SchubertRing, YoungDiagram};
use qcoh::spaces::{
    quantum_product_table, read_presentation, write_presentation, Space, SpaceError, SpaceId,
};
use qcoh::symplectic::lagrangian_check;
use qcoh::toda::{convergence_ratio, toda_integrate, toda_matches_flag_relations, TodaState};
use qcoh::verify::{sample_q, verify_all, Tolerances, VerifyConfig};

const SCHEMA: &str = "qcoh/1";
const VALID_SPACES: &str = "cpn:<n>, gr:<k>:<n>, flag3, flag3:x, hirzebruch:<k>";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qcoh", version, about = "Quantum cohomology rings: products, potentials, brackets, Toda, generating functions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "QCOH_FORMAT", default_value = "text")]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for multistart grids and random samples.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Override the Newton root residual tolerance
    #[arg(long, global = true)]
    root_residual: Option<f64>,
    /// Override the conserved-quantity drift tolerance
    #[arg(long, global = true)]
    integrator_drift: Option<f64>,
    /// Override the spectrum residual tolerance
    #[arg(long, global = true)]
    spectrum_residual: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SpaceArg {
    /// Space identifier: cpn:<n>, gr:<k>:<n>, flag3, hirzebruch:<k>.
    #[arg(value_name = "SPACE")]
    id: Option<String>,
    #[arg(long = "space", value_name = "SPACE", conflicts_with = "id")]
    space: Option<String>,
    /// Presentation file instead of a built-in space.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["id", "space"])]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a presentation.
    Ring {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        quantum: bool,
        /// Emit the declarative presentation format.
        #[arg(long)]
        presentation: bool,
    },
    /// Quantum products of all pairs of basis elements.
    ProductTable {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Schubert classes on Grassmannians.
    Schubert {
        #[command(subcommand)]
        action: SchubertCmd,
    },
    /// Landau-Ginzburg potentials and residue sums.
    Lg {
        #[command(subcommand)]
        action: LgCmd,
    },
    /// Poisson brackets of all pairs of relations.
    Bracket {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Closure of the relation ideal under the bracket.
    LagrangianCheck {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Open Toda lattice on three sites.
    Toda {
        #[command(subcommand)]
        action: TodaCmd,
    },
    /// Joint spectrum of the quantum multiplication operators.
    Spectrum {
        #[command(flatten)]
        space: SpaceArg,
        /// Values of the quantum parameters as `re[,im]`, one flag each.
        #[arg(long = "q", value_name = "RE[,IM]")]
        q: Vec<String>,
        /// Number of seeded random samples when `--q` is absent.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Generating functions and their annihilators.
    Genfun {
        #[command(subcommand)]
        action: GenfunCmd,
    },
    /// Run the full fixture suite.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum SchubertCmd {
    /// Diagrams in the box, with Giambelli polynomials.
    List {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Product of two diagrams in the Schubert basis.
    Product {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        classical: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LgCmd {
    /// The potential and its gradient.
    Potential {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        quantum: bool,
    },
    /// Compare the gradient with the relations.
    CheckGradient {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Residue sum over critical points against the intersection number.
    Residue {
        #[command(flatten)]
        space: SpaceArg,
        /// Top-degree class; every top monomial when absent.
        #[arg(long = "T", value_name = "POLY")]
        t: Option<String>,
        #[arg(long = "q", value_name = "RE[,IM]", default_value = "1")]
        q: String,
        /// Number of Newton starts.
        #[arg(long, default_value_t = 512)]
        starts: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TodaCmd {
    /// RK4 trajectory with conserved-quantity drift.
    Integrate {
        #[arg(long, default_value = "1,1")]
        a: String,
        #[arg(long, default_value = "0.5,0,-0.5")]
        b: String,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Keep every n-th state in the report.
        #[arg(long, default_value_t = 1000)]
        stride: usize,
        /// Also report the drift ratio between `dt` and `dt / 2` at this step.
        #[arg(long)]
        ratio_dt: Option<f64>,
    },
    /// Match the conserved quantities with the flag relations.
    Identify,
}

#[derive(Subcommand, Debug)]
enum GenfunCmd {
    /// Build the truncated generating function.
    Build {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        order: usize,
    },
    /// Apply every relation as a differential operator.
    Annihilate {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        order: usize,
    },
}

/// Failure kinds mapped onto exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<SpaceError> for Failure {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::UnknownSpace(_) => {
                Failure::Usage(e.to_string())
            }
            SpaceError::InvalidParameters(_)
            | SpaceError::NonConvex(_)
            | SpaceError::Format { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

macro_rules! runtime_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Runtime(e.to_string())
            }
        }
    )*};
}
runtime_from!(
    qcoh::Error,
    qcoh::quotient::QuotientError,
    qcoh::genfun::GenfunError,
    qcoh::symplectic::SymplecticError,
    qcoh::toda::TodaError,
    serde_json::Error,
    std::io::Error
);

impl From<qcoh::schubert::SchubertError> for Failure {
    fn from(e: qcoh::schubert::SchubertError) -> Self {
        match e {
            qcoh::schubert::SchubertError::Space(s) => s.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<qcoh::landau_ginzburg::LgError> for Failure {
    fn from(e: qcoh::landau_ginzburg::LgError) -> Self {
        use qcoh::landau_ginzburg::LgError;
        match e {
            LgError::Space(s) => s.into(),
            LgError::Range { .. } | LgError::WrongDegree { .. } | LgError::ZeroQ => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Result of one verb: JSON payload, text rendering, pass flag.
struct Outcome {
    payload: Value,
    text: String,
    pass: bool,
}

impl Outcome {
    fn new<T: Serialize>(payload: &T, text: String, pass: bool) -> Result<Self, Failure> {
        Ok(Outcome {
            payload: serde_json::to_value(payload)?,
            text,
            pass,
        })
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn space_id(arg: &SpaceArg) -> Result<SpaceId, Failure> {
    let raw = arg
        .id
        .as_deref()
        .or(arg.space.as_deref())
        .ok_or_else(|| usage(format!("a space is required; valid identifiers: {VALID_SPACES}")))?;
    Ok(raw.parse::<SpaceId>()?)
}

fn load_space(arg: &SpaceArg, quantum: bool) -> Result<Space, Failure> {
    if let Some(path) = &arg.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let mut space = read_presentation(&text)?.into_space()?;
        if !quantum && space.presentation.is_quantum() {
            space.presentation = space.presentation.classical()?;
            space.chart = None;
        }
        return Ok(space);
    }
    Ok(Space::build(&space_id(arg)?, quantum)?)
}

fn grassmannian(arg: &SpaceArg) -> Result<(u32, u32), Failure> {
    match space_id(arg)? {
        SpaceId::Grassmannian { k, n } => Ok((k, n)),
        SpaceId::Projective(n) => Ok((1, n + 1)),
        other => Err(usage(format!("`{other}` is not a Grassmannian; use gr:<k>:<n> or cpn:<n>"))),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| usage(format!("bad number `{t}` in `{s}`")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(usage(format!("expected `re` or `re,im`, got `{s}`"))),
    }
}

fn parse_list<const N: usize>(s: &str, what: &str) -> Result<[f64; N], Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad list for --{what}: `{s}`")))?;
    v.try_into()
        .map_err(|_| usage(format!("--{what} takes {N} comma-separated numbers")))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn ring(space: &Space, presentation: bool) -> Result<Outcome, Failure> {
    let pres = &space.presentation;
    let u = pres.universe();
    if presentation {
        let text = write_presentation(space);
        return Outcome::new(&json!({ "space": space.label, "presentation": text }), text.clone(), true);
    }
    let generators: Vec<Value> = pres
        .generator_indices()
        .map(|i| json!({ "name": u.name(i), "degree": u.degree(i) }))
        .collect();
    let quantum: Vec<Value> = pres
        .quantum_indices()
        .map(|i| json!({ "name": u.name(i), "degree": u.degree(i) }))
        .collect();
    let relations: Vec<Value> = pres
        .relations()
        .iter()
        .zip(pres.relation_names())
        .map(|(r, name)| json!({ "name": name, "relation": r.to_string(), "terms": r.to_json() }))
        .collect();
    let basis: Vec<&str> = space.basis.elements.iter().map(|e| e.label.as_str()).collect();
    let mut text = String::new();
    writeln!(text, "space {}", space.label).ok();
    let gens: Vec<String> = pres
        .generator_indices()
        .map(|i| format!("{} (degree {})", u.name(i), u.degree(i)))
        .collect();
    writeln!(text, "generators {}", gens.join(", ")).ok();
    if pres.is_quantum() {
        let qs: Vec<String> = pres
            .quantum_indices()
            .map(|i| format!("{} (degree {})", u.name(i), u.degree(i)))
            .collect();
        writeln!(text, "quantum {}", qs.join(", ")).ok();
    }
    for (r, name) in pres.relations().iter().zip(pres.relation_names()) {
        writeln!(text, "{name} = {r}").ok();
    }
    writeln!(text, "basis {}", basis.join(", ")).ok();
    Outcome::new(
        &json!({
            "space": space.label,
            "descriptor": space.descriptor,
            "generators": generators,
            "quantum_parameters": quantum,
            "relations": relations,
            "basis": basis,
        }),
        text,
        true,
    )
}

fn product_table(space: &Space) -> Result<Outcome, Failure> {
    let ex = space.expander()?;
    let table = quantum_product_table(&ex)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    for (i, j, e) in &table.entries {
        let r = e.render(ex.basis());
        writeln!(text, "{} * {} = {}", table.labels[*i], table.labels[*j], r).ok();
        entries.push(json!({ "left": table.labels[*i], "right": table.labels[*j], "product": r }));
    }
    Outcome::new(
        &json!({ "space": space.label, "basis": table.labels, "products": entries }),
        text,
        true,
    )
}

fn schubert(cmd: &SchubertCmd) -> Result<Outcome, Failure> {
    match cmd {
        SchubertCmd::List { space } => {
            let (k, n) = grassmannian(space)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for d in enumerate_diagrams(k, n) {
                let g = giambelli(&d);
                writeln!(text, "{d}  codegree {}  {g}", d.codegree()).ok();
                rows.push(json!({ "diagram": d, "codegree": d.codegree(), "giambelli": g.to_string() }));
            }
            Outcome::new(&json!({ "space": format!("gr:{k}:{n}"), "diagrams": rows }), text, true)
        }
        SchubertCmd::Product {
            space,
            left,
            right,
            classical,
        } => {
            let (k, n) = grassmannian(space)?;
            let ring = SchubertRing::new(k, n, !classical)?;
            let l = YoungDiagram::parse(left, k, n)?;
            let r = YoungDiagram::parse(right, k, n)?;
            let terms = ring.product(&l, &r)?;
            let rendered = render_terms(&terms);
            Outcome::new(
                &json!({
                    "space": format!("gr:{k}:{n}"),
                    "left": l,
                    "right": r,
                    "quantum": !classical,
                    "terms": terms,
                    "product": rendered,
                }),
                format!("{l} * {r} = {rendered}\n"),
                true,
            )
        }
    }
}

fn lg(cmd: &LgCmd, tol: &Tolerances, seed: u64) -> Result<Outcome, Failure> {
    match cmd {
        LgCmd::Potential { space, quantum } => {
            let (k, n) = grassmannian(space)?;
            let pot = potential(k, n, *quantum)?;
            let grad: Vec<String> = pot.gradient().iter().map(|g| g.to_string()).collect();
            let mut text = format!("P = {}\n", pot.body);
            for (i, g) in grad.iter().enumerate() {
                writeln!(text, "dP/dc{} = {g}", i + 1).ok();
            }
            Outcome::new(
                &json!({
                    "space": format!("gr:{k}:{n}"),
                    "quantum": quantum,
                    "potential": pot.body.to_string(),
                    "gradient": grad,
                }),
                text,
                true,
            )
        }
        LgCmd::CheckGradient { space } => {
            let (k, n) = grassmannian(space)?;
            let special = check_gradient(&potential(k, n, false)?)?;
            let relations = gradient_matches_relations(&potential(k, n, false)?)?;
            let quantum = gradient_matches_relations(&potential(k, n, true)?)?;
            let pass = special && relations && quantum;
            let text = format!(
                "{} dw/dc_i = s_(n+1-i)\n{} gradient = classical relations\n{} gradient = quantum relations\n",
                verdict(special),
                verdict(relations),
                verdict(quantum)
            );
            Outcome::new(
                &json!({
                    "space": format!("gr:{k}:{n}"),
                    "special_classes": special,
                    "classical_relations": relations,
                    "quantum_relations": quantum,
                    "pass": pass,
                }),
                text,
                pass,
            )
        }
        LgCmd::Residue {
            space,
            t,
            q,
            starts,
        } => {
            let (k, n) = grassmannian(space)?;
            let q = parse_complex(q)?;
            let cfg = LgConfig {
                residual_tol: tol.root_residual,
                starts: *starts,
                seed,
                ..LgConfig::default()
            };
            let classes = match t {
                Some(src) => {
                    let pot = potential(k, n, false)?;
                    vec![qcoh::parse(src, pot.body.universe())?]
                }
                None => top_degree_monomials(k, n)?,
            };
            let mut reports = Vec::new();
            let mut text = String::new();
            for class in &classes {
                let rep = vafa_intriligator(k, n, class, q, 1e-6, &cfg)?;
                writeln!(
                    text,
                    "{} T = {}: sum = {:.10}{:+.3e}i over {} roots, oracle {}",
                    verdict(rep.matches),
                    rep.t,
                    rep.sum[0],
                    rep.sum[1],
                    rep.roots.len(),
                    rep.oracle
                )
                .ok();
                reports.push(rep);
            }
            let pass = reports.iter().all(|r| r.matches);
            let payload = if reports.len() == 1 {
                serde_json::to_value(&reports[0])?
            } else {
                json!({ "space": format!("gr:{k}:{n}"), "reports": reports, "match": pass })
            };
            Ok(Outcome { payload, text, pass })
        }
    }
}

fn brackets(space: &Space, full: bool) -> Result<Outcome, Failure> {
    let chart = space
        .chart
        .as_ref()
        .ok_or_else(|| usage(format!("no symplectic chart for `{}`", space.label)))?;
    let engine = space.engine()?;
    let rep = lagrangian_check(&space.presentation, chart, &engine)?;
    let mut text = String::new();
    for e in &rep.pairs {
        let cert = e.certificate.as_deref().unwrap_or("not in ideal");
        writeln!(text, "{{{}, {}}} = {}  [{}]", e.left, e.right, e.bracket, cert).ok();
    }
    if full {
        writeln!(text, "L1 {}", rep.l1).ok();
        writeln!(text, "L2 {}", rep.l2).ok();
        writeln!(text, "bracket {}", rep.bracket).ok();
        if let Some(r) = &rep.refused {
            writeln!(text, "refused {r}").ok();
        }
        let pass = rep.refused.is_none();
        return Outcome::new(&rep, text, pass);
    }
    Outcome::new(&json!({ "space": rep.space, "pairs": rep.pairs }), text, true)
}

fn toda(cmd: &TodaCmd, tol: &Tolerances) -> Result<Outcome, Failure> {
    match cmd {
        TodaCmd::Integrate {
            a,
            b,
            t_end,
            dt,
            stride,
            ratio_dt,
        } => {
            let s0 = TodaState::new(parse_list::<2>(a, "a")?, parse_list::<3>(b, "b")?)
                .map_err(|e| usage(e.to_string()))?;
            let traj = toda_integrate(&s0, *t_end, *dt)?;
            let drift = traj.drift();
            let pass = drift.conserved() <= tol.integrator_drift;
            let stride = (*stride).max(1);
            let kept: Vec<Value> = traj
                .states
                .iter()
                .enumerate()
                .filter(|(i, _)| i % stride == 0 || *i == traj.steps)
                .map(|(i, s)| json!({ "t": i as f64 * dt, "a": s.a, "b": s.b }))
                .collect();
            let ratio = match ratio_dt {
                Some(h) => Some(convergence_ratio(&s0, *t_end, *h)?),
                None => None,
            };
            let last = traj.last();
            let mut text = format!(
                "{} steps of dt = {dt}, final a = {:?}, b = {:?}\n",
                traj.steps, last.a, last.b
            );
            writeln!(
                text,
                "{} drift g {:.3e}, h {:.3e}, trace {:.3e}, spectrum {:.3e} (tolerance {:.1e})",
                verdict(pass),
                drift.g,
                drift.h,
                drift.trace,
                drift.spectrum,
                tol.integrator_drift
            )
            .ok();
            if let (Some(r), Some(h)) = (ratio, ratio_dt) {
                writeln!(text, "drift ratio dt = {h} vs {}: {r:.3}", h / 2.0).ok();
            }
            Outcome::new(
                &json!({
                    "dt": dt,
                    "t_end": t_end,
                    "steps": traj.steps,
                    "states": kept,
                    "drift": drift,
                    "ratio": ratio,
                    "pass": pass,
                }),
                text,
                pass,
            )
        }
        TodaCmd::Identify => {
            let id = toda_matches_flag_relations();
            let subs: Vec<String> = id.substitution.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            let text = format!(
                "{} substitution {}\ng -> {}\nh -> {}\n",
                verdict(id.matches),
                subs.join(", "),
                id.g_image,
                id.h_image
            );
            Outcome::new(&id, text, id.matches)
        }
    }
}

fn spectrum(space: &Space, q: &[String], samples: usize, tol: &Tolerances, seed: u64) -> Result<Outcome, Failure> {
    let ex = space.expander()?;
    let nq = space.presentation.quantum_indices().len();
    let points: Vec<Vec<Complex64>> = if q.is_empty() {
        sample_q(seed, samples, nq)
    } else {
        if q.len() != nq {
            return Err(usage(format!("`{}` has {nq} quantum parameters, got {} --q values", space.label, q.len())));
        }
        vec![q.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?]
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for pt in &points {
        let rep = spectrum_check(&ex, pt, tol.spectrum_residual)?;
        let qs: Vec<String> = pt.iter().map(|z| format!("{:.4}{:+.4}i", z.re, z.im)).collect();
        writeln!(
            text,
            "{} q = ({}): {} tuples, max residual {:.2e}",
            verdict(rep.pass),
            qs.join(", "),
            rep.eigen_tuples.len(),
            rep.max_residual
        )
        .ok();
        reports.push(rep);
    }
    let pass = reports.iter().all(|r| r.pass);
    Outcome::new(&json!({ "space": space.label, "samples": reports, "pass": pass }), text, pass)
}

fn genfun(cmd: &GenfunCmd) -> Result<Outcome, Failure> {
    match cmd {
        GenfunCmd::Build { space, order } => {
            let space = load_space(space, true)?;
            let ex = expander_for_order(&space, *order)?;
            let v = scalar_generating_function(&ex, *order)?;
            let text = format!(
                "V to order {} (reliable to {}), {} terms\nV = {}\n",
                v.order,
                v.reliable_order,
                v.residual_terms(),
                v.body
            );
            Outcome::new(
                &json!({
                    "space": space.label,
                    "order": v.order,
                    "reliable_order": v.reliable_order,
                    "residual_terms": v.residual_terms(),
                    "V": v.body.to_string(),
                }),
                text,
                true,
            )
        }
        GenfunCmd::Annihilate { space, order } => {
            let space = load_space(space, true)?;
            let rep = annihilation_check(&space, *order)?;
            let mut text = String::new();
            for r in &rep.relations {
                writeln!(text, "{} {} : {} residual terms", verdict(r.vanishes), r.operator, r.residual_terms).ok();
            }
            writeln!(
                text,
                "{} control {} : {} residual terms",
                verdict(!rep.non_member.vanishes),
                rep.non_member.operator,
                rep.non_member.residual_terms
            )
            .ok();
            let residual_terms: usize = rep.relations.iter().map(|r| r.residual_terms).sum();
            let mut payload = serde_json::to_value(&rep)?;
            payload["residual_terms"] = json!(residual_terms);
            Ok(Outcome {
                payload,
                text,
                pass: rep.pass,
            })
        }
    }
}

fn verify(cfg: &VerifyConfig) -> Result<Outcome, Failure> {
    let rep = verify_all(cfg);
    let mut text = String::new();
    for c in &rep.checks {
        writeln!(text, "{} {}: {} ({})", verdict(c.pass), c.group, c.name, c.detail).ok();
    }
    let failed = rep.checks.iter().filter(|c| !c.pass).count();
    writeln!(text, "{} of {} checks passed", rep.checks.len() - failed, rep.checks.len()).ok();
    Outcome::new(&rep, text, rep.pass)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ring { .. } => "ring",
        Command::ProductTable { .. } => "product-table",
        Command::Schubert { action: SchubertCmd::List { .. } } => "schubert list",
        Command::Schubert { action: SchubertCmd::Product { .. } } => "schubert product",
        Command::Lg { action: LgCmd::Potential { .. } } => "lg potential",
        Command::Lg { action: LgCmd::CheckGradient { .. } } => "lg check-gradient",
        Command::Lg { action: LgCmd::Residue { .. } } => "lg residue",
        Command::Bracket { .. } => "bracket",
        Command::LagrangianCheck { .. } => "lagrangian-check",
        Command::Toda { action: TodaCmd::Integrate { .. } } => "toda integrate",
        Command::Toda { action: TodaCmd::Identify } => "toda identify",
        Command::Spectrum { .. } => "spectrum",
        Command::Genfun { action: GenfunCmd::Build { .. } } => "genfun build",
        Command::Genfun { action: GenfunCmd::Annihilate { .. } } => "genfun annihilate",
        Command::VerifyAll => "verify-all",
    }
}

fn run(cli: &Cli, cfg: &VerifyConfig) -> Result<Outcome, Failure> {
    let tol = &cfg.tolerances;
    match &cli.command {
        Command::Ring {
            space,
            quantum,
            presentation,
        } => ring(&load_space(space, *quantum)?, *presentation),
        Command::ProductTable { space } => product_table(&load_space(space, true)?),
        Command::Schubert { action } => schubert(action),
        Command::Lg { action } => lg(action, tol, cfg.seed),
        Command::Bracket { space } => brackets(&load_space(space, true)?, false),
        Command::LagrangianCheck { space } => brackets(&load_space(space, true)?, true),
        Command::Toda { action } => toda(action, tol),
        Command::Spectrum { space, q, samples } => {
            spectrum(&load_space(space, true)?, q, *samples, tol, cfg.seed)
        }
        Command::Genfun { action } => genfun(action),
        Command::VerifyAll => verify(cfg),
    }
}

fn overrides(cli: &Cli) -> Vec<(&'static str, f64)> {
    [
        ("root_residual", cli.root_residual),
        ("integrator_drift", cli.integrator_drift),
        ("spectrum_residual", cli.spectrum_residual),
    ]
    .into_iter()
    .filter_map(|(k, v)| v.map(|v| (k, v)))
    .collect()
}

fn render(cli: &Cli, cfg: &VerifyConfig, outcome: Outcome) -> Result<String, Failure> {
    let json_out = cli.json || cli.format == Format::Json;
    if json_out {
        let mut map = Map::new();
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("command".into(), json!(command_name(&cli.command)));
        map.insert("seed".into(), json!(cfg.seed));
        map.insert("tolerances".into(), serde_json::to_value(cfg.tolerances)?);
        let o: Map<String, Value> = overrides(cli).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        map.insert("overrides".into(), Value::Object(o));
        match outcome.payload {
            Value::Object(fields) => {
                for (k, v) in fields {
                    map.entry(k).or_insert(v);
                }
            }
            other => {
                map.insert("result".into(), other);
            }
        }
        map.entry("pass").or_insert(json!(outcome.pass));
        let mut s = serde_json::to_string_pretty(&Value::Object(map))?;
        s.push('\n');
        Ok(s)
    } else {
        let mut s = String::new();
        for (k, v) in overrides(cli) {
            writeln!(s, "# override {k} = {v:e}").ok();
        }
        s.push_str(&outcome.text);
        Ok(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = Tolerances::default();
    let cfg = VerifyConfig {
        tolerances: Tolerances {
            root_residual: cli.root_residual.unwrap_or(defaults.root_residual),
            integrator_drift: cli.integrator_drift.unwrap_or(defaults.integrator_drift),
            spectrum_residual: cli.spectrum_residual.unwrap_or(defaults.spectrum_residual),
        },
        seed: cli.seed,
    };
    let result = run(&cli, &cfg).and_then(|o| {
        let pass = o.pass;
        render(&cli, &cfg, o).map(|s| (s, pass))
    });
    match result {
        Ok((text, pass)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("qcoh: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qcoh: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("qcoh: {msg}");
            ExitCode::from(1)
        }
    }
}
