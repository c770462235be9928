use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tetraref::cache::CacheFile;
use tetraref::qfamily::{self, QFamily, QIndex};
use tetraref::tensorops::{self, KOperator, ROperator, REFLECTION_SIGNATURE};
use tetraref::threedk::{self, KElementKey, KRoute, Label};
use tetraref::threedr::{self, PFamily, RElementKey, RRoute};
use tetraref::{golden, LaurentQ, VerificationReport};

#[derive(Parser)]
#[command(
    name = "tetraref",
    version,
    about = "Exact 3D R and 3D K: elements, polynomials and identity checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cache file for computed Q and P members.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Directory holding the default cache file when --cache is absent.
    #[arg(
        long,
        global = true,
        env = "TETRAREF_CACHE_DIR",
        hide_env_values = true
    )]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Q_{b,c}(x,y,z,w) polynomials.
    #[command(subcommand)]
    Q(QCmd),
    /// Matrix elements of K.
    #[command(subcommand)]
    K(KCmd),
    /// Matrix elements of R and the P_b polynomials.
    #[command(subcommand)]
    R(RCmd),
    /// Identity checks; exit code 1 when any check fails.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Machine-readable dumps.
    #[command(subcommand)]
    Export(ExportCmd),
    /// Manage the on-disk cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum QRoute {
    Recursion,
    Alternate,
    Dual,
    ClosedForm,
}

#[derive(Subcommand)]
enum QCmd {
    /// Print Q_{b,c}.
    Compute {
        b: u32,
        c: u32,
        #[arg(long, value_enum, default_value_t = QRoute::Recursion)]
        route: QRoute,
    },
    /// Lowest and highest power of q in Q_{b,c}.
    Degree { b: u32, c: u32 },
    /// The index set (r,s,t,u) of the closed form.
    Support { b: u32, c: u32 },
    /// The closed-form coefficient C^{b,c}_{r,s,t,u}.
    Coeff {
        b: i64,
        c: i64,
        r: i64,
        s: i64,
        t: i64,
        u: i64,
    },
}

#[derive(Subcommand)]
enum KCmd {
    /// K^{a,b,c,d}_{i,j,k,l}.
    Element {
        #[arg(required = true, num_args = 8, value_names = ["A", "B", "C", "D", "I", "J", "K", "L"])]
        idx: Vec<u32>,
        /// primary, dual or both
        #[arg(long, default_value = "both")]
        route: String,
    },
    /// All nonzero K^{a,b,c,d}_{i,j,k,l} for fixed (i,j,k,l).
    Column {
        #[arg(required = true, num_args = 4, value_names = ["I", "J", "K", "L"])]
        idx: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum RCmd {
    /// R^{a,b,c}_{i,j,k}.
    Element {
        #[arg(required = true, num_args = 6, value_names = ["A", "B", "C", "I", "J", "K"])]
        idx: Vec<u32>,
        /// poly, doublesum, series or all
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// Print P_b(x,y,z).
    Poly { b: u32 },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Recompute every printed polynomial and matrix element.
    Printed,
    /// Structure, specializations, alternate routes and closed form of Q_{b,c}.
    Q {
        #[arg(long, default_value_t = 5)]
        max_bc: i64,
    },
    /// Agreement of both K formulas on weight blocks.
    KRoutes {
        #[arg(long, default_value_t = 3)]
        max_m: u32,
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
    /// The fourteen difference equations for Q_{b,c}.
    E {
        #[arg(long, default_value_t = 3)]
        max_bc: i64,
    },
    /// Operator intertwining relations of K.
    Intertwiner {
        /// Two-digit label such as 24; all relations when absent.
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_occ: u32,
    },
    /// Difference equations, symmetry and element routes of R.
    R {
        #[arg(long, default_value_t = 5)]
        max_b: i64,
    },
    /// The tetrahedron equation.
    Tetrahedron {
        #[arg(long, default_value_t = 1)]
        max_occ: u32,
    },
    /// The 3D reflection equation.
    Reflection {
        /// Exhaustive over 0/1 states with at most this many ones.
        #[arg(long, default_value_t = 2)]
        max_ones: u32,
        /// Additional seeded random 0/1 states.
        #[arg(long, default_value_t = 64)]
        sample: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Integrality and constant term of the closed-form coefficients.
    Conjecture {
        #[arg(long, default_value_t = 4)]
        max_bc: i64,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// The matrix of R or K on one weight block.
    Block {
        #[arg(value_parser = ["r", "k"])]
        which: String,
        m: u32,
        n: u32,
    },
    /// Q_{b,c} as structured JSON.
    Q { b: u32, c: u32 },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Compute and store Q_{b,c} for b,c <= max-bc and P_b for b <= max-b.
    Build {
        #[arg(long, default_value_t = 4)]
        max_bc: u32,
        #[arg(long, default_value_t = 6)]
        max_b: u32,
    },
    /// List cached entries.
    Show,
    /// Delete the cache file.
    Clear,
}

enum Outcome {
    Ok,
    Failed,
}

struct Ctx {
    format: Format,
    out: std::io::StdoutLock<'static>,
}

impl Ctx {
    fn line(&mut self, s: impl std::fmt::Display) -> anyhow::Result<()> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn json(&mut self, v: serde_json::Value) -> anyhow::Result<()> {
        self.line(serde_json::to_string_pretty(&v)?)
    }

    fn report(&mut self, rep: &VerificationReport) -> anyhow::Result<Outcome> {
        match self.format {
            Format::Json => self.json(serde_json::to_value(rep)?)?,
            _ => self.line(rep)?,
        }
        Ok(if rep.passed {
            Outcome::Ok
        } else {
            Outcome::Failed
        })
    }

    fn value(&mut self, label: String, v: impl std::fmt::Display) -> anyhow::Result<Outcome> {
        match self.format {
            Format::Json => self.json(json!({ "key": label, "value": v.to_string() }))?,
            _ => self.line(v)?,
        }
        Ok(Outcome::Ok)
    }
}

fn k_routes(s: &str) -> tetraref::Result<Vec<KRoute>> {
    if s == "both" {
        return Ok(KRoute::BOTH.to_vec());
    }
    Ok(vec![s.parse()?])
}

fn r_routes(s: &str) -> tetraref::Result<Vec<RRoute>> {
    if s == "all" {
        return Ok(RRoute::ALL.to_vec());
    }
    Ok(vec![s.parse()?])
}

fn block_rows<'a, S: Copy>(states: &[S], rows: &'a [Vec<LaurentQ>]) -> Vec<(S, S, &'a LaurentQ)> {
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                out.push((states[r], states[c], v));
            }
        }
    }
    out
}

fn join(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn emit_block<const N: usize>(
    ctx: &mut Ctx,
    which: &str,
    m: u32,
    n: u32,
    states: &[[u32; N]],
    rows: &[Vec<LaurentQ>],
) -> anyhow::Result<()> {
    let entries = block_rows(states, rows);
    match ctx.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["out", "in", "coefficient"])?;
            for (o, i, v) in &entries {
                w.write_record([join(o), join(i), v.to_string()])?;
            }
            let bytes = w.into_inner()?;
            ctx.out.write_all(&bytes)?;
        }
        Format::Json => ctx.json(json!({
            "operator": which,
            "weights": [m, n],
            "states": states.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
            "entries": entries.iter().map(|(o, i, v)| json!({"out": o.to_vec(), "in": i.to_vec(), "value": v.to_string()})).collect::<Vec<_>>(),
        }))?,
        Format::Text => {
            for (o, i, v) in &entries {
                ctx.line(format_args!("{o:?} <- {i:?}: {v}"))?;
            }
        }
    }
    Ok(())
}

fn run_q(ctx: &mut Ctx, cmd: QCmd) -> anyhow::Result<Outcome> {
    let fam = QFamily::shared();
    match cmd {
        QCmd::Compute { b, c, route } => {
            let idx = QIndex::new(b, c);
            let poly = match route {
                QRoute::Recursion => (*fam.compute_q(idx)).clone(),
                QRoute::Alternate => fam.compute_q_alternate(idx),
                QRoute::Dual => fam
                    .compute_q_dual(idx)?
                    .invert_q()
                    .mul_q_pow(qfamily::phi_bc(b.into(), c.into())),
                QRoute::ClosedForm => qfamily::closed_form_q(b.into(), c.into())?,
            };
            ctx.value(idx.to_string(), poly)
        }
        QCmd::Degree { b, c } => {
            let (lo, hi) = fam.compute_q(QIndex::new(b, c)).q_degree_range()?;
            match ctx.format {
                Format::Json => ctx.json(json!({ "b": b, "c": c, "min": lo, "max": hi }))?,
                _ => ctx.line(format_args!("{lo} {hi}"))?,
            }
            Ok(Outcome::Ok)
        }
        QCmd::Support { b, c } => {
            let set = qfamily::support_set(b.into(), c.into());
            match ctx.format {
                Format::Json => ctx.json(json!(set))?,
                _ => {
                    for q in set {
                        ctx.line(join(&q.map(|v| v as u32)))?;
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        QCmd::Coeff { b, c, r, s, t, u } => {
            let v = qfamily::coeff_c(b, c, [r, s, t, u])?;
            ctx.value(format!("C^{{{b},{c}}}_{{{r},{s},{t},{u}}}"), v)
        }
    }
}

fn run_k(ctx: &mut Ctx, cmd: KCmd) -> anyhow::Result<Outcome> {
    match cmd {
        KCmd::Element { idx, route } => {
            let key = KElementKey::new(
                [idx[0], idx[1], idx[2], idx[3]],
                [idx[4], idx[5], idx[6], idx[7]],
            );
            let v = threedk::k_element(QFamily::shared(), &key, &k_routes(&route)?)?;
            ctx.value(key.to_string(), v)
        }
        KCmd::Column { idx } => {
            let col = threedk::k_column([idx[0], idx[1], idx[2], idx[3]]);
            emit_column(ctx, &col)
        }
    }
}

fn emit_column<const N: usize>(
    ctx: &mut Ctx,
    col: &[([u32; N], LaurentQ)],
) -> anyhow::Result<Outcome> {
    match ctx.format {
        Format::Json => ctx.json(json!(col
            .iter()
            .map(|(o, v)| json!({"out": o.to_vec(), "value": v.to_string()}))
            .collect::<Vec<_>>()))?,
        _ => {
            for (o, v) in col {
                ctx.line(format_args!("{}: {v}", join(o)))?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn run_r(ctx: &mut Ctx, cmd: RCmd) -> anyhow::Result<Outcome> {
    match cmd {
        RCmd::Element { idx, route } => {
            let key = RElementKey::new([idx[0], idx[1], idx[2]], [idx[3], idx[4], idx[5]]);
            let v = threedr::r_element(PFamily::shared(), &key, &r_routes(&route)?)?;
            ctx.value(key.to_string(), v)
        }
        RCmd::Poly { b } => {
            let p = PFamily::shared().compute_p(b);
            ctx.value(format!("P_{b}"), p)
        }
    }
}

fn run_verify(ctx: &mut Ctx, cmd: VerifyCmd) -> anyhow::Result<Outcome> {
    let qf = QFamily::shared();
    let pf = PFamily::shared();
    let rep = match cmd {
        VerifyCmd::Printed => golden::reproduce_printed(qf)?,
        VerifyCmd::Q { max_bc } => qfamily::check_up_to(qf, max_bc),
        VerifyCmd::KRoutes { max_m, max_n } => threedk::verify_routes(qf, max_m, max_n),
        VerifyCmd::E { max_bc } => threedk::verify_all_e(qf, max_bc),
        VerifyCmd::Intertwiner { relation, max_occ } => {
            let labels = match relation {
                Some(r) => vec![r.parse::<Label>()?],
                None => Label::OPERATOR.to_vec(),
            };
            tensorops::intertwiner_suite(&labels, max_occ)?
        }
        VerifyCmd::R { max_b } => {
            let mut rep = VerificationReport::new(format!("R suite b<={max_b}"));
            for b in 0..=max_b {
                rep.absorb(threedr::verify_p_relations(pf, b));
            }
            rep.absorb(threedr::verify_routes(pf, 4, 4));
            rep.absorb(threedr::r_squared_report(pf, 4)?);
            rep
        }
        VerifyCmd::Tetrahedron { max_occ } => tensorops::tetrahedron_suite(&ROperator, max_occ),
        VerifyCmd::Reflection {
            max_ones,
            sample,
            seed,
        } => {
            let mut inputs = tensorops::states_with_units(&REFLECTION_SIGNATURE, max_ones);
            inputs.extend(tensorops::reflection_sample(sample, seed));
            let name = format!("reflection, {max_ones} units + {sample} samples (seed {seed})");
            tensorops::reflection_suite(&ROperator, &KOperator, &name, &inputs)
        }
        VerifyCmd::Conjecture { max_bc } => {
            let checks = qfamily::conjecture_report(max_bc)?;
            let mut rep =
                VerificationReport::new(format!("C in Z[q^2] with constant term 1, b+c<={max_bc}"));
            for ch in &checks {
                rep.record_eq(
                    || format!("C^{{{},{}}}_{:?}", ch.b, ch.c, ch.quad),
                    &ch.holds(),
                    &true,
                );
            }
            rep
        }
    };
    ctx.report(&rep)
}

fn run_export(ctx: &mut Ctx, cmd: ExportCmd) -> anyhow::Result<Outcome> {
    match cmd {
        ExportCmd::Block { which, m, n } => {
            if which == "k" {
                let (states, rows) = threedk::k_block(QFamily::shared(), m, n, &[KRoute::Primary])?;
                emit_block(ctx, "k", m, n, &states, &rows)?;
            } else {
                let (states, rows) = threedr::r_block(PFamily::shared(), m, n)?;
                emit_block(ctx, "r", m, n, &states, &rows)?;
            }
        }
        ExportCmd::Q { b, c } => {
            let poly = QFamily::shared().compute_q(QIndex::new(b, c));
            ctx.json(json!({ "b": b, "c": c, "poly": serde_json::to_value(poly.as_ref())?, "text": poly.to_string() }))?;
        }
    }
    Ok(Outcome::Ok)
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    cli.cache.clone().or_else(|| {
        cli.cache_dir
            .as_ref()
            .map(|d| d.join("tetraref-cache.json"))
    })
}

fn load_cache(path: &Path) {
    if !path.exists() {
        return;
    }
    match CacheFile::load(path).and_then(|f| f.install(QFamily::shared(), PFamily::shared())) {
        Ok(()) => {}
        Err(e) => eprintln!("ignoring cache {}: {e}; rebuilding", path.display()),
    }
}

fn save_cache(path: &Path) -> anyhow::Result<()> {
    CacheFile::snapshot(QFamily::shared(), PFamily::shared())
        .save(path)
        .with_context(|| format!("writing cache {}", path.display()))
}

fn run_cache(ctx: &mut Ctx, cmd: CacheCmd, path: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let Some(path) = path else {
        bail!("no cache location: pass --cache or set TETRAREF_CACHE_DIR");
    };
    match cmd {
        CacheCmd::Build { max_bc, max_b } => {
            for b in 0..=max_bc {
                for c in 0..=max_bc {
                    QFamily::shared().compute_q(QIndex::new(b, c));
                }
            }
            PFamily::shared().compute_p(max_b);
            save_cache(&path)?;
            ctx.line(format_args!(
                "cached Q_{{b,c}} for b,c<={max_bc} and P_b for b<={max_b} in {}",
                path.display()
            ))?;
        }
        CacheCmd::Show => {
            let file = CacheFile::load(&path)?;
            match ctx.format {
                Format::Json => ctx.json(json!({
                    "schema_version": file.schema_version,
                    "q": file.q.keys().collect::<Vec<_>>(),
                    "p": file.p.keys().collect::<Vec<_>>(),
                }))?,
                _ => {
                    ctx.line(format_args!("schema {}", file.schema_version))?;
                    ctx.line(format_args!(
                        "Q: {}",
                        file.q.keys().cloned().collect::<Vec<_>>().join(" ")
                    ))?;
                    ctx.line(format_args!(
                        "P: {}",
                        file.p.keys().cloned().collect::<Vec<_>>().join(" ")
                    ))?;
                }
            }
        }
        CacheCmd::Clear => {
            if path.exists() {
                std::fs::remove_file(&path)?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let path = cache_path(&cli);
    let mut ctx = Ctx {
        format: cli.format,
        out: std::io::stdout().lock(),
    };
    if let Cmd::Cache(cmd) = cli.cmd {
        return run_cache(&mut ctx, cmd, path);
    }
    if let Some(p) = &path {
        load_cache(p);
    }
    let outcome = match cli.cmd {
        Cmd::Q(c) => run_q(&mut ctx, c)?,
        Cmd::K(c) => run_k(&mut ctx, c)?,
        Cmd::R(c) => run_r(&mut ctx, c)?,
        Cmd::Verify(c) => run_verify(&mut ctx, c)?,
        Cmd::Export(c) => run_export(&mut ctx, c)?,
        Cmd::Cache(_) => unreachable!("handled above"),
    };
    if let Some(p) = &path {
        save_cache(p)?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<tetraref::Error>() {
                Some(tetraref::Error::Verification(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
