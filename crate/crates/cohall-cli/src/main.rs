//! Command-line front end: shuffle products, Chern images, twist
//! verification suites, module actions and generator-dimension tables, with
//! reproducible text output.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cohall::coha::{coha_mul, star_mul, CohaElem, CohaSeriesElem};
use cohall::kha::{chern, kha_mul, KhaElem};
use cohall::modlf::{CyclicModule, LargeIdealPresentation};
use cohall::quiver::psi_standard;
use cohall::report::CheckReport;
use cohall::symfun::parse::{parse_laurent, parse_multipoly, split_graded};
use cohall::symfun::series::TruncSeries;
use cohall::symfun::vars::VarSpec;
use cohall::twist::{
    h_multiplicativity_check, injectivity_check, lemma_manipul_check, twisting_axiom_check,
    TwistContext,
};
use cohall::{DimVector, HallError, Quiver};

const LONG_ABOUT: &str = "\
Exact Hall-algebra computations on symmetric polynomials and Laurent \
polynomials over the rationals.

OPERANDS use polynomial literals with a grade annotation, for example \
`1@1`, `x@1`, `3*x[0,1]^2-1/2@2` or `z[0,1]^-1+z[0,2]@2,0`. Variables are \
written x[vertex,slot] (or z[vertex,slot] for Laurent operands); a bare `x` \
or `z` abbreviates slot 1 of vertex 0. Slots are 1-based and bounded by the \
grade component of their vertex.

QUIVER FILES are plain text:
    vertices 2
    arrows
    0 1
    1 0

IDEAL FILES declare one block per grade:
    grade 1
    cutoff 2
    gen x[0,1] - 1

EXIT STATUS: 0 ok, 2 parse error, 3 precondition violated, 4 verification \
failure, 5 resource limit.";

#[derive(Parser)]
#[command(name = "cohall", version, about = "Hall algebras of quivers, exactly", long_about = LONG_ABOUT)]
struct Cli {
    /// Output style: aligned text or one key=value record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Records,
}

#[derive(Args)]
struct QuiverArg {
    /// Path to the quiver document.
    #[arg(long)]
    quiver: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shuffle product of two graded symmetric polynomials.
    CohaMul {
        #[command(flatten)]
        quiver: QuiverArg,
        /// First operand, `poly@grade`.
        f1: String,
        /// Second operand, `poly@grade`.
        f2: String,
    },
    /// Sign-twisted star product (symmetric quivers).
    CohaStar {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Vertex order fixing the standard psi, e.g. `1,0`.
        #[arg(long)]
        vertex_order: Option<String>,
        f1: String,
        f2: String,
    },
    /// Shuffle product of two graded symmetric Laurent polynomials.
    KhaMul {
        #[command(flatten)]
        quiver: QuiverArg,
        f1: String,
        f2: String,
    },
    /// Chern image of a Laurent element: substitute z -> e^x, truncated.
    Chern {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Truncation order.
        #[arg(long)]
        order: u32,
        f: String,
    },
    /// Run the twist verification suites: twisting-system axioms, the
    /// correction-series identities, twisted-Chern multiplicativity and the
    /// injectivity rank checks.
    TwistVerify {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Truncation order for the identity checks.
        #[arg(long)]
        order: u32,
        /// Seed for the deterministic sample generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Per-vertex grade bound, e.g. `2` or `1,1`.
        #[arg(long)]
        grades: String,
        /// Number of axiom sample sets.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Laurent exponent bound for the injectivity rank check.
        #[arg(long, default_value_t = 2)]
        z_bound: i32,
    },
    /// Act on a cyclic module element.
    ModuleAct {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Path to the large-ideal document.
        #[arg(long)]
        ideal: String,
        /// Which action to apply.
        #[arg(long, value_enum)]
        action: Action,
        /// Truncation order for the twisted actions.
        #[arg(long, default_value_t = 6)]
        order: u32,
        /// Algebra element: `poly@grade` (x variables; z for the kha action).
        f: String,
        /// Module element representative: `poly@grade` in x variables.
        m: String,
    },
    /// Table of generator dimensions per bidegree.
    PrimDims {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Per-vertex grade bound, e.g. `2` or `2,1`.
        #[arg(long)]
        grades: String,
        /// Bound on the absolute value of the second degree.
        #[arg(long, default_value_t = 8)]
        l_max: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Action {
    Coha,
    Circ,
    Kha,
}

struct Out {
    records: bool,
}

impl Out {
    fn kv(&self, key: &str, value: impl std::fmt::Display) {
        if self.records {
            println!("{key}={value}");
        } else {
            println!("{key} = {value}");
        }
    }

    fn raw(&self, line: impl std::fmt::Display) {
        println!("{line}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { records: cli.format == Format::Records };
    match run(cli.cmd, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &HallError) -> u8 {
    match e {
        HallError::Parse { .. } => 2,
        HallError::Resource(_) => 5,
        _ => 3,
    }
}

fn load_quiver(path: &str) -> Result<Quiver, HallError> {
    let text = fs::read_to_string(path)
        .map_err(|e| HallError::parse(0, 0, format!("cannot read `{path}`: {e}")))?;
    Quiver::parse_doc(&text)
}

fn parse_grade(q: &Quiver, text: &str) -> Result<DimVector, HallError> {
    let g = cohall::symfun::parse::parse_dimvec(text)?;
    if g.len() != q.vertex_count() {
        return Err(HallError::Precondition(format!(
            "grade ({g}) does not match the quiver's {} vertices",
            q.vertex_count()
        )));
    }
    Ok(g)
}

fn coha_operand(q: &Quiver, literal: &str) -> Result<CohaElem, HallError> {
    let (expr, gamma) = split_graded(literal)?;
    if gamma.len() != q.vertex_count() {
        return Err(HallError::Precondition(format!(
            "grade ({gamma}) does not match the quiver's {} vertices",
            q.vertex_count()
        )));
    }
    let spec = VarSpec::new(&gamma)?;
    let poly = parse_multipoly(expr, &spec)?;
    CohaElem::new(q.clone(), gamma, poly)
}

fn kha_operand(q: &Quiver, literal: &str) -> Result<KhaElem, HallError> {
    let (expr, gamma) = split_graded(literal)?;
    if gamma.len() != q.vertex_count() {
        return Err(HallError::Precondition(format!(
            "grade ({gamma}) does not match the quiver's {} vertices",
            q.vertex_count()
        )));
    }
    let spec = VarSpec::new(&gamma)?;
    let laurent = parse_laurent(expr, &spec)?;
    KhaElem::new(q.clone(), gamma, laurent)
}

fn emit_report(out: &Out, report: &CheckReport) {
    for line in &report.lines {
        if line.pass {
            out.raw(format!("PASS {}", line.name));
        } else {
            out.raw(format!("FAIL {} :: {}", line.name, line.witness.as_deref().unwrap_or("")));
        }
    }
}

fn run(cmd: Cmd, out: &Out) -> Result<ExitCode, HallError> {
    match cmd {
        Cmd::CohaMul { quiver, f1, f2 } => {
            let q = load_quiver(&quiver.quiver)?;
            let a = coha_operand(&q, &f1)?;
            let b = coha_operand(&q, &f2)?;
            let p = coha_mul(&a, &b)?;
            out.kv("op", "coha-mul");
            out.kv("grade", p.gamma());
            out.kv("result", p.poly().to_compact_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CohaStar { quiver, vertex_order, f1, f2 } => {
            let q = load_quiver(&quiver.quiver)?;
            q.require_symmetric()?;
            let order: Vec<usize> = match vertex_order {
                Some(text) => parse_grade(&q, &text)?
                    .components()
                    .iter()
                    .map(|&c| c as usize)
                    .collect(),
                None => (0..q.vertex_count()).collect(),
            };
            let psi = psi_standard(&q, &order)?;
            let a = coha_operand(&q, &f1)?;
            let b = coha_operand(&q, &f2)?;
            let p = star_mul(&a, &b, &psi)?;
            out.kv("op", "coha-star");
            out.kv("grade", p.gamma());
            out.kv("result", p.poly().to_compact_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::KhaMul { quiver, f1, f2 } => {
            let q = load_quiver(&quiver.quiver)?;
            let a = kha_operand(&q, &f1)?;
            let b = kha_operand(&q, &f2)?;
            let p = kha_mul(&a, &b)?;
            out.kv("op", "kha-mul");
            out.kv("grade", p.gamma());
            out.kv("result", p.laurent().to_compact_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Chern { quiver, order, f } => {
            let q = load_quiver(&quiver.quiver)?;
            if order == 0 {
                return Err(HallError::Precondition("order must be at least 1".into()));
            }
            let a = kha_operand(&q, &f)?;
            let c = chern(&a, order)?;
            out.kv("op", "chern");
            out.kv("grade", c.gamma());
            out.kv("order", order);
            out.kv("result", c.series().to_compact_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::TwistVerify { quiver, order, seed, grades, samples, z_bound } => {
            let q = load_quiver(&quiver.quiver)?;
            let bound = parse_grade(&q, &grades)?;
            let ctx = TwistContext::new(q.clone(), order, None)?;
            out.kv("op", "twist-verify");
            out.kv("order", order);
            out.kv("seed", seed);
            out.kv("grades", &bound);
            let mut report = CheckReport::new();
            report.merge(twisting_axiom_check(&ctx, &bound, samples, seed)?);
            let sub_grades = bound.sub_grades();
            for g1 in &sub_grades {
                for g2 in &sub_grades {
                    report.merge(lemma_manipul_check(&ctx, g1, g2)?);
                    if !g1.is_zero() || !g2.is_zero() {
                        report.merge(h_multiplicativity_check(&ctx, g1, g2, 2, seed)?);
                    }
                }
            }
            for gamma in &sub_grades {
                if gamma.is_zero() {
                    continue;
                }
                let inj_order =
                    (2 * z_bound as u32 * gamma.total() as u32 + 1).max(order);
                report.merge(injectivity_check(&ctx, gamma, z_bound, inj_order)?);
            }
            emit_report(out, &report);
            out.kv("checks", report.lines.len());
            out.kv("failures", report.failures());
            if report.all_pass() {
                out.kv("result", "PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                out.kv("result", "FAIL");
                Ok(ExitCode::from(4))
            }
        }
        Cmd::ModuleAct { quiver, ideal, action, order, f, m } => {
            let q = load_quiver(&quiver.quiver)?;
            let text = fs::read_to_string(&ideal)
                .map_err(|e| HallError::parse(0, 0, format!("cannot read `{ideal}`: {e}")))?;
            let pres = LargeIdealPresentation::parse_doc(q.clone(), &text)?;
            let module = CyclicModule::new(pres)?;
            let (m_expr, m_grade) = split_graded(&m)?;
            let m_spec = VarSpec::new(&m_grade)?;
            let m_poly = parse_multipoly(m_expr, &m_spec)?;
            let m_elt = module.reduce(&m_grade, &m_poly)?;
            let result = match action {
                Action::Coha => {
                    let a = coha_operand(&q, &f)?;
                    module.act_coha(&a, &m_elt)?
                }
                Action::Circ => {
                    let ctx = TwistContext::new(q.clone(), order, None)?;
                    let a = coha_operand(&q, &f)?;
                    let s = CohaSeriesElem::new(
                        q.clone(),
                        a.gamma().clone(),
                        TruncSeries::from_poly(a.poly(), order),
                    )?;
                    module.act_circ(&ctx, &s, &m_elt)?
                }
                Action::Kha => {
                    let ctx = TwistContext::new(q.clone(), order, None)?;
                    let a = kha_operand(&q, &f)?;
                    module.act_kha(&ctx, &a, &m_elt)?
                }
            };
            out.kv("op", "module-act");
            out.kv(
                "action",
                match action {
                    Action::Coha => "coha",
                    Action::Circ => "circ",
                    Action::Kha => "kha",
                },
            );
            out.kv("grade", &result.gamma);
            out.kv("dim", module.dim(&result.gamma)?);
            let rep = module.lift(&result)?;
            out.kv("result", rep.to_compact_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::PrimDims { quiver, grades, l_max } => {
            let q = load_quiver(&quiver.quiver)?;
            let bound = parse_grade(&q, &grades)?;
            let table = cohall::coha::primitive_dims(&q, &bound, l_max)?;
            out.kv("op", "prim-dims");
            out.kv("grades", &bound);
            out.kv("l-max", l_max);
            for ((gamma, l), dim) in &table.entries {
                out.raw(format!("gamma=({gamma}) l={l} dim={dim}"));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
